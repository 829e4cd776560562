//! Timing probe for the variety fixture (graph embedding with d = 2).

use dmod_core::exactalg::CTermOrder;
use dmod_core::expr::parse_cpoly;
use dmod_core::graph::embed_unit;
use dmod_core::indicial::s_block_gb;
use dmod_core::vfilt::j_ideal;
use dmod_core::VarSet;

#[test]
#[ignore = "probe"]
fn bms_pipeline_probe() {
    let t0 = std::time::Instant::now();
    let cv = VarSet::commutative(&["x", "y", "z"]);
    let f1 = parse_cpoly(&cv, "x^3-y^2*z").unwrap();
    let f2 = parse_cpoly(&cv, "x*y*(z^2+1)").unwrap();
    let ideal = embed_unit(&[f1, f2]).unwrap();
    eprintln!("[{:?}] embedded", t0.elapsed());
    let gb = ideal.v_gb().unwrap();
    eprintln!("[{:?}] v-adapted GB: {} elements", t0.elapsed(), gb.len());
    let j = j_ideal(&ideal).unwrap();
    eprintln!("[{:?}] J with {} generators", t0.elapsed(), j.gens().len());
    let sgb = s_block_gb(&j).unwrap();
    let mut degs: Vec<u16> = sgb.elements.iter().map(|e| e.s_deg).collect();
    degs.sort();
    degs.dedup();
    eprintln!(
        "[{:?}] s-block GB: {} elements, s-degrees {:?}",
        t0.elapsed(),
        sgb.elements.len(),
        degs
    );
    let _ = j.gb(&CTermOrder::Grevlex);
}
