//! Compare V-GB sizes across tiebreak slot layouts for the variety fixture.

use dmod_core::expr::{parse_cpoly, parse_weyl};
use dmod_core::weyl::{v_adapted_gb_vec, VOrderSpec};
use dmod_core::{CoordClass, Var, VarKind, VarSet};

fn layout(order: &[&str]) -> std::sync::Arc<VarSet> {
    // coordinates and derivations by name, in the given slot order
    let mut vars: Vec<Var> = Vec::new();
    for n in order {
        if let Some(coord) = n.strip_prefix('d') {
            let pos = vars.iter().position(|v| v.name == coord).unwrap();
            vars.push(Var {
                name: n.to_string(),
                kind: VarKind::Deriv(pos),
            });
        } else {
            let class = if n.starts_with('t') {
                CoordClass::T
            } else {
                CoordClass::X
            };
            vars.push(Var {
                name: n.to_string(),
                kind: VarKind::Coord(class),
            });
        }
    }
    VarSet::new(vars).unwrap()
}

fn run(label: &str, slots: &[&str]) {
    let vs = layout(slots);
    let cv = VarSet::commutative(&["x", "y", "z"]);
    let f1 = parse_cpoly(&cv, "x^3-y^2*z").unwrap();
    let f2 = parse_cpoly(&cv, "x*y*(z^2+1)").unwrap();
    let gens = vec![
        {
            let t1 = parse_weyl(&vs, "t1").unwrap();
            &t1 - &parse_weyl(&vs, "x^3-y^2*z").unwrap()
        },
        {
            let t2 = parse_weyl(&vs, "t2").unwrap();
            &t2 - &parse_weyl(&vs, "x*y*(z^2+1)").unwrap()
        },
        parse_weyl(&vs, "dx+3*x^2*dt1+y*(z^2+1)*dt2").unwrap(),
        parse_weyl(&vs, "dy-2*y*z*dt1+x*(z^2+1)*dt2").unwrap(),
        parse_weyl(&vs, "dz-y^2*dt1+2*x*y*z*dt2").unwrap(),
    ];
    let _ = (f1, f2);
    let t0 = std::time::Instant::now();
    let gvecs: Vec<Vec<_>> = gens.into_iter().map(|g| vec![g]).collect();
    let gb = v_adapted_gb_vec(&vs, 1, &gvecs, &VOrderSpec::ideal()).unwrap();
    let maxterms = gb.iter().map(|(v, _)| v[0].num_terms()).max().unwrap();
    eprintln!(
        "{label}: {} elements, max {} terms, {:?}",
        gb.len(),
        maxterms,
        t0.elapsed()
    );
}

#[test]
#[ignore = "probe"]
fn order_comparison() {
    run(
        "x,dx,t,dt",
        &["x", "y", "z", "dx", "dy", "dz", "t1", "t2", "dt1", "dt2"],
    );
    run(
        "t,dt,x,dx",
        &["t1", "t2", "dt1", "dt2", "x", "y", "z", "dx", "dy", "dz"],
    );
    run(
        "coords,derivs",
        &["x", "y", "z", "t1", "t2", "dx", "dy", "dz", "dt1", "dt2"],
    );
    run(
        "interleaved",
        &["x", "dx", "y", "dy", "z", "dz", "t1", "dt1", "t2", "dt2"],
    );
}
