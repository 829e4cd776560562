//! Graph embedding of a cyclic module along a polynomial map.
//!
//! For f = (f_1, …, f_d) the embedding ι(x) = (x, f(x)) sends the module
//! D·u to D_{n+d}·(u ⊗ δ(t−f)); its annihilator is generated by the
//! substituted operators τ(P, f) together with the t_j − f_j.

use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::exactalg::CPoly;
use crate::vars::{CoordClass, VarKind, VarSet};
use crate::weyl::{WeylIdeal, WeylOp};

/// The algebra D_{n+d}[y] reached by embedding along `d` polynomials.
/// The t-coordinates are named `t` for d = 1 and `t1`, …, `td` otherwise.
pub fn embedded_algebra(base: &Arc<VarSet>, d: usize) -> Result<Arc<VarSet>> {
    if d == 0 {
        return Err(CoreError::InvalidArgument(
            "graph embedding needs at least one polynomial".into(),
        ));
    }
    let mut xs = Vec::new();
    let mut params = Vec::new();
    for v in base.vars() {
        match v.kind {
            VarKind::Coord(CoordClass::X) => xs.push(v.name.clone()),
            VarKind::Coord(CoordClass::T) => {
                return Err(CoreError::UnsupportedInput(
                    "base algebra already carries t-coordinates".into(),
                ))
            }
            VarKind::Central(_) => params.push(v.name.clone()),
            VarKind::Deriv(_) => {}
        }
    }
    let tnames: Vec<String> = if d == 1 {
        vec!["t".to_string()]
    } else {
        (1..=d).map(|i| format!("t{i}")).collect()
    };
    for t in &tnames {
        if base.index_of(t).is_some() || base.index_of(&format!("d{t}")).is_some() {
            return Err(CoreError::UnsupportedInput(format!(
                "variable name {t} collides with the embedding coordinates"
            )));
        }
    }
    let xr: Vec<&str> = xs.iter().map(|s| s.as_str()).collect();
    let tr: Vec<&str> = tnames.iter().map(|s| s.as_str()).collect();
    let pr: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
    Ok(VarSet::weyl_with_t(&xr, &tr, &pr))
}

/// Substitute ∂_{x_i} ↦ ∂_{x_i} + Σ_j (∂f_j/∂x_i) ∂_{t_j} in an operator
/// free of t and ∂t.  Well-defined: the substituted operators commute.
pub fn tau_substitute(p: &WeylOp, fs: &[CPoly], target: &Arc<VarSet>) -> Result<WeylOp> {
    let base = p.vars();
    // derivation substitutes, one per base x-coordinate
    let mut subs: Vec<Option<WeylOp>> = vec![None; base.len()];
    for (slot, v) in base.vars().iter().enumerate() {
        if let VarKind::Deriv(of) = v.kind {
            match base.var(of).kind {
                VarKind::Coord(CoordClass::X) => {
                    let xname = &base.var(of).name;
                    let mut d = WeylOp::var(target, &v.name)?;
                    for (j, f) in fs.iter().enumerate() {
                        let df = f.derivative(xname)?;
                        let tname = t_name(fs.len(), j);
                        let dtj = WeylOp::var(target, &format!("d{tname}"))?;
                        let dfop = WeylOp::from_cpoly(&df, target)?;
                        d = d.add_ref(&dfop.wmul(&dtj)?)?;
                    }
                    subs[slot] = Some(d);
                }
                _ => {
                    return Err(CoreError::UnsupportedInput(
                        "input operator involves t-derivations".into(),
                    ))
                }
            }
        }
    }
    let mut acc = WeylOp::zero(target);
    for (m, c) in p.terms() {
        // coefficient part: coordinates and central variables
        let mut coeff_mono = m.clone();
        for (slot, v) in base.vars().iter().enumerate() {
            if matches!(v.kind, VarKind::Deriv(_)) {
                coeff_mono.set_exp(slot, 0);
            }
        }
        let map = base.embedding_into(target)?;
        let mut term = WeylOp::from_terms(
            target,
            vec![(coeff_mono.remapped(&map, target.len()), c.clone())],
        );
        for (slot, sub) in subs.iter().enumerate() {
            if !matches!(base.var(slot).kind, VarKind::Deriv(_)) {
                continue;
            }
            let e = m.exp(slot);
            if e > 0 {
                let d = sub
                    .as_ref()
                    .ok_or_else(|| CoreError::UnsupportedInput("unexpected derivation".into()))?;
                term = term.wmul(&d.pow(e as u32)?)?;
            }
        }
        acc = acc.add_ref(&term)?;
    }
    Ok(acc)
}

fn t_name(d: usize, j: usize) -> String {
    if d == 1 {
        "t".to_string()
    } else {
        format!("t{}", j + 1)
    }
}

/// Annihilator of ι_*(u) from generators of Ann(u): the τ-images plus the
/// graph relations t_j − f_j.
pub fn graph_embed(ann_gens: &[WeylOp], fs: &[CPoly]) -> Result<WeylIdeal> {
    if fs.is_empty() {
        return Err(CoreError::InvalidArgument(
            "graph embedding needs at least one polynomial".into(),
        ));
    }
    if ann_gens.is_empty() {
        return Err(CoreError::InvalidArgument(
            "empty annihilator generating set".into(),
        ));
    }
    let base = ann_gens[0].vars().clone();
    let target = embedded_algebra(&base, fs.len())?;
    let mut gens = Vec::new();
    for (j, f) in fs.iter().enumerate() {
        let tname = t_name(fs.len(), j);
        let t = WeylOp::var(&target, &tname)?;
        let fop = WeylOp::from_cpoly(f, &target)?;
        gens.push(&t - &fop);
    }
    for p in ann_gens {
        gens.push(tau_substitute(p, fs, &target)?);
    }
    Ok(WeylIdeal::new(&target, gens))
}

/// The u = 1 shortcut: the annihilator of 1 ∈ K[x] is ⟨∂_{x_1}, …, ∂_{x_n}⟩,
/// so this computes the module of the variety defined by `fs`.
pub fn embed_unit(fs: &[CPoly]) -> Result<WeylIdeal> {
    if fs.is_empty() {
        return Err(CoreError::InvalidArgument(
            "graph embedding needs at least one polynomial".into(),
        ));
    }
    let cvars = fs[0].vars();
    let mut xs = Vec::new();
    let mut params = Vec::new();
    for v in cvars.vars() {
        match v.kind {
            VarKind::Coord(_) => xs.push(v.name.clone()),
            VarKind::Central(_) => params.push(v.name.clone()),
            VarKind::Deriv(_) => {
                return Err(CoreError::InvalidArgument(
                    "polynomials must be commutative".into(),
                ))
            }
        }
    }
    let xr: Vec<&str> = xs.iter().map(|s| s.as_str()).collect();
    let pr: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
    let base = VarSet::weyl(&xr, &pr);
    let ann: Result<Vec<WeylOp>> = xs
        .iter()
        .map(|x| WeylOp::var(&base, &format!("d{x}")))
        .collect();
    graph_embed(&ann?, fs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_cpoly, parse_weyl};

    #[test]
    fn tau_on_the_variety_pair() {
        // f1 = x^3 − y^2 z, f2 = x y (z^2 + 1)
        let cv = VarSet::commutative(&["x", "y", "z"]);
        let f1 = parse_cpoly(&cv, "x^3-y^2*z").unwrap();
        let f2 = parse_cpoly(&cv, "x*y*(z^2+1)").unwrap();
        let base = VarSet::weyl(&["x", "y", "z"], &[]);
        let target = embedded_algebra(&base, 2).unwrap();
        let dx = parse_weyl(&base, "dx").unwrap();
        let tau = tau_substitute(&dx, &[f1, f2], &target).unwrap();
        assert_eq!(
            tau,
            parse_weyl(&target, "dx+3*x^2*dt1+y*(z^2+1)*dt2").unwrap()
        );
    }

    #[test]
    fn tau_single_linear() {
        let cv = VarSet::commutative(&["x"]);
        let f = parse_cpoly(&cv, "x").unwrap();
        let base = VarSet::weyl(&["x"], &[]);
        let target = embedded_algebra(&base, 1).unwrap();
        let dx = parse_weyl(&base, "dx").unwrap();
        assert_eq!(
            tau_substitute(&dx, &[f], &target).unwrap(),
            parse_weyl(&target, "dx+dt").unwrap()
        );
    }

    #[test]
    fn tau_second_power() {
        let cv = VarSet::commutative(&["x"]);
        let f = parse_cpoly(&cv, "x^2").unwrap();
        let base = VarSet::weyl(&["x"], &[]);
        let target = embedded_algebra(&base, 1).unwrap();
        let dx2 = parse_weyl(&base, "dx^2").unwrap();
        assert_eq!(
            tau_substitute(&dx2, &[f], &target).unwrap(),
            parse_weyl(&target, "dx^2+4*x*dx*dt+4*x^2*dt^2+2*dt").unwrap()
        );
    }

    #[test]
    fn tau_is_a_homomorphism() {
        let cv = VarSet::commutative(&["x", "y"]);
        let fs = vec![
            parse_cpoly(&cv, "x^2*y-1").unwrap(),
            parse_cpoly(&cv, "y^3+x").unwrap(),
        ];
        let base = VarSet::weyl(&["x", "y"], &[]);
        let target = embedded_algebra(&base, 2).unwrap();
        let samples = ["dx", "dy^2-x*dx", "x*y*dx*dy+3", "dx^2*dy-y"];
        for a in samples {
            for b in samples {
                let pa = parse_weyl(&base, a).unwrap();
                let pb = parse_weyl(&base, b).unwrap();
                let lhs =
                    tau_substitute(&pa.wmul(&pb).unwrap(), &fs, &target).unwrap();
                let rhs = tau_substitute(&pa, &fs, &target)
                    .unwrap()
                    .wmul(&tau_substitute(&pb, &fs, &target).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "tau({a} * {b})");
            }
        }
    }

    #[test]
    fn embed_variety_pair_generators() {
        let cv = VarSet::commutative(&["x", "y", "z"]);
        let f1 = parse_cpoly(&cv, "x^3-y^2*z").unwrap();
        let f2 = parse_cpoly(&cv, "x*y*(z^2+1)").unwrap();
        let ideal = embed_unit(&[f1, f2]).unwrap();
        let vs = ideal.vars().clone();
        let gens = ideal.gens();
        let expect: Vec<WeylOp> = [
            "t1-x^3+y^2*z",
            "t2-x*y*z^2-x*y",
            "dx+3*x^2*dt1+y*(z^2+1)*dt2",
            "dy-2*y*z*dt1+x*(z^2+1)*dt2",
            "dz-y^2*dt1+2*x*y*z*dt2",
        ]
        .iter()
        .map(|s| crate::expr::parse_weyl(&vs, s).unwrap())
        .collect();
        assert_eq!(gens.len(), 5);
        for e in &expect {
            assert!(gens.contains(e), "missing generator {e}");
        }
    }

    #[test]
    fn embed_trivial_line() {
        let cv = VarSet::commutative(&["x"]);
        let f = parse_cpoly(&cv, "x").unwrap();
        let ideal = embed_unit(&[f]).unwrap();
        let vs = ideal.vars().clone();
        let gens = ideal.gens();
        assert_eq!(gens.len(), 2);
        assert!(gens.contains(&crate::expr::parse_weyl(&vs, "t-x").unwrap()));
        assert!(gens.contains(&crate::expr::parse_weyl(&vs, "dx+dt").unwrap()));
    }

    #[test]
    fn embed_hypergeometric_singular_locus() {
        // three τ-images plus t − f for f = x1 x3 (4 x1 x3 − x2²)
        let base = VarSet::weyl(&["x1", "x2", "x3"], &["b1", "b2"]);
        let cv = VarSet::commutative(&["x1", "x2", "x3"]);
        let f = parse_cpoly(&cv, "x1*x3*(4*x1*x3-x2^2)").unwrap();
        let gens = vec![
            parse_weyl(&base, "x1*dx1+x2*dx2+x3*dx3-b1").unwrap(),
            parse_weyl(&base, "x2*dx2+2*x3*dx3-b2").unwrap(),
            parse_weyl(&base, "dx1*dx3-dx2^2").unwrap(),
        ];
        let ideal = graph_embed(&gens, &[f]).unwrap();
        assert_eq!(ideal.gens().len(), 4);
        let vs = ideal.vars().clone();
        let t_rel = crate::expr::parse_weyl(&vs, "t-4*x1^2*x3^2+x1*x2^2*x3").unwrap();
        assert!(ideal.gens().contains(&t_rel));
        // τ-image of the Euler operator picks up 4f·∂t
        let euler = crate::expr::parse_weyl(
            &vs,
            "x1*dx1+x2*dx2+x3*dx3-b1+(16*x1^2*x3^2-4*x1*x2^2*x3)*dt",
        )
        .unwrap();
        assert!(ideal.gens().contains(&euler));
    }

    #[test]
    fn embed_rejects_empty() {
        let base = VarSet::weyl(&["x"], &[]);
        let dx = parse_weyl(&base, "dx").unwrap();
        assert!(graph_embed(&[dx], &[]).is_err());
    }
}
