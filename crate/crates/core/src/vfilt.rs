//! From the annihilator to the ideal J ⊂ K[s, x(, y)].
//!
//! Three steps: extract generators of gr⁰ of the annihilator from a
//! V-adapted Groebner basis, intersect with the torus-invariant subalgebra
//! K[θ_1, …, θ_d] ⊗ D_n, then eliminate the derivations and the θ_i against
//! the relation s = θ_1 + ⋯ + θ_d.

use std::sync::Arc;

use crate::engine::{groebner, Engine};
use crate::error::{CoreError, Result};
use crate::exactalg::{CIdeal, Rat};
use crate::mono::Mono;
use crate::order::{ModOrd, MonoOrd};
use crate::vars::{CentralClass, CoordClass, Var, VarKind, VarSet};
use crate::weyl::{WeylIdeal, WeylOp};

/// Generators of gr⁰ of an annihilator ideal, as weight-homogeneous
/// operators of V-weight zero in the ambient D_{n+d}.
#[derive(Clone, Debug)]
pub struct Gr0Ideal {
    pub vars: Arc<VarSet>,
    pub gens: Vec<WeylOp>,
}

/// Generators of the intersection with K[θ]⊗D_n, over the algebra
/// (x, ∂x, θ_1..θ_d, params).
#[derive(Clone, Debug)]
pub struct ThetaIdeal {
    pub vars: Arc<VarSet>,
    pub d: usize,
    pub gens: Vec<WeylOp>,
}

/// All multi-indices over `d` slots of total size exactly `total`.
fn multi_indices(d: usize, total: u16) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; d];
    fn rec(out: &mut Vec<Vec<u16>>, cur: &mut Vec<u16>, slot: usize, left: u16) {
        if slot + 1 == cur.len() {
            cur[slot] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[slot] = e;
            rec(out, cur, slot + 1, left - e);
        }
    }
    if d == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, total);
    out
}

fn t_slots(vars: &VarSet) -> (Vec<usize>, Vec<usize>) {
    let ts = vars.slots_where(|v| v.kind == VarKind::Coord(CoordClass::T));
    let dts: Vec<usize> = ts
        .iter()
        .map(|&c| vars.deriv_of(c).expect("t-coordinate carries a derivation"))
        .collect();
    (ts, dts)
}

/// Monomial in only t- or ∂t-slots with the given exponents.
fn t_monomial(vars: &Arc<VarSet>, slots: &[usize], exps: &[u16]) -> WeylOp {
    let mut m = Mono::one(vars.len());
    for (&s, &e) in slots.iter().zip(exps) {
        m.set_exp(s, e);
    }
    WeylOp::from_terms(vars, vec![(m, Rat::from(num_bigint::BigInt::from(1)))])
}

/// Generators of gr⁰(Ann u) from the V-adapted Groebner basis: the
/// weight-0 part of g for ord 0, of t^β·g for ord r > 0 (|β| = r), and of
/// ∂t^β·g for ord r < 0 (|β| = −r).
pub fn gr0_generators(ideal: &WeylIdeal) -> Result<Gr0Ideal> {
    assert_eq!(ideal.rank(), 1);
    let vars = ideal.vars().clone();
    let (ts, dts) = t_slots(&vars);
    let d = ts.len();
    let gb = ideal.v_gb()?;
    let mut gens = Vec::new();
    for (v, r) in gb {
        let g = &v[0];
        match *r {
            0 => {
                let s = g.weight_part(0);
                if !s.is_zero() {
                    gens.push(s);
                }
            }
            r if r > 0 => {
                for beta in multi_indices(d, r as u16) {
                    let m = t_monomial(&vars, &ts, &beta);
                    let s = m.wmul(g)?.weight_part(0);
                    if !s.is_zero() {
                        gens.push(s);
                    }
                }
            }
            r => {
                for beta in multi_indices(d, (-r) as u16) {
                    let m = t_monomial(&vars, &dts, &beta);
                    let s = m.wmul(g)?.weight_part(0);
                    if !s.is_zero() {
                        gens.push(s);
                    }
                }
            }
        }
    }
    Ok(Gr0Ideal { vars, gens })
}

/// The algebra (x, ∂x, θ_1..θ_d central, params) matching a D_{n+d}.
fn theta_algebra(vars: &VarSet, d: usize) -> Result<Arc<VarSet>> {
    let mut out = Vec::new();
    for v in vars.vars() {
        match v.kind {
            VarKind::Coord(CoordClass::X) => out.push(v.clone()),
            VarKind::Deriv(of) if vars.var(of).kind == VarKind::Coord(CoordClass::X) => {
                let pos = out
                    .iter()
                    .position(|w| w.name == vars.var(of).name)
                    .expect("coordinate precedes derivation");
                out.push(Var {
                    name: v.name.clone(),
                    kind: VarKind::Deriv(pos),
                });
            }
            VarKind::Central(c) => out.push(Var {
                name: v.name.clone(),
                kind: VarKind::Central(c),
            }),
            _ => {}
        }
    }
    for i in 1..=d {
        out.push(Var {
            name: format!("~th{i}"),
            kind: VarKind::Central(CentralClass::Theta),
        });
    }
    VarSet::new(out)
}

/// Rewrite a per-pair balanced weight-0 operator into the θ-algebra:
/// t_i^k ∂t_i^k ↦ θ_i(θ_i−1)⋯(θ_i−k+1).
fn rewrite_balanced(op: &WeylOp, target: &Arc<VarSet>, ts: &[usize], dts: &[usize]) -> Result<WeylOp> {
    let vars = op.vars();
    let mut acc = WeylOp::zero(target);
    for (m, c) in op.terms() {
        let mut rest = m.clone();
        let mut factor = WeylOp::constant(target, c.clone());
        for (i, (&tc, &td)) in ts.iter().zip(dts).enumerate() {
            let a = m.exp(tc);
            let b = m.exp(td);
            if a != b {
                return Err(CoreError::ContractFailure(format!(
                    "term not balanced in pair ({}, {})",
                    vars.name(tc),
                    vars.name(td)
                )));
            }
            rest.set_exp(tc, 0);
            rest.set_exp(td, 0);
            if a > 0 {
                let th = WeylOp::var(target, &format!("~th{}", i + 1))?;
                for k in 0..a {
                    let shift = WeylOp::int(target, -(k as i64));
                    factor = factor.wmul(&th.add_ref(&shift)?)?;
                }
            }
        }
        // remaining x, ∂x, params move over by name; t-slots are spent
        let mut mm = Mono::one(target.len());
        for i in 0..rest.arity() {
            let e = rest.exp(i);
            if e > 0 {
                let j = target.index_of(vars.name(i)).ok_or_else(|| {
                    CoreError::ContractFailure(format!(
                        "generator {} has no image in the theta algebra",
                        vars.name(i)
                    ))
                })?;
                mm.set_exp(j, e);
            }
        }
        let restop = WeylOp::from_terms(
            target,
            vec![(mm, Rat::from(num_bigint::BigInt::from(1)))],
        );
        acc = acc.add_ref(&factor.wmul(&restop)?)?;
    }
    Ok(acc)
}

/// Intersect the gr⁰ ideal with the torus-invariant part K[θ]⊗D_n.
///
/// For d = 1 weight-0 operators are already balanced and only the θ-rewrite
/// happens.  For d ≥ 2, rescale t_i ↦ u_i t_i, ∂t_i ↦ v_i ∂t_i with central
/// pairs subject to u_i v_i = 1, eliminate u, v, split the survivors into
/// per-pair multidegree components and balance each by a minimal monomial.
pub fn torus_invariant_part(g0: &Gr0Ideal) -> Result<ThetaIdeal> {
    let vars = &g0.vars;
    let (ts, dts) = t_slots(vars);
    let d = ts.len();
    let target = theta_algebra(vars, d)?;
    if d == 0 {
        return Err(CoreError::InvalidArgument("no t-coordinates".into()));
    }
    if d == 1 {
        let mut gens = Vec::new();
        for g in &g0.gens {
            let r = rewrite_balanced(g, &target, &ts, &dts)?;
            if !r.is_zero() {
                gens.push(r);
            }
        }
        return Ok(ThetaIdeal {
            vars: target,
            d,
            gens,
        });
    }

    // extended algebra with central u_i, v_i
    let mut extra = Vec::new();
    for i in 1..=d {
        extra.push(Var {
            name: format!("~u{i}"),
            kind: VarKind::Central(CentralClass::Aux),
        });
        extra.push(Var {
            name: format!("~v{i}"),
            kind: VarKind::Central(CentralClass::Aux),
        });
    }
    let evars = vars.extended(&extra)?;
    let uslots: Vec<usize> = (1..=d)
        .map(|i| evars.index_of(&format!("~u{i}")).unwrap())
        .collect();
    let vslots: Vec<usize> = (1..=d)
        .map(|i| evars.index_of(&format!("~v{i}")).unwrap())
        .collect();
    let tse = ts.clone();
    let dtse = dts.clone();

    let mut gens = Vec::new();
    for g in &g0.gens {
        let ge = g.map_into(&evars)?;
        // rescale: multiply each term by u^(t-exponents) v^(∂t-exponents)
        let terms = ge
            .terms()
            .map(|(m, c)| {
                let mut mm = m.clone();
                for i in 0..d {
                    let a = m.exp(tse[i]);
                    let b = m.exp(dtse[i]);
                    mm.set_exp(uslots[i], a);
                    mm.set_exp(vslots[i], b);
                }
                (mm, c.clone())
            })
            .collect();
        gens.push(WeylOp::from_terms(&evars, terms));
    }
    for i in 0..d {
        let u = WeylOp::var(&evars, &format!("~u{}", i + 1))?;
        let v = WeylOp::var(&evars, &format!("~v{}", i + 1))?;
        gens.push(&u.wmul(&v)? - &WeylOp::one(&evars));
    }

    // eliminate u, v
    let mut lead: Vec<usize> = uslots.clone();
    lead.extend_from_slice(&vslots);
    let ord = ModOrd::term_over_position(MonoOrd::block_grevlex(lead.clone(), evars.len()));
    let engine = Engine::new(evars.clone(), ord.clone());
    let egens = gens.iter().map(|g| g.to_epoly_at(&engine, 0)).collect();
    let run = groebner(&evars, &ord, egens, true, false)?;
    let mut survivors = Vec::new();
    for p in &run.basis {
        let op = WeylOp::from_epoly_comp(&evars, p, 0);
        let free = op
            .terms()
            .all(|(m, _)| lead.iter().all(|&s| m.exp(s) == 0));
        if free {
            survivors.push(op.project_into(vars)?);
        }
    }

    // split into per-pair multidegree components and balance
    let mut gens = Vec::new();
    for f in &survivors {
        let mut groups: std::collections::BTreeMap<Vec<i64>, Vec<(Mono, Rat)>> =
            std::collections::BTreeMap::new();
        for (m, c) in f.terms() {
            let chi: Vec<i64> = (0..d)
                .map(|i| m.exp(dts[i]) as i64 - m.exp(ts[i]) as i64)
                .collect();
            groups.entry(chi).or_default().push((m.clone(), c.clone()));
        }
        for (chi, terms) in groups {
            let h = WeylOp::from_terms(vars, terms);
            // balancer of multidegree −chi
            let mut m = Mono::one(vars.len());
            for i in 0..d {
                if chi[i] > 0 {
                    m.set_exp(ts[i], chi[i] as u16);
                } else if chi[i] < 0 {
                    m.set_exp(dts[i], (-chi[i]) as u16);
                }
            }
            let bal = WeylOp::from_terms(vars, vec![(m, Rat::from(num_bigint::BigInt::from(1)))]);
            let b = bal.wmul(&h)?;
            let r = rewrite_balanced(&b, &target, &ts, &dts)?;
            if !r.is_zero() {
                gens.push(r);
            }
        }
    }
    Ok(ThetaIdeal {
        vars: target,
        d,
        gens,
    })
}

/// The commutative variable set of J: (s, x…, params…).
pub fn j_varset(vars: &VarSet) -> Arc<VarSet> {
    let mut out = vec![Var {
        name: "s".into(),
        kind: VarKind::Central(CentralClass::S),
    }];
    for v in vars.vars() {
        match v.kind {
            VarKind::Coord(CoordClass::X) => out.push(Var {
                name: v.name.clone(),
                kind: VarKind::Coord(CoordClass::X),
            }),
            VarKind::Central(CentralClass::Param) => out.push(v.clone()),
            _ => {}
        }
    }
    VarSet::new(out).expect("distinct names")
}

/// The ideal J_Y(u) ⊂ K[s, x(, y)] of a cyclic module given by its
/// annihilator in D_{n+d}.
pub fn j_ideal(ideal: &WeylIdeal) -> Result<CIdeal> {
    let g0 = gr0_generators(ideal)?;
    crate::trace::gb_trace!(1, "j_ideal: {} gr0 generators", g0.gens.len());
    let th = torus_invariant_part(&g0)?;
    crate::trace::gb_trace!(1, "j_ideal: {} theta generators", th.gens.len());
    j_ideal_from_theta(&th, ideal.vars())
}

fn j_ideal_from_theta(th: &ThetaIdeal, dvars: &VarSet) -> Result<CIdeal> {
    let d = th.d;
    // adjoin the central s with relation s − θ_1 − ⋯ − θ_d
    let svar = Var {
        name: "s".into(),
        kind: VarKind::Central(CentralClass::S),
    };
    let evars = th.vars.extended(std::slice::from_ref(&svar))?;
    let mut gens: Vec<WeylOp> = th
        .gens
        .iter()
        .map(|g| g.map_into(&evars))
        .collect::<Result<_>>()?;
    let mut rel = WeylOp::var(&evars, "s")?;
    for i in 1..=d {
        rel = &rel - &WeylOp::var(&evars, &format!("~th{i}"))?;
    }
    gens.push(rel);

    // eliminate θ_1..θ_d and all ∂x
    let mut lead = Vec::new();
    for (i, v) in evars.vars().iter().enumerate() {
        match v.kind {
            VarKind::Central(CentralClass::Theta) | VarKind::Deriv(_) => lead.push(i),
            _ => {}
        }
    }
    let ord = ModOrd::term_over_position(MonoOrd::block_grevlex(lead.clone(), evars.len()));
    let engine = Engine::new(evars.clone(), ord.clone());
    let egens = gens.iter().map(|g| g.to_epoly_at(&engine, 0)).collect();
    let run = groebner(&evars, &ord, egens, true, false)?;

    let jvars = j_varset(dvars);
    let mut out = Vec::new();
    for p in &run.basis {
        let op = WeylOp::from_epoly_comp(&evars, p, 0);
        let free = op
            .terms()
            .all(|(m, _)| lead.iter().all(|&s| m.exp(s) == 0));
        if free {
            out.push(op.to_cpoly(&jvars)?);
        }
    }
    Ok(CIdeal::new(&jvars, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{membership, CPoly, CTermOrder};
    use crate::expr::{parse_cpoly, parse_weyl};
    use crate::weyl::WeylIdeal;

    fn same_ideal(a: &CIdeal, b: &CIdeal) -> bool {
        a.gens()
            .iter()
            .all(|g| membership(g, b, &CTermOrder::Grevlex))
            && b.gens()
                .iter()
                .all(|g| membership(g, a, &CTermOrder::Grevlex))
    }

    #[test]
    fn gr0_passes_balanced_generators() {
        let vs = VarSet::weyl_with_t(&["x"], &["t"], &[]);
        let i = WeylIdeal::new(
            &vs,
            vec![
                parse_weyl(&vs, "t*dt-x").unwrap(),
                parse_weyl(&vs, "x^2-2").unwrap(),
            ],
        );
        let g0 = gr0_generators(&i).unwrap();
        assert!(g0.gens.contains(&parse_weyl(&vs, "t*dt-x").unwrap()));
        assert!(g0.gens.contains(&parse_weyl(&vs, "x^2-2").unwrap()));
    }

    #[test]
    fn gr0_of_dt_is_theta() {
        let vs = VarSet::weyl_with_t(&[], &["t"], &[]);
        let i = WeylIdeal::new(&vs, vec![parse_weyl(&vs, "dt").unwrap()]);
        let g0 = gr0_generators(&i).unwrap();
        assert_eq!(g0.gens, vec![parse_weyl(&vs, "t*dt").unwrap()]);
    }

    #[test]
    fn gr0_of_t_needs_the_absorbed_multiple() {
        // I = ⟨t⟩: gr⁰ is generated by the class of ∂t·t = θ + 1
        let vs = VarSet::weyl_with_t(&[], &["t"], &[]);
        let i = WeylIdeal::new(&vs, vec![parse_weyl(&vs, "t").unwrap()]);
        let g0 = gr0_generators(&i).unwrap();
        assert_eq!(g0.gens, vec![parse_weyl(&vs, "t*dt+1").unwrap()]);
    }

    #[test]
    fn gr0_nonholonomic_example() {
        let vs = VarSet::weyl_with_t(&["x", "y"], &["t"], &[]);
        let p1 = parse_weyl(&vs, "(x^2-2)*(t*dt^2-(x+y)*dt)").unwrap();
        let p2 = parse_weyl(&vs, "2*x*(dx-dy)+1").unwrap();
        let i = WeylIdeal::new(&vs, vec![p1, p2.clone()]);
        let g0 = gr0_generators(&i).unwrap();
        assert!(g0.gens.contains(&p2));
        // σ of t·P₃ is t²∂t² − (x+y)t∂t (the class of s² − (x+y+1)s)
        assert!(g0
            .gens
            .contains(&parse_weyl(&vs, "t^2*dt^2-(x+y)*t*dt").unwrap()));
    }

    #[test]
    fn torus_d1_rewrites_theta() {
        let vs = VarSet::weyl_with_t(&["x"], &["t"], &[]);
        let g0 = Gr0Ideal {
            vars: vs.clone(),
            gens: vec![
                parse_weyl(&vs, "t*dt-x").unwrap(),
                parse_weyl(&vs, "t^2*dt^2+t*dt").unwrap(),
            ],
        };
        let th = torus_invariant_part(&g0).unwrap();
        let tv = th.vars.clone();
        let theta = WeylOp::var(&tv, "~th1").unwrap();
        let x = WeylOp::var(&tv, "x").unwrap();
        assert_eq!(th.gens[0], &theta - &x);
        // t²∂t² + t∂t = θ(θ−1) + θ = θ²
        assert_eq!(th.gens[1], theta.pow(2).unwrap());
    }

    #[test]
    fn torus_d2_balances_cross_terms() {
        // the left ideal generated by t1 ∂t2 meets K[θ] in ⟨θ2(θ1+1)⟩
        let vs = VarSet::weyl_with_t(&[], &["t1", "t2"], &[]);
        let g0 = Gr0Ideal {
            vars: vs.clone(),
            gens: vec![parse_weyl(&vs, "t1*dt2").unwrap()],
        };
        let th = torus_invariant_part(&g0).unwrap();
        let tv = th.vars.clone();
        let th1 = WeylOp::var(&tv, "~th1").unwrap();
        let th2 = WeylOp::var(&tv, "~th2").unwrap();
        let expect = th2.wmul(&(&th1 + &WeylOp::one(&tv))).unwrap();
        // membership in the commutative ideal generated by the output
        let cvars = VarSet::commutative(&["~th1", "~th2"]);
        let gens: Vec<CPoly> = th
            .gens
            .iter()
            .map(|g| g.to_cpoly(&cvars).unwrap())
            .collect();
        let ideal = CIdeal::new(&cvars, gens);
        assert!(membership(
            &expect.to_cpoly(&cvars).unwrap(),
            &ideal,
            &CTermOrder::Grevlex
        ));
    }

    #[test]
    fn j_ideal_sqrt2() {
        let vs = VarSet::weyl_with_t(&["x"], &["t"], &[]);
        let i = WeylIdeal::new(
            &vs,
            vec![
                parse_weyl(&vs, "t*dt-x").unwrap(),
                parse_weyl(&vs, "x^2-2").unwrap(),
            ],
        );
        let j = j_ideal(&i).unwrap();
        let jv = j.vars().clone();
        let expect = CIdeal::new(
            &jv,
            vec![
                parse_cpoly(&jv, "s-x").unwrap(),
                parse_cpoly(&jv, "x^2-2").unwrap(),
            ],
        );
        assert!(same_ideal(&j, &expect));
    }

    #[test]
    fn j_ideal_nonholonomic() {
        let vs = VarSet::weyl_with_t(&["x", "y"], &["t"], &[]);
        let i = WeylIdeal::new(
            &vs,
            vec![
                parse_weyl(&vs, "(x^2-2)*(t*dt^2-(x+y)*dt)").unwrap(),
                parse_weyl(&vs, "2*x*(dx-dy)+1").unwrap(),
            ],
        );
        let j = j_ideal(&i).unwrap();
        let jv = j.vars().clone();
        let expect = CIdeal::new(&jv, vec![parse_cpoly(&jv, "s^2-(x+y+1)*s").unwrap()]);
        assert!(same_ideal(&j, &expect));
    }

    #[test]
    fn j_ideal_of_embedded_line() {
        let cv = VarSet::commutative(&["x"]);
        let f = parse_cpoly(&cv, "x").unwrap();
        let i = crate::graph::embed_unit(&[f]).unwrap();
        let j = j_ideal(&i).unwrap();
        let jv = j.vars().clone();
        let expect = CIdeal::new(
            &jv,
            vec![
                parse_cpoly(&jv, "s").unwrap(),
                parse_cpoly(&jv, "x").unwrap(),
            ],
        );
        assert!(same_ideal(&j, &expect));
    }

    #[test]
    fn j_ideal_monotone_under_redundant_generators() {
        let vs = VarSet::weyl_with_t(&["x"], &["t"], &[]);
        let g1 = parse_weyl(&vs, "t*dt-x").unwrap();
        let g2 = parse_weyl(&vs, "x^2-2").unwrap();
        let redundant = parse_weyl(&vs, "dx*(t*dt-x)+x*(x^2-2)").unwrap();
        let i1 = WeylIdeal::new(&vs, vec![g1.clone(), g2.clone()]);
        let i2 = WeylIdeal::new(&vs, vec![g1, g2, redundant]);
        let j1 = j_ideal(&i1).unwrap();
        let j2 = j_ideal(&i2).unwrap();
        assert!(same_ideal(&j1, &j2));
    }
}
