//! Buchberger with homogenization, division and syzygies for Weyl modules.

use std::sync::Arc;

use num_rational::BigRational;

use super::{VOrderSpec, WeylIdeal, WeylOp};
use crate::engine::{groebner, EPoly, Engine, RPolyV, RSc};
use crate::error::{CoreError, Result};
use crate::trace::gb_trace;
use crate::vars::VarSet;

fn vec_to_epoly(engine: &Engine, v: &[WeylOp]) -> EPoly {
    let mut terms = Vec::new();
    for (c, op) in v.iter().enumerate() {
        let e = op.to_epoly_at(engine, c as u32);
        terms.extend(e.terms);
    }
    let mut p = engine.normalize_int(terms);
    engine.make_primitive(&mut p);
    p
}

fn epoly_to_vec(vars: &Arc<VarSet>, p: &EPoly, rank: usize) -> Vec<WeylOp> {
    (0..rank)
        .map(|c| WeylOp::from_epoly_comp(vars, p, c as u32))
        .collect()
}

fn rpoly_to_vec(vars: &Arc<VarSet>, p: &RPolyV, rank: usize) -> Vec<WeylOp> {
    let mut comps = vec![Vec::new(); rank];
    for (c, m, a) in &p.terms {
        comps[*c as usize].push((m.clone(), a.clone()));
    }
    comps
        .into_iter()
        .map(|t| WeylOp::from_terms(vars, t))
        .collect()
}

fn rsc_to_op(vars: &Arc<VarSet>, e: &RSc) -> WeylOp {
    WeylOp::from_terms(
        vars,
        e.iter().map(|(m, c)| (m.clone(), c.clone())).collect(),
    )
}

/// Shifted V-order of a module element: max over components of
/// ord_Y(component) + shift.
pub(crate) fn vec_ord(v: &[WeylOp], shifts: &[i64]) -> Option<i64> {
    v.iter()
        .enumerate()
        .filter_map(|(c, op)| op.ord_y().map(|o| o + shifts.get(c).copied().unwrap_or(0)))
        .max()
}

/// V-adapted Groebner basis of a submodule of D^rank, with recorded
/// shifted orders.
pub fn v_adapted_gb_vec(
    vars: &Arc<VarSet>,
    rank: usize,
    gens: &[Vec<WeylOp>],
    spec: &VOrderSpec,
) -> Result<Vec<(Vec<WeylOp>, i64)>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let ord = spec.to_mod_ord(vars);
    let engine = Engine::new(vars.clone(), ord.clone());
    let egens: Vec<EPoly> = gens.iter().map(|g| vec_to_epoly(&engine, g)).collect();
    gb_trace!(1, "v_adapted_gb: {} generators over {}", egens.len(), vars);
    let run = groebner(vars, &ord, egens, true, false)?;
    let mut out = Vec::new();
    for p in &run.basis {
        let v = epoly_to_vec(vars, p, rank);
        let o = vec_ord(&v, &spec.shifts).ok_or_else(|| {
            CoreError::ContractFailure("zero element in reduced basis".into())
        })?;
        out.push((v, o));
    }
    Ok(out)
}

/// Rank-1 convenience: V-adapted Groebner basis of a left ideal.
pub fn v_adapted_gb(ideal: &WeylIdeal, spec: &VOrderSpec) -> Result<Vec<(WeylOp, i64)>> {
    assert_eq!(ideal.rank(), 1);
    let gb = v_adapted_gb_vec(ideal.vars(), 1, ideal.gens_vec(), spec)?;
    Ok(gb.into_iter().map(|(v, o)| (v[0].clone(), o)).collect())
}

/// Outcome of a division: `p = Σ quotients[i]·basis[i] + remainder`.
#[derive(Clone, Debug)]
pub struct DivisionOutcome {
    pub quotients: Vec<WeylOp>,
    pub remainder: Vec<WeylOp>,
}

/// Division of a module element by a basis under the shifted V-order.
/// With `stop` set, terms of shifted weight below the threshold are left in
/// the remainder unreduced (the partial division of the V-calculus).
pub fn divide_vec(
    p: &[WeylOp],
    basis: &[Vec<WeylOp>],
    vars: &Arc<VarSet>,
    spec: &VOrderSpec,
    stop: Option<i64>,
) -> Result<DivisionOutcome> {
    let ord = spec.to_mod_ord(vars);
    let engine = Engine::new(vars.clone(), ord);
    let ebasis: Vec<EPoly> = basis.iter().map(|g| vec_to_epoly(&engine, g)).collect();
    let frat = {
        let mut terms = Vec::new();
        for (c, op) in p.iter().enumerate() {
            for (m, a) in op.terms() {
                terms.push((c as u32, m.clone(), a.clone()));
            }
        }
        engine.normalize_rat(terms)
    };
    let (quots, rem) = engine.divide_rat(&frat, &ebasis, stop, 2_000_000)?;
    // divide_rat computed against the primitive integer forms of the basis;
    // rescale quotients to match the caller's exact generators
    let mut quotients = Vec::new();
    for (gi, q) in quots.iter().enumerate() {
        let scale = primitive_scale(&engine, &basis[gi]);
        let q2: RSc = q
            .iter()
            .map(|(m, c)| (m.clone(), c * &scale))
            .collect();
        quotients.push(rsc_to_op(vars, &q2));
    }
    let rank = p.len();
    Ok(DivisionOutcome {
        quotients,
        remainder: rpoly_to_vec(vars, &rem, rank),
    })
}

/// The factor λ with primitive(g) = λ·g, so quotients against the
/// primitive form convert back by q ↦ q·λ.
fn primitive_scale(engine: &Engine, g: &[WeylOp]) -> BigRational {
    let prim = vec_to_epoly(engine, g);
    // find a matching term to compute the ratio primitive/original
    let (c0, m0, a0) = prim.lead();
    for (c, op) in g.iter().enumerate() {
        if c as u32 == *c0 {
            for (m, a) in op.terms() {
                if m == m0 {
                    return BigRational::from(a0.clone()) / a;
                }
            }
        }
    }
    unreachable!("leading term of primitive form present in original")
}

/// Rank-1 division of operators.
pub fn divide(
    p: &WeylOp,
    basis: &[WeylOp],
    spec: &VOrderSpec,
    stop: Option<i64>,
) -> Result<(Vec<WeylOp>, WeylOp)> {
    let vars = p.vars().clone();
    let bvecs: Vec<Vec<WeylOp>> = basis.iter().map(|g| vec![g.clone()]).collect();
    let out = divide_vec(&[p.clone()], &bvecs, &vars, spec, stop)?;
    Ok((out.quotients, out.remainder[0].clone()))
}

/// Syzygies of a V-adapted basis, together with the induced shift vector
/// m′ = ord_Y[m] of each syzygy.
pub fn syzygies(
    vars: &Arc<VarSet>,
    gens: &[Vec<WeylOp>],
    spec: &VOrderSpec,
) -> Result<(Vec<Vec<WeylOp>>, Vec<i64>)> {
    if gens.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let ord = spec.to_mod_ord(vars);
    let engine = Engine::new(vars.clone(), ord.clone());
    let egens: Vec<EPoly> = gens.iter().map(|g| vec_to_epoly(&engine, g)).collect();
    // quotients from the engine refer to the primitive forms; rescale rows
    let scales: Vec<BigRational> = gens.iter().map(|g| primitive_scale(&engine, g)).collect();
    let run = groebner(vars, &ord, egens, false, true)?;
    let rows = run.syzygies.expect("requested syzygies");
    let mut out = Vec::new();
    let mut shifts = Vec::new();
    for row in rows {
        let v: Vec<WeylOp> = row
            .iter()
            .zip(&scales)
            .map(|(e, s)| {
                let scaled: RSc = e.iter().map(|(m, c)| (m.clone(), c * s)).collect();
                rsc_to_op(vars, &scaled)
            })
            .collect();
        if v.iter().all(|c| c.is_zero()) {
            continue;
        }
        let o = vec_ord(&v, &spec.shifts).unwrap_or(i64::MIN);
        out.push(v);
        shifts.push(o);
    }
    Ok((out, shifts))
}
