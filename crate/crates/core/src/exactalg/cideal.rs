//! Ideals of K[x] and the commutative Groebner operations.

use std::sync::{Arc, OnceLock};

use super::cpoly::CPoly;
use crate::engine::{groebner, Engine};
use crate::error::{CoreError, Result};
use crate::order::{CTermOrder, ModOrd};
use crate::vars::{CentralClass, Var, VarKind, VarSet};

/// A commutative ideal given by generators, with a one-shot cache for the
/// reduced Groebner basis of the first order asked for.
#[derive(Debug)]
pub struct CIdeal {
    gens: Vec<CPoly>,
    vars: Arc<VarSet>,
    cache: OnceLock<(CTermOrder, Vec<CPoly>)>,
}

impl Clone for CIdeal {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(v) = self.cache.get() {
            let _ = cache.set(v.clone());
        }
        CIdeal {
            gens: self.gens.clone(),
            vars: self.vars.clone(),
            cache,
        }
    }
}

impl CIdeal {
    pub fn new(vars: &Arc<VarSet>, gens: Vec<CPoly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        CIdeal {
            gens,
            vars: vars.clone(),
            cache: OnceLock::new(),
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn gens(&self) -> &[CPoly] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced Groebner basis (content-1, positive leading coefficient),
    /// cached for the first order requested.
    pub fn gb(&self, ord: &CTermOrder) -> Vec<CPoly> {
        if let Some((o, g)) = self.cache.get() {
            if o == ord {
                return g.clone();
            }
        }
        let g = reduced_gb_uncached(&self.vars, &self.gens, ord);
        let _ = self.cache.set((ord.clone(), g.clone()));
        g
    }

    /// True when the ideal is the whole ring.
    pub fn is_ring(&self) -> bool {
        let g = self.gb(&CTermOrder::Grevlex);
        g.len() == 1 && g[0].is_constant()
    }
}

fn reduced_gb_uncached(vars: &Arc<VarSet>, gens: &[CPoly], ord: &CTermOrder) -> Vec<CPoly> {
    if gens.is_empty() {
        return Vec::new();
    }
    let mord = ModOrd::term_over_position(ord.to_mono_ord(vars));
    let engine = Engine::new(vars.clone(), mord.clone());
    let egens = gens.iter().map(|g| g.to_epoly(&engine)).collect();
    let run = groebner(vars, &mord, egens, true, false).expect("commutative gb");
    run.basis
        .iter()
        .map(|p| CPoly::from_epoly(vars, p))
        .collect()
}

/// The unique reduced Groebner basis of `ideal` for the given order.
pub fn reduced_gb(ideal: &CIdeal, ord: &CTermOrder) -> Vec<CPoly> {
    ideal.gb(ord)
}

/// Normal-form membership test.
pub fn membership(f: &CPoly, ideal: &CIdeal, ord: &CTermOrder) -> bool {
    if f.is_zero() {
        return true;
    }
    if ideal.is_zero_ideal() {
        return false;
    }
    let gb = ideal.gb(ord);
    let mord = ModOrd::term_over_position(ord.to_mono_ord(ideal.vars()));
    let engine = Engine::new(ideal.vars().clone(), mord);
    let basis: Vec<_> = gb.iter().map(|g| g.to_epoly(&engine)).collect();
    let fe = f.to_epoly(&engine);
    engine.reduce_int(fe, &basis, None).is_zero()
}

/// Generators of I ∩ K[remaining variables], by a block order with the
/// dropped variables in the leading block.
pub fn elim_ideal(ideal: &CIdeal, drop_vars: &[&str]) -> CIdeal {
    let vars = ideal.vars();
    if drop_vars.is_empty() || ideal.is_zero_ideal() {
        return ideal.clone();
    }
    let ord = CTermOrder::Block(drop_vars.iter().map(|s| s.to_string()).collect());
    let gb = reduced_gb_uncached(vars, ideal.gens(), &ord);
    let dropped: Vec<usize> = drop_vars.iter().filter_map(|n| vars.index_of(n)).collect();
    let kept: Vec<CPoly> = gb
        .into_iter()
        .filter(|g| g.support().iter().all(|s| !dropped.contains(s)))
        .collect();
    CIdeal::new(vars, kept)
}

/// Intersection of two ideals by the auxiliary-variable trick:
/// I ∩ J = (w·I + (1−w)·J) ∩ K[x].
pub fn ideal_intersection(a: &CIdeal, b: &CIdeal) -> Result<CIdeal> {
    let vars = a.vars();
    if a.is_zero_ideal() || b.is_zero_ideal() {
        return Ok(CIdeal::new(vars, Vec::new()));
    }
    let aux = Var {
        name: "~w".into(),
        kind: VarKind::Central(CentralClass::Aux),
    };
    let evars = vars.extended(std::slice::from_ref(&aux))?;
    let w = CPoly::var(&evars, "~w")?;
    let one = CPoly::one(&evars);
    let mut gens = Vec::new();
    for g in a.gens() {
        gens.push(&w * &g.map_into(&evars)?);
    }
    let omw = &one - &w;
    for g in b.gens() {
        gens.push(&omw * &g.map_into(&evars)?);
    }
    let ext = CIdeal::new(&evars, gens);
    let elim = elim_ideal(&ext, &["~w"]);
    let back: Result<Vec<CPoly>> = elim.gens().iter().map(|g| g.project_into(vars)).collect();
    Ok(CIdeal::new(vars, back?))
}

/// The colon ideal I : f = { g | g·f ∈ I }, via (I ∩ ⟨f⟩)/f.
pub fn colon_ideal(ideal: &CIdeal, f: &CPoly) -> Result<CIdeal> {
    if f.is_zero() {
        return Err(CoreError::InvalidArgument("colon by zero".into()));
    }
    let vars = ideal.vars();
    let fid = CIdeal::new(vars, vec![f.clone()]);
    let inter = ideal_intersection(ideal, &fid)?;
    let mut gens = Vec::new();
    for g in inter.gens() {
        let q = g.exact_div(f).ok_or_else(|| {
            CoreError::ContractFailure("intersection element not divisible by f".into())
        })?;
        gens.push(q);
    }
    Ok(CIdeal::new(vars, gens))
}

/// Radical membership by the Rabinowitsch trick:
/// f ∈ √I  ⟺  1 ∈ I + ⟨1 − z·f⟩.
pub fn radical_membership(f: &CPoly, ideal: &CIdeal) -> bool {
    if f.is_zero() {
        return true;
    }
    let vars = ideal.vars();
    let aux = Var {
        name: "~z".into(),
        kind: VarKind::Central(CentralClass::Aux),
    };
    let evars = vars.extended(std::slice::from_ref(&aux)).expect("fresh aux");
    let z = CPoly::var(&evars, "~z").unwrap();
    let one = CPoly::one(&evars);
    let mut gens: Vec<CPoly> = ideal
        .gens()
        .iter()
        .map(|g| g.map_into(&evars).unwrap())
        .collect();
    gens.push(&one - &(&z * &f.map_into(&evars).unwrap()));
    CIdeal::new(&evars, gens).is_ring()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_cpoly;
    use crate::order::CTermOrder;

    fn ideal(vs: &Arc<VarSet>, gens: &[&str]) -> CIdeal {
        CIdeal::new(
            vs,
            gens.iter().map(|g| parse_cpoly(vs, g).unwrap()).collect(),
        )
    }

    #[test]
    fn reduced_gb_lex_sqrt2() {
        let vs = VarSet::commutative(&["s", "x"]);
        let i = ideal(&vs, &["s-x", "x^2-2"]);
        let mut gb = i.gb(&CTermOrder::Lex(vec!["s".into(), "x".into()]));
        gb.sort_by_key(|p| p.to_string());
        let mut expect: Vec<_> = ["s-x", "x^2-2"]
            .iter()
            .map(|g| parse_cpoly(&vs, g).unwrap())
            .collect();
        expect.sort_by_key(|p| p.to_string());
        assert_eq!(gb, expect);
    }

    #[test]
    fn reduced_gb_drops_redundant() {
        let vs = VarSet::commutative(&["x"]);
        let i = ideal(&vs, &["x", "x^2"]);
        assert_eq!(
            i.gb(&CTermOrder::Grevlex),
            vec![parse_cpoly(&vs, "x").unwrap()]
        );
    }

    #[test]
    fn reduced_gb_spair() {
        let vs = VarSet::commutative(&["x", "y"]);
        let i = ideal(&vs, &["x^2+y^2", "x^2-y^2"]);
        let gb = i.gb(&CTermOrder::Grevlex);
        let expect: Vec<_> = ["y^2", "x^2"]
            .iter()
            .map(|g| parse_cpoly(&vs, g).unwrap())
            .collect();
        let mut got = gb.clone();
        got.sort_by_key(|p| p.to_string());
        let mut want = expect.clone();
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
    }

    #[test]
    fn reduced_gb_idempotent_and_deterministic() {
        let vs = VarSet::commutative(&["x", "y", "z"]);
        let i = ideal(&vs, &["x*y-z", "y^2-x", "x^2*z-y"]);
        let gb1 = i.gb(&CTermOrder::Grevlex);
        let j = CIdeal::new(&vs, gb1.clone());
        let gb2 = j.gb(&CTermOrder::Grevlex);
        assert_eq!(gb1, gb2);
    }

    #[test]
    fn elimination_sqrt2() {
        let vs = VarSet::commutative(&["s", "x"]);
        let i = ideal(&vs, &["s-x", "x^2-2"]);
        let e = elim_ideal(&i, &["x"]);
        assert_eq!(e.gens(), &[parse_cpoly(&vs, "s^2-2").unwrap()]);
    }

    #[test]
    fn elimination_to_zero() {
        let vs = VarSet::commutative(&["s", "x", "y"]);
        let i = ideal(&vs, &["s^2-(x+y+1)*s"]);
        let e = elim_ideal(&i, &["x", "y"]);
        assert!(e.is_zero_ideal());
    }

    #[test]
    fn elimination_of_nothing() {
        let vs = VarSet::commutative(&["x"]);
        let i = ideal(&vs, &["x-1"]);
        let e = elim_ideal(&i, &[]);
        assert_eq!(e.gens(), i.gens());
    }

    #[test]
    fn colon_examples() {
        let vs = VarSet::commutative(&["s", "x", "y"]);
        let i = ideal(&vs, &["x*s"]);
        let c = colon_ideal(&i, &parse_cpoly(&vs, "s").unwrap()).unwrap();
        assert_eq!(c.gb(&CTermOrder::Grevlex), vec![parse_cpoly(&vs, "x").unwrap()]);

        let i = ideal(&vs, &["s^2-2"]);
        let c = colon_ideal(&i, &parse_cpoly(&vs, "s-1").unwrap()).unwrap();
        assert_eq!(
            c.gb(&CTermOrder::Grevlex),
            vec![parse_cpoly(&vs, "s^2-2").unwrap()]
        );

        let i = ideal(&vs, &["x^2*y"]);
        let c = colon_ideal(&i, &parse_cpoly(&vs, "x").unwrap()).unwrap();
        assert_eq!(
            c.gb(&CTermOrder::Grevlex),
            vec![parse_cpoly(&vs, "x*y").unwrap()]
        );

        assert!(colon_ideal(&i, &CPoly::zero(&vs)).is_err());
    }

    #[test]
    fn membership_examples() {
        let vs = VarSet::commutative(&["s", "x", "y"]);
        let i = ideal(&vs, &["s-x", "x^2-2"]);
        assert!(membership(
            &parse_cpoly(&vs, "s^2-2").unwrap(),
            &i,
            &CTermOrder::Grevlex
        ));
        let i = ideal(&vs, &["x", "y"]);
        assert!(!membership(&CPoly::one(&vs), &i, &CTermOrder::Grevlex));
        let i = ideal(&vs, &["x-y", "2*y"]);
        assert!(membership(
            &parse_cpoly(&vs, "x+y").unwrap(),
            &i,
            &CTermOrder::Grevlex
        ));
    }

    #[test]
    fn radical_membership_examples() {
        let vs = VarSet::commutative(&["x", "y"]);
        let i = ideal(&vs, &["x^2"]);
        assert!(radical_membership(&parse_cpoly(&vs, "x").unwrap(), &i));
        let i = ideal(&vs, &["x"]);
        assert!(!radical_membership(&parse_cpoly(&vs, "y").unwrap(), &i));
        let i = ideal(&vs, &["x^2", "x*y"]);
        assert!(radical_membership(&parse_cpoly(&vs, "x").unwrap(), &i));
        assert!(!radical_membership(&parse_cpoly(&vs, "y").unwrap(), &i));
    }
}
