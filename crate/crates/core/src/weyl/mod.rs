//! The Weyl algebra with central parameters.
//!
//! Operators are stored in normal order: the exponent vector of a term
//! lists coordinate and central exponents together with derivation
//! exponents, read as x^a t^α y^c ∂x^b ∂t^β.  Multiplication applies the
//! Leibniz contractions pairwise; central variables never contract.

mod gb;

pub use gb::{divide, divide_vec, syzygies, v_adapted_gb, v_adapted_gb_vec, DivisionOutcome};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::engine::{EPoly, Engine};
use crate::error::{CoreError, Result};
use crate::exactalg::{CPoly, Rat};
use crate::mono::Mono;
use crate::order::{ModOrd, MonoOrd};
use crate::vars::{VarKind, VarSet};

/// A normally ordered element of the Weyl algebra over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOp {
    vars: Arc<VarSet>,
    terms: BTreeMap<Mono, Rat>,
}

impl WeylOp {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        WeylOp {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(vars.len()), c);
        }
        WeylOp {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn int(vars: &Arc<VarSet>, c: i64) -> Self {
        Self::constant(vars, Rat::from(BigInt::from(c)))
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::int(vars, 1)
    }

    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        let slot = vars
            .index_of(name)
            .ok_or_else(|| CoreError::InvalidArgument(format!("unknown generator {name}")))?;
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(vars.len(), slot), Rat::one());
        Ok(WeylOp {
            vars: vars.clone(),
            terms,
        })
    }

    pub fn from_terms(vars: &Arc<VarSet>, terms: Vec<(Mono, Rat)>) -> Self {
        let mut map: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            *map.entry(m).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, v| !v.is_zero());
        WeylOp {
            vars: vars.clone(),
            terms: map,
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_vars(&self, other: &WeylOp) -> Result<()> {
        if self.vars != other.vars {
            return Err(CoreError::VarSetMismatch(format!(
                "{} vs {}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn add_ref(&self, other: &WeylOp) -> Result<WeylOp> {
        self.check_vars(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Rat::zero);
            *e += c;
        }
        terms.retain(|_, v| !v.is_zero());
        Ok(WeylOp {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn neg_ref(&self) -> WeylOp {
        WeylOp {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub_ref(&self, other: &WeylOp) -> Result<WeylOp> {
        self.add_ref(&other.neg_ref())
    }

    pub fn scale(&self, c: &Rat) -> WeylOp {
        if c.is_zero() {
            return WeylOp::zero(&self.vars);
        }
        WeylOp {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Normal-ordered product; `self` acts first from the left.
    pub fn wmul(&self, other: &WeylOp) -> Result<WeylOp> {
        self.check_vars(other)?;
        let engine = scratch_engine(&self.vars);
        let mut terms: Vec<(Mono, Rat)> = Vec::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                for (mm, f) in engine.mono_mul(m1, m2) {
                    terms.push((mm, c1 * c2 * Rat::from(f)));
                }
            }
        }
        Ok(WeylOp::from_terms(&self.vars, terms))
    }

    pub fn pow(&self, n: u32) -> Result<WeylOp> {
        let mut r = WeylOp::one(&self.vars);
        for _ in 0..n {
            r = r.wmul(self)?;
        }
        Ok(r)
    }

    /// V-filtration order: max over terms of (∂t-degree − t-degree).
    /// `None` is the −∞ sentinel for the zero operator.
    pub fn ord_y(&self) -> Option<i64> {
        let w = self.vars.v_weights();
        self.terms.keys().map(|m| m.weighted_deg(&w)).max()
    }

    /// The weight-homogeneous part of the given V-weight.
    pub fn weight_part(&self, weight: i64) -> WeylOp {
        let w = self.vars.v_weights();
        WeylOp {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_deg(&w) == weight)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The principal symbol along the V-filtration: the part of weight
    /// ord_y(self).
    pub fn v_symbol(&self) -> WeylOp {
        match self.ord_y() {
            None => self.clone(),
            Some(r) => self.weight_part(r),
        }
    }

    /// True when every term satisfies weight ≤ `w`.
    pub fn in_v_level(&self, w: i64) -> bool {
        self.ord_y().map(|r| r <= w).unwrap_or(true)
    }

    /// Interpret a commutative polynomial as an operator.
    pub fn from_cpoly(p: &CPoly, target: &Arc<VarSet>) -> Result<WeylOp> {
        let map = p.vars().embedding_into(target)?;
        let terms = p
            .terms()
            .map(|(m, c)| (m.remapped(&map, target.len()), c.clone()))
            .collect();
        Ok(WeylOp {
            vars: target.clone(),
            terms,
        })
    }

    /// Extract a commutative polynomial; fails if any derivation occurs.
    pub fn to_cpoly(&self, target: &Arc<VarSet>) -> Result<CPoly> {
        for m in self.terms.keys() {
            for i in 0..m.arity() {
                if m.exp(i) > 0 {
                    if let VarKind::Deriv(_) = self.vars.var(i).kind {
                        return Err(CoreError::InvalidArgument(format!(
                            "operator contains derivation {}",
                            self.vars.name(i)
                        )));
                    }
                }
            }
        }
        let mut map = vec![usize::MAX; self.vars.len()];
        for (i, v) in self.vars.vars().iter().enumerate() {
            if let Some(j) = target.index_of(&v.name) {
                map[i] = j;
            }
        }
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let mut mm = Mono::one(target.len());
            for i in 0..m.arity() {
                let e = m.exp(i);
                if e > 0 {
                    if map[i] == usize::MAX {
                        return Err(CoreError::VarSetMismatch(format!(
                            "variable {} missing in target",
                            self.vars.name(i)
                        )));
                    }
                    mm.set_exp(map[i], e);
                }
            }
            terms.push((mm, c.clone()));
        }
        Ok(CPoly::from_terms(target, terms))
    }

    /// Move this operator into a larger algebra (matching names).
    pub fn map_into(&self, target: &Arc<VarSet>) -> Result<WeylOp> {
        let map = self.vars.embedding_into(target)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.remapped(&map, target.len()), c.clone()))
            .collect();
        Ok(WeylOp {
            vars: target.clone(),
            terms,
        })
    }

    /// Project into a smaller algebra; fails if a dropped generator occurs.
    pub fn project_into(&self, target: &Arc<VarSet>) -> Result<WeylOp> {
        let mut map = vec![usize::MAX; self.vars.len()];
        for (i, v) in self.vars.vars().iter().enumerate() {
            if let Some(j) = target.index_of(&v.name) {
                map[i] = j;
            }
        }
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let mut mm = Mono::one(target.len());
            for i in 0..m.arity() {
                let e = m.exp(i);
                if e > 0 {
                    if map[i] == usize::MAX {
                        return Err(CoreError::VarSetMismatch(format!(
                            "generator {} does not exist in target",
                            self.vars.name(i)
                        )));
                    }
                    mm.set_exp(map[i], e);
                }
            }
            terms.push((mm, c.clone()));
        }
        Ok(WeylOp::from_terms(target, terms))
    }

    // engine conversions ------------------------------------------------

    pub(crate) fn to_epoly_at(&self, engine: &Engine, comp: u32) -> EPoly {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let v = (c * Rat::from(den.clone())).to_integer();
                (comp, m.clone(), v)
            })
            .collect();
        engine.normalize_int(terms)
    }

    pub(crate) fn from_epoly_comp(vars: &Arc<VarSet>, p: &EPoly, comp: u32) -> WeylOp {
        WeylOp {
            vars: vars.clone(),
            terms: p
                .terms
                .iter()
                .filter(|(c, _, _)| *c == comp)
                .map(|(_, m, a)| (m.clone(), Rat::from(a.clone())))
                .collect(),
        }
    }
}

fn scratch_engine(vars: &Arc<VarSet>) -> Engine {
    Engine::new(
        vars.clone(),
        ModOrd::term_over_position(MonoOrd::grevlex(vars.len())),
    )
}

impl Add for &WeylOp {
    type Output = WeylOp;
    fn add(self, rhs: &WeylOp) -> WeylOp {
        self.add_ref(rhs).expect("algebra mismatch")
    }
}

impl Sub for &WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: &WeylOp) -> WeylOp {
        self.sub_ref(rhs).expect("algebra mismatch")
    }
}

impl Mul for &WeylOp {
    type Output = WeylOp;
    fn mul(self, rhs: &WeylOp) -> WeylOp {
        self.wmul(rhs).expect("algebra mismatch")
    }
}

impl Neg for &WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        self.neg_ref()
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ord = MonoOrd::grevlex(self.vars.len());
        let mut terms: Vec<(&Mono, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|a, b| ord.cmp(b.0, a.0).then(b.0.cmp(a.0)));
        let mut first = true;
        for (m, c) in terms {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                if mag.denom().is_one() {
                    factors.push(format!("{}", mag.numer()));
                } else {
                    factors.push(format!("{}/{}", mag.numer(), mag.denom()));
                }
            }
            // coordinates and central variables first, derivations last,
            // so that re-parsing the product reproduces the normal order
            let emit = |i: usize, e: u16, factors: &mut Vec<String>| {
                if e == 1 {
                    factors.push(self.vars.name(i).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.vars.name(i), e));
                }
            };
            for i in 0..m.arity() {
                if !matches!(self.vars.var(i).kind, VarKind::Deriv(_)) {
                    emit(i, m.exp(i), &mut factors);
                }
            }
            for i in 0..m.arity() {
                if matches!(self.vars.var(i).kind, VarKind::Deriv(_)) {
                    emit(i, m.exp(i), &mut factors);
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// A V-order specification: the V-filtration weight of the ambient algebra,
/// per-component shifts, and the fixed graded-reverse-lex tiebreak.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VOrderSpec {
    pub shifts: Vec<i64>,
}

impl VOrderSpec {
    pub fn ideal() -> Self {
        VOrderSpec { shifts: vec![0] }
    }

    pub fn with_shifts(shifts: Vec<i64>) -> Self {
        VOrderSpec { shifts }
    }

    pub fn to_mod_ord(&self, vars: &VarSet) -> ModOrd {
        ModOrd::with_weight(
            MonoOrd::grevlex(vars.len()),
            vars.v_weights(),
            self.shifts.clone(),
        )
    }
}

/// A left ideal (or submodule of a free module) of the Weyl algebra.
#[derive(Debug)]
pub struct WeylIdeal {
    vars: Arc<VarSet>,
    rank: usize,
    gens: Vec<Vec<WeylOp>>,
    cache: OnceLock<Vec<(Vec<WeylOp>, i64)>>,
}

impl Clone for WeylIdeal {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(v) = self.cache.get() {
            let _ = cache.set(v.clone());
        }
        WeylIdeal {
            vars: self.vars.clone(),
            rank: self.rank,
            gens: self.gens.clone(),
            cache,
        }
    }
}

impl WeylIdeal {
    /// Left ideal generated by scalar operators.
    pub fn new(vars: &Arc<VarSet>, gens: Vec<WeylOp>) -> Self {
        WeylIdeal {
            vars: vars.clone(),
            rank: 1,
            gens: gens
                .into_iter()
                .filter(|g| !g.is_zero())
                .map(|g| vec![g])
                .collect(),
            cache: OnceLock::new(),
        }
    }

    pub fn new_module(vars: &Arc<VarSet>, rank: usize, gens: Vec<Vec<WeylOp>>) -> Self {
        WeylIdeal {
            vars: vars.clone(),
            rank,
            gens: gens
                .into_iter()
                .filter(|g| g.iter().any(|c| !c.is_zero()))
                .collect(),
            cache: OnceLock::new(),
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> Vec<WeylOp> {
        assert_eq!(self.rank, 1, "scalar generators of a rank-1 ideal");
        self.gens.iter().map(|v| v[0].clone()).collect()
    }

    pub fn gens_vec(&self) -> &[Vec<WeylOp>] {
        &self.gens
    }

    /// The V-adapted Groebner basis with recorded ord_Y values, cached.
    /// Shifts are zero; shifted variants bypass the cache.
    pub fn v_gb(&self) -> Result<&[(Vec<WeylOp>, i64)]> {
        if self.cache.get().is_none() {
            let spec = VOrderSpec::with_shifts(vec![0; self.rank]);
            let gb = v_adapted_gb_vec(&self.vars, self.rank, &self.gens, &spec)?;
            let _ = self.cache.set(gb);
        }
        Ok(self.cache.get().unwrap().as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_weyl;
    use crate::vars::VarSet;

    fn d2t() -> Arc<VarSet> {
        // x, y with one t: D_3 with V-filtration along {t = 0}
        VarSet::weyl_with_t(&["x", "y"], &["t"], &[])
    }

    fn op(vs: &Arc<VarSet>, text: &str) -> WeylOp {
        parse_weyl(vs, text).unwrap()
    }

    /// Independent oracle: the action of an operator on a polynomial in the
    /// coordinates (derivations act by differentiation).
    fn apply(p: &WeylOp, f: &CPoly) -> CPoly {
        let vars = p.vars();
        let mut acc = CPoly::zero(f.vars());
        for (m, c) in p.terms() {
            let mut g = f.clone();
            // derivations first (rightmost factors act first)
            for (i, v) in vars.vars().iter().enumerate() {
                if let VarKind::Deriv(of) = v.kind {
                    for _ in 0..m.exp(i) {
                        g = g.derivative(&vars.var(of).name).unwrap();
                    }
                }
            }
            // then multiply by the coordinate part
            for (i, v) in vars.vars().iter().enumerate() {
                let e = m.exp(i);
                if e > 0 && !matches!(v.kind, VarKind::Deriv(_)) {
                    let x = CPoly::var(f.vars(), &v.name).unwrap();
                    g = g.mul_ref(&x.pow(e as u32)).unwrap();
                }
            }
            acc = acc.add_ref(&g.scale(c)).unwrap();
        }
        acc
    }

    #[test]
    fn canonical_commutator() {
        let vs = d2t();
        assert_eq!(op(&vs, "dx*x"), op(&vs, "x*dx+1"));
        assert_eq!(op(&vs, "dt^2*t"), op(&vs, "t*dt^2+2*dt"));
        assert_eq!(op(&vs, "t*dt*t*dt"), op(&vs, "t^2*dt^2+t*dt"));
    }

    #[test]
    fn commutators_of_generators() {
        let vs = d2t();
        for a in ["x", "y", "t"] {
            for b in ["x", "y", "t"] {
                let lhs = &op(&vs, &format!("d{a}*{b}")) - &op(&vs, &format!("{b}*d{a}"));
                let expect = if a == b {
                    WeylOp::one(&vs)
                } else {
                    WeylOp::zero(&vs)
                };
                assert_eq!(lhs, expect, "[d{a}, {b}]");
            }
        }
    }

    #[test]
    fn normal_ordering_matches_action_oracle() {
        let vs = d2t();
        let cv = VarSet::commutative(&["x", "y", "t"]);
        let probes: Vec<CPoly> = ["t^3", "x*t^2", "x^2*y*t", "x+y+t+1"]
            .iter()
            .map(|s| crate::expr::parse_cpoly(&cv, s).unwrap())
            .collect();
        let pairs = [
            ("t*dt", "t*dt"),
            ("dt^2", "t^2"),
            ("x*dx+t*dt", "dx*dt*x*t"),
            ("dx+3*x^2*dt", "x*t-2"),
        ];
        for (a, b) in pairs {
            let pa = op(&vs, a);
            let pb = op(&vs, b);
            let prod = pa.wmul(&pb).unwrap();
            for f in &probes {
                assert_eq!(
                    apply(&prod, f),
                    apply(&pa, &apply(&pb, f)),
                    "({a})*({b}) on {f}"
                );
            }
        }
    }

    #[test]
    fn ord_y_examples() {
        let vs = d2t();
        assert_eq!(op(&vs, "t*dt^2-(x+y)*dt").ord_y(), Some(1));
        assert_eq!(op(&vs, "t-x").ord_y(), Some(0));
        assert_eq!(op(&vs, "dx").ord_y(), Some(0));
        assert_eq!(WeylOp::zero(&vs).ord_y(), None);
    }

    #[test]
    fn ord_y_subadditive() {
        let vs = d2t();
        let samples = ["t*dt^2", "x*dt-t", "dt+x^2", "t^2*dx", "t*dt-x"];
        for a in samples {
            for b in samples {
                let pa = op(&vs, a);
                let pb = op(&vs, b);
                let prod = pa.wmul(&pb).unwrap();
                if let Some(o) = prod.ord_y() {
                    assert!(o <= pa.ord_y().unwrap() + pb.ord_y().unwrap());
                }
            }
        }
    }

    #[test]
    fn v_gb_sqrt2_inputs_fixed() {
        let vs = VarSet::weyl_with_t(&["x"], &["t"], &[]);
        let ideal = WeylIdeal::new(&vs, vec![op(&vs, "t*dt-x"), op(&vs, "x^2-2")]);
        let gb = ideal.v_gb().unwrap();
        let got: Vec<String> = gb.iter().map(|(v, o)| format!("{} @{o}", v[0])).collect();
        assert_eq!(got, vec!["t*dt-x @0", "x^2-2 @0"]);
    }

    #[test]
    fn v_gb_single_dt() {
        let vs = VarSet::weyl_with_t(&[], &["t"], &[]);
        let ideal = WeylIdeal::new(&vs, vec![op(&vs, "dt")]);
        let gb = ideal.v_gb().unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].0[0], op(&vs, "dt"));
        assert_eq!(gb[0].1, 1);
    }

    #[test]
    fn division_examples() {
        let vs = VarSet::weyl_with_t(&["x"], &["t"], &[]);
        let spec = VOrderSpec::ideal();
        // θ − x by {t∂t − x}
        let (q, r) = divide(
            &op(&vs, "t*dt-x"),
            &[op(&vs, "t*dt-x")],
            &spec,
            None,
        )
        .unwrap();
        assert!(r.is_zero());
        assert_eq!(q[0], WeylOp::one(&vs));
        // ∂x by {∂t}: untouched
        let (q, r) = divide(&op(&vs, "dx"), &[op(&vs, "dt")], &spec, None).unwrap();
        assert!(q[0].is_zero());
        assert_eq!(r, op(&vs, "dx"));
    }

    #[test]
    fn division_reconstructs() {
        let vs = d2t();
        let spec = VOrderSpec::ideal();
        let basis = vec![op(&vs, "t*dt^2-(x+y)*dt"), op(&vs, "2*x*dx-2*x*dy+1")];
        let p = op(&vs, "t^2*dt^3+x*dx*dt-y^2");
        let (q, r) = divide(&p, &basis, &spec, None).unwrap();
        let mut acc = r.clone();
        for (qi, gi) in q.iter().zip(&basis) {
            acc = acc.add_ref(&qi.wmul(gi).unwrap()).unwrap();
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn syzygy_examples() {
        let vs = VarSet::weyl_with_t(&[], &["t"], &[]);
        let spec = VOrderSpec::ideal();
        // a principal ideal in a domain has no syzygies from one generator
        let (syz, _) = syzygies(&vs, &[vec![op(&vs, "dt")]], &spec).unwrap();
        assert!(syz.is_empty());
        // {t, ∂t·t}: ∂t·(t) − 1·(∂t t) = 0
        let g1 = op(&vs, "t");
        let g2 = op(&vs, "dt*t");
        let (syz, shifts) = syzygies(&vs, &[vec![g1.clone()], vec![g2.clone()]], &spec).unwrap();
        assert!(!syz.is_empty());
        for row in &syz {
            let img = &row[0].wmul(&g1).unwrap() + &row[1].wmul(&g2).unwrap();
            assert!(img.is_zero(), "ψ-image must vanish");
        }
        assert_eq!(syz.len(), shifts.len());
    }
}
