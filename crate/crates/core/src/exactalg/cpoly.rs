//! Sparse exact multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;
use crate::engine::{EPoly, Engine};
use crate::error::{CoreError, Result};
use crate::mono::Mono;
use crate::order::{ModOrd, MonoOrd};
use crate::vars::VarSet;

/// A polynomial over ℚ: sparse map from exponent vectors to nonzero
/// coefficients, over a fixed variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPoly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Mono, Rat>,
}

impl CPoly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        CPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(vars.len()), c);
        }
        CPoly {
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
            .ok_or_else(|| CoreError::InvalidArgument(format!("unknown variable {name}")))?;
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(vars.len(), slot), Rat::one());
        Ok(CPoly {
            vars: vars.clone(),
            terms,
        })
    }

    pub fn from_terms(vars: &Arc<VarSet>, terms: Vec<(Mono, Rat)>) -> Self {
        let mut map: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), vars.len());
            if c.is_zero() {
                continue;
            }
            *map.entry(m).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, v| !v.is_zero());
        CPoly { vars: vars.clone(), terms: map }
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

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    fn check_vars(&self, other: &CPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(CoreError::VarSetMismatch(format!(
                "{} vs {}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn add_ref(&self, other: &CPoly) -> Result<CPoly> {
        self.check_vars(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Rat::zero);
            *e += c;
        }
        terms.retain(|_, v| !v.is_zero());
        Ok(CPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn sub_ref(&self, other: &CPoly) -> Result<CPoly> {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> CPoly {
        CPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul_ref(&self, other: &CPoly) -> Result<CPoly> {
        self.check_vars(other)?;
        let mut terms: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let e = terms.entry(m).or_insert_with(Rat::zero);
                *e += c1 * c2;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Ok(CPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Rat) -> CPoly {
        if c.is_zero() {
            return CPoly::zero(&self.vars);
        }
        CPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> CPoly {
        let mut r = CPoly::one(&self.vars);
        for _ in 0..n {
            r = r.mul_ref(self).expect("same vars");
        }
        r
    }

    /// Partial derivative with respect to the named variable.
    pub fn derivative(&self, name: &str) -> Result<CPoly> {
        let slot = self
            .vars
            .index_of(name)
            .ok_or_else(|| CoreError::InvalidArgument(format!("unknown variable {name}")))?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(slot);
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.set_exp(slot, e - 1);
            let cc = c * Rat::from(BigInt::from(e));
            let ent = terms.entry(mm).or_insert_with(Rat::zero);
            *ent += cc;
        }
        terms.retain(|_, v: &mut Rat| !v.is_zero());
        Ok(CPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Substitute a polynomial for the named variable.
    pub fn substitute(&self, name: &str, value: &CPoly) -> Result<CPoly> {
        let slot = self
            .vars
            .index_of(name)
            .ok_or_else(|| CoreError::InvalidArgument(format!("unknown variable {name}")))?;
        let mut acc = CPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(slot);
            let mut mm = m.clone();
            mm.set_exp(slot, 0);
            let base = CPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(mm, c.clone())]),
            };
            let vp = value.pow(e as u32);
            acc = acc.add_ref(&base.mul_ref(&vp)?)?;
        }
        Ok(acc)
    }

    /// Degree in the named variable, or None for the zero polynomial.
    pub fn degree_in(&self, name: &str) -> Option<u16> {
        let slot = self.vars.index_of(name)?;
        self.terms.keys().map(|m| m.exp(slot)).max()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total_deg()).max()
    }

    /// The coefficients as polynomials in the remaining variables, keyed by
    /// the exponent of `name`.
    pub fn coeffs_in(&self, name: &str) -> Result<BTreeMap<u16, CPoly>> {
        let slot = self
            .vars
            .index_of(name)
            .ok_or_else(|| CoreError::InvalidArgument(format!("unknown variable {name}")))?;
        let mut out: BTreeMap<u16, CPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(slot);
            let mut mm = m.clone();
            mm.set_exp(slot, 0);
            let entry = out.entry(e).or_insert_with(|| CPoly::zero(&self.vars));
            let add = CPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(mm, c.clone())]),
            };
            *entry = entry.add_ref(&add)?;
        }
        Ok(out)
    }

    /// True when every exponent is confined to `name`.
    pub fn is_univariate_in(&self, name: &str) -> bool {
        match self.vars.index_of(name) {
            None => false,
            Some(slot) => self
                .terms
                .keys()
                .all(|m| (0..m.arity()).all(|i| i == slot || m.exp(i) == 0)),
        }
    }

    /// The variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let n = self.vars.len();
        let mut used = vec![false; n];
        for m in self.terms.keys() {
            for i in 0..n {
                if m.exp(i) > 0 {
                    used[i] = true;
                }
            }
        }
        (0..n).filter(|&i| used[i]).collect()
    }

    /// Leading term under the given order.
    pub fn leading(&self, ord: &MonoOrd) -> Option<(&Mono, &Rat)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0).then(a.0.cmp(b.0)))
    }

    /// Monic normalization under the given order.
    pub fn monic(&self, ord: &MonoOrd) -> CPoly {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = Rat::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Scalar `c` with `self == c * other`, when it exists.
    pub fn scalar_multiple_of(&self, other: &CPoly) -> Option<Rat> {
        if other.is_zero() {
            return self.is_zero().then(Rat::zero);
        }
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let mut ratio: Option<Rat> = None;
        for ((m1, c1), (m2, c2)) in self.terms.iter().zip(other.terms.iter()) {
            if m1 != m2 {
                return None;
            }
            let r = c1 / c2;
            match &ratio {
                None => ratio = Some(r),
                Some(r0) => {
                    if *r0 != r {
                        return None;
                    }
                }
            }
        }
        ratio
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &CPoly) -> Option<CPoly> {
        if other.is_zero() {
            return None;
        }
        let ord = MonoOrd::grevlex(self.vars.len());
        let mut rem = self.clone();
        let mut quot = CPoly::zero(&self.vars);
        let (lm, lc) = {
            let (m, c) = other.leading(&ord)?;
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (m, c) = {
                let (m, c) = rem.leading(&ord)?;
                (m.clone(), c.clone())
            };
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.div_into(&m);
            let qc = c / &lc;
            let qt = CPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(qm, qc)]),
            };
            quot = quot.add_ref(&qt).unwrap();
            rem = rem.sub_ref(&qt.mul_ref(other).unwrap()).unwrap();
        }
        Some(quot)
    }

    /// Move this polynomial into a larger variable set (matching by name).
    pub fn map_into(&self, target: &Arc<VarSet>) -> Result<CPoly> {
        let map = self.vars.embedding_into(target)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.remapped(&map, target.len()), c.clone()))
            .collect();
        Ok(CPoly {
            vars: target.clone(),
            terms,
        })
    }

    /// Project into a smaller variable set; fails if a dropped variable occurs.
    pub fn project_into(&self, target: &Arc<VarSet>) -> Result<CPoly> {
        let mut map = vec![usize::MAX; self.vars.len()];
        for (i, v) in self.vars.vars().iter().enumerate() {
            if let Some(j) = target.index_of(&v.name) {
                map[i] = j;
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut mm = Mono::one(target.len());
            for i in 0..m.arity() {
                let e = m.exp(i);
                if e > 0 {
                    if map[i] == usize::MAX {
                        return Err(CoreError::VarSetMismatch(format!(
                            "variable {} does not exist in target",
                            self.vars.name(i)
                        )));
                    }
                    mm.set_exp(map[i], e);
                }
            }
            terms.insert(mm, c.clone());
        }
        Ok(CPoly {
            vars: target.clone(),
            terms,
        })
    }

    // engine conversions ----------------------------------------------------

    pub(crate) fn to_epoly(&self, engine: &Engine) -> EPoly {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let v = (c * Rat::from(den.clone())).to_integer();
                (0u32, m.clone(), v)
            })
            .collect();
        let mut p = engine.normalize_int(terms);
        engine.make_primitive(&mut p);
        p
    }

    pub(crate) fn from_epoly(vars: &Arc<VarSet>, p: &EPoly) -> CPoly {
        CPoly {
            vars: vars.clone(),
            terms: p
                .terms
                .iter()
                .map(|(_, m, a)| (m.clone(), Rat::from(a.clone())))
                .collect(),
        }
    }

    /// Content-1, positive-leading-coefficient normalization (grevlex
    /// leading term); the canonical representative of the ℚ-scaling class.
    pub fn normalized(&self) -> CPoly {
        if self.is_zero() {
            return self.clone();
        }
        let ord = MonoOrd::grevlex(self.vars.len());
        let engine = Engine::new(self.vars.clone(), ModOrd::term_over_position(ord));
        let e = self.to_epoly(&engine);
        CPoly::from_epoly(&self.vars, &e)
    }
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        self.add_ref(rhs).expect("variable set mismatch")
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        self.sub_ref(rhs).expect("variable set mismatch")
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        self.mul_ref(rhs).expect("variable set mismatch")
    }
}

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        self.neg_ref()
    }
}

fn fmt_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for CPoly {
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
                factors.push(fmt_rat(&mag));
            }
            for i in 0..m.arity() {
                let e = m.exp(i);
                if e == 1 {
                    factors.push(self.vars.name(i).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.vars.name(i), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
