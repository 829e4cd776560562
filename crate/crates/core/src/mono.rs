//! Exponent vectors.

use smallvec::SmallVec;

/// A monomial: one exponent slot per variable of the ambient [`crate::VarSet`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub SmallVec<[u16; 16]>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, slot: usize) -> Self {
        let mut m = Self::one(n);
        m.0[slot] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Mono(SmallVec::from_slice(exps))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exp(&self, slot: usize) -> u16 {
        self.0[slot]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_deg(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn deg_on(&self, slots: &[usize]) -> u64 {
        slots.iter().map(|&i| self.0[i] as u64).sum()
    }

    pub fn weighted_deg(&self, w: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(w)
            .map(|(&e, &wi)| e as i64 * wi)
            .sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.0.len(), other.0.len());
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn div_into(&self, other: &Mono) -> Mono {
        debug_assert!(self.divides(other));
        Mono(self.0.iter().zip(&other.0).map(|(&a, &b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd_is_one(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a.min(b) == 0)
    }

    pub fn supported_on(&self, slots: &[bool]) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || slots[i])
    }

    pub fn set_exp(&mut self, slot: usize, e: u16) {
        self.0[slot] = e;
    }

    /// Append `extra` zero slots (for variable-set extension).
    pub fn widened(&self, extra: usize) -> Mono {
        let mut m = self.clone();
        for _ in 0..extra {
            m.0.push(0);
        }
        m
    }

    /// Remap slots through `map` into a monomial of arity `n`.
    pub fn remapped(&self, map: &[usize], n: usize) -> Mono {
        let mut m = Mono::one(n);
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                m.0[map[i]] = e;
            }
        }
        m
    }
}
