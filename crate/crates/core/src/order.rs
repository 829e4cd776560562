//! Term orders on monomials and on free-module monomials.

use std::cmp::Ordering;

use crate::mono::Mono;
use crate::vars::VarSet;

/// One comparison layer; layers are consulted in sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdLayer {
    /// Compare weighted degrees under the given per-slot weights.
    Weight(Vec<i64>),
    /// Graded reverse lexicographic on the listed slots.
    GrevlexOn(Vec<usize>),
    /// Lexicographic on the listed slots, first slot most significant.
    LexOn(Vec<usize>),
}

impl OrdLayer {
    fn cmp_mono(&self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            OrdLayer::Weight(w) => a.weighted_deg(w).cmp(&b.weighted_deg(w)),
            OrdLayer::GrevlexOn(slots) => {
                let da = a.deg_on(slots);
                let db = b.deg_on(slots);
                if da != db {
                    return da.cmp(&db);
                }
                // a > b when the last differing exponent is smaller in a
                for &i in slots.iter().rev() {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            OrdLayer::LexOn(slots) => {
                for &i in slots {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A monomial order given as a stack of layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoOrd {
    pub layers: Vec<OrdLayer>,
}

impl MonoOrd {
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        for layer in &self.layers {
            match layer.cmp_mono(a, b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Graded reverse lex over all slots.
    pub fn grevlex(n: usize) -> Self {
        MonoOrd {
            layers: vec![OrdLayer::GrevlexOn((0..n).collect())],
        }
    }

    /// Lexicographic with the given significance order over all slots.
    pub fn lex(slots: Vec<usize>) -> Self {
        MonoOrd {
            layers: vec![OrdLayer::LexOn(slots)],
        }
    }

    /// Block elimination order: grevlex on `lead`, then grevlex on the rest.
    pub fn block_grevlex(lead: Vec<usize>, n: usize) -> Self {
        let rest: Vec<usize> = (0..n).filter(|i| !lead.contains(i)).collect();
        MonoOrd {
            layers: vec![OrdLayer::GrevlexOn(lead), OrdLayer::GrevlexOn(rest)],
        }
    }

    /// True when some monomial compares below 1, i.e. the order is not a
    /// well-order and Buchberger must homogenize.
    pub fn needs_homogenization(&self) -> bool {
        self.layers.iter().any(|l| match l {
            OrdLayer::Weight(w) => w.iter().any(|&x| x < 0),
            _ => false,
        })
    }
}

/// Order on free-module monomials (component, monomial) with optional
/// per-component shifts applied to a weight layer, and optional leading
/// position block for module elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModOrd {
    /// Components `< pos_block` beat any component `>= pos_block`.
    pub pos_block: Option<usize>,
    /// Weight layer compared first (after the position block), shifted per
    /// component: w·m + shift\[c\].
    pub weight: Option<(Vec<i64>, Vec<i64>)>,
    pub mono: MonoOrd,
}

impl ModOrd {
    pub fn term_over_position(mono: MonoOrd) -> Self {
        ModOrd {
            pos_block: None,
            weight: None,
            mono,
        }
    }

    pub fn with_weight(mono: MonoOrd, w: Vec<i64>, shifts: Vec<i64>) -> Self {
        ModOrd {
            pos_block: None,
            weight: Some((w, shifts)),
            mono,
        }
    }

    pub fn cmp(&self, a: (u32, &Mono), b: (u32, &Mono)) -> Ordering {
        if let Some(k) = self.pos_block {
            let ab = (a.0 as usize) < k;
            let bb = (b.0 as usize) < k;
            match ab.cmp(&bb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        if let Some((w, shifts)) = &self.weight {
            let da = a.1.weighted_deg(w) + shifts.get(a.0 as usize).copied().unwrap_or(0);
            let db = b.1.weighted_deg(w) + shifts.get(b.0 as usize).copied().unwrap_or(0);
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.mono.cmp(a.1, b.1) {
            Ordering::Equal => {}
            o => return o,
        }
        // lower component index is the larger term
        b.0.cmp(&a.0)
    }

    pub fn needs_homogenization(&self) -> bool {
        self.weight
            .as_ref()
            .map(|(w, _)| w.iter().any(|&x| x < 0))
            .unwrap_or(false)
            || self.mono.needs_homogenization()
    }
}

/// Spec-facing description of a commutative term order; converted to a
/// [`MonoOrd`] against a concrete variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CTermOrder {
    /// Graded reverse lex in declared variable order.
    Grevlex,
    /// Lexicographic; most significant variable first.
    Lex(Vec<String>),
    /// Leading block eliminated first (grevlex inside both blocks).
    Block(Vec<String>),
}

impl CTermOrder {
    pub fn to_mono_ord(&self, vars: &VarSet) -> MonoOrd {
        match self {
            CTermOrder::Grevlex => MonoOrd::grevlex(vars.len()),
            CTermOrder::Lex(names) => {
                let mut slots: Vec<usize> =
                    names.iter().filter_map(|n| vars.index_of(n)).collect();
                for i in 0..vars.len() {
                    if !slots.contains(&i) {
                        slots.push(i);
                    }
                }
                MonoOrd::lex(slots)
            }
            CTermOrder::Block(lead) => {
                let lead: Vec<usize> = lead.iter().filter_map(|n| vars.index_of(n)).collect();
                MonoOrd::block_grevlex(lead, vars.len())
            }
        }
    }
}
