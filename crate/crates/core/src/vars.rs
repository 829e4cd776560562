//! Variable universes.
//!
//! A [`VarSet`] is an ordered list of named generators.  Coordinates may
//! carry a paired derivation (Weyl pairs); central generators (parameters,
//! the indeterminate s, the symbols θ_i, auxiliary and homogenization
//! variables) commute with everything.  A set with no derivations is an
//! ordinary commutative polynomial ring.

use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoordClass {
    /// A coordinate of the base space (the x-block).
    X,
    /// A coordinate transverse to Y = {t = 0} (the t-block).
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CentralClass {
    /// A central parameter (no paired derivation exists).
    Param,
    /// The indeterminate s standing for the class of θ.
    S,
    /// A central symbol θ_i = class of t_i ∂_{t_i} in gr⁰.
    Theta,
    /// Scratch variable used by elimination tricks.
    Aux,
    /// The homogenization variable.
    Homog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    Coord(CoordClass),
    /// Derivation paired with the coordinate at the given slot.
    Deriv(usize),
    Central(CentralClass),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub kind: VarKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    vars: Vec<Var>,
}

impl VarSet {
    pub fn new(vars: Vec<Var>) -> Result<Arc<Self>> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.name.clone()) {
                return Err(CoreError::InvalidArgument(format!(
                    "duplicate variable name {}",
                    v.name
                )));
            }
            if let VarKind::Deriv(of) = v.kind {
                match vars.get(of).map(|w| &w.kind) {
                    Some(VarKind::Coord(_)) => {}
                    _ => {
                        return Err(CoreError::InvalidArgument(format!(
                            "derivation {} is not paired with a coordinate",
                            v.name
                        )))
                    }
                }
            }
        }
        Ok(Arc::new(VarSet { vars }))
    }

    /// Commutative polynomial ring in the given variables.
    pub fn commutative(names: &[&str]) -> Arc<Self> {
        let vars = names
            .iter()
            .map(|n| Var {
                name: n.to_string(),
                kind: VarKind::Coord(CoordClass::X),
            })
            .collect();
        VarSet::new(vars).expect("distinct names")
    }

    /// The Weyl algebra D_n[y]: x-coordinates, their derivations `d<x>`,
    /// then central parameters.
    pub fn weyl(xs: &[&str], params: &[&str]) -> Arc<Self> {
        Self::weyl_with_t(xs, &[], params)
    }

    /// The Weyl algebra D_{n+d}[y] with the slot layout
    /// (x.., dx.., t.., dt.., params..).
    pub fn weyl_with_t(xs: &[&str], ts: &[&str], params: &[&str]) -> Arc<Self> {
        let mut vars = Vec::new();
        for n in xs {
            vars.push(Var {
                name: n.to_string(),
                kind: VarKind::Coord(CoordClass::X),
            });
        }
        for (i, n) in xs.iter().enumerate() {
            vars.push(Var {
                name: format!("d{n}"),
                kind: VarKind::Deriv(i),
            });
        }
        let t0 = vars.len();
        for n in ts {
            vars.push(Var {
                name: n.to_string(),
                kind: VarKind::Coord(CoordClass::T),
            });
        }
        for (i, n) in ts.iter().enumerate() {
            vars.push(Var {
                name: format!("d{n}"),
                kind: VarKind::Deriv(t0 + i),
            });
        }
        for n in params {
            vars.push(Var {
                name: n.to_string(),
                kind: VarKind::Central(CentralClass::Param),
            });
        }
        VarSet::new(vars).expect("distinct names")
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &Var {
        &self.vars[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Slots holding derivations, with their paired coordinate slots.
    pub fn weyl_pairs(&self) -> Vec<(usize, usize)> {
        self.vars
            .iter()
            .enumerate()
            .filter_map(|(i, v)| match v.kind {
                VarKind::Deriv(of) => Some((of, i)),
                _ => None,
            })
            .collect()
    }

    /// True when no derivations are present.
    pub fn is_commutative(&self) -> bool {
        !self.vars.iter().any(|v| matches!(v.kind, VarKind::Deriv(_)))
    }

    /// Derivation slot paired with a coordinate slot, if any.
    pub fn deriv_of(&self, coord: usize) -> Option<usize> {
        self.vars.iter().position(|v| v.kind == VarKind::Deriv(coord))
    }

    /// The V-filtration weight vector: −1 on t-coordinates, +1 on their
    /// derivations, 0 elsewhere.
    pub fn v_weights(&self) -> Vec<i64> {
        self.vars
            .iter()
            .map(|v| match v.kind {
                VarKind::Coord(CoordClass::T) => -1,
                VarKind::Deriv(of) => {
                    if matches!(self.vars[of].kind, VarKind::Coord(CoordClass::T)) {
                        1
                    } else {
                        0
                    }
                }
                _ => 0,
            })
            .collect()
    }

    /// Number of t-coordinates.
    pub fn num_t(&self) -> usize {
        self.vars
            .iter()
            .filter(|v| v.kind == VarKind::Coord(CoordClass::T))
            .count()
    }

    pub fn slots_where(&self, mut pred: impl FnMut(&Var) -> bool) -> Vec<usize> {
        self.vars
            .iter()
            .enumerate()
            .filter_map(|(i, v)| if pred(v) { Some(i) } else { None })
            .collect()
    }

    /// Homogenization slot, if present.
    pub fn homog_slot(&self) -> Option<usize> {
        self.vars
            .iter()
            .position(|v| v.kind == VarKind::Central(CentralClass::Homog))
    }

    /// A new set with extra variables appended.
    pub fn extended(&self, extra: &[Var]) -> Result<Arc<Self>> {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(extra);
        VarSet::new(vars)
    }

    /// Slot map from `self` into `other`, matching variables by name.
    pub fn embedding_into(&self, other: &VarSet) -> Result<Vec<usize>> {
        self.vars
            .iter()
            .map(|v| {
                other.index_of(&v.name).ok_or_else(|| {
                    CoreError::VarSetMismatch(format!("variable {} missing in target", v.name))
                })
            })
            .collect()
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars.iter().map(|v| v.name.as_str()).collect();
        write!(f, "[{}]", names.join(","))
    }
}
