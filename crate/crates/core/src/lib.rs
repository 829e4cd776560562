//! Exact symbolic computation for D-modules over the rationals.
//!
//! The crate is organized around a small number of kernels:
//!
//! * [`exactalg`] — exact commutative polynomial arithmetic over ℚ,
//!   Buchberger, elimination, colon ideals, radical membership and
//!   univariate factorization;
//! * [`weyl`] — the Weyl algebra with central parameters, V-filtration
//!   orders, Buchberger with homogenization, division and syzygies;
//! * [`graph`] — graph embedding of a cyclic module along a polynomial map;
//! * [`vfilt`] — the ideal J built from a V-adapted Groebner basis;
//! * [`indicial`] — indicial polynomials, b-functions, stratifications and
//!   associated operators;
//! * [`restrict`] — the truncated V-complex computing the restriction of a
//!   module to the subspace t = 0.

pub mod error;
pub mod exactalg;
pub mod expr;
pub mod graph;
pub mod indicial;
pub mod restrict;
pub mod vfilt;
pub mod weyl;

mod engine;
mod mono;
mod order;
mod trace;
mod vars;

pub use error::{CoreError, Result};
pub use exactalg::{CIdeal, CPoly, CTermOrder, Rat};
pub use mono::Mono;
pub use order::ModOrd;
pub use vars::{CentralClass, CoordClass, Var, VarKind, VarSet};
pub use weyl::{VOrderSpec, WeylIdeal, WeylOp};
