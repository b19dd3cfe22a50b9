//! Exact computation engine for finite Coxeter groups and their generalized
//! (k-divisible) noncrossing partition posets.
//!
//! The crate builds finite Coxeter systems with exact element arithmetic,
//! the noncrossing partition lattice `NC(W) = [e, gamma]` under absolute
//! order, the k-divisible posets `NC^(k)(W)` (multichains) and `NC_(k)(W)`
//! (delta sequences), and verifies the Möbius-number identity
//!
//! ```text
//! mu(NC^(k)(W) \ mins ∪ {0}) = (-1)^n (Cat+^(k)(W) - Cat+^(k-1)(W))
//! ```
//!
//! by three independent routes: direct Möbius recursion, recursion on the
//! dual presentation, and a falling-chain census under an EL-labeling.
//! All group and poset arithmetic is exact; floating point appears only in
//! ordering heuristics that are always validated by exact checkers.

pub mod catalan;
pub mod coxeter;
pub mod exact;
pub mod kdiv;
pub mod nc;
pub mod poset;
pub mod shelling;

pub use coxeter::{
    build_coxeter_system, build_coxeter_system_with_gamma, CoxeterError, CoxeterSystem,
    CoxeterType, ElementId, Family, GroupElement,
};
pub use poset::{FinitePoset, PosetError};
