//! Table-level computational algebra for small unital rings.
//!
//! The crate represents a finite ring by its full addition and
//! multiplication tables ([`FiniteRing`]) and builds everything else on
//! top of that single representation:
//!
//! - [`ring`]: construction (`Z(m)`, Galois fields, matrix and
//!   upper-triangular rings, direct sums, raw tables) and law validation;
//! - [`structure`]: ideals, the Jacobson radical, annihilators, centers,
//!   quotients, central idempotent splittings, and simple-block detection;
//! - [`units`] / [`group`]: the unit group as an explicit group table,
//!   Sylow subgroups, involution counts, and abstract group isomorphism;
//! - [`iso`]: ring isomorphism testing by invariant-guided backtracking;
//! - [`classify`]: the six-family catalogue of canonical rings and the
//!   classification check built on it;
//! - [`enumerate`]: an exhaustive census of unital rings of a given small
//!   order, up to isomorphism;
//! - [`sweep`]: batch property checks over censuses of rings, reporting
//!   counterexamples with full tables when they fit.
//!
//! Orders are deliberately small (tables are `O(n^2)` memory); a global
//! cap ([`order_cap`]) keeps accidental blow-ups out.

pub mod classify;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod iso;
pub mod ring;
pub mod structure;
pub mod sweep;
pub mod units;

pub use error::{Error, Result};
pub use ring::{
    order_cap, set_order_cap, ElementVector, FiniteRing, Law, ValidationReport, Violation,
    DEFAULT_ORDER_CAP,
};
