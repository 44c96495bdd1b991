//! Exact computations with central simple algebras: symbol and cyclic
//! algebras, armatures and symplectic bases, the generalized crossed product
//! over `F(t_1, ..., t_r)` with its valuation, and square-central elements.

pub mod error;
pub mod fields;
pub mod linalg;
pub mod algebra;
pub mod armature;
pub mod symbols;
pub mod random;
pub mod crossed;
pub mod sqcentral;
pub mod job;

pub use error::{Error, Result};
pub use fields::{ExponentVector, FieldTower, Scalar, TowerSpec};
