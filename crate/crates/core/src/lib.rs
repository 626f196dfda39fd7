//! Exact computations in highest weight modules of the W(2,2) algebra and
//! the Heisenberg–Virasoro algebra at level zero.

pub mod algebra;
pub mod embedding;
pub mod error;
pub mod linalg;
pub mod model;
pub mod pbw;
pub mod rational;
pub mod screening;
pub mod series;
pub mod verify;
pub mod verma;

pub use algebra::{make_charges, AlgebraKind, CentralCharges, Family, Mode};
pub use error::{Error, Result};
pub use pbw::{BaseTag, InducedModule, ModuleSpec, ModuleVector, Monomial};
pub use rational::Rational;
