//! PBW monomials, module vectors and normal ordering.

mod module;
mod monomial;
pub mod rewrite;

pub use module::{BaseVector, InducedModule, ModuleSpec};
pub use monomial::{BaseTag, ModuleVector, Monomial};
