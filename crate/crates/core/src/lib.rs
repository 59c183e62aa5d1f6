//! Finite commutative information algebras: axiom checking, set-algebra and
//! atom representations, and the finite duality with Q-spaces.

pub mod algebra;
pub mod atoms;
pub mod cli;
pub mod duality;
pub mod equivalence;
pub mod generators;
pub mod order;
pub mod set_algebra;
pub mod subset;

pub use algebra::{AlgebraMorphism, Extractor, InfoAlgebra};
pub use duality::{QMorphism, QSpace};
pub use equivalence::{Equivalence, StarFamily};
pub use order::{BoundedJoinSemilattice, FiniteLattice, FinitePoset};
pub use set_algebra::SetAlgebra;
pub use subset::Subset;
