pub mod classic;
pub mod corep;
pub mod group;
pub mod hopfalg;
pub mod index;
pub mod join;
pub mod scalar;

pub use group::FiniteGroup;
pub use hopfalg::{HopfAlgebra, HopfElement, HopfError, TensorElement};
pub use scalar::ScalarQ;
