//! Finite fields, abelian groups and their characters, and exact cyclotomic scalars.

pub mod cycmat;
pub mod cyclo;
pub mod field;
pub mod groups;
pub mod modp;

pub use cycmat::CycMatrix;
pub use cyclo::CycScalar;
pub use field::{prime_power, FiniteField};
pub use groups::{char_table, AbelianGroup, Character};
pub use modp::ModularEmbedding;
