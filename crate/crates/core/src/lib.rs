//! Exact computations with Weil algebras, their Frobenius structures, prolongations
//! of polynomial maps and tensors to Weil bundles, and lifts of Poisson structures.

pub mod algebra;
pub mod combinat;
pub mod fixtures;
pub mod frobenius;
pub mod gen;
pub mod lifts;
pub mod linalg;
pub mod poisson;
pub mod poly;
pub mod prolong;
pub mod rational;
pub mod tensor;
