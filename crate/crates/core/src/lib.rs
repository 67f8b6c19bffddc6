//! Exact computations around Schur-Weyl duality for the free Lie algebra:
//! symmetric group algebras over finite and cyclotomic fields, Lie
//! idempotents, tensor space and the centralizer and Hom spaces whose
//! dimensions decide whether the duality holds.

pub mod algebra;
pub mod combinatorics;
pub mod field;
pub mod hom;
pub mod linalg;
pub mod tensor;
