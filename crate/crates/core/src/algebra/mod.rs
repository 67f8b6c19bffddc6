//! The group algebra `kΣ_r`, its three distinguished idempotents and the
//! character and class-sum diagnostics on the ideals they generate.

mod group;
mod idempotents;

pub use group::SymGroup;
pub use idempotents::{CycleChoice, IdempotentKind, IdempotentRelations};

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::Value;
use thiserror::Error;

use crate::combinatorics::{Partition, Permutation};
use crate::field::{Field, FieldError};
use crate::linalg::{sparse_from_dense, SparseRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("characteristic {p} divides r = {r}")]
    CharDividesR { p: u64, r: usize },
    #[error("field carries a root of unity of order {have}, need {r}")]
    NoRootOfUnity { have: usize, r: usize },
    #[error("permutation is not an r-cycle")]
    NotAnRCycle,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("elements of different group algebras (r = {0} and {1})")]
    CtxMismatch(usize, usize),
    #[error("malformed serialized element: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// An element of `kΣ_r`: coefficient `i` belongs to the permutation of
/// lexicographic rank `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElt<E> {
    r: usize,
    coeffs: Vec<E>,
}

impl<E> AlgebraElt<E> {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `x·kΣ_r`
    Right,
    /// `kΣ_r·x`
    Left,
}

/// `kΣ_r` over a concrete field.
#[derive(Debug, Clone)]
pub struct GroupAlgebra<F: Field> {
    field: F,
    group: Arc<SymGroup>,
}

impl<F: Field> GroupAlgebra<F> {
    pub fn new(field: F, r: usize) -> Self {
        Self {
            field,
            group: SymGroup::shared(r),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn group(&self) -> &SymGroup {
        &self.group
    }

    pub fn r(&self) -> usize {
        self.group.r()
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> AlgebraElt<F::Elem> {
        AlgebraElt {
            r: self.r(),
            coeffs: vec![self.field.zero(); self.dim()],
        }
    }

    pub fn unit(&self) -> AlgebraElt<F::Elem> {
        self.delta_index(0)
    }

    pub fn delta_index(&self, i: usize) -> AlgebraElt<F::Elem> {
        let mut x = self.zero();
        x.coeffs[i] = self.field.one();
        x
    }

    pub fn delta(&self, sigma: &Permutation) -> AlgebraElt<F::Elem> {
        self.delta_index(sigma.lex_rank())
    }

    pub fn from_coeffs(&self, coeffs: Vec<F::Elem>) -> Result<AlgebraElt<F::Elem>, AlgebraError> {
        if coeffs.len() != self.dim() {
            return Err(AlgebraError::Parse(format!("expected {} coefficients, got {}", self.dim(), coeffs.len())));
        }
        Ok(AlgebraElt { r: self.r(), coeffs })
    }

    pub fn coeff(&self, x: &AlgebraElt<F::Elem>, sigma: &Permutation) -> F::Elem {
        x.coeffs[sigma.lex_rank()].clone()
    }

    fn check(&self, x: &AlgebraElt<F::Elem>) -> Result<(), AlgebraError> {
        if x.r != self.r() {
            return Err(AlgebraError::CtxMismatch(x.r, self.r()));
        }
        Ok(())
    }

    pub fn add(&self, x: &AlgebraElt<F::Elem>, y: &AlgebraElt<F::Elem>) -> Result<AlgebraElt<F::Elem>, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        Ok(AlgebraElt {
            r: x.r,
            coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| self.field.add(a, b)).collect(),
        })
    }

    pub fn sub(&self, x: &AlgebraElt<F::Elem>, y: &AlgebraElt<F::Elem>) -> Result<AlgebraElt<F::Elem>, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        Ok(AlgebraElt {
            r: x.r,
            coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| self.field.sub(a, b)).collect(),
        })
    }

    pub fn scale(&self, x: &AlgebraElt<F::Elem>, s: &F::Elem) -> AlgebraElt<F::Elem> {
        AlgebraElt {
            r: x.r,
            coeffs: x.coeffs.iter().map(|a| self.field.mul(a, s)).collect(),
        }
    }

    fn support<'a>(&self, x: &'a AlgebraElt<F::Elem>) -> Vec<(usize, &'a F::Elem)> {
        x.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !self.field.is_zero(a))
            .collect()
    }

    /// Convolution: `(xy)_ρ = Σ_σ x_σ y_{σ⁻¹ρ}`, summed over the support of
    /// `x` only.
    pub fn mul(&self, x: &AlgebraElt<F::Elem>, y: &AlgebraElt<F::Elem>) -> Result<AlgebraElt<F::Elem>, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let g = &self.group;
        let supp: Vec<(usize, &F::Elem)> = self.support(x).into_iter().map(|(s, a)| (g.inv(s), a)).collect();
        let coeffs = (0..self.dim())
            .into_par_iter()
            .map(|rho| {
                let mut acc = self.field.zero();
                for &(s_inv, a) in &supp {
                    let b = &y.coeffs[g.mul(s_inv, rho)];
                    if !self.field.is_zero(b) {
                        self.field.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect();
        Ok(AlgebraElt { r: x.r, coeffs })
    }

    /// `x·σ` for the basis element of index `s`.
    pub fn mul_right_index(&self, x: &AlgebraElt<F::Elem>, s: usize) -> AlgebraElt<F::Elem> {
        let g = &self.group;
        let s_inv = g.inv(s);
        // (xσ)_ρ = x_{ρσ⁻¹}
        AlgebraElt {
            r: x.r,
            coeffs: (0..self.dim()).map(|rho| x.coeffs[g.mul(rho, s_inv)].clone()).collect(),
        }
    }

    /// `σ·x` for the basis element of index `s`.
    pub fn mul_left_index(&self, s: usize, x: &AlgebraElt<F::Elem>) -> AlgebraElt<F::Elem> {
        let g = &self.group;
        let s_inv = g.inv(s);
        AlgebraElt {
            r: x.r,
            coeffs: (0..self.dim()).map(|rho| x.coeffs[g.mul(s_inv, rho)].clone()).collect(),
        }
    }

    /// `σ·x·σ⁻¹` for the basis element of index `s`.
    pub fn conjugate_index(&self, s: usize, x: &AlgebraElt<F::Elem>) -> AlgebraElt<F::Elem> {
        self.mul_right_index(&self.mul_left_index(s, x), self.group.inv(s))
    }

    pub fn is_idempotent(&self, x: &AlgebraElt<F::Elem>) -> bool {
        self.mul(x, x).is_ok_and(|xx| &xx == x)
    }

    pub fn sparse(&self, x: &AlgebraElt<F::Elem>) -> SparseRow<F::Elem> {
        sparse_from_dense(&self.field, &x.coeffs)
    }

    /// Dimension of `x·kΣ_r` or `kΣ_r·x`.
    pub fn ideal_dim(&self, x: &AlgebraElt<F::Elem>, side: Side) -> usize {
        let rows: Vec<SparseRow<F::Elem>> = (0..self.dim())
            .into_par_iter()
            .map(|s| {
                let y = match side {
                    Side::Right => self.mul_right_index(x, s),
                    Side::Left => self.mul_left_index(s, x),
                };
                self.sparse(&y)
            })
            .collect();
        self.field.echelon(self.dim(), &rows).rank()
    }

    /// Trace on `kΣ_r` of `a ↦ x·a·τ` (right) or `a ↦ τ·a·x` (left). For an
    /// idempotent `x` this is the character of the ideal it generates.
    pub fn module_character(
        &self,
        x: &AlgebraElt<F::Elem>,
        side: Side,
        tau: &Permutation,
    ) -> Result<F::Elem, AlgebraError> {
        self.check(x)?;
        if !self.is_idempotent(x) {
            return Err(AlgebraError::NotIdempotent);
        }
        Ok(self.trace(x, side, tau.lex_rank()))
    }

    /// [`GroupAlgebra::module_character`] on one representative per class,
    /// in [`SymGroup::classes`] order, checking idempotence once.
    pub fn ideal_character(&self, x: &AlgebraElt<F::Elem>, side: Side) -> Result<Vec<(Partition, F::Elem)>, AlgebraError> {
        self.check(x)?;
        if !self.is_idempotent(x) {
            return Err(AlgebraError::NotIdempotent);
        }
        let g = &self.group;
        Ok(g.classes()
            .iter()
            .cloned()
            .zip(g.class_representatives().into_iter().map(|t| self.trace(x, side, t)))
            .collect())
    }

    fn trace(&self, x: &AlgebraElt<F::Elem>, side: Side, t: usize) -> F::Elem {
        // the basis element σ maps to x σ τ (right): its σ-coefficient is
        // x_{σ τ⁻¹ σ⁻¹}; on the left, τ σ x has σ-coefficient x_{σ⁻¹ τ⁻¹ σ}
        let g = &self.group;
        let t_inv = g.inv(t);
        let mut acc = self.field.zero();
        for s in 0..self.dim() {
            let s_inv = g.inv(s);
            let idx = match side {
                Side::Right => g.mul(g.mul(s, t_inv), s_inv),
                Side::Left => g.mul(g.mul(s_inv, t_inv), s),
            };
            acc = self.field.add(&acc, &x.coeffs[idx]);
        }
        acc
    }

    /// Sum of the coefficients of `x` over each conjugacy class.
    pub fn class_sums(&self, x: &AlgebraElt<F::Elem>) -> Vec<(Partition, F::Elem)> {
        let g = &self.group;
        let mut sums = vec![self.field.zero(); g.classes().len()];
        for (s, a) in x.coeffs.iter().enumerate() {
            let c = g.class_of(s);
            sums[c] = self.field.add(&sums[c], a);
        }
        g.classes().iter().cloned().zip(sums).collect()
    }

    /// `[[one-line, scalar], …]` over the support, in rank order.
    pub fn to_json(&self, x: &AlgebraElt<F::Elem>) -> Value {
        Value::Array(
            self.support(x)
                .into_iter()
                .map(|(s, a)| {
                    serde_json::json!([self.group.elem(s).one_line(), self.field.render(a)])
                })
                .collect(),
        )
    }

    pub fn from_json(&self, v: &Value) -> Result<AlgebraElt<F::Elem>, AlgebraError> {
        let bad = |m: &str| AlgebraError::Parse(m.to_string());
        let mut x = self.zero();
        for pair in v.as_array().ok_or_else(|| bad("expected a list"))? {
            let (perm, scalar) = match pair.as_array().map(Vec::as_slice) {
                Some([p, s]) => (p, s),
                _ => return Err(bad("expected [permutation, scalar] pairs")),
            };
            let one_line: Vec<u8> = serde_json::from_value(perm.clone()).map_err(|e| bad(&e.to_string()))?;
            let sigma = Permutation::new(one_line).map_err(|e| bad(&e.to_string()))?;
            if sigma.r() != self.r() {
                return Err(AlgebraError::CtxMismatch(sigma.r(), self.r()));
            }
            let s = scalar.as_str().ok_or_else(|| bad("scalar must be a string"))?;
            x.coeffs[sigma.lex_rank()] = self.field.parse_elem(s)?;
        }
        Ok(x)
    }

    fn r_inverse(&self) -> Result<F::Elem, AlgebraError> {
        self.field
            .inv(&self.field.from_int(self.r() as i64))
            .ok_or(AlgebraError::CharDividesR {
                p: self.field.characteristic(),
                r: self.r(),
            })
    }

    fn check_root(&self) -> Result<(), AlgebraError> {
        let have = self.field.root_order();
        if have != self.r() {
            return Err(AlgebraError::NoRootOfUnity { have, r: self.r() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{CyclotomicField, FieldSpec, PrimeField};

    fn p(v: &[u8]) -> Permutation {
        Permutation::from_slice(v).unwrap()
    }

    #[test]
    fn convolution_basics() {
        let a = GroupAlgebra::new(PrimeField::new(FieldSpec::prime(7, 3)).unwrap(), 3);
        let s = p(&[2, 3, 1]);
        let t = p(&[2, 1, 3]);
        let st = a.mul(&a.delta(&s), &a.delta(&t)).unwrap();
        assert_eq!(st, a.delta(&s.compose(&t).unwrap()));
        let x = a.add(&a.delta(&s), &a.delta(&t)).unwrap();
        assert_eq!(a.mul(&x, &a.unit()).unwrap(), x);
        let rho = p(&[1, 3, 2]);
        let lhs = a.mul(&x, &a.delta(&rho)).unwrap();
        let rhs = a
            .add(&a.delta(&s.compose(&rho).unwrap()), &a.delta(&t.compose(&rho).unwrap()))
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(a.mul_right_index(&x, rho.lex_rank()), lhs);
        let big = GroupAlgebra::new(PrimeField::new(FieldSpec::prime(7, 3)).unwrap(), 4);
        assert!(matches!(a.mul(&x, &big.unit()), Err(AlgebraError::CtxMismatch(4, 3))));
    }

    #[test]
    fn json_round_trip() {
        let a = GroupAlgebra::new(CyclotomicField::new(FieldSpec::cyclotomic(3)).unwrap(), 3);
        let k = a.klyachko().unwrap();
        let v = a.to_json(&k);
        assert_eq!(v.as_array().unwrap().len(), 6);
        assert_eq!(a.from_json(&v).unwrap(), k);
        assert!(a.from_json(&serde_json::json!([[[1, 1, 2], "1"]])).is_err());
    }

    #[test]
    fn regular_character() {
        let a = GroupAlgebra::new(PrimeField::new(FieldSpec::prime(7, 3)).unwrap(), 3);
        let one = a.unit();
        assert_eq!(a.module_character(&one, Side::Right, &Permutation::identity(3)).unwrap(), 6);
        assert_eq!(a.module_character(&one, Side::Right, &p(&[2, 1, 3])).unwrap(), 0);
        assert_eq!(a.ideal_dim(&one, Side::Left), 6);
        let two = a.scale(&one, &2);
        assert_eq!(
            a.module_character(&two, Side::Right, &Permutation::identity(3)),
            Err(AlgebraError::NotIdempotent)
        );
    }
}
