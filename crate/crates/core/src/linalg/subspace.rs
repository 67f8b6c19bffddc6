use std::fmt;

use super::{linear_dependencies, sub_scaled, Echelon, SparseRow};
use crate::field::Field;

/// A linear subspace of `k^ambient`, stored as the RREF of any spanning set.
/// Two subspaces are equal iff their RREFs are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<E> {
    pub ambient: usize,
    pub basis: Echelon<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientMismatch {
    pub left: usize,
    pub right: usize,
}

impl fmt::Display for AmbientMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ambient dimensions differ: {} vs {}", self.left, self.right)
    }
}

impl std::error::Error for AmbientMismatch {}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Echelon::empty(ambient),
        }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Echelon {
                cols: ambient,
                rows: (0..ambient).map(|i| vec![(i, field.one())]).collect(),
                pivots: (0..ambient).collect(),
            },
        }
    }

    pub fn span<F: Field<Elem = E>>(field: &F, ambient: usize, vectors: &[SparseRow<E>]) -> Self {
        Self {
            ambient,
            basis: field.echelon(ambient, vectors),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn rows(&self) -> &[SparseRow<E>] {
        &self.basis.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.basis.pivots
    }

    fn check(&self, other: &Self) -> Result<(), AmbientMismatch> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            })
        }
    }

    pub fn member<F: Field<Elem = E>>(&self, field: &F, v: &SparseRow<E>) -> bool {
        self.basis.contains(field, v)
    }

    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, v: &SparseRow<E>) -> Option<Vec<E>> {
        self.basis.coordinates(field, v)
    }

    /// `self ⊇ other`.
    pub fn contains<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<bool, AmbientMismatch> {
        self.check(other)?;
        Ok(other.rows().iter().all(|v| self.member(field, v)))
    }

    pub fn equal(&self, other: &Self) -> Result<bool, AmbientMismatch> {
        self.check(other)?;
        Ok(self.basis == other.basis)
    }

    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self, AmbientMismatch> {
        self.check(other)?;
        let mut vectors = self.rows().to_vec();
        vectors.extend_from_slice(other.rows());
        Ok(Self::span(field, self.ambient, &vectors))
    }

    /// Kernel of the stacked system `Σ a_i u_i − Σ b_j v_j = 0`, mapped back
    /// through the `u` side.
    pub fn intersect<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self, AmbientMismatch> {
        self.check(other)?;
        let k = self.dim();
        let mut vectors = self.rows().to_vec();
        vectors.extend(other.rows().iter().map(|v| {
            v.iter().map(|(c, x)| (*c, field.neg(x))).collect::<SparseRow<E>>()
        }));
        let deps = linear_dependencies(field, self.ambient, &vectors);
        let mut out = Vec::with_capacity(deps.len());
        for d in deps {
            let mut acc: SparseRow<E> = Vec::new();
            for (i, a) in d.iter().take_while(|(i, _)| *i < k) {
                acc = sub_scaled(field, &acc, &field.neg(a), &self.rows()[*i]);
            }
            out.push(acc);
        }
        Ok(Self::span(field, self.ambient, &out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, PrimeField};

    #[test]
    fn modular_law_small() {
        let f = PrimeField::new(FieldSpec::prime(5, 2)).unwrap();
        let u = Subspace::span(&f, 3, &[vec![(0, 1)], vec![(1, 1)]]);
        let v = Subspace::span(&f, 3, &[vec![(1, 1)], vec![(2, 1)]]);
        let s = u.sum(&f, &v).unwrap();
        let i = u.intersect(&f, &v).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(i.dim(), 1);
        assert_eq!(i.rows(), &[vec![(1, 1)]]);
        assert!(Subspace::full(&f, 3).contains(&f, &u).unwrap());
        assert!(u.equal(&u).unwrap());
        assert!(u.equal(&Subspace::zero(4)).is_err());
    }
}
