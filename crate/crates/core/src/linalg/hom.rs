use super::{dense_from_sparse, Matrix, SparseRow, Subspace};
use crate::field::Field;

/// A space of linear maps `k^source_dim → k^target_dim`. Each basis vector is
/// a `target_dim × source_dim` matrix flattened row-major, acting on column
/// coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace<E> {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Subspace<E>,
}

impl<E: Clone + PartialEq> HomSpace<E> {
    pub fn new(source_dim: usize, target_dim: usize, basis: Subspace<E>) -> Self {
        assert_eq!(basis.ambient, source_dim * target_dim);
        Self {
            source_dim,
            target_dim,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn matrices<F: Field<Elem = E>>(&self, field: &F) -> Vec<Matrix<E>> {
        self.basis
            .rows()
            .iter()
            .map(|row| self.unflatten(field, row))
            .collect()
    }

    pub fn unflatten<F: Field<Elem = E>>(&self, field: &F, row: &SparseRow<E>) -> Matrix<E> {
        Matrix {
            rows: self.target_dim,
            cols: self.source_dim,
            data: dense_from_sparse(field, self.basis.ambient, row),
        }
    }
}

/// All `Φ` (`dst × src`) with `Φ A_i = B_i Φ` for each pair of action
/// matrices, as the nullspace of the stacked linear system.
pub fn intertwiners<F: Field>(
    field: &F,
    src_actions: &[Matrix<F::Elem>],
    dst_actions: &[Matrix<F::Elem>],
    src_dim: usize,
    dst_dim: usize,
) -> HomSpace<F::Elem> {
    assert_eq!(src_actions.len(), dst_actions.len());
    let unknowns = src_dim * dst_dim;
    let var = |j: usize, k: usize| j * src_dim + k;
    let mut rows: Vec<SparseRow<F::Elem>> = Vec::new();
    for (a, b) in src_actions.iter().zip(dst_actions) {
        // entry (j, i): Σ_k Φ[j][k] A[k][i] − Σ_k B[j][k] Φ[k][i]
        for j in 0..dst_dim {
            for i in 0..src_dim {
                let mut row = Vec::new();
                for k in 0..src_dim {
                    let x = a.get(k, i);
                    if !field.is_zero(x) {
                        row.push((var(j, k), x.clone()));
                    }
                }
                for k in 0..dst_dim {
                    let x = b.get(j, k);
                    if !field.is_zero(x) {
                        row.push((var(k, i), field.neg(x)));
                    }
                }
                let row = super::normalize_row(field, row);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        Subspace::full(field, unknowns)
    } else {
        let null = field.echelon(unknowns, &rows).nullspace(field);
        Subspace::span(field, unknowns, &null)
    };
    HomSpace::new(src_dim, dst_dim, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, PrimeField};

    #[test]
    fn commutant_of_a_scalar_is_everything() {
        let f = PrimeField::new(FieldSpec::prime(7, 3)).unwrap();
        let two = Matrix::from_fn(2, 2, |i, j| if i == j { 2 } else { 0 });
        let two3 = Matrix::from_fn(3, 3, |i, j| if i == j { 2 } else { 0 });
        assert_eq!(intertwiners(&f, &[two.clone()], &[two3.clone()], 2, 3).dim(), 6);
        let three3 = Matrix::from_fn(3, 3, |i, j| if i == j { 3 } else { 0 });
        assert_eq!(intertwiners(&f, &[two], &[three3], 2, 3).dim(), 0);
        let jordan = Matrix { rows: 2, cols: 2, data: vec![1, 1, 0, 1] };
        let h = intertwiners(&f, &[jordan.clone()], &[jordan], 2, 2);
        assert_eq!(h.dim(), 2);
        assert_eq!(h.matrices(&f).len(), 2);
    }
}
