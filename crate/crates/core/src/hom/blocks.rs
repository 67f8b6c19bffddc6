use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraElt, CycleChoice, GroupAlgebra, SymGroup};
use crate::field::Field;
use crate::linalg::{HomSpace, Matrix, SparseRow, Subspace};
use crate::tensor::{orbit_maps, schur_algebra_block, WeightSpace};

/// Non-negative integer matrices with row sums `α` and column sums `β`.
pub fn contingency_count(alpha: &[usize], beta: &[usize]) -> usize {
    fn rows(alpha: &[usize], cols: &mut [usize]) -> usize {
        match alpha.split_first() {
            None => usize::from(cols.iter().all(|&c| c == 0)),
            Some((&first, rest)) => spread(first, 0, rest, cols),
        }
    }
    // distribute the current row's `left` over columns `j..`
    fn spread(left: usize, j: usize, rest: &[usize], cols: &mut [usize]) -> usize {
        if j == cols.len() {
            return if left == 0 { rows(rest, cols) } else { 0 };
        }
        let mut total = 0;
        for x in 0..=left.min(cols[j]) {
            cols[j] -= x;
            total += spread(left - x, j + 1, rest, cols);
            cols[j] += x;
        }
        total
    }
    if alpha.iter().sum::<usize>() != beta.iter().sum::<usize>() {
        return 0;
    }
    rows(alpha, &mut beta.to_vec())
}

/// `Hom_{Σ_r}(T_α, T_β)` in the orbit basis.
pub fn hom_sigma<F: Field>(field: &F, src: &WeightSpace, dst: &WeightSpace) -> HomSpace<F::Elem> {
    schur_algebra_block(field, src, dst)
}

/// One index per double coset `Γ σ Γ`, the smallest rank in each.
pub fn double_coset_reps(group: &SymGroup, choice: &CycleChoice) -> Vec<usize> {
    let powers: Vec<usize> = choice.powers().iter().map(|g| g.lex_rank()).collect();
    let mut seen = vec![false; group.order()];
    let mut reps = Vec::new();
    for s in 0..group.order() {
        if seen[s] {
            continue;
        }
        reps.push(s);
        for &a in &powers {
            let as_ = group.mul(a, s);
            for &b in &powers {
                seen[group.mul(as_, b)] = true;
            }
        }
    }
    reps
}

fn rows_to_elements<F: Field>(alg: &GroupAlgebra<F>, sub: &Subspace<F::Elem>) -> Vec<AlgebraElt<F::Elem>> {
    sub.rows()
        .iter()
        .map(|row| {
            alg.from_coeffs(crate::linalg::dense_from_sparse(alg.field(), alg.dim(), row))
                .expect("row of the right length")
        })
        .collect()
}

/// RREF basis of `H = f·kΣ_r·f`. Since `γ f = f γ = ζ f`, the elements
/// `fσf` over double coset representatives of `Γ\Σ_r/Γ` already span.
pub fn h_algebra<F: Field>(alg: &GroupAlgebra<F>, f: &AlgebraElt<F::Elem>, choice: &CycleChoice) -> Vec<AlgebraElt<F::Elem>> {
    let reps = double_coset_reps(alg.group(), choice);
    let rows: Vec<SparseRow<F::Elem>> = reps
        .par_iter()
        .map(|&s| {
            let fs = alg.mul_right_index(f, s);
            alg.sparse(&alg.mul(&fs, f).expect("same algebra"))
        })
        .collect();
    rows_to_elements(alg, &Subspace::span(alg.field(), alg.dim(), &rows))
}

/// RREF basis of `span{x σ x : σ ∈ Σ_r}`, from every group element.
pub fn corner_basis_direct<F: Field>(alg: &GroupAlgebra<F>, x: &AlgebraElt<F::Elem>) -> Vec<AlgebraElt<F::Elem>> {
    let rows: Vec<SparseRow<F::Elem>> = (0..alg.dim())
        .into_par_iter()
        .map(|s| {
            let xs = alg.mul_right_index(x, s);
            alg.sparse(&alg.mul(&xs, x).expect("same algebra"))
        })
        .collect();
    rows_to_elements(alg, &Subspace::span(alg.field(), alg.dim(), &rows))
}

/// `U = T_α·x` inside one weight space.
#[derive(Debug, Clone)]
pub struct IdealBlock<E> {
    pub ws: WeightSpace,
    pub sub: Subspace<E>,
}

impl<E: Clone + PartialEq + Send + Sync> IdealBlock<E> {
    pub fn new<F: Field<Elem = E>>(alg: &GroupAlgebra<F>, ws: WeightSpace, x: &AlgebraElt<E>) -> Self {
        let sub = ws.times_algebra(alg, None, x).expect("matching r");
        Self { ws, sub }
    }

    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    /// Matrix of `u ↦ u·h` from this block into `other` (columns are the
    /// coordinates of the images of this block's basis vectors).
    pub fn map_to<F: Field<Elem = E>>(&self, alg: &GroupAlgebra<F>, other: &Self, h: &AlgebraElt<E>) -> Option<Matrix<E>> {
        let field = alg.field();
        let cols: Vec<Option<Vec<E>>> = self
            .sub
            .rows()
            .par_iter()
            .map(|u| other.sub.coordinates(field, &self.ws.right_mul(alg, u, h)))
            .collect();
        let mut m = Matrix::zeros(field, other.dim(), self.dim());
        for (i, col) in cols.into_iter().enumerate() {
            for (j, x) in col?.into_iter().enumerate() {
                m.set(j, i, x);
            }
        }
        Some(m)
    }

    /// Right action of `h` on this block; `h` must preserve it.
    pub fn action<F: Field<Elem = E>>(&self, alg: &GroupAlgebra<F>, h: &AlgebraElt<E>) -> Matrix<E> {
        self.map_to(alg, self, h).expect("corner algebra preserves its ideal")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThetaCell {
    pub dim_hom_sigma: usize,
    pub dim_hom_x: usize,
    pub dim_image: usize,
    pub surjective: bool,
    /// Every restricted map lies in the target Hom space.
    pub image_contained: bool,
}

/// Restricts every `ψ ∈ Hom_{Σ_r}(T_α, T_β)` to `T_α x → T_β x` and compares
/// the span of the restrictions with `hom_x`.
pub fn theta_cell<F: Field>(
    field: &F,
    src: &IdealBlock<F::Elem>,
    dst: &IdealBlock<F::Elem>,
    hom_x: &HomSpace<F::Elem>,
) -> ThetaCell {
    let maps = orbit_maps(&src.ws, &dst.ws, 0, 0);
    let restricted: Vec<SparseRow<F::Elem>> = maps
        .par_iter()
        .map(|m| {
            let mat = m.restrict(field, &src.sub, &dst.sub).expect("Σ_r-maps commute with x");
            crate::linalg::sparse_from_dense(field, &mat.data)
        })
        .collect();
    let image = Subspace::span(field, src.dim() * dst.dim(), &restricted);
    let image_contained = hom_x.basis.contains(field, &image).unwrap_or(false);
    ThetaCell {
        dim_hom_sigma: maps.len(),
        dim_hom_x: hom_x.dim(),
        dim_image: image.dim(),
        surjective: image_contained && image.dim() == hom_x.dim(),
        image_contained,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Composition;
    use crate::field::{CyclotomicField, FieldSpec};
    use crate::linalg::intertwiners;
    use crate::tensor::TensorSpace;

    #[test]
    fn contingency() {
        assert_eq!(contingency_count(&[2, 1], &[2, 1]), 2);
        assert_eq!(contingency_count(&[2, 1], &[1, 1, 1]), 3);
        assert_eq!(contingency_count(&[3], &[1, 1, 1]), 1);
        assert_eq!(contingency_count(&[4], &[4]), 1);
        assert_eq!(contingency_count(&[2, 0], &[1, 1]), 1);
        assert_eq!(contingency_count(&[1, 1, 1], &[1, 1, 1]), 6);
        assert_eq!(contingency_count(&[2], &[1]), 0);
    }

    #[test]
    fn h_dims_and_theta() {
        let alg = GroupAlgebra::new(CyclotomicField::new(FieldSpec::cyclotomic(3)).unwrap(), 3);
        let choice = CycleChoice::canonical(3);
        let f = alg.cycle_idempotent(&choice).unwrap();
        let h = h_algebra(&alg, &f, &choice);
        assert_eq!(h.len(), 1);
        assert_eq!(corner_basis_direct(&alg, &f).len(), 1);
        let space = TensorSpace::new(3, 3);
        let block = |parts: Vec<usize>| IdealBlock::new(&alg, space.weight_space(&Composition::new(parts)).unwrap(), &f);
        let bij = block(vec![1, 1, 1]);
        let acts: Vec<_> = h.iter().map(|x| bij.action(&alg, x)).collect();
        let hom = intertwiners(alg.field(), &acts, &acts, bij.dim(), bij.dim());
        assert_eq!(hom.dim(), 4);
        let cell = theta_cell(alg.field(), &bij, &bij, &hom);
        assert_eq!((cell.dim_hom_sigma, cell.dim_image), (6, 4));
        assert!(cell.surjective);
        let hook = block(vec![2, 1, 0]);
        let acts: Vec<_> = h.iter().map(|x| hook.action(&alg, x)).collect();
        assert_eq!(intertwiners(alg.field(), &acts, &acts, hook.dim(), hook.dim()).dim(), 1);
        assert_eq!(block(vec![3, 0, 0]).dim(), 0);
    }
}
