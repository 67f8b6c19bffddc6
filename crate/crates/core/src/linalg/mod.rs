//! Exact linear algebra over any [`Field`]: reduced row echelon forms,
//! canonical subspaces, nullspaces and the block centralizer solver.

mod centralizer;
mod hom;
mod matrix;
mod multimodular;
mod subspace;

pub use centralizer::{block_centralizer, block_offsets, BlockOp, CentralizerStats};
pub use hom::{intertwiners, HomSpace};
pub use matrix::{Matrix, NoSolution};
pub use multimodular::multimodular_echelon;
pub use subspace::{AmbientMismatch, Subspace};

use crate::field::Field;

/// `(column, value)` pairs with strictly increasing columns and no zeros.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Drops zeros from a dense vector.
pub fn sparse_from_dense<F: Field>(field: &F, dense: &[F::Elem]) -> SparseRow<F::Elem> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse<F: Field>(field: &F, cols: usize, row: &SparseRow<F::Elem>) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); cols];
    for (c, x) in row {
        out[*c] = x.clone();
    }
    out
}

/// Sorts by column, merges duplicates and drops zeros.
pub fn normalize_row<F: Field>(field: &F, mut row: Vec<(usize, F::Elem)>) -> SparseRow<F::Elem> {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow<F::Elem> = Vec::with_capacity(row.len());
    for (c, x) in row {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx = field.add(lx, &x),
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

/// `a - s * b` for sparse rows.
fn sub_scaled<F: Field>(
    field: &F,
    a: &SparseRow<F::Elem>,
    s: &F::Elem,
    b: &SparseRow<F::Elem>,
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.neg(&field.mul(s, &b[j].1))));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            field.sub_mul_assign(&mut v, s, &b[j].1);
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form of a row space: nonzero rows only, sorted by
/// pivot, each starting with a leading one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon<E> {
    pub cols: usize,
    pub rows: Vec<SparseRow<E>>,
    pub pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Nullspace basis of the row space: one vector per free column, with a
    /// one there and zeros on the other free columns.
    pub fn nullspace<F: Field<Elem = E>>(&self, field: &F) -> Vec<SparseRow<E>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out: Vec<SparseRow<E>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|c| vec![(c, field.one())])
            .collect();
        let free_index: Vec<Option<usize>> = {
            let mut idx = vec![None; self.cols];
            let mut k = 0;
            for c in 0..self.cols {
                if !is_pivot[c] {
                    idx[c] = Some(k);
                    k += 1;
                }
            }
            idx
        };
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (c, x) in row.iter().skip(1) {
                if let Some(k) = free_index[*c] {
                    out[k].push((p, field.neg(x)));
                }
            }
        }
        for v in &mut out {
            v.sort_by_key(|(c, _)| *c);
        }
        out
    }

    /// Reduces `v` against the rows; returns the remainder.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &SparseRow<E>) -> SparseRow<E> {
        let mut cur = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Ok(pos) = cur.binary_search_by_key(&p, |(c, _)| *c) {
                let s = cur[pos].1.clone();
                cur = sub_scaled(field, &cur, &s, row);
            }
        }
        cur
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &SparseRow<E>) -> bool {
        self.reduce(field, v).is_empty()
    }

    /// Coordinates of `v` in the row basis, `None` when `v` is outside the
    /// row space. In RREF these are the entries of `v` at the pivots.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, v: &SparseRow<E>) -> Option<Vec<E>> {
        let coords: Vec<E> = self
            .pivots
            .iter()
            .map(|p| match v.binary_search_by_key(p, |(c, _)| *c) {
                Ok(pos) => v[pos].1.clone(),
                Err(_) => field.zero(),
            })
            .collect();
        let mut rebuilt: SparseRow<E> = Vec::new();
        for (row, a) in self.rows.iter().zip(&coords) {
            if field.is_zero(a) {
                continue;
            }
            let neg = field.neg(a);
            rebuilt = sub_scaled(field, &rebuilt, &neg, row);
        }
        (rebuilt == *v).then_some(coords)
    }

    /// Strict RREF check: leading ones, increasing pivots, zeros above and
    /// below every pivot, no zero entries stored.
    pub fn is_rref<F: Field<Elem = E>>(&self, field: &F) -> bool {
        if self.rows.len() != self.pivots.len() {
            return false;
        }
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if row.first().map(|(c, x)| (*c, x.clone())) != Some((p, field.one())) {
                return false;
            }
            if i > 0 && self.pivots[i - 1] >= p {
                return false;
            }
            if row.windows(2).any(|w| w[0].0 >= w[1].0) {
                return false;
            }
            if row.iter().any(|(c, x)| *c >= self.cols || field.is_zero(x)) {
                return false;
            }
            for (j, other) in self.rows.iter().enumerate() {
                if j != i && other.binary_search_by_key(&p, |(c, _)| *c).is_ok() {
                    return false;
                }
            }
        }
        true
    }
}

/// Incremental Gauss-Jordan elimination: each input row is reduced against
/// the current pivots and, if independent, back-substituted into them, so the
/// pivot rows stay in RREF throughout.
pub fn online_echelon<F: Field>(field: &F, cols: usize, rows: &[SparseRow<F::Elem>]) -> Echelon<F::Elem> {
    let mut state = EchelonBuilder::new(field, cols);
    for row in rows {
        if state.is_full() {
            break;
        }
        state.push(row);
    }
    state.finish()
}

/// Streaming form of [`online_echelon`].
pub struct EchelonBuilder<'a, F: Field> {
    field: &'a F,
    cols: usize,
    rows: Vec<SparseRow<F::Elem>>,
    pivot_of_col: Vec<Option<usize>>,
    scratch: Vec<F::Elem>,
    touched: Vec<bool>,
}

impl<'a, F: Field> EchelonBuilder<'a, F> {
    pub fn new(field: &'a F, cols: usize) -> Self {
        Self {
            field,
            cols,
            rows: Vec::new(),
            pivot_of_col: vec![None; cols],
            scratch: vec![field.zero(); cols],
            touched: vec![false; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Adds a row; returns whether it raised the rank.
    pub fn push(&mut self, row: &SparseRow<F::Elem>) -> bool {
        let f = self.field;
        let mut support: Vec<usize> = Vec::with_capacity(row.len() * 2);
        for (c, x) in row {
            self.scratch[*c] = x.clone();
            if !self.touched[*c] {
                self.touched[*c] = true;
                support.push(*c);
            }
        }
        let hits: Vec<(usize, F::Elem)> = row
            .iter()
            .filter_map(|(c, x)| self.pivot_of_col[*c].map(|i| (i, x.clone())))
            .collect();
        for (i, coef) in hits {
            for (c, y) in &self.rows[i] {
                if !self.touched[*c] {
                    self.touched[*c] = true;
                    support.push(*c);
                }
                f.sub_mul_assign(&mut self.scratch[*c], &coef, y);
            }
        }
        support.sort_unstable();
        let mut reduced: SparseRow<F::Elem> = Vec::new();
        for c in support {
            self.touched[c] = false;
            let x = std::mem::replace(&mut self.scratch[c], f.zero());
            if !f.is_zero(&x) {
                reduced.push((c, x));
            }
        }
        if reduced.is_empty() {
            return false;
        }
        let lead = f.inv(&reduced[0].1).expect("nonzero leading entry");
        for (_, x) in reduced.iter_mut() {
            *x = f.mul(x, &lead);
        }
        let p = reduced[0].0;
        for other in self.rows.iter_mut() {
            if let Ok(pos) = other.binary_search_by_key(&p, |(c, _)| *c) {
                let s = other[pos].1.clone();
                *other = sub_scaled(f, other, &s, &reduced);
            }
        }
        self.pivot_of_col[p] = Some(self.rows.len());
        self.rows.push(reduced);
        true
    }

    pub fn finish(self) -> Echelon<F::Elem> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let pivots = rows.iter().map(|r| r[0].0).collect();
        Echelon {
            cols: self.cols,
            rows,
            pivots,
        }
    }
}

/// All coefficient vectors `c` with `Σ c_i v_i = 0`, as a nullspace basis in
/// `k^{vectors.len()}`.
pub fn linear_dependencies<F: Field>(
    field: &F,
    ambient: usize,
    vectors: &[SparseRow<F::Elem>],
) -> Vec<SparseRow<F::Elem>> {
    let k = vectors.len();
    let mut transposed: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); ambient];
    for (i, v) in vectors.iter().enumerate() {
        for (c, x) in v {
            transposed[*c].push((i, x.clone()));
        }
    }
    let rows: Vec<SparseRow<F::Elem>> = transposed.into_iter().filter(|r| !r.is_empty()).collect();
    field.echelon(k, &rows).nullspace(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, PrimeField};

    fn gf7() -> PrimeField {
        PrimeField::new(FieldSpec::prime(7, 3)).unwrap()
    }

    #[test]
    fn rref_small_example() {
        let f = gf7();
        let rows = vec![vec![(0, 2), (1, 4)], vec![(0, 1), (1, 2)]];
        let e = online_echelon(&f, 2, &rows);
        assert_eq!(e.rank(), 1);
        assert_eq!(e.rows, vec![vec![(0, 1), (1, 2)]]);
        assert!(e.is_rref(&f));
        let null = e.nullspace(&f);
        assert_eq!(null, vec![vec![(0, 5), (1, 1)]]);
    }

    #[test]
    fn identity_and_zero() {
        let f = gf7();
        let id: Vec<SparseRow<u32>> = (0..4).map(|i| vec![(i, 1)]).collect();
        let e = online_echelon(&f, 4, &id);
        assert_eq!(e.rank(), 4);
        assert_eq!(e.rows, id);
        assert!(e.nullspace(&f).is_empty());
        let z = online_echelon(&f, 3, &[vec![], vec![]]);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace(&f).len(), 3);
    }

    #[test]
    fn back_substitution_keeps_rref() {
        let f = gf7();
        let rows = vec![
            vec![(1, 1), (2, 3)],
            vec![(0, 1), (1, 1)],
            vec![(0, 2), (2, 5), (3, 1)],
        ];
        let e = online_echelon(&f, 4, &rows);
        assert!(e.is_rref(&f));
        for r in &rows {
            assert!(e.contains(&f, r));
            let c = e.coordinates(&f, r).unwrap();
            assert_eq!(c.len(), e.rank());
        }
        assert!(e.coordinates(&f, &vec![(3, 1)]).is_none() || e.rank() == 4);
    }

    #[test]
    fn dependencies_of_vectors() {
        let f = gf7();
        let vs = vec![vec![(0, 1)], vec![(1, 1)], vec![(0, 1), (1, 1)]];
        let deps = linear_dependencies(&f, 2, &vs);
        assert_eq!(deps, vec![vec![(0, 6), (1, 6), (2, 1)]]);
    }
}
