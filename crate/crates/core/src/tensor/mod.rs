//! Tensor space `T^{n,r}` in its word basis: the right place-permutation
//! action, weight spaces, standardization, subspaces cut out by group-algebra
//! elements, the bracket construction of the free Lie algebra and the Schur
//! algebra as an explicit centralizer.

mod lie;
mod schur;

pub use lie::{bracket_block, bracket_oracle, witt_dimension};
pub use schur::{
    divided_powers, end_schur_dim, orbit_maps, schur_algebra_block, schur_algebra_dim, schur_functor_check,
    SchurFunctorReport, WordMap,
};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraElt, GroupAlgebra};
use crate::combinatorics::{standardize_labels, Composition, Permutation};
use crate::field::Field;
use crate::linalg::{normalize_row, SparseRow, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("{0:?} is not a weight of T^({1},{2})")]
    EmptyWeight(Vec<usize>, usize, usize),
    #[error("{0:?} is not a word over 1..={1}")]
    BadWord(Vec<u8>, usize),
    #[error("the Schur functor needs n >= r (got n = {n}, r = {r})")]
    RequiresNAtLeastR { n: usize, r: usize },
    #[error("algebra element has r = {0}, tensor space has r = {1}")]
    CtxMismatch(usize, usize),
}

/// `a = (a_1, …, a_r)` with letters in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `(a·σ)_j = a_{σ(j)}`
    Raw,
    /// The operator `x ↦ x·σ⁻¹`.
    Psi,
}

impl Word {
    pub fn new(letters: Vec<u8>, n: usize) -> Result<Self, TensorError> {
        if letters.iter().any(|&x| x == 0 || x as usize > n) {
            return Err(TensorError::BadWord(letters, n));
        }
        Ok(Self(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    /// Letter multiplicities `(|a⁻¹(1)|, …, |a⁻¹(n)|)`.
    pub fn content(&self, n: usize) -> Composition {
        let mut m = vec![0; n];
        for &x in &self.0 {
            m[x as usize - 1] += 1;
        }
        Composition::new(m)
    }

    pub fn place_permute(&self, sigma: &Permutation, conv: Convention) -> Self {
        let s = match conv {
            Convention::Raw => sigma.clone(),
            Convention::Psi => sigma.inverse(),
        };
        Self((1..=self.r()).map(|j| self.0[s.apply(j) - 1]).collect())
    }

    /// Relabels the `1`s left to right as `1, 2, …, m_1`, then the `2`s as
    /// `m_1 + 1, …`, and so on.
    pub fn standardize(&self) -> Permutation {
        let n = self.0.iter().copied().max().unwrap_or(0) as usize;
        let labels: Vec<usize> = self.0.iter().map(|&x| x as usize - 1).collect();
        standardize_labels(&labels, n)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// `T^{n,r}` with words indexed in lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorSpace {
    pub n: usize,
    pub r: usize,
}

impl TensorSpace {
    pub fn new(n: usize, r: usize) -> Self {
        Self { n, r }
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.r as u32)
    }

    pub fn index(&self, letters: &[u8]) -> usize {
        letters.iter().fold(0, |acc, &x| acc * self.n + (x as usize - 1))
    }

    pub fn word(&self, mut idx: usize) -> Word {
        let mut letters = vec![0u8; self.r];
        for slot in letters.iter_mut().rev() {
            *slot = (idx % self.n) as u8 + 1;
            idx /= self.n;
        }
        Word(letters)
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.dim()).map(|i| self.word(i))
    }

    /// `Λ(n, r)`.
    pub fn weights(&self) -> Vec<Composition> {
        Composition::all(self.n, self.r)
    }

    /// Partition-shaped members of `Λ(n, r)`.
    pub fn sorted_weights(&self) -> Vec<Composition> {
        Composition::sorted(self.n, self.r)
    }

    pub fn weight_space(&self, alpha: &Composition) -> Result<WeightSpace, TensorError> {
        WeightSpace::new(*self, alpha)
    }

    /// Applies the place action to a vector in global word coordinates.
    pub fn place_permute_vector<E: Clone>(&self, v: &SparseRow<E>, sigma: &Permutation, conv: Convention) -> SparseRow<E> {
        let mut out: SparseRow<E> = v
            .iter()
            .map(|(i, x)| (self.index(self.word(*i).place_permute(sigma, conv).letters()), x.clone()))
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }
}

/// `T^{n,r}_α`: the words of content `α`, with local indices in lexicographic
/// order.
#[derive(Debug, Clone)]
pub struct WeightSpace {
    space: TensorSpace,
    alpha: Composition,
    words: Vec<Word>,
    global: Vec<usize>,
    local: HashMap<usize, usize>,
}

impl WeightSpace {
    pub fn new(space: TensorSpace, alpha: &Composition) -> Result<Self, TensorError> {
        if alpha.n() != space.n || alpha.r() != space.r {
            return Err(TensorError::EmptyWeight(alpha.parts().to_vec(), space.n, space.r));
        }
        let mut words = Vec::with_capacity(alpha.multinomial());
        multiset_words(alpha.parts(), &mut Vec::new(), &mut vec![0; space.n], &mut words);
        let global: Vec<usize> = words.iter().map(|w| space.index(w.letters())).collect();
        let local = global.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        Ok(Self {
            space,
            alpha: alpha.clone(),
            words,
            global,
            local,
        })
    }

    pub fn space(&self) -> TensorSpace {
        self.space
    }

    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn global_index(&self, i: usize) -> usize {
        self.global[i]
    }

    pub fn local_index(&self, letters: &[u8]) -> Option<usize> {
        self.local.get(&self.space.index(letters)).copied()
    }

    /// Local index of `a_i · σ`.
    pub fn act(&self, i: usize, sigma: &Permutation) -> usize {
        let a = self.words[i].letters();
        let n = self.space.n;
        let g = (1..=a.len()).fold(0, |acc, j| acc * n + (a[sigma.apply(j) - 1] as usize - 1));
        self.local[&g]
    }

    /// `v · x` for `v` in local coordinates.
    pub fn right_mul<F: Field>(&self, alg: &GroupAlgebra<F>, v: &SparseRow<F::Elem>, x: &AlgebraElt<F::Elem>) -> SparseRow<F::Elem> {
        let field = alg.field();
        let group = alg.group();
        let supp: Vec<(usize, &F::Elem)> = x
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        let mut acc = vec![field.zero(); self.dim()];
        let mut touched = vec![false; self.dim()];
        for (a, c) in v {
            for &(s, xs) in &supp {
                let b = self.act(*a, group.elem(s));
                field.add_mul_assign(&mut acc[b], c, xs);
                touched[b] = true;
            }
        }
        let row = acc
            .into_iter()
            .enumerate()
            .filter(|(i, x)| touched[*i] && !field.is_zero(x))
            .collect();
        normalize_row(field, row)
    }

    /// `span{v·x}` over the given spanning vectors, or over all words.
    pub fn times_algebra<F: Field>(
        &self,
        alg: &GroupAlgebra<F>,
        spanning: Option<&[SparseRow<F::Elem>]>,
        x: &AlgebraElt<F::Elem>,
    ) -> Result<Subspace<F::Elem>, TensorError> {
        use rayon::prelude::*;
        if x.r() != self.space.r {
            return Err(TensorError::CtxMismatch(x.r(), self.space.r));
        }
        let one = alg.field().one();
        let units: Vec<SparseRow<F::Elem>>;
        let vectors = match spanning {
            Some(v) => v,
            None => {
                units = (0..self.dim()).map(|i| vec![(i, one.clone())]).collect();
                &units
            }
        };
        let rows: Vec<SparseRow<F::Elem>> = vectors.par_iter().map(|v| self.right_mul(alg, v, x)).collect();
        Ok(Subspace::span(alg.field(), self.dim(), &rows))
    }
}

fn multiset_words(rest: &[usize], cur: &mut Vec<u8>, used: &mut Vec<usize>, out: &mut Vec<Word>) {
    let r: usize = rest.iter().sum();
    if cur.len() == r {
        out.push(Word(cur.clone()));
        return;
    }
    for (letter, &m) in rest.iter().enumerate() {
        if used[letter] < m {
            used[letter] += 1;
            cur.push(letter as u8 + 1);
            multiset_words(rest, cur, used, out);
            cur.pop();
            used[letter] -= 1;
        }
    }
}

/// Merges subspaces of different weight spaces into one subspace of
/// `T^{n,r}`. Blocks have disjoint supports, so the union of their RREF rows
/// re-sorted by pivot is again an RREF.
pub fn merge_blocks<F: Field>(field: &F, space: TensorSpace, blocks: &[(&WeightSpace, &Subspace<F::Elem>)]) -> Subspace<F::Elem> {
    let mut rows: Vec<SparseRow<F::Elem>> = Vec::new();
    for (ws, sub) in blocks {
        for row in sub.rows() {
            let mut g: SparseRow<F::Elem> = row.iter().map(|(i, x)| (ws.global_index(*i), x.clone())).collect();
            g.sort_by_key(|(i, _)| *i);
            rows.push(g);
        }
    }
    rows.sort_by_key(|r| r[0].0);
    Subspace::span(field, space.dim(), &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CycleChoice;
    use crate::combinatorics::young_factor;
    use crate::field::{CyclotomicField, FieldSpec};

    fn w(v: &[u8]) -> Word {
        Word(v.to_vec())
    }

    #[test]
    fn content_and_action() {
        assert_eq!(w(&[2, 1, 1, 3, 2, 1, 1, 3]).content(3).parts(), &[4, 2, 2]);
        let s = Permutation::from_slice(&[2, 3, 1]).unwrap();
        assert_eq!(w(&[1, 2, 3]).place_permute(&s, Convention::Raw), w(&[2, 3, 1]));
        assert_eq!(w(&[1, 2, 3]).place_permute(&s, Convention::Psi), w(&[3, 1, 2]));
        let space = TensorSpace::new(2, 3);
        let all = Permutation::all(3);
        for a in space.words() {
            for s in &all {
                for t in &all {
                    let lhs = a.place_permute(s, Convention::Raw).place_permute(t, Convention::Raw);
                    let rhs = a.place_permute(&s.compose(t).unwrap(), Convention::Raw);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn weight_spaces() {
        let space = TensorSpace::new(2, 3);
        let ws = space.weight_space(&Composition::new(vec![2, 1])).unwrap();
        assert_eq!(ws.words(), &[w(&[1, 1, 2]), w(&[1, 2, 1]), w(&[2, 1, 1])]);
        let total: usize = space.weights().iter().map(|a| space.weight_space(a).unwrap().dim()).sum();
        assert_eq!(total, 8);
        assert!(space.weight_space(&Composition::new(vec![2, 2])).is_err());
        let bij = TensorSpace::new(3, 3).weight_space(&Composition::new(vec![1, 1, 1])).unwrap();
        assert_eq!(bij.dim(), 6);
    }

    #[test]
    fn standardization() {
        let b = w(&[2, 1, 1, 3, 2, 1, 1, 3]);
        assert_eq!(b.standardize().one_line(), &[5, 1, 2, 7, 6, 3, 4, 8]);
        assert!(w(&[1, 1, 2]).standardize().is_identity());
        assert_eq!(w(&[3, 1, 2]).standardize().one_line(), &[3, 1, 2]);
        // σ_{a·τ} is the minimal representative of Σ_α σ_a τ
        let space = TensorSpace::new(3, 4);
        for alpha in space.weights() {
            let ws = space.weight_space(&alpha).unwrap();
            for a in ws.words() {
                for t in Permutation::all(4).iter().step_by(3) {
                    let lhs = a.place_permute(t, Convention::Raw).standardize();
                    let (_, rhs) = young_factor(&alpha, &a.standardize().compose(t).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn cycle_image_dims() {
        let field = CyclotomicField::new(FieldSpec::cyclotomic(3)).unwrap();
        let alg = GroupAlgebra::new(field, 3);
        let f = alg.cycle_idempotent(&CycleChoice::canonical(3)).unwrap();
        let space = TensorSpace::new(3, 3);
        let ws = space.weight_space(&Composition::new(vec![1, 1, 1])).unwrap();
        assert_eq!(ws.times_algebra(&alg, None, &f).unwrap().dim(), 2);
        let triv = space.weight_space(&Composition::new(vec![3, 0, 0])).unwrap();
        assert_eq!(triv.times_algebra(&alg, None, &f).unwrap().dim(), 0);
        let e = alg.dsw().unwrap();
        let blocks: Vec<(WeightSpace, Subspace<_>)> = TensorSpace::new(2, 3)
            .weights()
            .iter()
            .map(|a| {
                let ws = TensorSpace::new(2, 3).weight_space(a).unwrap();
                let sub = ws.times_algebra(&alg, None, &e).unwrap();
                (ws, sub)
            })
            .collect();
        let refs: Vec<(&WeightSpace, &Subspace<_>)> = blocks.iter().map(|(w, s)| (w, s)).collect();
        let merged = merge_blocks(alg.field(), TensorSpace::new(2, 3), &refs);
        assert_eq!(merged.dim(), 2);
        assert!(merged.basis.is_rref(alg.field()));
    }
}
