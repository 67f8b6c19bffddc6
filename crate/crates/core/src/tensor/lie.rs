use std::collections::BTreeMap;

use super::{merge_blocks, TensorSpace, WeightSpace};
use crate::field::Field;
use crate::linalg::{SparseRow, Subspace};

/// `(1/r) Σ_{d | r} μ(d) n^{r/d}`.
pub fn witt_dimension(n: usize, r: usize) -> usize {
    let mut total: i128 = 0;
    for d in 1..=r {
        if r % d == 0 {
            total += mobius(d) as i128 * (n as i128).pow((r / d) as u32);
        }
    }
    (total / r as i128) as usize
}

fn mobius(mut d: usize) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            d /= p;
            if d % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if d > 1 {
        sign = -sign;
    }
    sign
}

/// Expansion of `[x_{i_1}, [x_{i_2}, … [x_{i_{r−1}}, x_{i_r}]…]]` with
/// `[a, b] = ab − ba`.
fn bracket(seq: &[u8]) -> BTreeMap<Vec<u8>, i64> {
    let (&last, init) = seq.split_last().expect("nonempty bracket");
    let mut acc: BTreeMap<Vec<u8>, i64> = BTreeMap::from([(vec![last], 1)]);
    for &x in init.iter().rev() {
        let mut next = BTreeMap::new();
        for (w, c) in &acc {
            let mut left = vec![x];
            left.extend_from_slice(w);
            *next.entry(left).or_insert(0) += c;
            let mut right = w.clone();
            right.push(x);
            *next.entry(right).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc
}

/// The bracket span inside one weight space: every bracket of a letter
/// sequence of content `α` lies in `T_α`.
pub fn bracket_block<F: Field>(field: &F, ws: &WeightSpace) -> Subspace<F::Elem> {
    let rows: Vec<SparseRow<F::Elem>> = ws
        .words()
        .iter()
        .map(|w| {
            let mut row: SparseRow<F::Elem> = bracket(w.letters())
                .into_iter()
                .map(|(t, c)| (ws.local_index(&t).expect("content preserved"), field.from_int(c)))
                .filter(|(_, x)| !field.is_zero(x))
                .collect();
            row.sort_by_key(|(i, _)| *i);
            row
        })
        .filter(|r| !r.is_empty())
        .collect();
    Subspace::span(field, ws.dim(), &rows)
}

/// `L^r(k^n)` inside `T^{n,r}`, built from brackets alone.
pub fn bracket_oracle<F: Field>(field: &F, n: usize, r: usize) -> Subspace<F::Elem> {
    let space = TensorSpace::new(n, r);
    let blocks: Vec<(WeightSpace, Subspace<F::Elem>)> = space
        .weights()
        .into_iter()
        .map(|a| {
            let ws = space.weight_space(&a).expect("weight of the space");
            let sub = bracket_block(field, &ws);
            (ws, sub)
        })
        .collect();
    let refs: Vec<_> = blocks.iter().map(|(w, s)| (w, s)).collect();
    merge_blocks(field, space, &refs)
}
