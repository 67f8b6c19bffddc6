use serde::{Deserialize, Serialize};

use super::{factorial, CombinatoricsError, Composition, Partition, Permutation};

/// A standard Young tableau: rows increase left to right, columns top to
/// bottom, entries are exactly `1..=r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardTableau {
    rows: Vec<Vec<u8>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self, CombinatoricsError> {
        let t = Self { rows };
        if t.is_standard() {
            Ok(t)
        } else {
            Err(CombinatoricsError::NotStandard(t.rows))
        }
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::from_parts_unchecked(self.rows.iter().map(Vec::len).collect())
    }

    pub fn is_standard(&self) -> bool {
        let shape: Vec<usize> = self.rows.iter().map(Vec::len).collect();
        if shape.contains(&0) || shape.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        let r: usize = shape.iter().sum();
        let mut seen = vec![false; r + 1];
        for row in &self.rows {
            for &x in row {
                let x = x as usize;
                if x == 0 || x > r || seen[x] {
                    return false;
                }
                seen[x] = true;
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
        self.rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(lo, hi)| lo > hi))
    }

    fn row_of(&self) -> Vec<usize> {
        let r: usize = self.rows.iter().map(Vec::len).sum();
        let mut out = vec![0; r + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for &x in row {
                out[x as usize] = i;
            }
        }
        out
    }

    /// `i` is a descent when `i + 1` sits in a strictly lower row.
    pub fn descents(&self) -> Vec<usize> {
        let row_of = self.row_of();
        (1..row_of.len() - 1)
            .filter(|&i| row_of[i + 1] > row_of[i])
            .collect()
    }

    pub fn major_index(&self) -> usize {
        self.descents().iter().sum()
    }
}

/// Every standard tableau of shape `λ`, by backtracking: place `1, 2, …, r`
/// in turn at the end of each row where the result is still a shape,
/// trying rows top to bottom.
pub fn standard_tableaux(lambda: &Partition) -> Vec<StandardTableau> {
    let shape = lambda.parts();
    let r = lambda.r();
    let mut rows: Vec<Vec<u8>> = vec![Vec::new(); shape.len()];
    let mut out = Vec::new();
    fn rec(k: usize, r: usize, shape: &[usize], rows: &mut Vec<Vec<u8>>, out: &mut Vec<StandardTableau>) {
        if k > r {
            out.push(StandardTableau { rows: rows.clone() });
            return;
        }
        for i in 0..shape.len() {
            let len = rows[i].len();
            let fits = len < shape[i] && (i == 0 || rows[i - 1].len() > len);
            if fits {
                rows[i].push(k as u8);
                rec(k + 1, r, shape, rows, out);
                rows[i].pop();
            }
        }
    }
    rec(1, r, shape, &mut rows, &mut out);
    out
}

/// `r! / ∏ hooks`.
pub fn hook_length_count(lambda: &Partition) -> usize {
    let mut hooks: usize = 1;
    for (i, &p) in lambda.parts().iter().enumerate() {
        for j in 0..p {
            hooks *= lambda.hook(i, j);
        }
    }
    factorial(lambda.r()) / hooks
}

/// Number of standard tableaux of shape `λ` with major index `≡ 1 (mod r)`.
pub fn klyachko_count(lambda: &Partition, r: usize) -> usize {
    standard_tableaux(lambda)
        .iter()
        .filter(|t| t.major_index() % r == 1 % r)
        .count()
}

/// Semistandard tableaux of shape `λ` with entries at most `n`, by the
/// hook-content formula `∏ (n + c(u)) / h(u)`.
pub fn ssyt_count(lambda: &Partition, n: usize) -> u128 {
    if lambda.len() > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (i, &p) in lambda.parts().iter().enumerate() {
        for j in 0..p {
            num *= (n + j - i) as u128;
            den *= lambda.hook(i, j) as u128;
        }
    }
    num / den
}

/// Insertion tableau of `σ(1), …, σ(r)` under row bumping.
pub fn schensted_p(sigma: &Permutation) -> StandardTableau {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for &x in sigma.one_line() {
        let mut carry = x;
        let mut placed = false;
        for row in rows.iter_mut() {
            match row.iter().position(|&y| y > carry) {
                Some(pos) => carry = std::mem::replace(&mut row[pos], carry),
                None => {
                    row.push(carry);
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            rows.push(vec![carry]);
        }
    }
    StandardTableau { rows }
}

/// Block of each value `1..=r` for the consecutive blocks of `α`.
fn block_labels(alpha: &Composition) -> Vec<usize> {
    let mut out = vec![0];
    for (b, &m) in alpha.parts().iter().enumerate() {
        out.extend(std::iter::repeat_n(b, m));
    }
    out
}

/// Young subgroup data of `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungData {
    /// Permutations preserving each block of consecutive values.
    pub subgroup: Vec<Permutation>,
    /// Minimal length representatives `w` of the right cosets `Σ_α w`.
    pub coset_reps: Vec<Permutation>,
}

pub fn young_data(alpha: &Composition, r: usize) -> Result<YoungData, CombinatoricsError> {
    if alpha.r() != r {
        return Err(CombinatoricsError::NotAComposition(alpha.parts().to_vec(), r));
    }
    let label = block_labels(alpha);
    let all = Permutation::all(r);
    let subgroup = all
        .iter()
        .filter(|s| (1..=r).all(|i| label[s.apply(i)] == label[i]))
        .cloned()
        .collect();
    // w is minimal iff the values of each block appear left to right in
    // increasing order
    let coset_reps = all
        .iter()
        .filter(|w| {
            let inv = w.inverse();
            (1..r).all(|v| label[v] != label[v + 1] || inv.apply(v) < inv.apply(v + 1))
        })
        .cloned()
        .collect();
    Ok(YoungData {
        subgroup,
        coset_reps,
    })
}

/// The unique `(u, w)` with `σ = u ∘ w`, `u ∈ Σ_α` and `w` a minimal coset
/// representative.
pub fn young_factor(alpha: &Composition, sigma: &Permutation) -> (Permutation, Permutation) {
    let label = block_labels(alpha);
    let r = sigma.r();
    let word: Vec<usize> = (1..=r).map(|i| label[sigma.apply(i)]).collect();
    let w = standardize_labels(&word, alpha.n());
    let u = sigma.compose_unchecked(&w.inverse());
    (u, w)
}

/// Replaces occurrences of label `0` left to right by `1, 2, …`, then label
/// `1`, and so on.
pub(crate) fn standardize_labels(word: &[usize], n: usize) -> Permutation {
    let mut counts = vec![0usize; n + 1];
    for &a in word {
        counts[a + 1] += 1;
    }
    for i in 1..=n {
        counts[i] += counts[i - 1];
    }
    let mut next = counts;
    let mut one_line = Vec::with_capacity(word.len());
    for &a in word {
        next[a] += 1;
        one_line.push(next[a] as u8);
    }
    Permutation::new(one_line).expect("standardization is a bijection")
}

/// `#{σ ∈ Σ_r : maj(σ) ≡ 1 and maj(σ⁻¹) ≡ 1 (mod r)}`.
pub fn permutation_census(r: usize) -> usize {
    Permutation::all(r)
        .iter()
        .filter(|s| s.major_index() % r == 1 % r && s.inverse().major_index() % r == 1 % r)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_shapes() {
        let t21 = standard_tableaux(&part(&[2, 1]));
        let majs: Vec<usize> = t21.iter().map(StandardTableau::major_index).collect();
        assert_eq!(majs, vec![2, 1]);
        let t22 = standard_tableaux(&part(&[2, 2]));
        let majs: Vec<usize> = t22.iter().map(StandardTableau::major_index).collect();
        assert_eq!(majs, vec![2, 4]);
        assert_eq!(standard_tableaux(&Partition::row(5)).len(), 1);
        assert_eq!(klyachko_count(&part(&[2, 2]), 4), 0);
        assert_eq!(klyachko_count(&Partition::column(3), 3), 0);
        assert_eq!(klyachko_count(&part(&[2, 1]), 3), 1);
    }

    #[test]
    fn insertion() {
        let p = |v: &[u8]| Permutation::from_slice(v).unwrap();
        assert_eq!(schensted_p(&p(&[2, 3, 1])).rows(), &[vec![1, 3], vec![2]]);
        assert_eq!(schensted_p(&p(&[3, 2, 1])).rows(), &[vec![1], vec![2], vec![3]]);
        assert_eq!(schensted_p(&Permutation::identity(4)).rows(), &[vec![1, 2, 3, 4]]);
    }

    #[test]
    fn young_subgroups() {
        let alpha = Composition::new(vec![2, 1]);
        let yd = young_data(&alpha, 3).unwrap();
        assert_eq!(yd.subgroup.len(), 2);
        let reps: Vec<&[u8]> = yd.coset_reps.iter().map(Permutation::one_line).collect();
        assert_eq!(reps, vec![&[1, 2, 3][..], &[1, 3, 2], &[3, 1, 2]]);
        let full = young_data(&Composition::new(vec![3]), 3).unwrap();
        assert_eq!((full.subgroup.len(), full.coset_reps.len()), (6, 1));
        let trivial = young_data(&Composition::new(vec![1, 1, 1]), 3).unwrap();
        assert_eq!((trivial.subgroup.len(), trivial.coset_reps.len()), (1, 6));
    }

    #[test]
    fn ssyt_small() {
        assert_eq!(ssyt_count(&part(&[2, 1]), 2), 2);
        assert_eq!(ssyt_count(&Partition::column(3), 2), 0);
        assert_eq!(ssyt_count(&Partition::row(4), 1), 1);
    }
}
