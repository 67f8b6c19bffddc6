use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CombinatoricsError, Partition};

/// A permutation of `1..=r` in one-line notation: entry `i` is `σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Permutation {
    one_line: Vec<u8>,
}

impl TryFrom<Vec<u8>> for Permutation {
    type Error = CombinatoricsError;
    fn try_from(v: Vec<u8>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<Permutation> for Vec<u8> {
    fn from(p: Permutation) -> Self {
        p.one_line
    }
}

impl Permutation {
    pub fn new(one_line: Vec<u8>) -> Result<Self, CombinatoricsError> {
        let r = one_line.len();
        let mut seen = vec![false; r + 1];
        for &x in &one_line {
            let x = x as usize;
            if x == 0 || x > r || seen[x] {
                return Err(CombinatoricsError::NotAPermutation(one_line.clone()));
            }
            seen[x] = true;
        }
        Ok(Self { one_line })
    }

    pub fn from_slice(one_line: &[u8]) -> Result<Self, CombinatoricsError> {
        Self::new(one_line.to_vec())
    }

    pub fn identity(r: usize) -> Self {
        Self {
            one_line: (1..=r as u8).collect(),
        }
    }

    pub fn r(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.one_line
    }

    /// `σ(i)` for `1 ≤ i ≤ r`.
    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// `σ ∘ τ`, i.e. `i ↦ σ(τ(i))`.
    pub fn compose(&self, tau: &Self) -> Result<Self, CombinatoricsError> {
        if self.r() != tau.r() {
            return Err(CombinatoricsError::SizeMismatch(self.r(), tau.r()));
        }
        Ok(self.compose_unchecked(tau))
    }

    pub(crate) fn compose_unchecked(&self, tau: &Self) -> Self {
        Self {
            one_line: tau
                .one_line
                .iter()
                .map(|&t| self.one_line[t as usize - 1])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.r()];
        for (i, &x) in self.one_line.iter().enumerate() {
            inv[x as usize - 1] = i as u8 + 1;
        }
        Self { one_line: inv }
    }

    /// Positions `i` with `σ(i) > σ(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        self.one_line
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn major_index(&self) -> usize {
        self.descents().iter().sum()
    }

    /// Coxeter length: number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.one_line;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let r = self.r();
        let mut seen = vec![false; r + 1];
        let mut out = Vec::new();
        for start in 1..=r {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_parts_unchecked(lens)
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// Rank in the lexicographic order of one-line words, `0..r!`.
    pub fn lex_rank(&self) -> usize {
        let r = self.r();
        let mut rank = 0;
        let mut used = 0u32;
        for (i, &x) in self.one_line.iter().enumerate() {
            let smaller_unused = (1..x).filter(|&y| used & (1 << y) == 0).count();
            rank += smaller_unused * factorial(r - 1 - i);
            used |= 1 << x;
        }
        rank
    }

    pub fn from_lex_rank(r: usize, mut rank: usize) -> Self {
        let mut pool: Vec<u8> = (1..=r as u8).collect();
        let mut one_line = Vec::with_capacity(r);
        for i in 0..r {
            let f = factorial(r - 1 - i);
            one_line.push(pool.remove(rank / f));
            rank %= f;
        }
        Self { one_line }
    }

    /// All of `Σ_r` in lexicographic order.
    pub fn all(r: usize) -> Vec<Self> {
        (0..factorial(r)).map(|k| Self::from_lex_rank(r, k)).collect()
    }

    /// The descending cycle `(i ⋯ 2 1)`: `1 ↦ i`, `j ↦ j − 1` for `2 ≤ j ≤ i`.
    pub fn descending_cycle(r: usize, i: usize) -> Self {
        let mut one_line: Vec<u8> = (1..=r as u8).collect();
        one_line[0] = i as u8;
        for j in 2..=i {
            one_line[j - 1] = j as u8 - 1;
        }
        Self { one_line }
    }

    /// The long cycle `(2, 3, …, r, 1)` in one-line notation.
    pub fn long_cycle(r: usize) -> Self {
        Self {
            one_line: (1..=r as u8).map(|i| i % r as u8 + 1).collect(),
        }
    }

    /// Adjacent transposition `s_i = (i, i+1)`.
    pub fn adjacent(r: usize, i: usize) -> Self {
        let mut one_line: Vec<u8> = (1..=r as u8).collect();
        one_line.swap(i - 1, i);
        Self { one_line }
    }

    pub fn is_r_cycle(&self) -> bool {
        self.cycle_type().parts() == [self.r()]
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.r());
        for _ in 0..k {
            acc = self.compose_unchecked(&acc);
        }
        acc
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u8]) -> Permutation {
        Permutation::from_slice(v).unwrap()
    }

    #[test]
    fn composition_and_inverse() {
        let s = p(&[2, 3, 1]);
        assert_eq!(s.inverse(), p(&[3, 1, 2]));
        assert!(s.compose(&s.inverse()).unwrap().is_identity());
        assert_eq!(s.compose(&Permutation::identity(3)).unwrap(), s);
        let t = p(&[2, 1, 3]);
        assert!(t.compose(&t).unwrap().is_identity());
        assert!(matches!(
            s.compose(&Permutation::identity(4)),
            Err(CombinatoricsError::SizeMismatch(3, 4))
        ));
        // (σ∘τ)(i) = σ(τ(i))
        let st = s.compose(&t).unwrap();
        for i in 1..=3 {
            assert_eq!(st.apply(i), s.apply(t.apply(i)));
        }
    }

    #[test]
    fn descents_and_major_index() {
        assert_eq!(Permutation::identity(5).major_index(), 0);
        let sb = p(&[5, 1, 2, 7, 6, 3, 4, 8]);
        assert_eq!(sb.descents(), vec![1, 4, 5]);
        assert_eq!(sb.major_index(), 10);
        assert_eq!(p(&[2, 1, 3]).descents(), vec![1]);
    }

    #[test]
    fn lex_rank_round_trip() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        for (k, s) in all.iter().enumerate() {
            assert_eq!(s.lex_rank(), k);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn special_cycles() {
        assert_eq!(Permutation::descending_cycle(4, 3).one_line(), &[3, 1, 2, 4]);
        assert_eq!(Permutation::long_cycle(4).one_line(), &[2, 3, 4, 1]);
        assert!(Permutation::long_cycle(5).is_r_cycle());
        assert_eq!(p(&[2, 1, 3]).cycle_type().parts(), &[2, 1]);
        assert!(Permutation::new(vec![1, 1]).is_err());
    }
}
