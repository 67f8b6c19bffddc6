use std::fmt;

use serde::{Deserialize, Serialize};

use super::{factorial, CombinatoricsError};

/// A partition `λ_1 ≥ λ_2 ≥ … > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = CombinatoricsError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, CombinatoricsError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CombinatoricsError::NotAPartition(parts));
        }
        Ok(Self { parts })
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn r(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(1^r)`.
    pub fn column(r: usize) -> Self {
        Self { parts: vec![1; r] }
    }

    /// `(r)`.
    pub fn row(r: usize) -> Self {
        Self {
            parts: if r == 0 { vec![] } else { vec![r] },
        }
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.parts.first().copied().unwrap_or(0);
        Self {
            parts: (0..cols)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count())
                .collect(),
        }
    }

    /// Hook length of the box in row `i`, column `j` (0-indexed).
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.parts[i] - j - 1;
        let leg = self.parts[i + 1..].iter().filter(|&&p| p > j).count();
        arm + leg + 1
    }

    /// `z_μ = ∏ i^{k_i} k_i!`, the centralizer order of a permutation of
    /// cycle type `μ`.
    pub fn centralizer_order(&self) -> usize {
        let mut z = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let k = self.parts[i..].iter().take_while(|&&p| p == part).count();
            z *= part.pow(k as u32) * factorial(k);
            i += k;
        }
        z
    }

    pub fn class_size(&self) -> usize {
        factorial(self.r()) / self.centralizer_order()
    }

    /// All partitions of `r`, largest first in lexicographic order.
    pub fn all(r: usize) -> Vec<Self> {
        let mut out = Vec::new();
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        rec(r, r, &mut Vec::new(), &mut out);
        out
    }

    /// Comma-joined parts, e.g. `2,1,1`.
    pub fn csv_label(&self) -> String {
        join_parts(&self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.csv_label())
    }
}

fn join_parts(parts: &[usize]) -> String {
    parts.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// A composition of `r` into exactly `n` non-negative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Self { parts }
    }

    /// Checks that the parts sum to `r`.
    pub fn of(parts: Vec<usize>, r: usize) -> Result<Self, CombinatoricsError> {
        if parts.iter().sum::<usize>() != r {
            return Err(CombinatoricsError::NotAComposition(parts, r));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn r(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_sorted_decreasing(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    /// Nonzero parts sorted decreasingly.
    pub fn sorted_partition(&self) -> Partition {
        let mut p: Vec<usize> = self.parts.iter().copied().filter(|&x| x > 0).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_parts_unchecked(p)
    }

    /// `(1^r, 0^{n−r})`.
    pub fn bijective(n: usize, r: usize) -> Self {
        Self {
            parts: (0..n).map(|i| usize::from(i < r)).collect(),
        }
    }

    /// Pads a partition with zeros to length `n`.
    pub fn from_partition(lambda: &Partition, n: usize) -> Option<Self> {
        if lambda.len() > n {
            return None;
        }
        let mut parts = lambda.parts().to_vec();
        parts.resize(n, 0);
        Some(Self { parts })
    }

    /// `r! / ∏ m_i!`.
    pub fn multinomial(&self) -> usize {
        let mut out = factorial(self.r());
        for &m in &self.parts {
            out /= factorial(m);
        }
        out
    }

    /// `Λ(n, r)`: all compositions of `r` into `n` parts, largest first in
    /// lexicographic order.
    pub fn all(n: usize, r: usize) -> Vec<Self> {
        let mut out = Vec::new();
        fn rec(n: usize, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if cur.len() + 1 == n {
                cur.push(rest);
                out.push(Composition { parts: cur.clone() });
                cur.pop();
                return;
            }
            for m in (0..=rest).rev() {
                cur.push(m);
                rec(n, rest - m, cur, out);
                cur.pop();
            }
        }
        if n == 0 {
            if r == 0 {
                out.push(Composition { parts: vec![] });
            }
            return out;
        }
        rec(n, r, &mut Vec::new(), &mut out);
        out
    }

    /// Sorted members of `Λ(n, r)`, i.e. partitions of `r` with at most `n`
    /// parts, padded.
    pub fn sorted(n: usize, r: usize) -> Vec<Self> {
        Partition::all(r)
            .iter()
            .filter_map(|p| Self::from_partition(p, n))
            .collect()
    }

    pub fn csv_label(&self) -> String {
        join_parts(&self.parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.csv_label())
    }
}

/// `(cycle type, class size, centralizer order)` for each conjugacy class of
/// `Σ_r`, in the order of [`Partition::all`].
pub fn enumerate_classes(r: usize) -> Vec<(Partition, usize, usize)> {
    Partition::all(r)
        .into_iter()
        .map(|mu| {
            let z = mu.centralizer_order();
            let size = factorial(r) / z;
            (mu, size, z)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_four() {
        let ps: Vec<Vec<usize>> = Partition::all(4).into_iter().map(|p| p.parts).collect();
        assert_eq!(
            ps,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn weights() {
        let ws: Vec<Vec<usize>> = Composition::all(2, 3).into_iter().map(|c| c.parts).collect();
        assert_eq!(ws, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(Composition::all(1, 5).len(), 1);
        assert_eq!(Composition::all(3, 3).len(), 10);
        assert_eq!(Composition::new(vec![2, 1, 0]).multinomial(), 3);
    }

    #[test]
    fn classes() {
        let c3 = enumerate_classes(3);
        assert_eq!(c3[0], (Partition::row(3), 2, 3));
        assert_eq!(c3[1], (Partition::new(vec![2, 1]).unwrap(), 3, 2));
        assert_eq!(c3[2], (Partition::column(3), 1, 6));
        assert_eq!(enumerate_classes(4).last().unwrap().2, 24);
        let total: usize = enumerate_classes(6).iter().map(|c| c.1).sum();
        assert_eq!(total, 720);
    }
}
