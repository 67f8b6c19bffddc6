use std::fmt;

use super::{dense_from_sparse, sparse_from_dense, Echelon, SparseRow, Subspace};
use crate::field::{Field, FieldError};

/// Dense row-major matrix over a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoSolution;

impl fmt::Display for NoSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("linear system has no solution")
    }
}

impl std::error::Error for NoSolution {}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(entry(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: E) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn sparse_rows<F: Field<Elem = E>>(&self, field: &F) -> Vec<SparseRow<E>> {
        (0..self.rows).map(|i| sparse_from_dense(field, self.row(i))).collect()
    }

    pub fn from_sparse_rows<F: Field<Elem = E>>(field: &F, cols: usize, rows: &[SparseRow<E>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            data.extend(dense_from_sparse(field, cols, r));
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !field.is_zero(b) {
                        field.add_mul_assign(&mut out.data[i * other.cols + j], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| field.sub(a, b)).collect(),
        }
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        (0..self.rows)
            .map(|i| {
                let mut acc = field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    field.add_mul_assign(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    fn echelon<F: Field<Elem = E>>(&self, field: &F) -> Echelon<E> {
        field.echelon(self.cols, &self.sparse_rows(field))
    }

    /// `(RREF, rank, pivot columns)`; the RREF keeps the input shape with
    /// zero rows at the bottom.
    pub fn rref<F: Field<Elem = E>>(&self, field: &F) -> (Self, usize, Vec<usize>) {
        let ech = self.echelon(field);
        let mut out = Self::zeros(field, self.rows, self.cols);
        for (i, row) in ech.rows.iter().enumerate() {
            for (c, x) in row {
                out.set(i, *c, x.clone());
            }
        }
        (out, ech.rank(), ech.pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        self.echelon(field).rank()
    }

    /// `{x : M x = 0}`.
    pub fn nullspace<F: Field<Elem = E>>(&self, field: &F) -> Subspace<E> {
        let vectors = self.echelon(field).nullspace(field);
        Subspace::span(field, self.cols, &vectors)
    }

    /// Column space `{M x}`.
    pub fn image<F: Field<Elem = E>>(&self, field: &F) -> Subspace<E> {
        Subspace::span(field, self.rows, &self.transpose().sparse_rows(field))
    }

    /// Some `x` with `M x = b`.
    pub fn solve<F: Field<Elem = E>>(&self, field: &F, b: &[E]) -> Result<Vec<E>, NoSolution> {
        assert_eq!(b.len(), self.rows);
        // RREF of [M | b]; inconsistent iff a pivot lands in the last column
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let ech = aug.echelon(field);
        if ech.pivots.last() == Some(&self.cols) {
            return Err(NoSolution);
        }
        let mut x = vec![field.zero(); self.cols];
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if let Some((c, v)) = row.last() {
                if *c == self.cols {
                    x[p] = v.clone();
                }
            }
        }
        Ok(x)
    }

    /// Plain-text dump: a `rows cols` header then one line of
    /// space-separated scalar strings per row.
    pub fn dump<F: Field<Elem = E>>(&self, field: &F) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| field.render(x)).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_dump<F: Field<Elem = E>>(field: &F, text: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::ParseScalar(text.lines().next().unwrap_or("").to_string());
        let mut lines = text.lines();
        let header: Vec<usize> = lines
            .next()
            .ok_or_else(bad)?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let [rows, cols] = header[..] else {
            return Err(bad());
        };
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines.next().ok_or_else(bad)?;
            let entries: Vec<E> = line
                .split_whitespace()
                .map(|t| field.parse_elem(t))
                .collect::<Result<_, _>>()?;
            if entries.len() != cols {
                return Err(bad());
            }
            data.extend(entries);
        }
        Ok(Self { rows, cols, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{CyclotomicField, FieldSpec, PrimeField};

    #[test]
    fn rref_over_gf7() {
        let f = PrimeField::new(FieldSpec::prime(7, 3)).unwrap();
        let m = Matrix {
            rows: 2,
            cols: 2,
            data: vec![2, 4, 1, 2],
        };
        let (r, rank, piv) = m.rref(&f);
        assert_eq!(rank, 1);
        assert_eq!(piv, vec![0]);
        assert_eq!(r.data, vec![1, 2, 0, 0]);
        assert_eq!(m.nullspace(&f).dim(), 1);
        assert_eq!(m.image(&f).dim(), 1);
    }

    #[test]
    fn solve_and_no_solution() {
        let f = PrimeField::new(FieldSpec::prime(7, 3)).unwrap();
        let m = Matrix {
            rows: 2,
            cols: 2,
            data: vec![1, 2, 2, 4],
        };
        assert_eq!(m.solve(&f, &[0, 0]).unwrap(), vec![0, 0]);
        let x = m.solve(&f, &[3, 6]).unwrap();
        assert_eq!(m.mul_vec(&f, &x), vec![3, 6]);
        assert_eq!(m.solve(&f, &[1, 0]), Err(NoSolution));
    }

    #[test]
    fn dump_round_trip() {
        let f = CyclotomicField::new(FieldSpec::cyclotomic(3)).unwrap();
        let m = Matrix::from_fn(2, 3, |i, j| f.parse_elem(&format!("{i}/2+{j}*z")).unwrap());
        let text = m.dump(&f);
        assert!(text.starts_with("2 3\n"));
        assert_eq!(Matrix::parse_dump(&f, &text).unwrap(), m);
    }
}
