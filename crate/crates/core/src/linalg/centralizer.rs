use super::{sparse_from_dense, Matrix, SparseRow, Subspace};
use crate::field::Field;

/// A linear map between two blocks, `dims[dst] × dims[src]`.
#[derive(Debug, Clone)]
pub struct BlockOp<E> {
    pub src: usize,
    pub dst: usize,
    pub matrix: Matrix<E>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CentralizerStats {
    pub ops_imposed: usize,
    pub peak_basis: usize,
}

/// Offsets of each block's `d × d` coordinates in the flattened space
/// `⊕_b End(k^{dims[b]})`, plus the total dimension.
pub fn block_offsets(dims: &[usize]) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(dims.len());
    let mut total = 0;
    for &d in dims {
        offsets.push(total);
        total += d * d;
    }
    (offsets, total)
}

fn extract<F: Field>(field: &F, v: &[F::Elem], offset: usize, d: usize) -> Matrix<F::Elem> {
    let _ = field;
    Matrix {
        rows: d,
        cols: d,
        data: v[offset..offset + d * d].to_vec(),
    }
}

/// Block-diagonal maps `ξ = ⊕ ξ_b` with `ξ_dst Φ = Φ ξ_src` for every op.
///
/// Blocks are switched on one at a time, largest first; each activation adds
/// the new block's coordinates to the running solution basis and then imposes
/// every op between active blocks that touches the new one. The basis only
/// ever shrinks under an imposed op, so the running system stays small when
/// the first block already pins down the rest.
pub fn block_centralizer<F: Field>(
    field: &F,
    dims: &[usize],
    ops: &[BlockOp<F::Elem>],
) -> (Subspace<F::Elem>, CentralizerStats) {
    let (offsets, total) = block_offsets(dims);
    let mut order: Vec<usize> = (0..dims.len()).filter(|&b| dims[b] > 0).collect();
    order.sort_by(|&a, &b| dims[b].cmp(&dims[a]).then(a.cmp(&b)));
    let mut active = vec![false; dims.len()];
    let mut basis: Vec<Vec<F::Elem>> = Vec::new();
    let mut stats = CentralizerStats::default();

    for &b in &order {
        active[b] = true;
        let d = dims[b];
        for i in 0..d * d {
            let mut v = vec![field.zero(); total];
            v[offsets[b] + i] = field.one();
            basis.push(v);
        }
        stats.peak_basis = stats.peak_basis.max(basis.len());
        for op in ops {
            if !(active[op.src] && active[op.dst]) || (op.src != b && op.dst != b) {
                continue;
            }
            // both ends active now, and this is the first time: the later of
            // the two activations is `b`
            let (ds, dt) = (dims[op.src], dims[op.dst]);
            if ds == 0 || dt == 0 {
                continue;
            }
            basis = impose(field, &basis, op, &offsets, ds, dt);
            stats.ops_imposed += 1;
        }
    }
    let rows: Vec<SparseRow<F::Elem>> = basis.iter().map(|v| sparse_from_dense(field, v)).collect();
    (Subspace::span(field, total, &rows), stats)
}

fn impose<F: Field>(
    field: &F,
    basis: &[Vec<F::Elem>],
    op: &BlockOp<F::Elem>,
    offsets: &[usize],
    ds: usize,
    dt: usize,
) -> Vec<Vec<F::Elem>> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let residuals: Vec<Matrix<F::Elem>> = basis
        .iter()
        .map(|v| {
            let xs = extract(field, v, offsets[op.src], ds);
            let xt = extract(field, v, offsets[op.dst], dt);
            xt.mul(field, &op.matrix).sub(field, &op.matrix.mul(field, &xs))
        })
        .collect();
    // one equation per residual coordinate, in the k basis coefficients
    let mut rows: Vec<SparseRow<F::Elem>> = Vec::new();
    for pos in 0..dt * ds {
        let row: SparseRow<F::Elem> = residuals
            .iter()
            .enumerate()
            .filter(|(_, m)| !field.is_zero(&m.data[pos]))
            .map(|(t, m)| (t, m.data[pos].clone()))
            .collect();
        if !row.is_empty() {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return basis.to_vec();
    }
    let deps = field.echelon(k, &rows).nullspace(field);
    deps.iter()
        .map(|c| {
            let mut v = vec![field.zero(); basis[0].len()];
            for (t, a) in c {
                for (x, y) in v.iter_mut().zip(&basis[*t]) {
                    if !field.is_zero(y) {
                        field.add_mul_assign(x, a, y);
                    }
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, PrimeField};

    #[test]
    fn centralizer_of_nilpotent_jordan_block() {
        let f = PrimeField::new(FieldSpec::prime(5, 2)).unwrap();
        // N = [[0,1],[0,0]] on one block: centralizer = span{I, N}
        let n = Matrix {
            rows: 2,
            cols: 2,
            data: vec![0, 1, 0, 0],
        };
        let (c, _) = block_centralizer(&f, &[2], &[BlockOp { src: 0, dst: 0, matrix: n }]);
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn maps_between_blocks_tie_them() {
        let f = PrimeField::new(FieldSpec::prime(5, 2)).unwrap();
        // an isomorphism k -> k between two 1-dim blocks forces ξ_0 = ξ_1
        let one = Matrix::identity(&f, 1);
        let ops = vec![BlockOp {
            src: 0,
            dst: 1,
            matrix: one,
        }];
        let (c, stats) = block_centralizer(&f, &[1, 1], &ops);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.rows(), &[vec![(0, 1), (1, 1)]]);
        assert_eq!(stats.ops_imposed, 1);
        let (free, _) = block_centralizer::<PrimeField>(&f, &[1, 2], &[]);
        assert_eq!(free.dim(), 5);
    }
}
