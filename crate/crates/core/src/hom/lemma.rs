use rayon::prelude::*;
use serde::Serialize;

use super::{HomError, IdealBlock};
use crate::algebra::{AlgebraElt, GroupAlgebra};
use crate::field::Field;
use crate::linalg::{block_centralizer, block_offsets, BlockOp, SparseRow, Subspace};
use crate::tensor::{divided_powers, orbit_maps, schur_algebra_dim, TensorSpace, WeightSpace, WordMap};

/// Which elements of the Schur algebra are imposed when computing a
/// centralizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OpsChoice {
    /// Orbit basis when the Schur algebra has at most [`OpsChoice::ORBIT_LIMIT`]
    /// elements, generators otherwise.
    Auto,
    Orbits,
    Generators,
}

impl OpsChoice {
    pub const ORBIT_LIMIT: usize = 400;

    fn resolve(self, n: usize, r: usize) -> Self {
        match self {
            Self::Auto if schur_algebra_dim(n, r) <= Self::ORBIT_LIMIT => Self::Orbits,
            Self::Auto => Self::Generators,
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub dim_l: usize,
    /// Dimension of the image of the corner algebra acting on `L = T·e`.
    pub dim_corner_image: usize,
    /// Dimension of the centralizer of the Schur algebra on `L`.
    pub dim_centralizer: usize,
    pub equal: bool,
    pub ops: OpsChoice,
    pub ops_imposed: usize,
    pub peak_basis: usize,
}

/// Builds `T_α·e` for every `α ∈ Λ(n, r)`.
pub fn lie_blocks<F: Field>(alg: &GroupAlgebra<F>, n: usize, e: &AlgebraElt<F::Elem>) -> Vec<IdealBlock<F::Elem>> {
    let space = TensorSpace::new(n, alg.r());
    let spaces: Vec<WeightSpace> = space.weights().iter().map(|a| space.weight_space(a).expect("weight")).collect();
    spaces.into_par_iter().map(|ws| IdealBlock::new(alg, ws, e)).collect()
}

/// Compares the operators `u ↦ u·h` for `h` in a basis of `eBe` with the
/// centralizer of the Schur algebra on `L = T·e`, as subspaces of
/// `⊕_α End(T_α e)` (the weight idempotents force block-diagonal form).
pub fn lemma1_check<F: Field>(
    alg: &GroupAlgebra<F>,
    n: usize,
    e: &AlgebraElt<F::Elem>,
    corner: &[AlgebraElt<F::Elem>],
    ops: OpsChoice,
) -> Result<Lemma1Report, HomError> {
    let blocks = lie_blocks(alg, n, e);
    lemma1_on_blocks(alg, n, &blocks, corner, ops)
}

pub(crate) fn lemma1_on_blocks<F: Field>(
    alg: &GroupAlgebra<F>,
    n: usize,
    blocks: &[IdealBlock<F::Elem>],
    corner: &[AlgebraElt<F::Elem>],
    ops: OpsChoice,
) -> Result<Lemma1Report, HomError> {
    let field = alg.field();
    let dims: Vec<usize> = blocks.iter().map(IdealBlock::dim).collect();
    let dim_l: usize = dims.iter().sum();
    if dim_l == 0 {
        return Err(HomError::EmptyModule);
    }
    let (offsets, total) = block_offsets(&dims);

    let psi_rows: Vec<SparseRow<F::Elem>> = corner
        .par_iter()
        .map(|h| {
            let mut row = Vec::new();
            for (b, block) in blocks.iter().enumerate() {
                if dims[b] == 0 {
                    continue;
                }
                let m = block.action(alg, h);
                for (k, x) in m.data.iter().enumerate() {
                    if !field.is_zero(x) {
                        row.push((offsets[b] + k, x.clone()));
                    }
                }
            }
            row
        })
        .collect();
    let psi = Subspace::span(field, total, &psi_rows);

    let ops = ops.resolve(n, alg.r());
    let spaces: Vec<WeightSpace> = blocks.iter().map(|b| b.ws.clone()).collect();
    let maps: Vec<WordMap> = match ops {
        OpsChoice::Generators => divided_powers(&spaces),
        _ => {
            let mut all = Vec::new();
            for (i, s) in spaces.iter().enumerate() {
                for (j, d) in spaces.iter().enumerate() {
                    if dims[i] > 0 && dims[j] > 0 {
                        all.extend(orbit_maps(s, d, i, j));
                    }
                }
            }
            all
        }
    };
    let block_ops: Vec<BlockOp<F::Elem>> = maps
        .par_iter()
        .filter(|m| dims[m.src] > 0 && dims[m.dst] > 0)
        .map(|m| {
            m.restrict(field, &blocks[m.src].sub, &blocks[m.dst].sub)
                .map(|matrix| BlockOp {
                    src: m.src,
                    dst: m.dst,
                    matrix,
                })
                .ok_or_else(|| HomError::Internal("Schur operator leaves T·e".into()))
        })
        .collect::<Result<_, _>>()?;
    let (centralizer, stats) = block_centralizer(field, &dims, &block_ops);
    Ok(Lemma1Report {
        dim_l,
        dim_corner_image: psi.dim(),
        dim_centralizer: centralizer.dim(),
        equal: psi == centralizer,
        ops,
        ops_imposed: stats.ops_imposed,
        peak_basis: stats.peak_basis,
    })
}
