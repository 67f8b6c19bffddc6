use serde::Serialize;

use super::{TensorError, TensorSpace, WeightSpace};
use crate::algebra::{AlgebraElt, GroupAlgebra, Side};
use crate::combinatorics::{Composition, Permutation};
use crate::field::Field;
use crate::linalg::{block_centralizer, BlockOp, HomSpace, Matrix, SparseRow, Subspace};

/// A linear map between two weight spaces sending each source word to a sum
/// of target words with coefficient one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordMap {
    pub src: usize,
    pub dst: usize,
    pub images: Vec<Vec<usize>>,
}

impl WordMap {
    /// The map restricted to `U ⊆ T_src → W ⊆ T_dst` as a `dim W × dim U`
    /// matrix in the RREF bases; `None` when some image leaves `W`.
    pub fn restrict<F: Field>(&self, field: &F, src: &Subspace<F::Elem>, dst: &Subspace<F::Elem>) -> Option<Matrix<F::Elem>> {
        let mut m = Matrix::zeros(field, dst.dim(), src.dim());
        for (i, row) in src.rows().iter().enumerate() {
            let mut image: SparseRow<F::Elem> = Vec::new();
            for (a, c) in row {
                for &b in &self.images[*a] {
                    image.push((b, c.clone()));
                }
            }
            let image = crate::linalg::normalize_row(field, image);
            let coords = dst.coordinates(field, &image)?;
            for (j, x) in coords.into_iter().enumerate() {
                m.set(j, i, x);
            }
        }
        Some(m)
    }

    pub fn matrix<F: Field>(&self, field: &F, src_dim: usize, dst_dim: usize) -> Matrix<F::Elem> {
        let mut m = Matrix::zeros(field, dst_dim, src_dim);
        for (a, bs) in self.images.iter().enumerate() {
            for &b in bs {
                let v = field.add(m.get(b, a), &field.one());
                m.set(b, a, v);
            }
        }
        m
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so orbits come out ordered
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Orbits of `Σ_r` on pairs `(a, b) ∈ T_src × T_dst` under the diagonal place
/// action, each as the map `v_a ↦ Σ_{(a,b) ∈ O} v_b`. The orbit maps are
/// exactly the solutions of the commutation system for the adjacent
/// transpositions, since a map commutes with a permutation matrix iff its
/// entries are constant along that permutation's action on pairs.
pub fn orbit_maps(src: &WeightSpace, dst: &WeightSpace, src_tag: usize, dst_tag: usize) -> Vec<WordMap> {
    let (ns, nd) = (src.dim(), dst.dim());
    let r = src.space().r;
    let mut uf = UnionFind::new(ns * nd);
    for i in 1..r {
        let s = Permutation::adjacent(r, i);
        let src_act: Vec<usize> = (0..ns).map(|a| src.act(a, &s)).collect();
        let dst_act: Vec<usize> = (0..nd).map(|b| dst.act(b, &s)).collect();
        for a in 0..ns {
            for b in 0..nd {
                uf.union(a * nd + b, src_act[a] * nd + dst_act[b]);
            }
        }
    }
    let mut slot = vec![usize::MAX; ns * nd];
    let mut maps: Vec<WordMap> = Vec::new();
    for a in 0..ns {
        for b in 0..nd {
            let root = uf.find(a * nd + b);
            if slot[root] == usize::MAX {
                slot[root] = maps.len();
                maps.push(WordMap {
                    src: src_tag,
                    dst: dst_tag,
                    images: vec![Vec::new(); ns],
                });
            }
            maps[slot[root]].images[a].push(b);
        }
    }
    maps
}

/// `Hom_{Σ_r}(T_α, T_β)` with the orbit basis.
pub fn schur_algebra_block<F: Field>(field: &F, src: &WeightSpace, dst: &WeightSpace) -> HomSpace<F::Elem> {
    let (ns, nd) = (src.dim(), dst.dim());
    let mut rows: Vec<SparseRow<F::Elem>> = orbit_maps(src, dst, 0, 0)
        .iter()
        .map(|m| {
            let mut row: SparseRow<F::Elem> = Vec::new();
            for (a, bs) in m.images.iter().enumerate() {
                row.extend(bs.iter().map(|&b| (b * ns + a, field.one())));
            }
            row.sort_by_key(|(c, _)| *c);
            row
        })
        .collect();
    // disjoint 0/1 indicator rows sorted by leading column are already RREF
    rows.sort_by_key(|r| r[0].0);
    let basis = Subspace {
        ambient: ns * nd,
        basis: crate::linalg::Echelon {
            cols: ns * nd,
            pivots: rows.iter().map(|r| r[0].0).collect(),
            rows,
        },
    };
    HomSpace::new(ns, nd, basis)
}

/// `Σ_{α,β ∈ Λ(n,r)} dim Hom_{Σ_r}(T_α, T_β)`.
pub fn schur_algebra_dim(n: usize, r: usize) -> usize {
    let space = TensorSpace::new(n, r);
    let spaces: Vec<WeightSpace> = space.weights().iter().map(|a| space.weight_space(a).expect("weight")).collect();
    spaces
        .iter()
        .flat_map(|s| spaces.iter().map(move |d| orbit_maps(s, d, 0, 0).len()))
        .sum()
}

/// The divided powers `E_i^{(m)}` (change `m` letters `i+1` into `i`) and
/// `F_i^{(m)}` (change `m` letters `i` into `i+1`) between the weight spaces
/// of `Λ(n, r)`, tagged by position in `weights`. Together with the weight
/// idempotents they generate the Schur algebra over any field.
pub fn divided_powers(spaces: &[WeightSpace]) -> Vec<WordMap> {
    let Some(first) = spaces.first() else {
        return Vec::new();
    };
    let n = first.space().n;
    let position = |c: &Composition| spaces.iter().position(|s| s.alpha() == c);
    let mut out = Vec::new();
    for (si, src) in spaces.iter().enumerate() {
        for i in 1..n {
            for (from, to) in [(i + 1, i), (i, i + 1)] {
                let avail = src.alpha().parts()[from - 1];
                for m in 1..=avail {
                    let mut parts = src.alpha().parts().to_vec();
                    parts[from - 1] -= m;
                    parts[to - 1] += m;
                    let Some(di) = position(&Composition::new(parts)) else {
                        continue;
                    };
                    let dst = &spaces[di];
                    let images = src
                        .words()
                        .iter()
                        .map(|w| {
                            let slots: Vec<usize> = (0..w.r()).filter(|&j| w.letters()[j] as usize == from).collect();
                            subsets(&slots, m)
                                .into_iter()
                                .map(|sub| {
                                    let mut letters = w.letters().to_vec();
                                    for j in sub {
                                        letters[j] = to as u8;
                                    }
                                    dst.local_index(&letters).expect("weight shifted by the op")
                                })
                                .collect()
                        })
                        .collect();
                    out.push(WordMap { src: si, dst: di, images });
                }
            }
        }
    }
    out
}

fn subsets(items: &[usize], m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    if items.len() < m {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[k + 1..], m - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// `dim End_{S(n,r)}(T^{n,r})`, computed as the joint centralizer of the
/// Schur algebra acting blockwise. With `generators` only the divided powers
/// are imposed; otherwise every orbit map.
pub fn end_schur_dim<F: Field>(field: &F, n: usize, r: usize, generators: bool) -> usize {
    let space = TensorSpace::new(n, r);
    let spaces: Vec<WeightSpace> = space.weights().iter().map(|a| space.weight_space(a).expect("weight")).collect();
    let maps = if generators {
        divided_powers(&spaces)
    } else {
        let mut all = Vec::new();
        for (i, s) in spaces.iter().enumerate() {
            for (j, d) in spaces.iter().enumerate() {
                all.extend(orbit_maps(s, d, i, j));
            }
        }
        all
    };
    let dims: Vec<usize> = spaces.iter().map(WeightSpace::dim).collect();
    let ops: Vec<BlockOp<F::Elem>> = maps
        .iter()
        .map(|m| BlockOp {
            src: m.src,
            dst: m.dst,
            matrix: m.matrix(field, dims[m.src], dims[m.dst]),
        })
        .collect();
    block_centralizer(field, &dims, &ops).0.dim()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurFunctorReport {
    pub dim_eps_t: usize,
    pub dim_eps_t_x: usize,
    pub ideal_dim_left: usize,
    /// Character of `εT·x` under letter permutations, one value per class.
    pub tensor_character: Vec<String>,
    /// Character of `kΣ_r·x` under left multiplication.
    pub ideal_character: Vec<String>,
}

impl SchurFunctorReport {
    pub fn passes(&self, r_factorial: usize) -> bool {
        self.dim_eps_t == r_factorial && self.dim_eps_t_x == self.ideal_dim_left && self.tensor_character == self.ideal_character
    }
}

/// Projects onto the `(1^r, 0^{n−r})` weight space, whose words are the
/// permutations of `1..r` in lexicographic order, and compares `εT·x` with
/// the left ideal `kΣ_r·x`.
pub fn schur_functor_check<F: Field>(
    alg: &GroupAlgebra<F>,
    n: usize,
    x: &AlgebraElt<F::Elem>,
) -> Result<SchurFunctorReport, TensorError> {
    let r = alg.r();
    if n < r {
        return Err(TensorError::RequiresNAtLeastR { n, r });
    }
    let field = alg.field();
    let space = TensorSpace::new(n, r);
    let eps = space.weight_space(&Composition::bijective(n, r))?;
    let u = eps.times_algebra(alg, None, x)?;
    let group = alg.group();
    let mut tensor_character = Vec::new();
    for t in group.class_representatives() {
        let mut tr = field.zero();
        for (k, row) in u.rows().iter().enumerate() {
            // τ·v_a = v_{τ∘a}; for bijective words the local index is the
            // lexicographic rank
            let mut moved: SparseRow<F::Elem> = row
                .iter()
                .map(|(a, c)| (group.mul(t, *a), c.clone()))
                .collect();
            moved.sort_by_key(|(i, _)| *i);
            let coords = u.coordinates(field, &moved).expect("letter action preserves εT·x");
            tr = field.add(&tr, &coords[k]);
        }
        tensor_character.push(field.render(&tr));
    }
    let ideal_character = alg
        .ideal_character(x, Side::Left)
        .map_err(|_| TensorError::CtxMismatch(x.r(), r))?
        .iter()
        .map(|(_, v)| field.render(v))
        .collect();
    Ok(SchurFunctorReport {
        dim_eps_t: eps.dim(),
        dim_eps_t_x: u.dim(),
        ideal_dim_left: alg.ideal_dim(x, Side::Left),
        tensor_character,
        ideal_character,
    })
}
