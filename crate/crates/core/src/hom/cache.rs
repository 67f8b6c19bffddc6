use serde::Serialize;
use serde_json::{json, Value};

use crate::field::Field;
use crate::linalg::{sparse_from_dense, Echelon, HomSpace, SparseRow, Subspace};
use crate::tensor::Word;

/// Identifies one cached object. Everything that changes the result is part
/// of the key, including the chosen root of unity and cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CacheKey {
    pub n: usize,
    pub r: usize,
    pub field: String,
    pub zeta: String,
    pub gamma: Vec<u8>,
    pub idempotent: String,
    pub kind: String,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

/// Storage for expensive intermediate objects as JSON blobs. Loaded values
/// are never trusted: callers re-check them before use.
pub trait HomCache: Send + Sync {
    fn load(&self, key: &CacheKey) -> Option<Value>;
    fn store(&self, key: &CacheKey, value: &Value);
    /// Called when a loaded value failed validation.
    fn reject(&self, key: &CacheKey) {
        log::warn!("discarding invalid cache entry {key:?}");
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NoCache;

impl HomCache for NoCache {
    fn load(&self, _: &CacheKey) -> Option<Value> {
        None
    }

    fn store(&self, _: &CacheKey, _: &Value) {}
}

fn dense_rows<F: Field>(field: &F, sub: &Subspace<F::Elem>) -> Vec<Vec<String>> {
    sub.rows()
        .iter()
        .map(|row| {
            let mut dense = vec!["0".to_string(); sub.ambient];
            for (c, x) in row {
                dense[*c] = field.render(x);
            }
            dense
        })
        .collect()
}

/// `{"ambient": [words], "rows": [[scalar, …], …]}`.
pub fn subspace_to_json<F: Field>(field: &F, words: &[Word], sub: &Subspace<F::Elem>) -> Value {
    let ambient: Vec<String> = words.iter().map(Word::to_string).collect();
    json!({ "ambient": ambient, "rows": dense_rows(field, sub) })
}

pub fn hom_space_to_json<F: Field>(field: &F, hom: &HomSpace<F::Elem>) -> Value {
    json!({
        "source_dim": hom.source_dim,
        "target_dim": hom.target_dim,
        "rows": dense_rows(field, &hom.basis),
    })
}

/// Parses and checks the shape and RREF form; `None` on any defect.
pub fn hom_space_from_json<F: Field>(field: &F, v: &Value) -> Option<HomSpace<F::Elem>> {
    let source_dim = v.get("source_dim")?.as_u64()? as usize;
    let target_dim = v.get("target_dim")?.as_u64()? as usize;
    let ambient = source_dim * target_dim;
    let mut rows: Vec<SparseRow<F::Elem>> = Vec::new();
    for row in v.get("rows")?.as_array()? {
        let entries = row.as_array()?;
        if entries.len() != ambient {
            return None;
        }
        let dense: Vec<F::Elem> = entries
            .iter()
            .map(|s| field.parse_elem(s.as_str()?).ok())
            .collect::<Option<_>>()?;
        let sparse = sparse_from_dense(field, &dense);
        if sparse.is_empty() {
            return None;
        }
        rows.push(sparse);
    }
    let echelon = Echelon {
        cols: ambient,
        pivots: rows.iter().map(|r| r[0].0).collect(),
        rows,
    };
    if !echelon.is_rref(field) {
        return None;
    }
    Some(HomSpace::new(
        source_dim,
        target_dim,
        Subspace {
            ambient,
            basis: echelon,
        },
    ))
}
