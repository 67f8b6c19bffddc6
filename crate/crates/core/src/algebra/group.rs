use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::combinatorics::{Partition, Permutation};

/// Largest `r` for which the full multiplication table is stored.
const TABLE_MAX_R: usize = 6;

/// `Σ_r` with elements indexed by lexicographic rank.
#[derive(Debug)]
pub struct SymGroup {
    r: usize,
    elems: Vec<Permutation>,
    inverse: Vec<usize>,
    table: Option<Vec<u16>>,
    class_of: Vec<usize>,
    classes: Vec<Partition>,
}

impl SymGroup {
    pub fn new(r: usize) -> Self {
        let elems = Permutation::all(r);
        let order = elems.len();
        let inverse = elems.iter().map(|s| s.inverse().lex_rank()).collect();
        let table = (r <= TABLE_MAX_R).then(|| {
            let mut t = Vec::with_capacity(order * order);
            for a in &elems {
                for b in &elems {
                    t.push(a.compose_unchecked(b).lex_rank() as u16);
                }
            }
            t
        });
        let classes = Partition::all(r);
        let index: HashMap<&Partition, usize> = classes.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let class_of = elems.iter().map(|s| index[&s.cycle_type()]).collect();
        Self {
            r,
            elems,
            inverse,
            table,
            class_of,
            classes,
        }
    }

    /// One shared instance per `r`.
    pub fn shared(r: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SymGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("group cache lock");
        guard.entry(r).or_insert_with(|| Arc::new(Self::new(r))).clone()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elem(&self, i: usize) -> &Permutation {
        &self.elems[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn rank(&self, sigma: &Permutation) -> usize {
        sigma.lex_rank()
    }

    /// Index of `elem(a) ∘ elem(b)`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elems.len() + b] as usize,
            None => self.elems[a].compose_unchecked(&self.elems[b]).lex_rank(),
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Index into [`SymGroup::classes`] of the cycle type of `elem(a)`.
    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    /// A representative of each class, in [`SymGroup::classes`] order.
    pub fn class_representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.classes.len()];
        for a in 0..self.order() {
            let c = self.class_of[a];
            if reps[c] == usize::MAX {
                reps[c] = a;
            }
        }
        reps
    }

    pub fn centralizer_order(&self, a: usize) -> usize {
        self.classes[self.class_of[a]].centralizer_order()
    }
}
