//! Combinatorics of the symmetric group: permutations, partitions and
//! compositions, standard tableaux with major index, Young subgroups,
//! row insertion and irreducible characters.

mod character;
mod partition;
mod perm;
mod tableau;

pub use character::{character_table, character_table_csv, mn_character, syt_census_csv};
pub use partition::{enumerate_classes, Composition, Partition};
pub use perm::{factorial, Permutation};
pub use tableau::{
    hook_length_count, klyachko_count, permutation_census, schensted_p, ssyt_count,
    standard_tableaux, young_data, young_factor, StandardTableau, YoungData,
};

pub(crate) use tableau::standardize_labels;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("permutations of different sizes: {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("{0:?} is not a permutation in one-line notation")]
    NotAPermutation(Vec<u8>),
    #[error("{0:?} is not a partition")]
    NotAPartition(Vec<usize>),
    #[error("{0:?} is not a composition of {1}")]
    NotAComposition(Vec<usize>, usize),
    #[error("{0:?} is not a standard tableau")]
    NotStandard(Vec<Vec<u8>>),
    #[error("permutation is not an r-cycle")]
    NotAnRCycle,
}
