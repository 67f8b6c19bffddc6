//! Hom spaces over `Σ_r` and over corner algebras `x·kΣ_r·x`, the
//! restriction maps between them, the corner-algebra centralizer equality,
//! transport between idempotents, the semisimple census and the
//! per-instance verification reports.

mod blocks;
mod cache;
mod lemma;
mod report;
mod semisimple;
mod transport;

pub use blocks::{contingency_count, corner_basis_direct, double_coset_reps, h_algebra, hom_sigma, theta_cell, IdealBlock, ThetaCell};
pub use cache::{hom_space_from_json, hom_space_to_json, subspace_to_json, CacheKey, HomCache, NoCache};
pub use lemma::{lemma1_check, Lemma1Report, OpsChoice};
pub use report::{
    field_independence_matrix, matrix_csv, verify_swd_instance, CheckKind, CheckRecord, CheckSet, CheckStatus, FieldIndependence,
    IndependenceRow, MatrixRow, Parameters, ReportMatrix, SWDReport, VerifyOptions, CSV_HEADER,
};
pub use semisimple::{semisimple_report, SemisimpleReport};
pub use transport::{corner_hom, xi_transport, XiReport};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::tensor::TensorError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("infeasible field: {0}")]
    InfeasibleField(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailure(String),
    #[error("T·e is zero")]
    EmptyModule,
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}
