//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank must be at least 3, got {0}")]
    RankTooSmall(usize),

    #[error("invalid window {0:?}: residues must be a permutation of 1..=n with sum n(n+1)/2")]
    InvalidWindow(Vec<i64>),

    #[error("letters of a Coxeter word must be pairwise distinct: {0:?}")]
    RepeatedLetter(Vec<usize>),

    #[error("support {support:?} is not contained in the word letters {letters:?}")]
    SupportNotInWord {
        support: Vec<usize>,
        letters: Vec<usize>,
    },

    #[error("element is not sortable for the given word")]
    NotSortable,

    #[error("J must be a proper subset of the simple indices (W_J must be finite)")]
    FullParabolic,

    #[error("index set {0:?} induces the full directed cycle and is not acyclic")]
    NotAcyclic(Vec<usize>),

    #[error("element is not sortable for the given orientation")]
    NotOmegaSortable,

    #[error("interval word from {i} to {j} would repeat a letter modulo {n}")]
    IntervalTooLong { n: usize, i: i64, j: i64 },

    #[error("vertex is in case (a) (support has at most n-2 letters); the gluing map needs case (b)")]
    NotCaseB,

    #[error("the gluing map is defined for the forward orientation only")]
    EtaNeedsForward,

    #[error("label matrix is singular")]
    SingularMatrix,

    #[error("vertex has {got} labels, expected {expected}")]
    WrongLabelCount { got: usize, expected: usize },

    #[error("c-vector column {0} has mixed signs")]
    MixedSigns(usize),

    #[error("exchange-graph search exceeded the seed cap of {0} (raise DCAMB_MAX_SEEDS)")]
    SeedCapExceeded(usize),

    #[error("edge does not join a Hasse cover with a unique flip root")]
    NoFlipRoot,

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
