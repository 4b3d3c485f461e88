use alloc::string::String;
use alloc::vec::Vec;

use crate::num::Rational;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("columns {0:?} do not form a basis")]
    SingularBasis(Vec<usize>),
    #[error("matrix has a non-integer entry at ({0}, {1})")]
    NonIntegerMatrix(usize, usize),
    #[error("vector is zero")]
    ZeroVector,
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("vector is not in the subspace")]
    NotInSubspace,
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("vector is not in the projection of the subspace")]
    NotInProjection,
    #[error("subspace is separable; split it with components() first")]
    SeparableInput,
    #[error("point is already optimal")]
    AlreadyOptimal,
    #[error("no augmenting circuit exists")]
    NoAugmentingCircuit,
    #[error("point is already basic")]
    AlreadyBasic,
    #[error("direction is unbounded")]
    UnboundedDirection,
    #[error("direction is not augmenting at this point")]
    NotAugmenting,
    #[error("point is infeasible: {0}")]
    InfeasiblePoint(String),
    #[error("linear program is infeasible")]
    Infeasible { farkas: Vec<Rational> },
    #[error("linear program is unbounded")]
    Unbounded { ray: Vec<Rational> },
    #[error("region is unbounded")]
    UnboundedRegion,
    #[error("cost vector has a negative entry")]
    NegativeCost,
    #[error("pair is not primal-dual optimal: {0}")]
    NotOptimalPair(String),
    #[error("approximate oracle reported infeasibility")]
    OracleInfeasible { farkas: Vec<Rational> },
    #[error("recursion found no large coordinates")]
    EmptyLargeSet,
    #[error("enumeration box has {points} points, limit is {limit}")]
    BoxTooLarge { points: u128, limit: u128 },
    #[error("vector is not an integer kernel vector")]
    NotIntegerKernelVector,
    #[error("target is not a basic solution")]
    TargetNotBasic,
    #[error("demands do not sum to zero")]
    UnbalancedDemands,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("audit failure ({lemma}) at step {step}: {detail}")]
    AuditFailure { lemma: &'static str, step: usize, detail: String },
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("machine-integer overflow in {0}")]
    Overflow(&'static str),
    #[error("search budget of {0} nodes exhausted")]
    SearchBudget(u64),
}

pub type Result<T> = core::result::Result<T, Error>;
