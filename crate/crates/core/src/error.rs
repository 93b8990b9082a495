use crate::arith::ArithError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("element is not in H_{level}")]
    NotInLevel { level: u32 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("straightening measure did not decrease: {from:?} -> {to:?}")]
    MeasureNotDecreasing { from: (u64, u64), to: (u64, u64) },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
}
