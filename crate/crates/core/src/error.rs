use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeds the enumeration cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element is not in the group")]
    ElementNotInGroup,
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("preconditions not met: {0}")]
    NotApplicable(String),
    #[error("no case of the classification matched: {0}")]
    NoCaseMatched(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
