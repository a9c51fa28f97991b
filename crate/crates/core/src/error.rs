use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("newick syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("node at byte {position} has {children} children; only binary trees are supported")]
    NonBinary { position: usize, children: usize },

    #[error("duplicate leaf name `{0}`")]
    DuplicateLeaf(String),

    #[error("empty tree")]
    EmptyTree,

    #[error("{what}: size {requested} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::CapExceeded {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}
