use thiserror::Error;

use crate::lattice::LatticeError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("matrix entry {0} exceeds the input cap of {cap}", cap = crate::map::MAX_ENTRY)]
    EntryTooLarge(i64),
    #[error("map would have {0} vertices, above the supported limit")]
    TooLarge(usize),
    #[error("template {0} is missing a reverse dart")]
    BrokenTemplate(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
