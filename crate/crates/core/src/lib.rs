pub mod error;
pub mod linalg;
pub mod permgroup;
pub mod gassman;
pub mod catalog;
pub mod sunada;
pub mod freegroup;
pub mod cohomology;
pub mod family;
pub mod cli;

mod json;

pub use error::{Error, Result};
