pub mod catalog;
pub mod cli;
pub mod coincidence;
pub mod decompose;
pub mod descriptor;
pub mod error;
pub mod hnf;
pub mod numfield;
pub mod smodule;
pub mod sring;
pub mod zlattice;

pub use error::{Error, Result};
