pub mod cli;
pub mod dtn;
pub mod error;
pub mod families;
pub mod graph;
pub mod haar;
pub mod harmonic;
pub mod linalg;
pub mod measures;
pub mod oracles;
pub mod partition;

pub use error::{Error, Result};
