pub mod approx;
pub mod cli;
pub mod dimension;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod gorenstein;
pub mod linalg;
pub mod modcat;
pub mod resolve;

pub use error::{Error, Result, Violation};
