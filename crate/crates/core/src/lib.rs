pub mod csscode;
pub mod error;
pub mod f2linalg;
pub mod gadgets;
pub mod montecarlo;
pub mod noise;
pub mod statevec;

pub use error::{Error, Result};
