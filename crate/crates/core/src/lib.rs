pub mod cli;
pub mod decimal;
pub mod error;
pub mod invgram;
pub mod lebesgue;
pub mod oracle;
pub mod quadratic;
pub mod recurrences;
pub mod splines;
pub mod verify;

pub use error::{Error, Result};
pub use quadratic::QuadraticRational;
