pub mod ar;
pub mod dual;
pub mod error;
pub mod filtered;
pub mod gmod;
pub mod presentation;
pub mod resolve;
pub mod xla;

pub use error::{Error, Result};
