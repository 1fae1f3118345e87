pub mod constants;
pub mod error;
pub mod profiles;
pub mod quad;

pub use error::{Error, Result};
