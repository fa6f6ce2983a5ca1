pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod maxsub;
pub mod algebra;
pub mod classify;
pub mod quiver;

pub use error::{Error, Result};
