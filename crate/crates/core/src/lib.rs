pub mod error;
pub mod fp;
pub mod morita;
pub mod smash;
pub mod trunc;
pub mod usl2;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
