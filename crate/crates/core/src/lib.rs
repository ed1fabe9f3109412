pub mod error;
pub mod groupoid;
pub mod invariants;
pub mod io;
pub mod jones;
pub mod lincore;
pub mod matrix;
pub mod projection;
pub mod rational;
pub mod reference;
pub mod sampling;

pub use error::{Error, Result};
