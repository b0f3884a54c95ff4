pub mod axioms;
pub mod diagonal;
pub mod error;
pub mod export;
pub mod goedel;
pub mod interp;
pub mod semantics;
pub mod sexpr;
pub mod syntax;

pub use error::{Error, Result};
