pub mod actions;
pub mod clifford;
pub mod config;
pub mod distance;
pub mod error;
pub mod expr;
pub mod grassmann;
pub mod kernel;
pub mod operator;
pub mod scalar;
pub mod superspace;
pub mod triple;
pub mod variational;
pub mod verify;

pub use error::{Error, Result};
pub use expr::{Atom, Expr, Field, Jet};
pub use grassmann::{GrassmannElement, Parity};
pub use scalar::Cq;
