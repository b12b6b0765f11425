//! Star products of linear codes over finite fields, the linear span of
//! random rank-one matrices, and exact evaluation of the probability bounds
//! that govern both.

pub mod bounds;
pub mod codes;
pub mod error;
pub mod exactdist;
pub mod experiments;
pub mod genfile;
pub mod gf;
pub mod linalg;

pub use codes::LinearCode;
pub use error::{Error, Result};
pub use gf::{Field, FieldElem};
pub use linalg::Matrix;
