//! Exact computations with infinite-rank cluster algebras attached to simply-laced
//! Weyl group elements, realized on finite windows.

// Row operations read and write two rows of one matrix; index loops are clearer.
#![allow(clippy::needless_range_loop)]

pub mod cert;
pub mod error;
pub mod gvector;
pub mod linalg;
pub mod qseries;
pub mod quiver;
pub mod rootsys;
pub mod seed;
pub mod sl2;
pub mod wronskian;

pub use error::{Error, Result};
