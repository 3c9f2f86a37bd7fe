//! Exact discrete tomography of icosahedral and cyclotomic model sets.

pub mod convex;
pub mod direction;
pub mod error;
pub mod experiments;
pub mod flow;
pub mod golden;
pub mod hull;
pub mod icosian;
pub mod io;
pub mod int;
pub mod linalg;
pub mod modelset;
pub mod reconstruction;
pub mod slicing;
pub mod tomography;
pub mod window;

pub use error::{Error, Result};
pub use golden::{GoldenInt, GoldenRat, Residue};
pub use int::Int;
pub use linalg::{Mat3, QVec3};
