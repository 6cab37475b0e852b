//! Kazhdan-Lusztig polynomials of crystallographic Coxeter groups computed
//! from Bruhat-graph path counts and slalom polynomials, with a classical
//! recursion as an independent check.

pub mod bruhat;
pub mod coxeter;
pub mod error;
pub mod kl;
pub mod lattice;
pub mod linalg;
pub mod ncpoly;
pub mod order;
pub mod poly;
pub mod qsym;
pub mod threecomplete;
pub mod word;

pub use bruhat::{BruhatPath, Counts, FlagVector, Interval};
pub use coxeter::{Bond, CoxElem, CoxSystem, Matrix, Root, Side};
pub use error::{Error, Result};
pub use ncpoly::{to_cd, CdPoly, NCPoly};
pub use order::RefOrder;
pub use qsym::{Basis, GradedQSym, QSymSlice};
pub use word::{fibonacci, BinaryWord};
