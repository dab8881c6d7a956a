//! Exact computation on finite statistical metric spaces, the generalized
//! topologies they induce, and Cartesian products of both.
//!
//! All arithmetic is over arbitrary-precision rationals. Distribution
//! functions are piecewise polynomial, so every sphere, entourage and
//! neighborhood family is computed exactly by enumerating the finitely
//! many places where a set can change.

pub mod cli;
pub mod critical;
pub mod distfn;
pub mod gtop;
pub mod neighborhood;
pub mod poly;
pub mod product;
pub mod rational;
pub mod report;
pub mod sets;
pub mod smspace;
pub mod spacefile;
pub mod tnorm;
pub mod worked;
