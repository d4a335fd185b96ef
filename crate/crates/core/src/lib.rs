//! Exact computation in Thompson's group `V`, labelled Thompson groups
//! `V(G)`, twisted Brin–Thompson groups `SV_G`, and the bisection algebras
//! of the groupoids whose topological full groups they are.

pub mod cantor;
pub mod dyadic;
pub mod error;
pub mod groupoid;
pub mod groups;
pub mod labelled;
pub mod random;
pub mod selftest;
pub mod twisted;
mod text;

pub use error::{Error, Result};
