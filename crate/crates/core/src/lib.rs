//! Exact verification of quantum Drinfeld orbifold algebras `H_{q,kappa}`:
//! PBW conditions, color Lie rings, enveloping algebras and braided Hopf
//! structure.

#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::too_many_arguments)]

pub mod algebra;
pub mod check;
pub mod colorlie;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod pbw;
pub mod random;
pub mod report;
pub mod scalar;
pub mod specfile;
pub mod uea;

pub use error::{Error, Result};
