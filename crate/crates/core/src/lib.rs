//! Lie superalgebras over commutative rings, their enveloping algebras, and
//! the Harish-Chandra pair construction for split tori.

pub mod catalog;
pub mod chevalley;
pub mod coeff;
pub mod env;
pub mod ext;
pub mod format;
pub mod hcp;
pub mod hopfpair;
pub mod lie;
mod linalg;
pub mod report;
pub mod superlin;
