//! Exact verification of fusion, ribbon, Virasoro and coset data.

pub mod acceptance;
pub mod arith;
pub mod coset;
pub mod emit;
pub mod fusion;
pub mod linalg;
pub mod oracle;
pub mod ribbon;
pub mod virasoro;
