//! Resolutions of monomial ideals via algebraic discrete Morse theory.
//!
//! The library builds the Taylor complex of a monomial ideal, constructs
//! the matching families that minimize it (standard matchings, nbc
//! matchings for quadratic ideals, gcd matchings, sting-chain data for
//! order complexes), computes exact multigraded Hilbert and
//! Poincare-Betti series, computes Koszul homology with its product, and
//! classifies the Golod property. Brute-force counterparts of every
//! closed form live alongside and serve as ground truth in the tests.

pub mod betti;
pub mod brute;
pub mod checks;
pub mod cli;
pub mod complex;
pub mod corpus;
pub mod golod;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod poset;
pub mod series;
pub mod taylor;
pub mod tor;
