//! Brute-force references, test corpora, and the verification suites.

pub mod brute;
pub mod corpus;
pub mod idem;
pub mod laws;
pub mod suites;
