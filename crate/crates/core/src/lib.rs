//! Exact symbolic computation of Ekedahl-Oort cycle classes in the Chow ring
//! of the stack of G-zips, with the prime `p` kept as a formal parameter.

pub mod coeffpoly;
pub mod rootweyl;
pub mod schubert;
pub mod zipdatum;
pub mod chowpipeline;
