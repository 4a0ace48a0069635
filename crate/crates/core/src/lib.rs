//! Finite Hilbert-style proof systems for Paraconsistent Weak Kleene (PWK) and
//! Bochvar-Kleene (BK) logics.
//!
//! - [`formula`]: signatures, formulas, parsing, substitution and matching.
//! - [`semantics`]: finite matrices, consequence by enumeration, separators.
//! - [`calculus`]: rule schemas, H-systems, derivations, verification and search.
//! - [`transforms`]: system conversions and proof transforms.
//! - [`corpus`]: the shipped matrices, systems and derivations.
//! - [`family`]: enumeration and seeded sampling of formulas and statements.
//! - [`cli`]: the command-line front end.

pub mod calculus;
pub mod cli;
pub mod corpus;
pub mod family;
pub mod formula;
pub mod semantics;
pub mod transforms;
