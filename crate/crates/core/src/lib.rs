//! Descent-theoretic decision procedures for finite ordered structures.
//!
//! The crate decides, with certificates, when a morphism of valued ordered
//! sets is a regular epimorphism, a stable regular epimorphism (descent
//! morphism), or an effective descent morphism — in plain finite preorders,
//! in set-indexed families over a fixed ordered set, and in the category of
//! monotone valuations `α : A → X` with lax triangles. Every closed-form
//! characterization is cross-checked by brute-force categorical oracles
//! (coequalizers, explicit descent data with unit and cocycle laws, bounded
//! comparison-functor checks), and an exact-rational layer reproduces the
//! density phenomena on the unit interval that no finite carrier can show.

pub mod check;
pub mod enumerate;
pub mod error;
pub mod fam;
pub mod fixtures;
pub mod interval;
pub mod lax;
pub mod oracle;
pub mod ordmap;
pub mod sweep;
pub mod ordset;
pub mod verdict;

pub use error::{Error, Result};
pub use ordset::OrdSet;
pub use verdict::{OracleVerdict, Verdict};
