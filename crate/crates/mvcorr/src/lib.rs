//! Frame correspondence for modal logic valued in finite Heyting algebras.
//!
//! Modules follow the pipeline: algebras ([`heyting`]), modal syntax and
//! Kripke semantics, first-order correspondence language ([`fol`]), brute-force
//! oracles, Sahlqvist/inductive classification ([`gentree`]), [`alba`] and
//! [`svb`]. [`cli`] and [`report`] wire them into the `mvcorr` binary.

pub mod heyting;
pub mod syntax;
pub mod semantics;
pub mod fol;
pub mod oracle;
pub mod gentree;
pub mod alba;
pub mod svb;
pub mod report;
pub mod cli;
