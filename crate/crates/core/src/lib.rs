//! Pliable, structurally submodular set families over the hypercube
//! `{0,1}^k`: construction, property checkers, nested-difference
//! decompositions, the telescoping impossibility certificate, and an exact
//! rational oracle deciding whether a family is the sublevel family of a
//! symmetric submodular function.

pub mod config;
pub mod construct;
pub mod error;
pub mod family;
pub mod ground;

pub use config::Config;
pub use construct::{construct_family, TieBreak};
pub use family::{Family, Member, Provenance, Rule};
pub use ground::{ESet, Element, GroundSet, Mask};
pub mod checkers;
pub mod decompose;
pub mod certificate;
pub mod lp;
pub mod cli;
