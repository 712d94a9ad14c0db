//! Finite-scale workbench for partial actions of groups, their enveloping
//! (global) actions, germ groupoids, partial representations, induced
//! representations, and amenability certificates.
//!
//! Everything here is exact at finite scale: weights and measures are
//! rationals, groupoid certificates have defect zero by construction, and
//! every solver output is re-verified by an independent checker before it is
//! returned. Claims that hold for global actions but degrade for partial
//! ones (literal Følner sets, partial transitivity of restrictions,
//! Bekka ⇒ Reiter) are not patched up; the audit harness records the
//! verdict per instance instead.

pub mod cli;
pub mod cx;
pub mod envelope;
pub mod equidecomp;
pub mod error;
pub mod free_action;
pub mod generators;
pub mod group;
pub mod groupoid;
pub mod induct;
pub mod matching;
pub mod measure;
pub mod pbij;
pub mod prep;
pub mod ratio;
pub mod repenv;
pub mod rng;
pub mod schema;
pub mod simplex;
pub mod suite;
pub mod unionfind;
pub mod words;

pub mod action;

pub use error::{Error, Result};
