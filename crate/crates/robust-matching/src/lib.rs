//! Robust stable matchings: matchings that stay stable when agents change
//! their preference lists.
//!
//! Given two (or more) stable matching instances on the same agents, the set
//! of matchings stable under all of them keeps a surprising amount of the
//! single-instance structure, depending on how many agents changed lists on
//! each side. This crate implements the whole toolkit around that question:
//!
//! * [`instance`] — instances, matchings, blocking pairs, pair classification;
//! * [`lattice`] — dominance order, join/meet, sublattice predicates;
//! * [`rotations`] — rotation poset, closed sets, lattice enumeration;
//! * [`compression`] — edge sets and compressions over the rotation poset,
//!   bouquet discovery, hybrid decompositions;
//! * [`da`] — deferred acceptance, multi-room robust variants, compound
//!   instances with partial-order firm preferences;
//! * [`xp`] — the general solver parameterized by the number of changed
//!   agents;
//! * [`lp`] — exact-rational LP for the (robust) stable matching polytope,
//!   theta rounding, and a desk-scale vertex integrality checker;
//! * [`oracle`] — brute force over all permutations, the ground truth the
//!   rest of the crate is tested against;
//! * [`io`] — the instance file format and seeded pair generators;
//! * [`corpus`] — the bundled counterexample instances with their expected
//!   facts.

pub mod compression;
pub mod corpus;
pub mod da;
pub mod error;
pub mod instance;
pub mod io;
pub mod lattice;
pub mod lp;
pub mod oracle;
pub mod rotations;
pub mod util;
pub mod xp;

pub use error::{Error, Result};
pub use instance::{Agent, Instance, Matching, PerturbationProfile, Side};
pub use lattice::MatchingSet;
