//! Exact combinatorics of directed graphs of cyclic groups.
//!
//! A directed graph of groups is a connected graph carrying a cyclic group at
//! each vertex and edge, injections of every edge group into its endpoint
//! vertex groups, and an orientation. This crate makes the combinatorial
//! machinery attached to such an object executable with exact integer
//! arithmetic:
//!
//! * Sigma-normal forms for elements of the fundamental groupoid, and the
//!   word category of forward words with its prefix order ([`words`]);
//! * the left inverse hull of the word category and germ equality over
//!   boundary points ([`hull`]);
//! * eventually periodic boundary paths and the odometer-style action of
//!   groupoid elements on them ([`boundary`]);
//! * depth-bounded expansion of the directed Bass-Serre tree and recovery of
//!   the quotient graph ([`tree`]);
//! * Smith normal form over the integers and the K-theory of the associated
//!   C*-algebra ([`intlin`], [`ktheory`]);
//! * sufficient Kirchberg-algebra conditions and the constructive realization
//!   of prescribed K-groups ([`kirchberg`]).
//!
//! All operations are pure functions on immutable values and are safe to call
//! concurrently. With the `parallel` feature (on by default) the inner loops
//! of tree expansion and path-space enumeration run on rayon; the `*_seq`
//! variants always run sequentially and produce identical output.

pub mod boundary;
pub mod cyclic;
pub mod error;
pub mod gog;
pub mod hull;
pub mod intlin;
pub mod kirchberg;
pub mod ktheory;
mod par;
pub mod samples;
#[cfg(any(test, feature = "testgen"))]
pub mod testgen;
pub mod tree;
pub mod words;

pub use error::{Error, Result};
