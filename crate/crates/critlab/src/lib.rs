//! critlab: exact chromatic numbers, clique-criticality certification,
//! generalized Kempe chains, structural-lemma predicates, and an
//! isomorph-free counterexample search for small graphs (n ≤ 64).
//!
//! The library is organized around a conjecture-hunting workflow: decide
//! χ(G) exactly ([`chroma`]), certify or refute K_l-criticality clause by
//! clause ([`criticality`]), exercise the Kempe-chain machinery ([`kempe`]),
//! turn structural lemmas into falsifiable predicates ([`lemmas`]), and
//! sweep every isomorphism class of small graphs looking for a non-complete
//! critical graph ([`harness`]).
//!
//! All core types are immutable values, safe to share across threads; the
//! harness is the only module that runs its own worker pool.

pub mod chroma;
pub mod criticality;
pub mod graph;
pub mod harness;
pub mod kempe;
pub mod lemmas;

pub use graph::{Graph, VertexSet};
