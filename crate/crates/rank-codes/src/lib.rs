//! Rank-metric and constant-dimension codes over extension fields GF(q^m).
//!
//! The crate provides the full desk-scale toolchain for constant-rank codes:
//!
//! - exact arithmetic in a tower GF(p) ⊂ GF(q) ⊂ GF(q^m) with a configurable
//!   expansion basis ([`field`]),
//! - dense linear algebra over GF(q) with canonical (RREF) subspaces and
//!   Grassmannian enumeration ([`linalg`]),
//! - the counting functions of the rank metric: Gaussian binomials, sphere
//!   sizes, and the rank distribution of linear MRD codes ([`counting`]),
//! - vectors with rank weight/distance and their row/column spans ([`vector`]),
//! - code containers, the Gabidulin construction, and exact minimum-distance
//!   scans ([`codes`]),
//! - constructive maps between constant-dimension and constant-rank codes:
//!   span lifts, the distance-boosting pairing, identity lifting, full-rank
//!   extension, and transposition ([`construct`]),
//! - every cardinality bound on A_R and A_S together with combined best-known
//!   intervals and asymptotic rate calculators ([`bounds`], [`asymptotics`]),
//! - exact optimal-code search as maximum independent sets of rank-distance
//!   graphs, with executable automorphism checks ([`graph`], [`search`]),
//! - a JSON codebook interchange format ([`codebook`]) and the repository's
//!   self-test suite ([`selfcheck`]).
//!
//! All counting and bound arithmetic is exact (big integers and rationals);
//! pairwise scans and enumerations run on rayon when the `parallel` feature
//! (default) is enabled, with sequential fallbacks that produce bit-identical
//! results.

pub mod asymptotics;
pub mod bounds;
pub mod codebook;
pub mod codes;
pub mod construct;
pub mod counting;
pub mod error;
pub mod field;
pub mod graph;
pub mod linalg;
pub mod search;
pub mod selfcheck;
pub mod vector;

pub use error::{Error, Result};
pub use field::{make_field, FieldSpec, FqmElem, Gfq, DEFAULT_FIELD_CAP};
pub use linalg::{MatrixQ, Subspace};
pub use vector::RankVector;
