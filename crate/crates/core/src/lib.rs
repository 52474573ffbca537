//! Exact-computation workbench for multiparty protocols in the coordinator
//! message-passing model.
//!
//! The crate executes protocols over all inputs and random-tape assignments,
//! computes exact transcript distributions in rational arithmetic, and checks
//! information-cost and Hellinger-distance inequalities on desk-scale
//! instances. Nothing here is sampled: every probability is an exact
//! rational, and the only floating-point values are the information and
//! distance functionals (entropy, mutual information, Hellinger distance),
//! which are computed from exact pmfs and compared with a fixed tolerance.
//!
//! Module map:
//!
//! * [`infotheory`] — exact pmfs, joint pmfs, entropy / mutual information /
//!   Hellinger distance, and executable checks of the standard identities
//!   (chain rule, drop lemma, MI-vs-Hellinger).
//! * [`model`] — coordinator-model semantics: protocols as seeded state
//!   machines, exhaustive transcript distributions, communication cost and
//!   error probability.
//! * [`distributions`] — switched input distributions: the two-mode one-bit
//!   hard distribution, its n-fold product, and the input marginal.
//! * [`protolib`] — concrete protocols (naive, sequential search, AND poll),
//!   lossless search-transcript compression, and the direct-sum embedding
//!   transformer.
//! * [`costs`] — internal and switched information cost, and the
//!   inequalities linking them to communication cost.
//! * [`structure`] — rectangularity, diagonal and localization lemma checks,
//!   per-player usefulness, and the one-bit lower-bound chain.
//! * [`taskalloc`] — the task-allocation problem and the reduction from set
//!   disjointness to it, with exact overhead accounting.
//! * [`report`] — canonical (byte-deterministic) report rows shared by the
//!   CLI and the test suites.

pub mod costs;
pub mod distributions;
pub mod infotheory;
pub mod model;
pub mod protolib;
pub mod report;
pub mod structure;
pub mod taskalloc;

pub use infotheory::{JointPmf, Pmf, Rational, Value, TOLERANCE};
pub use model::{InputMatrix, Output, Payload, Protocol, Transcript};
