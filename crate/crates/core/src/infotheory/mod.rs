//! Exact-rational pmf algebra and information/distance functionals.
//!
//! Probabilities are `BigRational` throughout; sums and normalization are
//! checked with exact equality. Entropy, mutual information and Hellinger
//! distance are evaluated in `f64` from the exact pmfs, and everything that
//! compares such values uses [`TOLERANCE`].

mod joint;
mod lemmas;
mod pmf;

pub use joint::{JointPmf, Value};
pub use lemmas::{
    check_chain_rule, check_drop_lemma, check_h_delta, check_mi_hellinger, check_simplified_chain,
    HypothesisOutcome,
};
pub use pmf::{
    conditional_entropy_by, conditional_mutual_information_by, mutual_information_by, Pmf,
    PmfError,
};
pub(crate) use pmf::rational_to_f64;

/// Exact probability type used for every pmf in the crate.
pub type Rational = num::BigRational;

/// Tolerance for all floating-point functional comparisons (log- and
/// sqrt-valued quantities). Rational equality is used wherever no
/// transcendental function intervenes.
pub const TOLERANCE: f64 = 1e-9;

/// Shorthand for an exact rational `num/den` from machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
