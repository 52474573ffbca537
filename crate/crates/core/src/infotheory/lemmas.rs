//! Executable checks of the information-theoretic identities used by the
//! cost and structure suites. Each check returns a residual or a signed
//! margin; callers compare against [`super::TOLERANCE`].

use thiserror::Error;

use super::joint::{JointError, JointPmf};
use super::pmf::{mutual_information_by, Pmf};
use super::{Rational, TOLERANCE};
use crate::model::{InputMatrix, ModelError, Output, Protocol};

/// Outcome of a check whose statement only applies under a conditional
/// independence hypothesis. A violated hypothesis is a report, not a
/// failure of the identity itself.
#[derive(Debug, Clone, PartialEq)]
pub enum HypothesisOutcome {
    /// Hypothesis held; the payload is the residual or signed margin.
    Holds(f64),
    /// `I(A ; B | D)` was not zero, so the identity does not apply.
    HypothesisViolated { i_ab_given_d: f64 },
}

impl HypothesisOutcome {
    pub fn holds_with(&self, check: impl Fn(f64) -> bool) -> bool {
        matches!(self, HypothesisOutcome::Holds(v) if check(*v))
    }
}

/// Residual of the chain rule
/// `I(A₁…A_m ; B | C) = Σ_i I(A_i ; B | A₁…A_{i−1} C)`,
/// with `parts` taken in order.
pub fn check_chain_rule(
    joint: &JointPmf,
    parts: &[&str],
    b: &[&str],
    given: &[&str],
) -> Result<f64, JointError> {
    let lhs = joint.mutual_information(parts, b, given)?;
    let mut rhs = 0.0;
    for (i, part) in parts.iter().enumerate() {
        let cond: Vec<&str> = parts[..i].iter().chain(given.iter()).copied().collect();
        rhs += joint.mutual_information(&[part], b, &cond)?;
    }
    Ok((lhs - rhs).abs())
}

/// Residual of `I(A ; BC | D) = I(A ; C | B, D)`, which holds when A and B
/// are independent given D. The hypothesis is verified first.
pub fn check_simplified_chain(
    joint: &JointPmf,
    a: &[&str],
    b: &[&str],
    c: &[&str],
    d: &[&str],
) -> Result<HypothesisOutcome, JointError> {
    let hyp = joint.mutual_information(a, b, d)?;
    if hyp.abs() > TOLERANCE {
        return Ok(HypothesisOutcome::HypothesisViolated { i_ab_given_d: hyp });
    }
    let bc: Vec<&str> = b.iter().chain(c.iter()).copied().collect();
    let bd: Vec<&str> = b.iter().chain(d.iter()).copied().collect();
    let lhs = joint.mutual_information(a, &bc, d)?;
    let rhs = joint.mutual_information(a, c, &bd)?;
    Ok(HypothesisOutcome::Holds((lhs - rhs).abs()))
}

/// Signed margin of `I(A ; C | B, D) ≥ I(A ; C | D)`, which holds when A and
/// B are independent given D. Returns LHS − RHS.
pub fn check_drop_lemma(
    joint: &JointPmf,
    a: &[&str],
    b: &[&str],
    c: &[&str],
    d: &[&str],
) -> Result<HypothesisOutcome, JointError> {
    let hyp = joint.mutual_information(a, b, d)?;
    if hyp.abs() > TOLERANCE {
        return Ok(HypothesisOutcome::HypothesisViolated { i_ab_given_d: hyp });
    }
    let bd: Vec<&str> = b.iter().chain(d.iter()).copied().collect();
    let lhs = joint.mutual_information(a, c, &bd)?;
    let rhs = joint.mutual_information(a, c, d)?;
    Ok(HypothesisOutcome::Holds(lhs - rhs))
}

/// Signed margin of `I(S ; Y) ≥ h²(μ₀, μ₁)` where S is a fair selector bit
/// and Y ~ μ_S. Returns LHS − RHS.
pub fn check_mi_hellinger<T: Ord + Clone>(mu0: &Pmf<T>, mu1: &Pmf<T>) -> f64 {
    let half = Rational::new(1.into(), 2.into());
    let joint = Pmf::new(
        mu0.iter()
            .map(|(y, p)| ((false, y.clone()), p * &half))
            .chain(mu1.iter().map(|(y, p)| ((true, y.clone()), p * &half))),
    )
    .expect("selector joint normalizes");
    let mi = mutual_information_by(&joint, |t| t.0, |t| t.1.clone());
    mi - mu0.hellinger_sq(mu1)
}

#[derive(Debug, Error)]
pub enum LemmaError {
    #[error("inputs map to the same truth value; the distance bound does not apply")]
    SameTruthValue,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Signed margin of `h(Π(X), Π(Y)) ≥ (1 − δ)/√2` for a δ-error protocol and
/// inputs with different truth values. Returns LHS − RHS.
pub fn check_h_delta(
    protocol: &Protocol,
    x: &InputMatrix,
    y: &InputMatrix,
    truth: impl Fn(&InputMatrix) -> Output,
    delta: f64,
    budget: u64,
) -> Result<f64, LemmaError> {
    if truth(x) == truth(y) {
        return Err(LemmaError::SameTruthValue);
    }
    let px = protocol.transcript_distribution(x, budget)?;
    let py = protocol.transcript_distribution(y, budget)?;
    Ok(px.hellinger(&py) - (1.0 - delta) / 2f64.sqrt())
}
