use std::collections::BTreeMap;

use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::Rational;

#[derive(Debug, Error)]
pub enum PmfError {
    #[error("probabilities sum to {got}, expected exactly 1")]
    NotNormalized { got: String },
    #[error("negative probability {got} for an outcome")]
    NegativeProbability { got: String },
    #[error("empty support")]
    EmptySupport,
    #[error("conditioning event has probability zero")]
    ZeroProbabilityEvent,
}

/// A probability mass function over a finite outcome set, with exact
/// rational probabilities that sum to exactly 1. Zero-probability outcomes
/// are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pmf<T: Ord> {
    probs: BTreeMap<T, Rational>,
}

impl<T: Ord + Clone> Pmf<T> {
    /// Builds a pmf from (outcome, probability) pairs. Probabilities for
    /// repeated outcomes are accumulated; the total must be exactly 1.
    pub fn new(entries: impl IntoIterator<Item = (T, Rational)>) -> Result<Self, PmfError> {
        let mut probs: BTreeMap<T, Rational> = BTreeMap::new();
        for (outcome, p) in entries {
            if p.is_negative() {
                return Err(PmfError::NegativeProbability { got: p.to_string() });
            }
            *probs.entry(outcome).or_insert_with(Rational::zero) += p;
        }
        probs.retain(|_, p| !p.is_zero());
        if probs.is_empty() {
            return Err(PmfError::EmptySupport);
        }
        let total: Rational = probs.values().sum();
        if !total.is_one() {
            return Err(PmfError::NotNormalized {
                got: total.to_string(),
            });
        }
        Ok(Pmf { probs })
    }

    /// Builds a pmf from nonnegative weights by normalizing them.
    pub fn from_weights(entries: impl IntoIterator<Item = (T, Rational)>) -> Result<Self, PmfError> {
        let entries: Vec<(T, Rational)> = entries.into_iter().collect();
        let total: Rational = entries.iter().map(|(_, p)| p.clone()).sum();
        if total.is_zero() {
            return Err(PmfError::EmptySupport);
        }
        Self::new(entries.into_iter().map(|(o, p)| (o, p / total.clone())))
    }

    pub fn point_mass(outcome: T) -> Self {
        let mut probs = BTreeMap::new();
        probs.insert(outcome, Rational::one());
        Pmf { probs }
    }

    pub fn uniform(outcomes: impl IntoIterator<Item = T>) -> Result<Self, PmfError> {
        let outcomes: Vec<T> = outcomes.into_iter().collect();
        let p = Rational::new(1.into(), (outcomes.len().max(1)).into());
        Self::new(outcomes.into_iter().map(|o| (o, p.clone())))
    }

    /// Probability of an outcome; zero if it is outside the support.
    pub fn prob(&self, outcome: &T) -> Rational {
        self.probs.get(outcome).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rational)> {
        self.probs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &T> {
        self.probs.keys()
    }

    pub fn support_len(&self) -> usize {
        self.probs.len()
    }

    /// Exact sum of all probabilities (always 1 for a constructed pmf;
    /// exposed so tests can assert it).
    pub fn total(&self) -> Rational {
        self.probs.values().sum()
    }

    /// Push-forward under an arbitrary map; probabilities of outcomes that
    /// collide are added exactly.
    pub fn map<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> Pmf<U> {
        let mut probs: BTreeMap<U, Rational> = BTreeMap::new();
        for (outcome, p) in &self.probs {
            *probs.entry(f(outcome)).or_insert_with(Rational::zero) += p.clone();
        }
        Pmf { probs }
    }

    /// Exact conditional distribution given that the predicate holds.
    pub fn condition(&self, pred: impl Fn(&T) -> bool) -> Result<Pmf<T>, PmfError> {
        let kept: Vec<(T, Rational)> = self
            .probs
            .iter()
            .filter(|(o, _)| pred(o))
            .map(|(o, p)| (o.clone(), p.clone()))
            .collect();
        let mass: Rational = kept.iter().map(|(_, p)| p.clone()).sum();
        if mass.is_zero() {
            return Err(PmfError::ZeroProbabilityEvent);
        }
        Self::new(kept.into_iter().map(|(o, p)| (o, p / mass.clone())))
    }

    /// Product distribution of two independent pmfs.
    pub fn product<U: Ord + Clone>(&self, other: &Pmf<U>) -> Pmf<(T, U)> {
        let mut probs = BTreeMap::new();
        for (a, pa) in &self.probs {
            for (b, pb) in &other.probs {
                probs.insert((a.clone(), b.clone()), pa * pb);
            }
        }
        Pmf { probs }
    }

    /// Shannon entropy in bits (base 2), with the 0·log(1/0) = 0 convention.
    pub fn entropy(&self) -> f64 {
        let mut h = 0.0;
        for p in self.probs.values() {
            let pf = rational_to_f64(p);
            if pf > 0.0 {
                h -= pf * pf.log2();
            }
        }
        h
    }

    /// Hellinger distance, computed from the definitional form
    /// `(1/√2)·‖√P − √Q‖₂` over the union of supports.
    pub fn hellinger(&self, other: &Pmf<T>) -> f64 {
        let mut sum = 0.0;
        for (outcome, p) in &self.probs {
            let q = other.prob(outcome);
            let d = rational_to_f64(p).sqrt() - rational_to_f64(&q).sqrt();
            sum += d * d;
        }
        for (outcome, q) in &other.probs {
            if !self.probs.contains_key(outcome) {
                sum += rational_to_f64(q);
            }
        }
        (sum / 2.0).sqrt()
    }

    /// Squared Hellinger distance via `1 − Σ √(P(ω)Q(ω))` (one minus the
    /// Bhattacharyya coefficient), clamped to `[0, 1]`.
    pub fn hellinger_sq(&self, other: &Pmf<T>) -> f64 {
        let mut bc = 0.0;
        for (outcome, p) in &self.probs {
            if let Some(q) = other.probs.get(outcome) {
                bc += (rational_to_f64(p) * rational_to_f64(q)).sqrt();
            }
        }
        (1.0 - bc).clamp(0.0, 1.0)
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational representable as f64 at desk scale")
}

/// `H(target | given)` over an exact joint, by the definition: the weighted
/// average of the entropies of the conditional distributions of `target`.
pub fn conditional_entropy_by<T, A, B>(
    joint: &Pmf<T>,
    target: impl Fn(&T) -> A,
    given: impl Fn(&T) -> B,
) -> f64
where
    T: Ord + Clone,
    A: Ord + Clone,
    B: Ord + Clone,
{
    // Group the joint by the conditioning value, tracking the conditional
    // law of `target` exactly.
    let mut groups: BTreeMap<B, BTreeMap<A, Rational>> = BTreeMap::new();
    for (outcome, p) in joint.iter() {
        let slot = groups.entry(given(outcome)).or_default();
        *slot.entry(target(outcome)).or_insert_with(Rational::zero) += p.clone();
    }
    let mut h = 0.0;
    for cond in groups.values() {
        let mass: Rational = cond.values().sum();
        let w = rational_to_f64(&mass);
        let mut hc = 0.0;
        for p in cond.values() {
            let pf = rational_to_f64(&(p / mass.clone()));
            if pf > 0.0 {
                hc -= pf * pf.log2();
            }
        }
        h += w * hc;
    }
    h
}

/// `I(a ; b | given) = H(a | given) − H(a | b, given)` over an exact joint.
pub fn conditional_mutual_information_by<T, A, B, C>(
    joint: &Pmf<T>,
    a: impl Fn(&T) -> A,
    b: impl Fn(&T) -> B,
    given: impl Fn(&T) -> C,
) -> f64
where
    T: Ord + Clone,
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
{
    let h_a_given = conditional_entropy_by(joint, &a, &given);
    let h_a_bgiven = conditional_entropy_by(joint, &a, |t| (b(t), given(t)));
    h_a_given - h_a_bgiven
}

/// `I(a ; b)` over an exact joint.
pub fn mutual_information_by<T, A, B>(
    joint: &Pmf<T>,
    a: impl Fn(&T) -> A,
    b: impl Fn(&T) -> B,
) -> f64
where
    T: Ord + Clone,
    A: Ord + Clone,
    B: Ord + Clone,
{
    conditional_mutual_information_by(joint, a, b, |_| ())
}
