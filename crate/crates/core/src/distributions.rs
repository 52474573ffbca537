//! Switched input distributions: joint laws of (X, M, Z) where the players'
//! rows are conditionally independent given the mode vector M and pointer
//! vector Z, and M is independent of Z.
//!
//! The one-coordinate hard distribution has two modes per coordinate: an
//! easy mode (M = 0) where every player's bit is an independent fair coin,
//! and a hard mode (M = 1) where exactly one player, selected uniformly by
//! Z, gets a zero. The n-coordinate hard distribution is the i.i.d. product.

use std::collections::BTreeSet;

use num::{One, Zero};
use thiserror::Error;

use crate::infotheory::{ratio, JointPmf, Pmf, Rational, Value};
use crate::model::InputMatrix;

#[derive(Debug, Error)]
pub enum DistError {
    #[error("need at least 2 players, got {0}")]
    TooFewPlayers(usize),
    #[error("product base must have n = 1, got n = {0}")]
    BaseNotOneCoordinate(usize),
    #[error("support would have {needed} tuples, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("distribution is over n = {0} coordinates, expected n = 1")]
    NotOneCoordinate(usize),
}

/// One draw from a switched distribution: the input matrix together with
/// the per-coordinate mode bits and pointer indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SwitchedSample {
    pub x: InputMatrix,
    /// Mode bit per coordinate; true is the hard mode.
    pub m: Vec<bool>,
    /// Pointer per coordinate: the player holding the forced zero when the
    /// coordinate is hard.
    pub z: Vec<usize>,
}

impl SwitchedSample {
    pub fn m_value(&self) -> Value {
        Value::bits(self.m.iter().copied())
    }

    pub fn z_value(&self) -> Value {
        Value::ints(self.z.iter().map(|&z| z as i64))
    }
}

/// A joint distribution over [`SwitchedSample`]s.
#[derive(Debug, Clone)]
pub struct SwitchedDistribution {
    k: usize,
    n: usize,
    joint: Pmf<SwitchedSample>,
}

/// Support-size guard for product constructions.
pub const SUPPORT_BUDGET: u64 = 10_000_000;

/// The one-coordinate hard distribution for k players: Z uniform on the
/// players, M hard with probability 1/3, easy rows i.i.d. fair bits, hard
/// rows all ones except a zero at Z.
pub fn hard_one_bit(k: usize) -> Result<SwitchedDistribution, DistError> {
    if k < 2 {
        return Err(DistError::TooFewPlayers(k));
    }
    let mut entries: Vec<(SwitchedSample, Rational)> = Vec::new();
    let easy_cell = ratio(2, 3) * ratio(1, k as i64) * Rational::new(1.into(), (1u64 << k).into());
    let hard_cell = ratio(1, 3) * ratio(1, k as i64);
    for z in 0..k {
        for code in 0u64..(1 << k) {
            let column: Vec<bool> = (0..k).map(|i| (code >> i) & 1 == 1).collect();
            entries.push((
                SwitchedSample {
                    x: InputMatrix::from_column(&column),
                    m: vec![false],
                    z: vec![z],
                },
                easy_cell.clone(),
            ));
        }
        entries.push((
            SwitchedSample {
                x: InputMatrix::from_column(&complement_vector(&BTreeSet::from([z]), k)),
                m: vec![true],
                z: vec![z],
            },
            hard_cell.clone(),
        ));
    }
    Ok(SwitchedDistribution {
        k,
        n: 1,
        joint: Pmf::new(entries).expect("hard one-bit distribution normalizes"),
    })
}

impl SwitchedDistribution {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn joint(&self) -> &Pmf<SwitchedSample> {
        &self.joint
    }

    /// The n-fold i.i.d. product of a one-coordinate distribution.
    pub fn power(&self, n: usize) -> Result<SwitchedDistribution, DistError> {
        if self.n != 1 {
            return Err(DistError::BaseNotOneCoordinate(self.n));
        }
        assert!(n >= 1);
        let base_size = self.joint.support_len() as u64;
        let needed = base_size.checked_pow(n as u32).unwrap_or(u64::MAX);
        if needed > SUPPORT_BUDGET {
            return Err(DistError::BudgetExceeded {
                needed,
                budget: SUPPORT_BUDGET,
            });
        }
        let base: Vec<(&SwitchedSample, &Rational)> = self.joint.iter().collect();
        // Accumulate per-coordinate (column, mode, pointer) choices left to
        // right, then assemble each choice sequence into a k×n matrix.
        struct Partial {
            columns: Vec<Vec<bool>>,
            m: Vec<bool>,
            z: Vec<usize>,
            prob: Rational,
        }
        let mut partials = vec![Partial {
            columns: Vec::new(),
            m: Vec::new(),
            z: Vec::new(),
            prob: Rational::one(),
        }];
        for _ in 0..n {
            let mut next = Vec::with_capacity(partials.len() * base.len());
            for partial in &partials {
                for (sample, p) in &base {
                    let mut columns = partial.columns.clone();
                    columns.push(sample.x.column(0));
                    let mut m = partial.m.clone();
                    m.push(sample.m[0]);
                    let mut z = partial.z.clone();
                    z.push(sample.z[0]);
                    next.push(Partial {
                        columns,
                        m,
                        z,
                        prob: partial.prob.clone() * *p,
                    });
                }
            }
            partials = next;
        }
        let entries = partials.into_iter().map(|partial| {
            let rows: Vec<Vec<bool>> = (0..self.k)
                .map(|i| partial.columns.iter().map(|c| c[i]).collect())
                .collect();
            (
                SwitchedSample {
                    x: InputMatrix::from_rows(rows),
                    m: partial.m,
                    z: partial.z,
                },
                partial.prob,
            )
        });
        Ok(SwitchedDistribution {
            k: self.k,
            n,
            joint: Pmf::new(entries).expect("product distribution normalizes"),
        })
    }

    /// The marginal distribution of the input matrix (M and Z summed out).
    pub fn input_marginal(&self) -> Pmf<InputMatrix> {
        self.joint.map(|s| s.x.clone())
    }

    /// Exact verification of the two definitional invariants: M independent
    /// of Z, and the rows conditionally independent given each (m, z) cell.
    pub fn check_switched(&self) -> SwitchedReport {
        // M independent of Z: joint of (m, z) equals the product of the
        // marginals, as rationals.
        let mz = self.joint.map(|s| (s.m.clone(), s.z.clone()));
        let m_marginal = self.joint.map(|s| s.m.clone());
        let z_marginal = self.joint.map(|s| s.z.clone());
        for (pair, p) in mz.iter() {
            let want = m_marginal.prob(&pair.0) * z_marginal.prob(&pair.1);
            if *p != want {
                return SwitchedReport {
                    pass: false,
                    failure: Some(SwitchedFailure::ModePointerDependent {
                        m: pair.0.clone(),
                        z: pair.1.clone(),
                    }),
                };
            }
        }
        for m in m_marginal.support() {
            for z in z_marginal.support() {
                let joint_mass = mz.prob(&(m.clone(), z.clone()));
                if joint_mass.is_zero() {
                    continue;
                }
                let cell = self
                    .joint
                    .condition(|s| s.m == *m && s.z == *z)
                    .expect("cell has positive mass")
                    .map(|s| s.x.clone());
                // Product over rows must reconstruct the cell law exactly.
                let row_marginals: Vec<Pmf<Vec<bool>>> = (0..self.k)
                    .map(|i| cell.map(|x| x.row(i).to_vec()))
                    .collect();
                for (x, p) in cell.iter() {
                    let mut want = Rational::one();
                    for (i, rm) in row_marginals.iter().enumerate() {
                        want *= rm.prob(&x.row(i).to_vec());
                    }
                    if *p != want {
                        return SwitchedReport {
                            pass: false,
                            failure: Some(SwitchedFailure::RowsNotConditionallyIndependent {
                                m: m.clone(),
                                z: z.clone(),
                            }),
                        };
                    }
                }
            }
        }
        SwitchedReport {
            pass: true,
            failure: None,
        }
    }

    /// The joint as a named-component pmf with one component per player row
    /// plus the mode and pointer vectors, for the identity checks.
    pub fn to_joint_pmf(&self) -> JointPmf {
        let row_names: Vec<String> = (0..self.k).map(|i| format!("x{}", i + 1)).collect();
        let mut names: Vec<&str> = row_names.iter().map(|s| s.as_str()).collect();
        names.push("m");
        names.push("z");
        let entries = self.joint.iter().map(|(s, p)| {
            let mut outcome: Vec<Value> = (0..self.k)
                .map(|i| Value::bits(s.x.row(i).iter().copied()))
                .collect();
            outcome.push(s.m_value());
            outcome.push(s.z_value());
            (outcome, p.clone())
        });
        JointPmf::new(&names, entries).expect("switched joint is a valid pmf")
    }
}

/// Outcome of [`SwitchedDistribution::check_switched`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchedReport {
    pub pass: bool,
    pub failure: Option<SwitchedFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SwitchedFailure {
    ModePointerDependent { m: Vec<bool>, z: Vec<usize> },
    RowsNotConditionallyIndependent { m: Vec<bool>, z: Vec<usize> },
}

/// Probability that the AND of all players' bits is 1 under a distribution
/// over one-coordinate inputs (the collapsing parameter).
pub fn collapsing_epsilon(dist: &Pmf<InputMatrix>) -> Result<Rational, DistError> {
    let mut total = Rational::zero();
    for (x, p) in dist.iter() {
        if x.n() != 1 {
            return Err(DistError::NotOneCoordinate(x.n()));
        }
        if (0..x.k()).all(|i| x.get(i, 0)) {
            total += p;
        }
    }
    Ok(total)
}

/// The complement of a set's characteristic vector: 1 exactly off the set.
pub fn complement_vector(zeros: &BTreeSet<usize>, k: usize) -> Vec<bool> {
    assert!(zeros.iter().all(|&i| i < k), "set must be within [k]");
    (0..k).map(|i| !zeros.contains(&i)).collect()
}

/// The one-column input where exactly the given players hold zero.
pub fn zeros_at(zeros: &[usize], k: usize) -> InputMatrix {
    InputMatrix::from_column(&complement_vector(&zeros.iter().copied().collect(), k))
}
