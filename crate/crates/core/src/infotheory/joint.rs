use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::pmf::{conditional_entropy_by, Pmf, PmfError};
use super::Rational;

/// An opaque, ordered outcome label. Joint pmfs store one `Value` per named
/// component; anything with a canonical encoding (bits, indices, message
/// sequences) can be injected.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Value {
    Bit(bool),
    Int(i64),
    Text(String),
    Seq(Vec<Value>),
}

impl Value {
    pub fn bits(bits: impl IntoIterator<Item = bool>) -> Value {
        Value::Seq(bits.into_iter().map(Value::Bit).collect())
    }

    pub fn ints(ints: impl IntoIterator<Item = i64>) -> Value {
        Value::Seq(ints.into_iter().map(Value::Int).collect())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bit(b) => write!(f, "{}", u8::from(*b)),
            Value::Int(i) => write!(f, "{i}"),
            Value::Text(s) => write!(f, "{s}"),
            Value::Seq(vs) => {
                write!(f, "(")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum JointError {
    #[error("unknown component '{0}'")]
    UnknownComponent(String),
    #[error("component '{0}' named more than once")]
    DuplicateComponent(String),
    #[error("outcome arity {got} does not match {want} components")]
    ArityMismatch { got: usize, want: usize },
    #[error(transparent)]
    Pmf(#[from] PmfError),
}

/// A joint pmf whose outcomes are tuples with named components.
#[derive(Debug, Clone)]
pub struct JointPmf {
    names: Vec<String>,
    pmf: Pmf<Vec<Value>>,
}

impl JointPmf {
    pub fn new(
        names: &[&str],
        entries: impl IntoIterator<Item = (Vec<Value>, Rational)>,
    ) -> Result<Self, JointError> {
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(JointError::DuplicateComponent(name.to_string()));
            }
        }
        let entries: Vec<(Vec<Value>, Rational)> = entries.into_iter().collect();
        for (outcome, _) in &entries {
            if outcome.len() != names.len() {
                return Err(JointError::ArityMismatch {
                    got: outcome.len(),
                    want: names.len(),
                });
            }
        }
        Ok(JointPmf {
            names: names.iter().map(|s| s.to_string()).collect(),
            pmf: Pmf::new(entries)?,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn pmf(&self) -> &Pmf<Vec<Value>> {
        &self.pmf
    }

    fn indices(&self, components: &[&str]) -> Result<Vec<usize>, JointError> {
        components
            .iter()
            .map(|c| {
                self.names
                    .iter()
                    .position(|n| n == c)
                    .ok_or_else(|| JointError::UnknownComponent(c.to_string()))
            })
            .collect()
    }

    /// Exact marginal over the named components, in the order given.
    pub fn marginal(&self, components: &[&str]) -> Result<Pmf<Vec<Value>>, JointError> {
        let idx = self.indices(components)?;
        Ok(self.pmf.map(|outcome| project(outcome, &idx)))
    }

    /// Entropy (bits) of the named components' marginal.
    pub fn entropy(&self, components: &[&str]) -> Result<f64, JointError> {
        Ok(self.marginal(components)?.entropy())
    }

    /// `H(target | given)` by the definition (probability-weighted average
    /// of conditional entropies).
    pub fn conditional_entropy(&self, target: &[&str], given: &[&str]) -> Result<f64, JointError> {
        let t = self.indices(target)?;
        let g = self.indices(given)?;
        Ok(conditional_entropy_by(
            &self.pmf,
            |o| project(o, &t),
            |o| project(o, &g),
        ))
    }

    /// `I(a ; b | given)`, with `given` possibly empty.
    pub fn mutual_information(
        &self,
        a: &[&str],
        b: &[&str],
        given: &[&str],
    ) -> Result<f64, JointError> {
        let h_a_g = self.conditional_entropy(a, given)?;
        let bg: Vec<&str> = b.iter().chain(given.iter()).copied().collect();
        let h_a_bg = self.conditional_entropy(a, &bg)?;
        Ok(h_a_g - h_a_bg)
    }
}

fn project(outcome: &[Value], idx: &[usize]) -> Vec<Value> {
    idx.iter().map(|&i| outcome[i].clone()).collect()
}
