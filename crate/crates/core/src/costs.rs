//! Information-cost functionals over (distribution, protocol) pairs, and
//! the verifiable inequalities linking them to communication cost.
//!
//! Internal information cost: what an observer of the whole transcript
//! learns about the input, plus what each player learns about the others'
//! inputs given its own. Switched information cost: per player, what the
//! transcript on that player's channel reveals about the player's input
//! given the mode and pointer, plus what it reveals about the mode given
//! the player's input and the pointer.

use serde::Serialize;
use thiserror::Error;

use crate::distributions::{DistError, SwitchedDistribution, SwitchedSample};
use crate::infotheory::conditional_mutual_information_by;
use crate::model::{InputMatrix, ModelError, Protocol, Transcript};
use crate::infotheory::{Pmf, Rational};
use crate::protolib::{direct_sum_protocol, BuildError, EmbeddingConfig};

#[derive(Debug, Error)]
pub enum CostError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// Internal information cost, split into its defining terms.
#[derive(Debug, Clone, Serialize)]
pub struct IcReport {
    /// I(X ; full transcript).
    pub external: f64,
    /// Per player: I(everyone else's rows ; player view | own row).
    pub player_terms: Vec<f64>,
    pub total: f64,
}

/// Switched information cost, split into its defining terms.
#[derive(Debug, Clone, Serialize)]
pub struct SicReport {
    /// Per player: I(own row ; player view | mode, pointer).
    pub input_terms: Vec<f64>,
    /// Per player: I(mode ; player view | own row, pointer).
    pub mode_terms: Vec<f64>,
    pub total: f64,
}

/// Flat cost summary for one (protocol, distribution) pair, serializable
/// to JSON and to a CSV row.
#[derive(Debug, Clone, Serialize)]
pub struct CostSummary {
    pub protocol: String,
    pub dist: String,
    pub n: usize,
    pub k: usize,
    pub cc: u64,
    #[serde(serialize_with = "crate::report::serialize_rational")]
    pub error: Rational,
    pub ic: f64,
    pub sic: f64,
    pub external: f64,
    pub ic_player_terms: Vec<f64>,
    pub sic_input_terms: Vec<f64>,
    pub sic_mode_terms: Vec<f64>,
}

impl CostSummary {
    pub fn csv_header(k: usize) -> String {
        let mut cols = vec![
            "protocol".to_string(),
            "dist".to_string(),
            "n".to_string(),
            "k".to_string(),
            "cc".to_string(),
            "error".to_string(),
            "ic".to_string(),
            "sic".to_string(),
            "external".to_string(),
        ];
        for i in 1..=k {
            cols.push(format!("ic_player{i}"));
        }
        for i in 1..=k {
            cols.push(format!("sic_input{i}"));
        }
        for i in 1..=k {
            cols.push(format!("sic_mode{i}"));
        }
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut cols = vec![
            self.protocol.clone(),
            self.dist.clone(),
            self.n.to_string(),
            self.k.to_string(),
            self.cc.to_string(),
            crate::report::fmt_rational(&self.error),
            crate::report::fmt_float(self.ic),
            crate::report::fmt_float(self.sic),
            crate::report::fmt_float(self.external),
        ];
        cols.extend(self.ic_player_terms.iter().map(|t| crate::report::fmt_float(*t)));
        cols.extend(self.sic_input_terms.iter().map(|t| crate::report::fmt_float(*t)));
        cols.extend(self.sic_mode_terms.iter().map(|t| crate::report::fmt_float(*t)));
        cols.join(",")
    }
}

/// Evaluates all cost functionals of a protocol against a switched
/// distribution and a reference truth function.
pub fn cost_summary(
    eta: &SwitchedDistribution,
    protocol: &Protocol,
    truth: impl Fn(&InputMatrix) -> crate::model::Output,
    dist_name: &str,
    budget: u64,
) -> Result<CostSummary, ModelError> {
    let ic = internal_ic(&eta.input_marginal(), protocol, budget)?;
    let sic = switched_ic(eta, protocol, budget)?;
    Ok(CostSummary {
        protocol: protocol.name().to_string(),
        dist: dist_name.to_string(),
        n: protocol.n(),
        k: protocol.k(),
        cc: protocol.communication_cost(budget)?,
        error: protocol.error_probability(truth, budget)?,
        ic: ic.total,
        sic: sic.total,
        external: ic.external,
        ic_player_terms: ic.player_terms,
        sic_input_terms: sic.input_terms,
        sic_mode_terms: sic.mode_terms,
    })
}

/// Exact joint law of (input, transcript) when the input is drawn from
/// `dist` and the protocol runs on it.
pub fn input_transcript_joint(
    dist: &Pmf<InputMatrix>,
    protocol: &Protocol,
    budget: u64,
) -> Result<Pmf<(InputMatrix, Transcript)>, ModelError> {
    let mut entries = Vec::new();
    for (x, px) in dist.iter() {
        let transcripts = protocol.transcript_distribution(x, budget)?;
        for (t, pt) in transcripts.iter() {
            entries.push(((x.clone(), t.clone()), px * pt));
        }
    }
    Ok(Pmf::new(entries)?)
}

/// Exact joint law of (switched sample, transcript). Transcript laws are
/// computed once per distinct input matrix.
pub fn switched_transcript_joint(
    eta: &SwitchedDistribution,
    protocol: &Protocol,
    budget: u64,
) -> Result<Pmf<(SwitchedSample, Transcript)>, ModelError> {
    let mut cache: std::collections::BTreeMap<InputMatrix, Pmf<Transcript>> =
        std::collections::BTreeMap::new();
    let mut entries = Vec::new();
    for (s, ps) in eta.joint().iter() {
        if !cache.contains_key(&s.x) {
            cache.insert(s.x.clone(), protocol.transcript_distribution(&s.x, budget)?);
        }
        for (t, pt) in cache[&s.x].iter() {
            entries.push(((s.clone(), t.clone()), ps * pt));
        }
    }
    Ok(Pmf::new(entries)?)
}

/// Internal information cost of a protocol with respect to an input
/// distribution, from the exact (input, transcript) joint.
pub fn internal_ic(
    dist: &Pmf<InputMatrix>,
    protocol: &Protocol,
    budget: u64,
) -> Result<IcReport, ModelError> {
    let joint = input_transcript_joint(dist, protocol, budget)?;
    let external = conditional_mutual_information_by(
        &joint,
        |(x, _)| x.clone(),
        |(_, t)| t.clone(),
        |_| (),
    );
    let k = protocol.k();
    let player_terms: Vec<f64> = (0..k)
        .map(|i| {
            conditional_mutual_information_by(
                &joint,
                |(x, _): &(InputMatrix, Transcript)| x.without_row(i),
                |(_, t): &(InputMatrix, Transcript)| t.view(i),
                |(x, _): &(InputMatrix, Transcript)| x.row(i).to_vec(),
            )
        })
        .collect();
    let total = external + player_terms.iter().sum::<f64>();
    Ok(IcReport {
        external,
        player_terms,
        total,
    })
}

/// Switched information cost of a protocol with respect to a switched
/// distribution, from the exact (sample, transcript) joint.
pub fn switched_ic(
    eta: &SwitchedDistribution,
    protocol: &Protocol,
    budget: u64,
) -> Result<SicReport, ModelError> {
    let joint = switched_transcript_joint(eta, protocol, budget)?;
    let k = protocol.k();
    let mut input_terms = Vec::with_capacity(k);
    let mut mode_terms = Vec::with_capacity(k);
    for i in 0..k {
        input_terms.push(conditional_mutual_information_by(
            &joint,
            |(s, _): &(SwitchedSample, Transcript)| s.x.row(i).to_vec(),
            |(_, t): &(SwitchedSample, Transcript)| t.view(i),
            |(s, _): &(SwitchedSample, Transcript)| (s.m.clone(), s.z.clone()),
        ));
        mode_terms.push(conditional_mutual_information_by(
            &joint,
            |(s, _): &(SwitchedSample, Transcript)| s.m.clone(),
            |(_, t): &(SwitchedSample, Transcript)| t.view(i),
            |(s, _): &(SwitchedSample, Transcript)| (s.x.row(i).to_vec(), s.z.clone()),
        ));
    }
    let total = input_terms.iter().sum::<f64>() + mode_terms.iter().sum::<f64>();
    Ok(SicReport {
        input_terms,
        mode_terms,
        total,
    })
}

/// Signed margin of `CC ≥ IC/2`: returns CC − IC/2.
pub fn check_cc_ic(
    dist: &Pmf<InputMatrix>,
    protocol: &Protocol,
    budget: u64,
) -> Result<f64, ModelError> {
    let cc = protocol.communication_cost(budget)? as f64;
    let ic = internal_ic(dist, protocol, budget)?.total;
    Ok(cc - ic / 2.0)
}

/// Per-player margins of the embedding lemma: each of the embedded
/// protocol's two per-player information terms is at most 1/n times the
/// base protocol's corresponding term.
#[derive(Debug, Clone, Serialize)]
pub struct DirectSumCheck {
    /// Per player: ((1/n)·base mode term − embedded mode term,
    ///              (1/n)·base input term − embedded input term).
    pub margins: Vec<(f64, f64)>,
    pub base_sic: SicReport,
    pub embedded_sic: SicReport,
    /// Worst-case error of the embedded protocol, exact.
    #[serde(serialize_with = "crate::report::serialize_rational")]
    pub embedded_error: Rational,
}

/// Builds the embedded one-bit protocol from `base` and evaluates both
/// per-player inequalities of the embedding lemma under the hard
/// distributions.
pub fn check_direct_sum_lemma(base: &Protocol, budget: u64) -> Result<DirectSumCheck, CostError> {
    let (n, k) = (base.n(), base.k());
    let xi = crate::distributions::hard_one_bit(k)?;
    let eta = xi.power(n)?;
    let embedded = direct_sum_protocol(&EmbeddingConfig::new(base)?)?;
    let base_sic = switched_ic(&eta, base, budget)?;
    let embedded_sic = switched_ic(&xi, &embedded, budget)?;
    let margins = (0..k)
        .map(|i| {
            (
                base_sic.mode_terms[i] / n as f64 - embedded_sic.mode_terms[i],
                base_sic.input_terms[i] / n as f64 - embedded_sic.input_terms[i],
            )
        })
        .collect();
    let embedded_error =
        embedded.error_probability(crate::protolib::and_output, budget)?;
    Ok(DirectSumCheck {
        margins,
        base_sic,
        embedded_sic,
        embedded_error,
    })
}

/// Slack of the explicit switched-vs-internal inequality
/// `SIC ≤ IC + H(M, Z) + k·H(Z)`: returns RHS − LHS.
pub fn check_sic_vs_ic(
    eta: &SwitchedDistribution,
    protocol: &Protocol,
    budget: u64,
) -> Result<f64, ModelError> {
    let sic = switched_ic(eta, protocol, budget)?.total;
    let ic = internal_ic(&eta.input_marginal(), protocol, budget)?.total;
    let h_mz = eta
        .joint()
        .map(|s| (s.m.clone(), s.z.clone()))
        .entropy();
    let h_z = eta.joint().map(|s| s.z.clone()).entropy();
    Ok(ic + h_mz + protocol.k() as f64 * h_z - sic)
}
