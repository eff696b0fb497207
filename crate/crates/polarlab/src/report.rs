//! Report carriers for norm and integral estimates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// What kind of claim an estimate makes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// The value is achieved by the stored witness; a rigorous lower bound.
    CertifiedLowerBound,
    /// A Monte Carlo or search statistic with the stated confidence interval.
    StatisticalMean,
    /// A closed form.
    Exact,
}

/// Point(s) achieving a reported value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// A single point of C^n.
    Point(Vec<Complex64>),
    /// One vector per slot of an m-linear form.
    Tuple(Vec<Vec<Complex64>>),
}

/// A numeric estimate with its provenance: direction of the claim, witness,
/// sample/restart count, confidence half-width (0 when exact), seed, and a
/// free-form method tag.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateReport {
    pub value: f64,
    pub direction: Direction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub samples: u64,
    pub ci_halfwidth: f64,
    pub seed: u64,
    pub method: String,
}

impl EstimateReport {
    pub fn exact(value: f64, method: impl Into<String>) -> Self {
        Self {
            value,
            direction: Direction::Exact,
            witness: None,
            samples: 0,
            ci_halfwidth: 0.0,
            seed: 0,
            method: method.into(),
        }
    }

    /// Lower edge of the 99% confidence interval (the value itself for
    /// certified or exact reports).
    pub fn lower_edge(&self) -> f64 {
        self.value - self.ci_halfwidth
    }

    /// Upper edge of the 99% confidence interval.
    pub fn upper_edge(&self) -> f64 {
        self.value + self.ci_halfwidth
    }
}

/// Two-sided information about one norm constant: a lower statistic, a
/// closed-form upper bound, and the per-step values of the certificate chain
/// when one was walked.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub m: usize,
    pub n: usize,
    pub p: crate::lp::Exponent,
    pub lower: EstimateReport,
    pub upper: f64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub chain: Vec<ChainLink>,
    /// False when lower.value > upper for the same constant (sanity gate).
    pub consistent: bool,
}

/// One inequality of the upper-bound chain, with both sides evaluated.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainLink {
    pub k: usize,
    pub description: String,
    pub lhs: f64,
    pub factor: f64,
    pub rhs: f64,
    pub holds: bool,
}
