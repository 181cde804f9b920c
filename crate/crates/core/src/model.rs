//! Domain types shared by every module, plus the power-law learning curve.
//!
//! Sample counts are continuous reals throughout; nothing is ever rounded to
//! whole samples.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Relative tolerance used for threshold comparisons.
pub const REL_TOL: f64 = 1e-9;

/// Tolerance on the sum of a target vector.
pub const TARGET_SUM_TOL: f64 = 1e-12;

/// `a <= b` up to [`REL_TOL`] relative slack.
pub fn approx_le(a: f64, b: f64) -> bool {
    a <= b + REL_TOL * a.abs().max(b.abs())
}

/// Accuracy as a function of training-set size: `(Z - alpha * n^-beta)_+`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearningCurve {
    z: f64,
    alpha: f64,
    beta: f64,
}

impl LearningCurve {
    pub fn new(z: f64, alpha: f64, beta: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if ok(z) && ok(alpha) && ok(beta) {
            Ok(Self { z, alpha, beta })
        } else {
            Err(Error::InvalidCurve { z, alpha, beta })
        }
    }

    /// `Z = alpha = beta = 1`.
    pub fn unit() -> Self {
        Self { z: 1.0, alpha: 1.0, beta: 1.0 }
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Accuracy reached with `n` samples. Zero samples give zero accuracy.
    pub fn accuracy(&self, n: f64) -> f64 {
        if n <= 0.0 {
            return 0.0;
        }
        (self.z - self.alpha * libm::pow(n, -self.beta)).max(0.0)
    }

    /// Derivative of [`accuracy`](Self::accuracy); zero at and below the learning ante.
    pub fn marginal_accuracy(&self, n: f64) -> f64 {
        if n <= self.learning_ante() {
            return 0.0;
        }
        self.alpha * self.beta * libm::pow(n, -self.beta - 1.0)
    }

    /// Sample count below which accuracy is zero: `(alpha / Z)^(1/beta)`.
    pub fn learning_ante(&self) -> f64 {
        libm::pow(self.alpha / self.z, 1.0 / self.beta)
    }

    /// The constant `c` such that a group with potential value `rho` is produced
    /// at baseline iff its marginal cost is at most `rho * c`.
    pub fn curve_constant(&self) -> f64 {
        let b = self.beta;
        let e = (b + 1.0) / b;
        let inner = libm::pow(b, -b / (b + 1.0)) + libm::pow(b, 1.0 / (b + 1.0));
        libm::pow(self.z, e) / (libm::pow(self.alpha, 1.0 / b) * libm::pow(inner, e))
    }
}

/// `beta * (beta^(-beta/(beta+1)) + beta^(1/(beta+1)))^((beta+1)/beta)`; exceeds 1 for every `beta > 0`.
pub fn beta_expression(beta: f64) -> f64 {
    let inner = libm::pow(beta, -beta / (beta + 1.0)) + libm::pow(beta, 1.0 / (beta + 1.0));
    beta * libm::pow(inner, (beta + 1.0) / beta)
}

/// Ordered, distinct group labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSet {
    labels: Vec<String>,
}

impl GroupSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidGroups("no groups".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidGroups(alloc::format!("duplicate label `{l}`")));
            }
        }
        Ok(Self { labels })
    }

    /// Labels `g1`, `g2`, ... for `count` groups.
    pub fn numbered(count: usize) -> Result<Self> {
        Self::new((1..=count).map(|i| alloc::format!("g{i}")).collect())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn count(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Per-group sample counts.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Vec<f64>,
}

impl Dataset {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        check_all(&samples, "sample count", |v| v >= 0.0)?;
        Ok(Self { samples })
    }

    pub fn zeros(groups: usize) -> Self {
        Self { samples: alloc::vec![0.0; groups] }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn get(&self, g: usize) -> f64 {
        self.samples[g]
    }

    pub fn groups(&self) -> usize {
        self.samples.len()
    }

    pub fn total(&self) -> f64 {
        self.samples.iter().sum()
    }

    /// Overwrite one coordinate; negative values clamp to zero.
    pub fn set(&mut self, g: usize, value: f64) {
        self.samples[g] = value.max(0.0);
    }
}

/// Per-group marginal production costs, shared by every seller.
#[derive(Debug, Clone, PartialEq)]
pub struct CostStructure {
    kappa: Vec<f64>,
}

impl CostStructure {
    pub fn new(kappa: Vec<f64>) -> Result<Self> {
        check_all(&kappa, "marginal cost", |v| v > 0.0)?;
        Ok(Self { kappa })
    }

    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    pub fn get(&self, g: usize) -> f64 {
        self.kappa[g]
    }

    pub fn groups(&self) -> usize {
        self.kappa.len()
    }

    /// Cost of producing `x`.
    pub fn cost_of(&self, x: &[f64]) -> f64 {
        self.kappa.iter().zip(x).map(|(k, v)| k * v).sum()
    }
}

/// `N x |G|` matrix of buyers' values of accuracy, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct BuyerPanel {
    groups: usize,
    values: Vec<f64>,
}

impl BuyerPanel {
    pub fn new(groups: usize, rows: &[Vec<f64>]) -> Result<Self> {
        let mut values = Vec::with_capacity(rows.len() * groups);
        for row in rows {
            if row.len() != groups {
                return Err(Error::DimensionMismatch {
                    what: "buyer row",
                    expected: groups,
                    found: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::from_flat(groups, values)
    }

    /// Build from a row-major buffer whose length is a multiple of `groups`.
    pub fn from_flat(groups: usize, values: Vec<f64>) -> Result<Self> {
        if groups == 0 || !values.len().is_multiple_of(groups) {
            return Err(Error::DimensionMismatch {
                what: "buyer values",
                expected: groups,
                found: values.len(),
            });
        }
        check_all(&values, "buyer value", |v| v >= 0.0)?;
        Ok(Self { groups, values })
    }

    pub fn empty(groups: usize) -> Self {
        Self { groups, values: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.groups
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn groups(&self) -> usize {
        self.groups
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.groups..(i + 1) * self.groups]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.groups)
    }

    pub fn value(&self, i: usize, g: usize) -> f64 {
        self.values[i * self.groups + g]
    }

    pub fn column(&self, g: usize) -> Vec<f64> {
        self.rows().map(|r| r[g]).collect()
    }

    /// Multiply every value by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::from_flat(self.groups, self.values.iter().map(|v| v * factor).collect())
    }

    /// Replace one buyer's value for one group.
    pub fn with_value(&self, i: usize, g: usize, value: f64) -> Result<Self> {
        let mut values = self.values.clone();
        values[i * self.groups + g] = value;
        Self::from_flat(self.groups, values)
    }
}

/// One complete quasi-symmetric market instance.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketConfig {
    pub groups: GroupSet,
    pub curve: LearningCurve,
    pub sellers: usize,
    pub costs: CostStructure,
    pub buyers: BuyerPanel,
}

impl MarketConfig {
    pub fn new(
        groups: GroupSet,
        curve: LearningCurve,
        sellers: usize,
        costs: CostStructure,
        buyers: BuyerPanel,
    ) -> Result<Self> {
        if sellers == 0 {
            return Err(Error::NoSellers);
        }
        let g = groups.count();
        if costs.groups() != g {
            return Err(Error::DimensionMismatch { what: "costs", expected: g, found: costs.groups() });
        }
        if buyers.groups() != g {
            return Err(Error::DimensionMismatch {
                what: "buyer values",
                expected: g,
                found: buyers.groups(),
            });
        }
        Ok(Self { groups, curve, sellers, costs, buyers })
    }

    pub fn group_count(&self) -> usize {
        self.groups.count()
    }

    pub fn with_costs(&self, costs: CostStructure) -> Result<Self> {
        Self::new(self.groups.clone(), self.curve, self.sellers, costs, self.buyers.clone())
    }

    pub fn with_buyers(&self, buyers: BuyerPanel) -> Result<Self> {
        Self::new(self.groups.clone(), self.curve, self.sellers, self.costs.clone(), buyers)
    }
}

/// Demographic-balance target on the group simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetVector {
    gamma: Vec<f64>,
}

impl TargetVector {
    pub fn new(gamma: Vec<f64>) -> Result<Self> {
        check_all(&gamma, "target weight", |v| (0.0..=1.0).contains(&v))?;
        let sum: f64 = gamma.iter().sum();
        if gamma.is_empty() || (sum - 1.0).abs() > TARGET_SUM_TOL {
            return Err(Error::TargetNotNormalized { sum });
        }
        Ok(Self { gamma })
    }

    /// Rescale nonnegative weights onto the simplex.
    pub fn normalized(weights: &[f64]) -> Result<Self> {
        check_all(weights, "target weight", |v| v >= 0.0)?;
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::TargetNotNormalized { sum });
        }
        Self::new(weights.iter().map(|w| w / sum).collect())
    }

    /// The uniform intervention `u_g = 1/|G|`.
    pub fn uniform(groups: usize) -> Self {
        Self { gamma: alloc::vec![1.0 / groups as f64; groups] }
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn get(&self, g: usize) -> f64 {
        self.gamma[g]
    }

    pub fn groups(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_uniform(&self) -> bool {
        let u = 1.0 / self.gamma.len() as f64;
        self.gamma.iter().all(|&g| (g - u).abs() <= TARGET_SUM_TOL)
    }
}

fn check_all(values: &[f64], what: &'static str, ok: impl Fn(f64) -> bool) -> Result<()> {
    match values.iter().position(|&v| !v.is_finite() || !ok(v)) {
        Some(index) => Err(Error::InvalidValue { what, index, value: values[index] }),
        None => Ok(()),
    }
}
