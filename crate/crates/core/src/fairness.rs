//! Formation and backfire predicates, and the markets that exercise them.

use alloc::vec;
use alloc::vec::Vec;

use crate::equilibrium::{intervention_threshold, solve_baseline, solve_intervention, PotentialValue};
use crate::error::{Error, Result};
use crate::model::{BuyerPanel, CostStructure, GroupSet, LearningCurve, MarketConfig, TargetVector};

/// Exhaustive subset maximization is limited to this many groups.
pub const SUBSET_CAP: usize = 12;

/// Default relative margin by which the backfire construction overshoots.
pub const BACKFIRE_MARGIN: f64 = 0.01;

/// Which scenarios form, and whether the intervention backfires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormationReport {
    pub baseline_formed_groups: Vec<usize>,
    pub baseline_fully_formed: bool,
    pub intervention_formed: bool,
    /// Baseline produces something, the intervention produces nothing.
    pub backfired: bool,
}

pub fn check_backfire(config: &MarketConfig, target: &TargetVector) -> Result<FormationReport> {
    let base = solve_baseline(config)?;
    let fair = solve_intervention(config, target)?;
    let backfired = base.formed() && !fair.formed();
    Ok(FormationReport {
        baseline_fully_formed: base.fully_formed(),
        baseline_formed_groups: base.formed_groups,
        intervention_formed: fair.production.formed,
        backfired,
    })
}

/// Largest intervention threshold over every nonempty group subset.
pub fn ceiling_threshold(rho: &[f64], target: &TargetVector, curve: &LearningCurve) -> Result<f64> {
    let groups = rho.len();
    if target.groups() != groups {
        return Err(Error::DimensionMismatch { what: "target", expected: groups, found: target.groups() });
    }
    if groups > SUBSET_CAP {
        return Err(Error::TooManyGroups { groups, cap: SUBSET_CAP });
    }
    let mut best = 0.0f64;
    let mut subset = Vec::with_capacity(groups);
    for mask in 1u32..(1 << groups) {
        subset.clear();
        subset.extend((0..groups).filter(|g| mask & (1 << g) != 0));
        best = best.max(intervention_threshold(rho, target.gamma(), &subset, curve));
    }
    Ok(best)
}

/// A market in which `target` backfires.
///
/// The highest-value group `h` gets cost `min(1, tau_h)` so it forms at
/// baseline; the other heaviest-weighted group `h'` gets
/// `(1 + margin) * ceil_tau / gamma_h'`, which alone pushes `kappa . gamma`
/// above every subset threshold. Remaining groups cost 1.
pub fn construct_backfire_market(
    target: &TargetVector,
    buyers: &BuyerPanel,
    curve: &LearningCurve,
    sellers: usize,
    margin: f64,
) -> Result<MarketConfig> {
    let groups = buyers.groups();
    if target.groups() != groups {
        return Err(Error::DimensionMismatch { what: "target", expected: groups, found: target.groups() });
    }
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(Error::InvalidValue { what: "backfire margin", index: 0, value: margin });
    }
    let rho = PotentialValue::from_buyers(buyers).rho;
    let h = (0..groups)
        .max_by(|&a, &b| rho[a].total_cmp(&rho[b]).then(b.cmp(&a)))
        .filter(|&h| rho[h] > 0.0)
        .ok_or(Error::DegenerateTarget("buyers give every group zero potential value"))?;
    let other = (0..groups)
        .filter(|&g| g != h && target.get(g) > 0.0)
        .max_by(|&a, &b| target.get(a).total_cmp(&target.get(b)).then(b.cmp(&a)))
        .ok_or(Error::DegenerateTarget("needs a second group with positive weight"))?;
    let ceil = ceiling_threshold(&rho, target, curve)?;

    let mut kappa = vec![1.0; groups];
    kappa[h] = (curve.curve_constant() * rho[h]).min(1.0);
    kappa[other] = (1.0 + margin) * ceil / target.get(other);
    MarketConfig::new(
        GroupSet::numbered(groups)?,
        *curve,
        sellers,
        CostStructure::new(kappa)?,
        buyers.clone(),
    )
}

/// `true` unless the market fully forms at baseline and the uniform target fails.
pub fn check_uniform_safety(config: &MarketConfig) -> Result<bool> {
    let report = check_backfire(config, &TargetVector::uniform(config.group_count()))?;
    Ok(!report.baseline_fully_formed || report.intervention_formed)
}

/// One buyer valuing every group at `c_mu`, every group costing `c_mu * c`.
///
/// The uniform target forms exactly at its threshold; any other target with
/// full support falls short of it.
pub fn construct_verge_market(
    curve: &LearningCurve,
    sellers: usize,
    groups: usize,
    c_mu: f64,
) -> Result<MarketConfig> {
    if !(c_mu > 0.0 && c_mu.is_finite()) {
        return Err(Error::InvalidValue { what: "buyer value", index: 0, value: c_mu });
    }
    let kappa = vec![c_mu * curve.curve_constant(); groups];
    MarketConfig::new(
        GroupSet::numbered(groups)?,
        *curve,
        sellers,
        CostStructure::new(kappa)?,
        BuyerPanel::new(groups, &[vec![c_mu; groups]])?,
    )
}

fn check_monetized(potential: &PotentialValue, monetized: &[usize]) -> Result<()> {
    if monetized.is_empty() {
        return Err(Error::EmptyMonetizedSet);
    }
    for &g in monetized {
        if g >= potential.groups() {
            return Err(Error::IndexOutOfRange { what: "group", index: g, len: potential.groups() });
        }
        if potential.rho[g] <= 0.0 {
            return Err(Error::ZeroPotential { group: g });
        }
    }
    Ok(())
}

/// Target maximizing `tau_H`: `gamma_g` proportional to `rho_g^(1/(beta+1))` on `H`.
pub fn optimal_target(potential: &PotentialValue, monetized: &[usize], beta: f64) -> Result<TargetVector> {
    check_monetized(potential, monetized)?;
    let mut weights = vec![0.0; potential.groups()];
    for &g in monetized {
        weights[g] = libm::pow(potential.rho[g], 1.0 / (beta + 1.0));
    }
    TargetVector::normalized(&weights)
}

/// `tau_H` at the optimal target.
pub fn max_threshold(potential: &PotentialValue, monetized: &[usize], curve: &LearningCurve) -> Result<f64> {
    check_monetized(potential, monetized)?;
    let b = curve.beta();
    let revenue: f64 = monetized.iter().map(|&g| potential.rho[g]).sum();
    let root_sum: f64 = monetized.iter().map(|&g| libm::pow(potential.rho[g], 1.0 / (b + 1.0))).sum();
    Ok(libm::pow(revenue / root_sum, (b + 1.0) / b) * curve.curve_constant())
}

/// Inputs and verdict of the cost-slack sufficient condition for formation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficientConditionReport {
    /// Smallest `eta` with `kappa_g <= eta * tau_g` for every group.
    pub eta: f64,
    /// `1 / min gamma` (infinite when a weight is zero).
    pub a: f64,
    /// `1 / max gamma`.
    pub b: f64,
    /// Largest ratio between two groups' potential values.
    pub r: f64,
    /// `(b/a)^(beta+1) / (r |G|)`.
    pub bound: f64,
    pub satisfied: bool,
}

/// `None` when the condition does not apply: the baseline is not fully
/// formed or some group has zero potential value.
pub fn check_sufficient_condition(
    config: &MarketConfig,
    target: &TargetVector,
) -> Result<Option<SufficientConditionReport>> {
    let groups = config.group_count();
    if target.groups() != groups {
        return Err(Error::DimensionMismatch { what: "target", expected: groups, found: target.groups() });
    }
    let base = solve_baseline(config)?;
    let rho = &base.potential.rho;
    if !base.fully_formed() || rho.iter().any(|&r| r <= 0.0) {
        return Ok(None);
    }
    let eta = (0..groups).map(|g| config.costs.get(g) / base.thresholds[g]).fold(0.0, f64::max);
    let gmin = target.gamma().iter().copied().fold(f64::INFINITY, f64::min);
    let gmax = target.gamma().iter().copied().fold(0.0, f64::max);
    let a = 1.0 / gmin;
    let b = 1.0 / gmax;
    let rmax = rho.iter().copied().fold(0.0, f64::max);
    let rmin = rho.iter().copied().fold(f64::INFINITY, f64::min);
    let r = rmax / rmin;
    let bound = libm::pow(b / a, config.curve.beta() + 1.0) / (r * groups as f64);
    Ok(Some(SufficientConditionReport { eta, a, b, r, bound, satisfied: eta < bound }))
}
