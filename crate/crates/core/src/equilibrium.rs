//! Closed-form equilibria for the baseline and intervention scenarios.
//!
//! Groups decouple at baseline: each group is produced iff its marginal cost
//! is at most `rho_g * c`, and then every seller supplies an equal share of
//! `(rho_g * alpha * beta / kappa_g)^(1/(beta+1))`. Under a target vector the
//! sellers only choose a total; production is coupled through `kappa . gamma`
//! and through the set of groups whose share clears the learning ante.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mechanism::{all_utilities, rival_coalitions, PriceVector, SellerProfile, Utilities};
use crate::model::{
    approx_le, BuyerPanel, CostStructure, Dataset, LearningCurve, MarketConfig, TargetVector,
};
use crate::oracle::find_root_bisect;

/// Revenue-maximizing reserve for one group and the potential value it attains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservePrice {
    /// `None` when no buyer has a positive value.
    pub price: Option<f64>,
    pub rho: f64,
}

/// Lowest price maximizing `p * |{i : mu_i >= p}|` over the distinct positive values.
pub fn optimal_reserve(values: &[f64]) -> ReservePrice {
    let mut sorted: Vec<f64> = values.iter().copied().filter(|&v| v > 0.0).collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut best = ReservePrice { price: None, rho: 0.0 };
    for (i, &v) in sorted.iter().enumerate() {
        if sorted.get(i + 1) == Some(&v) {
            continue;
        }
        let rho = v * (i + 1) as f64;
        // descending scan: `>=` keeps the lowest maximizer
        if rho >= best.rho {
            best = ReservePrice { price: Some(v), rho };
        }
    }
    best
}

/// Per-group potential values at the marketplace's optimal reserves.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialValue {
    pub rho: Vec<f64>,
    pub chosen_price: Vec<Option<f64>>,
}

impl PotentialValue {
    pub fn from_buyers(buyers: &BuyerPanel) -> Self {
        let (rho, chosen_price) = (0..buyers.groups())
            .map(|g| {
                let r = optimal_reserve(&buyers.column(g));
                (r.rho, r.price)
            })
            .unzip();
        Self { rho, chosen_price }
    }

    /// Potential values given directly, e.g. for threshold algebra.
    pub fn from_rho(rho: Vec<f64>) -> Self {
        let chosen_price = vec![None; rho.len()];
        Self { rho, chosen_price }
    }

    pub fn groups(&self) -> usize {
        self.rho.len()
    }

    /// Reserve prices; groups without demand get an unreachable price.
    pub fn price_vector(&self) -> PriceVector {
        PriceVector::new(self.chosen_price.iter().map(|p| p.unwrap_or(f64::INFINITY)).collect())
            .expect("optimal reserves are positive")
    }
}

/// Group-level participation threshold `tau_g = rho_g * c`.
pub fn baseline_threshold(rho_g: f64, curve: &LearningCurve) -> f64 {
    rho_g * curve.curve_constant()
}

/// Equilibrium production of one group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Production {
    pub per_seller: f64,
    pub aggregate: f64,
}

/// Closed-form baseline production of a group that forms.
pub fn baseline_production(
    rho_g: f64,
    kappa_g: f64,
    curve: &LearningCurve,
    sellers: usize,
) -> Result<Production> {
    if sellers == 0 {
        return Err(Error::NoSellers);
    }
    let tau = baseline_threshold(rho_g, curve);
    if rho_g <= 0.0 || !approx_le(kappa_g, tau) {
        return Err(Error::FormationViolation { kappa: kappa_g, tau });
    }
    let aggregate = libm::pow(rho_g * curve.alpha() * curve.beta() / kappa_g, 1.0 / (curve.beta() + 1.0));
    Ok(Production { per_seller: aggregate / sellers as f64, aggregate })
}

/// Baseline equilibrium of a whole market.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineOutcome {
    pub potential: PotentialValue,
    pub thresholds: Vec<f64>,
    pub kappa: Vec<f64>,
    pub produced: Dataset,
    pub per_seller: Dataset,
    pub formed_groups: Vec<usize>,
    pub beta: f64,
    pub utilities: Utilities,
}

impl BaselineOutcome {
    pub fn formed(&self) -> bool {
        !self.formed_groups.is_empty()
    }

    pub fn fully_formed(&self) -> bool {
        self.formed_groups.len() == self.thresholds.len()
    }
}

pub fn solve_baseline(config: &MarketConfig) -> Result<BaselineOutcome> {
    let potential = PotentialValue::from_buyers(&config.buyers);
    let groups = config.group_count();
    let mut produced = Dataset::zeros(groups);
    let mut per_seller = Dataset::zeros(groups);
    let mut thresholds = Vec::with_capacity(groups);
    let mut formed_groups = Vec::new();
    for g in 0..groups {
        let rho = potential.rho[g];
        let tau = baseline_threshold(rho, &config.curve);
        thresholds.push(tau);
        if let Ok(p) = baseline_production(rho, config.costs.get(g), &config.curve, config.sellers) {
            produced.set(g, p.aggregate);
            per_seller.set(g, p.per_seller);
            formed_groups.push(g);
        }
    }
    let utilities = if formed_groups.is_empty() {
        Utilities::zero(config.sellers, config.buyers.len())
    } else {
        let profile = SellerProfile::symmetric(per_seller.clone(), config.sellers)?;
        all_utilities(config, &potential.price_vector(), &profile)?
    };
    Ok(BaselineOutcome {
        potential,
        thresholds,
        kappa: config.costs.kappa().to_vec(),
        produced,
        per_seller,
        formed_groups,
        beta: config.curve.beta(),
        utilities,
    })
}

/// Aggregate-dataset demographics from the `(rho/kappa)^(1/(beta+1))` weights.
pub fn baseline_demographics(outcome: &BaselineOutcome) -> Result<Vec<f64>> {
    if outcome.formed_groups.is_empty() {
        return Err(Error::UndefinedDemographics);
    }
    let e = 1.0 / (outcome.beta + 1.0);
    let mut weights = vec![0.0; outcome.thresholds.len()];
    for &g in &outcome.formed_groups {
        weights[g] = libm::pow(outcome.potential.rho[g] / outcome.kappa[g], e);
    }
    let total: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// Intervention participation threshold `tau_H(rho, gamma)`.
///
/// Groups with zero potential drop out of both sums. A monetized group with
/// positive potential and zero weight can never be served, so its threshold is 0.
pub fn intervention_threshold(
    rho: &[f64],
    gamma: &[f64],
    monetized: &[usize],
    curve: &LearningCurve,
) -> f64 {
    let b = curve.beta();
    let mut revenue = 0.0;
    let mut weighted = 0.0;
    for &g in monetized {
        if rho[g] <= 0.0 {
            continue;
        }
        if gamma[g] <= 0.0 {
            return 0.0;
        }
        revenue += rho[g];
        weighted += rho[g] * libm::pow(gamma[g], -b);
    }
    if revenue == 0.0 {
        return 0.0;
    }
    libm::pow(revenue, (b + 1.0) / b) / libm::pow(weighted, 1.0 / b) * curve.curve_constant()
}

/// Total production of a monetized set at the sellers' first-order condition.
fn total_for(rho: &[f64], gamma: &[f64], monetized: &[usize], unit_cost: f64, curve: &LearningCurve) -> f64 {
    let b = curve.beta();
    let weighted: f64 = monetized.iter().map(|&g| rho[g] * libm::pow(gamma[g], -b)).sum();
    libm::pow(curve.alpha() * b * weighted / unit_cost, 1.0 / (b + 1.0))
}

/// Intervention production before utilities are attached.
#[derive(Debug, Clone, PartialEq)]
pub struct InterventionProduction {
    /// Groups whose share clears the learning ante (positive potential only).
    pub monetized: Vec<usize>,
    pub total_samples: f64,
    pub per_seller_total: f64,
    /// `tau_H` of the selected monetized set (0 if none is consistent).
    pub threshold: f64,
    /// `kappa . gamma`.
    pub marginal_cost: f64,
    pub formed: bool,
    /// Groups with positive potential but zero target weight.
    pub excluded: Vec<usize>,
}

/// Resolve the monetized set and total production under a target vector.
///
/// Candidate sets are the gamma-descending prefixes of the groups with
/// positive potential and weight, tied weights entering together. A
/// candidate is consistent when its first-order total puts exactly its own
/// groups above the learning ante. Among consistent candidates the one with
/// the highest seller payoff is selected, ties going to the larger set; the
/// market forms iff `kappa . gamma <= tau_H` for that candidate.
pub fn intervention_production(
    potential: &PotentialValue,
    target: &TargetVector,
    costs: &CostStructure,
    curve: &LearningCurve,
    sellers: usize,
) -> Result<InterventionProduction> {
    let groups = potential.groups();
    for (what, found) in [("target", target.groups()), ("costs", costs.groups())] {
        if found != groups {
            return Err(Error::DimensionMismatch { what, expected: groups, found });
        }
    }
    if sellers == 0 {
        return Err(Error::NoSellers);
    }
    let rho = &potential.rho;
    let gamma = target.gamma();
    let unit_cost = costs.cost_of(gamma);
    if unit_cost <= 0.0 {
        return Err(Error::NonPositiveInterventionCost);
    }
    let ante = curve.learning_ante();
    let excluded: Vec<usize> = (0..groups).filter(|&g| rho[g] > 0.0 && gamma[g] == 0.0).collect();
    let mut relevant: Vec<usize> = (0..groups).filter(|&g| rho[g] > 0.0 && gamma[g] > 0.0).collect();
    relevant.sort_by(|&a, &b| gamma[b].total_cmp(&gamma[a]).then(a.cmp(&b)));

    // (payoff of the whole seller side, prefix length, total)
    let mut best: Option<(f64, usize, f64)> = None;
    let mut k = 0;
    while k < relevant.len() {
        let level = gamma[relevant[k]];
        while k < relevant.len() && gamma[relevant[k]] == level {
            k += 1;
        }
        let set = &relevant[..k];
        let total = total_for(rho, gamma, set, unit_cost, curve);
        let consistent = set.iter().all(|&g| gamma[g] * total > ante)
            && relevant[k..].iter().all(|&g| gamma[g] * total <= ante);
        if !consistent {
            continue;
        }
        let payoff: f64 = set.iter().map(|&g| rho[g] * curve.accuracy(gamma[g] * total)).sum::<f64>()
            - unit_cost * total;
        if best.is_none_or(|(p, _, _)| payoff >= p) {
            best = Some((payoff, k, total));
        }
    }

    let (monetized, threshold, total) = match best {
        Some((_, len, total)) => {
            let mut set = relevant[..len].to_vec();
            set.sort_unstable();
            let tau = intervention_threshold(rho, gamma, &set, curve);
            (set, tau, total)
        }
        None => (Vec::new(), 0.0, 0.0),
    };
    let formed = !monetized.is_empty() && approx_le(unit_cost, threshold);
    let total_samples = if formed { total } else { 0.0 };
    Ok(InterventionProduction {
        monetized,
        total_samples,
        per_seller_total: total_samples / sellers as f64,
        threshold,
        marginal_cost: unit_cost,
        formed,
        excluded,
    })
}

/// Intervention equilibrium of a whole market.
#[derive(Debug, Clone, PartialEq)]
pub struct InterventionOutcome {
    pub potential: PotentialValue,
    pub target: TargetVector,
    pub production: InterventionProduction,
    /// `gamma_g * n` for every group.
    pub produced: Dataset,
    pub per_seller: Dataset,
    pub utilities: Utilities,
}

impl InterventionOutcome {
    pub fn formed(&self) -> bool {
        self.production.formed
    }
}

pub fn solve_intervention(config: &MarketConfig, target: &TargetVector) -> Result<InterventionOutcome> {
    let potential = PotentialValue::from_buyers(&config.buyers);
    let production =
        intervention_production(&potential, target, &config.costs, &config.curve, config.sellers)?;
    let groups = config.group_count();
    let mut produced = Dataset::zeros(groups);
    let mut per_seller = Dataset::zeros(groups);
    for g in 0..groups {
        produced.set(g, target.get(g) * production.total_samples);
        per_seller.set(g, target.get(g) * production.per_seller_total);
    }
    let utilities = if production.formed {
        let profile = SellerProfile::symmetric(per_seller.clone(), config.sellers)?;
        all_utilities(config, &potential.price_vector(), &profile)?
    } else {
        Utilities::zero(config.sellers, config.buyers.len())
    };
    Ok(InterventionOutcome {
        potential,
        target: target.clone(),
        production,
        produced,
        per_seller,
        utilities,
    })
}

/// Numeric best response of one seller for one group when buyers' curves differ.
///
/// Solves `p * sum_i sum_T c_T alpha_i beta_i (x_T + x)^(-beta_i - 1) = kappa`
/// by bisection; the left side is strictly decreasing in `x`. The root is
/// kept only if producing it beats producing nothing.
pub fn general_best_response(
    rivals: &[f64],
    price: f64,
    curves: &[LearningCurve],
    kappa: f64,
) -> Result<f64> {
    if rivals.len() >= crate::mechanism::SHAPLEY_EXACT_CAP {
        return Err(Error::TooManySellers {
            sellers: rivals.len() + 1,
            cap: crate::mechanism::SHAPLEY_EXACT_CAP,
        });
    }
    if curves.is_empty() || price <= 0.0 || !price.is_finite() {
        return Err(Error::NoRoot);
    }
    let coalitions = rival_coalitions(rivals);
    let marginal = |x: f64| -> f64 {
        let mut s = 0.0;
        for c in curves {
            for &(w, agg) in &coalitions {
                s += w * c.alpha() * c.beta() * libm::pow(agg + x, -c.beta() - 1.0);
            }
        }
        price * s - kappa
    };
    let ante = curves.iter().map(|c| c.learning_ante()).fold(f64::INFINITY, f64::min);
    let mut lo = ante * 1e-6;
    while marginal(lo) < 0.0 {
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            return Err(Error::NoRoot);
        }
    }
    let mut hi = ante.max(1.0);
    while marginal(hi) > 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NoRoot);
        }
    }
    let x = find_root_bisect(marginal, lo, hi, 1e-12)?;
    let payoff = |x: f64| -> f64 {
        let mut s = 0.0;
        for c in curves {
            for &(w, agg) in &coalitions {
                s += w * (c.accuracy(agg + x) - c.accuracy(agg));
            }
        }
        price * s - kappa * x
    };
    Ok(if payoff(x) >= 0.0 { x } else { 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GroupSet;
    use alloc::vec::Vec;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    /// Exhaustive price search written independently of `optimal_reserve`.
    fn brute_reserve(values: &[f64]) -> (Option<f64>, f64) {
        let mut best = (None, 0.0);
        let mut candidates: Vec<f64> = values.iter().copied().filter(|&v| v > 0.0).collect();
        candidates.sort_by(f64::total_cmp);
        for &p in &candidates {
            let rho = p * values.iter().filter(|&&v| v >= p).count() as f64;
            if rho > best.1 {
                best = (Some(p), rho);
            }
        }
        best
    }

    fn two_group_market(per_group: [(usize, f64); 2], kappa: [f64; 2], m: usize) -> MarketConfig {
        let mut rows = Vec::new();
        for (g, &(count, value)) in per_group.iter().enumerate() {
            for _ in 0..count {
                let mut r = vec![0.0, 0.0];
                r[g] = value;
                rows.push(r);
            }
        }
        MarketConfig::new(
            GroupSet::numbered(2).unwrap(),
            LearningCurve::unit(),
            m,
            CostStructure::new(kappa.to_vec()).unwrap(),
            BuyerPanel::new(2, &rows).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn optimal_reserve_examples() {
        assert_eq!(optimal_reserve(&[1.0, 2.0, 3.0]), ReservePrice { price: Some(2.0), rho: 4.0 });
        assert_eq!(brute_reserve(&[1.0, 2.0, 3.0]), (Some(2.0), 4.0));
        assert_eq!(optimal_reserve(&[5.0, 5.0, 5.0]), ReservePrice { price: Some(5.0), rho: 15.0 });
        assert_eq!(optimal_reserve(&[]), ReservePrice { price: None, rho: 0.0 });
        assert_eq!(optimal_reserve(&[0.0, 0.0]).rho, 0.0);
        // 2 * 2 == 4 * 1: tie resolved toward the lower price
        assert_eq!(optimal_reserve(&[1.0, 1.0, 1.0, 1.0, 2.0]).price, Some(1.0));
    }

    #[test]
    fn baseline_threshold_examples() {
        assert_eq!(baseline_threshold(8.0, &LearningCurve::unit()), 2.0);
        assert_eq!(baseline_threshold(0.0, &LearningCurve::unit()), 0.0);
        assert_eq!(baseline_threshold(4.0, &LearningCurve::new(2.0, 1.0, 1.0).unwrap()), 4.0);
    }

    #[test]
    fn baseline_threshold_matches_payoff_sign_change() {
        // Single seller payoff at the first-order optimum changes sign at kappa = tau.
        let c = LearningCurve::unit();
        let payoff = |kappa: f64| {
            let x = libm::sqrt(8.0 / kappa);
            8.0 * c.accuracy(x) - kappa * x
        };
        assert!(payoff(2.0 - 1e-6) > 0.0);
        assert!(payoff(2.0 + 1e-6) < 0.0);
        assert!(payoff(2.0).abs() < 1e-12);
    }

    #[test]
    fn baseline_production_examples() {
        let unit = LearningCurve::unit();
        let p = baseline_production(8.0, 1.0, &unit, 2).unwrap();
        assert!(close(p.aggregate, libm::sqrt(8.0), 1e-15));
        assert!(close(p.per_seller, libm::sqrt(2.0), 1e-15));
        assert!(matches!(
            baseline_production(1.0, 1.0, &unit, 1),
            Err(Error::FormationViolation { .. })
        ));
        assert!(close(baseline_production(9.0, 1.0, &unit, 1).unwrap().aggregate, 3.0, 1e-15));
    }

    #[test]
    fn baseline_production_is_first_order_point() {
        // numeric maximizer of rho*G(x) - kappa*x by dense scan around the closed form
        let c = LearningCurve::new(2.0, 0.7, 1.6).unwrap();
        let (rho, kappa) = (13.0, 0.9);
        let x = baseline_production(rho, kappa, &c, 1).unwrap().aggregate;
        let f = |x: f64| rho * c.accuracy(x) - kappa * x;
        for k in 1..200 {
            let d = x * (1.0 + (k as f64 - 100.0) * 1e-3);
            assert!(f(d) <= f(x) + 1e-12);
        }
    }

    #[test]
    fn solve_baseline_examples() {
        let m = two_group_market([(9, 1.0), (4, 1.0)], [1.0, 1.0], 2);
        let out = solve_baseline(&m).unwrap();
        assert!(close(out.produced.get(0), 3.0, 1e-14));
        assert!(close(out.produced.get(1), 2.0, 1e-14));
        let d = baseline_demographics(&out).unwrap();
        assert!(close(d[0], 0.6, 1e-14) && close(d[1], 0.4, 1e-14));

        let empty = two_group_market([(0, 1.0), (0, 1.0)], [1.0, 1.0], 2);
        let out = solve_baseline(&empty).unwrap();
        assert!(!out.formed());
        assert_eq!(out.utilities.marketplace, 0.0);
        assert!(out.utilities.sellers.iter().all(|&v| v == 0.0));
        assert!(matches!(baseline_demographics(&out), Err(Error::UndefinedDemographics)));

        let rows = vec![vec![1.0, 1.0]; 8];
        let sym = MarketConfig::new(
            GroupSet::numbered(2).unwrap(),
            LearningCurve::unit(),
            2,
            CostStructure::new(vec![1.0, 1.0]).unwrap(),
            BuyerPanel::new(2, &rows).unwrap(),
        )
        .unwrap();
        let out = solve_baseline(&sym).unwrap();
        assert!(close(out.produced.get(0), libm::sqrt(8.0), 1e-14));
        assert!(close(out.utilities.marketplace, 16.0 * (1.0 - 1.0 / libm::sqrt(8.0)), 1e-13));
        assert_eq!(baseline_demographics(&out).unwrap(), vec![0.5, 0.5]);
    }

    #[test]
    fn single_formed_group_demographics() {
        let m = two_group_market([(9, 1.0), (4, 1.0)], [1.0, 4.0], 1);
        let out = solve_baseline(&m).unwrap();
        assert_eq!(out.formed_groups, vec![0]);
        assert_eq!(baseline_demographics(&out).unwrap(), vec![1.0, 0.0]);
    }

    #[test]
    fn intervention_examples() {
        let unit = LearningCurve::unit();
        let u = TargetVector::uniform(2);
        let ones = CostStructure::new(vec![1.0, 1.0]).unwrap();

        let p = intervention_production(&PotentialValue::from_rho(vec![8.0, 8.0]), &u, &ones, &unit, 2).unwrap();
        assert!(p.formed);
        assert!(close(p.total_samples, libm::sqrt(32.0), 1e-14));
        assert!(close(p.threshold, 2.0, 1e-14));
        assert_eq!(p.marginal_cost, 1.0);

        let p = intervention_production(&PotentialValue::from_rho(vec![9.0, 4.0]), &u, &ones, &unit, 2).unwrap();
        assert!(p.formed);
        assert!(close(p.total_samples, libm::sqrt(26.0), 1e-14));
        assert!(close(p.threshold, 1.625, 1e-14));
        assert_eq!(p.monetized, vec![0, 1]);

        let costly = CostStructure::new(vec![1.0, 4.0]).unwrap();
        let p = intervention_production(&PotentialValue::from_rho(vec![9.0, 4.0]), &u, &costly, &unit, 2).unwrap();
        assert_eq!(p.marginal_cost, 2.5);
        assert!(!p.formed);
        assert_eq!(p.total_samples, 0.0);
    }

    #[test]
    fn uniform_threshold_is_mean_of_group_thresholds() {
        let c = LearningCurve::new(1.5, 0.4, 0.8).unwrap();
        let rho = [3.0, 11.0, 0.5, 7.25];
        let all = [0, 1, 2, 3];
        let tau = intervention_threshold(&rho, TargetVector::uniform(4).gamma(), &all, &c);
        let mean = rho.iter().map(|&r| baseline_threshold(r, &c)).sum::<f64>() / 4.0;
        assert!(close(tau, mean, 1e-13));
    }

    #[test]
    fn zero_weight_group_never_monetized() {
        let unit = LearningCurve::unit();
        let t = TargetVector::new(vec![1.0, 0.0]).unwrap();
        let ones = CostStructure::new(vec![1.0, 1.0]).unwrap();
        let p = intervention_production(&PotentialValue::from_rho(vec![9.0, 4.0]), &t, &ones, &unit, 1).unwrap();
        assert_eq!(p.excluded, vec![1]);
        assert_eq!(p.monetized, vec![0]);
        assert!(p.formed);
        assert!(close(p.total_samples, 3.0, 1e-14));
        assert_eq!(intervention_threshold(&[9.0, 4.0], t.gamma(), &[0, 1], &unit), 0.0);
    }

    #[test]
    fn small_weight_group_can_be_left_out() {
        // gamma_2 so small that its share stays below the ante; only group 1 is monetized.
        let unit = LearningCurve::unit();
        let t = TargetVector::new(vec![0.999, 0.001]).unwrap();
        let ones = CostStructure::new(vec![1.0, 1.0]).unwrap();
        let p = intervention_production(&PotentialValue::from_rho(vec![100.0, 1.0]), &t, &ones, &unit, 1).unwrap();
        assert_eq!(p.monetized, vec![0]);
        assert!(p.formed);
        for &g in &p.monetized {
            assert!(t.get(g) * p.total_samples > unit.learning_ante());
        }
        assert!(t.get(1) * p.total_samples <= unit.learning_ante());
    }

    #[test]
    fn solve_intervention_examples() {
        let rows = vec![vec![1.0, 1.0]; 8];
        let sym = MarketConfig::new(
            GroupSet::numbered(2).unwrap(),
            LearningCurve::unit(),
            2,
            CostStructure::new(vec![1.0, 1.0]).unwrap(),
            BuyerPanel::new(2, &rows).unwrap(),
        )
        .unwrap();
        let base = solve_baseline(&sym).unwrap();
        let fair = solve_intervention(&sym, &TargetVector::uniform(2)).unwrap();
        for g in 0..2 {
            assert!(close(fair.produced.get(g), base.produced.get(g), 1e-14));
        }
        assert!(close(fair.utilities.marketplace, base.utilities.marketplace, 1e-13));

        let asym = two_group_market([(9, 1.0), (4, 1.0)], [1.0, 1.0], 2);
        let fair = solve_intervention(&asym, &TargetVector::uniform(2)).unwrap();
        let y = libm::sqrt(26.0) / 2.0;
        assert!(close(fair.produced.get(0), y, 1e-14) && close(fair.produced.get(1), y, 1e-14));
        assert!((y - 2.5495).abs() < 1e-4);
        assert!(y > 2.0 && y < 3.0);

        let none = two_group_market([(0, 1.0), (0, 1.0)], [1.0, 1.0], 2);
        let fair = solve_intervention(&none, &TargetVector::uniform(2)).unwrap();
        assert!(!fair.formed());
        assert_eq!(fair.utilities.marketplace, 0.0);
    }

    #[test]
    fn general_best_response_quintic() {
        let curves = [
            LearningCurve::new(5.0, 1.0 / 3.0, 3.0).unwrap(),
            LearningCurve::new(5.0, 0.25, 4.0).unwrap(),
        ];
        let x = general_best_response(&[], 1.0, &curves, 1.0).unwrap();
        assert!((x - 1.1673).abs() < 1e-4);
        assert!((libm::pow(x, 5.0) - x - 1.0).abs() < 1e-10);
        assert_eq!(general_best_response(&[], 1.0, &curves, 1e6).unwrap(), 0.0);
        assert!(matches!(general_best_response(&[], 1.0, &[], 1.0), Err(Error::NoRoot)));
    }
}
