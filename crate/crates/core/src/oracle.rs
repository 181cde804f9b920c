//! Brute-force verifiers for the closed forms.
//!
//! Nothing here uses the first-order conditions: sellers best-respond by
//! direct numeric maximization of their exact Shapley payoff, prices are found
//! by exhaustive search, and equilibrium certificates come from evaluating
//! unilateral deviations on a grid.

use alloc::vec;
use alloc::vec::Vec;

use crate::equilibrium::PotentialValue;
use crate::error::{Error, Result};
use crate::mechanism::{
    buyer_utility_with_bids, potential_at, rival_coalitions, seller_utility,
    SellerProfile,
};
use crate::model::{Dataset, LearningCurve, MarketConfig, TargetVector};

/// Multiplicative deviations applied to a seller's current strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationGrid {
    multipliers: Vec<f64>,
}

impl DeviationGrid {
    /// Sorted, deduplicated multipliers; 0 and 1 are always added.
    pub fn new(mut multipliers: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) =
            multipliers.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::InvalidValue { what: "deviation multiplier", index, value });
        }
        multipliers.extend([0.0, 1.0]);
        multipliers.sort_by(f64::total_cmp);
        multipliers.dedup();
        Ok(Self { multipliers })
    }

    pub fn multipliers(&self) -> &[f64] {
        &self.multipliers
    }
}

impl Default for DeviationGrid {
    /// 31 log-spaced factors from 0.5 to 2.0.
    fn default() -> Self {
        let steps: Vec<f64> = (0..31).map(|k| 0.5 * libm::pow(4.0, k as f64 / 30.0)).collect();
        Self::new(steps).expect("finite positive factors")
    }
}

/// Which equilibrium a profile is checked against.
#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    Baseline,
    /// Every seller must supply its samples in the target's proportions.
    Intervention(TargetVector),
}

/// Scenario-independent inputs of one seller's scalar payoff.
struct Payoff<'a> {
    curve: &'a LearningCurve,
    /// `(rho_g, weight of the group in the strategy, rival coalitions for g)`.
    terms: Vec<(f64, f64, Vec<(f64, f64)>)>,
    unit_cost: f64,
}

impl Payoff<'_> {
    fn eval(&self, x: f64) -> f64 {
        let mut receipts = 0.0;
        for (rho, weight, coalitions) in &self.terms {
            let own = weight * x;
            for &(c, agg) in coalitions {
                receipts += rho * c * (self.curve.accuracy(agg + own) - self.curve.accuracy(agg));
            }
        }
        receipts - self.unit_cost * x
    }
}

fn rivals_of(profile: &SellerProfile, j: usize, g: usize) -> Vec<f64> {
    let mut col = profile.column(g);
    col.remove(j);
    col
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol * (1.0 + a.abs()) {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    (x, f(x))
}

/// Maximize a seller's payoff over `x >= 0`.
///
/// The payoff is piecewise: flat-then-concave in each coalition term, so a
/// log-spaced scan locates the right piece and golden-section refines it.
/// Zero and the current strategy are always candidates.
fn maximize(payoff: &Payoff<'_>, current: f64, scale: f64) -> f64 {
    // Past the last kink the payoff is concave; once it is negative and
    // falling there, the maximum lies below.
    let kink = payoff
        .terms
        .iter()
        .map(|(_, w, _)| payoff.curve.learning_ante() / w)
        .fold(0.0, f64::max);
    let mut hi = 2.0 * scale.max(kink);
    let mut guard = 0;
    while !(payoff.eval(hi) < 0.0 && payoff.eval(2.0 * hi) < payoff.eval(hi)) && guard < 200 {
        hi *= 2.0;
        guard += 1;
    }
    hi *= 2.0;
    const POINTS: usize = 600;
    let lo = hi * 1e-9;
    let ratio = libm::pow(hi / lo, 1.0 / (POINTS - 1) as f64);
    let mut best_k = 0;
    let mut best_v = f64::NEG_INFINITY;
    let mut x = lo;
    let mut xs = Vec::with_capacity(POINTS);
    for k in 0..POINTS {
        xs.push(x);
        let v = payoff.eval(x);
        if v > best_v {
            best_v = v;
            best_k = k;
        }
        x *= ratio;
    }
    let a = if best_k == 0 { 0.0 } else { xs[best_k - 1] };
    let b = xs[(best_k + 1).min(POINTS - 1)];
    let (xr, vr) = golden_section_max(|x| payoff.eval(x), a, b, 1e-12);

    let mut best = (0.0, payoff.eval(0.0));
    for (x, v) in [(current, payoff.eval(current)), (xs[best_k], best_v), (xr, vr)] {
        if v > best.1 {
            best = (x, v);
        }
    }
    best.0
}

fn strategy_scale(config: &MarketConfig, profile: &SellerProfile) -> f64 {
    let largest = profile
        .datasets()
        .iter()
        .flat_map(|d| d.samples().iter().copied())
        .fold(0.0, f64::max);
    config.curve.learning_ante().max(largest).max(1.0)
}

/// Result of a best-response run.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsRun {
    pub profile: SellerProfile,
    pub iterations: usize,
    pub last_change: f64,
    pub converged: bool,
}

impl DynamicsRun {
    /// The fixed point, or a divergence error if the budget ran out.
    pub fn into_profile(self) -> Result<SellerProfile> {
        if self.converged {
            Ok(self.profile)
        } else {
            Err(Error::Diverged { iterations: self.iterations, last_change: self.last_change })
        }
    }
}

/// Round-robin best-response dynamics from `init`.
///
/// At baseline each seller re-optimizes every group separately (payoffs are
/// additive across groups). Under an intervention the strategy is the scalar
/// total `n_j` and the dataset is `gamma * n_j`; an initial dataset off the
/// target ray is projected by its total. Stops when the largest relative
/// strategy change in a full round is below `tol`.
pub fn best_response_dynamics(
    config: &MarketConfig,
    scenario: &Scenario,
    init: &SellerProfile,
    max_iters: usize,
    tol: f64,
) -> Result<DynamicsRun> {
    let groups = config.group_count();
    if init.groups() != groups {
        return Err(Error::DimensionMismatch { what: "seller datasets", expected: groups, found: init.groups() });
    }
    let rho = PotentialValue::from_buyers(&config.buyers).rho;
    let m = init.sellers();
    if m > crate::mechanism::SHAPLEY_EXACT_CAP {
        return Err(Error::TooManySellers { sellers: m, cap: crate::mechanism::SHAPLEY_EXACT_CAP });
    }
    let mut profile = init.clone();
    if let Scenario::Intervention(t) = scenario {
        if t.groups() != groups {
            return Err(Error::DimensionMismatch { what: "target", expected: groups, found: t.groups() });
        }
        for j in 0..m {
            let n = profile.dataset(j).total();
            set_on_ray(profile.dataset_mut(j), t, n);
        }
    }

    let mut last_change = f64::INFINITY;
    for iter in 1..=max_iters {
        last_change = 0.0;
        let scale = strategy_scale(config, &profile);
        for j in 0..m {
            match scenario {
                Scenario::Baseline => {
                    for g in 0..groups {
                        let payoff = Payoff {
                            curve: &config.curve,
                            terms: vec![(rho[g], 1.0, rival_coalitions(&rivals_of(&profile, j, g)))],
                            unit_cost: config.costs.get(g),
                        };
                        let old = profile.dataset(j).get(g);
                        let new = if rho[g] > 0.0 { maximize(&payoff, old, scale) } else { 0.0 };
                        last_change = last_change.max(relative_change(old, new));
                        profile.dataset_mut(j).set(g, new);
                    }
                }
                Scenario::Intervention(t) => {
                    let payoff = Payoff {
                        curve: &config.curve,
                        terms: (0..groups)
                            .filter(|&g| rho[g] > 0.0 && t.get(g) > 0.0)
                            .map(|g| (rho[g], t.get(g), rival_coalitions(&rivals_of(&profile, j, g))))
                            .collect(),
                        unit_cost: config.costs.cost_of(t.gamma()),
                    };
                    let old = profile.dataset(j).total();
                    let new = if payoff.terms.is_empty() { 0.0 } else { maximize(&payoff, old, scale) };
                    last_change = last_change.max(relative_change(old, new));
                    set_on_ray(profile.dataset_mut(j), t, new);
                }
            }
        }
        if last_change < tol {
            return Ok(DynamicsRun { profile, iterations: iter, last_change, converged: true });
        }
    }
    Ok(DynamicsRun { profile, iterations: max_iters, last_change, converged: false })
}

fn relative_change(old: f64, new: f64) -> f64 {
    (new - old).abs() / old.abs().max(new.abs()).max(1.0)
}

fn set_on_ray(d: &mut Dataset, t: &TargetVector, n: f64) {
    for g in 0..t.groups() {
        d.set(g, t.get(g) * n);
    }
}

/// Largest unilateral gains found against a profile, per agent class.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Certificate {
    pub seller: f64,
    pub marketplace: f64,
    pub buyer: f64,
}

impl Certificate {
    /// Largest positive improvement over all classes (0 if none).
    pub fn max_improvement(&self) -> f64 {
        self.seller.max(self.marketplace).max(self.buyer).max(0.0)
    }
}

/// Probe unilateral deviations of every agent against `profile`.
///
/// Sellers scale their strategy by each grid multiplier (per group at
/// baseline, on the total under an intervention); a zero strategy is also
/// pushed up an absolute ladder around the learning ante. The marketplace
/// tries every buyer value of a group as its price, and buyers shade or
/// inflate their bids around the price and their own value.
pub fn verify_equilibrium(
    config: &MarketConfig,
    scenario: &Scenario,
    profile: &SellerProfile,
    grid: &DeviationGrid,
) -> Result<Certificate> {
    Ok(Certificate {
        seller: seller_deviation_gain(config, scenario, profile, grid)?,
        marketplace: marketplace_deviation_gain(config, profile),
        buyer: buyer_deviation_gain(config, profile)?,
    })
}

/// Largest seller gain from a unilateral deviation on the grid.
pub fn seller_deviation_gain(
    config: &MarketConfig,
    scenario: &Scenario,
    profile: &SellerProfile,
    grid: &DeviationGrid,
) -> Result<f64> {
    let prices = PotentialValue::from_buyers(&config.buyers).price_vector();
    let groups = config.group_count();
    let ante = config.curve.learning_ante();
    let ladder: Vec<f64> = (-4..=10).map(|k| ante * libm::pow(2.0, k as f64)).collect();
    let mut best = f64::NEG_INFINITY;

    for j in 0..profile.sellers() {
        let base = seller_utility(config, &prices, profile, j)?;
        let mut try_dataset = |d: Dataset| -> Result<()> {
            let mut trial = profile.clone();
            *trial.dataset_mut(j) = d;
            best = best.max(seller_utility(config, &prices, &trial, j)? - base);
            Ok(())
        };
        let options = |x: f64| -> Vec<f64> {
            if x > 0.0 {
                grid.multipliers().iter().map(|m| m * x).collect()
            } else {
                ladder.clone()
            }
        };
        match scenario {
            Scenario::Baseline => {
                for g in 0..groups {
                    for v in options(profile.dataset(j).get(g)) {
                        let mut d = profile.dataset(j).clone();
                        d.set(g, v);
                        try_dataset(d)?;
                    }
                }
            }
            Scenario::Intervention(t) => {
                for v in options(profile.dataset(j).total()) {
                    let mut d = Dataset::zeros(groups);
                    set_on_ray(&mut d, t, v);
                    try_dataset(d)?;
                }
            }
        }
    }
    Ok(best)
}

/// Largest marketplace gain from posting another buyer value as a group's price.
pub fn marketplace_deviation_gain(config: &MarketConfig, profile: &SellerProfile) -> f64 {
    let prices = PotentialValue::from_buyers(&config.buyers).price_vector();
    let agg = profile.aggregate();
    let mut best = f64::NEG_INFINITY;
    for g in 0..config.group_count() {
        let acc = config.curve.accuracy(agg.get(g));
        let current = potential_at(&config.buyers, g, prices.get(g)) * acc;
        for p in config.buyers.column(g).into_iter().filter(|&p| p > 0.0) {
            best = best.max(potential_at(&config.buyers, g, p) * acc - current);
        }
    }
    best
}

/// Largest buyer gain from bidding something other than its value, one
/// group at a time, over `{0, p-eps, p, p+eps, mu, mu+eps, 2mu}`.
pub fn buyer_deviation_gain(config: &MarketConfig, profile: &SellerProfile) -> Result<f64> {
    let prices = PotentialValue::from_buyers(&config.buyers).price_vector();
    let mut best = f64::NEG_INFINITY;
    for i in 0..config.buyers.len() {
        let truthful = config.buyers.row(i).to_vec();
        let base = buyer_utility_with_bids(config, &prices, profile, i, &truthful)?;
        for g in 0..config.group_count() {
            let mu = truthful[g];
            let p = prices.get(g);
            let eps = 1e-6 * p.max(mu).max(1.0);
            let mut candidates = vec![0.0, mu, mu + eps, 2.0 * mu];
            if p.is_finite() {
                candidates.extend([(p - eps).max(0.0), p, p + eps]);
            }
            for bid in candidates {
                let mut bids = truthful.clone();
                bids[g] = bid;
                best = best.max(buyer_utility_with_bids(config, &prices, profile, i, &bids)? - base);
            }
        }
    }
    Ok(best)
}

/// Exhaustive reserve search: `p * |{mu >= p}|` at every distinct positive
/// value, counted from scratch. Ties go to the lowest price.
pub fn price_grid_search(values: &[f64]) -> (Option<f64>, f64) {
    let mut best = (None, 0.0);
    let mut candidates: Vec<f64> = values.iter().copied().filter(|&v| v > 0.0).collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    for &p in &candidates {
        let rho = p * values.iter().filter(|&&v| v >= p).count() as f64;
        if rho > best.1 {
            best = (Some(p), rho);
        }
    }
    best
}

/// Bisection on a bracket with a sign change; stops once the bracket is
/// narrower than `tol` or `f` hits zero exactly.
pub fn find_root_bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.is_finite() && fhi.is_finite()) || (flo > 0.0) == (fhi > 0.0) {
        return Err(Error::NoRoot);
    }
    for _ in 0..2000 {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) / 2.0)
}

/// The two-buyer instance with a quintic first-order condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuinticCertificate {
    /// Single-seller production, the root of `x^5 - x - 1`.
    pub root: f64,
    /// Lower bound on the seller's payoff at that production.
    pub utility_lower_bound: f64,
}

/// Two buyers at price 1 with curves `(5, 1/3, 3)` and `(5, 1/4, 4)`, one
/// seller with unit cost. The first-order condition `x^-4 + x^-5 = 1` is the
/// quintic `x^5 = x + 1`, whose root lies in `[1, 2]`; there both accuracies
/// are at least their value at 1 and the cost is at most 2.
pub fn example_a1_certificate() -> QuinticCertificate {
    let root = find_root_bisect(|x| libm::pow(x, 5.0) - x - 1.0, 1.0, 2.0, 1e-12)
        .expect("x^5 - x - 1 changes sign on [1, 2]");
    let first = LearningCurve::new(5.0, 1.0 / 3.0, 3.0).expect("valid curve");
    let second = LearningCurve::new(5.0, 0.25, 4.0).expect("valid curve");
    let kappa = 1.0;
    let utility_lower_bound = first.accuracy(1.0) + second.accuracy(1.0) - kappa * 2.0;
    QuinticCertificate { root, utility_lower_bound }
}
