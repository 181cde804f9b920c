//! Seeded randomized checks of the equilibrium engine.
//!
//! Each suite draws its instances from a ChaCha stream keyed by the run
//! seed and the trial index, so a failing trial can be replayed alone.

use std::fmt;
use std::str::FromStr;

use fairmarket_core::equilibrium::{
    baseline_threshold, intervention_threshold, solve_baseline, solve_intervention, PotentialValue,
};
use fairmarket_core::fairness::{
    check_backfire, check_sufficient_condition, check_uniform_safety, construct_backfire_market,
    construct_verge_market, max_threshold, optimal_target, BACKFIRE_MARGIN,
};
use fairmarket_core::growth::{amortization_report, sweep, AmortizationReport, BuyerSequence, MarketStub, RatioTrace};
use fairmarket_core::mechanism::{shapley_values, symmetric_share, SellerProfile};
use fairmarket_core::model::{
    beta_expression, BuyerPanel, CostStructure, Dataset, GroupSet, LearningCurve, MarketConfig, TargetVector,
};
use fairmarket_core::oracle::{
    best_response_dynamics, buyer_deviation_gain, verify_equilibrium, DeviationGrid, Scenario,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Truthfulness,
    Shapley,
    Backfire,
    UniformSafety,
    OnlyU,
    Sufficient,
    Kkt,
    Symmetric,
    BetaExpression,
    Amortization,
    All,
}

impl Suite {
    pub const EACH: [Suite; 11] = [
        Suite::Oracle,
        Suite::Truthfulness,
        Suite::Shapley,
        Suite::Backfire,
        Suite::UniformSafety,
        Suite::OnlyU,
        Suite::Sufficient,
        Suite::Kkt,
        Suite::Symmetric,
        Suite::BetaExpression,
        Suite::Amortization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Truthfulness => "truthfulness",
            Suite::Shapley => "shapley",
            Suite::Backfire => "backfire",
            Suite::UniformSafety => "uniform-safety",
            Suite::OnlyU => "only-u",
            Suite::Sufficient => "sufficient",
            Suite::Kkt => "kkt",
            Suite::Symmetric => "symmetric",
            Suite::BetaExpression => "beta-expression",
            Suite::Amortization => "amortization",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::EACH.iter().map(|x| x.name()).collect();
                format!("unknown suite `{s}` (expected one of: {}, all)", names.join(", "))
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub failures: usize,
    /// Config text of the first failing instance, when there is one.
    pub counterexample: Option<String>,
    /// Extra lines such as per-stratum tallies.
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        Self { suite, trials: 0, failures: 0, counterexample: None, notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.trials > 0
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}: {}/{} trials passed", self.suite, self.trials - self.failures, self.trials)
    }
}

/// Independent stream for one trial of one suite.
pub fn trial_rng(seed: u64, suite: Suite, trial: usize) -> ChaCha8Rng {
    let tag = Suite::EACH.iter().position(|&s| s == suite).unwrap_or(99) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tag << 32 | trial as u64);
    rng
}

pub fn random_curve(rng: &mut impl Rng) -> LearningCurve {
    LearningCurve::new(rng.random_range(0.5..2.0), rng.random_range(0.2..2.0), rng.random_range(0.3..2.5))
        .expect("positive parameters")
}

/// Buyer values: about a fifth are 0, the rest uniform in `(0.1, 5)`.
fn random_rows(rng: &mut impl Rng, buyers: usize, groups: usize) -> Vec<Vec<f64>> {
    (0..buyers)
        .map(|_| {
            (0..groups)
                .map(|_| if rng.random_bool(0.2) { 0.0 } else { rng.random_range(0.1..5.0) })
                .collect()
        })
        .collect()
}

/// Weights on the simplex; with `full_support` every entry is at least 0.02.
pub fn random_target(rng: &mut impl Rng, groups: usize, full_support: bool) -> TargetVector {
    loop {
        let w: Vec<f64> = (0..groups)
            .map(|_| if !full_support && rng.random_bool(0.15) { 0.0 } else { rng.random_range(0.05..1.0) })
            .collect();
        if let Ok(t) = TargetVector::normalized(&w) {
            if !full_support || t.gamma().iter().all(|&x| x >= 0.02) {
                return t;
            }
        }
    }
}

fn build(groups: usize, curve: LearningCurve, sellers: usize, kappa: Vec<f64>, rows: &[Vec<f64>]) -> MarketConfig {
    MarketConfig::new(
        GroupSet::numbered(groups).expect("at least one group"),
        curve,
        sellers,
        CostStructure::new(kappa).expect("positive costs"),
        BuyerPanel::new(groups, rows).expect("finite values"),
    )
    .expect("consistent dimensions")
}

/// Small quasi-symmetric market; costs straddle each group's threshold.
pub fn random_market(rng: &mut impl Rng, max_groups: usize, max_sellers: usize, max_buyers: usize) -> MarketConfig {
    let groups = rng.random_range(1..=max_groups);
    let sellers = rng.random_range(1..=max_sellers);
    let buyers = rng.random_range(1..=max_buyers);
    let curve = random_curve(rng);
    let rows = random_rows(rng, buyers, groups);
    let rho = PotentialValue::from_buyers(&BuyerPanel::new(groups, &rows).expect("finite values")).rho;
    let kappa = rho
        .iter()
        .map(|&r| {
            if r > 0.0 {
                baseline_threshold(r, &curve) * rng.random_range(0.2..1.6)
            } else {
                rng.random_range(0.1..2.0)
            }
        })
        .collect();
    build(groups, curve, sellers, kappa, &rows)
}

/// Every group has demand and costs below its threshold.
pub fn random_fully_forming(rng: &mut impl Rng, max_groups: usize) -> MarketConfig {
    let groups = rng.random_range(1..=max_groups);
    let sellers = rng.random_range(1..=5);
    let buyers = rng.random_range(1..=12);
    let curve = random_curve(rng);
    let mut rows = random_rows(rng, buyers, groups);
    for (g, row) in rows.iter_mut().enumerate().take(groups) {
        row[g] = rng.random_range(0.1..5.0);
    }
    for g in buyers..groups {
        rows[g % buyers][g] = rng.random_range(0.1..5.0);
    }
    let rho = PotentialValue::from_buyers(&BuyerPanel::new(groups, &rows).expect("finite values")).rho;
    let kappa = rho.iter().map(|&r| baseline_threshold(r, &curve) * rng.random_range(0.01..1.0)).collect();
    build(groups, curve, sellers, kappa, &rows)
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-12)
}

fn witness(market: &MarketConfig, target: Option<&TargetVector>) -> String {
    RunConfig::from_market(market, target).to_text()
}

/// Closed forms against best-response dynamics and deviation certificates.
pub fn oracle(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Oracle);
    let grid = DeviationGrid::default();
    let mut by_sellers = [(0usize, 0usize); 5];
    for t in 0..trials {
        let mut rng = trial_rng(seed, Suite::Oracle, t);
        let market = random_market(&mut rng, 3, 4, 10);
        let target = if rng.random_bool(0.5) {
            TargetVector::uniform(market.group_count())
        } else {
            random_target(&mut rng, market.group_count(), false)
        };
        let ok = oracle_agrees(&market, &target, &grid).unwrap_or(false);
        let m = market.sellers;
        by_sellers[m].0 += 1;
        by_sellers[m].1 += usize::from(ok);
        report.record(ok, || witness(&market, Some(&target)));
    }
    for (m, (total, ok)) in by_sellers.iter().enumerate().filter(|(_, (n, _))| *n > 0) {
        report.notes.push(format!("M={m}: {ok}/{total} agree"));
    }
    report
}

/// Closed-form baseline and intervention equal the dynamics' fixed points
/// (relative 1e-6) and survive every grid deviation (gain <= 1e-8).
pub fn oracle_agrees(market: &MarketConfig, target: &TargetVector, grid: &DeviationGrid) -> fairmarket_core::Result<bool> {
    let m = market.sellers;
    let groups = market.group_count();
    let ones = SellerProfile::symmetric(Dataset::new(vec![1.0; groups])?, m)?;

    let base = solve_baseline(market)?;
    let closed = SellerProfile::symmetric(base.per_seller.clone(), m)?;
    let run = best_response_dynamics(market, &Scenario::Baseline, &ones, 400, 1e-11)?;
    if !run.converged || !profiles_match(&closed, &run.profile) {
        return Ok(false);
    }
    if verify_equilibrium(market, &Scenario::Baseline, &closed, grid)?.max_improvement() > 1e-8 {
        return Ok(false);
    }

    let fair = solve_intervention(market, target)?;
    let closed = SellerProfile::symmetric(fair.per_seller.clone(), m)?;
    let scenario = Scenario::Intervention(target.clone());
    let run = best_response_dynamics(market, &scenario, &ones, 400, 1e-11)?;
    if !run.converged || !profiles_match(&closed, &run.profile) {
        return Ok(false);
    }
    Ok(verify_equilibrium(market, &scenario, &closed, grid)?.max_improvement() <= 1e-8)
}

fn profiles_match(a: &SellerProfile, b: &SellerProfile) -> bool {
    a.datasets()
        .iter()
        .zip(b.datasets())
        .all(|(x, y)| x.samples().iter().zip(y.samples()).all(|(&p, &q)| rel_close(p, q, 1e-6)))
}

/// Truthful bids are never beaten by a grid bid, at either equilibrium.
pub fn truthfulness(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Truthfulness);
    for t in 0..trials {
        let mut rng = trial_rng(seed, Suite::Truthfulness, t);
        let market = random_market(&mut rng, 3, 3, 10);
        let target = random_target(&mut rng, market.group_count(), false);
        let ok = (|| -> fairmarket_core::Result<bool> {
            let base = solve_baseline(&market)?;
            let fair = solve_intervention(&market, &target)?;
            let mut worst = f64::NEG_INFINITY;
            for per_seller in [base.per_seller, fair.per_seller] {
                let profile = SellerProfile::symmetric(per_seller, market.sellers)?;
                worst = worst.max(buyer_deviation_gain(&market, &profile)?);
            }
            Ok(worst <= 1e-12)
        })()
        .unwrap_or(false);
        report.record(ok, || witness(&market, Some(&target)));
    }
    report
}

/// Enumeration against the symmetric split, and efficiency / null player.
pub fn shapley(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Shapley);
    for m in 1..=6 {
        let mut rng = trial_rng(seed, Suite::Shapley, 1_000_000 + m);
        let curve = random_curve(&mut rng);
        let x = rng.random_range(0.01..10.0);
        let phi = shapley_values(&vec![x; m], &curve).expect("within cap");
        let share = symmetric_share(x * m as f64, m, &curve);
        report.record(phi.iter().all(|&v| (v - share).abs() <= 1e-9), || {
            format!("identical sellers: M={m}, x={x}, curve={curve:?}")
        });
    }
    for t in 0..trials {
        let mut rng = trial_rng(seed, Suite::Shapley, t);
        let curve = random_curve(&mut rng);
        let m = rng.random_range(2..=8);
        let amounts: Vec<f64> =
            (0..m).map(|_| if rng.random_bool(0.25) { 0.0 } else { rng.random_range(0.0..6.0) }).collect();
        let phi = shapley_values(&amounts, &curve).expect("within cap");
        let total = curve.accuracy(amounts.iter().sum());
        let efficient = (phi.iter().sum::<f64>() - total).abs() <= 1e-9 * total.max(1.0);
        let null = amounts.iter().zip(&phi).all(|(&a, &v)| a > 0.0 || v.abs() <= 1e-12);
        report.record(efficient && null, || format!("amounts={amounts:?}, curve={curve:?}, phi={phi:?}"));
    }
    report
}

/// The backfire construction backfires for arbitrary targets.
pub fn backfire(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Backfire);
    for t in 0..trials {
        let mut rng = trial_rng(seed, Suite::Backfire, t);
        let groups = rng.random_range(2..=5);
        let target = loop {
            let t = random_target(&mut rng, groups, false);
            if t.gamma().iter().filter(|&&x| x > 0.0).count() >= 2 {
                break t;
            }
        };
        let curve = random_curve(&mut rng);
        let buyers = rng.random_range(1..=10);
        let mut rows = random_rows(&mut rng, buyers, groups);
        rows[0][rng.random_range(0..groups)] = rng.random_range(0.1..5.0);
        let panel = BuyerPanel::new(groups, &rows).expect("finite values");
        let sellers = rng.random_range(1..=4);
        let result = construct_backfire_market(&target, &panel, &curve, sellers, BACKFIRE_MARGIN)
            .and_then(|m| check_backfire(&m, &target).map(|r| (m, r)));
        match result {
            Ok((market, r)) => report.record(r.backfired, || witness(&market, Some(&target))),
            Err(e) => report.record(false, || format!("construction failed: {e}")),
        }
    }
    report
}

/// The uniform target never backfires on a fully forming market.
pub fn uniform_safety(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::UniformSafety);
    for t in 0..trials {
        let mut rng = trial_rng(seed, Suite::UniformSafety, t);
        let market = random_fully_forming(&mut rng, 5);
        let ok = check_uniform_safety(&market).unwrap_or(false)
            && solve_baseline(&market).map(|b| b.fully_formed()).unwrap_or(false);
        report.record(ok, || witness(&market, Some(&TargetVector::uniform(market.group_count()))));
    }
    report
}

/// At the verge market only the uniform target forms.
pub fn only_u(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::OnlyU);
    for t in 0..trials {
        let mut rng = trial_rng(seed, Suite::OnlyU, t);
        let groups = rng.random_range(2..=5);
        let curve = random_curve(&mut rng);
        let market = construct_verge_market(&curve, rng.random_range(1..=4), groups, rng.random_range(0.1..10.0))
            .expect("positive value");
        let u = TargetVector::uniform(groups);
        let gamma = loop {
            let g = random_target(&mut rng, groups, true);
            if g.gamma().iter().any(|&x| (x - 1.0 / groups as f64).abs() > 1e-3) {
                break g;
            }
        };
        let forms = |t: &TargetVector| check_backfire(&market, t).map(|r| r.intervention_formed);
        let ok = forms(&u).unwrap_or(false) && !forms(&gamma).unwrap_or(true);
        report.record(ok, || witness(&market, Some(&gamma)));
    }
    report
}

/// Whenever the cost-slack bound holds, the intervention forms.
pub fn sufficient(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Sufficient);
    for t in 0..trials {
        let mut rng = trial_rng(seed, Suite::Sufficient, t);
        let base = random_fully_forming(&mut rng, 4);
        let target = random_target(&mut rng, base.group_count(), true);
        let rho = PotentialValue::from_buyers(&base.buyers).rho;
        let (a, b) = (
            1.0 / target.gamma().iter().copied().fold(f64::INFINITY, f64::min),
            1.0 / target.gamma().iter().copied().fold(0.0, f64::max),
        );
        let r = rho.iter().copied().fold(0.0, f64::max) / rho.iter().copied().fold(f64::INFINITY, f64::min);
        let bound = (b / a).powf(base.curve.beta() + 1.0) / (r * base.group_count() as f64);
        let kappa: Vec<f64> = rho
            .iter()
            .map(|&p| baseline_threshold(p, &base.curve) * bound * rng.random_range(0.01..0.999))
            .collect();
        let market = base.with_costs(CostStructure::new(kappa).expect("positive")).expect("same groups");
        let ok = match check_sufficient_condition(&market, &target) {
            Ok(Some(rep)) if rep.satisfied => check_backfire(&market, &target).map(|f| f.intervention_formed).unwrap_or(false),
            _ => false,
        };
        report.record(ok, || witness(&market, Some(&target)));
    }
    report
}

/// The closed-form optimal target beats simplex perturbations of itself.
pub fn kkt(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Kkt);
    for t in 0..trials {
        let mut rng = trial_rng(seed, Suite::Kkt, t);
        let groups = rng.random_range(2..=6);
        let curve = random_curve(&mut rng);
        let rho: Vec<f64> = (0..groups).map(|_| rng.random_range(0.1..50.0)).collect();
        let potential = PotentialValue::from_rho(rho.clone());
        let all: Vec<usize> = (0..groups).collect();
        let best = optimal_target(&potential, &all, curve.beta()).expect("positive potential");
        let top = max_threshold(&potential, &all, &curve).expect("positive potential");
        let at_best = intervention_threshold(&rho, best.gamma(), &all, &curve);
        let mut ok = (at_best - top).abs() <= 1e-12 * top;
        for _ in 0..50 {
            let scale = rng.random_range(0.001..0.2);
            let delta: Vec<f64> = (0..groups).map(|_| rng.random_range(-1.0..1.0) * scale).collect();
            let mean = delta.iter().sum::<f64>() / groups as f64;
            let moved: Vec<f64> = best.gamma().iter().zip(&delta).map(|(g, d)| (g + d - mean).max(0.0)).collect();
            let Ok(other) = TargetVector::normalized(&moved) else { continue };
            ok &= intervention_threshold(&rho, other.gamma(), &all, &curve) <= top + 1e-9;
        }
        report.record(ok, || format!("rho={rho:?}, curve={curve:?}"));
    }
    report
}

/// Symmetric demand and costs: the uniform target changes nothing.
pub fn symmetric(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Symmetric);
    for t in 0..trials {
        let mut rng = trial_rng(seed, Suite::Symmetric, t);
        let groups = rng.random_range(1..=5);
        let sellers = rng.random_range(1..=5);
        let curve = random_curve(&mut rng);
        let rows: Vec<Vec<f64>> =
            (0..rng.random_range(1..=12)).map(|_| vec![rng.random_range(0.1..5.0); groups]).collect();
        let rho = PotentialValue::from_buyers(&BuyerPanel::new(groups, &rows).expect("finite")).rho[0];
        let kappa = baseline_threshold(rho, &curve) * rng.random_range(0.05..1.5);
        let market = build(groups, curve, sellers, vec![kappa; groups], &rows);
        let ok = (|| -> fairmarket_core::Result<bool> {
            let base = solve_baseline(&market)?;
            let fair = solve_intervention(&market, &TargetVector::uniform(groups))?;
            let close = |a: f64, b: f64| a == b || rel_close(a, b, 1e-9);
            let same_data = (0..groups).all(|g| close(base.produced.get(g), fair.produced.get(g)));
            let (bu, fu) = (&base.utilities, &fair.utilities);
            let same_utils = close(bu.marketplace, fu.marketplace)
                && bu.sellers.iter().zip(&fu.sellers).all(|(&a, &b)| close(a, b))
                && bu.buyers.iter().zip(&fu.buyers).all(|(&a, &b)| close(a, b));
            Ok(base.formed() == fair.formed() && same_data && same_utils)
        })()
        .unwrap_or(false);
        report.record(ok, || witness(&market, Some(&TargetVector::uniform(groups))));
    }
    report
}

/// `beta_expression(beta) > 1` on a log grid over `[1e-3, 1e3]`.
pub fn beta_grid(points: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::BetaExpression);
    for k in 0..points {
        let beta = 10f64.powf(-3.0 + 6.0 * k as f64 / (points - 1).max(1) as f64);
        let v = beta_expression(beta);
        report.record(v > 1.0, || format!("beta={beta}: expression={v}"));
    }
    report
}

/// The growth market used by the amortization check.
///
/// Four early buyers value group 1 at 2 (and group 2 at 1, one of them at
/// 1.5); everyone after values only group 1, at 1. Group 1's potential
/// grows like `N` while group 2's stays 4, and both groups have buyers with
/// positive surplus.
pub fn amortization_market() -> (BuyerSequence, MarketStub) {
    let sequence = BuyerSequence::Explicit {
        rows: vec![vec![2.0, 1.0], vec![2.0, 1.0], vec![2.0, 1.0], vec![2.0, 1.5]],
        tail: vec![1.0, 0.0],
    };
    let stub = MarketStub {
        groups: GroupSet::numbered(2).expect("two groups"),
        curve: LearningCurve::unit(),
        sellers: 2,
        costs: CostStructure::new(vec![1.0, 1.0]).expect("positive"),
    };
    (sequence, stub)
}

/// Result of the amortization sweep plus the measured deviation decay.
#[derive(Debug, Clone)]
pub struct AmortizationRun {
    pub trace: RatioTrace,
    pub report: AmortizationReport,
    /// `|UR_Mkt - 1|` at `10^4` over the same at `10^6`.
    pub decay: Option<f64>,
    /// `100^(beta/(beta+1))`, the decay over a factor 100 in `N`.
    pub expected_decay: f64,
}

impl AmortizationRun {
    pub fn decay_consistent(&self) -> bool {
        self.decay.is_some_and(|d| d >= self.expected_decay / 3.0 && d <= self.expected_decay * 3.0)
    }
}

pub fn amortization_run(tolerance: f64) -> fairmarket_core::Result<AmortizationRun> {
    let (sequence, stub) = amortization_market();
    let probes = fairmarket_core::growth::default_probes();
    let trace = sweep(&sequence, &stub, &TargetVector::uniform(2), &probes)?;
    let report = amortization_report(&trace, tolerance);
    let dev = |n: usize| {
        trace.points.iter().find(|p| p.n == n).and_then(|p| p.marketplace).map(|r| (r - 1.0).abs())
    };
    let decay = match (dev(10_000), dev(1_000_000)) {
        (Some(a), Some(b)) if b > 0.0 => Some(a / b),
        _ => None,
    };
    let beta = stub.curve.beta();
    Ok(AmortizationRun { trace, report, decay, expected_decay: 100f64.powf(beta / (beta + 1.0)) })
}

pub fn amortization(tolerance: f64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Amortization);
    match amortization_run(tolerance) {
        Ok(run) => {
            let last = run.trace.points.last().cloned();
            report.record(run.report.passed() && run.decay_consistent(), || {
                format!("verdicts {:?}, decay {:?} vs {}", run.report, run.decay, run.expected_decay)
            });
            if let Some(p) = last {
                report.notes.push(format!("final N={}: UR_Mkt={:?}, UR_S={:?}, min UR_B={:?}", p.n, p.marketplace, p.sellers, p.buyers_min));
            }
            report.notes.push(format!("deviation decay 1e4->1e6: {:?} (expected {:.3})", run.decay, run.expected_decay));
        }
        Err(e) => report.record(false, || format!("sweep failed: {e}")),
    }
    report
}

/// Run one suite (or all of them) with `trials` random instances each.
pub fn run(suite: Suite, seed: u64, trials: usize) -> Vec<SuiteReport> {
    let one = |s: Suite| match s {
        Suite::Oracle => oracle(seed, trials),
        Suite::Truthfulness => truthfulness(seed, trials),
        Suite::Shapley => shapley(seed, trials),
        Suite::Backfire => backfire(seed, trials),
        Suite::UniformSafety => uniform_safety(seed, trials),
        Suite::OnlyU => only_u(seed, trials),
        Suite::Sufficient => sufficient(seed, trials),
        Suite::Kkt => kkt(seed, trials),
        Suite::Symmetric => symmetric(seed, trials),
        Suite::BetaExpression => beta_grid(200),
        Suite::Amortization => amortization(0.01),
        Suite::All => unreachable!("expanded below"),
    };
    match suite {
        Suite::All => Suite::EACH.into_iter().map(one).collect(),
        s => vec![one(s)],
    }
}
