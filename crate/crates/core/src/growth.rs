//! Utility ratios between the two scenarios as the buyer population grows.

use alloc::vec;
use alloc::vec::Vec;

use crate::equilibrium::{solve_baseline, solve_intervention};
use crate::error::{Error, Result};
use crate::model::{BuyerPanel, CostStructure, GroupSet, LearningCurve, MarketConfig, TargetVector};

/// A group that gains one buyer every `every` arrivals.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrival {
    pub group: usize,
    pub value: f64,
    pub every: usize,
    /// Stop after this many buyers of the group; `None` keeps growing.
    pub limit: Option<usize>,
}

/// Rule producing the first `N` buyers for every `N`.
///
/// Buyer `i` is the same in every panel that contains it, so panels are
/// nested prefixes of one infinite sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum BuyerSequence {
    /// Every buyer has the same value row.
    Replicate(Vec<f64>),
    /// Buyer `i` values group `g` at `value` when `i` is a multiple of the
    /// group's period and the group's limit is not reached; 0 otherwise.
    Arrivals { groups: usize, arrivals: Vec<Arrival> },
    /// Listed rows first, then `tail` forever.
    Explicit { rows: Vec<Vec<f64>>, tail: Vec<f64> },
}

impl BuyerSequence {
    pub fn groups(&self) -> usize {
        match self {
            BuyerSequence::Replicate(row) => row.len(),
            BuyerSequence::Arrivals { groups, .. } => *groups,
            BuyerSequence::Explicit { tail, .. } => tail.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let groups = self.groups();
        match self {
            BuyerSequence::Replicate(row) => BuyerPanel::new(groups, core::slice::from_ref(row)).map(|_| ()),
            BuyerSequence::Arrivals { arrivals, .. } => {
                for (index, a) in arrivals.iter().enumerate() {
                    if a.group >= groups {
                        return Err(Error::IndexOutOfRange { what: "arrival group", index: a.group, len: groups });
                    }
                    if a.every == 0 {
                        return Err(Error::InvalidValue { what: "arrival period", index, value: 0.0 });
                    }
                    if !(a.value.is_finite() && a.value >= 0.0) {
                        return Err(Error::InvalidValue { what: "arrival value", index, value: a.value });
                    }
                }
                Ok(())
            }
            BuyerSequence::Explicit { rows, tail } => {
                let mut all = rows.clone();
                all.push(tail.clone());
                BuyerPanel::new(groups, &all).map(|_| ())
            }
        }
    }

    /// Value row of buyer `i` (0-based).
    pub fn row(&self, i: usize) -> Vec<f64> {
        match self {
            BuyerSequence::Replicate(row) => row.clone(),
            BuyerSequence::Arrivals { groups, arrivals } => {
                let mut row = vec![0.0; *groups];
                for a in arrivals {
                    if i.is_multiple_of(a.every) && a.limit.is_none_or(|l| i / a.every < l) {
                        row[a.group] = a.value;
                    }
                }
                row
            }
            BuyerSequence::Explicit { rows, tail } => rows.get(i).unwrap_or(tail).clone(),
        }
    }

    /// The first `n` buyers.
    pub fn panel(&self, n: usize) -> Result<BuyerPanel> {
        self.validate()?;
        let groups = self.groups();
        let mut flat = Vec::with_capacity(n * groups);
        for i in 0..n {
            flat.extend(self.row(i));
        }
        BuyerPanel::from_flat(groups, flat)
    }
}

/// Everything about a market except its buyers.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketStub {
    pub groups: GroupSet,
    pub curve: LearningCurve,
    pub sellers: usize,
    pub costs: CostStructure,
}

impl MarketStub {
    pub fn with_buyers(&self, buyers: BuyerPanel) -> Result<MarketConfig> {
        MarketConfig::new(self.groups.clone(), self.curve, self.sellers, self.costs.clone(), buyers)
    }
}

/// Paired solve at one population size. Ratios are intervention over
/// baseline and are `None` where the baseline value is 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioPoint {
    pub n: usize,
    pub rho: Vec<f64>,
    pub baseline_formed: bool,
    pub baseline_fully_formed: bool,
    pub intervention_formed: bool,
    pub baseline_production: f64,
    pub intervention_production: f64,
    pub marketplace: Option<f64>,
    pub sellers: Vec<Option<f64>>,
    /// Smallest and mean ratio over buyers with nonzero baseline utility.
    pub buyers_min: Option<f64>,
    pub buyers_mean: Option<f64>,
}

impl RatioPoint {
    /// Both scenarios form and the marketplace ratio is defined.
    pub fn comparable(&self) -> bool {
        self.baseline_formed && self.intervention_formed && self.marketplace.is_some()
    }
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0).then(|| num / den)
}

/// Solve both scenarios for the first `n` buyers of `sequence`.
pub fn probe(
    sequence: &BuyerSequence,
    stub: &MarketStub,
    target: &TargetVector,
    n: usize,
) -> Result<RatioPoint> {
    let config = stub.with_buyers(sequence.panel(n)?)?;
    let base = solve_baseline(&config)?;
    let fair = solve_intervention(&config, target)?;
    let (bu, fu) = (&base.utilities, &fair.utilities);
    let buyer_ratios: Vec<f64> = bu
        .buyers
        .iter()
        .zip(&fu.buyers)
        .filter_map(|(&b, &f)| ratio(f, b))
        .collect();
    let buyers_min = buyer_ratios.iter().copied().reduce(f64::min);
    let buyers_mean = (!buyer_ratios.is_empty())
        .then(|| buyer_ratios.iter().sum::<f64>() / buyer_ratios.len() as f64);
    Ok(RatioPoint {
        n,
        baseline_formed: base.formed(),
        baseline_fully_formed: base.fully_formed(),
        intervention_formed: fair.formed(),
        baseline_production: base.produced.total(),
        intervention_production: fair.production.total_samples,
        marketplace: ratio(fu.marketplace, bu.marketplace),
        sellers: bu.sellers.iter().zip(&fu.sellers).map(|(&b, &f)| ratio(f, b)).collect(),
        buyers_min,
        buyers_mean,
        rho: base.potential.rho,
    })
}

/// Probes in increasing `N`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RatioTrace {
    pub points: Vec<RatioPoint>,
}

impl RatioTrace {
    /// Assemble independently computed probes, checking their order.
    pub fn from_points(points: Vec<RatioPoint>) -> Result<Self> {
        check_increasing(&points.iter().map(|p| p.n).collect::<Vec<_>>())?;
        Ok(Self { points })
    }

    pub fn comparable(&self) -> impl Iterator<Item = &RatioPoint> {
        self.points.iter().filter(|p| p.comparable())
    }
}

/// Geometric default probes `10^2 ..= 10^6`.
pub fn default_probes() -> Vec<usize> {
    vec![100, 1_000, 10_000, 100_000, 1_000_000]
}

fn check_increasing(ns: &[usize]) -> Result<()> {
    match ns.windows(2).position(|w| w[0] >= w[1]) {
        Some(i) => Err(Error::InvalidValue { what: "probe (must increase)", index: i + 1, value: ns[i + 1] as f64 }),
        None => Ok(()),
    }
}

pub fn sweep(
    sequence: &BuyerSequence,
    stub: &MarketStub,
    target: &TargetVector,
    ns: &[usize],
) -> Result<RatioTrace> {
    check_increasing(ns)?;
    let points = ns.iter().map(|&n| probe(sequence, stub, target, n)).collect::<Result<_>>()?;
    Ok(RatioTrace { points })
}

/// Where along a growth sequence the intervention starts to form.
#[derive(Debug, Clone, PartialEq)]
pub struct Mitigation {
    /// Smallest probed `N` at which the intervention forms.
    pub n0: Option<usize>,
    /// Formation holds at every probe from `n0` up to the probe limit.
    pub persists: bool,
    /// `(N, intervention formed)` for each probe.
    pub probes: Vec<(usize, bool)>,
}

/// Probe `N = 1, 2, 4, ...` up to `n_probe` (inclusive).
pub fn check_mitigation(
    sequence: &BuyerSequence,
    stub: &MarketStub,
    target: &TargetVector,
    n_probe: usize,
) -> Result<Mitigation> {
    let mut ns = Vec::new();
    let mut n = 1;
    while n < n_probe {
        ns.push(n);
        n *= 2;
    }
    ns.push(n_probe.max(1));
    let probes = ns
        .into_iter()
        .map(|n| {
            let config = stub.with_buyers(sequence.panel(n)?)?;
            Ok((n, solve_intervention(&config, target)?.formed()))
        })
        .collect::<Result<Vec<_>>>()?;
    let first = probes.iter().position(|&(_, formed)| formed);
    Ok(Mitigation {
        n0: first.map(|i| probes[i].0),
        persists: first.is_some_and(|i| probes[i..].iter().all(|&(_, f)| f)),
        probes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Whether each class's utility ratio has settled near 1 by the last probe.
#[derive(Debug, Clone, PartialEq)]
pub struct AmortizationReport {
    pub marketplace: Verdict,
    pub sellers: Verdict,
    pub buyers: Verdict,
}

impl AmortizationReport {
    pub fn passed(&self) -> bool {
        [self.marketplace, self.sellers, self.buyers].iter().all(|&v| v == Verdict::Pass)
    }
}

/// Marketplace and seller ratios must end within `tolerance` of 1 with a
/// deviation that does not grow over the last three comparable probes; the
/// worst buyer ratio must end at least `1 - tolerance`.
pub fn amortization_report(trace: &RatioTrace, tolerance: f64) -> AmortizationReport {
    let pts: Vec<&RatioPoint> = trace.comparable().collect();
    if pts.len() < 3 {
        return AmortizationReport {
            marketplace: Verdict::Inconclusive,
            sellers: Verdict::Inconclusive,
            buyers: Verdict::Inconclusive,
        };
    }
    let tail = &pts[pts.len() - 3..];
    // allows for rounding noise when the ratio sits at 1
    let settles = |dev: &[Option<f64>]| -> Option<bool> {
        let d: Vec<f64> = dev.iter().map(|r| r.map(|r| (r - 1.0).abs())).collect::<Option<_>>()?;
        Some(d[2] <= tolerance && d.windows(2).all(|w| w[1] <= w[0] + 1e-12))
    };
    let verdict = |ok: Option<bool>| ok.map_or(Verdict::Inconclusive, Verdict::from);

    let marketplace = verdict(settles(&tail.iter().map(|p| p.marketplace).collect::<Vec<_>>()));
    let sellers_count = tail[2].sellers.len();
    let seller_checks: Option<Vec<bool>> = (0..sellers_count)
        .map(|j| settles(&tail.iter().map(|p| p.sellers[j]).collect::<Vec<_>>()))
        .collect();
    let sellers = verdict(seller_checks.map(|c| c.into_iter().all(|ok| ok)));
    let buyers = verdict(tail[2].buyers_min.map(|r| r >= 1.0 - tolerance));
    AmortizationReport { marketplace, sellers, buyers }
}

/// Total production rises strictly from one formed probe to the next in
/// both scenarios (and each scenario forms at two probes or more).
pub fn unbounded_production_check(
    sequence: &BuyerSequence,
    stub: &MarketStub,
    target: &TargetVector,
    ns: &[usize],
) -> Result<bool> {
    let trace = sweep(sequence, stub, target, ns)?;
    let rising = |xs: Vec<f64>| xs.len() >= 2 && xs.windows(2).all(|w| w[1] > w[0]);
    let base = trace.points.iter().filter(|p| p.baseline_formed).map(|p| p.baseline_production);
    let fair = trace.points.iter().filter(|p| p.intervention_formed).map(|p| p.intervention_production);
    Ok(rising(base.collect()) && rising(fair.collect()))
}
