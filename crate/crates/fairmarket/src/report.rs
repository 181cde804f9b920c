//! CSV and JSON renderings of solver outcomes.
//!
//! CSV files hold one or more tables separated by a blank line, each with
//! its own header row. Numbers carry 12 significant digits; undefined
//! values (no price, an undefined ratio) are written as `NA`. JSON uses
//! `null` for the same cells.

use std::fmt::Write as _;

use fairmarket_core::equilibrium::{baseline_demographics, BaselineOutcome, InterventionOutcome};
use fairmarket_core::fairness::FormationReport;
use fairmarket_core::growth::{AmortizationReport, RatioPoint, RatioTrace, Verdict};
use fairmarket_core::mechanism::Utilities;
use fairmarket_core::model::MarketConfig;
use serde::Serialize;

/// `%.12g`-style formatting; non-finite values become `NA`.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return "NA".to_owned();
    }
    if x == 0.0 {
        return "0".to_owned();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_owned()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_owned(), num)
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UtilityReport {
    pub marketplace: f64,
    pub sellers: Vec<f64>,
    pub buyers: Vec<f64>,
}

impl From<&Utilities> for UtilityReport {
    fn from(u: &Utilities) -> Self {
        Self { marketplace: u.marketplace, sellers: u.sellers.clone(), buyers: u.buyers.clone() }
    }
}

fn utility_table(out: &mut String, u: &UtilityReport) {
    out.push_str("agent,index,utility\n");
    let _ = writeln!(out, "marketplace,0,{}", num(u.marketplace));
    for (j, v) in u.sellers.iter().enumerate() {
        let _ = writeln!(out, "seller,{j},{}", num(*v));
    }
    for (i, v) in u.buyers.iter().enumerate() {
        let _ = writeln!(out, "buyer,{i},{}", num(*v));
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BaselineGroupRow {
    pub group: String,
    pub price: Option<f64>,
    pub rho: f64,
    pub tau: f64,
    pub kappa: f64,
    pub produced: f64,
    pub per_seller: f64,
    pub demographic: Option<f64>,
    pub formed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BaselineReport {
    pub scenario: &'static str,
    pub formed: bool,
    pub fully_formed: bool,
    pub groups: Vec<BaselineGroupRow>,
    pub utilities: UtilityReport,
}

impl BaselineReport {
    pub fn new(config: &MarketConfig, outcome: &BaselineOutcome) -> Self {
        let demo = baseline_demographics(outcome).ok();
        let groups = config
            .groups
            .labels()
            .iter()
            .enumerate()
            .map(|(g, label)| BaselineGroupRow {
                group: label.clone(),
                price: outcome.potential.chosen_price[g],
                rho: outcome.potential.rho[g],
                tau: outcome.thresholds[g],
                kappa: outcome.kappa[g],
                produced: outcome.produced.get(g),
                per_seller: outcome.per_seller.get(g),
                demographic: demo.as_ref().map(|d| d[g]),
                formed: outcome.formed_groups.contains(&g),
            })
            .collect();
        Self {
            scenario: "baseline",
            formed: outcome.formed(),
            fully_formed: outcome.fully_formed(),
            groups,
            utilities: (&outcome.utilities).into(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("group,price,rho,tau,kappa,produced,demographic\n");
        for r in &self.groups {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                r.group,
                opt(r.price),
                num(r.rho),
                num(r.tau),
                num(r.kappa),
                num(r.produced),
                opt(r.demographic)
            );
        }
        let _ = writeln!(s, "\nkey,value\nformed,{}\nfully_formed,{}\n", self.formed, self.fully_formed);
        utility_table(&mut s, &self.utilities);
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InterventionGroupRow {
    pub group: String,
    pub price: Option<f64>,
    pub rho: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub produced: f64,
    pub monetized: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InterventionReport {
    pub scenario: &'static str,
    pub formed: bool,
    pub marginal_cost: f64,
    pub tau_h: f64,
    pub total_samples: f64,
    pub monetized: Vec<String>,
    pub groups: Vec<InterventionGroupRow>,
    pub utilities: UtilityReport,
}

impl InterventionReport {
    pub fn new(config: &MarketConfig, outcome: &InterventionOutcome) -> Self {
        let labels = config.groups.labels();
        let p = &outcome.production;
        let groups = labels
            .iter()
            .enumerate()
            .map(|(g, label)| InterventionGroupRow {
                group: label.clone(),
                price: outcome.potential.chosen_price[g],
                rho: outcome.potential.rho[g],
                kappa: config.costs.get(g),
                gamma: outcome.target.get(g),
                produced: outcome.produced.get(g),
                monetized: p.monetized.contains(&g),
            })
            .collect();
        Self {
            scenario: "intervention",
            formed: p.formed,
            marginal_cost: p.marginal_cost,
            tau_h: p.threshold,
            total_samples: p.total_samples,
            monetized: p.monetized.iter().map(|&g| labels[g].clone()).collect(),
            groups,
            utilities: (&outcome.utilities).into(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("group,price,rho,kappa,gamma,produced,monetized\n");
        for r in &self.groups {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                r.group,
                opt(r.price),
                num(r.rho),
                num(r.kappa),
                num(r.gamma),
                num(r.produced),
                r.monetized
            );
        }
        let _ = writeln!(
            s,
            "\nkey,value\nformed,{}\nmarginal_cost,{}\ntau_h,{}\ntotal_samples,{}\nmonetized,{}\n",
            self.formed,
            num(self.marginal_cost),
            num(self.tau_h),
            num(self.total_samples),
            self.monetized.join(" ")
        );
        utility_table(&mut s, &self.utilities);
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonGroupRow {
    pub group: String,
    pub gamma: f64,
    pub baseline_produced: f64,
    pub intervention_produced: f64,
    /// Intervention minus baseline production.
    pub data_change: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AgentRatio {
    pub agent: &'static str,
    pub index: usize,
    pub baseline: f64,
    pub intervention: f64,
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub baseline_formed_groups: Vec<String>,
    pub intervention_formed: bool,
    pub backfired: bool,
    pub groups: Vec<ComparisonGroupRow>,
    pub agents: Vec<AgentRatio>,
}

impl ComparisonReport {
    pub fn new(
        config: &MarketConfig,
        base: &BaselineOutcome,
        fair: &InterventionOutcome,
        formation: &FormationReport,
    ) -> Self {
        let labels = config.groups.labels();
        let groups = labels
            .iter()
            .enumerate()
            .map(|(g, label)| ComparisonGroupRow {
                group: label.clone(),
                gamma: fair.target.get(g),
                baseline_produced: base.produced.get(g),
                intervention_produced: fair.produced.get(g),
                data_change: fair.produced.get(g) - base.produced.get(g),
            })
            .collect();
        let ratio = |b: f64, f: f64| (b != 0.0).then(|| f / b);
        let (bu, fu) = (&base.utilities, &fair.utilities);
        let mut agents = vec![AgentRatio {
            agent: "marketplace",
            index: 0,
            baseline: bu.marketplace,
            intervention: fu.marketplace,
            ratio: ratio(bu.marketplace, fu.marketplace),
        }];
        for (agent, b, f) in [("seller", &bu.sellers, &fu.sellers), ("buyer", &bu.buyers, &fu.buyers)] {
            agents.extend(b.iter().zip(f).enumerate().map(|(index, (&b, &f))| AgentRatio {
                agent,
                index,
                baseline: b,
                intervention: f,
                ratio: ratio(b, f),
            }));
        }
        Self {
            baseline_formed_groups: formation.baseline_formed_groups.iter().map(|&g| labels[g].clone()).collect(),
            intervention_formed: formation.intervention_formed,
            backfired: formation.backfired,
            groups,
            agents,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("group,gamma,baseline_produced,intervention_produced,data_change\n");
        for r in &self.groups {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.group,
                num(r.gamma),
                num(r.baseline_produced),
                num(r.intervention_produced),
                num(r.data_change)
            );
        }
        s.push_str("\nagent,index,baseline_utility,intervention_utility,ratio\n");
        for a in &self.agents {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                a.agent,
                a.index,
                num(a.baseline),
                num(a.intervention),
                opt(a.ratio)
            );
        }
        let _ = writeln!(
            s,
            "\nkey,value\nbaseline_formed_groups,{}\nintervention_formed,{}\nbackfired,{}",
            self.baseline_formed_groups.join(" "),
            self.intervention_formed,
            self.backfired
        );
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub rho: Vec<f64>,
    pub baseline_formed: bool,
    pub intervention_formed: bool,
    pub baseline_production: f64,
    pub intervention_production: f64,
    pub ur_marketplace: Option<f64>,
    pub ur_sellers: Vec<Option<f64>>,
    pub ur_buyer_min: Option<f64>,
    pub ur_buyer_mean: Option<f64>,
}

impl From<&RatioPoint> for SweepRow {
    fn from(p: &RatioPoint) -> Self {
        Self {
            n: p.n,
            rho: p.rho.clone(),
            baseline_formed: p.baseline_formed,
            intervention_formed: p.intervention_formed,
            baseline_production: p.baseline_production,
            intervention_production: p.intervention_production,
            ur_marketplace: p.marketplace.and_then(finite),
            ur_sellers: p.sellers.iter().map(|r| r.and_then(finite)).collect(),
            ur_buyer_min: p.buyers_min.and_then(finite),
            ur_buyer_mean: p.buyers_mean.and_then(finite),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AmortizationVerdicts {
    pub marketplace: &'static str,
    pub sellers: &'static str,
    pub buyers: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub groups: Vec<String>,
    pub rows: Vec<SweepRow>,
    pub tolerance: f64,
    pub amortization: AmortizationVerdicts,
}

impl SweepReport {
    pub fn new(config: &MarketConfig, trace: &RatioTrace, report: &AmortizationReport, tolerance: f64) -> Self {
        Self {
            groups: config.groups.labels().to_vec(),
            rows: trace.points.iter().map(SweepRow::from).collect(),
            tolerance,
            amortization: AmortizationVerdicts {
                marketplace: verdict(report.marketplace),
                sellers: verdict(report.sellers),
                buyers: verdict(report.buyers),
            },
        }
    }

    pub fn to_csv(&self, sellers: usize) -> String {
        let mut s = String::from("n,baseline_formed,intervention_formed");
        for g in &self.groups {
            let _ = write!(s, ",rho_{g}");
        }
        s.push_str(",baseline_production,intervention_production,ur_marketplace");
        for j in 0..sellers {
            let _ = write!(s, ",ur_seller_{j}");
        }
        s.push_str(",ur_buyer_min,ur_buyer_mean\n");
        for r in &self.rows {
            let _ = write!(s, "{},{},{}", r.n, r.baseline_formed, r.intervention_formed);
            for x in &r.rho {
                let _ = write!(s, ",{}", num(*x));
            }
            let _ = write!(
                s,
                ",{},{},{}",
                num(r.baseline_production),
                num(r.intervention_production),
                opt(r.ur_marketplace)
            );
            for x in &r.ur_sellers {
                let _ = write!(s, ",{}", opt(*x));
            }
            let _ = writeln!(s, ",{},{}", opt(r.ur_buyer_min), opt(r.ur_buyer_mean));
        }
        let a = &self.amortization;
        let _ = writeln!(
            s,
            "\nsummary,tolerance,marketplace,sellers,buyers\namortization,{},{},{},{}",
            num(self.tolerance),
            a.marketplace,
            a.sellers,
            a.buyers
        );
        s
    }
}
