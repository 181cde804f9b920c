//! Run configuration files.
//!
//! A config is a sectioned key/value text file:
//!
//! ```text
//! # two groups, two sellers
//! [market]
//! groups = a, b
//! sellers = 2
//!
//! [curve]
//! z = 1
//! alpha = 1
//! beta = 1
//!
//! [costs]
//! a = 1
//! b = 4
//!
//! [buyers]
//! row = 2, 1          # one buyer, one value per group
//! a = 9 x 1           # nine buyers valuing only group a, at 1
//!
//! [intervention]
//! target = uniform    # or explicit weights: 0.6, 0.4
//!
//! [growth]
//! rule = explicit     # replicate | arrivals | explicit
//! row = 2, 1
//! tail = 1, 0
//! probes = 100, 1000, 10000
//!
//! [output]
//! path = out.csv
//! format = csv
//!
//! [run]
//! seed = 7
//! ```
//!
//! Under `[growth]`, `replicate` takes one `row`, `explicit` takes any number
//! of `row`s and a `tail`, and `arrivals` takes `arrival = group, value,
//! every[, limit]` lines.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use fairmarket_core::growth::{Arrival, BuyerSequence, MarketStub};
use fairmarket_core::model::{BuyerPanel, CostStructure, GroupSet, LearningCurve, MarketConfig, TargetVector};

/// A config problem, located by line and field where possible.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(field) = &self.field {
            write!(f, "`{field}`: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

fn err(line: Option<usize>, field: Option<&str>, message: impl Into<String>) -> ConfigError {
    ConfigError { line, field: field.map(str::to_owned), message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// One `[buyers]` line: a full value row, or `count` buyers who value one group.
#[derive(Debug, Clone, PartialEq)]
pub enum BuyerEntry {
    Row(Vec<f64>),
    Compact { group: usize, count: usize, value: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum TargetSpec {
    Uniform,
    Weights(Vec<f64>),
}

impl TargetSpec {
    pub fn resolve(&self, groups: usize) -> Result<TargetVector, ConfigError> {
        match self {
            TargetSpec::Uniform => Ok(TargetVector::uniform(groups)),
            TargetSpec::Weights(w) => {
                if w.len() != groups {
                    return Err(err(None, Some("target"), format!("expected {groups} weights, found {}", w.len())));
                }
                TargetVector::new(w.clone()).map_err(|e| err(None, Some("target"), e.to_string()))
            }
        }
    }
}

impl FromStr for TargetSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "uniform" {
            Ok(TargetSpec::Uniform)
        } else {
            parse_list(s).map(TargetSpec::Weights)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSpec {
    pub sequence: BuyerSequence,
    pub probes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub groups: Vec<String>,
    pub sellers: usize,
    pub curve: LearningCurve,
    pub costs: Vec<f64>,
    pub buyers: Vec<BuyerEntry>,
    pub intervention: Option<TargetSpec>,
    pub growth: Option<GrowthSpec>,
    pub output: OutputSpec,
    pub seed: Option<u64>,
}

impl RunConfig {
    /// Config text describing an in-memory market, one `row` per buyer.
    pub fn from_market(market: &MarketConfig, target: Option<&TargetVector>) -> Self {
        Self {
            groups: market.groups.labels().to_vec(),
            sellers: market.sellers,
            curve: market.curve,
            costs: market.costs.kappa().to_vec(),
            buyers: market.buyers.rows().map(|r| BuyerEntry::Row(r.to_vec())).collect(),
            intervention: target.map(|t| TargetSpec::Weights(t.gamma().to_vec())),
            growth: None,
            output: OutputSpec::default(),
            seed: None,
        }
    }

    pub fn panel(&self) -> BuyerPanel {
        let g = self.groups.len();
        let mut flat = Vec::new();
        for entry in &self.buyers {
            match entry {
                BuyerEntry::Row(r) => flat.extend_from_slice(r),
                BuyerEntry::Compact { group, count, value } => {
                    for _ in 0..*count {
                        let mut r = vec![0.0; g];
                        r[*group] = *value;
                        flat.extend(r);
                    }
                }
            }
        }
        BuyerPanel::from_flat(g, flat).expect("validated at parse time")
    }

    pub fn stub(&self) -> MarketStub {
        MarketStub {
            groups: GroupSet::new(self.groups.clone()).expect("validated at parse time"),
            curve: self.curve,
            sellers: self.sellers,
            costs: CostStructure::new(self.costs.clone()).expect("validated at parse time"),
        }
    }

    pub fn market(&self) -> MarketConfig {
        self.stub().with_buyers(self.panel()).expect("validated at parse time")
    }

    pub fn target(&self) -> Option<Result<TargetVector, ConfigError>> {
        self.intervention.as_ref().map(|t| t.resolve(self.groups.len()))
    }

    /// Serialize back to the config format; `parse(to_text(c)) == c`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let list = |xs: &[f64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        let _ = writeln!(s, "[market]\ngroups = {}\nsellers = {}\n", self.groups.join(", "), self.sellers);
        let _ = writeln!(
            s,
            "[curve]\nz = {}\nalpha = {}\nbeta = {}\n",
            self.curve.z(),
            self.curve.alpha(),
            self.curve.beta()
        );
        s.push_str("[costs]\n");
        for (label, k) in self.groups.iter().zip(&self.costs) {
            let _ = writeln!(s, "{label} = {k}");
        }
        s.push_str("\n[buyers]\n");
        for entry in &self.buyers {
            match entry {
                BuyerEntry::Row(r) => {
                    let _ = writeln!(s, "row = {}", list(r));
                }
                BuyerEntry::Compact { group, count, value } => {
                    let _ = writeln!(s, "{} = {count} x {value}", self.groups[*group]);
                }
            }
        }
        if let Some(t) = &self.intervention {
            let text = match t {
                TargetSpec::Uniform => "uniform".to_owned(),
                TargetSpec::Weights(w) => list(w),
            };
            let _ = writeln!(s, "\n[intervention]\ntarget = {text}");
        }
        if let Some(g) = &self.growth {
            s.push_str("\n[growth]\n");
            match &g.sequence {
                BuyerSequence::Replicate(row) => {
                    let _ = writeln!(s, "rule = replicate\nrow = {}", list(row));
                }
                BuyerSequence::Arrivals { arrivals, .. } => {
                    s.push_str("rule = arrivals\n");
                    for a in arrivals {
                        let _ = write!(s, "arrival = {}, {}, {}", self.groups[a.group], a.value, a.every);
                        if let Some(l) = a.limit {
                            let _ = write!(s, ", {l}");
                        }
                        s.push('\n');
                    }
                }
                BuyerSequence::Explicit { rows, tail } => {
                    s.push_str("rule = explicit\n");
                    for r in rows {
                        let _ = writeln!(s, "row = {}", list(r));
                    }
                    let _ = writeln!(s, "tail = {}", list(tail));
                }
            }
            let probes: Vec<String> = g.probes.iter().map(|n| n.to_string()).collect();
            let _ = writeln!(s, "probes = {}", probes.join(", "));
        }
        if self.output != OutputSpec::default() {
            s.push_str("\n[output]\n");
            if let Some(p) = &self.output.path {
                let _ = writeln!(s, "path = {}", p.display());
            }
            if let Some(f) = self.output.format {
                let _ = writeln!(s, "format = {f}");
            }
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "\n[run]\nseed = {seed}");
        }
        s
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>().map_err(|_| format!("`{t}` is not a number"))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Market,
    Curve,
    Costs,
    Buyers,
    Intervention,
    Growth,
    Output,
    Run,
}

impl Section {
    fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "market" => Section::Market,
            "curve" => Section::Curve,
            "costs" => Section::Costs,
            "buyers" => Section::Buyers,
            "intervention" => Section::Intervention,
            "growth" => Section::Growth,
            "output" => Section::Output,
            "run" => Section::Run,
            _ => return None,
        })
    }
}

/// A raw `key = value` line.
struct Entry {
    line: usize,
    key: String,
    value: String,
}

#[derive(Default)]
struct Raw {
    sections: Vec<(Section, usize, Vec<Entry>)>,
}

impl Raw {
    fn section(&self, s: Section) -> Option<(usize, &[Entry])> {
        self.sections.iter().find(|(k, _, _)| *k == s).map(|(_, l, e)| (*l, e.as_slice()))
    }
}

fn tokenize(text: &str) -> Result<Raw, ConfigError> {
    let mut raw = Raw::default();
    for (idx, line) in text.lines().enumerate() {
        let n = idx + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| err(Some(n), None, "unterminated section header"))?
                .trim();
            let section =
                Section::parse(name).ok_or_else(|| err(Some(n), None, format!("unknown section [{name}]")))?;
            if raw.section(section).is_some() {
                return Err(err(Some(n), None, format!("section [{name}] appears twice")));
            }
            raw.sections.push((section, n, Vec::new()));
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| err(Some(n), None, "expected `key = value`"))?;
        let current = raw
            .sections
            .last_mut()
            .ok_or_else(|| err(Some(n), None, "entry before any [section]"))?;
        current.2.push(Entry { line: n, key: key.trim().to_owned(), value: value.trim().to_owned() });
    }
    Ok(raw)
}

fn number<T: FromStr>(e: &Entry, what: &str) -> Result<T, ConfigError> {
    e.value.parse().map_err(|_| err(Some(e.line), Some(&e.key), format!("expected {what}, found `{}`", e.value)))
}

fn list_of(e: &Entry, len: usize) -> Result<Vec<f64>, ConfigError> {
    let v = parse_list(&e.value).map_err(|m| err(Some(e.line), Some(&e.key), m))?;
    if v.len() != len {
        return Err(err(Some(e.line), Some(&e.key), format!("expected {len} values, found {}", v.len())));
    }
    if let Some(x) = v.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(err(Some(e.line), Some(&e.key), format!("value {x} must be finite and nonnegative")));
    }
    Ok(v)
}

/// Key/value lookup that also rejects keys a section does not know.
fn keyed<'a>(entries: &'a [Entry], allowed: &[&str]) -> Result<Vec<&'a Entry>, ConfigError> {
    let mut seen: Vec<&str> = Vec::new();
    for e in entries {
        if !allowed.contains(&e.key.as_str()) {
            return Err(err(Some(e.line), Some(&e.key), format!("unknown key (expected one of: {})", allowed.join(", "))));
        }
        if seen.contains(&e.key.as_str()) {
            return Err(err(Some(e.line), Some(&e.key), "key given twice"));
        }
        seen.push(&e.key);
    }
    Ok(entries.iter().collect())
}

fn find<'a>(entries: &[&'a Entry], key: &str) -> Option<&'a Entry> {
    entries.iter().copied().find(|e| e.key == key)
}

fn required<'a>(entries: &[&'a Entry], key: &str, header: usize) -> Result<&'a Entry, ConfigError> {
    find(entries, key).ok_or_else(|| err(Some(header), Some(key), "missing required key"))
}

pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
    let raw = tokenize(text)?;

    let (mline, market) = raw.section(Section::Market).ok_or_else(|| err(None, None, "missing [market] section"))?;
    let market = keyed(market, &["groups", "sellers"])?;
    let ge = required(&market, "groups", mline)?;
    let groups: Vec<String> = ge.value.split(',').map(|s| s.trim().to_owned()).collect();
    if let Some(bad) = groups.iter().find(|g| g.is_empty() || g.contains(char::is_whitespace) || *g == "row") {
        return Err(err(Some(ge.line), Some("groups"), format!("invalid group label `{bad}`")));
    }
    GroupSet::new(groups.clone()).map_err(|e| err(Some(ge.line), Some("groups"), e.to_string()))?;
    let se = required(&market, "sellers", mline)?;
    let sellers: usize = number(se, "a positive integer")?;
    if sellers == 0 {
        return Err(err(Some(se.line), Some("sellers"), "need at least one seller"));
    }
    let index = |label: &str, e: &Entry| {
        groups
            .iter()
            .position(|g| g == label)
            .ok_or_else(|| err(Some(e.line), Some(&e.key), format!("unknown group `{label}`")))
    };

    let (cline, curve) = raw.section(Section::Curve).ok_or_else(|| err(None, None, "missing [curve] section"))?;
    let curve = keyed(curve, &["z", "alpha", "beta"])?;
    let z: f64 = number(required(&curve, "z", cline)?, "a number")?;
    let alpha: f64 = number(required(&curve, "alpha", cline)?, "a number")?;
    let beta: f64 = number(required(&curve, "beta", cline)?, "a number")?;
    let curve = LearningCurve::new(z, alpha, beta).map_err(|e| err(Some(cline), None, e.to_string()))?;

    let (kline, costs) = raw.section(Section::Costs).ok_or_else(|| err(None, None, "missing [costs] section"))?;
    let mut kappa = vec![None; groups.len()];
    for e in costs {
        let g = index(&e.key, e)?;
        if kappa[g].is_some() {
            return Err(err(Some(e.line), Some(&e.key), "cost given twice"));
        }
        let k: f64 = number(e, "a positive number")?;
        if !(k > 0.0 && k.is_finite()) {
            return Err(err(Some(e.line), Some(&e.key), "cost must be positive and finite"));
        }
        kappa[g] = Some(k);
    }
    let costs = kappa
        .iter()
        .zip(&groups)
        .map(|(k, label)| k.ok_or_else(|| err(Some(kline), Some(label), format!("missing cost for group `{label}`"))))
        .collect::<Result<Vec<f64>, _>>()?;

    let mut buyers = Vec::new();
    if let Some((_, entries)) = raw.section(Section::Buyers) {
        for e in entries {
            if e.key == "row" {
                buyers.push(BuyerEntry::Row(list_of(e, groups.len())?));
                continue;
            }
            let group = index(&e.key, e)?;
            let (count, value) = e
                .value
                .split_once('x')
                .ok_or_else(|| err(Some(e.line), Some(&e.key), "expected `count x value`"))?;
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| err(Some(e.line), Some(&e.key), format!("bad buyer count `{}`", count.trim())))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| err(Some(e.line), Some(&e.key), format!("bad buyer value `{}`", value.trim())))?;
            if !(value.is_finite() && value >= 0.0) {
                return Err(err(Some(e.line), Some(&e.key), "buyer value must be finite and nonnegative"));
            }
            buyers.push(BuyerEntry::Compact { group, count, value });
        }
    }

    let intervention = match raw.section(Section::Intervention) {
        Some((line, entries)) => {
            let entries = keyed(entries, &["target"])?;
            let e = required(&entries, "target", line)?;
            let spec: TargetSpec = e.value.parse().map_err(|m: String| err(Some(e.line), Some("target"), m))?;
            spec.resolve(groups.len()).map_err(|x| ConfigError { line: Some(e.line), ..x })?;
            Some(spec)
        }
        None => None,
    };

    let growth = match raw.section(Section::Growth) {
        Some((line, entries)) => Some(parse_growth(line, entries, &groups)?),
        None => None,
    };

    let mut output = OutputSpec::default();
    if let Some((_, entries)) = raw.section(Section::Output) {
        let entries = keyed(entries, &["path", "format"])?;
        output.path = find(&entries, "path").map(|e| PathBuf::from(&e.value));
        if let Some(e) = find(&entries, "format") {
            output.format = Some(e.value.parse().map_err(|m: String| err(Some(e.line), Some("format"), m))?);
        }
    }

    let seed = match raw.section(Section::Run) {
        Some((_, entries)) => {
            let entries = keyed(entries, &["seed"])?;
            find(&entries, "seed").map(|e| number(e, "an unsigned integer")).transpose()?
        }
        None => None,
    };

    Ok(RunConfig { groups, sellers, curve, costs, buyers, intervention, growth, output, seed })
}

fn parse_growth(header: usize, entries: &[Entry], groups: &[String]) -> Result<GrowthSpec, ConfigError> {
    let g = groups.len();
    let rule = entries
        .iter()
        .find(|e| e.key == "rule")
        .ok_or_else(|| err(Some(header), Some("rule"), "missing required key"))?;
    let mut rows = Vec::new();
    let mut tail = None;
    let mut arrivals = Vec::new();
    let mut probes = None;
    for e in entries {
        match e.key.as_str() {
            "rule" => {}
            "row" => rows.push(list_of(e, g)?),
            "tail" => tail = Some(list_of(e, g)?),
            "probes" => {
                let ns = e
                    .value
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| err(Some(e.line), Some("probes"), "expected positive integers"))?;
                if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(err(Some(e.line), Some("probes"), "probes must be strictly increasing"));
                }
                probes = Some(ns);
            }
            "arrival" => {
                let parts: Vec<&str> = e.value.split(',').map(str::trim).collect();
                if !(3..=4).contains(&parts.len()) {
                    return Err(err(Some(e.line), Some("arrival"), "expected `group, value, every[, limit]`"));
                }
                let group = groups
                    .iter()
                    .position(|l| l == parts[0])
                    .ok_or_else(|| err(Some(e.line), Some("arrival"), format!("unknown group `{}`", parts[0])))?;
                let value: f64 = parts[1]
                    .parse()
                    .ok()
                    .filter(|v: &f64| v.is_finite() && *v >= 0.0)
                    .ok_or_else(|| err(Some(e.line), Some("arrival"), format!("bad value `{}`", parts[1])))?;
                let every: usize = parts[2]
                    .parse()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| err(Some(e.line), Some("arrival"), format!("bad period `{}`", parts[2])))?;
                let limit = match parts.get(3) {
                    Some(l) => Some(
                        l.parse::<usize>()
                            .map_err(|_| err(Some(e.line), Some("arrival"), format!("bad limit `{l}`")))?,
                    ),
                    None => None,
                };
                arrivals.push(Arrival { group, value, every, limit });
            }
            _ => {
                return Err(err(
                    Some(e.line),
                    Some(&e.key),
                    "unknown key (expected one of: rule, row, tail, arrival, probes)",
                ))
            }
        }
    }
    let sequence = match rule.value.as_str() {
        "replicate" => {
            if rows.len() != 1 || tail.is_some() || !arrivals.is_empty() {
                return Err(err(Some(rule.line), Some("rule"), "replicate takes exactly one `row`"));
            }
            BuyerSequence::Replicate(rows.pop().expect("one row"))
        }
        "explicit" => {
            let tail = tail.ok_or_else(|| err(Some(rule.line), Some("tail"), "explicit needs a `tail` row"))?;
            if !arrivals.is_empty() {
                return Err(err(Some(rule.line), Some("rule"), "explicit does not take `arrival`"));
            }
            BuyerSequence::Explicit { rows, tail }
        }
        "arrivals" => {
            if arrivals.is_empty() || !rows.is_empty() || tail.is_some() {
                return Err(err(Some(rule.line), Some("rule"), "arrivals takes only `arrival` lines"));
            }
            BuyerSequence::Arrivals { groups: g, arrivals }
        }
        other => {
            return Err(err(
                Some(rule.line),
                Some("rule"),
                format!("unknown rule `{other}` (expected replicate, arrivals or explicit)"),
            ))
        }
    };
    Ok(GrowthSpec { sequence, probes: probes.unwrap_or_else(fairmarket_core::growth::default_probes) })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# backfire example
[market]
groups = a, b
sellers = 2

[curve]
z = 1
alpha = 1
beta = 1

[costs]
a = 1
b = 4

[buyers]
a = 9 x 1
b = 4 x 1
row = 2, 0.5

[intervention]
target = uniform
";

    #[test]
    fn parses_sample() {
        let c = parse(SAMPLE).unwrap();
        assert_eq!(c.groups, vec!["a", "b"]);
        assert_eq!(c.costs, vec![1.0, 4.0]);
        let p = c.panel();
        assert_eq!(p.len(), 14);
        assert_eq!(p.row(13), &[2.0, 0.5]);
        assert_eq!(c.target().unwrap().unwrap(), TargetVector::uniform(2));
    }

    #[test]
    fn round_trips() {
        let c = parse(SAMPLE).unwrap();
        assert_eq!(parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn missing_cost_names_group() {
        let text = SAMPLE.replace("b = 4\n", "");
        let e = parse(&text).unwrap_err();
        assert!(e.to_string().contains("missing cost for group `b`"), "{e}");
        assert_eq!(e.line, Some(11));
    }

    #[test]
    fn diagnostics_carry_line_and_field() {
        let e = parse(&SAMPLE.replace("sellers = 2", "sellers = two")).unwrap_err();
        assert_eq!((e.line, e.field.as_deref()), (Some(4), Some("sellers")));
        let e = parse(&SAMPLE.replace("row = 2, 0.5", "row = 2")).unwrap_err();
        assert!(e.to_string().contains("expected 2 values"));
        let e = parse(&SAMPLE.replace("[run]", "[nope]").replace("[intervention]", "[bogus]")).unwrap_err();
        assert!(e.to_string().contains("unknown section [bogus]"));
        let e = parse(&SAMPLE.replace("target = uniform", "target = 0.7, 0.7")).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("target"));
    }

    #[test]
    fn growth_rules() {
        let text = format!("{SAMPLE}\n[growth]\nrule = arrivals\narrival = a, 1, 1\narrival = b, 1, 1, 4\nprobes = 10, 100\n");
        let c = parse(&text).unwrap();
        let g = c.growth.as_ref().unwrap();
        assert_eq!(g.probes, vec![10, 100]);
        assert_eq!(g.sequence.panel(6).unwrap().column(1), vec![1.0, 1.0, 1.0, 1.0, 0.0, 0.0]);
        assert_eq!(parse(&c.to_text()).unwrap(), c);

        let bad = format!("{SAMPLE}\n[growth]\nrule = replicate\nrow = 1, 1\nprobes = 10, 5\n");
        assert!(parse(&bad).unwrap_err().to_string().contains("strictly increasing"));
    }
}
