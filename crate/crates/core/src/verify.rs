//! Exact stretch checks against BFS distances, and size ratios.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, weighted_sssp, EdgeSet, Emulator, Graph, Vertex, UNREACHABLE};
use crate::spanner::SourceSet;

/// Cap on violations listed in a report; the count is always exact.
pub const MAX_LISTED_VIOLATIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    AdjacentSV,
    NonAdjacentSV,
    AdjacentVV,
    NonAdjacentVV,
    ZZ,
}

impl PairClass {
    pub fn name(self) -> &'static str {
        match self {
            PairClass::AdjacentSV => "adjacent_sv",
            PairClass::NonAdjacentSV => "non_adjacent_sv",
            PairClass::AdjacentVV => "adjacent_vv",
            PairClass::NonAdjacentVV => "non_adjacent_vv",
            PairClass::ZZ => "zz",
        }
    }
}

/// `dist_H <= alpha * dist_G + beta`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub alpha: u64,
    pub beta: u64,
}

impl Bound {
    pub fn new(alpha: u64, beta: u64) -> Self {
        assert!(alpha >= 1);
        Bound { alpha, beta }
    }

    pub fn allows(self, dist_g: u64, dist_h: u64) -> bool {
        dist_h <= self.alpha * dist_g + self.beta
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeFormula {
    /// `k² n^{1+1/k}`
    Hybrid,
    /// `k² n^{1+ε/k}`
    SwMult,
    /// `k n^{1+(kε+1)/(2k+2)}`
    SwAdd,
    /// `n^{1+ε/2}`
    Emu2,
    /// `n^{1+ε/2}`
    Sw4,
}

impl FromStr for SizeFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hybrid" => SizeFormula::Hybrid,
            "swmult" => SizeFormula::SwMult,
            "swadd" => SizeFormula::SwAdd,
            "emu2" => SizeFormula::Emu2,
            "sw4" => SizeFormula::Sw4,
            other => return Err(Error::UnknownFormula(other.to_string())),
        })
    }
}

impl SizeFormula {
    pub fn evaluate(self, n: usize, k: usize, epsilon: f64) -> f64 {
        let n = n as f64;
        let k = k as f64;
        match self {
            SizeFormula::Hybrid => k * k * n.powf(1.0 + 1.0 / k),
            SizeFormula::SwMult => k * k * n.powf(1.0 + epsilon / k),
            SizeFormula::SwAdd => k * n.powf(1.0 + (k * epsilon + 1.0) / (2.0 * k + 2.0)),
            SizeFormula::Emu2 | SizeFormula::Sw4 => n.powf(1.0 + epsilon / 2.0),
        }
    }
}

/// `size` divided by the formula value.
pub fn size_report(size: usize, n: usize, formula: &str, k: usize, epsilon: f64) -> Result<f64> {
    let f: SizeFormula = formula.parse()?;
    Ok(size as f64 / f.evaluate(n, k, epsilon))
}

/// Bounds per pair class, plus what is needed to size the candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct StretchSpec {
    pub label: String,
    pub bounds: BTreeMap<PairClass, Bound>,
    /// Class whose bound is reported as the headline `alpha`/`beta`.
    pub headline: PairClass,
    pub formula: Option<SizeFormula>,
    pub k: usize,
    /// The candidate is a weighted emulator rather than a subgraph.
    pub emulator: bool,
}

impl StretchSpec {
    pub fn hybrid(k: usize) -> Self {
        let k64 = k as u64;
        StretchSpec {
            label: format!("hybrid:k={k}"),
            bounds: [
                (PairClass::AdjacentVV, Bound::new(2 * k64 - 1, 0)),
                (PairClass::NonAdjacentVV, Bound::new(k64, 0)),
            ]
            .into(),
            headline: PairClass::NonAdjacentVV,
            formula: Some(SizeFormula::Hybrid),
            k,
            emulator: false,
        }
    }

    pub fn sourcewise_mult(k: usize) -> Self {
        let k64 = k as u64;
        StretchSpec {
            label: format!("swmult:k={k}"),
            bounds: [
                (PairClass::AdjacentSV, Bound::new(2 * k64 - 1, 0)),
                (PairClass::NonAdjacentSV, Bound::new(2 * k64 - 2, 0)),
            ]
            .into(),
            headline: PairClass::NonAdjacentSV,
            formula: Some(SizeFormula::SwMult),
            k,
            emulator: false,
        }
    }

    /// `+beta` on every source-to-vertex pair.
    pub fn additive(beta: u64) -> Self {
        StretchSpec {
            label: format!("additive:beta={beta}"),
            bounds: [
                (PairClass::AdjacentSV, Bound::new(1, beta)),
                (PairClass::NonAdjacentSV, Bound::new(1, beta)),
            ]
            .into(),
            headline: PairClass::NonAdjacentSV,
            formula: if beta == 4 {
                Some(SizeFormula::Sw4)
            } else {
                Some(SizeFormula::SwAdd)
            },
            k: (beta as usize / 2).max(1),
            emulator: false,
        }
    }

    pub fn emulator(beta: u64) -> Self {
        StretchSpec {
            label: format!("emulator:beta={beta}"),
            formula: Some(SizeFormula::Emu2),
            emulator: true,
            ..Self::additive(beta)
        }
    }

    /// `+beta` between every pair of designated vertices.
    pub fn subset(beta: u64) -> Self {
        StretchSpec {
            label: format!("subset:beta={beta}"),
            bounds: [(PairClass::ZZ, Bound::new(1, beta))].into(),
            headline: PairClass::ZZ,
            formula: None,
            k: 1,
            emulator: false,
        }
    }

    pub fn needs_sources(&self) -> bool {
        self.bounds
            .keys()
            .any(|c| !matches!(c, PairClass::AdjacentVV | PairClass::NonAdjacentVV))
    }

    fn bound_for(&self, class: PairClass) -> Option<Bound> {
        self.bounds.get(&class).copied()
    }
}

impl FromStr for StretchSpec {
    type Err = Error;

    /// `hybrid:k=K`, `swmult:k=K`, `additive:beta=B`, `emulator:beta=B` or
    /// `subset:beta=B`, optionally followed by `,formula=ID`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let mut fields = BTreeMap::new();
        for part in rest.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            fields.insert(key.trim(), value.trim());
        }
        let int = |key: &str| -> Result<u64> {
            fields.get(key).ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        let mut spec = match kind {
            "hybrid" => {
                let k = int("k")?;
                if k < 2 {
                    return Err(bad());
                }
                StretchSpec::hybrid(k as usize)
            }
            "swmult" => {
                let k = int("k")?;
                if k < 2 {
                    return Err(bad());
                }
                StretchSpec::sourcewise_mult(k as usize)
            }
            "additive" => StretchSpec::additive(int("beta")?),
            "emulator" => StretchSpec::emulator(int("beta")?),
            "subset" => StretchSpec::subset(int("beta")?),
            _ => return Err(bad()),
        };
        if let Some(f) = fields.get("formula") {
            spec.formula = Some(f.parse()?);
        }
        Ok(spec)
    }
}

impl fmt::Display for StretchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Candidate distance above the allowed bound (or infinite).
    Upper,
    /// Emulator distance below the true distance.
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub u: Vertex,
    pub v: Vertex,
    pub dist_g: u64,
    /// `None` when the candidate disconnects the pair.
    pub dist_h: Option<u64>,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ClassSummary {
    pub alpha: u64,
    pub beta: u64,
    pub pairs: u64,
    /// `None` (JSON `null`) when some pair is disconnected in the candidate.
    pub max_mult: Option<f64>,
    pub max_add: Option<i64>,
    pub n_violations: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StretchReport {
    pub class: String,
    pub alpha: u64,
    pub beta: u64,
    pub max_mult: Option<f64>,
    pub max_add: Option<i64>,
    pub n_violations: u64,
    pub violations: Vec<Violation>,
    pub size: usize,
    pub bound_ratio: Option<f64>,
    pub classes: BTreeMap<&'static str, ClassSummary>,
    pub skipped_unreachable: u64,
}

impl StretchReport {
    pub fn ok(&self) -> bool {
        self.n_violations == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Default)]
struct Tally {
    pairs: u64,
    max_mult: f64,
    max_add: i64,
    disconnected: bool,
    violations: Vec<Violation>,
}

impl Tally {
    fn record(&mut self, u: Vertex, v: Vertex, dg: u64, dh: Option<u64>, bound: Bound) {
        self.pairs += 1;
        match dh {
            None => {
                self.disconnected = true;
                self.violations.push(Violation {
                    u,
                    v,
                    dist_g: dg,
                    dist_h: None,
                    kind: ViolationKind::Upper,
                });
            }
            Some(dh) => {
                self.max_mult = self.max_mult.max(dh as f64 / dg as f64);
                self.max_add = self.max_add.max(dh as i64 - dg as i64);
                if dh < dg {
                    self.violations.push(Violation {
                        u,
                        v,
                        dist_g: dg,
                        dist_h: Some(dh),
                        kind: ViolationKind::Lower,
                    });
                } else if !bound.allows(dg, dh) {
                    self.violations.push(Violation {
                        u,
                        v,
                        dist_g: dg,
                        dist_h: Some(dh),
                        kind: ViolationKind::Upper,
                    });
                }
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.pairs += other.pairs;
        self.max_mult = self.max_mult.max(other.max_mult);
        self.max_add = self.max_add.max(other.max_add);
        self.disconnected |= other.disconnected;
        self.violations.extend(other.violations);
    }
}

type Tallies = BTreeMap<PairClass, Tally>;

fn merge_tallies(mut a: (Tallies, u64), b: (Tallies, u64)) -> (Tallies, u64) {
    for (class, t) in b.0 {
        a.0.entry(class).or_default().merge(t);
    }
    (a.0, a.1 + b.1)
}

/// Which targets to pair with root `r`, each unordered pair once.
fn targets<'a>(
    spec: &StretchSpec,
    sources: Option<&'a SourceSet>,
    n: usize,
    r: Vertex,
) -> Box<dyn Iterator<Item = Vertex> + 'a> {
    if spec.bounds.contains_key(&PairClass::ZZ) {
        let s = sources.expect("checked");
        Box::new(s.as_slice().iter().copied().filter(move |&v| v > r))
    } else if spec.needs_sources() {
        let s = sources.expect("checked");
        Box::new((0..n as Vertex).filter(move |&v| v != r && !(s.contains(v) && v < r)))
    } else {
        Box::new(r + 1..n as Vertex)
    }
}

fn class_of(spec: &StretchSpec, dist_g: u64) -> PairClass {
    let adjacent = dist_g == 1;
    if spec.bounds.contains_key(&PairClass::ZZ) {
        PairClass::ZZ
    } else if spec.needs_sources() {
        if adjacent {
            PairClass::AdjacentSV
        } else {
            PairClass::NonAdjacentSV
        }
    } else if adjacent {
        PairClass::AdjacentVV
    } else {
        PairClass::NonAdjacentVV
    }
}

fn finish(
    spec: &StretchSpec,
    tallies: Tallies,
    skipped: u64,
    size: usize,
    bound_ratio: Option<f64>,
) -> StretchReport {
    let mut classes = BTreeMap::new();
    let mut all = Vec::new();
    let (mut max_mult, mut max_add, mut disconnected) = (0.0f64, 0i64, false);
    for (class, bound) in &spec.bounds {
        let t = tallies.get(class);
        let summary = match t {
            Some(t) => ClassSummary {
                alpha: bound.alpha,
                beta: bound.beta,
                pairs: t.pairs,
                max_mult: (!t.disconnected).then_some(t.max_mult),
                max_add: (!t.disconnected).then_some(t.max_add),
                n_violations: t.violations.len() as u64,
            },
            None => ClassSummary {
                alpha: bound.alpha,
                beta: bound.beta,
                max_mult: Some(0.0),
                max_add: Some(0),
                ..Default::default()
            },
        };
        classes.insert(class.name(), summary);
    }
    for (_, t) in tallies {
        max_mult = max_mult.max(t.max_mult);
        max_add = max_add.max(t.max_add);
        disconnected |= t.disconnected;
        all.extend(t.violations);
    }
    all.sort();
    let n_violations = all.len() as u64;
    all.truncate(MAX_LISTED_VIOLATIONS);
    let headline = spec
        .bound_for(spec.headline)
        .expect("headline class has a bound");
    StretchReport {
        class: spec.label.clone(),
        alpha: headline.alpha,
        beta: headline.beta,
        max_mult: (!disconnected).then_some(max_mult),
        max_add: (!disconnected).then_some(max_add),
        n_violations,
        violations: all,
        size,
        bound_ratio,
        classes,
        skipped_unreachable: skipped,
    }
}

fn roots(spec: &StretchSpec, sources: Option<&SourceSet>, n: usize) -> Result<Vec<Vertex>> {
    if spec.needs_sources() {
        let s = sources.ok_or_else(|| Error::MissingSources(spec.label.clone()))?;
        if s.as_slice().iter().any(|&v| v as usize >= n) {
            return Err(Error::InvalidParameter(
                "source id outside the graph".into(),
            ));
        }
        Ok(s.as_slice().to_vec())
    } else {
        Ok((0..n as Vertex).collect())
    }
}

fn ratio(spec: &StretchSpec, size: usize, n: usize, sources: Option<&SourceSet>) -> Option<f64> {
    let epsilon = sources.map_or(1.0, SourceSet::epsilon);
    spec.formula
        .map(|f| size as f64 / f.evaluate(n, spec.k, epsilon))
}

/// Checks a subgraph candidate against `spec` with exact BFS distances in
/// both graphs. Pairs disconnected in `g` are skipped and counted.
pub fn verify_spanner(
    g: &Graph,
    h: &EdgeSet,
    sources: Option<&SourceSet>,
    spec: &StretchSpec,
) -> Result<StretchReport> {
    g.check_subgraph(h)?;
    let hg = Graph::from_edge_set(g.n(), h);
    let roots = roots(spec, sources, g.n())?;
    let (tallies, skipped) = roots
        .par_iter()
        .map(|&r| {
            let dg = bfs_distances(g, r);
            let dh = bfs_distances(&hg, r);
            let mut tallies = Tallies::new();
            let mut skipped = 0;
            for v in targets(spec, sources, g.n(), r) {
                let d = dg[v as usize];
                if d == UNREACHABLE {
                    skipped += 1;
                    continue;
                }
                let class = class_of(spec, u64::from(d));
                let bound = spec.bound_for(class).expect("class has a bound");
                let e = dh[v as usize];
                let e = (e != UNREACHABLE).then_some(u64::from(e));
                tallies
                    .entry(class)
                    .or_default()
                    .record(r, v, u64::from(d), e, bound);
            }
            (tallies, skipped)
        })
        .reduce(|| (Tallies::new(), 0), merge_tallies);
    Ok(finish(
        spec,
        tallies,
        skipped,
        h.len(),
        ratio(spec, h.len(), g.n(), sources),
    ))
}

/// Checks `dist_G <= dist_H <= dist_G + beta` on every source-to-vertex pair,
/// with Dijkstra in the emulator.
pub fn verify_emulator(
    g: &Graph,
    h: &Emulator,
    sources: &SourceSet,
    beta: u64,
) -> Result<StretchReport> {
    if h.n() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "emulator has {} vertices, graph has {}",
            h.n(),
            g.n()
        )));
    }
    let spec = StretchSpec::emulator(beta);
    let (tallies, skipped) = sources
        .as_slice()
        .par_iter()
        .map(|&r| {
            let dg = bfs_distances(g, r);
            let dh = weighted_sssp(h, r);
            let mut tallies = Tallies::new();
            let mut skipped = 0;
            for v in targets(&spec, Some(sources), g.n(), r) {
                let d = dg[v as usize];
                if d == UNREACHABLE {
                    skipped += 1;
                    continue;
                }
                let class = class_of(&spec, u64::from(d));
                let e = dh[v as usize];
                let e = (e != u64::MAX).then_some(e);
                tallies.entry(class).or_default().record(
                    r,
                    v,
                    u64::from(d),
                    e,
                    Bound::new(1, beta),
                );
            }
            (tallies, skipped)
        })
        .reduce(|| (Tallies::new(), 0), merge_tallies);
    Ok(finish(
        &spec,
        tallies,
        skipped,
        h.m(),
        ratio(&spec, h.m(), g.n(), Some(sources)),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterPairFailure {
    pub from: Vertex,
    pub to: Vertex,
    pub dist_g: u64,
    pub dist_h: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CenterPairCheck {
    pub pairs: u64,
    pub exact_pairs: u64,
    pub failures: Vec<CenterPairFailure>,
}

impl CenterPairCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every connected `(a, b) ∈ from × to`: pairs within `ell` must keep
/// their distance exactly, farther pairs must satisfy
/// `dist_H <= slope * (dist_G + 1) - ell`.
pub fn check_center_pairs(
    g: &Graph,
    h: &Graph,
    from: &[Vertex],
    to: &[Vertex],
    ell: u64,
    slope: u64,
) -> CenterPairCheck {
    from.par_iter()
        .map(|&a| {
            let dg = bfs_distances(g, a);
            let dh = bfs_distances(h, a);
            let mut out = CenterPairCheck::default();
            for &b in to {
                let d = dg[b as usize];
                if d == UNREACHABLE {
                    continue;
                }
                let d = u64::from(d);
                let e = dh[b as usize];
                let e = (e != UNREACHABLE).then_some(u64::from(e));
                out.pairs += 1;
                let fine = if d <= ell {
                    out.exact_pairs += 1;
                    e == Some(d)
                } else {
                    e.is_some_and(|e| e + ell <= slope * (d + 1))
                };
                if !fine {
                    out.failures.push(CenterPairFailure {
                        from: a,
                        to: b,
                        dist_g: d,
                        dist_h: e,
                    });
                }
            }
            out
        })
        .reduce(CenterPairCheck::default, |mut a, b| {
            a.pairs += b.pairs;
            a.exact_pairs += b.exact_pairs;
            a.failures.extend(b.failures);
            a
        })
}
