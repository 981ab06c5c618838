//! Executable checks of structural facts about graphs with a determining set
//! of size two, and corpus scans for the cost bound `2 <= ρ(G) <= 4` on
//! graphs with `D(G) = Det(G) = 2`.
//!
//! Every check is a universally quantified statement over the explicit
//! element list: if some element matches a hypothesis pattern, no element
//! may match the forbidden pattern. Violations carry the offending elements
//! so they can be re-verified independently.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::automorphism::{automorphism_group, automorphism_group_with, is_automorphism, AutConfig};
use crate::equivalence::{compare_groups, distinguishably_equivalent, Verdict};
use crate::error::{Error, Result};
use crate::family::{generate_family, string_coloring_class, FamilyKind, FamilySpec};
use crate::graph::Graph;
use crate::graph6::encode_graph6;
use crate::group::PermGroup;
use crate::metrics::{
    cost_number_in, determining_number_in, distinguishing_number_in, is_determining_set, is_distinguishing,
    is_distinguishing_class, Coloring, SearchBudget,
};
use crate::perm::Permutation;
use crate::report::{analyze_with, AnalyzeOptions, Rho, SymmetryReport};

/// One of the per-pair structural checks, for a determining pair `{x, y}`.
///
/// Cycle patterns below use `(a b)(c)` for "swaps `a` and `b`, fixes `c`"
/// and `(a b c)` for `a -> b -> c -> a`; other points are unconstrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// No non-identity element fixes both `x` and `y`.
    PairStabilizer,
    /// Elements containing `(x y)`, `(x v)(y)` or `(y v)(x)` have only
    /// 2-cycles and fixed points.
    SwapInvolutive,
    /// At most one element swaps `x` and `y`.
    UniqueSwap,
    /// Given `(x y)(d1 d2)…` and `(x d1)(y)…`, neither `(x y d1)…` nor
    /// `(x d1 y)…` occurs.
    NoPairThreeCycle,
    /// Given `(x y)(d1 d2)…` and `(x d1)(y)…`, no `(y d1)(x)…` occurs.
    NoOppositeTransposition,
    /// Given `(x y)` with at least two further 2-cycles and `(x di)(y)…`,
    /// no 3-cycle through `x` or `y` and two of those points occurs.
    NoOuterThreeCycle,
    /// Given `(x y)(d1 d2)…`: `(x d1)(y)…` occurs iff `(y d2)(x)…` does.
    ConjugateTranspositions,
    /// Given `(x d1)(y)…` and `(x d2)(y)…`, no `(x d1)(y)(d2)…` occurs.
    PartnerMoved,
    /// With `D = Det = 2`, the bare transposition `(x y)` is not an automorphism.
    NoBareSwap,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::PairStabilizer,
        Check::SwapInvolutive,
        Check::UniqueSwap,
        Check::NoPairThreeCycle,
        Check::NoOppositeTransposition,
        Check::NoOuterThreeCycle,
        Check::ConjugateTranspositions,
        Check::PartnerMoved,
        Check::NoBareSwap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::PairStabilizer => "pair_stabilizer",
            Check::SwapInvolutive => "swap_involutive",
            Check::UniqueSwap => "unique_swap",
            Check::NoPairThreeCycle => "no_pair_three_cycle",
            Check::NoOppositeTransposition => "no_opposite_transposition",
            Check::NoOuterThreeCycle => "no_outer_three_cycle",
            Check::ConjugateTranspositions => "conjugate_transpositions",
            Check::PartnerMoved => "partner_moved",
            Check::NoBareSwap => "no_bare_swap",
        }
    }

    /// Evaluates the check over an element list. Returns the number of
    /// hypothesis instances examined and, on failure, the offending elements.
    fn evaluate(self, elements: &[Permutation], x: usize, y: usize) -> (usize, Option<Vec<Permutation>>) {
        match self {
            Check::PairStabilizer => pair_stabilizer(elements, x, y),
            Check::SwapInvolutive => swap_involutive(elements, x, y),
            Check::UniqueSwap => unique_swap(elements, x, y),
            Check::NoPairThreeCycle => no_pair_three_cycle(elements, x, y),
            Check::NoOppositeTransposition => no_opposite_transposition(elements, x, y),
            Check::NoOuterThreeCycle => no_outer_three_cycle(elements, x, y),
            Check::ConjugateTranspositions => conjugate_transpositions(elements, x, y),
            Check::PartnerMoved => partner_moved(elements, x, y),
            Check::NoBareSwap => no_bare_swap(elements, x, y),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn swaps(p: &Permutation, a: usize, b: usize) -> bool {
    p.apply(a) == b && p.apply(b) == a
}

/// `(a b)(c)`.
fn transposes_fixing(p: &Permutation, a: usize, b: usize, c: usize) -> bool {
    swaps(p, a, b) && p.fixes(c)
}

/// `(a b c)`.
fn three_cycle(p: &Permutation, a: usize, b: usize, c: usize) -> bool {
    p.apply(a) == b && p.apply(b) == c && p.apply(c) == a
}

/// Points other than `x`, `y` lying on 2-cycles of `p`.
fn two_cycle_points(p: &Permutation, x: usize, y: usize) -> Vec<usize> {
    (0..p.degree()).filter(|&d| d != x && d != y && !p.fixes(d) && p.apply(p.apply(d)) == d).collect()
}

fn find(elements: &[Permutation], pred: impl Fn(&Permutation) -> bool) -> Option<&Permutation> {
    elements.iter().find(|p| pred(p))
}

fn pair_stabilizer(elements: &[Permutation], x: usize, y: usize) -> (usize, Option<Vec<Permutation>>) {
    let bad = find(elements, |p| !p.is_identity() && p.fixes(x) && p.fixes(y));
    (1, bad.map(|p| vec![p.clone()]))
}

fn swap_involutive(elements: &[Permutation], x: usize, y: usize) -> (usize, Option<Vec<Permutation>>) {
    let mut instances = 0;
    for p in elements {
        let hypothesis = swaps(p, x, y)
            || (p.fixes(y) && !p.fixes(x) && p.apply(p.apply(x)) == x)
            || (p.fixes(x) && !p.fixes(y) && p.apply(p.apply(y)) == y);
        if hypothesis {
            instances += 1;
            if p.cycle_type()[0] > 2 {
                return (instances, Some(vec![p.clone()]));
            }
        }
    }
    (instances, None)
}

fn unique_swap(elements: &[Permutation], x: usize, y: usize) -> (usize, Option<Vec<Permutation>>) {
    let swappers: Vec<&Permutation> = elements.iter().filter(|p| swaps(p, x, y)).collect();
    let bad = (swappers.len() > 1).then(|| swappers[..2].iter().map(|&p| p.clone()).collect());
    (swappers.len(), bad)
}

fn no_pair_three_cycle(elements: &[Permutation], x: usize, y: usize) -> (usize, Option<Vec<Permutation>>) {
    let mut instances = 0;
    for a in elements.iter().filter(|p| swaps(p, x, y)) {
        for d1 in two_cycle_points(a, x, y) {
            let Some(b) = find(elements, |p| transposes_fixing(p, x, d1, y)) else { continue };
            instances += 1;
            if let Some(c) = find(elements, |p| three_cycle(p, x, y, d1) || three_cycle(p, x, d1, y)) {
                return (instances, Some(vec![a.clone(), b.clone(), c.clone()]));
            }
        }
    }
    (instances, None)
}

fn no_opposite_transposition(elements: &[Permutation], x: usize, y: usize) -> (usize, Option<Vec<Permutation>>) {
    let mut instances = 0;
    for a in elements.iter().filter(|p| swaps(p, x, y)) {
        for d1 in two_cycle_points(a, x, y) {
            let Some(b) = find(elements, |p| transposes_fixing(p, x, d1, y)) else { continue };
            instances += 1;
            if let Some(c) = find(elements, |p| transposes_fixing(p, y, d1, x)) {
                return (instances, Some(vec![a.clone(), b.clone(), c.clone()]));
            }
        }
    }
    (instances, None)
}

fn no_outer_three_cycle(elements: &[Permutation], x: usize, y: usize) -> (usize, Option<Vec<Permutation>>) {
    let mut instances = 0;
    for a in elements.iter().filter(|p| swaps(p, x, y)) {
        let points = two_cycle_points(a, x, y);
        if points.len() < 4 {
            continue;
        }
        for &di in &points {
            let Some(b) = find(elements, |p| transposes_fixing(p, x, di, y)) else { continue };
            for &dj in points.iter().filter(|&&dj| dj != di) {
                instances += 1;
                let forbidden = |p: &Permutation| {
                    (p.fixes(y) && (three_cycle(p, x, di, dj) || three_cycle(p, x, dj, di)))
                        || (p.fixes(x) && (three_cycle(p, y, di, dj) || three_cycle(p, y, dj, di)))
                };
                if let Some(c) = find(elements, forbidden) {
                    return (instances, Some(vec![a.clone(), b.clone(), c.clone()]));
                }
            }
        }
    }
    (instances, None)
}

fn conjugate_transpositions(elements: &[Permutation], x: usize, y: usize) -> (usize, Option<Vec<Permutation>>) {
    let mut instances = 0;
    for a in elements.iter().filter(|p| swaps(p, x, y)) {
        for d1 in two_cycle_points(a, x, y) {
            let d2 = a.apply(d1);
            instances += 1;
            let left = find(elements, |p| transposes_fixing(p, x, d1, y));
            let right = find(elements, |p| transposes_fixing(p, y, d2, x));
            match (left, right) {
                (Some(b), None) | (None, Some(b)) => return (instances, Some(vec![a.clone(), b.clone()])),
                _ => {}
            }
        }
    }
    (instances, None)
}

fn partner_moved(elements: &[Permutation], x: usize, y: usize) -> (usize, Option<Vec<Permutation>>) {
    let n = elements.first().map_or(0, Permutation::degree);
    let partners: Vec<(usize, &Permutation)> = (0..n)
        .filter(|&d| d != x && d != y)
        .filter_map(|d| find(elements, |p| transposes_fixing(p, x, d, y)).map(|p| (d, p)))
        .collect();
    let mut instances = 0;
    for &(d1, _) in &partners {
        for &(d2, b2) in partners.iter().filter(|&&(d2, _)| d2 != d1) {
            instances += 1;
            if let Some(c) = find(elements, |p| transposes_fixing(p, x, d1, y) && p.fixes(d2)) {
                return (instances, Some(vec![b2.clone(), c.clone()]));
            }
        }
    }
    (instances, None)
}

fn no_bare_swap(elements: &[Permutation], x: usize, y: usize) -> (usize, Option<Vec<Permutation>>) {
    let bad = find(elements, |p| swaps(p, x, y) && p.support_size() == 2);
    (1, bad.map(|p| vec![p.clone()]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// The check's preconditions on the graph do not hold.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub outcome: Outcome,
    /// Hypothesis instances examined; zero means the check held vacuously.
    pub instances: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: Check,
    /// Offending automorphisms in cycle notation.
    pub witnesses: Vec<String>,
    #[serde(skip)]
    pub elements: Vec<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropReport {
    pub graph6: String,
    pub pair: (usize, usize),
    pub results: Vec<CheckResult>,
    pub violations: Vec<Violation>,
}

impl PropReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Every violation lists automorphisms of `g` that on their own already
    /// contradict the check.
    pub fn reverify(&self, g: &Graph) -> bool {
        let (x, y) = self.pair;
        self.violations.iter().all(|v| {
            v.elements.iter().all(|p| p.degree() == g.n() && is_automorphism(g, p))
                && v.check.evaluate(&with_identity(&v.elements), x, y).1.is_some()
        })
    }
}

fn with_identity(elements: &[Permutation]) -> Vec<Permutation> {
    let mut out = elements.to_vec();
    if let Some(p) = elements.first() {
        out.push(Permutation::identity(p.degree()));
    }
    out
}

/// Runs every check on the determining pair `{x, y}` of `g`.
pub fn check_prop_suite(g: &Graph, x: usize, y: usize) -> Result<PropReport> {
    let group = automorphism_group(g)?;
    let budget = SearchBudget::default();
    let d = distinguishing_number_in(&group, budget)?.0;
    let det = determining_number_in(&group, budget)?.0;
    let graph6 = encode_graph6(g).unwrap_or_else(|_| "-".to_string());
    check_prop_suite_in(&graph6, &group, x, y, Some(d) == Some(2) && det == 2)
}

/// As [`check_prop_suite`] over a precomputed group. `d2_det2` enables the
/// bare-swap check.
pub fn check_prop_suite_in(graph6: &str, group: &PermGroup, x: usize, y: usize, d2_det2: bool) -> Result<PropReport> {
    let n = group.degree();
    if x >= n || y >= n {
        return Err(Error::Index { index: x.max(y), n });
    }
    if x == y || !is_determining_set(group, &[x, y])? {
        return Err(Error::NotDeterminingPair(x, y));
    }
    let mut results = Vec::with_capacity(Check::ALL.len());
    let mut violations = Vec::new();
    for check in Check::ALL {
        if check == Check::NoBareSwap && !d2_det2 {
            results.push(CheckResult { check, outcome: Outcome::Skipped, instances: 0 });
            continue;
        }
        let (instances, bad) = check.evaluate(group.elements(), x, y);
        let outcome = if bad.is_some() { Outcome::Fail } else { Outcome::Pass };
        results.push(CheckResult { check, outcome, instances });
        if let Some(elements) = bad {
            violations.push(Violation {
                check,
                witnesses: elements.iter().map(ToString::to_string).collect(),
                elements,
            });
        }
    }
    Ok(PropReport { graph6: graph6.to_string(), pair: (x, y), results, violations })
}

/// Sampling parameters for [`check_restriction_lemma_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RestrictionOptions {
    /// Enumerate all colourings when there are at most this many.
    pub exhaustive_limit: u64,
    /// Random colourings drawn per colour count otherwise.
    pub samples: usize,
    pub seed: u64,
}

impl Default for RestrictionOptions {
    fn default() -> Self {
        RestrictionOptions { exhaustive_limit: 1 << 18, samples: 4096, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionReport {
    /// Distinguishing colourings of the whole graph that were restricted.
    pub tested: usize,
    pub exhaustive: bool,
    /// A distinguishing colouring of `g` whose restriction fails.
    pub counterexample: Option<Vec<usize>>,
}

impl RestrictionReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn check_restriction_lemma(g: &Graph, h: &[usize]) -> Result<bool> {
    Ok(check_restriction_lemma_with(g, h, RestrictionOptions::default())?.holds())
}

/// For a vertex set `h` whose members share their neighbourhood outside
/// `h`, checks that distinguishing colourings of `g` with `D(g)` and
/// `D(g) + 1` colours restrict to distinguishing colourings of `g[h]`.
pub fn check_restriction_lemma_with(g: &Graph, h: &[usize], options: RestrictionOptions) -> Result<RestrictionReport> {
    let n = g.n();
    let mut h = h.to_vec();
    h.sort_unstable();
    h.dedup();
    if h.is_empty() {
        return Err(Error::NotApplicable("empty vertex set".into()));
    }
    if let Some(&v) = h.iter().find(|&&v| v >= n) {
        return Err(Error::Index { index: v, n });
    }
    let inside = h.iter().fold(0u64, |acc, &v| acc | 1 << v);
    let outside = |v: usize| g.row(v) & !inside;
    if let Some(&v) = h.iter().find(|&&v| outside(v) != outside(h[0])) {
        return Err(Error::NotApplicable(format!(
            "vertices {} and {v} have different neighbours outside the set",
            h[0]
        )));
    }

    let aut_g = automorphism_group(g)?;
    let (h_graph, _) = g.induced_subgraph(&h)?;
    let aut_h = automorphism_group(&h_graph)?;
    let (d, witness) = distinguishing_number_in(&aut_g, SearchBudget::default())?;

    let mut report = RestrictionReport { tested: 0, exhaustive: true, counterexample: None };
    let mut test = |c: &Coloring| -> Result<bool> {
        if !is_distinguishing(&aut_g, c)? {
            return Ok(true);
        }
        report.tested += 1;
        if !is_distinguishing(&aut_h, &c.restrict(&h))? {
            report.counterexample = Some(c.colors().to_vec());
            return Ok(false);
        }
        Ok(true)
    };
    if !test(&witness)? {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for k in d..=d + 1 {
        let total = (k as u64).checked_pow(n as u32).filter(|&t| t <= options.exhaustive_limit);
        match total {
            Some(total) => {
                for code in 0..total {
                    let mut rest = code;
                    let colors = (0..n)
                        .map(|_| {
                            let c = (rest % k as u64) as usize;
                            rest /= k as u64;
                            c
                        })
                        .collect();
                    if !test(&Coloring::new(colors, k)?)? {
                        return Ok(report);
                    }
                }
            }
            None => {
                report.exhaustive = false;
                for _ in 0..options.samples {
                    let colors = (0..n).map(|_| rng.random_range(0..k)).collect();
                    if !test(&Coloring::new(colors, k)?)? {
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceCheck {
    /// Bijection conjugating `Aut(g1)` onto `Aut(g2)`.
    pub sigma: Permutation,
    pub d1: usize,
    pub d2: usize,
    pub coloring1: Vec<usize>,
    pub coloring2: Vec<usize>,
}

impl EquivalenceCheck {
    pub fn holds(&self) -> bool {
        self.d1 == self.d2
    }
}

/// Checks that two distinguishably equivalent graphs share their
/// distinguishing number. Fails with [`Error::NotEquivalent`] when no
/// conjugating bijection exists.
pub fn check_theorem_t1(g1: &Graph, g2: &Graph) -> Result<bool> {
    Ok(check_equivalence_invariance(g1, g2)?.holds())
}

/// [`check_theorem_t1`] with the full witnesses.
pub fn check_equivalence_invariance(g1: &Graph, g2: &Graph) -> Result<EquivalenceCheck> {
    let sigma = distinguishably_equivalent(g1, g2)?.ok_or(Error::NotEquivalent)?;
    let (d1, c1) = crate::metrics::distinguishing_number(g1)?;
    let (d2, c2) = crate::metrics::distinguishing_number(g2)?;
    Ok(EquivalenceCheck { sigma, d1, d2, coloring1: c1.colors().to_vec(), coloring2: c2.colors().to_vec() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub analyze: AnalyzeOptions,
    /// Run the pair checks on each `D = Det = 2` graph.
    pub props: bool,
    /// Check every determining pair instead of only the `Det` witness.
    pub all_pairs: bool,
    /// Node budget for the same-order equivalence evidence search.
    pub equivalence_budget: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { analyze: AnalyzeOptions::default(), props: true, all_pairs: false, equivalence_budget: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub index: usize,
    pub graph6: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanViolation {
    pub index: usize,
    pub graph6: String,
    pub kind: String,
    pub detail: String,
}

/// Result of one graph in a scan.
#[derive(Debug, Clone)]
pub struct GraphOutcome {
    pub index: usize,
    pub report: Option<SymmetryReport>,
    pub group: Option<PermGroup>,
    pub props: Vec<PropReport>,
    pub violations: Vec<ScanViolation>,
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub corpus_size: usize,
    pub analyzed: usize,
    pub skipped: Vec<Skipped>,
    pub det2_d2_count: usize,
    /// `ρ` over the `D = Det = 2` subset.
    pub rho_histogram: BTreeMap<usize, usize>,
    pub violations: Vec<ScanViolation>,
    pub rho4_witnesses: Vec<String>,
    /// Largest `ρ` seen for each value of `Det`.
    pub max_rho_by_det: BTreeMap<usize, usize>,
    pub prop_pairs_checked: usize,
    /// Hypothesis instances examined per check, summed over all pairs.
    pub prop_instances: BTreeMap<Check, usize>,
    /// Two graphs with equal vertex count and group order that are not
    /// distinguishably equivalent.
    pub same_order_non_equivalent: Option<(String, String)>,
    #[serde(skip)]
    pub reports: Vec<SymmetryReport>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Summary object; per-graph reports are left out.
    pub fn summary_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["passed"] = Value::Bool(self.passed());
        v
    }
}

fn scan_one(index: usize, g: &Graph, options: &ScanOptions) -> GraphOutcome {
    let graph6 = encode_graph6(g).unwrap_or_else(|_| "-".to_string());
    let mut out =
        GraphOutcome { index, report: None, group: None, props: Vec::new(), violations: Vec::new(), skipped: None };
    let analysis = match analyze_with(g, &options.analyze) {
        Ok(a) => a,
        Err(e) => {
            out.skipped = Some(e.to_string());
            return out;
        }
    };
    let report = analysis.report;
    let group = analysis.group;
    if report.flags().contains(&"unknown") {
        out.skipped = Some("search budget exceeded".into());
    }
    let mut violation = |kind: &str, detail: String| {
        out.violations.push(ScanViolation { index, graph6: graph6.clone(), kind: kind.into(), detail });
    };

    if let (Rho::Value(r), Some(set)) = (report.rho, report.rho_set.as_ref()) {
        if r > 0 {
            let complement: Vec<usize> = (0..g.n()).filter(|v| !set.contains(v)).collect();
            let ok = set.len() == r
                && 2 * r <= g.n()
                && is_distinguishing_class(&group, set).unwrap_or(false)
                && is_distinguishing_class(&group, &complement).unwrap_or(false);
            if !ok {
                violation("rho_witness", format!("class {set:?} or its complement is not a distinguishing class"));
            }
        }
    }

    if report.det2_d2 == Some(true) {
        match report.rho {
            Rho::Value(r) if (2..=4).contains(&r) => {}
            Rho::Unknown => {}
            other => violation("rho_bound", format!("rho = {other:?} outside 2..=4")),
        }
        if options.props {
            let pairs: Vec<(usize, usize)> = if options.all_pairs {
                let n = g.n();
                (0..n)
                    .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
                    .filter(|&(x, y)| is_determining_set(&group, &[x, y]).unwrap_or(false))
                    .collect()
            } else {
                let set = report.det_set.as_deref().unwrap_or_default();
                vec![(set[0], set[1])]
            };
            for (x, y) in pairs {
                match check_prop_suite_in(&graph6, &group, x, y, true) {
                    Ok(p) => {
                        for v in &p.violations {
                            violation("prop", format!("{} at pair ({x},{y}): {}", v.check, v.witnesses.join(" ")));
                        }
                        out.props.push(p);
                    }
                    Err(e) => violation("prop", format!("pair ({x},{y}): {e}")),
                }
            }
        }
    }
    out.report = Some(report);
    out.group = Some(group);
    out
}

/// Analyses every graph (in parallel on the current rayon pool) and
/// aggregates in input order, so the result does not depend on scheduling.
pub fn scan_corpus(graphs: &[Graph], options: &ScanOptions) -> TheoremReport {
    let outcomes: Vec<GraphOutcome> = graphs.par_iter().enumerate().map(|(i, g)| scan_one(i, g, options)).collect();
    aggregate(graphs, outcomes, options)
}

fn aggregate(graphs: &[Graph], outcomes: Vec<GraphOutcome>, options: &ScanOptions) -> TheoremReport {
    let mut out = TheoremReport { corpus_size: graphs.len(), ..TheoremReport::default() };
    for o in &outcomes {
        let graph6 = || encode_graph6(&graphs[o.index]).unwrap_or_else(|_| "-".to_string());
        if let Some(reason) = &o.skipped {
            out.skipped.push(Skipped { index: o.index, graph6: graph6(), reason: reason.clone() });
        }
        out.violations.extend(o.violations.iter().cloned());
        for p in &o.props {
            out.prop_pairs_checked += 1;
            for r in &p.results {
                *out.prop_instances.entry(r.check).or_default() += r.instances;
            }
        }
        let Some(report) = &o.report else { continue };
        out.analyzed += 1;
        if let (Some(det), Rho::Value(r)) = (report.det, report.rho) {
            let slot = out.max_rho_by_det.entry(det).or_default();
            *slot = (*slot).max(r);
        }
        if report.det2_d2 == Some(true) {
            out.det2_d2_count += 1;
            if let Rho::Value(r) = report.rho {
                *out.rho_histogram.entry(r).or_default() += 1;
                if r == 4 {
                    out.rho4_witnesses.push(report.graph6.clone());
                }
            }
        }
        out.reports.push(report.clone());
    }
    out.same_order_non_equivalent = same_order_evidence(&outcomes, options.equivalence_budget);
    out
}

/// First pair, in (vertex count, order, index) order, of graphs whose
/// groups have equal order but are not conjugate.
fn same_order_evidence(outcomes: &[GraphOutcome], budget: u64) -> Option<(String, String)> {
    let mut buckets: BTreeMap<(usize, usize), Vec<(&SymmetryReport, &PermGroup)>> = BTreeMap::new();
    for o in outcomes {
        if let (Some(r), Some(g)) = (&o.report, &o.group) {
            buckets.entry((r.n, r.aut_order)).or_default().push((r, g));
        }
    }
    for members in buckets.values() {
        for (i, (ra, ga)) in members.iter().enumerate() {
            for (rb, gb) in &members[i + 1..] {
                if let Ok(v) = compare_groups(ga, gb, budget) {
                    if !matches!(v, Verdict::Equivalent(_)) {
                        return Some((ra.graph6.clone(), rb.graph6.clone()));
                    }
                }
            }
        }
    }
    None
}

/// Checks on the clique-with-tails family member of parameter `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRecord {
    pub p: usize,
    pub n: usize,
    pub aut_order: usize,
    pub expected_det: usize,
    pub expected_rho: usize,
    /// Computed exactly for `p <= 2`, or when requested.
    pub det: Option<usize>,
    pub rho: Option<usize>,
    /// The clique minus one vertex is determining.
    pub clique_set_determining: bool,
    /// Random sets one smaller than `expected_det` that were rejected, out
    /// of those drawn.
    pub small_sets_rejected: Option<(usize, usize)>,
    pub string_class: Vec<usize>,
    pub string_class_distinguishing: bool,
    /// No tails: the graph is a single edge.
    pub degenerate: bool,
}

impl FamilyRecord {
    pub fn passed(&self) -> bool {
        self.det.is_none_or(|d| d == self.expected_det)
            && self.rho.is_none_or(|r| r == self.expected_rho)
            && self.clique_set_determining
            && self.small_sets_rejected.is_none_or(|(r, t)| r == t)
            && self.string_class.len() == self.expected_rho
            && self.string_class_distinguishing
    }
}

pub const FAMILY_RANDOM_SETS: usize = 10;

pub fn family_lower_bound_check(p: usize) -> Result<FamilyRecord> {
    family_lower_bound_check_with(p, false, SearchBudget::default(), 0)
}

/// For `p = 3` the exact numbers are only computed when `exact` is set,
/// and may run out of `budget`.
pub fn family_lower_bound_check_with(p: usize, exact: bool, budget: SearchBudget, seed: u64) -> Result<FamilyRecord> {
    if !(1..=3).contains(&p) {
        return Err(Error::Argument(format!("family check supports parameters 1..=3, got {p}")));
    }
    let g = generate_family(FamilySpec::new(FamilyKind::CliqueWithTails, p)?)?;
    let group = automorphism_group_with(&g, AutConfig::default())?;
    let clique = 1usize << p;
    let expected_det = clique - 1;
    let expected_rho = p << (p - 1);
    let clique_minus_one: Vec<usize> = (0..expected_det).collect();

    let (det, rho) = if p <= 2 || exact {
        let det = determining_number_in(&group, budget)?.0;
        let rho = cost_number_in(&group, det, budget)?.map(|(r, _)| r);
        (Some(det), rho.or(Some(usize::MAX)))
    } else {
        (None, None)
    };
    let small_sets_rejected = (p == 3).then(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rejected = (0..FAMILY_RANDOM_SETS)
            .filter(|_| {
                let set = sample(&mut rng, g.n(), expected_det - 1).into_vec();
                !is_determining_set(&group, &set).unwrap_or(true)
            })
            .count();
        (rejected, FAMILY_RANDOM_SETS)
    });
    let string_class = string_coloring_class(p);
    Ok(FamilyRecord {
        p,
        n: g.n(),
        aut_order: group.order(),
        expected_det,
        expected_rho,
        det,
        rho,
        clique_set_determining: is_determining_set(&group, &clique_minus_one)?,
        small_sets_rejected,
        string_class_distinguishing: is_distinguishing_class(&group, &string_class)?,
        string_class,
        degenerate: p == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_up_to;
    use crate::family::{generate_family, FamilyKind, FamilySpec};

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn family(kind: FamilyKind, p: usize) -> Graph {
        generate_family(FamilySpec::new(kind, p).unwrap()).unwrap()
    }

    fn net() -> Graph {
        g(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
    }

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn triangle_pair_stabilizer() {
        let r = check_prop_suite(&family(FamilyKind::Complete, 3), 0, 1).unwrap();
        assert_eq!(r.results[0], CheckResult { check: Check::PairStabilizer, outcome: Outcome::Pass, instances: 1 });
        assert!(r.passed());
    }

    #[test]
    fn net_clique_pairs() {
        for (x, y) in [(0, 1), (0, 2), (1, 2)] {
            let r = check_prop_suite(&net(), x, y).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.results.iter().all(|c| c.outcome != Outcome::Fail));
        }
    }

    #[test]
    fn four_cycle_adjacent_pair() {
        let r = check_prop_suite(&family(FamilyKind::Cycle, 4), 0, 1).unwrap();
        assert!(r.passed());
        // the reflection (0 1)(2 3) swaps the pair
        let swap = r.results.iter().find(|c| c.check == Check::UniqueSwap).unwrap();
        assert_eq!(swap.instances, 1);
        assert_eq!(r.results.last().unwrap().outcome, Outcome::Skipped);
    }

    #[test]
    fn rejects_non_determining_pair() {
        // the reflection through 0 and 2 fixes both
        assert_eq!(check_prop_suite(&family(FamilyKind::Cycle, 4), 0, 2).unwrap_err(), Error::NotDeterminingPair(0, 2));
        assert_eq!(
            check_prop_suite(&family(FamilyKind::Complete, 4), 0, 1).unwrap_err(),
            Error::NotDeterminingPair(0, 1)
        );
    }

    #[test]
    fn violations_carry_witnesses() {
        let two_swaps = [Permutation::identity(4), cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1], &[2, 3]])];
        let (count, bad) = Check::UniqueSwap.evaluate(&two_swaps, 0, 1);
        assert_eq!(count, 2);
        assert_eq!(bad.unwrap().len(), 2);

        let long = [cyc(5, &[&[0, 1], &[2, 3, 4]])];
        assert!(Check::SwapInvolutive.evaluate(&long, 0, 1).1.is_some());

        let three = [cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2]]), cyc(4, &[&[0, 1, 2]])];
        let bad = Check::NoPairThreeCycle.evaluate(&three, 0, 1).1.unwrap();
        assert_eq!(bad.len(), 3);

        let lonely = [cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2]])];
        assert!(Check::ConjugateTranspositions.evaluate(&lonely, 0, 1).1.is_some());
        let paired = [cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2]]), cyc(4, &[&[1, 3]])];
        assert!(Check::ConjugateTranspositions.evaluate(&paired, 0, 1).1.is_none());

        let partner = [cyc(4, &[&[0, 2]]), cyc(4, &[&[0, 3]])];
        assert!(Check::PartnerMoved.evaluate(&partner, 0, 1).1.is_some());
    }

    #[test]
    fn reverify_rejects_non_automorphisms() {
        let path = family(FamilyKind::Path, 3);
        let fake = Violation { check: Check::NoBareSwap, witnesses: vec![], elements: vec![cyc(3, &[&[0, 1]])] };
        let r = PropReport { graph6: String::new(), pair: (0, 1), results: vec![], violations: vec![fake] };
        assert!(!r.reverify(&path));
        let real = Violation { check: Check::NoBareSwap, witnesses: vec![], elements: vec![cyc(3, &[&[0, 2]])] };
        let r = PropReport { graph6: String::new(), pair: (0, 2), results: vec![], violations: vec![real] };
        assert!(r.reverify(&path));
    }

    #[test]
    fn restriction_examples() {
        let k4_pendant = g(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)]);
        let r = check_restriction_lemma_with(&k4_pendant, &[1, 2, 3], RestrictionOptions::default()).unwrap();
        assert!(r.holds() && r.exhaustive);
        assert!(r.tested > 0);
        assert!(check_restriction_lemma(&k4_pendant, &[0, 1, 2, 3, 4]).unwrap());
        assert!(matches!(check_restriction_lemma(&k4_pendant, &[0, 1]), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn restriction_over_small_graphs() {
        for graph in enumerate_up_to(5).unwrap() {
            let n = graph.n();
            for mask in 1u64..1 << n {
                let h: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                match check_restriction_lemma(&graph, &h) {
                    Ok(holds) => assert!(holds),
                    Err(Error::NotApplicable(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn equivalence_invariance() {
        let p4 = family(FamilyKind::Path, 4);
        assert!(check_theorem_t1(&p4, &p4.complement()).unwrap());
        assert!(check_theorem_t1(&p4, &p4.relabel(&[2, 0, 3, 1]).unwrap()).unwrap());
        let k3 = family(FamilyKind::Complete, 3);
        assert_eq!(check_theorem_t1(&family(FamilyKind::Path, 3), &k3), Err(Error::NotEquivalent));
    }

    #[test]
    fn scan_small_corpus() {
        let corpus = enumerate_up_to(5).unwrap();
        let report = scan_corpus(&corpus, &ScanOptions { all_pairs: true, ..ScanOptions::default() });
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.analyzed, corpus.len());
        assert!(report.skipped.is_empty());
        assert!(report.rho_histogram.keys().all(|r| (2..=4).contains(r)));
        assert_eq!(report.rho_histogram.values().sum::<usize>(), report.det2_d2_count);
        assert!(report.same_order_non_equivalent.is_some());
        assert!(report.prop_pairs_checked >= report.det2_d2_count);
    }

    #[test]
    fn scan_edge_cases() {
        let empty = scan_corpus(&[], &ScanOptions::default());
        assert_eq!(empty, TheoremReport::default());
        let c5 = scan_corpus(&[family(FamilyKind::Cycle, 5)], &ScanOptions::default());
        assert_eq!((c5.det2_d2_count, c5.violations.len()), (0, 0));
        assert_eq!(c5.max_rho_by_det, BTreeMap::new());
    }

    #[test]
    fn scan_records_skips() {
        let opts = ScanOptions {
            analyze: AnalyzeOptions {
                aut: AutConfig { max_vertices: 3, ..AutConfig::default() },
                budget: SearchBudget::default(),
            },
            ..ScanOptions::default()
        };
        let r = scan_corpus(&[family(FamilyKind::Path, 2), family(FamilyKind::Path, 5)], &opts);
        assert_eq!(r.analyzed, 1);
        assert_eq!(r.skipped.len(), 1);
        assert_eq!(r.skipped[0].index, 1);
    }

    #[test]
    fn family_records() {
        let one = family_lower_bound_check(1).unwrap();
        assert!(one.passed() && one.degenerate);
        assert_eq!((one.det, one.rho), (Some(1), Some(1)));
        let two = family_lower_bound_check(2).unwrap();
        assert!(two.passed());
        assert_eq!((two.det, two.rho, two.aut_order), (Some(3), Some(4), 24));
        let three = family_lower_bound_check(3).unwrap();
        assert!(three.passed(), "{three:?}");
        assert_eq!(three.string_class.len(), 12);
        assert_eq!(three.small_sets_rejected, Some((10, 10)));
        assert!(family_lower_bound_check(4).is_err());
    }
}
