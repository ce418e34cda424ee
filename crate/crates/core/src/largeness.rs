//! Windowed deciders for thickness, syndeticity, piecewise syndeticity,
//! fatness and the quotient-set largeness notions.
//!
//! Every result is a [`LargenessReport`] tagged with the window it was
//! computed on and how the computed value relates to the true one.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::cover::{CoverOutcome, SetCover};
use crate::error::{Error, Result};
use crate::graph::{
    has_clique, lex_least_clique_in, max_independent_set, max_kn_free_subset, BitGraph, Bits,
};
use crate::group::{
    enumerate_window, inverse_unchecked, left_div_unchecked, op_unchecked, right_div_unchecked,
    Element, GroupCtx, Limits, Window,
};
use crate::set::{complement, enumerate, FiniteSet, SetSpec, Side, FP_MAX_LEN};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Thick,
    Syndetic,
    ThicknessIndex,
    PiecewiseSyndetic,
    Fatness,
    KappaFat,
    FatRamsey,
    DeltaStar,
    IpStar,
    ThreeFatCover,
    Duality,
}

impl Predicate {
    pub const ALL: [Predicate; 11] = [
        Predicate::Thick,
        Predicate::Syndetic,
        Predicate::ThicknessIndex,
        Predicate::PiecewiseSyndetic,
        Predicate::Fatness,
        Predicate::KappaFat,
        Predicate::FatRamsey,
        Predicate::DeltaStar,
        Predicate::IpStar,
        Predicate::ThreeFatCover,
        Predicate::Duality,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Predicate::Thick => "thick",
            Predicate::Syndetic => "syndetic",
            Predicate::ThicknessIndex => "thickness_index",
            Predicate::PiecewiseSyndetic => "piecewise_syndetic",
            Predicate::Fatness => "fatness",
            Predicate::KappaFat => "kappa_fat",
            Predicate::FatRamsey => "fat_ramsey",
            Predicate::DeltaStar => "delta_star",
            Predicate::IpStar => "ip_star",
            Predicate::ThreeFatCover => "three_fat_cover",
            Predicate::Duality => "duality",
        }
    }

    pub fn parse(s: &str) -> Result<Predicate> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.as_str() == s.trim())
            .ok_or_else(|| Error::Unknown {
                kind: "predicate",
                name: s.to_string(),
                available: Predicate::ALL
                    .iter()
                    .map(|p| p.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a reported value relates to the exact value on the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    ExactOnWindow,
    LowerBound,
    UpperBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Certificate {
    Element(Element),
    Set(FiniteSet),
    Sequence(Vec<Element>),
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Element(g) => write!(f, "{g}"),
            Certificate::Set(s) => write!(f, "{s}"),
            Certificate::Sequence(seq) => {
                f.write_str("(")?;
                for (i, g) in seq.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LargenessReport {
    pub predicate: Predicate,
    pub set: String,
    pub family: String,
    pub window: Window,
    /// `None` when the search could not settle the question.
    pub decided: Option<bool>,
    pub value: Option<u64>,
    pub witness: Option<Certificate>,
    pub counterexample: Option<Certificate>,
    pub exactness: Exactness,
    pub notes: Vec<String>,
    pub nodes: u64,
}

impl LargenessReport {
    fn new(predicate: Predicate, a: &SetSpec, w: &Window) -> Self {
        LargenessReport {
            predicate,
            set: a.name.clone(),
            family: a.ctx.name().to_string(),
            window: *w,
            decided: None,
            value: None,
            witness: None,
            counterexample: None,
            exactness: Exactness::ExactOnWindow,
            notes: Vec::new(),
            nodes: 0,
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    /// Decided reports carry exactly one certificate.
    pub fn is_well_formed(&self) -> bool {
        match self.decided {
            Some(_) => self.witness.is_some() != self.counterexample.is_some(),
            None => true,
        }
    }

    pub fn holds(&self) -> bool {
        self.decided == Some(true)
    }

    pub fn witness_set(&self) -> Option<&FiniteSet> {
        match &self.witness {
            Some(Certificate::Set(s)) => Some(s),
            _ => None,
        }
    }

    pub fn counterexample_set(&self) -> Option<&FiniteSet> {
        match &self.counterexample {
            Some(Certificate::Set(s)) => Some(s),
            _ => None,
        }
    }
}

fn window_elements(a: &SetSpec, w: &Window, limits: &Limits) -> Result<Vec<Element>> {
    w.check(a.ctx)?;
    enumerate_window(a.ctx, w, limits)
}

// ---------------------------------------------------------------------------
// Quotient graph
// ---------------------------------------------------------------------------

/// Window elements joined when both `x^-1 y` and `y^-1 x` lie in `A`: the
/// two-element sets `D` with `D^-1 D ⊆ A ∪ {e}`.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    pub vertices: FiniteSet,
    pub graph: BitGraph,
    pub set: String,
    pub window: Window,
}

impl QuotientGraph {
    pub fn build(a: &SetSpec, w: &Window, limits: &Limits) -> Result<Self> {
        let elems = window_elements(a, w, limits)?;
        let graph = BitGraph::from_fn(elems.len(), |i, j| {
            a.contains(&left_div_unchecked(&elems[i], &elems[j]))
                && a.contains(&left_div_unchecked(&elems[j], &elems[i]))
        });
        Ok(QuotientGraph {
            vertices: FiniteSet::from_sorted(a.ctx, elems),
            graph,
            set: a.name.clone(),
            window: *w,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn subset(&self, idx: &[usize]) -> FiniteSet {
        let v = self.vertices.elements();
        FiniteSet::from_sorted(
            self.vertices.ctx(),
            idx.iter().map(|&i| v[i].clone()).collect(),
        )
    }

    /// DIMACS text with the set, window and vertex labels as comments.
    pub fn to_dimacs(&self) -> String {
        let mut comments = vec![
            format!("quotient graph of {}", self.set),
            format!("family {}", self.vertices.ctx()),
            format!("window {}", self.window),
            "edge {x,y} iff x^-1 y and y^-1 x are members".to_string(),
        ];
        for (i, g) in self.vertices.iter().enumerate() {
            comments.push(format!("v {} {}", i + 1, g));
        }
        self.graph.to_dimacs(&comments)
    }
}

// ---------------------------------------------------------------------------
// Thickness and syndeticity
// ---------------------------------------------------------------------------

/// The first `g ∈ w` in canonical order with `F g ⊆ A`.
pub fn is_thick_on(
    a: &SetSpec,
    f: &FiniteSet,
    w: &Window,
    limits: &Limits,
) -> Result<Option<Element>> {
    if f.ctx() != a.ctx {
        return Err(Error::mismatch(a.ctx, f.ctx()));
    }
    if f.is_empty() {
        return Ok(Some(a.ctx.identity()));
    }
    let elems = window_elements(a, w, limits)?;
    Ok(elems
        .into_iter()
        .find(|g| f.iter().all(|x| a.contains(&op_unchecked(x, g)))))
}

/// [`is_thick_on`] as a report: the translate as witness, or the probe `F`
/// as counterexample when no window element works.
pub fn thick_report(
    a: &SetSpec,
    f: &FiniteSet,
    w: &Window,
    limits: &Limits,
) -> Result<LargenessReport> {
    let mut rep = LargenessReport::new(Predicate::Thick, a, w);
    rep.note(format!("probe {f}"));
    match is_thick_on(a, f, w, limits)? {
        Some(g) => {
            rep.decided = Some(true);
            rep.witness = Some(Certificate::Element(g));
        }
        None => {
            rep.decided = Some(false);
            rep.counterexample = Some(Certificate::Set(f.clone()));
            rep.note("no translate by a window element lies inside the set");
        }
    }
    Ok(rep)
}

/// Least `k ≤ kmax` and lexicographically least `F ⊆ w`, `|F| = k`, with
/// `F A` covering `w.inner(pad)`.
pub fn syndeticity_index(
    a: &SetSpec,
    w: &Window,
    pad: usize,
    kmax: usize,
    limits: &Limits,
) -> Result<LargenessReport> {
    let elems = window_elements(a, w, limits)?;
    let inner = w.inner(pad);
    let universe: Vec<&Element> = elems.iter().filter(|g| inner.contains(g)).collect();
    let candidates: Vec<Bits> = elems
        .iter()
        .map(|f| {
            Bits::from_indices(
                universe.len(),
                universe
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| a.contains(&left_div_unchecked(f, u)))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    let mut rep = LargenessReport::new(Predicate::Syndetic, a, w);
    rep.note(format!("translates must cover the inner window {inner}"));

    let mut reach = Bits::new(universe.len());
    for c in &candidates {
        reach.union_with(c);
    }
    if let Some(missed) = (0..universe.len()).find(|&i| !reach.contains(i)) {
        rep.decided = Some(false);
        rep.counterexample = Some(Certificate::Element(universe[missed].clone()));
        rep.note("no translate by a window element reaches this point");
        return Ok(rep);
    }

    let mut sc = SetCover::new(universe.len(), candidates, limits.node_budget);
    let outcome = sc.solve(kmax);
    rep.nodes = sc.nodes();
    match outcome {
        CoverOutcome::Found { size, cover } => {
            rep.decided = Some(true);
            rep.value = Some(size as u64);
            rep.witness = Some(Certificate::Set(FiniteSet::from_sorted(
                a.ctx,
                cover.into_iter().map(|i| elems[i].clone()).collect(),
            )));
        }
        CoverOutcome::NoneUpTo { kmax } => {
            rep.value = Some(kmax as u64 + 1);
            rep.exactness = Exactness::LowerBound;
            rep.note(format!("no cover with at most {kmax} translates"));
        }
        CoverOutcome::Exhausted { checked_below } => {
            rep.value = Some(checked_below as u64);
            rep.exactness = Exactness::LowerBound;
            rep.note("node budget exhausted");
        }
    }
    Ok(rep)
}

/// Finite sets used to test thickness: every subset of `ground` with at
/// most `max_subset` elements, `ground` itself and any `extra` sets.
///
/// No finite family can stand in for all finite subsets of the group, so
/// thickness verdicts are relative to this family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeFamily {
    pub ground: Window,
    pub max_subset: usize,
    pub extra: Vec<FiniteSet>,
}

impl ProbeFamily {
    /// A radius-10 interval in `ℤ`, otherwise the radius-one ball (letters
    /// taken from `w`).
    pub fn standard(w: &Window) -> Self {
        let ground = match *w {
            Window::IntRange { .. } => Window::int(-10, 10),
            Window::BooleanBall {
                letter_lo,
                letter_hi,
                ..
            } => Window::boolean(1, letter_lo, letter_hi),
            Window::FreeBall { .. } => Window::free(1),
        };
        ProbeFamily {
            ground,
            max_subset: 2,
            extra: Vec::new(),
        }
    }

    pub fn probes(&self, ctx: GroupCtx, limits: &Limits) -> Result<Vec<FiniteSet>> {
        let ground = enumerate_window(ctx, &self.ground, limits)?;
        let mut out = vec![FiniteSet::from_sorted(ctx, ground.clone())];
        for e in &self.extra {
            if e.ctx() != ctx {
                return Err(Error::mismatch(ctx, e.ctx()));
            }
            out.push(e.clone());
        }
        for k in 1..=self.max_subset.min(ground.len()) {
            crate::group::for_each_combination(&ground, k, |c| {
                out.push(FiniteSet::from_sorted(ctx, c.to_vec()));
            });
        }
        out.sort_by(|x, y| {
            y.len()
                .cmp(&x.len())
                .then_with(|| x.elements().cmp(y.elements()))
        });
        out.dedup();
        Ok(out)
    }

    fn describe(&self) -> String {
        format!(
            "probes: {} and its subsets of size <= {}{}",
            self.ground,
            self.max_subset,
            if self.extra.is_empty() {
                String::new()
            } else {
                format!(" plus {} extra sets", self.extra.len())
            }
        )
    }
}

/// Parameters for thickness-index searches: translators `F` come from
/// `translators`, test sets from `probes`, and `g` ranges over the window
/// passed to the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThicknessSearch {
    pub translators: Window,
    pub probes: ProbeFamily,
    pub kmax: usize,
}

impl ThicknessSearch {
    pub fn standard(w: &Window, kmax: usize) -> Self {
        let translators = match *w {
            Window::IntRange { lo, hi } => Window::int(lo.max(-4), hi.min(4)),
            Window::BooleanBall {
                letter_lo,
                letter_hi,
                ..
            } => Window::boolean(1, letter_lo, letter_hi),
            Window::FreeBall { .. } => Window::free(1),
        };
        ThicknessSearch {
            translators,
            probes: ProbeFamily::standard(w),
            kmax,
        }
    }
}

/// Precomputed `p g` points and per-translator membership of `f A`.
struct ThickTable {
    n_g: usize,
    probes: Vec<Vec<usize>>,
    /// `[probe element][g]` → point index
    pg: Vec<Vec<usize>>,
    member: Vec<Bits>,
    order: Vec<usize>,
}

impl ThickTable {
    fn build(
        a: &SetSpec,
        gs: &[Element],
        translators: &[Element],
        probes: &[FiniteSet],
    ) -> ThickTable {
        let mut ids: HashMap<&Element, usize> = HashMap::new();
        let mut probe_elems: Vec<&Element> = Vec::new();
        let probes_idx: Vec<Vec<usize>> = probes
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| {
                        *ids.entry(x).or_insert_with(|| {
                            probe_elems.push(x);
                            probe_elems.len() - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let mut point_ids: HashMap<Element, usize> = HashMap::new();
        let mut points: Vec<Element> = Vec::new();
        let pg: Vec<Vec<usize>> = probe_elems
            .iter()
            .map(|p| {
                gs.iter()
                    .map(|g| {
                        let x = op_unchecked(p, g);
                        *point_ids.entry(x.clone()).or_insert_with(|| {
                            points.push(x);
                            points.len() - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let member = translators
            .iter()
            .map(|f| {
                Bits::from_indices(
                    points.len(),
                    points
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| a.contains(&left_div_unchecked(f, x)))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        ThickTable {
            n_g: gs.len(),
            order: (0..probes_idx.len()).collect(),
            probes: probes_idx,
            pg,
            member,
        }
    }

    fn passes(&self, union: &Bits, probe: &[usize]) -> bool {
        (0..self.n_g).any(|g| probe.iter().all(|&p| union.contains(self.pg[p][g])))
    }

    /// First failing probe; the failing probe moves to the front so that
    /// later candidates are rejected quickly.
    fn first_failure(&mut self, union: &Bits) -> Option<usize> {
        let pos =
            (0..self.order.len()).find(|&i| !self.passes(union, &self.probes[self.order[i]]))?;
        let probe = self.order.remove(pos);
        self.order.insert(0, probe);
        Some(probe)
    }

    fn union_of(&self, fs: &[usize]) -> Bits {
        let mut u = self.member[fs[0]].clone();
        for &f in &fs[1..] {
            u.union_with(&self.member[f]);
        }
        u
    }
}

/// Lexicographic index combinations with early exit.
fn search_combinations(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct ThickContext {
    translators: Vec<Element>,
    probes: Vec<FiniteSet>,
    table: ThickTable,
}

fn thick_context(
    a: &SetSpec,
    w: &Window,
    search: &ThicknessSearch,
    limits: &Limits,
) -> Result<ThickContext> {
    let gs = window_elements(a, w, limits)?;
    search.translators.check(a.ctx)?;
    let translators = enumerate_window(a.ctx, &search.translators, limits)?;
    let probes = search.probes.probes(a.ctx, limits)?;
    let table = ThickTable::build(a, &gs, &translators, &probes);
    Ok(ThickContext {
        translators,
        probes,
        table,
    })
}

fn thickness_search(
    ctx: &mut ThickContext,
    a: &SetSpec,
    w: &Window,
    search: &ThicknessSearch,
    limits: &Limits,
) -> LargenessReport {
    let mut rep = LargenessReport::new(Predicate::ThicknessIndex, a, w);
    rep.note(search.probes.describe());
    rep.note(format!("translators from {}", search.translators));
    let n = ctx.translators.len();
    let mut nodes = 0u64;
    let mut exhausted = false;
    for k in 1..=search.kmax.min(n) {
        let mut found = None;
        search_combinations(n, k, |fs| {
            nodes += 1;
            if nodes > limits.node_budget {
                exhausted = true;
                return true;
            }
            let u = ctx.table.union_of(fs);
            if ctx.table.first_failure(&u).is_none() {
                found = Some(fs.to_vec());
                return true;
            }
            false
        });
        if exhausted {
            rep.nodes = nodes;
            rep.value = Some(k as u64);
            rep.exactness = Exactness::LowerBound;
            rep.note("node budget exhausted");
            return rep;
        }
        if let Some(fs) = found {
            rep.nodes = nodes;
            rep.decided = Some(true);
            rep.value = Some(k as u64);
            rep.witness = Some(Certificate::Set(FiniteSet::from_sorted(
                a.ctx,
                fs.into_iter().map(|i| ctx.translators[i].clone()).collect(),
            )));
            return rep;
        }
    }
    rep.nodes = nodes;
    rep.value = Some(search.kmax as u64 + 1);
    rep.exactness = Exactness::LowerBound;
    rep.note(format!(
        "no set of at most {} translators passes every probe",
        search.kmax
    ));
    rep
}

/// Least `k` with some `F` of `k` translators making `F A` pass every
/// probe. Running out of `kmax` leaves the report undecided.
pub fn thickness_index(
    a: &SetSpec,
    w: &Window,
    search: &ThicknessSearch,
    limits: &Limits,
) -> Result<LargenessReport> {
    let mut ctx = thick_context(a, w, search, limits)?;
    Ok(thickness_search(&mut ctx, a, w, search, limits))
}

/// Thickness index with a decisive negative: `F A` grows with `F`, so if
/// even the full translator set fails a probe, no `F` passes.
pub fn is_piecewise_syndetic(
    a: &SetSpec,
    w: &Window,
    search: &ThicknessSearch,
    limits: &Limits,
) -> Result<LargenessReport> {
    let mut ctx = thick_context(a, w, search, limits)?;
    let all: Vec<usize> = (0..ctx.translators.len()).collect();
    let failing = if all.is_empty() {
        Some(0)
    } else {
        let u = ctx.table.union_of(&all);
        ctx.table.first_failure(&u)
    };
    if let Some(p) = failing {
        let mut rep = LargenessReport::new(Predicate::PiecewiseSyndetic, a, w);
        rep.note(search.probes.describe());
        rep.note(format!(
            "even all translators from {} leave this probe without a translate inside",
            search.translators
        ));
        rep.decided = Some(false);
        rep.counterexample = Some(Certificate::Set(ctx.probes[p].clone()));
        return Ok(rep);
    }
    let mut rep = thickness_search(&mut ctx, a, w, search, limits);
    rep.predicate = Predicate::PiecewiseSyndetic;
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Fatness
// ---------------------------------------------------------------------------

fn not_fat(rep: &mut LargenessReport, ctx: GroupCtx) {
    rep.decided = Some(false);
    rep.counterexample = Some(Certificate::Element(ctx.identity()));
    rep.note("the identity is not a member, and D^-1 D always contains it");
}

/// `α + 1` for the independence number `α` of the quotient graph.
///
/// A decided report carries a maximum independent set as counterexample:
/// `m - 1` elements with no good pair. The value can only grow on larger
/// windows.
pub fn fatness(a: &SetSpec, w: &Window, limits: &Limits) -> Result<LargenessReport> {
    let mut rep = LargenessReport::new(Predicate::Fatness, a, w);
    let qg = QuotientGraph::build(a, w, limits)?;
    if !a.contains(&a.ctx.identity()) {
        not_fat(&mut rep, a.ctx);
        return Ok(rep);
    }
    let mis = max_independent_set(&qg.graph, limits.node_budget);
    rep.nodes = mis.nodes;
    rep.value = Some(mis.size() as u64 + 1);
    rep.counterexample = Some(Certificate::Set(qg.subset(&mis.set)));
    rep.note("lower bound for the whole group");
    if !mis.exact {
        rep.exactness = Exactness::LowerBound;
        rep.note("node budget exhausted");
        rep.decided = None;
        rep.counterexample = None;
        rep.witness = Some(Certificate::Set(qg.subset(&mis.set)));
    } else if mis.size() == qg.len() {
        rep.decided = Some(false);
        rep.note("the whole window is independent");
    } else {
        rep.decided = Some(true);
    }
    Ok(rep)
}

/// Whether every `k`-subset of the window contains a good pair, i.e.
/// `α < k`. The certificate is an independent `k`-set when it fails and a
/// maximum independent set when it holds.
pub fn kappa_fat_check(
    a: &SetSpec,
    w: &Window,
    k: usize,
    limits: &Limits,
) -> Result<LargenessReport> {
    let mut rep = LargenessReport::new(Predicate::KappaFat, a, w);
    rep.value = Some(k as u64);
    let qg = QuotientGraph::build(a, w, limits)?;
    if k > qg.len() {
        return Err(Error::Precondition(format!(
            "window {w} has fewer than {k} elements"
        )));
    }
    if !a.contains(&a.ctx.identity()) {
        rep.decided = Some(false);
        rep.counterexample = Some(Certificate::Set(qg.subset(&(0..k).collect::<Vec<_>>())));
        rep.note("the identity is not a member, so no pair is good");
        return Ok(rep);
    }
    let comp = qg.graph.complement();
    let all = Bits::full(comp.len());
    let (found, nodes) = has_clique(&comp, &all, k, limits.node_budget);
    rep.nodes = nodes;
    match found {
        Some(true) => {
            let (set, n) = lex_least_clique_in(&comp, &all, k, limits.node_budget);
            rep.nodes += n;
            match set {
                Some(s) => {
                    rep.decided = Some(false);
                    rep.counterexample = Some(Certificate::Set(qg.subset(&s)));
                }
                None => {
                    rep.exactness = Exactness::LowerBound;
                    rep.note("node budget exhausted while extracting the certificate");
                }
            }
        }
        Some(false) => {
            let mis = max_independent_set(&qg.graph, limits.node_budget);
            rep.nodes += mis.nodes;
            rep.decided = Some(true);
            rep.witness = Some(Certificate::Set(qg.subset(&mis.set)));
        }
        None => {
            rep.exactness = Exactness::LowerBound;
            rep.note("node budget exhausted");
        }
    }
    Ok(rep)
}

/// Least `m` such that every `m`-subset of the window holds `n` elements
/// pairwise forming good pairs: one more than the largest subset whose
/// quotient graph has no `n`-clique.
pub fn fat_ramsey_m(a: &SetSpec, w: &Window, n: usize, limits: &Limits) -> Result<LargenessReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let mut rep = LargenessReport::new(Predicate::FatRamsey, a, w);
    let qg = QuotientGraph::build(a, w, limits)?;
    if !a.contains(&a.ctx.identity()) {
        not_fat(&mut rep, a.ctx);
        return Ok(rep);
    }
    if n == 1 {
        rep.value = Some(1);
        rep.decided = Some(true);
        rep.counterexample = Some(Certificate::Set(FiniteSet::empty(a.ctx)));
        return Ok(rep);
    }
    let r = max_kn_free_subset(&qg.graph, n, limits.node_budget);
    rep.nodes = r.nodes;
    rep.value = Some(r.size() as u64 + 1);
    let cert = Certificate::Set(qg.subset(&r.set));
    if !r.exact {
        rep.exactness = Exactness::LowerBound;
        rep.note("node budget exhausted");
        rep.witness = Some(cert);
    } else {
        rep.decided = Some(r.size() < qg.len());
        rep.counterexample = Some(cert);
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Quotient-set notions
// ---------------------------------------------------------------------------

/// Whether every one-to-one `k`-sequence from the window has a quotient
/// set meeting `A`. The counterexample is the lexicographically least
/// sequence whose quotient set misses `A`.
pub fn is_delta_star_k(
    a: &SetSpec,
    w: &Window,
    k: usize,
    side: Side,
    limits: &Limits,
) -> Result<LargenessReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let elems = window_elements(a, w, limits)?;
    let n = elems.len();
    // after[x]: elements y that may follow x
    let after: Vec<Bits> = (0..n)
        .map(|x| {
            Bits::from_indices(
                n,
                (0..n).filter(|&y| {
                    y != x && {
                        let q = match side {
                            Side::Left => left_div_unchecked(&elems[x], &elems[y]),
                            Side::Right => right_div_unchecked(&elems[y], &elems[x]),
                        };
                        !a.contains(&q)
                    }
                }),
            )
        })
        .collect();

    struct Dfs<'a> {
        after: &'a [Bits],
        k: usize,
        seq: Vec<usize>,
        nodes: u64,
        budget: u64,
        exhausted: bool,
    }
    impl Dfs<'_> {
        fn go(&mut self, cand: &Bits) -> bool {
            if self.seq.len() == self.k {
                return true;
            }
            if cand.count() < self.k - self.seq.len() {
                return false;
            }
            for y in cand.iter() {
                self.nodes += 1;
                if self.nodes > self.budget {
                    self.exhausted = true;
                    return false;
                }
                self.seq.push(y);
                let mut next = cand.and(&self.after[y]);
                next.remove(y);
                if self.go(&next) {
                    return true;
                }
                self.seq.pop();
                if self.exhausted {
                    return false;
                }
            }
            false
        }
    }
    let mut dfs = Dfs {
        after: &after,
        k,
        seq: Vec::new(),
        nodes: 0,
        budget: limits.node_budget,
        exhausted: false,
    };
    let found = dfs.go(&Bits::full(n));
    let mut rep = LargenessReport::new(Predicate::DeltaStar, a, w);
    rep.value = Some(k as u64);
    rep.nodes = dfs.nodes;
    rep.note(format!(
        "{} quotients; verdict is an upper bound for the whole group",
        match side {
            Side::Left => "left",
            Side::Right => "right",
        }
    ));
    if found {
        rep.decided = Some(false);
        rep.counterexample = Some(Certificate::Sequence(
            dfs.seq.iter().map(|&i| elems[i].clone()).collect(),
        ));
    } else if dfs.exhausted {
        rep.exactness = Exactness::LowerBound;
        rep.note("node budget exhausted");
    } else {
        rep.decided = Some(true);
        rep.witness = Some(Certificate::Set(FiniteSet::from_sorted(a.ctx, elems)));
        rep.note("witness: every sequence from this window was checked");
    }
    Ok(rep)
}

/// Whether every one-to-one `n`-sequence from the window has a finite
/// product in `A`. In abelian groups only increasing sequences are
/// searched, since the finite-product set ignores order there.
pub fn is_ip_star(a: &SetSpec, w: &Window, n: usize, limits: &Limits) -> Result<LargenessReport> {
    if n == 0 || n > FP_MAX_LEN {
        return Err(Error::Precondition(format!(
            "sequence length must be in 1..={FP_MAX_LEN}"
        )));
    }
    let elems = window_elements(a, w, limits)?;
    let pool: Vec<usize> = (0..elems.len())
        .filter(|&i| !a.contains(&elems[i]))
        .collect();

    struct Dfs<'a> {
        a: &'a SetSpec,
        elems: &'a [Element],
        pool: &'a [usize],
        n: usize,
        ordered: bool,
        seq: Vec<usize>,
        used: Vec<bool>,
        nodes: u64,
        budget: u64,
        exhausted: bool,
    }
    impl Dfs<'_> {
        fn go(&mut self, start: usize, fp: &[Element]) -> bool {
            if self.seq.len() == self.n {
                return true;
            }
            if self.pool.len() - start.min(self.pool.len()) < self.n - self.seq.len()
                && self.ordered
            {
                return false;
            }
            let from = if self.ordered { start } else { 0 };
            for pi in from..self.pool.len() {
                let x = self.pool[pi];
                if self.used[x] {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    self.exhausted = true;
                    return false;
                }
                let g = &self.elems[x];
                let mut next = Vec::with_capacity(2 * fp.len() + 1);
                let mut ok = true;
                for p in fp {
                    let q = op_unchecked(p, g);
                    if self.a.contains(&q) {
                        ok = false;
                        break;
                    }
                    next.push(q);
                }
                if !ok {
                    continue;
                }
                next.extend(fp.iter().cloned());
                next.push(g.clone());
                self.seq.push(x);
                self.used[x] = true;
                if self.go(pi + 1, &next) {
                    return true;
                }
                self.used[x] = false;
                self.seq.pop();
                if self.exhausted {
                    return false;
                }
            }
            false
        }
    }
    let mut dfs = Dfs {
        a,
        elems: &elems,
        pool: &pool,
        n,
        ordered: a.ctx.is_abelian(),
        seq: Vec::new(),
        used: vec![false; elems.len()],
        nodes: 0,
        budget: limits.node_budget,
        exhausted: false,
    };
    let found = dfs.go(0, &[]);
    let mut rep = LargenessReport::new(Predicate::IpStar, a, w);
    rep.value = Some(n as u64);
    rep.nodes = dfs.nodes;
    rep.note("verdict is an upper bound for the whole group");
    if found {
        rep.decided = Some(false);
        rep.counterexample = Some(Certificate::Sequence(
            dfs.seq.iter().map(|&i| elems[i].clone()).collect(),
        ));
    } else if dfs.exhausted {
        rep.exactness = Exactness::LowerBound;
        rep.note("node budget exhausted");
    } else {
        rep.decided = Some(true);
        rep.witness = Some(Certificate::Set(FiniteSet::from_sorted(a.ctx, elems)));
        rep.note("witness: every sequence from this window was checked");
    }
    Ok(rep)
}

/// When `S` misses `SS ∪ S^-1 S^-1`, its complement should be 3-fat. Checks
/// the hypothesis on `S ∩ w`, then 3-fatness of the complement on `w`.
pub fn check_3fat_cover(s: &SetSpec, w: &Window, limits: &Limits) -> Result<LargenessReport> {
    let members = enumerate(s, w, limits)?;
    let mut violation = None;
    'outer: for x in &members {
        for y in &members {
            let xy = op_unchecked(x, y);
            if s.contains(&xy) {
                violation = Some((x.clone(), y.clone(), xy, false));
                break 'outer;
            }
            let inv = op_unchecked(&inverse_unchecked(x), &inverse_unchecked(y));
            if s.contains(&inv) {
                violation = Some((x.clone(), y.clone(), inv, true));
                break 'outer;
            }
        }
    }
    if let Some((x, y, z, inverted)) = violation {
        let mut rep = LargenessReport::new(Predicate::ThreeFatCover, s, w);
        rep.note(format!(
            "hypothesis fails: {} = {z} is a member",
            if inverted {
                format!("{x}^-1 {y}^-1")
            } else {
                format!("{x} {y}")
            }
        ));
        return Ok(rep);
    }
    let comp = complement(s);
    let mut rep = kappa_fat_check(&comp, w, 3, limits)?;
    rep.predicate = Predicate::ThreeFatCover;
    rep.set = s.name.clone();
    rep.notes.insert(
        0,
        format!(
            "hypothesis holds for the {} members in the window; verdict concerns the complement",
            members.len()
        ),
    );
    Ok(rep)
}

/// Syndeticity of `A` against thickness of its complement on the window.
/// Holds when exactly one of the two has a certificate.
pub fn duality_check(
    a: &SetSpec,
    w: &Window,
    pad: usize,
    kmax: usize,
    limits: &Limits,
) -> Result<LargenessReport> {
    let syn = syndeticity_index(a, w, pad, kmax, limits)?;
    let ground = ProbeFamily::standard(w).ground;
    let probe = FiniteSet::from_sorted(a.ctx, enumerate_window(a.ctx, &ground, limits)?);
    let comp = complement(a);
    let thick = is_thick_on(&comp, &probe, w, limits)?;

    let mut rep = LargenessReport::new(Predicate::Duality, a, w);
    rep.nodes = syn.nodes;
    rep.note(format!(
        "complement thickness tested with the probe {ground}"
    ));
    let syn_set = syn.witness_set().cloned();
    match (&syn_set, &thick) {
        (Some(f), None) => {
            rep.decided = Some(true);
            rep.note("syndetic, complement not thick");
            rep.witness = Some(Certificate::Set(f.clone()));
        }
        (None, Some(g)) => {
            rep.decided = Some(true);
            rep.note(if syn.decided == Some(false) {
                "not syndetic, complement thick".to_string()
            } else {
                format!("no syndetic cover with at most {kmax} translates, complement thick")
            });
            rep.witness = Some(Certificate::Element(g.clone()));
        }
        (Some(f), Some(g)) => {
            rep.decided = Some(false);
            rep.note(format!("complement contains the probe translated by {g}"));
            rep.counterexample = Some(Certificate::Set(f.clone()));
        }
        (None, None) if syn.decided == Some(false) => {
            rep.decided = Some(false);
            rep.note("neither syndetic nor complement thick on this window");
            rep.counterexample = syn.counterexample.clone();
        }
        (None, None) => {
            rep.exactness = Exactness::LowerBound;
            rep.note("syndeticity undecided and complement not thick");
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::{
        from_finite, make_coset, make_cube_gap_complement, make_geometric_union,
        make_interval_union, whole_group,
    };

    fn lim() -> Limits {
        Limits::default()
    }

    fn int_set(name: &str, f: impl Fn(i64) -> bool + Send + Sync + 'static) -> SetSpec {
        SetSpec::new(
            name,
            GroupCtx::Integer,
            Window::int(-50, 50),
            crate::set::Provenance::new("test"),
            move |g| g.as_int().is_some_and(&f),
        )
    }

    #[test]
    fn even_quotient_graph_is_two_cliques() {
        let a = make_coset(2, 0).unwrap();
        let qg = QuotientGraph::build(&a, &Window::int(-10, 10), &lim()).unwrap();
        let v = qg.vertices.elements();
        for i in 0..qg.len() {
            for j in 0..qg.len() {
                if i != j {
                    let same = (v[i].as_int().unwrap() - v[j].as_int().unwrap()) % 2 == 0;
                    assert_eq!(qg.graph.has_edge(i, j), same);
                }
            }
        }
    }

    #[test]
    fn thick_on_examples() {
        let even = make_coset(2, 0).unwrap();
        let w = Window::int(-50, 50);
        assert_eq!(
            is_thick_on(&even, &FiniteSet::ints([0, 1]), &w, &lim()).unwrap(),
            None
        );
        let geo = make_geometric_union();
        let g = is_thick_on(
            &geo,
            &FiniteSet::ints([0, 1, 2]),
            &Window::int(0, 1024),
            &lim(),
        )
        .unwrap();
        assert_eq!(g, Some(Element::Int(4)));
        let g = is_thick_on(&even, &FiniteSet::empty(GroupCtx::Integer), &w, &lim()).unwrap();
        assert_eq!(g, Some(Element::Int(0)));
    }

    /// Smallest k with some F ⊆ w of size k covering the inner window,
    /// by trying every subset in order.
    fn brute_syndeticity(
        a: &SetSpec,
        w: &Window,
        pad: usize,
        kmax: usize,
    ) -> Option<(usize, Vec<i64>)> {
        let elems = enumerate_window(GroupCtx::Integer, w, &lim()).unwrap();
        let inner: Vec<i64> = elems
            .iter()
            .filter(|g| w.inner(pad).contains(g))
            .map(|g| g.as_int().unwrap())
            .collect();
        let ints: Vec<i64> = elems.iter().map(|g| g.as_int().unwrap()).collect();
        for k in 1..=kmax {
            let mut hit = None;
            crate::group::for_each_combination(&ints, k, |fs| {
                if hit.is_none()
                    && inner
                        .iter()
                        .all(|&u| fs.iter().any(|&f| a.contains(&Element::Int(u - f))))
                {
                    hit = Some(fs.to_vec());
                }
            });
            if let Some(mut f) = hit {
                f.sort_by_key(|&x| Element::Int(x));
                return Some((k, f));
            }
        }
        None
    }

    #[test]
    fn syndeticity_of_subgroups() {
        let w = Window::int(-15, 15);
        for d in 1..=6 {
            let a = make_coset(d, 0).unwrap();
            let rep = syndeticity_index(&a, &w, 5, 8, &lim()).unwrap();
            let (k, f) = brute_syndeticity(&a, &w, 5, 8).unwrap();
            assert_eq!(rep.value, Some(k as u64));
            assert_eq!(k, d as usize);
            assert_eq!(rep.witness_set().unwrap(), &FiniteSet::ints(f));
            assert!(rep.is_well_formed());
            // on a nonnegative window canonical order is the usual one
            let rep = syndeticity_index(&a, &Window::int(0, 30), 5, 8, &lim()).unwrap();
            assert_eq!(rep.witness_set().unwrap(), &FiniteSet::ints(0..d));
        }
        let g = whole_group(GroupCtx::Integer, w);
        let rep = syndeticity_index(&g, &w, 5, 3, &lim()).unwrap();
        assert_eq!(rep.value, Some(1));
        assert_eq!(rep.witness_set().unwrap(), &FiniteSet::ints([0]));
    }

    #[test]
    fn syndeticity_kmax_and_unreachable() {
        let w = Window::int(-15, 15);
        let a = make_coset(5, 0).unwrap();
        let rep = syndeticity_index(&a, &w, 5, 3, &lim()).unwrap();
        assert_eq!(rep.decided, None);
        assert_eq!(rep.value, Some(4));
        assert_eq!(rep.exactness, Exactness::LowerBound);
        let empty = from_finite(&FiniteSet::empty(GroupCtx::Integer), w);
        let rep = syndeticity_index(&empty, &w, 5, 3, &lim()).unwrap();
        assert_eq!(rep.decided, Some(false));
    }

    #[test]
    fn thickness_index_examples() {
        let w = Window::int(-60, 60);
        let search = ThicknessSearch::standard(&w, 3);
        let g = whole_group(GroupCtx::Integer, w);
        let rep = thickness_index(&g, &w, &search, &lim()).unwrap();
        assert_eq!(rep.value, Some(1));
        assert_eq!(rep.witness_set().unwrap(), &FiniteSet::ints([0]));

        // evens inside long intervals
        let long = make_interval_union(&[(-60, -35), (20, 45)]);
        let even = make_coset(2, 0).unwrap();
        let a = crate::set::intersect(&even, &long).unwrap();
        let rep = thickness_index(&a, &w, &search, &lim()).unwrap();
        assert_eq!(rep.value, Some(2));
        assert_eq!(rep.witness_set().unwrap(), &FiniteSet::ints([0, 1]));

        let empty = from_finite(&FiniteSet::empty(GroupCtx::Integer), w);
        let rep = thickness_index(&empty, &w, &search, &lim()).unwrap();
        assert_eq!(rep.decided, None);
        assert_eq!(rep.value, Some(4));
    }

    #[test]
    fn piecewise_syndetic_examples() {
        let w = Window::int(-60, 60);
        let search = ThicknessSearch::standard(&w, 6);
        let a = make_coset(3, 0).unwrap();
        let syn = syndeticity_index(&a, &w, 10, 6, &lim()).unwrap();
        let ps = is_piecewise_syndetic(&a, &w, &search, &lim()).unwrap();
        assert!(ps.holds());
        assert!(ps.value <= syn.value);

        let finite = from_finite(&FiniteSet::ints([0, 1, 2]), w);
        let ps = is_piecewise_syndetic(&finite, &w, &search, &lim()).unwrap();
        assert_eq!(ps.decided, Some(false));
        assert!(ps.is_well_formed());
    }

    /// α by checking every subset up to size `cap`.
    fn brute_alpha(a: &SetSpec, w: &Window, cap: usize) -> usize {
        let e = enumerate_window(a.ctx, w, &lim()).unwrap();
        let good = |x: &Element, y: &Element| {
            a.contains(&left_div_unchecked(x, y)) && a.contains(&left_div_unchecked(y, x))
        };
        let mut best = 1;
        for k in 2..=cap {
            let mut any = false;
            crate::group::for_each_combination(&e, k, |s| {
                if !any
                    && s.iter()
                        .enumerate()
                        .all(|(i, x)| s[i + 1..].iter().all(|y| !good(x, y)))
                {
                    any = true;
                }
            });
            if any {
                best = k;
            } else {
                break;
            }
        }
        best
    }

    #[test]
    fn fatness_examples() {
        let w = Window::int(-12, 12);
        for d in 2..=4 {
            let a = make_coset(d, 0).unwrap();
            let rep = fatness(&a, &w, &lim()).unwrap();
            assert_eq!(rep.value, Some(d as u64 + 1));
            assert_eq!(rep.value, Some(brute_alpha(&a, &w, 6) as u64 + 1));
            // the first d window elements already have distinct residues
            let first: Vec<Element> =
                enumerate_window(GroupCtx::Integer, &w, &lim()).unwrap()[..d as usize].to_vec();
            assert_eq!(rep.counterexample_set().unwrap().elements(), &first[..]);
        }
        let g = whole_group(GroupCtx::Integer, w);
        assert_eq!(fatness(&g, &w, &lim()).unwrap().value, Some(2));
        let odd = make_coset(2, 1).unwrap();
        let rep = fatness(&odd, &w, &lim()).unwrap();
        assert_eq!(rep.decided, Some(false));
        assert!(rep.is_well_formed());
    }

    #[test]
    fn cube_gap_complement_is_three_fat() {
        let a = make_cube_gap_complement();
        let rep = fatness(&a, &Window::boolean(2, -12, 12), &lim()).unwrap();
        assert_eq!(rep.value, Some(3));
    }

    #[test]
    fn kappa_and_ramsey() {
        let w = Window::int(-20, 20);
        let even = make_coset(2, 0).unwrap();
        let r = kappa_fat_check(&even, &w, 2, &lim()).unwrap();
        assert_eq!(r.decided, Some(false));
        assert_eq!(r.counterexample_set().unwrap(), &FiniteSet::ints([0, 1]));
        let r = kappa_fat_check(&even, &w, 3, &lim()).unwrap();
        assert_eq!(r.decided, Some(true));
        assert!(r.is_well_formed());

        assert_eq!(fat_ramsey_m(&even, &w, 3, &lim()).unwrap().value, Some(5));
        assert_eq!(
            fat_ramsey_m(&even, &w, 2, &lim()).unwrap().value,
            fatness(&even, &w, &lim()).unwrap().value
        );
        let g = whole_group(GroupCtx::Integer, w);
        for n in 1..=5 {
            assert_eq!(
                fat_ramsey_m(&g, &w, n, &lim()).unwrap().value,
                Some(n as u64)
            );
        }
    }

    #[test]
    fn delta_star_examples() {
        let w = Window::int(-20, 20);
        let not_one = int_set("Z minus 1", |n| n != 1);
        let r = is_delta_star_k(&not_one, &w, 2, Side::Left, &lim()).unwrap();
        assert_eq!(r.decided, Some(false));
        assert_eq!(
            r.counterexample,
            Some(Certificate::Sequence(vec![
                Element::Int(0),
                Element::Int(1)
            ]))
        );
        // a decreasing pair defeats the positive integers
        let pos = int_set("positives", |n| n > 0);
        let r = is_delta_star_k(&pos, &w, 2, Side::Left, &lim()).unwrap();
        assert_eq!(
            r.counterexample,
            Some(Certificate::Sequence(vec![
                Element::Int(0),
                Element::Int(-1)
            ]))
        );
        let nonzero = int_set("nonzero", |n| n != 0);
        let r = is_delta_star_k(&nonzero, &w, 3, Side::Right, &lim()).unwrap();
        assert_eq!(r.decided, Some(true));
    }

    #[test]
    fn ip_star_examples() {
        let w = Window::int(-12, 12);
        let even = make_coset(2, 0).unwrap();
        assert_eq!(
            is_ip_star(&even, &w, 2, &lim()).unwrap().decided,
            Some(true)
        );
        let four = make_coset(4, 0).unwrap();
        let r = is_ip_star(&four, &w, 2, &lim()).unwrap();
        assert_eq!(
            r.counterexample,
            Some(Certificate::Sequence(vec![
                Element::Int(1),
                Element::Int(2)
            ]))
        );
        let g = whole_group(GroupCtx::Integer, w);
        assert_eq!(is_ip_star(&g, &w, 3, &lim()).unwrap().decided, Some(true));
    }

    #[test]
    fn three_fat_cover_examples() {
        let w = Window::int(-20, 20);
        let one = from_finite(&FiniteSet::ints([1]), w);
        let r = check_3fat_cover(&one, &w, &lim()).unwrap();
        assert_eq!(r.decided, Some(true));
        let two = from_finite(&FiniteSet::ints([1, 2]), w);
        let r = check_3fat_cover(&two, &w, &lim()).unwrap();
        assert_eq!(r.decided, None);
        assert!(r.notes[0].contains("hypothesis fails"));
        let none = from_finite(&FiniteSet::empty(GroupCtx::Integer), w);
        assert_eq!(
            check_3fat_cover(&none, &w, &lim()).unwrap().decided,
            Some(true)
        );
    }

    #[test]
    fn duality_examples() {
        let w = Window::int(-40, 40);
        let even = make_coset(2, 0).unwrap();
        let r = duality_check(&even, &w, 10, 3, &lim()).unwrap();
        assert_eq!(r.decided, Some(true));
        assert_eq!(r.witness, Some(Certificate::Set(FiniteSet::ints([0, 1]))));
        let geo = make_geometric_union();
        let r = duality_check(&geo, &w, 10, 3, &lim()).unwrap();
        assert_eq!(r.decided, Some(true));
        assert!(matches!(r.witness, Some(Certificate::Element(_))));
        let g = whole_group(GroupCtx::Integer, w);
        let r = duality_check(&g, &w, 10, 3, &lim()).unwrap();
        assert_eq!(r.witness, Some(Certificate::Set(FiniteSet::ints([0]))));
    }

    #[test]
    fn dimacs_labels_vertices() {
        let a = make_coset(2, 0).unwrap();
        let qg = QuotientGraph::build(&a, &Window::int(-2, 2), &lim()).unwrap();
        let d = qg.to_dimacs();
        assert!(d.contains("c v 3 -1\n"));
        assert!(d.contains("p edge 5 4\n"));
    }
}
