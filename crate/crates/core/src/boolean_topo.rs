//! Boolean-group machinery: traces of zero neighborhoods built from letter
//! sets, decomposition of word systems with two-letter pairwise sums, and
//! the sets and colorings derived from pair colorings of letters.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    for_each_combination, sym_diff, Element, GroupCtx, Letter, Limits, Window, STAR,
};
use crate::largeness::{kappa_fat_check, Certificate, LargenessReport};
use crate::ramsey::{FilterBase, PairColoring};
use crate::set::{FiniteSet, Provenance, SetSpec};

/// Letter sets `A_1, …, A_n`; level `i` contributes sums `x ∆ y` with
/// `x, y ∈ A_i ∪ {*}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodSpec {
    pub a_seq: Vec<Vec<Letter>>,
    pub depth: usize,
}

impl NeighborhoodSpec {
    pub fn new(a_seq: Vec<Vec<Letter>>, depth: usize) -> Result<Self> {
        if a_seq.is_empty() {
            return Err(Error::Precondition(
                "at least one letter set is required".into(),
            ));
        }
        if depth > a_seq.len() {
            return Err(Error::Precondition(format!(
                "depth {depth} exceeds the {} letter sets given",
                a_seq.len()
            )));
        }
        if a_seq.iter().flatten().any(|&x| x == STAR) {
            return Err(Error::Precondition(
                "the star letter is added implicitly".into(),
            ));
        }
        Ok(NeighborhoodSpec { a_seq, depth })
    }

    /// The same letter set at every level.
    pub fn constant(a: Vec<Letter>, depth: usize) -> Result<Self> {
        Self::new(vec![a; depth.max(1)], depth)
    }
}

fn pair_sums(a: &[Letter]) -> Vec<Vec<Letter>> {
    let mut letters: Vec<Letter> = a.to_vec();
    letters.push(STAR);
    letters.sort_unstable();
    letters.dedup();
    let mut out = vec![Vec::new()];
    for (i, &x) in letters.iter().enumerate() {
        for &y in &letters[i + 1..] {
            out.push(vec![x, y]);
        }
    }
    out
}

/// Every `x_1 ∆ y_1 ∆ … ∆ x_k ∆ y_k` with `k ≤ depth` and
/// `x_i, y_i ∈ A_i ∪ {*}`, restricted to `w`.
pub fn neighborhood_trace(
    spec: &NeighborhoodSpec,
    w: &Window,
    limits: &Limits,
) -> Result<FiniteSet> {
    w.check(GroupCtx::Boolean)?;
    let mut acc: BTreeSet<Vec<Letter>> = BTreeSet::from([Vec::new()]);
    for a in spec.a_seq.iter().take(spec.depth) {
        let sums = pair_sums(a);
        let mut next = BTreeSet::new();
        for s in &acc {
            for d in &sums {
                next.insert(sym_diff(s, d));
                if next.len() > limits.window_cap {
                    return Err(Error::WindowTooLarge {
                        size: next.len() as u128,
                        cap: limits.window_cap,
                    });
                }
            }
        }
        acc = next;
    }
    FiniteSet::new(
        GroupCtx::Boolean,
        acc.into_iter().map(Element::Word).filter(|g| w.contains(g)),
    )
}

/// All words with exactly `2n` letters from `a`.
pub fn even_sphere_trace(a: &[Letter], n: usize) -> FiniteSet {
    let mut letters = a.to_vec();
    letters.sort_unstable();
    letters.dedup();
    let mut out = Vec::new();
    if 2 * n <= letters.len() {
        for_each_combination(&letters, 2 * n, |c| out.push(Element::Word(c.to_vec())));
    }
    FiniteSet::new(GroupCtx::Boolean, out).expect("words over distinct letters")
}

// ---------------------------------------------------------------------------
// Word systems
// ---------------------------------------------------------------------------

/// Boolean words `w_1, …, w_k` with their pairwise sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSystem {
    words: Vec<Vec<Letter>>,
    sums: Vec<Vec<Vec<Letter>>>,
}

impl WordSystem {
    pub fn new(words: impl IntoIterator<Item = Element>) -> Result<Self> {
        let words: Vec<Vec<Letter>> = words
            .into_iter()
            .map(|g| match g {
                Element::Word(l) => Ok(l),
                other => Err(Error::mismatch(GroupCtx::Boolean, other.family_name())),
            })
            .collect::<Result<_>>()?;
        if words.is_empty() {
            return Err(Error::Precondition(
                "a word system needs at least one word".into(),
            ));
        }
        let sums = words
            .iter()
            .map(|a| words.iter().map(|b| sym_diff(a, b)).collect())
            .collect();
        Ok(WordSystem { words, sums })
    }

    pub fn from_letter_lists(words: impl IntoIterator<Item = Vec<Letter>>) -> Result<Self> {
        Self::new(words.into_iter().map(Element::word))
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> Element {
        Element::Word(self.words[i].clone())
    }

    /// `w_i ∆ w_j`, 0-based.
    pub fn sum(&self, i: usize, j: usize) -> &[Letter] {
        &self.sums[i][j]
    }

    /// A JSON array of words such as `["{1}", "{2,3}"]`.
    pub fn to_json(&self) -> Result<String> {
        let words: Vec<String> = (0..self.len()).map(|i| self.word(i).to_string()).collect();
        Ok(serde_json::to_string(&words)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let words: Vec<String> = serde_json::from_str(text)?;
        Self::new(
            words
                .iter()
                .map(|s| Element::parse(GroupCtx::Boolean, s))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TwoWords {
    /// `w_i ∆ w_j = x_i ∆ x_j` for all `i < j`.
    Letters { letters: Vec<Letter> },
    /// Four words with `w_4 = w_1 ∆ w_2 ∆ w_3`; `sums` lists every
    /// `w_i ∆ w_j` (1-based `i < j`) as recomputed from the words.
    ExceptionalK4 {
        letters: [Letter; 3],
        sums: Vec<(usize, usize, Vec<Letter>)>,
    },
    /// The sum of this pair (1-based) is not a two-letter word.
    NotApplicable { pair: (usize, usize) },
}

/// Letters representing a system whose pairwise sums are two-letter words.
///
/// `x_1` is the letter shared by `w_1 ∆ w_2` and `w_1 ∆ w_3`; every later
/// `x_j` is the other letter of `w_1 ∆ w_j`. Only with four words can
/// `w_1 ∆ w_4` miss `x_1`, and then `w_4 = w_1 ∆ w_2 ∆ w_3`. For a single
/// word the least letter of `w_1` is used (any letter would do), or 0 for
/// the empty word.
pub fn two_words_decompose(ws: &WordSystem) -> TwoWords {
    let k = ws.len();
    for i in 0..k {
        for j in i + 1..k {
            if ws.sum(i, j).len() != 2 {
                return TwoWords::NotApplicable {
                    pair: (i + 1, j + 1),
                };
            }
        }
    }
    if k == 1 {
        let x = ws.words[0].first().copied().unwrap_or(0);
        return TwoWords::Letters { letters: vec![x] };
    }
    let s12 = ws.sum(0, 1);
    if k == 2 {
        return TwoWords::Letters {
            letters: s12.to_vec(),
        };
    }
    let s13 = ws.sum(0, 2);
    let x1 = *s12
        .iter()
        .find(|x| s13.contains(x))
        .expect("two-letter sums whose sum has two letters share a letter");
    let other = |s: &[Letter], x: Letter| if s[0] == x { s[1] } else { s[0] };
    let mut xs = vec![x1, other(s12, x1), other(s13, x1)];
    for j in 3..k {
        let s1j = ws.sum(0, j);
        if s1j.contains(&x1) {
            xs.push(other(s1j, x1));
        } else {
            // x_2 and x_3 would both have to lie in w_1 ∆ w_j, and with
            // five or more words a third letter would too
            assert_eq!(k, 4, "only four-word systems can be exceptional");
            let sums = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .map(|(i, j)| (i + 1, j + 1, ws.sum(i, j).to_vec()))
                .collect();
            return TwoWords::ExceptionalK4 {
                letters: [xs[0], xs[1], xs[2]],
                sums,
            };
        }
    }
    TwoWords::Letters { letters: xs }
}

// ---------------------------------------------------------------------------
// Sets and colorings from pair colorings
// ---------------------------------------------------------------------------

fn letter_window(c: &PairColoring, max_len: usize) -> Window {
    let v = c.vertices();
    match (v.first(), v.last()) {
        (Some(&lo), Some(&hi)) => Window::boolean(max_len, lo, hi),
        _ => Window::boolean(max_len, 0, -1),
    }
}

/// Everything except the two-letter words `{x, y}` with color 1.
pub fn c_set_from_coloring(c: &PairColoring) -> SetSpec {
    let col = c.clone();
    SetSpec::new(
        "C'(c)",
        GroupCtx::Boolean,
        letter_window(c, 2),
        Provenance::new("c_set_from_coloring").param("vertices", c.len()),
        move |g| match g.letters() {
            Some([x, y]) => col.color(*x, *y) != Some(1),
            _ => true,
        },
    )
}

/// Four-letter words `α_1 < α_2 < α_3 < α_4` on which the three ways of
/// splitting into two pairs all give pairs of different colors.
pub fn c4_set_from_coloring(c: &PairColoring) -> SetSpec {
    let col = c.clone();
    SetSpec::new(
        "C4(c)",
        GroupCtx::Boolean,
        letter_window(c, 4),
        Provenance::new("c4_set_from_coloring").param("vertices", c.len()),
        move |g| match g.letters() {
            Some(&[a, b, x, y]) => {
                let pc = |u, v| col.color(u, v);
                [(a, b, x, y), (a, x, b, y), (a, y, b, x)]
                    .iter()
                    .all(|&(p, q, r, s)| match (pc(p, q), pc(r, s)) {
                        (Some(u), Some(v)) => u != v,
                        _ => false,
                    })
            }
            _ => false,
        },
    )
}

/// Letters of `wi` surviving in `wi ∆ wj`, plus the sum; both words and
/// the sum must have four letters.
fn b4_parts(wi: &Element, wj: &Element) -> Result<(Vec<Letter>, Vec<Letter>, Vec<Letter>)> {
    let (Some(a), Some(b)) = (wi.letters(), wj.letters()) else {
        return Err(Error::mismatch(GroupCtx::Boolean, "non-Boolean element"));
    };
    if a.len() != 4 || b.len() != 4 {
        return Err(Error::Precondition(format!(
            "both words need four letters, got {wi} and {wj}"
        )));
    }
    let sum = sym_diff(a, b);
    if sum.len() != 4 {
        return Err(Error::Precondition(format!(
            "{wi} ∆ {wj} has {} letters, not four",
            sum.len()
        )));
    }
    let from_i: Vec<Letter> = a.iter().copied().filter(|x| !b.contains(x)).collect();
    let from_j: Vec<Letter> = b.iter().copied().filter(|x| !a.contains(x)).collect();
    Ok((from_i, from_j, sum))
}

fn position(word: &[Letter], x: Letter) -> u8 {
    word.iter().position(|&y| y == x).expect("letter occurs") as u8 + 1
}

/// `(i', i'', j', j'')`: 1-based positions, within `wi` and within `wj`, of
/// the letters each contributes to `wi ∆ wj`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quadruple(pub u8, pub u8, pub u8, pub u8);

impl Quadruple {
    pub const PALETTE: usize = 36;

    /// Index in `0..36`.
    pub fn index(self) -> usize {
        pair_index(self.0, self.1) * 6 + pair_index(self.2, self.3)
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.0, self.1, self.2, self.3)
    }
}

/// Positions `p < q` (1-based) of `wi`'s letters inside the four-letter
/// sum `wi ∆ wj`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrangement(pub u8, pub u8);

impl Arrangement {
    pub const PALETTE: usize = 6;

    pub fn index(self) -> usize {
        pair_index(self.0, self.1)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

/// Index of `p < q` among the six pairs from `1..=4`.
fn pair_index(p: u8, q: u8) -> usize {
    const PAIRS: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    PAIRS
        .iter()
        .position(|&x| x == (p, q))
        .expect("positions are 1..=4")
}

pub fn b4_quadruple_coloring(wi: &Element, wj: &Element) -> Result<Quadruple> {
    let (from_i, from_j, _) = b4_parts(wi, wj)?;
    let (a, b) = (
        wi.letters().unwrap_or_default(),
        wj.letters().unwrap_or_default(),
    );
    Ok(Quadruple(
        position(a, from_i[0]),
        position(a, from_i[1]),
        position(b, from_j[0]),
        position(b, from_j[1]),
    ))
}

pub fn b4_arrangement_coloring(wi: &Element, wj: &Element) -> Result<Arrangement> {
    let (from_i, _, sum) = b4_parts(wi, wj)?;
    Ok(Arrangement(
        position(&sum, from_i[0]),
        position(&sum, from_i[1]),
    ))
}

// ---------------------------------------------------------------------------
// Trace containment
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub contained: bool,
    pub n: usize,
    /// The first base set whose spheres up to `2n` lie in the set.
    pub base_set: Option<Vec<Letter>>,
    /// For each base set that fails: the first word it misses.
    pub uncovered: Vec<(Vec<Letter>, Element)>,
}

impl TraceReport {
    pub fn certificate(&self) -> Option<Certificate> {
        match (&self.base_set, self.uncovered.first()) {
            (Some(a), _) => Some(Certificate::Set(FiniteSet::words([a.clone()]))),
            (None, Some((_, g))) => Some(Certificate::Element(g.clone())),
            _ => None,
        }
    }
}

/// Whether, for some base set `A`, the set contains zero and every word of
/// `2m` letters from `A` for `1 ≤ m ≤ n`.
pub fn trace_containment_check(
    fat_set: &SetSpec,
    base: &FilterBase,
    n: usize,
    limits: &Limits,
) -> Result<TraceReport> {
    if fat_set.ctx != GroupCtx::Boolean {
        return Err(Error::mismatch(GroupCtx::Boolean, fat_set.ctx));
    }
    let mut uncovered = Vec::new();
    for a in &base.sets {
        let mut miss =
            (!fat_set.contains(&Element::Word(Vec::new()))).then(|| Element::Word(Vec::new()));
        for m in 1..=n {
            if miss.is_some() {
                break;
            }
            let count = binomial(a.len(), 2 * m);
            if count > limits.window_cap as u128 {
                return Err(Error::WindowTooLarge {
                    size: count,
                    cap: limits.window_cap,
                });
            }
            miss = even_sphere_trace(a, m)
                .into_elements()
                .into_iter()
                .find(|g| !fat_set.contains(g));
        }
        match miss {
            None => {
                return Ok(TraceReport {
                    contained: true,
                    n,
                    base_set: Some(a.clone()),
                    uncovered,
                })
            }
            Some(g) => uncovered.push((a.clone(), g)),
        }
    }
    Ok(TraceReport {
        contained: false,
        n,
        base_set: None,
        uncovered,
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// The two alternatives for a two-coloring of letters and a base: either a
/// base set is 0-homogeneous, seen as trace containment of `C'(c)`, or
/// `C'(c)` fails to be `k`-fat, and the offending words decompose into
/// `k` letters whose pairs all have color 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum B2Outcome {
    TraceContained {
        base_set: Vec<Letter>,
    },
    NotFat {
        words: Vec<Element>,
        letters: Vec<Letter>,
    },
    Neither {
        fatness: Box<LargenessReport>,
    },
}

pub fn b2_dichotomy(
    c: &PairColoring,
    base: &FilterBase,
    k: usize,
    limits: &Limits,
) -> Result<B2Outcome> {
    let cset = c_set_from_coloring(c);
    let trace = trace_containment_check(&cset, base, 1, limits)?;
    if let Some(a) = trace.base_set {
        return Ok(B2Outcome::TraceContained { base_set: a });
    }
    let w = letter_window(c, 1);
    let rep = kappa_fat_check(&cset, &w, k, limits)?;
    match rep.counterexample_set() {
        Some(words) if rep.decided == Some(false) => {
            let ws = WordSystem::new(words.iter().cloned())?;
            match two_words_decompose(&ws) {
                TwoWords::Letters { letters } => Ok(B2Outcome::NotFat {
                    words: words.elements().to_vec(),
                    letters,
                }),
                _ => Ok(B2Outcome::Neither {
                    fatness: Box::new(rep),
                }),
            }
        }
        _ => Ok(B2Outcome::Neither {
            fatness: Box::new(rep),
        }),
    }
}
