//! Pair colorings, homogeneous sets, small Ramsey numbers and finite
//! checks of arrow and Ramsey conditions for filter bases.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{lex_least_clique_in, max_clique, BitGraph, Bits};
use crate::group::{Element, GroupCtx, Letter};
use crate::set::SetSpec;

/// A coloring of the unordered pairs of a finite vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairColoring {
    vertices: Vec<Letter>,
    colors: u8,
    /// Row-major `n × n`, symmetric; the diagonal is unused.
    table: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct RawColoring {
    vertices: Vec<Letter>,
    colors: u8,
    /// `[u, v, color]` for every pair `u < v`.
    pairs: Vec<(Letter, Letter, u8)>,
}

impl PairColoring {
    /// `f` receives vertex values `u < v`.
    pub fn from_fn(
        vertices: impl IntoIterator<Item = Letter>,
        colors: u8,
        mut f: impl FnMut(Letter, Letter) -> u8,
    ) -> Result<Self> {
        let mut vs: Vec<Letter> = vertices.into_iter().collect();
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].to_string()));
        }
        if colors == 0 {
            return Err(Error::Precondition(
                "a coloring needs at least one color".into(),
            ));
        }
        let n = vs.len();
        let mut table = vec![0u8; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let c = f(vs[i], vs[j]);
                if c >= colors {
                    return Err(Error::Precondition(format!(
                        "pair {{{}, {}}} has color {c} but only {colors} colors exist",
                        vs[i], vs[j]
                    )));
                }
                table[i * n + j] = c;
                table[j * n + i] = c;
            }
        }
        Ok(PairColoring {
            vertices: vs,
            colors,
            table,
        })
    }

    /// Color 0 inside `part` and inside its complement, 1 across.
    pub fn partition(vertices: impl IntoIterator<Item = Letter>, part: &[Letter]) -> Result<Self> {
        let part: BTreeSet<Letter> = part.iter().copied().collect();
        Self::from_fn(vertices, 2, |u, v| {
            u8::from(part.contains(&u) != part.contains(&v))
        })
    }

    /// `K_5` split into a 5-cycle (color 0) and its complementary 5-cycle.
    pub fn pentagon() -> Self {
        Self::from_fn(0..5, 2, |u, v| u8::from(!matches!((v - u) % 5, 1 | 4)))
            .expect("valid coloring")
    }

    pub fn vertices(&self) -> &[Letter] {
        &self.vertices
    }

    pub fn colors(&self) -> u8 {
        self.colors
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Color of the pair at vertex positions `i ≠ j`.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u8 {
        self.table[i * self.len() + j]
    }

    pub fn position(&self, v: Letter) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Color of the pair `{u, v}` of vertex values.
    pub fn color(&self, u: Letter, v: Letter) -> Option<u8> {
        let (i, j) = (self.position(u)?, self.position(v)?);
        (i != j).then(|| self.at(i, j))
    }

    /// The graph of pairs with color `c`.
    pub fn color_graph(&self, c: u8) -> BitGraph {
        BitGraph::from_fn(self.len(), |i, j| self.at(i, j) == c)
    }

    /// The common color of all pairs of `set`, if there is one. Sets with
    /// fewer than two elements return `None`.
    pub fn homogeneous_color(&self, set: &[Letter]) -> Option<u8> {
        let idx: Option<Vec<usize>> = set.iter().map(|&v| self.position(v)).collect();
        let idx = idx?;
        let first = self.at(*idx.first()?, *idx.get(1)?);
        idx.iter()
            .enumerate()
            .all(|(a, &i)| {
                idx[a + 1..]
                    .iter()
                    .all(|&j| i != j && self.at(i, j) == first)
            })
            .then_some(first)
    }

    pub fn to_json(&self) -> Result<String> {
        let n = self.len();
        let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((self.vertices[i], self.vertices[j], self.at(i, j)));
            }
        }
        Ok(serde_json::to_string_pretty(&RawColoring {
            vertices: self.vertices.clone(),
            colors: self.colors,
            pairs,
        })?)
    }

    /// Reads the JSON written by [`PairColoring::to_json`]; every pair must
    /// be colored exactly once.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawColoring = serde_json::from_str(text)?;
        let mut seen = std::collections::BTreeMap::new();
        for &(u, v, c) in &raw.pairs {
            let key = (u.min(v), u.max(v));
            if u == v || seen.insert(key, c).is_some() {
                return Err(Error::Parse(format!(
                    "pair ({u}, {v}) is a loop or repeated"
                )));
            }
        }
        let c = Self::from_fn(raw.vertices, raw.colors, |u, v| {
            seen.remove(&(u, v)).unwrap_or(u8::MAX)
        })
        .map_err(|e| match e {
            Error::Precondition(_) => Error::Parse("coloring is not total on the pairs".into()),
            other => other,
        })?;
        if let Some((u, v)) = seen.keys().next() {
            return Err(Error::Parse(format!(
                "pair ({u}, {v}) uses an unknown vertex"
            )));
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Homogeneous {
    Found { set: Vec<Letter>, color: u8 },
    Absent,
    Undecided,
}

/// Lexicographically least `s`-subset with all pairs one color; ties
/// between colors go to the smaller color.
pub fn find_homogeneous(c: &PairColoring, s: usize, budget: u64) -> Result<Homogeneous> {
    if s < 2 {
        return Err(Error::Precondition("homogeneous sets need s >= 2".into()));
    }
    if s > c.len() {
        return Ok(Homogeneous::Absent);
    }
    let all = Bits::full(c.len());
    let mut best: Option<(Vec<usize>, u8)> = None;
    let mut undecided = false;
    let mut used = 0u64;
    for color in 0..c.colors {
        let g = c.color_graph(color);
        let (found, n) = lex_least_clique_in(&g, &all, s, budget.saturating_sub(used));
        used += n;
        match found {
            Some(set) => {
                if best.as_ref().is_none_or(|(b, _)| set < *b) {
                    best = Some((set, color));
                }
            }
            None if used >= budget => undecided = true,
            None => {}
        }
    }
    Ok(match best {
        Some((set, color)) => Homogeneous::Found {
            set: set.into_iter().map(|i| c.vertices[i]).collect(),
            color,
        },
        None if undecided => Homogeneous::Undecided,
        None => Homogeneous::Absent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RamseySearch {
    /// Every `r`-coloring of `[n]^2` has an `s`-homogeneous set, and some
    /// coloring of `[n-1]^2` has none.
    Exact {
        n: usize,
        below: Option<PairColoring>,
    },
    /// The value exceeds `lower_bound - 1`: `coloring` lives on
    /// `lower_bound - 1` vertices and has no `s`-homogeneous set.
    Undecided {
        lower_bound: usize,
        coloring: Option<PairColoring>,
    },
}

impl RamseySearch {
    pub fn value(&self) -> Option<usize> {
        match self {
            RamseySearch::Exact { n, .. } => Some(*n),
            RamseySearch::Undecided { .. } => None,
        }
    }
}

/// Good colorings on `0..n`, stored as upper-triangle color vectors.
type Level = BTreeSet<Vec<u8>>;

fn tri_index(i: usize, j: usize) -> usize {
    // pairs (i, j), i < j, ordered by j then i
    j * (j - 1) / 2 + i
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Least upper-triangle vector over all vertex relabelings.
fn canonical(code: &[u8], n: usize, perms: &[Vec<usize>]) -> Vec<u8> {
    let mut best = code.to_vec();
    let mut buf = vec![0u8; code.len()];
    for p in perms {
        for j in 1..n {
            for i in 0..j {
                let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                buf[tri_index(i, j)] = code[tri_index(a, b)];
            }
        }
        if buf < best {
            best.clone_from(&buf);
        }
    }
    best
}

/// Whether the new vertex `n - 1` lies in an `s`-homogeneous set.
fn closes_homogeneous(code: &[u8], n: usize, s: usize) -> bool {
    let last = n - 1;
    let nbrs_by_color = |c: u8| -> Vec<usize> {
        (0..last)
            .filter(|&i| code[tri_index(i, last)] == c)
            .collect()
    };
    let colors: BTreeSet<u8> = (0..last).map(|i| code[tri_index(i, last)]).collect();
    for c in colors {
        let nb = nbrs_by_color(c);
        if nb.len() + 1 < s {
            continue;
        }
        let g = BitGraph::from_fn(nb.len(), |a, b| code[tri_index(nb[a], nb[b])] == c);
        let (found, _) = crate::graph::has_clique(&g, &Bits::full(nb.len()), s - 1, u64::MAX);
        if found != Some(false) {
            return true;
        }
    }
    false
}

fn decode(code: &[u8], n: usize, r: u8) -> PairColoring {
    PairColoring::from_fn(0..n as Letter, r, |u, v| {
        code[tri_index(u as usize, v as usize)]
    })
    .expect("codes only hold valid colors")
}

/// Least `n ≤ nmax` such that every `r`-coloring of the pairs of an
/// `n`-set has an `s`-homogeneous subset.
///
/// Colorings without homogeneous sets are grown one vertex at a time and
/// kept up to vertex relabeling. `budget` caps the number of extensions
/// examined; running out yields the best lower bound with its coloring.
pub fn ramsey_bound_search(r: u8, s: usize, nmax: usize, budget: u64) -> Result<RamseySearch> {
    if r == 0 || s < 2 {
        return Err(Error::Precondition("need r >= 1 and s >= 2".into()));
    }
    // canonicalization by brute-force relabeling stops paying off here
    const MAX_CANONICAL: usize = 8;
    let mut level: Level = BTreeSet::from([Vec::new()]);
    let mut nodes = 0u64;
    for n in 2..=nmax {
        let prev = n - 1;
        let extensions =
            (level.len() as u128).saturating_mul((r as u128).saturating_pow(prev as u32));
        if nodes as u128 + extensions > budget as u128 {
            return Ok(RamseySearch::Undecided {
                lower_bound: n,
                coloring: level.first().map(|c| decode(c, prev, r)),
            });
        }
        let perms = if n <= MAX_CANONICAL {
            permutations(n)
        } else {
            Vec::new()
        };
        let mut next: Level = BTreeSet::new();
        for code in &level {
            let mut ext = vec![0u8; prev];
            loop {
                nodes += 1;
                let mut full = code.clone();
                full.extend_from_slice(&ext);
                if !closes_homogeneous(&full, n, s) {
                    next.insert(if perms.is_empty() {
                        full
                    } else {
                        canonical(&full, n, &perms)
                    });
                }
                // next color vector for the new vertex
                let mut i = 0;
                while i < prev && ext[i] + 1 == r {
                    ext[i] = 0;
                    i += 1;
                }
                if i == prev {
                    break;
                }
                ext[i] += 1;
            }
        }
        if next.is_empty() {
            return Ok(RamseySearch::Exact {
                n,
                below: level.first().map(|c| decode(c, prev, r)),
            });
        }
        level = next;
    }
    Ok(RamseySearch::Undecided {
        lower_bound: nmax + 1,
        coloring: level.first().map(|c| decode(c, nmax, r)),
    })
}

/// Finite stand-in for a filter: its listed sets over a letter window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterBase {
    pub letters: Vec<Letter>,
    pub sets: Vec<Vec<Letter>>,
}

impl FilterBase {
    /// Sets are sorted; every set must be nonempty and drawn from `letters`.
    pub fn new(letters: impl IntoIterator<Item = Letter>, sets: Vec<Vec<Letter>>) -> Result<Self> {
        let letters: BTreeSet<Letter> = letters.into_iter().collect();
        let mut out = Vec::with_capacity(sets.len());
        for mut s in sets {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::Precondition(
                    "filter base sets must be nonempty".into(),
                ));
            }
            if let Some(x) = s.iter().find(|x| !letters.contains(x)) {
                return Err(Error::Precondition(format!(
                    "letter {x} lies outside the base's letter window"
                )));
            }
            out.push(s);
        }
        Ok(FilterBase {
            letters: letters.into_iter().collect(),
            sets: out,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Arrow {
    /// A base set whose pairs all have color 0.
    ZeroInBase { set: Vec<Letter> },
    /// A set of at least `lambda` vertices whose pairs all have color 1.
    OneHomogeneous { set: Vec<Letter> },
    /// Neither exists; carries the largest 1-homogeneous set found.
    BaseInsufficient { max_one_homogeneous: Vec<Letter> },
}

/// Finite form of the arrow condition for a two-coloring. Base sets count
/// only with at least two elements; uniformity of the filter is not
/// checked.
pub fn arrow_check(
    base: &FilterBase,
    c: &PairColoring,
    lambda: usize,
    budget: u64,
) -> Result<Arrow> {
    if c.colors() > 2 {
        return Err(Error::Precondition(
            "arrow checks need a two-coloring".into(),
        ));
    }
    for s in &base.sets {
        if s.iter().any(|&x| c.position(x).is_none()) {
            return Err(Error::Precondition(format!(
                "base set {s:?} is not inside the colored vertices"
            )));
        }
    }
    if let Some(s) = base
        .sets
        .iter()
        .find(|s| s.len() >= 2 && c.homogeneous_color(s) == Some(0))
    {
        return Ok(Arrow::ZeroInBase { set: s.clone() });
    }
    // a single vertex is vacuously 1-homogeneous
    let best = max_clique(&c.color_graph(1), budget).set;
    let set: Vec<Letter> = best.into_iter().map(|i| c.vertices[i]).collect();
    Ok(if set.len() >= lambda {
        Arrow::OneHomogeneous { set }
    } else {
        Arrow::BaseInsufficient {
            max_one_homogeneous: set,
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilterCheck {
    /// Per coloring: the first homogeneous base set and its color.
    pub homogeneous: Vec<Option<(Vec<Letter>, u8)>>,
    /// Index of the first coloring without a homogeneous base set.
    pub counterexample: Option<usize>,
}

impl FilterCheck {
    pub fn consistent(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For each coloring, looks for a homogeneous base set. Sets with one
/// element count as homogeneous.
pub fn ramsey_filter_check(base: &FilterBase, colorings: &[PairColoring]) -> FilterCheck {
    let homogeneous: Vec<Option<(Vec<Letter>, u8)>> = colorings
        .iter()
        .map(|c| {
            base.sets.iter().find_map(|s| {
                if s.iter().any(|&x| c.position(x).is_none()) {
                    return None;
                }
                if s.len() == 1 {
                    return Some((s.clone(), 0));
                }
                c.homogeneous_color(s).map(|col| (s.clone(), col))
            })
        })
        .collect();
    let counterexample = homogeneous.iter().position(Option::is_none);
    FilterCheck {
        homogeneous,
        counterexample,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LetterClique {
    pub letters: Vec<Letter>,
    pub exact: bool,
}

/// Largest set `B` of letters with every two-letter word `{x, y}`,
/// `x, y ∈ B`, in `A`. Lexicographically least among maximum sets.
pub fn max_homogeneous_letter_set(
    a: &SetSpec,
    letters: &[Letter],
    budget: u64,
) -> Result<LetterClique> {
    if a.ctx != GroupCtx::Boolean {
        return Err(Error::mismatch(GroupCtx::Boolean, a.ctx));
    }
    let mut ls = letters.to_vec();
    ls.sort_unstable();
    ls.dedup();
    let g = BitGraph::from_fn(ls.len(), |i, j| a.contains(&Element::word([ls[i], ls[j]])));
    let r = max_clique(&g, budget);
    let mut set: Vec<Letter> = r.set.into_iter().map(|i| ls[i]).collect();
    if set.is_empty() && !ls.is_empty() {
        set.push(ls[0]);
    }
    Ok(LetterClique {
        letters: set,
        exact: r.exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::{make_cube_gap_complement, Provenance};
    use crate::Window;

    #[test]
    fn pentagon_has_no_triangle() {
        let c = PairColoring::pentagon();
        assert_eq!(
            find_homogeneous(&c, 3, u64::MAX).unwrap(),
            Homogeneous::Absent
        );
        assert_eq!(
            find_homogeneous(&c, 2, u64::MAX).unwrap(),
            Homogeneous::Found {
                set: vec![0, 1],
                color: 0
            }
        );
    }

    #[test]
    fn homogeneous_examples() {
        let mono = PairColoring::from_fn(0..7, 2, |_, _| 1).unwrap();
        assert_eq!(
            find_homogeneous(&mono, 7, u64::MAX).unwrap(),
            Homogeneous::Found {
                set: (0..7).collect(),
                color: 1
            }
        );
        let parity = PairColoring::from_fn(0..6, 2, |u, v| ((u + v) % 2) as u8).unwrap();
        assert_eq!(
            find_homogeneous(&parity, 3, u64::MAX).unwrap(),
            Homogeneous::Found {
                set: vec![0, 2, 4],
                color: 0
            }
        );
    }

    #[test]
    fn small_ramsey_numbers() {
        assert_eq!(
            ramsey_bound_search(2, 2, 5, u64::MAX).unwrap().value(),
            Some(2)
        );
        let r = ramsey_bound_search(2, 3, 8, u64::MAX).unwrap();
        assert_eq!(r.value(), Some(6));
        let RamseySearch::Exact { below: Some(c), .. } = r else {
            panic!("expected a coloring below the bound");
        };
        assert_eq!(c.len(), 5);
        assert_eq!(
            find_homogeneous(&c, 3, u64::MAX).unwrap(),
            Homogeneous::Absent
        );
        assert_eq!(
            ramsey_bound_search(1, 4, 8, u64::MAX).unwrap().value(),
            Some(4)
        );
        assert_eq!(
            ramsey_bound_search(3, 2, 8, u64::MAX).unwrap().value(),
            Some(2)
        );
    }

    #[test]
    fn many_colors_is_undecided() {
        let r = ramsey_bound_search(6, 3, 40, 200_000).unwrap();
        let RamseySearch::Undecided {
            lower_bound,
            coloring: Some(c),
        } = r
        else {
            panic!("expected an undecided result");
        };
        assert_eq!(c.len(), lower_bound - 1);
        assert_eq!(
            find_homogeneous(&c, 3, u64::MAX).unwrap(),
            Homogeneous::Absent
        );
    }

    #[test]
    fn json_round_trip_and_validation() {
        let c = PairColoring::pentagon();
        assert_eq!(PairColoring::from_json(&c.to_json().unwrap()).unwrap(), c);
        let partial = r#"{"vertices":[0,1,2],"colors":2,"pairs":[[0,1,0],[1,2,1]]}"#;
        assert!(PairColoring::from_json(partial).is_err());
        let bad = r#"{"vertices":[0,1],"colors":2,"pairs":[[0,1,2]]}"#;
        assert!(PairColoring::from_json(bad).is_err());
    }

    #[test]
    fn arrow_outcomes() {
        let part = [0, 1, 2];
        let c = PairColoring::partition(0..8, &part).unwrap();
        let base = FilterBase::new(0..8, vec![vec![0, 1, 2], vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(
            arrow_check(&base, &c, 3, u64::MAX).unwrap(),
            Arrow::ZeroInBase { set: vec![0, 1, 2] }
        );
        let ones = PairColoring::from_fn(0..6, 2, |_, _| 1).unwrap();
        let base = FilterBase::new(0..6, vec![vec![0, 1, 2, 3, 4, 5]]).unwrap();
        assert!(matches!(
            arrow_check(&base, &ones, 6, u64::MAX).unwrap(),
            Arrow::OneHomogeneous { .. }
        ));
        let pent = PairColoring::pentagon();
        let base = FilterBase::new(0..5, vec![(0..5).collect()]).unwrap();
        assert_eq!(
            arrow_check(&base, &pent, 3, u64::MAX).unwrap(),
            Arrow::BaseInsufficient {
                max_one_homogeneous: vec![0, 2]
            }
        );
    }

    #[test]
    fn filter_checks() {
        let whole = FilterBase::new(0..5, vec![(0..5).collect()]).unwrap();
        let mono = PairColoring::from_fn(0..5, 2, |_, _| 0).unwrap();
        assert!(ramsey_filter_check(&whole, &[mono]).consistent());
        let halves = FilterBase::new(0..6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let c = PairColoring::partition(0..6, &[0, 1, 2]).unwrap();
        assert!(ramsey_filter_check(&halves, &[c]).consistent());
        let r = ramsey_filter_check(&whole, &[PairColoring::pentagon()]);
        assert_eq!(r.counterexample, Some(0));
        assert!(FilterBase::new(0..3, vec![vec![]]).is_err());
        assert!(FilterBase::new(0..3, vec![vec![7]]).is_err());
    }

    fn brute_letter_max(a: &SetSpec, letters: &[Letter]) -> usize {
        let n = letters.len();
        (0u32..1 << n)
            .filter(|m| {
                let b: Vec<Letter> = (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| letters[i])
                    .collect();
                b.iter().enumerate().all(|(i, &x)| {
                    b[i + 1..]
                        .iter()
                        .all(|&y| a.contains(&Element::word([x, y])))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn letter_cliques() {
        let all = SetSpec::new(
            "all",
            GroupCtx::Boolean,
            Window::boolean(2, 0, 9),
            Provenance::new("t"),
            |_| true,
        );
        let ls: Vec<Letter> = (0..10).collect();
        assert_eq!(
            max_homogeneous_letter_set(&all, &ls, u64::MAX)
                .unwrap()
                .letters,
            ls
        );
        let none = SetSpec::new(
            "none",
            GroupCtx::Boolean,
            Window::boolean(2, 0, 9),
            Provenance::new("t"),
            |w| w.letters().is_some_and(|l| l.len() != 2),
        );
        assert_eq!(
            max_homogeneous_letter_set(&none, &ls, u64::MAX)
                .unwrap()
                .letters,
            vec![0]
        );
        let cube = make_cube_gap_complement();
        let ls: Vec<Letter> = (0..=12).collect();
        let b = max_homogeneous_letter_set(&cube, &ls, u64::MAX).unwrap();
        assert_eq!(b.letters.len(), brute_letter_max(&cube, &ls));
        assert!(b.exact);
    }
}
