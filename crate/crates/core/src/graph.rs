//! Bitset graphs and the exact searches built on them: maximum clique
//! (hence maximum independent set), lexicographically least cliques of a
//! given size, and maximum subsets inducing no `K_n`.
//!
//! Vertices are `0..n` and follow the canonical order of whatever they
//! label, so "lexicographically least" always refers to sorted vertex
//! indices.

use std::fmt::Write as _;

/// Fixed-size bitset over `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    pub fn from_indices(len: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bits::new(len);
        for i in items {
            b.insert(i);
        }
        b
    }

    pub fn capacity(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    pub fn and_not(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
            len: self.len,
        }
    }

    pub fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn and_count(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Keeps only indices strictly greater than `i`.
    pub fn above(&self, i: usize) -> Bits {
        let mut out = self.clone();
        let w = i / 64;
        for word in out.words.iter_mut().take(w) {
            *word = 0;
        }
        if let Some(word) = out.words.get_mut(w) {
            let keep = (i % 64) + 1;
            *word &= if keep == 64 { 0 } else { !0u64 << keep };
        }
        out
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

/// Simple undirected graph with bitset adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGraph {
    adj: Vec<Bits>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        BitGraph {
            adj: vec![Bits::new(n); n],
        }
    }

    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = BitGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loops are not allowed");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &Bits {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bits::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> BitGraph {
        let n = self.len();
        let mut g = BitGraph::new(n);
        for u in 0..n {
            let mut row = Bits::full(n).and_not(&self.adj[u]);
            row.remove(u);
            g.adj[u] = row;
        }
        g
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// DIMACS undirected-graph text: `p edge N M` and one `e u v` line per
    /// edge, 1-based. Each comment line is prefixed with `c `.
    pub fn to_dimacs(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            for line in c.lines() {
                let _ = writeln!(out, "c {line}");
            }
        }
        let _ = writeln!(out, "p edge {} {}", self.len(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// Parses DIMACS text back into a graph, ignoring comments.
    pub fn from_dimacs(text: &str) -> Option<BitGraph> {
        let mut g: Option<BitGraph> = None;
        for line in text.lines() {
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("p") => {
                    let _kind = parts.next()?;
                    let n: usize = parts.next()?.parse().ok()?;
                    g = Some(BitGraph::new(n));
                }
                Some("e") => {
                    let u: usize = parts.next()?.parse().ok()?;
                    let v: usize = parts.next()?.parse().ok()?;
                    g.as_mut()?.add_edge(u - 1, v - 1);
                }
                _ => {}
            }
        }
        g
    }
}

/// Outcome of a budgeted maximum search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxSearch {
    /// Sorted vertex indices of the best set found.
    pub set: Vec<usize>,
    /// `false` when the node budget ran out; `set.len()` is then only a
    /// lower bound.
    pub exact: bool,
    pub nodes: u64,
}

impl MaxSearch {
    pub fn size(&self) -> usize {
        self.set.len()
    }
}

struct CliqueSearch<'g> {
    g: &'g BitGraph,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    best: Vec<usize>,
    /// Stop as soon as a clique of this size is found.
    target: Option<usize>,
}

impl<'g> CliqueSearch<'g> {
    fn new(g: &'g BitGraph, budget: u64) -> Self {
        CliqueSearch {
            g,
            nodes: 0,
            budget,
            exhausted: false,
            best: Vec::new(),
            target: None,
        }
    }

    fn done(&self) -> bool {
        self.exhausted || self.target.is_some_and(|t| self.best.len() >= t)
    }

    /// Greedy sequential coloring of `p`: returns vertices with their color
    /// numbers in nondecreasing color order.
    fn color_sort(&self, p: &Bits) -> Vec<(usize, usize)> {
        let mut uncolored = p.clone();
        let mut out = Vec::with_capacity(p.count());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                uncolored.remove(v);
                q.remove(v);
                q = q.and_not(&self.g.adj[v]);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: Bits) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let order = self.color_sort(&p);
        for &(v, color) in order.iter().rev() {
            if self.done() || r.len() + color <= self.best.len() {
                return;
            }
            r.push(v);
            let np = p.and(&self.g.adj[v]);
            if np.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, np);
            }
            r.pop();
            p.remove(v);
        }
    }
}

/// Maximum clique within `candidates`, by branch and bound with greedy
/// coloring bounds. The returned clique is the lexicographically least
/// maximum clique whenever the search completes.
pub fn max_clique_in(g: &BitGraph, candidates: &Bits, budget: u64) -> MaxSearch {
    let mut s = CliqueSearch::new(g, budget);
    if !candidates.is_empty() {
        s.expand(&mut Vec::new(), candidates.clone());
    }
    let mut nodes = s.nodes;
    let exact = !s.exhausted;
    let mut set = s.best;
    set.sort_unstable();
    if exact && !set.is_empty() {
        let k = set.len();
        match lex_least_clique_in(g, candidates, k, budget.saturating_sub(nodes)) {
            (Some(c), n) => {
                nodes += n;
                set = c;
            }
            (None, n) => nodes += n,
        }
    }
    MaxSearch { set, exact, nodes }
}

pub fn max_clique(g: &BitGraph, budget: u64) -> MaxSearch {
    max_clique_in(g, &Bits::full(g.len()), budget)
}

/// Maximum independent set, as a maximum clique of the complement.
pub fn max_independent_set(g: &BitGraph, budget: u64) -> MaxSearch {
    max_clique(&g.complement(), budget)
}

/// Whether `candidates` holds a clique of size `k`; `None` when the budget
/// ran out first.
pub fn has_clique(g: &BitGraph, candidates: &Bits, k: usize, budget: u64) -> (Option<bool>, u64) {
    if k == 0 {
        return (Some(true), 0);
    }
    if candidates.count() < k {
        return (Some(false), 0);
    }
    if k == 1 {
        return (Some(true), 0);
    }
    let mut s = CliqueSearch::new(g, budget);
    s.target = Some(k);
    s.best = Vec::new();
    s.expand(&mut Vec::new(), candidates.clone());
    if s.best.len() >= k {
        (Some(true), s.nodes)
    } else if s.exhausted {
        (None, s.nodes)
    } else {
        (Some(false), s.nodes)
    }
}

/// The lexicographically least clique of size exactly `k` inside
/// `candidates`, if one exists within the budget.
pub fn lex_least_clique_in(
    g: &BitGraph,
    candidates: &Bits,
    k: usize,
    budget: u64,
) -> (Option<Vec<usize>>, u64) {
    let mut nodes = 0u64;
    let mut chosen = Vec::with_capacity(k);
    let mut cand = candidates.clone();
    while chosen.len() < k {
        let need = k - chosen.len() - 1;
        let mut picked = None;
        for v in cand.iter() {
            let rest = cand.and(&g.adj[v]).above(v);
            let (ok, n) = has_clique(g, &rest, need, budget.saturating_sub(nodes));
            nodes += n;
            match ok {
                Some(true) => {
                    picked = Some((v, rest));
                    break;
                }
                Some(false) => {}
                None => return (None, nodes),
            }
        }
        match picked {
            Some((v, rest)) => {
                chosen.push(v);
                cand = rest;
            }
            None => return (None, nodes),
        }
    }
    (Some(chosen), nodes)
}

/// Lexicographically least independent set of size `k`.
pub fn lex_least_independent_set(g: &BitGraph, k: usize, budget: u64) -> (Option<Vec<usize>>, u64) {
    let c = g.complement();
    lex_least_clique_in(&c, &Bits::full(c.len()), k, budget)
}

/// Greedy partition of the vertices into cliques, lowest index first.
pub fn greedy_clique_cover(g: &BitGraph) -> Vec<Vec<usize>> {
    let mut left = Bits::full(g.len());
    let mut cover = Vec::new();
    while let Some(v) = left.first() {
        let mut clique = vec![v];
        left.remove(v);
        let mut cand = left.and(&g.adj[v]);
        while let Some(u) = cand.first() {
            clique.push(u);
            left.remove(u);
            cand.remove(u);
            cand = cand.and(&g.adj[u]);
        }
        cover.push(clique);
    }
    cover
}

/// Largest vertex subset whose induced subgraph contains no clique of size
/// `n` (`n ≥ 2`). The result is the lexicographically least such subset
/// when the search completes.
///
/// Each block of a clique cover contributes at most `n - 1` vertices, which
/// gives the pruning bound.
pub fn max_kn_free_subset(g: &BitGraph, n: usize, budget: u64) -> MaxSearch {
    assert!(n >= 2, "K_n-free search needs n >= 2");
    let cover = greedy_clique_cover(g);
    let mut block_of = vec![0usize; g.len()];
    for (b, c) in cover.iter().enumerate() {
        for &v in c {
            block_of[v] = b;
        }
    }
    let mut st = KnFree {
        g,
        n,
        block_of,
        chosen_in_block: vec![0; cover.len()],
        remaining_in_block: cover.iter().map(Vec::len).collect(),
        chosen: Vec::new(),
        chosen_bits: Bits::new(g.len()),
        best: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    st.search(0);
    MaxSearch {
        set: st.best,
        exact: !st.exhausted,
        nodes: st.nodes,
    }
}

struct KnFree<'g> {
    g: &'g BitGraph,
    n: usize,
    block_of: Vec<usize>,
    chosen_in_block: Vec<usize>,
    remaining_in_block: Vec<usize>,
    chosen: Vec<usize>,
    chosen_bits: Bits,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl KnFree<'_> {
    fn bound(&self) -> usize {
        self.chosen_in_block
            .iter()
            .zip(&self.remaining_in_block)
            .map(|(c, r)| (c + r).min(self.n - 1))
            .sum()
    }

    fn search(&mut self, v: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if self.bound() <= self.best.len() {
            return;
        }
        if v == self.g.len() {
            self.best = self.chosen.clone();
            return;
        }
        let b = self.block_of[v];
        self.remaining_in_block[b] -= 1;
        let nbrs = self.chosen_bits.and(&self.g.adj[v]);
        let closes_clique = match self.n {
            2 => !nbrs.is_empty(),
            _ => {
                let (found, used) = has_clique(self.g, &nbrs, self.n - 1, u64::MAX);
                self.nodes += used;
                found.unwrap_or(true)
            }
        };
        if !closes_clique {
            self.chosen.push(v);
            self.chosen_bits.insert(v);
            self.chosen_in_block[b] += 1;
            self.search(v + 1);
            self.chosen_in_block[b] -= 1;
            self.chosen_bits.remove(v);
            self.chosen.pop();
        }
        if !self.exhausted {
            self.search(v + 1);
        }
        self.remaining_in_block[b] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_alpha(g: &BitGraph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|m| {
                let vs: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
                g.is_independent(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn pseudo_random_graph(n: usize, seed: u64, density: u64) -> BitGraph {
        let mut x = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        BitGraph::from_fn(n, |_, _| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            x % 100 < density
        })
    }

    #[test]
    fn bits_basics() {
        let mut b = Bits::new(130);
        for i in [0, 63, 64, 129] {
            b.insert(i);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), [0, 63, 64, 129]);
        assert_eq!(b.above(63).iter().collect::<Vec<_>>(), [64, 129]);
        assert_eq!(b.above(0).iter().collect::<Vec<_>>(), [63, 64, 129]);
        assert_eq!(b.first(), Some(0));
        assert_eq!(b.count(), 4);
    }

    #[test]
    fn two_cliques() {
        // parity classes of 0..7
        let g = BitGraph::from_fn(7, |u, v| u % 2 == v % 2);
        let mis = max_independent_set(&g, u64::MAX);
        assert_eq!(mis.set, vec![0, 1]);
        assert!(mis.exact);
        let mc = max_clique(&g, u64::MAX);
        assert_eq!(mc.set, vec![0, 2, 4, 6]);
        let k3 = max_kn_free_subset(&g, 3, u64::MAX);
        assert_eq!(k3.set, vec![0, 1, 2, 3]);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        for seed in 0..40 {
            let n = 6 + (seed as usize % 9);
            let g = pseudo_random_graph(n, seed, 20 + seed % 60);
            let alpha = brute_alpha(&g);
            let mis = max_independent_set(&g, u64::MAX);
            assert_eq!(mis.size(), alpha, "seed {seed}");
            assert!(g.is_independent(&mis.set));
            let via_kn = max_kn_free_subset(&g, 2, u64::MAX);
            assert_eq!(
                via_kn.set, mis.set,
                "lex-least witnesses differ, seed {seed}"
            );
        }
    }

    #[test]
    fn lex_least_is_least() {
        for seed in 0..20 {
            let g = pseudo_random_graph(11, seed, 55);
            let omega = max_clique(&g, u64::MAX);
            let k = omega.size();
            let brute = (0u32..1 << 11)
                .filter(|m| m.count_ones() as usize == k)
                .map(|m| (0..11).filter(|i| m >> i & 1 == 1).collect::<Vec<usize>>())
                .filter(|vs| g.is_clique(vs))
                .min()
                .unwrap();
            assert_eq!(omega.set, brute, "seed {seed}");
        }
    }

    #[test]
    fn budget_exhaustion_reports_lower_bound() {
        let g = pseudo_random_graph(60, 7, 50);
        let r = max_clique(&g, 3);
        assert!(!r.exact);
        assert!(g.is_clique(&r.set));
    }

    #[test]
    fn dimacs_round_trip() {
        let g = BitGraph::from_fn(7, |u, v| u % 2 == v % 2);
        let text = g.to_dimacs(&["parity".to_string()]);
        assert!(text.starts_with("c parity\np edge 7 9\n"));
        assert_eq!(BitGraph::from_dimacs(&text).unwrap(), g);
    }
}
