//! Exact minimum set cover by branch and bound, with extraction of the
//! lexicographically least optimal cover.

use crate::graph::Bits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOutcome {
    /// Minimum cover size and the lexicographically least cover of that
    /// size, as sorted candidate indices.
    Found { size: usize, cover: Vec<usize> },
    /// No cover with at most `kmax` sets exists.
    NoneUpTo { kmax: usize },
    /// Budget ran out; covers of size `< checked_below` were ruled out.
    Exhausted { checked_below: usize },
}

/// Covering problem: every universe element must lie in a chosen candidate.
pub struct SetCover {
    universe: usize,
    candidates: Vec<Bits>,
    /// For each element, the candidates containing it.
    covering: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl SetCover {
    /// `candidates[i]` are subsets of `0..universe`.
    pub fn new(universe: usize, candidates: Vec<Bits>, budget: u64) -> Self {
        let mut covering = vec![Vec::new(); universe];
        for (i, c) in candidates.iter().enumerate() {
            for e in c.iter() {
                covering[e].push(i);
            }
        }
        SetCover {
            universe,
            candidates,
            covering,
            nodes: 0,
            budget,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Smallest cover with at most `kmax` candidates.
    pub fn solve(&mut self, kmax: usize) -> CoverOutcome {
        let all = Bits::full(self.universe);
        if self.universe == 0 {
            return CoverOutcome::Found {
                size: 0,
                cover: Vec::new(),
            };
        }
        if self.covering.iter().any(Vec::is_empty) {
            return CoverOutcome::NoneUpTo { kmax };
        }
        for k in 1..=kmax {
            match self.feasible(&all, k, 0) {
                Some(true) => {
                    return match self.lex_least(k) {
                        Some(cover) => CoverOutcome::Found { size: k, cover },
                        None => CoverOutcome::Exhausted { checked_below: k },
                    }
                }
                Some(false) => {}
                None => return CoverOutcome::Exhausted { checked_below: k },
            }
        }
        CoverOutcome::NoneUpTo { kmax }
    }

    fn lex_least(&mut self, k: usize) -> Option<Vec<usize>> {
        let mut uncovered = Bits::full(self.universe);
        let mut chosen = Vec::with_capacity(k);
        let mut from = 0;
        while !uncovered.is_empty() {
            let left = k - chosen.len();
            let mut picked = None;
            for c in from..self.candidates.len() {
                let rest = uncovered.and_not(&self.candidates[c]);
                if self.feasible(&rest, left - 1, c + 1)? {
                    picked = Some((c, rest));
                    break;
                }
            }
            let (c, rest) = picked?;
            chosen.push(c);
            uncovered = rest;
            from = c + 1;
        }
        Some(chosen)
    }

    /// Can `uncovered` be covered by at most `r` candidates with index
    /// `>= from`? `None` on budget exhaustion.
    fn feasible(&mut self, uncovered: &Bits, r: usize, from: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if uncovered.is_empty() {
            return Some(true);
        }
        if r == 0 {
            return Some(false);
        }
        // branch on the element with the fewest usable candidates
        let mut pivot = None;
        let mut fewest = usize::MAX;
        for e in uncovered.iter() {
            let cnt = self.covering[e].iter().filter(|&&c| c >= from).count();
            if cnt < fewest {
                fewest = cnt;
                pivot = Some(e);
                if cnt == 0 {
                    return Some(false);
                }
            }
        }
        let largest = (from..self.candidates.len())
            .map(|c| self.candidates[c].and_count(uncovered))
            .max()
            .unwrap_or(0);
        if largest == 0 || uncovered.count().div_ceil(largest) > r {
            return Some(false);
        }
        let pivot = pivot.expect("uncovered is nonempty");
        let opts: Vec<usize> = self.covering[pivot]
            .iter()
            .copied()
            .filter(|&c| c >= from)
            .collect();
        for c in opts {
            let rest = uncovered.and_not(&self.candidates[c]);
            if self.feasible(&rest, r - 1, from)? {
                return Some(true);
            }
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(universe: usize, raw: &[&[usize]]) -> Vec<Bits> {
        raw.iter()
            .map(|s| Bits::from_indices(universe, s.iter().copied()))
            .collect()
    }

    fn brute(universe: usize, cands: &[Bits]) -> Option<Vec<usize>> {
        let m = cands.len();
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..1 << m {
            let pick: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            let mut u = Bits::new(universe);
            for &i in &pick {
                u.union_with(&cands[i]);
            }
            if u.count() == universe {
                let better = match &best {
                    None => true,
                    Some(b) => (pick.len(), &pick) < (b.len(), b),
                };
                if better {
                    best = Some(pick);
                }
            }
        }
        best
    }

    #[test]
    fn small_instance() {
        let c = sets(5, &[&[0, 1], &[2, 3], &[1, 2, 3], &[4], &[0, 4]]);
        let mut sc = SetCover::new(5, c, u64::MAX);
        assert_eq!(
            sc.solve(5),
            CoverOutcome::Found {
                size: 2,
                cover: vec![2, 4]
            }
        );
    }

    #[test]
    fn kmax_too_small() {
        let c = sets(3, &[&[0], &[1], &[2]]);
        assert_eq!(
            SetCover::new(3, c, u64::MAX).solve(2),
            CoverOutcome::NoneUpTo { kmax: 2 }
        );
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut x: u64 = 0x9e3779b97f4a7c15;
        for round in 0..60 {
            let universe = 4 + round % 6;
            let m = 5 + round % 7;
            let mut cands = Vec::new();
            for _ in 0..m {
                let mut b = Bits::new(universe);
                for e in 0..universe {
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    if x.is_multiple_of(3) {
                        b.insert(e);
                    }
                }
                cands.push(b);
            }
            let expect = brute(universe, &cands);
            let got = SetCover::new(universe, cands, u64::MAX).solve(m);
            match expect {
                Some(cover) => assert_eq!(
                    got,
                    CoverOutcome::Found {
                        size: cover.len(),
                        cover
                    },
                    "round {round}"
                ),
                None => assert_eq!(got, CoverOutcome::NoneUpTo { kmax: m }),
            }
        }
    }
}
