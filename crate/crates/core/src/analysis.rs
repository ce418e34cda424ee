//! Worked computations on concrete sets: interval densities, cube
//! differences, discrete quotient sets and sequences whose quotient sets
//! sit inside a thick set.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{enumerate_window, left_div_unchecked, Element, GroupCtx, Limits, Window, STAR};
use crate::largeness::{is_thick_on, syndeticity_index, LargenessReport, ProbeFamily};
use crate::set::{make_cube_gap_complement, positive_cube_root, FiniteSet, Provenance, SetSpec};

/// A nonnegative fraction in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

// ---------------------------------------------------------------------------
// Interval density
// ---------------------------------------------------------------------------

/// Densest interval of one length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityRow {
    pub len: u64,
    pub start: i64,
    pub count: u64,
    pub density: Ratio,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub set: String,
    pub window: Window,
    pub window_len: u64,
    /// `(start, len)` of the densest interval found.
    pub best_interval: (i64, u64),
    pub density: Ratio,
    /// One row per scanned length, in increasing order of length.
    pub trend: Vec<DensityRow>,
}

/// For each length `d`, the largest value of `|S ∩ I| / d` over intervals
/// `I ⊆ w` of length `d`. Ties go to the shorter, then earlier, interval.
pub fn banach_density_estimate(s: &SetSpec, w: &Window, lens: &[u64]) -> Result<DensityReport> {
    let Window::IntRange { lo, hi } = *w else {
        return Err(Error::mismatch(GroupCtx::Integer, "a non-integer window"));
    };
    if s.ctx != GroupCtx::Integer {
        return Err(Error::mismatch(GroupCtx::Integer, s.ctx));
    }
    let window_len = (hi - lo + 1) as u64;
    let mut lens = lens.to_vec();
    lens.sort_unstable();
    lens.dedup();
    if lens.is_empty() {
        return Err(Error::Precondition("no interval lengths given".into()));
    }
    if let Some(&bad) = lens.iter().find(|&&d| d == 0 || d > window_len) {
        return Err(Error::Precondition(format!(
            "interval length {bad} does not fit in {w}"
        )));
    }
    let mut prefix = Vec::with_capacity(window_len as usize + 1);
    prefix.push(0u64);
    for n in lo..=hi {
        let last = *prefix.last().unwrap_or(&0);
        prefix.push(last + s.contains(&Element::Int(n)) as u64);
    }
    let mut trend = Vec::with_capacity(lens.len());
    for &d in &lens {
        let d_us = d as usize;
        let (mut start, mut count) = (0usize, 0u64);
        for i in 0..=(window_len as usize - d_us) {
            let c = prefix[i + d_us] - prefix[i];
            if c > count || i == 0 {
                start = i;
                count = c;
            }
        }
        trend.push(DensityRow {
            len: d,
            start: lo + start as i64,
            count,
            density: Ratio::new(count, d),
        });
    }
    let best = trend
        .iter()
        .fold(&trend[0], |b, r| if r.density > b.density { r } else { b });
    Ok(DensityReport {
        set: s.name.clone(),
        window: *w,
        window_len,
        best_interval: (best.start, best.len),
        density: best.density,
        trend,
    })
}

// ---------------------------------------------------------------------------
// Cube differences
// ---------------------------------------------------------------------------

/// `(x, y, z)` with `x, y ∈ S`, `x > y` and `x - y = z^3`; the least `x`,
/// then the least `y`, in canonical order.
pub fn sarkozy_witness(s: &FiniteSet) -> Result<Option<(i64, i64, i64)>> {
    if s.ctx() != GroupCtx::Integer {
        return Err(Error::mismatch(GroupCtx::Integer, s.ctx()));
    }
    if s.is_empty() {
        return Err(Error::Precondition("empty set".into()));
    }
    let vals: Vec<i64> = s.iter().filter_map(Element::as_int).collect();
    for &x in &vals {
        for &y in &vals {
            if x > y {
                if let Some(z) = x.checked_sub(y).and_then(positive_cube_root) {
                    return Ok(Some((x, y, z)));
                }
            }
        }
    }
    Ok(None)
}

/// Where candidate sets are tested for covering the group by few translates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSearch {
    pub syndetic_window: Window,
    pub pad: usize,
    pub kmax: usize,
}

impl Default for CubeSearch {
    fn default() -> Self {
        CubeSearch {
            syndetic_window: Window::boolean(2, 0, 7),
            pad: 1,
            kmax: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeViolation {
    pub first: Element,
    pub second: Element,
    pub sum: Element,
    pub gap_root: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeCandidateReport {
    pub set: String,
    pub syndeticity: LargenessReport,
    pub elements_scanned: usize,
    pub pairs_checked: u64,
    /// `None` means no violation on the window, which proves nothing.
    pub violation: Option<CubeViolation>,
}

/// For each candidate `B`, the least pair `b < b'` in `B ∩ w` whose sum is a
/// two-letter word with a positive cube gap. Syndeticity of `B` is computed
/// first and reported alongside.
pub fn cube_noncontainment_search(
    candidates: &[SetSpec],
    w: &Window,
    opts: &CubeSearch,
    limits: &Limits,
) -> Result<Vec<CubeCandidateReport>> {
    w.check(GroupCtx::Boolean)?;
    let a = make_cube_gap_complement();
    let elems = enumerate_window(GroupCtx::Boolean, w, limits)?;
    let mut out = Vec::with_capacity(candidates.len());
    for b in candidates {
        if b.ctx != GroupCtx::Boolean {
            return Err(Error::mismatch(GroupCtx::Boolean, b.ctx));
        }
        let syndeticity = syndeticity_index(b, &opts.syndetic_window, opts.pad, opts.kmax, limits)?;
        let members: Vec<&Element> = elems.iter().filter(|g| b.contains(g)).collect();
        let mut pairs_checked = 0u64;
        let mut violation = None;
        'scan: for (i, x) in members.iter().enumerate() {
            for y in &members[i + 1..] {
                pairs_checked += 1;
                let sum = left_div_unchecked(x, y);
                if !a.contains(&sum) {
                    let l = sum.letters().unwrap_or_default();
                    violation = Some(CubeViolation {
                        first: (*x).clone(),
                        second: (*y).clone(),
                        gap_root: positive_cube_root(l[1] - l[0]).unwrap_or_default(),
                        sum,
                    });
                    break 'scan;
                }
            }
        }
        out.push(CubeCandidateReport {
            set: b.name.clone(),
            syndeticity,
            elements_scanned: members.len(),
            pairs_checked,
            violation,
        });
    }
    Ok(out)
}

fn plain_letters(g: &Element) -> Option<&[i64]> {
    g.letters().filter(|w| !w.contains(&STAR))
}

/// Boolean words all of whose letters are `≡ r (mod d)`.
pub fn make_letter_progression(d: i64, r: i64) -> Result<SetSpec> {
    if d <= 0 {
        return Err(Error::Precondition(format!(
            "modulus must be positive, got {d}"
        )));
    }
    let r = r.rem_euclid(d);
    Ok(SetSpec::new(
        format!("letters⊆{r}+{d}Z"),
        GroupCtx::Boolean,
        Window::boolean(1, 0, 7 * d),
        Provenance::new("letter_progression")
            .param("d", d)
            .param("r", r),
        move |g| plain_letters(g).is_some_and(|w| w.iter().all(|x| x.rem_euclid(d) == r)),
    ))
}

/// Boolean words whose letter sum is `≡ r (mod d)`.
pub fn make_letter_sum_class(d: i64, r: i64) -> Result<SetSpec> {
    if d <= 0 {
        return Err(Error::Precondition(format!(
            "modulus must be positive, got {d}"
        )));
    }
    let r = r.rem_euclid(d);
    Ok(SetSpec::new(
        format!("sum≡{r} mod {d}"),
        GroupCtx::Boolean,
        Window::boolean(2, 0, 7),
        Provenance::new("letter_sum_class")
            .param("d", d)
            .param("r", r),
        move |g| plain_letters(g).is_some_and(|w| w.iter().sum::<i64>().rem_euclid(d) == r),
    ))
}

/// Candidate sets for the cube-difference search: letter progressions,
/// letter-sum classes and the even-length words with a translate.
pub fn cube_candidate_family() -> Vec<SetSpec> {
    let mut out = Vec::new();
    for (d, r) in [(7, 0), (2, 0), (3, 1)] {
        out.extend(make_letter_progression(d, r));
    }
    for (d, r) in [(2, 0), (3, 0), (3, 2)] {
        out.extend(make_letter_sum_class(d, r));
    }
    let even = crate::set::make_length_filtered(crate::set::LengthSet::Even);
    out.extend(crate::set::translate(&Element::word([0]), &even));
    out.push(even);
    out
}

// ---------------------------------------------------------------------------
// Discrete quotient sets
// ---------------------------------------------------------------------------

/// A level `n` with `g ∉ A_n`, and how many points of `D` lie outside `A_n`
/// on the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub point: Element,
    /// 1-based; `None` when `g` lies in every given `A_n`.
    pub level: Option<usize>,
    pub points_outside: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscreteReport {
    pub set: FiniteSet,
    pub window: Window,
    pub identity_excluded: bool,
    pub separations: Vec<Separation>,
    pub all_separated: bool,
}

/// `D = ⋃_n { a^-1 b : a ≠ b ∈ F_n, a^-1 b ∈ A_n }`, with each point of `D`
/// isolated by the complement of some `A_n`.
///
/// The `A_n` must decrease on `w`.
pub fn discrete_set_construct(
    fs: &[FiniteSet],
    as_: &[SetSpec],
    w: &Window,
    limits: &Limits,
) -> Result<DiscreteReport> {
    if fs.len() != as_.len() {
        return Err(Error::Precondition(format!(
            "{} finite sets but {} sets A_n",
            fs.len(),
            as_.len()
        )));
    }
    let Some(first) = as_.first() else {
        return Err(Error::Precondition("empty sequence".into()));
    };
    let ctx = first.ctx;
    w.check(ctx)?;
    for f in fs {
        if f.ctx() != ctx {
            return Err(Error::mismatch(ctx, f.ctx()));
        }
    }
    for a in as_ {
        if a.ctx != ctx {
            return Err(Error::mismatch(ctx, a.ctx));
        }
    }
    let elems = enumerate_window(ctx, w, limits)?;
    for n in 1..as_.len() {
        if let Some(g) = elems
            .iter()
            .find(|g| as_[n].contains(g) && !as_[n - 1].contains(g))
        {
            return Err(Error::Precondition(format!(
                "{g} lies in set {} but not in set {n}",
                n + 1
            )));
        }
    }

    let mut d = Vec::new();
    for (f, a) in fs.iter().zip(as_) {
        for x in f {
            for y in f {
                if x != y {
                    let q = left_div_unchecked(x, y);
                    if a.contains(&q) {
                        d.push(q);
                    }
                }
            }
        }
    }
    let d = FiniteSet::new(ctx, d)?;
    let in_window: Vec<&Element> = d.iter().filter(|g| w.contains(g)).collect();
    let separations: Vec<Separation> = d
        .iter()
        .map(|g| {
            let level = as_.iter().position(|a| !a.contains(g));
            Separation {
                point: g.clone(),
                level: level.map(|n| n + 1),
                points_outside: level.map_or(0, |n| {
                    in_window.iter().filter(|x| !as_[n].contains(x)).count()
                }),
            }
        })
        .collect();
    Ok(DiscreteReport {
        identity_excluded: !d.contains(&ctx.identity()),
        all_separated: separations.iter().all(|s| s.level.is_some()),
        set: d,
        window: *w,
        separations,
    })
}

// ---------------------------------------------------------------------------
// Thick sets as quotient sets
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaRepresentation {
    pub set: String,
    pub window: Window,
    pub requested: usize,
    pub sequence: Vec<Element>,
    /// Points of `T ∩ w` that are quotients `g_m^-1 g_n`, `m < n`.
    pub covered: usize,
    pub target: usize,
    pub coverage: f64,
    /// Translate of the probe set found inside `T`.
    pub thick_at: Element,
}

/// Greedy one-to-one sequence in `w`. Each step takes, among elements whose
/// quotients with all earlier terms lie in `T ∪ {e}`, one adding the most
/// new members of `T ∩ w` to the quotient set, the canonically least on
/// ties.
///
/// `T` must contain a translate of the standard probe set of `w` by an
/// element of `w`.
pub fn thick_delta_representation(
    t: &SetSpec,
    w: &Window,
    len: usize,
    limits: &Limits,
) -> Result<DeltaRepresentation> {
    if matches!(t.ctx, GroupCtx::Free { .. }) {
        return Err(Error::mismatch("integer or boolean", t.ctx));
    }
    w.check(t.ctx)?;
    let probe = FiniteSet::from_sorted(
        t.ctx,
        enumerate_window(t.ctx, &ProbeFamily::standard(w).ground, limits)?,
    );
    let Some(thick_at) = is_thick_on(t, &probe, w, limits)? else {
        return Err(Error::NotThick {
            set: t.name.clone(),
            window: w.to_string(),
        });
    };
    let e = t.ctx.identity();
    let good = |q: &Element| *q == e || t.contains(q);
    let elems = enumerate_window(t.ctx, w, limits)?;
    let target: BTreeSet<&Element> = elems.iter().filter(|g| t.contains(g)).collect();
    let mut seq: Vec<Element> = Vec::with_capacity(len);
    let mut used = vec![false; elems.len()];
    let mut hit: BTreeSet<Element> = BTreeSet::new();
    while seq.len() < len {
        // (new targets covered, index); the first maximum is canonically least
        let mut best: Option<(usize, usize)> = None;
        for (i, g) in elems.iter().enumerate() {
            if used[i] {
                continue;
            }
            let qs: Vec<Element> = seq.iter().map(|x| left_div_unchecked(x, g)).collect();
            if !qs.iter().all(good) {
                continue;
            }
            let fresh: BTreeSet<&Element> = qs
                .iter()
                .filter(|q| target.contains(q) && !hit.contains(*q))
                .collect();
            if best.is_none_or(|(score, _)| fresh.len() > score) {
                best = Some((fresh.len(), i));
            }
        }
        let Some((_, i)) = best else { break };
        used[i] = true;
        let g = &elems[i];
        hit.extend(seq.iter().map(|x| left_div_unchecked(x, g)));
        seq.push(g.clone());
    }
    let covered = target.iter().filter(|g| hit.contains(**g)).count();
    Ok(DeltaRepresentation {
        set: t.name.clone(),
        window: *w,
        requested: len,
        coverage: if target.is_empty() {
            0.0
        } else {
            covered as f64 / target.len() as f64
        },
        covered,
        target: target.len(),
        sequence: seq,
        thick_at,
    })
}

/// A subgroup of `B(X)` with `size` elements inside `(T ∪ {∅}) ∩ w`, grown
/// by adjoining the canonically least usable generator.
pub fn subgroup_in_thick(
    t: &SetSpec,
    w: &Window,
    size: usize,
    limits: &Limits,
) -> Result<Option<FiniteSet>> {
    if t.ctx != GroupCtx::Boolean {
        return Err(Error::mismatch(GroupCtx::Boolean, t.ctx));
    }
    if !size.is_power_of_two() {
        return Err(Error::Precondition(format!(
            "subgroups of a Boolean group have power-of-two order, not {size}"
        )));
    }
    w.check(GroupCtx::Boolean)?;
    let mut h = vec![Element::word([])];
    for g in enumerate_window(GroupCtx::Boolean, w, limits)? {
        if h.len() >= size {
            break;
        }
        if h.contains(&g) {
            continue;
        }
        let coset: Vec<Element> = h.iter().map(|x| left_div_unchecked(x, &g)).collect();
        if coset.iter().all(|y| w.contains(y) && t.contains(y)) {
            h.extend(coset);
        }
    }
    (h.len() == size)
        .then(|| FiniteSet::new(GroupCtx::Boolean, h))
        .transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::{
        complement, make_coset, make_geometric_union, make_length_filtered, whole_group, LengthSet,
    };

    fn lim() -> Limits {
        Limits::default()
    }

    fn brute_density(s: &SetSpec, lo: i64, hi: i64, d: i64) -> Ratio {
        (lo..=hi - d + 1)
            .map(|a| {
                let c = (a..a + d).filter(|&n| s.contains(&Element::Int(n))).count();
                Ratio::new(c as u64, d as u64)
            })
            .max()
            .unwrap()
    }

    #[test]
    fn density_of_cosets() {
        let evens = make_coset(2, 0).unwrap();
        let r = banach_density_estimate(&evens, &Window::int(0, 100), &[10, 2, 3, 4]).unwrap();
        let dens: Vec<Ratio> = r.trend.iter().map(|x| x.density).collect();
        assert_eq!(
            dens,
            [
                Ratio::new(1, 2),
                Ratio::new(2, 3),
                Ratio::new(1, 2),
                Ratio::new(1, 2)
            ]
        );
        assert_eq!(r.density, Ratio::new(2, 3));
        assert_eq!(r.best_interval, (0, 3));
        for d in [2u64, 3, 4, 10] {
            let row = r.trend.iter().find(|x| x.len == d).unwrap();
            assert_eq!(row.density, Ratio::new(d.div_ceil(2), d));
        }

        for m in 2..7 {
            let s = make_coset(m, 1).unwrap();
            let r = banach_density_estimate(&s, &Window::int(-40, 40), &[5, 12, 30]).unwrap();
            for row in &r.trend {
                assert_eq!(row.density, brute_density(&s, -40, 40, row.len as i64));
                assert_eq!(row.density, Ratio::new(row.len.div_ceil(m as u64), row.len));
            }
        }
    }

    #[test]
    fn density_of_empty_and_bad_lengths() {
        let e = crate::set::empty_set(GroupCtx::Integer, Window::int(0, 9));
        let r = banach_density_estimate(&e, &Window::int(0, 9), &[3]).unwrap();
        assert_eq!(r.density, Ratio::new(0, 1));
        assert_eq!(r.best_interval, (0, 3));
        assert!(banach_density_estimate(&e, &Window::int(0, 9), &[11]).is_err());
        assert!(banach_density_estimate(&e, &Window::int(0, 9), &[0]).is_err());
    }

    #[test]
    fn sarkozy_examples() {
        assert_eq!(
            sarkozy_witness(&FiniteSet::ints([0, 8])).unwrap(),
            Some((8, 0, 2))
        );
        assert_eq!(sarkozy_witness(&FiniteSet::ints([0, 5])).unwrap(), None);
        assert_eq!(
            sarkozy_witness(&FiniteSet::ints([3, 4])).unwrap(),
            Some((4, 3, 1))
        );
        assert_eq!(sarkozy_witness(&FiniteSet::ints([1, 3, 5])).unwrap(), None);
        assert!(sarkozy_witness(&FiniteSet::ints([])).is_err());
    }

    #[test]
    fn cube_search_examples() {
        let b = make_letter_progression(7, 0).unwrap();
        let rep = cube_noncontainment_search(
            &[b],
            &Window::boolean(1, 0, 400),
            &CubeSearch::default(),
            &lim(),
        )
        .unwrap();
        let v = rep[0].violation.as_ref().unwrap();
        assert_eq!(v.first, Element::word([0]));
        assert_eq!(v.second, Element::word([343]));
        assert_eq!(v.sum, Element::word([0, 343]));
        assert_eq!(v.gap_root, 7);
        // infinite index, so no small cover
        assert_ne!(rep[0].syndeticity.decided, Some(true));

        let single =
            crate::set::from_finite(&FiniteSet::words([vec![3]]), Window::boolean(1, 0, 9));
        let tiny = crate::set::from_finite(
            &FiniteSet::words([vec![], vec![0], vec![5]]),
            Window::boolean(1, 0, 9),
        );
        let rep = cube_noncontainment_search(
            &[single, tiny],
            &Window::boolean(2, 0, 9),
            &CubeSearch::default(),
            &lim(),
        )
        .unwrap();
        assert_eq!(rep[0].pairs_checked, 0);
        assert!(rep[0].violation.is_none());
        assert_eq!(rep[1].pairs_checked, 3);
        assert!(rep[1].violation.is_none());
    }

    #[test]
    fn candidate_family_finds_violations() {
        let fam = cube_candidate_family();
        let rep = cube_noncontainment_search(
            &fam,
            &Window::boolean(3, 0, 12),
            &CubeSearch::default(),
            &lim(),
        )
        .unwrap();
        let even = rep.iter().find(|r| r.set == "len∈{even}").unwrap();
        assert_eq!(even.syndeticity.value, Some(2));
        assert!(even.syndeticity.holds());
        for r in &rep {
            if let Some(v) = &r.violation {
                let l = v.sum.letters().unwrap();
                assert_eq!(l[1] - l[0], v.gap_root.pow(3));
                assert_eq!(left_div_unchecked(&v.first, &v.second), v.sum);
            }
            if r.syndeticity.holds() {
                assert!(r.violation.is_some(), "{}", r.set);
            }
        }
    }

    #[test]
    fn discrete_examples() {
        let w = Window::int(-20, 20);
        let singles = [FiniteSet::ints([0]), FiniteSet::ints([5])];
        let a = [make_coset(2, 0).unwrap(), make_coset(4, 0).unwrap()];
        let r = discrete_set_construct(&singles, &a, &w, &lim()).unwrap();
        assert!(r.set.is_empty());

        let not_zero = |d| {
            let z = make_coset(d, 0).unwrap();
            crate::set::intersect(
                &z,
                &complement(&crate::set::from_finite(&FiniteSet::ints([0]), w)),
            )
            .unwrap()
        };
        let r =
            discrete_set_construct(&[FiniteSet::ints([0, 2])], &[not_zero(2)], &w, &lim()).unwrap();
        assert_eq!(r.set, FiniteSet::ints([-2, 2]));
        assert!(r.identity_excluded);
        assert!(!r.all_separated);

        let r = discrete_set_construct(
            &[FiniteSet::ints([0, 2]), FiniteSet::ints([0, 4, 8])],
            &[not_zero(2), not_zero(4)],
            &w,
            &lim(),
        )
        .unwrap();
        assert_eq!(r.set, FiniteSet::ints([-8, -4, -2, 2, 4, 8]));
        let two = r
            .separations
            .iter()
            .find(|s| s.point == Element::Int(2))
            .unwrap();
        assert_eq!(two.level, Some(2));
        assert_eq!(two.points_outside, 2);
        assert!(r.separations.iter().filter(|s| s.level.is_none()).all(|s| {
            let n = s.point.as_int().unwrap();
            n % 4 == 0
        }));

        let a1 = make_length_filtered(LengthSet::Finite([1].into()));
        let r = discrete_set_construct(
            &[FiniteSet::words([vec![], vec![1]])],
            &[a1],
            &Window::boolean(2, 0, 4),
            &lim(),
        )
        .unwrap();
        assert_eq!(r.set, FiniteSet::words([vec![1]]));
    }

    #[test]
    fn discrete_rejects_increasing_sets() {
        let a = [make_coset(4, 0).unwrap(), make_coset(2, 0).unwrap()];
        let fs = [FiniteSet::ints([0]), FiniteSet::ints([0])];
        assert!(discrete_set_construct(&fs, &a, &Window::int(-5, 5), &lim()).is_err());
        assert!(discrete_set_construct(&fs[..1], &a, &Window::int(-5, 5), &lim()).is_err());
    }

    fn check_pairs(t: &SetSpec, seq: &[Element]) {
        for (n, y) in seq.iter().enumerate() {
            for x in &seq[..n] {
                assert_ne!(x, y);
                let q = left_div_unchecked(x, y);
                assert!(q.is_identity() || t.contains(&q), "{x} {y}");
            }
        }
    }

    #[test]
    fn delta_representation_geometric() {
        let t = make_geometric_union();
        let r = thick_delta_representation(&t, &Window::int(0, 4096), 8, &lim()).unwrap();
        let got: Vec<i64> = r.sequence.iter().filter_map(Element::as_int).collect();
        assert_eq!(got, [0, 1, 5, 21, 27, 91, 98, 115]);
        check_pairs(&t, &r.sequence);

        let r = thick_delta_representation(&t, &Window::int(0, 128), 12, &lim()).unwrap();
        assert_eq!(r.sequence.len(), 11);
        assert_eq!((r.covered, r.target), (43, 85));
        check_pairs(&t, &r.sequence);
    }

    #[test]
    fn delta_representation_boolean() {
        let t = make_length_filtered(LengthSet::parse("1,2,3|>=8").unwrap());
        let w = Window::boolean(2, 1, 10);
        let r = thick_delta_representation(&t, &w, 12, &lim()).unwrap();
        assert_eq!(r.sequence.len(), 12);
        assert_eq!(r.sequence[0], Element::word([]));
        assert_eq!(r.sequence[11], Element::word([1, 2]));
        assert_eq!((r.covered, r.target), (55, 55));
        check_pairs(&t, &r.sequence);

        let whole = whole_group(GroupCtx::Boolean, w);
        let r = thick_delta_representation(&whole, &w, 10, &lim()).unwrap();
        assert_eq!(r.sequence.len(), 10);
        assert!(r.covered <= 45);
    }

    #[test]
    fn delta_representation_needs_thickness() {
        let t = make_length_filtered(LengthSet::Even);
        let err = thick_delta_representation(&t, &Window::boolean(2, 1, 6), 5, &lim());
        assert!(matches!(err, Err(Error::NotThick { .. })));
    }

    #[test]
    fn subgroups() {
        let w = Window::boolean(2, 1, 6);
        let whole = whole_group(GroupCtx::Boolean, w);
        let h = subgroup_in_thick(&whole, &w, 4, &lim()).unwrap().unwrap();
        assert_eq!(h, FiniteSet::words([vec![], vec![1], vec![2], vec![1, 2]]));

        let even = make_length_filtered(LengthSet::Even);
        let h = subgroup_in_thick(&even, &w, 4, &lim()).unwrap().unwrap();
        assert_eq!(
            h,
            FiniteSet::words([vec![], vec![1, 2], vec![1, 3], vec![2, 3]])
        );
        for x in &h {
            for y in &h {
                assert!(h.contains(&left_div_unchecked(x, y)));
            }
        }

        let none = crate::set::empty_set(GroupCtx::Boolean, w);
        assert_eq!(subgroup_in_thick(&none, &w, 2, &lim()).unwrap(), None);
        assert!(subgroup_in_thick(&whole, &w, 3, &lim()).is_err());
    }
}
