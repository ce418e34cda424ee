//! Named suites of property checks over fixture sets and seeded random
//! instances. Every check re-derives its conclusion from the computed
//! certificates rather than trusting a verdict.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolean_topo::{
    b2_dichotomy, c_set_from_coloring, trace_containment_check, two_words_decompose, B2Outcome,
    TwoWords, WordSystem,
};
use crate::error::{Error, Result};
use crate::group::{
    enumerate_window, left_div_unchecked, Element, GroupCtx, Letter, Limits, Window,
};
use crate::largeness::{
    check_3fat_cover, duality_check, fat_ramsey_m, fatness, is_thick_on, kappa_fat_check,
    syndeticity_index, ProbeFamily,
};
use crate::ramsey::{max_homogeneous_letter_set, FilterBase, PairColoring};
use crate::set::{
    complement, enumerate, from_finite, intersect, inverse_set, left_quotient, make_coset,
    make_cube_gap_complement, make_ends_with_a, make_geometric_union, make_interval_union,
    make_length_filtered, right_quotient, union, whole_group, FiniteSet, LengthSet, Provenance,
    SetSpec,
};

pub const SUITES: [&str; 8] = [
    "fat-implies-syndetic",
    "fat-filter-closure",
    "3fat-cover",
    "syndetic-fat-quotients",
    "two-words",
    "b2-traces",
    "delta-star-edm",
    "duality",
];

/// One verified statement about one subject.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub property: &'static str,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(
        property: &'static str,
        subject: impl Into<String>,
        passed: bool,
        detail: String,
    ) -> Self {
        Check {
            property,
            subject: subject.into(),
            passed,
            detail,
        }
    }
}

pub fn run_suite(name: &str, seed: u64, limits: &Limits) -> Result<Vec<Check>> {
    match name {
        "fat-implies-syndetic" => fat_implies_syndetic(limits),
        "fat-filter-closure" => fat_filter_closure(limits),
        "3fat-cover" => three_fat_cover(seed, 100, limits),
        "syndetic-fat-quotients" => syndetic_fat_quotients(limits),
        "two-words" => two_words(seed, 1000, 100),
        "b2-traces" => b2_traces(seed, 20, limits),
        "delta-star-edm" => delta_star_edm(seed, 20, limits),
        "duality" => duality(limits),
        _ => Err(Error::Unknown {
            kind: "suite",
            name: name.to_string(),
            available: SUITES.join(", "),
        }),
    }
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

fn int_set(name: String, period: i64, f: impl Fn(i64) -> bool + Send + Sync + 'static) -> SetSpec {
    SetSpec::new(
        name,
        GroupCtx::Integer,
        Window::int(-24, 24),
        Provenance::new("fixture").param("period", period),
        move |g| g.as_int().is_some_and(&f),
    )
}

/// Fat sets with the window each is evaluated on. Sets that are not
/// periodic carry period 0 in their provenance.
pub fn fat_fixtures() -> Vec<(SetSpec, Window)> {
    let zw = Window::int(-24, 24);
    let mut out = Vec::new();
    for d in 1..=6 {
        out.push((make_coset(d, 0).expect("positive modulus"), zw));
    }
    for (d, e) in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 6)] {
        out.push((
            int_set(format!("{d}Z∪{e}Z"), d * e, move |n| {
                n % d == 0 || n % e == 0
            }),
            zw,
        ));
    }
    for gaps in [vec![1], vec![1, 2], vec![3], vec![2, 5]] {
        let shown: Vec<String> = gaps.iter().map(|g| format!("±{g}")).collect();
        out.push((
            int_set(format!("Z∖{{{}}}", shown.join(",")), 0, move |n| {
                !gaps.contains(&n.abs())
            }),
            zw,
        ));
    }
    for d in [3, 4, 5] {
        out.push((
            int_set(format!("{d}Z∪[-2,2]"), 0, move |n| {
                n % d == 0 || n.abs() <= 2
            }),
            zw,
        ));
    }
    let bw = Window::boolean(2, 0, 6);
    out.push((whole_group(GroupCtx::Boolean, bw), bw));
    out.push((make_length_filtered(LengthSet::Even), bw));
    for d in [2, 3] {
        out.push((
            crate::analysis::make_letter_sum_class(d, 0).expect("positive modulus"),
            bw,
        ));
    }
    out.push((
        complement(&from_finite(&FiniteSet::words([vec![0, 1]]), bw)).renamed("B∖{{0,1}}"),
        bw,
    ));
    out.push((make_cube_gap_complement(), Window::boolean(2, -12, 12)));
    out
}

/// Thick sets with a window on which a sample of each is taken.
pub fn thick_fixtures() -> Vec<(SetSpec, Window, Window)> {
    vec![
        (
            make_geometric_union(),
            Window::int(0, 1024),
            Window::int(-255, 255),
        ),
        (
            make_interval_union(&[(10, 30), (100, 160)]),
            Window::int(0, 200),
            Window::int(-60, 60),
        ),
        (
            make_length_filtered(LengthSet::parse("1,2,3|>=8").expect("valid lengths")),
            Window::boolean(2, 1, 10),
            Window::boolean(2, 1, 10),
        ),
        (
            make_cube_gap_complement(),
            Window::boolean(2, -12, 12),
            Window::boolean(2, -6, 6),
        ),
    ]
}

/// Thick sets with a window and sequence length on which the greedy
/// quotient-set representation covers at least half of `T ∩ w`.
pub fn delta_fixtures() -> Vec<(SetSpec, Window, usize)> {
    vec![
        (make_geometric_union(), Window::int(0, 128), 12),
        (
            make_length_filtered(LengthSet::parse("1,2,3|>=8").expect("valid lengths")),
            Window::boolean(2, 1, 10),
            12,
        ),
        (make_cube_gap_complement(), Window::boolean(2, -6, 6), 12),
    ]
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

fn fat_implies_syndetic(limits: &Limits) -> Result<Vec<Check>> {
    const P: &str = "an m-fat set is syndetic with index at most m-1";
    let mut out = Vec::new();
    for (a, w) in fat_fixtures() {
        let fat = fatness(&a, &w, limits)?;
        let Some(m) = fat.value.filter(|_| fat.holds()) else {
            out.push(Check::new(P, &a.name, false, "fatness not decided".into()));
            continue;
        };
        let syn = syndeticity_index(&a, &w, 4, m as usize - 1, limits)?;
        let ok = syn.holds() && syn.value.is_some_and(|k| k < m);
        out.push(Check::new(
            P,
            format!("{} on {w}", a.name),
            ok,
            format!("fatness {m}, syndeticity index {:?}", syn.value),
        ));
    }
    Ok(out)
}

fn fat_filter_closure(limits: &Limits) -> Result<Vec<Check>> {
    let fixtures = fat_fixtures();
    let mut out = Vec::new();
    let mut fats = Vec::new();
    for (a, w) in &fixtures {
        let f = fatness(a, w, limits)?;
        fats.push(f.value.unwrap_or(u64::MAX));
        let inv = fatness(&inverse_set(a), w, limits)?;
        out.push(Check::new(
            "fatness is invariant under inversion",
            &a.name,
            inv.value == f.value,
            format!("{:?} vs {:?}", f.value, inv.value),
        ));
    }
    // finite perturbations make the Ramsey search for A slow
    let aperiodic = |a: &SetSpec| a.provenance.params.get("period").is_some_and(|p| p == "0");
    for i in 0..fixtures.len() {
        for j in 0..fixtures.len() {
            let ((a, w), (b, w2)) = (&fixtures[i], &fixtures[j]);
            if i == j || w != w2 || aperiodic(a) {
                continue;
            }
            let both = intersect(a, b)?;
            let m = fat_ramsey_m(a, w, fats[j] as usize, limits)?;
            if let Some(m) = m.value.filter(|_| m.holds()) {
                if m as usize <= enumerate_window(a.ctx, w, limits)?.len() {
                    let k = kappa_fat_check(&both, w, m as usize, limits)?;
                    out.push(Check::new(
                        "the intersection of fat sets is fat",
                        format!("{} ∩ {}", a.name, b.name),
                        k.holds(),
                        format!("{m}-fat check"),
                    ));
                }
            }
            let a_in_b = enumerate(a, w, limits)?.iter().all(|g| b.contains(g));
            if a_in_b {
                out.push(Check::new(
                    "a superset of a fat set is at most as fat",
                    format!("{} ⊆ {}", a.name, b.name),
                    fats[j] <= fats[i],
                    format!("{} then {}", fats[i], fats[j]),
                ));
            }
        }
    }
    Ok(out)
}

fn three_fat_cover(seed: u64, count: usize, limits: &Limits) -> Result<Vec<Check>> {
    const P: &str = "S ∩ (SS ∪ S^-1 S^-1) = ∅ makes the complement of S 3-fat";
    let w = Window::int(-30, 30);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        if tries > 100 * count {
            return Err(Error::Precondition(
                "too few random sets met the hypothesis".into(),
            ));
        }
        let size = rng.gen_range(1..=6);
        let s = FiniteSet::ints((0..size).map(|_| rng.gen_range(-30..=30)));
        let spec = from_finite(&s, w);
        let rep = check_3fat_cover(&spec, &w, limits)?;
        if rep.decided.is_none() {
            continue;
        }
        out.push(Check::new(
            P,
            s.to_string(),
            rep.holds(),
            rep.notes.join("; "),
        ));
    }
    Ok(out)
}

fn syndetic_fat_quotients(limits: &Limits) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let sample_w = Window::int(-60, 60);
    let fat_w = Window::int(-24, 24);
    for d in 1..=5 {
        for r in 0..d {
            let a = make_coset(d, r)?;
            let q = left_quotient(&enumerate(&a, &sample_w, limits)?);
            let f = fatness(&from_finite(&q, fat_w), &fat_w, limits)?;
            out.push(Check::new(
                "the quotient set of a syndetic set is fat",
                &a.name,
                f.holds() && f.value.is_some_and(|m| m <= d as u64 + 1),
                format!("fatness {:?}, index {d}", f.value),
            ));
        }
    }
    for (t, sample_w, inner) in thick_fixtures() {
        let q = right_quotient(&enumerate(&t, &sample_w, limits)?);
        let missing = enumerate_window(t.ctx, &inner, limits)?
            .into_iter()
            .find(|g| !q.contains(g));
        out.push(Check::new(
            "the quotient set of a thick set is the whole group",
            format!("{} on {inner}", t.name),
            missing.is_none(),
            missing.map_or("covered".into(), |g| format!("misses {g}")),
        ));
    }
    let (ok, detail) = ends_with_a_scene(limits)?;
    out.push(Check::new(
        "a thick set whose quotient set is not fat",
        "ends_with_a on free:6",
        ok,
        detail,
    ));
    Ok(out)
}

/// Thickness of the words ending in `a`, and `F^-1 F ∩ A^-1 A = {e}` for
/// `F = {b, b^2, b^3, b^4}`, so `A^-1 A` misses every good pair of `F`.
pub fn ends_with_a_scene(limits: &Limits) -> Result<(bool, String)> {
    let a = make_ends_with_a();
    let w = Window::free(6);
    let probes = ProbeFamily::standard(&Window::free(2)).probes(a.ctx, limits)?;
    let mut thick = true;
    for p in &probes {
        thick &= is_thick_on(&a, p, &w, limits)?.is_some();
    }
    let f = FiniteSet::new(a.ctx, (1..=4).map(|k| Element::free(vec![2; k])))?;
    let ff = left_quotient(&f);
    let aa = left_quotient(&enumerate(&a, &w, limits)?);
    let meet: Vec<&Element> = ff.iter().filter(|g| aa.contains(g)).collect();
    let only_e = meet.len() == 1 && meet[0].is_identity();
    Ok((
        thick && only_e,
        format!(
            "{} probes, thick: {thick}; F^-1F ∩ A^-1A has {} element(s)",
            probes.len(),
            meet.len()
        ),
    ))
}

/// All letter vectors `(x_1, …, x_k)` with `w_i ∆ w_j = {x_i, x_j}`, for
/// `k ≥ 2`, found by trying both letters of `w_1 ∆ w_2` as `x_1`.
pub fn two_words_oracle(ws: &WordSystem) -> Vec<Vec<Letter>> {
    let k = ws.len();
    if k < 2 || ws.sum(0, 1).len() != 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for &x1 in ws.sum(0, 1) {
        let mut xs = vec![x1];
        for j in 1..k {
            let s = ws.sum(0, j);
            match s.iter().position(|&x| x == x1) {
                Some(p) if s.len() == 2 => xs.push(s[1 - p]),
                _ => break,
            }
        }
        if xs.len() < k {
            continue;
        }
        let fits = (0..k).all(|i| {
            (i + 1..k).all(|j| {
                let mut p = [xs[i], xs[j]];
                p.sort_unstable();
                ws.sum(i, j) == p
            })
        });
        if fits {
            out.push(xs);
        }
    }
    out
}

/// `t ∆ {x_i}` for a random base word `t` and `k` distinct letters.
pub fn random_translated_system(rng: &mut impl Rng, k: usize) -> WordSystem {
    let mut pool: Vec<Letter> = (0..40).collect();
    pool.shuffle(rng);
    let base: Vec<Letter> = pool[..rng.gen_range(0..=5)].to_vec();
    let mut pool: Vec<Letter> = (0..40).collect();
    pool.shuffle(rng);
    let t = Element::word(base);
    WordSystem::new(
        pool[..k]
            .iter()
            .map(|&x| left_div_unchecked(&t, &Element::word([x]))),
    )
    .expect("distinct letters give distinct words")
}

/// `t, t∆{a,b}, t∆{a,c}, t∆{b,c}`.
pub fn random_exceptional_system(rng: &mut impl Rng) -> WordSystem {
    let mut pool: Vec<Letter> = (0..40).collect();
    pool.shuffle(rng);
    let t = Element::word(pool[3..3 + rng.gen_range(0..=5)].to_vec());
    let (a, b, c) = (pool[0], pool[1], pool[2]);
    WordSystem::new(
        [vec![], vec![a, b], vec![a, c], vec![b, c]]
            .into_iter()
            .map(|p| left_div_unchecked(&t, &Element::word(p))),
    )
    .expect("distinct words")
}

fn two_words(seed: u64, regular: usize, exceptional: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut mismatches = Vec::new();
    for _ in 0..regular {
        let k = rng.gen_range(2..=12);
        let ws = random_translated_system(&mut rng, k);
        let oracle = two_words_oracle(&ws);
        let ok = match two_words_decompose(&ws) {
            TwoWords::Letters { letters } => oracle.contains(&letters),
            _ => false,
        };
        if !ok {
            mismatches.push(ws.to_json()?);
        }
    }
    out.push(Check::new(
        "pairwise two-letter sums come from letters",
        format!("{regular} translated systems"),
        mismatches.is_empty(),
        format!("{} mismatches {}", mismatches.len(), mismatches.join(" ")),
    ));
    let mut bad = 0;
    for _ in 0..exceptional {
        let ws = random_exceptional_system(&mut rng);
        let ok = match two_words_decompose(&ws) {
            TwoWords::ExceptionalK4 { sums, .. } => {
                sums.iter()
                    .all(|(i, j, s)| ws.sum(i - 1, j - 1) == s.as_slice())
                    && two_words_oracle(&ws).is_empty()
            }
            _ => false,
        };
        bad += usize::from(!ok);
    }
    out.push(Check::new(
        "the only exception is four words with w4 = w1 ∆ w2 ∆ w3",
        format!("{exceptional} exceptional systems"),
        bad == 0,
        format!("{bad} mismatches"),
    ));
    Ok(out)
}

/// A two-coloring of `0..n` in which `planted` is homogeneous in
/// `color`, every other pair random.
pub fn planted_coloring(
    rng: &mut impl Rng,
    n: Letter,
    planted: &[Letter],
    color: u8,
) -> PairColoring {
    let mut table = std::collections::HashMap::new();
    for u in 0..n {
        for v in u + 1..n {
            let c = if planted.contains(&u) && planted.contains(&v) {
                color
            } else {
                rng.gen_range(0..2)
            };
            table.insert((u, v), c);
        }
    }
    PairColoring::from_fn(0..n, 2, |u, v| table[&(u.min(v), u.max(v))]).expect("total coloring")
}

fn sample(rng: &mut impl Rng, n: Letter, k: usize) -> Vec<Letter> {
    let mut pool: Vec<Letter> = (0..n).collect();
    pool.shuffle(rng);
    let mut s = pool[..k].to_vec();
    s.sort_unstable();
    s
}

fn b2_traces(seed: u64, count: usize, limits: &Limits) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..count {
        let n = rng.gen_range(8..=12);
        let size = rng.gen_range(3..=5);
        let planted = sample(&mut rng, n, size);
        let mut c = planted_coloring(&mut rng, n, &planted, 0);
        // a decoy base set with one pair forced to color 1
        let decoy = loop {
            let d = sample(&mut rng, n, 4);
            if !(planted.contains(&d[0]) && planted.contains(&d[1])) {
                break d;
            }
        };
        c = PairColoring::from_fn(0..n, 2, |u, v| {
            if (u.min(v), u.max(v)) == (decoy[0], decoy[1]) {
                1
            } else {
                c.color(u, v).unwrap_or(0)
            }
        })?;
        let base = FilterBase::new(0..n, vec![decoy, planted.clone()])?;
        let rep = trace_containment_check(&c_set_from_coloring(&c), &base, 1, limits)?;
        out.push(Check::new(
            "a 0-homogeneous base set puts the sphere trace inside C(c)",
            format!("planted coloring {i}"),
            rep.contained && rep.base_set.as_ref() == Some(&planted),
            format!("base set {:?}", rep.base_set),
        ));
    }
    for i in 0..count {
        let n = rng.gen_range(8..=12);
        let k = rng.gen_range(3..=5);
        let planted = sample(&mut rng, n, k);
        let c = planted_coloring(&mut rng, n, &planted, 1);
        // base sets each containing a planted pair, so none is 0-homogeneous
        let sets = (0..3)
            .map(|_| {
                let mut s = sample(&mut rng, n, 3);
                s.extend_from_slice(&planted[..2]);
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        let base = FilterBase::new(0..n, sets)?;
        let (ok, detail) = match b2_dichotomy(&c, &base, k, limits)? {
            B2Outcome::NotFat { words, letters } => {
                let mut l = letters.clone();
                l.sort_unstable();
                (
                    words.len() == k && l.len() == k && c.homogeneous_color(&l) == Some(1),
                    format!("letters {letters:?}"),
                )
            }
            other => (false, format!("{other:?}")),
        };
        out.push(Check::new(
            "a 1-homogeneous k-set breaks k-fatness of C(c)",
            format!("planted coloring {i}, k = {k}"),
            ok,
            detail,
        ));
    }
    Ok(out)
}

/// Largest letter set with all pairs in `A`, by trying every subset.
pub fn brute_homogeneous_letters(a: &SetSpec, letters: &[Letter]) -> usize {
    let n = letters.len();
    let adj: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && a.contains(&Element::word([letters[i], letters[j]])))
                .fold(0u32, |m, j| m | 1 << j)
        })
        .collect();
    let mut best = 0;
    for mask in 0u32..1 << n {
        let size = mask.count_ones() as usize;
        if size > best && (0..n).all(|i| mask >> i & 1 == 0 || mask & !adj[i] & !(1 << i) == 0) {
            best = size;
        }
    }
    best.max(usize::from(n > 0))
}

/// Sets `C(c)` for seeded random colorings of up to 18 letters.
pub fn edm_fixtures(seed: u64, count: usize) -> Vec<(SetSpec, Vec<Letter>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = 10 + (i % 9) as Letter;
            let k = rng.gen_range(3..=6);
            let planted = sample(&mut rng, n, k);
            let c = planted_coloring(&mut rng, n, &planted, 0);
            (c_set_from_coloring(&c), (0..n).collect())
        })
        .collect()
}

fn delta_star_edm(seed: u64, count: usize, limits: &Limits) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (i, (a, letters)) in edm_fixtures(seed, count).into_iter().enumerate() {
        let got = max_homogeneous_letter_set(&a, &letters, limits.node_budget)?;
        let expect = brute_homogeneous_letters(&a, &letters);
        let valid = got.letters.iter().enumerate().all(|(p, &x)| {
            got.letters[p + 1..]
                .iter()
                .all(|&y| a.contains(&Element::word([x, y])))
        });
        out.push(Check::new(
            "maximum letter set whose pairs lie in the set",
            format!("fixture {i} on {} letters", letters.len()),
            got.exact && valid && got.letters.len() == expect,
            format!("{} vs exhaustive {expect}", got.letters.len()),
        ));
    }
    Ok(out)
}

fn duality(limits: &Limits) -> Result<Vec<Check>> {
    const P: &str = "syndetic exactly when the complement is not thick";
    let w = Window::int(-40, 40);
    let mut sets = Vec::new();
    for d in 1..=5 {
        sets.push(make_coset(d, 0)?);
        sets.push(make_coset(d, d - 1)?);
    }
    sets.push(union(
        &make_coset(3, 0)?,
        &make_interval_union(&[(10, 40)]),
    )?);
    sets.push(intersect(
        &make_coset(2, 0)?,
        &complement(&make_interval_union(&[(-6, 6)])),
    )?);
    let mut out = Vec::new();
    for a in &sets {
        let rep = duality_check(a, &w, 8, 6, limits)?;
        out.push(Check::new(
            P,
            &a.name,
            rep.holds(),
            rep.notes.last().cloned().unwrap_or_default(),
        ));
    }
    Ok(out)
}
