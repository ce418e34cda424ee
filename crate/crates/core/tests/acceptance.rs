//! End-to-end acceptance run: one PASS/FAIL line per criterion, each under
//! its time limit. Runs without the libtest harness so the lines always
//! print.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use largeset::analysis::{subgroup_in_thick, thick_delta_representation};
use largeset::boolean_topo::{
    b4_arrangement_coloring, b4_quadruple_coloring, Arrangement, Quadruple,
};
use largeset::cli::{evaluate, write_report, ExperimentConfig, Format};
use largeset::group::enumerate_window;
use largeset::largeness::{fatness, kappa_fat_check};
use largeset::ramsey::{ramsey_bound_search, PairColoring, RamseySearch};
use largeset::set::{
    make_coset, make_cube_gap_complement, make_length_filtered, whole_group, LengthSet,
};
use largeset::verify::{delta_fixtures, ends_with_a_scene, fat_fixtures, run_suite, Check};
use largeset::{Element, GroupCtx, Limits, Window};

type Outcome = Result<String, String>;
/// Number, check and time limit in seconds.
type Criterion = (u32, fn() -> Outcome, u64);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: largeset::Error) -> String {
    e.to_string()
}

fn suite(name: &str, seed: u64) -> Result<Vec<Check>, String> {
    run_suite(name, seed, &Limits::default()).map_err(err)
}

fn all_pass(checks: &[Check]) -> Result<(), String> {
    match checks.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(format!("{} [{}]: {}", c.property, c.subject, c.detail)),
    }
}

fn c1() -> Outcome {
    let lim = Limits::default();
    let w = Window::int(-50, 50);
    for d in 2..=5 {
        let r = fatness(&make_coset(d, 0).map_err(err)?, &w, &lim).map_err(err)?;
        ensure(
            r.holds() && r.value == Some(d as u64 + 1),
            format!("{d}Z has fatness {:?}", r.value),
        )?;
    }
    Ok("fatness of dZ is d+1 for d = 2..5".into())
}

fn c2() -> Outcome {
    let lim = Limits::default();
    let cases = [
        (GroupCtx::Integer, Window::int(-30, 30)),
        (GroupCtx::Boolean, Window::boolean(2, 0, 9)),
        (GroupCtx::free(2).map_err(err)?, Window::free(4)),
        (GroupCtx::free(3).map_err(err)?, Window::free(3)),
    ];
    for (ctx, w) in cases {
        let r = fatness(&whole_group(ctx, w), &w, &lim).map_err(err)?;
        ensure(
            r.holds() && r.value == Some(2),
            format!("{w}: {:?}", r.value),
        )?;
    }
    Ok("whole group has fatness 2 on integer, Boolean and free windows".into())
}

fn c3() -> Outcome {
    let lim = Limits::default();
    let a = make_cube_gap_complement();
    let w = Window::boolean(2, -12, 12);
    let f = fatness(&a, &w, &lim).map_err(err)?;
    ensure(
        f.holds() && f.value == Some(3),
        format!("fatness {:?}", f.value),
    )?;
    let k = kappa_fat_check(&a, &w, 3, &lim).map_err(err)?;
    ensure(k.holds(), "3-fat check failed")?;
    // every triple by hand
    let elems = enumerate_window(a.ctx, &w, &lim).map_err(err)?;
    let n = elems.len();
    let good: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    i != j
                        && a.contains(&a.ctx.left_div(&elems[i], &elems[j]).unwrap())
                        && a.contains(&a.ctx.left_div(&elems[j], &elems[i]).unwrap())
                })
                .collect()
        })
        .collect();
    let mut triples = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                triples += 1;
                ensure(
                    good[i][j] || good[i][l] || good[j][l],
                    format!("{} {} {} has no good pair", elems[i], elems[j], elems[l]),
                )?;
            }
        }
    }
    for x in 1..=24i64 {
        for y in 1..=24i64 {
            for z in 1..=24i64 {
                ensure(
                    x.pow(3) + y.pow(3) != z.pow(3),
                    format!("{x}^3 + {y}^3 = {z}^3"),
                )?;
            }
        }
    }
    Ok(format!(
        "fatness 3, {triples} triples checked, no cube sums up to 24"
    ))
}

fn c4() -> Outcome {
    let checks = suite("fat-implies-syndetic", 0)?;
    ensure(
        checks.len() >= 20,
        format!("only {} fat fixtures", checks.len()),
    )?;
    ensure(
        fat_fixtures().len() == checks.len(),
        "a fixture was skipped",
    )?;
    all_pass(&checks)?;
    Ok(format!(
        "{} fat sets, syndeticity index below fatness",
        checks.len()
    ))
}

fn c5() -> Outcome {
    let checks: Vec<Check> = suite("syndetic-fat-quotients", 0)?
        .into_iter()
        .filter(|c| !c.subject.starts_with("ends_with_a"))
        .collect();
    all_pass(&checks)?;
    let cosets = checks
        .iter()
        .filter(|c| c.property.contains("syndetic"))
        .count();
    ensure(cosets == 15, format!("{cosets} coset checks"))?;
    Ok(format!(
        "{cosets} cosets, {} thick sets",
        checks.len() - cosets
    ))
}

fn c6() -> Outcome {
    let (ok, detail) = ends_with_a_scene(&Limits::default()).map_err(err)?;
    ensure(ok, detail.clone())?;
    Ok(detail)
}

fn c7() -> Outcome {
    let checks = suite("3fat-cover", 2024)?;
    ensure(checks.len() == 100, format!("{} sets", checks.len()))?;
    all_pass(&checks)?;
    Ok("100 random sets, all complements 3-fat".into())
}

fn c8() -> Outcome {
    let checks = suite("two-words", 2024)?;
    all_pass(&checks)?;
    Ok(checks
        .iter()
        .map(|c| format!("{}: {}", c.subject, c.detail))
        .collect::<Vec<_>>()
        .join("; "))
}

fn c9() -> Outcome {
    let r = ramsey_bound_search(2, 3, 6, u64::MAX).map_err(err)?;
    ensure(
        matches!(r, RamseySearch::Exact { n: 6, .. }),
        format!("{r:?}"),
    )?;
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/k5_pentagon.json");
    let c = PairColoring::from_json(&std::fs::read_to_string(path).map_err(|e| e.to_string())?)
        .map_err(err)?;
    ensure(
        c.len() == 5 && c == PairColoring::pentagon(),
        "stored coloring differs",
    )?;
    for x in 0..5 {
        for y in x + 1..5 {
            for z in y + 1..5 {
                let t = [x, y, z];
                ensure(
                    c.homogeneous_color(&t).is_none(),
                    format!("{t:?} is monochromatic"),
                )?;
            }
        }
    }
    Ok("R(3,3) = 6; stored pentagon coloring has no monochromatic triangle".into())
}

fn c10() -> Outcome {
    let checks = suite("delta-star-edm", 2024)?;
    ensure(checks.len() == 20, format!("{} fixtures", checks.len()))?;
    all_pass(&checks)?;
    Ok("20 fixtures on 10 to 18 letters match exhaustive search".into())
}

fn c11() -> Outcome {
    let checks = suite("b2-traces", 2024)?;
    ensure(checks.len() == 40, format!("{} checks", checks.len()))?;
    all_pass(&checks)?;
    Ok("20 planted containments, 20 k-fatness counterexamples".into())
}

fn c12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut quads = BTreeSet::new();
    let mut arrs = BTreeSet::new();
    for _ in 0..1000 {
        let mut pool: Vec<i64> = (0..40).collect();
        pool.shuffle(&mut rng);
        let word = |xs: &[i64]| {
            let mut v = xs.to_vec();
            v.sort_unstable();
            Element::word(v)
        };
        let (shared, own_i, own_j) = (&pool[0..2], &pool[2..4], &pool[4..6]);
        let wi = word(&[shared, own_i].concat());
        let wj = word(&[shared, own_j].concat());
        let q = b4_quadruple_coloring(&wi, &wj).map_err(err)?;
        let a = b4_arrangement_coloring(&wi, &wj).map_err(err)?;
        ensure(
            q.index() < Quadruple::PALETTE && a.index() < Arrangement::PALETTE,
            "color out of palette",
        )?;
        // a random increasing relabeling of the letters
        let mut image: Vec<i64> = (0..40).map(|_| rng.gen_range(1..5)).collect();
        for i in 1..40 {
            image[i] += image[i - 1];
        }
        let relabel = |w: &Element| {
            word(
                &w.letters()
                    .unwrap()
                    .iter()
                    .map(|&x| image[x as usize])
                    .collect::<Vec<_>>(),
            )
        };
        let (ri, rj) = (relabel(&wi), relabel(&wj));
        ensure(
            b4_quadruple_coloring(&ri, &rj).map_err(err)? == q
                && b4_arrangement_coloring(&ri, &rj).map_err(err)? == a,
            format!("relabeling changed the colors of {wi}, {wj}"),
        )?;
        quads.insert(q);
        arrs.insert(a);
    }
    ensure(
        quads.len() == Quadruple::PALETTE && arrs.len() == Arrangement::PALETTE,
        format!("palettes {} and {}", quads.len(), arrs.len()),
    )?;
    Ok("1000 pairs: 36 and 6 colors seen, invariant under relabeling".into())
}

fn c13() -> Outcome {
    let lim = Limits::default();
    let mut parts = Vec::new();
    for (t, w, len) in delta_fixtures() {
        let r = thick_delta_representation(&t, &w, len, &lim).map_err(err)?;
        ensure(
            r.sequence.len() >= 10 && r.coverage >= 0.5,
            format!(
                "{} on {w}: length {}, coverage {:.3}",
                t.name,
                r.sequence.len(),
                r.coverage
            ),
        )?;
        for (n, y) in r.sequence.iter().enumerate() {
            for x in &r.sequence[..n] {
                let q = t.ctx.left_div(x, y).map_err(err)?;
                ensure(
                    q.is_identity() || t.contains(&q),
                    format!("{x}^-1 {y} outside {}", t.name),
                )?;
            }
        }
        parts.push(format!(
            "{} L={} cov {:.2}",
            t.name,
            r.sequence.len(),
            r.coverage
        ));
    }
    let even = make_length_filtered(LengthSet::Even);
    let w = Window::boolean(4, 1, 6);
    let h = subgroup_in_thick(&even, &w, 4, &lim)
        .map_err(err)?
        .ok_or("no subgroup of size 4")?;
    for x in h.iter() {
        ensure(
            even.contains(x) || x.is_identity(),
            format!("{x} outside the set"),
        )?;
        for y in h.iter() {
            ensure(
                h.contains(&GroupCtx::Boolean.op(x, y).map_err(err)?),
                "not closed",
            )?;
        }
    }
    parts.push(format!("subgroup {h}"));
    Ok(parts.join("; "))
}

fn c14() -> Outcome {
    let text = "construction = cube_gap_complement\nwindow = bool:2:-8..8\nops = fatness, kappa_fat, syndeticity_index\nk = 3\npad = 1\nkmax = 3\nseed = 77\n";
    let cfg = ExperimentConfig::parse(text).map_err(err)?;
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let report = evaluate(&cfg).map_err(err)?;
        write_report(&report, dir.path(), Format::Both).map_err(err)?;
        let json =
            std::fs::read_to_string(dir.path().join("report.json")).map_err(|e| e.to_string())?;
        let json: String = json
            .lines()
            .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
            .collect();
        let csv = std::fs::read(dir.path().join("report.csv")).map_err(|e| e.to_string())?;
        outputs.push((json, csv));
    }
    ensure(outputs[0] == outputs[1], "reports differ between runs")?;
    Ok(format!(
        "two runs, {} JSON bytes identical",
        outputs[0].0.len()
    ))
}

fn main() {
    let criteria: [Criterion; 14] = [
        (1, c1, 5),
        (2, c2, 1),
        (3, c3, 60),
        (4, c4, 60),
        (5, c5, 30),
        (6, c6, 10),
        (7, c7, 30),
        (8, c8, 30),
        (9, c9, 10),
        (10, c10, 60),
        (11, c11, 30),
        (12, c12, 10),
        (13, c13, 30),
        (14, c14, 60),
    ];
    let mut failed = 0;
    for (n, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(limit) => {
                Err(format!("took {took:.2?}, limit {limit} s ({msg})"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {n:>2} ({took:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {n:>2} ({took:.2?}): {msg}");
            }
        }
    }
    println!("acceptance: {} of 14 criteria passed", 14 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
