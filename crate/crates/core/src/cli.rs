//! The `largeset` command line: construction catalog, evaluation of
//! predicates from experiment configs, property suites and graph export.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{make_letter_progression, make_letter_sum_class};
use crate::error::{Error, Result};
use crate::group::{Element, GroupCtx, Limits, Window, DEFAULT_NODE_BUDGET};
use crate::largeness::{
    check_3fat_cover, duality_check, fat_ramsey_m, fatness, is_delta_star_k, is_ip_star,
    is_piecewise_syndetic, kappa_fat_check, syndeticity_index, thick_report, thickness_index,
    LargenessReport, Predicate, ProbeFamily, QuotientGraph, ThicknessSearch,
};
use crate::ramsey::PairColoring;
use crate::set::{
    empty_set, from_finite, make_coset, make_cube_gap_complement, make_ends_with_a,
    make_geometric_union, make_interval_union, make_length_filtered, make_s_prime, whole_group,
    FiniteSet, LengthSet, Provenance, SetSpec, Side,
};
use crate::verify::run_suite;

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct ParamDoc {
    pub name: &'static str,
    pub kind: &'static str,
    pub default: &'static str,
    pub about: &'static str,
}

type Params = BTreeMap<String, String>;

#[derive(Clone, Serialize)]
pub struct Construction {
    pub name: &'static str,
    /// `integer`, `boolean`, `free`, or `any` when chosen by a parameter.
    pub family: &'static str,
    pub about: &'static str,
    pub params: Vec<ParamDoc>,
    #[serde(skip)]
    build: fn(&Params) -> Result<SetSpec>,
}

const fn doc(
    name: &'static str,
    kind: &'static str,
    default: &'static str,
    about: &'static str,
) -> ParamDoc {
    ParamDoc {
        name,
        kind,
        default,
        about,
    }
}

const FAMILY: ParamDoc = doc(
    "family",
    "family",
    "integer",
    "integer, boolean or free:RANK",
);

pub fn catalog() -> Vec<Construction> {
    vec![
        Construction {
            name: "coset",
            family: "integer",
            about: "the coset r + dZ",
            params: vec![
                doc("d", "int", "2", "modulus, positive"),
                doc("r", "int", "0", "residue"),
            ],
            build: |p| make_coset(int_param(p, "d", 2)?, int_param(p, "r", 0)?),
        },
        Construction {
            name: "interval_union",
            family: "integer",
            about: "union of closed integer intervals",
            params: vec![doc("pairs", "a:b,...", "", "interval endpoints")],
            build: |p| {
                let mut pairs = Vec::new();
                for part in p.get("pairs").map_or("", String::as_str).split(',') {
                    if part.trim().is_empty() {
                        continue;
                    }
                    let bad = || Error::Parse(format!("cannot read interval `{part}`"));
                    let (a, b) = part.split_once(':').ok_or_else(bad)?;
                    pairs.push((
                        a.trim().parse().map_err(|_| bad())?,
                        b.trim().parse().map_err(|_| bad())?,
                    ));
                }
                Ok(make_interval_union(&pairs))
            },
        },
        Construction {
            name: "geometric_union",
            family: "integer",
            about: "union of [4^i, 2·4^i): thick, not syndetic",
            params: vec![],
            build: |_| Ok(make_geometric_union()),
        },
        Construction {
            name: "whole",
            family: "any",
            about: "the whole group",
            params: vec![FAMILY],
            build: |p| {
                let ctx = family_param(p)?;
                Ok(whole_group(ctx, default_window(ctx)))
            },
        },
        Construction {
            name: "empty",
            family: "any",
            about: "the empty set",
            params: vec![FAMILY],
            build: |p| {
                let ctx = family_param(p)?;
                Ok(empty_set(ctx, default_window(ctx)))
            },
        },
        Construction {
            name: "finite",
            family: "any",
            about: "an explicit finite set",
            params: vec![
                FAMILY,
                doc(
                    "elements",
                    "list",
                    "",
                    "elements separated by `;`, words as {1,2}",
                ),
            ],
            build: |p| {
                let ctx = family_param(p)?;
                let elems = p
                    .get("elements")
                    .map_or("", String::as_str)
                    .split(';')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| Element::parse(ctx, s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(from_finite(
                    &FiniteSet::new(ctx, elems)?,
                    default_window(ctx),
                ))
            },
        },
        Construction {
            name: "cube_gap_complement",
            family: "boolean",
            about: "B(Z) without the two-letter words {m, m + k^3}: 3-fat",
            params: vec![],
            build: |_| Ok(make_cube_gap_complement()),
        },
        Construction {
            name: "length_filtered",
            family: "boolean",
            about: "words whose length lies in a set of naturals",
            params: vec![doc(
                "lengths",
                "length set",
                "even",
                "even, odd, blocks, >=K, 1,2,5 or |-unions",
            )],
            build: |p| {
                Ok(make_length_filtered(LengthSet::parse(
                    p.get("lengths").map_or("even", String::as_str),
                )?))
            },
        },
        Construction {
            name: "s_prime",
            family: "boolean",
            about: "Boolean lift of dZ: words with exactly one anchor s and letter sum in 2s + dZ",
            params: vec![
                doc("d", "int", "2", "modulus of the integer set"),
                doc(
                    "anchors",
                    "int list",
                    "0,...,d-1",
                    "anchors whose translates cover Z",
                ),
            ],
            build: |p| {
                let d = int_param(p, "d", 2)?;
                let anchors = match p.get("anchors") {
                    Some(s) => FiniteSet::new(
                        GroupCtx::Integer,
                        s.split(',')
                            .map(|x| Element::parse(GroupCtx::Integer, x))
                            .collect::<Result<Vec<_>>>()?,
                    )?,
                    None => FiniteSet::ints(0..d),
                };
                make_s_prime(
                    &make_coset(d, 0)?,
                    &anchors,
                    Window::int(-200, 200),
                    &Limits::default(),
                )
            },
        },
        Construction {
            name: "ends_with_a",
            family: "free",
            about: "reduced words of F(a, b) ending in a: thick, quotient set not fat",
            params: vec![],
            build: |_| Ok(make_ends_with_a()),
        },
        Construction {
            name: "letter_progression",
            family: "boolean",
            about: "words all of whose letters are r mod d",
            params: vec![
                doc("d", "int", "7", "modulus"),
                doc("r", "int", "0", "residue"),
            ],
            build: |p| make_letter_progression(int_param(p, "d", 7)?, int_param(p, "r", 0)?),
        },
        Construction {
            name: "letter_sum_class",
            family: "boolean",
            about: "words whose letter sum is r mod d",
            params: vec![
                doc("d", "int", "2", "modulus"),
                doc("r", "int", "0", "residue"),
            ],
            build: |p| make_letter_sum_class(int_param(p, "d", 2)?, int_param(p, "r", 0)?),
        },
        Construction {
            name: "coloring_set",
            family: "boolean",
            about: "everything except the two-letter words of color 1 under a stored pair coloring",
            params: vec![doc("coloring", "path", "", "pair coloring JSON file")],
            build: |p| {
                let path = p.get("coloring").ok_or_else(|| Error::ConfigKey {
                    key: "param.coloring".into(),
                    msg: "a coloring file is required".into(),
                })?;
                let c = PairColoring::from_json(&fs::read_to_string(path)?)?;
                Ok(crate::boolean_topo::c_set_from_coloring(&c))
            },
        },
    ]
}

fn int_param(p: &Params, key: &str, default: i64) -> Result<i64> {
    match p.get(key) {
        None => Ok(default),
        Some(v) => v.trim().parse().map_err(|_| Error::ConfigKey {
            key: format!("param.{key}"),
            msg: format!("expected an integer, found `{v}`"),
        }),
    }
}

fn parse_family(s: &str) -> Result<GroupCtx> {
    match s.trim() {
        "integer" | "int" => Ok(GroupCtx::Integer),
        "boolean" | "bool" => Ok(GroupCtx::Boolean),
        "free" => GroupCtx::free(2),
        other => match other.strip_prefix("free:").map(str::parse::<u8>) {
            Some(Ok(rank)) => GroupCtx::free(rank),
            _ => Err(Error::Parse(format!("unknown family `{other}`"))),
        },
    }
}

fn family_param(p: &Params) -> Result<GroupCtx> {
    parse_family(p.get("family").map_or("integer", String::as_str))
}

fn default_window(ctx: GroupCtx) -> Window {
    match ctx {
        GroupCtx::Integer => Window::int(-20, 20),
        GroupCtx::Boolean => Window::boolean(2, 0, 6),
        GroupCtx::Free { .. } => Window::free(3),
    }
}

/// Builds a catalog construction, rejecting parameters it does not take.
pub fn build_construction(name: &str, params: &Params) -> Result<SetSpec> {
    let all = catalog();
    let Some(c) = all.iter().find(|c| c.name == name) else {
        return Err(Error::Unknown {
            kind: "construction",
            name: name.to_string(),
            available: all.iter().map(|c| c.name).collect::<Vec<_>>().join(", "),
        });
    };
    if let Some(k) = params
        .keys()
        .find(|k| !c.params.iter().any(|d| d.name == *k))
    {
        return Err(Error::ConfigKey {
            key: format!("param.{k}"),
            msg: format!(
                "{name} takes {}",
                if c.params.is_empty() {
                    "no parameters".to_string()
                } else {
                    c.params
                        .iter()
                        .map(|d| d.name)
                        .collect::<Vec<_>>()
                        .join(", ")
                }
            ),
        });
    }
    (c.build)(params)
}

fn matches_family(c: &Construction, family: &str) -> bool {
    c.family == "any" || c.family == family || family.starts_with(c.family)
}

pub fn cmd_catalog(family: Option<&str>, json: bool, out: &mut dyn Write) -> Result<()> {
    let list: Vec<Construction> = catalog()
        .into_iter()
        .filter(|c| family.is_none_or(|f| matches_family(c, f)))
        .collect();
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&list)?)?;
        return Ok(());
    }
    for c in &list {
        writeln!(out, "{:<20} {:<8} {}", c.name, c.family, c.about)?;
        for p in &c.params {
            writeln!(
                out,
                "    {} ({}, default {}): {}",
                p.name,
                p.kind,
                if p.default.is_empty() {
                    "none"
                } else {
                    p.default
                },
                p.about
            )?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Experiment configs
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Both,
}

/// What to build, where to look and which predicates to evaluate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub construction: String,
    pub params: Params,
    /// Defaults to the construction's own window.
    pub window: Option<Window>,
    pub ops: Vec<Predicate>,
    pub pad: usize,
    pub kmax: usize,
    pub k: usize,
    pub n: usize,
    pub side: Side,
    pub probe: Option<String>,
    pub format: Format,
    pub seed: u64,
    pub budget: u64,
}

const CONFIG_KEYS: [&str; 13] = [
    "construction",
    "param.*",
    "window",
    "ops",
    "pad",
    "kmax",
    "k",
    "n",
    "side",
    "probe",
    "format",
    "seed",
    "budget",
];

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            construction: String::new(),
            params: Params::new(),
            window: None,
            ops: Vec::new(),
            pad: 2,
            kmax: 6,
            k: 3,
            n: 3,
            side: Side::Left,
            probe: None,
            format: Format::Both,
            seed: 0,
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

fn parse_op(s: &str) -> Result<Predicate> {
    match s.trim() {
        "syndeticity_index" => Ok(Predicate::Syndetic),
        other => Predicate::parse(other),
    }
}

impl ExperimentConfig {
    /// Flat `key = value` lines, `#` comments; JSON when the text starts
    /// with `{`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return Self::parse_json(text);
        }
        let mut cfg = ExperimentConfig::default();
        let mut seen = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once('=').ok_or_else(|| Error::Config {
                line,
                msg: format!("expected `key = value`, found `{body}`"),
            })?;
            let key = key.trim();
            if let Some(first) = seen.insert(key.to_string(), line) {
                return Err(Error::Config {
                    line,
                    msg: format!("`{key}` already set on line {first}"),
                });
            }
            cfg.set(key, value.trim()).map_err(|e| Error::Config {
                line,
                msg: match e {
                    Error::ConfigKey { msg, .. } => format!("`{key}`: {msg}"),
                    other => format!("`{key}`: {other}"),
                },
            })?;
        }
        cfg.finish()
    }

    fn parse_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let obj = v.as_object().ok_or_else(|| Error::ConfigKey {
            key: "(root)".into(),
            msg: "expected an object".into(),
        })?;
        let render = |v: &serde_json::Value| match v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Array(items) => items
                .iter()
                .map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string))
                .collect::<Vec<_>>()
                .join(","),
            other => other.to_string(),
        };
        let mut cfg = ExperimentConfig::default();
        for (key, value) in obj {
            if key == "params" {
                let params = value.as_object().ok_or_else(|| Error::ConfigKey {
                    key: key.clone(),
                    msg: "expected an object".into(),
                })?;
                for (pk, pv) in params {
                    cfg.set(&format!("param.{pk}"), &render(pv))?;
                }
            } else {
                cfg.set(key, &render(value))?;
            }
        }
        cfg.finish()
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let err = |msg: String| Error::ConfigKey {
            key: key.to_string(),
            msg,
        };
        let num = |v: &str| -> Result<u64> {
            v.parse()
                .map_err(|_| err(format!("expected a nonnegative integer, found `{v}`")))
        };
        match key {
            "construction" => self.construction = value.to_string(),
            "window" => self.window = Some(Window::parse(value)?),
            "ops" => {
                self.ops = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(parse_op)
                    .collect::<Result<_>>()?
            }
            "pad" => self.pad = num(value)? as usize,
            "kmax" => self.kmax = num(value)? as usize,
            "k" => self.k = num(value)? as usize,
            "n" => self.n = num(value)? as usize,
            "side" => self.side = Side::parse(value)?,
            "probe" => self.probe = Some(value.to_string()),
            "format" => {
                self.format = Format::from_str(value, true)
                    .map_err(|_| err(format!("expected json, csv or both, found `{value}`")))?
            }
            "seed" => self.seed = num(value)?,
            "budget" => self.budget = num(value)?,
            _ => match key.strip_prefix("param.") {
                Some(p) if !p.is_empty() => {
                    self.params.insert(p.to_string(), value.to_string());
                }
                _ => {
                    return Err(err(format!(
                        "unknown key; expected one of {}",
                        CONFIG_KEYS.join(", ")
                    )))
                }
            },
        }
        Ok(())
    }

    fn finish(self) -> Result<Self> {
        if self.construction.is_empty() {
            return Err(Error::ConfigKey {
                key: "construction".into(),
                msg: "missing".into(),
            });
        }
        Ok(self)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn limits(&self) -> Limits {
        Limits {
            node_budget: self.budget,
            ..Limits::default()
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct SetInfo {
    pub name: String,
    pub family: String,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub tool: &'static str,
    pub version: &'static str,
    /// Seconds since the Unix epoch; the only field that varies between
    /// identical runs.
    pub timestamp: u64,
    pub seed: u64,
    pub config: ExperimentConfig,
    pub window: Window,
    pub set: SetInfo,
    pub results: Vec<LargenessReport>,
}

impl EvalReport {
    /// 0 when every result is decided, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.results.iter().all(|r| r.decided.is_some()) {
            0
        } else {
            2
        }
    }
}

fn probe_set(
    cfg: &ExperimentConfig,
    ctx: GroupCtx,
    w: &Window,
    limits: &Limits,
) -> Result<FiniteSet> {
    match &cfg.probe {
        Some(s) => FiniteSet::new(
            ctx,
            s.split(';')
                .filter(|x| !x.trim().is_empty())
                .map(|x| Element::parse(ctx, x))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => Ok(FiniteSet::new(
            ctx,
            crate::group::enumerate_window(ctx, &ProbeFamily::standard(w).ground, limits)?,
        )?),
    }
}

pub fn evaluate(cfg: &ExperimentConfig) -> Result<EvalReport> {
    let a = build_construction(&cfg.construction, &cfg.params)?;
    let w = cfg.window.unwrap_or(a.window);
    w.check(a.ctx)?;
    let limits = cfg.limits();
    let mut results = Vec::with_capacity(cfg.ops.len());
    for op in &cfg.ops {
        let rep = match op {
            Predicate::Thick => {
                thick_report(&a, &probe_set(cfg, a.ctx, &w, &limits)?, &w, &limits)?
            }
            Predicate::Syndetic => syndeticity_index(&a, &w, cfg.pad, cfg.kmax, &limits)?,
            Predicate::ThicknessIndex => {
                thickness_index(&a, &w, &ThicknessSearch::standard(&w, cfg.kmax), &limits)?
            }
            Predicate::PiecewiseSyndetic => {
                is_piecewise_syndetic(&a, &w, &ThicknessSearch::standard(&w, cfg.kmax), &limits)?
            }
            Predicate::Fatness => fatness(&a, &w, &limits)?,
            Predicate::KappaFat => kappa_fat_check(&a, &w, cfg.k, &limits)?,
            Predicate::FatRamsey => fat_ramsey_m(&a, &w, cfg.n, &limits)?,
            Predicate::DeltaStar => is_delta_star_k(&a, &w, cfg.k, cfg.side, &limits)?,
            Predicate::IpStar => is_ip_star(&a, &w, cfg.n, &limits)?,
            Predicate::ThreeFatCover => check_3fat_cover(&a, &w, &limits)?,
            Predicate::Duality => duality_check(&a, &w, cfg.pad, cfg.kmax, &limits)?,
        };
        results.push(rep);
    }
    Ok(EvalReport {
        tool: "largeset",
        version: env!("CARGO_PKG_VERSION"),
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs()),
        seed: cfg.seed,
        config: cfg.clone(),
        window: w,
        set: SetInfo {
            name: a.name.clone(),
            family: a.ctx.name().to_string(),
            provenance: a.provenance.clone(),
        },
        results,
    })
}

pub const CSV_HEADER: [&str; 11] = [
    "predicate",
    "set",
    "family",
    "window",
    "decided",
    "value",
    "exactness",
    "witness",
    "counterexample",
    "nodes",
    "notes",
];

/// One CSV row per result; every cell is a rendering of a JSON field.
pub fn csv_row(r: &LargenessReport) -> Vec<String> {
    let opt = |x: Option<String>| x.unwrap_or_default();
    vec![
        r.predicate.to_string(),
        r.set.clone(),
        r.family.clone(),
        r.window.to_string(),
        opt(r.decided.map(|d| d.to_string())),
        opt(r.value.map(|v| v.to_string())),
        serde_json::to_value(r.exactness)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default(),
        opt(r.witness.as_ref().map(|c| c.to_string())),
        opt(r.counterexample.as_ref().map(|c| c.to_string())),
        r.nodes.to_string(),
        r.notes.join(" | "),
    ]
}

fn render_certificate(v: &serde_json::Value) -> String {
    let strs = |v: &serde_json::Value| -> Vec<String> {
        v.as_array()
            .map(|xs| {
                xs.iter()
                    .filter_map(|x| x.as_str().map(str::to_string))
                    .collect()
            })
            .unwrap_or_default()
    };
    match v["kind"].as_str() {
        Some("element") => v["value"].as_str().unwrap_or_default().to_string(),
        Some("set") => format!("[{}]", strs(&v["value"]).join(" ")),
        Some("sequence") => format!("({})", strs(&v["value"]).join(", ")),
        _ => String::new(),
    }
}

/// The CSV rows rebuilt from the `results` of a JSON report alone.
pub fn csv_rows_from_json(report: &serde_json::Value) -> Result<Vec<Vec<String>>> {
    let plain = |v: &serde_json::Value| match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let results = report["results"]
        .as_array()
        .ok_or_else(|| Error::Parse("report has no results array".into()))?;
    results
        .iter()
        .map(|r| {
            let window: Window = serde_json::from_value(r["window"].clone())?;
            Ok(vec![
                plain(&r["predicate"]),
                plain(&r["set"]),
                plain(&r["family"]),
                window.to_string(),
                plain(&r["decided"]),
                plain(&r["value"]),
                plain(&r["exactness"]),
                render_certificate(&r["witness"]),
                render_certificate(&r["counterexample"]),
                plain(&r["nodes"]),
                r["notes"]
                    .as_array()
                    .map(|ns| ns.iter().map(plain).collect::<Vec<_>>().join(" | "))
                    .unwrap_or_default(),
            ])
        })
        .collect()
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Writes `report.json` and/or `report.csv` into `dir`; returns the paths.
pub fn write_report(report: &EvalReport, dir: &Path, format: Format) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    if matches!(format, Format::Json | Format::Both) {
        let path = dir.join("report.json");
        let mut text = serde_json::to_string_pretty(report)?;
        text.push('\n');
        write_atomic(&path, text.as_bytes())?;
        written.push(path);
    }
    if matches!(format, Format::Csv | Format::Both) {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        for r in &report.results {
            w.write_record(csv_row(r))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        let path = dir.join("report.csv");
        write_atomic(&path, &bytes)?;
        written.push(path);
    }
    Ok(written)
}

// ---------------------------------------------------------------------------
// Graph export
// ---------------------------------------------------------------------------

/// DIMACS text of the quotient graph, headed by the set's provenance.
pub fn export_graph(a: &SetSpec, w: &Window, limits: &Limits) -> Result<String> {
    let qg = QuotientGraph::build(a, w, limits)?;
    let mut head = format!("c constructor {}\n", a.provenance.constructor);
    for (k, v) in &a.provenance.params {
        head.push_str(&format!("c param {k} = {v}\n"));
    }
    if !a.contains(&a.ctx.identity()) {
        head.push_str("c warning: the identity is not a member, so the set is not fat\n");
    }
    Ok(head + &qg.to_dimacs())
}

// ---------------------------------------------------------------------------
// Command line
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "largeset",
    version,
    about = "Windowed largeness predicates for subsets of Z, B(Z) and free groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the set constructions and their parameters.
    Catalog {
        /// Only constructions on this family (integer, boolean, free).
        #[arg(long)]
        family: Option<String>,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the predicates listed in a config and write reports.
    Eval {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run a named property suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
        /// `json` prints every check as JSON.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Write the quotient graph of a construction in DIMACS format.
    ExportGraph {
        #[arg(long, conflicts_with = "construction")]
        config: Option<PathBuf>,
        #[arg(long)]
        construction: Option<String>,
        /// Construction parameter as KEY=VALUE; repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs the command line and returns the process exit code: 0 when
/// everything was decided and passed, 2 when a result was left undecided,
/// 1 on errors and failed checks.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return i32::from(e.use_stderr());
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Catalog { family, json } => {
            cmd_catalog(family.as_deref(), json, out)?;
            Ok(0)
        }
        Command::Eval {
            config,
            window,
            seed,
            budget,
            format,
            out: dir,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(w) = window {
                cfg.window = Some(Window::parse(&w)?);
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(b) = budget {
                cfg.budget = b;
            }
            if let Some(f) = format {
                cfg.format = f;
            }
            let report = evaluate(&cfg)?;
            for r in &report.results {
                let verdict = match r.decided {
                    Some(true) => "holds",
                    Some(false) => "fails",
                    None => "undecided",
                };
                writeln!(
                    out,
                    "{} {} on {}: {verdict}, value {}",
                    r.predicate,
                    r.set,
                    r.window,
                    r.value.map_or("-".to_string(), |v| v.to_string()),
                )?;
            }
            for p in write_report(&report, &dir, cfg.format)? {
                writeln!(err, "wrote {}", p.display())?;
            }
            Ok(report.exit_code())
        }
        Command::Verify {
            suite,
            seed,
            budget,
            format,
        } => {
            let limits = budget.map_or_else(Limits::default, Limits::with_budget);
            let checks = run_suite(&suite, seed, &limits)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            if format == Some(Format::Json) {
                writeln!(out, "{}", serde_json::to_string_pretty(&checks)?)?;
            } else {
                for c in &checks {
                    writeln!(
                        out,
                        "{} [{}] {}: {}",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.property,
                        c.subject,
                        c.detail
                    )?;
                }
            }
            writeln!(err, "{suite}: {} checks, {failed} failed", checks.len())?;
            Ok(i32::from(failed > 0))
        }
        Command::ExportGraph {
            config,
            construction,
            params,
            window,
            budget,
            out: path,
        } => {
            let mut cfg = match config {
                Some(p) => ExperimentConfig::load(&p)?,
                None => {
                    let mut cfg = ExperimentConfig {
                        construction: construction.ok_or_else(|| {
                            Error::Precondition("give --config or --construction".into())
                        })?,
                        ..ExperimentConfig::default()
                    };
                    for kv in &params {
                        let (k, v) = kv.split_once('=').ok_or_else(|| {
                            Error::Parse(format!("expected KEY=VALUE, found `{kv}`"))
                        })?;
                        cfg.params
                            .insert(k.trim().to_string(), v.trim().to_string());
                    }
                    cfg
                }
            };
            if let Some(w) = window {
                cfg.window = Some(Window::parse(&w)?);
            }
            if let Some(b) = budget {
                cfg.budget = b;
            }
            let a = build_construction(&cfg.construction, &cfg.params)?;
            let w = cfg.window.unwrap_or(a.window);
            let text = export_graph(&a, &w, &cfg.limits())?;
            match path {
                Some(p) => write_atomic(&p, text.as_bytes())?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> ExperimentConfig {
        ExperimentConfig::parse(text).unwrap()
    }

    #[test]
    fn flat_config() {
        let c = cfg("# evens\nconstruction = coset\nparam.d = 2\nwindow = int:-50..50\nops = fatness, syndeticity_index\nseed = 7\n");
        assert_eq!(c.construction, "coset");
        assert_eq!(c.params["d"], "2");
        assert_eq!(c.window, Some(Window::int(-50, 50)));
        assert_eq!(c.ops, [Predicate::Fatness, Predicate::Syndetic]);
        assert_eq!(c.seed, 7);
    }

    #[test]
    fn config_errors_name_the_line() {
        let e = ExperimentConfig::parse("construction = coset\nwindw = int:0..3\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 2, .. }), "{e}");
        assert!(e.to_string().contains("windw"));
        let e = ExperimentConfig::parse("construction = coset\nkmax = -1\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 2, .. }));
        let e =
            ExperimentConfig::parse("construction = coset\nconstruction = whole\n").unwrap_err();
        assert!(e.to_string().contains("line 1"));
        let e = ExperimentConfig::parse("construction coset\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 1, .. }));
        assert!(ExperimentConfig::parse("ops = fatness\n").is_err());
    }

    #[test]
    fn json_config() {
        let c = cfg(
            r#"{"construction": "coset", "params": {"d": 5}, "ops": ["fatness"], "window": "int:0..40"}"#,
        );
        assert_eq!(c.params["d"], "5");
        assert_eq!(c.ops, [Predicate::Fatness]);
        let e = ExperimentConfig::parse(r#"{"construction": "coset", "extra": 1}"#).unwrap_err();
        assert!(matches!(e, Error::ConfigKey { ref key, .. } if key == "extra"));
    }

    #[test]
    fn unknown_params_rejected() {
        let mut p = Params::new();
        p.insert("q".into(), "1".into());
        assert!(build_construction("coset", &p).is_err());
        assert!(build_construction("nope", &Params::new()).is_err());
    }

    #[test]
    fn every_construction_builds_with_defaults() {
        for c in catalog() {
            if c.name == "coloring_set" {
                continue;
            }
            let a = build_construction(c.name, &Params::new()).unwrap();
            assert!(a.window.matches(a.ctx), "{}", c.name);
        }
    }

    #[test]
    fn eval_examples() {
        let r = evaluate(&cfg(
            "construction = coset\nparam.d = 2\nwindow = int:-50..50\nops = fatness\n",
        ))
        .unwrap();
        assert_eq!(r.results[0].value, Some(3));
        assert_eq!(r.exit_code(), 0);

        let r = evaluate(&cfg(
            "construction = coset\nparam.d = 5\nwindow = int:0..60\nops = syndeticity_index\n",
        ))
        .unwrap();
        assert_eq!(r.results[0].value, Some(5));
        assert_eq!(r.results[0].witness_set(), Some(&FiniteSet::ints(0..5)));

        let r = evaluate(&cfg("construction = coset\nparam.d = 2\nwindow = int:-30..30\nops = thickness_index\nkmax = 1\n")).unwrap();
        assert_eq!(r.results[0].decided, None);
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn export_evens() {
        let a = make_coset(2, 0).unwrap();
        let text = export_graph(&a, &Window::int(-3, 3), &Limits::default()).unwrap();
        assert!(text.contains("p edge 7 9\n"));
        assert!(!text.contains("warning"));
        let odd = make_coset(2, 1).unwrap();
        let text = export_graph(&odd, &Window::int(-3, 3), &Limits::default()).unwrap();
        assert!(text.contains("c warning"));
        let whole = whole_group(GroupCtx::Integer, Window::int(0, 4));
        let text = export_graph(&whole, &Window::int(0, 4), &Limits::default()).unwrap();
        assert!(text.contains("p edge 5 10\n"));
    }

    #[test]
    fn catalog_filters() {
        let mut buf = Vec::new();
        cmd_catalog(None, false, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        for name in [
            "cube_gap_complement",
            "length_filtered",
            "s_prime",
            "ends_with_a",
        ] {
            assert!(text.contains(name), "{name}");
        }
        let mut buf = Vec::new();
        cmd_catalog(Some("boolean"), true, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let names: Vec<&str> = v
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["name"].as_str().unwrap())
            .collect();
        assert!(names.contains(&"cube_gap_complement"));
        assert!(!names.contains(&"ends_with_a"));
    }
}
