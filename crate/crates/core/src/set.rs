//! Named sets given by membership oracles, finite sets, set algebra and the
//! catalog of concrete constructions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    enumerate_window, inverse_unchecked, left_div_unchecked, op_unchecked, right_div_unchecked,
    Element, GroupCtx, Letter, Limits, Window, STAR,
};

pub type Oracle = Arc<dyn Fn(&Element) -> bool + Send + Sync>;

/// How a set was built, for reproducible reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub constructor: String,
    pub params: BTreeMap<String, String>,
    /// Range on which a construction hypothesis was checked, if the
    /// construction has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validated: Option<Window>,
}

impl Provenance {
    pub fn new(constructor: &str) -> Self {
        Provenance {
            constructor: constructor.to_string(),
            ..Default::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

/// A subset of a group: a total membership oracle plus a canonical window.
#[derive(Clone)]
pub struct SetSpec {
    pub name: String,
    pub ctx: GroupCtx,
    membership: Oracle,
    pub window: Window,
    pub provenance: Provenance,
}

impl fmt::Debug for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetSpec")
            .field("name", &self.name)
            .field("ctx", &self.ctx)
            .field("window", &self.window)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl SetSpec {
    pub fn new(
        name: impl Into<String>,
        ctx: GroupCtx,
        window: Window,
        provenance: Provenance,
        membership: impl Fn(&Element) -> bool + Send + Sync + 'static,
    ) -> Self {
        SetSpec {
            name: name.into(),
            ctx,
            membership: Arc::new(membership),
            window,
            provenance,
        }
    }

    /// Membership without a family check.
    #[inline]
    pub fn contains(&self, g: &Element) -> bool {
        (self.membership)(g)
    }

    pub fn member(&self, g: &Element) -> Result<bool> {
        self.ctx.check(g)?;
        Ok(self.contains(g))
    }

    pub fn oracle(&self) -> Oracle {
        self.membership.clone()
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_window(mut self, window: Window) -> Self {
        self.window = window;
        self
    }

    /// Whether results on `w` stay inside the range on which the
    /// construction hypothesis was validated.
    pub fn validated_for(&self, w: &Window) -> bool {
        let Some(valid) = self.provenance.validated else {
            return true;
        };
        match (valid, *w) {
            (Window::IntRange { lo, hi }, Window::IntRange { lo: a, hi: b }) => lo <= a && b <= hi,
            (
                Window::IntRange { lo, hi },
                Window::BooleanBall {
                    max_len,
                    letter_lo,
                    letter_hi,
                },
            ) => {
                // extreme letter sums of words in the ball
                let neg: i64 = (letter_lo..=letter_hi.min(-1)).take(max_len).sum();
                let pos: i64 = (letter_lo.max(1)..=letter_hi).rev().take(max_len).sum();
                lo <= neg && pos <= hi
            }
            (v, w) => v.intersect(&w) == Some(w),
        }
    }
}

/// Duplicate-free elements of one family, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    ctx: GroupCtx,
    elements: Vec<Element>,
}

impl FiniteSet {
    pub fn new(ctx: GroupCtx, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut v: Vec<Element> = elements.into_iter().collect();
        for g in &v {
            ctx.check(g)?;
        }
        v.sort();
        v.dedup();
        Ok(FiniteSet { ctx, elements: v })
    }

    pub(crate) fn from_sorted(ctx: GroupCtx, elements: Vec<Element>) -> Self {
        debug_assert!(elements.windows(2).all(|p| p[0] < p[1]));
        FiniteSet { ctx, elements }
    }

    pub fn empty(ctx: GroupCtx) -> Self {
        FiniteSet {
            ctx,
            elements: Vec::new(),
        }
    }

    pub fn ints(values: impl IntoIterator<Item = i64>) -> Self {
        let mut v: Vec<Element> = values.into_iter().map(Element::Int).collect();
        v.sort();
        v.dedup();
        FiniteSet {
            ctx: GroupCtx::Integer,
            elements: v,
        }
    }

    pub fn words<I, W>(words: I) -> Self
    where
        I: IntoIterator<Item = W>,
        W: IntoIterator<Item = Letter>,
    {
        let mut v: Vec<Element> = words.into_iter().map(Element::word).collect();
        v.sort();
        v.dedup();
        FiniteSet {
            ctx: GroupCtx::Boolean,
            elements: v,
        }
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Element> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elements.iter()
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.elements.iter().map(|g| g.to_string()).collect()
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, g) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for FiniteSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elements.iter().map(|g| g.to_string()))
    }
}

impl<'a> IntoIterator for &'a FiniteSet {
    type Item = &'a Element;
    type IntoIter = std::slice::Iter<'a, Element>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn parse(s: &str) -> Result<Side> {
        match s.trim() {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::Parse(format!(
                "side must be left or right, got `{other}`"
            ))),
        }
    }
}

/// The members of `set` inside `w`, in canonical order.
pub fn enumerate(set: &SetSpec, w: &Window, limits: &Limits) -> Result<FiniteSet> {
    let all = enumerate_window(set.ctx, w, limits)?;
    Ok(FiniteSet::from_sorted(
        set.ctx,
        all.into_iter().filter(|g| set.contains(g)).collect(),
    ))
}

fn same_family(a: GroupCtx, b: GroupCtx) -> Result<()> {
    if a != b {
        return Err(Error::mismatch(a, b));
    }
    Ok(())
}

fn combined_window(a: &Window, b: &Window) -> Window {
    a.intersect(b).unwrap_or(*a)
}

/// `F A`: `g` is a member iff `f^-1 g ∈ A` for some `f ∈ F`.
pub fn product_set(f: &FiniteSet, a: &SetSpec) -> Result<SetSpec> {
    same_family(f.ctx(), a.ctx)?;
    let fs = f.elements().to_vec();
    let inner = a.oracle();
    Ok(SetSpec::new(
        format!("{} {}", f, a.name),
        a.ctx,
        a.window,
        Provenance::new("product_set")
            .param("translators", f)
            .param("set", &a.name),
        move |g| fs.iter().any(|x| inner(&left_div_unchecked(x, g))),
    ))
}

/// `A^-1 A = { a^-1 b : a, b ∈ A }`.
pub fn left_quotient(a: &FiniteSet) -> FiniteSet {
    quotient(a, left_div_unchecked)
}

/// `A A^-1 = { a b^-1 : a, b ∈ A }`.
pub fn right_quotient(a: &FiniteSet) -> FiniteSet {
    quotient(a, right_div_unchecked)
}

fn quotient(a: &FiniteSet, div: fn(&Element, &Element) -> Element) -> FiniteSet {
    let mut out = Vec::with_capacity(a.len() * a.len());
    for x in a {
        for y in a {
            out.push(div(x, y));
        }
    }
    out.sort();
    out.dedup();
    FiniteSet::from_sorted(a.ctx(), out)
}

fn check_one_to_one(ctx: GroupCtx, seq: &[Element]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for g in seq {
        ctx.check(g)?;
        if !seen.insert(g) {
            return Err(Error::DuplicateElement(g.to_string()));
        }
    }
    Ok(())
}

/// `Δ_I` (left: `g_m^-1 g_n`) or `Δ_D` (right: `g_n g_m^-1`) over `m < n`.
pub fn delta_set(ctx: GroupCtx, seq: &[Element], side: Side) -> Result<FiniteSet> {
    check_one_to_one(ctx, seq)?;
    let mut out = Vec::new();
    for (n, gn) in seq.iter().enumerate() {
        for gm in &seq[..n] {
            out.push(match side {
                Side::Left => left_div_unchecked(gm, gn),
                Side::Right => right_div_unchecked(gn, gm),
            });
        }
    }
    FiniteSet::new(ctx, out)
}

/// Largest sequence [`fp_set`] accepts.
pub const FP_MAX_LEN: usize = 24;

/// Finite products `x_{n1} ... x_{nk}` over strictly increasing indices.
pub fn fp_set(ctx: GroupCtx, seq: &[Element]) -> Result<FiniteSet> {
    check_one_to_one(ctx, seq)?;
    if seq.len() > FP_MAX_LEN {
        return Err(Error::Precondition(format!(
            "finite-product sets are limited to {FP_MAX_LEN} generators"
        )));
    }
    let mut products: Vec<Element> = Vec::new();
    for x in seq {
        let extended: Vec<Element> = products.iter().map(|p| op_unchecked(p, x)).collect();
        products.push(x.clone());
        products.extend(extended);
    }
    FiniteSet::new(ctx, products)
}

// ---------------------------------------------------------------------------
// Set algebra
// ---------------------------------------------------------------------------

pub fn whole_group(ctx: GroupCtx, window: Window) -> SetSpec {
    SetSpec::new("G", ctx, window, Provenance::new("whole_group"), |_| true)
}

pub fn empty_set(ctx: GroupCtx, window: Window) -> SetSpec {
    SetSpec::new("∅", ctx, window, Provenance::new("empty"), |_| false)
}

pub fn from_finite(f: &FiniteSet, window: Window) -> SetSpec {
    let members = f.clone();
    SetSpec::new(
        f.to_string(),
        f.ctx(),
        window,
        Provenance::new("finite").param("elements", f),
        move |g| members.contains(g),
    )
}

pub fn complement(a: &SetSpec) -> SetSpec {
    let inner = a.oracle();
    SetSpec::new(
        format!("G∖({})", a.name),
        a.ctx,
        a.window,
        Provenance::new("complement").param("set", &a.name),
        move |g| !inner(g),
    )
}

pub fn intersect(a: &SetSpec, b: &SetSpec) -> Result<SetSpec> {
    same_family(a.ctx, b.ctx)?;
    let (x, y) = (a.oracle(), b.oracle());
    Ok(SetSpec::new(
        format!("({})∩({})", a.name, b.name),
        a.ctx,
        combined_window(&a.window, &b.window),
        Provenance::new("intersect")
            .param("left", &a.name)
            .param("right", &b.name),
        move |g| x(g) && y(g),
    ))
}

pub fn union(a: &SetSpec, b: &SetSpec) -> Result<SetSpec> {
    same_family(a.ctx, b.ctx)?;
    let (x, y) = (a.oracle(), b.oracle());
    Ok(SetSpec::new(
        format!("({})∪({})", a.name, b.name),
        a.ctx,
        combined_window(&a.window, &b.window),
        Provenance::new("union")
            .param("left", &a.name)
            .param("right", &b.name),
        move |g| x(g) || y(g),
    ))
}

/// Left translate `tA`.
pub fn translate(t: &Element, a: &SetSpec) -> Result<SetSpec> {
    a.ctx.check(t)?;
    let t_inv = inverse_unchecked(t);
    let inner = a.oracle();
    Ok(SetSpec::new(
        format!("{t}({})", a.name),
        a.ctx,
        a.window,
        Provenance::new("translate")
            .param("by", t)
            .param("set", &a.name),
        move |g| inner(&op_unchecked(&t_inv, g)),
    ))
}

pub fn inverse_set(a: &SetSpec) -> SetSpec {
    let inner = a.oracle();
    SetSpec::new(
        format!("({})^-1", a.name),
        a.ctx,
        a.window,
        Provenance::new("inverse_set").param("set", &a.name),
        move |g| inner(&inverse_unchecked(g)),
    )
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// `k` with `k^3 = n`, for positive `n`.
pub fn positive_cube_root(n: i64) -> Option<i64> {
    if n <= 0 {
        return None;
    }
    let mut k = (n as f64).cbrt().round() as i64;
    while k > 0 && k * k * k > n {
        k -= 1;
    }
    while (k + 1).checked_pow(3).is_some_and(|c| c <= n) {
        k += 1;
    }
    (k * k * k == n).then_some(k)
}

/// The coset `r + dZ`.
pub fn make_coset(d: i64, r: i64) -> Result<SetSpec> {
    if d <= 0 {
        return Err(Error::Precondition(format!(
            "coset modulus must be positive, got {d}"
        )));
    }
    let r = r.rem_euclid(d);
    let name = match (d, r) {
        (1, _) => "Z".to_string(),
        (_, 0) => format!("{d}Z"),
        _ => format!("{r}+{d}Z"),
    };
    Ok(SetSpec::new(
        name,
        GroupCtx::Integer,
        Window::int(-6 * d, 6 * d),
        Provenance::new("coset").param("d", d).param("r", r),
        move |g| matches!(g, Element::Int(n) if n.rem_euclid(d) == r),
    ))
}

/// `⋃ [a_n, b_n]` over the given closed intervals of integers.
pub fn make_interval_union(pairs: &[(i64, i64)]) -> SetSpec {
    let pairs = pairs.to_vec();
    let hi = pairs.iter().map(|p| p.1).max().unwrap_or(0).max(0);
    let shown: Vec<String> = pairs.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
    SetSpec::new(
        if pairs.is_empty() {
            "∅".to_string()
        } else {
            shown.join("∪")
        },
        GroupCtx::Integer,
        Window::int(0, hi),
        Provenance::new("interval_union").param("pairs", shown.join(" ")),
        move |g| matches!(g, Element::Int(n) if pairs.iter().any(|&(a, b)| a <= *n && *n <= b)),
    )
}

fn in_geometric_blocks(n: u64) -> bool {
    // n ∈ [4^i, 2·4^i) iff the highest set bit sits at an even position
    n > 0 && (63 - n.leading_zeros()).is_multiple_of(2)
}

/// The thick, non-syndetic `⋃_{i≥0} [4^i, 2·4^i)`.
pub fn make_geometric_union() -> SetSpec {
    SetSpec::new(
        "⋃[4^i,2·4^i)",
        GroupCtx::Integer,
        Window::int(0, 1 << 10),
        Provenance::new("geometric_union"),
        |g| matches!(g, Element::Int(n) if *n > 0 && in_geometric_blocks(*n as u64)),
    )
}

/// `B(Z)` without the two-letter words `{m, n}`, `m < n`, whose gap
/// `n - m` is a positive cube.
pub fn make_cube_gap_complement() -> SetSpec {
    SetSpec::new(
        "cube_gap_complement",
        GroupCtx::Boolean,
        Window::boolean(2, -12, 12),
        Provenance::new("cube_gap_complement"),
        |g| match g {
            Element::Word(w) if w.len() == 2 && w[1] != STAR => {
                positive_cube_root(w[1] - w[0]).is_none()
            }
            _ => true,
        },
    )
}

/// A set of word lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LengthSet {
    Finite(BTreeSet<usize>),
    Even,
    Odd,
    AtLeast(usize),
    /// `⋃_{i≥0} [4^i, 2·4^i)`: thick and not syndetic in the naturals.
    GeometricBlocks,
    Union(Vec<LengthSet>),
}

impl LengthSet {
    pub fn contains(&self, n: usize) -> bool {
        match self {
            LengthSet::Finite(s) => s.contains(&n),
            LengthSet::Even => n.is_multiple_of(2),
            LengthSet::Odd => n % 2 == 1,
            LengthSet::AtLeast(k) => n >= *k,
            LengthSet::GeometricBlocks => in_geometric_blocks(n as u64),
            LengthSet::Union(parts) => parts.iter().any(|p| p.contains(n)),
        }
    }

    /// Parses `even`, `odd`, `blocks`, `>=K`, `1,2,5`, or `|`-separated
    /// unions of these.
    pub fn parse(s: &str) -> Result<LengthSet> {
        let parts: Vec<&str> = s.split('|').map(str::trim).collect();
        if parts.len() > 1 {
            return parts
                .into_iter()
                .map(LengthSet::parse)
                .collect::<Result<Vec<_>>>()
                .map(LengthSet::Union);
        }
        let s = parts[0];
        let bad = || Error::Parse(format!("cannot read length set `{s}`"));
        Ok(match s {
            "even" => LengthSet::Even,
            "odd" => LengthSet::Odd,
            "blocks" => LengthSet::GeometricBlocks,
            "" => LengthSet::Finite(BTreeSet::new()),
            _ => {
                if let Some(k) = s.strip_prefix(">=") {
                    LengthSet::AtLeast(k.trim().parse().map_err(|_| bad())?)
                } else {
                    LengthSet::Finite(
                        s.split(',')
                            .map(|x| x.trim().parse().map_err(|_| bad()))
                            .collect::<Result<_>>()?,
                    )
                }
            }
        })
    }
}

impl fmt::Display for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthSet::Finite(s) => {
                let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                f.write_str(&v.join(","))
            }
            LengthSet::Even => f.write_str("even"),
            LengthSet::Odd => f.write_str("odd"),
            LengthSet::AtLeast(k) => write!(f, ">={k}"),
            LengthSet::GeometricBlocks => f.write_str("blocks"),
            LengthSet::Union(parts) => {
                let v: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                f.write_str(&v.join("|"))
            }
        }
    }
}

/// Boolean words whose length lies in `lengths`.
pub fn make_length_filtered(lengths: LengthSet) -> SetSpec {
    let shown = lengths.to_string();
    SetSpec::new(
        format!("len∈{{{shown}}}"),
        GroupCtx::Boolean,
        Window::boolean(3, 1, 8),
        Provenance::new("length_filtered").param("lengths", &shown),
        move |g| matches!(g, Element::Word(w) if lengths.contains(w.len())),
    )
}

/// The Boolean lift `S' = ⋃_k S'_k` of a syndetic `S ⊂ Z` with
/// `Z = ⋃_k (s_k + S)`: nonempty words containing exactly one anchor `s_k`
/// whose letter sum lies in `2 s_k + S`.
///
/// The cover hypothesis is checked on `validate`, which is recorded in the
/// provenance.
pub fn make_s_prime(
    s: &SetSpec,
    anchors: &FiniteSet,
    validate: Window,
    limits: &Limits,
) -> Result<SetSpec> {
    same_family(GroupCtx::Integer, s.ctx)?;
    same_family(GroupCtx::Integer, anchors.ctx())?;
    validate.check(GroupCtx::Integer)?;
    if anchors.is_empty() {
        return Err(Error::Precondition("S' needs at least one anchor".into()));
    }
    let anchor_vals: Vec<i64> = anchors.iter().filter_map(Element::as_int).collect();
    for z in enumerate_window(GroupCtx::Integer, &validate, limits)? {
        let z = z.as_int().unwrap_or_default();
        if !anchor_vals.iter().any(|a| s.contains(&Element::Int(z - a))) {
            return Err(Error::Precondition(format!(
                "translates of {} by the anchors miss {z}",
                s.name
            )));
        }
    }
    let inner = s.oracle();
    let anchor_set: BTreeSet<i64> = anchor_vals.iter().copied().collect();
    let mut prov = Provenance::new("s_prime")
        .param("set", &s.name)
        .param("anchors", anchors);
    prov.validated = Some(validate);
    Ok(SetSpec::new(
        format!("S'({})", s.name),
        GroupCtx::Boolean,
        Window::boolean(2, -6, 6),
        prov,
        move |g| {
            let Element::Word(w) = g else { return false };
            if w.is_empty() || w.contains(&STAR) {
                return false;
            }
            let mut hit = w.iter().filter(|x| anchor_set.contains(x));
            let (Some(&k), None) = (hit.next(), hit.next()) else {
                return false;
            };
            let sum: i64 = w.iter().sum();
            inner(&Element::Int(sum - 2 * k))
        },
    ))
}

/// Words of the rank-2 free group whose last letter is `a`.
pub fn make_ends_with_a() -> SetSpec {
    SetSpec::new(
        "ends_with_a",
        GroupCtx::Free { rank: 2 },
        Window::free(4),
        Provenance::new("ends_with_a"),
        |g| matches!(g, Element::FreeWord(w) if w.last().is_some_and(|x| x.0 == 1)),
    )
}
