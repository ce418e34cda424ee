//! Concrete groups: the integers, the free Boolean group `B(Z)` and free
//! groups of small rank, together with their finite windows.
//!
//! Elements carry a canonical total order used everywhere a search has to
//! pick a witness: shorter elements first (`|n|` for integers, word length
//! otherwise), then lexicographically. Positive integers precede their
//! negatives and a generator precedes its inverse, so the integer order
//! starts `0, 1, -1, 2, -2, ...` and the rank-2 free order starts
//! `e, a, a^-1, b, b^-1, aa, ...`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Letters of Boolean words.
pub type Letter = i64;

/// The non-isolated point `*` of `X ∪ {*}`, kept outside every integer
/// letter range a window can describe.
pub const STAR: Letter = i64::MAX;

/// Default hard cap on the number of elements a window may enumerate.
pub const DEFAULT_WINDOW_CAP: usize = 1_000_000;

/// Default node budget for exponential searches.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Environment variable overriding [`DEFAULT_WINDOW_CAP`].
pub const WINDOW_CAP_ENV: &str = "LARGESET_BUDGET_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupCtx {
    Integer,
    Boolean,
    Free { rank: u8 },
}

impl GroupCtx {
    pub fn free(rank: u8) -> Result<Self> {
        if rank == 0 || rank > 26 {
            return Err(Error::Precondition(format!(
                "free group rank must lie in 1..=26, got {rank}"
            )));
        }
        Ok(GroupCtx::Free { rank })
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupCtx::Integer => Element::Int(0),
            GroupCtx::Boolean => Element::Word(Vec::new()),
            GroupCtx::Free { .. } => Element::FreeWord(Vec::new()),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupCtx::Integer | GroupCtx::Boolean => true,
            GroupCtx::Free { rank } => *rank == 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupCtx::Integer => "integer",
            GroupCtx::Boolean => "boolean",
            GroupCtx::Free { .. } => "free",
        }
    }

    /// Checks that `g` is an element of this group.
    pub fn check(&self, g: &Element) -> Result<()> {
        match (self, g) {
            (GroupCtx::Integer, Element::Int(_)) => Ok(()),
            (GroupCtx::Boolean, Element::Word(_)) => Ok(()),
            (GroupCtx::Free { rank }, Element::FreeWord(w)) => {
                match w.iter().find(|x| x.index() > *rank) {
                    Some(x) => Err(Error::mismatch(
                        format!("free group of rank {rank}"),
                        format!("generator {x}"),
                    )),
                    None => Ok(()),
                }
            }
            _ => Err(Error::mismatch(self.name(), g.family_name())),
        }
    }

    pub fn op(&self, g: &Element, h: &Element) -> Result<Element> {
        self.check(g)?;
        self.check(h)?;
        Ok(op_unchecked(g, h))
    }

    pub fn inverse(&self, g: &Element) -> Result<Element> {
        self.check(g)?;
        Ok(inverse_unchecked(g))
    }

    /// `g^-1 h`, the building block of quotient sets.
    pub fn left_div(&self, g: &Element, h: &Element) -> Result<Element> {
        self.check(g)?;
        self.check(h)?;
        Ok(left_div_unchecked(g, h))
    }
}

impl fmt::Display for GroupCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupCtx::Free { rank } => write!(f, "free(rank {rank})"),
            other => f.write_str(other.name()),
        }
    }
}

/// A free generator or its inverse: `+k` is the `k`-th generator
/// (1-based), `-k` its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gen(pub i8);

impl Gen {
    pub fn index(self) -> u8 {
        self.0.unsigned_abs()
    }

    pub fn inv(self) -> Gen {
        Gen(-self.0)
    }

    fn key(self) -> (u8, bool) {
        (self.index(), self.0 < 0)
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = (b'a' + self.index() - 1) as char;
        if self.0 < 0 {
            write!(f, "{c}^-1")
        } else {
            write!(f, "{c}")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Int(i64),
    /// Strictly increasing letters: a finite subset of the basis.
    Word(Vec<Letter>),
    /// Freely reduced word in the generators.
    FreeWord(Vec<Gen>),
}

impl Element {
    /// Builds a Boolean word from arbitrary letters; repeated letters cancel
    /// in pairs.
    pub fn word(letters: impl IntoIterator<Item = Letter>) -> Element {
        let mut v: Vec<Letter> = letters.into_iter().collect();
        v.sort_unstable();
        let mut out: Vec<Letter> = Vec::with_capacity(v.len());
        for x in v {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Element::Word(out)
    }

    /// Builds a reduced free word from signed generator indices.
    pub fn free(gens: impl IntoIterator<Item = i8>) -> Element {
        let mut out: Vec<Gen> = Vec::new();
        for g in gens {
            if g == 0 {
                continue;
            }
            if out.last() == Some(&Gen(-g)) {
                out.pop();
            } else {
                out.push(Gen(g));
            }
        }
        Element::FreeWord(out)
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Int(n) => *n == 0,
            Element::Word(w) => w.is_empty(),
            Element::FreeWord(w) => w.is_empty(),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Element::Int(_) => "integer",
            Element::Word(_) => "boolean",
            Element::FreeWord(_) => "free",
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Element::Int(n) => Some(*n),
            _ => None,
        }
    }

    pub fn letters(&self) -> Option<&[Letter]> {
        match self {
            Element::Word(w) => Some(w),
            _ => None,
        }
    }

    fn variant(&self) -> u8 {
        match self {
            Element::Int(_) => 0,
            Element::Word(_) => 1,
            Element::FreeWord(_) => 2,
        }
    }

    /// Parses the report syntax: decimal integers, `{1,2}` words (with `*`
    /// for the star letter) and juxtaposed free words such as `ab^-1a` or `e`.
    pub fn parse(ctx: GroupCtx, s: &str) -> Result<Element> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot read `{s}` as a {} element", ctx.name()));
        let g = match ctx {
            GroupCtx::Integer => Element::Int(s.parse().map_err(|_| bad())?),
            GroupCtx::Boolean => {
                let inner = s
                    .strip_prefix('{')
                    .and_then(|r| r.strip_suffix('}'))
                    .ok_or_else(bad)?;
                let mut letters = Vec::new();
                for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    if part == "*" {
                        letters.push(STAR);
                    } else {
                        letters.push(part.parse().map_err(|_| bad())?);
                    }
                }
                Element::word(letters)
            }
            GroupCtx::Free { .. } => {
                if s == "e" || s.is_empty() {
                    return Ok(ctx.identity());
                }
                let mut gens = Vec::new();
                let mut rest = s;
                while let Some(c) = rest.chars().next() {
                    if !c.is_ascii_lowercase() {
                        return Err(bad());
                    }
                    let index = (c as u8 - b'a' + 1) as i8;
                    rest = &rest[1..];
                    if let Some(r) = rest.strip_prefix("^-1") {
                        gens.push(-index);
                        rest = r;
                    } else {
                        gens.push(index);
                    }
                }
                Element::free(gens)
            }
        };
        ctx.check(&g)?;
        Ok(g)
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Int(a), Element::Int(b)) => {
                (a.unsigned_abs(), *a < 0).cmp(&(b.unsigned_abs(), *b < 0))
            }
            (Element::Word(a), Element::Word(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Element::FreeWord(a), Element::FreeWord(b)) => {
                a.len().cmp(&b.len()).then_with(|| a.cmp(b))
            }
            _ => self.variant().cmp(&other.variant()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(n) => write!(f, "{n}"),
            Element::Word(w) => {
                f.write_str("{")?;
                for (i, x) in w.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    if *x == STAR {
                        f.write_str("*")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                f.write_str("}")
            }
            Element::FreeWord(w) if w.is_empty() => f.write_str("e"),
            Element::FreeWord(w) => w.iter().try_for_each(|g| write!(f, "{g}")),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Symmetric difference of two strictly increasing letter lists.
pub fn sym_diff(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn free_concat(a: &[Gen], b: &[Gen]) -> Vec<Gen> {
    let mut out = a.to_vec();
    for &g in b {
        if out.last() == Some(&g.inv()) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

/// Group operation without family checks. Mixed families panic.
pub(crate) fn op_unchecked(g: &Element, h: &Element) -> Element {
    match (g, h) {
        (Element::Int(a), Element::Int(b)) => Element::Int(a + b),
        (Element::Word(a), Element::Word(b)) => Element::Word(sym_diff(a, b)),
        (Element::FreeWord(a), Element::FreeWord(b)) => Element::FreeWord(free_concat(a, b)),
        _ => panic!("mixed group families: {g} and {h}"),
    }
}

pub(crate) fn inverse_unchecked(g: &Element) -> Element {
    match g {
        Element::Int(a) => Element::Int(-a),
        Element::Word(_) => g.clone(),
        Element::FreeWord(w) => Element::FreeWord(w.iter().rev().map(|x| x.inv()).collect()),
    }
}

pub(crate) fn left_div_unchecked(g: &Element, h: &Element) -> Element {
    match (g, h) {
        (Element::Int(a), Element::Int(b)) => Element::Int(b - a),
        (Element::Word(a), Element::Word(b)) => Element::Word(sym_diff(a, b)),
        _ => op_unchecked(&inverse_unchecked(g), h),
    }
}

pub(crate) fn right_div_unchecked(g: &Element, h: &Element) -> Element {
    match (g, h) {
        (Element::Int(a), Element::Int(b)) => Element::Int(a - b),
        (Element::Word(a), Element::Word(b)) => Element::Word(sym_diff(a, b)),
        _ => op_unchecked(g, &inverse_unchecked(h)),
    }
}

/// Length of a Boolean word (its cardinality) or of a reduced free word.
pub fn word_length(g: &Element) -> Result<usize> {
    match g {
        Element::Word(w) => Ok(w.len()),
        Element::FreeWord(w) => Ok(w.len()),
        Element::Int(_) => Err(Error::NotAWord(g.to_string())),
    }
}

/// Resource limits shared by every enumeration and search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub window_cap: usize,
    pub node_budget: u64,
}

impl Limits {
    pub fn with_budget(node_budget: u64) -> Self {
        Limits {
            node_budget,
            ..Limits::default()
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        static CAP: OnceLock<usize> = OnceLock::new();
        let window_cap = *CAP.get_or_init(|| {
            std::env::var(WINDOW_CAP_ENV)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(DEFAULT_WINDOW_CAP)
        });
        Limits {
            window_cap,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// A finite fragment of a group on which infinite-group predicates are
/// evaluated. Every window contains the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Window {
    IntRange {
        lo: i64,
        hi: i64,
    },
    /// Words of length at most `max_len` over letters in
    /// `letter_lo..=letter_hi`.
    BooleanBall {
        max_len: usize,
        letter_lo: Letter,
        letter_hi: Letter,
    },
    FreeBall {
        max_len: usize,
    },
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

impl Window {
    pub fn int(lo: i64, hi: i64) -> Window {
        Window::IntRange { lo, hi }
    }

    pub fn boolean(max_len: usize, letter_lo: Letter, letter_hi: Letter) -> Window {
        Window::BooleanBall {
            max_len,
            letter_lo,
            letter_hi,
        }
    }

    pub fn free(max_len: usize) -> Window {
        Window::FreeBall { max_len }
    }

    pub fn matches(&self, ctx: GroupCtx) -> bool {
        matches!(
            (self, ctx),
            (Window::IntRange { .. }, GroupCtx::Integer)
                | (Window::BooleanBall { .. }, GroupCtx::Boolean)
                | (Window::FreeBall { .. }, GroupCtx::Free { .. })
        )
    }

    pub fn check(&self, ctx: GroupCtx) -> Result<()> {
        if !self.matches(ctx) {
            return Err(Error::mismatch(ctx, self));
        }
        match *self {
            Window::IntRange { lo, hi } if lo > 0 || hi < 0 => Err(Error::Precondition(format!(
                "integer window {self} must contain 0"
            ))),
            Window::BooleanBall {
                letter_lo,
                letter_hi,
                ..
            } if letter_lo > letter_hi + 1 => Err(Error::Precondition(format!(
                "letter range of {self} is inverted"
            ))),
            _ => Ok(()),
        }
    }

    pub fn letter_count(&self) -> usize {
        match *self {
            Window::BooleanBall {
                letter_lo,
                letter_hi,
                ..
            } if letter_hi >= letter_lo => (letter_hi - letter_lo + 1) as usize,
            _ => 0,
        }
    }

    /// Closed-form number of elements.
    pub fn size(&self, ctx: GroupCtx) -> u128 {
        match *self {
            Window::IntRange { lo, hi } => (hi as i128 - lo as i128 + 1).max(0) as u128,
            Window::BooleanBall { max_len, .. } => {
                let n = self.letter_count() as u128;
                (0..=max_len as u128).map(|k| binomial(n, k)).sum()
            }
            Window::FreeBall { max_len } => {
                let r = match ctx {
                    GroupCtx::Free { rank } => rank as u128,
                    _ => 0,
                };
                let mut total: u128 = 1;
                let mut layer: u128 = 2 * r;
                for _ in 0..max_len {
                    total = total.saturating_add(layer);
                    layer = layer.saturating_mul((2 * r).saturating_sub(1).max(1));
                }
                total
            }
        }
    }

    /// Membership of `g` in the window. Boolean windows treat the star
    /// letter as admissible, so traces over `X ∪ {*}` can be clipped too.
    pub fn contains(&self, g: &Element) -> bool {
        match (*self, g) {
            (Window::IntRange { lo, hi }, Element::Int(n)) => lo <= *n && *n <= hi,
            (
                Window::BooleanBall {
                    max_len,
                    letter_lo,
                    letter_hi,
                },
                Element::Word(w),
            ) => {
                w.len() <= max_len
                    && w.iter()
                        .all(|&x| x == STAR || (letter_lo <= x && x <= letter_hi))
            }
            (Window::FreeBall { max_len }, Element::FreeWord(w)) => w.len() <= max_len,
            _ => false,
        }
    }

    /// The window shrunk by `pad`: fewer integers on both sides, or a
    /// smaller radius for balls.
    pub fn inner(&self, pad: usize) -> Window {
        let p = pad as i64;
        match *self {
            Window::IntRange { lo, hi } => Window::IntRange {
                lo: (lo + p).min(0),
                hi: (hi - p).max(0),
            },
            Window::BooleanBall {
                max_len,
                letter_lo,
                letter_hi,
            } => Window::BooleanBall {
                max_len: max_len.saturating_sub(pad),
                letter_lo,
                letter_hi,
            },
            Window::FreeBall { max_len } => Window::FreeBall {
                max_len: max_len.saturating_sub(pad),
            },
        }
    }

    /// Intersection of two windows of the same kind.
    pub fn intersect(&self, other: &Window) -> Option<Window> {
        match (*self, *other) {
            (Window::IntRange { lo: a, hi: b }, Window::IntRange { lo: c, hi: d }) => {
                Some(Window::IntRange {
                    lo: a.max(c),
                    hi: b.min(d),
                })
            }
            (
                Window::BooleanBall {
                    max_len: m1,
                    letter_lo: l1,
                    letter_hi: h1,
                },
                Window::BooleanBall {
                    max_len: m2,
                    letter_lo: l2,
                    letter_hi: h2,
                },
            ) => Some(Window::BooleanBall {
                max_len: m1.min(m2),
                letter_lo: l1.max(l2),
                letter_hi: h1.min(h2),
            }),
            (Window::FreeBall { max_len: a }, Window::FreeBall { max_len: b }) => {
                Some(Window::FreeBall { max_len: a.min(b) })
            }
            _ => None,
        }
    }

    /// Parses `int:LO..HI`, `bool:MAXLEN:LO..HI` or `free:MAXLEN`.
    pub fn parse(s: &str) -> Result<Window> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot read window `{s}`"));
        let range = |r: &str| -> Result<(i64, i64)> {
            let (a, b) = r.split_once("..").ok_or_else(bad)?;
            Ok((
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        };
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "int" => {
                let (lo, hi) = range(rest)?;
                Ok(Window::IntRange { lo, hi })
            }
            "bool" => {
                let (len, r) = rest.split_once(':').ok_or_else(bad)?;
                let (letter_lo, letter_hi) = range(r)?;
                Ok(Window::BooleanBall {
                    max_len: len.trim().parse().map_err(|_| bad())?,
                    letter_lo,
                    letter_hi,
                })
            }
            "free" => Ok(Window::FreeBall {
                max_len: rest.trim().parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Window::IntRange { lo, hi } => write!(f, "int:{lo}..{hi}"),
            Window::BooleanBall {
                max_len,
                letter_lo,
                letter_hi,
            } => write!(f, "bool:{max_len}:{letter_lo}..{letter_hi}"),
            Window::FreeBall { max_len } => write!(f, "free:{max_len}"),
        }
    }
}

/// Enumerates a window in canonical order.
pub fn enumerate_window(ctx: GroupCtx, w: &Window, limits: &Limits) -> Result<Vec<Element>> {
    w.check(ctx)?;
    let size = w.size(ctx);
    if size > limits.window_cap as u128 {
        return Err(Error::WindowTooLarge {
            size,
            cap: limits.window_cap,
        });
    }
    let out = match *w {
        Window::IntRange { lo, hi } => {
            let mut v: Vec<Element> = (lo..=hi).map(Element::Int).collect();
            v.sort();
            v
        }
        Window::BooleanBall {
            max_len,
            letter_lo,
            letter_hi,
        } => {
            let letters: Vec<Letter> = (letter_lo..=letter_hi).collect();
            let mut v = Vec::with_capacity(size as usize);
            for k in 0..=max_len.min(letters.len()) {
                for_each_combination(&letters, k, |c| v.push(Element::Word(c.to_vec())));
            }
            v
        }
        Window::FreeBall { max_len } => {
            let GroupCtx::Free { rank } = ctx else {
                unreachable!()
            };
            let mut gens: Vec<Gen> = (1..=rank as i8).flat_map(|i| [Gen(i), Gen(-i)]).collect();
            gens.sort();
            let mut v = vec![Element::FreeWord(Vec::new())];
            let mut layer: Vec<Vec<Gen>> = vec![Vec::new()];
            for _ in 0..max_len {
                let mut next = Vec::with_capacity(layer.len() * gens.len());
                for w in &layer {
                    for &g in &gens {
                        if w.last() != Some(&g.inv()) {
                            let mut x = w.clone();
                            x.push(g);
                            next.push(x);
                        }
                    }
                }
                v.extend(next.iter().cloned().map(Element::FreeWord));
                layer = next;
            }
            v
        }
    };
    Ok(out)
}

/// Calls `f` on every `k`-subset of `items` in lexicographic order of
/// positions.
pub fn for_each_combination<T: Clone>(items: &[T], k: usize, mut f: impl FnMut(&[T])) {
    if k > items.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i].clone()).collect();
    loop {
        f(&buf);
        let n = items.len();
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        let i = i - 1;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..k {
            buf[j] = items[idx[j]].clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[Letter]) -> Element {
        Element::word(letters.iter().copied())
    }

    #[test]
    fn boolean_sum() {
        let g = GroupCtx::Boolean.op(&w(&[1, 2]), &w(&[2, 3])).unwrap();
        assert_eq!(g, w(&[1, 3]));
        assert_eq!(GroupCtx::Boolean.inverse(&w(&[1, 5])).unwrap(), w(&[1, 5]));
    }

    #[test]
    fn integer_and_free_ops() {
        let z = GroupCtx::Integer;
        assert_eq!(
            z.op(&Element::Int(2), &Element::Int(3)).unwrap(),
            Element::Int(5)
        );
        assert_eq!(z.inverse(&Element::Int(7)).unwrap(), Element::Int(-7));

        let f = GroupCtx::free(2).unwrap();
        let a = Element::free([1]);
        let a_inv = Element::free([-1]);
        assert!(f.op(&a, &a_inv).unwrap().is_identity());
        // (a b^-1)^-1 = b a^-1
        assert_eq!(
            f.inverse(&Element::free([1, -2])).unwrap(),
            Element::free([2, -1])
        );
    }

    #[test]
    fn family_mismatch_is_an_error() {
        let err = GroupCtx::Boolean
            .op(&Element::Int(1), &w(&[1]))
            .unwrap_err();
        assert!(matches!(err, Error::FamilyMismatch { .. }));
        assert!(GroupCtx::free(1)
            .unwrap()
            .check(&Element::free([2]))
            .is_err());
        assert!(GroupCtx::free(0).is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(word_length(&w(&[1, 2, 3])).unwrap(), 3);
        assert_eq!(word_length(&w(&[])).unwrap(), 0);
        assert_eq!(word_length(&Element::free([1, 2, 1])).unwrap(), 3);
        assert!(word_length(&Element::Int(3)).is_err());
    }

    #[test]
    fn window_enumeration() {
        let l = Limits::default();
        let b1 = enumerate_window(GroupCtx::Boolean, &Window::boolean(1, 1, 3), &l).unwrap();
        assert_eq!(b1, vec![w(&[]), w(&[1]), w(&[2]), w(&[3])]);
        let b2 = enumerate_window(GroupCtx::Boolean, &Window::boolean(2, 1, 4), &l).unwrap();
        assert_eq!(b2.len(), 11);
        let f = GroupCtx::free(2).unwrap();
        let f1 = enumerate_window(f, &Window::free(1), &l).unwrap();
        let shown: Vec<String> = f1.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["e", "a", "a^-1", "b", "b^-1"]);
        let z = enumerate_window(GroupCtx::Integer, &Window::int(-2, 2), &l).unwrap();
        assert_eq!(z, [0, 1, -1, 2, -2].map(Element::Int));
    }

    #[test]
    fn window_sizes_match_enumeration() {
        let l = Limits::default();
        let f3 = GroupCtx::free(3).unwrap();
        for (ctx, win) in [
            (GroupCtx::Boolean, Window::boolean(3, -3, 4)),
            (GroupCtx::Boolean, Window::boolean(0, 0, 9)),
            (GroupCtx::free(2).unwrap(), Window::free(4)),
            (f3, Window::free(3)),
            (GroupCtx::Integer, Window::int(-7, 11)),
        ] {
            let v = enumerate_window(ctx, &win, &l).unwrap();
            assert_eq!(v.len() as u128, win.size(ctx), "{win}");
            let mut sorted = v.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, v, "{win} is not canonical and duplicate-free");
            assert!(v.contains(&ctx.identity()));
            assert!(v.iter().all(|g| win.contains(g)));
        }
    }

    #[test]
    fn window_cap_is_an_error() {
        let l = Limits {
            window_cap: 10,
            node_budget: 1,
        };
        let err = enumerate_window(GroupCtx::Boolean, &Window::boolean(2, 1, 4), &l).unwrap_err();
        assert!(matches!(err, Error::WindowTooLarge { size: 11, cap: 10 }));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f = GroupCtx::free(2).unwrap();
        for s in ["e", "a", "ab^-1a", "b^-1b^-1"] {
            assert_eq!(Element::parse(f, s).unwrap().to_string(), s);
        }
        assert_eq!(
            Element::parse(GroupCtx::Boolean, "{3, 1,*}")
                .unwrap()
                .to_string(),
            "{1,3,*}"
        );
        assert_eq!(Element::parse(GroupCtx::Boolean, "{}").unwrap(), w(&[]));
        assert_eq!(
            Element::parse(GroupCtx::Integer, "-12").unwrap(),
            Element::Int(-12)
        );
        assert!(Element::parse(GroupCtx::Integer, "{1}").is_err());
        for s in ["int:-50..50", "bool:2:-12..12", "free:6"] {
            assert_eq!(Window::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        for_each_combination(&[1, 2, 3, 4], 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 2]);
        assert_eq!(seen[5], vec![3, 4]);
        let mut none = 0;
        for_each_combination(&[1, 2], 3, |_| none += 1);
        assert_eq!(none, 0);
        let mut empty = 0;
        for_each_combination::<i32>(&[], 0, |_| empty += 1);
        assert_eq!(empty, 1);
    }
}
