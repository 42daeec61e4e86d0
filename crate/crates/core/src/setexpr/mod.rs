//! Integer-set expressions.
//!
//! A [`SetExpr`] describes a possibly infinite subset of ℕ₀ built from finite
//! sets, arithmetic progressions, periodic tilings and anti-tiles, closed under
//! union, intersection, difference and translation. Every expression has a
//! total, pure membership test, and can be materialized over a finite window
//! as a [`PrefixBitmap`].

mod bitmap;
mod parse;

use std::fmt;

use crate::error::{Error, Result};

pub use bitmap::{
    eq_mod_finite_prefix, materialize_prefix, materialize_prefix_with, symmetric_difference_prefix,
    Limits, PrefixBitmap, DEFAULT_MAX_POSITIONS,
};
pub use parse::parse_set_expr;

/// Largest anti-tile order accepted by [`AntiTileParams::new`].
pub const MAX_ANTITILE_ORDER: u32 = 40;

/// A finite set of naturals, stored strictly increasing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FiniteSet(Vec<u64>);

impl FiniteSet {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a set from arbitrary elements; duplicates are dropped.
    pub fn from_unsorted(mut elems: Vec<u64>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        Self(elems)
    }

    /// Wraps an already strictly increasing list.
    pub fn from_sorted(elems: Vec<u64>) -> Result<Self> {
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Range("finite set elements must be strictly increasing".into()));
        }
        Ok(Self(elems))
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    /// Elements lying in `[lo, hi]`.
    pub fn range(&self, lo: u64, hi: u64) -> &[u64] {
        let a = self.0.partition_point(|&x| x < lo);
        let b = self.0.partition_point(|&x| x <= hi);
        &self.0[a..b.max(a)]
    }

    pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a FiniteSet>) -> FiniteSet {
        let all: Vec<u64> = sets.into_iter().flat_map(|s| s.0.iter().copied()).collect();
        FiniteSet::from_unsorted(all)
    }
}

/// The arithmetic progression `step·ℕ₀ + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Progression {
    step: u64,
    offset: u64,
}

impl Progression {
    pub fn new(step: u64, offset: u64) -> Result<Self> {
        if step == 0 {
            return Err(Error::Range("AP step must be at least 1".into()));
        }
        Ok(Self { step, offset })
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.offset && (n - self.offset) % self.step == 0
    }
}

/// The infinite tiling `(⋃_{j≥0} T + j·period) + offset` of a tile `T ⊆ [0, period)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tiling {
    period: u64,
    offset: u64,
    tile: Vec<u64>,
}

impl Tiling {
    /// `tile` may be unsorted; every element must be below `period`.
    pub fn new(period: u64, offset: u64, tile: impl Into<Vec<u64>>) -> Result<Self> {
        if period == 0 {
            return Err(Error::Range("tiling period must be at least 1".into()));
        }
        let mut tile = tile.into();
        tile.sort_unstable();
        tile.dedup();
        if let Some(&t) = tile.last() {
            if t >= period {
                return Err(Error::Range(format!(
                    "tile element {t} is not below the period {period}"
                )));
            }
        }
        Ok(Self {
            period,
            offset,
            tile,
        })
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn tile(&self) -> &[u64] {
        &self.tile
    }

    /// True when the tile is all of `[0, period)`.
    pub fn is_full(&self) -> bool {
        self.tile.len() as u64 == self.period
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.offset && self.tile.binary_search(&((n - self.offset) % self.period)).is_ok()
    }
}

/// Parameters of the finite anti-tile `A(order, step)`.
///
/// Proper tiles of length `order` are labelled `T_0 … T_{2^order − 2}` so that the
/// indicator string of `T_i`, read with position 0 as the most significant
/// digit, is the binary numeral of `i`. The anti-tile places the single point
/// `min(ℕ₀ ∖ T_i) + i·step` in block `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AntiTileParams {
    order: u32,
    step: u64,
    length: u64,
}

impl AntiTileParams {
    pub fn new(order: u32, step: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Range("anti-tile order must be at least 1".into()));
        }
        if order > MAX_ANTITILE_ORDER {
            return Err(Error::Range(format!(
                "anti-tile order {order} exceeds the maximum {MAX_ANTITILE_ORDER}"
            )));
        }
        if step < order as u64 {
            return Err(Error::Range(format!(
                "anti-tile step {step} must be at least the order {order}"
            )));
        }
        let length = ((1u64 << order) - 1)
            .checked_mul(step)
            .ok_or_else(|| Error::Overflow(format!("length of A({order},{step})")))?;
        Ok(Self {
            order,
            step,
            length,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    /// `(2^order − 1)·step`.
    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn block_count(&self) -> u64 {
        (1u64 << self.order) - 1
    }

    /// `min(ℕ₀ ∖ T_i)`: the run of leading ones of `i` written with `order` digits.
    pub fn first_gap(&self, i: u64) -> u64 {
        debug_assert!(i < self.block_count());
        let shifted = i << (64 - self.order);
        shifted.leading_ones() as u64
    }

    /// The point contributed by block `i`.
    pub fn point(&self, i: u64) -> u64 {
        self.first_gap(i) + i * self.step
    }

    pub fn contains(&self, n: u64) -> bool {
        if n >= self.length {
            return false;
        }
        let i = n / self.step;
        n % self.step == self.first_gap(i)
    }

    pub fn points(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.block_count()).map(|i| self.point(i))
    }
}

/// An expression denoting a subset of ℕ₀.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetExpr {
    Finite(FiniteSet),
    Ap(Progression),
    Tiling(Tiling),
    AntiTile(AntiTileParams),
    Union(Vec<SetExpr>),
    Intersect(Vec<SetExpr>),
    Diff(Box<SetExpr>, Box<SetExpr>),
    Shift(Box<SetExpr>, u64),
}

impl SetExpr {
    pub fn finite(elems: impl Into<Vec<u64>>) -> Self {
        SetExpr::Finite(FiniteSet::from_unsorted(elems.into()))
    }

    pub fn ap(step: u64, offset: u64) -> Result<Self> {
        Progression::new(step, offset).map(SetExpr::Ap)
    }

    pub fn tiling(period: u64, offset: u64, tile: impl Into<Vec<u64>>) -> Result<Self> {
        Tiling::new(period, offset, tile).map(SetExpr::Tiling)
    }

    pub fn anti_tile(order: u32, step: u64) -> Result<Self> {
        AntiTileParams::new(order, step).map(SetExpr::AntiTile)
    }

    pub fn union(parts: Vec<SetExpr>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Range("UNION needs at least one operand".into()));
        }
        Ok(SetExpr::Union(parts))
    }

    pub fn intersect(parts: Vec<SetExpr>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Range("INTER needs at least one operand".into()));
        }
        Ok(SetExpr::Intersect(parts))
    }

    pub fn diff(left: SetExpr, right: SetExpr) -> Self {
        SetExpr::Diff(Box::new(left), Box::new(right))
    }

    pub fn shift(inner: SetExpr, offset: u64) -> Self {
        SetExpr::Shift(Box::new(inner), offset)
    }

    /// Pointwise membership; total for every `n`.
    pub fn contains(&self, n: u64) -> bool {
        match self {
            SetExpr::Finite(f) => f.contains(n),
            SetExpr::Ap(p) => p.contains(n),
            SetExpr::Tiling(t) => t.contains(n),
            SetExpr::AntiTile(a) => a.contains(n),
            SetExpr::Union(parts) => parts.iter().any(|e| e.contains(n)),
            SetExpr::Intersect(parts) => parts.iter().all(|e| e.contains(n)),
            SetExpr::Diff(a, b) => a.contains(n) && !b.contains(n),
            SetExpr::Shift(inner, off) => n >= *off && inner.contains(n - off),
        }
    }
}

/// Free-function form of [`SetExpr::contains`].
pub fn member(expr: &SetExpr, n: u64) -> bool {
    expr.contains(n)
}

fn write_list(f: &mut fmt::Formatter<'_>, elems: &[u64]) -> fmt::Result {
    f.write_str("{")?;
    for (i, x) in elems.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("}")
}

fn write_exprs(f: &mut fmt::Formatter<'_>, name: &str, parts: &[SetExpr]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, e) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str(")")
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Finite(s) => {
                f.write_str("FINITE")?;
                write_list(f, s.as_slice())
            }
            SetExpr::Ap(p) => write!(f, "AP({},{})", p.step, p.offset),
            SetExpr::Tiling(t) => {
                write!(f, "TILING({},{},", t.period, t.offset)?;
                write_list(f, &t.tile)?;
                f.write_str(")")
            }
            SetExpr::AntiTile(a) => write!(f, "ANTITILE({},{})", a.order, a.step),
            SetExpr::Union(parts) => write_exprs(f, "UNION", parts),
            SetExpr::Intersect(parts) => write_exprs(f, "INTER", parts),
            SetExpr::Diff(a, b) => write!(f, "DIFF({a},{b})"),
            SetExpr::Shift(inner, off) => write!(f, "SHIFT({inner},{off})"),
        }
    }
}

impl std::str::FromStr for SetExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_set_expr(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ap_membership() {
        let e = SetExpr::ap(2, 1).unwrap();
        assert!(e.contains(7));
        assert!(!e.contains(8));
        assert!(!e.contains(0));
    }

    #[test]
    fn tiling_membership_matches_expansion() {
        let t = Tiling::new(6, 2, vec![0, 1, 3, 5]).unwrap();
        // brute-force expansion of (T + 6j) + 2
        let mut expanded = Vec::new();
        for j in 0..20u64 {
            for &x in &[0u64, 1, 3, 5] {
                expanded.push(x + 6 * j + 2);
            }
        }
        for n in 0..100 {
            assert_eq!(t.contains(n), expanded.contains(&n), "n = {n}");
        }
        assert!(t.contains(9));
    }

    #[test]
    fn anti_tile_3_3_points() {
        let a = AntiTileParams::new(3, 3).unwrap();
        let pts: Vec<u64> = a.points().collect();
        assert_eq!(pts, vec![0, 3, 6, 9, 13, 16, 20]);
        assert!(a.contains(13));
        assert!(!a.contains(12));
        assert!(!a.contains(21));
    }

    #[test]
    fn anti_tile_rejects_bad_params() {
        assert!(AntiTileParams::new(0, 1).is_err());
        assert!(AntiTileParams::new(3, 2).is_err());
        assert!(AntiTileParams::new(41, 1 << 41).is_err());
    }

    #[test]
    fn range_errors() {
        assert!(Progression::new(0, 3).is_err());
        assert!(Tiling::new(4, 0, vec![4]).is_err());
        assert!(Tiling::new(0, 0, vec![]).is_err());
        assert!(FiniteSet::from_sorted(vec![3, 3]).is_err());
    }

    #[test]
    fn shift_and_diff() {
        let e = SetExpr::shift(SetExpr::finite(vec![0, 2]), 5);
        assert!(e.contains(5) && e.contains(7) && !e.contains(2));
        let d = SetExpr::diff(SetExpr::ap(1, 0).unwrap(), SetExpr::ap(2, 0).unwrap());
        assert!(d.contains(3) && !d.contains(4));
    }

    #[test]
    fn render_is_canonical() {
        let e = SetExpr::union(vec![
            SetExpr::finite(vec![5, 1, 3]),
            SetExpr::tiling(6, 2, vec![5, 0, 1, 3]).unwrap(),
            SetExpr::shift(SetExpr::anti_tile(3, 3).unwrap(), 1),
        ])
        .unwrap();
        assert_eq!(
            e.to_string(),
            "UNION(FINITE{1,3,5},TILING(6,2,{0,1,3,5}),SHIFT(ANTITILE(3,3),1))"
        );
    }
}
