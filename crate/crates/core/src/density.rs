//! Natural, Banach and tile densities.
//!
//! Prefix estimates are exact rationals computed over a materialized window
//! `[1, N]`; [`exact_density_structured`] gives the limit value for single
//! structured leaves.

use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::setexpr::{materialize_prefix, PrefixBitmap, SetExpr, Tiling};
use crate::verify::rational::{ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityKind {
    Natural,
    Banach,
    Tile,
}

/// One density measurement.
///
/// `n` is the prefix length; it is `None` for analytically exact limit values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityEstimate {
    pub kind: DensityKind,
    pub n: Option<u64>,
    pub window: Option<u64>,
    pub value: Rational,
    pub exact: bool,
}

impl Serialize for DensityEstimate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("kind", &self.kind)?;
        m.serialize_entry("N", &self.n)?;
        if let Some(w) = self.window {
            m.serialize_entry("window", &w)?;
        }
        m.serialize_entry("num", &self.value.numer().to_string())?;
        m.serialize_entry("den", &self.value.denom().to_string())?;
        m.serialize_entry("exact", &self.exact)?;
        m.end()
    }
}

/// `|X ∩ [1, n]| / n`.
pub fn prefix_density(expr: &SetExpr, n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Precondition("prefix length must be at least 1".into()));
    }
    let bm = materialize_prefix(expr, 1, n)?;
    Ok(ratio(bm.count_ones(), n))
}

/// Largest member count over windows `[k+1, k+window]` with `0 ≤ k ≤ n − window`,
/// read from a bitmap that covers `[1, n]`.
pub fn max_window_count(bm: &PrefixBitmap, window: u64, n: u64) -> u64 {
    debug_assert!(bm.lo() <= 1 && bm.hi() >= n && window >= 1 && window <= n);
    let mut count = bm.count_range(1, window);
    let mut best = count;
    for k in 1..=n - window {
        // slide [k, k+window-1] -> [k+1, k+window]
        if bm.get(k + window) {
            count += 1;
        }
        if bm.get(k) {
            count -= 1;
        }
        best = best.max(count);
    }
    best
}

/// `max_k |X ∩ [k+1, k+window]| / window`, scanning only `[1, n]`.
pub fn banach_window_density(expr: &SetExpr, window: u64, n: u64) -> Result<Rational> {
    if window == 0 || window > n {
        return Err(Error::Precondition(format!(
            "window {window} must lie in [1, {n}]"
        )));
    }
    let bm = materialize_prefix(expr, 1, n)?;
    Ok(ratio(max_window_count(&bm, window, n), window))
}

/// Exact density for a single structured leaf: `|T|/r` for tilings, `1/a` for
/// progressions, `0` for finite sets. Composite shapes and anti-tiles give `None`.
pub fn exact_density_structured(expr: &SetExpr) -> Option<Rational> {
    match expr {
        SetExpr::Tiling(t) => Some(ratio(t.tile().len() as u64, t.period())),
        SetExpr::Ap(p) => Some(ratio(1, p.step())),
        SetExpr::Finite(_) => Some(Rational::zero()),
        _ => None,
    }
}

/// The best cover found by [`tile_cover_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileCover {
    /// Number of smallest observed elements excused.
    pub dropped: usize,
    pub tiling: Tiling,
    pub value: Rational,
}

/// Searches periods `r ≤ r_max` and drop counts `m ≤ drop_max` for the
/// smallest-density tiling covering `elems[m..]`, where the tile is the set of
/// residues `(x − b) mod r` and `b` the smallest surviving element.
///
/// `elems` must be strictly increasing. Returns `None` when no cover has density
/// below 1. Ties keep the smallest period, then the smallest drop count.
pub fn tile_cover_search(elems: &[u64], r_max: u64, drop_max: usize) -> Option<TileCover> {
    if elems.len() <= drop_max {
        // every observed element can be excused: the empty tile covers the rest
        let b = elems.last().map_or(0, |&x| x + 1);
        return Some(TileCover {
            dropped: elems.len(),
            tiling: Tiling::new(1, b, Vec::new()).expect("valid"),
            value: Rational::zero(),
        });
    }
    // best = (distinct residues, period, dropped)
    let mut best: Option<(u64, u64, usize)> = None;
    let mut seen: Vec<bool> = Vec::new();
    for r in 1..=r_max {
        let beats = |d: u64, best: &Option<(u64, u64, usize)>| match best {
            None => d < r,
            Some((bd, br, _)) => (d as u128) * (*br as u128) < (*bd as u128) * (r as u128),
        };
        seen.clear();
        seen.resize(r as usize, false);
        let mut distinct = 0u64;
        let mut pruned = false;
        for &x in &elems[drop_max..] {
            let c = (x % r) as usize;
            if !seen[c] {
                seen[c] = true;
                distinct += 1;
                if !beats(distinct, &best) {
                    pruned = true;
                    break;
                }
            }
        }
        if pruned {
            continue;
        }
        // distinct is non-increasing in the drop count, so the most dropped wins;
        // report the smallest drop count that attains it
        let mut dropped = drop_max;
        for m in (0..drop_max).rev() {
            let c = (elems[m] % r) as usize;
            if seen[c] {
                dropped = m;
            } else {
                break;
            }
        }
        if beats(distinct, &best) {
            best = Some((distinct, r, dropped));
        }
    }
    let (_, r, dropped) = best?;
    let b = elems[dropped];
    let tile: Vec<u64> = elems[dropped..].iter().map(|&x| (x - b) % r).collect();
    let tiling = Tiling::new(r, b, tile).expect("residues lie below the period");
    let value = ratio(tiling.tile().len() as u64, r);
    Some(TileCover {
        dropped,
        tiling,
        value,
    })
}

/// Upper bound on tile density relative to the search space `r ≤ r_max`,
/// `m ≤ drop_max`, observed on `[1, n]`; `1` when nothing smaller is found.
pub fn tile_density_upper_bound(
    expr: &SetExpr,
    n: u64,
    r_max: u64,
    drop_max: u64,
) -> Result<Rational> {
    if r_max == 0 {
        return Err(Error::Precondition("r_max must be at least 1".into()));
    }
    if drop_max >= n {
        return Err(Error::Precondition(format!(
            "drop_max {drop_max} must be below N = {n}"
        )));
    }
    let bm = materialize_prefix(expr, 1, n)?;
    let elems: Vec<u64> = bm.iter_ones().collect();
    Ok(tile_cover_search(&elems, r_max, drop_max as usize)
        .map_or_else(Rational::one, |c| c.value))
}

/// Natural density at every checkpoint plus Banach densities at windows
/// `⌊√N⌋` and `⌊N/10⌋`. Structured leaves also get an exact limit row.
pub fn densities_report(expr: &SetExpr, checkpoints: &[u64]) -> Result<Vec<DensityEstimate>> {
    if checkpoints.is_empty() {
        return Err(Error::Precondition("at least one checkpoint is required".into()));
    }
    if checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "checkpoints must be positive and strictly increasing".into(),
        ));
    }
    let n_max = *checkpoints.last().expect("nonempty");
    let bm = materialize_prefix(expr, 1, n_max)?;
    let mut out = Vec::new();
    if let Some(v) = exact_density_structured(expr) {
        out.push(DensityEstimate {
            kind: DensityKind::Natural,
            n: None,
            window: None,
            value: v,
            exact: true,
        });
    }
    for &n in checkpoints {
        out.push(DensityEstimate {
            kind: DensityKind::Natural,
            n: Some(n),
            window: None,
            value: ratio(bm.count_range(1, n), n),
            exact: false,
        });
        let mut windows = vec![n.isqrt(), n / 10];
        windows.dedup();
        for w in windows.into_iter().filter(|&w| w >= 1) {
            out.push(DensityEstimate {
                kind: DensityKind::Banach,
                n: Some(n),
                window: Some(w),
                value: ratio(max_window_count(&bm, w, n), w),
                exact: false,
            });
        }
    }
    Ok(out)
}
