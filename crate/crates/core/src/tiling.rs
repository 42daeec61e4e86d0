//! Tiles, anti-tiles and the normalization of progression unions.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::setexpr::{materialize_prefix, AntiTileParams, Progression, SetExpr, Tiling};

/// Largest tile length accepted by [`proper_tiles`].
pub const MAX_PROPER_TILE_LENGTH: u32 = 20;

/// The `2^r − 1` proper tiles of length `r`, ordered so that the indicator
/// string `b_0 b_1 … b_{r−1}` of `T_i` (position 0 most significant) is the
/// binary numeral of `i`.
pub fn proper_tiles(r: u32) -> Result<Vec<Vec<u64>>> {
    if r == 0 || r > MAX_PROPER_TILE_LENGTH {
        return Err(Error::Range(format!(
            "tile length {r} must lie in [1, {MAX_PROPER_TILE_LENGTH}]"
        )));
    }
    let count = (1u64 << r) - 1;
    Ok((0..count)
        .map(|i| {
            (0..r as u64)
                .filter(|&j| i >> (r as u64 - 1 - j) & 1 == 1)
                .collect()
        })
        .collect())
}

/// A concrete anti-tile `A(r, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntiTileSpec {
    pub order: u32,
    pub step: u64,
    /// `(2^order − 1)·step`.
    pub length: u64,
    pub points: Vec<u64>,
}

impl AntiTileSpec {
    pub fn params(&self) -> AntiTileParams {
        AntiTileParams::new(self.order, self.step).expect("spec built from valid params")
    }
}

/// Builds `A(r, s) = { min(ℕ₀ ∖ T_i) + i·s }` over the ordered proper tiles.
pub fn anti_tile(r: u32, s: u64) -> Result<AntiTileSpec> {
    if r == 0 || s < r as u64 {
        return Err(Error::Precondition(format!(
            "anti-tile needs s >= r >= 1, got r = {r}, s = {s}"
        )));
    }
    let params = AntiTileParams::new(r, s)?;
    Ok(AntiTileSpec {
        order: r,
        step: s,
        length: params.length(),
        points: params.points().collect(),
    })
}

/// `b_0 b_1 … b_{length−1}` with `b_j = 1` iff `j` is a member, optionally with
/// a comma after every `group` characters.
pub fn bin_render(expr: &SetExpr, length: u64, group: Option<u64>) -> Result<String> {
    if length == 0 {
        return Err(Error::Precondition("render length must be at least 1".into()));
    }
    if group == Some(0) {
        return Err(Error::Precondition("group size must be at least 1".into()));
    }
    let bm = materialize_prefix(expr, 0, length - 1)?;
    let mut out = String::with_capacity((length + length / group.unwrap_or(length)) as usize);
    for j in 0..length {
        if let Some(g) = group {
            if j > 0 && j % g == 0 {
                out.push(',');
            }
        }
        out.push(if bm.get(j) { '1' } else { '0' });
    }
    Ok(out)
}

/// Turns `⋃ (a_i ℕ₀ + b_i)` into a single tiling with period `lcm(a_i)` and
/// offset `max(b_i)` that agrees with the union from the offset on.
pub fn normalize_ap_union(aps: &[Progression]) -> Result<Tiling> {
    if aps.is_empty() {
        return Err(Error::Precondition("progression list is empty".into()));
    }
    let mut period = 1u64;
    for p in aps {
        let g = period.gcd(&p.step());
        period = (period / g)
            .checked_mul(p.step())
            .ok_or_else(|| Error::Overflow("lcm of progression steps".into()))?;
    }
    let offset = aps.iter().map(Progression::offset).max().expect("nonempty");
    let tile: Vec<u64> = (0..period)
        .filter(|&t| aps.iter().any(|p| p.contains(offset + t)))
        .collect();
    Tiling::new(period, offset, tile)
}

/// Extracts the progressions of an expression that is a single `AP` or a
/// `UNION` of `AP`s.
pub fn as_ap_union(expr: &SetExpr) -> Option<Vec<Progression>> {
    match expr {
        SetExpr::Ap(p) => Some(vec![*p]),
        SetExpr::Union(parts) => parts
            .iter()
            .map(|e| match e {
                SetExpr::Ap(p) => Some(*p),
                _ => None,
            })
            .collect(),
        _ => None,
    }
}

/// The periodic extension `⋃_j A(r, s) + j·L + offset` as a tiling expression.
pub fn tile_anti_tile_expr(spec: &AntiTileSpec, offset: u64) -> SetExpr {
    SetExpr::Tiling(
        Tiling::new(spec.length, offset, spec.points.clone()).expect("anti-tile points lie below its length"),
    )
}

/// `|{ n ∈ [0, N] : n ∈ x, n ∉ tile }|`.
pub fn escape_count(x: &SetExpr, tile: &Tiling, n: u64) -> Result<u64> {
    let xs = materialize_prefix(x, 0, n)?;
    let cover = materialize_prefix(&SetExpr::Tiling(tile.clone()), 0, n)?;
    Ok(xs.and_not(&cover).count_ones())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setexpr::parse_set_expr;

    #[test]
    fn proper_tiles_of_three() {
        let t = proper_tiles(3).unwrap();
        let expected: Vec<Vec<u64>> = vec![
            vec![],
            vec![2],
            vec![1],
            vec![1, 2],
            vec![0],
            vec![0, 2],
            vec![0, 1],
        ];
        assert_eq!(t, expected);
        assert_eq!(proper_tiles(1).unwrap(), vec![Vec::<u64>::new()]);
        assert!(proper_tiles(0).is_err());
        assert!(proper_tiles(21).is_err());
    }

    #[test]
    fn proper_tiles_of_two_give_anti_tile_offsets() {
        let t = proper_tiles(2).unwrap();
        assert_eq!(t, vec![vec![], vec![1], vec![0]]);
        // min(ℕ₀ ∖ T_i) by brute force
        let gaps: Vec<u64> = t.iter().map(|ti| (0..).find(|g| !ti.contains(g)).unwrap()).collect();
        assert_eq!(gaps, vec![0, 0, 1]);
        assert_eq!(anti_tile(2, 4).unwrap().points, vec![0, 4, 9]);
    }

    #[test]
    fn anti_tile_examples() {
        let a = anti_tile(3, 3).unwrap();
        assert_eq!(a.points, vec![0, 3, 6, 9, 13, 16, 20]);
        assert_eq!(a.length, 21);
        assert_eq!(anti_tile(1, 1).unwrap().points, vec![0]);
        assert!(anti_tile(3, 2).is_err());
        assert!(anti_tile(0, 5).is_err());
    }

    #[test]
    fn anti_tile_matches_tile_enumeration() {
        for r in 1..=6u32 {
            let tiles = proper_tiles(r).unwrap();
            for s in [r as u64, r as u64 + 1, 2 * r as u64 + 3] {
                let expected: Vec<u64> = tiles
                    .iter()
                    .enumerate()
                    .map(|(i, ti)| (0..).find(|g| !ti.contains(g)).unwrap() + i as u64 * s)
                    .collect();
                assert_eq!(anti_tile(r, s).unwrap().points, expected, "r={r} s={s}");
            }
        }
    }

    #[test]
    fn render_fixtures() {
        let a33 = parse_set_expr("ANTITILE(3,3)").unwrap();
        assert_eq!(bin_render(&a33, 21, Some(3)).unwrap(), "100,100,100,100,010,010,001");
        let tiles = proper_tiles(3).unwrap();
        let concat: Vec<u64> = tiles
            .iter()
            .enumerate()
            .flat_map(|(i, t)| t.iter().map(move |&x| x + 3 * i as u64))
            .collect();
        assert_eq!(
            bin_render(&SetExpr::finite(concat), 21, Some(3)).unwrap(),
            "000,001,010,011,100,101,110"
        );
        let t5 = SetExpr::tiling(3, 0, tiles[5].clone()).unwrap();
        assert_eq!(bin_render(&t5, 9, None).unwrap(), "101101101");
        assert!(bin_render(&t5, 0, None).is_err());
        assert!(bin_render(&t5, 3, Some(0)).is_err());
    }

    #[test]
    fn normalization_examples() {
        let two = [Progression::new(2, 1).unwrap(), Progression::new(3, 2).unwrap()];
        assert_eq!(normalize_ap_union(&two).unwrap(), Tiling::new(6, 2, vec![0, 1, 3, 5]).unwrap());
        assert_eq!(
            normalize_ap_union(&[Progression::new(1, 0).unwrap()]).unwrap(),
            Tiling::new(1, 0, vec![0]).unwrap()
        );
        assert_eq!(
            normalize_ap_union(&[Progression::new(4, 3).unwrap()]).unwrap(),
            Tiling::new(4, 3, vec![0]).unwrap()
        );
        assert!(normalize_ap_union(&[]).is_err());
    }

    #[test]
    fn anti_tile_extension() {
        let a = anti_tile(3, 3).unwrap();
        assert_eq!(
            tile_anti_tile_expr(&a, 1),
            SetExpr::tiling(21, 1, vec![0, 3, 6, 9, 13, 16, 20]).unwrap()
        );
        assert_eq!(
            tile_anti_tile_expr(&anti_tile(1, 1).unwrap(), 0),
            SetExpr::tiling(1, 0, vec![0]).unwrap()
        );
        assert_eq!(
            tile_anti_tile_expr(&anti_tile(2, 4).unwrap(), 5),
            SetExpr::tiling(12, 5, vec![0, 4, 9]).unwrap()
        );
    }

    #[test]
    fn escapes() {
        let a = SetExpr::finite(anti_tile(3, 3).unwrap().points);
        let full = Tiling::new(1, 0, vec![0]).unwrap();
        assert_eq!(escape_count(&a, &full, 100).unwrap(), 0);
        let evens = Tiling::new(2, 0, vec![0]).unwrap();
        assert_eq!(escape_count(&SetExpr::ap(4, 0).unwrap(), &evens, 1000).unwrap(), 0);
        // below the offset everything escapes
        let late = Tiling::new(1, 10, vec![0]).unwrap();
        assert_eq!(escape_count(&SetExpr::ap(1, 0).unwrap(), &late, 20).unwrap(), 10);
    }
}
