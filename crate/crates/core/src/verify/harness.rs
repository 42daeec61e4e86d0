use num_traits::Zero;

use crate::density::{exact_density_structured, max_window_count, tile_density_upper_bound};
use crate::error::{Error, Result};
use crate::setexpr::{materialize_prefix, FiniteSet, SetExpr, Tiling};
use crate::tiling::escape_count;
use crate::witness::{
    block_offsets_tr_br, br_b_certificate, witness_br_r, witness_f_tr, witness_tr_br, LemmaId,
    Selector, WitnessFamily, WitnessMeta,
};

use super::rational::{harmonic_range, int, inverse_factorial, ratio, Rational, ReciprocalSum};
use super::{CheckpointRow, Cmp, EvidenceParams, EvidenceReport, Ideal};

/// Largest period searched by the tile rows of the anti-tile family.
const TR_BR_TILE_R_MAX: u64 = 4;

/// Checkpoints `N/64, N/16, N/4, N`, dropping tiny ones.
fn checkpoints(n: u64) -> Vec<u64> {
    let mut cps: Vec<u64> = [n / 64, n / 16, n / 4, n].into_iter().filter(|&c| c >= 16).collect();
    cps.dedup();
    if cps.is_empty() {
        cps.push(n);
    }
    cps
}

/// What the harness knows about one selector's union.
struct Sample<'a> {
    family: &'a WitnessFamily,
    indices: Vec<usize>,
    union: FiniteSet,
    n: u64,
    cps: Vec<u64>,
}

impl Sample<'_> {
    fn expr(&self) -> SetExpr {
        SetExpr::Finite(self.union.clone())
    }

    fn prefix(&self, n: u64) -> &[u64] {
        self.union.range(1, n)
    }

    fn count(&self, n: u64) -> u64 {
        self.prefix(n).len() as u64
    }

    fn sum(&self, n: u64) -> Result<ReciprocalSum> {
        ReciprocalSum::of(self.prefix(n))
    }

    /// Selected indices whose block lies inside `[1, n]`.
    fn complete(&self, n: u64) -> Vec<usize> {
        self.indices
            .iter()
            .copied()
            .filter(|&j| self.family.block(j).is_some_and(|b| b.max().is_some_and(|m| m <= n)))
            .collect()
    }

    fn block(&self, j: usize) -> &FiniteSet {
        self.family.block(j).expect("selected index within depth")
    }
}

fn family_rows(s: &Sample) -> Vec<CheckpointRow> {
    let meeting = s
        .indices
        .iter()
        .filter(|&&j| s.block(j).min().is_some_and(|m| m <= s.n))
        .count() as u64;
    let nonempty = s
        .indices
        .iter()
        .filter(|&&j| !s.block(j).is_empty() && s.block(j).min().is_some_and(|m| m <= s.n))
        .count() as u64;
    let selected: Vec<&FiniteSet> = s.indices.iter().map(|&j| s.block(j)).collect();
    let mut all: Vec<u64> = selected.iter().flat_map(|b| b.iter()).collect();
    all.sort_unstable();
    let shared = all.windows(2).filter(|w| w[0] == w[1]).count() as u64;
    vec![
        CheckpointRow::new("blocks-finite-nonempty", s.n, int(nonempty), int(meeting), Cmp::Eq),
        CheckpointRow::new("pairwise-disjoint", s.n, int(shared), Rational::zero(), Cmp::Eq),
    ]
}

fn reciprocal_bound_rows(s: &Sample, bound: &Rational, cmp: Cmp) -> Result<Vec<CheckpointRow>> {
    s.cps
        .iter()
        .map(|&n| Ok(CheckpointRow::from_sum("reciprocal-partial", n, &s.sum(n)?, bound.clone(), cmp)))
        .collect()
}

fn count_growth_row(s: &Sample) -> CheckpointRow {
    let first = s.count(s.cps[0]);
    let last = s.count(s.n);
    CheckpointRow::new("count-grows", s.n, int(last), int(first + 1), Cmp::Ge)
}

/// `f ⋐ t∩r` for `D_j = {2^j}`.
fn f_tr_rows(s: &Sample) -> Result<Vec<CheckpointRow>> {
    let mut rows = reciprocal_bound_rows(s, &int(1), Cmp::Lt)?;
    let expr = s.expr();
    let top = (63 - s.n.leading_zeros() as usize).min(s.family.depth()).min(20);
    for n in 1..=top {
        let p = 1u64 << n;
        let cover = Tiling::new(p, 1, vec![p - 1])?;
        let allowed = s.indices.iter().filter(|&&j| j < n).count() as u64;
        let escapes = escape_count(&expr, &cover, s.n)?;
        rows.push(CheckpointRow::new(format!("cover-escapes n={n}"), s.n, int(escapes), int(allowed), Cmp::Le));
        let d = exact_density_structured(&SetExpr::Tiling(cover)).expect("tiling leaf");
        rows.push(CheckpointRow::new(format!("cover-density n={n}"), s.n, d, ratio(1, p), Cmp::Eq));
    }
    rows.push(count_growth_row(s));
    Ok(rows)
}

/// Full windows inside the largest few complete blocks `[2^j+1, 2^j+j]`.
fn br_r_window_rows(s: &Sample) -> Result<Vec<CheckpointRow>> {
    let complete = s.complete(s.n);
    let bm = materialize_prefix(&s.expr(), 1, s.n)?;
    Ok(complete
        .iter()
        .rev()
        .take(3)
        .rev()
        .map(|&j| {
            let w = j as u64;
            CheckpointRow::new(format!("banach-full-window j={j}"), s.n, ratio(max_window_count(&bm, w, s.n), w), int(1), Cmp::Eq)
                .with_window(w)
        })
        .collect())
}

fn br_r_density_rows(s: &Sample) -> Vec<CheckpointRow> {
    s.cps
        .iter()
        .map(|&n| {
            // m = least exponent with n ≤ 2^m
            let m = 64 - (n - 1).leading_zeros() as u64;
            CheckpointRow::new("density-rate", n, ratio(s.count(n), n), ratio(m * (m + 1), 1u64 << m), Cmp::Le)
        })
        .collect()
}

fn block_reciprocal_rows(s: &Sample, threshold: impl Fn(usize) -> Rational) -> Result<Vec<CheckpointRow>> {
    let complete = s.complete(s.n);
    let mut rows = Vec::new();
    let mut total_threshold = Rational::zero();
    for &j in &complete {
        let t = threshold(j);
        total_threshold += &t;
        let sum = ReciprocalSum::of(s.block(j).as_slice())?;
        rows.push(CheckpointRow::from_sum(format!("block-reciprocal k={j}"), s.n, &sum, t, Cmp::Ge));
    }
    rows.push(CheckpointRow::from_sum("reciprocal-total", s.n, &s.sum(s.n)?, total_threshold, Cmp::Ge));
    Ok(rows)
}

fn br_b_meta(family: &WitnessFamily) -> Result<&[crate::witness::BrBBlockMeta]> {
    match &family.meta {
        WitnessMeta::BrB { blocks } => Ok(blocks),
        _ => Err(Error::Precondition("BR_B metadata missing".into())),
    }
}

/// Window scans at `p′(k)` and `2p′(k)`.
fn br_b_certificate_rows(s: &Sample) -> Result<Vec<CheckpointRow>> {
    let bm = materialize_prefix(&s.expr(), 1, s.n)?;
    let mut rows = Vec::new();
    for meta in br_b_meta(s.family)? {
        let p = br_b_certificate(meta.k as u32, meta.finite_part);
        for q in [p, 2 * p].into_iter().filter(|&q| q <= s.n) {
            rows.push(
                CheckpointRow::new(
                    format!("banach-certificate k={}", meta.k),
                    s.n,
                    ratio(max_window_count(&bm, q, s.n), q),
                    ratio(1, meta.k),
                    Cmp::Lt,
                )
                .with_window(q),
            );
        }
    }
    Ok(rows)
}

fn br_b_density_rows(s: &Sample) -> Result<Vec<CheckpointRow>> {
    let metas = br_b_meta(s.family)?;
    Ok(s.cps
        .iter()
        .filter_map(|&n| {
            let k = metas
                .iter()
                .filter(|m| br_b_certificate(m.k as u32, m.finite_part) <= n)
                .map(|m| m.k)
                .max()?;
            Some(CheckpointRow::new("density-certificate", n, ratio(s.count(n), n), ratio(1, k), Cmp::Lt))
        })
        .collect())
}

/// Covers `⋃_j (T_i + j·r_i + 1)` of density `|T_i|/r_i < 1/i`; only the blocks
/// up to stage `i` may escape.
fn tr_t_cover_rows(s: &Sample) -> Result<Vec<CheckpointRow>> {
    let WitnessMeta::TrT { radii, .. } = &s.family.meta else {
        return Err(Error::Precondition("TR_T metadata missing".into()));
    };
    let expr = s.expr();
    let mut rows = Vec::new();
    for i in 1..=s.family.depth() {
        let shift = radii[i - 1] + 1;
        let tile: Vec<u64> = s.family.blocks[i - 1].iter().map(|x| x - shift).collect();
        let cover = Tiling::new(radii[i], 1, tile)?;
        let d = exact_density_structured(&SetExpr::Tiling(cover.clone())).expect("tiling leaf");
        rows.push(CheckpointRow::new(format!("cover-density i={i}"), s.n, d, ratio(1, i as u64), Cmp::Lt));
        let allowed: u64 = s
            .indices
            .iter()
            .filter(|&&k| k <= i)
            .map(|&k| s.block(k).range(1, s.n).len() as u64)
            .sum();
        let escapes = escape_count(&expr, &cover, s.n)?;
        rows.push(CheckpointRow::new(format!("cover-escapes i={i}"), s.n, int(escapes), int(allowed), Cmp::Le));
    }
    Ok(rows)
}

fn tr_br_reciprocal_rows(s: &Sample) -> Result<Vec<CheckpointRow>> {
    let mut rows = Vec::new();
    let mut total = Rational::zero();
    for &j in &s.indices {
        let majorant = int(1u64 << j) * inverse_factorial(j as u64);
        total += &majorant;
        if s.block(j).min().is_some_and(|m| m <= s.n) {
            let sum = ReciprocalSum::of(s.block(j).as_slice())?;
            rows.push(CheckpointRow::from_sum(format!("block-reciprocal j={j}"), s.n, &sum, majorant, Cmp::Le));
        }
    }
    rows.extend(reciprocal_bound_rows(s, &total, Cmp::Le)?);
    Ok(rows)
}

/// `max_v |U ∩ [v+1, v+q]| / q ≤ 1/(k₀−1)!` with `k₀` the largest `k` whose
/// offset `off_{k+2}` lies below `q`.
fn tr_br_banach_rows(s: &Sample) -> Result<Vec<CheckpointRow>> {
    let offsets = block_offsets_tr_br(s.family.depth() + 2);
    let bm = materialize_prefix(&s.expr(), 1, s.n)?;
    let mut rows = Vec::new();
    for &n in &s.cps {
        let mut windows = vec![n.isqrt(), n / 10];
        windows.dedup();
        for q in windows.into_iter().filter(|&q| q >= 1) {
            let Some(k0) = (1..=s.family.depth()).filter(|&k| offsets[k + 1] < q).max() else {
                continue;
            };
            rows.push(
                CheckpointRow::new(
                    format!("banach-template k0={k0}"),
                    n,
                    ratio(max_window_count(&bm, q, n), q),
                    inverse_factorial(k0 as u64 - 1),
                    Cmp::Le,
                )
                .with_window(q),
            );
        }
    }
    Ok(rows)
}

/// Tile bound stays 1 once a whole block of order at least `r_max` survives
/// the dropped prefix: its anti-tile escapes every proper tiling of period
/// `≤ r_max`.
fn tr_br_tile_rows(s: &Sample, params: &EvidenceParams) -> Result<Vec<CheckpointRow>> {
    let expr = s.expr();
    let mut rows = Vec::new();
    for &n in &s.cps {
        let drop = params.drop_max.min(n - 1);
        let shielded = s.complete(n).into_iter().any(|j| {
            j as u64 >= TR_BR_TILE_R_MAX && s.count(s.block(j).min().expect("nonempty") - 1) >= drop
        });
        if shielded {
            let m = tile_density_upper_bound(&expr, n, TR_BR_TILE_R_MAX, drop)?;
            rows.push(CheckpointRow::new(format!("tile-bound r_max={TR_BR_TILE_R_MAX}"), n, m, int(1), Cmp::Eq));
        }
    }
    if rows.is_empty() {
        return Err(Error::InsufficientDepth(
            "no complete anti-tile block of order 4 or more inside [1, N]".into(),
        ));
    }
    Ok(rows)
}

fn claim_rows(s: &Sample, small: Ideal, large: Ideal, params: &EvidenceParams) -> Result<Vec<CheckpointRow>> {
    use Ideal::*;
    let mut rows = family_rows(s);
    let more = match (s.family.lemma, small, large) {
        (LemmaId::FTr, Finite, TileReciprocal) => f_tr_rows(s)?,
        (LemmaId::BrR, BanachReciprocal, Reciprocal) => {
            let mut r = reciprocal_bound_rows(s, &int(2), Cmp::Lt)?;
            r.extend(br_r_window_rows(s)?);
            r
        }
        (LemmaId::BrR, Banach, Density) => {
            let mut r = br_r_density_rows(s);
            r.extend(br_r_window_rows(s)?);
            r
        }
        (LemmaId::BrB, BanachReciprocal, Banach) => {
            let mut r = br_b_certificate_rows(s)?;
            r.extend(block_reciprocal_rows(s, |k| harmonic_range(2, k as u64 + 1))?);
            r
        }
        (LemmaId::BrB, Reciprocal, Density) => {
            let mut r = br_b_density_rows(s)?;
            r.extend(block_reciprocal_rows(s, |k| harmonic_range(2, k as u64 + 1))?);
            r
        }
        (LemmaId::TrT, TileReciprocal, Tile) => {
            let mut r = tr_t_cover_rows(s)?;
            r.extend(block_reciprocal_rows(s, |i| int(i as u64))?);
            r
        }
        (LemmaId::TrBr, TileReciprocal, BanachReciprocal) => {
            let mut r = tr_br_reciprocal_rows(s)?;
            r.extend(tr_br_banach_rows(s)?);
            r.extend(tr_br_tile_rows(s, params)?);
            r
        }
        (LemmaId::TrBr, Tile, Banach) => {
            let mut r = tr_br_banach_rows(s)?;
            r.extend(tr_br_tile_rows(s, params)?);
            r
        }
        (lemma, small, large) => {
            return Err(Error::Precondition(format!(
                "{lemma} carries no certificate for {small} ⋐ {large}"
            )))
        }
    };
    rows.extend(more);
    Ok(rows)
}

/// One report per selector: the blocks are finite and disjoint, the union
/// shows membership evidence for `large` and non-membership evidence for
/// `small`. Every row is an exact comparison, so the verdict is pass or fail.
pub fn check_much_larger(
    family: &WitnessFamily,
    small: Ideal,
    large: Ideal,
    selectors: &[Selector],
    n: u64,
    params: &EvidenceParams,
) -> Result<Vec<EvidenceReport>> {
    if n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    selectors
        .iter()
        .map(|sel| {
            let indices = sel.indices(family.depth());
            let meeting = indices
                .iter()
                .filter(|&&j| family.block(j).and_then(FiniteSet::min).is_some_and(|m| m <= n))
                .count();
            if meeting < 3 {
                return Err(Error::InsufficientDepth(format!(
                    "{}: selector {sel} meets [1, {n}] in {meeting} blocks, need 3",
                    family.lemma
                )));
            }
            let sample = Sample {
                family,
                union: family.union_of(&indices),
                indices,
                n,
                cps: checkpoints(n),
            };
            let rows = claim_rows(&sample, small, large, params)?;
            Ok(EvidenceReport::strict(format!("{small} ⋐ {large}"), sel.to_string(), rows))
        })
        .collect()
}

/// The sub-ideal of finite sets avoiding `a` sits strictly inside `f`, yet no
/// family drawn from it witnesses a much-larger inclusion: every union of its
/// members still avoids `a`, so it never reaches `f` minus the sub-ideal.
pub fn strict_without_much_larger_demo(a: u64, seed: u64) -> Result<EvidenceReport> {
    if a == 0 {
        return Err(Error::Precondition("a must be at least 1".into()));
    }
    let singleton_in_sub = 0u64; // {a} contains a, so it is not in the sub-ideal
    let mut rows = vec![CheckpointRow::new(
        format!("singleton-in-subideal a={a}"),
        a,
        int(singleton_in_sub),
        Rational::zero(),
        Cmp::Eq,
    )];
    let families = [witness_f_tr(20)?, witness_br_r(20)?, witness_tr_br(6)?];
    for fam in &families {
        // the family with `a` removed from every block, empty blocks discarded
        let blocks: Vec<FiniteSet> = fam
            .blocks
            .iter()
            .map(|b| FiniteSet::from_unsorted(b.iter().filter(|&x| x != a).collect()))
            .filter(|b| !b.is_empty())
            .collect();
        for sel in Selector::catalog(seed) {
            let idx = sel.indices(blocks.len());
            let union = FiniteSet::union_all(idx.iter().map(|&j| &blocks[j - 1]));
            let hits = union.contains(a) as u64;
            let n = union.max().unwrap_or(a).max(a);
            rows.push(CheckpointRow::new(
                format!("{} {sel}: union contains a", fam.lemma),
                n,
                int(hits),
                Rational::zero(),
                Cmp::Eq,
            ));
        }
    }
    Ok(EvidenceReport::strict(format!("remark: f∖{{{a}}}-avoiding ⊊ f, not ⋐"), format!("catalog:{seed}"), rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::witness_br_b;

    #[test]
    fn checkpoint_schedule() {
        assert_eq!(checkpoints(1 << 20), vec![1 << 14, 1 << 16, 1 << 18, 1 << 20]);
        assert_eq!(checkpoints(100), vec![25, 100]);
        assert_eq!(checkpoints(5), vec![5]);
    }

    #[test]
    fn f_tr_evens() {
        let fam = witness_f_tr(40).unwrap();
        let p = EvidenceParams::default();
        let r = check_much_larger(&fam, Ideal::Finite, Ideal::TileReciprocal, &[Selector::Evens], 1_000_000, &p).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].passed(), "{:#?}", r[0]);
        assert!(r[0].checkpoints.iter().any(|c| c.check == "cover-density n=3" && c.measured == ratio(1, 8)));
    }

    #[test]
    fn br_r_all() {
        let fam = witness_br_r(40).unwrap();
        let p = EvidenceParams::default();
        let r = check_much_larger(&fam, Ideal::BanachReciprocal, Ideal::Reciprocal, &[Selector::All], 1 << 20, &p).unwrap();
        assert!(r[0].passed(), "{:#?}", r[0]);
        let r = check_much_larger(&fam, Ideal::Banach, Ideal::Density, &[Selector::All], 1 << 20, &p).unwrap();
        assert!(r[0].passed(), "{:#?}", r[0]);
    }

    #[test]
    fn unsupported_pair_and_shallow_selection() {
        let fam = witness_br_r(10).unwrap();
        let p = EvidenceParams::default();
        assert!(matches!(
            check_much_larger(&fam, Ideal::Finite, Ideal::Tile, &[Selector::All], 1 << 12, &p),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            check_much_larger(&fam, Ideal::Banach, Ideal::Density, &[Selector::All], 8, &p),
            Err(Error::InsufficientDepth(_))
        ));
        let fam = witness_br_b(3).unwrap();
        assert!(matches!(
            check_much_larger(&fam, Ideal::Reciprocal, Ideal::Density, &[Selector::Evens], 1 << 19, &p),
            Err(Error::InsufficientDepth(_))
        ));
    }

    #[test]
    fn tr_br_odds() {
        let fam = witness_tr_br(8).unwrap();
        let p = EvidenceParams::default();
        let r = check_much_larger(&fam, Ideal::TileReciprocal, Ideal::BanachReciprocal, &[Selector::Odds], 100_000, &p).unwrap();
        assert!(r[0].passed(), "{:#?}", r[0]);
    }

    #[test]
    fn remark_demo() {
        for a in [1, 7, 64] {
            let r = strict_without_much_larger_demo(a, 0).unwrap();
            assert!(r.passed(), "{r:#?}");
        }
        assert!(strict_without_much_larger_demo(0, 0).is_err());
    }
}
