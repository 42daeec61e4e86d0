use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::setexpr::{FiniteSet, Tiling};
use crate::tiling::anti_tile;
use crate::verify::rational::{int, inverse_factorial, ratio, reportable, Exact, Rational, ReciprocalSum};

use super::{LemmaId, WitnessFamily};

/// Blocks are powers of two, so `2^J` must fit in `u64`.
pub const F_TR_MAX_DEPTH: usize = 63;
/// `2^J + J` must fit in `u64`.
pub const BR_R_MAX_DEPTH: usize = 62;
/// `B_4` would need on the order of 10^13 elements.
pub const BR_B_MAX_DEPTH: usize = 3;
/// `T_4` would need on the order of 10^10 elements.
pub const TR_T_MAX_DEPTH: usize = 3;
/// Block lengths `(2^j − 1)·j!` explode past this.
pub const TR_BR_MAX_DEPTH: usize = 8;

/// Largest block the recursive generators will build before giving up.
const MAX_BLOCK_ELEMENTS: usize = 10_000_000;

fn check_depth(lemma: LemmaId, generator: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested == 0 {
        return Err(Error::Precondition(format!("{lemma}: depth must be at least 1")));
    }
    if requested > cap {
        return Err(Error::DepthCap {
            generator,
            requested,
            cap,
        });
    }
    Ok(())
}

/// Per-lemma certificates attached to a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum WitnessMeta {
    FTr {
        covers: Vec<FTrCover>,
        reciprocal_sum: Exact,
    },
    BrR {
        reciprocal_majorant: Exact,
        majorant_limit: Exact,
        density_checkpoints: Vec<BrRCheckpoint>,
    },
    BrB {
        blocks: Vec<BrBBlockMeta>,
    },
    TrT {
        radii: Vec<u64>,
        tile_sizes: Vec<u64>,
        copies: Vec<u64>,
        conditions: Vec<ConditionCheck>,
        /// Condition (4) with the proof-line denominator `i·r_i`.
        condition4_proof_form: Vec<Exact>,
    },
    TrBr {
        blocks: Vec<TrBrBlockMeta>,
        banach_template: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FTrCover {
    pub n: u64,
    /// `TILING(2^n,1,{2^n−1})`, i.e. the positive multiples of `2^n`.
    pub tiling: String,
    pub density: Exact,
    /// Blocks `j < n` lie outside the cover.
    pub escaping_blocks: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrRCheckpoint {
    pub m: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub count: u64,
    pub density: Exact,
    pub bound: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrBBlockMeta {
    pub k: u64,
    pub step: u64,
    pub size: u64,
    pub first: u64,
    pub last: u64,
    /// `Σ_{m=2}^{k+1} 1/m`.
    pub threshold: Exact,
    /// Exact when small, otherwise a dyadic lower bound.
    pub reciprocal_lower: Exact,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub rounded: bool,
    /// `|B_1 ∪ … ∪ B_{k−1}|`.
    pub finite_part: u64,
    /// Window lengths `q ≥ p′(k)` have density below `1/k`.
    pub certificate_q: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrBrBlockMeta {
    pub j: u64,
    pub offset: u64,
    pub length: u64,
    pub size: u64,
    pub reciprocal: Exact,
    /// `2^j / j!`.
    pub majorant: Exact,
}

/// One exactly checked condition of the `t∩r ⋐ t` recursion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub index: u64,
    pub condition: &'static str,
    pub measured: Exact,
    pub threshold: Exact,
    pub cmp: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub rounded: bool,
}

impl ConditionCheck {
    fn new(index: usize, condition: &'static str, measured: Rational, threshold: Rational, cmp: &'static str) -> Self {
        let holds = match cmp {
            "<" => measured < threshold,
            "<=" => measured <= threshold,
            ">=" => measured >= threshold,
            "=" => measured == threshold,
            _ => unreachable!("unknown comparison {cmp}"),
        };
        Self {
            index: index as u64,
            condition,
            measured: Exact(measured),
            threshold: Exact(threshold),
            cmp,
            holds,
            rounded: false,
        }
    }
}

/// `D_j = {2^j}`.
pub fn witness_f_tr(depth: usize) -> Result<WitnessFamily> {
    check_depth(LemmaId::FTr, "witness_f_tr", depth, F_TR_MAX_DEPTH)?;
    let blocks = (1..=depth).map(|j| FiniteSet::from_unsorted(vec![1u64 << j])).collect();
    let covers = (1..=depth.min(32) as u64)
        .map(|n| {
            let p = 1u64 << n;
            let t = Tiling::new(p, 1, vec![p - 1]).expect("valid cover");
            FTrCover {
                n,
                tiling: crate::setexpr::SetExpr::Tiling(t).to_string(),
                density: Exact(ratio(1, p)),
                escaping_blocks: n - 1,
            }
        })
        .collect();
    // Σ_{j≤J} 2^{-j} = 1 − 2^{-J}, accumulated rather than taken from the closed form
    let elems: Vec<u64> = (1..=depth).map(|j| 1u64 << j).collect();
    let sum = ReciprocalSum::of(&elems)?.to_rational();
    let fam = WitnessFamily {
        lemma: LemmaId::FTr,
        blocks,
        meta: WitnessMeta::FTr {
            covers,
            reciprocal_sum: Exact(sum),
        },
    };
    fam.check_structure()?;
    Ok(fam)
}

/// `B_j = [2^j + 1, 2^j + j]`.
pub fn witness_br_r(depth: usize) -> Result<WitnessFamily> {
    check_depth(LemmaId::BrR, "witness_br_r", depth, BR_R_MAX_DEPTH)?;
    let blocks: Vec<FiniteSet> = (1..=depth as u64)
        .map(|j| FiniteSet::from_unsorted(((1u64 << j) + 1..=(1u64 << j) + j).collect()))
        .collect();
    let mut majorant = Rational::zero();
    for j in 1..=depth as u64 {
        majorant += ratio(j, 1u64 << j);
    }
    let density_checkpoints = (2..=depth.min(40) as u64)
        .map(|m| {
            let n = 1u64 << m;
            let count: u64 = blocks.iter().map(|b| b.range(1, n).len() as u64).sum();
            BrRCheckpoint {
                m,
                n,
                count,
                density: Exact(ratio(count, n)),
                bound: Exact(ratio(m * (m + 1), n)),
            }
        })
        .collect();
    let fam = WitnessFamily {
        lemma: LemmaId::BrR,
        blocks,
        meta: WitnessMeta::BrR {
            reciprocal_majorant: Exact(majorant),
            majorant_limit: Exact(int(2)),
            density_checkpoints,
        },
    };
    fam.check_structure()?;
    Ok(fam)
}

/// Least `q` with `(f + q/2^k + 1)/q < 1/k`, where `f` counts the elements
/// below the `k`-th block.
pub fn br_b_certificate(k: u32, finite_part: u64) -> u64 {
    let p = 1u128 << k;
    let num = k as u128 * (finite_part as u128 + 1) * p;
    let den = p - k as u128;
    (num / den + 1) as u64
}

/// Collects whole groups of terms until their reciprocal sum first reaches
/// `threshold`. A float pass finds the candidate; exact sums settle it.
fn minimal_groups_reaching(
    mut group: impl FnMut(usize) -> Result<Vec<u64>>,
    threshold: &Rational,
) -> Result<(Vec<Vec<u64>>, ReciprocalSum)> {
    let target = threshold.to_f64().unwrap_or(f64::INFINITY);
    let tol = 1e-9 * target.max(1.0);
    let mut groups: Vec<Vec<u64>> = Vec::new();
    let mut total = 0usize;
    let mut approx = 0f64;
    while approx < target - tol {
        let g = group(groups.len())?;
        approx += g.iter().map(|&x| 1.0 / x as f64).sum::<f64>();
        total += g.len();
        if total > MAX_BLOCK_ELEMENTS {
            return Err(Error::ResourceLimit {
                requested: total as u64,
                limit: MAX_BLOCK_ELEMENTS as u64,
            });
        }
        groups.push(g);
    }
    let flat = |gs: &[Vec<u64>]| gs.concat();
    let mut sum = ReciprocalSum::of(&flat(&groups))?;
    while !sum.ge(threshold) {
        let g = group(groups.len())?;
        for &x in &g {
            sum.add_term(x);
        }
        groups.push(g);
    }
    while groups.len() > 1 {
        let shorter = ReciprocalSum::of(&flat(&groups[..groups.len() - 1]))?;
        if !shorter.ge(threshold) {
            break;
        }
        groups.pop();
        sum = shorter;
    }
    Ok((groups, sum))
}

/// `B_1 = {2}`; `B_{k+1}` is the shortest run of multiples of `2^{k+1}` past
/// `max B_k` with reciprocal sum at least `Σ_{m=2}^{k+2} 1/m`.
pub fn witness_br_b(depth: usize) -> Result<WitnessFamily> {
    check_depth(LemmaId::BrB, "witness_br_b", depth, BR_B_MAX_DEPTH)?;
    let mut blocks = vec![FiniteSet::from_unsorted(vec![2])];
    let mut sums = vec![ReciprocalSum::of(&[2])?];
    let mut threshold = ratio(1, 2);
    let mut thresholds = vec![threshold.clone()];
    for k in 1..depth {
        threshold += ratio(1, k as u64 + 2);
        let step = 1u64 << (k + 1);
        let last = blocks[k - 1].max().expect("nonempty block");
        let first = (last / step + 1) * step;
        let (groups, sum) = minimal_groups_reaching(|i| Ok(vec![first + i as u64 * step]), &threshold)?;
        blocks.push(FiniteSet::from_unsorted(groups.concat()));
        sums.push(sum);
        thresholds.push(threshold.clone());
    }
    let mut finite_part = 0u64;
    let mut meta = Vec::with_capacity(depth);
    for (i, b) in blocks.iter().enumerate() {
        let k = i as u32 + 1;
        let (lower, rounded) = reportable(&sums[i], true);
        meta.push(BrBBlockMeta {
            k: k as u64,
            step: 1 << k,
            size: b.len() as u64,
            first: b.min().expect("nonempty"),
            last: b.max().expect("nonempty"),
            threshold: Exact(thresholds[i].clone()),
            reciprocal_lower: Exact(lower),
            rounded,
            finite_part,
            certificate_q: br_b_certificate(k, finite_part),
        });
        if !sums[i].ge(&thresholds[i]) {
            return Err(Error::Invariant(format!("BR_B: block {k} misses its threshold")));
        }
        finite_part += b.len() as u64;
    }
    let fam = WitnessFamily {
        lemma: LemmaId::BrB,
        blocks,
        meta: WitnessMeta::BrB { blocks: meta },
    };
    fam.check_structure()?;
    Ok(fam)
}

/// State of the `t∩r ⋐ t` recursion: tiles `T_1 … T_d`, radii `r_0 … r_d`
/// and the number of extra copies `s_k` taken at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma54State {
    pub tiles: Vec<Vec<u64>>,
    pub radii: Vec<u64>,
    pub copies: Vec<u64>,
}

impl Lemma54State {
    pub fn depth(&self) -> usize {
        self.tiles.len()
    }

    /// `T_i`, 1-based.
    pub fn tile(&self, i: usize) -> &[u64] {
        &self.tiles[i - 1]
    }

    /// `r_i`, with `r_0 = 0`.
    pub fn radius(&self, i: usize) -> u64 {
        self.radii[i]
    }

    /// `B_i = T_i + r_{i−1} + 1`.
    pub fn block(&self, i: usize) -> Vec<u64> {
        let shift = self.radius(i - 1) + 1;
        self.tile(i).iter().map(|&t| t + shift).collect()
    }

    /// Is `x ∈ ⋃_{j≥0} (T_i + j·r_i + 1)`?
    pub fn cover_contains(&self, i: usize, x: u64) -> bool {
        x >= 1 && self.tile(i).binary_search(&((x - 1) % self.radius(i))).is_ok()
    }

    /// The cover of stage `i` as a tiling expression.
    pub fn cover(&self, i: usize) -> Tiling {
        Tiling::new(self.radius(i), 1, self.tile(i).to_vec()).expect("tile lies below its radius")
    }
}

/// Runs the recursion `T_{k+1} = ⋃_{j=0}^{s} (T_k + j·r_k)` to `depth` stages
/// and checks every condition exactly before returning.
pub fn witness_tr_t(depth: usize) -> Result<(Lemma54State, WitnessFamily)> {
    check_depth(LemmaId::TrT, "witness_tr_t", depth, TR_T_MAX_DEPTH)?;
    let mut state = Lemma54State {
        tiles: vec![vec![0]],
        radii: vec![0, 2],
        copies: Vec::new(),
    };
    let mut block_total = 1u64;
    for k in 1..depth {
        let tk = state.tiles[k - 1].clone();
        let rk = state.radii[k];
        let threshold = int(k as u64 + 1);
        let (groups, _) = minimal_groups_reaching(
            |j| {
                let base = (j as u64 + 1)
                    .checked_mul(rk)
                    .and_then(|v| v.checked_add(1))
                    .ok_or_else(|| Error::Overflow("tile copy offset".into()))?;
                Ok(tk.iter().map(|&t| t + base).collect())
            },
            &threshold,
        )?;
        let s = groups.len() as u64 - 1;
        let next: Vec<u64> = (0..=s).flat_map(|j| tk.iter().map(move |&t| t + j * rk)).collect();
        let size = next.len() as u64;
        let top = *next.last().expect("nonempty tile");
        block_total += size;
        let radius_sum: u64 = state.radii[1..=k].iter().sum();
        let stage = k as u64 + 1;
        // strict lower bounds on r_{k+1}
        let lower = [
            top,
            stage * size,
            (stage * block_total).saturating_sub(radius_sum),
            top + rk,
            rk,
        ]
        .into_iter()
        .max()
        .expect("nonempty");
        let r_next = (lower / rk + 1)
            .checked_mul(rk)
            .ok_or_else(|| Error::Overflow("radius".into()))?;
        state.tiles.push(next);
        state.radii.push(r_next);
        state.copies.push(s);
    }
    let (conditions, proof_form) = verify_lemma54(&state)?;
    if let Some(bad) = conditions.iter().find(|c| !c.holds) {
        return Err(Error::Invariant(format!(
            "TR_T: condition {} fails at index {}",
            bad.condition, bad.index
        )));
    }
    let blocks = (1..=depth).map(|i| FiniteSet::from_unsorted(state.block(i))).collect();
    let fam = WitnessFamily {
        lemma: LemmaId::TrT,
        blocks,
        meta: WitnessMeta::TrT {
            radii: state.radii.clone(),
            tile_sizes: state.tiles.iter().map(|t| t.len() as u64).collect(),
            copies: state.copies.clone(),
            conditions,
            condition4_proof_form: proof_form.into_iter().map(Exact).collect(),
        },
    };
    fam.check_structure()?;
    Ok((state, fam))
}

/// Conditions (1)–(5) plus block disjointness at every index, and the
/// proof-line variant of condition (4) for the record.
pub fn verify_lemma54(state: &Lemma54State) -> Result<(Vec<ConditionCheck>, Vec<Rational>)> {
    let mut rows = Vec::new();
    let mut proof_form = Vec::new();
    let mut union_size = 0u64;
    let mut radius_sum = 0u64;
    let depth = state.depth();
    for i in 1..=depth {
        let ti = state.tile(i);
        let ri = state.radius(i);
        let inv_i = ratio(1, i as u64);
        if ti.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invariant(format!("TR_T: T_{i} is not strictly increasing")));
        }
        // (1) a proper tile of length r_i
        let top = ti.last().copied().unwrap_or(0);
        rows.push(ConditionCheck::new(i, "1", int(top), int(ri), "<"));
        rows.push(ConditionCheck::new(i, "1-proper", int(ti.len() as u64), int(ri), "<"));
        // (2) T_{i+1} is made of translates of T_i by multiples of r_i
        if i < depth {
            let outside = state
                .tile(i + 1)
                .iter()
                .filter(|&&t| ti.binary_search(&(t % ri)).is_err())
                .count() as u64;
            rows.push(ConditionCheck::new(i, "2", int(outside), Rational::zero(), "="));
        }
        // (3) reciprocal sum of B_i reaches i
        let block = state.block(i);
        let sum = ReciprocalSum::of(&block)?;
        let holds = sum.ge(&int(i as u64));
        let (measured, rounded) = reportable(&sum, true);
        rows.push(ConditionCheck {
            holds,
            rounded,
            ..ConditionCheck::new(i, "3", measured, int(i as u64), ">=")
        });
        // (4) |B_1 ∪ … ∪ B_i| / Σ r_j < 1/i
        union_size += block.len() as u64;
        radius_sum += ri;
        rows.push(ConditionCheck::new(i, "4", ratio(union_size, radius_sum), inv_i.clone(), "<"));
        proof_form.push(ratio(union_size, i as u64 * ri));
        // (5) |T_i| / r_i < 1/i
        rows.push(ConditionCheck::new(i, "5", ratio(ti.len() as u64, ri), inv_i, "<"));
        if i < depth {
            let gap_ok = block.last().copied().unwrap_or(0);
            let next_min = state.radius(i) + 1 + state.tile(i + 1)[0];
            rows.push(ConditionCheck::new(i, "disjoint", int(gap_ok), int(next_min), "<"));
        }
    }
    Ok((rows, proof_form))
}

/// `off_j = 1 + Σ_{i=0}^{j−1} (2^i − 1)·i!` for `j = 1 … depth`.
pub fn block_offsets_tr_br(depth: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(depth);
    let mut acc = 1u64;
    let mut fact = 1u64;
    for i in 0..depth as u64 {
        if i > 0 {
            fact *= i;
        }
        acc += ((1u64 << i) - 1) * fact;
        out.push(acc);
    }
    out
}

/// `B_j = A(j, j!) + off_j`.
pub fn witness_tr_br(depth: usize) -> Result<WitnessFamily> {
    check_depth(LemmaId::TrBr, "witness_tr_br", depth, TR_BR_MAX_DEPTH)?;
    let offsets = block_offsets_tr_br(depth);
    let mut blocks = Vec::with_capacity(depth);
    let mut meta = Vec::with_capacity(depth);
    let mut fact = 1u64;
    for j in 1..=depth as u64 {
        fact *= j;
        let off = offsets[j as usize - 1];
        let a = anti_tile(j as u32, fact)?;
        let elems: Vec<u64> = a.points.iter().map(|&p| p + off).collect();
        let sum = ReciprocalSum::of(&elems)?.to_rational();
        let majorant = int(1u64 << j) * inverse_factorial(j);
        if sum > majorant {
            return Err(Error::Invariant(format!("TR_BR: block {j} exceeds 2^j/j!")));
        }
        meta.push(TrBrBlockMeta {
            j,
            offset: off,
            length: a.length,
            size: elems.len() as u64,
            reciprocal: Exact(sum),
            majorant: Exact(majorant),
        });
        blocks.push(FiniteSet::from_unsorted(elems));
    }
    let fam = WitnessFamily {
        lemma: LemmaId::TrBr,
        blocks,
        meta: WitnessMeta::TrBr {
            blocks: meta,
            banach_template: "1/(k0-1)!",
        },
    };
    fam.check_structure()?;
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::rational::harmonic_range;

    #[test]
    fn f_tr_blocks() {
        let f = witness_f_tr(5).unwrap();
        let b: Vec<Vec<u64>> = f.blocks.iter().map(|b| b.as_slice().to_vec()).collect();
        assert_eq!(b, vec![vec![2], vec![4], vec![8], vec![16], vec![32]]);
        assert_eq!(witness_f_tr(1).unwrap().blocks.len(), 1);
        let WitnessMeta::FTr { reciprocal_sum, .. } = witness_f_tr(20).unwrap().meta else {
            panic!()
        };
        assert_eq!(reciprocal_sum.0, ratio((1 << 20) - 1, 1 << 20));
        assert!(matches!(witness_f_tr(64), Err(Error::DepthCap { .. })));
        assert!(witness_f_tr(0).is_err());
    }

    #[test]
    fn br_r_blocks() {
        let f = witness_br_r(3).unwrap();
        let b: Vec<Vec<u64>> = f.blocks.iter().map(|b| b.as_slice().to_vec()).collect();
        assert_eq!(b, vec![vec![3], vec![5, 6], vec![9, 10, 11]]);
        let f = witness_br_r(30).unwrap();
        assert_eq!(f.overlap_count(), 0);
        for (j, b) in f.blocks.iter().enumerate() {
            assert_eq!(b.len(), j + 1);
        }
    }

    #[test]
    fn br_b_blocks() {
        let f = witness_br_b(3).unwrap();
        assert_eq!(f.blocks[0].as_slice(), &[2]);
        let b2: Vec<u64> = (1..=16).map(|i| 4 * i).collect();
        assert_eq!(f.blocks[1].as_slice(), b2.as_slice());
        assert_eq!(f.blocks[2].min(), Some(72));
        assert_eq!(f.blocks[2].max(), Some(395_040));
        assert_eq!(f.blocks[2].len(), 49_372);
        for (i, b) in f.blocks.iter().enumerate() {
            assert!(b.iter().all(|x| x % (1 << (i + 1)) == 0));
        }
        // minimality of B_2: one element fewer misses 5/6
        let short = ReciprocalSum::of(&b2[..15]).unwrap();
        assert!(short.lt(&harmonic_range(2, 3)));
        assert!(matches!(witness_br_b(4), Err(Error::DepthCap { .. })));
    }

    #[test]
    fn br_b_certificates() {
        assert_eq!(br_b_certificate(1, 0), 3);
        assert_eq!(br_b_certificate(2, 1), 9);
        assert_eq!(br_b_certificate(3, 17), 87);
        for (k, f) in [(1u32, 0u64), (2, 1), (3, 17)] {
            let q = br_b_certificate(k, f);
            // (f + q/2^k + 1)/q
            let p = 1u64 << k;
            let bound = |q: u64| ratio(f * p + q + p, p * q);
            assert!(bound(q) < ratio(1, k as u64));
            assert!(bound(q - 1) >= ratio(1, k as u64));
        }
    }

    #[test]
    fn tr_t_recursion() {
        let (st, fam) = witness_tr_t(3).unwrap();
        assert_eq!(st.radii, vec![0, 2, 114, 74_898]);
        assert_eq!(st.copies, vec![55, 444]);
        assert_eq!(st.tile(1), &[0]);
        assert_eq!(fam.blocks[0].as_slice(), &[1]);
        assert_eq!(st.tile(2).len(), 56);
        assert_eq!(st.tile(3).len(), 24_920);
        assert_eq!(*st.tile(3).last().unwrap(), 50_726);
        let (two, _) = witness_tr_t(2).unwrap();
        assert!(ratio(two.tile(2).len() as u64, two.radius(2)) < ratio(1, 2));
        assert!(matches!(witness_tr_t(4), Err(Error::DepthCap { .. })));
    }

    #[test]
    fn tr_t_cover_holds_for_later_blocks() {
        let (st, fam) = witness_tr_t(3).unwrap();
        for i in 1..=3 {
            for k in i + 1..=3 {
                assert!(fam.blocks[k - 1].iter().all(|x| st.cover_contains(i, x)), "i={i} k={k}");
            }
        }
        // the block of the same stage is only covered up to a finite part
        assert!(!fam.blocks[1].iter().all(|x| st.cover_contains(2, x)));
    }

    #[test]
    fn tr_br_blocks() {
        assert_eq!(block_offsets_tr_br(9), vec![1, 2, 8, 50, 410, 4130, 49_490, 689_570, 10_971_170]);
        let f = witness_tr_br(8).unwrap();
        assert_eq!(f.blocks[0].as_slice(), &[1]);
        let a36: Vec<u64> = anti_tile(3, 6).unwrap().points.iter().map(|p| p + 8).collect();
        assert_eq!(f.blocks[2].as_slice(), a36.as_slice());
        assert_eq!(f.overlap_count(), 0);
        assert!(matches!(witness_tr_br(9), Err(Error::DepthCap { .. })));
    }
}
