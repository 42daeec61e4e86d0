//! Finite-scale evidence for ideal membership and much-larger inclusions.
//!
//! Nothing here decides membership: each report lists exact measurements at a
//! few checkpoints against thresholds, and the verdict summarizes them.

mod claims;
mod harness;
pub mod rational;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::density::{max_window_count, tile_density_upper_bound};
use crate::error::{Error, Result};
use crate::setexpr::{materialize_prefix, PrefixBitmap, SetExpr};

pub use claims::{run_all, run_claim, Claim, RunConfig, Summary};
pub use harness::{check_much_larger, strict_without_much_larger_demo};
pub use rational::{ratio, Exact, Rational, ReciprocalSum};

/// Windows holding more elements than this get a count-based bound in
/// reciprocal-tail rows instead of an exact sum, unless the bound is
/// inconclusive.
const EXACT_TAIL_ELEMENTS: u64 = 20_000;

/// The ideals of the inclusion diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ideal {
    /// Finite sets.
    Finite,
    /// Convergent reciprocal series.
    Reciprocal,
    /// Natural density zero.
    Density,
    /// Banach density zero.
    Banach,
    /// Tile (Buck) density zero.
    Tile,
    BanachReciprocal,
    TileReciprocal,
    /// Every subset of ℕ.
    All,
}

impl Ideal {
    pub const ALL: [Ideal; 8] = [
        Ideal::Finite,
        Ideal::Reciprocal,
        Ideal::Density,
        Ideal::Banach,
        Ideal::Tile,
        Ideal::BanachReciprocal,
        Ideal::TileReciprocal,
        Ideal::All,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Ideal::Finite => "f",
            Ideal::Reciprocal => "r",
            Ideal::Density => "d",
            Ideal::Banach => "b",
            Ideal::Tile => "t",
            Ideal::BanachReciprocal => "b∩r",
            Ideal::TileReciprocal => "t∩r",
            Ideal::All => "2^N",
        }
    }

    /// The single-predicate ideals this one intersects.
    pub fn components(&self) -> Vec<Ideal> {
        match self {
            Ideal::BanachReciprocal => vec![Ideal::Banach, Ideal::Reciprocal],
            Ideal::TileReciprocal => vec![Ideal::Tile, Ideal::Reciprocal],
            other => vec![*other],
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Ideal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        Ok(match key.as_str() {
            "f" => Ideal::Finite,
            "r" => Ideal::Reciprocal,
            "d" => Ideal::Density,
            "b" => Ideal::Banach,
            "t" => Ideal::Tile,
            "b∩r" | "b&r" | "br" => Ideal::BanachReciprocal,
            "t∩r" | "t&r" | "tr" => Ideal::TileReciprocal,
            "2^n" | "all" => Ideal::All,
            _ => return Err(Error::Precondition(format!("unknown ideal '{s}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Cmp {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Cmp {
    pub fn holds(&self, a: &Rational, b: &Rational) -> bool {
        match self {
            Cmp::Lt => a < b,
            Cmp::Le => a <= b,
            Cmp::Eq => a == b,
            Cmp::Ge => a >= b,
            Cmp::Gt => a > b,
        }
    }

    fn holds_sum(&self, s: &ReciprocalSum, b: &Rational) -> bool {
        use std::cmp::Ordering::*;
        let o = s.cmp_rational(b);
        match self {
            Cmp::Lt => o == Less,
            Cmp::Le => o != Greater,
            Cmp::Eq => o == Equal,
            Cmp::Ge => o != Less,
            Cmp::Gt => o == Greater,
        }
    }
}

/// One measurement against one threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckpointRow {
    pub check: String,
    pub n: u64,
    pub window: Option<u64>,
    pub measured: Rational,
    pub threshold: Rational,
    pub cmp: Cmp,
    pub pass: bool,
    /// `measured` is a bound on the exact value, rounded in the direction that
    /// keeps the comparison sound.
    pub rounded: bool,
}

impl CheckpointRow {
    pub fn new(check: impl Into<String>, n: u64, measured: Rational, threshold: Rational, cmp: Cmp) -> Self {
        let pass = cmp.holds(&measured, &threshold);
        Self {
            check: check.into(),
            n,
            window: None,
            measured,
            threshold,
            cmp,
            pass,
            rounded: false,
        }
    }

    /// Compares an unreduced sum exactly and reports it reduced or rounded.
    pub fn from_sum(check: impl Into<String>, n: u64, sum: &ReciprocalSum, threshold: Rational, cmp: Cmp) -> Self {
        let pass = cmp.holds_sum(sum, &threshold);
        let (measured, rounded) = rational::reportable(sum, matches!(cmp, Cmp::Ge | Cmp::Gt));
        Self {
            check: check.into(),
            n,
            window: None,
            measured,
            threshold,
            cmp,
            pass,
            rounded,
        }
    }

    pub fn with_window(mut self, w: u64) -> Self {
        self.window = Some(w);
        self
    }
}

impl Serialize for CheckpointRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let len = 6 + self.window.is_some() as usize + self.rounded as usize;
        let mut st = s.serialize_struct("CheckpointRow", len)?;
        st.serialize_field("check", &self.check)?;
        st.serialize_field("N", &self.n)?;
        if let Some(w) = self.window {
            st.serialize_field("window", &w)?;
        } else {
            st.skip_field("window")?;
        }
        st.serialize_field("measured", &Exact(self.measured.clone()))?;
        st.serialize_field("threshold", &Exact(self.threshold.clone()))?;
        st.serialize_field("cmp", &self.cmp)?;
        st.serialize_field("pass", &self.pass)?;
        if self.rounded {
            st.serialize_field("rounded", &true)?;
        } else {
            st.skip_field("rounded")?;
        }
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn all(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        vs.into_iter().fold(Verdict::Pass, Verdict::combine)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvidenceReport {
    pub claim: String,
    pub selector: String,
    pub checkpoints: Vec<CheckpointRow>,
    pub verdict: Verdict,
}

impl EvidenceReport {
    /// A report whose verdict is pass exactly when every row passes.
    pub fn strict(claim: impl Into<String>, selector: impl Into<String>, rows: Vec<CheckpointRow>) -> Self {
        let verdict = if rows.iter().all(|r| r.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            claim: claim.into(),
            selector: selector.into(),
            checkpoints: rows,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Knobs for [`ideal_evidence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceParams {
    pub r_max: u64,
    pub drop_max: u64,
    /// Per-checkpoint thresholds; defaults to `1/2, 1/4, …`.
    pub thresholds: Option<Vec<Rational>>,
    /// Fixed Banach window; `⌊√N⌋` when unset. Sets whose dense stretches grow
    /// slower than `√N` only show up at a fixed window.
    pub banach_window: Option<u64>,
}

impl Default for EvidenceParams {
    fn default() -> Self {
        Self {
            r_max: 8,
            drop_max: 8,
            thresholds: None,
            banach_window: None,
        }
    }
}

impl EvidenceParams {
    fn threshold(&self, i: usize) -> Rational {
        match &self.thresholds {
            Some(t) if !t.is_empty() => t[i.min(t.len() - 1)].clone(),
            _ => Rational::new(One::one(), num_bigint::BigInt::one() << (i + 1)),
        }
    }
}

fn check_checkpoints(checkpoints: &[u64]) -> Result<()> {
    if checkpoints.is_empty() {
        return Err(Error::Precondition("at least one checkpoint is required".into()));
    }
    if checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "checkpoints must be positive and strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Exact `Σ 1/x` over `X ∩ [1, n]`, unreduced.
pub fn reciprocal_sum_raw(expr: &SetExpr, n: u64) -> Result<ReciprocalSum> {
    if n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    let bm = materialize_prefix(expr, 1, n)?;
    let elems: Vec<u64> = bm.iter_ones().collect();
    ReciprocalSum::of(&elems)
}

/// Exact `Σ 1/x` over `X ∩ [1, n]`.
pub fn reciprocal_sum(expr: &SetExpr, n: u64) -> Result<Rational> {
    reciprocal_sum_raw(expr, n).map(|s| s.to_rational())
}

/// Verdict for a decreasing-threshold schedule: a violation counts as failure
/// only when the last measurement has not dropped below the loosest threshold.
fn schedule_verdict(rows: &[CheckpointRow]) -> Verdict {
    if rows.iter().all(|r| r.pass) {
        return Verdict::Pass;
    }
    let (first, last) = (&rows[0], &rows[rows.len() - 1]);
    if !last.pass && last.measured >= first.threshold {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    }
}

fn tail_row(bm: &PrefixBitmap, n: u64, threshold: Rational) -> Result<CheckpointRow> {
    let count = bm.count_range(n + 1, 2 * n);
    let label = "r:tail";
    if count > EXACT_TAIL_ELEMENTS {
        // every term lies in [1/(2N), 1/N)
        let lower = ratio(count, 2 * n);
        let upper = ratio(count, n);
        if lower >= threshold {
            let mut row = CheckpointRow::new(label, n, lower, threshold, Cmp::Lt);
            row.rounded = true;
            return Ok(row);
        }
        if upper < threshold {
            let mut row = CheckpointRow::new(label, n, upper, threshold, Cmp::Lt);
            row.rounded = true;
            return Ok(row);
        }
    }
    let elems: Vec<u64> = bm.iter_ones().filter(|&x| x > n && x <= 2 * n).collect();
    let sum = ReciprocalSum::of(&elems)?;
    Ok(CheckpointRow::from_sum(label, n, &sum, threshold, Cmp::Lt))
}

fn component_rows(
    expr: &SetExpr,
    bm: &PrefixBitmap,
    ideal: Ideal,
    checkpoints: &[u64],
    params: &EvidenceParams,
) -> Result<(Vec<CheckpointRow>, Verdict)> {
    let mut rows = Vec::with_capacity(checkpoints.len());
    match ideal {
        Ideal::Finite => {
            // new elements since the previous checkpoint (or the upper half of the first)
            let mut prev = checkpoints[0] / 2;
            for &n in checkpoints {
                let fresh = bm.count_range(prev + 1, n);
                rows.push(CheckpointRow::new("f:new", n, ratio(fresh, 1), Rational::zero(), Cmp::Eq));
                prev = n;
            }
            let verdict = if rows.iter().all(|r| r.pass) {
                Verdict::Pass
            } else if !rows[rows.len() - 1].pass {
                Verdict::Fail
            } else {
                Verdict::Inconclusive
            };
            return Ok((rows, verdict));
        }
        Ideal::Reciprocal => {
            for (i, &n) in checkpoints.iter().enumerate() {
                rows.push(tail_row(bm, n, params.threshold(i))?);
            }
        }
        Ideal::Density => {
            for (i, &n) in checkpoints.iter().enumerate() {
                let m = ratio(bm.count_range(1, n), n);
                rows.push(CheckpointRow::new("d:prefix", n, m, params.threshold(i), Cmp::Le));
            }
        }
        Ideal::Banach => {
            for (i, &n) in checkpoints.iter().enumerate() {
                let w = params.banach_window.unwrap_or(n.isqrt()).clamp(1, n);
                let m = ratio(max_window_count(bm, w, n), w);
                rows.push(CheckpointRow::new("b:window", n, m, params.threshold(i), Cmp::Le).with_window(w));
            }
        }
        Ideal::Tile => {
            for (i, &n) in checkpoints.iter().enumerate() {
                let drop = params.drop_max.min(n - 1);
                let m = tile_density_upper_bound(expr, n, params.r_max, drop)?;
                rows.push(CheckpointRow::new("t:cover", n, m, params.threshold(i), Cmp::Le));
            }
        }
        Ideal::All => return Ok((rows, Verdict::Pass)),
        Ideal::BanachReciprocal | Ideal::TileReciprocal => unreachable!("split into components"),
    }
    let verdict = schedule_verdict(&rows);
    Ok((rows, verdict))
}

/// Membership evidence for `expr` in `ideal` at the given checkpoints.
///
/// `f` looks for new elements between checkpoints, `r` for reciprocal tails
/// over `(N, 2N]`, `d`, `b` and `t` for densities below the threshold schedule.
pub fn ideal_evidence(
    expr: &SetExpr,
    ideal: Ideal,
    checkpoints: &[u64],
    params: &EvidenceParams,
) -> Result<EvidenceReport> {
    check_checkpoints(checkpoints)?;
    let n_max = *checkpoints.last().expect("nonempty");
    let parts = ideal.components();
    let hi = if parts.contains(&Ideal::Reciprocal) {
        n_max
            .checked_mul(2)
            .ok_or_else(|| Error::Overflow("reciprocal tail window".into()))?
    } else {
        n_max
    };
    let bm = materialize_prefix(expr, 1, hi)?;
    let mut rows = Vec::new();
    let mut verdict = Verdict::Pass;
    for part in parts {
        let (r, v) = component_rows(expr, &bm, part, checkpoints, params)?;
        rows.extend(r);
        verdict = verdict.combine(v);
    }
    Ok(EvidenceReport {
        claim: format!("X ∈ {ideal}"),
        selector: expr.to_string(),
        checkpoints: rows,
        verdict,
    })
}

/// Evidence that `x_n → 0` along `ideal`: the level set `{n : |x_n| ≥ ε}` is
/// collected on `[1, 2·max checkpoint]` and handed to [`ideal_evidence`].
pub fn ideal_converges_zero_evidence(
    sequence: impl Fn(u64) -> Rational,
    ideal: Ideal,
    epsilon: &Rational,
    checkpoints: &[u64],
    params: &EvidenceParams,
) -> Result<EvidenceReport> {
    check_checkpoints(checkpoints)?;
    if *epsilon <= Rational::zero() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let hi = checkpoints.last().expect("nonempty").saturating_mul(2);
    let level: Vec<u64> = (1..=hi)
        .filter(|&n| {
            let x = sequence(n);
            let ax = if x < Rational::zero() { -x } else { x };
            ax >= *epsilon
        })
        .collect();
    let mut report = ideal_evidence(&SetExpr::finite(level), ideal, checkpoints, params)?;
    report.claim = format!("x_n → 0 along {ideal}");
    report.selector = format!("level set at ε = {epsilon}");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setexpr::parse_set_expr;

    fn e(s: &str) -> SetExpr {
        parse_set_expr(s).unwrap()
    }

    const CPS: [u64; 3] = [1_000, 10_000, 100_000];

    #[test]
    fn reciprocal_examples() {
        assert_eq!(reciprocal_sum(&e("FINITE{2,4,8}"), 10).unwrap(), ratio(7, 8));
        let mut oracle = Rational::zero();
        for x in 33..=37 {
            oracle += ratio(1, x);
        }
        assert_eq!(reciprocal_sum(&e("FINITE{33,34,35,36,37}"), 100).unwrap(), oracle);
        assert!(reciprocal_sum(&e("FINITE{1}"), 0).is_err());
    }

    #[test]
    fn finite_evidence() {
        let p = EvidenceParams::default();
        let r = ideal_evidence(&e("FINITE{1,2,3}"), Ideal::Finite, &CPS, &p).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let r = ideal_evidence(&e("AP(5,0)"), Ideal::Finite, &CPS, &p).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn density_evidence() {
        let p = EvidenceParams::default();
        let r = ideal_evidence(&e("AP(2,0)"), Ideal::Density, &CPS, &p).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.checkpoints.iter().all(|c| c.measured == ratio(1, 2)));
        let r = ideal_evidence(&e("FINITE{5,9}"), Ideal::Density, &CPS, &p).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn reciprocal_evidence() {
        let p = EvidenceParams::default();
        let r = ideal_evidence(&e("AP(1,1)"), Ideal::Reciprocal, &CPS, &p).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.checkpoints.iter().all(|c| c.rounded));
        let squares = SetExpr::finite((1..=500u64).map(|i| i * i).collect::<Vec<_>>());
        let r = ideal_evidence(&squares, Ideal::Reciprocal, &CPS, &p).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    }

    #[test]
    fn composite_ideals_run_both_parts() {
        let p = EvidenceParams::default();
        let r = ideal_evidence(&e("FINITE{3}"), Ideal::TileReciprocal, &CPS, &p).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.checkpoints.iter().any(|c| c.check.starts_with("t:")));
        assert!(r.checkpoints.iter().any(|c| c.check.starts_with("r:")));
    }

    #[test]
    fn level_set_examples() {
        let p = EvidenceParams::default();
        let eps = ratio(1, 2);
        for ideal in Ideal::ALL {
            let r = ideal_converges_zero_evidence(|_| Rational::zero(), ideal, &eps, &CPS, &p).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{ideal}");
        }
        let square = |n: u64| if n.isqrt().pow(2) == n { ratio(1, 1) } else { Rational::zero() };
        let cps = [10_000, 100_000, 1_000_000];
        let r = ideal_converges_zero_evidence(square, Ideal::Density, &eps, &cps, &p).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.checkpoints[2].measured, ratio(1000, 1_000_000));
        let even = |n: u64| if n % 2 == 0 { ratio(1, 1) } else { Rational::zero() };
        let r = ideal_converges_zero_evidence(even, Ideal::Density, &eps, &CPS, &p).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.checkpoints[0].measured, ratio(1, 2));
    }

    #[test]
    fn ideal_names() {
        for i in Ideal::ALL {
            assert_eq!(i.as_str().parse::<Ideal>().unwrap(), i);
        }
        assert_eq!("b&r".parse::<Ideal>().unwrap(), Ideal::BanachReciprocal);
    }

    #[test]
    fn row_json_shape() {
        let row = CheckpointRow::new("d:prefix", 10, ratio(1, 2), ratio(1, 4), Cmp::Le).with_window(3);
        assert_eq!(
            serde_json::to_string(&row).unwrap(),
            r#"{"check":"d:prefix","N":10,"window":3,"measured":{"num":"1","den":"2"},"threshold":{"num":"1","den":"4"},"cmp":"<=","pass":false}"#
        );
    }
}
