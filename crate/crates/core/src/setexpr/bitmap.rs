//! Finite windows onto infinite sets.

use super::{FiniteSet, SetExpr};
use crate::error::{Error, Result};

/// Default cap on the number of positions a single window may span.
pub const DEFAULT_MAX_POSITIONS: u64 = 100_000_000;

/// Resource limits for materialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_positions: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_positions: DEFAULT_MAX_POSITIONS,
        }
    }
}

/// Membership bits for every `n` in the closed interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixBitmap {
    lo: u64,
    hi: u64,
    words: Vec<u64>,
}

impl PrefixBitmap {
    fn zeroed(lo: u64, hi: u64) -> Self {
        let len = (hi - lo + 1) as usize;
        Self {
            lo,
            hi,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    /// Number of positions in the window.
    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Membership of `n`; positions outside the window read as absent.
    pub fn get(&self, n: u64) -> bool {
        if n < self.lo || n > self.hi {
            return false;
        }
        let i = (n - self.lo) as usize;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn set_index(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn set_run(&mut self, from: u64, to: u64) {
        let (a, b) = ((from - self.lo) as usize, (to - self.lo) as usize);
        let (wa, wb) = (a / 64, b / 64);
        let head = u64::MAX << (a % 64);
        let tail = u64::MAX >> (63 - b % 64);
        if wa == wb {
            self.words[wa] |= head & tail;
        } else {
            self.words[wa] |= head;
            for w in &mut self.words[wa + 1..wb] {
                *w = u64::MAX;
            }
            self.words[wb] |= tail;
        }
    }

    /// Total number of members in the window.
    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Members in `[from, to]`, clipped to the window.
    pub fn count_range(&self, from: u64, to: u64) -> u64 {
        let from = from.max(self.lo);
        let to = to.min(self.hi);
        if from > to {
            return 0;
        }
        let (a, b) = ((from - self.lo) as usize, (to - self.lo) as usize);
        let (wa, wb) = (a / 64, b / 64);
        let head = u64::MAX << (a % 64);
        let tail = u64::MAX >> (63 - b % 64);
        if wa == wb {
            return (self.words[wa] & head & tail).count_ones() as u64;
        }
        let mut c = (self.words[wa] & head).count_ones() as u64;
        c += self.words[wa + 1..wb]
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum::<u64>();
        c + (self.words[wb] & tail).count_ones() as u64
    }

    /// Members in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        let lo = self.lo;
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(lo + wi as u64 * 64 + b)
            })
        })
    }

    pub fn to_finite(&self) -> FiniteSet {
        FiniteSet(self.iter_ones().collect())
    }

    /// Bits of `self` that are absent from `other`; both must span the same window.
    pub fn and_not(&self, other: &PrefixBitmap) -> PrefixBitmap {
        assert_eq!((self.lo, self.hi), (other.lo, other.hi), "window mismatch");
        PrefixBitmap {
            lo: self.lo,
            hi: self.hi,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    /// Symmetric difference of two bitmaps over the same window.
    pub fn xor(&self, other: &PrefixBitmap) -> PrefixBitmap {
        assert_eq!((self.lo, self.hi), (other.lo, other.hi), "window mismatch");
        PrefixBitmap {
            lo: self.lo,
            hi: self.hi,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    fn or_assign(&mut self, other: &PrefixBitmap) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    // Sets every member of `expr + shift` in the window.
    fn fill(&mut self, expr: &SetExpr, shift: u64) {
        let (lo, hi) = (self.lo, self.hi);
        match expr {
            SetExpr::Finite(f) => {
                if shift > hi {
                    return;
                }
                let from = lo.saturating_sub(shift);
                for &x in f.range(from, hi - shift) {
                    self.set_index((x + shift - lo) as usize);
                }
            }
            SetExpr::Ap(p) => self.fill_progression(p.step(), p.offset(), shift),
            SetExpr::Tiling(t) => {
                if t.is_full() {
                    if let Some(start) = t.offset().checked_add(shift) {
                        if start <= hi {
                            self.set_run(start.max(lo), hi);
                        }
                    }
                    return;
                }
                for &x in t.tile() {
                    if let Some(off) = t.offset().checked_add(x) {
                        self.fill_progression(t.period(), off, shift);
                    }
                }
            }
            SetExpr::AntiTile(a) => {
                if shift > hi {
                    return;
                }
                let first_block = lo.saturating_sub(shift) / a.step();
                let last_block = ((hi - shift) / a.step()).min(a.block_count() - 1);
                for i in first_block..=last_block {
                    if i >= a.block_count() {
                        break;
                    }
                    let n = a.point(i) + shift;
                    if n >= lo && n <= hi {
                        self.set_index((n - lo) as usize);
                    }
                }
            }
            SetExpr::Union(parts) => {
                for part in parts {
                    self.fill(part, shift);
                }
            }
            SetExpr::Intersect(parts) => {
                let mut acc = PrefixBitmap::zeroed(lo, hi);
                acc.fill(&parts[0], shift);
                for part in &parts[1..] {
                    let mut next = PrefixBitmap::zeroed(lo, hi);
                    next.fill(part, shift);
                    for (a, b) in acc.words.iter_mut().zip(&next.words) {
                        *a &= b;
                    }
                }
                self.or_assign(&acc);
            }
            SetExpr::Diff(a, b) => {
                let mut left = PrefixBitmap::zeroed(lo, hi);
                left.fill(a, shift);
                let mut right = PrefixBitmap::zeroed(lo, hi);
                right.fill(b, shift);
                self.or_assign(&left.and_not(&right));
            }
            SetExpr::Shift(inner, off) => {
                if let Some(s) = shift.checked_add(*off) {
                    self.fill(inner, s);
                }
            }
        }
    }

    fn fill_progression(&mut self, step: u64, offset: u64, shift: u64) {
        let Some(start) = offset.checked_add(shift) else {
            return;
        };
        if start > self.hi {
            return;
        }
        if step == 1 {
            self.set_run(start.max(self.lo), self.hi);
            return;
        }
        let mut n = if start >= self.lo {
            start
        } else {
            start + (self.lo - start).div_ceil(step) * step
        };
        while n <= self.hi {
            self.set_index((n - self.lo) as usize);
            match n.checked_add(step) {
                Some(m) => n = m,
                None => break,
            }
        }
    }
}

/// Materializes `expr` over `[lo, hi]` under the default [`Limits`].
pub fn materialize_prefix(expr: &SetExpr, lo: u64, hi: u64) -> Result<PrefixBitmap> {
    materialize_prefix_with(expr, lo, hi, Limits::default())
}

pub fn materialize_prefix_with(
    expr: &SetExpr,
    lo: u64,
    hi: u64,
    limits: Limits,
) -> Result<PrefixBitmap> {
    if lo > hi {
        return Err(Error::Precondition(format!("window [{lo}, {hi}] is empty")));
    }
    let requested = hi - lo + 1;
    if requested > limits.max_positions {
        return Err(Error::ResourceLimit {
            requested,
            limit: limits.max_positions,
        });
    }
    let mut bm = PrefixBitmap::zeroed(lo, hi);
    bm.fill(expr, 0);
    Ok(bm)
}

/// `{ n ∈ [lo, hi] : member(a, n) ≠ member(b, n) }`.
pub fn symmetric_difference_prefix(
    a: &SetExpr,
    b: &SetExpr,
    lo: u64,
    hi: u64,
) -> Result<FiniteSet> {
    let x = materialize_prefix(a, lo, hi)?;
    let y = materialize_prefix(b, lo, hi)?;
    Ok(x.xor(&y).to_finite())
}

/// Window evidence (not proof) that `a = b` modulo a finite set.
pub fn eq_mod_finite_prefix(a: &SetExpr, b: &SetExpr, cutoff: u64, hi: u64) -> Result<bool> {
    if cutoff > hi {
        return Err(Error::Precondition(format!("cutoff {cutoff} exceeds hi {hi}")));
    }
    Ok(symmetric_difference_prefix(a, b, cutoff, hi)?.is_empty())
}
