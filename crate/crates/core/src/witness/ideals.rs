use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::setexpr::{FiniteSet, SetExpr};
use crate::verify::{ideal_evidence, EvidenceParams, EvidenceReport, Ideal};

use super::{Selector, WitnessFamily};

/// Encodings `2^k + value` must fit in `u128`.
pub const MAX_BRANCH_DEPTH: usize = 127;

/// The first `depth` bits of branch `index`, drawn from a generator seeded by
/// the index.
pub fn branch_bits(index: u64, depth: usize) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(index);
    (0..depth).map(|_| rng.gen()).collect()
}

/// `{ 2^k + value(w_1 … w_k) : 1 ≤ k ≤ |w| }`, most significant bit first.
/// Increasing, since `2^k + value < 2^{k+1}`.
pub fn branch_encodings(bits: &[bool]) -> Result<Vec<u128>> {
    if bits.len() > MAX_BRANCH_DEPTH {
        return Err(Error::DepthCap {
            generator: "branch_encodings",
            requested: bits.len(),
            cap: MAX_BRANCH_DEPTH,
        });
    }
    let mut value = 0u128;
    Ok(bits
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            value = value << 1 | b as u128;
            (1u128 << (k + 1)) + value
        })
        .collect())
}

/// `count` branches of the binary tree cut at `depth`. Distinct branches share
/// exactly the encodings of their common prefix.
pub fn almost_disjoint_family(count: usize, depth: usize) -> Result<Vec<Vec<u128>>> {
    if count < 2 || depth < 1 {
        return Err(Error::Precondition("need count >= 2 and depth >= 1".into()));
    }
    (0..count as u64).map(|i| branch_encodings(&branch_bits(i, depth))).collect()
}

/// `K = { X : X ∖ E ∈ base }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDescriptor {
    pub base: Ideal,
    pub extra: FiniteSet,
    /// Block indices whose union forms `extra`.
    pub indices: Vec<usize>,
}

impl IdealDescriptor {
    pub fn base_only(base: Ideal) -> Self {
        Self {
            base,
            extra: FiniteSet::empty(),
            indices: Vec::new(),
        }
    }

    /// `X ∖ E`.
    pub fn residue(&self, x: &SetExpr) -> SetExpr {
        if self.extra.is_empty() {
            x.clone()
        } else {
            SetExpr::diff(x.clone(), SetExpr::Finite(self.extra.clone()))
        }
    }

    /// Membership evidence for `x`, read off `x ∖ E` against the base ideal.
    pub fn evidence(&self, x: &SetExpr, checkpoints: &[u64], params: &EvidenceParams) -> Result<EvidenceReport> {
        let mut report = ideal_evidence(&self.residue(x), self.base, checkpoints, params)?;
        report.claim = format!("X ∖ E ∈ {}", self.base);
        Ok(report)
    }
}

/// `E = ⋃_{j∈P} D_j` for the selector's indices `P`, over the family's small ideal.
pub fn intermediate_ideal(family: &WitnessFamily, selector: Selector) -> IdealDescriptor {
    let indices = selector.indices(family.depth());
    IdealDescriptor {
        base: family.lemma.small_ideal(),
        extra: family.union_of(&indices),
        indices,
    }
}

/// `E = ⋃_{j∈S} D_j` for a stage set `S`; larger stage sets give larger ideals.
pub fn chain_ideal(family: &WitnessFamily, stage_set: &[usize]) -> IdealDescriptor {
    let mut indices: Vec<usize> = stage_set.iter().copied().filter(|&j| j >= 1 && j <= family.depth()).collect();
    indices.sort_unstable();
    indices.dedup();
    IdealDescriptor {
        base: family.lemma.small_ideal(),
        extra: family.union_of(&indices),
        indices,
    }
}
