//! Witness families for much-larger inclusions of ideals.
//!
//! A much-larger inclusion `I ⋐ J` is witnessed by pairwise disjoint nonempty
//! blocks `D_1, D_2, …` in `I` whose union over any infinite index set lies in
//! `J ∖ I`. The generators here build those blocks to a finite depth, together
//! with the certificates each construction relies on.

mod generators;
mod ideals;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::setexpr::{FiniteSet, SetExpr};
use crate::verify::Ideal;

pub use generators::{
    block_offsets_tr_br, br_b_certificate, verify_lemma54, witness_br_b, witness_br_r,
    witness_f_tr, witness_tr_br, witness_tr_t, BrBBlockMeta, BrRCheckpoint, ConditionCheck,
    FTrCover, Lemma54State, TrBrBlockMeta, WitnessMeta, BR_B_MAX_DEPTH, BR_R_MAX_DEPTH,
    F_TR_MAX_DEPTH, TR_BR_MAX_DEPTH, TR_T_MAX_DEPTH,
};
pub use ideals::{
    almost_disjoint_family, branch_bits, branch_encodings, chain_ideal, intermediate_ideal,
    IdealDescriptor, MAX_BRANCH_DEPTH,
};

/// Which construction produced a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LemmaId {
    /// `f ⋐ t∩r`
    #[serde(rename = "F_TR")]
    FTr,
    /// `b∩r ⋐ r` and `b ⋐ d`
    #[serde(rename = "BR_R")]
    BrR,
    /// `b∩r ⋐ b` and `r ⋐ d`
    #[serde(rename = "BR_B")]
    BrB,
    /// `t∩r ⋐ t`
    #[serde(rename = "TR_T")]
    TrT,
    /// `t∩r ⋐ b∩r` and `t ⋐ b`
    #[serde(rename = "TR_BR")]
    TrBr,
}

impl LemmaId {
    pub const ALL: [LemmaId; 5] = [
        LemmaId::FTr,
        LemmaId::BrR,
        LemmaId::BrB,
        LemmaId::TrT,
        LemmaId::TrBr,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaId::FTr => "F_TR",
            LemmaId::BrR => "BR_R",
            LemmaId::BrB => "BR_B",
            LemmaId::TrT => "TR_T",
            LemmaId::TrBr => "TR_BR",
        }
    }

    /// Depth cap, which is also the default depth.
    pub fn max_depth(&self) -> usize {
        match self {
            LemmaId::FTr => F_TR_MAX_DEPTH,
            LemmaId::BrR => BR_R_MAX_DEPTH,
            LemmaId::BrB => BR_B_MAX_DEPTH,
            LemmaId::TrT => TR_T_MAX_DEPTH,
            LemmaId::TrBr => TR_BR_MAX_DEPTH,
        }
    }

    /// The smallest ideal containing every block of the family.
    pub fn small_ideal(&self) -> Ideal {
        match self {
            LemmaId::FTr => Ideal::Finite,
            LemmaId::BrR | LemmaId::BrB => Ideal::BanachReciprocal,
            LemmaId::TrT | LemmaId::TrBr => Ideal::TileReciprocal,
        }
    }

    pub fn generate(&self, depth: usize) -> Result<WitnessFamily> {
        match self {
            LemmaId::FTr => witness_f_tr(depth),
            LemmaId::BrR => witness_br_r(depth),
            LemmaId::BrB => witness_br_b(depth),
            LemmaId::TrT => witness_tr_t(depth).map(|(_, fam)| fam),
            LemmaId::TrBr => witness_tr_br(depth),
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(format!("unknown lemma '{s}'")))
    }
}

/// Pairwise disjoint finite blocks `B_1 … B_J` plus construction metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessFamily {
    pub lemma: LemmaId,
    #[serde(serialize_with = "serialize_blocks")]
    pub blocks: Vec<FiniteSet>,
    pub meta: WitnessMeta,
}

fn serialize_blocks<S: serde::Serializer>(
    blocks: &[FiniteSet],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(blocks.len()))?;
    for b in blocks {
        seq.serialize_element(b.as_slice())?;
    }
    seq.end()
}

impl WitnessFamily {
    /// Block `j`, 1-based.
    pub fn block(&self, j: usize) -> Option<&FiniteSet> {
        j.checked_sub(1).and_then(|i| self.blocks.get(i))
    }

    pub fn depth(&self) -> usize {
        self.blocks.len()
    }

    /// `⋃_{j ∈ indices} B_j` for 1-based indices; out-of-range indices are ignored.
    pub fn union_of(&self, indices: &[usize]) -> FiniteSet {
        FiniteSet::union_all(indices.iter().filter_map(|&j| self.block(j)))
    }

    pub fn union_expr(&self, indices: &[usize]) -> SetExpr {
        SetExpr::Finite(self.union_of(indices))
    }

    pub fn union_all(&self) -> FiniteSet {
        FiniteSet::union_all(&self.blocks)
    }

    /// Number of elements shared by two or more blocks (zero for a valid family).
    pub fn overlap_count(&self) -> u64 {
        let mut all: Vec<u64> = self.blocks.iter().flat_map(|b| b.iter()).collect();
        all.sort_unstable();
        all.windows(2).filter(|w| w[0] == w[1]).count() as u64
    }

    /// Structural checks shared by every family: nonempty blocks inside ℕ,
    /// pairwise disjoint.
    pub fn check_structure(&self) -> Result<()> {
        for (i, b) in self.blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Invariant(format!("{}: block {} is empty", self.lemma, i + 1)));
            }
            if b.min() == Some(0) {
                return Err(Error::Invariant(format!("{}: block {} contains 0", self.lemma, i + 1)));
            }
        }
        match self.overlap_count() {
            0 => Ok(()),
            n => Err(Error::Invariant(format!("{}: {n} elements shared between blocks", self.lemma))),
        }
    }
}

/// Deterministic catalog of infinite index sets used to sample `K ⊆ ℕ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Selector {
    All,
    Evens,
    Odds,
    Squares,
    /// Each index kept independently with probability 1/2.
    Random { seed: u64 },
}

impl Selector {
    pub fn catalog(seed: u64) -> Vec<Selector> {
        vec![
            Selector::All,
            Selector::Evens,
            Selector::Odds,
            Selector::Squares,
            Selector::Random { seed },
        ]
    }

    /// Selected 1-based indices in `[1, upto]`.
    pub fn indices(&self, upto: usize) -> Vec<usize> {
        match *self {
            Selector::All => (1..=upto).collect(),
            Selector::Evens => (1..=upto).filter(|j| j % 2 == 0).collect(),
            Selector::Odds => (1..=upto).filter(|j| j % 2 == 1).collect(),
            Selector::Squares => (1..)
                .map(|i: usize| i * i)
                .take_while(|&j| j <= upto)
                .collect(),
            Selector::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (1..=upto).filter(|_| rng.gen::<bool>()).collect()
            }
        }
    }

    /// Indices in `[1, upto]` not selected.
    pub fn complement(&self, upto: usize) -> Vec<usize> {
        let sel = self.indices(upto);
        (1..=upto).filter(|j| sel.binary_search(j).is_err()).collect()
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::All => f.write_str("all"),
            Selector::Evens => f.write_str("evens"),
            Selector::Odds => f.write_str("odds"),
            Selector::Squares => f.write_str("squares"),
            Selector::Random { seed } => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Selector::All),
            "evens" => Ok(Selector::Evens),
            "odds" => Ok(Selector::Odds),
            "squares" => Ok(Selector::Squares),
            _ => s
                .strip_prefix("random:")
                .and_then(|seed| seed.parse().ok())
                .map(|seed| Selector::Random { seed })
                .ok_or_else(|| Error::Precondition(format!("unknown selector '{s}'"))),
        }
    }
}
