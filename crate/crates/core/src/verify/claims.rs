use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::witness::{LemmaId, Selector, WitnessFamily};

use super::{check_much_larger, strict_without_much_larger_demo, EvidenceParams, EvidenceReport, Ideal, Verdict};

/// The much-larger inclusions of the diagram, plus the remark that strict
/// inclusion alone is not enough.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    FTr,
    BrR,
    BD,
    BrB,
    RD,
    TrT,
    TrBr,
    TB,
    Remark,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::FTr,
        Claim::BrR,
        Claim::BD,
        Claim::BrB,
        Claim::RD,
        Claim::TrT,
        Claim::TrBr,
        Claim::TB,
        Claim::Remark,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Claim::FTr => "f-tr",
            Claim::BrR => "br-r",
            Claim::BD => "b-d",
            Claim::BrB => "br-b",
            Claim::RD => "r-d",
            Claim::TrT => "tr-t",
            Claim::TrBr => "tr-br",
            Claim::TB => "t-b",
            Claim::Remark => "remark",
        }
    }

    /// `(family, small, large)`; `None` for the remark.
    pub fn inclusion(&self) -> Option<(LemmaId, Ideal, Ideal)> {
        use Ideal::*;
        Some(match self {
            Claim::FTr => (LemmaId::FTr, Finite, TileReciprocal),
            Claim::BrR => (LemmaId::BrR, BanachReciprocal, Reciprocal),
            Claim::BD => (LemmaId::BrR, Banach, Density),
            Claim::BrB => (LemmaId::BrB, BanachReciprocal, Banach),
            Claim::RD => (LemmaId::BrB, Reciprocal, Density),
            Claim::TrT => (LemmaId::TrT, TileReciprocal, Tile),
            Claim::TrBr => (LemmaId::TrBr, TileReciprocal, BanachReciprocal),
            Claim::TB => (LemmaId::TrBr, Tile, Banach),
            Claim::Remark => return None,
        })
    }

    /// Default prefix length, sized so the selected blocks reach well into it.
    pub fn default_n(&self) -> u64 {
        match self {
            Claim::FTr | Claim::Remark => 1_000_000,
            Claim::BrR | Claim::BD => 1 << 20,
            Claim::BrB | Claim::RD => 1 << 19,
            Claim::TrT => 1 << 16,
            Claim::TrBr | Claim::TB => 100_000,
        }
    }

    /// Selectors that keep at least three blocks inside the default prefix.
    pub fn default_selectors(&self, seed: u64) -> Vec<Selector> {
        match self {
            Claim::FTr | Claim::BrR | Claim::BD | Claim::Remark => Selector::catalog(seed),
            Claim::BrB | Claim::RD | Claim::TrT => vec![Selector::All],
            Claim::TrBr | Claim::TB => vec![Selector::All, Selector::Evens, Selector::Odds],
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown claim '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunConfig {
    /// Family depth; each generator's cap when unset.
    pub depth: Option<usize>,
    /// Prefix length; each claim's default when unset.
    pub n: Option<u64>,
    pub seed: u64,
    pub params: EvidenceParams,
}

/// Reports of one or more claims with an overall verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub reports: Vec<EvidenceReport>,
    pub verdict: Verdict,
}

impl Summary {
    fn new(reports: Vec<EvidenceReport>) -> Self {
        let verdict = Verdict::all(reports.iter().map(|r| r.verdict));
        Self { reports, verdict }
    }
}

fn generate(lemma: LemmaId, cfg: &RunConfig) -> Result<WitnessFamily> {
    lemma.generate(cfg.depth.unwrap_or(lemma.max_depth()))
}

fn run_with(claim: Claim, family: Option<&WitnessFamily>, cfg: &RunConfig) -> Result<Vec<EvidenceReport>> {
    let Some((lemma, small, large)) = claim.inclusion() else {
        return [1, 7]
            .into_iter()
            .map(|a| strict_without_much_larger_demo(a, cfg.seed))
            .collect();
    };
    let owned;
    let family = match family {
        Some(f) => f,
        None => {
            owned = generate(lemma, cfg)?;
            &owned
        }
    };
    check_much_larger(
        family,
        small,
        large,
        &claim.default_selectors(cfg.seed),
        cfg.n.unwrap_or(claim.default_n()),
        &cfg.params,
    )
}

pub fn run_claim(claim: Claim, cfg: &RunConfig) -> Result<Summary> {
    run_with(claim, None, cfg).map(Summary::new)
}

/// Every claim, generating each family once and sharing it between the two
/// inclusions it witnesses.
pub fn run_all(cfg: &RunConfig) -> Result<Summary> {
    let families: Vec<(LemmaId, WitnessFamily)> = LemmaId::ALL
        .par_iter()
        .map(|&l| generate(l, cfg).map(|f| (l, f)))
        .collect::<Result<_>>()?;
    let per_claim: Vec<Vec<EvidenceReport>> = Claim::ALL
        .par_iter()
        .map(|c| {
            let fam = c
                .inclusion()
                .and_then(|(l, _, _)| families.iter().find(|(m, _)| *m == l).map(|(_, f)| f));
            run_with(*c, fam, cfg)
        })
        .collect::<Result<_>>()?;
    Ok(Summary::new(per_claim.into_iter().flatten().collect()))
}
