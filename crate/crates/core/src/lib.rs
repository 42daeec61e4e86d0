//! Ideals of subsets of ℕ at finite scale: a set-expression language, density
//! estimators, tilings and anti-tiles, witness families for much-larger
//! inclusions, and an exact evidence harness.

pub mod density;
pub mod error;
pub mod setexpr;
pub mod tiling;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
pub use setexpr::{parse_set_expr, FiniteSet, Progression, SetExpr, Tiling};
pub use verify::{EvidenceReport, Ideal, Rational, Verdict};
pub use witness::{LemmaId, Selector, WitnessFamily};
