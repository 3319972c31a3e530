//! Strong Kleene three-valued logic extended with the modalities `◊₁/□₁` and
//! `◊₂/□₂`, the correspondence between its formulas and three-level rankings of
//! interpretations, and the `3⁹` table-driven belief change operators over
//! those rankings.

pub mod definability;
pub mod operators;
pub mod ranking;
pub mod semantics;
pub mod syntax;
pub mod truth;

pub use definability::{apply_op, closure, verify_nondefinability, PreorderOp, Variant};
pub use operators::{
    apply_semantic, check_characterization, check_ci_postulates, ci_table, drastic_table, revise,
    OperatorTable,
};
pub use ranking::{
    capture_set, capture_valuation, formula_of_ranking, ranking_of_formula, Level, Ranking,
};
pub use semantics::{
    bi_entails, classify, entails, enumerate_interpretations, equiv, eval, Interpretation,
};
pub use syntax::{parse, render, Formula, ParseError};
pub use truth::TruthValue;
