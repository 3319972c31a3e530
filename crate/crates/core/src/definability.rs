//! Exhaustive check that a single modality cannot define every ranking.
//!
//! Over one variable there are 27 rankings. Starting from the ranking of `x0`
//! and closing under the level operations induced by the connectives, the
//! fragment with only `□₁` (resp. only `□₂`) never reaches the forbidden family
//! `F₁` (resp. `F₂`), while the two modalities together reach all 27.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ranking::{all_rankings, ranking_of_formula, Level, Ranking, RankingError};
use crate::syntax::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PreorderOp {
    Neg,
    Box1,
    Box2,
    /// Pointwise minimum of levels (`∨`).
    Join,
    /// Pointwise maximum of levels (`∧`).
    Meet,
}

impl PreorderOp {
    pub fn is_binary(self) -> bool {
        matches!(self, PreorderOp::Join | PreorderOp::Meet)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefinabilityError {
    #[error("{op:?} expects {expected} operand(s)")]
    Arity { op: PreorderOp, expected: usize },
    #[error(transparent)]
    Ranking(#[from] RankingError),
    #[error("the forbidden families are only defined over one variable, got {0}")]
    NotOneVariable(usize),
    #[error("closure needs at least one generator")]
    NoGenerators,
}

pub fn apply_op(
    op: PreorderOp,
    r: &Ranking,
    r2: Option<&Ranking>,
) -> Result<Ranking, DefinabilityError> {
    let arity = |expected| DefinabilityError::Arity { op, expected };
    match (op, r2) {
        (PreorderOp::Neg, None) => Ok(r.map(Level::neg)),
        (PreorderOp::Box1, None) => Ok(r.map(Level::box1)),
        (PreorderOp::Box2, None) => Ok(r.map(Level::box2)),
        (PreorderOp::Join, Some(other)) => Ok(r.zip_with(other, Level::join)?),
        (PreorderOp::Meet, Some(other)) => Ok(r.zip_with(other, Level::meet)?),
        (PreorderOp::Join | PreorderOp::Meet, None) => Err(arity(2)),
        (_, Some(_)) => Err(arity(1)),
    }
}

/// Least superset of `generators` closed under `ops`, by worklist iteration.
pub fn closure(
    generators: &[Ranking],
    ops: &[PreorderOp],
) -> Result<BTreeSet<Ranking>, DefinabilityError> {
    let first = generators.first().ok_or(DefinabilityError::NoGenerators)?;
    if let Some(bad) = generators.iter().find(|g| g.vars() != first.vars()) {
        return Err(RankingError::Mismatch(first.vars(), bad.vars()).into());
    }
    let mut seen: BTreeSet<Ranking> = BTreeSet::new();
    let mut found: Vec<Ranking> = Vec::new();
    for g in generators {
        if seen.insert(g.clone()) {
            found.push(g.clone());
        }
    }
    let mut next = 0;
    while next < found.len() {
        let current = found[next].clone();
        let mut fresh = Vec::new();
        for &op in ops {
            if op.is_binary() {
                // pair the new element with everything found so far, itself included
                for other in &found[..=next] {
                    fresh.push(apply_op(op, &current, Some(other))?);
                    fresh.push(apply_op(op, other, Some(&current))?);
                }
            } else {
                fresh.push(apply_op(op, &current, None)?);
            }
        }
        for r in fresh {
            if seen.insert(r.clone()) {
                found.push(r);
            }
        }
        next += 1;
    }
    Ok(seen)
}

/// Index of the interpretation `x0 = 1/2` among the three one-variable worlds.
const CENTRE: usize = 1;

fn block_sizes(r: &Ranking) -> [usize; 3] {
    let mut sizes = [0; 3];
    for l in r.levels() {
        sizes[l.number() as usize - 1] += 1;
    }
    sizes
}

fn one_variable_rankings(n: usize) -> Result<Vec<Ranking>, DefinabilityError> {
    if n != 1 {
        return Err(DefinabilityError::NotOneVariable(n));
    }
    Ok(all_rankings(1).collect())
}

/// Membership in `F₁` for a one-variable ranking.
pub fn in_family_f1(r: &Ranking) -> bool {
    let centre = r.level_at(CENTRE);
    match block_sizes(r) {
        [1, 1, 1] => centre != Level::Two,
        [2, 0, 1] | [1, 0, 2] => true,
        _ => false,
    }
}

/// Membership in `F₂` for a one-variable ranking.
pub fn in_family_f2(r: &Ranking) -> bool {
    let centre = r.level_at(CENTRE);
    match block_sizes(r) {
        [1, 1, 1] => centre != Level::Two,
        [0, 3, 0] => true,
        [2, 1, 0] => centre == Level::One,
        [0, 1, 2] => centre == Level::Three,
        [1, 2, 0] | [0, 2, 1] => true,
        _ => false,
    }
}

/// `F₁`: linear rankings with the centre world at an extreme level, and
/// rankings with an empty middle level.
pub fn family_f1(n: usize) -> Result<Vec<Ranking>, DefinabilityError> {
    Ok(one_variable_rankings(n)?.into_iter().filter(in_family_f1).collect())
}

/// `F₂`: the seven configurations that the `□₂` fragment cannot reach.
pub fn family_f2(n: usize) -> Result<Vec<Ranking>, DefinabilityError> {
    Ok(one_variable_rankings(n)?.into_iter().filter(in_family_f2).collect())
}

/// The ranking of `x0` over one variable.
pub fn base_ranking() -> Ranking {
    ranking_of_formula(&Formula::var(0), 1).expect("x0 is well formed for one variable")
}

/// The ranking of `⊥` over one variable.
pub fn bot_ranking() -> Ranking {
    Ranking::constant(1, Level::Three)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Box1,
    Box2,
}

impl Variant {
    pub fn modality(self) -> PreorderOp {
        match self {
            Variant::Box1 => PreorderOp::Box1,
            Variant::Box2 => PreorderOp::Box2,
        }
    }

    pub fn is_forbidden(self, r: &Ranking) -> bool {
        match self {
            Variant::Box1 => in_family_f1(r),
            Variant::Box2 => in_family_f2(r),
        }
    }

    fn family_name(self) -> &'static str {
        match self {
            Variant::Box1 => "F1",
            Variant::Box2 => "F2",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Box1 => write!(f, "box1"),
            Variant::Box2 => write!(f, "box2"),
        }
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "box1" => Ok(Variant::Box1),
            "box2" => Ok(Variant::Box2),
            other => Err(format!("unknown variant {other:?}, expected box1 or box2")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonDefinabilityReport {
    pub variant: Variant,
    pub include_bot: bool,
    pub closure: BTreeSet<Ranking>,
    /// Whether dropping `Meet` from the operations leaves the closure unchanged.
    pub meet_redundant: bool,
    /// Each member of the forbidden family, with whether the closure reaches it.
    pub forbidden: Vec<(Ranking, bool)>,
    /// Rankings over one variable outside the closure.
    pub unreachable: Vec<Ranking>,
}

impl NonDefinabilityReport {
    pub fn disjoint(&self) -> bool {
        self.forbidden.iter().all(|(_, reached)| !reached)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "variant: {}  generators: {}\n",
            self.variant,
            if self.include_bot { "x0, bot" } else { "x0" }
        ));
        out.push_str(&format!("closure size: {}\n", self.closure.len()));
        out.push_str(&format!(
            "meet redundant: {}\n",
            if self.meet_redundant { "yes" } else { "no" }
        ));
        out.push_str(&format!(
            "{} members ({}):\n",
            self.variant.family_name(),
            self.forbidden.len()
        ));
        for (r, reached) in &self.forbidden {
            out.push_str(&format!("  {r} {}\n", if *reached { "IN" } else { "OUT" }));
        }
        let unreachable: Vec<String> = self.unreachable.iter().map(Ranking::to_string).collect();
        out.push_str(&format!("unreachable ({}): {}\n", unreachable.len(), unreachable.join(" ")));
        out.push_str(&format!(
            "verdict: {}\n",
            if self.disjoint() {
                format!("closure avoids {}", self.variant.family_name())
            } else {
                format!("closure meets {}", self.variant.family_name())
            }
        ));
        out
    }

    /// One `serialization IN|OUT` line per forbidden-family member.
    pub fn render_machine(&self) -> String {
        self.forbidden
            .iter()
            .map(|(r, reached)| format!("{r} {}\n", if *reached { "IN" } else { "OUT" }))
            .collect()
    }
}

/// Closes the ranking of `x0` (and of `⊥` when `include_bot`) under negation,
/// join, meet and the variant's modality, then compares against its forbidden family.
pub fn verify_nondefinability(variant: Variant, include_bot: bool) -> NonDefinabilityReport {
    let mut generators = vec![base_ranking()];
    if include_bot {
        generators.push(bot_ranking());
    }
    let with_meet = [PreorderOp::Neg, PreorderOp::Join, PreorderOp::Meet, variant.modality()];
    let without_meet = [PreorderOp::Neg, PreorderOp::Join, variant.modality()];
    let closed = closure(&generators, &with_meet).expect("generators share one variable");
    let closed_without = closure(&generators, &without_meet).expect("generators share one variable");
    let forbidden = all_rankings(1)
        .filter(|r| variant.is_forbidden(r))
        .map(|r| {
            let reached = closed.contains(&r);
            (r, reached)
        })
        .collect();
    let unreachable = all_rankings(1).filter(|r| !closed.contains(r)).collect();
    NonDefinabilityReport {
        variant,
        include_bot,
        meet_redundant: closed == closed_without,
        closure: closed,
        forbidden,
        unreachable,
    }
}
