//! Table-driven belief change between three-level rankings.
//!
//! An [`OperatorTable`] assigns an output level to every pair of input levels.
//! Applied to two rankings it acts world by world; applied to two formulas it
//! goes through their rankings and back via [`formula_of_ranking`]. Each table
//! is characterized syntactically by three postulates built from the `ζ`
//! formulas of [`zeta`]; [`check_characterization`] verifies that by exhaustion.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ranking::{
    all_rankings, formula_of_ranking, ranking_of_formula, CaptureError, Level, Ranking,
    RankingError, ALL_LEVELS,
};
use crate::semantics::{
    bi_entails, classify, entails, enumerate_interpretations, equiv, eval_unchecked, EvalError,
    Interpretation,
};
use crate::syntax::Formula;
use crate::truth::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Capture(#[from] CaptureError),
    #[error(transparent)]
    Ranking(#[from] RankingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid operator table {0:?}: expected 9 characters from 1, 2, 3 or one of `ci`, `drastic`")]
pub struct ParseTableError(pub String);

/// Total map `{1,2,3}² → {1,2,3}`, stored row-major with rows indexed by the
/// level in the prior ranking and columns by the level in the input ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OperatorTable([Level; 9]);

pub const TABLE_COUNT: u32 = 19_683;

fn cell(i: Level, j: Level) -> usize {
    (i.number() as usize - 1) * 3 + (j.number() as usize - 1)
}

impl OperatorTable {
    pub fn new(cells: [Level; 9]) -> Self {
        OperatorTable(cells)
    }

    /// The `index`-th table in serialization order, `0 <= index < 19683`.
    pub fn from_index(mut index: u32) -> Self {
        let mut cells = [Level::One; 9];
        for slot in cells.iter_mut().rev() {
            *slot = ALL_LEVELS[(index % 3) as usize];
            index /= 3;
        }
        OperatorTable(cells)
    }

    pub fn index(&self) -> u32 {
        self.0.iter().fold(0, |acc, l| acc * 3 + (l.number() as u32 - 1))
    }

    pub fn k(&self, i: Level, j: Level) -> Level {
        self.0[cell(i, j)]
    }

    pub fn cells(&self) -> &[Level; 9] {
        &self.0
    }
}

impl fmt::Display for OperatorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for OperatorTable {
    type Err = ParseTableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ci" => return Ok(ci_table()),
            "drastic" => return Ok(drastic_table()),
            _ => {}
        }
        let levels: Vec<Level> = s
            .chars()
            .map(Level::from_char)
            .collect::<Option<_>>()
            .ok_or_else(|| ParseTableError(s.to_string()))?;
        let cells: [Level; 9] = levels.try_into().map_err(|_| ParseTableError(s.to_string()))?;
        Ok(OperatorTable(cells))
    }
}

/// Every table, in serialization order.
pub fn all_tables() -> impl Iterator<Item = OperatorTable> {
    (0..TABLE_COUNT).map(OperatorTable::from_index)
}

/// Cautious improvement: `122 123 223`.
pub fn ci_table() -> OperatorTable {
    use Level::*;
    OperatorTable([One, Two, Two, One, Two, Three, Two, Two, Three])
}

/// The output level is always the input's level: `123 123 123`.
pub fn drastic_table() -> OperatorTable {
    use Level::*;
    OperatorTable([One, Two, Three, One, Two, Three, One, Two, Three])
}

pub fn apply_semantic(
    t: &OperatorTable,
    prior: &Ranking,
    input: &Ranking,
) -> Result<Ranking, RankingError> {
    prior.zip_with(input, |i, j| t.k(i, j))
}

/// The formula whose ranking is `t` applied to the rankings of `f` and `g`.
pub fn revise(
    t: &OperatorTable,
    f: &Formula,
    g: &Formula,
    n: usize,
) -> Result<Formula, OperatorError> {
    let out = apply_semantic(t, &ranking_of_formula(f, n)?, &ranking_of_formula(g, n)?)?;
    Ok(formula_of_ranking(&out)?)
}

/// A formula that is 1 exactly where `f` sits at `level`.
pub fn level_formula(level: Level, f: &Formula) -> Formula {
    match level {
        Level::One => f.clone(),
        Level::Two => Formula::undetermined(f.clone()),
        Level::Three => Formula::not(f.clone()),
    }
}

/// `ζ` for cell `(i, j)` and `target`: `Bot` unless the cell maps to `target`,
/// otherwise the conjunction of the level formulas for `f` at `i` and `g` at `j`.
pub fn zeta(
    t: &OperatorTable,
    i: Level,
    j: Level,
    target: Level,
    f: &Formula,
    g: &Formula,
) -> Formula {
    if t.k(i, j) != target {
        return Formula::Bot;
    }
    Formula::and(level_formula(i, f), level_formula(j, g))
}

/// Disjunction of `ζ` over all nine cells, row-major.
pub fn postulate_formula(t: &OperatorTable, target: Level, f: &Formula, g: &Formula) -> Formula {
    let terms = ALL_LEVELS
        .iter()
        .flat_map(|i| ALL_LEVELS.iter().map(move |j| (*i, *j)))
        .map(|(i, j)| zeta(t, i, j, target, f, g));
    Formula::disjunction(terms)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharacterizationFailure {
    NoVariables,
    /// The postulate for `target` disagrees with the semantic result on this pair.
    Soundness { prior: Ranking, input: Ranking, target: Level },
    /// Reading the postulates back at a witness world does not give the table's cell.
    Uniqueness { i: Level, j: Level, expected: Level, found: Vec<Level> },
}

impl fmt::Display for CharacterizationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterizationFailure::NoVariables => write!(f, "need at least one variable"),
            CharacterizationFailure::Soundness { prior, input, target } => write!(
                f,
                "postulate for level {target} fails on prior {prior}, input {input}"
            ),
            CharacterizationFailure::Uniqueness { i, j, expected, found } => write!(
                f,
                "cell ({i},{j}) should be {expected}, postulates give {found:?}"
            ),
        }
    }
}

/// Checks that the three postulates hold for every pair of rankings over `n`
/// variables, and that they pin down every cell of `t`. The pair space has
/// `3^(2·3^n)` elements, so only `n = 1` is practical.
pub fn check_characterization(
    t: &OperatorTable,
    n: usize,
) -> Result<(), CharacterizationFailure> {
    if n == 0 {
        return Err(CharacterizationFailure::NoVariables);
    }
    let rankings: Vec<Ranking> = all_rankings(n).collect();
    let formulas: Vec<Formula> = rankings
        .iter()
        .map(|r| formula_of_ranking(r).expect("n >= 1"))
        .collect();
    let worlds = enumerate_interpretations(n);
    for (prior, f) in rankings.iter().zip(&formulas) {
        for (input, g) in rankings.iter().zip(&formulas) {
            let expected = apply_semantic(t, prior, input).expect("same n");
            for target in ALL_LEVELS {
                let post = postulate_formula(t, target, f, g);
                let holds = worlds.iter().enumerate().all(|(idx, w)| {
                    let is_model = eval_unchecked(&post, w.values()) == TruthValue::True;
                    is_model == (expected.level_at(idx) == target)
                });
                if !holds {
                    return Err(CharacterizationFailure::Soundness {
                        prior: prior.clone(),
                        input: input.clone(),
                        target,
                    });
                }
            }
        }
    }
    check_uniqueness(t, n)
}

/// Reconstructs each cell `(i, j)` from the postulates alone, using constant
/// rankings at levels `i` and `j` and reading off which postulate holds.
fn check_uniqueness(t: &OperatorTable, n: usize) -> Result<(), CharacterizationFailure> {
    let w = Interpretation::from_index(n, 0);
    for i in ALL_LEVELS {
        let f = formula_of_ranking(&Ranking::constant(n, i)).expect("n >= 1");
        for j in ALL_LEVELS {
            let g = formula_of_ranking(&Ranking::constant(n, j)).expect("n >= 1");
            let found: Vec<Level> = ALL_LEVELS
                .into_iter()
                .filter(|target| {
                    eval_unchecked(&postulate_formula(t, *target, &f, &g), w.values())
                        == TruthValue::True
                })
                .collect();
            let expected = t.k(i, j);
            if found != [expected] {
                return Err(CharacterizationFailure::Uniqueness { i, j, expected, found });
            }
        }
    }
    Ok(())
}

/// Cell-level check of the postulates: with `f = x0` and `g = x1` the nine
/// interpretations of two variables realize every pair of input levels once,
/// so comparing the postulates there against `t` covers every cell. Also runs
/// the uniqueness reconstruction.
pub fn check_cells(t: &OperatorTable) -> Result<(), CharacterizationFailure> {
    let f = Formula::var(0);
    let g = Formula::var(1);
    let prior = ranking_of_formula(&f, 2).expect("x0 is well formed");
    let input = ranking_of_formula(&g, 2).expect("x1 is well formed");
    let expected = apply_semantic(t, &prior, &input).expect("same n");
    for target in ALL_LEVELS {
        let post = postulate_formula(t, target, &f, &g);
        let got = ranking_of_formula(&post, 2).expect("well formed");
        let agree = (0..9).all(|idx| {
            (got.level_at(idx) == Level::One) == (expected.level_at(idx) == target)
        });
        if !agree {
            return Err(CharacterizationFailure::Soundness { prior, input, target });
        }
    }
    check_uniqueness(t, 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: usize,
    pub failures: Vec<(OperatorTable, CharacterizationFailure)>,
}

/// Runs [`check_cells`] and then [`check_characterization`] at `n` on every table.
pub fn sweep_all_operators(n: usize) -> SweepReport {
    let mut report = SweepReport { checked: 0, failures: Vec::new() };
    for t in all_tables() {
        report.checked += 1;
        if let Err(e) = check_cells(&t).and_then(|()| check_characterization(&t, n)) {
            report.failures.push((t, e));
        }
    }
    report
}

/// The ten cautious-improvement checks, in report order.
pub const CI_POSTULATES: [&str; 10] =
    ["CI1", "CI2", "CI1'", "CI2'", "CI3", "CI4", "CI5", "CI6", "CI7", "CI8"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateResult {
    pub name: &'static str,
    pub checked: usize,
    /// First `(prior, input)` pair on which the postulate failed.
    pub witness: Option<(Ranking, Ranking)>,
}

impl PostulateResult {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiReport {
    pub results: Vec<PostulateResult>,
    /// First pair on which `φ∗θ` and `□₁φ∧θ` have different truth tables, with
    /// the interpretation where they differ. `CI1'` holds only as equality of
    /// model sets, so this is expected to be found.
    pub ci1_prime_table_counterexample: Option<(Ranking, Ranking, Interpretation)>,
}

impl CiReport {
    pub fn all_hold(&self) -> bool {
        self.results.iter().all(PostulateResult::holds)
    }

    pub fn get(&self, name: &str) -> Option<&PostulateResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

fn is_contradiction(f: &Formula, n: usize) -> Result<bool, EvalError> {
    Ok(classify(f, n)?.is_contradiction())
}

/// Evaluates the ten postulates on one pair of formulas, in [`CI_POSTULATES`] order.
pub fn ci_postulates_for(f: &Formula, g: &Formula, n: usize) -> Result<[bool; 10], OperatorError> {
    let ci = ci_table();
    let h = revise(&ci, f, g, n)?;
    let nf = Formula::not(f.clone());
    let ng = Formula::not(g.clone());
    let nh = Formula::not(h.clone());
    let undet_f = Formula::undetermined(f.clone());

    let ci1_lhs = Formula::or(
        Formula::and(f.clone(), g.clone()),
        Formula::and(undet_f.clone(), g.clone()),
    );
    let ci2_lhs = Formula::or(
        Formula::and(undet_f, ng.clone()),
        Formula::and(nf.clone(), ng.clone()),
    );
    let ci1p_rhs = Formula::and(Formula::box1(f.clone()), g.clone());
    let ci2p_rhs = Formula::and(Formula::box1(nf.clone()), ng.clone());

    Ok([
        bi_entails(&ci1_lhs, &h, n)?,
        bi_entails(&ci2_lhs, &nh, n)?,
        bi_entails(&h, &ci1p_rhs, n)?,
        bi_entails(&nh, &ci2p_rhs, n)?,
        equiv(&nh, &revise(&ci, &nf, &ng, n)?, n)?,
        is_contradiction(g, n)? || !is_contradiction(&h, n)?,
        entails(&h, g, n)?,
        entails(f, &Formula::box1(h.clone()), n)?,
        equiv(&revise(&ci, &h, g, n)?, g, n)?,
        equiv(&revise(&ci, g, g, n)?, g, n)?,
    ])
}

/// Checks the cautious-improvement postulates on the given ranking pairs, each
/// pair standing for the formulas that represent its rankings.
pub fn check_ci_postulates_on<I>(pairs: I, n: usize) -> Result<CiReport, OperatorError>
where
    I: IntoIterator<Item = (Ranking, Ranking)>,
{
    let mut results: Vec<PostulateResult> = CI_POSTULATES
        .iter()
        .map(|name| PostulateResult { name, checked: 0, witness: None })
        .collect();
    let mut counterexample = None;
    let worlds = enumerate_interpretations(n);
    for (prior, input) in pairs {
        if prior.vars() != n || input.vars() != n {
            return Err(RankingError::Mismatch(prior.vars(), input.vars()).into());
        }
        let f = formula_of_ranking(&prior)?;
        let g = formula_of_ranking(&input)?;
        let outcome = ci_postulates_for(&f, &g, n)?;
        for (result, ok) in results.iter_mut().zip(outcome) {
            result.checked += 1;
            if !ok && result.witness.is_none() {
                result.witness = Some((prior.clone(), input.clone()));
            }
        }
        if counterexample.is_none() {
            let h = revise(&ci_table(), &f, &g, n)?;
            let rhs = Formula::and(Formula::box1(f.clone()), g.clone());
            if let Some(w) = worlds
                .iter()
                .find(|w| eval_unchecked(&h, w.values()) != eval_unchecked(&rhs, w.values()))
            {
                counterexample = Some((prior.clone(), input.clone(), w.clone()));
            }
        }
    }
    Ok(CiReport { results, ci1_prime_table_counterexample: counterexample })
}

/// [`check_ci_postulates_on`] over every pair of rankings; only `n = 1` is practical.
pub fn check_ci_postulates(n: usize) -> Result<CiReport, OperatorError> {
    let rankings: Vec<Ranking> = all_rankings(n).collect();
    let pairs = rankings
        .iter()
        .flat_map(|a| rankings.iter().map(move |b| (a.clone(), b.clone())));
    check_ci_postulates_on(pairs, n)
}
