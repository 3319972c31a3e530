//! Evaluation over three-valued interpretations and the three semantic relations.
//!
//! Every relation here is decided by walking the full interpretation space in
//! canonical order, so the variable count is expected to stay small.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::Formula;
use crate::truth::{TruthValue, ALL_VALUES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable x{index} is out of range for {n} variable(s)")]
    VarOutOfRange { index: usize, n: usize },
}

/// Total assignment of truth values to `x0..x(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(Vec<TruthValue>);

impl Interpretation {
    pub fn new(values: Vec<TruthValue>) -> Self {
        Interpretation(values)
    }

    /// The interpretation at `index` in the canonical base-3 enumeration of `n` variables.
    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut values = vec![TruthValue::False; n];
        for slot in values.iter_mut().rev() {
            *slot = ALL_VALUES[index % 3];
            index /= 3;
        }
        Interpretation(values)
    }

    /// Position in the canonical enumeration; `x0` is the most significant digit.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, v| acc * 3 + v.digit())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.0
    }

    pub fn get(&self, var: usize) -> Option<TruthValue> {
        self.0.get(var).copied()
    }

    /// Space-separated digits, as used by the table and ranking file formats.
    pub fn digits(&self) -> String {
        let symbols: Vec<String> = self.0.iter().map(|v| v.symbol().to_string()).collect();
        symbols.join(" ")
    }
}

/// Command-line literal: digits from `{0,u,1}` joined by commas.
impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbols: Vec<String> = self.0.iter().map(|v| v.symbol().to_string()).collect();
        write!(f, "{}", symbols.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid interpretation literal {0:?}")]
pub struct ParseInterpretationError(pub String);

impl FromStr for Interpretation {
    type Err = ParseInterpretationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Interpretation(Vec::new()));
        }
        s.split(',')
            .map(|part| part.trim().parse::<TruthValue>())
            .collect::<Result<Vec<_>, _>>()
            .map(Interpretation)
            .map_err(|_| ParseInterpretationError(s.to_string()))
    }
}

pub fn interpretation_count(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// All `3^n` interpretations in canonical order.
pub fn enumerate_interpretations(n: usize) -> Vec<Interpretation> {
    (0..interpretation_count(n)).map(|i| Interpretation::from_index(n, i)).collect()
}

fn check_vars(f: &Formula, n: usize) -> Result<(), EvalError> {
    match f.max_var() {
        Some(index) if index >= n => Err(EvalError::VarOutOfRange { index, n }),
        _ => Ok(()),
    }
}

pub fn eval(f: &Formula, w: &Interpretation) -> Result<TruthValue, EvalError> {
    check_vars(f, w.len())?;
    Ok(eval_unchecked(f, w.values()))
}

/// Evaluation without the range check; panics on an out-of-range variable.
pub(crate) fn eval_unchecked(f: &Formula, w: &[TruthValue]) -> TruthValue {
    match f {
        Formula::Bot => TruthValue::False,
        Formula::Var(i) => w[*i],
        Formula::Not(a) => eval_unchecked(a, w).not(),
        Formula::And(a, b) => {
            let lhs = eval_unchecked(a, w);
            if lhs == TruthValue::False {
                return lhs;
            }
            lhs.and(eval_unchecked(b, w))
        }
        Formula::Or(a, b) => {
            let lhs = eval_unchecked(a, w);
            if lhs == TruthValue::True {
                return lhs;
            }
            lhs.or(eval_unchecked(b, w))
        }
        Formula::Implies(a, b) => eval_unchecked(a, w).implies(eval_unchecked(b, w)),
        Formula::Dia1(a) => eval_unchecked(a, w).dia1(),
        Formula::Box1(a) => eval_unchecked(a, w).box1(),
        Formula::Dia2(a) => eval_unchecked(a, w).dia2(),
        Formula::Box2(a) => eval_unchecked(a, w).box2(),
    }
}

/// Values of `f` at every interpretation of `n` variables, in canonical order.
pub fn truth_table(f: &Formula, n: usize) -> Result<Vec<TruthValue>, EvalError> {
    check_vars(f, n)?;
    Ok(enumerate_interpretations(n)
        .iter()
        .map(|w| eval_unchecked(f, w.values()))
        .collect())
}

/// Truth-table text: one `d0 d1 ... : v` line per interpretation.
pub fn render_truth_table(f: &Formula, n: usize) -> Result<String, EvalError> {
    let values = truth_table(f, n)?;
    let mut out = String::new();
    for (w, v) in enumerate_interpretations(n).iter().zip(values) {
        let digits = w.digits();
        if digits.is_empty() {
            out.push_str(&format!(": {v}\n"));
        } else {
            out.push_str(&format!("{digits} : {v}\n"));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Classification {
    pub models: Vec<Interpretation>,
    pub quasi_models: Vec<Interpretation>,
    pub countermodels: Vec<Interpretation>,
}

impl Classification {
    /// Only countermodels.
    pub fn is_contradiction(&self) -> bool {
        self.models.is_empty() && self.quasi_models.is_empty()
    }
}

pub fn classify(f: &Formula, n: usize) -> Result<Classification, EvalError> {
    check_vars(f, n)?;
    let mut out = Classification::default();
    for w in enumerate_interpretations(n) {
        match eval_unchecked(f, w.values()) {
            TruthValue::True => out.models.push(w),
            TruthValue::Half => out.quasi_models.push(w),
            TruthValue::False => out.countermodels.push(w),
        }
    }
    Ok(out)
}

pub fn models(f: &Formula, n: usize) -> Result<Vec<Interpretation>, EvalError> {
    Ok(classify(f, n)?.models)
}

/// Same truth table (`≡`).
pub fn equiv(f: &Formula, g: &Formula, n: usize) -> Result<bool, EvalError> {
    check_vars(f, n)?;
    check_vars(g, n)?;
    Ok(enumerate_interpretations(n)
        .iter()
        .all(|w| eval_unchecked(f, w.values()) == eval_unchecked(g, w.values())))
}

/// Every model of `f` is a model of `g` (`⊨`).
pub fn entails(f: &Formula, g: &Formula, n: usize) -> Result<bool, EvalError> {
    check_vars(f, n)?;
    check_vars(g, n)?;
    Ok(enumerate_interpretations(n).iter().all(|w| {
        eval_unchecked(f, w.values()) != TruthValue::True
            || eval_unchecked(g, w.values()) == TruthValue::True
    }))
}

/// Same set of models.
pub fn bi_entails(f: &Formula, g: &Formula, n: usize) -> Result<bool, EvalError> {
    Ok(entails(f, g, n)? && entails(g, f, n)?)
}
