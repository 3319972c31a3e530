//! Three-level rankings over interpretations and their two-way translation to formulas.
//!
//! A formula `f` ranks an interpretation at level 1, 2 or 3 when `f` evaluates
//! there to 1, 1/2 or 0 respectively. Conversely every ranking is the ranking of
//! `¬(◊₁ψ₂ ∨ ◊₂ψ₃)`, where `ψⱼ` has exactly the interpretations of level `j` as
//! models.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::semantics::{
    enumerate_interpretations, eval_unchecked, interpretation_count, EvalError, Interpretation,
};
use crate::syntax::Formula;
use crate::truth::TruthValue;

/// Plausibility level; `One` is the most plausible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    One = 1,
    Two = 2,
    Three = 3,
}

pub const ALL_LEVELS: [Level; 3] = [Level::One, Level::Two, Level::Three];

impl Level {
    pub fn from_truth(v: TruthValue) -> Self {
        match v {
            TruthValue::True => Level::One,
            TruthValue::Half => Level::Two,
            TruthValue::False => Level::Three,
        }
    }

    pub fn to_truth(self) -> TruthValue {
        match self {
            Level::One => TruthValue::True,
            Level::Two => TruthValue::Half,
            Level::Three => TruthValue::False,
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Level::One),
            2 => Some(Level::Two),
            3 => Some(Level::Three),
            _ => None,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        c.to_digit(10).and_then(|d| Self::from_number(d as u8))
    }

    pub fn to_char(self) -> char {
        (b'0' + self.number()) as char
    }

    /// Swaps 1 and 3.
    pub fn neg(self) -> Self {
        match self {
            Level::One => Level::Three,
            Level::Two => Level::Two,
            Level::Three => Level::One,
        }
    }

    /// Promotes by one level.
    pub fn box1(self) -> Self {
        match self {
            Level::One | Level::Two => Level::One,
            Level::Three => Level::Two,
        }
    }

    /// Promotes level 2 to level 1.
    pub fn box2(self) -> Self {
        match self {
            Level::One | Level::Two => Level::One,
            Level::Three => Level::Three,
        }
    }

    pub fn join(self, other: Self) -> Self {
        self.min(other)
    }

    pub fn meet(self, other: Self) -> Self {
        self.max(other)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankingError {
    #[error("ranking over {n} variable(s) needs {expected} levels, got {got}")]
    WrongLength { n: usize, expected: usize, got: usize },
    #[error("ranking serialization length {0} is not a power of three")]
    NotPowerOfThree(usize),
    #[error("invalid level {0:?}, expected 1, 2 or 3")]
    BadLevel(String),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("interpretation {0} is listed more than once")]
    Duplicate(String),
    #[error("interpretation {0} is missing")]
    Missing(String),
    #[error("rankings are over different variable counts ({0} and {1})")]
    Mismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaptureError {
    #[error("capture formulas need at least one variable")]
    NoVariables,
    #[error("interpretation {found} does not have {n} variable(s)")]
    WidthMismatch { n: usize, found: String },
}

const MAX_FILE_VARS: usize = 12;

/// Total map from the `3^n` interpretations of `n` variables to levels,
/// stored in canonical interpretation order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ranking {
    n: usize,
    levels: Vec<Level>,
}

impl Ranking {
    pub fn new(n: usize, levels: Vec<Level>) -> Result<Self, RankingError> {
        let expected = interpretation_count(n);
        if levels.len() != expected {
            return Err(RankingError::WrongLength { n, expected, got: levels.len() });
        }
        Ok(Ranking { n, levels })
    }

    pub fn constant(n: usize, level: Level) -> Self {
        Ranking { n, levels: vec![level; interpretation_count(n)] }
    }

    /// The ranking whose serialization, read as a base-3 numeral with digit
    /// `level - 1`, equals `index`. Indices run over `0..ranking_count(n)`.
    pub fn from_index(n: usize, mut index: u64) -> Self {
        let mut levels = vec![Level::One; interpretation_count(n)];
        for slot in levels.iter_mut().rev() {
            *slot = ALL_LEVELS[(index % 3) as usize];
            index /= 3;
        }
        Ranking { n, levels }
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, w: &Interpretation) -> Level {
        self.levels[w.index()]
    }

    pub fn level_at(&self, index: usize) -> Level {
        self.levels[index]
    }

    /// Interpretations at `level`, in canonical order.
    pub fn block(&self, level: Level) -> Vec<Interpretation> {
        self.levels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == level)
            .map(|(i, _)| Interpretation::from_index(self.n, i))
            .collect()
    }

    pub fn block_indices(&self, level: Level) -> BTreeSet<usize> {
        self.levels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == level)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn map(&self, f: impl Fn(Level) -> Level) -> Self {
        Ranking { n: self.n, levels: self.levels.iter().map(|l| f(*l)).collect() }
    }

    pub fn zip_with(
        &self,
        other: &Ranking,
        f: impl Fn(Level, Level) -> Level,
    ) -> Result<Self, RankingError> {
        if self.n != other.n {
            return Err(RankingError::Mismatch(self.n, other.n));
        }
        let levels = self.levels.iter().zip(&other.levels).map(|(a, b)| f(*a, *b)).collect();
        Ok(Ranking { n: self.n, levels })
    }

    /// Ranking file text: one `d0 d1 ... : L` line per interpretation.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for (i, level) in self.levels.iter().enumerate() {
            let digits = Interpretation::from_index(self.n, i).digits();
            if digits.is_empty() {
                out.push_str(&format!(": {level}\n"));
            } else {
                out.push_str(&format!("{digits} : {level}\n"));
            }
        }
        out
    }

    /// Parses the ranking file format. Lines may come in any order; blank lines
    /// and lines starting with `#` are skipped. Every interpretation must occur
    /// exactly once.
    pub fn from_file_str(text: &str) -> Result<Self, RankingError> {
        let mut n: Option<usize> = None;
        let mut slots: Vec<Option<Level>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line.split_once(':').ok_or_else(|| RankingError::Format {
                line: lineno,
                msg: "expected `digits : level`".into(),
            })?;
            let values = lhs
                .split_whitespace()
                .map(|d| d.parse::<TruthValue>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| RankingError::Format { line: lineno, msg: e.to_string() })?;
            let level = rhs
                .trim()
                .parse::<u8>()
                .ok()
                .and_then(Level::from_number)
                .ok_or_else(|| RankingError::BadLevel(rhs.trim().to_string()))?;
            if n.is_none() && values.len() > MAX_FILE_VARS {
                return Err(RankingError::Format {
                    line: lineno,
                    msg: format!("more than {MAX_FILE_VARS} variables"),
                });
            }
            let width = *n.get_or_insert_with(|| {
                slots = vec![None; interpretation_count(values.len())];
                values.len()
            });
            if values.len() != width {
                return Err(RankingError::Format {
                    line: lineno,
                    msg: format!("expected {width} digit(s), found {}", values.len()),
                });
            }
            let w = Interpretation::new(values);
            let slot = &mut slots[w.index()];
            if slot.is_some() {
                return Err(RankingError::Duplicate(w.digits()));
            }
            *slot = Some(level);
        }
        let n = n.ok_or(RankingError::Format { line: 0, msg: "empty ranking".into() })?;
        let levels = slots
            .iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| RankingError::Missing(Interpretation::from_index(n, i).digits())))
            .collect::<Result<Vec<_>, _>>()?;
        Ranking::new(n, levels)
    }
}

/// Serialization: one level digit per interpretation in canonical order.
impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.levels {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Ranking {
    type Err = RankingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let levels = s
            .chars()
            .map(|c| Level::from_char(c).ok_or_else(|| RankingError::BadLevel(c.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut n = 0;
        while interpretation_count(n) < levels.len() {
            n += 1;
        }
        if interpretation_count(n) != levels.len() {
            return Err(RankingError::NotPowerOfThree(levels.len()));
        }
        Ranking::new(n, levels)
    }
}

/// Number of distinct rankings over `n` variables, `3^(3^n)`; `None` on overflow.
pub fn ranking_count(n: usize) -> Option<u64> {
    3u64.checked_pow(u32::try_from(interpretation_count(n)).ok()?)
}

/// Every ranking over `n` variables, in serialization order. Only practical for `n <= 2`.
pub fn all_rankings(n: usize) -> impl Iterator<Item = Ranking> {
    let count = ranking_count(n).expect("ranking space too large to enumerate");
    (0..count).map(move |i| Ranking::from_index(n, i))
}

pub fn ranking_of_formula(f: &Formula, n: usize) -> Result<Ranking, EvalError> {
    if let Some(index) = f.max_var().filter(|i| *i >= n) {
        return Err(EvalError::VarOutOfRange { index, n });
    }
    let levels = enumerate_interpretations(n)
        .iter()
        .map(|w| Level::from_truth(eval_unchecked(f, w.values())))
        .collect();
    Ok(Ranking { n, levels })
}

/// A conjunction whose only model is `w`.
pub fn capture_valuation(w: &Interpretation) -> Result<Formula, CaptureError> {
    let clauses = w.values().iter().enumerate().map(|(i, v)| {
        let x = Formula::var(i);
        match v {
            TruthValue::True => x,
            TruthValue::False => Formula::not(x),
            TruthValue::Half => Formula::undetermined(x),
        }
    });
    Formula::conjunction(clauses).ok_or(CaptureError::NoVariables)
}

/// A disjunction whose models are exactly `set`; `Bot` for the empty set.
pub fn capture_set<'a, I>(set: I, n: usize) -> Result<Formula, CaptureError>
where
    I: IntoIterator<Item = &'a Interpretation>,
{
    if n == 0 {
        return Err(CaptureError::NoVariables);
    }
    let captures = set
        .into_iter()
        .map(|w| {
            if w.len() != n {
                return Err(CaptureError::WidthMismatch { n, found: w.to_string() });
            }
            capture_valuation(w)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Formula::disjunction(captures))
}

/// The formula `¬(◊₁ψ₂ ∨ ◊₂ψ₃)` whose ranking is `r`.
pub fn formula_of_ranking(r: &Ranking) -> Result<Formula, CaptureError> {
    let middle = capture_set(&r.block(Level::Two), r.n)?;
    let bottom = capture_set(&r.block(Level::Three), r.n)?;
    Ok(Formula::not(Formula::or(Formula::dia1(middle), Formula::dia2(bottom))))
}
