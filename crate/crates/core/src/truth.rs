//! Truth values of the strong Kleene logic and the unary/binary tables over them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One of the three truth values, ordered `False < Half < True`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    False,
    Half,
    True,
}

pub const ALL_VALUES: [TruthValue; 3] = [TruthValue::False, TruthValue::Half, TruthValue::True];

impl TruthValue {
    #[inline]
    pub fn and(self, other: Self) -> Self {
        self.min(other)
    }

    #[inline]
    pub fn or(self, other: Self) -> Self {
        self.max(other)
    }

    #[inline]
    pub fn not(self) -> Self {
        match self {
            TruthValue::False => TruthValue::True,
            TruthValue::Half => TruthValue::Half,
            TruthValue::True => TruthValue::False,
        }
    }

    /// Kleene implication, `max(1 - p, q)`.
    #[inline]
    pub fn implies(self, other: Self) -> Self {
        self.not().or(other)
    }

    /// Lowers the value by one step, bottoming out at `False`.
    #[inline]
    pub fn dia1(self) -> Self {
        match self {
            TruthValue::True => TruthValue::Half,
            TruthValue::Half | TruthValue::False => TruthValue::False,
        }
    }

    /// Raises the value by one step, topping out at `True`.
    #[inline]
    pub fn box1(self) -> Self {
        match self {
            TruthValue::True | TruthValue::Half => TruthValue::True,
            TruthValue::False => TruthValue::Half,
        }
    }

    /// `True` only on `True`; collapses to a two-valued result.
    #[inline]
    pub fn dia2(self) -> Self {
        match self {
            TruthValue::True => TruthValue::True,
            TruthValue::Half | TruthValue::False => TruthValue::False,
        }
    }

    /// `False` only on `False`; collapses to a two-valued result.
    #[inline]
    pub fn box2(self) -> Self {
        match self {
            TruthValue::True | TruthValue::Half => TruthValue::True,
            TruthValue::False => TruthValue::False,
        }
    }

    /// Digit used by the canonical enumeration: `False = 0`, `Half = 1`, `True = 2`.
    #[inline]
    pub fn digit(self) -> usize {
        self as usize
    }

    pub fn from_digit(d: usize) -> Option<Self> {
        ALL_VALUES.get(d).copied()
    }

    /// Text symbol: `0`, `u` or `1`.
    pub fn symbol(self) -> char {
        match self {
            TruthValue::False => '0',
            TruthValue::Half => 'u',
            TruthValue::True => '1',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '0' => Some(TruthValue::False),
            'u' => Some(TruthValue::Half),
            '1' => Some(TruthValue::True),
            _ => None,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid truth value {0:?}, expected one of 0, u, 1")]
pub struct ParseTruthValueError(pub String);

impl FromStr for TruthValue {
    type Err = ParseTruthValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Self::from_symbol(c).ok_or_else(|| ParseTruthValueError(s.to_string())),
            _ => Err(ParseTruthValueError(s.to_string())),
        }
    }
}
