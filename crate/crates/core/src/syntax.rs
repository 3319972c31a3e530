//! Formula trees, the text grammar and a minimally parenthesized printer.
//!
//! Grammar, loosest to tightest:
//!
//! ```text
//! formula := implies
//! implies := or ( "->" implies )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := ( "~" | "<>1" | "[]1" | "<>2" | "[]2" ) unary | atom
//! atom    := "bot" | "x" DIGITS | "(" formula ")"
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Bot,
    Var(usize),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    Dia1(Arc<Formula>),
    Box1(Arc<Formula>),
    Dia2(Arc<Formula>),
    Box2(Arc<Formula>),
}

impl Formula {
    pub fn var(index: usize) -> Self {
        Formula::Var(index)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Arc::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn dia1(f: Formula) -> Self {
        Formula::Dia1(Arc::new(f))
    }

    pub fn box1(f: Formula) -> Self {
        Formula::Box1(Arc::new(f))
    }

    pub fn dia2(f: Formula) -> Self {
        Formula::Dia2(Arc::new(f))
    }

    pub fn box2(f: Formula) -> Self {
        Formula::Box2(Arc::new(f))
    }

    /// `□₁f ∧ □₁¬f`: evaluates to 1 exactly where `f` evaluates to 1/2.
    pub fn undetermined(f: Formula) -> Self {
        Formula::and(Formula::box1(f.clone()), Formula::box1(Formula::not(f)))
    }

    /// Left-nested conjunction; `None` when the iterator is empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Formula::and)
    }

    /// Left-nested disjunction; the empty disjunction is `Bot`.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bot)
    }

    /// Largest variable index occurring in the formula.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Formula::Bot => None,
            Formula::Var(i) => Some(*i),
            Formula::Not(f)
            | Formula::Dia1(f)
            | Formula::Box1(f)
            | Formula::Dia2(f)
            | Formula::Box2(f) => f.max_var(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                match (a.max_var(), b.max_var()) {
                    (Some(x), Some(y)) => Some(x.max(y)),
                    (x, y) => x.or(y),
                }
            }
        }
    }

    /// A formula is well-formed for `n` variables iff every index is below `n`.
    pub fn is_well_formed(&self, n: usize) -> bool {
        self.max_var().map_or(true, |m| m < n)
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Bot | Formula::Var(_) => 1,
            Formula::Not(f)
            | Formula::Dia1(f)
            | Formula::Box1(f)
            | Formula::Dia2(f)
            | Formula::Box2(f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Whether the formula uses any of the four modalities.
    pub fn is_modal(&self) -> bool {
        match self {
            Formula::Bot | Formula::Var(_) => false,
            Formula::Dia1(_) | Formula::Box1(_) | Formula::Dia2(_) | Formula::Box2(_) => true,
            Formula::Not(f) => f.is_modal(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_modal() || b.is_modal()
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    text.parse()
}

pub fn render(f: &Formula) -> String {
    f.to_string()
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(out: &mut fmt::Formatter<'_>, f: &Formula, parens: bool) -> fmt::Result {
            if parens {
                write!(out, "({f})")
            } else {
                write!(out, "{f}")
            }
        }

        let prec = self.precedence();
        match self {
            Formula::Bot => write!(out, "bot"),
            Formula::Var(i) => write!(out, "x{i}"),
            Formula::Not(f) => {
                write!(out, "~")?;
                child(out, f, f.precedence() < 4)
            }
            Formula::Dia1(f) | Formula::Box1(f) | Formula::Dia2(f) | Formula::Box2(f) => {
                let op = match self {
                    Formula::Dia1(_) => "<>1",
                    Formula::Box1(_) => "[]1",
                    Formula::Dia2(_) => "<>2",
                    _ => "[]2",
                };
                write!(out, "{op} ")?;
                child(out, f, f.precedence() < 4)
            }
            // & and | are left-associative: the right operand needs parentheses at equal precedence.
            Formula::And(a, b) | Formula::Or(a, b) => {
                let op = if matches!(self, Formula::And(..)) { "&" } else { "|" };
                child(out, a, a.precedence() < prec)?;
                write!(out, " {op} ")?;
                child(out, b, b.precedence() <= prec)
            }
            Formula::Implies(a, b) => {
                child(out, a, a.precedence() <= prec)?;
                write!(out, " -> ")?;
                child(out, b, b.precedence() < prec)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: unexpected character {found:?}")]
    UnexpectedChar { pos: usize, found: char },
    #[error("syntax error at position {pos}: expected {expected}, found {found}")]
    UnexpectedToken {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("syntax error at end of input: expected {expected}")]
    UnexpectedEnd { pos: usize, expected: &'static str },
    #[error("syntax error at position {pos}: variable index in {word:?} is not a decimal integer")]
    BadVariable { pos: usize, word: String },
    #[error("syntax error at position {pos}: unknown identifier {word:?}")]
    UnknownIdent { pos: usize, word: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnexpectedChar { pos, .. }
            | ParseError::UnexpectedToken { pos, .. }
            | ParseError::UnexpectedEnd { pos, .. }
            | ParseError::BadVariable { pos, .. }
            | ParseError::UnknownIdent { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Bot,
    Var(usize),
    Not,
    And,
    Or,
    Arrow,
    Dia1,
    Box1,
    Dia2,
    Box2,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Bot => write!(f, "'bot'"),
            Token::Var(i) => write!(f, "'x{i}'"),
            Token::Not => write!(f, "'~'"),
            Token::And => write!(f, "'&'"),
            Token::Or => write!(f, "'|'"),
            Token::Arrow => write!(f, "'->'"),
            Token::Dia1 => write!(f, "'<>1'"),
            Token::Box1 => write!(f, "'[]1'"),
            Token::Dia2 => write!(f, "'<>2'"),
            Token::Box2 => write!(f, "'[]2'"),
            Token::LParen => write!(f, "'('"),
            Token::RParen => write!(f, "')'"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let rest = &text[pos..];
        let fixed = [
            ("<>1", Token::Dia1),
            ("[]1", Token::Box1),
            ("<>2", Token::Dia2),
            ("[]2", Token::Box2),
            ("->", Token::Arrow),
            ("~", Token::Not),
            ("&", Token::And),
            ("|", Token::Or),
            ("(", Token::LParen),
            (")", Token::RParen),
        ];
        if let Some((sym, tok)) = fixed.iter().find(|(sym, _)| rest.starts_with(sym)) {
            tokens.push((pos, *tok));
            pos += sym.len();
            continue;
        }
        if c.is_ascii_alphanumeric() || c == b'_' {
            let len = rest
                .bytes()
                .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                .count();
            let word = &rest[..len];
            let tok = if word == "bot" {
                Token::Bot
            } else if let Some(digits) = word.strip_prefix('x') {
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(ParseError::BadVariable { pos, word: word.to_string() });
                }
                let index = digits
                    .parse()
                    .map_err(|_| ParseError::BadVariable { pos, word: word.to_string() })?;
                Token::Var(index)
            } else {
                return Err(ParseError::UnknownIdent { pos, word: word.to_string() });
            };
            tokens.push((pos, tok));
            pos += len;
            continue;
        }
        let found = rest.chars().next().unwrap_or_default();
        return Err(ParseError::UnexpectedChar { pos, found });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.cursor).map(|(_, t)| *t)
    }

    fn bump(&mut self) {
        self.cursor += 1;
    }

    fn error(&self, expected: &'static str) -> ParseError {
        match self.tokens.get(self.cursor) {
            Some((pos, tok)) => ParseError::UnexpectedToken {
                pos: *pos,
                expected,
                found: tok.to_string(),
            },
            None => ParseError::UnexpectedEnd { pos: self.end, expected },
        }
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.peek() == Some(Token::Arrow) {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(Token::Or) {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(Token::And) {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Some(Token::Not) => Formula::not,
            Some(Token::Dia1) => Formula::dia1,
            Some(Token::Box1) => Formula::box1,
            Some(Token::Dia2) => Formula::dia2,
            Some(Token::Box2) => Formula::box2,
            _ => return self.atom(),
        };
        self.bump();
        Ok(wrap(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Bot) => {
                self.bump();
                Ok(Formula::Bot)
            }
            Some(Token::Var(i)) => {
                self.bump();
                Ok(Formula::Var(i))
            }
            Some(Token::LParen) => {
                self.bump();
                let inner = self.implies()?;
                if self.peek() != Some(Token::RParen) {
                    return Err(self.error("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("a formula")),
        }
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser {
            tokens: lex(text)?,
            cursor: 0,
            end: text.len(),
        };
        let f = parser.implies()?;
        if parser.cursor != parser.tokens.len() {
            return Err(parser.error("end of input"));
        }
        Ok(f)
    }
}
