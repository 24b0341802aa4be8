//! Modal formulas: AST, parser, and canonical printer.
//!
//! Grammar (ASCII spellings so model files and scripts need no Unicode):
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?                  right-associative
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "[]" unary | "<>" unary | "?" unary | "#" unary | atom
//! atom    := IDENT | "T" | "F" | "(" formula ")"
//! IDENT   := [a-z][a-z0-9_]*
//! ```
//!
//! `[]` is necessity, `<>` possibility, `?` contingency, `#` non-contingency.
//! Precedence: unary > `&` > `|` > `->`.

use std::fmt;

use thiserror::Error;

/// A modal formula. Formulas are immutable values; `#φ` (non-contingency)
/// and `~(?φ)` are distinct trees with the same extension everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Diamond(Box<Formula>),
    Nabla(Box<Formula>),
    Delta(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Box::new(f))
    }

    pub fn diamond(f: Formula) -> Self {
        Formula::Diamond(Box::new(f))
    }

    pub fn nabla(f: Formula) -> Self {
        Formula::Nabla(Box::new(f))
    }

    pub fn delta(f: Formula) -> Self {
        Formula::Delta(Box::new(f))
    }

    pub fn parse(text: &str) -> Result<Formula, ParseError> {
        Parser::new(text).parse()
    }

    /// Nesting depth of modal operators; `[]`, `<>`, `?`, `#` each count one.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.modal_depth().max(r.modal_depth())
            }
            Formula::Box(f) | Formula::Diamond(f) | Formula::Nabla(f) | Formula::Delta(f) => {
                1 + f.modal_depth()
            }
        }
    }

    /// Rewrites `?φ` to `<>φ & <>~φ` and `#φ` to `~(<>φ & <>~φ)`. The result
    /// has no contingency operators and the same extension on every Kripke
    /// model; modal depth is preserved.
    pub fn nabla_to_box(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => self.clone(),
            Formula::Not(f) => Formula::not(f.nabla_to_box()),
            Formula::And(l, r) => Formula::and(l.nabla_to_box(), r.nabla_to_box()),
            Formula::Or(l, r) => Formula::or(l.nabla_to_box(), r.nabla_to_box()),
            Formula::Implies(l, r) => Formula::implies(l.nabla_to_box(), r.nabla_to_box()),
            Formula::Box(f) => Formula::boxed(f.nabla_to_box()),
            Formula::Diamond(f) => Formula::diamond(f.nabla_to_box()),
            Formula::Nabla(f) => {
                let f = f.nabla_to_box();
                Formula::and(Formula::diamond(f.clone()), Formula::diamond(Formula::not(f)))
            }
            Formula::Delta(f) => {
                let f = f.nabla_to_box();
                Formula::not(Formula::and(
                    Formula::diamond(f.clone()),
                    Formula::diamond(Formula::not(f)),
                ))
            }
        }
    }

    /// Atom names occurring in the formula, deduplicated, in first-use order.
    pub fn atoms(&self) -> Vec<String> {
        fn walk(f: &Formula, out: &mut Vec<String>) {
            match f {
                Formula::Atom(a) => {
                    if !out.iter().any(|x| x == a) {
                        out.push(a.clone());
                    }
                }
                Formula::Top | Formula::Bot => {}
                Formula::Not(g)
                | Formula::Box(g)
                | Formula::Diamond(g)
                | Formula::Nabla(g)
                | Formula::Delta(g) => walk(g, out),
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

/// Canonical printer: fully parenthesized, so parsing the output yields the
/// same tree regardless of precedence.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Top => write!(f, "T"),
            Formula::Bot => write!(f, "F"),
            Formula::Not(g) => write!(f, "~({g})"),
            Formula::Box(g) => write!(f, "[]({g})"),
            Formula::Diamond(g) => write!(f, "<>({g})"),
            Formula::Nabla(g) => write!(f, "?({g})"),
            Formula::Delta(g) => write!(f, "#({g})"),
            Formula::And(l, r) => write!(f, "({l} & {r})"),
            Formula::Or(l, r) => write!(f, "({l} | {r})"),
            Formula::Implies(l, r) => write!(f, "({l} -> {r})"),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: found {found}, expected {}", .expected.join(", "))]
pub struct ParseError {
    pub offset: usize,
    pub found: String,
    pub expected: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Top,
    Bot,
    Not,
    BoxOp,
    DiamondOp,
    NablaOp,
    DeltaOp,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("identifier '{s}'"),
            Token::Top => "'T'".into(),
            Token::Bot => "'F'".into(),
            Token::Not => "'~'".into(),
            Token::BoxOp => "'[]'".into(),
            Token::DiamondOp => "'<>'".into(),
            Token::NablaOp => "'?'".into(),
            Token::DeltaOp => "'#'".into(),
            Token::And => "'&'".into(),
            Token::Or => "'|'".into(),
            Token::Arrow => "'->'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::End => "end of input".into(),
        }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    current: Token,
    current_offset: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let mut p = Parser { text: text.as_bytes(), pos: 0, current: Token::End, current_offset: 0 };
        // Lexing errors surface on the first advance; stash them as a
        // poisoned token via parse().
        p.current_offset = p.pos;
        p
    }

    fn parse(mut self) -> Result<Formula, ParseError> {
        self.advance()?;
        let f = self.imp()?;
        if self.current != Token::End {
            return Err(self.unexpected(&["'&'", "'|'", "'->'", "end of input"]));
        }
        Ok(f)
    }

    fn advance(&mut self) -> Result<(), ParseError> {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.current_offset = self.pos;
        if self.pos >= self.text.len() {
            self.current = Token::End;
            return Ok(());
        }
        let b = self.text[self.pos];
        let tok = match b {
            b'~' => {
                self.pos += 1;
                Token::Not
            }
            b'?' => {
                self.pos += 1;
                Token::NablaOp
            }
            b'#' => {
                self.pos += 1;
                Token::DeltaOp
            }
            b'&' => {
                self.pos += 1;
                Token::And
            }
            b'|' => {
                self.pos += 1;
                Token::Or
            }
            b'(' => {
                self.pos += 1;
                Token::LParen
            }
            b')' => {
                self.pos += 1;
                Token::RParen
            }
            b'T' => {
                self.pos += 1;
                Token::Top
            }
            b'F' => {
                self.pos += 1;
                Token::Bot
            }
            b'[' => {
                self.expect_byte(b']', "'[]'")?;
                Token::BoxOp
            }
            b'<' => {
                self.expect_byte(b'>', "'<>'")?;
                Token::DiamondOp
            }
            b'-' => {
                self.expect_byte(b'>', "'->'")?;
                Token::Arrow
            }
            b'a'..=b'z' => {
                let start = self.pos;
                while self.pos < self.text.len()
                    && matches!(self.text[self.pos], b'a'..=b'z' | b'0'..=b'9' | b'_')
                {
                    self.pos += 1;
                }
                Token::Ident(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
            }
            other => {
                return Err(ParseError {
                    offset: self.pos,
                    found: format!("'{}'", other as char),
                    expected: vec!["formula"],
                })
            }
        };
        self.current = tok;
        Ok(())
    }

    fn expect_byte(&mut self, second: u8, what: &'static str) -> Result<(), ParseError> {
        if self.pos + 1 < self.text.len() && self.text[self.pos + 1] == second {
            self.pos += 2;
            Ok(())
        } else {
            let found = if self.pos + 1 < self.text.len() {
                format!("'{}'", self.text[self.pos + 1] as char)
            } else {
                "end of input".into()
            };
            Err(ParseError { offset: self.pos + 1, found, expected: vec![what] })
        }
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.current_offset,
            found: self.current.describe(),
            expected: expected.to_vec(),
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.current == Token::Arrow {
            self.advance()?;
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.current == Token::Or {
            self.advance()?;
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.current == Token::And {
            self.advance()?;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap = match &self.current {
            Token::Not => Some(Formula::not as fn(Formula) -> Formula),
            Token::BoxOp => Some(Formula::boxed as fn(Formula) -> Formula),
            Token::DiamondOp => Some(Formula::diamond as fn(Formula) -> Formula),
            Token::NablaOp => Some(Formula::nabla as fn(Formula) -> Formula),
            Token::DeltaOp => Some(Formula::delta as fn(Formula) -> Formula),
            _ => None,
        };
        if let Some(wrap) = wrap {
            self.advance()?;
            let inner = self.unary()?;
            return Ok(wrap(inner));
        }
        match std::mem::replace(&mut self.current, Token::End) {
            Token::Ident(name) => {
                self.advance()?;
                Ok(Formula::Atom(name))
            }
            Token::Top => {
                self.advance()?;
                Ok(Formula::Top)
            }
            Token::Bot => {
                self.advance()?;
                Ok(Formula::Bot)
            }
            Token::LParen => {
                self.advance()?;
                let f = self.imp()?;
                if self.current != Token::RParen {
                    return Err(self.unexpected(&["')'"]));
                }
                self.advance()?;
                Ok(f)
            }
            tok => {
                self.current = tok;
                Err(self.unexpected(&[
                    "identifier",
                    "'T'",
                    "'F'",
                    "'('",
                    "'~'",
                    "'[]'",
                    "'<>'",
                    "'?'",
                    "'#'",
                ]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn parses_spec_examples() {
        assert_eq!(
            p("~(p & []q)"),
            Formula::not(Formula::and(Formula::atom("p"), Formula::boxed(Formula::atom("q"))))
        );
        assert_eq!(
            p("?p -> #p"),
            Formula::implies(
                Formula::nabla(Formula::atom("p")),
                Formula::delta(Formula::atom("p"))
            )
        );
        // & binds tighter than |
        assert_eq!(
            p("p & q | r"),
            Formula::or(
                Formula::and(Formula::atom("p"), Formula::atom("q")),
                Formula::atom("r")
            )
        );
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            p("p -> q -> r"),
            Formula::implies(
                Formula::atom("p"),
                Formula::implies(Formula::atom("q"), Formula::atom("r"))
            )
        );
    }

    #[test]
    fn printer_matches_spec_examples() {
        assert_eq!(Formula::atom("p").to_string(), "p");
        assert_eq!(Formula::nabla(Formula::atom("p")).to_string(), "?(p)");
        assert_eq!(
            Formula::and(Formula::atom("p"), Formula::boxed(Formula::atom("q"))).to_string(),
            "(p & [](q))"
        );
    }

    #[test]
    fn parse_error_carries_offset_and_expectations() {
        let err = Formula::parse("p &").unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(err.expected.contains(&"identifier"));
        let err = Formula::parse("p @ q").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = Formula::parse("[p").unwrap_err();
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(p("  ?  p->#p "), p("?p->#p"));
    }

    #[test]
    fn modal_depth_counts_all_modalities() {
        assert_eq!(p("p").modal_depth(), 0);
        assert_eq!(p("?p").modal_depth(), 1);
        assert_eq!(p("[]?p").modal_depth(), 2);
        assert_eq!(p("?p & []#[]q").modal_depth(), 3);
    }

    #[test]
    fn nabla_to_box_rewrites() {
        let nabla_p = p("?p");
        assert_eq!(nabla_p.nabla_to_box(), p("<>p & <>~p"));
        assert_eq!(p("p").nabla_to_box(), p("p"));
        assert_eq!(p("#p").nabla_to_box(), p("~(<>p & <>~p)"));
        assert_eq!(p("??p").nabla_to_box().modal_depth(), 2);
    }

    #[test]
    fn keywords_do_not_eat_identifiers() {
        // 'T'/'F' are uppercase; idents are lowercase, so 't' is an atom.
        assert_eq!(p("t"), Formula::atom("t"));
        assert_eq!(p("T"), Formula::Top);
        assert_eq!(p("f_1"), Formula::atom("f_1"));
    }
}
