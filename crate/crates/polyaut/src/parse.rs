//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' unary)?          right-associative
//! primary := number ('/' number)? (ident | '(')?   coefficient, optionally
//!                                                  followed by an implicit factor
//!          | ident | '(' expr ')'
//! ```
//!
//! Exponents must evaluate to non-negative integer constants. Juxtaposition
//! is only allowed directly after a numeric coefficient (`2X`, `3(X+Y)`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use polyaut_core::{Polynomial, Rational};

const MAX_EXPONENT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownIdentifier(String),
    ZeroDenominator,
    /// Exponent is negative, fractional, non-constant or too large.
    BadExponent(String),
}

/// A parse failure at a 1-based character column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'")?,
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected {t}")?,
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input")?,
            ParseErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier {name}")?,
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator")?,
            ParseErrorKind::BadExponent(why) => write!(f, "bad exponent: {why}")?,
        }
        write!(f, " at column {}", self.column)
    }
}

/// Names a parser accepts for each variable index.
#[derive(Debug, Clone)]
pub struct VarTable {
    arity: usize,
    names: Vec<(String, usize)>,
}

impl VarTable {
    /// Exactly the given names, in order.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        VarTable {
            arity: names.len(),
            names: names.iter().enumerate().map(|(i, n)| (n.as_ref().to_string(), i)).collect(),
        }
    }

    /// `X1 .. Xm`, plus the `X, Y` aliases when `m = 2`.
    pub fn standard(arity: usize) -> Self {
        let mut names: Vec<(String, usize)> = (0..arity).map(|i| (format!("X{}", i + 1), i)).collect();
        if arity == 2 {
            names.push(("X".into(), 0));
            names.push(("Y".into(), 1));
        }
        VarTable { arity, names }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().find(|(n, _)| n == name).map(|&(_, i)| i)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier {s}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Num(digits.parse().expect("ascii digits")), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(ParseError { kind: ParseErrorKind::UnexpectedChar(other), column: col }),
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a VarTable,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self) -> ParseError {
        let kind = match self.peek() {
            Tok::End => ParseErrorKind::UnexpectedEnd,
            t => ParseErrorKind::UnexpectedToken(t.describe()),
        };
        ParseError { kind, column: self.column() }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let column = self.column();
        let exp = self.unary()?;
        let bad = |why: &str| ParseError { kind: ParseErrorKind::BadExponent(why.into()), column };
        let value = exp.as_constant().ok_or_else(|| bad("not a constant"))?;
        if !value.is_integer() {
            return Err(bad("not an integer"));
        }
        if value.is_negative() {
            return Err(bad("negative"));
        }
        let e = value
            .to_integer()
            .to_u32()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| bad("too large"))?;
        Ok(base.pow(e))
    }

    fn primary(&mut self) -> Result<Polynomial, ParseError> {
        let arity = self.vars.arity();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                let mut value = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let column = self.column();
                    match self.bump().0 {
                        Tok::Num(d) if d.is_zero() => {
                            return Err(ParseError { kind: ParseErrorKind::ZeroDenominator, column })
                        }
                        Tok::Num(d) => value /= Rational::from_integer(d),
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected());
                        }
                    }
                }
                let coeff = Polynomial::constant(arity, value);
                match self.peek() {
                    Tok::Ident(_) | Tok::LParen => Ok(&coeff * &self.power()?),
                    _ => Ok(coeff),
                }
            }
            Tok::Ident(name) => {
                let column = self.column();
                let index = self.vars.lookup(&name).ok_or(ParseError {
                    kind: ParseErrorKind::UnknownIdentifier(name),
                    column,
                })?;
                self.bump();
                Ok(Polynomial::var(arity, index))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected());
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses `text` as a polynomial in the variables of `vars`.
pub fn parse_polynomial(text: &str, vars: &VarTable) -> Result<Polynomial, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, vars };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected());
    }
    Ok(poly)
}

/// Canonical text of `p` with the default variable names.
pub fn print_polynomial(p: &Polynomial) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VarTable {
        VarTable::standard(2)
    }

    fn p(text: &str) -> Polynomial {
        parse_polynomial(text, &xy()).unwrap()
    }

    fn err(text: &str) -> ParseError {
        parse_polynomial(text, &xy()).unwrap_err()
    }

    #[test]
    fn basic_expressions() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        assert_eq!(p("X + Y^2"), &x + &y.pow(2));
        assert_eq!(p("X1 + X2^2"), p("X + Y^2"));
        assert_eq!(p("-X^2"), -x.pow(2));
        assert_eq!(p("2^3"), Polynomial::from_int(2, 8));
        assert_eq!(p("X^2^2"), x.pow(4));
        assert_eq!(p("2X + 3(X - Y)"), p("5*X - 3*Y"));
        assert_eq!(p("1/2*X"), p("X * 1/2"));
        assert_eq!(p("0"), Polynomial::zero(2));
        assert_eq!(p("X^0"), Polynomial::one(2));
    }

    #[test]
    fn skew_component() {
        let got = p("X + 1/2*(2*X - 3*Y)^2");
        assert_eq!(got.to_string(), "X + 2*X^2 - 6*X*Y + 9/2*Y^2");
    }

    #[test]
    fn error_positions() {
        let e = err("X + Z");
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("Z".into()));
        assert_eq!(e.column, 5);
        assert_eq!(e.to_string(), "unknown identifier Z at column 5");

        assert_eq!(err("X Y").kind, ParseErrorKind::UnexpectedToken("identifier Y".into()));
        assert_eq!(err("XY").kind, ParseErrorKind::UnknownIdentifier("XY".into()));
        assert_eq!(err("X +").kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(err("(X + Y").column, 7);
        assert_eq!(err("X $ 1").kind, ParseErrorKind::UnexpectedChar('$'));
        assert_eq!(err("1/0").kind, ParseErrorKind::ZeroDenominator);
        assert_eq!(err("X/Y").kind, ParseErrorKind::UnexpectedToken("'/'".into()));
    }

    #[test]
    fn exponent_errors() {
        let e = err("X^-1");
        assert_eq!(e.kind, ParseErrorKind::BadExponent("negative".into()));
        assert_eq!(e.column, 3);
        assert_eq!(err("X^(1/2)").kind, ParseErrorKind::BadExponent("not an integer".into()));
        assert_eq!(err("X^Y").kind, ParseErrorKind::BadExponent("not a constant".into()));
        assert_eq!(err("X^100000").kind, ParseErrorKind::BadExponent("too large".into()));
    }

    #[test]
    fn printing() {
        assert_eq!(print_polynomial(&p("Y^2 + X")), "X + Y^2");
        assert_eq!(print_polynomial(&p("0")), "0");
        assert_eq!(print_polynomial(&p("-1/2*(2*X - 3*Y)^2")), "-2*X^2 + 6*X*Y - 9/2*Y^2");
    }
}
