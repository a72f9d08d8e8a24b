//! Formulas of the one-generator involutive-monoid language.
//!
//! The core alphabet is `0`, `X`, postfix `*`, binary `⊕` (written `+` in
//! ASCII), and parentheses. Lattice connectives and scalar multiples are
//! surface sugar, expanded before an AST is built:
//!
//! * `(a|b)` stands for `((a*⊕b)*⊕b)`, the join,
//! * `(a&b)` stands for the star-dual meet `((a**⊕b*)*⊕b*)*`,
//! * `k.a` stands for the left-associated `k`-fold sum `(…(a⊕a)…⊕a)`.
//!
//! `length` counts every character of the canonical core string, parentheses
//! included, so `length((φ⊕ψ)) = length(φ) + length(ψ) + 3` and
//! `length(φ*) = length(φ) + 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// The constant false element.
    Zero,
    /// The single generator `X`.
    Gen,
    /// Involution `φ*`.
    Star(Box<Formula>),
    /// Truncated sum `(φ⊕ψ)`.
    Plus(Box<Formula>, Box<Formula>),
}

/// Symbol set used when rendering a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintStyle {
    /// `+` for the truncated sum.
    Ascii,
    /// `⊕` for the truncated sum.
    Unicode,
}

impl Formula {
    pub fn star(f: Formula) -> Formula {
        Formula::Star(Box::new(f))
    }

    pub fn plus(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Plus(Box::new(lhs), Box::new(rhs))
    }

    /// Join `(a|b) = (a*⊕b)*⊕b`.
    pub fn join(lhs: Formula, rhs: Formula) -> Formula {
        Formula::plus(
            Formula::star(Formula::plus(Formula::star(lhs), rhs.clone())),
            rhs,
        )
    }

    /// Meet, the star dual of the join: `(a&b) = ((a*|b*))*`.
    pub fn meet(lhs: Formula, rhs: Formula) -> Formula {
        Formula::star(Formula::join(Formula::star(lhs), Formula::star(rhs)))
    }

    /// Strong conjunction `a⊙b = (a*⊕b*)*`, pointwise `max(0, a+b-1)`.
    pub fn odot(lhs: Formula, rhs: Formula) -> Formula {
        Formula::star(Formula::plus(Formula::star(lhs), Formula::star(rhs)))
    }

    /// Truncated difference `a⊖b = (a*⊕b)*`, pointwise `max(0, a-b)`.
    pub fn ominus(lhs: Formula, rhs: Formula) -> Formula {
        Formula::star(Formula::plus(Formula::star(lhs), rhs))
    }

    /// Distance formula `((φ*⊕ψ)*⊕(ψ*⊕φ)*)`, whose semantics is `|f_φ - f_ψ|`.
    pub fn distance(lhs: &Formula, rhs: &Formula) -> Formula {
        Formula::plus(
            Formula::ominus(lhs.clone(), rhs.clone()),
            Formula::ominus(rhs.clone(), lhs.clone()),
        )
    }

    /// Left-associated `n`-fold truncated sum of `f`. Rejects `n == 0`.
    pub fn scalar_multiple(n: u64, f: &Formula) -> Result<Formula> {
        if n == 0 {
            return Err(Error::ZeroScalar);
        }
        let mut acc = f.clone();
        for _ in 1..n {
            acc = Formula::plus(acc, f.clone());
        }
        Ok(acc)
    }

    /// Character count of the canonical core string, parentheses included.
    pub fn length(&self) -> u64 {
        match self {
            Formula::Zero | Formula::Gen => 1,
            Formula::Star(f) => f.length() + 1,
            Formula::Plus(l, r) => l.length() + r.length() + 3,
        }
    }

    pub fn to_text(&self, style: PrintStyle) -> String {
        let mut out = String::new();
        self.write_into(&mut out, style);
        out
    }

    /// Canonical ASCII core string.
    pub fn print(&self) -> String {
        self.to_text(PrintStyle::Ascii)
    }

    fn write_into(&self, out: &mut String, style: PrintStyle) {
        match self {
            Formula::Zero => out.push('0'),
            Formula::Gen => out.push('X'),
            Formula::Star(f) => {
                f.write_into(out, style);
                out.push('*');
            }
            Formula::Plus(l, r) => {
                out.push('(');
                l.write_into(out, style);
                out.push(match style {
                    PrintStyle::Ascii => '+',
                    PrintStyle::Unicode => '⊕',
                });
                r.write_into(out, style);
                out.push(')');
            }
        }
    }

    /// Parses core syntax plus sugar; positions in errors are character
    /// offsets into the input.
    pub fn parse(text: &str) -> Result<Formula> {
        let mut parser = Parser {
            chars: text.chars().collect(),
            pos: 0,
        };
        let formula = parser.formula()?;
        parser.skip_ws();
        match parser.peek() {
            None => Ok(formula),
            Some(c) => Err(parser.error(format!("unexpected {c:?} after formula"))),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        Formula::parse(s)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: String) -> Error {
        Error::Parse {
            position: self.pos,
            message,
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut node = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                node = Formula::star(node);
            } else {
                return Ok(node);
            }
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        self.skip_ws();
        match self.peek() {
            Some('X') => {
                self.pos += 1;
                Ok(Formula::Gen)
            }
            Some('(') => {
                self.pos += 1;
                let lhs = self.formula()?;
                self.skip_ws();
                let op = match self.peek() {
                    Some(c @ ('+' | '⊕' | '|' | '&')) => {
                        self.pos += 1;
                        c
                    }
                    // grouping parentheses around a single formula
                    Some(')') => {
                        self.pos += 1;
                        return Ok(lhs);
                    }
                    Some(c) => {
                        return Err(
                            self.error(format!("expected '+', '⊕', '|' or '&', found {c:?}"))
                        )
                    }
                    None => {
                        return Err(self.error("expected a connective, found end of input".into()))
                    }
                };
                let rhs = self.formula()?;
                self.skip_ws();
                match self.peek() {
                    Some(')') => self.pos += 1,
                    Some(c) => return Err(self.error(format!("expected ')', found {c:?}"))),
                    None => return Err(self.error("expected ')', found end of input".into())),
                }
                match op {
                    '+' | '⊕' => Ok(Formula::plus(lhs, rhs)),
                    '|' => Ok(Formula::join(lhs, rhs)),
                    '&' => Ok(Formula::meet(lhs, rhs)),
                    _ => unreachable!("connective checked above"),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let mut digits = String::new();
                while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                    digits.push(self.bump().unwrap());
                }
                self.skip_ws();
                if self.peek() == Some('.') {
                    self.pos += 1;
                    let n: u64 = digits.parse().map_err(|_| Error::Parse {
                        position: start,
                        message: format!("scalar {digits:?} is out of range"),
                    })?;
                    if n == 0 {
                        return Err(Error::Parse {
                            position: start,
                            message: "scalar multiple requires a positive count".into(),
                        });
                    }
                    let f = self.formula()?;
                    Ok(Formula::scalar_multiple(n, &f).expect("count checked above"))
                } else if digits == "0" {
                    Ok(Formula::Zero)
                } else {
                    Err(Error::Parse {
                        position: start,
                        message: format!("number {digits:?} must be followed by '.'"),
                    })
                }
            }
            Some(c) => Err(self.error(format!("expected a formula, found {c:?}"))),
            None => Err(self.error("expected a formula, found end of input".into())),
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
    fn parses_core_syntax() {
        assert_eq!(p("0"), Formula::Zero);
        assert_eq!(p("X"), Formula::Gen);
        assert_eq!(p("X*"), Formula::star(Formula::Gen));
        assert_eq!(p("(X+0)"), Formula::plus(Formula::Gen, Formula::Zero));
        assert_eq!(
            p("(X*+(X+X))"),
            Formula::plus(
                Formula::star(Formula::Gen),
                Formula::plus(Formula::Gen, Formula::Gen)
            )
        );
    }

    #[test]
    fn parser_accepts_unicode_oplus() {
        assert_eq!(p("(X⊕X)"), p("(X+X)"));
    }

    #[test]
    fn parser_accepts_grouping_parentheses() {
        assert_eq!(p("(X)"), Formula::Gen);
        assert_eq!(p("((X+X))*"), Formula::star(p("(X+X)")));
        assert_eq!(p("(X*)*"), Formula::star(Formula::star(Formula::Gen)));
    }

    #[test]
    fn parser_ignores_whitespace() {
        assert_eq!(p(" ( X + 0 ) * "), p("(X+0)*"));
    }

    #[test]
    fn double_star_nests() {
        assert_eq!(p("X**"), Formula::star(Formula::star(Formula::Gen)));
    }

    #[test]
    fn join_sugar_expands() {
        // (a|b) -> ((a*+b)*+b)
        assert_eq!(p("(X|0)"), p("((X*+0)*+0)"));
    }

    #[test]
    fn meet_sugar_expands() {
        // (a&b) -> ((a**+b*)*+b*)*
        assert_eq!(p("(X&0)"), p("((X**+0*)*+0*)*"));
    }

    #[test]
    fn scalar_sugar_expands_left_associated() {
        assert_eq!(p("3.X"), p("((X+X)+X)"));
        assert_eq!(p("1.X"), p("X"));
        // The scalar binds the whole following formula, stars included.
        assert_eq!(p("2.X*"), p("(X*+X*)"));
        assert_eq!(p("(2.X)*"), p("((X+X))*"));
    }

    #[test]
    fn zero_scalar_is_rejected() {
        assert!(Formula::parse("0.X").is_err());
        assert!(Formula::scalar_multiple(0, &Formula::Gen).is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match Formula::parse("(X+").unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 3),
            other => panic!("unexpected error {other:?}"),
        }
        match Formula::parse("(X+X)Y").unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 5),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(Formula::parse("").is_err());
        assert!(Formula::parse("12").is_err());
        assert!(Formula::parse("X+X").is_err());
    }

    #[test]
    fn print_is_canonical_and_round_trips() {
        let samples = ["0", "X", "X*", "(X+0)", "((X+X)+X)", "(X*+(X+X))*"];
        for s in samples {
            let f = p(s);
            assert_eq!(f.print(), *s);
            assert_eq!(p(&f.print()), f);
        }
    }

    #[test]
    fn unicode_print_round_trips() {
        let f = p("((X+X)*+X)");
        let u = f.to_text(PrintStyle::Unicode);
        assert_eq!(u, "((X⊕X)*⊕X)");
        assert_eq!(p(&u), f);
    }

    #[test]
    fn length_matches_printed_character_count() {
        let samples = [
            "0",
            "X",
            "X*",
            "(X+0)",
            "((X+X)+X)",
            "(X*+(X+X))*",
            "(X|0)*",
        ];
        for s in samples {
            let f = p(s);
            assert_eq!(f.length(), f.print().chars().count() as u64);
            assert_eq!(
                f.length(),
                f.to_text(PrintStyle::Unicode).chars().count() as u64
            );
        }
    }

    #[test]
    fn length_recurrences() {
        assert_eq!(p("X").length(), 1);
        assert_eq!(p("0").length(), 1);
        let f = p("(X+X)");
        assert_eq!(f.length(), 5);
        assert_eq!(Formula::star(f.clone()).length(), 6);
        assert_eq!(Formula::plus(f.clone(), f).length(), 13);
    }

    #[test]
    fn sugar_lengths_count_the_expansion() {
        // (X|X) expands to ((X*+X)*+X), 11 symbols.
        assert_eq!(p("(X|X)").length(), 11);
        assert_eq!(p("2.X").length(), 5);
    }

    #[test]
    fn distance_shape_and_length() {
        let d = Formula::distance(&Formula::Gen, &Formula::Gen);
        assert_eq!(d, p("((X*+X)*+(X*+X)*)"));
        // length(δ) = 2·(length(φ) + length(ψ)) + 13 under this character count
        for (a, b) in [("X", "0"), ("(X+X)", "X*"), ("((X|0)&X)", "3.X")] {
            let (fa, fb) = (p(a), p(b));
            let d = Formula::distance(&fa, &fb);
            assert_eq!(d.length(), 2 * (fa.length() + fb.length()) + 13);
        }
    }
}
