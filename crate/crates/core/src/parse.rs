//! Text syntax for polynomials.
//!
//! Accepted input:
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' nat)?
//! atom   := int ('/' nat)? | ident | '(' expr ')'
//! ```
//!
//! The canonical printer only produces `coeff*ident^k*...` terms, so printed
//! polynomials always parse back to themselves.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::context::{is_identifier, is_reserved, VarContext};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
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

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(Error::Syntax {
                        line,
                        column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        column += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

/// Identifiers appearing in `text`, in order of first appearance.
pub fn scan_identifiers(text: &str) -> Result<Vec<String>> {
    let mut names: Vec<String> = Vec::new();
    for (tok, _) in tokenize(text)? {
        if let Tok::Ident(name) = tok {
            if !names.contains(&name) {
                names.push(name);
            }
        }
    }
    Ok(names)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    ctx: &'a VarContext,
    allow_reserved: bool,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let pos = self.toks[self.at].1;
        Err(Error::Syntax {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        match self.peek() {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
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

    fn starts_factor(tok: &Tok) -> bool {
        matches!(tok, Tok::Int(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<Polynomial> {
        if !Self::starts_factor(self.peek()) {
            return self.error("expected a term");
        }
        let mut acc = self.factor()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                if !Self::starts_factor(self.peek()) {
                    return self.error("expected a factor after `*`");
                }
                acc = &acc * &self.factor()?;
            } else if Self::starts_factor(self.peek()) {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.error("expected a natural number"),
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let k = self.nat()?;
            let k: u32 = match u32::try_from(k) {
                Ok(k) => k,
                Err(_) => return self.error("exponent out of range"),
            };
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let mut q = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let d = self.nat()?;
                    if d.is_zero() {
                        return self.error("zero denominator");
                    }
                    q /= Rational::from_integer(d);
                }
                Ok(Polynomial::constant(self.ctx, q))
            }
            Tok::Ident(name) => {
                if is_reserved(&name) && !self.allow_reserved {
                    return Err(Error::ReservedName(name));
                }
                self.bump();
                Polynomial::var(self.ctx, &name)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.error("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            _ => self.error("expected a number, a variable or `(`"),
        }
    }
}

fn parse_impl(text: &str, ctx: &VarContext, allow_reserved: bool) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        ctx,
        allow_reserved,
    };
    if *p.peek() == Tok::End {
        return p.error("empty expression");
    }
    let f = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(f)
}

/// Parses user input; reserved `_`-prefixed names are rejected.
pub fn parse_polynomial(text: &str, ctx: &VarContext) -> Result<Polynomial> {
    parse_impl(text, ctx, false)
}

/// Parses text that may mention generated variables (printed witnesses).
pub fn parse_polynomial_internal(text: &str, ctx: &VarContext) -> Result<Polynomial> {
    parse_impl(text, ctx, true)
}

/// Parses a comma-separated list of polynomials.
pub fn parse_list(text: &str, ctx: &VarContext) -> Result<Vec<Polynomial>> {
    split_top_level(text)
        .into_iter()
        .map(|part| parse_polynomial(part, ctx))
        .collect()
}

/// Splits on commas that are not inside parentheses.
pub fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

/// Builds a context from the identifiers of `texts` (first appearance order),
/// with `constants` moved to the front as the coefficient block.
pub fn infer_context(texts: &[&str], constants: &[&str]) -> Result<VarContext> {
    let mut names: Vec<String> = constants.iter().map(|s| s.to_string()).collect();
    for t in texts {
        for n in scan_identifiers(t)? {
            if !names.contains(&n) {
                names.push(n);
            }
        }
    }
    if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
        return Err(Error::InvalidContext(format!("`{bad}` is not an identifier")));
    }
    VarContext::with_coefficients(&names, constants.len())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ctx() -> VarContext {
        VarContext::new(&["x", "y", "z", "u"]).unwrap()
    }

    #[test]
    fn parses_nested_expression() {
        let c = ctx();
        let f = parse_polynomial("y + x^2*(x*z + y*(y*u + z^2))", &c).unwrap();
        assert_eq!(f.to_string(), "x^2*y*z^2 + x^2*y^2*u + x^3*z + y");
    }

    #[test]
    fn parses_zero_and_fractions() {
        let c = ctx();
        assert!(parse_polynomial("0", &c).unwrap().is_zero());
        let f = parse_polynomial("1/2*x - 3/4", &c).unwrap();
        assert_eq!(f.coefficient(&crate::Monomial::var(4, 0)), frac(1, 2));
        assert_eq!(parse_polynomial("2x y", &c).unwrap().to_string(), "2*x*y");
    }

    #[test]
    fn double_plus_is_reported_at_second_plus() {
        let err = parse_polynomial("y + + z", &ctx()).unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 1,
                column: 5,
                message: "expected a term".into()
            }
        );
    }

    #[test]
    fn rejects_unknown_and_reserved_variables() {
        let c = ctx();
        assert_eq!(parse_polynomial("w + 1", &c).unwrap_err(), Error::UnknownVariable("w".into()));
        assert!(matches!(parse_polynomial("_e1", &c), Err(Error::ReservedName(_))));
        assert!(parse_polynomial("1/0", &c).is_err());
        assert!(parse_polynomial("(x", &c).is_err());
        assert!(parse_polynomial("", &c).is_err());
    }

    #[test]
    fn splits_lists_outside_parentheses() {
        assert_eq!(split_top_level("z^2, (z+1)*(z,), z^3"), vec!["z^2", "(z+1)*(z,)", "z^3"]);
    }

    #[test]
    fn infers_context_with_constants_first() {
        let c = infer_context(&["y + x*z", "u"], &["x"]).unwrap();
        assert_eq!(c.names(), ["x", "y", "z", "u"]);
        assert_eq!(c.coefficient_block(), 1);
    }
}
