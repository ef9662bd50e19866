//! Polynomial expressions over `x`, `y`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('+' | '-') unary | power
//! power   := atom ('^' INT)?
//! atom    := INT ('/' INT)? | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Juxtaposition is rejected, so `2x` and `x y` are errors.

use num_bigint::BigInt;
use num_traits::Zero;
use planefol_core::{MPoly, Rational, Vars};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
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
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        let tok = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let end = chars.get(i).map_or(text.len(), |c| c.0);
                out.push((pos, Tok::Int(text[chars[start].0..end].parse().expect("digits"))));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let end = chars.get(i).map_or(text.len(), |c| c.0);
                out.push((pos, Tok::Ident(text[chars[start].0..end].to_string())));
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(CliError::syntax(pos, format!("unexpected character `{other}`"))),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<MPoly, CliError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, CliError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, CliError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, CliError> {
        let base = self.atom()?;
        let p = if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e = u32::try_from(n).map_err(|_| CliError::syntax(pos, "exponent too large"))?;
                    base.pow(e)
                }
                _ => return Err(CliError::syntax(pos, "expected a nonnegative integer exponent")),
            }
        } else {
            base
        };
        match self.peek() {
            Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => Err(CliError::syntax(
                self.pos(),
                "implicit multiplication is not allowed; write `*`",
            )),
            Some(Tok::Slash) => Err(CliError::syntax(
                self.pos(),
                "`/` is only allowed between integer literals",
            )),
            _ => Ok(p),
        }
    }

    fn atom(&mut self) -> Result<MPoly, CliError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if self.peek() != Some(&Tok::Slash) {
                    return Ok(MPoly::constant(self.vars, Rational::from_integer(n)));
                }
                self.bump();
                let dpos = self.pos();
                match self.bump() {
                    Some(Tok::Int(d)) if !d.is_zero() => Ok(MPoly::constant(self.vars, Rational::new(n, d))),
                    Some(Tok::Int(_)) => Err(CliError::syntax(dpos, "zero denominator")),
                    _ => Err(CliError::syntax(dpos, "expected an integer denominator")),
                }
            }
            Some(Tok::Ident(name)) => {
                MPoly::var_named(self.vars, &name).map_err(|_| CliError::UnknownIdentifier { pos, name })
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(CliError::syntax(close, "expected `)`")),
                }
            }
            Some(t) => Err(CliError::syntax(pos, format!("unexpected {}", describe(&t)))),
            None => Err(CliError::syntax(pos, "unexpected end of input")),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
    }
}

/// Parses a polynomial in `x`, `y`.
pub fn parse_poly(text: &str) -> Result<MPoly, CliError> {
    let vars = Vars::xy();
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
        vars: &vars,
    };
    let out = p.expr()?;
    if p.at < p.toks.len() {
        return Err(CliError::syntax(
            p.pos(),
            format!("unexpected {}", describe(&p.toks[p.at].1)),
        ));
    }
    Ok(out)
}

/// Parses `a` or `a/b`.
pub fn parse_rational(text: &str) -> Result<Rational, CliError> {
    let p = parse_poly(text)?;
    if !p.is_constant() {
        return Err(CliError::syntax(0, format!("`{text}` is not a rational number")));
    }
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use planefol_core::rational::int;

    fn xy() -> (MPoly, MPoly) {
        let v = Vars::xy();
        (MPoly::var(&v, 0), MPoly::var(&v, 1))
    }

    #[test]
    fn examples() {
        let (x, y) = xy();
        assert_eq!(parse_poly("x^2 - y^2").unwrap(), &x.pow(2) - &y.pow(2));
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(
            parse_poly("1/2*x + 3").unwrap(),
            &x.scale(&half) + &MPoly::constant(&Vars::xy(), int(3))
        );
        assert_eq!(parse_poly("-(x - y)^2*-2").unwrap(), (&x - &y).pow(2).scale(&int(2)));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_poly("x y"), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("2x"), Err(CliError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("x/2"), Err(CliError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("(x + 1"), Err(CliError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_poly("1/0"), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(
            parse_poly("x + z"),
            Err(CliError::UnknownIdentifier { pos: 4, .. })
        ));
        assert!(matches!(parse_poly(""), Err(CliError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), Rational::new((-1).into(), 2.into()));
        assert!(parse_rational("x").is_err());
    }
}
