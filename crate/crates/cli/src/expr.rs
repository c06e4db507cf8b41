//! Element syntax for the E_q(2) instance.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)* ('#' 'c_' int)?
//! factor := '-' factor | atom ('^' int)?
//! atom   := rational | 'q' | gen | '(' expr ')'
//! gen    := 'v' | 'vi' | 'n' | 'nb' | 'z' | 'zb'
//! ```
//!
//! `#` binds a single term, so `a # c_1 + b # c_2` is a sum of two simple
//! tensors, which is exactly how elements of `M⊗C` render.

use std::sync::Arc;

use crossed_core::entwine::InstanceParams;
use crossed_core::instances::eq2::hyperboloid_generators;
use crossed_core::kernel::{BasisIndex, Scalar, Vect};
use crossed_core::ncalg::{Algebra, Gen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator '{name}' at {pos}")]
    UnknownGenerator { pos: usize, name: String },
    #[error("at {pos}: {source}")]
    Algebra {
        pos: usize,
        #[source]
        source: crossed_core::Error,
    },
}

/// What the parser needs to know about the instance.
pub struct ExprContext {
    pub p: Arc<dyn Algebra>,
    pub q: Scalar,
    pub z: Vect,
    pub zb: Vect,
}

impl ExprContext {
    pub fn eq2(p: Arc<dyn Algebra>, params: &InstanceParams) -> crossed_core::Result<Self> {
        let (z, zb) = hyperboloid_generators(params)?;
        Ok(ExprContext { p, q: params.q_scalar(), z, zb })
    }

    /// Parses an element of `P`.
    pub fn parse(&self, src: &str) -> Result<Vect, ParseError> {
        match self.parse_any(src)? {
            Value::Alg(v) => Ok(v),
            Value::Tensor(_) => {
                Err(ParseError::Syntax { pos: 0, msg: "expected an element of P, found a tensor".into() })
            }
        }
    }

    /// Parses an element of `P⊗C`; a plain zero is accepted as the zero tensor.
    pub fn parse_tensor(&self, src: &str) -> Result<Vect, ParseError> {
        match self.parse_any(src)? {
            Value::Tensor(v) => Ok(v),
            Value::Alg(v) if v.is_zero() => Ok(v),
            Value::Alg(_) => Err(ParseError::Syntax { pos: src.len(), msg: "expected '# c_<int>'".into() }),
        }
    }

    fn parse_any(&self, src: &str) -> Result<Value, ParseError> {
        let toks = lex(src)?;
        let mut p = Parser { cx: self, toks, at: 0, end: src.len() };
        let v = p.expr()?;
        match p.peek() {
            None => Ok(v),
            Some(t) => Err(ParseError::Syntax { pos: t.pos, msg: format!("unexpected {}", t.kind) }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Num(BigInt),
    Ident(String),
    Grouplike(i64),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Hash,
    LParen,
    RParen,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Num(n) => write!(f, "number {n}"),
            Kind::Ident(s) => write!(f, "'{s}'"),
            Kind::Grouplike(p) => write!(f, "'c_{p}'"),
            Kind::Plus => write!(f, "'+'"),
            Kind::Minus => write!(f, "'-'"),
            Kind::Star => write!(f, "'*'"),
            Kind::Caret => write!(f, "'^'"),
            Kind::Slash => write!(f, "'/'"),
            Kind::Hash => write!(f, "'#'"),
            Kind::LParen => write!(f, "'('"),
            Kind::RParen => write!(f, "')'"),
        }
    }
}

#[derive(Clone, Debug)]
struct Tok {
    kind: Kind,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Tok>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let ch = b[i];
        let pos = i;
        if ch.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match ch {
            b'+' => Some(Kind::Plus),
            b'-' => Some(Kind::Minus),
            b'*' => Some(Kind::Star),
            b'^' => Some(Kind::Caret),
            b'/' => Some(Kind::Slash),
            b'#' => Some(Kind::Hash),
            b'(' => Some(Kind::LParen),
            b')' => Some(Kind::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            out.push(Tok { kind, pos });
            i += 1;
        } else if ch.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[pos..i].parse().expect("digits");
            out.push(Tok { kind: Kind::Num(n), pos });
        } else if src[i..].starts_with("c_") {
            // group-like index, possibly negative: c_-3
            i += 2;
            let start = i;
            if i < b.len() && b[i] == b'-' {
                i += 1;
            }
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let p = src[start..i]
                .parse::<i64>()
                .map_err(|_| ParseError::Syntax { pos, msg: "expected an integer after 'c_'".into() })?;
            out.push(Tok { kind: Kind::Grouplike(p), pos });
        } else if ch.is_ascii_alphabetic() || ch == b'_' {
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push(Tok { kind: Kind::Ident(src[pos..i].to_string()), pos });
        } else {
            let c = src[i..].chars().next().unwrap_or('?');
            return Err(ParseError::Syntax { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

enum Value {
    Alg(Vect),
    Tensor(Vect),
}

struct Parser<'a> {
    cx: &'a ExprContext,
    toks: Vec<Tok>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn eat(&mut self, k: &Kind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(k) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn alg_err(pos: usize) -> impl Fn(crossed_core::Error) -> ParseError {
        move |source| ParseError::Algebra { pos, source }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            let pos = self.pos();
            let sign = if self.eat(&Kind::Plus) {
                1
            } else if self.eat(&Kind::Minus) {
                -1
            } else {
                return Ok(acc);
            };
            let rhs = self.term()?;
            acc = match (acc, rhs) {
                (Value::Alg(a), Value::Alg(b)) => Value::Alg(if sign > 0 { &a + &b } else { &a - &b }),
                (Value::Tensor(a), Value::Tensor(b)) => Value::Tensor(if sign > 0 { &a + &b } else { &a - &b }),
                _ => return Err(ParseError::Syntax { pos, msg: "cannot add an element of P to a tensor".into() }),
            };
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().map(|t| &t.kind) == Some(&Kind::Star) {
            let pos = self.pos();
            self.at += 1;
            let rhs = self.factor()?;
            acc = self.cx.p.mul(&acc, &rhs).map_err(Self::alg_err(pos))?;
        }
        if self.eat(&Kind::Hash) {
            match self.peek().map(|t| t.kind.clone()) {
                Some(Kind::Grouplike(p)) => {
                    self.at += 1;
                    return Ok(Value::Tensor(acc.tensor(&Vect::basis(BasisIndex::GroupLike(p)))));
                }
                _ => return self.syntax("expected 'c_<int>' after '#'"),
            }
        }
        Ok(Value::Alg(acc))
    }

    fn factor(&mut self) -> Result<Vect, ParseError> {
        if self.eat(&Kind::Minus) {
            return Ok(-&self.factor()?);
        }
        let pos = self.pos();
        let base = self.atom()?;
        if !self.eat(&Kind::Caret) {
            return Ok(base);
        }
        let neg = self.eat(&Kind::Minus);
        let e = match self.peek().map(|t| t.kind.clone()) {
            Some(Kind::Num(n)) => {
                self.at += 1;
                u32::try_from(n).or_else(|_| self.syntax("exponent too large"))?
            }
            _ => return self.syntax("expected an integer exponent"),
        };
        let base = if neg {
            match self.cx.p.recognize_unit(&base) {
                Some(inv) => inv,
                None => return Err(ParseError::Syntax { pos, msg: format!("{base} is not invertible") }),
            }
        } else {
            base
        };
        self.cx.p.pow(&base, e).map_err(Self::alg_err(pos))
    }

    fn atom(&mut self) -> Result<Vect, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.syntax("unexpected end of input");
        };
        self.at += 1;
        let p = &self.cx.p;
        match tok.kind {
            Kind::Num(num) => {
                let den = if self.eat(&Kind::Slash) {
                    match self.peek().map(|t| t.kind.clone()) {
                        Some(Kind::Num(d)) if !d.is_zero() => {
                            self.at += 1;
                            d
                        }
                        _ => return self.syntax("expected a nonzero denominator"),
                    }
                } else {
                    BigInt::from(1)
                };
                Ok(p.one().scale(&Scalar::rational(BigRational::new(num, den))))
            }
            Kind::Ident(name) => Ok(match name.as_str() {
                "q" => p.one().scale(&self.cx.q),
                "v" => Vect::basis(Gen::V.index()),
                "vi" => Vect::basis(Gen::Vi.index()),
                "n" => Vect::basis(Gen::N.index()),
                "nb" => Vect::basis(Gen::Nb.index()),
                "z" => self.cx.z.clone(),
                "zb" => self.cx.zb.clone(),
                _ => return Err(ParseError::UnknownGenerator { pos: tok.pos, name }),
            }),
            Kind::LParen => {
                let inner = match self.expr()? {
                    Value::Alg(v) => v,
                    Value::Tensor(_) => {
                        return Err(ParseError::Syntax {
                            pos: tok.pos,
                            msg: "tensors cannot be nested in products".into(),
                        })
                    }
                };
                if !self.eat(&Kind::RParen) {
                    return self.syntax("expected ')'");
                }
                Ok(inner)
            }
            other => Err(ParseError::Syntax { pos: tok.pos, msg: format!("unexpected {other}") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crossed_core::instances::eq2;

    fn cx() -> ExprContext {
        let e = eq2::make(&InstanceParams::default()).unwrap();
        ExprContext::eq2(e.ent.p.clone(), &InstanceParams::default()).unwrap()
    }

    #[test]
    fn commutation() {
        let cx = cx();
        assert_eq!(cx.parse("n*v").unwrap().to_string(), "q^-2 * v*n");
        assert_eq!(cx.parse("v*n").unwrap().to_string(), "v*n");
    }

    #[test]
    fn hyperboloid() {
        let cx = cx();
        assert_eq!(cx.parse("z*zb - q^2*zb*z").unwrap(), cx.parse("1 - q^2").unwrap());
    }

    #[test]
    fn powers_and_units() {
        let cx = cx();
        assert_eq!(cx.parse("v^-2").unwrap(), cx.parse("vi^2").unwrap());
        assert_eq!(cx.parse("v*vi").unwrap(), cx.parse("1").unwrap());
        assert_eq!(cx.parse("q^-1*q").unwrap(), cx.parse("1").unwrap());
        assert_eq!(cx.parse("-3/2*v").unwrap().to_string(), "-3/2 * v");
        assert!(matches!(cx.parse("n^-1"), Err(ParseError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn tensors() {
        let cx = cx();
        let t = cx.parse_tensor("q^2*v # c_1 + (1 - q^2) # c_-2").unwrap();
        assert_eq!(cx.parse_tensor(&t.to_string()).unwrap(), t);
        assert!(cx.parse_tensor("v").is_err());
        assert!(cx.parse("v # c_0").is_err());
        assert!(cx.parse("v # c_0 + n").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let cx = cx();
        assert!(matches!(cx.parse("v * w"), Err(ParseError::UnknownGenerator { pos: 4, ref name }) if name == "w"));
        assert!(matches!(cx.parse("v +"), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(cx.parse("(v"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(cx.parse("v $"), Err(ParseError::Syntax { pos: 2, .. })));
    }
}
