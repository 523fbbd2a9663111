//! Text and JSON forms of cover descriptors.
//!
//! Inline grammar (see `docs/grammar.md`):
//!
//! ```text
//! cover  = "kummer:" int ":" expr | "as:" expr | "const:" int
//!        | "compose:[" cover { "," cover } "]"
//! expr   = term { ("+" | "-") term }
//! term   = unary { ("*" | "/") unary | unary }      (juxtaposition multiplies)
//! unary  = "-" unary | power
//! power  = atom [ "^" ["-"] int ]
//! atom   = int | "x" | "t" | "(" expr ")"
//! ```
//!
//! `t` is the generator of `F_q` over `F_p`.

use serde::{Deserialize, Serialize};

use crate::algebra::{FieldElement, FieldRef};
use crate::covers::CoverDescriptor;
use crate::error::{Error, Result};
use crate::function_field::{RationalFunction, RationalRepr};

/// Parses a rational function in `x` over `field`.
pub fn parse_rational(field: &FieldRef, s: &str) -> Result<RationalFunction> {
    let mut parser = ExprParser {
        field,
        chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let value = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unexpected character"));
    }
    Ok(value)
}

struct ExprParser<'a> {
    field: &'a FieldRef,
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!("{msg} at position {} in {text:?}", self.pos))
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' {
                acc.add(&rhs)
            } else {
                acc.sub(&rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs).map_err(|_| self.error("division by zero"))?;
                }
                Some(c) if c.is_ascii_digit() || c == 'x' || c == 't' || c == '(' => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek() == Some('-');
        if negative {
            self.pos += 1;
        }
        let n = self.int()?;
        let n = i64::try_from(n).map_err(|_| self.error("exponent too large"))?;
        base.pow(if negative { -n } else { n })
            .map_err(|_| self.error("negative power of zero"))
    }

    fn int(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error("number too large"))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(RationalFunction::x(self.field))
            }
            Some('t') => {
                if self.field.is_prime_field() {
                    return Err(self.error("t is only defined over extension fields"));
                }
                self.pos += 1;
                Ok(RationalFunction::constant(FieldElement::generator(
                    self.field,
                )))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                let p = self.field.characteristic();
                Ok(RationalFunction::constant(FieldElement::from_u64(
                    self.field,
                    n % p,
                )))
            }
            _ => Err(self.error("expected x, t, a number or '('")),
        }
    }
}

/// Parses the inline cover grammar.
pub fn parse_cover(field: &FieldRef, s: &str) -> Result<CoverDescriptor> {
    let s = s.trim();
    let bad = || Error::Parse(format!("cannot parse cover {s:?}"));
    if let Some(rest) = s.strip_prefix("kummer:") {
        let (n, f) = rest.split_once(':').ok_or_else(bad)?;
        let n = n.trim().parse().map_err(|_| bad())?;
        Ok(CoverDescriptor::Kummer {
            n,
            f: parse_rational(field, f)?,
        })
    } else if let Some(rest) = s.strip_prefix("as:") {
        Ok(CoverDescriptor::ArtinSchreier {
            f: parse_rational(field, rest)?,
        })
    } else if let Some(rest) = s.strip_prefix("const:") {
        Ok(CoverDescriptor::Constant {
            m: rest.trim().parse().map_err(|_| bad())?,
        })
    } else if let Some(rest) = s.strip_prefix("compose:") {
        let inner = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let parts = split_top_level(inner).ok_or_else(bad)?;
        if parts.iter().any(|p| p.trim().is_empty()) {
            return Err(bad());
        }
        parts
            .into_iter()
            .map(|p| parse_cover(field, p))
            .collect::<Result<Vec<_>>>()
            .map(CoverDescriptor::Composite)
    } else {
        Err(bad())
    }
}

/// Splits at commas outside brackets and parentheses.
fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return None;
        }
    }
    (depth == 0).then(|| {
        parts.push(&s[start..]);
        parts
    })
}

/// `f` in a JSON cover: coefficient lists or an inline expression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionJson {
    Coefficients(RationalRepr),
    Expression(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverJson {
    Kummer { n: u64, f: FunctionJson },
    ArtinSchreier { f: FunctionJson },
    Constant { m: u64 },
    Composite { components: Vec<CoverJson> },
}

impl CoverJson {
    pub fn from_descriptor(d: &CoverDescriptor) -> Self {
        match d {
            CoverDescriptor::Kummer { n, f } => CoverJson::Kummer {
                n: *n,
                f: FunctionJson::Coefficients(f.to_repr()),
            },
            CoverDescriptor::ArtinSchreier { f } => CoverJson::ArtinSchreier {
                f: FunctionJson::Coefficients(f.to_repr()),
            },
            CoverDescriptor::Constant { m } => CoverJson::Constant { m: *m },
            CoverDescriptor::Composite(parts) => CoverJson::Composite {
                components: parts.iter().map(CoverJson::from_descriptor).collect(),
            },
        }
    }

    pub fn to_descriptor(&self, field: &FieldRef) -> Result<CoverDescriptor> {
        let function = |f: &FunctionJson| match f {
            FunctionJson::Coefficients(repr) => RationalFunction::from_repr(field, repr),
            FunctionJson::Expression(s) => parse_rational(field, s),
        };
        Ok(match self {
            CoverJson::Kummer { n, f } => CoverDescriptor::Kummer {
                n: *n,
                f: function(f)?,
            },
            CoverJson::ArtinSchreier { f } => CoverDescriptor::ArtinSchreier { f: function(f)? },
            CoverJson::Constant { m } => CoverDescriptor::Constant { m: *m },
            CoverJson::Composite { components } => CoverDescriptor::Composite(
                components
                    .iter()
                    .map(|c| c.to_descriptor(field))
                    .collect::<Result<Vec<_>>>()?,
            ),
        })
    }
}

/// Accepts either a JSON object or the inline grammar.
pub fn parse_cover_any(field: &FieldRef, s: &str) -> Result<CoverDescriptor> {
    if s.trim_start().starts_with('{') {
        let json: CoverJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        json.to_descriptor(field)
    } else {
        parse_cover(field, s)
    }
}
