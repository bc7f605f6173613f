//! Canonical text and JSON forms of polynomials.
//!
//! Text: terms in descending graded-lex order joined by ` + ` / ` - `; each
//! term is `coeff*monomial`, where a non-constant `ℚ[p]` coefficient is
//! parenthesized with any common denominator pulled out, e.g.
//! `(p^2-1)/4*x1^2*x2 - x2 + (p+1)`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::multi::{Monomial, MultiPoly, VarSpace};
use super::param::{format_rational, parse_rational, ParamPoly};
use super::PolyError;

fn format_monomial(space: &VarSpace, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(space.name(i).to_string()),
            _ => parts.push(format!("{}^{}", space.name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.leading_is_negative();
            let c = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&c.to_coeff_string())?;
            } else if c.is_one() {
                f.write_str(&format_monomial(self.space(), m))?;
            } else {
                write!(f, "{}*{}", c.to_coeff_string(), format_monomial(self.space(), m))?;
            }
        }
        Ok(())
    }
}

/// Splits at top-level ` + ` / ` - ` separators, returning signed pieces.
fn split_terms(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut start = 0;
    let mut neg = false;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b' ' if depth == 0
                && i + 2 < bytes.len()
                && (bytes[i + 1] == b'+' || bytes[i + 1] == b'-')
                && bytes[i + 2] == b' ' =>
            {
                out.push((neg, &s[start..i]));
                neg = bytes[i + 1] == b'-';
                i += 3;
                start = i;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    out.push((neg, &s[start..]));
    out
}

fn parse_monomial(space: &VarSpace, s: &str) -> Result<Monomial, PolyError> {
    let mut e = vec![0u16; space.len()];
    for factor in s.split('*') {
        let (name, pow) = match factor.split_once('^') {
            Some((n, k)) => (
                n,
                k.parse::<u16>()
                    .map_err(|_| PolyError::Parse(format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        let i = space
            .index_of(name)
            .ok_or_else(|| PolyError::Parse(format!("unknown variable `{name}`")))?;
        e[i] += pow;
    }
    Ok(Monomial::from_exponents(e))
}

fn parse_term(space: &VarSpace, s: &str) -> Result<(Monomial, ParamPoly), PolyError> {
    let s = s.trim();
    if s.starts_with('(') {
        let mut depth = 0;
        let mut close = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(|| PolyError::Parse(format!("unbalanced `{s}`")))?;
        let rest = &s[close + 1..];
        let (coef_end, mono) = match rest.find('*') {
            Some(k) => (close + 1 + k, Some(&rest[k + 1..])),
            None => (s.len(), None),
        };
        let c = ParamPoly::parse(&s[..coef_end])?;
        let m = match mono {
            Some(t) => parse_monomial(space, t)?,
            None => Monomial::one(space.len()),
        };
        return Ok((m, c));
    }
    if s.starts_with(|ch: char| ch.is_ascii_digit()) {
        return match s.split_once('*') {
            Some((c, m)) => Ok((parse_monomial(space, m)?, ParamPoly::constant(parse_rational(c)?))),
            None => Ok((Monomial::one(space.len()), ParamPoly::constant(parse_rational(s)?))),
        };
    }
    Ok((parse_monomial(space, s)?, ParamPoly::one()))
}

impl MultiPoly {
    /// Inverse of the canonical [`fmt::Display`] rendering.
    pub fn parse(space: &VarSpace, s: &str) -> Result<MultiPoly, PolyError> {
        let s = s.trim();
        if s == "0" {
            return Ok(MultiPoly::zero(space));
        }
        let mut out = MultiPoly::zero(space);
        for (k, (neg, piece)) in split_terms(s).into_iter().enumerate() {
            let (neg, piece) = match (k, piece.strip_prefix('-')) {
                (0, Some(rest)) => (true, rest),
                _ => (neg, piece),
            };
            if piece.trim().is_empty() {
                return Err(PolyError::Parse(format!("empty term in `{s}`")));
            }
            let (m, c) = parse_term(space, piece)?;
            let t = MultiPoly::term(space, m, if neg { -c } else { c });
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson(
            self.terms()
                .rev()
                .map(|(m, c)| JsonTerm {
                    coeff: c.terms().iter().map(|(e, q)| (*e, format_rational(q))).collect(),
                    expo: m.exponents().to_vec(),
                })
                .collect(),
        )
    }

    pub fn from_json(space: &VarSpace, json: &PolyJson) -> Result<MultiPoly, PolyError> {
        let mut terms = Vec::with_capacity(json.0.len());
        for t in &json.0 {
            if t.expo.len() != space.len() {
                return Err(PolyError::Parse(format!(
                    "exponent vector of length {} in a space of {} variables",
                    t.expo.len(),
                    space.len()
                )));
            }
            let c = t
                .coeff
                .iter()
                .map(|(e, q)| parse_rational(q).map(|q| (*e, q)))
                .collect::<Result<Vec<_>, _>>()?;
            terms.push((Monomial::from_exponents(t.expo.clone()), ParamPoly::from_terms(c)));
        }
        Ok(MultiPoly::from_terms(space, terms))
    }
}

/// One JSON term: `{"coeff": [[p_exp, "num/den"], …], "expo": [int, …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: Vec<(u32, String)>,
    pub expo: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyJson(pub Vec<JsonTerm>);

struct ExprParser<'a> {
    space: &'a VarSpace,
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser<'_> {
    fn peek(&mut self) -> Option<char> {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse(format!("{msg} at offset {}", self.pos)))
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                '/' => {
                    self.pos += 1;
                    let d = self.factor()?;
                    let q = d
                        .as_constant()
                        .and_then(|c| c.as_constant())
                        .filter(|q| !q.is_zero());
                    match q {
                        Some(q) => acc = acc.scale_rational(&q.recip()),
                        None => return self.err("divisor must be a nonzero rational"),
                    }
                }
                c if c == '(' || c.is_alphabetic() || c == '_' => {
                    acc = acc * self.factor()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
                self.pos += 1;
            }
            let k: String = self.chars[start..self.pos].iter().collect();
            return match k.parse::<u32>() {
                Ok(k) => Ok(base.pow(k)),
                Err(_) => self.err("bad exponent"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                Ok(MultiPoly::constant(self.space, ParamPoly::constant(parse_rational(&s)?)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.space.index_of(&name) {
                    Some(i) => Ok(MultiPoly::var(self.space, i)),
                    None if name == "p" => Ok(MultiPoly::constant(self.space, ParamPoly::p())),
                    None => Err(PolyError::Parse(format!("unknown variable `{name}`"))),
                }
            }
            _ => self.err("unexpected input"),
        }
    }
}

impl MultiPoly {
    /// Parses an arbitrary arithmetic expression in the variables and `p`,
    /// e.g. `(p+1)*(p^4-1)*(x1+x2)*x1*x2` or `(p-1)/2*x1`.
    pub fn parse_expr(space: &VarSpace, s: &str) -> Result<MultiPoly, PolyError> {
        let mut parser = ExprParser {
            space,
            chars: s.chars().collect(),
            pos: 0,
        };
        let e = parser.expr()?;
        if parser.peek().is_some() {
            return parser.err("trailing input");
        }
        Ok(e)
    }
}
