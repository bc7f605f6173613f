//! Exact rationals and univariate polynomials in the symbolic prime `p`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type ParamRational = BigRational;

pub fn rat(n: i64, d: i64) -> ParamRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> ParamRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<ParamRational, PolyError> {
    let bad = || PolyError::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &ParamRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A polynomial in the prime `p` with rational coefficients.
///
/// Terms are kept sorted by ascending exponent and no zero coefficient is stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: Vec<(u32, ParamRational)>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ParamRational::one())
    }

    /// The symbolic prime itself.
    pub fn p() -> Self {
        Self::monomial(1, ParamRational::one())
    }

    pub fn constant(c: ParamRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn monomial(exp: u32, c: ParamRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            ParamPoly { terms: vec![(exp, c)] }
        }
    }

    /// Builds from `(exponent, coefficient)` pairs in any order; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, ParamRational)>>(terms: I) -> Self {
        let mut v: Vec<(u32, ParamRational)> = terms.into_iter().collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(u32, ParamRational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        ParamPoly { terms: out }
    }

    /// Integer polynomial from coefficients listed by ascending power of `p`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(e, &c)| (e as u32, int(c))))
    }

    pub fn terms(&self) -> &[(u32, ParamRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| *e == 0)
    }

    pub fn as_constant(&self) -> Option<ParamRational> {
        match self.terms.as_slice() {
            [] => Some(ParamRational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn coeff(&self, exp: u32) -> ParamRational {
        self.terms
            .iter()
            .find(|(e, _)| *e == exp)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(ParamRational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&ParamRational> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn scale(&self, c: &ParamRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: u32) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, p0: &ParamRational) -> ParamRational {
        let mut acc = ParamRational::zero();
        let mut last = self.degree().unwrap_or(0);
        for (e, c) in self.terms.iter().rev() {
            for _ in *e..last {
                acc *= p0;
            }
            acc += c;
            last = *e;
        }
        for _ in 0..last {
            acc *= p0;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &ParamPoly) -> Option<ParamPoly> {
        let (dl, dc) = divisor.terms.last()?;
        if let [(0, c)] = divisor.terms.as_slice() {
            let inv = c.recip();
            return Some(self.scale(&inv));
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rl, rc)) = rem.terms.last().cloned() {
            if rl < *dl {
                return None;
            }
            let t = ParamPoly::monomial(rl - dl, rc / dc);
            rem = &rem - &(&t * divisor);
            quot.push(t.terms[0].clone());
        }
        Some(ParamPoly::from_terms(quot))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// Sign of the coefficient of the highest power of `p`.
    pub fn leading_is_negative(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_negative())
    }
}

fn format_int_poly(terms: &[(u32, BigInt)]) -> String {
    let mut s = String::new();
    for (i, (e, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push(if neg { '-' } else { '+' });
        }
        match e {
            0 => s.push_str(&a.to_string()),
            _ => {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                }
                s.push('p');
                if *e > 1 {
                    s.push('^');
                    s.push_str(&e.to_string());
                }
            }
        }
    }
    s
}

impl ParamPoly {
    /// Coefficient rendering used inside polynomial strings: constants bare,
    /// everything else parenthesized, with a common denominator pulled out.
    pub fn to_coeff_string(&self) -> String {
        if let Some(c) = self.as_constant() {
            return format_rational(&c);
        }
        let d = self.common_denominator();
        let num: Vec<(u32, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, (c * BigRational::from_integer(d.clone())).to_integer()))
            .collect();
        if d.is_one() {
            format!("({})", format_int_poly(&num))
        } else {
            format!("({})/{}", format_int_poly(&num), d)
        }
    }

    /// Parses the output of [`fmt::Display`]: `p^2-1`, `(p-1)/2`, `3/4`, `-p+1`.
    pub fn parse(s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyError::Parse("empty coefficient".into()));
        }
        if let Some(rest) = s.strip_prefix('(') {
            let close = rest
                .rfind(')')
                .ok_or_else(|| PolyError::Parse(format!("unbalanced `{s}`")))?;
            let inner = Self::parse_int_poly(&rest[..close])?;
            let tail = rest[close + 1..].trim();
            if tail.is_empty() {
                return Ok(inner);
            }
            let d = tail
                .strip_prefix('/')
                .ok_or_else(|| PolyError::Parse(format!("bad coefficient tail `{tail}`")))?;
            let d = parse_rational(d)?;
            return Ok(inner.scale(&d.recip()));
        }
        if !s.contains('p') {
            return Ok(Self::constant(parse_rational(s)?));
        }
        Self::parse_int_poly(s)
    }

    fn parse_int_poly(s: &str) -> Result<Self, PolyError> {
        let bad = || PolyError::Parse(format!("invalid polynomial in p `{s}`"));
        let mut terms = Vec::new();
        let bytes = s.as_bytes();
        let mut start = 0;
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^')
            {
                let tok = s[start..i].trim();
                let (neg, body) = match tok.strip_prefix('-') {
                    Some(b) => (true, b),
                    None => (false, tok.strip_prefix('+').unwrap_or(tok)),
                };
                let (coef, exp) = match body.find('p') {
                    None => (parse_rational(body)?, 0u32),
                    Some(k) => {
                        let c = if k == 0 {
                            ParamRational::one()
                        } else {
                            parse_rational(&body[..k])?
                        };
                        let e = match &body[k + 1..] {
                            "" => 1,
                            t => t
                                .strip_prefix('^')
                                .and_then(|t| t.parse().ok())
                                .ok_or_else(bad)?,
                        };
                        (c, e)
                    }
                };
                terms.push((exp, if neg { -coef } else { coef }));
                start = i;
            }
        }
        Ok(Self::from_terms(terms))
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if let Some(c) = self.as_constant() {
            return f.write_str(&format_rational(&c));
        }
        let d = self.common_denominator();
        let num: Vec<(u32, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, (c * BigRational::from_integer(d.clone())).to_integer()))
            .collect();
        if d.is_one() {
            f.write_str(&format_int_poly(&num))
        } else {
            write!(f, "({})/{}", format_int_poly(&num), d)
        }
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl From<ParamRational> for ParamPoly {
    fn from(c: ParamRational) -> Self {
        ParamPoly::constant(c)
    }
}

impl From<i64> for ParamPoly {
    fn from(n: i64) -> Self {
        ParamPoly::from_int(n)
    }
}

fn merge(a: &ParamPoly, b: &ParamPoly, negate_b: bool) -> ParamPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let take_a = j == b.terms.len() || (i < a.terms.len() && a.terms[i].0 < b.terms[j].0);
        let take_b = i == a.terms.len() || (j < b.terms.len() && b.terms[j].0 < a.terms[i].0);
        if take_a {
            out.push(a.terms[i].clone());
            i += 1;
        } else if take_b {
            let (e, c) = &b.terms[j];
            out.push((*e, if negate_b { -c } else { c.clone() }));
            j += 1;
        } else {
            let (e, ca) = &a.terms[i];
            let cb = &b.terms[j].1;
            let c = if negate_b { ca - cb } else { ca + cb };
            if !c.is_zero() {
                out.push((*e, c));
            }
            i += 1;
            j += 1;
        }
    }
    ParamPoly { terms: out }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        merge(self, rhs, true)
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        if self.is_zero() || rhs.is_zero() {
            return ParamPoly::zero();
        }
        if let [(0, c)] = rhs.terms.as_slice() {
            return self.scale(c);
        }
        if let [(0, c)] = self.terms.as_slice() {
            return rhs.scale(c);
        }
        let mut acc: Vec<ParamRational> =
            vec![ParamRational::zero(); (self.degree().unwrap() + rhs.degree().unwrap() + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                acc[(ea + eb) as usize] += ca * cb;
            }
        }
        ParamPoly::from_terms(acc.into_iter().enumerate().map(|(e, c)| (e as u32, c)))
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: &ParamPoly) -> ParamPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &ParamPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&ParamPoly> for ParamPoly {
    fn sub_assign(&mut self, rhs: &ParamPoly) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for ParamPoly {
    fn sum<I: Iterator<Item = ParamPoly>>(iter: I) -> Self {
        iter.fold(ParamPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for ParamPoly {
    fn product<I: Iterator<Item = ParamPoly>>(iter: I) -> Self {
        iter.fold(ParamPoly::one(), |a, b| a * b)
    }
}
