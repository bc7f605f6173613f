//! Sparse multivariate polynomials over `ℚ[p]`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use super::param::{ParamPoly, ParamRational};
use super::PolyError;

/// Exponent vector. Ordered graded-lexicographically: higher total degree is
/// larger, ties broken by the first differing exponent (earlier variables dominate).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u16>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered list of named variables.
#[derive(Clone)]
pub struct VarSpace {
    names: Arc<[String]>,
}

impl VarSpace {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Self {
        VarSpace {
            names: names.into_iter().map(Into::into).collect::<Vec<_>>().into(),
        }
    }

    /// `x1, …, xn`.
    pub fn standard(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl PartialEq for VarSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarSpace {}

impl fmt::Debug for VarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// Sparse polynomial with `ℚ[p]` coefficients over a fixed variable space.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    space: VarSpace,
    terms: BTreeMap<Monomial, ParamPoly>,
}

impl MultiPoly {
    pub fn zero(space: &VarSpace) -> Self {
        MultiPoly {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: &VarSpace) -> Self {
        Self::constant(space, ParamPoly::one())
    }

    pub fn constant(space: &VarSpace, c: ParamPoly) -> Self {
        Self::term(space, Monomial::one(space.len()), c)
    }

    pub fn var(space: &VarSpace, i: usize) -> Self {
        Self::term(space, Monomial::var(space.len(), i), ParamPoly::one())
    }

    pub fn term(space: &VarSpace, m: Monomial, c: ParamPoly) -> Self {
        assert_eq!(m.0.len(), space.len(), "monomial arity does not match space");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            space: space.clone(),
            terms,
        }
    }

    /// Linear form `Σ coeffs[i]·x_i` with rational coefficients.
    pub fn linear(space: &VarSpace, coeffs: &[ParamRational]) -> Self {
        let mut out = Self::zero(space);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(Monomial::var(space.len(), i), &ParamPoly::constant(c.clone()));
            }
        }
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, ParamPoly)>>(space: &VarSpace, it: I) -> Self {
        let mut out = Self::zero(space);
        for (m, c) in it {
            assert_eq!(m.0.len(), space.len(), "monomial arity does not match space");
            out.add_term(m, &c);
        }
        out
    }

    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ParamPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &ParamPoly)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<ParamPoly> {
        match self.terms.len() {
            0 => Some(ParamPoly::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Homogeneous of the given degree (the zero polynomial qualifies for every degree).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn add_term(&mut self, m: Monomial, c: &ParamPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_space(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(PolyError::SpaceMismatch {
                left: self.space.names().join(","),
                right: other.space.names().join(","),
            })
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_space(other)?;
        let mut out = MultiPoly::zero(&self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ParamPoly) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.space);
        }
        MultiPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, c: &ParamRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.space);
        }
        MultiPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.scale(c))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.space);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> MultiPoly {
        MultiPoly {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Maps every monomial through a signed, scaled permutation of variables:
    /// variable `i` goes to `images[i].1 · y_{images[i].0}` in `target`.
    /// This is the fast path for Weyl group and Frobenius actions.
    pub fn substitute_monomial(&self, target: &VarSpace, images: &[(usize, ParamPoly)]) -> MultiPoly {
        assert_eq!(images.len(), self.space.len());
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.len()];
            let mut coeff = c.clone();
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let (j, ref s) = images[i];
                e[j] += k;
                if !s.is_one() {
                    coeff = &coeff * &s.pow(k as u32);
                }
            }
            out.add_term(Monomial(e), &coeff);
        }
        out
    }

    /// Ring homomorphism sending variable `i` to `images[i]`, a homogeneous
    /// linear form over `target`.
    pub fn substitute_linear(&self, target: &VarSpace, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.space.len() {
            return Err(PolyError::UnmappedVariable(
                self.space
                    .names()
                    .get(images.len())
                    .cloned()
                    .unwrap_or_else(|| "<extra image>".into()),
            ));
        }
        for (i, img) in images.iter().enumerate() {
            if img.space != *target || !img.is_homogeneous_of(1) {
                return Err(PolyError::NotLinear(self.space.name(i).to_string()));
            }
        }
        let single: Option<Vec<(usize, ParamPoly)>> = images
            .iter()
            .map(|img| {
                if img.terms.len() != 1 {
                    return None;
                }
                let (m, c) = img.terms.iter().next().unwrap();
                let j = m.0.iter().position(|&e| e == 1)?;
                Some((j, c.clone()))
            })
            .collect();
        if let Some(single) = single {
            return Ok(self.substitute_monomial(target, &single));
        }
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|img| vec![MultiPoly::one(target), img.clone()]).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, &cc);
            }
        }
        Ok(out)
    }

    /// Exact quotient by `divisor`; fails with `NotDivisible` on any remainder.
    pub fn divide_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_space(divisor)?;
        let (dm, dc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.space);
        let not_div = || PolyError::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&dm).ok_or_else(not_div)?;
            let qc = rc.div_exact(&dc).ok_or_else(not_div)?;
            for (m, c) in &divisor.terms {
                rem.add_term(qm.mul(m), &-(c * &qc));
            }
            quot.add_term(qm, &qc);
        }
        Ok(quot)
    }

    /// Specializes the prime to a number; the result has constant coefficients.
    pub fn evaluate_p(&self, p0: &ParamRational) -> MultiPoly {
        MultiPoly::from_terms(
            &self.space,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), ParamPoly::constant(c.eval(p0)))),
        )
    }

    /// Rational coefficient of `m`, when all coefficients are constants in `p`.
    pub fn rational_coeffs(&self) -> Option<BTreeMap<Monomial, ParamRational>> {
        self.terms
            .iter()
            .map(|(m, c)| c.as_constant().map(|q| (m.clone(), q)))
            .collect()
    }

    pub fn from_rational_coeffs(space: &VarSpace, coeffs: &BTreeMap<Monomial, ParamRational>) -> Self {
        MultiPoly::from_terms(
            space,
            coeffs.iter().map(|(m, c)| (m.clone(), ParamPoly::constant(c.clone()))),
        )
    }

    /// Re-labels the polynomial into another space with the same number of variables.
    pub fn with_space(&self, space: &VarSpace) -> MultiPoly {
        assert_eq!(space.len(), self.space.len());
        MultiPoly {
            space: space.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Coefficient-wise division by a scalar polynomial in `p`.
    pub fn div_scalar_exact(&self, c: &ParamPoly) -> Option<MultiPoly> {
        let terms: Option<BTreeMap<_, _>> = self
            .terms
            .iter()
            .map(|(m, x)| x.div_exact(c).map(|q| (m.clone(), q)))
            .collect();
        terms.map(|terms| MultiPoly {
            space: self.space.clone(),
            terms,
        })
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
