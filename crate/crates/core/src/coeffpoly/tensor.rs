//! Polynomials on a doubled variable space, modelling `S ⊗_ℚ S`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::multi::{Monomial, MultiPoly, VarSpace};
use super::param::ParamPoly;
use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An element of `S ⊗ S`: a polynomial over `[left vars…, right vars…]`.
/// Right-hand names are the left names with a leading `x` replaced by `y`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorPoly {
    poly: MultiPoly,
    base: VarSpace,
}

/// Doubled variable space for a base space.
pub fn doubled_space(base: &VarSpace) -> VarSpace {
    let right = base.names().iter().map(|n| match n.strip_prefix('x') {
        Some(rest) => format!("y{rest}"),
        None => format!("{n}'"),
    });
    VarSpace::new(base.names().iter().cloned().chain(right))
}

impl TensorPoly {
    pub fn zero(base: &VarSpace) -> Self {
        TensorPoly {
            poly: MultiPoly::zero(&doubled_space(base)),
            base: base.clone(),
        }
    }

    pub fn one(base: &VarSpace) -> Self {
        Self::constant(base, ParamPoly::one())
    }

    pub fn constant(base: &VarSpace, c: ParamPoly) -> Self {
        TensorPoly {
            poly: MultiPoly::constant(&doubled_space(base), c),
            base: base.clone(),
        }
    }

    /// `f ⊗ 1` or `1 ⊗ f`.
    pub fn embed(f: &MultiPoly, side: Side) -> Self {
        let base = f.space().clone();
        let n = base.len();
        let space = doubled_space(&base);
        let poly = MultiPoly::from_terms(
            &space,
            f.terms().map(|(m, c)| {
                let mut e = vec![0u16; 2 * n];
                let off = if side == Side::Left { 0 } else { n };
                e[off..off + n].copy_from_slice(m.exponents());
                (Monomial::from_exponents(e), c.clone())
            }),
        );
        TensorPoly { poly, base }
    }

    pub fn left(f: &MultiPoly) -> Self {
        Self::embed(f, Side::Left)
    }

    pub fn right(f: &MultiPoly) -> Self {
        Self::embed(f, Side::Right)
    }

    pub fn var(base: &VarSpace, i: usize, side: Side) -> Self {
        Self::embed(&MultiPoly::var(base, i), side)
    }

    /// Wraps a polynomial already living on the doubled space of `base`.
    pub fn from_poly(base: &VarSpace, poly: MultiPoly) -> Result<Self, PolyError> {
        let expected = doubled_space(base);
        if *poly.space() != expected {
            return Err(PolyError::SpaceMismatch {
                left: expected.names().join(","),
                right: poly.space().names().join(","),
            });
        }
        Ok(TensorPoly {
            poly,
            base: base.clone(),
        })
    }

    pub fn base(&self) -> &VarSpace {
        &self.base
    }

    pub fn as_poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.poly.total_degree()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.poly.is_homogeneous_of(d)
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        TensorPoly {
            poly: self.poly.scale(c),
            base: self.base.clone(),
        }
    }

    /// Applies `images` (a map of base variables, as for
    /// [`MultiPoly::substitute_monomial`]) to one factor only.
    pub fn act_on(&self, side: Side, images: &[(usize, ParamPoly)]) -> Self {
        let n = self.base.len();
        let mut full: Vec<(usize, ParamPoly)> = (0..2 * n).map(|i| (i, ParamPoly::one())).collect();
        let off = if side == Side::Left { 0 } else { n };
        for (i, (j, c)) in images.iter().enumerate() {
            full[off + i] = (off + j, c.clone());
        }
        TensorPoly {
            poly: self.poly.substitute_monomial(self.poly.space(), &full),
            base: self.base.clone(),
        }
    }

    /// Divides exactly by a polynomial in the left factor.
    pub fn divide_exact_left(&self, divisor: &MultiPoly) -> Result<Self, PolyError> {
        let d = TensorPoly::left(divisor);
        Ok(TensorPoly {
            poly: self.poly.divide_exact(&d.poly)?,
            base: self.base.clone(),
        })
    }

    /// Linear substitution into a target space: left and right variables
    /// receive separate images.
    pub fn substitute(&self, target: &VarSpace, left: &[MultiPoly], right: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        let images: Vec<MultiPoly> = left.iter().chain(right).cloned().collect();
        self.poly.substitute_linear(target, &images)
    }

    /// Splits into `Σ a_k ⊗ b_k` with monomials `b_k` on the right.
    pub fn right_decomposition(&self) -> Vec<(MultiPoly, Monomial)> {
        let n = self.base.len();
        let mut groups: std::collections::BTreeMap<Monomial, MultiPoly> = Default::default();
        for (m, c) in self.poly.terms() {
            let e = m.exponents();
            let rm = Monomial::from_exponents(e[n..].to_vec());
            let lm = Monomial::from_exponents(e[..n].to_vec());
            let entry = groups.entry(rm).or_insert_with(|| MultiPoly::zero(&self.base));
            *entry = &*entry + &MultiPoly::term(&self.base, lm, c.clone());
        }
        groups.into_iter().map(|(r, l)| (l, r)).collect()
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl fmt::Debug for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorPoly({})", self.poly)
    }
}

macro_rules! tensor_op {
    ($tr:ident, $m:ident) => {
        impl $tr for &TensorPoly {
            type Output = TensorPoly;
            fn $m(self, rhs: &TensorPoly) -> TensorPoly {
                TensorPoly {
                    poly: (&self.poly).$m(&rhs.poly),
                    base: self.base.clone(),
                }
            }
        }
        impl $tr for TensorPoly {
            type Output = TensorPoly;
            fn $m(self, rhs: TensorPoly) -> TensorPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&TensorPoly> for TensorPoly {
            type Output = TensorPoly;
            fn $m(self, rhs: &TensorPoly) -> TensorPoly {
                (&self).$m(rhs)
            }
        }
    };
}
tensor_op!(Add, add);
tensor_op!(Sub, sub);
tensor_op!(Mul, mul);

impl Neg for &TensorPoly {
    type Output = TensorPoly;
    fn neg(self) -> TensorPoly {
        TensorPoly {
            poly: -&self.poly,
            base: self.base.clone(),
        }
    }
}
