//! Diagonal classes in `S ⊗ S`, divided differences, Schubert classes of the
//! Bruhat stack and the evaluation maps `i_w`.

use std::collections::HashMap;
use std::sync::RwLock;

use thiserror::Error;

use crate::coeffpoly::{rat, Monomial, MultiPoly, ParamPoly, TensorPoly, VarSpace};
use crate::rootweyl::{CartanKind, RootDatum, WeylElt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error("no diagonal formula for {kind:?} of rank {rank}")]
    Unsupported { kind: CartanKind, rank: usize },
}

#[derive(Debug, Clone)]
pub struct DiagonalClass {
    pub value: TensorPoly,
    pub datum: RootDatum,
}

#[derive(Debug, Clone)]
pub struct SchubertClass {
    pub w: WeylElt,
    pub value: TensorPoly,
}

/// Elementary symmetric polynomial `σ_k` in the given variables.
fn elementary(space: &VarSpace, vars: &[usize], k: usize) -> MultiPoly {
    let mut e = vec![MultiPoly::one(space)];
    for &v in vars {
        let x = MultiPoly::var(space, v);
        let mut next = e.clone();
        for j in 1..=k.min(e.len()) {
            let add = &e[j - 1] * &x;
            if j < next.len() {
                next[j] = &next[j] + &add;
            } else {
                next.push(add);
            }
        }
        e = next;
    }
    e.into_iter().nth(k).unwrap_or_else(|| MultiPoly::zero(space))
}

fn determinant(m: Vec<Vec<TensorPoly>>) -> TensorPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: Option<TensorPoly> = None;
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<TensorPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, c)| c.clone()).collect())
            .collect();
        let t = &m[0][col] * &determinant(minor);
        acc = Some(match acc {
            None if col % 2 == 0 => t,
            None => -&t,
            Some(a) if col % 2 == 0 => a + t,
            Some(a) => a - t,
        });
    }
    acc.unwrap_or_else(|| m[0][0].scale(&ParamPoly::zero()))
}

fn component_diagonal(datum: &RootDatum, c: usize) -> Result<TensorPoly, SchubertError> {
    let comp = datum.components()[c];
    let base = datum.space();
    let n = comp.rank;
    let off = datum.component_offset(c);
    let vars: Vec<usize> = (off..off + n).collect();
    let supported = match comp.kind {
        CartanKind::A => n >= 1,
        CartanKind::B | CartanKind::C => n >= 2,
        CartanKind::D => n >= 3,
    };
    if !supported {
        return Err(SchubertError::Unsupported {
            kind: comp.kind,
            rank: n,
        });
    }
    let mut phi = TensorPoly::one(base);
    for i in 0..n {
        for j in i + 1..n {
            let f = TensorPoly::left(&MultiPoly::var(base, vars[i])) - TensorPoly::right(&MultiPoly::var(base, vars[j]));
            phi = &phi * &f;
        }
    }
    let (k, top, scale) = match comp.kind {
        CartanKind::A => return Ok(phi),
        CartanKind::B => (n, n, rat(1, 2)),
        CartanKind::C => (n, n, rat(1, 1)),
        CartanKind::D => (n - 1, n, rat(1, 2)),
    };
    let chern = |i: i64| -> TensorPoly {
        if i < 0 || i as usize > top {
            return TensorPoly::zero(base);
        }
        let s = elementary(base, &vars, i as usize);
        (TensorPoly::left(&s) + TensorPoly::right(&s)).scale(&ParamPoly::constant(scale.clone()))
    };
    let matrix: Vec<Vec<TensorPoly>> = (1..=k as i64)
        .map(|i| (1..=k as i64).map(|j| chern(k as i64 + 1 + j - 2 * i)).collect())
        .collect();
    Ok(&phi * &determinant(matrix))
}

/// Lift of `[Brh_e]`: the product of the per-component determinantal formulas.
pub fn diagonal_class(datum: &RootDatum) -> Result<DiagonalClass, SchubertError> {
    let mut value = TensorPoly::one(datum.space());
    for c in 0..datum.components().len() {
        value = &value * &component_diagonal(datum, c)?;
    }
    Ok(DiagonalClass {
        value,
        datum: datum.clone(),
    })
}

/// Shape of a simple root: `x_i − ε x_j` or `c·x_i`.
enum RootShape {
    Pair { i: usize, j: usize, eps: i64 },
    Single { i: usize, c: i64 },
}

fn root_shape(datum: &RootDatum, k: usize) -> RootShape {
    let r = &datum.simple_root(k).0;
    let nz: Vec<usize> = (0..r.len()).filter(|&t| r[t] != 0).collect();
    match nz.as_slice() {
        [i, j] => RootShape::Pair {
            i: *i,
            j: *j,
            eps: -(r[*j] as i64) * r[*i] as i64,
        },
        [i] => RootShape::Single { i: *i, c: r[*i] as i64 },
        _ => unreachable!("classical simple roots have one or two coordinates"),
    }
}

/// `(f − s(f))/α` computed monomial by monomial; `offset` shifts variable
/// indices so that tensors act on their left block.
fn divided_difference_terms(shape: &RootShape, f: &MultiPoly, offset: usize) -> MultiPoly {
    let mut out = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        match *shape {
            RootShape::Single { i, c: scale } => {
                let a = e[i + offset];
                // (x^a − (−x)^a)/(c x) = (2/c)·x^{a−1} for odd a
                if a % 2 == 1 {
                    let mut ne = e.to_vec();
                    ne[i + offset] -= 1;
                    out.push((Monomial::from_exponents(ne), c.scale(&rat(2, scale))));
                }
            }
            RootShape::Pair { i, j, eps } => {
                let (ii, jj) = (i + offset, j + offset);
                let (a, b) = (e[ii], e[jj]);
                if a == b {
                    continue;
                }
                // With Y = εy: x^a y^b − s(x^a y^b) = ε^b (x^a Y^b − x^b Y^a).
                let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
                let sign = if eps < 0 && b % 2 == 1 { -sign } else { sign };
                for v in 0..hi - lo {
                    let u = hi - lo - 1 - v;
                    let s = if eps < 0 && (lo + v) % 2 == 1 { -sign } else { sign };
                    let mut ne = e.to_vec();
                    ne[ii] = lo + u;
                    ne[jj] = lo + v;
                    out.push((Monomial::from_exponents(ne), c.scale(&rat(s, 1))));
                }
            }
        }
    }
    MultiPoly::from_terms(f.space(), out)
}

/// Elements the divided differences act on.
pub trait DividedDifference: Sized {
    fn divided_difference(&self, datum: &RootDatum, i: usize) -> Self;
}

impl DividedDifference for MultiPoly {
    fn divided_difference(&self, datum: &RootDatum, i: usize) -> Self {
        divided_difference_terms(&root_shape(datum, i), self, 0)
    }
}

impl DividedDifference for TensorPoly {
    /// Acts on the left factor.
    fn divided_difference(&self, datum: &RootDatum, i: usize) -> Self {
        let poly = divided_difference_terms(&root_shape(datum, i), self.as_poly(), 0);
        TensorPoly::from_poly(self.base(), poly).expect("same doubled space")
    }
}

/// `δ_i(f) = (f − s_i f)/α_i`.
pub fn divided_difference<T: DividedDifference>(datum: &RootDatum, i: usize, f: &T) -> T {
    f.divided_difference(datum, i)
}

/// `δ_{i_1} ∘ ⋯ ∘ δ_{i_k}`: the last letter acts first.
pub fn delta_word<T: DividedDifference + Clone>(datum: &RootDatum, word: &[usize], f: &T) -> T {
    word.iter()
        .rev()
        .fold(f.clone(), |acc, &i| acc.divided_difference(datum, i))
}

/// `δ_w` along the lexicographically smallest reduced word.
pub fn delta_w<T: DividedDifference + Clone>(datum: &RootDatum, w: &WeylElt, f: &T) -> T {
    delta_word(datum, &datum.reduced_word(w), f)
}

/// `[Brh_w] = δ_w [Brh_e]`.
pub fn schubert_class(diag: &DiagonalClass, w: &WeylElt) -> SchubertClass {
    SchubertClass {
        w: w.clone(),
        value: delta_w(&diag.datum, w, &diag.value),
    }
}

/// Memoized Schubert classes of one datum: `[Brh_w] = δ_i [Brh_{s_i w}]`
/// with `s_i` the first letter of the reduced word of `w`.
pub struct SchubertCache {
    diag: DiagonalClass,
    classes: RwLock<HashMap<WeylElt, TensorPoly>>,
}

impl SchubertCache {
    pub fn new(diag: DiagonalClass) -> Self {
        SchubertCache {
            diag,
            classes: RwLock::new(HashMap::new()),
        }
    }

    pub fn diagonal(&self) -> &DiagonalClass {
        &self.diag
    }

    pub fn class(&self, w: &WeylElt) -> TensorPoly {
        if w.is_identity() {
            return self.diag.value.clone();
        }
        if let Some(v) = self.classes.read().unwrap().get(w) {
            return v.clone();
        }
        let datum = &self.diag.datum;
        let i = datum.reduced_word(w)[0];
        let shorter = datum.simple_reflection(i).compose(w);
        let v = self.class(&shorter).divided_difference(datum, i);
        self.classes.write().unwrap().insert(w.clone(), v.clone());
        v
    }
}

/// `i_w(r ⊗ r') = r·w(r')`.
pub fn i_w_eval(c: &TensorPoly, w: &WeylElt) -> MultiPoly {
    let base = c.base();
    let n = base.len();
    let images: Vec<(usize, ParamPoly)> = (0..n)
        .map(|i| (i, ParamPoly::one()))
        .chain(w.images().iter().map(|&(t, s)| (t, ParamPoly::from_int(s as i64))))
        .collect();
    c.as_poly().substitute_monomial(base, &images)
}

/// The tuple `(i_u(c))_{u ∈ W}`, in the order of `elements`.
pub fn evaluation_tuple(c: &TensorPoly, elements: &[WeylElt]) -> Vec<MultiPoly> {
    elements.iter().map(|u| i_w_eval(c, u)).collect()
}

/// Product of the positive roots as an element of `S`.
pub fn positive_root_product(datum: &RootDatum) -> MultiPoly {
    datum
        .positive_roots()
        .iter()
        .fold(MultiPoly::one(datum.space()), |acc, a| &acc * &a.to_poly(datum.space()))
}

/// Graham's criterion: `i_e = ∏ α` and `i_w = 0` for `w ≠ e`.
pub fn graham_criterion(diag: &DiagonalClass) -> bool {
    let target = positive_root_product(&diag.datum);
    diag.datum.all_elements().iter().all(|w| {
        let v = i_w_eval(&diag.value, w);
        if w.is_identity() {
            v == target
        } else {
            v.is_zero()
        }
    })
}

/// `E_w = {α > 0 : ℓ(w s_α) = ℓ(w) − 1}`.
pub fn descent_set_ew(datum: &RootDatum, w: &WeylElt) -> Vec<crate::rootweyl::Root> {
    let lw = datum.length(w);
    datum
        .positive_roots()
        .iter()
        .filter(|a| lw > 0 && datum.length(&w.compose(&datum.reflection(a))) == lw - 1)
        .cloned()
        .collect()
}

/// Which character the coroots are paired with on the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChevalleyPairing {
    /// `(λ⊗1 − 1⊗w^{-1}λ)[Brh_w] = Σ_{α∈E_w} ⟨λ,α^∨⟩[Brh_{w s_α}]`.
    Lambda,
    /// `(1⊗μ − wμ⊗1)[Brh_w] = Σ_{α∈E_w} ⟨μ,α^∨⟩[Brh_{w s_α}]` with `μ = w^{-1}λ`.
    InverseImage,
}

/// Both sides of the Chevalley relation for `w` and `λ`.
pub fn chevalley_sides_with(
    diag: &DiagonalClass,
    w: &WeylElt,
    lambda: &[i32],
    pairing: ChevalleyPairing,
) -> (TensorPoly, TensorPoly) {
    let datum = &diag.datum;
    let space = datum.space();
    let lam = crate::rootweyl::Root(lambda.to_vec());
    let mu = w.inverse().act_root(&lam);
    let mut divisor = TensorPoly::left(&lam.to_poly(space)) - TensorPoly::right(&mu.to_poly(space));
    if pairing == ChevalleyPairing::InverseImage {
        divisor = -&divisor;
    }
    let lhs = &divisor * &schubert_class(diag, w).value;
    let mut rhs = TensorPoly::zero(space);
    for a in descent_set_ew(datum, w) {
        let k = match pairing {
            ChevalleyPairing::Lambda => a.coroot_pairing(lambda),
            ChevalleyPairing::InverseImage => a.coroot_pairing(&mu.0),
        };
        if k == 0 {
            continue;
        }
        let ws = w.compose(&datum.reflection(&a));
        rhs = rhs + schubert_class(diag, &ws).value.scale(&ParamPoly::from_int(k as i64));
    }
    (lhs, rhs)
}

/// Both sides of `(λ⊗1 − 1⊗w^{-1}λ)[Brh_w] = Σ_{α∈E_w} ⟨λ,α^∨⟩[Brh_{w s_α}]`.
pub fn chevalley_sides(diag: &DiagonalClass, w: &WeylElt, lambda: &[i32]) -> (TensorPoly, TensorPoly) {
    chevalley_sides_with(diag, w, lambda, ChevalleyPairing::Lambda)
}

/// Compares the two sides through all `i_u`.
pub fn chevalley_check_with(diag: &DiagonalClass, w: &WeylElt, lambda: &[i32], pairing: ChevalleyPairing) -> bool {
    let (lhs, rhs) = chevalley_sides_with(diag, w, lambda, pairing);
    let diff = lhs - rhs;
    diag.datum.all_elements().iter().all(|u| i_w_eval(&diff, u).is_zero())
}

/// The relation with the coroots paired against `λ`.
pub fn chevalley_check(diag: &DiagonalClass, w: &WeylElt, lambda: &[i32]) -> bool {
    chevalley_check_with(diag, w, lambda, ChevalleyPairing::Lambda)
}
