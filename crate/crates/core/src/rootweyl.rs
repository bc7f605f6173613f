//! Classical root data, Weyl groups realized as signed permutations of the
//! character basis, and the Frobenius action on characters, polynomials and
//! Weyl elements.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::coeffpoly::{MultiPoly, ParamPoly, ParamRational, Side, TensorPoly, VarSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("unsupported component {kind:?}{rank}")]
    InvalidComponent { kind: CartanKind, rank: usize },
    #[error("frobenius permutation is invalid: {0}")]
    InvalidFrobenius(String),
    #[error("cannot parse Weyl element `{0}`")]
    Parse(String),
    #[error("simple reflection s{0} does not exist")]
    NoSuchReflection(usize),
    #[error("vector is not a root: {0:?}")]
    NotARoot(Vec<i32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanKind {
    A,
    B,
    C,
    D,
}

/// One simple factor. `rank` is the number of character variables: `A`
/// with rank `n` is `GL_n` (Dynkin type `A_{n-1}`), `B_n = SO(2n+1)`,
/// `C_n = Sp_{2n}`, `D_n = SO(2n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanComponent {
    pub kind: CartanKind,
    pub rank: usize,
}

impl CartanComponent {
    pub fn new(kind: CartanKind, rank: usize) -> Result<Self, RootError> {
        let ok = match kind {
            CartanKind::A | CartanKind::B | CartanKind::C => rank >= 1,
            CartanKind::D => rank >= 3,
        };
        if ok {
            Ok(CartanComponent { kind, rank })
        } else {
            Err(RootError::InvalidComponent { kind, rank })
        }
    }

    /// `GL_n`.
    pub fn gl(n: usize) -> Self {
        Self::new(CartanKind::A, n).expect("GL_n needs n >= 1")
    }

    pub fn b(n: usize) -> Self {
        Self::new(CartanKind::B, n).expect("B_n needs n >= 1")
    }

    pub fn c(n: usize) -> Self {
        Self::new(CartanKind::C, n).expect("C_n needs n >= 1")
    }

    pub fn d(n: usize) -> Self {
        Self::new(CartanKind::D, n).expect("D_n needs n >= 3")
    }

    pub fn num_simple(&self) -> usize {
        match self.kind {
            CartanKind::A => self.rank - 1,
            _ => self.rank,
        }
    }

    /// Simple roots in the component's own coordinates.
    fn simple_roots(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let unit = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        let mut out: Vec<Vec<i32>> = (0..n.saturating_sub(1))
            .map(|i| {
                let mut v = unit(i);
                v[i + 1] = -1;
                v
            })
            .collect();
        match self.kind {
            CartanKind::A => {}
            CartanKind::B => out.push(unit(n - 1)),
            CartanKind::C => out.push(unit(n - 1).into_iter().map(|a| 2 * a).collect()),
            CartanKind::D => {
                let mut v = vec![0; n];
                v[n - 2] = 1;
                v[n - 1] = 1;
                out.push(v);
            }
        }
        out
    }

    fn positive_roots(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = -1;
                out.push(v);
                if self.kind != CartanKind::A {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v[j] = 1;
                    out.push(v);
                }
            }
            match self.kind {
                CartanKind::B | CartanKind::C => {
                    let mut v = vec![0; n];
                    v[i] = if self.kind == CartanKind::B { 1 } else { 2 };
                    out.push(v);
                }
                _ => {}
            }
        }
        out
    }

    pub fn weyl_order(&self) -> usize {
        let fact: usize = (1..=self.rank).product();
        match self.kind {
            CartanKind::A => fact,
            CartanKind::B | CartanKind::C => fact << self.rank,
            CartanKind::D => fact << (self.rank - 1),
        }
    }
}

impl fmt::Display for CartanComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CartanKind::A => write!(f, "GL{}", self.rank),
            k => write!(f, "{:?}{}", k, self.rank),
        }
    }
}

/// Integer vector in the character basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }

    pub fn dot(&self, other: &[i32]) -> i32 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn norm2(&self) -> i32 {
        self.dot(&self.0)
    }

    /// Positive in the standard ordering: the first nonzero coordinate is positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|&&a| a != 0).is_some_and(|&a| a > 0)
    }

    /// `⟨λ, α^∨⟩` for this root `α`.
    pub fn coroot_pairing(&self, lambda: &[i32]) -> i32 {
        let num = 2 * self.dot(lambda);
        debug_assert_eq!(num % self.norm2(), 0);
        num / self.norm2()
    }

    pub fn to_poly(&self, space: &VarSpace) -> MultiPoly {
        let coeffs: Vec<ParamRational> = self.0.iter().map(|&a| crate::coeffpoly::int(a as i64)).collect();
        MultiPoly::linear(space, &coeffs)
    }
}

/// A finite product of classical components with a Frobenius permutation of
/// the components: `φ(x_j^(c)) = p·x_j^(frob[c])`.
#[derive(Clone)]
pub struct RootDatum {
    components: Vec<CartanComponent>,
    frobenius_perm: Vec<usize>,
    offsets: Vec<usize>,
    space: VarSpace,
    simple: Vec<Root>,
    simple_component: Vec<usize>,
    positive: Vec<Root>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components && self.frobenius_perm == other.frobenius_perm
    }
}

impl Eq for RootDatum {}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootDatum({self})")
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("×"))?;
        if self.frobenius_perm.iter().enumerate().any(|(i, &j)| i != j) {
            write!(f, " φ={:?}", self.frobenius_perm)?;
        }
        Ok(())
    }
}

impl RootDatum {
    /// Split datum: trivial Frobenius permutation.
    pub fn split(components: Vec<CartanComponent>) -> Self {
        let n = components.len();
        Self::new(components, (0..n).collect()).expect("identity permutation is valid")
    }

    pub fn simple(component: CartanComponent) -> Self {
        Self::split(vec![component])
    }

    pub fn new(components: Vec<CartanComponent>, frobenius_perm: Vec<usize>) -> Result<Self, RootError> {
        let k = components.len();
        if frobenius_perm.len() != k {
            return Err(RootError::InvalidFrobenius(format!(
                "{} entries for {} components",
                frobenius_perm.len(),
                k
            )));
        }
        let distinct: BTreeSet<usize> = frobenius_perm.iter().copied().collect();
        if distinct.len() != k || distinct.iter().any(|&j| j >= k) {
            return Err(RootError::InvalidFrobenius(format!("{frobenius_perm:?} is not a permutation")));
        }
        for (c, &t) in frobenius_perm.iter().enumerate() {
            if components[c] != components[t] {
                return Err(RootError::InvalidFrobenius(format!(
                    "component {c} ({}) sent to component {t} ({})",
                    components[c], components[t]
                )));
            }
        }
        let mut offsets = Vec::with_capacity(k);
        let mut total = 0;
        for c in &components {
            offsets.push(total);
            total += c.rank;
        }
        let names: Vec<String> = if k == 1 {
            (1..=total).map(|i| format!("x{i}")).collect()
        } else {
            components
                .iter()
                .enumerate()
                .flat_map(|(ci, c)| (1..=c.rank).map(move |j| format!("x{j}_{ci}")))
                .collect()
        };
        let embed = |ci: usize, v: Vec<i32>| {
            let mut full = vec![0; total];
            full[offsets[ci]..offsets[ci] + v.len()].copy_from_slice(&v);
            Root(full)
        };
        let mut simple = Vec::new();
        let mut simple_component = Vec::new();
        let mut positive = Vec::new();
        for (ci, c) in components.iter().enumerate() {
            for r in c.simple_roots() {
                simple.push(embed(ci, r));
                simple_component.push(ci);
            }
            for r in c.positive_roots() {
                positive.push(embed(ci, r));
            }
        }
        Ok(RootDatum {
            components,
            frobenius_perm,
            offsets,
            space: VarSpace::new(names),
            simple,
            simple_component,
            positive,
        })
    }

    pub fn components(&self) -> &[CartanComponent] {
        &self.components
    }

    pub fn frobenius_perm(&self) -> &[usize] {
        &self.frobenius_perm
    }

    pub fn is_split(&self) -> bool {
        self.frobenius_perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    pub fn nvars(&self) -> usize {
        self.space.len()
    }

    pub fn component_offset(&self, c: usize) -> usize {
        self.offsets[c]
    }

    /// Component index of a variable.
    pub fn component_of_var(&self, i: usize) -> usize {
        self.offsets.iter().rposition(|&o| o <= i).unwrap()
    }

    pub fn num_simple(&self) -> usize {
        self.simple.len()
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.simple[i]
    }

    pub fn simple_component(&self, i: usize) -> usize {
        self.simple_component[i]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElt {
        self.reflection(&self.simple[i])
    }

    pub fn simple_reflections(&self) -> Vec<WeylElt> {
        (0..self.num_simple()).map(|i| self.simple_reflection(i)).collect()
    }

    pub fn is_root(&self, v: &Root) -> bool {
        self.positive.contains(v) || self.positive.contains(&v.neg())
    }

    /// Index of the simple root equal to `±v`, if any.
    pub fn simple_index_up_to_sign(&self, v: &Root) -> Option<usize> {
        let n = v.neg();
        self.simple.iter().position(|s| *s == *v || *s == n)
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt::identity(self.nvars())
    }

    /// The reflection `v ↦ v − ⟨v, α^∨⟩α`.
    pub fn reflection(&self, alpha: &Root) -> WeylElt {
        let n = self.nvars();
        let norm = alpha.norm2();
        let images = (0..n)
            .map(|i| {
                let mut v = vec![0i32; n];
                v[i] = 1;
                let pairing = 2 * alpha.0[i] / norm;
                for (k, a) in alpha.0.iter().enumerate() {
                    v[k] -= pairing * a;
                }
                let (j, s) = v
                    .iter()
                    .enumerate()
                    .find(|(_, &a)| a != 0)
                    .map(|(j, &a)| (j, a))
                    .expect("reflection image is a signed basis vector");
                debug_assert!(s == 1 || s == -1);
                (j, s as i8)
            })
            .collect();
        WeylElt { images }
    }

    /// `ℓ(w) = #{α > 0 : w(α) < 0}`.
    pub fn length(&self, w: &WeylElt) -> usize {
        self.positive
            .iter()
            .filter(|a| !w.act_root(a).is_positive())
            .count()
    }

    /// Left descent: `ℓ(s_i w) < ℓ(w)`, i.e. `w^{-1}(α_i) < 0`.
    pub fn is_left_descent(&self, w: &WeylElt, i: usize) -> bool {
        !w.inverse().act_root(&self.simple[i]).is_positive()
    }

    /// Lexicographically smallest reduced word (0-based simple indices).
    pub fn reduced_word(&self, w: &WeylElt) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while let Some(i) = (0..self.num_simple()).find(|&i| self.is_left_descent(&cur, i)) {
            word.push(i);
            cur = self.simple_reflection(i).compose(&cur);
        }
        debug_assert!(cur.is_identity());
        word
    }

    /// `s_{i_1} ⋯ s_{i_k}`.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElt, RootError> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.num_simple() {
                return Err(RootError::NoSuchReflection(i + 1));
            }
            w = w.compose(&self.simple_reflection(i));
        }
        Ok(w)
    }

    /// Parses `s2,s1,s2` (1-based), `e`, or a one-line signed permutation `[2,-1]`.
    pub fn parse_elt(&self, s: &str) -> Result<WeylElt, RootError> {
        let s = s.trim();
        if s.starts_with('[') {
            let w = WeylElt::parse_one_line(s)?;
            if w.images.len() != self.nvars() || !self.preserves_roots(&w) {
                return Err(RootError::Parse(s.to_string()));
            }
            return Ok(w);
        }
        if s.is_empty() || s == "e" {
            return Ok(self.identity());
        }
        let word = s
            .split(',')
            .map(|t| {
                t.trim()
                    .strip_prefix('s')
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .map(|k| k - 1)
                    .ok_or_else(|| RootError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.from_word(&word)
    }

    pub fn format_word(&self, w: &WeylElt) -> String {
        let word = self.reduced_word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(",")
        }
    }

    pub fn preserves_roots(&self, w: &WeylElt) -> bool {
        self.positive.iter().all(|a| self.is_root(&w.act_root(a)))
    }

    /// All elements of the parabolic subgroup `W_K`, by breadth-first search.
    pub fn subgroup_elements(&self, k: &[usize]) -> Vec<WeylElt> {
        let gens: Vec<WeylElt> = k.iter().map(|&i| self.simple_reflection(i)).collect();
        let mut seen: HashSet<WeylElt> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity());
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let nw = w.compose(g);
                if seen.insert(nw.clone()) {
                    queue.push_back(nw);
                }
            }
            out.push(w);
        }
        out
    }

    pub fn all_elements(&self) -> Vec<WeylElt> {
        let all: Vec<usize> = (0..self.num_simple()).collect();
        self.subgroup_elements(&all)
    }

    pub fn weyl_order(&self) -> usize {
        self.components.iter().map(|c| c.weyl_order()).product()
    }

    /// Maximal-length element of `W_K`.
    pub fn longest_element(&self, k: &[usize]) -> WeylElt {
        self.subgroup_elements(k)
            .into_iter()
            .max_by_key(|w| self.length(w))
            .unwrap()
    }

    /// Positive roots of the parabolic subsystem `Φ_K`.
    pub fn positive_roots_of(&self, k: &[usize]) -> Vec<Root> {
        let w0k = self.longest_element(k);
        // Φ⁺_K is exactly the set of positive roots sent to negative ones by w_{0,K}.
        self.positive
            .iter()
            .filter(|a| !w0k.act_root(a).is_positive())
            .cloned()
            .collect()
    }

    /// Minimal length representatives `^K W = {w : ℓ(sw) > ℓ(w) ∀ s ∈ K}`,
    /// sorted by length and then by reduced word.
    pub fn min_coset_reps(&self, k: &[usize]) -> Vec<WeylElt> {
        let mut reps: Vec<(usize, Vec<usize>, WeylElt)> = self
            .all_elements()
            .into_iter()
            .filter(|w| k.iter().all(|&i| !self.is_left_descent(w, i)))
            .map(|w| (self.length(&w), self.reduced_word(&w), w))
            .collect();
        reps.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        reps.into_iter().map(|(_, _, w)| w).collect()
    }

    /// Subword criterion against the reduced word of `w`.
    pub fn bruhat_leq(&self, u: &WeylElt, w: &WeylElt) -> bool {
        let mut reach: HashSet<WeylElt> = HashSet::from([self.identity()]);
        for i in self.reduced_word(w) {
            let s = self.simple_reflection(i);
            let ext: Vec<WeylElt> = reach.iter().map(|x| x.compose(&s)).collect();
            reach.extend(ext);
        }
        reach.contains(u)
    }

    /// Dynkin adjacency of two simple roots.
    pub fn simple_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.simple[i].dot(&self.simple[j].0) != 0
    }

    /// Variable map of the Frobenius: `x_j^(c) ↦ x_j^(frob[c])`.
    fn frobenius_var(&self, i: usize) -> usize {
        let c = self.component_of_var(i);
        let within = i - self.offsets[c];
        self.offsets[self.frobenius_perm[c]] + within
    }

    /// `φ(λ) = p·σ^{-1}λ` on a character, as a linear form.
    pub fn frobenius_character(&self, lambda: &[i32]) -> MultiPoly {
        self.frobenius_poly(&Root(lambda.to_vec()).to_poly(&self.space))
    }

    /// The permutation part of the Frobenius on a root (no factor `p`).
    pub fn frobenius_root(&self, alpha: &Root) -> Root {
        let mut v = vec![0; self.nvars()];
        for (i, &a) in alpha.0.iter().enumerate() {
            v[self.frobenius_var(i)] = a;
        }
        Root(v)
    }

    /// Images of the variables under `φ`, for [`MultiPoly::substitute_monomial`].
    pub fn frobenius_images(&self) -> Vec<(usize, ParamPoly)> {
        (0..self.nvars()).map(|i| (self.frobenius_var(i), ParamPoly::p())).collect()
    }

    /// `φ(f) = p^d σ^{-1} f` for homogeneous `f` of degree `d`.
    pub fn frobenius_poly(&self, f: &MultiPoly) -> MultiPoly {
        f.substitute_monomial(&self.space, &self.frobenius_images())
    }

    /// `φ(w)`: conjugation by the component permutation.
    pub fn frobenius_weyl(&self, w: &WeylElt) -> WeylElt {
        let n = self.nvars();
        let perm = WeylElt {
            images: (0..n).map(|i| (self.frobenius_var(i), 1)).collect(),
        };
        perm.compose(w).compose(&perm.inverse())
    }
}

/// Signed permutation of the character basis: `w(x_i) = sign_i · x_{target_i}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    images: Vec<(usize, i8)>,
}

impl WeylElt {
    pub fn identity(n: usize) -> Self {
        WeylElt {
            images: (0..n).map(|i| (i, 1)).collect(),
        }
    }

    pub fn images(&self) -> &[(usize, i8)] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &(j, s))| i == j && s == 1)
    }

    /// `(self ∘ other)(λ) = self(other(λ))`.
    pub fn compose(&self, other: &WeylElt) -> WeylElt {
        WeylElt {
            images: other
                .images
                .iter()
                .map(|&(t, s)| {
                    let (t2, s2) = self.images[t];
                    (t2, s * s2)
                })
                .collect(),
        }
    }

    pub fn inverse(&self) -> WeylElt {
        let mut images = vec![(0, 1); self.images.len()];
        for (i, &(t, s)) in self.images.iter().enumerate() {
            images[t] = (i, s);
        }
        WeylElt { images }
    }

    pub fn act_root(&self, v: &Root) -> Root {
        let mut out = vec![0; v.0.len()];
        for (i, &a) in v.0.iter().enumerate() {
            let (t, s) = self.images[i];
            out[t] += a * s as i32;
        }
        Root(out)
    }

    fn poly_images(&self) -> Vec<(usize, ParamPoly)> {
        self.images
            .iter()
            .map(|&(t, s)| (t, ParamPoly::from_int(s as i64)))
            .collect()
    }

    /// `w(f)` for `f ∈ S`.
    pub fn act_poly(&self, f: &MultiPoly) -> MultiPoly {
        f.substitute_monomial(f.space(), &self.poly_images())
    }

    /// `w` acting on one factor of `S ⊗ S`.
    pub fn act_tensor(&self, t: &TensorPoly, side: Side) -> TensorPoly {
        t.act_on(side, &self.poly_images())
    }

    /// Number of sign changes.
    pub fn num_negations(&self) -> usize {
        self.images.iter().filter(|(_, s)| *s < 0).count()
    }

    /// One-line form `[w(x1), w(x2), …]` with 1-based signed indices.
    pub fn one_line(&self) -> String {
        let parts: Vec<String> = self
            .images
            .iter()
            .map(|&(t, s)| format!("{}", (t as i64 + 1) * s as i64))
            .collect();
        format!("[{}]", parts.join(","))
    }

    pub fn parse_one_line(s: &str) -> Result<WeylElt, RootError> {
        let bad = || RootError::Parse(s.to_string());
        let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let images: Vec<(usize, i8)> = inner
            .split(',')
            .map(|t| {
                let v: i64 = t.trim().parse().map_err(|_| bad())?;
                if v == 0 {
                    return Err(bad());
                }
                Ok(((v.unsigned_abs() - 1) as usize, v.signum() as i8))
            })
            .collect::<Result<_, _>>()?;
        let targets: BTreeSet<usize> = images.iter().map(|(t, _)| *t).collect();
        if targets.len() != images.len() || targets.iter().any(|&t| t >= images.len()) {
            return Err(bad());
        }
        Ok(WeylElt { images })
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> RootDatum {
        RootDatum::simple(CartanComponent::c(2))
    }

    #[test]
    fn simple_roots_by_type() {
        let b2 = RootDatum::simple(CartanComponent::b(2));
        assert_eq!(b2.simple_roots(), [Root(vec![1, -1]), Root(vec![0, 1])]);
        let a2 = RootDatum::simple(CartanComponent::gl(3));
        assert_eq!(a2.simple_roots(), [Root(vec![1, -1, 0]), Root(vec![0, 1, -1])]);
        let d3 = RootDatum::simple(CartanComponent::d(3));
        assert_eq!(d3.simple_root(2), &Root(vec![0, 1, 1]));
    }

    #[test]
    fn c2_reflections() {
        let c2 = c2();
        assert_eq!(c2.simple_reflection(0).one_line(), "[2,1]");
        assert_eq!(c2.simple_reflection(1).one_line(), "[1,-2]");
    }

    #[test]
    fn positive_roots_listed() {
        let b2 = RootDatum::simple(CartanComponent::b(2));
        let set: BTreeSet<Root> = b2.positive_roots().iter().cloned().collect();
        let want: BTreeSet<Root> = [vec![1, -1], vec![0, 1], vec![1, 0], vec![1, 1]]
            .into_iter()
            .map(Root)
            .collect();
        assert_eq!(set, want);
        let hb = RootDatum::new(vec![CartanComponent::gl(2); 3], vec![1, 2, 0]).unwrap();
        assert_eq!(hb.positive_roots().len(), 3);
        assert!(hb.positive_roots().iter().all(|r| r.0.iter().filter(|&&a| a != 0).count() == 2));
    }

    #[test]
    fn lengths_and_words() {
        let c2 = c2();
        let w = c2.parse_elt("s2,s1,s2").unwrap();
        assert_eq!(c2.length(&w), 3);
        assert_eq!(c2.length(&c2.identity()), 0);
        let w0 = c2.longest_element(&[0, 1]);
        assert_eq!(c2.length(&w0), 4);
        assert_eq!(w0.one_line(), "[-1,-2]");
        assert_eq!(c2.from_word(&c2.reduced_word(&w)).unwrap(), w);
        assert_eq!(c2.longest_element(&[]), c2.identity());
        assert_eq!(c2.longest_element(&[0]).one_line(), "[2,1]");
    }

    #[test]
    fn siegel_coset_reps() {
        let c2 = c2();
        let reps: Vec<String> = c2.min_coset_reps(&[0]).iter().map(|w| c2.format_word(w)).collect();
        assert_eq!(reps, ["e", "s2", "s2,s1", "s2,s1,s2"]);
        let b2 = RootDatum::simple(CartanComponent::b(2));
        let reps: Vec<String> = b2.min_coset_reps(&[1]).iter().map(|w| b2.format_word(w)).collect();
        assert_eq!(reps, ["e", "s1", "s1,s2", "s1,s2,s1"]);
    }

    #[test]
    fn bruhat_small_cases() {
        let c2 = c2();
        let s1 = c2.simple_reflection(0);
        let s2 = c2.simple_reflection(1);
        assert!(!c2.bruhat_leq(&s1, &s2));
        assert!(c2.bruhat_leq(&c2.identity(), &s2));
        assert!(c2.bruhat_leq(&s2, &s2));
        assert!(c2.bruhat_leq(&s1, &c2.parse_elt("s2,s1").unwrap()));
    }

    #[test]
    fn one_line_round_trip() {
        let c2 = c2();
        let w = c2.parse_elt("[2,-1]").unwrap();
        assert_eq!(w.one_line(), "[2,-1]");
        assert!(c2.parse_elt("[1,1]").is_err());
        assert!(c2.parse_elt("s3").is_err());
    }

    #[test]
    fn frobenius_permutes_components() {
        let hb = RootDatum::new(vec![CartanComponent::gl(2); 3], vec![1, 2, 0]).unwrap();
        let x = hb.frobenius_character(&[0, 1, 0, 0, 0, 0]);
        assert_eq!(x.to_string(), "(p)*x2_1");
        let s0 = hb.simple_reflection(0);
        assert_eq!(hb.frobenius_weyl(&s0), hb.simple_reflection(1));
        assert!(RootDatum::new(vec![CartanComponent::gl(2), CartanComponent::gl(3)], vec![1, 0]).is_err());
    }

    #[test]
    fn d_components_need_rank_three() {
        assert!(CartanComponent::new(CartanKind::D, 2).is_err());
        let d3 = RootDatum::simple(CartanComponent::d(3));
        assert_eq!(d3.all_elements().len(), 24);
        assert!(d3.all_elements().iter().all(|w| w.num_negations() % 2 == 0));
    }
}
