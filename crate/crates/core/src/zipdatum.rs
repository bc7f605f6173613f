//! Zip data of a pair (root datum, dominant cocharacter): the types `I`, `J`,
//! `I°`, the frame element `z`, the index set `^IW`, the subsets `I_w` and
//! the point counts `γ(w)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coeffpoly::ParamPoly;
use crate::rootweyl::{CartanComponent, CartanKind, Root, RootDatum, WeylElt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZipError {
    #[error("cocharacter {mu:?} is not dominant: it pairs negatively with simple root s{index}")]
    NonDominantCocharacter { mu: Vec<i32>, index: usize },
    #[error("cocharacter has {got} entries, the datum has {expected} variables")]
    CocharacterLength { expected: usize, got: usize },
    #[error("unsupported twisted form: {0}")]
    UnsupportedTwistedForm(String),
}

/// Integer weight vector in the basis dual to the character variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cocharacter(pub Vec<i32>);

impl Cocharacter {
    pub fn pairing(&self, alpha: &Root) -> i32 {
        alpha.dot(&self.0)
    }

    /// Returns `(w, w(μ))` with `w(μ)` dominant.
    pub fn dominantize(&self, datum: &RootDatum) -> (WeylElt, Cocharacter) {
        let mut w = datum.identity();
        let mut mu = Root(self.0.clone());
        while let Some(i) = (0..datum.num_simple()).find(|&i| datum.simple_root(i).dot(&mu.0) < 0) {
            let s = datum.simple_reflection(i);
            mu = s.act_root(&mu);
            w = s.compose(&w);
        }
        (w, Cocharacter(mu.0))
    }
}

#[derive(Debug, Clone)]
pub struct ZipDatum {
    pub datum: RootDatum,
    pub mu: Cocharacter,
    pub i_type: Vec<usize>,
    pub j_type: Vec<usize>,
    pub z: WeylElt,
    pub i_opp: Vec<usize>,
    pub iw: Vec<WeylElt>,
    pub d: usize,
}

fn simple_index_of(datum: &RootDatum, r: &Root) -> usize {
    datum
        .simple_index_up_to_sign(r)
        .expect("conjugate of a simple root in I is simple")
}

pub fn build_zipdatum(datum: &RootDatum, mu: Cocharacter) -> Result<ZipDatum, ZipError> {
    if mu.0.len() != datum.nvars() {
        return Err(ZipError::CocharacterLength {
            expected: datum.nvars(),
            got: mu.0.len(),
        });
    }
    if let Some(i) = (0..datum.num_simple()).find(|&i| mu.pairing(datum.simple_root(i)) < 0) {
        return Err(ZipError::NonDominantCocharacter {
            mu: mu.0.clone(),
            index: i + 1,
        });
    }
    // Levi type of the centralizer of μ; P is of the opposite type.
    let i_opp: Vec<usize> = (0..datum.num_simple())
        .filter(|&i| mu.pairing(datum.simple_root(i)) == 0)
        .collect();
    let all: Vec<usize> = (0..datum.num_simple()).collect();
    let z = datum.longest_element(&i_opp).compose(&datum.longest_element(&all));
    let z_inv = z.inverse();
    let mut i_type: Vec<usize> = i_opp
        .iter()
        .map(|&i| simple_index_of(datum, &z_inv.act_root(datum.simple_root(i))))
        .collect();
    i_type.sort_unstable();
    let mut j_type: Vec<usize> = i_opp
        .iter()
        .map(|&i| simple_index_of(datum, &datum.frobenius_root(datum.simple_root(i))))
        .collect();
    j_type.sort_unstable();
    let iw = datum.min_coset_reps(&i_type);
    let d = datum.positive_roots().len() - datum.positive_roots_of(&i_type).len();
    Ok(ZipDatum {
        datum: datum.clone(),
        mu,
        i_type,
        j_type,
        z,
        i_opp,
        iw,
        d,
    })
}

impl ZipDatum {
    pub fn length(&self, w: &WeylElt) -> usize {
        self.datum.length(w)
    }

    pub fn contains(&self, w: &WeylElt) -> bool {
        self.iw.contains(w)
    }

    /// Minimal length representative of `W_I w`.
    pub fn coset_representative(&self, w: &WeylElt) -> WeylElt {
        let mut cur = w.clone();
        while let Some(&i) = self.i_type.iter().find(|&&i| self.datum.is_left_descent(&cur, i)) {
            cur = self.datum.simple_reflection(i).compose(&cur);
        }
        cur
    }

    /// `σ_w(α) = w(φ(z(α)))`, using the permutation part of the Frobenius.
    pub fn sigma_root(&self, w: &WeylElt, alpha: &Root) -> Root {
        w.act_root(&self.datum.frobenius_root(&self.z.act_root(alpha)))
    }

    /// The simple index hit by `σ_w` on the simple root `i`, if any.
    fn sigma_simple(&self, w: &WeylElt, i: usize) -> Option<usize> {
        self.datum
            .simple_index_up_to_sign(&self.sigma_root(w, self.datum.simple_root(i)))
    }
}

/// `I_w`: the largest subset of `I` mapped into itself by `σ_w`.
pub fn type_of_w(zd: &ZipDatum, w: &WeylElt) -> Vec<usize> {
    let mut k: BTreeSet<usize> = zd.i_type.iter().copied().collect();
    loop {
        let next: BTreeSet<usize> = k
            .iter()
            .copied()
            .filter(|&s| zd.sigma_simple(w, s).is_some_and(|t| k.contains(&t)))
            .collect();
        if next == k {
            return k.into_iter().collect();
        }
        k = next;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitForm {
    Linear,
    Unitary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Vertex sets of the components in the orbit, in `σ_w` order.
    pub components: Vec<Vec<usize>>,
    /// Vertex count of each component.
    pub m: usize,
    /// Orbit length.
    pub l: usize,
    pub component_type: String,
    pub form: OrbitForm,
    /// Action of `σ_w^l` on the first component.
    pub return_map: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct OrbitReport {
    pub orbits: Vec<Orbit>,
}

fn connected_components(datum: &RootDatum, verts: &[usize]) -> Vec<Vec<usize>> {
    let mut left: BTreeSet<usize> = verts.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        let mut comp = vec![start];
        left.remove(&start);
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            let nbrs: Vec<usize> = left.iter().copied().filter(|&u| datum.simple_adjacent(u, v)).collect();
            for u in nbrs {
                left.remove(&u);
                comp.push(u);
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Dynkin type of a connected set of simple roots.
fn dynkin_type(datum: &RootDatum, comp: &[usize]) -> String {
    let m = comp.len();
    let norms: BTreeSet<i32> = comp.iter().map(|&i| datum.simple_root(i).norm2()).collect();
    let branch = comp
        .iter()
        .any(|&v| comp.iter().filter(|&&u| datum.simple_adjacent(u, v)).count() >= 3);
    if branch {
        return format!("D{m}");
    }
    if norms.len() > 1 {
        // The odd-length root sits at the end of the chain: short means B, long means C.
        let outlier = comp
            .iter()
            .map(|&i| datum.simple_root(i).norm2())
            .find(|&n| n != 2)
            .unwrap();
        return if outlier < 2 { format!("B{m}") } else { format!("C{m}") };
    }
    format!("A{m}")
}

pub fn orbit_analysis(zd: &ZipDatum, w: &WeylElt) -> OrbitReport {
    let iw = type_of_w(zd, w);
    let comps = connected_components(&zd.datum, &iw);
    let vmap = |v: usize| zd.sigma_simple(w, v).expect("I_w is σ_w-stable");
    let comp_of = |v: usize| comps.iter().position(|c| c.contains(&v)).unwrap();
    let mut seen = vec![false; comps.len()];
    let mut orbits = Vec::new();
    for start in 0..comps.len() {
        if seen[start] {
            continue;
        }
        let mut members = Vec::new();
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            members.push(comps[c].clone());
            c = comp_of(vmap(comps[c][0]));
        }
        let l = members.len();
        let return_map: Vec<(usize, usize)> = comps[start]
            .iter()
            .map(|&v| {
                let mut u = v;
                for _ in 0..l {
                    u = vmap(u);
                }
                (v, u)
            })
            .collect();
        let form = if return_map.iter().all(|(a, b)| a == b) {
            OrbitForm::Linear
        } else {
            OrbitForm::Unitary
        };
        orbits.push(Orbit {
            m: comps[start].len(),
            l,
            component_type: dynkin_type(&zd.datum, &comps[start]),
            form,
            return_map,
            components: members,
        });
    }
    OrbitReport { orbits }
}

/// `Σ_{u ∈ W_K} q^{ℓ(u)}` as coefficients in `q`.
fn poincare_counts(datum: &RootDatum, k: &[usize], fixed_by: Option<&[(usize, usize)]>) -> Vec<i64> {
    let mut counts = Vec::new();
    for u in datum.subgroup_elements(k) {
        if let Some(map) = fixed_by {
            let word = datum.reduced_word(&u);
            let image: Vec<usize> = word
                .iter()
                .map(|i| map.iter().find(|(a, _)| a == i).unwrap().1)
                .collect();
            if datum.from_word(&image).unwrap() != u {
                continue;
            }
        }
        let l = datum.length(&u);
        if counts.len() <= l {
            counts.resize(l + 1, 0);
        }
        counts[l] += 1;
    }
    counts
}

fn counts_at_power(counts: &[i64], l: usize) -> ParamPoly {
    ParamPoly::from_terms(
        counts
            .iter()
            .enumerate()
            .map(|(k, &c)| ((k * l) as u32, crate::coeffpoly::int(c))),
    )
}

/// `γ(w) = #Fℓ_w(F_p)`, a product over the `σ_w`-orbits of components of `I_w`.
///
/// A linear orbit of length `l` contributes the Poincaré polynomial of its
/// Weyl group at `q = p^l`. A unitary type-A orbit contributes the sum of
/// `q^{ℓ(π)}` over the permutations `π` fixed by the diagram involution,
/// which counts the rational flags of the quasi-split unitary group.
pub fn gamma(zd: &ZipDatum, w: &WeylElt) -> Result<ParamPoly, ZipError> {
    let mut out = ParamPoly::one();
    for orbit in orbit_analysis(zd, w).orbits {
        let comp = &orbit.components[0];
        let factor = match orbit.form {
            OrbitForm::Linear => counts_at_power(&poincare_counts(&zd.datum, comp, None), orbit.l),
            OrbitForm::Unitary => {
                let reversal = orbit
                    .return_map
                    .iter()
                    .all(|&(a, b)| b == comp[0] + comp[comp.len() - 1] - a);
                if !orbit.component_type.starts_with('A') || !reversal {
                    return Err(ZipError::UnsupportedTwistedForm(format!(
                        "component {} of type {} with σ_w^{} acting as {:?}",
                        fmt_set(comp),
                        orbit.component_type,
                        orbit.l,
                        orbit.return_map
                    )));
                }
                counts_at_power(&poincare_counts(&zd.datum, comp, Some(&orbit.return_map)), orbit.l)
            }
        };
        out = &out * &factor;
    }
    Ok(out)
}

fn fmt_set(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|i| format!("s{}", i + 1)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Named families of zip data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `Sp_{2g}`, `μ = (1^g)`.
    Siegel { g: usize },
    /// `SO_{2n+1}`, `μ = (1, 0^{n-1})`.
    SpinOdd { n: usize },
    /// `(GL_2)^d` with cyclic Frobenius, `μ = (1, 0)^d`.
    HilbertBlumenthal { d: usize },
    /// `GL_n`, `μ = (1^a, 0^{n-a})`.
    Gl { n: usize, a: usize },
}

impl Preset {
    pub fn root_datum(&self) -> RootDatum {
        match *self {
            Preset::Siegel { g } => RootDatum::simple(CartanComponent::c(g)),
            Preset::SpinOdd { n } => RootDatum::simple(CartanComponent::b(n)),
            Preset::HilbertBlumenthal { d } => {
                RootDatum::new(vec![CartanComponent::gl(2); d], (0..d).map(|i| (i + 1) % d).collect())
                    .expect("cyclic shift of identical components")
            }
            Preset::Gl { n, .. } => RootDatum::simple(CartanComponent::gl(n)),
        }
    }

    pub fn cocharacter(&self) -> Cocharacter {
        Cocharacter(match *self {
            Preset::Siegel { g } => vec![1; g],
            Preset::SpinOdd { n } => (0..n).map(|i| i32::from(i == 0)).collect(),
            Preset::HilbertBlumenthal { d } => (0..2 * d).map(|i| i32::from(i % 2 == 0)).collect(),
            Preset::Gl { n, a } => (0..n).map(|i| i32::from(i < a)).collect(),
        })
    }

    pub fn zip_datum(&self) -> ZipDatum {
        build_zipdatum(&self.root_datum(), self.cocharacter()).expect("preset cocharacters are dominant")
    }

    pub fn kind(&self) -> CartanKind {
        match self {
            Preset::Siegel { .. } => CartanKind::C,
            Preset::SpinOdd { .. } => CartanKind::B,
            _ => CartanKind::A,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Siegel { g } => write!(f, "siegel {g}"),
            Preset::SpinOdd { n } => write!(f, "spin-odd {n}"),
            Preset::HilbertBlumenthal { d } => write!(f, "hilbert-blumenthal {d}"),
            Preset::Gl { n, a } => write!(f, "gl {n} {a}"),
        }
    }
}
