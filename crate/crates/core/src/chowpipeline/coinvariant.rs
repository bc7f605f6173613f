use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::{CycleReport, PipelineError};
use crate::coeffpoly::{int, Monomial, MultiPoly, ParamPoly, ParamRational, VarSpace};
use crate::rootweyl::{CartanKind, RootDatum, WeylElt};
use crate::zipdatum::ZipDatum;

/// Sparse vector over ℚ indexed by monomial position within one degree.
pub type SparseVec = BTreeMap<usize, ParamRational>;

fn axpy(v: &mut SparseVec, c: &ParamRational, row: &SparseVec) {
    for (j, r) in row {
        let e = v.entry(*j).or_insert_with(ParamRational::zero);
        *e -= c * r;
        if e.is_zero() {
            v.remove(j);
        }
    }
}

/// Rows in echelon form keyed by their largest column, each with leading
/// coefficient one.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut bound = usize::MAX;
        loop {
            let next = v
                .range(..bound)
                .rev()
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { return v };
            axpy(&mut v, &c, &self.rows[&k]);
            bound = k;
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&k, lead)) = v.iter().next_back() else {
            return false;
        };
        let inv = lead.recip();
        let row = v.into_iter().map(|(j, c)| (j, c * &inv)).collect();
        self.rows.insert(k, row);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Echelon form that remembers each row as a combination of the inputs.
struct TrackedEchelon {
    rows: BTreeMap<usize, (SparseVec, Vec<ParamRational>)>,
    inputs: usize,
}

impl TrackedEchelon {
    fn new(inputs: usize) -> Self {
        TrackedEchelon {
            rows: BTreeMap::new(),
            inputs,
        }
    }

    fn reduce(&self, mut v: SparseVec, mut combo: Vec<ParamRational>) -> (SparseVec, Vec<ParamRational>) {
        let mut bound = usize::MAX;
        loop {
            let next = v
                .range(..bound)
                .rev()
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { return (v, combo) };
            let (row, rc) = &self.rows[&k];
            axpy(&mut v, &c, row);
            for (a, b) in combo.iter_mut().zip(rc) {
                *a -= &c * b;
            }
            bound = k;
        }
    }

    /// Inserts input number `i`; false if it is dependent on earlier inputs.
    fn insert(&mut self, i: usize, v: SparseVec) -> bool {
        let mut combo = vec![ParamRational::zero(); self.inputs];
        combo[i] = ParamRational::one();
        let (v, combo) = self.reduce(v, combo);
        let Some((&k, lead)) = v.iter().next_back() else {
            return false;
        };
        let inv = lead.recip();
        let row = v.into_iter().map(|(j, c)| (j, c * &inv)).collect();
        let combo = combo.into_iter().map(|c| c * &inv).collect();
        self.rows.insert(k, (row, combo));
        true
    }

    /// Coefficients `c` with `Σ c_i·input_i = target`, or the residual.
    fn solve(&self, target: SparseVec) -> Result<Vec<ParamRational>, SparseVec> {
        let (residual, combo) = self.reduce(target, vec![ParamRational::zero(); self.inputs]);
        if residual.is_empty() {
            Ok(combo.into_iter().map(|c| -c).collect())
        } else {
            Err(residual)
        }
    }
}

#[derive(Debug, Clone)]
struct Degree {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal: Echelon,
    /// Normal forms of the Levi-invariant part.
    subring: Echelon,
}

/// `S/𝓘S` and its Levi-invariant subring, graded, at a numeric prime.
#[derive(Debug, Clone)]
pub struct CoinvariantModel {
    pub p0: i64,
    space: VarSpace,
    levi: Vec<WeylElt>,
    degrees: Vec<Degree>,
    weyl_order: usize,
    iw_size: usize,
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

fn elementary(space: &VarSpace, vars: &[MultiPoly], k: usize) -> MultiPoly {
    let mut e = vec![MultiPoly::zero(space); k + 1];
    e[0] = MultiPoly::one(space);
    for v in vars {
        for i in (1..=k).rev() {
            e[i] = &e[i] + &(&e[i - 1] * v);
        }
    }
    e.swap_remove(k)
}

/// Fundamental invariants of the Weyl group, component by component.
pub(crate) fn fundamental_invariants(datum: &RootDatum) -> Vec<MultiPoly> {
    let space = datum.space();
    let mut out = Vec::new();
    for (c, comp) in datum.components().iter().enumerate() {
        let off = datum.component_offset(c);
        let n = comp.rank;
        let xs: Vec<MultiPoly> = (off..off + n).map(|i| MultiPoly::var(space, i)).collect();
        let squares: Vec<MultiPoly> = xs.iter().map(|x| x * x).collect();
        match comp.kind {
            CartanKind::A => out.extend((1..=n).map(|k| elementary(space, &xs, k))),
            CartanKind::B | CartanKind::C => out.extend((1..=n).map(|k| elementary(space, &squares, k))),
            CartanKind::D => {
                out.extend((1..n).map(|k| elementary(space, &squares, k)));
                out.push(elementary(space, &xs, n));
            }
        }
    }
    out
}

fn homogeneous_parts(f: &MultiPoly, p0: i64) -> BTreeMap<u32, Vec<(Monomial, ParamRational)>> {
    let mut parts: BTreeMap<u32, Vec<(Monomial, ParamRational)>> = BTreeMap::new();
    let coeffs = f.evaluate_p(&int(p0)).rational_coeffs().expect("p was evaluated");
    for (m, c) in coeffs {
        parts.entry(m.degree()).or_default().push((m, c));
    }
    parts
}

/// Builds the model through degree `#Φ⁺`, where `S/𝓘S` ends.
pub fn build_coinvariant_model(zd: &ZipDatum, p0: i64) -> CoinvariantModel {
    let datum = &zd.datum;
    let space = datum.space().clone();
    let n = datum.nvars();
    let top = datum.positive_roots().len() as u32;
    let generators: Vec<(u32, Vec<(Monomial, ParamRational)>)> = fundamental_invariants(datum)
        .iter()
        .map(|g| {
            let mut parts = homogeneous_parts(g, p0);
            let (deg, terms) = parts.pop_first().expect("nonzero invariant");
            (deg, terms)
        })
        .collect();
    let levi = datum.subgroup_elements(&zd.i_opp);

    let mut degrees: Vec<Degree> = Vec::new();
    for d in 0..=top {
        let monomials = monomials_of_degree(n, d);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ideal = Echelon::default();
        for (gd, terms) in &generators {
            if *gd > d {
                continue;
            }
            for m in &degrees[(d - gd) as usize].monomials {
                let row: SparseVec = terms
                    .iter()
                    .map(|(gm, c)| (index[&gm.mul(m)], c.clone()))
                    .collect();
                ideal.insert(row);
            }
        }
        degrees.push(Degree {
            monomials,
            index,
            ideal,
            subring: Echelon::default(),
        });
    }

    let mut model = CoinvariantModel {
        p0,
        space,
        levi,
        degrees,
        weyl_order: datum.weyl_order(),
        iw_size: zd.iw.len(),
    };
    for d in 0..=zd.d.min(top as usize) as u32 {
        let mut subring = Echelon::default();
        for m in model.degrees[d as usize].monomials.clone() {
            let f = MultiPoly::term(&model.space, m, ParamPoly::one());
            let sym = model.reynolds(&f);
            let nf = model.normal_form_of_degree(&sym, d);
            if !nf.is_empty() {
                subring.insert(nf);
            }
        }
        model.degrees[d as usize].subring = subring;
    }
    model
}

impl CoinvariantModel {
    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    /// Top degree of `S/𝓘S`.
    pub fn top_degree(&self) -> u32 {
        self.degrees.len() as u32 - 1
    }

    /// `Σ_{w ∈ W_{I°}} w(f)`.
    pub fn reynolds(&self, f: &MultiPoly) -> MultiPoly {
        self.levi
            .iter()
            .fold(MultiPoly::zero(&self.space), |acc, w| acc + w.act_poly(f))
    }

    /// Graded dimensions of `S/𝓘S`.
    pub fn quotient_dims(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .map(|d| d.monomials.len() - d.ideal.rank())
            .collect()
    }

    /// Graded dimensions of the Levi-invariant subring quotient.
    pub fn subring_dims(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.degrees.iter().map(|d| d.subring.rank()).collect();
        while dims.len() > 1 && dims.last() == Some(&0) {
            dims.pop();
        }
        dims
    }

    /// Whether the total dimensions equal `|W|` and `|^IW|`.
    pub fn dimensions_ok(&self) -> bool {
        self.quotient_dims().iter().sum::<usize>() == self.weyl_order
            && self.subring_dims().iter().sum::<usize>() == self.iw_size
    }

    fn normal_form_of_degree(&self, f: &MultiPoly, d: u32) -> SparseVec {
        let Some(deg) = self.degrees.get(d as usize) else {
            return SparseVec::new();
        };
        let coeffs = f.evaluate_p(&int(self.p0)).rational_coeffs().expect("p was evaluated");
        let v: SparseVec = coeffs
            .into_iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (deg.index[&m], c))
            .collect();
        deg.ideal.reduce(v)
    }

    /// Normal form of the degree-`d` part of `f` with `p = p0`.
    pub fn normal_form(&self, f: &MultiPoly, d: u32) -> SparseVec {
        self.normal_form_of_degree(f, d)
    }

    /// Normal form rendered back as a polynomial over ℚ.
    pub fn normal_form_poly(&self, f: &MultiPoly, d: u32) -> MultiPoly {
        let nf = self.normal_form_of_degree(f, d);
        let Some(deg) = self.degrees.get(d as usize) else {
            return MultiPoly::zero(&self.space);
        };
        MultiPoly::from_terms(
            &self.space,
            nf.into_iter()
                .map(|(i, c)| (deg.monomials[i].clone(), ParamPoly::constant(c))),
        )
    }

    /// Whether `f` lies in the Levi-invariant subring modulo `𝓘`.
    pub fn in_subring(&self, f: &MultiPoly, d: u32) -> bool {
        let nf = self.normal_form_of_degree(f, d);
        match self.degrees.get(d as usize) {
            Some(deg) => deg.subring.reduce(nf).is_empty(),
            None => true,
        }
    }
}

fn classes_of_degree(reports: &[CycleReport], d: u32) -> Result<Vec<&CycleReport>, PipelineError> {
    let out: Vec<&CycleReport> = reports.iter().filter(|r| r.degree as u32 == d).collect();
    for r in &out {
        if r.zip_class.is_none() {
            let reason = r.gamma.as_ref().err().cloned().unwrap_or_default();
            return Err(PipelineError::MissingClass(r.word.clone(), reason));
        }
    }
    Ok(out)
}

/// Coefficients of `class` (homogeneous of degree `d`) over the zip classes
/// of degree `d`, in the order of `reports`.
pub fn basis_expand(
    model: &CoinvariantModel,
    reports: &[CycleReport],
    class: &MultiPoly,
    d: u32,
) -> Result<Vec<(WeylElt, ParamRational)>, PipelineError> {
    let basis = classes_of_degree(reports, d)?;
    let mut ech = TrackedEchelon::new(basis.len());
    for (i, r) in basis.iter().enumerate() {
        let nf = model.normal_form(r.zip_class.as_ref().unwrap(), d);
        if !ech.insert(i, nf) {
            return Err(PipelineError::DependentClasses(d));
        }
    }
    let coeffs = ech
        .solve(model.normal_form(class, d))
        .map_err(|res| PipelineError::NonZeroResidual(res.len()))?;
    Ok(basis.iter().map(|r| r.w.clone()).zip(coeffs).collect())
}

/// Matrix of the product pairing `A^j × A^{d−j} → A^d`, written in the
/// zip-class bases with `A^d` identified with `ℚ` via its unique class.
pub fn pairing_matrix(
    model: &CoinvariantModel,
    reports: &[CycleReport],
    top: u32,
    j: u32,
) -> Result<Vec<Vec<ParamRational>>, PipelineError> {
    let left = classes_of_degree(reports, j)?;
    let right = classes_of_degree(reports, top - j)?;
    let mut out = Vec::new();
    for a in &left {
        let mut row = Vec::new();
        for b in &right {
            let prod = a.zip_class.as_ref().unwrap() * b.zip_class.as_ref().unwrap();
            let coeffs = basis_expand(model, reports, &prod, top)?;
            row.push(coeffs.into_iter().map(|(_, c)| c).sum());
        }
        out.push(row);
    }
    Ok(out)
}

/// Rank of a dense rational matrix.
pub fn matrix_rank(m: &[Vec<ParamRational>]) -> usize {
    let mut ech = Echelon::default();
    for row in m {
        let v: SparseVec = row
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        ech.insert(v);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chowpipeline::cycle_classes;
    use crate::zipdatum::Preset;

    #[test]
    fn hilbert_blumenthal_dimensions() {
        for d in 1..=3 {
            let zd = Preset::HilbertBlumenthal { d }.zip_datum();
            let model = build_coinvariant_model(&zd, 5);
            let binom: Vec<usize> = (0..=d).map(|k| num_integer::binomial(d, k)).collect();
            assert_eq!(model.subring_dims(), binom);
            assert!(model.dimensions_ok());
        }
    }

    #[test]
    fn siegel_two_dimensions() {
        let zd = Preset::Siegel { g: 2 }.zip_datum();
        let model = build_coinvariant_model(&zd, 3);
        assert_eq!(model.quotient_dims(), [1, 2, 2, 2, 1]);
        assert_eq!(model.subring_dims(), [1, 1, 1, 1]);
    }

    #[test]
    fn expand_unit_vectors() {
        let zd = Preset::Siegel { g: 2 }.zip_datum();
        let reports = cycle_classes(&zd).unwrap();
        let model = build_coinvariant_model(&zd, 5);
        for r in &reports {
            let coeffs = basis_expand(&model, &reports, r.zip_class.as_ref().unwrap(), r.degree as u32).unwrap();
            for (w, c) in coeffs {
                assert_eq!(c, if w == r.w { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn residual_is_reported() {
        let zd = Preset::Siegel { g: 2 }.zip_datum();
        let reports = cycle_classes(&zd).unwrap();
        let model = build_coinvariant_model(&zd, 5);
        let x1 = MultiPoly::var(zd.datum.space(), 0);
        assert!(matches!(
            basis_expand(&model, &reports, &x1, 1),
            Err(PipelineError::NonZeroResidual(_))
        ));
    }
}
