//! From the diagonal to cycle classes of zip strata: pull back along the
//! flag-to-zip correspondence, push forward to the parabolic quotient and
//! scale by the component counts. A numeric-`p` coinvariant model checks the
//! basis, duality and Hodge-power statements.

mod coinvariant;
mod hodge;
pub mod verify;

pub use coinvariant::{basis_expand, build_coinvariant_model, pairing_matrix, CoinvariantModel, SparseVec};
pub use hodge::{hodge_class, hodge_power_expand, HodgeClass, HodgePowerReport};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffpoly::{format_rational, MultiPoly, ParamPoly, ParamRational, PolyError, TensorPoly};
use crate::rootweyl::WeylElt;
use crate::schubert::{diagonal_class, SchubertCache, SchubertError};
use crate::zipdatum::{gamma, ZipDatum, ZipError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Zip(#[from] ZipError),
    #[error(transparent)]
    Schubert(#[from] SchubertError),
    #[error("class is not a combination of the cycle classes; residual has {0} terms")]
    NonZeroResidual(usize),
    #[error("cycle classes of degree {0} are linearly dependent in the model")]
    DependentClasses(u32),
    #[error("cycle class of {0} is unavailable: {1}")]
    MissingClass(String, String),
    #[error("no canonical Hodge class: the degree-one part has dimension {0}")]
    AmbiguousHodgeClass(usize),
    #[error("`{given}` is not a minimal coset representative; its representative is `{representative}`")]
    NotInIW { given: String, representative: String },
}

/// One stratum: its pulled-back flag class and its zip class.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport {
    pub w: WeylElt,
    pub word: String,
    pub length: usize,
    /// `Err` carries the reason `γ(w)` could not be computed.
    pub gamma: Result<ParamPoly, String>,
    pub flag_class: MultiPoly,
    pub zip_class: Option<MultiPoly>,
    pub degree: usize,
}

/// `f ⊗ g ↦ z(f)·φ(g)`.
pub fn psi_star(zd: &ZipDatum, c: &TensorPoly) -> MultiPoly {
    let datum = &zd.datum;
    let mut images: Vec<(usize, ParamPoly)> = zd
        .z
        .images()
        .iter()
        .map(|&(t, s)| (t, ParamPoly::from_int(i64::from(s))))
        .collect();
    images.extend(datum.frobenius_images());
    c.as_poly().substitute_monomial(datum.space(), &images)
}

/// Push-forward to the parabolic quotient: alternating sum over the Levi
/// Weyl group divided by the product of its positive roots.
pub fn pi_star(zd: &ZipDatum, f: &MultiPoly) -> Result<MultiPoly, PolyError> {
    let datum = &zd.datum;
    if zd.i_opp.is_empty() {
        return Ok(f.clone());
    }
    let mut sum = MultiPoly::zero(datum.space());
    for w in datum.subgroup_elements(&zd.i_opp) {
        let image = w.act_poly(f);
        if datum.length(&w).is_multiple_of(2) {
            sum = sum + image;
        } else {
            sum = sum - image;
        }
    }
    for alpha in datum.positive_roots_of(&zd.i_opp) {
        sum = sum.divide_exact(&alpha.to_poly(datum.space()))?;
    }
    Ok(sum)
}

fn report_for(zd: &ZipDatum, cache: &SchubertCache, w: &WeylElt) -> Result<CycleReport, PipelineError> {
    let datum = &zd.datum;
    let flag_class = psi_star(zd, &cache.class(w));
    let length = datum.length(w);
    let gamma = gamma(zd, w).map_err(|e| e.to_string());
    let zip_class = match &gamma {
        Ok(g) => Some(pi_star(zd, &flag_class)?.scale(g)),
        Err(_) => None,
    };
    Ok(CycleReport {
        w: w.clone(),
        word: datum.format_word(w),
        length,
        gamma,
        flag_class,
        zip_class,
        degree: zd.d - length,
    })
}

/// Reports for every `w ∈ ^IW`, in the order of `zd.iw`.
pub fn cycle_classes(zd: &ZipDatum) -> Result<Vec<CycleReport>, PipelineError> {
    let cache = SchubertCache::new(diagonal_class(&zd.datum)?);
    zd.iw.par_iter().map(|w| report_for(zd, &cache, w)).collect()
}

/// Report for a single element, which must lie in `^IW`.
pub fn cycle_class(zd: &ZipDatum, w: &WeylElt) -> Result<CycleReport, PipelineError> {
    if !zd.contains(w) {
        return Err(PipelineError::NotInIW {
            given: zd.datum.format_word(w),
            representative: zd.datum.format_word(&zd.coset_representative(w)),
        });
    }
    let cache = SchubertCache::new(diagonal_class(&zd.datum)?);
    report_for(zd, &cache, w)
}

/// Serialized form of a [`CycleReport`]; polynomials in canonical text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReportJson {
    pub w: String,
    pub one_line: String,
    pub length: usize,
    pub gamma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma_error: Option<String>,
    pub flag_class: String,
    pub zip_class: Option<String>,
    pub degree: usize,
    /// `p0 ↦ (w' ↦ coefficient)`.
    #[serde(default)]
    pub expansions: BTreeMap<String, BTreeMap<String, String>>,
}

impl CycleReport {
    pub fn to_json(&self) -> CycleReportJson {
        CycleReportJson {
            w: self.word.clone(),
            one_line: self.w.one_line(),
            length: self.length,
            gamma: self.gamma.as_ref().ok().map(ToString::to_string),
            gamma_error: self.gamma.as_ref().err().cloned(),
            flag_class: self.flag_class.to_string(),
            zip_class: self.zip_class.as_ref().map(ToString::to_string),
            degree: self.degree,
            expansions: BTreeMap::new(),
        }
    }
}

/// Expansion of a class over the cycle basis, as `word ↦ coefficient` strings.
pub fn expansion_strings(reports: &[CycleReport], coeffs: &[(WeylElt, ParamRational)]) -> BTreeMap<String, String> {
    coeffs
        .iter()
        .map(|(w, c)| {
            let word = reports
                .iter()
                .find(|r| &r.w == w)
                .map(|r| r.word.clone())
                .unwrap_or_else(|| w.one_line());
            (word, format_rational(c))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zipdatum::Preset;

    fn poly(zd: &ZipDatum, s: &str) -> MultiPoly {
        MultiPoly::parse_expr(zd.datum.space(), s).unwrap()
    }

    #[test]
    fn psi_star_examples() {
        let zd = Preset::Siegel { g: 2 }.zip_datum();
        let base = zd.datum.space();
        let c = TensorPoly::var(base, 0, crate::coeffpoly::Side::Left)
            + TensorPoly::var(base, 0, crate::coeffpoly::Side::Right);
        assert_eq!(psi_star(&zd, &c), poly(&zd, "p*x1 - x2"));

        let hb = Preset::HilbertBlumenthal { d: 3 }.zip_datum();
        let base = hb.datum.space();
        for i in 0..3 {
            let c = TensorPoly::var(base, 2 * i, crate::coeffpoly::Side::Left)
                - TensorPoly::var(base, 2 * i + 1, crate::coeffpoly::Side::Right);
            let expected = MultiPoly::var(base, 2 * i + 1)
                - MultiPoly::var(base, 2 * ((i + 1) % 3) + 1).scale(&ParamPoly::p());
            assert_eq!(psi_star(&hb, &c), expected);
        }
    }

    #[test]
    fn pi_star_examples() {
        let zd = Preset::Siegel { g: 2 }.zip_datum();
        assert_eq!(pi_star(&zd, &poly(&zd, "p*x1 - x2")).unwrap(), poly(&zd, "p+1"));
        assert!(pi_star(&zd, &poly(&zd, "1")).unwrap().is_zero());
        let spin = Preset::SpinOdd { n: 2 }.zip_datum();
        assert_eq!(pi_star(&spin, &poly(&spin, "x2")).unwrap(), poly(&spin, "2"));
    }

    #[test]
    fn siegel_two_table() {
        let zd = Preset::Siegel { g: 2 }.zip_datum();
        let reports = cycle_classes(&zd).unwrap();
        let flags = [
            "-(p^4-1)*(x1+x2)*x1*x2^2",
            "-(p^2-1)*(p*x1-x2)*x2^2",
            "(p-1)*(p*x1-x2)*x2",
            "p*x1-x2",
        ];
        let zips = [
            "(p+1)*(p^4-1)*(x1+x2)*x1*x2",
            "(p^2-1)*((p-1)*x1*x2-x1^2-x2^2)",
            "(p-1)*(x1+x2)",
            "(p+1)^2",
        ];
        for (r, (f, z)) in reports.iter().zip(flags.iter().zip(zips)) {
            assert_eq!(r.flag_class, poly(&zd, f), "{}", r.word);
            assert_eq!(r.zip_class.as_ref().unwrap(), &poly(&zd, z), "{}", r.word);
        }
    }

    #[test]
    fn hilbert_blumenthal_products() {
        let zd = Preset::HilbertBlumenthal { d: 2 }.zip_datum();
        let base = zd.datum.space();
        for r in cycle_classes(&zd).unwrap() {
            let mut expected = MultiPoly::one(base);
            for i in 0..2 {
                if r.w.images()[2 * i].0 == 2 * i {
                    let zi = MultiPoly::var(base, 2 * i + 1);
                    let zn = MultiPoly::var(base, 2 * ((i + 1) % 2) + 1);
                    expected = expected * (zi - zn.scale(&ParamPoly::p()));
                }
            }
            assert_eq!(r.zip_class.unwrap(), expected, "{}", r.word);
        }
    }

    #[test]
    fn json_round_trip() {
        let zd = Preset::Siegel { g: 2 }.zip_datum();
        let r = cycle_class(&zd, &zd.iw[3]).unwrap().to_json();
        let back: CycleReportJson = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.zip_class.as_deref(), Some(poly(&zd, "(p+1)^2").to_string().as_str()));
    }

    #[test]
    fn not_in_iw() {
        let zd = Preset::Siegel { g: 2 }.zip_datum();
        let s1 = zd.datum.parse_elt("s1").unwrap();
        match cycle_class(&zd, &s1) {
            Err(PipelineError::NotInIW { representative, .. }) => assert_eq!(representative, "e"),
            other => panic!("{other:?}"),
        }
    }
}
