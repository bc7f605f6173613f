use num_traits::{Signed, Zero};
use serde::Serialize;

use super::coinvariant::{basis_expand, build_coinvariant_model, CoinvariantModel};
use super::{CycleReport, PipelineError};
use crate::coeffpoly::{format_rational, int, MultiPoly, ParamPoly, ParamRational};
use crate::rootweyl::WeylElt;
use crate::zipdatum::{Preset, ZipDatum};

/// Prime at which the sign of the Hodge class is normalized.
const SIGN_PRIME: i64 = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct HodgeClass {
    pub lambda: MultiPoly,
}

/// `λ^{d−j} = Σ α_w [Z_w]` over the classes of length `j`.
#[derive(Debug, Clone, Serialize)]
pub struct HodgePowerReport {
    pub p0: i64,
    pub length: usize,
    #[serde(serialize_with = "ser_coeffs")]
    pub coefficients: Vec<(String, ParamRational)>,
    pub all_positive: bool,
    pub equal_within_length: bool,
}

fn ser_coeffs<S: serde::Serializer>(v: &[(String, ParamRational)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(v.len()))?;
    for (w, c) in v {
        m.serialize_entry(w, &format_rational(c))?;
    }
    m.end()
}

fn word_of(reports: &[CycleReport], w: &WeylElt) -> String {
    reports
        .iter()
        .find(|r| &r.w == w)
        .map(|r| r.word.clone())
        .unwrap_or_else(|| w.one_line())
}

pub fn hodge_power_expand(
    model: &CoinvariantModel,
    reports: &[CycleReport],
    lambda: &HodgeClass,
    top: usize,
    j: usize,
) -> Result<HodgePowerReport, PipelineError> {
    let power = lambda.lambda.pow((top - j) as u32);
    let coeffs = basis_expand(model, reports, &power, (top - j) as u32)?;
    let all_positive = coeffs.iter().all(|(_, c)| c.is_positive());
    let equal_within_length = coeffs.windows(2).all(|p| p[0].1 == p[1].1);
    Ok(HodgePowerReport {
        p0: model.p0,
        length: j,
        coefficients: coeffs.iter().map(|(w, c)| (word_of(reports, w), c.clone())).collect(),
        all_positive,
        equal_within_length,
    })
}

/// `α_e` in `λ^d = α_e [Z_e]`, and whether `λ` itself is a positive
/// combination of the degree-one classes.
fn positivity(
    model: &CoinvariantModel,
    reports: &[CycleReport],
    lambda: &MultiPoly,
    top: usize,
) -> Result<(ParamRational, bool), PipelineError> {
    let alpha_e: ParamRational = basis_expand(model, reports, &lambda.pow(top as u32), top as u32)?
        .into_iter()
        .map(|(_, c)| c)
        .sum();
    let degree_one = if top >= 1 {
        basis_expand(model, reports, lambda, 1)?
            .iter()
            .all(|(_, c)| c.is_positive())
    } else {
        true
    };
    Ok((alpha_e, degree_one))
}

/// The Hodge class: fixed by a formula for Hilbert-Blumenthal data; for
/// Siegel data `±(x_1+…+x_g)`; otherwise a generator of a one-dimensional
/// degree-one part. Signs are chosen so that `α_e > 0` at `p = 5`, with
/// ties broken by positivity of `λ` in degree one.
pub fn hodge_class(zd: &ZipDatum, preset: Option<&Preset>, reports: &[CycleReport]) -> Result<HodgeClass, PipelineError> {
    let space = zd.datum.space();
    if let Some(Preset::HilbertBlumenthal { d }) = preset {
        let lambda = (0..*d).fold(MultiPoly::zero(space), |acc, i| acc - MultiPoly::var(space, 2 * i + 1));
        return Ok(HodgeClass { lambda });
    }
    let model = build_coinvariant_model(zd, SIGN_PRIME);
    let base = match preset {
        Some(Preset::Siegel { g }) => (0..*g).fold(MultiPoly::zero(space), |acc, i| acc + MultiPoly::var(space, i)),
        _ => {
            let dims = model.subring_dims();
            let dim1 = dims.get(1).copied().unwrap_or(0);
            if dim1 != 1 {
                return Err(PipelineError::AmbiguousHodgeClass(dim1));
            }
            let scale = ParamPoly::constant(int(1) / int(zd.datum.subgroup_elements(&zd.i_opp).len() as i64));
            (0..zd.datum.nvars())
                .map(|i| model.reynolds(&MultiPoly::var(space, i)).scale(&scale))
                .find(|f| !model.normal_form(f, 1).is_empty())
                .ok_or(PipelineError::AmbiguousHodgeClass(0))?
        }
    };
    let candidates = [base.clone(), -base];
    let mut scored = Vec::new();
    for c in candidates {
        let (alpha_e, degree_one) = positivity(&model, reports, &c, zd.d)?;
        scored.push((c, alpha_e, degree_one));
    }
    let pick = scored
        .iter()
        .find(|(_, a, one)| a.is_positive() && *one)
        .or_else(|| scored.iter().find(|(_, a, _)| a.is_positive()))
        .or_else(|| scored.iter().find(|(_, a, _)| !a.is_zero()))
        .unwrap_or(&scored[0]);
    Ok(HodgeClass { lambda: pick.0.clone() })
}
