//! Randomized and exhaustive checks of the operator identities, the diagonal
//! class, the Chevalley relation and the numeric models.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::coinvariant::{basis_expand, build_coinvariant_model, matrix_rank, pairing_matrix};
use super::hodge::{hodge_class, hodge_power_expand};
use super::{cycle_classes, pi_star, CycleReport};
use crate::coeffpoly::{int, Monomial, MultiPoly, ParamPoly, VarSpace};
use crate::rootweyl::{CartanComponent, RootDatum, WeylElt};
use crate::schubert::{
    chevalley_check_with, delta_word, diagonal_class, divided_difference, graham_criterion, ChevalleyPairing,
};
use crate::zipdatum::{Preset, ZipDatum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Operators,
    Diagonal,
    Chevalley,
    Basis,
    Hodge,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Operators, Suite::Diagonal, Suite::Chevalley, Suite::Basis, Suite::Hodge];
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "operators" => Ok(Suite::Operators),
            "diagonal" => Ok(Suite::Diagonal),
            "chevalley" => Ok(Suite::Chevalley),
            "basis" => Ok(Suite::Basis),
            "hodge" => Ok(Suite::Hodge),
            _ => Err(format!("unknown suite `{s}`")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Operators => "operators",
            Suite::Diagonal => "diagonal",
            Suite::Chevalley => "chevalley",
            Suite::Basis => "basis",
            Suite::Hodge => "hodge",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

struct Collector {
    checks: Vec<CheckResult>,
    notes: Vec<String>,
}

impl Collector {
    fn new() -> Self {
        Collector {
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records the first failure reported by `run`, if any.
    fn check(&mut self, name: impl Into<String>, run: impl FnOnce() -> Option<String>) {
        let counterexample = run();
        self.checks.push(CheckResult {
            name: name.into(),
            passed: counterexample.is_none(),
            counterexample,
        });
    }

    fn finish(self, suite: Suite, seed: u64) -> SuiteReport {
        SuiteReport {
            suite,
            seed,
            passed: self.checks.iter().all(|c| c.passed),
            checks: self.checks,
            notes: self.notes,
        }
    }
}

/// A random polynomial of total degree at most `max_deg` with small integer
/// coefficients, some of them involving `p`.
pub fn random_poly(rng: &mut StdRng, space: &VarSpace, max_deg: u32, nterms: usize) -> MultiPoly {
    let n = space.len();
    let terms = (0..nterms).map(|_| {
        let deg = rng.gen_range(0..=max_deg);
        let mut e = vec![0u16; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = ParamPoly::from_terms([(0, int(rng.gen_range(-3..=3))), (rng.gen_range(1..=2), int(rng.gen_range(-1..=1)))]);
        (Monomial::from_exponents(e), c)
    });
    MultiPoly::from_terms(space, terms)
}

/// Every reduced word of `w`.
pub fn all_reduced_words(datum: &RootDatum, w: &WeylElt) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..datum.num_simple() {
        if datum.is_left_descent(w, i) {
            let rest = datum.simple_reflection(i).compose(w);
            for mut tail in all_reduced_words(datum, &rest) {
                tail.insert(0, i);
                out.push(tail);
            }
        }
    }
    out
}

fn operator_data() -> Vec<RootDatum> {
    vec![
        RootDatum::simple(CartanComponent::gl(3)),
        RootDatum::simple(CartanComponent::b(3)),
        RootDatum::simple(CartanComponent::c(3)),
        RootDatum::simple(CartanComponent::d(3)),
    ]
}

fn datum_name(d: &RootDatum) -> String {
    d.components().iter().map(ToString::to_string).collect::<Vec<_>>().join("x")
}

fn operators(seed: u64, c: &mut Collector) {
    let mut rng = StdRng::seed_from_u64(seed);
    for datum in operator_data() {
        let name = datum_name(&datum);
        let polys: Vec<MultiPoly> = (0..5).map(|_| random_poly(&mut rng, datum.space(), 5, 4)).collect();
        c.check(format!("nilpotence {name}"), || {
            for f in &polys {
                for i in 0..datum.num_simple() {
                    let g = divided_difference(&datum, i, &divided_difference(&datum, i, f));
                    if !g.is_zero() {
                        return Some(format!("s{} on {f}", i + 1));
                    }
                }
            }
            None
        });
    }
    for datum in [RootDatum::simple(CartanComponent::c(3)), RootDatum::simple(CartanComponent::b(3))] {
        let name = datum_name(&datum);
        let polys: Vec<MultiPoly> = (0..2).map(|_| random_poly(&mut rng, datum.space(), 5, 4)).collect();
        c.check(format!("braid independence {name}"), || {
            for w in datum.all_elements().iter().filter(|w| datum.length(w) <= 4) {
                let words = all_reduced_words(&datum, w);
                for f in &polys {
                    let first = delta_word(&datum, &words[0], f);
                    for word in &words[1..] {
                        if delta_word(&datum, word, f) != first {
                            return Some(format!("{} vs {:?} on {f}", datum.format_word(w), word));
                        }
                    }
                }
            }
            None
        });
    }
    let data = operator_data();
    let pairs: Vec<(usize, usize, MultiPoly, MultiPoly)> = (0..100)
        .map(|k| {
            let d = &data[k % data.len()];
            let i = rng.gen_range(0..d.num_simple());
            let f = random_poly(&mut rng, d.space(), 5, 3);
            let g = random_poly(&mut rng, d.space(), 5, 3);
            (k % data.len(), i, f, g)
        })
        .collect();
    c.check("leibniz", || {
        for (k, i, f, g) in &pairs {
            let datum = &data[*k];
            let lhs = divided_difference(datum, *i, &(f * g));
            let s = datum.simple_reflection(*i);
            let rhs = divided_difference(datum, *i, f) * g + s.act_poly(f) * divided_difference(datum, *i, g);
            if lhs != rhs {
                return Some(format!("{} s{}: f = {f}, g = {g}", datum_name(datum), i + 1));
            }
        }
        None
    });
    let zips: Vec<ZipDatum> = [
        Preset::Siegel { g: 2 },
        Preset::Siegel { g: 3 },
        Preset::SpinOdd { n: 2 },
        Preset::SpinOdd { n: 3 },
    ]
    .iter()
    .map(Preset::zip_datum)
    .collect();
    let samples: Vec<(usize, MultiPoly)> = (0..52)
        .map(|k| (k % zips.len(), random_poly(&mut rng, zips[k % zips.len()].datum.space(), 5, 4)))
        .collect();
    c.check("push-forward equals divided differences", || {
        for (k, f) in &samples {
            let zd = &zips[*k];
            let word = zd.datum.reduced_word(&zd.datum.longest_element(&zd.i_opp));
            let via_sum = match pi_star(zd, f) {
                Ok(g) => g,
                Err(e) => return Some(format!("{e}")),
            };
            if via_sum != delta_word(&zd.datum, &word, f) {
                return Some(format!("{} on {f}", datum_name(&zd.datum)));
            }
            for i in &zd.i_opp {
                if zd.datum.simple_reflection(*i).act_poly(&via_sum) != via_sum {
                    return Some(format!("not invariant under s{} on {f}", i + 1));
                }
            }
        }
        None
    });
}

/// Data on which the diagonal class is checked.
pub fn graham_data() -> Vec<RootDatum> {
    let mut out: Vec<RootDatum> = (1..=4).map(|n| RootDatum::simple(CartanComponent::gl(n))).collect();
    for n in [2, 3] {
        out.push(RootDatum::simple(CartanComponent::b(n)));
        out.push(RootDatum::simple(CartanComponent::c(n)));
    }
    out.push(RootDatum::simple(CartanComponent::d(3)));
    for d in 2..=4 {
        out.push(RootDatum::split(vec![CartanComponent::gl(2); d]));
    }
    out
}

fn diagonal(c: &mut Collector) {
    for datum in graham_data() {
        let name = datum_name(&datum);
        c.check(format!("graham {name}"), || match diagonal_class(&datum) {
            Ok(diag) if graham_criterion(&diag) => None,
            Ok(diag) => Some(format!("diagonal {}", diag.value)),
            Err(e) => Some(e.to_string()),
        });
    }
}

/// First `(w, λ)` with `ℓ(w) ≤ 3` violating the relation, over the basis characters.
pub fn chevalley_counterexample(datum: &RootDatum, pairing: ChevalleyPairing) -> Option<String> {
    let diag = match diagonal_class(datum) {
        Ok(d) => d,
        Err(e) => return Some(e.to_string()),
    };
    for w in datum.all_elements().iter().filter(|w| datum.length(w) <= 3) {
        for k in 0..datum.nvars() {
            let lambda: Vec<i32> = (0..datum.nvars()).map(|i| i32::from(i == k)).collect();
            if !chevalley_check_with(&diag, w, &lambda, pairing) {
                return Some(format!("w = {}, λ = {:?}", datum.format_word(w), lambda));
            }
        }
    }
    None
}

pub fn chevalley_data() -> Vec<RootDatum> {
    vec![
        RootDatum::simple(CartanComponent::gl(3)),
        RootDatum::simple(CartanComponent::b(2)),
        RootDatum::simple(CartanComponent::c(2)),
    ]
}

fn chevalley(c: &mut Collector) {
    for datum in chevalley_data() {
        let name = datum_name(&datum);
        c.check(format!("chevalley {name}"), || {
            chevalley_counterexample(&datum, ChevalleyPairing::InverseImage)
        });
        if let Some(ce) = chevalley_counterexample(&datum, ChevalleyPairing::Lambda) {
            c.notes.push(format!(
                "{name}: pairing the coroots with λ instead of w^-1 λ fails at {ce}"
            ));
        }
    }
}

/// Number of `w ∈ ^IW` per degree `d − ℓ(w)`.
pub fn expected_dims(zd: &ZipDatum) -> Vec<usize> {
    let mut dims = vec![0; zd.d + 1];
    for w in &zd.iw {
        dims[zd.d - zd.length(w)] += 1;
    }
    dims
}

/// Independence, graded dimensions and duality at one prime.
pub fn check_basis(zd: &ZipDatum, reports: &[CycleReport], p0: i64) -> Option<String> {
    let model = build_coinvariant_model(zd, p0);
    if !model.dimensions_ok() {
        return Some(format!("dimensions {:?} / {:?}", model.quotient_dims(), model.subring_dims()));
    }
    if model.subring_dims() != expected_dims(zd) {
        return Some(format!("graded dimensions {:?}", model.subring_dims()));
    }
    for r in reports {
        match basis_expand(&model, reports, r.zip_class.as_ref()?, r.degree as u32) {
            Ok(coeffs) => {
                if coeffs.iter().any(|(w, c)| *c != int(i64::from(*w == r.w))) {
                    return Some(format!("{} does not expand to itself", r.word));
                }
            }
            Err(e) => return Some(format!("{}: {e}", r.word)),
        }
    }
    for j in 0..=zd.d as u32 {
        match pairing_matrix(&model, reports, zd.d as u32, j) {
            Ok(m) if matrix_rank(&m) == m.len() => {}
            Ok(_) => return Some(format!("pairing degenerate in degree {j}")),
            Err(e) => return Some(e.to_string()),
        }
    }
    None
}

pub fn basis_presets() -> Vec<Preset> {
    let mut out = vec![
        Preset::Siegel { g: 2 },
        Preset::Siegel { g: 3 },
        Preset::SpinOdd { n: 2 },
        Preset::SpinOdd { n: 3 },
    ];
    out.extend((1..=4).map(|d| Preset::HilbertBlumenthal { d }));
    out
}

pub fn hodge_presets() -> Vec<Preset> {
    let mut out = vec![Preset::Siegel { g: 2 }, Preset::SpinOdd { n: 2 }];
    out.extend((1..=4).map(|d| Preset::HilbertBlumenthal { d }));
    out
}

fn basis(primes: &[i64], c: &mut Collector) {
    for preset in basis_presets() {
        let zd = preset.zip_datum();
        let reports = cycle_classes(&zd);
        for &p0 in primes {
            c.check(format!("basis {preset} at p = {p0}"), || match &reports {
                Ok(r) => check_basis(&zd, r, p0),
                Err(e) => Some(e.to_string()),
            });
        }
    }
}

fn hodge(primes: &[i64], c: &mut Collector) {
    for preset in hodge_presets() {
        let zd = preset.zip_datum();
        let reports = match cycle_classes(&zd) {
            Ok(r) => r,
            Err(e) => {
                c.check(format!("hodge {preset}"), || Some(e.to_string()));
                continue;
            }
        };
        let lambda = match hodge_class(&zd, Some(&preset), &reports) {
            Ok(l) => l,
            Err(e) => {
                c.check(format!("hodge {preset}"), || Some(e.to_string()));
                continue;
            }
        };
        for &p0 in primes {
            let model = build_coinvariant_model(&zd, p0);
            let mut unequal = Vec::new();
            c.check(format!("hodge positivity {preset} at p = {p0}"), || {
                for j in 0..=zd.d {
                    match hodge_power_expand(&model, &reports, &lambda, zd.d, j) {
                        Ok(r) if r.all_positive => {
                            if !r.equal_within_length {
                                unequal.push(j);
                            }
                        }
                        Ok(r) => return Some(format!("length {j}: {:?}", r.coefficients)),
                        Err(e) => return Some(e.to_string()),
                    }
                }
                None
            });
            let verdict = if unequal.is_empty() {
                "equal within every length".to_string()
            } else {
                format!("unequal within lengths {unequal:?}")
            };
            c.notes.push(format!("{preset} at p = {p0}: coefficients {verdict}"));
        }
    }
}

/// Runs one suite. `primes` is used by the numeric suites.
pub fn run_suite(suite: Suite, seed: u64, primes: &[i64]) -> SuiteReport {
    let mut c = Collector::new();
    match suite {
        Suite::Operators => operators(seed, &mut c),
        Suite::Diagonal => diagonal(&mut c),
        Suite::Chevalley => chevalley(&mut c),
        Suite::Basis => basis(primes, &mut c),
        Suite::Hodge => hodge(primes, &mut c),
    }
    c.finish(suite, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_of_longest_b2() {
        let b2 = RootDatum::simple(CartanComponent::b(2));
        let w0 = b2.longest_element(&[0, 1]);
        assert_eq!(all_reduced_words(&b2, &w0).len(), 2);
    }

    #[test]
    fn expected_dims_siegel() {
        assert_eq!(expected_dims(&Preset::Siegel { g: 2 }.zip_datum()), [1, 1, 1, 1]);
    }
}
