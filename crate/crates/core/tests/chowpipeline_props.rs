use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use zipchow::chowpipeline::verify::{check_basis, random_poly};
use zipchow::chowpipeline::{cycle_classes, pi_star, psi_star};
use zipchow::coeffpoly::{MultiPoly, ParamPoly};
use zipchow::schubert::{delta_word, diagonal_class, SchubertCache};
use zipchow::zipdatum::{Preset, ZipDatum};

fn presets() -> Vec<Preset> {
    vec![
        Preset::Siegel { g: 2 },
        Preset::Siegel { g: 3 },
        Preset::SpinOdd { n: 2 },
        Preset::SpinOdd { n: 3 },
        Preset::Gl { n: 3, a: 1 },
        Preset::Gl { n: 4, a: 2 },
        Preset::HilbertBlumenthal { d: 2 },
    ]
}

fn levi_invariant(zd: &ZipDatum, f: &MultiPoly) -> bool {
    zd.i_opp
        .iter()
        .all(|&i| &zd.datum.simple_reflection(i).act_poly(f) == f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn push_forward_is_the_longest_divided_difference(k in 0..7usize, seed in any::<u64>()) {
        let zd = presets()[k].zip_datum();
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_poly(&mut rng, zd.datum.space(), 5, 5);
        let longest = zd.datum.longest_element(&zd.i_opp);
        let via_delta = delta_word(&zd.datum, &zd.datum.reduced_word(&longest), &f);
        let pushed = pi_star(&zd, &f).unwrap();
        prop_assert!(levi_invariant(&zd, &pushed));
        prop_assert_eq!(pushed, via_delta);
    }
}

#[test]
fn degrees_and_invariance_of_cycle_classes() {
    for preset in presets() {
        let zd = preset.zip_datum();
        let top = zd.datum.positive_roots().len();
        let cache = SchubertCache::new(diagonal_class(&zd.datum).unwrap());
        for r in cycle_classes(&zd).unwrap() {
            assert_eq!(r.degree + r.length, zd.d, "{preset}");
            let flag = psi_star(&zd, &cache.class(&r.w));
            assert_eq!(flag, r.flag_class);
            assert!(flag.is_zero() || flag.is_homogeneous_of((top - r.length) as u32), "{preset} {}", r.word);
            if let Some(z) = &r.zip_class {
                assert!(z.is_homogeneous_of(r.degree as u32), "{preset} {}", r.word);
                assert!(levi_invariant(&zd, z));
            }
        }
    }
}

#[test]
fn classes_form_a_basis_for_linear_groups() {
    for preset in [Preset::Gl { n: 3, a: 1 }, Preset::Gl { n: 4, a: 2 }] {
        let zd = preset.zip_datum();
        let reports = cycle_classes(&zd).unwrap();
        for p0 in [2, 3] {
            assert_eq!(check_basis(&zd, &reports, p0), None, "{preset} at {p0}");
        }
    }
}

/// `[Z_w] = ∏ (z_i − p·z_{i+1})` over the factors on which `w` is trivial,
/// with `z_i` the second coordinate of the `i`-th factor.
#[test]
fn hilbert_blumenthal_product_formula() {
    for d in 1..=4 {
        let zd = Preset::HilbertBlumenthal { d }.zip_datum();
        let space = zd.datum.space();
        let z = |i: usize| MultiPoly::var(space, 2 * (i % d) + 1);
        for r in cycle_classes(&zd).unwrap() {
            let mut expected = MultiPoly::one(space);
            for i in 0..d {
                if r.w.images()[2 * i].0 == 2 * i {
                    expected = &expected * &(&z(i) - &z(i + 1).scale(&ParamPoly::p()));
                }
            }
            assert_eq!(r.zip_class.as_ref(), Some(&expected), "d = {d}, w = {}", r.word);
        }
    }
}
