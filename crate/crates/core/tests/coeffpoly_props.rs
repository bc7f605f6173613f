use proptest::prelude::*;
use zipchow::coeffpoly::{int, rat, Monomial, MultiPoly, ParamPoly, VarSpace};

fn space() -> VarSpace {
    VarSpace::new(["x1", "x2", "x3"])
}

fn param() -> impl Strategy<Value = ParamPoly> {
    (-4i64..=4, -2i64..=2, 1i64..=3).prop_map(|(a, b, d)| {
        ParamPoly::from_terms([(0, rat(a, d)), (1, int(b))])
    })
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u16..3, 0u16..3, 0u16..3), param()), 0..5).prop_map(|terms| {
        MultiPoly::from_terms(
            &space(),
            terms
                .into_iter()
                .map(|((a, b, c), k)| (Monomial::from_exponents(vec![a, b, c]), k)),
        )
    })
}

fn signed_permutation() -> impl Strategy<Value = Vec<(usize, ParamPoly)>> {
    (Just(vec![0usize, 1, 2]).prop_shuffle(), prop::collection::vec(prop::bool::ANY, 3), param()).prop_map(
        |(perm, signs, scale)| {
            perm.into_iter()
                .zip(signs)
                .map(|(t, s)| {
                    let c = if s { scale.clone() } else { -scale.clone() };
                    (t, c)
                })
                .collect()
        },
    )
}

proptest! {
    #[test]
    fn ring_axioms(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &MultiPoly::one(&space()), f.clone());
    }

    #[test]
    fn substitution_is_a_homomorphism(f in poly(), g in poly(), images in signed_permutation()) {
        let s = space();
        let sub = |q: &MultiPoly| q.substitute_monomial(&s, &images);
        prop_assert_eq!(sub(&(&f * &g)), &sub(&f) * &sub(&g));
        prop_assert_eq!(sub(&(&f + &g)), &sub(&f) + &sub(&g));
        let linear: Vec<MultiPoly> = images
            .iter()
            .map(|(t, c)| MultiPoly::var(&s, *t).scale(c))
            .collect();
        prop_assert_eq!(f.substitute_linear(&s, &linear).unwrap(), sub(&f));
    }

    #[test]
    fn exact_division(f in poly(), g in poly()) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&f * &g).divide_exact(&g).unwrap(), f);
    }

    #[test]
    fn text_round_trip(f in poly()) {
        let s = space();
        let text = f.to_string();
        prop_assert_eq!(MultiPoly::parse(&s, &text).unwrap(), f.clone());
        prop_assert_eq!(MultiPoly::parse_expr(&s, &text).unwrap(), f.clone());
        prop_assert_eq!(MultiPoly::from_json(&s, &f.to_json()).unwrap(), f);
    }

    #[test]
    fn evaluation_at_p_is_a_homomorphism(a in param(), b in param(), p0 in 2i64..8) {
        let q = int(p0);
        prop_assert_eq!((&a * &b).eval(&q), a.eval(&q) * b.eval(&q));
        prop_assert_eq!((&a + &b).eval(&q), a.eval(&q) + b.eval(&q));
        prop_assert_eq!(ParamPoly::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn homogeneous_components_sum_back(f in poly()) {
        let total = (0..=6).fold(MultiPoly::zero(&space()), |acc, d| acc + f.component(d));
        prop_assert_eq!(total, f);
    }
}

#[test]
fn expression_parser_handles_products_and_fractions() {
    let s = space();
    let f = MultiPoly::parse_expr(&s, "(p-1)/2*x1 + (p+1)/2*x2").unwrap();
    assert_eq!(f.to_string(), "(p-1)/2*x1 + (p+1)/2*x2");
    let g = MultiPoly::parse_expr(&s, "-(p^2-1)*(p*x1 - x2)*x2^2").unwrap();
    assert_eq!(g, MultiPoly::parse(&s, &g.to_string()).unwrap());
    assert!(MultiPoly::parse_expr(&s, "x1/x2").is_err());
    assert!(MultiPoly::parse_expr(&s, "y1").is_err());
}
