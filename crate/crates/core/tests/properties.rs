use std::sync::Arc;

use implic::constraint::saturate_with_origins;
use implic::mobius::{superset_mobius, superset_mobius_naive, superset_zeta};
use implic::models::{
    i_measure, is_positive_polymatroid, recompose, step_decomposition, step_function,
};
use implic::scalar::int;
use implic::{
    chain_decompose, ei_check, elemental_inequalities, parse_implication, support, to_polymatroid,
    verify_certificate, BasketSet, Ci, Constraint, Implication, ModelClass, Rational, SetFunction,
    VarSet, VarUniverse,
};
use num_traits::Zero;
use proptest::prelude::*;

fn universe(n: usize) -> Arc<VarUniverse> {
    VarUniverse::letters(n).unwrap()
}

fn rational_h(n: usize) -> impl Strategy<Value = SetFunction<Rational>> {
    proptest::collection::vec((-40i64..=40, 1i64..=6), 1usize << n).prop_map(move |v| {
        let mut values: Vec<Rational> = v
            .into_iter()
            .map(|(p, q)| Rational::new(p.into(), q.into()))
            .collect();
        values[0] = Rational::zero();
        SetFunction::new(universe(n), values).unwrap()
    })
}

fn sized_h() -> impl Strategy<Value = SetFunction<Rational>> {
    (1usize..=5).prop_flat_map(rational_h)
}

fn ci(n: usize) -> impl Strategy<Value = Ci> {
    let m = 1u32 << n;
    (0..m, 0..m, 0..m).prop_map(|(a, b, c)| {
        Ci::new(
            VarSet::from_bits(a),
            VarSet::from_bits(b),
            VarSet::from_bits(c),
        )
    })
}

fn saturated_or_conditional(n: usize) -> impl Strategy<Value = Ci> {
    let m = 1u32 << n;
    prop_oneof![
        (0..m, 0..m).prop_map(|(x, y)| Ci::conditional(VarSet::from_bits(x), VarSet::from_bits(y))),
        proptest::collection::vec(0u8..3, n).prop_map(|labels| {
            let part = |k: u8| VarSet::from_indices((0..labels.len()).filter(|&i| labels[i] == k));
            Ci::new(part(0), part(1), part(2))
        }),
    ]
}

fn implication(n: usize) -> impl Strategy<Value = Implication> {
    (
        proptest::collection::vec(saturated_or_conditional(n), 0..=3),
        ci(n),
    )
        .prop_map(move |(sigma, tau)| {
            Implication::new(
                universe(n),
                sigma.into_iter().map(Constraint::Ci).collect(),
                Constraint::Ci(tau),
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mobius_round_trip(h in sized_h()) {
        let n = h.n();
        let mut a = h.values().to_vec();
        superset_mobius(&mut a, n);
        prop_assert_eq!(&a, &superset_mobius_naive(h.values(), n));
        superset_zeta(&mut a, n);
        prop_assert_eq!(a.as_slice(), h.values());
        prop_assert_eq!(i_measure(&h).reconstruct(), h);
    }

    #[test]
    fn chain_decomposition_is_exact(h in rational_h(5), tau in ci(5)) {
        let parts = chain_decompose(&tau);
        prop_assert!(parts.iter().all(|p| p.normalized().is_elemental()));
        let sum: Rational = parts.iter().map(|p| p.eval(&h)).sum();
        prop_assert_eq!(sum, tau.eval(&h));
    }

    #[test]
    fn saturation_preserves_the_sum(h in rational_h(4), sigma in proptest::collection::vec(saturated_or_conditional(4), 0..=4)) {
        let cons: Vec<Constraint> = sigma.iter().copied().map(Constraint::Ci).collect();
        let sat = saturate_with_origins(&cons, 4).unwrap();
        prop_assert!(sat.iter().all(|(c, _)| c.is_saturated(4)));
        let before: Rational = sigma.iter().map(|c| c.eval(&h)).sum();
        let after: Rational = sat.iter().map(|(c, _)| c.eval(&h)).sum();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn normalization_keeps_the_value(h in rational_h(4), tau in ci(4)) {
        prop_assert_eq!(tau.normalized().eval(&h), tau.eval(&h));
    }

    #[test]
    fn step_functions_are_polymatroids(n in 1usize..=5, bits in any::<u32>()) {
        let u = universe(n);
        let w = VarSet::from_bits(bits % u.full().bits());
        let h = step_function(&u, w).unwrap();
        prop_assert!(h.is_polymatroid());
        for e in elemental_inequalities(n) {
            prop_assert!(e.eval(&h) >= int(0));
        }
    }

    #[test]
    fn polymatroid_checks_agree(h in sized_h()) {
        prop_assert_eq!(h.is_polymatroid(), h.is_polymatroid_brute_force());
    }

    #[test]
    fn positive_cone_points_decompose(n in 1usize..=4, coeffs in proptest::collection::vec(0i64..=4, 16)) {
        let u = universe(n);
        let pairs: Vec<(VarSet, Rational)> = (0..u.full().bits())
            .map(|m| (VarSet::from_bits(m), int(coeffs[m as usize])))
            .collect();
        let h = recompose(&u, pairs.clone());
        prop_assert!(is_positive_polymatroid(&h));
        prop_assert!(h.is_polymatroid());
        let back: Vec<(VarSet, Rational)> = step_decomposition(&h).into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let expected: Vec<(VarSet, Rational)> = pairs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        prop_assert_eq!(back, expected);
    }

    #[test]
    fn basket_density_counts_baskets(n in 1usize..=5, raw in proptest::collection::vec(any::<u32>(), 1..40)) {
        let u = universe(n);
        let baskets: Vec<VarSet> = raw.iter().map(|&b| VarSet::from_bits(b & u.full().bits())).collect();
        let b = BasketSet::new(u.clone(), baskets).unwrap();
        let f = support(&b);
        for w in u.full().subsets() {
            prop_assert_eq!(f.density(w), b.multiplicity(w) as i64);
        }
        prop_assert!(to_polymatroid(&b).is_polymatroid());
        let text = b.to_text();
        let again = BasketSet::parse(&text, Some(u.clone())).unwrap();
        prop_assert_eq!(again.baskets(), b.baskets());
    }

    #[test]
    fn implications_display_and_parse_back(imp in implication(4)) {
        let text = imp.display();
        let again = parse_implication(&text).unwrap();
        let n = imp.n();
        let h_of = |i: &Implication, h: &SetFunction<Rational>| -> Vec<Rational> {
            i.antecedents.iter().chain([&i.consequent]).map(|c| c.eval(h)).collect()
        };
        let h = SetFunction::from_fn(universe(n), |w| int(w.bits() as i64 * 7 % 11 - 5));
        prop_assert_eq!(h_of(&imp, &h), h_of(&again, &h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polymatroid_verdicts_carry_checkable_evidence(imp in implication(4)) {
        let v = ei_check(&imp, ModelClass::Polymatroids).unwrap();
        if v.holds {
            let cert = v.certificate.expect("certificate");
            prop_assert!(verify_certificate(cert.certificate(), &imp));
        } else {
            let h = v.witness.expect("witness");
            prop_assert!(h.is_polymatroid());
            prop_assert!(imp.antecedents.iter().all(|c| c.eval(&h).is_zero()));
            prop_assert!(!imp.consequent.eval(&h).is_zero());
        }
        let step = ei_check(&imp, ModelClass::StepFunctions).unwrap();
        prop_assert_eq!(step.holds, v.holds);
    }

    #[test]
    fn quadratic_certificates_verify(imp in implication(4)) {
        if ei_check(&imp, ModelClass::StepFunctions).unwrap().holds {
            let r = implic::quadratic_certificate(&imp).unwrap();
            prop_assert!(verify_certificate(r.certificate.certificate(), &imp));
            prop_assert!(r.certificate.lambda() <= r.bound_claimed);
            prop_assert!(r.bound_claimed <= int(4));
        } else {
            prop_assert!(implic::quadratic_certificate(&imp).is_err());
        }
    }
}
