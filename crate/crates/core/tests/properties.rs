use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use twisted_bernoulli::bernoulli::{generating_series, numbers, polynomial, TwistSpec};
use twisted_bernoulli::characters::DirichletCharacter;
use twisted_bernoulli::exact::arith::{binomial, euler_phi};
use twisted_bernoulli::exact::{CycloElem, CycloField, Rational, RootOfUnity, Valuation};
use twisted_bernoulli::identities::{
    check_convolution, check_convolution_first_order, check_shifted_sum, check_shifted_sum_first_order,
    InstanceContext,
};
use twisted_bernoulli::powerseries::{divide_cancel, TruncSeries};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn field(m: u64) -> Arc<CycloField> {
    CycloField::get(m).unwrap()
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn elem_in(m: u64) -> impl Strategy<Value = CycloElem> {
    let f = field(m);
    prop::collection::vec(small_rational(), f.degree()).prop_map(move |c| CycloElem::from_coeffs(&f, &c).unwrap())
}

fn conductor() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![1u64, 3, 4, 5, 6, 7, 8, 9, 10, 12])
}

fn pair() -> impl Strategy<Value = (CycloElem, CycloElem)> {
    conductor().prop_flat_map(|m| (elem_in(m), elem_in(m)))
}

fn series_in(m: u64, order: usize) -> impl Strategy<Value = TruncSeries> {
    let f = field(m);
    prop::collection::vec(elem_in(m), order + 1).prop_map(move |c| TruncSeries::new(&f, c).unwrap())
}

fn series_triple() -> impl Strategy<Value = (TruncSeries, TruncSeries, TruncSeries)> {
    (prop::sample::select(vec![1u64, 3, 4, 6]), 0usize..=10)
        .prop_flat_map(|(m, n)| (series_in(m, n), series_in(m, n), series_in(m, n)))
}

/// Conductor paired with its prime, for valuations.
fn prime_power_field() -> impl Strategy<Value = (u64, u64)> {
    prop::sample::select(vec![(3u64, 3u64), (9, 3), (4, 2), (8, 2), (5, 5), (7, 7), (1, 2), (1, 5)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_multiplicative((a, b) in pair()) {
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn embed_is_an_injective_homomorphism((a, b) in pair(), factor in 1u64..=3) {
        let target = a.conductor() * factor;
        let (ea, eb) = (a.embed(target).unwrap(), b.embed(target).unwrap());
        prop_assert_eq!((&a * &b).embed(target).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).embed(target).unwrap(), &ea + &eb);
        prop_assert_eq!(a == b, ea == eb);
    }

    #[test]
    fn inverse_times_element_is_one(a in conductor().prop_flat_map(elem_in)) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a.inv().unwrap() * &a).is_one());
    }

    #[test]
    fn valuation_is_additive(((a, b), p) in prime_power_field().prop_flat_map(|(m, p)| ((elem_in(m), elem_in(m)), Just(p)))) {
        let (va, vb) = (a.padic_valuation(p).unwrap(), b.padic_valuation(p).unwrap());
        prop_assert_eq!((&a * &b).padic_valuation(p).unwrap(), &va + &vb);
    }

    #[test]
    fn series_product_commutes_and_associates((a, b, c) in series_triple()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn series_inverse((a, _, _) in series_triple()) {
        prop_assume!(!a.coeffs()[0].is_zero());
        let one = TruncSeries::one(a.field(), a.order());
        prop_assert_eq!(a.invert().unwrap().mul(&a).unwrap(), one);
    }

    #[test]
    fn divide_cancel_undoes_multiplication((num, den, _) in series_triple(), shift in 0usize..=3) {
        // force a head of `shift` zeros in the denominator
        let n = den.order();
        prop_assume!(shift <= n);
        let mut c = den.coeffs().to_vec();
        for x in c.iter_mut().take(shift) {
            *x = CycloElem::zero(den.field());
        }
        let den = TruncSeries::new(den.field(), c).unwrap();
        prop_assume!(den.valuation() == Some(shift));
        let quotient = divide_cancel(&num.mul(&den).unwrap(), &den).unwrap();
        prop_assert_eq!(quotient.order(), n - shift);
        prop_assert_eq!(quotient, num.truncate(n - shift).unwrap());
    }

    #[test]
    fn exponentials_add((a, b) in prop::sample::select(vec![1u64, 3, 4, 6]).prop_flat_map(|m| (elem_in(m), elem_in(m))), n in 0usize..=10) {
        let lhs = TruncSeries::exp_at(&a, n).mul(&TruncSeries::exp_at(&b, n)).unwrap();
        prop_assert_eq!(lhs, TruncSeries::exp_at(&(&a + &b), n));
    }

    #[test]
    fn valuation_of_rationals_matches_integers(n in 1i64..10_000, e in 0u32..5) {
        let f = field(1);
        let x = CycloElem::from_int(&f, n * 3i64.pow(e));
        let v = x.padic_valuation(3).unwrap();
        let expected = e as i64 + (0..).take_while(|k| n % 3i64.pow(k + 1) == 0).count() as i64;
        prop_assert_eq!(v, Valuation::Finite(q(expected, 1)));
    }
}

fn twist() -> impl Strategy<Value = TwistSpec> {
    (1u64..=5, 0usize..4, prop::sample::select(vec![1u64, 2, 3, 4, 6]), 0i64..6).prop_map(|(d, j, order, e)| {
        let chars = DirichletCharacter::enumerate_cyclic(d).unwrap();
        let chi = chars[j % chars.len()].clone();
        TwistSpec::new(chi, RootOfUnity::new(order, e)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn order_k_series_is_power_of_order_one(spec in twist(), k in 0u64..=4, n in 6usize..=10) {
        let one = generating_series(&spec, 1, n).unwrap();
        let direct = generating_series(&spec, k, n).unwrap();
        prop_assert_eq!(direct, one.pow(k));
    }

    #[test]
    fn polynomial_is_binomial_expansion_of_numbers(spec in twist(), k in 0u64..=3, n in 0usize..=6, a in small_rational()) {
        let fam = numbers(&spec, k, n).unwrap();
        let mut expected = CycloElem::zero(spec.field());
        let mut power = q(1, 1);
        for j in (0..=n).rev() {
            let c = Rational::from_integer(binomial(n as u64, j as u64)) * &power;
            expected = expected + fam.numbers()[j].scale(&c);
            power = &power * &a;
        }
        prop_assert_eq!(polynomial(&spec, k, n).unwrap().evaluate_rational(&a), expected);
    }

    #[test]
    fn identity_sides_swap_with_weights(
        d in 1u64..=4, j in 0usize..2, order in prop::sample::select(vec![1u64, 2, 3, 4]),
        w1 in 1u64..=3, w2 in 1u64..=3, m in 1u64..=2, n in 0u64..=4,
    ) {
        let chars = DirichletCharacter::enumerate_cyclic(d).unwrap();
        let ctx = InstanceContext::new(chars[j % chars.len()].clone(), RootOfUnity::new(order, 1), "p").unwrap();
        let a = check_convolution(&ctx, n, m, w1, w2).unwrap();
        let b = check_convolution(&ctx, n, m, w2, w1).unwrap();
        prop_assert!(a.holds);
        prop_assert_eq!(&a.lhs, &b.rhs);
        prop_assert_eq!(&a.rhs, &b.lhs);
        let a = check_shifted_sum(&ctx, n, m, w1, w2).unwrap();
        let b = check_shifted_sum(&ctx, n, m, w2, w1).unwrap();
        prop_assert!(a.holds);
        prop_assert_eq!(&a.lhs, &b.rhs);
        let a = check_convolution_first_order(&ctx, n, w1, w2).unwrap();
        let b = check_convolution_first_order(&ctx, n, w2, w1).unwrap();
        prop_assert_eq!(&a.lhs, &b.rhs);
        let a = check_shifted_sum_first_order(&ctx, n, w1, w2).unwrap();
        let b = check_shifted_sum_first_order(&ctx, n, w2, w1).unwrap();
        prop_assert_eq!(&a.lhs, &b.rhs);
    }

    #[test]
    fn holding_identities_agree_at_random_points(
        d in 1u64..=4, order in prop::sample::select(vec![1u64, 2, 3, 9]),
        w1 in 1u64..=3, w2 in 1u64..=3, m in 1u64..=3, n in 0u64..=5,
        points in prop::collection::vec((small_rational(), small_rational()), 10),
    ) {
        let chars = DirichletCharacter::enumerate_cyclic(d).unwrap();
        let ctx = InstanceContext::new(chars.last().unwrap().clone(), RootOfUnity::new(order, 1), "p").unwrap();
        for r in [check_convolution(&ctx, n, m, w1, w2).unwrap(), check_shifted_sum(&ctx, n, m, w1, w2).unwrap()] {
            prop_assert!(r.holds);
            let (l, rr) = (r.lhs_poly().unwrap(), r.rhs_poly().unwrap());
            for (x, y) in &points {
                prop_assert_eq!(l.eval_rational(x, y), rr.eval_rational(x, y));
            }
        }
    }
}

fn same_values(a: &DirichletCharacter, b: &DirichletCharacter) -> bool {
    a.values().iter().zip(b.values()).all(|pair| match pair {
        (Some(x), Some(y)) => x.same_root(y),
        (None, None) => true,
        _ => false,
    })
}

#[test]
fn orthogonality_up_to_eleven() {
    for d in 1..=11u64 {
        let Ok(chars) = DirichletCharacter::enumerate_cyclic(d) else {
            assert_eq!(d, 8, "only 8 lacks a cyclic unit group below 12");
            continue;
        };
        assert_eq!(chars.len() as u64, euler_phi(d));
        for chi in &chars {
            let f = field(chi.value_conductor());
            let total = (0..d)
                .map(|a| chi.value_at(a, &f).unwrap())
                .fold(CycloElem::zero(&f), |acc, v| acc + v);
            let expected = if chi.is_principal() { euler_phi(d) as i64 } else { 0 };
            assert_eq!(total, CycloElem::from_int(&f, expected), "d = {d}, {chi:?}");
            assert!(DirichletCharacter::from_table(d, chi.values().to_vec()).is_ok());
        }
        for a in &chars {
            for b in &chars {
                let prod = a.mul(b).unwrap();
                assert!(DirichletCharacter::from_table(d, prod.values().to_vec()).is_ok());
                assert!(chars.iter().any(|c| same_values(c, &prod)));
            }
        }
    }
}
