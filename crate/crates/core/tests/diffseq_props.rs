use num_traits::{One, Zero};
use proptest::prelude::*;

use diffseq_core::derivative::{
    estimate, estimate_nth_derivative, estimate_nth_derivative_exact, remainder_bound,
    RemainderData, SampleGrid,
};
use diffseq_core::diffseq::{
    binomial_nth_difference, difference_table, factorial, newton_constant, Polynomial,
};
use diffseq_core::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..=10_000, 1i64..=1_000).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    (
        nonzero_rational(),
        prop::collection::vec(rational(), 0..=max_degree - 1),
    )
        .prop_map(|(lead, rest)| {
            let mut c = vec![lead];
            c.extend(rest);
            Polynomial::new(c)
        })
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

proptest! {
    #[test]
    fn nth_difference_is_newton_constant(p in polynomial(8), x in rational(), k in nonzero_rational()) {
        let n = p.degree();
        let expected = p.leading() * num_traits::pow(k.clone(), n) * Rational::from_integer(factorial(n));
        prop_assert_eq!(&newton_constant(&p, &k), &expected);
        prop_assert_eq!(binomial_nth_difference(&p, &x, &k, n).unwrap(), expected);
        prop_assert!(binomial_nth_difference(&p, &x, &k, n + 1).unwrap().is_zero());
    }

    #[test]
    fn difference_operator_is_linear(
        a in polynomial(6), b in polynomial(6), c in rational(), x in rational(), k in nonzero_rational(),
        order in 0usize..=7,
    ) {
        let combo = &a.scale(&c) + &b;
        let lhs = binomial_nth_difference(&combo, &x, &k, order).unwrap();
        let rhs = &c * binomial_nth_difference(&a, &x, &k, order).unwrap()
            + binomial_nth_difference(&b, &x, &k, order).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn table_rows_are_shift_invariant(seq in prop::collection::vec(rational(), 2..=12), shift in rational()) {
        let order = seq.len() - 1;
        let shifted: Vec<Rational> = seq.iter().map(|v| v + &shift).collect();
        let a = difference_table(&seq, order).unwrap();
        let b = difference_table(&shifted, order).unwrap();
        for m in 1..=order {
            prop_assert_eq!(a.row(m), b.row(m));
        }
        prop_assert_eq!(a.row(0).unwrap().len(), seq.len());
    }

    #[test]
    fn table_matches_binomial_sum_on_unit_grid(p in polynomial(6), start in -20i64..=20) {
        let n = p.degree();
        let seq: Vec<Rational> = (0..=n as i64 + 3).map(|j| p.eval(&int(start + j))).collect();
        let table = difference_table(&seq, n).unwrap();
        for (m, entry) in table.row(n).unwrap().iter().enumerate() {
            let x = int(start + (m + n) as i64);
            prop_assert_eq!(&binomial_nth_difference(&p, &x, &Rational::one(), n).unwrap(), entry);
        }
    }

    #[test]
    fn exact_estimate_reproduces_low_degree_polynomials(
        p in polynomial(5), extra in 0usize..=2, x in rational(), k in nonzero_rational(),
    ) {
        let n = p.degree().max(1) + extra;
        let values: Vec<Rational> = (0..=n).map(|i| p.eval(&(&x + &k * int(i as i64)))).collect();
        let est = estimate_nth_derivative_exact(&values, &k).unwrap();
        prop_assert_eq!(est, p.nth_derivative(n).eval(&Rational::zero()));
        // (-k)^n estimate is the alternating sum C(n,i)(-1)^i f(x + i k)
        let reversed_k = -k.clone();
        let rev: Vec<Rational> = values.iter().rev().cloned().collect();
        prop_assert_eq!(
            estimate_nth_derivative_exact(&rev, &reversed_k).unwrap(),
            p.nth_derivative(n).eval(&Rational::zero())
        );
    }

    #[test]
    fn remainder_bound_holds_for_exp_and_sin(
        x0 in -2.0f64..2.0, offset in -0.05f64..0.05, k in prop_oneof![-0.05f64..-1e-3, 1e-3f64..0.05],
        n in 1usize..=4, use_sin in any::<bool>(),
    ) {
        let all = (f64::NEG_INFINITY, f64::INFINITY);
        let x = x0 + offset;
        let (f, analytic, m): (fn(f64) -> f64, f64, f64) = if use_sin {
            let d = [x0.sin(), x0.cos(), -x0.sin(), -x0.cos()][n % 4];
            (f64::sin, d, 1.0)
        } else {
            let grid = SampleGrid::from_fn(f64::exp, x, x0, k, n, all).unwrap();
            (f64::exp, x0.exp(), grid.hull().1.exp())
        };
        let grid = SampleGrid::from_fn(f, x, x0, k, n, all).unwrap();
        let rem = RemainderData::new(m).unwrap();
        let est = estimate(&grid, &rem);
        prop_assert_eq!(est.value, estimate_nth_derivative(&grid));
        prop_assert_eq!(est.error_bound, remainder_bound(&grid, &rem));
        // sampling rounding is amplified by 2^n / |k|^n
        let rounding = 4.0 * f64::EPSILON * 2f64.powi(n as i32) / k.abs().powi(n as i32);
        prop_assert!((est.value - analytic).abs() <= est.error_bound + rounding,
            "err {} bound {}", (est.value - analytic).abs(), est.error_bound);
    }

    #[test]
    fn zero_bound_for_zero_m(x in -5.0f64..5.0, k in 0.01f64..1.0, n in 1usize..=5) {
        let grid = SampleGrid::from_fn(|t| t, x, x, k, n, (f64::NEG_INFINITY, f64::INFINITY)).unwrap();
        prop_assert_eq!(remainder_bound(&grid, &RemainderData::new(0.0).unwrap()), 0.0);
    }
}
