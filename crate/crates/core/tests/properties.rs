use franklin_lebesgue::decimal::format_quadratic;
use franklin_lebesgue::invgram::inverse_row;
use franklin_lebesgue::lebesgue::{kappa, projection_norm};
use franklin_lebesgue::oracle::{
    abs_kernel_integral, dense_inverse, float_quadrature_check, integrated_gram, oracle_kappas, DenseMatrix,
};
use franklin_lebesgue::recurrences::{phi, HyperbolicTable};
use franklin_lebesgue::splines::{bspline_eval, gram_matrix, special_knots, KnotConfig, KnotSequence};
use franklin_lebesgue::QuadraticRational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn knots_from_weights(weights: &[u32]) -> KnotSequence {
    let total: u32 = weights.iter().sum();
    let mut acc = 0;
    let knots = weights
        .iter()
        .map(|w| {
            let t = BigRational::new(BigInt::from(acc), BigInt::from(total));
            acc += w;
            t
        })
        .collect();
    KnotSequence::new(knots).unwrap()
}

fn knot_config() -> impl Strategy<Value = KnotConfig> {
    (1usize..14).prop_flat_map(|n| (Just(n), 0..=n)).prop_filter_map("N ≥ 2", |(n, nu)| KnotConfig::new(n, nu).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pell_identity(k in 0usize..400) {
        let t = HyperbolicTable::shared(k);
        let (a, b) = (t.a(k), t.b(k));
        prop_assert_eq!(a * a - BigInt::from(3) * b * b, BigInt::one());
    }

    #[test]
    fn lambda_powers_multiply(i in 0usize..60, j in 0usize..60) {
        let t = HyperbolicTable::shared(i + j);
        prop_assert_eq!(&t.lambda_pow(i) * &t.lambda_pow(j), t.lambda_pow(i + j));
        prop_assert!((&t.lambda_pow(i) * &t.lambda_pow_neg(i)).is_one());
    }

    #[test]
    fn phi_is_inversion_symmetric(p in 1i64..10_000, q in 1i64..10_000) {
        let t = rat(p, q);
        let phi_t = phi(&t).unwrap();
        prop_assert_eq!(&phi_t, &phi(&rat(q, p)).unwrap());
        prop_assert!(phi_t >= rat(1, 2) && phi_t < BigRational::one());
    }

    #[test]
    fn quadratic_ordering_matches_floats(p in -1000i64..1000, q in -1000i64..1000, r in 1i64..50) {
        let v = QuadraticRational::new(rat(p, r), rat(q, r));
        let f = (p as f64 + q as f64 * 3f64.sqrt()) / r as f64;
        if f.abs() > 1e-9 {
            prop_assert_eq!(v.is_positive(), f > 0.0);
        }
        let text: f64 = format_quadratic(&v, 12).parse().unwrap();
        prop_assert!((text - f).abs() < 1e-11 * (1.0 + f.abs()));
    }

    #[test]
    fn hats_partition_unity(weights in prop::collection::vec(1u32..20, 2..9), p in 0i64..997) {
        let ks = knots_from_weights(&weights);
        let t = rat(p, 997);
        let total: BigRational = (0..ks.len()).map(|j| bspline_eval(&ks, j, &t).unwrap()).sum();
        prop_assert!(total.is_one());
    }

    #[test]
    fn gram_assemblies_agree(weights in prop::collection::vec(1u32..20, 2..9)) {
        let ks = knots_from_weights(&weights);
        let by_quadrature = integrated_gram(&ks).unwrap();
        let by_pattern = gram_matrix(&ks);
        for i in 0..ks.len() {
            for j in 0..ks.len() {
                prop_assert_eq!(by_quadrature.get(i, j), &by_pattern.entry(i, j));
            }
            prop_assert_eq!(by_pattern.row_sum(i), (ks.gap(i as isize - 1) + ks.gap(i as isize)) / BigRational::from_integer(2.into()));
        }
    }

    #[test]
    fn dense_inverse_is_inverse(weights in prop::collection::vec(1u32..30, 2..10)) {
        let ks = knots_from_weights(&weights);
        let g = DenseMatrix::gram(&ks);
        let inv = dense_inverse(&g).unwrap();
        prop_assert!(g.mul(&inv).unwrap().is_identity());
        prop_assert!(inv.is_symmetric());
    }

    #[test]
    fn kappa_at_least_one(weights in prop::collection::vec(1u32..30, 2..10)) {
        // the kernel reproduces constants, so ∫k(t_j, ·) = 1 ≤ ∫|k(t_j, ·)|
        let ks = knots_from_weights(&weights);
        for k in oracle_kappas(&ks).unwrap() {
            prop_assert!(k >= BigRational::one());
        }
    }

    #[test]
    fn closed_form_rows_match_dense(cfg in knot_config()) {
        let ks = special_knots(cfg);
        let inv = dense_inverse(&DenseMatrix::gram(&ks)).unwrap();
        for j in 0..cfg.knot_count() {
            let row = inverse_row(cfg, j).unwrap();
            prop_assert_eq!(&row.entries()[..], inv.row(j));
            prop_assert_eq!(kappa(&row, &ks).unwrap(), abs_kernel_integral(j, &inv, &ks).unwrap());
        }
    }
}

#[test]
fn quadrature_agrees_with_exact_kappa() {
    let cfg = KnotConfig::new(6, 2).unwrap();
    let ks = special_knots(cfg);
    let inv = dense_inverse(&DenseMatrix::gram(&ks)).unwrap();
    for j in 0..cfg.knot_count() {
        let exact = QuadraticRational::rational(abs_kernel_integral(j, &inv, &ks).unwrap()).to_f64();
        let float = float_quadrature_check(j, &inv, &ks, 200_000).unwrap();
        assert!((exact - float).abs() < 1e-6, "j={j}: {exact} vs {float}");
    }
}

#[test]
fn uniform_row_sums_of_inverse() {
    // the inverse applied to the vector of half-gap sums is all ones
    for cfg in [KnotConfig::new(5, 0).unwrap(), KnotConfig::new(4, 4).unwrap(), KnotConfig::new(9, 3).unwrap()] {
        let ks = special_knots(cfg);
        let weights: Vec<BigRational> =
            (0..ks.len()).map(|k| (ks.gap(k as isize - 1) + ks.gap(k as isize)) / BigRational::from_integer(2.into())).collect();
        for j in 0..ks.len() {
            let row = inverse_row(cfg, j).unwrap();
            let s: BigRational = row.entries().iter().zip(&weights).map(|(a, w)| a * w).sum();
            assert!(s.is_one(), "{cfg:?} row {j}");
        }
    }
}

#[test]
fn nu_zero_and_nu_n_coincide() {
    // ν = n halves the spacing of n uniform intervals: same as 2n uniform knots
    for n in 1..8 {
        let a = projection_norm(KnotConfig::new(n, n).unwrap()).unwrap();
        let b = projection_norm(KnotConfig::new(2 * n, 0).unwrap()).unwrap();
        assert_eq!(a.norm, b.norm);
    }
    assert!(projection_norm(KnotConfig::new(4, 0).unwrap()).unwrap().norm > BigRational::zero());
}
