use moment_spectra::discretize::{hilbert_segment, legendre_gramian, padded_difference};
use moment_spectra::experiments::fit_log_linear;
use moment_spectra::numerics::{BigFloat, DenseMatrix, PrecisionContext, Scalar};
use moment_spectra::operators::kernel_k;
use moment_spectra::spectra::{default_tolerance, hilbert_singular_values, singular_values};
use proptest::prelude::*;

fn hw() -> PrecisionContext {
    PrecisionContext::hardware()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_symmetric_nonnegative(s in 0.0f64..=1.0, t in 0.0f64..=1.0) {
        let c = hw();
        let a: f64 = kernel_k(&s, &t, &c).unwrap();
        let b: f64 = kernel_k(&t, &s, &c).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a.is_finite() && a >= 0.0);
        prop_assert!(a <= std::f64::consts::PI.powi(2) / 6.0 + 1e-15);
    }

    #[test]
    fn kernel_vanishes_on_edges(t in 0.0f64..=1.0) {
        let c = hw();
        prop_assert_eq!(kernel_k(&1.0, &t, &c).unwrap(), 0.0);
        prop_assert_eq!(kernel_k(&t, &1.0, &c).unwrap(), 0.0);
    }

    #[test]
    fn padded_difference_structure(base in 1usize..8, extra in 0usize..8) {
        let n = base + extra;
        let m = padded_difference(n, base).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
                if i < base && j < base {
                    prop_assert!(m.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn singular_values_sorted_and_preserve_frobenius(
        rows in 1usize..7,
        cols in 1usize..7,
        seed in proptest::collection::vec(-10.0f64..10.0, 49),
    ) {
        let c = hw();
        let m = DenseMatrix::from_fn(rows, cols, "M", |i, j| seed[i * 7 + j]);
        let sv = singular_values(&m, &c, &default_tolerance(&c)).unwrap();
        prop_assert_eq!(sv.len(), rows.min(cols));
        prop_assert!(sv.values.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(sv.values.iter().all(|v| *v >= 0.0));
        let fro: f64 = seed.iter().take(rows * 7).enumerate().filter(|(k, _)| k % 7 < cols).map(|(_, v)| v * v).sum();
        let sum: f64 = sv.values.iter().map(|v| v * v).sum();
        prop_assert!((fro - sum).abs() <= 1e-10 * fro.max(1.0));
        let st = singular_values(&m.transpose(), &c, &default_tolerance(&c)).unwrap();
        for (a, b) in sv.values.iter().zip(&st.values) {
            prop_assert!((a - b).abs() <= 1e-12 * sv.values[0].max(1e-300));
        }
    }

    #[test]
    fn log_linear_recovers_exponentials(slope in -3.0f64..0.5, intercept in -5.0f64..5.0, len in 2usize..40) {
        let v: Vec<f64> = (1..=len).map(|i| (slope * i as f64 + intercept).exp()).collect();
        let f = fit_log_linear(&v, 1..=len).unwrap();
        prop_assert!((f.slope - slope).abs() < 1e-9);
        prop_assert!((f.intercept - intercept).abs() < 1e-8);
        prop_assert!(f.residual_rms >= 0.0 && f.residual_rms < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hilbert_trace_and_positivity(n in 1usize..14) {
        let c = PrecisionContext::new(40).unwrap();
        let sv = hilbert_singular_values::<BigFloat>(n, &c).unwrap();
        let trace: f64 = (1..=n).map(|i| 1.0 / (2 * i - 1) as f64).sum();
        let sum: f64 = sv.values.iter().map(Scalar::to_f64).sum();
        prop_assert!((sum - trace).abs() < 1e-14);
        prop_assert!(sv.values.iter().all(|v| !v.is_sign_negative() && !v.is_zero()));
        prop_assert!(sv.values[0].to_f64() < std::f64::consts::PI);
    }

    #[test]
    fn gramian_nested_and_bounded(n in 2usize..24) {
        let c = PrecisionContext::new(40).unwrap();
        let spectrum = |m: usize| {
            let g = legendre_gramian(m).unwrap().to_scalar::<BigFloat>(&c);
            singular_values(&g, &c, &default_tolerance(&c)).unwrap()
        };
        let (small, big) = (spectrum(n), spectrum(2 * n));
        prop_assert!(big.values[0].to_f64() <= 2.0 / std::f64::consts::PI.sqrt());
        for k in 0..n {
            if small.trusted[k] && big.trusted[k] {
                prop_assert!(small.values[k].to_f64() <= big.values[k].to_f64() * (1.0 + 1e-14));
            }
        }
    }
}

#[test]
fn hilbert_entries_are_exact() {
    let h = hilbert_segment(7).unwrap();
    for i in 0..7 {
        for j in 0..7 {
            assert_eq!((h.get(i, j).numer().to_u32(), h.get(i, j).denom().to_u32()), (Some(1), Some((i + j + 1) as u32)));
        }
    }
}
