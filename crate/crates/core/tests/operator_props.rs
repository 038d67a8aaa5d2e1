//! Property tests for the dense operator core: eigendecomposition
//! reconstruction, trace conservation, and commutator anti-Hermiticity on
//! randomly generated Hermitian matrices.

use num_complex::Complex64;
use proptest::prelude::*;

use fuzzy_spectra::Operator;

/// Random Hermitian operator: symmetrize a random complex matrix.
fn hermitian(dim: usize) -> impl Strategy<Value = Operator> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |vals| {
        let raw: Vec<Complex64> = vals
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        let m = Operator::from_entries(dim, &raw).unwrap();
        (&m + &m.adjoint()).scale_re(0.5)
    })
}

fn dim_and_pair() -> impl Strategy<Value = (Operator, Operator)> {
    (1usize..=64).prop_flat_map(|d| (hermitian(d), hermitian(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn eigendecomposition_reconstructs_and_conserves_trace(a in (1usize..=64).prop_flat_map(hermitian)) {
        let norm = a.frobenius_norm().max(1e-300);
        let eig = a.hermitian_eigensystem().unwrap();
        let rebuilt = eig.reconstruct();
        prop_assert!(a.frobenius_distance(&rebuilt).unwrap() <= 1e-9 * norm.max(1.0));
        let lambda_sum: f64 = eig.eigenvalues.iter().sum();
        let trace = a.trace().re;
        prop_assert!((lambda_sum - trace).abs() <= 1e-9 * trace.abs().max(1.0));
        // eigenvalues ascending
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn commutator_of_hermitians_is_anti_hermitian((a, b) in dim_and_pair()) {
        let c = a.commutator(&b).unwrap();
        let minus_adj = c.adjoint().scale_re(-1.0);
        prop_assert!(c.frobenius_distance(&minus_adj).unwrap() <= 1e-12);
        // and i[A,B] is Hermitian
        let herm = c.scale(Complex64::new(0.0, 1.0));
        prop_assert!(herm.hermitian_defect() <= 1e-12);
    }
}
