//! Property tests for the dense numeric kernel, checked against
//! independently computed oracles (reconstruction errors, Rayleigh-quotient
//! sampling, norm inequalities).

use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng as _;
use wkf_core::numeric::{
    hermitian_eig, inner, normalized, numerical_rank, op_norm, pinv, range_basis, solve_pencil,
    svd, vec_norm, ComplexMatrix, PencilProblem,
};
use wkf_core::random::{
    random_matrix, random_unit_vector, random_unitary, random_with_spectrum, seeded_rng,
};
use wkf_core::{HERMITIAN_TOL, RANK_TOL};

fn random_hermitian(seed: u64, dim: usize) -> ComplexMatrix {
    let mut rng = seeded_rng(seed);
    let a = random_matrix(&mut rng, dim, dim).unwrap();
    a.add(&a.adjoint()).unwrap().scaled(Complex64::new(0.5, 0.0)).unwrap()
}

fn random_psd(seed: u64, dim: usize, rank: usize) -> ComplexMatrix {
    let mut rng = seeded_rng(seed);
    let a = random_matrix(&mut rng, dim, rank).unwrap();
    a.mul(&a.adjoint()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigendecomposition_reconstructs(seed in 0u64..5_000, dim in 1usize..7) {
        let a = random_hermitian(seed, dim);
        let eig = hermitian_eig(&a, HERMITIAN_TOL).unwrap();
        // Eigenvalues ascend.
        for pair in eig.values.windows(2) {
            prop_assert!(pair[0] <= pair[1] + 1e-12);
        }
        // Columns are orthonormal and satisfy A v = λ v.
        for i in 0..dim {
            let v = eig.vectors.column(i);
            prop_assert!((vec_norm(&v) - 1.0).abs() < 1e-9);
            let av = a.matvec(&v).unwrap();
            let residual: f64 = av
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - y * eig.values[i]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            prop_assert!(residual < 1e-8 * (1.0 + a.frobenius_norm()));
            for j in 0..i {
                let w = eig.vectors.column(j);
                prop_assert!(inner(&v, &w).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn rayleigh_quotients_stay_inside_the_spectrum(seed in 0u64..5_000, dim in 1usize..7) {
        let a = random_hermitian(seed, dim);
        let eig = hermitian_eig(&a, HERMITIAN_TOL).unwrap();
        let (lo, hi) = (eig.values[0], eig.values[dim - 1]);
        let mut rng = seeded_rng(seed ^ 0xabcd);
        for _ in 0..200 {
            let v = random_unit_vector(&mut rng, dim);
            let q = inner(&a.matvec(&v).unwrap(), &v).re;
            prop_assert!(q >= lo - 1e-9 * (1.0 + hi.abs()));
            prop_assert!(q <= hi + 1e-9 * (1.0 + hi.abs()));
        }
    }

    #[test]
    fn svd_reconstructs_rectangular_matrices(
        seed in 0u64..5_000,
        rows in 1usize..7,
        cols in 1usize..7,
    ) {
        let mut rng = seeded_rng(seed);
        let a = random_matrix(&mut rng, rows, cols).unwrap();
        let s = svd(&a).unwrap();
        let rebuilt = s
            .u
            .mul(&ComplexMatrix::diag_real(&s.singular_values).unwrap())
            .unwrap()
            .mul(&s.v.adjoint())
            .unwrap();
        let err = rebuilt.sub(&a).unwrap().frobenius_norm();
        prop_assert!(err < 1e-8 * (1.0 + a.frobenius_norm()));
        for pair in s.singular_values.windows(2) {
            prop_assert!(pair[0] >= pair[1] - 1e-12);
        }
    }

    #[test]
    fn pseudoinverse_satisfies_all_four_penrose_identities(
        seed in 0u64..5_000,
        rows in 1usize..7,
        cols in 1usize..7,
    ) {
        let mut rng = seeded_rng(seed);
        let a = random_matrix(&mut rng, rows, cols).unwrap();
        let p = pinv(&a, RANK_TOL).unwrap();
        let scale = 1.0 + a.frobenius_norm() + p.frobenius_norm();
        let apa = a.mul(&p).unwrap().mul(&a).unwrap();
        prop_assert!(apa.sub(&a).unwrap().frobenius_norm() < 1e-7 * scale);
        let pap = p.mul(&a).unwrap().mul(&p).unwrap();
        prop_assert!(pap.sub(&p).unwrap().frobenius_norm() < 1e-7 * scale);
        let ap = a.mul(&p).unwrap();
        prop_assert!(ap.sub(&ap.adjoint()).unwrap().frobenius_norm() < 1e-7 * scale);
        let pa = p.mul(&a).unwrap();
        prop_assert!(pa.sub(&pa.adjoint()).unwrap().frobenius_norm() < 1e-7 * scale);
    }

    #[test]
    fn rank_of_a_prescribed_spectrum_is_the_nonzero_count(
        seed in 0u64..5_000,
        dim in 2usize..6,
        rank in 1usize..5,
    ) {
        let rank = rank.min(dim);
        let mut spectrum = vec![0.0; dim];
        for (i, s) in spectrum.iter_mut().take(rank).enumerate() {
            *s = 1.0 + i as f64;
        }
        let mut rng = seeded_rng(seed);
        let a = random_with_spectrum(&mut rng, dim, dim, &spectrum).unwrap();
        prop_assert_eq!(numerical_rank(&a, RANK_TOL).unwrap(), rank);
        prop_assert!((op_norm(&a).unwrap() - rank as f64).abs() < 1e-9 * rank as f64);
    }

    #[test]
    fn operator_norm_dominates_every_unit_image(seed in 0u64..5_000, rows in 1usize..6, cols in 1usize..6) {
        let mut rng = seeded_rng(seed);
        let a = random_matrix(&mut rng, rows, cols).unwrap();
        let norm = op_norm(&a).unwrap();
        for _ in 0..100 {
            let v = random_unit_vector(&mut rng, cols);
            prop_assert!(vec_norm(&a.matvec(&v).unwrap()) <= norm * (1.0 + 1e-9) + 1e-12);
        }
    }

    #[test]
    fn pencil_values_bound_sampled_generalized_quotients(seed in 0u64..5_000, dim in 1usize..6) {
        // Full-rank comparison matrix so every direction counts.
        let m1 = random_psd(seed, dim, dim + 1);
        let m2 = random_psd(seed ^ 0x77, dim, dim).add(&ComplexMatrix::identity(dim)).unwrap();
        let problem = PencilProblem::new(m1.clone(), m2.clone(), HERMITIAN_TOL).unwrap();
        let solution = solve_pencil(&problem).unwrap();
        let lo = solution.values[0];
        let hi = solution.values[solution.values.len() - 1];
        let mut rng = seeded_rng(seed ^ 0x5a5a);
        for _ in 0..200 {
            let v = random_unit_vector(&mut rng, dim);
            let num = inner(&m1.matvec(&v).unwrap(), &v).re;
            let den = inner(&m2.matvec(&v).unwrap(), &v).re;
            let q = num / den;
            prop_assert!(q >= lo - 1e-8 * (1.0 + hi.abs()));
            prop_assert!(q <= hi + 1e-8 * (1.0 + hi.abs()));
        }
        // The reported witnesses attain the extremes.
        let attained = |v: &[Complex64]| {
            inner(&m1.matvec(v).unwrap(), v).re / inner(&m2.matvec(v).unwrap(), v).re
        };
        prop_assert!((attained(&solution.smallest_witness) - lo).abs() < 1e-7 * (1.0 + hi.abs()));
        prop_assert!((attained(&solution.largest_witness) - hi).abs() < 1e-7 * (1.0 + hi.abs()));
    }

    #[test]
    fn pseudoinverse_norm_controls_range_vectors(seed in 0u64..5_000, dim in 2usize..6, rank in 1usize..5) {
        // For x in the range of A, ‖x‖ ≤ ‖A†‖·‖A*x‖.
        let rank = rank.min(dim);
        let mut spectrum = vec![0.0; dim];
        let mut rng = seeded_rng(seed);
        for s in spectrum.iter_mut().take(rank) {
            *s = rng.gen_range(0.4..3.0);
        }
        let a = random_with_spectrum(&mut rng, dim, dim, &spectrum).unwrap();
        let dagger_norm = op_norm(&pinv(&a, RANK_TOL).unwrap()).unwrap();
        let basis = range_basis(&a, RANK_TOL).unwrap().unwrap();
        for _ in 0..50 {
            let coeff = random_unit_vector(&mut rng, basis.cols());
            let x = normalized(&basis.matvec(&coeff).unwrap());
            let pulled = vec_norm(&a.adjoint_matvec(&x).unwrap());
            prop_assert!(vec_norm(&x) <= dagger_norm * pulled * (1.0 + 1e-8));
        }
    }

    #[test]
    fn unitary_conjugation_preserves_eigenvalues(seed in 0u64..5_000, dim in 1usize..6) {
        let a = random_hermitian(seed, dim);
        let mut rng = seeded_rng(seed ^ 0x1234);
        let u = random_unitary(&mut rng, dim).unwrap();
        let conjugated = u.mul(&a).unwrap().mul(&u.adjoint()).unwrap();
        // Conjugation may leave tiny non-Hermitian dust; symmetrize first.
        let sym = conjugated
            .add(&conjugated.adjoint())
            .unwrap()
            .scaled(Complex64::new(0.5, 0.0))
            .unwrap();
        let before = hermitian_eig(&a, HERMITIAN_TOL).unwrap().values;
        let after = hermitian_eig(&sym, HERMITIAN_TOL).unwrap().values;
        for (x, y) in before.iter().zip(&after) {
            prop_assert!((x - y).abs() < 1e-8 * (1.0 + x.abs()));
        }
    }
}
