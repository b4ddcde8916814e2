//! Randomised algebraic properties of the exact and numeric kernels.

use blochjac::exactmath::{
    discriminant, intpoly, nu_to_laurent, palindrome_to_nu, resultant, LaurentSym, Poly,
};
use blochjac::numerics::{hermitian_eigs, roots_all, HermMatrix, RootOptions};
use blochjac::scalar::rat;
use blochjac::RatPoly;
use num_complex::Complex64;
use proptest::prelude::*;

fn small_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((-6i64..=6, 1i64..=3), 1..=max_deg + 1)
        .prop_map(|c| Poly::new(c.into_iter().map(|(n, d)| rat(n, d)).collect()))
        .prop_filter("positive degree", |p| p.degree().unwrap_or(0) >= 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resultant_is_multiplicative(f in small_poly(3), g in small_poly(3), h in small_poly(3)) {
        let lhs = resultant(&(&f * &g), &h).unwrap();
        let rhs = resultant(&f, &h).unwrap() * resultant(&g, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_of_a_product(f in small_poly(3), g in small_poly(3)) {
        let r = resultant(&f, &g).unwrap();
        let lhs = discriminant(&(&f * &g)).unwrap();
        let rhs = discriminant_or_unit(&f) * discriminant_or_unit(&g) * r.clone() * r;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integer_gcd_agrees_with_field_gcd(f in small_poly(3), g in small_poly(3), h in small_poly(2)) {
        let (a, b) = (&f * &h, &g * &h);
        let field = a.gcd(&b).unwrap();
        let int = intpoly::to_rat(&intpoly::gcd(&intpoly::from_rat(&a), &intpoly::from_rat(&b))).monic();
        prop_assert_eq!(field, int);
    }

    #[test]
    fn yun_reassembles(f in small_poly(2), g in small_poly(2)) {
        let target = (&(&f * &f) * &g).monic();
        let dec = intpoly::squarefree_decomposition(&intpoly::from_rat(&target));
        let back = dec
            .iter()
            .fold(RatPoly::constant(rat(1, 1)), |acc, (s, k)| acc * intpoly::to_rat(s).monic().pow(*k));
        prop_assert_eq!(back, target);
    }

    #[test]
    fn palindromes_round_trip(half in prop::collection::vec(small_poly(2), 1..=3), mid in small_poly(2)) {
        let m = half.len();
        let mut coeffs: Vec<RatPoly> = half.iter().rev().cloned().collect();
        coeffs.push(mid);
        coeffs.extend(half.iter().cloned());
        let l = LaurentSym::from_coeffs(coeffs);
        prop_assert_eq!(l.half_width(), m);
        let nu = palindrome_to_nu(&l).unwrap();
        prop_assert_eq!(nu_to_laurent(&nu), l);
    }

    #[test]
    fn roots_are_recovered(roots in prop::collection::vec((-30i32..=30, -30i32..=30), 1..=8)) {
        let roots: Vec<Complex64> = roots.iter().map(|&(a, b)| Complex64::new(a as f64 / 7.0, b as f64 / 11.0)).collect();
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for r in &roots {
            coeffs.push(Complex64::new(0.0, 0.0));
            for i in (1..coeffs.len()).rev() {
                coeffs[i] = coeffs[i - 1] - r * coeffs[i];
            }
            coeffs[0] *= -r;
        }
        let got = roots_all(&coeffs, RootOptions::default()).unwrap();
        // each true root has a computed root nearby (multiple roots resolve to eps^(1/k))
        for r in &roots {
            let d = got.iter().map(|g| (g - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d < 1e-4 * (1.0 + r.norm()), "{r} missing from {got:?}");
        }
    }

    #[test]
    fn hermitian_eigs_respect_invariants(
        entries in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 16),
        phases in prop::collection::vec(0.0f64..std::f64::consts::TAU, 4),
    ) {
        let n = 4;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                let (re, im) = entries[i * n + j];
                let v = if i == j { Complex64::new(re, 0.0) } else { Complex64::new(re, im) };
                if i <= j {
                    data[i * n + j] = v;
                    data[j * n + i] = v.conj();
                }
            }
        }
        let h = HermMatrix::new(n, data.clone()).unwrap();
        let eigs = hermitian_eigs(&h).unwrap();
        prop_assert!((eigs.iter().sum::<f64>() - h.trace()).abs() < 1e-9);
        let frob2: f64 = eigs.iter().map(|e| e * e).sum();
        prop_assert!((frob2 - h.frobenius_norm().powi(2)).abs() < 1e-8 * (1.0 + frob2));
        // diagonal unitary similarity leaves the spectrum unchanged
        let u: Vec<Complex64> = phases.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        let conj: Vec<Complex64> = (0..n * n).map(|k| u[k / n] * data[k] * u[k % n].conj()).collect();
        let eigs2 = hermitian_eigs(&HermMatrix::new(n, conj).unwrap()).unwrap();
        for (a, b) in eigs.iter().zip(&eigs2) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}

fn discriminant_or_unit(f: &RatPoly) -> num_rational::BigRational {
    if f.degree() == Some(1) {
        // degree-one discriminant convention: Dis = 1
        rat(1, 1)
    } else {
        discriminant(f).unwrap()
    }
}
