//! The worked examples of the two-period `2 x 2` family, free operators
//! and block-diagonal operators.

mod common;

use blochjac::exactmath::{chebyshev, Poly};
use blochjac::fixtures::{diagonal, example2_const, example3, example4, free};
use blochjac::numerics::{exact_roots_clustered, hermitian_eigs};
use blochjac::scalar::rat;
use blochjac::spectral::{classify_gaps, GapKind};
use blochjac::{BiPoly, RatPoly, Rational};
use common::{analyze, assert_close_sets, int_poly, scalar_lyapunov, zpoly};
use num_complex::Complex64;
use std::f64::consts::PI;

fn t1(a: &common::Analysis) -> RatPoly {
    -a.cd.xi()[1].clone()
}

fn band_endpoints(bands: &[(f64, f64)]) -> Vec<f64> {
    bands.iter().flat_map(|&(lo, hi)| [lo, hi]).collect()
}

#[test]
fn example3_at_t_one() {
    let a = analyze(&example3(rat(1, 1)));
    assert_eq!(t1(&a), int_poly(&[-5, 0, 2]));
    let rho = a.sp.resonance_poly();
    assert!(!rho.degenerate);
    assert_eq!(rho.rho.scale(&rat(4, 1)), int_poly(&[1, 4, 4]));

    // both branches are polynomials: Phi(z, Delta_j(z)) = 0 identically
    let d1 = zpoly(&[(-3, 2), (-1, 2), (1, 2)]);
    let d2 = zpoly(&[(-1, 1), (1, 2), (1, 2)]);
    for d in [&d1, &d2] {
        assert!(num_traits::Zero::is_zero(&a.sp.phi().eval(d)));
    }

    let s5 = 5f64.sqrt();
    let s17 = 17f64.sqrt();
    let s21 = 21f64.sqrt();
    let mut branches: Vec<Vec<f64>> = a.bs.branch_bands.iter().map(|b| band_endpoints(b)).collect();
    branches.sort_by(|x, y| x[0].total_cmp(&y[0]));
    assert_eq!(branches.len(), 2);
    assert_close_sets(&branches[0], &[-(1.0 + s17) / 2.0, -1.0, 0.0, (s17 - 1.0) / 2.0], 1e-9);
    assert_close_sets(
        &branches[1],
        &[(1.0 - s21) / 2.0, (1.0 - s5) / 2.0, (1.0 + s5) / 2.0, (1.0 + s21) / 2.0],
        1e-9,
    );
}

#[test]
fn example3_resonances_by_t() {
    // 4 rho = 4 t^2 z^2 + 4 t^2 z + 1: complex for 0 < t < 1, real for t > 1
    for (t, real) in [((1, 2), false), ((2, 1), true)] {
        let a = analyze(&example3(rat(t.0, t.1)));
        let t2 = rat(t.0 * t.0, t.1 * t.1);
        let want = Poly::new(vec![rat(1, 1), t2.clone() * rat(4, 1), t2 * rat(4, 1)]);
        assert_eq!(a.sp.resonance_poly().rho.scale(&rat(4, 1)), want);
        let res = a.sp.resonances().unwrap();
        assert_eq!(res.values.len(), 2);
        assert!(res.real.iter().all(|&r| r == real));
    }
}

#[test]
fn example4_decoupled() {
    let a = analyze(&example4(rat(0, 1)));
    assert_eq!(t1(&a), int_poly(&[-3, -2, 2]));
    let mut bands: Vec<Vec<(f64, f64)>> = a.bs.branch_bands.clone();
    bands.sort_by(|x, y| x[0].0.total_cmp(&y[0].0));
    assert_eq!(bands.len(), 2);
    assert_close_sets(&band_endpoints(&bands[0]), &[-2.0, 2.0], 1e-9);
    assert_close_sets(&band_endpoints(&bands[1]), &[-1.0, 3.0], 1e-9);
}

#[test]
fn example4_resonance_gap() {
    let t: f64 = 0.5;
    let a = analyze(&example4(rat(1, 2)));
    // 4 rho = (2z - 1)^2 + 4 t^2 (z^2 - z)
    let want = &(&int_poly(&[-1, 2]) * &int_poly(&[-1, 2])) + &int_poly(&[0, -1, 1]);
    assert_eq!(a.sp.resonance_poly().rho.scale(&rat(4, 1)), want);
    let r = t / (2.0 * (t * t + 1.0).sqrt());
    let (lo, hi) = (0.5 - r, 0.5 + r);
    let gaps = classify_gaps(&a.bs);
    let gap = gaps
        .iter()
        .find(|g| g.kind == GapKind::Resonance)
        .expect("a resonance gap");
    assert!((gap.lo - lo).abs() < 1e-9 && (gap.hi - hi).abs() < 1e-9, "{gap:?}");
    assert_eq!(a.bs.multiplicity_at(0.5), 0);
}

#[test]
fn example2_eigenvalues() {
    let a = analyze(&example2_const(rat(1, 1)));
    // T_1 = 2z^2 + 4 beta^2 z + beta^4 + 4 beta^2 - 4
    assert_eq!(t1(&a), int_poly(&[1, 4, 2]));
    let per = exact_roots_clustered(&a.cd.q_at_sign(false)).unwrap();
    let per: Vec<(f64, usize)> = per.iter().map(|(r, k)| (r.re, *k)).collect();
    assert_eq!(per.len(), 3);
    for ((got, k), (want, kw)) in per.iter().zip([(-2.0, 2), (0.0, 1), (4.0, 1)]) {
        assert!((got - want).abs() < 1e-9 && *k == kw, "{per:?}");
    }
    let anti = exact_roots_clustered(&a.cd.q_at_sign(true)).unwrap();
    assert_eq!(anti.len(), 2);
    for ((r, k), want) in anti.iter().zip([-(2f64.sqrt()), 2f64.sqrt()]) {
        assert!((r.re - want).abs() < 1e-9 && *k == 2);
    }

    let a = analyze(&example2_const(rat(2, 1)));
    let per = exact_roots_clustered(&a.cd.q_at_sign(false)).unwrap();
    assert!(per.iter().any(|(r, k)| (r.re + 2.0).abs() < 1e-9 && *k == 3), "{per:?}");
}

#[test]
fn example2_without_coupling_is_free() {
    let a = analyze(&example2_const(rat(0, 1)));
    // both branches equal z^2/2 - 1
    let delta = zpoly(&[(-1, 1), (0, 1), (1, 2)]);
    let lin: BiPoly = Poly::new(vec![-delta.clone(), RatPoly::constant(rat(1, 1))]);
    assert_eq!(a.sp.phi(), &(&lin * &lin));
    assert!(a.sp.is_degenerate());
}

#[test]
fn free_operator_closed_form() {
    for p in 2..=4 {
        for m in 1..=2 {
            let a = analyze(&free(p, m));
            // D = (tau^2 + 1 - 2 tau T_p(z/2))^m
            let tp: RatPoly = chebyshev::<Rational>(p).rescale_var(&rat(1, 2));
            let one = RatPoly::constant(rat(1, 1));
            let base: BiPoly = Poly::new(vec![one.clone(), -tp.scale(&rat(2, 1)), one]);
            assert_eq!(a.cd.d(), &base.pow(m), "p = {p}, m = {m}");

            let op = free(p, m);
            for kappa in [0.0, PI / 3.0, PI / 2.0] {
                let eigs = hermitian_eigs(&op.floquet_matrix_at_angle(kappa).unwrap()).unwrap();
                let want: Vec<f64> = (0..p)
                    .flat_map(|n| {
                        std::iter::repeat_n(2.0 * ((kappa + 2.0 * PI * n as f64) / p as f64).cos(), m)
                    })
                    .collect();
                assert_close_sets(&eigs, &want, 1e-9);
            }
        }
    }
}

#[test]
fn block_diagonal_matches_scalar_operators() {
    let s1 = (vec![rat(1, 1), rat(2, 1)], vec![rat(0, 1), rat(1, 1)]);
    let s2 = (vec![rat(-1, 1), rat(1, 2)], vec![rat(3, 2), rat(-1, 1)]);
    let op = diagonal(&[s1.clone(), s2.clone()]);
    let a = analyze(&op);
    let l1 = scalar_lyapunov(&s1.0, &s1.1);
    let l2 = scalar_lyapunov(&s2.0, &s2.1);
    // exact: Phi = (nu - Delta_1)(nu - Delta_2)
    let lin = |d: &RatPoly| -> BiPoly { Poly::new(vec![-d.clone(), RatPoly::constant(rat(1, 1))]) };
    assert_eq!(a.sp.phi(), &(&lin(&l1) * &lin(&l2)));
    // numerically, at sample points
    for z in [-3.1, -0.4, 0.0, 0.77, 2.5] {
        let branches: Vec<f64> = a.sp.lyapunov_at(Complex64::new(z, 0.0)).unwrap().iter().map(|v| v.re).collect();
        let f = |p: &RatPoly| p.map(|c| num_traits::ToPrimitive::to_f64(c).unwrap()).eval(&z);
        assert_close_sets(&branches, &[f(&l1), f(&l2)], 1e-9);
    }
    assert!(!a.sp.is_degenerate());
    // fully free m = 2 is degenerate
    assert!(analyze(&free(3, 2)).sp.resonance_poly().degenerate);
}
