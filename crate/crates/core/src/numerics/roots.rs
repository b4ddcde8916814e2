//! Aberth–Ehrlich simultaneous root finding.

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::{Float, ToPrimitive};

use super::NumericsError;
use crate::exactmath::{count_real_roots, intpoly};
use crate::{CFloat, RatPoly};

/// Stopping rule for [`roots_all`]: a root `r` is accepted once
/// `|f(r)| <= rel_tol * sum |c_k| |r|^k`.
#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            rel_tol: 1e-12,
            max_iter: 500,
        }
    }
}

/// A group of numerically coincident roots.
#[derive(Debug, Clone, PartialEq)]
pub struct RootCluster {
    pub center: CFloat,
    pub multiplicity: usize,
}

fn eval_with_scale<F: Float>(c: &[Complex<F>], z: Complex<F>) -> (Complex<F>, Complex<F>, F) {
    let mut p = Complex::new(F::zero(), F::zero());
    let mut dp = Complex::new(F::zero(), F::zero());
    let mut scale = F::zero();
    let az = z.norm();
    for ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + *ck;
        scale = scale * az + ck.norm();
    }
    (p, dp, scale)
}

fn cmp_complex<F: Float>(a: &Complex<F>, b: &Complex<F>) -> Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

fn to_c64<F: Float>(z: Complex<F>) -> CFloat {
    Complex::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// All complex roots of `sum c_k x^k` (coefficients lowest degree first),
/// counted with multiplicity and sorted by `(re, im)`.
pub fn roots_all<F: Float>(
    coeffs: &[Complex<F>],
    opts: RootOptions,
) -> Result<Vec<Complex<F>>, NumericsError> {
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(NumericsError::NonFinite);
    }
    let zero = Complex::new(F::zero(), F::zero());
    let mut c: Vec<Complex<F>> = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == zero) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(NumericsError::DegreeTooLow);
    }
    // exact zero roots
    let zeros = c.iter().take_while(|x| **x == zero).count();
    c.drain(..zeros);
    let mut out = vec![zero; zeros];

    let n = c.len() - 1;
    if n > 0 {
        let lead = c[n];
        for x in c.iter_mut() {
            *x = *x / lead;
        }
        out.extend(aberth(&c, opts)?);
    }
    out.sort_by(cmp_complex);
    Ok(out)
}

fn aberth<F: Float>(c: &[Complex<F>], opts: RootOptions) -> Result<Vec<Complex<F>>, NumericsError> {
    let n = c.len() - 1;
    if n == 1 {
        return Ok(vec![-c[0]]);
    }
    let eps = F::epsilon();
    let mut z = initial_guesses(c);
    // Iterate to attainable accuracy (tiny residual or stagnating
    // correction); the caller's tolerance is the acceptance test at the end.
    let strict = eps * F::from(8 * n).unwrap();
    let mut done = vec![false; n];
    for _ in 0..opts.max_iter {
        if done.iter().all(|&d| d) {
            break;
        }
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp, scale) = eval_with_scale(c, z[i]);
            if p.norm() <= strict * scale {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex::new(F::zero(), F::zero());
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    sum = sum + (z[i] - *zj).inv();
                }
            }
            let w = ratio / (Complex::new(F::one(), F::zero()) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                // perturb off a degenerate configuration
                z[i] = z[i] * Complex::from_polar(F::one() + eps.sqrt(), F::from(0.1).unwrap());
                continue;
            }
            z[i] = z[i] - w;
            if w.norm() <= eps * z[i].norm() {
                done[i] = true;
            }
        }
    }
    let residuals: Vec<f64> = z
        .iter()
        .map(|zi| {
            let (p, _, scale) = eval_with_scale(c, *zi);
            (p.norm() / scale.max(F::min_positive_value())).to_f64().unwrap_or(f64::NAN)
        })
        .collect();
    if residuals.iter().all(|&r| r <= opts.rel_tol) {
        return Ok(z);
    }
    Err(NumericsError::NoConvergence {
        iterations: opts.max_iter,
        worst: residuals.iter().cloned().fold(0.0, f64::max),
        best: z.into_iter().map(to_c64).collect(),
        residuals,
    })
}

/// Starting points from the Newton polygon of `log |c_k|`: each edge of
/// the upper convex hull from `k_i` to `k_j` contributes `k_j - k_i` points
/// on a circle of radius `(|c_{k_i}| / |c_{k_j}|)^{1/(k_j - k_i)}`, which
/// tracks root moduli even when they span many orders of magnitude.
fn initial_guesses<F: Float>(c: &[Complex<F>]) -> Vec<Complex<F>> {
    let n = c.len() - 1;
    let logs: Vec<f64> = c
        .iter()
        .map(|x| {
            let v = x.norm().to_f64().unwrap_or(0.0);
            if v > 0.0 { v.ln() } else { f64::NEG_INFINITY }
        })
        .collect();
    // upper hull over finite points (c_0 and c_n are nonzero here)
    let mut hull: Vec<usize> = Vec::new();
    for k in (0..=n).filter(|&k| logs[k].is_finite()) {
        while hull.len() >= 2 {
            let (i, j) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop j if it lies on or below the segment i..k
            let cross = (logs[j] - logs[i]) * (k - i) as f64 - (logs[k] - logs[i]) * (j - i) as f64;
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut out = Vec::with_capacity(n);
    let two_pi = std::f64::consts::TAU;
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        let count = j - i;
        let radius = ((logs[i] - logs[j]) / count as f64).exp();
        // the 0.4 offset avoids symmetric stalls on the real axis; the
        // per-circle shift keeps circles from lining up
        let shift = 0.4 + 0.7 * out.len() as f64 / n as f64;
        for k in 0..count {
            let angle = two_pi * k as f64 / count as f64 + shift;
            out.push(Complex::from_polar(F::from(radius).unwrap(), F::from(angle).unwrap()));
        }
    }
    out
}

/// Group roots lying within `1e-6 (1 + |r|)` of a cluster seed. Input order
/// is kept for seeds; centres are cluster means.
pub fn cluster_roots(roots: &[CFloat]) -> Vec<RootCluster> {
    let mut groups: Vec<Vec<CFloat>> = Vec::new();
    for r in roots {
        match groups
            .iter_mut()
            .find(|g| (g[0] - r).norm() <= 1e-6 * (1.0 + g[0].norm()))
        {
            Some(g) => g.push(*r),
            None => groups.push(vec![*r]),
        }
    }
    groups
        .into_iter()
        .map(|g| RootCluster {
            center: g.iter().sum::<CFloat>() / g.len() as f64,
            multiplicity: g.len(),
        })
        .collect()
}

fn rat_to_c64(f: &RatPoly) -> Vec<CFloat> {
    f.coeffs()
        .iter()
        .map(|c| Complex::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect()
}

/// Distinct roots of an exact polynomial with exact multiplicities, sorted
/// by `(re, im)`. Each square-free factor is solved separately and its real
/// roots are forced onto the axis using an exact Sturm count.
pub fn exact_roots_clustered(f: &RatPoly) -> Result<Vec<(CFloat, usize)>, NumericsError> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(NumericsError::DegreeTooLow);
    }
    let mut out = Vec::new();
    for (zfactor, mult) in intpoly::squarefree_decomposition(&intpoly::from_rat(f)) {
        let factor = intpoly::to_rat(&zfactor).monic();
        let mut roots = roots_all(&rat_to_c64(&factor), RootOptions::default())?;
        let n_real = count_real_roots(&factor);
        roots.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap_or(Ordering::Equal));
        for r in roots.iter_mut().take(n_real) {
            r.im = 0.0;
        }
        // conjugate symmetry for the rest
        let mut rest: Vec<CFloat> = roots[n_real..].to_vec();
        rest.sort_by(|a, b| cmp_complex(&Complex::new(a.re, a.im.abs()), &Complex::new(b.re, b.im.abs())));
        for pair in rest.chunks_mut(2) {
            if let [a, b] = pair {
                let re = 0.5 * (a.re + b.re);
                let im = 0.5 * (a.im.abs() + b.im.abs());
                *a = Complex::new(re, -im);
                *b = Complex::new(re, im);
            }
        }
        for r in roots[..n_real].iter().chain(rest.iter()) {
            out.push((*r, mult));
        }
    }
    out.sort_by(|a, b| cmp_complex(&a.0, &b.0));
    Ok(out)
}

/// Roots of an exact polynomial repeated by multiplicity, sorted by
/// `(re, im)`.
pub fn exact_roots(f: &RatPoly) -> Result<Vec<CFloat>, NumericsError> {
    Ok(exact_roots_clustered(f)?
        .into_iter()
        .flat_map(|(r, k)| std::iter::repeat_n(r, k))
        .collect())
}

/// Real roots of an exact polynomial (with multiplicity), ascending.
pub fn exact_real_roots(f: &RatPoly) -> Result<Vec<f64>, NumericsError> {
    Ok(exact_roots(f)?
        .into_iter()
        .filter(|r| r.im == 0.0)
        .map(|r| r.re)
        .collect())
}
