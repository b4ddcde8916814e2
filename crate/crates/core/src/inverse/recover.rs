use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use num_traits::Zero;

use crate::exactmath::{snap_rational, Poly};
use crate::inverse::constrained::{constrained_poly, poly_from_roots};
use crate::inverse::{CosineMatrix, InverseError, SpectralData};
use crate::numerics::{roots_all, RootOptions};
use crate::spectral::CharDeterminant;
use crate::RatPoly;

/// Largest tolerated `|Im zeta| / max(1, |zeta|)` in the recovered coefficients.
pub const REALNESS_TOL: f64 = 1e-6;
/// Largest tolerated `|Im z| / (1 + |z|)` over roots of the recovered
/// `q(., e^{ix})`, which must all be real for a genuine operator. Loose
/// because multiple roots are only resolved to `eps^{1/m}`.
pub const HYPERBOLICITY_TOL: f64 = 1e-3;
/// Largest tolerated scaled residual `|q(lambda)| / sum |q_n| max(1, |lambda|)^n`.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-7;
const HYPERBOLICITY_GRID: usize = 31;

/// `K_s`: the powers `z^n` whose coefficient `eta_n` involves `h_0..h_s` only.
pub fn k_set(p: usize, m: usize, s: usize) -> RangeInclusive<usize> {
    if s < m {
        p * (m - s - 1) + 1..=p * (m - s)
    } else {
        0..=0
    }
}

/// The `s` with `n in K_s`.
pub fn level(p: usize, m: usize, n: usize) -> usize {
    if n == 0 {
        m
    } else {
        m - n.div_ceil(p)
    }
}

/// `zeta[n][j] = zeta_{m-j,n}`, the coefficient of `z^n h_j` in `q`, for
/// `j <= level(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaTable {
    pub p: usize,
    pub m: usize,
    pub zeta: Vec<Vec<f64>>,
}

impl EtaTable {
    /// `eta_n(tau)`.
    pub fn eta_at(&self, n: usize, tau: Complex64) -> Complex64 {
        let inv = tau.inv();
        let mut out = Complex64::new(self.zeta[n][0], 0.0);
        let (mut pos, mut neg) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        for &z in &self.zeta[n][1..] {
            pos *= tau;
            neg *= inv;
            out += (pos + neg) * z;
        }
        out
    }

    /// `q(., tau)`, coefficients lowest first.
    pub fn q_at(&self, tau: Complex64) -> Vec<Complex64> {
        (0..self.zeta.len()).map(|n| self.eta_at(n, tau)).collect()
    }

    /// Coefficient of `tau^k` (`|k| <= m`) in `q` as a polynomial in `z`,
    /// i.e. `xi_{m-|k|} / c`.
    pub fn q_tau_coeff(&self, k: i64) -> Vec<f64> {
        let j = k.unsigned_abs() as usize;
        self.zeta.iter().map(|row| row.get(j).copied().unwrap_or(0.0)).collect()
    }
}

/// How well the recovered determinant explains its input.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RecoveryDiagnostics {
    /// Worst relative imaginary part among the solved coefficients.
    pub max_imag: f64,
    /// Worst scaled residual of an input value as a root of the recovered `q`.
    pub max_root_residual: f64,
    /// Worst residual of a cosine solve.
    pub max_cosine_residual: f64,
    /// Worst relative imaginary part of a root of `q(., e^{ix})`.
    pub hyperbolicity_defect: f64,
    /// Largest condition estimate among the cosine matrices.
    pub max_condition: f64,
}

/// Floating-point result of the recovery.
#[derive(Clone, Debug, PartialEq)]
pub struct Recovery {
    pub eta: EtaTable,
    pub c: f64,
    /// `xi_0..xi_2m`, coefficients in `z` lowest first.
    pub xi: Vec<Vec<f64>>,
    pub diagnostics: RecoveryDiagnostics,
}

impl Recovery {
    pub fn period(&self) -> usize {
        self.eta.p
    }

    pub fn block_size(&self) -> usize {
        self.eta.m
    }

    /// Round `c` and every `xi` coefficient to a rational with denominator
    /// at most `max_den` lying within `tol * max(1, |x|)`, and rebuild the
    /// exact determinant.
    pub fn snap(&self, max_den: u64, tol: f64) -> Result<CharDeterminant, InverseError> {
        let snap = |x: f64, what: &str| {
            snap_rational(x, max_den, tol * x.abs().max(1.0))
                .ok_or_else(|| InverseError::Snap(format!("{what} = {x} has no nearby small rational")))
        };
        let xi = self
            .xi
            .iter()
            .enumerate()
            .map(|(j, coeffs)| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, &x)| snap(x, &format!("xi_{j}[z^{n}]")))
                    .collect::<Result<Vec<_>, _>>()
                    .map(Poly::new)
            })
            .collect::<Result<Vec<RatPoly>, _>>()?;
        CharDeterminant::from_xi(self.period(), self.block_size(), xi)
            .map_err(|e| InverseError::Snap(e.to_string()))
    }
}

fn rel_imag(v: Complex64) -> f64 {
    v.im.abs() / v.re.abs().max(1.0)
}

fn scaled_residual(coeffs: &[Complex64], x: Complex64) -> f64 {
    let (mut val, mut scale) = (Complex64::zero(), 0.0);
    for c in coeffs.iter().rev() {
        val = val * x + c;
        scale = scale * x.norm().max(1.0) + c.norm();
    }
    if scale == 0.0 {
        0.0
    } else {
        val.norm() / scale
    }
}

/// Recover `q`, `D` and `c` from spectral data.
///
/// Step 0 expands `q(., e^{i kappa_0})` from `Λ_0`, which fixes the
/// constant coefficients (`n in K_0`). Step `k + 1` evaluates the
/// already known coefficients at `e^{i kappa_{k+1}}`, completes
/// `q(., e^{i kappa_{k+1}})` from `Λ_{k+1}` with [`constrained_poly`],
/// and solves the cosine systems on `kappa_0..kappa_{k+1}` for the level
/// `k + 1` coefficients.
///
/// Every input value is reproduced by construction, so inconsistent data
/// is recognised by its side effects: non-real coefficients, a vanishing
/// `1/c`, or a recovered `q(., e^{ix})` with non-real roots.
pub fn recover_determinant(sd: &SpectralData) -> Result<Recovery, InverseError> {
    sd.validate()?;
    let (p, m) = (sd.p, sd.m);
    let pm = p * m;
    let taus: Vec<Complex64> = sd.kappas.iter().map(|&k| Complex64::from_polar(1.0, k)).collect();
    let mut diag = RecoveryDiagnostics::default();
    let mut zeta: Vec<Vec<f64>> = (0..=pm).map(|n| vec![0.0; level(p, m, n) + 1]).collect();
    let mut full: Vec<Vec<Complex64>> = Vec::with_capacity(m + 1);

    let q0 = poly_from_roots(&sd.lambda_sets[0]);
    for n in k_set(p, m, 0) {
        diag.max_imag = diag.max_imag.max(rel_imag(q0[n]));
        zeta[n][0] = q0[n].re;
    }
    full.push(q0);

    for k in 0..m {
        let s = k + 1;
        let partial = EtaTable { p, m, zeta: zeta.clone() };
        let top: Vec<Complex64> = (p * (m - s) + 1..=pm).map(|n| partial.eta_at(n, taus[s])).collect();
        full.push(constrained_poly(&sd.lambda_sets[s], &top));

        let w = CosineMatrix::new(&sd.kappas[..=s])?;
        diag.max_condition = diag.max_condition.max(w.condition());
        for n in k_set(p, m, s) {
            let re: Vec<f64> = full.iter().map(|q| q[n].re).collect();
            let im: Vec<f64> = full.iter().map(|q| q[n].im).collect();
            let x = w.solve(&re);
            let y = w.solve(&im);
            diag.max_cosine_residual = diag.max_cosine_residual.max(w.residual(&x, &re));
            for j in 0..=s {
                diag.max_imag = diag.max_imag.max(rel_imag(Complex64::new(x[j], y[j])));
                // W solves for zeta_{m,n} and 2 zeta_{m-j,n} (h_j = 2 cos j kappa on the circle)
                zeta[n][j] = if j == 0 { x[0] } else { x[j] / 2.0 };
            }
        }
    }
    let eta = EtaTable { p, m, zeta };

    for (j, set) in sd.lambda_sets.iter().enumerate() {
        let q = eta.q_at(taus[j]);
        for &lambda in set {
            diag.max_root_residual = diag.max_root_residual.max(scaled_residual(&q, lambda));
        }
    }
    let opts = RootOptions { rel_tol: 1e-9, ..RootOptions::default() };
    for i in 0..HYPERBOLICITY_GRID {
        let x = PI * (i as f64 + 0.5) / HYPERBOLICITY_GRID as f64;
        let defect = match roots_all(&eta.q_at(Complex64::from_polar(1.0, x)), opts) {
            Ok(roots) => roots.iter().map(|r| r.im.abs() / (1.0 + r.re.abs())).fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        };
        diag.hyperbolicity_defect = diag.hyperbolicity_defect.max(defect);
    }

    let inv_c = eta.zeta[0][m];
    let reason = if diag.max_imag > REALNESS_TOL {
        Some(format!("recovered coefficients are not real (relative imaginary part {:e})", diag.max_imag))
    } else if inv_c.is_nan() || inv_c.abs() <= 1e-12 {
        Some("the tau^m coefficient of q vanishes, so c is undefined".to_string())
    } else if diag.max_root_residual > ROOT_RESIDUAL_TOL {
        Some(format!("input values are not roots of the recovered q (residual {:e})", diag.max_root_residual))
    } else if diag.hyperbolicity_defect > HYPERBOLICITY_TOL {
        Some(format!(
            "recovered q(., e^(ix)) has non-real roots (relative imaginary part {:e})",
            diag.hyperbolicity_defect
        ))
    } else {
        None
    };
    if let Some(reason) = reason {
        return Err(InverseError::Inconsistent { reason, diagnostics: diag });
    }

    let c = 1.0 / inv_c;
    let xi: Vec<Vec<f64>> = (0..=2 * m)
        .map(|i| {
            let k = m as i64 - i as i64;
            let mut coeffs: Vec<f64> = eta.q_tau_coeff(k).iter().map(|v| v * c).collect();
            while coeffs.last().is_some_and(|v| *v == 0.0) {
                coeffs.pop();
            }
            coeffs
        })
        .collect();
    Ok(Recovery { eta, c, xi, diagnostics: diag })
}
