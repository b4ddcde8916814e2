//! The surface polynomial `Phi(z, nu)`, Lyapunov branches, multipliers and
//! resonances.

use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};

use super::{CharDeterminant, SpectralError};
use crate::exactmath::{discriminant, palindrome_to_nu, squarefree_decomposition_domain, Poly};
use crate::numerics::{exact_roots_clustered, roots_all, RootOptions};
use crate::scalar::pow2;
use crate::{BiPoly, CFloat, RatPoly, Rational};

/// Branch values with `|im| <= REAL_TOL` count as real.
pub const REAL_TOL: f64 = 1e-9;

/// `Phi(z, nu) = D(z, tau) / (c (2 tau)^m)` rewritten in
/// `nu = (tau + 1/tau)/2`: monic of degree `m` in `nu`, with roots the
/// Lyapunov branches `Delta_j(z)`.
#[derive(Debug, Clone)]
pub struct SurfacePoly {
    phi: BiPoly,
    /// Monic square-free factors of `Phi` in `nu` with multiplicities.
    factors: Vec<(BiPoly, usize)>,
    float_factors: Vec<(Vec<Vec<f64>>, usize)>,
    raw_rho: RatPoly,
}

/// The resonance polynomial and whether `Phi` had to be deflated.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonancePoly {
    pub rho: RatPoly,
    /// `true` when the discriminant of `Phi` vanishes identically (some
    /// branch is repeated for every `z`); `rho` is then the discriminant of
    /// the square-free part.
    pub degenerate: bool,
}

/// Zeros of the resonance polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceSet {
    pub rho: RatPoly,
    pub degenerate: bool,
    /// All zeros with multiplicity, sorted by `(re, im)`.
    pub values: Vec<CFloat>,
    pub real: Vec<bool>,
    /// Distinct zeros with exact multiplicities.
    pub clusters: Vec<(CFloat, usize)>,
}

/// A multiplier pair `(tau, 1/tau)` for one branch, larger modulus first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierPair {
    pub tau: CFloat,
    pub tau_inv: CFloat,
    pub on_unit_circle: bool,
}

fn discriminant_or_one(f: &BiPoly) -> RatPoly {
    if f.degree().unwrap_or(0) <= 1 {
        RatPoly::one()
    } else {
        discriminant(f).expect("degree >= 2")
    }
}

fn to_float(p: &RatPoly) -> Vec<f64> {
    p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

fn eval_float(c: &[f64], z: CFloat) -> CFloat {
    c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &x| acc * z + x)
}

impl SurfacePoly {
    pub fn new(cd: &CharDeterminant) -> Result<Self, SpectralError> {
        let m = cd.block_size();
        let raw = palindrome_to_nu(cd.q()).map_err(|e| SpectralError::Consistency(e.to_string()))?;
        let scale = cd.c().clone() * pow2(-(m as i32));
        let phi = Poly::new(raw.coeffs().iter().map(|c| c.scale(&scale)).collect());
        if !phi.leading().is_some_and(|l| l.is_one()) || phi.degree() != Some(m) {
            return Err(SpectralError::Consistency("surface polynomial is not monic of degree m".into()));
        }
        Ok(Self::from_phi(phi))
    }

    /// Wrap a polynomial that is monic in `nu`.
    pub fn from_phi(phi: BiPoly) -> Self {
        let raw_rho = discriminant_or_one(&phi);
        let factors = if raw_rho.is_zero() {
            squarefree_decomposition_domain(&phi)
                .into_iter()
                .map(|(f, k)| {
                    let lc = f.leading().expect("nonzero").coeff(0);
                    let inv = RatPoly::constant(Rational::one() / lc);
                    (Poly::new(f.coeffs().iter().map(|c| c * &inv).collect()), k)
                })
                .collect()
        } else {
            vec![(phi.clone(), 1)]
        };
        let float_factors = factors
            .iter()
            .map(|(f, k)| (f.coeffs().iter().map(to_float).collect(), *k))
            .collect();
        SurfacePoly {
            phi,
            factors,
            float_factors,
            raw_rho,
        }
    }

    pub fn degree(&self) -> usize {
        self.phi.degree().unwrap_or(0)
    }

    /// `Phi` as a polynomial in `nu` (outer) over `Q[z]`.
    pub fn phi(&self) -> &BiPoly {
        &self.phi
    }

    /// `phi_j`, the coefficient of `nu^(m-j)`.
    pub fn phi_coeff(&self, j: usize) -> RatPoly {
        self.phi.coeff(self.degree() - j)
    }

    pub fn factors(&self) -> &[(BiPoly, usize)] {
        &self.factors
    }

    pub fn is_degenerate(&self) -> bool {
        self.raw_rho.is_zero()
    }

    /// Square-free part of `Phi` in `nu`.
    pub fn squarefree_part(&self) -> BiPoly {
        self.factors.iter().fold(Poly::one(), |acc, (f, _)| &acc * f)
    }

    /// The `m` branch values `Delta_j(z)` sorted by `(re, im)`.
    pub fn lyapunov_at(&self, z: CFloat) -> Result<Vec<CFloat>, SpectralError> {
        let mut out = Vec::with_capacity(self.degree());
        for (coeffs, k) in &self.float_factors {
            let c: Vec<CFloat> = coeffs.iter().map(|p| eval_float(p, z)).collect();
            let roots = if c.len() == 2 {
                vec![-c[0] / c[1]]
            } else {
                roots_all(&c, RootOptions::default())?
            };
            for r in roots {
                out.extend(std::iter::repeat_n(r, *k));
            }
        }
        out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(out)
    }

    /// Roots in `z` of `Phi(z, nu0)`, i.e. of `q(z, tau)` for any `tau` with
    /// `(tau + 1/tau)/2 = nu0`, with multiplicity.
    pub fn z_roots_at_nu(&self, nu0: f64) -> Result<Vec<CFloat>, SpectralError> {
        let mut out = Vec::new();
        for (coeffs, k) in &self.float_factors {
            let deg = coeffs.iter().map(Vec::len).max().unwrap_or(0);
            let mut g = vec![0.0; deg];
            let mut pw = 1.0;
            for c in coeffs {
                for (i, x) in c.iter().enumerate() {
                    g[i] += x * pw;
                }
                pw *= nu0;
            }
            let gc: Vec<CFloat> = g.iter().map(|&x| Complex::new(x, 0.0)).collect();
            for r in roots_all(&gc, RootOptions::default())? {
                out.extend(std::iter::repeat_n(r, *k));
            }
        }
        out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(out)
    }

    /// Multiplier pairs solving `tau^2 - 2 nu tau + 1 = 0` for each branch.
    pub fn multipliers_at(&self, z: CFloat) -> Result<Vec<MultiplierPair>, SpectralError> {
        Ok(self.lyapunov_at(z)?.into_iter().map(multipliers_for).collect())
    }

    pub fn resonance_poly(&self) -> ResonancePoly {
        if self.raw_rho.is_zero() {
            ResonancePoly {
                rho: discriminant_or_one(&self.squarefree_part()),
                degenerate: true,
            }
        } else {
            ResonancePoly {
                rho: self.raw_rho.clone(),
                degenerate: false,
            }
        }
    }

    pub fn resonances(&self) -> Result<ResonanceSet, SpectralError> {
        let ResonancePoly { rho, degenerate } = self.resonance_poly();
        let clusters = if rho.degree().unwrap_or(0) == 0 {
            Vec::new()
        } else {
            exact_roots_clustered(&rho)?
        };
        let values: Vec<CFloat> = clusters
            .iter()
            .flat_map(|(r, k)| std::iter::repeat_n(*r, *k))
            .collect();
        let real = values.iter().map(|v| v.im == 0.0).collect();
        Ok(ResonanceSet {
            rho,
            degenerate,
            values,
            real,
            clusters,
        })
    }
}

/// `tau = nu +- sqrt(nu^2 - 1)`, larger modulus first.
pub fn multipliers_for(nu: CFloat) -> MultiplierPair {
    let s = (nu * nu - 1.0).sqrt();
    let (mut a, mut b) = (nu + s, nu - s);
    if a.norm() < b.norm() {
        std::mem::swap(&mut a, &mut b);
    }
    MultiplierPair {
        tau: a,
        tau_inv: b,
        on_unit_circle: (a.norm() - 1.0).abs() <= REAL_TOL,
    }
}

/// A real branch value inside `[-1, 1]`.
pub fn in_band(nu: CFloat) -> bool {
    nu.im.abs() <= REAL_TOL && nu.re.abs() <= 1.0
}
