//! Executable versions of the trace identities, estimates and structural
//! invariants.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{xi_from_traces, BandStructure, CharDeterminant, SpectralError, SurfacePoly};
use crate::exactmath::{chebyshev, discriminant, Matrix, Poly};
use crate::numerics::{exact_roots, hermitian_eigs};
use crate::operator::{symplectic_defect, PeriodicOperator};
use crate::scalar::{pow2, Scalar};
use crate::{CFloat, CRational, RatPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    /// Exact rational check (residual is 0 or 1) versus a float comparison.
    pub exact: bool,
    /// Whether a failure should fail the report.
    pub required: bool,
    pub status: CheckStatus,
    pub residual: f64,
    pub detail: String,
}

impl Check {
    fn exact(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            exact: true,
            required: true,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            residual: if ok { 0.0 } else { 1.0 },
            detail: detail.into(),
        }
    }

    fn float(name: &'static str, residual: f64, tol: f64, detail: impl Into<String>) -> Self {
        Check {
            name,
            exact: false,
            required: true,
            status: if residual <= tol { CheckStatus::Pass } else { CheckStatus::Fail },
            residual,
            detail: detail.into(),
        }
    }

    fn skipped(name: &'static str, exact: bool, why: impl Into<String>) -> Self {
        Check {
            name,
            exact,
            required: false,
            status: CheckStatus::NotApplicable,
            residual: 0.0,
            detail: why.into(),
        }
    }

    fn optional(mut self) -> Self {
        self.required = false;
        self
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IdentityReport {
    pub checks: Vec<Check>,
}

impl IdentityReport {
    /// All required checks passed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed() || !c.required)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::NotApplicable => "n/a",
            };
            writeln!(f, "{status:>4}  {:<28} {:>10.3e}  {}", c.name, c.residual, c.detail)?;
        }
        Ok(())
    }
}

fn f64_of(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn gaussian(re: i64, im: i64) -> CRational {
    Complex::new(Rational::from_i64(re), Rational::from_i64(im))
}

/// `det(L(tau) - z I)` over Gaussian rationals.
pub(crate) fn floquet_charpoly(op: &PeriodicOperator<Rational>, tau: &CRational) -> Poly<CRational> {
    let l = op.floquet_matrix_generic(tau, |x| Complex::new(x.clone(), Rational::zero()));
    let n = l.rows();
    let shifted: Matrix<Poly<CRational>> = Matrix::from_fn(n, n, |i, j| {
        let mut e = vec![l.get(i, j).clone()];
        if i == j {
            e.push(gaussian(-1, 0));
        }
        Poly::new(e)
    });
    shifted.det()
}

/// Sum of `Tr(b_n^2 + 2 a_n a_n^T)`.
fn energy(op: &PeriodicOperator<Rational>) -> Rational {
    op.b_blocks()
        .iter()
        .zip(op.a_blocks())
        .map(|(b, a)| (b * b).trace() + (a * &a.transpose()).trace() * Rational::from_i64(2))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Both sides of `sum Tr(b_n^2 + 2 a_n a_n^T) >= 2pm |det A_p|^(-2/pm)`.
/// The left side is `sum lambda^2(tau)` once `p >= 3`; equality holds iff
/// `b = 0` and every `a_n a_n^T` is the same multiple of the identity.
pub fn energy_estimate(op: &PeriodicOperator<Rational>) -> (f64, f64) {
    let pm = (op.period() * op.block_size()) as f64;
    let det_ap = f64_of(&op.a_p().det());
    // AM-GM on each Tr(a a^T) gives the bound with |det(a_1...a_p)| = |det A_p|^-1
    (f64_of(&energy(op)), 2.0 * pm * (det_ap * det_ap).powf(-1.0 / pm))
}

fn sup_norm(op: &PeriodicOperator<Rational>) -> f64 {
    op.a_blocks()
        .iter()
        .chain(op.b_blocks())
        .flat_map(|mat| mat.entries().iter())
        .map(|x| f64_of(&x.abs()))
        .fold(0.0, f64::max)
}

/// Run the full battery. `bs` supplies the spectrum extremes for the norm
/// estimates; `seed` drives the sampled checks.
pub fn verify_identities(
    op: &PeriodicOperator<Rational>,
    cd: &CharDeterminant,
    sp: &SurfacePoly,
    bs: &BandStructure,
    seed: u64,
) -> Result<IdentityReport, SpectralError> {
    let (p, m) = (op.period(), op.block_size());
    let mut checks = Vec::new();
    let mm = op.modified_monodromy();

    checks.push(Check::exact(
        "symplectic",
        symplectic_defect(&mm).is_zero(),
        "M^T J M = J",
    ));
    checks.push(Check::exact("unimodular", mm.det().is_one(), "det M(z) = 1"));

    let xi = cd.xi();
    let d = cd.d();
    let palindrome = (0..=2 * m).all(|j| d.coeff(j) == d.coeff(2 * m - j));
    checks.push(Check::exact("palindrome", palindrome, "D(z,tau) = tau^2m D(z,1/tau)"));
    let degrees = (0..=2 * m).all(|j| xi[j].degree().is_none_or(|dg| dg <= p * j.min(2 * m - j)))
        && (0..=2 * m).all(|j| xi[j] == xi[2 * m - j]);
    checks.push(Check::exact("xi symmetry and degrees", degrees, "xi_j = xi_{2m-j}, deg xi_j <= pj"));

    let mut traces = vec![RatPoly::from_i64(2 * m as i64)];
    let mut pw = Matrix::identity(2 * m);
    for _ in 1..=m {
        pw = &pw * &op.monodromy();
        traces.push(pw.trace());
    }
    let newton = xi_from_traces(&traces, m);
    checks.push(Check::exact(
        "trace route",
        (1..=m).all(|j| newton[j] == xi[j]),
        "Newton recursion on Tr M^n reproduces xi_1..xi_m",
    ));

    // det(L(tau) - z) = (-1)^{pm} q(z, tau) at tau in {1, -1, i}
    let sign = if (p * m) % 2 == 1 { gaussian(-1, 0) } else { gaussian(1, 0) };
    for (label, tau) in [("1", gaussian(1, 0)), ("-1", gaussian(-1, 0)), ("i", gaussian(0, 1))] {
        let lhs = cd.q_at_gaussian(&tau).scale(&sign);
        let rhs = floquet_charpoly(op, &tau);
        checks.push(Check::exact(
            "floquet determinant",
            lhs == rhs,
            format!("(-1)^pm q(z,{label}) = det(L({label}) - z)"),
        ));
    }

    // first trace identity: coefficient of z^{pm-1}
    let tr_b = op
        .b_blocks()
        .iter()
        .fold(Rational::zero(), |acc, b| acc + b.trace());
    let q = cd.q();
    let const_in_tau = |n: usize| -> Option<Rational> {
        let row = q.z_coeff(n);
        let mid = m;
        if row.iter().enumerate().all(|(k, c)| k == mid || c.is_zero()) {
            Some(row[mid].clone())
        } else {
            None
        }
    };
    let pm = p * m;
    if p >= 2 {
        let e1 = const_in_tau(pm - 1);
        let ok = e1.as_ref().is_some_and(|v| *v == -tr_b.clone());
        checks.push(Check::exact("trace sum", ok, format!("sum lambda = sum Tr b = {tr_b}")));
    } else {
        checks.push(Check::skipped("trace sum", true, "needs p >= 2"));
    }
    if p >= 3 {
        let e1 = const_in_tau(pm - 1);
        let e2 = const_in_tau(pm - 2);
        let target = energy(op);
        let ok = match (e1, e2) {
            (Some(e1), Some(e2)) => e1.clone() * e1 - e2 * Rational::from_i64(2) == target,
            _ => false,
        };
        checks.push(Check::exact(
            "square trace sum",
            ok,
            format!("sum lambda^2 = sum Tr(b^2 + 2aa^T) = {target}"),
        ));
    } else {
        checks.push(Check::skipped("square trace sum", true, "needs p >= 3"));
    }

    let (lhs, rhs) = energy_estimate(op);
    checks.push(Check::float(
        "energy estimate",
        (rhs - lhs).max(0.0),
        1e-9 * (1.0 + rhs),
        format!("sum Tr(b^2+2aa^T) = {lhs:.12} >= 2pm |det A_p|^(-2/pm) = {rhs:.12}"),
    ));

    // norm sandwich
    let sup = sup_norm(op);
    if let Some((lo, hi)) = bs.extent() {
        let norm = lo.abs().max(hi.abs());
        let upper = (4 * m - 1) as f64 * sup;
        let slack = 1e-9 * (1.0 + upper);
        let resid = (sup - norm).max(norm - upper).max(0.0);
        checks.push(Check::float(
            "norm sandwich",
            resid,
            slack,
            format!("{sup} <= |J| = {norm:.12} <= {upper}"),
        ));
        if tr_b.is_zero() {
            let mid = (hi + lo).abs() / 2.0;
            let half = (hi - lo) / 2.0;
            let resid = (sup + mid - half).max(half - upper).max(0.0);
            checks.push(
                Check::float(
                    "norm sandwich, trace-free",
                    resid,
                    slack,
                    format!("{sup} + {mid:.12} <= {half:.12} <= {upper}"),
                )
                .optional(),
            );
        } else {
            checks.push(Check::skipped("norm sandwich, trace-free", false, "sum Tr b != 0"));
        }
    }

    // (1/2) Tr M^n(z) = sum T_n(Delta_j(z)) at random rational z
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mono = op.monodromy();
    for _ in 0..5 {
        let z = Rational::new(rng.random_range(-24..=24).into(), rng.random_range(1..=8).into());
        let mz = mono.map(|e| e.eval(&z));
        let deltas = sp.lyapunov_at(Complex::new(f64_of(&z), 0.0))?;
        let mut pw = Matrix::identity(2 * m);
        for n in 1..=3 {
            pw = &pw * &mz;
            let lhs = f64_of(&pw.trace()) / 2.0;
            let tn = chebyshev::<f64>(n);
            let rhs: CFloat = deltas
                .iter()
                .map(|d| tn.map(|c| Complex::new(*c, 0.0)).eval(d))
                .sum();
            worst = worst.max((rhs - lhs).norm() / lhs.abs().max(1.0));
        }
    }
    checks.push(Check::float(
        "trace of powers",
        worst,
        1e-8,
        "(1/2) Tr M^n(z) = sum T_n(Delta_j(z)), n <= 3, 5 samples",
    ));

    // Floquet eigenvalues against roots of q(., e^{ix})
    let mut worst: f64 = 0.0;
    for _ in 0..32 {
        let x: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let eigs = hermitian_eigs(&op.floquet_matrix_at_angle(x)?)?;
        let mut roots = sp.z_roots_at_nu(x.cos())?;
        roots.sort_by(|a, b| a.re.total_cmp(&b.re));
        let scale = 1.0 + eigs.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        for (e, r) in eigs.iter().zip(&roots) {
            worst = worst.max((r - e).norm() / scale);
        }
        if roots.len() != eigs.len() {
            worst = f64::INFINITY;
        }
    }
    checks.push(Check::float(
        "floquet spectrum",
        worst,
        1e-7,
        "eig L(e^ix) = roots of q(., e^ix), 32 samples",
    ));

    // multiplier pairing
    let mut worst: f64 = 0.0;
    let mut even = true;
    for _ in 0..5 {
        let z = Complex::new(rng.random_range(-4.0..4.0), 0.0);
        let pairs = sp.multipliers_at(z)?;
        for pr in &pairs {
            worst = worst.max((pr.tau * pr.tau_inv - 1.0).norm());
        }
        even &= (2 * pairs.iter().filter(|pr| pr.on_unit_circle).count()) % 2 == 0;
    }
    checks.push(Check::float(
        "multiplier pairing",
        if even { worst } else { f64::INFINITY },
        1e-9,
        "tau_j * tau_j^-1 = 1",
    ));

    checks.extend(leading_asymptotics(cd, op, sp)?.checks);
    Ok(IdentityReport { checks })
}

/// Leading-order behaviour as `z -> infinity`.
pub fn leading_asymptotics(
    cd: &CharDeterminant,
    op: &PeriodicOperator<Rational>,
    sp: &SurfacePoly,
) -> Result<IdentityReport, SpectralError> {
    let (p, m) = (op.period(), op.block_size());
    let pm = p * m;
    let mut checks = Vec::new();
    let q = cd.q();
    let top = q.z_coeff(pm);
    let monic = q.z_degree() == Some(pm)
        && top.iter().enumerate().all(|(k, c)| if k == m { c.is_one() } else { c.is_zero() });
    checks.push(Check::exact("q monic in z", monic, format!("deg_z q = {pm}")));
    checks.push(Check::exact(
        "leading xi_m",
        cd.xi()[m].coeff(pm) == op.c() && cd.xi()[m].degree() == Some(pm),
        format!("xi_m = c z^pm + ..., c = {}", op.c()),
    ));

    // characteristic polynomial of A_p
    let ap = op.a_p();
    let xa: Matrix<RatPoly> = Matrix::from_fn(m, m, |i, j| {
        let mut e = vec![-ap.get(i, j).clone()];
        if i == j {
            e.push(Rational::one());
        }
        Poly::new(e)
    });
    let chi = xa.det();
    let eig_ap = exact_roots(&chi)?;

    // Delta_j(z) / z^p -> eig(A_p) / 2
    let z: f64 = 1e3;
    let scaled: Vec<CFloat> = sp
        .lyapunov_at(Complex::new(z, 0.0))?
        .into_iter()
        .map(|d| d / z.powi(p as i32))
        .collect();
    let mut used = vec![false; m];
    let mut worst: f64 = 0.0;
    for e in &eig_ap {
        let target = e / 2.0;
        let k = (0..m)
            .filter(|&k| !used[k])
            .min_by(|&a, &b| (scaled[a] - target).norm().total_cmp(&(scaled[b] - target).norm()))
            .expect("m branches");
        used[k] = true;
        worst = worst.max((scaled[k] - target).norm() / target.norm().max(1e-12));
    }
    checks.push(Check::float(
        "branch asymptotics",
        worst,
        0.1,
        "Delta_j(z)/z^p ~ eig(A_p)/2 at z = 1e3",
    ));

    // rho ~ 2^{-m(m-1)} Dis(chi) z^{pm(m-1)}
    if m >= 2 && !sp.is_degenerate() {
        let dis = discriminant(&chi).map_err(|e| SpectralError::Consistency(e.to_string()))?;
        if dis.is_zero() {
            checks.push(Check::skipped("resonance leading term", true, "A_p has a repeated eigenvalue"));
        } else {
            let rho = sp.resonance_poly().rho;
            let deg = pm * (m - 1);
            let want = dis * pow2(-((m * (m - 1)) as i32));
            let ok = rho.degree() == Some(deg) && rho.coeff(deg) == want;
            checks.push(Check::exact(
                "resonance leading term",
                ok,
                format!("rho = {} z^{deg} + ...", want),
            ));
            let ratio = f64_of(&rho.eval(&Rational::from_i64(1000))) / 1e3f64.powi(deg as i32);
            let w = f64_of(&want);
            checks.push(Check::float(
                "resonance asymptotics",
                (ratio - w).abs() / w.abs(),
                0.1,
                "rho(z)/z^{pm(m-1)} at z = 1e3",
            ));
        }
    } else {
        checks.push(Check::skipped("resonance leading term", true, "m = 1 or degenerate"));
    }
    Ok(IdentityReport { checks })
}
