use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::inverse::InverseError;
use crate::numerics::hermitian_eigs;
use crate::operator::PeriodicOperator;
use crate::spectral::SpectralError;
use crate::Rational;

/// Minimum separation of the cosines of distinct quasi-momenta.
pub const COSINE_SEPARATION: f64 = 1e-9;

/// `Λ_0` (all `pm` eigenvalues of `L(e^{i kappa_0})`) and partial lists
/// `Λ_j` of `(m - j) p + 1` eigenvalues of `L(e^{i kappa_j})`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    pub p: usize,
    pub m: usize,
    pub kappas: Vec<f64>,
    pub lambda_sets: Vec<Vec<Complex64>>,
}

impl SpectralData {
    /// Required size of `Λ_j`.
    pub fn expected_len(&self, j: usize) -> usize {
        if j == 0 {
            self.p * self.m
        } else {
            (self.m - j) * self.p + 1
        }
    }

    pub fn validate(&self) -> Result<(), InverseError> {
        let need = self.m + 1;
        if self.kappas.len() != need || self.lambda_sets.len() != need {
            return Err(InverseError::KappaCount {
                expected: need,
                got: self.kappas.len().min(self.lambda_sets.len()),
            });
        }
        for (j, set) in self.lambda_sets.iter().enumerate() {
            let expected = self.expected_len(j);
            if set.len() != expected {
                return Err(InverseError::Cardinality { set: j, expected, got: set.len() });
            }
            if set.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
                return Err(InverseError::NonFinite);
            }
        }
        if self.kappas.iter().any(|k| !k.is_finite()) {
            return Err(InverseError::NonFinite);
        }
        for i in 0..need {
            for j in i + 1..need {
                if (self.kappas[i].cos() - self.kappas[j].cos()).abs() < COSINE_SEPARATION {
                    return Err(InverseError::DuplicateCosine { i, j });
                }
            }
        }
        Ok(())
    }
}

/// `0, pi, pi/2, pi/3, pi/4, ...` truncated to `m + 1` entries.
pub fn default_kappas(m: usize) -> Vec<f64> {
    (0..=m)
        .map(|j| match j {
            0 => 0.0,
            1 => PI,
            _ => PI / j as f64,
        })
        .collect()
}

/// Which eigenvalues go into the partial sets `Λ_j`, `j >= 1`. Selected
/// values are always reported in ascending `(re, im)` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetRule {
    Ascending,
    Descending,
    Random(u64),
}

fn sort_complex(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

fn choose(mut all: Vec<Complex64>, count: usize, rule: SubsetRule, j: usize) -> Vec<Complex64> {
    sort_complex(&mut all);
    let mut out: Vec<Complex64> = match rule {
        SubsetRule::Ascending => all.into_iter().take(count).collect(),
        SubsetRule::Descending => all.into_iter().rev().take(count).collect(),
        SubsetRule::Random(seed) => {
            let mut rng = StdRng::seed_from_u64(seed.wrapping_add(j as u64));
            rand::seq::index::sample(&mut rng, all.len(), count)
                .into_iter()
                .map(|i| all[i])
                .collect()
        }
    };
    sort_complex(&mut out);
    out
}

/// Spectral data of `op` at the given quasi-momenta (`m + 1` of them),
/// read off the Floquet matrices.
pub fn forward_spectral_data(
    op: &PeriodicOperator<Rational>,
    kappas: &[f64],
    rule: SubsetRule,
) -> Result<SpectralData, InverseError> {
    let (p, m) = (op.period(), op.block_size());
    if kappas.len() != m + 1 {
        return Err(InverseError::KappaCount { expected: m + 1, got: kappas.len() });
    }
    let mut sd = SpectralData { p, m, kappas: kappas.to_vec(), lambda_sets: Vec::with_capacity(m + 1) };
    for (j, &k) in kappas.iter().enumerate() {
        let l = op.floquet_matrix_at_angle(k).map_err(SpectralError::from)?;
        let eigs = hermitian_eigs(&l).map_err(SpectralError::from)?;
        let all: Vec<Complex64> = eigs.into_iter().map(|e| Complex64::new(e, 0.0)).collect();
        let count = sd.expected_len(j);
        sd.lambda_sets.push(choose(all, count, rule, j));
    }
    sd.validate()?;
    Ok(sd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::free;

    fn reals(v: &[Complex64]) -> Vec<f64> {
        v.iter().map(|c| c.re).collect()
    }

    fn approx(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn free_scalar_period_two() {
        let sd = forward_spectral_data(&free(2, 1), &[0.0, PI], SubsetRule::Ascending).unwrap();
        assert!(approx(&reals(&sd.lambda_sets[0]), &[-2.0, 2.0]));
        assert!(approx(&reals(&sd.lambda_sets[1]), &[0.0]));
    }

    #[test]
    fn free_block_period_two() {
        let sd = forward_spectral_data(&free(2, 2), &default_kappas(2), SubsetRule::Ascending).unwrap();
        assert!(approx(&reals(&sd.lambda_sets[0]), &[-2.0, -2.0, 2.0, 2.0]));
        assert!(approx(&reals(&sd.lambda_sets[1]), &[0.0, 0.0, 0.0]));
        // q(z, i) = (z^2 - 2)^2
        assert_eq!(sd.lambda_sets[2].len(), 1);
        assert!((sd.lambda_sets[2][0].re.abs() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rules_pick_different_subsets() {
        let op = free(3, 2);
        let ks = default_kappas(2);
        let asc = forward_spectral_data(&op, &ks, SubsetRule::Ascending).unwrap();
        let desc = forward_spectral_data(&op, &ks, SubsetRule::Descending).unwrap();
        assert_eq!(asc.lambda_sets[1].len(), 4);
        assert!(asc.lambda_sets[1][0].re < desc.lambda_sets[1][0].re);
        let r1 = forward_spectral_data(&op, &ks, SubsetRule::Random(3)).unwrap();
        let r2 = forward_spectral_data(&op, &ks, SubsetRule::Random(3)).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn validation() {
        let mut sd = forward_spectral_data(&free(2, 2), &default_kappas(2), SubsetRule::Ascending).unwrap();
        sd.lambda_sets[1].pop();
        assert!(matches!(sd.validate(), Err(InverseError::Cardinality { set: 1, expected: 3, got: 2 })));
        let sd = SpectralData { p: 1, m: 1, kappas: vec![0.5, -0.5], lambda_sets: vec![vec![Complex64::new(0.0, 0.0)]; 2] };
        assert!(matches!(sd.validate(), Err(InverseError::DuplicateCosine { i: 0, j: 1 })));
    }
}
