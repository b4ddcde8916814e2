//! The cosine matrix `W_{r,j} = cos(j kappa_r)` and small dense solves.

use crate::inverse::InverseError;

/// Condition estimates above this are treated as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// `W = (cos(j kappa_r))_{r, j = 0..s}` together with its inverse.
#[derive(Clone, Debug)]
pub struct CosineMatrix {
    w: Vec<Vec<f64>>,
    inv: Vec<Vec<f64>>,
    condition: f64,
}

impl CosineMatrix {
    /// Build from `kappa_0..kappa_s`. Fails with
    /// [`InverseError::KappasTooClose`] when `||W||_1 ||W^-1||_1` exceeds
    /// [`MAX_CONDITION`].
    pub fn new(kappas: &[f64]) -> Result<Self, InverseError> {
        let n = kappas.len();
        let w: Vec<Vec<f64>> = kappas
            .iter()
            .map(|&k| (0..n).map(|j| (j as f64 * k).cos()).collect())
            .collect();
        let inv = invert(&w).ok_or(InverseError::KappasTooClose { condition: f64::INFINITY })?;
        let condition = norm1(&w) * norm1(&inv);
        if condition.is_nan() || condition > MAX_CONDITION {
            return Err(InverseError::KappasTooClose { condition });
        }
        Ok(CosineMatrix { w, inv, condition })
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.w
    }

    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// `W^{-1} rhs`.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        self.inv
            .iter()
            .map(|row| row.iter().zip(rhs).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `||W x - rhs||_inf`.
    pub fn residual(&self, x: &[f64], rhs: &[f64]) -> f64 {
        self.w
            .iter()
            .zip(rhs)
            .map(|(row, r)| (row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - r).abs())
            .fold(0.0, f64::max)
    }
}

fn norm1(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    (0..n)
        .map(|j| a.iter().map(|row| row[j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Gauss-Jordan with partial pivoting; `None` on an exactly zero pivot.
fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col] == 0.0 {
            return None;
        }
        m.swap(col, piv);
        let d = m[col][col];
        m[col].iter_mut().for_each(|v| *v /= d);
        for i in 0..n {
            if i != col {
                let f = m[i][col];
                if f != 0.0 {
                    let pivot = m[col].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot) {
                        *x -= f * y;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}
