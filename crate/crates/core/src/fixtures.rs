//! Ready-made operators: the two-period `2 x 2` family and its named
//! members, free operators, block-diagonal operators and random ones.

use rand::Rng;

use crate::exactmath::Matrix;
use crate::operator::PeriodicOperator;
use crate::scalar::{rat, Scalar};
use crate::{RatMatrix, Rational};

/// The `p = 2`, `m = 2` family
///
/// ```text
/// a_n = [[1, beta_{2n-1}], [0, 1]],  b_n = [[alpha_{2n}, beta_{2n}], [beta_{2n}, alpha_{2n+1}]]
/// ```
///
/// with indices of `alpha`, `beta` taken mod 4: `a_1` carries `beta_1`,
/// `a_2` carries `beta_3`, `b_1` carries `alpha_2, alpha_3, beta_2` and
/// `b_2 = b_0` carries `alpha_0, alpha_1, beta_0`. This is the labelling
/// under which the closed forms for the coefficients of `T_1` hold.
pub fn family(alpha: [Rational; 4], beta: [Rational; 4]) -> PeriodicOperator<Rational> {
    let z = Rational::from_i64(0);
    let one = Rational::from_i64(1);
    let a = |k: usize| {
        Matrix::from_rows(vec![vec![one.clone(), beta[k].clone()], vec![z.clone(), one.clone()]])
    };
    let b = |k: usize| {
        Matrix::from_rows(vec![
            vec![alpha[k].clone(), beta[k].clone()],
            vec![beta[k].clone(), alpha[k + 1].clone()],
        ])
    };
    PeriodicOperator::new(vec![a(1), a(3)], vec![b(2), b(0)]).expect("family members are valid")
}

fn ints(v: [i64; 4]) -> [Rational; 4] {
    v.map(Rational::from_i64)
}

/// Diagonal member: all `beta = 0`.
pub fn example1_diag(alpha: [Rational; 4]) -> PeriodicOperator<Rational> {
    family(alpha, ints([0; 4]))
}

/// Constant member: `alpha = 0`, `beta_n = beta`.
pub fn example2_const(beta: Rational) -> PeriodicOperator<Rational> {
    family(ints([0; 4]), [beta.clone(), beta.clone(), beta.clone(), beta])
}

/// `alpha = (1, 0, -1, 0)`, `beta = (t, 0, 0, 0)`.
pub fn example3(t: Rational) -> PeriodicOperator<Rational> {
    family(ints([1, 0, -1, 0]), [t, rat(0, 1), rat(0, 1), rat(0, 1)])
}

/// `alpha = (0, 1, 0, 1)`, `beta = (t, 0, 0, 0)`.
pub fn example4(t: Rational) -> PeriodicOperator<Rational> {
    family(ints([0, 1, 0, 1]), [t, rat(0, 1), rat(0, 1), rat(0, 1)])
}

/// `a_n = I`, `b_n = 0`.
pub fn free(p: usize, m: usize) -> PeriodicOperator<Rational> {
    PeriodicOperator::new(vec![Matrix::identity(m); p], vec![Matrix::zeros(m, m); p])
        .expect("free operator is valid")
}

/// Block-diagonal operator assembled from scalar operators of a common
/// period: `scalars[k] = (a_1..a_p, b_1..b_p)` fills diagonal slot `k`.
pub fn diagonal(scalars: &[(Vec<Rational>, Vec<Rational>)]) -> PeriodicOperator<Rational> {
    let m = scalars.len();
    let p = scalars.first().map_or(0, |s| s.0.len());
    let diag = |pick: &dyn Fn(usize) -> Rational| {
        Matrix::from_fn(m, m, |i, j| if i == j { pick(i) } else { Rational::from_i64(0) })
    };
    let a = (0..p).map(|n| diag(&|k| scalars[k].0[n].clone())).collect();
    let b = (0..p).map(|n| diag(&|k| scalars[k].1[n].clone())).collect();
    PeriodicOperator::new(a, b).expect("diagonal fixture needs nonzero a entries")
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.random_range(-4..=4), rng.random_range(1..=3))
}

/// Random operator with rational entries `k/d`, `|k| <= 4`, `d <= 3`:
/// general invertible `a_n`, symmetric `b_n`.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, p: usize, m: usize) -> PeriodicOperator<Rational> {
    let a = (0..p)
        .map(|_| loop {
            let cand: RatMatrix = Matrix::from_fn(m, m, |_, _| small_rational(rng));
            if !num_traits::Zero::is_zero(&cand.det()) {
                break cand;
            }
        })
        .collect();
    let b = (0..p).map(|_| random_symmetric(rng, m, &mut |r| small_rational(r))).collect();
    PeriodicOperator::new(a, b).expect("generated operator is valid")
}

fn random_symmetric<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    entry: &mut dyn FnMut(&mut R) -> Rational,
) -> RatMatrix {
    let mut b = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = entry(rng);
            b.set(i, j, v.clone());
            b.set(j, i, v);
        }
    }
    b
}

/// Random operator with `a_n = s (I + N)`, `N` strictly triangular with
/// integer entries in `[-2, 2]`, `s = +-1`, and symmetric `b_n` with
/// half-integer entries in `[-2, 2]`. Determinants are `+-1`, which keeps
/// the characteristic determinant's coefficients small.
pub fn random_unit_triangular_operator<R: Rng + ?Sized>(
    rng: &mut R,
    p: usize,
    m: usize,
) -> PeriodicOperator<Rational> {
    let a = (0..p)
        .map(|_| {
            let upper = rng.random_bool(0.5);
            let s = if rng.random_bool(0.5) { 1 } else { -1 };
            Matrix::from_fn(m, m, |i, j| {
                let v = if i == j {
                    1
                } else if (j > i) == upper {
                    rng.random_range(-2..=2)
                } else {
                    0
                };
                Rational::from_i64(s * v)
            })
        })
        .collect();
    let b = (0..p)
        .map(|_| random_symmetric(rng, m, &mut |r: &mut R| rat(r.random_range(-4..=4), 2)))
        .collect();
    PeriodicOperator::new(a, b).expect("generated operator is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Poly;
    use crate::spectral::CharDeterminant;
    use crate::RatPoly;

    fn zp(c: &[i64]) -> RatPoly {
        Poly::new(c.iter().map(|&v| rat(v, 1)).collect())
    }

    /// `T_1 = -xi_1`, the coefficient of `-tau^3`.
    fn t1(op: &PeriodicOperator<Rational>) -> RatPoly {
        -CharDeterminant::new(op).unwrap().xi()[1].clone()
    }

    #[test]
    fn family_trace_formula() {
        // T_1 = 2z^2 + T_11 z + T_10 with the closed forms for T_11, T_10
        let alpha = ints([1, 2, -1, 3]);
        let beta = ints([2, -1, 1, 1]);
        let (a, b) = (|k: usize| alpha[k].clone(), |k: usize| beta[k].clone());
        let t11 = -(a(0) + a(1) + a(2) + a(3)) + (b(0) + b(2)) * b(3) + b(1) * (b(0) + b(2));
        let t10 = rat(-4, 1) + rat(2, 1) * b(0) * b(2) + rat(2, 1) * b(1) * b(3)
            + b(0) * b(1) * b(2) * b(3)
            + a(0) * a(2)
            + a(1) * a(3)
            - b(0) * (a(2) * b(3) + a(3) * b(1))
            - b(2) * (a(0) * b(1) + a(1) * b(3));
        let want = Poly::new(vec![t10, t11, rat(2, 1)]);
        assert_eq!(t1(&family(alpha, beta)), want);
    }

    #[test]
    fn named_members() {
        assert_eq!(t1(&example3(rat(1, 1))), zp(&[-5, 0, 2]));
        assert_eq!(t1(&example4(rat(0, 1))), zp(&[-3, -2, 2]));
        // constant coefficients: 2z^2 + 4b^2 z + b^4 + 4b^2 - 4 at b = 1
        assert_eq!(t1(&example2_const(rat(1, 1))), zp(&[1, 4, 2]));
    }

    #[test]
    fn generators_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for p in 1..=3 {
            for m in 1..=3 {
                let op = random_operator(&mut rng, p, m);
                assert_eq!((op.period(), op.block_size()), (p, m));
                let op = random_unit_triangular_operator(&mut rng, p, m);
                assert_eq!(num_traits::Signed::abs(&op.a_p().det()), rat(1, 1));
            }
        }
    }
}
