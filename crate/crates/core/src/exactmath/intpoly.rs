//! Integer-coefficient polynomial kernels used to keep exact gcds, Yun
//! decompositions and Sturm chains over `Q[x]` fast: inputs are cleared of
//! denominators and every remainder is reduced to its primitive part, which
//! stops the coefficient growth of the field Euclidean algorithm.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactmath::Poly;
use crate::RatPoly;

/// Coefficients lowest degree first, no trailing zeros.
pub type ZPoly = Vec<BigInt>;

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn degree(v: &[BigInt]) -> Option<usize> {
    v.len().checked_sub(1)
}

/// Nonnegative gcd of the coefficients.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// `v / content(v)`, signs kept.
pub fn primitive(v: ZPoly) -> ZPoly {
    let c = content(&v);
    if c.is_zero() || c.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &c).collect()
}

/// Primitive part with positive leading coefficient.
pub fn normalized(v: ZPoly) -> ZPoly {
    let v = primitive(trim(v));
    if v.last().is_some_and(Signed::is_negative) {
        v.into_iter().map(|x| -x).collect()
    } else {
        v
    }
}

/// A positive rational multiple of `f` with coprime integer coefficients.
pub fn from_rat(f: &RatPoly) -> ZPoly {
    let l = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive(f.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect())
}

pub fn to_rat(v: &[BigInt]) -> RatPoly {
    Poly::new(v.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

pub fn derivative(v: &[BigInt]) -> ZPoly {
    v.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

/// Pseudo-remainder `lc(g)^k f mod g`.
pub fn prem(f: &[BigInt], g: &[BigInt]) -> ZPoly {
    prem_counted(f, g).0
}

/// Pseudo-remainder together with `k`, the number of reduction steps
/// taken (at most `deg f - deg g + 1`).
pub fn prem_counted(f: &[BigInt], g: &[BigInt]) -> (ZPoly, usize) {
    let dg = degree(g).expect("nonzero divisor");
    let lc = &g[dg];
    let mut r: ZPoly = f.to_vec();
    let mut steps = 0;
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        steps += 1;
        let lead = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (k, gk) in g.iter().enumerate() {
            r[dr - dg + k] -= &lead * gk;
        }
        r = trim(r);
    }
    (r, steps)
}

fn sign_of_power(lc: &BigInt, times: usize) -> bool {
    // true when lc^times is negative
    lc.is_negative() && times % 2 == 1
}

/// Exact quotient `f / g` over `Z`, `None` when `g` does not divide `f`.
pub fn div_exact(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    let dg = degree(g)?;
    let mut r: ZPoly = f.to_vec();
    let Some(df) = degree(&r) else {
        return Some(Vec::new());
    };
    if df < dg {
        return None;
    }
    let mut q = vec![BigInt::zero(); df - dg + 1];
    let lc = &g[dg];
    while let Some(dr) = degree(&r) {
        if dr < dg {
            return None;
        }
        let (qt, rem) = r[dr].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (k, gk) in g.iter().enumerate() {
            r[dr - dg + k] -= &qt * gk;
        }
        q[dr - dg] = qt;
        r = trim(r);
    }
    Some(q)
}

/// Normalised gcd via the primitive remainder sequence.
pub fn gcd(f: &[BigInt], g: &[BigInt]) -> ZPoly {
    let (mut a, mut b) = (normalized(f.to_vec()), normalized(g.to_vec()));
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = normalized(prem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Yun's decomposition over `Z`: normalised square-free, pairwise coprime
/// factors with multiplicities; constants dropped.
pub fn squarefree_decomposition(f: &[BigInt]) -> Vec<(ZPoly, usize)> {
    let f = normalized(f.to_vec());
    let mut out = Vec::new();
    if degree(&f).unwrap_or(0) == 0 {
        return out;
    }
    let fp = derivative(&f);
    let a0 = gcd(&f, &fp);
    let quot = |x: &[BigInt], y: &[BigInt]| div_exact(x, y).expect("gcd divides exactly over Z");
    let mut b = quot(&f, &a0);
    let c = quot(&fp, &a0);
    let sub = |x: &[BigInt], y: &[BigInt]| {
        let n = x.len().max(y.len());
        trim((0..n)
            .map(|k| x.get(k).cloned().unwrap_or_default() - y.get(k).cloned().unwrap_or_default())
            .collect())
    };
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    while degree(&b).unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        if degree(&a).unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = quot(&b, &a);
        let c = quot(&d, &a);
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

/// Sturm chain `f, f', ...` where each member is a positive multiple of
/// the negated Euclidean remainder, so sign-change counts are unchanged.
pub fn sturm_sequence(f: &[BigInt]) -> Vec<ZPoly> {
    let f = primitive(trim(f.to_vec()));
    let mut seq = vec![f.clone()];
    if degree(&f).unwrap_or(0) == 0 {
        return seq;
    }
    seq.push(primitive(derivative(&f)));
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        let (r, k) = prem_counted(a, b);
        if r.is_empty() {
            break;
        }
        // prem = lc(b)^k rem
        let negate = !sign_of_power(&b[degree(b).unwrap()], k);
        let r = primitive(r);
        seq.push(if negate { r.into_iter().map(|x| -x).collect() } else { r });
    }
    seq
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        c.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn conversions() {
        let f = Poly::new(vec![BigRational::new(1.into(), 2.into()), BigRational::new((-2).into(), 3.into())]);
        assert_eq!(from_rat(&f), z(&[3, -4]));
        assert_eq!(to_rat(&z(&[3, -4])), f.scale(&BigRational::from_integer(6.into())));
    }

    #[test]
    fn prem_matches_definition() {
        // prem(x^2 + 1, 2x + 1) = 5
        assert_eq!(prem(&z(&[1, 0, 1]), &z(&[1, 2])), z(&[5]));
        // x^3 against 2x^2 + 1 needs a single step: 2 x^3 - x (2x^2 + 1) = -x
        assert_eq!(prem_counted(&z(&[0, 0, 0, 1]), &z(&[1, 0, 2])), (z(&[0, -1]), 1));
    }

    #[test]
    fn gcd_and_yun() {
        let a = z(&[-1, 2]); // 2x - 1
        let b = z(&[3, 0, 1]); // x^2 + 3
        let c = z(&[5, 1]); // x + 5
        let f = mul(&mul(&mul(&a, &a), &b), &mul(&c, &mul(&c, &c)));
        assert_eq!(gcd(&mul(&a, &b), &mul(&a, &c)), a);
        let dec = squarefree_decomposition(&f);
        assert_eq!(dec, vec![(b.clone(), 1), (a.clone(), 2), (c.clone(), 3)]);
        assert_eq!(div_exact(&f, &mul(&a, &b)).map(|q| mul(&q, &mul(&a, &b))), Some(f.clone()));
        assert_eq!(div_exact(&z(&[1, 0, 1]), &z(&[1, 1])), None);
    }

    #[test]
    fn sturm_signs_follow_field_chain() {
        // against the rational chain for a cubic with a negative leading term
        let f = z(&[6, -1, -4, -1]);
        let seq = sturm_sequence(&f);
        let rat_seq = crate::exactmath::sturm::rational_sturm_sequence(&to_rat(&f));
        assert_eq!(seq.len(), rat_seq.len());
        for (a, b) in seq.iter().zip(&rat_seq) {
            let (la, lb) = (a.last().unwrap(), b.leading().unwrap());
            assert_eq!(la.is_positive(), lb.is_positive());
            assert_eq!(a.len() - 1, b.degree().unwrap());
        }
    }
}
