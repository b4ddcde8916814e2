//! Exact real-root counting with Sturm sequences.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exactmath::intpoly;
use crate::RatPoly;

/// The Sturm chain `f, f', -rem(f, f'), ...`, each member scaled by a
/// positive constant to integer coefficients.
pub fn sturm_sequence(f: &RatPoly) -> Vec<RatPoly> {
    intpoly::sturm_sequence(&intpoly::from_rat(f))
        .iter()
        .map(|p| intpoly::to_rat(p))
        .collect()
}

/// The textbook chain over `Q`; kept as a reference for the integer one.
#[cfg(test)]
pub(crate) fn rational_sturm_sequence(f: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![f.clone()];
    if f.degree().unwrap_or(0) == 0 {
        return seq;
    }
    seq.push(f.derivative());
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    seq
}

fn sign_changes(values: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in values.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at_infinity(p: &RatPoly, positive: bool) -> i8 {
    match p.degree() {
        None => 0,
        Some(d) => {
            let s = sign(p.leading().unwrap());
            if positive || d % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

/// Number of distinct real roots of `f` (any nonzero `f`; multiplicities
/// are not counted).
pub fn count_real_roots(f: &RatPoly) -> usize {
    let seq = sturm_sequence(f);
    let lo = sign_changes(seq.iter().map(|p| sign_at_infinity(p, false)));
    let hi = sign_changes(seq.iter().map(|p| sign_at_infinity(p, true)));
    lo - hi
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_real_roots_in(f: &RatPoly, a: &BigRational, b: &BigRational) -> usize {
    let seq = sturm_sequence(f);
    let at = |x: &BigRational| sign_changes(seq.iter().map(|p| sign(&p.eval(x))));
    at(a).saturating_sub(at(b))
}
