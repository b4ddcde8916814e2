use crate::exactmath::Poly;
use crate::scalar::Scalar;

/// Chebyshev polynomial of the first kind, `T_n(cos t) = cos(n t)`, built
/// from `T_0 = 1`, `T_1 = x`, `T_{n+1} = 2x T_n - T_{n-1}`.
pub fn chebyshev<T: Scalar>(n: usize) -> Poly<T> {
    let mut prev = Poly::<T>::constant(T::one());
    if n == 0 {
        return prev;
    }
    let two_x = Poly::monomial(T::from_i64(2), 1);
    let mut cur = Poly::<T>::x();
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// All of `T_0 ..= T_n`.
pub fn chebyshev_table<T: Scalar>(n: usize) -> Vec<Poly<T>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly::constant(T::one()));
    if n == 0 {
        return out;
    }
    out.push(Poly::x());
    let two_x = Poly::monomial(T::from_i64(2), 1);
    for k in 1..n {
        let next = &(&two_x * &out[k]) - &out[k - 1];
        out.push(next);
    }
    out
}
