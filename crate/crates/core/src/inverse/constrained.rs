use num_complex::Complex64;

/// Coefficients (lowest degree first) of `prod (z - r)`.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        out.push(Complex64::new(0.0, 0.0));
        for i in (1..out.len()).rev() {
            out[i] = out[i - 1] - r * out[i];
        }
        out[0] = -r * out[0];
    }
    out
}

/// The unique `r = h g` with `h = prod (z - roots_i)` (degree `k`),
/// `deg g <= s`, whose coefficients at degrees `k, ..., k + s` are
/// `top[0], ..., top[s]`. Since `h` is monic the top `s + 1` coefficients
/// of `r` determine `g` by back substitution from the leading one.
///
/// Returns the `k + s + 1` coefficients of `r`, lowest degree first.
pub fn constrained_poly(roots: &[Complex64], top: &[Complex64]) -> Vec<Complex64> {
    assert!(!top.is_empty(), "at least the leading coefficient is required");
    let h = poly_from_roots(roots);
    let k = roots.len();
    let s = top.len() - 1;
    let mut g = vec![Complex64::new(0.0, 0.0); s + 1];
    for i in (0..=s).rev() {
        // coefficient of z^{k+i} in h g is sum_{l >= i} g_l h_{k+i-l}
        let known: Complex64 = (i + 1..=s)
            .filter(|&l| l - i <= k)
            .map(|l| g[l] * h[k + i - l])
            .sum();
        g[i] = top[i] - known;
    }
    let mut r = vec![Complex64::new(0.0, 0.0); k + s + 1];
    for (i, gi) in g.iter().enumerate() {
        for (j, hj) in h.iter().enumerate() {
            r[i + j] += gi * hj;
        }
    }
    r
}
