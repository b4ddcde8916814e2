//! gcd and square-free decomposition over `D[x]` for a gcd domain `D`,
//! using primitive polynomial remainder sequences. The instance that
//! matters is `D = Q[z]`, i.e. polynomials in `nu` whose coefficients are
//! polynomials in `z`.

use num_traits::{One, Zero};

use crate::exactmath::Poly;
use crate::scalar::{Field, Scalar};

/// An integral domain with gcds and a notion of unit normalisation.
pub trait GcdDomain: Scalar {
    /// A normalised gcd. `gcd(0, 0) = 0`.
    fn gcd_domain(a: &Self, b: &Self) -> Self;

    /// The unit `u` such that `self / u` is normalised (`one` for zero).
    fn unit_part(&self) -> Self;
}

impl<T: Field> GcdDomain for Poly<T> {
    fn gcd_domain(a: &Self, b: &Self) -> Self {
        a.gcd(b).unwrap_or_else(Poly::zero)
    }

    fn unit_part(&self) -> Self {
        match self.leading() {
            Some(lc) => Poly::constant(lc.clone()),
            None => Poly::one(),
        }
    }
}

/// gcd of the coefficients.
pub fn content<R: GcdDomain>(f: &Poly<R>) -> R {
    f.coeffs()
        .iter()
        .fold(R::zero(), |acc, c| R::gcd_domain(&acc, c))
}

/// `f / content(f)`, normalised so the leading coefficient is normal.
pub fn primitive_part<R: GcdDomain>(f: &Poly<R>) -> Poly<R> {
    if f.is_zero() {
        return f.clone();
    }
    let c = content(f);
    let pp = Poly::new(
        f.coeffs()
            .iter()
            .map(|x| x.div_exact(&c).expect("content divides every coefficient"))
            .collect(),
    );
    normalize(&pp)
}

/// Divide by the unit part of the leading coefficient.
pub fn normalize<R: GcdDomain>(f: &Poly<R>) -> Poly<R> {
    match f.leading() {
        Some(lc) => {
            let u = lc.unit_part();
            Poly::new(
                f.coeffs()
                    .iter()
                    .map(|x| x.div_exact(&u).expect("units divide everything"))
                    .collect(),
            )
        }
        None => f.clone(),
    }
}

/// Normalised gcd in `D[x]` via the primitive remainder sequence.
pub fn prim_gcd<R: GcdDomain>(a: &Poly<R>, b: &Poly<R>) -> Poly<R> {
    if a.is_zero() {
        return primitive_part(b);
    }
    if b.is_zero() {
        return primitive_part(a);
    }
    let cont = R::gcd_domain(&content(a), &content(b));
    let (mut x, mut y) = if a.degree() >= b.degree() {
        (primitive_part(a), primitive_part(b))
    } else {
        (primitive_part(b), primitive_part(a))
    };
    while !y.is_zero() {
        let r = x.pseudo_rem(&y);
        x = y;
        y = primitive_part(&r);
    }
    normalize(&x.scale(&cont))
}

fn exact_quotient<R: GcdDomain>(a: &Poly<R>, b: &Poly<R>) -> Poly<R> {
    a.div_exact_poly(b).expect("gcd divides its arguments exactly")
}

/// Yun's decomposition over `D[x]` of the primitive part of `f`:
/// normalised square-free, pairwise coprime `s_i` with
/// `pp(f) = prod s_i^i` (up to a unit). Factors with `deg = 0` are dropped.
pub fn squarefree_decomposition_domain<R: GcdDomain>(f: &Poly<R>) -> Vec<(Poly<R>, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = primitive_part(f);
    let fp = f.derivative();
    let a0 = prim_gcd(&f, &fp);
    let mut b = exact_quotient(&f, &a0);
    let mut c = exact_quotient(&fp, &a0);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = prim_gcd(&b, &d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = exact_quotient(&b, &a);
        c = exact_quotient(&d, &a);
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Product of the square-free factors (each once).
pub fn squarefree_part_domain<R: GcdDomain>(f: &Poly<R>) -> Poly<R> {
    squarefree_decomposition_domain(f)
        .into_iter()
        .fold(Poly::one(), |acc, (s, _)| acc * s)
}
