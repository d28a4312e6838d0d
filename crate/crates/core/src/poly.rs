//! Dense univariate polynomials, lowest degree first.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclotomic::CyclotomicInt;

pub fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Product of polynomials with coefficients in a common `Z[ζ_n]`.
pub fn mul_cyclotomic(a: &[CyclotomicInt], b: &[CyclotomicInt]) -> Vec<CyclotomicInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].order();
    let mut out = vec![CyclotomicInt::zero(n); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `1 + c T^d`.
pub fn binomial_factor(c: &CyclotomicInt, d: usize) -> Vec<CyclotomicInt> {
    let n = c.order();
    let mut f = vec![CyclotomicInt::zero(n); d + 1];
    f[0] = CyclotomicInt::one(n);
    f[d] = &f[d] + c;
    f
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn make_monic(mut f: Vec<BigRational>) -> Vec<BigRational> {
    trim(&mut f);
    let lead = f.last().cloned().unwrap_or_else(BigRational::one);
    if !lead.is_zero() {
        for c in f.iter_mut() {
            *c /= &lead;
        }
    }
    f
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - db;
        let factor = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        r.pop();
        if r.is_empty() {
            r.push(BigRational::zero());
        }
        trim(&mut r);
    }
    r
}

fn div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![BigRational::zero(); a.len() - db];
    for shift in (0..quot.len()).rev() {
        let factor = &r[shift + db] / &b[db];
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        quot[shift] = factor;
    }
    quot
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = make_monic(a.to_vec());
    let mut y = make_monic(b.to_vec());
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = rem(&x, &y);
        x = y;
        y = make_monic(r);
    }
    x
}

/// `f / gcd(f, f')` over Q, made monic: the same roots, each simple.
pub fn square_free_part(f: &[BigInt]) -> Vec<BigRational> {
    let f: Vec<BigRational> = f.iter().cloned().map(BigRational::from_integer).collect();
    let f = make_monic(f);
    if f.len() <= 2 {
        return f;
    }
    let df: Vec<BigRational> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    let g = gcd(&f, &df);
    make_monic(div_exact(&f, &g))
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots by Aberth–Ehrlich iteration followed by Newton polishing.
/// The leading coefficient must be nonzero.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    let lead = coeffs[d];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Fujiwara-style radius keeps every start inside a disc containing the roots.
    let radius = (0..d)
        .map(|k| monic[k].norm().powf(1.0 / (d - k) as f64))
        .fold(0.0f64, f64::max)
        .clamp(1e-3, 1e6);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut largest = 0.0f64;
        for k in 0..d {
            let (p, dp) = horner(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let delta = w / (Complex64::new(1.0, 0.0) - w * s);
            if delta.is_finite() {
                z[k] -= delta;
                largest = largest.max(delta.norm() / z[k].norm().max(1.0));
            }
        }
        if largest < 1e-15 {
            break;
        }
    }
    for root in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *root);
            let step = p / dp;
            if step.is_finite() {
                *root -= step;
            }
        }
    }
    z
}

/// Roots of `Σ c_k T^k` after the substitution `T = u / √q`, so that inverse
/// roots of modulus `√q` become roots on the unit circle.
pub fn normalized_roots(f: &[BigRational], q: u64) -> Vec<Complex64> {
    let s = (q as f64).sqrt();
    let coeffs: Vec<Complex64> = f
        .iter()
        .enumerate()
        .map(|(k, c)| Complex64::new(c.to_f64().unwrap_or(f64::NAN) / s.powi(k as i32), 0.0))
        .collect();
    complex_roots(&coeffs)
}
