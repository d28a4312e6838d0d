//! Exact arithmetic in `Z[ζ_n]` on the power basis, plus the maximal order of
//! `Q(√-7)` sitting inside `Z[ζ_7]`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::inv_mod;
use crate::error::{Error, Result};

/// Coefficients of `Φ_n`, little-endian, monic.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(phi) = cache.read().unwrap().get(&n) {
        return phi.clone();
    }
    let phi = Arc::new(compute_cyclotomic(n));
    cache.write().unwrap().insert(n, phi.clone());
    phi
}

fn compute_cyclotomic(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d != 0 {
            continue;
        }
        let den = compute_cyclotomic(d);
        let dd = den.len() - 1;
        let mut quot = vec![0i64; num.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = num[k + dd];
            quot[k] = c;
            for (i, &m) in den.iter().enumerate() {
                num[k + i] -= c * m;
            }
        }
        debug_assert!(num.iter().all(|&c| c == 0));
        num = quot;
    }
    num
}

/// An element of `Z[ζ_n]`, canonical on the basis `1, ζ, ..., ζ^{φ(n)-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    n: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    fn degree_of(n: u32) -> usize {
        cyclotomic_polynomial(n).len() - 1
    }

    pub fn zero(n: u32) -> Self {
        CyclotomicInt {
            n,
            coeffs: vec![BigInt::zero(); Self::degree_of(n)],
        }
    }

    pub fn from_int(n: u32, a: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = a.into();
        z
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    /// `ζ_n^e` for any integer `e`.
    pub fn zeta_pow(n: u32, e: i64) -> Self {
        let mut counts = vec![0i64; n as usize];
        counts[e.rem_euclid(n as i64) as usize] = 1;
        Self::from_exponent_counts(n, &counts)
    }

    /// `Σ_e counts[e] ζ_n^e` with `counts.len() == n`.
    pub fn from_exponent_counts(n: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), n as usize);
        Self::reduce(n, counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds from power-basis coefficients of any length, reducing by `Φ_n`.
    pub fn from_coeffs(n: u32, coeffs: Vec<BigInt>) -> Self {
        Self::reduce(n, coeffs)
    }

    fn reduce(n: u32, mut v: Vec<BigInt>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let d = phi.len() - 1;
        for k in (d..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[k]);
            for i in 0..d {
                if phi[i] != 0 {
                    v[k - d + i] -= &c * phi[i];
                }
            }
        }
        v.resize(d, BigInt::zero());
        CyclotomicInt { n, coeffs: v }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::CyclotomicOrderMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(CyclotomicInt {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(CyclotomicInt {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let d = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::reduce(self.n, prod))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `σ_k : ζ ↦ ζ^k`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.n as i64;
        if inv_mod(k, n).is_none() && n > 1 {
            return Err(Error::NotAUnit { k, n: self.n });
        }
        let mut v = vec![BigInt::zero(); self.n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i as i64 * k).rem_euclid(n) as usize;
            v[e] += c;
        }
        Ok(Self::reduce(self.n, v))
    }

    pub fn conj(&self) -> Self {
        self.galois(self.n as i64 - 1).expect("-1 is always a unit")
    }

    /// Evaluates at `ζ_n = exp(2πi j / n)`.
    pub fn embed(&self, j: i64) -> Result<Complex64> {
        let n = self.n as i64;
        if n > 1 && inv_mod(j, n).is_none() {
            return Err(Error::NotAUnit { k: j, n: self.n });
        }
        let mut z = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * PI * ((i as i64 * j).rem_euclid(n) as f64) / n as f64;
            z += Complex64::from_polar(1.0, theta) * c.to_f64().unwrap_or(f64::NAN);
        }
        Ok(z)
    }

    /// All `φ(n)` complex embeddings, in increasing order of `j`.
    pub fn embeddings(&self) -> Vec<Complex64> {
        (1..=self.n.max(1) as i64)
            .filter(|&j| self.n == 1 || inv_mod(j, self.n as i64).is_some())
            .map(|j| self.embed(j).unwrap())
            .collect()
    }

    /// Image under `Z[ζ_n] → Z[ζ_m]`, `ζ_n ↦ ζ_m^{m/n}`, for `n | m`.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.n != 0 {
            return Err(Error::Precondition(format!(
                "cannot embed Z[zeta_{}] into Z[zeta_{m}]",
                self.n
            )));
        }
        let step = (m / self.n) as usize;
        let mut v = vec![BigInt::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[(i * step) % m as usize] += c;
        }
        Ok(Self::reduce(m, v))
    }

    /// Absolute norm `Π_k σ_k(x)`, a rational integer.
    pub fn field_norm(&self) -> BigInt {
        let n = self.n as i64;
        let mut acc = Self::one(self.n);
        for k in 1..=n.max(1) {
            if n == 1 || inv_mod(k, n).is_some() {
                acc = &acc * &self.galois(k).unwrap();
            }
        }
        acc.as_integer().expect("the norm is Galois-invariant")
    }

    /// Coordinates in `Q(√-7)` of a `σ_2`-fixed element of `Z[ζ_7]`.
    ///
    /// Uses `√-7 = 2η + 1` with `η = ζ + ζ^2 + ζ^4`. On the reduced basis a
    /// fixed element is `c_0 + d·η`, i.e. `c_1 = c_2 = c_4 = d`, `c_3 = c_5 = 0`.
    pub fn to_quad7(&self) -> Result<QuadInt7> {
        if self.n != 7 {
            return Err(Error::WrongCyclotomicOrder {
                expected: 7,
                found: self.n,
            });
        }
        let c = &self.coeffs;
        let fixed = c[1] == c[2] && c[2] == c[4] && c[3].is_zero() && c[5].is_zero();
        if !fixed {
            return Err(Error::NotSigma2Fixed);
        }
        let d = c[1].clone();
        let a = BigInt::from(2) * &c[0] - &d;
        Ok(QuadInt7 { a, b: d })
    }
}

impl QuadInt7 {
    /// Inverse of [`CyclotomicInt::to_quad7`].
    pub fn to_cyclotomic(&self) -> CyclotomicInt {
        let c0: BigInt = (&self.a + &self.b) / 2;
        let d = self.b.clone();
        let mut coeffs = vec![BigInt::zero(); 6];
        coeffs[0] = c0;
        coeffs[1] = d.clone();
        coeffs[2] = d.clone();
        coeffs[4] = d;
        CyclotomicInt { n: 7, coeffs }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CyclotomicInt> for &CyclotomicInt {
            type Output = CyclotomicInt;
            fn $method(self, rhs: &CyclotomicInt) -> CyclotomicInt {
                self.$checked(rhs).expect("cyclotomic orders must match")
            }
        }
        impl $trait for CyclotomicInt {
            type Output = CyclotomicInt;
            fn $method(self, rhs: CyclotomicInt) -> CyclotomicInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        -&self
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbol = if self.n == 3 {
            "ω".to_string()
        } else {
            "ζ".to_string()
        };
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let base = match i {
                0 => String::new(),
                1 => symbol.clone(),
                _ => format!("{symbol}^{i}"),
            };
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}{base}")?;
            } else {
                write!(f, "{base}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `(a + b√-7)/2` with `a ≡ b (mod 2)`: an element of `Z[(1+√-7)/2]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt7 {
    a: BigInt,
    b: BigInt,
}

impl QuadInt7 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a.is_odd() != b.is_odd() {
            return Err(Error::Precondition(format!("({a} + {b}√-7)/2 is not integral")));
        }
        Ok(QuadInt7 { a, b })
    }

    pub fn from_int(k: impl Into<BigInt>) -> Self {
        QuadInt7 {
            a: k.into() * 2,
            b: BigInt::zero(),
        }
    }

    /// Numerator of the rational part; equals the trace `x + x̄`.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn trace(&self) -> BigInt {
        self.a.clone()
    }

    pub fn norm(&self) -> BigInt {
        (&self.a * &self.a + BigInt::from(7) * &self.b * &self.b) / 4
    }

    pub fn conj(&self) -> Self {
        QuadInt7 {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// `(u, v)` with value `u + v√-7`, when both are integers.
    pub fn as_integral_pair(&self) -> Option<(BigInt, BigInt)> {
        (self.a.is_even() && self.b.is_even()).then(|| (&self.a / 2, &self.b / 2))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.a.to_f64().unwrap_or(f64::NAN) / 2.0,
            self.b.to_f64().unwrap_or(f64::NAN) * 7f64.sqrt() / 2.0,
        )
    }
}

impl Add for &QuadInt7 {
    type Output = QuadInt7;
    fn add(self, rhs: &QuadInt7) -> QuadInt7 {
        QuadInt7 {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &QuadInt7 {
    type Output = QuadInt7;
    fn sub(self, rhs: &QuadInt7) -> QuadInt7 {
        QuadInt7 {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &QuadInt7 {
    type Output = QuadInt7;
    fn mul(self, rhs: &QuadInt7) -> QuadInt7 {
        QuadInt7 {
            a: (&self.a * &rhs.a - BigInt::from(7) * &self.b * &rhs.b) / 2,
            b: (&self.a * &rhs.b + &self.b * &rhs.a) / 2,
        }
    }
}

impl Neg for &QuadInt7 {
    type Output = QuadInt7;
    fn neg(self) -> QuadInt7 {
        QuadInt7 {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl fmt::Display for QuadInt7 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((u, v)) = self.as_integral_pair() {
            if v.is_zero() {
                return write!(f, "{u}");
            }
            let sign = if v.is_negative() { "-" } else { "+" };
            return write!(f, "{u} {sign} {}√-7", v.abs());
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "({} {sign} {}√-7)/2", self.a, self.b.abs())
    }
}
