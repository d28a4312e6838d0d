//! Naive reference arithmetic shared by the integration tests.
//!
//! Elements of `F_{p^r}` are plain coefficient vectors reduced by a fixed
//! monic modulus; nothing here touches the library's log tables.

#![allow(dead_code)]

use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct NaiveField {
    pub p: u64,
    /// `c_0..c_{r-1}` of a monic irreducible modulus.
    pub modulus: Vec<u64>,
}

impl NaiveField {
    pub fn prime(p: u64) -> Self {
        NaiveField { p, modulus: vec![0] }
    }

    pub fn new(p: u64, modulus: &[u64]) -> Self {
        NaiveField {
            p,
            modulus: modulus.to_vec(),
        }
    }

    pub fn r(&self) -> usize {
        self.modulus.len()
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.r() as u32)
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        (0..self.q())
            .map(|mut i| {
                (0..self.r())
                    .map(|_| {
                        let d = i % self.p;
                        i /= self.p;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    pub fn constant(&self, c: i64) -> Vec<u64> {
        let mut v = vec![0; self.r()];
        v[0] = c.rem_euclid(self.p as i64) as u64;
        v
    }

    pub fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.p).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + self.p - b) % self.p).collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let r = self.r();
        let mut prod = vec![0u64; 2 * r];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % self.p;
            }
        }
        for k in (r..2 * r).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, m) in self.modulus.iter().enumerate() {
                prod[k - r + i] = (prod[k - r + i] + self.p * self.p - c * m % self.p) % self.p;
            }
        }
        prod.truncate(r);
        prod
    }

    pub fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.constant(1);
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self, x: &[u64]) -> u64 {
        let mut acc = vec![0; self.r()];
        let mut y = x.to_vec();
        for _ in 0..self.r() {
            acc = self.add(&acc, &y);
            y = self.pow(&y, self.p);
        }
        assert!(acc[1..].iter().all(|&c| c == 0), "trace leaves the prime field");
        acc[0]
    }

    /// Smallest-index element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> Vec<u64> {
        let q = self.q();
        self.elements()
            .into_iter()
            .find(|x| !self.is_zero(x) && (1..q - 1).all(|k| self.pow(x, k) != self.constant(1)))
            .expect("multiplicative group is cyclic")
    }

    /// Projective points `[x:y:1], [x:1:0], [1:0:0]` on `F(x, y, z) = 0`.
    pub fn count_projective(&self, f: impl Fn(&Self, &[u64], &[u64], &[u64]) -> bool) -> u64 {
        let els = self.elements();
        let (zero, one) = (self.constant(0), self.constant(1));
        let mut n = 0;
        for x in &els {
            for y in &els {
                n += f(self, x, y, &one) as u64;
            }
            n += f(self, x, &one, &zero) as u64;
        }
        n + f(self, &one, &zero, &zero) as u64
    }
}

pub fn klein(f: &NaiveField, x: &[u64], y: &[u64], z: &[u64]) -> bool {
    let t1 = f.mul(&f.pow(x, 3), y);
    let t2 = f.mul(&f.pow(y, 3), z);
    let t3 = f.mul(&f.pow(z, 3), x);
    f.is_zero(&f.add(&f.add(&t1, &t2), &t3))
}

pub fn fermat(n: u64) -> impl Fn(&NaiveField, &[u64], &[u64], &[u64]) -> bool {
    move |f, x, y, z| f.is_zero(&f.add(&f.add(&f.pow(x, n), &f.pow(y, n)), &f.pow(z, n)))
}

/// Order-`n` character `g^t ↦ e^{2πi k t / n}` evaluated by brute-force logs.
pub fn naive_character(f: &NaiveField, n: u64, k: u64) -> impl Fn(&[u64]) -> Complex64 + '_ {
    let g = f.primitive_element();
    let q = f.q();
    let mut table = Vec::with_capacity(q as usize - 1);
    let mut x = f.constant(1);
    for t in 0..q - 1 {
        table.push((x.clone(), t));
        x = f.mul(&x, &g);
    }
    move |y: &[u64]| {
        if f.is_zero(y) {
            return Complex64::new(0.0, 0.0);
        }
        let t = table.iter().find(|(e, _)| e == y).unwrap().1;
        let theta = 2.0 * std::f64::consts::PI * ((k * t) % n) as f64 / n as f64;
        Complex64::from_polar(1.0, theta)
    }
}

/// `Σ_x χ1(x) χ2(1 - x)` in floating point.
pub fn naive_jacobi(
    f: &NaiveField,
    chi1: &dyn Fn(&[u64]) -> Complex64,
    chi2: &dyn Fn(&[u64]) -> Complex64,
) -> Complex64 {
    let one = f.constant(1);
    f.elements().iter().map(|x| chi1(x) * chi2(&f.sub(&one, x))).sum()
}
