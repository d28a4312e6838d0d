//! Finite fields `F_{p^r}` realized as `F_p[x]/(f)` with full discrete-log tables.
//!
//! Construction is deterministic: `f` is the lexicographically smallest monic
//! irreducible polynomial of degree `r` (comparing `(c_{r-1}, ..., c_0)`), and
//! the generator is the first element, in the same enumeration order, whose
//! multiplicative order is `q - 1`. An element is addressed by its *index*
//! `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`, so enumeration order and index order
//! coincide.

use std::fmt;

use crate::arith::{is_prime, pow_mod, prime_divisors};
use crate::error::{Error, Result};

/// Largest field the crate will build; the log tables are `O(q)` words.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;

const NO_LOG: u32 = u32::MAX;

/// An element of a specific `F_q`, stored by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    index: u32,
    q: u32,
}

impl FieldElement {
    pub fn index(self) -> u32 {
        self.index
    }

    pub fn field_size(self) -> u64 {
        self.q as u64
    }

    pub fn is_zero(self) -> bool {
        self.index == 0
    }
}

/// A concrete, immutable realization of `F_{p^r}`.
#[derive(Clone)]
pub struct FieldDescriptor {
    p: u64,
    r: u32,
    q: u64,
    /// `c_0..c_{r-1}` of the monic modulus; the leading 1 is implicit.
    modulus: Vec<u64>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    basis_trace: Vec<u64>,
    /// `p^i` for `i < r`.
    place: Vec<u32>,
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDescriptor")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish_non_exhaustive()
    }
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for FieldDescriptor {}

/// Builds `F_{p^r}` under the default size budget.
pub fn build_field(p: u64, r: u32) -> Result<FieldDescriptor> {
    FieldDescriptor::new(p, r)
}

impl FieldDescriptor {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        Self::with_budget(p, r, MAX_FIELD_SIZE)
    }

    /// Builds the field, refusing anything with more than `budget` elements.
    /// Budgets above [`MAX_FIELD_SIZE`] are clamped to it.
    pub fn with_budget(p: u64, r: u32, budget: u64) -> Result<Self> {
        if p == 0 || r == 0 {
            return Err(Error::ZeroParameter { p, r });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let budget = budget.min(MAX_FIELD_SIZE);
        let q_wide = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
        if q_wide > budget as u128 {
            return Err(Error::BudgetExceeded { q: q_wide, budget });
        }
        let q = q_wide as u64;

        let modulus = if r == 1 {
            vec![0]
        } else {
            smallest_irreducible(p, r as usize)
        };
        let place: Vec<u32> = (0..r).map(|i| p.pow(i) as u32).collect();

        let mut fd = FieldDescriptor {
            p,
            r,
            q,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
            basis_trace: Vec::new(),
            place,
        };
        fd.generator = fd.find_generator();
        fd.fill_tables();
        fd.basis_trace = (0..r)
            .map(|i| {
                let x_i = if r == 1 { 1 } else { fd.place[i as usize] };
                fd.trace_by_definition(x_i)
            })
            .collect();
        Ok(fd)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Coefficients `c_0..c_r` of the modulus, including the leading 1.
    pub fn modulus(&self) -> Vec<u64> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn is_prime_field(&self) -> bool {
        self.r == 1
    }

    pub fn generator(&self) -> FieldElement {
        self.wrap(self.generator)
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    fn wrap(&self, index: u32) -> FieldElement {
        FieldElement {
            index,
            q: self.q as u32,
        }
    }

    pub fn element_from_index(&self, index: u64) -> Result<FieldElement> {
        if index >= self.q {
            return Err(Error::Precondition(format!("index {index} outside F_{}", self.q)));
        }
        Ok(self.wrap(index as u32))
    }

    /// Element `c_0 + c_1 x + ...`; coefficients are reduced mod `p`.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.r as usize {
            return Err(Error::Precondition(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.r
            )));
        }
        let index = coeffs
            .iter()
            .zip(&self.place)
            .map(|(&c, &w)| (c % self.p) as u32 * w)
            .sum();
        Ok(self.wrap(index))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, a: i64) -> FieldElement {
        self.wrap(a.rem_euclid(self.p as i64) as u32)
    }

    pub fn coefficients(&self, x: FieldElement) -> Vec<u64> {
        self.digits(x.index)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as u32).map(|i| self.wrap(i))
    }

    pub fn check(&self, x: FieldElement) -> Result<()> {
        if x.q as u64 != self.q {
            return Err(Error::FieldMismatch {
                expected: self.q,
                found: x.q as u64,
            });
        }
        Ok(())
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.assert_member(x);
        self.assert_member(y);
        self.wrap(self.add_idx(x.index, y.index))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.assert_member(x);
        self.assert_member(y);
        self.wrap(self.sub_idx(x.index, y.index))
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        self.assert_member(x);
        self.wrap(self.neg_idx(x.index))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.assert_member(x);
        self.assert_member(y);
        self.wrap(self.mul_idx(x.index, y.index))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        self.assert_member(x);
        self.wrap(self.pow_idx(x.index, e))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroLog);
        }
        let l = self.log[x.index as usize] as u64;
        Ok(self.wrap(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
    }

    fn assert_member(&self, x: FieldElement) {
        assert_eq!(x.q as u64, self.q, "element used with the wrong field");
    }

    /// `Tr(x) = x + x^p + ... + x^{p^{r-1}}`, as a residue mod `p`.
    pub fn trace(&self, x: FieldElement) -> Result<u64> {
        self.check(x)?;
        Ok(self.trace_idx(x.index))
    }

    /// `N(x) = x^{(q-1)/(p-1)}`, as a residue mod `p`.
    pub fn norm(&self, x: FieldElement) -> Result<u64> {
        self.check(x)?;
        if x.is_zero() {
            return Ok(0);
        }
        let e = (self.q - 1) / (self.p - 1);
        let n = self.pow_idx(x.index, e);
        debug_assert!((n as u64) < self.p);
        Ok(n as u64)
    }

    /// `t` in `[0, q-1)` with `g^t = x`.
    pub fn discrete_log(&self, x: FieldElement) -> Result<u64> {
        self.check(x)?;
        self.log_idx(x.index).map(u64::from).ok_or(Error::ZeroLog)
    }

    pub fn generator_power(&self, t: u64) -> FieldElement {
        self.wrap(self.exp[(t % (self.q - 1)) as usize])
    }

    // ---- index-level kernels -------------------------------------------------

    #[inline]
    pub fn log_idx(&self, a: u32) -> Option<u32> {
        let l = self.log[a as usize];
        (l != NO_LOG).then_some(l)
    }

    #[inline]
    pub fn exp_idx(&self, t: u64) -> u32 {
        self.exp[(t % (self.q - 1)) as usize]
    }

    #[inline]
    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        if self.r == 1 {
            let s = a + b;
            return if s >= self.p as u32 { s - self.p as u32 } else { s };
        }
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p as u32;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for &w in &self.place {
            let s = a % p + b % p;
            out += if s >= p { s - p } else { s } * w;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg_idx(&self, a: u32) -> u32 {
        if self.r == 1 {
            return if a == 0 { 0 } else { self.p as u32 - a };
        }
        if self.p == 2 {
            return a;
        }
        let p = self.p as u32;
        let mut a = a;
        let mut out = 0;
        for &w in &self.place {
            let d = a % p;
            out += if d == 0 { 0 } else { p - d } * w;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.neg_idx(b))
    }

    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.r == 1 {
            return ((a as u64 * b as u64) % self.p) as u32;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % (self.q - 1)) as usize]
    }

    #[inline]
    pub fn pow_idx(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u128;
        self.exp[((l * e as u128) % (self.q as u128 - 1)) as usize]
    }

    #[inline]
    pub fn trace_idx(&self, a: u32) -> u64 {
        if self.r == 1 {
            return a as u64;
        }
        let p = self.p as u32;
        let mut a = a;
        let mut acc = 0u64;
        for &t in &self.basis_trace {
            acc += (a % p) as u64 * t;
            a /= p;
        }
        acc % self.p
    }

    fn digits(&self, mut a: u32) -> Vec<u64> {
        let p = self.p as u32;
        (0..self.r)
            .map(|_| {
                let d = a % p;
                a /= p;
                d as u64
            })
            .collect()
    }

    fn undigits(&self, d: &[u64]) -> u32 {
        d.iter().zip(&self.place).map(|(&c, &w)| c as u32 * w).sum()
    }

    // ---- construction ----------------------------------------------------------

    /// Multiplication straight from the polynomial representation; used only
    /// while the tables are being built.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.r == 1 {
            return ((a as u64 * b as u64) % self.p) as u32;
        }
        let prod = poly_mul_mod(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        self.undigits(&prod)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        if self.r == 1 {
            return pow_mod(a as u64, e, self.p) as u32;
        }
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> u32 {
        let order = self.q - 1;
        let cofactors: Vec<u64> = prime_divisors(order).iter().map(|l| order / l).collect();
        (1..self.q as u32)
            .find(|&g| cofactors.iter().all(|&c| self.slow_pow(g, c) != 1))
            .expect("F_q^x is cyclic, so a generator exists")
    }

    fn fill_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![NO_LOG; self.q as usize];
        let mut e = 1u32;
        for (t, slot) in exp.iter_mut().enumerate() {
            *slot = e;
            log[e as usize] = t as u32;
            e = self.slow_mul(e, self.generator);
        }
        debug_assert_eq!(e, 1);
        self.exp = exp;
        self.log = log;
    }

    fn trace_by_definition(&self, a: u32) -> u64 {
        let mut acc = 0u32;
        let mut term = a;
        for _ in 0..self.r {
            acc = self.add_idx(acc, term);
            term = self.slow_pow(term, self.p);
        }
        debug_assert!((acc as u64) < self.p);
        acc as u64
    }
}

// ---- polynomials over F_p, little-endian coefficient vectors --------------------

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// `a * b mod f` where `f` is monic of degree `modulus.len()` with the leading 1
/// omitted.
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let r = modulus.len();
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (r..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            prod[k - r + i] = (prod[k - r + i] + (p - m) * c) % p;
        }
    }
    prod.truncate(r);
    prod.resize(r, 0);
    prod
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    trim(&mut a);
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while a.len() > db && !a.is_empty() {
        let da = a.len() - 1;
        let c = a[da] * lead_inv % p;
        for i in 0..=db {
            a[da - db + i] = (a[da - db + i] + (p - c) * b[i] % p) % p;
        }
        trim(&mut a);
    }
    a
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test: `f` of degree `r` is irreducible iff `gcd(x^{p^k} - x, f) = 1`
/// for every `k <= r/2`.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let r = modulus.len();
    if modulus[0] == 0 {
        return r == 1;
    }
    let mut full = modulus.to_vec();
    full.push(1);
    let mut x = vec![0u64; r];
    x[1 % r] = 1;
    let mut h = x.clone();
    for _ in 0..r / 2 {
        // h <- h^p mod f
        let mut base = h.clone();
        let mut acc = {
            let mut one = vec![0u64; r];
            one[0] = 1;
            one
        };
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mul_mod(&acc, &base, modulus, p);
            }
            base = poly_mul_mod(&base, &base, modulus, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(&full, &diff, p);
        if diff.iter().all(|&c| c == 0) || g.len() > 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, r: usize) -> Vec<u64> {
    let total = p.pow(r as u32);
    (0..total)
        .map(|t| {
            let mut t = t;
            (0..r)
                .map(|_| {
                    let d = t % p;
                    t /= p;
                    d
                })
                .collect::<Vec<u64>>()
        })
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}
