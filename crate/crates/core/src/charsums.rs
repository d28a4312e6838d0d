//! Gauss sums (numeric) and Jacobi sums (exact).

use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use crate::characters::{lift_character_with_budget, Character};
use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::finite_field::{FieldDescriptor, MAX_FIELD_SIZE};

pub type GaussSumValue = Complex64;
pub type JacobiSumValue = CyclotomicInt;

/// Below this size a single sequential pass is faster than splitting.
const PAR_THRESHOLD: u64 = 1 << 14;
const CHUNK: u32 = 1 << 12;

/// Exponent of `χ(a)` inside `Z[ζ_l]`, or `None` when the value is 0.
#[inline]
fn term(chi: &Character, a: u32, l: u32) -> Option<u32> {
    let scale = l / chi.order();
    match chi.exponent_idx(a) {
        Some(e) => Some(e * scale),
        None if chi.is_trivial() => Some(0),
        None => None,
    }
}

/// Accumulates `counts[e] += 1` for every `x` in the field where `f(x)` yields
/// an exponent, splitting the field into ranges when it is large.
fn exponent_histogram<F>(q: u64, l: u32, f: F) -> Vec<i64>
where
    F: Fn(u32) -> Option<u32> + Sync,
{
    let run = |lo: u32, hi: u32, acc: &mut Vec<i64>| {
        for x in lo..hi {
            if let Some(e) = f(x) {
                acc[(e % l) as usize] += 1;
            }
        }
    };
    if q < PAR_THRESHOLD {
        let mut acc = vec![0i64; l as usize];
        run(0, q as u32, &mut acc);
        return acc;
    }
    let chunks = (q as u32).div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .fold(
            || vec![0i64; l as usize],
            |mut acc, c| {
                let lo = c * CHUNK;
                run(lo, (lo + CHUNK).min(q as u32), &mut acc);
                acc
            },
        )
        .reduce(
            || vec![0i64; l as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// `g(χ) = Σ_x χ(x) ψ(x)`, in double precision.
pub fn gauss_sum(chi: &Character) -> GaussSumValue {
    let f = chi.field();
    let p = f.p();
    let unit: Vec<Complex64> = (0..p)
        .map(|t| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / p as f64))
        .collect();
    let n = chi.order();
    let mut counts = vec![0u64; (n as u64 * p) as usize];
    for x in 0..f.q() as u32 {
        let e = match chi.exponent_idx(x) {
            Some(e) => e,
            None if chi.is_trivial() => 0,
            None => continue,
        };
        counts[(e as u64 * p + f.trace_idx(x)) as usize] += 1;
    }
    let mut total = Complex64::new(0.0, 0.0);
    for e in 0..n as u64 {
        let chi_val = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / n as f64);
        for t in 0..p {
            let c = counts[(e * p + t) as usize];
            if c != 0 {
                total += chi_val * unit[t as usize] * c as f64;
            }
        }
    }
    total
}

/// `J(χ1, χ2) = Σ_x χ1(x) χ2(1 - x)` in `Z[ζ_l]`, `l = lcm` of the orders.
pub fn jacobi_sum(chi1: &Character, chi2: &Character) -> Result<JacobiSumValue> {
    chi1.same_field(chi2)?;
    let f = chi1.field().clone();
    let l = chi1.order().lcm(&chi2.order());
    let counts = exponent_histogram(f.q(), l, |x| {
        let e1 = term(chi1, x, l)?;
        let e2 = term(chi2, f.sub_idx(1, x), l)?;
        Some(e1 + e2)
    });
    Ok(CyclotomicInt::from_exponent_counts(l, &counts))
}

/// `J(χ1, ..., χk)` for `k` in `{2, 3}`: sum over `x_1 + ... + x_k = 1`.
pub fn jacobi_multi(chars: &[Character]) -> Result<JacobiSumValue> {
    match chars.len() {
        0 | 1 => Err(Error::TooFewCharacters),
        2 => jacobi_sum(&chars[0], &chars[1]),
        3 => {
            let (a, b, c) = (&chars[0], &chars[1], &chars[2]);
            a.same_field(b)?;
            a.same_field(c)?;
            let f = a.field().clone();
            let l = a.order().lcm(&b.order()).lcm(&c.order());
            let mut counts = vec![0i64; l as usize];
            for x1 in 0..f.q() as u32 {
                let Some(e1) = term(a, x1, l) else { continue };
                let rest = f.sub_idx(1, x1);
                for x2 in 0..f.q() as u32 {
                    let Some(e2) = term(b, x2, l) else { continue };
                    let Some(e3) = term(c, f.sub_idx(rest, x2), l) else {
                        continue;
                    };
                    counts[((e1 + e2 + e3) % l) as usize] += 1;
                }
            }
            Ok(CyclotomicInt::from_exponent_counts(l, &counts))
        }
        k => Err(Error::UnsupportedArity(k)),
    }
}

/// Cyclotomic numbers `M[a][b] = #{x ≠ 0, 1 : log x ≡ a, log(1-x) ≡ b (mod n)}`,
/// from which every `J(χ^i, χ^j)` for the canonical order-`n` character
/// follows without another pass over the field.
#[derive(Debug, Clone)]
pub struct JacobiTable {
    field: Arc<FieldDescriptor>,
    n: u32,
    counts: Vec<i64>,
}

impl JacobiTable {
    pub fn new(field: &Arc<FieldDescriptor>, n: u32) -> Result<Self> {
        let q_minus_1 = field.q() - 1;
        if n == 0 || q_minus_1 % n as u64 != 0 {
            return Err(Error::OrderDoesNotDivide { n: n as u64, q_minus_1 });
        }
        let f = field.clone();
        let nn = n * n;
        let flat = exponent_histogram(field.q(), nn, |x| {
            let a = f.log_idx(x)? % n;
            let b = f.log_idx(f.sub_idx(1, x))? % n;
            Some(a * n + b)
        });
        Ok(JacobiTable {
            field: field.clone(),
            n,
            counts: flat,
        })
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn cyclotomic_number(&self, a: u32, b: u32) -> i64 {
        self.counts[(a % self.n * self.n + b % self.n) as usize]
    }

    /// `J(χ^i, χ^j)` for the canonical character `χ` of order `n`.
    pub fn jacobi(&self, i: i64, j: i64) -> JacobiSumValue {
        let n = self.n as i64;
        let (i, j) = (i.rem_euclid(n), j.rem_euclid(n));
        let mut v = vec![0i64; n as usize];
        for a in 0..n {
            for b in 0..n {
                let c = self.counts[(a * n + b) as usize];
                if c != 0 {
                    v[((i * a + j * b) % n) as usize] += c;
                }
            }
        }
        if i == 0 {
            v[0] += 1;
        }
        if j == 0 {
            v[0] += 1;
        }
        CyclotomicInt::from_exponent_counts(self.n, &v)
    }
}

/// Outcome of comparing an exact sum with a numeric route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationCheck {
    pub holds: bool,
    pub residual: f64,
}

/// Tests `J(χ1, χ2) = g(χ1) g(χ2) / g(χ1 χ2)` to `1e-6`.
pub fn gauss_jacobi_relation_check(chi1: &Character, chi2: &Character) -> Result<RelationCheck> {
    let product = chi1.mul(chi2)?;
    if product.is_trivial() {
        return Err(Error::TrivialProduct);
    }
    let exact = jacobi_sum(chi1, chi2)?.embed(1)?;
    let numeric = gauss_sum(chi1) * gauss_sum(chi2) / gauss_sum(&product);
    let residual = (exact - numeric).norm();
    Ok(RelationCheck {
        holds: residual < 1e-6,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HasseDavenportReport {
    pub r: u32,
    /// `-J_{q^r}(χ1', χ2') == (-J_q(χ1, χ2))^r`, exactly.
    pub jacobi_exact: bool,
    /// `|(-g_q(χ1))^r + g_{q^r}(χ1')|`.
    pub gauss_residual: f64,
    pub lifted_gauss: Complex64,
}

impl HasseDavenportReport {
    pub fn holds(&self) -> bool {
        self.jacobi_exact && self.gauss_residual < 1e-6
    }
}

/// Lifting law for `χ` alone (its Jacobi corollary uses the pair `(χ, χ)`).
pub fn hasse_davenport_check(chi: &Character, r: u32) -> Result<HasseDavenportReport> {
    hasse_davenport_pair(chi, chi, r, MAX_FIELD_SIZE)
}

pub fn hasse_davenport_pair(chi1: &Character, chi2: &Character, r: u32, budget: u64) -> Result<HasseDavenportReport> {
    chi1.same_field(chi2)?;
    if r == 0 {
        return Err(Error::Precondition("extension degree must be positive".into()));
    }
    let lifted1 = lift_character_with_budget(chi1, r, budget)?;
    // Lift the second character through the same big field.
    let lifted2 = if chi1 == chi2 {
        lifted1.clone()
    } else {
        let big = lifted1.field().clone();
        let emb = crate::characters::FieldEmbedding::new(chi1.field(), &big)?;
        crate::characters::lift_through(chi2, &emb)?
    };
    let j_small = jacobi_sum(chi1, chi2)?;
    let j_big = jacobi_sum(&lifted1, &lifted2)?;
    let jacobi_exact = -j_big == (-j_small).pow(r);

    let g_small = gauss_sum(chi1);
    let g_big = gauss_sum(&lifted1);
    let gauss_residual = ((-g_small).powu(r) + g_big).norm();
    Ok(HasseDavenportReport {
        r,
        jacobi_exact,
        gauss_residual,
        lifted_gauss: g_big,
    })
}
