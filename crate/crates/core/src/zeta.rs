//! Local zeta functions of curves: numerators from point counts or Jacobi
//! sums, with the Weil functional equation and Riemann hypothesis enforced.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_prime, multiplicative_order, pow_mod};
use crate::charsums::JacobiTable;
use crate::curves::{klein_count, CountBudget};
use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::finite_field::{build_field, FieldDescriptor};
use crate::poly::{binomial_factor, mul_cyclotomic, normalized_roots, square_free_part};

/// Tolerance on `| |α| / √q - 1 |` for every inverse root.
pub const RH_TOLERANCE: f64 = 1e-9;

/// The structural forms for `r ∈ {2, 6}` are rechecked against Jacobi sums up to this `p^r`.
pub const STRUCTURAL_CHECK_LIMIT: u64 = 1 << 20;

/// `P(T) = Σ b_k T^k` with `b_0 = 1` and degree `2g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumeratorPoly {
    q: u64,
    genus: u32,
    coeffs: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeilReport {
    pub functional_eq: bool,
    pub rh_max_residual: f64,
}

impl WeilReport {
    pub fn holds(&self) -> bool {
        self.functional_eq && self.rh_max_residual < RH_TOLERANCE
    }
}

impl NumeratorPoly {
    /// Builds the polynomial without checking the Weil invariants.
    pub fn new(q: u64, genus: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        let expected = 2 * genus as usize + 1;
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        if !coeffs[0].is_one() {
            return Err(Error::Precondition("numerator must have constant term 1".into()));
        }
        Ok(NumeratorPoly { q, genus, coeffs })
    }

    pub fn from_i64(q: u64, genus: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(q, genus, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// First `k` violating `b_{2g-k} = q^{g-k} b_k`, cross-multiplied to stay integral.
    pub fn functional_equation_failure(&self) -> Option<usize> {
        let g = self.genus as usize;
        let q = BigInt::from(self.q);
        (0..=g).find(|&k| {
            let lhs = &self.coeffs[2 * g - k];
            let rhs = q.pow((g - k) as u32) * &self.coeffs[k];
            *lhs != rhs
        })
    }

    /// `max | |α_i| / √q - 1 |` over the distinct inverse roots.
    pub fn rh_max_residual(&self) -> f64 {
        if self.genus == 0 {
            return 0.0;
        }
        let sf = square_free_part(&self.coeffs);
        normalized_roots(&sf, self.q)
            .iter()
            .map(|u| (u.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn weil_report(&self) -> WeilReport {
        WeilReport {
            functional_eq: self.functional_equation_failure().is_none(),
            rh_max_residual: self.rh_max_residual(),
        }
    }

    /// Errors unless both Weil invariants hold.
    pub fn check_weil(&self) -> Result<WeilReport> {
        if let Some(k) = self.functional_equation_failure() {
            return Err(Error::FunctionalEquation { k });
        }
        let report = self.weil_report();
        if report.rh_max_residual >= RH_TOLERANCE || report.rh_max_residual.is_nan() {
            return Err(Error::RiemannHypothesis(report.rh_max_residual));
        }
        Ok(report)
    }

    /// `s_r = Σ α_i^r` for `r = 1..=count`.
    pub fn power_sums(&self, count: usize) -> Vec<BigInt> {
        // b_k = (-1)^k e_k
        let e: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 0 { b.clone() } else { -b })
            .collect();
        let mut s: Vec<BigInt> = Vec::with_capacity(count + 1);
        s.push(BigInt::zero());
        for k in 1..=count {
            let mut acc = BigInt::zero();
            for i in 1..k {
                if i < e.len() {
                    let term = &e[i] * &s[k - i];
                    if i % 2 == 1 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
            }
            if k < e.len() {
                let term = &e[k] * BigInt::from(k);
                if k % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            s.push(acc);
        }
        s.remove(0);
        s
    }

    /// `N_{q^r} = q^r + 1 - s_r` for `r = 1..=count`.
    pub fn counts(&self, count: usize) -> Vec<BigInt> {
        let q = BigInt::from(self.q);
        self.power_sums(count)
            .into_iter()
            .enumerate()
            .map(|(i, s)| q.pow(i as u32 + 1) + 1 - s)
            .collect()
    }
}

impl fmt::Display for NumeratorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("T")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `Z(T) = P(T) / ((1 - T)(1 - qT))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaFunction {
    numerator: NumeratorPoly,
    weil: WeilReport,
}

impl ZetaFunction {
    /// Wraps a numerator after checking the Weil invariants.
    pub fn new(numerator: NumeratorPoly) -> Result<Self> {
        let weil = numerator.check_weil()?;
        Ok(ZetaFunction { numerator, weil })
    }

    pub fn numerator(&self) -> &NumeratorPoly {
        &self.numerator
    }

    pub fn weil(&self) -> WeilReport {
        self.weil
    }

    pub fn q(&self) -> u64 {
        self.numerator.q
    }

    pub fn genus(&self) -> u32 {
        self.numerator.genus
    }

    /// `(1 - T)(1 - qT)` as a coefficient vector.
    pub fn denominator(&self) -> Vec<BigInt> {
        let q = BigInt::from(self.numerator.q);
        vec![BigInt::one(), -(&q + BigInt::one()), q]
    }

    /// Point counts over `F_{q^r}` for `r = 1..=count`.
    pub fn counts(&self, count: usize) -> Vec<BigInt> {
        self.numerator.counts(count)
    }
}

/// `s_r = q^r + 1 - N_{q^r}` for `r = 1..=2g`.
pub fn power_sums_from_counts(counts: &[BigInt], q: u64, genus: u32) -> Result<Vec<BigInt>> {
    let expected = 2 * genus as usize;
    if counts.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: counts.len(),
        });
    }
    let q = BigInt::from(q);
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, n)| q.pow(i as u32 + 1) + 1 - n)
        .collect())
}

/// Newton's identities `k e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} s_i` in exact
/// arithmetic, then `b_k = (-1)^k e_k`. Weil invariants are enforced.
pub fn numerator_from_power_sums(sums: &[BigInt], q: u64, genus: u32) -> Result<NumeratorPoly> {
    let degree = 2 * genus as usize;
    if sums.len() != degree {
        return Err(Error::LengthMismatch {
            expected: degree,
            found: sums.len(),
        });
    }
    let mut e = vec![BigInt::one()];
    for k in 1..=degree {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &sums[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::NonIntegral(k));
        }
        e.push(quot);
    }
    let coeffs = e
        .into_iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 0 { c } else { -c })
        .collect();
    let poly = NumeratorPoly::new(q, genus, coeffs)?;
    poly.check_weil()?;
    Ok(poly)
}

/// Numerator from the counts `N_{q^r}`, `r = 1..=2g`.
pub fn numerator_from_counts(counts: &[BigInt], q: u64, genus: u32) -> Result<NumeratorPoly> {
    numerator_from_power_sums(&power_sums_from_counts(counts, q, genus)?, q, genus)
}

fn integral_coeffs(poly: &[CyclotomicInt]) -> Result<Vec<BigInt>> {
    poly.iter()
        .map(|c| c.as_integer().ok_or_else(|| Error::NotRationalInteger(c.to_string())))
        .collect()
}

/// `Π_{i+j≠n} (1 + J(χ^i, χ^j) T)` over `F_q` with `n | q - 1`.
pub fn zeta_fermat(fd: &Arc<FieldDescriptor>, n: u32) -> Result<ZetaFunction> {
    let table = JacobiTable::new(fd, n)?;
    let mut poly = vec![CyclotomicInt::one(n)];
    for i in 1..n as i64 {
        for j in 1..n as i64 {
            if i + j != n as i64 {
                poly = mul_cyclotomic(&poly, &binomial_factor(&table.jacobi(i, j), 1));
            }
        }
    }
    let genus = (n - 1) * (n - 2) / 2;
    ZetaFunction::new(NumeratorPoly::new(fd.q(), genus, integral_coeffs(&poly)?)?)
}

/// `(r, p^r)` with `r` the order of `p` mod 7; `p^r` saturates at `u64::MAX`.
pub fn klein_splitting_field(p: u64) -> Result<(u32, u64)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 7 {
        return Err(Error::Ramified);
    }
    let r = multiplicative_order(p % 7, 7).expect("p is a unit mod 7");
    Ok((r, p.saturating_pow(r)))
}

/// Coset representatives of `<p>` in `(Z/7)^×`, smallest first.
fn frobenius_coset_reps(p: u64) -> Vec<i64> {
    let mut seen = [false; 7];
    let mut reps = Vec::new();
    for k in 1..7u64 {
        if seen[k as usize] {
            continue;
        }
        reps.push(k as i64);
        let mut x = k;
        loop {
            seen[x as usize] = true;
            x = x * p % 7;
            if x == k {
                break;
            }
        }
    }
    reps
}

/// `Π_k (1 + σ_k(J_{p^r}(χ, χ²)) T^r)` over coset representatives `k` of `<p>`.
pub fn klein_numerator_jacobi(p: u64, budget: &CountBudget) -> Result<NumeratorPoly> {
    let (r, q) = klein_splitting_field(p)?;
    if q > budget.linear {
        return Err(Error::BudgetExceeded {
            q: q as u128,
            budget: budget.linear,
        });
    }
    let fd = Arc::new(build_field(p, r)?);
    let j = JacobiTable::new(&fd, 7)?.jacobi(1, 2);
    let mut poly = vec![CyclotomicInt::one(7)];
    for k in frobenius_coset_reps(p) {
        poly = mul_cyclotomic(&poly, &binomial_factor(&j.galois(k)?, r as usize));
    }
    NumeratorPoly::new(p, 3, integral_coeffs(&poly)?)
}

/// `(1 + pT²)³` for `r = 2` and `1 + p³T⁶` for `r = 6`.
pub fn klein_numerator_structural(p: u64) -> Result<NumeratorPoly> {
    let (r, _) = klein_splitting_field(p)?;
    let p = BigInt::from(p);
    let coeffs = match r {
        2 => vec![
            BigInt::one(),
            BigInt::zero(),
            &p * 3,
            BigInt::zero(),
            p.pow(2) * 3,
            BigInt::zero(),
            p.pow(3),
        ],
        6 => {
            let mut c = vec![BigInt::zero(); 7];
            c[0] = BigInt::one();
            c[6] = p.pow(3);
            c
        }
        _ => {
            return Err(Error::Precondition(format!(
                "no structural form when p has order {r} mod 7"
            )))
        }
    };
    NumeratorPoly::new(p.to_u64().unwrap(), 3, coeffs)
}

/// The local zeta function of the Klein quartic at `p ≠ 7`.
pub fn zeta_klein(p: u64, budget: &CountBudget) -> Result<ZetaFunction> {
    let (r, q) = klein_splitting_field(p)?;
    let numerator = match r {
        1 | 3 => klein_numerator_jacobi(p, budget)?,
        _ => {
            let structural = klein_numerator_structural(p)?;
            if q <= STRUCTURAL_CHECK_LIMIT.min(budget.linear) {
                let from_sums = klein_numerator_jacobi(p, budget)?;
                if from_sums != structural {
                    return Err(Error::Precondition(format!(
                        "structural numerator {structural} disagrees with Jacobi sums {from_sums}"
                    )));
                }
            }
            structural
        }
    };
    ZetaFunction::new(numerator)
}

/// `multinomial(n; parts)` mod `p` by Lucas' theorem on base-`p` digits.
pub fn multinomial_mod_p(n: u64, parts: &[u64], p: u64) -> u64 {
    if parts.iter().sum::<u64>() != n {
        return 0;
    }
    let mut fact = vec![1u64; p as usize];
    for i in 1..p as usize {
        fact[i] = fact[i - 1] * i as u64 % p;
    }
    let mut n = n;
    let mut parts = parts.to_vec();
    let mut result = 1u64;
    while n > 0 || parts.iter().any(|&x| x > 0) {
        let digit = n % p;
        let digits: Vec<u64> = parts.iter().map(|x| x % p).collect();
        if digits.iter().sum::<u64>() != digit {
            return 0;
        }
        result = result * fact[digit as usize] % p;
        for d in digits {
            result = result * pow_mod(fact[d as usize], p - 2, p) % p;
        }
        n /= p;
        parts.iter_mut().for_each(|x| *x /= p);
    }
    result
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrinomialReport {
    pub q: u64,
    pub count: u64,
    /// `multinomial(q-1; m, 2m, 4m) mod p`, or `None` when `7 ∤ q - 1`.
    pub multinomial: Option<u64>,
    pub expected_mod_p: u64,
    pub holds: bool,
}

/// `N_q ≡ 1 - 3·multinomial(q-1; m, 2m, 4m) (mod p)` with `m = (q-1)/7`,
/// or `N_q ≡ 1 (mod p)` when `7 ∤ q - 1`.
pub fn trinomial_congruence_check(fd: &Arc<FieldDescriptor>) -> Result<TrinomialReport> {
    let (p, q) = (fd.p(), fd.q());
    let count = klein_count(fd)?.count;
    let multinomial = ((q - 1) % 7 == 0).then(|| {
        let m = (q - 1) / 7;
        multinomial_mod_p(q - 1, &[m, 2 * m, 4 * m], p)
    });
    let expected_mod_p = match multinomial {
        Some(c) => (1 + 3 * p - 3 * c % p) % p,
        None => 1 % p,
    };
    Ok(TrinomialReport {
        q,
        count,
        multinomial,
        expected_mod_p,
        holds: count % p == expected_mod_p,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HudsonWilliamsReport {
    pub p: u64,
    pub binomial: u64,
    /// `J_p(χ, χ²) + conj`.
    pub trace: BigInt,
    pub holds: bool,
}

/// `binom(3m, m) ≡ -(J + J̄) (mod p)` for a prime `p ≡ 1 (mod 7)`, `m = (p-1)/7`.
pub fn hudson_williams_check(p: u64, budget: &CountBudget) -> Result<HudsonWilliamsReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 7 != 1 {
        return Err(Error::Precondition(format!("{p} is not 1 mod 7")));
    }
    if p > budget.linear {
        return Err(Error::BudgetExceeded {
            q: p as u128,
            budget: budget.linear,
        });
    }
    let m = (p - 1) / 7;
    let binomial = multinomial_mod_p(3 * m, &[m, 2 * m], p);
    let fd = Arc::new(build_field(p, 1)?);
    let trace = jacobi_trace(&fd)?;
    let minus = (-&trace).mod_floor(&BigInt::from(p));
    Ok(HudsonWilliamsReport {
        p,
        binomial,
        holds: minus == BigInt::from(binomial),
        trace,
    })
}

/// `J_q(χ, χ²) + conj` for a character of order 7; independent of the choice of `χ`.
pub fn jacobi_trace(fd: &Arc<FieldDescriptor>) -> Result<BigInt> {
    let j = JacobiTable::new(fd, 7)?.jacobi(1, 2);
    let t = (&j + &j.conj())
        .as_integer()
        .ok_or_else(|| Error::NotRationalInteger(j.to_string()))?;
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiCongruenceReport {
    pub q: u64,
    pub trace: BigInt,
    /// `(J + J̄)/2` when it is an integer; always so for odd `q`.
    pub u: Option<BigInt>,
    pub holds: bool,
}

/// `J + J̄ ≡ -2 (mod 7)`, and for odd `q` also `u = (J + J̄)/2 ≡ -1 (mod 7)`.
pub fn jacobi_congruence_check(fd: &Arc<FieldDescriptor>) -> Result<JacobiCongruenceReport> {
    let trace = jacobi_trace(fd)?;
    let seven = BigInt::from(7);
    let mut holds = trace.mod_floor(&seven) == BigInt::from(5);
    let u: Option<BigInt> = trace.is_even().then(|| &trace / 2);
    if fd.p() != 2 {
        holds &= u.as_ref().is_some_and(|u| u.mod_floor(&seven) == BigInt::from(6));
    }
    Ok(JacobiCongruenceReport {
        q: fd.q(),
        trace,
        u,
        holds,
    })
}
