//! The weight-one Hecke character of `Q(√-7)`, the three CM newforms of
//! level 49 built from it, and the identification of their Euler factors
//! with the Klein quartic's zeta numerator.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Zero;

use crate::arith::{is_prime, multiplicative_order};
use crate::characters::make_character;
use crate::charsums::{jacobi_sum, JacobiTable};
use crate::curves::CountBudget;
use crate::cyclotomic::{CyclotomicInt, QuadInt7};
use crate::error::{Error, Result};
use crate::finite_field::build_field;
use crate::poly::mul_cyclotomic;
use crate::zeta::{zeta_klein, NumeratorPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// How `p` decomposes in `Q(√-7)`.
pub fn splitting(p: u64) -> Splitting {
    match p % 7 {
        0 => Splitting::Ramified,
        1 | 2 | 4 => Splitting::Split,
        _ => Splitting::Inert,
    }
}

fn prime_not_seven(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 7 {
        return Err(Error::Ramified);
    }
    Ok(())
}

/// The first `(a, b)` with `a, b > 0` and `a² + 7b² = 4p`, scanning `b` upward.
pub fn cornacchia_4p(p: u64) -> Result<Option<(u64, u64)>> {
    prime_not_seven(p)?;
    let four_p = 4 * p;
    let mut b = 1u64;
    while 7 * b * b < four_p {
        let rest = four_p - 7 * b * b;
        let a = rest.sqrt();
        if a * a == rest {
            return Ok(Some((a, b)));
        }
        b += 1;
    }
    Ok(None)
}

/// Value of the Hecke character on a prime above `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeCharValue {
    pub p: u64,
    pub splitting: Splitting,
    /// `π = (a + b√-7)/2` with `b > 0` for split `p`, `-p` for inert `p`, `0` at 7.
    pub value: QuadInt7,
}

impl HeckeCharValue {
    /// Value on the conjugate prime.
    pub fn conjugate(&self) -> QuadInt7 {
        self.value.conj()
    }
}

/// `a` is normalized by `π p ≡ 1 (mod √-7)`, i.e. `a p ≡ 2 (mod 7)`,
/// equivalently `a ≡ 1, 2, 4 (mod 7)`.
pub fn hecke_char(p: u64) -> Result<HeckeCharValue> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let split = splitting(p);
    let value = match split {
        Splitting::Ramified => QuadInt7::from_int(0),
        Splitting::Inert => QuadInt7::from_int(-(p as i64)),
        Splitting::Split => {
            let (a, b) = cornacchia_4p(p)?.expect("split primes are norms");
            let a = a as i64;
            let a = if (a * p as i64).rem_euclid(7) == 2 { a } else { -a };
            QuadInt7::new(a, b as i64)?
        }
    };
    Ok(HeckeCharValue {
        p,
        splitting: split,
        value,
    })
}

/// Exponent `e` with `χ₇(p) = ω^e`, where `χ₇` is the cubic character mod 7
/// sending the primitive root 3 to `ω²`. `None` when `7 | p`.
pub fn chi7_exponent(p: u64) -> Option<u32> {
    // discrete log base 3 of p mod 7, doubled
    const TABLE: [Option<u32>; 7] = [None, Some(0), Some(1), Some(2), Some(2), Some(1), Some(0)];
    TABLE[(p % 7) as usize]
}

pub fn chi7(p: u64) -> CyclotomicInt {
    match chi7_exponent(p) {
        Some(e) => CyclotomicInt::zeta_pow(3, e as i64),
        None => CyclotomicInt::zero(3),
    }
}

/// Euler-factor data of the three newforms `f_0, f_1, f_2` at `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFactorTriple {
    pub p: u64,
    /// `a_p(f_j) = χ₇(p)^j a_p(f_0)` in `Z[ω]`.
    pub ap: [CyclotomicInt; 3],
    /// Exponents of `ω` in the nebentypus values `(1, χ₇²(p), χ₇(p))`.
    pub nebentypus: [u32; 3],
}

impl EulerFactorTriple {
    /// `a_p(f_0)` as an integer.
    pub fn ap0(&self) -> BigInt {
        self.ap[0].as_integer().expect("a_p(f_0) is rational")
    }

    /// `|a_p(f_j)| ≤ 2√p` under every embedding.
    pub fn within_hasse_bound(&self) -> bool {
        let a = self.ap0();
        &a * &a <= BigInt::from(4 * self.p)
    }

    /// `1 - a_p(f_j) T + χ_{f_j}(p) p T²`.
    pub fn quadratic(&self, j: usize) -> Vec<CyclotomicInt> {
        let p = CyclotomicInt::from_int(3, self.p as i64);
        vec![
            CyclotomicInt::one(3),
            -&self.ap[j],
            &CyclotomicInt::zeta_pow(3, self.nebentypus[j] as i64) * &p,
        ]
    }
}

pub fn ap_triple(p: u64) -> Result<EulerFactorTriple> {
    prime_not_seven(p)?;
    let h = hecke_char(p)?;
    let a0 = match h.splitting {
        Splitting::Split => h.value.trace(),
        _ => BigInt::zero(),
    };
    let e = chi7_exponent(p).expect("p is not 7");
    let a0 = CyclotomicInt::from_int(3, a0);
    let ap = [0u32, 1, 2].map(|j| &CyclotomicInt::zeta_pow(3, (j * e) as i64) * &a0);
    Ok(EulerFactorTriple {
        p,
        ap,
        nebentypus: [0, (2 * e) % 3, e],
    })
}

/// `Π_j (1 - a_p(f_j) T + χ_{f_j}(p) p T²)`, expanded in `Z[ω]`; every
/// coefficient must land in `Z`.
pub fn euler_product(p: u64) -> Result<NumeratorPoly> {
    let triple = ap_triple(p)?;
    let mut poly = vec![CyclotomicInt::one(3)];
    for j in 0..3 {
        poly = mul_cyclotomic(&poly, &triple.quadratic(j));
    }
    let coeffs = poly
        .iter()
        .map(|c| c.as_integer().ok_or_else(|| Error::NotRationalInteger(c.to_string())))
        .collect::<Result<Vec<_>>>()?;
    NumeratorPoly::new(p, 3, coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Report {
    pub p: u64,
    pub euler: NumeratorPoly,
    pub zeta: NumeratorPoly,
}

impl Theorem1Report {
    pub fn holds(&self) -> bool {
        self.euler == self.zeta
    }
}

impl fmt::Display for Theorem1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds() { "equal" } else { "DIFFER" };
        write!(f, "p={}: euler {} | zeta {} [{verdict}]", self.p, self.euler, self.zeta)
    }
}

/// Compares the Euler product against the zeta numerator at `p`.
pub fn verify_theorem1(p: u64, budget: &CountBudget) -> Result<Theorem1Report> {
    let euler = euler_product(p)?;
    let zeta = zeta_klein(p, budget)?.numerator().clone();
    Ok(Theorem1Report { p, euler, zeta })
}

/// `-J_{p^r}(χ^a, χ^b)` for the residue-symbol character `χ(x) ≡ x^{(q-1)/7}`
/// of the prime above `p` on which `ζ_7 ↦ g^{(q-1)/7}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiHeckeValue {
    pub p: u64,
    pub r: u32,
    pub a: i64,
    pub b: i64,
    pub value: CyclotomicInt,
}

impl JacobiHeckeValue {
    pub fn q(&self) -> u64 {
        self.p.pow(self.r)
    }
}

pub fn jacobi_hecke(p: u64, a: i64, b: i64, budget: &CountBudget) -> Result<JacobiHeckeValue> {
    prime_not_seven(p)?;
    let r = multiplicative_order(p % 7, 7).expect("p is a unit mod 7");
    let q = p.saturating_pow(r);
    if q > budget.linear {
        return Err(Error::BudgetExceeded {
            q: q as u128,
            budget: budget.linear,
        });
    }
    let fd = Arc::new(build_field(p, r)?);
    let chi = make_character(&fd, 7, 1)?;
    let j = jacobi_sum(&chi.pow(a), &chi.pow(b))?;
    Ok(JacobiHeckeValue { p, r, a, b, value: -&j })
}

/// For `p ≡ 1 (mod 7)`: whether `{-J_p(χ,χ²), conj}` and `{π, π̄}` agree as multisets.
pub fn hecke_jacobi_compatible(p: u64, budget: &CountBudget) -> Result<bool> {
    if p % 7 != 1 {
        return Err(Error::Precondition(format!("{p} is not 1 mod 7")));
    }
    let minus_j = jacobi_hecke(p, 1, 2, budget)?.value.to_quad7()?;
    let h = hecke_char(p)?;
    let mut lhs = [minus_j.clone(), minus_j.conj()].map(|x| (x.a().clone(), x.b().clone()));
    let mut rhs = [h.value.clone(), h.conjugate()].map(|x| (x.a().clone(), x.b().clone()));
    lhs.sort();
    rhs.sort();
    Ok(lhs == rhs)
}

/// `a_p` of the Fermat cubic: 0 for `p ≡ 2 (mod 3)`, else `-(J_p(χ₃,χ₃) + conj)`.
pub fn fc3_ap(p: u64, budget: &CountBudget) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 3 {
        return Err(Error::Precondition("p = 3 is bad for the Fermat cubic".into()));
    }
    if p % 3 == 2 {
        return Ok(0);
    }
    if p > budget.linear {
        return Err(Error::BudgetExceeded {
            q: p as u128,
            budget: budget.linear,
        });
    }
    let fd = Arc::new(build_field(p, 1)?);
    let j = JacobiTable::new(&fd, 3)?.jacobi(1, 1);
    let t = (&j + &j.conj())
        .as_integer()
        .ok_or_else(|| Error::NotRationalInteger(j.to_string()))?;
    Ok(-i64::try_from(t).expect("bounded by 2√p"))
}
