//! Multiplicative characters of `F_q^×` with exact values in `Z[ζ_n]`, and the
//! canonical additive character.
//!
//! A character of order `n` and index `k` sends the field generator `g` to
//! `ζ_n^k`. Conventions at zero: a nontrivial character vanishes there, the
//! trivial character takes the value 1.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;

use crate::arith::inv_mod;
use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::finite_field::{FieldDescriptor, FieldElement, MAX_FIELD_SIZE};

#[derive(Debug, Clone)]
pub struct Character {
    field: Arc<FieldDescriptor>,
    order: u32,
    index: u32,
}

impl PartialEq for Character {
    /// Equality as functions on the field, not as (order, index) pairs.
    fn eq(&self, other: &Self) -> bool {
        if *self.field != *other.field {
            return false;
        }
        let l = self.order.lcm(&other.order);
        (self.index as u64 * (l / self.order) as u64) % l as u64
            == (other.index as u64 * (l / other.order) as u64) % l as u64
    }
}

/// Character of order dividing `n` sending the generator to `ζ_n^k`.
pub fn make_character(field: &Arc<FieldDescriptor>, n: u32, k: u32) -> Result<Character> {
    let q_minus_1 = field.q() - 1;
    if n == 0 || q_minus_1 % n as u64 != 0 {
        return Err(Error::OrderDoesNotDivide { n: n as u64, q_minus_1 });
    }
    Ok(Character {
        field: field.clone(),
        order: n,
        index: k % n,
    })
}

impl Character {
    pub fn trivial(field: &Arc<FieldDescriptor>) -> Self {
        Character {
            field: field.clone(),
            order: 1,
            index: 0,
        }
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    /// The `n` of `Z[ζ_n]` in which values are reported.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    /// Exact multiplicative order of the character.
    pub fn exact_order(&self) -> u32 {
        self.order / self.index.gcd(&self.order)
    }

    /// Exponent `e` with `χ(x) = ζ_n^e`, or `None` at zero.
    #[inline]
    pub fn exponent_idx(&self, a: u32) -> Option<u32> {
        self.field
            .log_idx(a)
            .map(|l| ((l as u64 * self.index as u64) % self.order as u64) as u32)
    }

    pub fn evaluate(&self, x: FieldElement) -> Result<CyclotomicInt> {
        self.field.check(x)?;
        Ok(match self.exponent_idx(x.index()) {
            Some(e) => CyclotomicInt::zeta_pow(self.order, e as i64),
            None if self.is_trivial() => CyclotomicInt::one(self.order),
            None => CyclotomicInt::zero(self.order),
        })
    }

    /// Value under the embedding `ζ_n ↦ exp(2πi/n)`.
    pub fn evaluate_complex(&self, x: FieldElement) -> Result<Complex64> {
        self.field.check(x)?;
        Ok(self.complex_idx(x.index()))
    }

    #[inline]
    pub(crate) fn complex_idx(&self, a: u32) -> Complex64 {
        match self.exponent_idx(a) {
            Some(e) => Complex64::from_polar(1.0, 2.0 * PI * e as f64 / self.order as f64),
            None if self.is_trivial() => Complex64::new(1.0, 0.0),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn pow(&self, j: i64) -> Character {
        let n = self.order as i64;
        Character {
            field: self.field.clone(),
            order: self.order,
            index: ((self.index as i64 * j).rem_euclid(n)) as u32,
        }
    }

    pub fn inverse(&self) -> Character {
        self.pow(-1)
    }

    pub fn mul(&self, other: &Character) -> Result<Character> {
        self.same_field(other)?;
        let l = self.order.lcm(&other.order);
        let k =
            (self.index as u64 * (l / self.order) as u64 + other.index as u64 * (l / other.order) as u64) % l as u64;
        Ok(Character {
            field: self.field.clone(),
            order: l,
            index: k as u32,
        })
    }

    /// Same character reported in `Z[ζ_m]` for a multiple `m` of the order.
    pub fn with_order(&self, m: u32) -> Result<Character> {
        if m % self.order != 0 {
            return Err(Error::Precondition(format!(
                "order {m} is not a multiple of {}",
                self.order
            )));
        }
        make_character(&self.field, m, self.index * (m / self.order))
    }

    pub(crate) fn same_field(&self, other: &Character) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.q(),
                found: other.field.q(),
            });
        }
        Ok(())
    }
}

/// The embedding of `F_q` into `F_{q^r}` determined by the smallest root of
/// the small field's modulus.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    small: Arc<FieldDescriptor>,
    big: Arc<FieldDescriptor>,
    /// `log_G(ι(g)) = generator_log_ratio · (Q-1)/(q-1)`.
    generator_log_ratio: u64,
}

impl FieldEmbedding {
    pub fn new(small: &Arc<FieldDescriptor>, big: &Arc<FieldDescriptor>) -> Result<Self> {
        if small.p() != big.p() || big.r() % small.r() != 0 {
            return Err(Error::Precondition(format!(
                "F_{} is not a subfield of F_{}",
                small.q(),
                big.q()
            )));
        }
        let modulus = small.modulus();
        let root = big
            .elements()
            .find(|&x| {
                let mut acc = big.zero();
                for &c in modulus.iter().rev() {
                    acc = big.add(big.mul(acc, x), big.from_int(c as i64));
                }
                acc.is_zero()
            })
            .expect("the small modulus splits in the big field");
        let image = embed_with_root(small, big, root, small.generator());
        let cofactor = (big.q() - 1) / (small.q() - 1);
        let l = big.discrete_log(image)?;
        debug_assert_eq!(l % cofactor, 0);
        Ok(FieldEmbedding {
            small: small.clone(),
            big: big.clone(),
            generator_log_ratio: l / cofactor,
        })
    }

    pub fn small(&self) -> &Arc<FieldDescriptor> {
        &self.small
    }

    pub fn big(&self) -> &Arc<FieldDescriptor> {
        &self.big
    }

    pub fn embed(&self, x: FieldElement) -> Result<FieldElement> {
        self.small.check(x)?;
        if x.is_zero() {
            return Ok(self.big.zero());
        }
        let t = self.small.discrete_log(x)?;
        let cofactor = (self.big.q() - 1) / (self.small.q() - 1);
        Ok(self.big.generator_power(
            ((t as u128 * self.generator_log_ratio as u128 * cofactor as u128) % (self.big.q() as u128 - 1)) as u64,
        ))
    }

    /// Relative norm `N_{F_{q^r}/F_q}`, pulled back to the small field.
    pub fn norm(&self, y: FieldElement) -> Result<FieldElement> {
        self.big.check(y)?;
        if y.is_zero() {
            return Ok(self.small.zero());
        }
        let l = self.big.discrete_log(y)?;
        Ok(self.small.generator_power(self.pull_back_log(l)))
    }

    /// `t` with `N(G^l) = g^t`.
    fn pull_back_log(&self, l: u64) -> u64 {
        let m = self.small.q() as i64 - 1;
        if m == 1 {
            return 0;
        }
        let inv = inv_mod(self.generator_log_ratio as i64, m).expect("ratio is a unit");
        ((l as u128 * inv as u128) % m as u128) as u64
    }
}

fn embed_with_root(
    small: &FieldDescriptor,
    big: &FieldDescriptor,
    root: FieldElement,
    x: FieldElement,
) -> FieldElement {
    let mut acc = big.zero();
    for &c in small.coefficients(x).iter().rev() {
        acc = big.add(big.mul(acc, root), big.from_int(c as i64));
    }
    acc
}

/// `χ ∘ N` on `F_{q^r}`: same order, and agrees with `χ` through the norm.
pub fn lift_character(chi: &Character, r: u32) -> Result<Character> {
    lift_character_with_budget(chi, r, MAX_FIELD_SIZE)
}

pub fn lift_character_with_budget(chi: &Character, r: u32, budget: u64) -> Result<Character> {
    let small = chi.field();
    if r == 1 {
        return Ok(chi.clone());
    }
    let big = Arc::new(FieldDescriptor::with_budget(small.p(), small.r() * r, budget)?);
    let embedding = FieldEmbedding::new(small, &big)?;
    lift_through(chi, &embedding)
}

/// Lifts `χ` along an existing embedding.
pub fn lift_through(chi: &Character, embedding: &FieldEmbedding) -> Result<Character> {
    if **embedding.small() != **chi.field() {
        return Err(Error::FieldMismatch {
            expected: embedding.small().q(),
            found: chi.field().q(),
        });
    }
    // χ'(G^l) = χ(g^{l·m⁻¹}) so the new index is k·m⁻¹ mod n.
    let n = chi.order() as i64;
    let m_inv = if n == 1 {
        0
    } else {
        inv_mod(embedding.generator_log_ratio as i64, n).expect("ratio is a unit")
    };
    make_character(
        embedding.big(),
        chi.order(),
        ((chi.index() as i64 * m_inv).rem_euclid(n)) as u32,
    )
}

/// `ψ_q(x) = exp(2πi·Tr(x)/p)`.
pub fn additive_character(field: &FieldDescriptor, x: FieldElement) -> Result<Complex64> {
    let t = field.trace(x)?;
    Ok(Complex64::from_polar(1.0, 2.0 * PI * t as f64 / field.p() as f64))
}

/// Number of `x` with `x^m = a`, as `Σ_{χ^d = 1} χ(a)` with `d = gcd(m, q-1)`.
pub fn power_solution_count(field: &Arc<FieldDescriptor>, m: u64, a: FieldElement) -> Result<u64> {
    field.check(a)?;
    let d = m.gcd(&(field.q() - 1)) as u32;
    let chi = make_character(field, d, 1)?;
    let mut total = CyclotomicInt::zero(d);
    for j in 0..d {
        total = &total + &chi.pow(j as i64).evaluate(a)?;
    }
    let n = total
        .as_integer()
        .ok_or_else(|| Error::NotRationalInteger(total.to_string()))?;
    Ok(u64::try_from(n).expect("a count is nonnegative"))
}
