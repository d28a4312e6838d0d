//! Plane curve models and their point counts over finite fields.
//!
//! Brute-force counts enumerate projective representatives in the fixed
//! order `(x, y, 1)`, `(x, 1, 0)`, `(1, 0, 0)` and never touch characters, so
//! they serve as the oracle for the character-sum formulas.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::characters::make_character;
use crate::charsums::{jacobi_sum, JacobiTable};
use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::finite_field::{FieldDescriptor, FieldElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveModel {
    /// `X^n + Y^n + Z^n = 0`.
    Fermat(u32),
    /// `x^3 y + y^3 z + z^3 x = 0`.
    Klein,
    /// Projective closure of `y^7 = x^2 (x + 1)`.
    KleinBirational,
    /// Affine `x^n + y^n = 1`.
    FermatAffine(u32),
}

impl CurveModel {
    pub fn genus(&self) -> Option<u32> {
        match *self {
            CurveModel::Fermat(n) => Some((n - 1) * (n - 2) / 2),
            CurveModel::Klein | CurveModel::KleinBirational => Some(3),
            CurveModel::FermatAffine(_) => None,
        }
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveModel::Fermat(n) => write!(f, "fermat:{n}"),
            CurveModel::Klein => write!(f, "klein"),
            CurveModel::KleinBirational => write!(f, "klein-birational"),
            CurveModel::FermatAffine(n) => write!(f, "fermat-affine:{n}"),
        }
    }
}

impl FromStr for CurveModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let degree = |d: &str| -> Result<u32> {
            match d.parse::<u32>() {
                Ok(n) if n >= 2 => Ok(n),
                _ => Err(Error::Precondition(format!("bad Fermat degree '{d}'"))),
            }
        };
        match s {
            "klein" => Ok(CurveModel::Klein),
            "klein-birational" => Ok(CurveModel::KleinBirational),
            _ => {
                if let Some(d) = s.strip_prefix("fermat-affine:") {
                    Ok(CurveModel::FermatAffine(degree(d)?))
                } else if let Some(d) = s.strip_prefix("fermat:") {
                    Ok(CurveModel::Fermat(degree(d)?))
                } else {
                    Err(Error::Precondition(format!("unknown curve '{s}'")))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CountMethod {
    Brute,
    Formula,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::Brute => "brute",
            CountMethod::Formula => "formula",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRecord {
    pub curve: CurveModel,
    pub q: u64,
    pub p: u64,
    pub r: u32,
    pub count: u64,
    pub method: CountMethod,
}

/// Size caps for the counting kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountBudget {
    /// Largest `q` for `O(q^2)` plane scans.
    pub plane: u64,
    /// Largest `q` for `O(q)` scans.
    pub linear: u64,
}

impl Default for CountBudget {
    fn default() -> Self {
        CountBudget {
            plane: 1 << 12,
            linear: 1 << 20,
        }
    }
}

fn within(q: u64, budget: u64) -> Result<()> {
    if q > budget {
        return Err(Error::BudgetExceeded { q: q as u128, budget });
    }
    Ok(())
}

fn record(curve: CurveModel, fd: &FieldDescriptor, count: u64, method: CountMethod) -> CountRecord {
    CountRecord {
        curve,
        q: fd.q(),
        p: fd.p(),
        r: fd.r(),
        count,
        method,
    }
}

/// `hist[v] = #{x : x^n = v}`.
fn power_histogram(fd: &FieldDescriptor, n: u64) -> Vec<u64> {
    let mut hist = vec![0u64; fd.q() as usize];
    for x in 0..fd.q() as u32 {
        hist[fd.pow_idx(x, n) as usize] += 1;
    }
    hist
}

/// Exhaustive count; projective models include their points at infinity.
pub fn count_projective_brute(curve: CurveModel, fd: &FieldDescriptor, budget: &CountBudget) -> Result<CountRecord> {
    let q = fd.q();
    let count = match curve {
        CurveModel::Klein => {
            within(q, budget.plane)?;
            klein_affine_brute(fd) + klein_points_at_infinity(fd)
        }
        CurveModel::Fermat(n) => {
            within(q, budget.linear)?;
            let hist = power_histogram(fd, n as u64);
            let minus_one = fd.neg_idx(1);
            // (x, y, 1): y^n = -1 - x^n.
            let affine: u64 = (0..q as u32)
                .map(|x| hist[fd.sub_idx(minus_one, fd.pow_idx(x, n as u64)) as usize])
                .sum();
            // (x, 1, 0): x^n = -1.  (1, 0, 0) never lies on the curve.
            affine + hist[minus_one as usize]
        }
        CurveModel::FermatAffine(n) => {
            within(q, budget.linear)?;
            let hist = power_histogram(fd, n as u64);
            (0..q as u32)
                .map(|x| hist[fd.sub_idx(1, fd.pow_idx(x, n as u64)) as usize])
                .sum()
        }
        CurveModel::KleinBirational => {
            within(q, budget.linear)?;
            let hist = power_histogram(fd, 7);
            let affine: u64 = (0..q as u32)
                .map(|x| {
                    let rhs = fd.mul_idx(fd.mul_idx(x, x), fd.add_idx(x, 1));
                    hist[rhs as usize]
                })
                .sum();
            // Z = 0 forces Y = 0: the single point (1, 0, 0).
            affine + 1
        }
    };
    Ok(record(curve, fd, count, CountMethod::Brute))
}

/// `x^3 y + y^3 z + z^3 x` at a projective triple.
pub fn klein_form(fd: &FieldDescriptor, x: u32, y: u32, z: u32) -> u32 {
    let t1 = fd.mul_idx(fd.pow_idx(x, 3), y);
    let t2 = fd.mul_idx(fd.pow_idx(y, 3), z);
    let t3 = fd.mul_idx(fd.pow_idx(z, 3), x);
    fd.add_idx(fd.add_idx(t1, t2), t3)
}

fn klein_points_at_infinity(fd: &FieldDescriptor) -> u64 {
    let at_y = (0..fd.q() as u32).filter(|&x| klein_form(fd, x, 1, 0) == 0).count() as u64;
    let at_x = (klein_form(fd, 1, 0, 0) == 0) as u64;
    at_y + at_x
}

/// `#{(x, y) : x^3 y + y^3 + x = 0}`.
fn klein_affine_brute(fd: &FieldDescriptor) -> u64 {
    const BLOCK: usize = 512;
    let q = fd.q() as usize;
    if fd.is_prime_field() {
        let p = fd.p() as u32;
        let cube: Vec<u32> = (0..p).map(|x| fd.pow_idx(x, 3)).collect();
        // For a block of x, walk y upward keeping acc[x] = x^3 y mod p.
        return (0..q.div_ceil(BLOCK))
            .into_par_iter()
            .map(|b| {
                let lo = b * BLOCK;
                let hi = (lo + BLOCK).min(q);
                let cubes = &cube[lo..hi];
                let mut acc = vec![0u32; hi - lo];
                let mut found = 0u64;
                for y in 0..p {
                    let target = if cube[y as usize] == 0 { 0 } else { p - cube[y as usize] };
                    for (i, a) in acc.iter().enumerate() {
                        let x = (lo + i) as u32;
                        let mut s = *a + x;
                        if s >= p {
                            s -= p;
                        }
                        found += (s == target) as u64;
                    }
                    for (a, &c) in acc.iter_mut().zip(cubes) {
                        let mut t = *a + c;
                        if t >= p {
                            t -= p;
                        }
                        *a = t;
                    }
                }
                found
            })
            .sum();
    }
    let cube: Vec<u32> = (0..q as u32).map(|x| fd.pow_idx(x, 3)).collect();
    (0..q as u32)
        .into_par_iter()
        .map(|y| {
            let target = fd.neg_idx(cube[y as usize]);
            (0..q as u32)
                .filter(|&x| fd.add_idx(fd.mul_idx(cube[x as usize], y), x) == target)
                .count() as u64
        })
        .sum()
}

/// Whether `-1` is an `n`-th power in `F_q`, and `#{x : x^n = -1}`.
pub fn delta_minus_one(fd: &FieldDescriptor, n: u64) -> (bool, u64) {
    let d = n.gcd(&(fd.q() - 1));
    let log_minus_one = if fd.p() == 2 { 0 } else { (fd.q() - 1) / 2 };
    let delta = log_minus_one % d == 0;
    (delta, if delta { d } else { 0 })
}

fn exact_count(value: CyclotomicInt) -> Result<u64> {
    value
        .as_integer()
        .and_then(|v| v.to_u64())
        .ok_or_else(|| Error::NotRationalInteger(value.to_string()))
}

/// `q + 1 - δ_d(-1) d + Σ_{i,j ≠ 0, i+j ≠ d} J(χ^i, χ^j)` with `d = gcd(n, q-1)`.
pub fn count_affine_fermat_formula(fd: &Arc<FieldDescriptor>, n: u32) -> Result<CountRecord> {
    let q = fd.q();
    let d = (n as u64).gcd(&(q - 1)) as u32;
    let table = JacobiTable::new(fd, d)?;
    let (delta, _) = delta_minus_one(fd, d as u64);
    let base = q as i64 + 1 - if delta { d as i64 } else { 0 };
    let mut total = CyclotomicInt::from_int(d, base);
    for i in 1..d as i64 {
        for j in 1..d as i64 {
            if i + j != d as i64 {
                total = &total + &table.jacobi(i, j);
            }
        }
    }
    Ok(record(
        CurveModel::FermatAffine(n),
        fd,
        exact_count(total)?,
        CountMethod::Formula,
    ))
}

/// Projective Fermat count: affine formula plus the `δ_n(-1)·n` points at infinity.
pub fn count_fermat_formula(fd: &Arc<FieldDescriptor>, n: u32) -> Result<CountRecord> {
    let affine = count_affine_fermat_formula(fd, n)?;
    let (_, at_infinity) = delta_minus_one(fd, n as u64);
    Ok(record(
        CurveModel::Fermat(n),
        fd,
        affine.count + at_infinity,
        CountMethod::Formula,
    ))
}

fn not_ramified(fd: &FieldDescriptor) -> Result<()> {
    if fd.p() == 7 {
        return Err(Error::Ramified);
    }
    Ok(())
}

/// `N_q(KQ) = q + 1 + Σ_{i=1}^{6} J(χ^i, χ^{2i})` for `q ≡ 1 (mod 7)`.
pub fn klein_count_formula(fd: &Arc<FieldDescriptor>) -> Result<CountRecord> {
    not_ramified(fd)?;
    let table = JacobiTable::new(fd, 7)?;
    klein_count_from_table(&table)
}

pub fn klein_count_from_table(table: &JacobiTable) -> Result<CountRecord> {
    let fd = table.field();
    if table.order() != 7 {
        return Err(Error::Precondition("Klein counts need the order-7 table".into()));
    }
    let mut total = CyclotomicInt::from_int(7, fd.q() as i64 + 1);
    for i in 1..7 {
        total = &total + &table.jacobi(i, 2 * i);
    }
    Ok(record(CurveModel::Klein, fd, exact_count(total)?, CountMethod::Formula))
}

/// `N_q(KQ) = q + 1` when `F_q` has no primitive 7th root of unity.
pub fn klein_count_nonsplit(fd: &FieldDescriptor) -> Result<CountRecord> {
    not_ramified(fd)?;
    if (fd.q() - 1) % 7 == 0 {
        return Err(Error::Precondition(format!(
            "q = {} is 1 mod 7; use the Jacobi-sum formula",
            fd.q()
        )));
    }
    Ok(record(CurveModel::Klein, fd, fd.q() + 1, CountMethod::Formula))
}

/// Formula count for any unramified `q`.
pub fn klein_count(fd: &Arc<FieldDescriptor>) -> Result<CountRecord> {
    if (fd.q() - 1) % 7 == 0 {
        klein_count_formula(fd)
    } else {
        klein_count_nonsplit(fd)
    }
}

/// Count of the birational model. For `q ≡ 1 (mod 7)` this is the character
/// sum `1 + q + Σ_i Σ_x χ^{2i}(x) χ^i(1-x)`, each inner sum taken directly;
/// otherwise the model is counted exhaustively.
pub fn count_birational(fd: &Arc<FieldDescriptor>, budget: &CountBudget) -> Result<CountRecord> {
    not_ramified(fd)?;
    if (fd.q() - 1) % 7 != 0 {
        return count_projective_brute(CurveModel::KleinBirational, fd, budget);
    }
    within(fd.q(), budget.linear)?;
    let chi = make_character(fd, 7, 1)?;
    let mut total = CyclotomicInt::from_int(7, fd.q() as i64 + 1);
    for i in 1..7 {
        total = &total + &jacobi_sum(&chi.pow(2 * i), &chi.pow(i))?;
    }
    Ok(record(
        CurveModel::KleinBirational,
        fd,
        exact_count(total)?,
        CountMethod::Formula,
    ))
}

/// Dispatches to the formula route for each model.
pub fn count_formula(curve: CurveModel, fd: &Arc<FieldDescriptor>, budget: &CountBudget) -> Result<CountRecord> {
    within(fd.q(), budget.linear)?;
    match curve {
        CurveModel::Klein => klein_count(fd),
        CurveModel::KleinBirational => count_birational(fd, budget),
        CurveModel::Fermat(n) => count_fermat_formula(fd, n),
        CurveModel::FermatAffine(n) => count_affine_fermat_formula(fd, n),
    }
}

// ---- projective points, the cover and automorphisms ---------------------------

/// A point of `P^2(F_q)`, scaled so its last nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint([FieldElement; 3]);

impl ProjectivePoint {
    pub fn new(fd: &FieldDescriptor, x: FieldElement, y: FieldElement, z: FieldElement) -> Result<Self> {
        for c in [x, y, z] {
            fd.check(c)?;
        }
        let pivot = [z, y, x]
            .into_iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::Precondition("(0, 0, 0) is not a projective point".into()))?;
        let s = fd.inv(pivot)?;
        Ok(ProjectivePoint([fd.mul(x, s), fd.mul(y, s), fd.mul(z, s)]))
    }

    pub fn coords(&self) -> [FieldElement; 3] {
        self.0
    }

    pub fn all_nonzero(&self) -> bool {
        self.0.iter().all(|c| !c.is_zero())
    }
}

/// All representatives `(x, y, 1)`, `(x, 1, 0)`, `(1, 0, 0)`.
pub fn projective_plane(fd: &FieldDescriptor) -> impl Iterator<Item = ProjectivePoint> + '_ {
    let q = fd.q() as u32;
    let w = move |i: u32| fd.element_from_index(i as u64).unwrap();
    let finite = (0..q).flat_map(move |y| (0..q).map(move |x| ProjectivePoint([w(x), w(y), w(1)])));
    let at_y = (0..q).map(move |x| ProjectivePoint([w(x), w(1), w(0)]));
    finite
        .chain(at_y)
        .chain(std::iter::once(ProjectivePoint([w(1), w(0), w(0)])))
}

pub fn on_curve(curve: CurveModel, fd: &FieldDescriptor, pt: &ProjectivePoint) -> bool {
    let [x, y, z] = pt.0.map(|c| c.index());
    match curve {
        CurveModel::Klein => klein_form(fd, x, y, z) == 0,
        CurveModel::Fermat(n) => {
            let n = n as u64;
            fd.add_idx(fd.add_idx(fd.pow_idx(x, n), fd.pow_idx(y, n)), fd.pow_idx(z, n)) == 0
        }
        CurveModel::KleinBirational => {
            // Y^7 = X^2 (X + Z) Z^4
            let lhs = fd.pow_idx(y, 7);
            let rhs = fd.mul_idx(fd.mul_idx(fd.mul_idx(x, x), fd.add_idx(x, z)), fd.pow_idx(z, 4));
            lhs == rhs
        }
        CurveModel::FermatAffine(_) => false,
    }
}

/// Rational points of a projective model, by exhaustive search.
pub fn enumerate_points(curve: CurveModel, fd: &FieldDescriptor, budget: &CountBudget) -> Result<Vec<ProjectivePoint>> {
    within(fd.q(), budget.plane)?;
    if matches!(curve, CurveModel::FermatAffine(_)) {
        return Err(Error::Precondition("affine model has no projective points".into()));
    }
    Ok(projective_plane(fd).filter(|pt| on_curve(curve, fd, pt)).collect())
}

/// `φ(X, Y, Z) = (X^3 Z, Y^3 X, Z^3 Y)` from `FC_7` to the Klein quartic.
pub fn phi_cover(fd: &FieldDescriptor, pt: &ProjectivePoint) -> Result<ProjectivePoint> {
    if !on_curve(CurveModel::Fermat(7), fd, pt) {
        return Err(Error::NotOnCurve);
    }
    let [x, y, z] = pt.0;
    ProjectivePoint::new(
        fd,
        fd.mul(fd.pow(x, 3), z),
        fd.mul(fd.pow(y, 3), x),
        fd.mul(fd.pow(z, 3), y),
    )
}

/// `τ_k : (x, y, z) ↦ (ζ^{2k} x, ζ^k y, ζ^{4k} z)` with `ζ = g^{(q-1)/7}`.
pub fn klein_automorphism(fd: &FieldDescriptor, k: u64, pt: &ProjectivePoint) -> Result<ProjectivePoint> {
    if (fd.q() - 1) % 7 != 0 {
        return Err(Error::Precondition(format!(
            "F_{} has no primitive 7th root of unity",
            fd.q()
        )));
    }
    let zeta = fd.generator_power((fd.q() - 1) / 7);
    let [x, y, z] = pt.0;
    ProjectivePoint::new(
        fd,
        fd.mul(fd.pow(zeta, 2 * k), x),
        fd.mul(fd.pow(zeta, k), y),
        fd.mul(fd.pow(zeta, 4 * k), z),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverAudit {
    pub q: u64,
    pub fermat_points: usize,
    pub klein_points: usize,
    pub image_points: usize,
    /// Every image point lies on the Klein quartic.
    pub lands_on_klein: bool,
    /// fiber size -> number of image points with that fiber size.
    pub fiber_sizes: BTreeMap<usize, usize>,
    /// Same, restricted to image points with all coordinates nonzero.
    pub nonzero_fiber_sizes: BTreeMap<usize, usize>,
}

impl CoverAudit {
    pub fn is_bijection(&self) -> bool {
        self.fermat_points == self.klein_points
            && self.image_points == self.klein_points
            && self.fiber_sizes.keys().all(|&s| s == 1)
    }
}

/// Pushes every rational point of `FC_7` through `φ` and tallies fibers.
pub fn cover_audit(fd: &FieldDescriptor, budget: &CountBudget) -> Result<CoverAudit> {
    not_ramified(fd)?;
    let fermat = enumerate_points(CurveModel::Fermat(7), fd, budget)?;
    let klein = enumerate_points(CurveModel::Klein, fd, budget)?;
    let mut fibers: BTreeMap<ProjectivePoint, usize> = BTreeMap::new();
    for pt in &fermat {
        *fibers.entry(phi_cover(fd, pt)?).or_default() += 1;
    }
    let lands_on_klein = fibers.keys().all(|pt| on_curve(CurveModel::Klein, fd, pt));
    let mut fiber_sizes = BTreeMap::new();
    let mut nonzero_fiber_sizes = BTreeMap::new();
    for (pt, &size) in &fibers {
        *fiber_sizes.entry(size).or_default() += 1;
        if pt.all_nonzero() {
            *nonzero_fiber_sizes.entry(size).or_default() += 1;
        }
    }
    Ok(CoverAudit {
        q: fd.q(),
        fermat_points: fermat.len(),
        klein_points: klein.len(),
        image_points: fibers.len(),
        lands_on_klein,
        fiber_sizes,
        nonzero_fiber_sizes,
    })
}
