//! Exact character sums, point counts and local zeta functions for the Klein
//! quartic `x^3 y + y^3 z + z^3 x = 0` and the Fermat curves `X^n + Y^n + Z^n = 0`.

pub mod arith;
pub mod characters;
pub mod charsums;
pub mod curves;
pub mod cyclotomic;
pub mod error;
pub mod finite_field;
pub mod hecke;
pub mod poly;
pub mod suites;
pub mod zeta;

pub use characters::{additive_character, lift_character, make_character, Character};
pub use charsums::{gauss_sum, jacobi_multi, jacobi_sum, JacobiTable};
pub use curves::{CountBudget, CountMethod, CountRecord, CurveModel, ProjectivePoint};
pub use cyclotomic::{CyclotomicInt, QuadInt7};
pub use error::{Error, Result};
pub use finite_field::{build_field, FieldDescriptor, FieldElement};
pub use hecke::{ap_triple, euler_product, hecke_char, verify_theorem1, EulerFactorTriple, HeckeCharValue};
pub use zeta::{zeta_fermat, zeta_klein, NumeratorPoly, WeilReport, ZetaFunction};
