//! Orbit structure of the cyclic group generated by `Q = [[a, b], [1, 0]]` acting on
//! `F_q x F_q`: exact field arithmetic, analytic orbit-spectrum predictions, a
//! brute-force enumerator to check them against, and the Lucas primitive root tools.

pub mod arith;
pub mod field;
pub mod lucas;
pub mod orbit;
pub mod orders;
pub mod report;

pub use arith::{factor_integer, IntegerFactorization};
pub use field::{quadratic_roots, Field, FieldElement, FieldError, RootClassification};
pub use orbit::{Companion, OrbitError, OrbitSpectrum, VerificationReport};
