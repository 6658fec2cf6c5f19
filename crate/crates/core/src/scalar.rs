//! Complex coefficients and the global comparison tolerance.
//!
//! Every approximate comparison in the crate (coefficient equality, norm-1
//! checks, orthogonality) goes through [`tolerance`]. Approximate equality is
//! not transitive, so it is only ever applied to leaf coefficients after
//! distributions have been brought to canonical form.

use std::sync::atomic::{AtomicU64, Ordering};

pub use num_complex::Complex64;

/// A coefficient of a term distribution.
pub type Scalar = Complex64;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0x3EB0_C6F7_A0B5_ED8D); // 1e-6

/// The current global tolerance ε.
pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE_BITS.load(Ordering::Relaxed))
}

/// Replaces the global tolerance. Panics unless `eps` is finite and positive.
pub fn set_tolerance(eps: f64) {
    assert!(eps.is_finite() && eps > 0.0, "tolerance must be positive, got {eps}");
    TOLERANCE_BITS.store(eps.to_bits(), Ordering::Relaxed);
}

pub fn is_finite(c: Scalar) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

/// `|a - b| <= ε`.
pub fn approx_eq(a: Scalar, b: Scalar) -> bool {
    (a - b).norm() <= tolerance()
}

pub fn approx_zero(a: Scalar) -> bool {
    a.norm() <= tolerance()
}

pub fn approx_eq_f64(a: f64, b: f64) -> bool {
    (a - b).abs() <= tolerance()
}

pub fn real(re: f64) -> Scalar {
    Complex64::new(re, 0.0)
}

pub fn one() -> Scalar {
    Complex64::new(1.0, 0.0)
}

/// Exactly `1 + 0i`, the coefficient elided by `1·t ≡ t`.
pub fn is_exactly_one(c: Scalar) -> bool {
    c.re == 1.0 && c.im == 0.0
}

/// Total order on finite scalars, lexicographic on `(re, im)`. `-0.0` and `0.0`
/// compare equal.
pub fn cmp_scalar(a: Scalar, b: Scalar) -> std::cmp::Ordering {
    let by_re = a.re.partial_cmp(&b.re).expect("finite scalar");
    by_re.then_with(|| a.im.partial_cmp(&b.im).expect("finite scalar"))
}
