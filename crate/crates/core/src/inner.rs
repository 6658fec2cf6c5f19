//! The pseudo inner product on value distributions, orthogonality and norm.
//!
//! `(Σ αᵢ·vᵢ | Σ βⱼ·wⱼ) = Σᵢⱼ conj(αᵢ)·βⱼ·δ(vᵢ, wⱼ)` where `δ` is 1 on
//! alpha-equivalent values and 0 otherwise.

use std::cmp::Ordering;

use crate::scalar::{tolerance, Scalar};
use crate::syntax::{Dist, DistError};

fn require_values(d: &Dist) -> Result<(), DistError> {
    match d.terms().find(|t| !t.is_value()) {
        Some(bad) => Err(DistError::NotAValue(format!("{bad:?}"))),
        None => Ok(()),
    }
}

pub fn inner_product(v: &Dist, w: &Dist) -> Result<Scalar, DistError> {
    require_values(v)?;
    require_values(w)?;
    let (v, w) = (v.canonicalize(), w.canonicalize());
    let (a, b) = (v.summands(), w.summands());
    // both sides are sorted with distinct terms: a merge join suffices
    let (mut i, mut j) = (0, 0);
    let mut acc = Scalar::new(0.0, 0.0);
    while i < a.len() && j < b.len() {
        match a[i].1.cmp(&b[j].1) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                acc += a[i].0.conj() * b[j].0;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(acc)
}

/// `|(v|w)| <= ε`.
pub fn orthogonal(v: &Dist, w: &Dist) -> Result<bool, DistError> {
    Ok(inner_product(v, w)?.norm() <= tolerance())
}

/// `(v|w) = 0` exactly, for inputs with exactly representable coefficients.
pub fn orthogonal_strict(v: &Dist, w: &Dist) -> Result<bool, DistError> {
    Ok(inner_product(v, w)? == Scalar::new(0.0, 0.0))
}

/// `‖v‖ = sqrt((v|v))`.
pub fn norm(v: &Dist) -> Result<f64, DistError> {
    Ok(inner_product(v, v)?.re.max(0.0).sqrt())
}
