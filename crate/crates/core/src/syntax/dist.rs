use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use super::term::{cmp_dists, Name, Term};
use crate::scalar::{self, approx_eq, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("a distribution needs at least one summand")]
    Empty,
    #[error("coefficient {0} is not finite")]
    NonFinite(Scalar),
    #[error("expected a value, found `{0}`")]
    NotAValue(String),
    #[error("operator of an application must be a single pure term")]
    OperatorNotPure,
}

/// A non-empty linear combination `a1·t1 + ... + an·tn` of pure terms.
///
/// Summands are kept in the order they were built; [`Dist::canonicalize`]
/// produces the congruence normal form. Zero coefficients are never dropped:
/// `1·inl * + 0·inr *` and `inl *` are different distributions.
///
/// `PartialEq`/`Ord` compare summand lists as written (terms up to alpha,
/// coefficients exactly); use [`Dist::congruent`] for `≡`.
#[derive(Clone, Debug)]
pub struct Dist {
    summands: Vec<(Scalar, Term)>,
}

impl PartialEq for Dist {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_dists(self, &mut Vec::new(), other, &mut Vec::new())
    }
}

impl Dist {
    pub fn new(summands: Vec<(Scalar, Term)>) -> Result<Dist, DistError> {
        if summands.is_empty() {
            return Err(DistError::Empty);
        }
        if let Some((c, _)) = summands.iter().find(|(c, _)| !scalar::is_finite(*c)) {
            return Err(DistError::NonFinite(*c));
        }
        Ok(Dist { summands })
    }

    /// `1·t`.
    pub fn pure(t: Term) -> Dist {
        Dist { summands: vec![(scalar::one(), t)] }
    }

    pub fn scaled(alpha: Scalar, t: Term) -> Dist {
        Dist::new(vec![(alpha, t)]).expect("finite coefficient")
    }

    pub fn summands(&self) -> &[(Scalar, Term)] {
        &self.summands
    }

    pub fn into_summands(self) -> Vec<(Scalar, Term)> {
        self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.summands.iter().map(|(_, t)| t)
    }

    /// The pure term `t` when the distribution is literally `1·t`.
    pub fn as_pure(&self) -> Option<&Term> {
        match self.summands.as_slice() {
            [(c, t)] if scalar::is_exactly_one(*c) => Some(t),
            _ => None,
        }
    }

    pub fn is_value(&self) -> bool {
        self.terms().all(Term::is_value)
    }

    pub fn is_well_formed(&self) -> bool {
        self.terms().all(Term::is_well_formed)
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub(crate) fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Name>) {
        for (_, t) in &self.summands {
            t.collect_free(bound, out);
        }
    }

    pub(crate) fn collect_names(&self, out: &mut BTreeSet<Name>) {
        for (_, t) in &self.summands {
            t.collect_names(out);
        }
    }

    pub fn size(&self) -> usize {
        self.terms().map(Term::size).sum()
    }

    /// `a·d`.
    pub fn scale(&self, alpha: Scalar) -> Dist {
        Dist { summands: self.summands.iter().map(|(c, t)| (alpha * c, t.clone())).collect() }
    }

    /// `d + e`, without merging.
    pub fn plus(&self, other: &Dist) -> Dist {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        Dist { summands }
    }

    /// Congruence normal form: summands sorted by the term order, and
    /// alpha-equivalent terms merged by adding their coefficients. Idempotent.
    pub fn canonicalize(&self) -> Dist {
        self.clone().into_canonical()
    }

    /// [`Dist::canonicalize`] without copying the terms.
    pub fn into_canonical(self) -> Dist {
        let mut sorted = self.summands;
        sorted.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(Scalar, Term)> = Vec::with_capacity(sorted.len());
        for (c, t) in sorted {
            match merged.last_mut() {
                Some((acc, last)) if *last == t => *acc += c,
                _ => merged.push((c, t)),
            }
        }
        Dist { summands: merged }
    }

    pub fn is_canonical(&self) -> bool {
        self.summands.windows(2).all(|w| w[0].1 < w[1].1)
    }

    /// `d1 ≡ d2`: same canonical terms, coefficients equal within ε.
    pub fn congruent(&self, other: &Dist) -> bool {
        let (a, b) = (self.canonicalize(), other.canonicalize());
        a.len() == b.len()
            && a.summands.iter().zip(&b.summands).all(|((ca, ta), (cb, tb))| ta == tb && approx_eq(*ca, *cb))
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Dist {
        Dist { summands: self.summands.iter().map(|(c, t)| (*c, f(t))).collect() }
    }

    /// Sum of `|a_i|^2` over the summands as written.
    pub fn coefficient_norm_sqr(&self) -> f64 {
        self.summands.iter().map(|(c, _)| c.norm_sqr()).sum()
    }
}

impl From<Term> for Dist {
    fn from(t: Term) -> Dist {
        Dist::pure(t)
    }
}

pub fn congruent(d1: &Dist, d2: &Dist) -> bool {
    d1.congruent(d2)
}

pub fn canonicalize(d: &Dist) -> Dist {
    d.canonicalize()
}
