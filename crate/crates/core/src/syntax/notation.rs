//! Constructors extended to distributions by linearity, e.g.
//! `(Σ αᵢ·vᵢ, Σ βⱼ·wⱼ) := Σᵢⱼ αᵢβⱼ·(vᵢ, wⱼ)`. Every result is canonical.

use super::dist::{Dist, DistError};
use super::term::{Name, Term};

fn require_values(d: &Dist) -> Result<(), DistError> {
    match d.terms().find(|t| !t.is_value()) {
        Some(bad) => Err(DistError::NotAValue(format!("{bad:?}"))),
        None => Ok(()),
    }
}

fn collect(summands: Vec<(crate::scalar::Scalar, Term)>) -> Dist {
    Dist::new(summands).expect("expanding a non-empty distribution").canonicalize()
}

pub fn mk_pair(v: &Dist, w: &Dist) -> Result<Dist, DistError> {
    require_values(v)?;
    require_values(w)?;
    let mut out = Vec::with_capacity(v.len() * w.len());
    for (a, vi) in v.summands() {
        for (b, wj) in w.summands() {
            out.push((a * b, Term::Pair(Box::new(vi.clone()), Box::new(wj.clone()))));
        }
    }
    Ok(collect(out))
}

pub fn mk_inl(v: &Dist) -> Result<Dist, DistError> {
    require_values(v)?;
    Ok(collect(v.summands().iter().map(|(a, t)| (*a, Term::Inl(Box::new(t.clone())))).collect()))
}

pub fn mk_inr(v: &Dist) -> Result<Dist, DistError> {
    require_values(v)?;
    Ok(collect(v.summands().iter().map(|(a, t)| (*a, Term::Inr(Box::new(t.clone())))).collect()))
}

/// `t s⃗ := Σ δ·(t s)`. The operator is a single pure term.
pub fn mk_app(t: &Term, s: &Dist) -> Dist {
    collect(s.summands().iter().map(|(d, sl)| (*d, Term::App(Box::new(t.clone()), Box::new(sl.clone())))).collect())
}

/// [`mk_app`] for an operator given as a distribution, which must be `1·t`.
pub fn mk_app_dist(t: &Dist, s: &Dist) -> Result<Dist, DistError> {
    let op = t.as_pure().ok_or(DistError::OperatorNotPure)?;
    Ok(mk_app(op, s))
}

pub fn mk_seq(t: &Dist, s: &Dist) -> Dist {
    collect(t.summands().iter().map(|(g, tk)| (*g, Term::Seq(Box::new(tk.clone()), s.clone()))).collect())
}

pub fn mk_let(x: &Name, y: &Name, t: &Dist, s: &Dist) -> Dist {
    collect(
        t.summands()
            .iter()
            .map(|(g, tk)| (*g, Term::Let(x.clone(), y.clone(), Box::new(tk.clone()), s.clone())))
            .collect(),
    )
}

pub fn mk_match(t: &Dist, x1: &Name, s1: &Dist, x2: &Name, s2: &Dist) -> Dist {
    collect(
        t.summands()
            .iter()
            .map(|(g, tk)| (*g, Term::Match(Box::new(tk.clone()), x1.clone(), s1.clone(), x2.clone(), s2.clone())))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::real;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn plus(a: Term, b: Term) -> Dist {
        Dist::new(vec![(real(FRAC_1_SQRT_2), a), (real(FRAC_1_SQRT_2), b)]).unwrap()
    }

    #[test]
    fn pair_expands_bilinearly() {
        let (a, b, c) = (Term::var("a"), Term::var("b"), Term::var("c"));
        let got = mk_pair(&plus(a.clone(), b.clone()), &Dist::pure(c.clone())).unwrap();
        let want = plus(Term::pair(a, c.clone()), Term::pair(b, c));
        assert!(got.congruent(&want));
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn app_expands_argument() {
        let f = Term::var("f");
        let got = mk_app(&f, &plus(Term::var("u"), Term::var("w")));
        let want = plus(Term::app(f.clone(), Term::var("u")), Term::app(f, Term::var("w")));
        assert!(got.congruent(&want));
    }

    #[test]
    fn injection_keeps_coefficient() {
        let got = mk_inl(&Dist::scaled(real(FRAC_1_SQRT_2), Term::Void)).unwrap();
        assert_eq!(got.summands(), &[(real(FRAC_1_SQRT_2), Term::zero())]);
    }

    #[test]
    fn constructors_reject_non_values() {
        let not_value = Dist::pure(Term::app(Term::var("f"), Term::Void));
        assert!(mk_inl(&not_value).is_err());
        assert!(mk_pair(&not_value, &Dist::pure(Term::Void)).is_err());
        assert_eq!(
            mk_app_dist(&plus(Term::var("f"), Term::var("g")), &Dist::pure(Term::Void)),
            Err(DistError::OperatorNotPure)
        );
    }
}
