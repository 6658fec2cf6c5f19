//! Capture-avoiding substitution of pure values for variables.

use std::collections::BTreeSet;

use super::dist::{Dist, DistError};
use super::term::{Name, Term};

/// A simultaneous substitution `[x1 := v1, ..., xn := vn]`.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    bindings: Vec<(Name, Term)>,
    // free variables of every replacement, the names a binder must avoid
    avoid: BTreeSet<Name>,
}

impl Subst {
    pub fn new() -> Subst {
        Subst::default()
    }

    pub fn single(x: impl Into<Name>, v: Term) -> Subst {
        let mut s = Subst::new();
        s.insert(x, v);
        s
    }

    /// Later bindings for the same name replace earlier ones.
    pub fn insert(&mut self, x: impl Into<Name>, v: Term) {
        let x = x.into();
        debug_assert!(v.is_value(), "only pure values are substituted");
        self.avoid.extend(v.free_vars());
        self.bindings.retain(|(y, _)| *y != x);
        self.bindings.push((x, v));
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    fn lookup(&self, x: &str) -> Option<&Term> {
        self.bindings.iter().find(|(y, _)| y == x).map(|(_, v)| v)
    }

    fn without(&self, names: &[&str]) -> Subst {
        Subst {
            bindings: self.bindings.iter().filter(|(y, _)| !names.contains(&y.as_str())).cloned().collect(),
            avoid: self.avoid.clone(),
        }
    }

    pub fn apply(&self, t: &Term) -> Term {
        if self.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(x) => self.lookup(x).cloned().unwrap_or_else(|| t.clone()),
            Term::Void => Term::Void,
            Term::Lam(x, ty, body) => {
                let (x, body) = self.under_binder(x, body);
                Term::Lam(x, ty.clone(), body)
            }
            Term::Pair(a, b) => Term::Pair(Box::new(self.apply(a)), Box::new(self.apply(b))),
            Term::App(a, b) => Term::App(Box::new(self.apply(a)), Box::new(self.apply(b))),
            Term::Inl(v) => Term::Inl(Box::new(self.apply(v))),
            Term::Inr(v) => Term::Inr(Box::new(self.apply(v))),
            Term::Seq(h, tail) => Term::Seq(Box::new(self.apply(h)), self.apply_dist(tail)),
            Term::Let(x, y, scrut, body) => {
                let scrut = self.apply(scrut);
                let (x, y, body) = self.under_two_binders(x, y, body);
                Term::Let(x, y, Box::new(scrut), body)
            }
            Term::Match(scrut, x1, s1, x2, s2) => {
                let scrut = self.apply(scrut);
                let (x1, s1) = self.under_binder(x1, s1);
                let (x2, s2) = self.under_binder(x2, s2);
                Term::Match(Box::new(scrut), x1, s1, x2, s2)
            }
        }
    }

    pub fn apply_dist(&self, d: &Dist) -> Dist {
        if self.is_empty() {
            return d.clone();
        }
        d.map_terms(|t| self.apply(t))
    }

    fn under_binder(&self, x: &Name, body: &Dist) -> (Name, Dist) {
        let inner = self.without(&[x]);
        if inner.is_empty() {
            return (x.clone(), body.clone());
        }
        if !self.avoid.contains(x) {
            return (x.clone(), inner.apply_dist(body));
        }
        let fresh = fresh_name(x, &self.taken(body));
        let body = Subst::single(x.clone(), Term::Var(fresh.clone())).apply_dist(body);
        (fresh, inner.apply_dist(&body))
    }

    fn under_two_binders(&self, x: &Name, y: &Name, body: &Dist) -> (Name, Name, Dist) {
        let inner = self.without(&[x, y]);
        if inner.is_empty() {
            return (x.clone(), y.clone(), body.clone());
        }
        let mut taken = self.taken(body);
        let mut rename = Subst::new();
        let mut fresh_for = |b: &Name, rename: &mut Subst| {
            if self.avoid.contains(b) {
                let fresh = fresh_name(b, &taken);
                taken.insert(fresh.clone());
                rename.insert(b.clone(), Term::Var(fresh.clone()));
                fresh
            } else {
                b.clone()
            }
        };
        let x2 = fresh_for(x, &mut rename);
        let y2 = fresh_for(y, &mut rename);
        let body = rename.apply_dist(body);
        (x2, y2, inner.apply_dist(&body))
    }

    fn taken(&self, body: &Dist) -> BTreeSet<Name> {
        let mut taken = self.avoid.clone();
        body.collect_names(&mut taken);
        taken.extend(self.bindings.iter().map(|(y, _)| y.clone()));
        taken
    }
}

fn fresh_name(base: &str, taken: &BTreeSet<Name>) -> Name {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    (1..).map(|i| format!("{stem}{i}")).find(|n| !taken.contains(n)).expect("unbounded supply of names")
}

/// `t[x := v]`.
pub fn substitute(t: &Term, x: &str, v: &Term) -> Term {
    Subst::single(x, v.clone()).apply(t)
}

/// `Σᵢ Σⱼ αᵢβⱼ · tᵢ[x := vⱼ]`, canonicalized.
pub fn bilinear_substitute(d: &Dist, x: &str, v: &Dist) -> Result<Dist, DistError> {
    if let Some(bad) = v.terms().find(|w| !w.is_value()) {
        return Err(DistError::NotAValue(format!("{bad:?}")));
    }
    let mut out = Vec::with_capacity(d.len() * v.len());
    for (alpha, t) in d.summands() {
        for (beta, w) in v.summands() {
            out.push((alpha * beta, substitute(t, x, w)));
        }
    }
    Ok(Dist::new(out)?.canonicalize())
}
