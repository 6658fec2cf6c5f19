use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::dist::Dist;
use crate::scalar::cmp_scalar;
use crate::types::Type;

pub type Name = String;

/// A pure term. Pairs and injections hold pure values only, and both sides
/// of an application are pure terms; [`Term::is_well_formed`] checks this.
///
/// `PartialEq`/`Ord` are alpha-equivalence and a fixed total order on
/// alpha-classes (binders compared positionally). Distributions nested under
/// binders are compared as written, summand by summand.
#[derive(Clone, Debug)]
pub enum Term {
    Var(Name),
    Lam(Name, Type, Dist),
    Void,
    Pair(Box<Term>, Box<Term>),
    Inl(Box<Term>),
    Inr(Box<Term>),
    App(Box<Term>, Box<Term>),
    Seq(Box<Term>, Dist),
    Let(Name, Name, Box<Term>, Dist),
    Match(Box<Term>, Name, Dist, Name, Dist),
}

impl Term {
    pub fn var(name: impl Into<Name>) -> Term {
        Term::Var(name.into())
    }

    pub fn lam(x: impl Into<Name>, ty: Type, body: impl Into<Dist>) -> Term {
        Term::Lam(x.into(), ty, body.into())
    }

    /// Panics if either side is not a value.
    pub fn pair(v: Term, w: Term) -> Term {
        assert!(v.is_value() && w.is_value(), "pair components must be values");
        Term::Pair(Box::new(v), Box::new(w))
    }

    pub fn inl(v: Term) -> Term {
        assert!(v.is_value(), "inl expects a value");
        Term::Inl(Box::new(v))
    }

    pub fn inr(v: Term) -> Term {
        assert!(v.is_value(), "inr expects a value");
        Term::Inr(Box::new(v))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn seq(head: Term, tail: impl Into<Dist>) -> Term {
        Term::Seq(Box::new(head), tail.into())
    }

    pub fn let_pair(x: impl Into<Name>, y: impl Into<Name>, t: Term, body: impl Into<Dist>) -> Term {
        Term::Let(x.into(), y.into(), Box::new(t), body.into())
    }

    pub fn match_sum(
        t: Term,
        x1: impl Into<Name>,
        s1: impl Into<Dist>,
        x2: impl Into<Name>,
        s2: impl Into<Dist>,
    ) -> Term {
        Term::Match(Box::new(t), x1.into(), s1.into(), x2.into(), s2.into())
    }

    /// `0 = inl *`.
    pub fn zero() -> Term {
        Term::inl(Term::Void)
    }

    /// `1 = inr *`.
    pub fn one() -> Term {
        Term::inr(Term::Void)
    }

    pub fn is_value(&self) -> bool {
        match self {
            Term::Var(_) | Term::Lam(..) | Term::Void => true,
            Term::Pair(v, w) => v.is_value() && w.is_value(),
            Term::Inl(v) | Term::Inr(v) => v.is_value(),
            Term::App(..) | Term::Seq(..) | Term::Let(..) | Term::Match(..) => false,
        }
    }

    /// Checks the grammar invariants recursively, including nested
    /// distributions.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Term::Var(_) | Term::Void => true,
            Term::Lam(_, _, body) => body.is_well_formed(),
            Term::Pair(v, w) => v.is_value() && w.is_value() && v.is_well_formed() && w.is_well_formed(),
            Term::Inl(v) | Term::Inr(v) => v.is_value() && v.is_well_formed(),
            Term::App(f, a) => f.is_well_formed() && a.is_well_formed(),
            Term::Seq(t, s) => t.is_well_formed() && s.is_well_formed(),
            Term::Let(_, _, t, s) => t.is_well_formed() && s.is_well_formed(),
            Term::Match(t, _, s1, _, s2) => t.is_well_formed() && s1.is_well_formed() && s2.is_well_formed(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub(crate) fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(&x.as_str()) {
                    out.insert(x.clone());
                }
            }
            Term::Void => {}
            Term::Lam(x, _, body) => {
                bound.push(x);
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::Pair(a, b) | Term::App(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Inl(v) | Term::Inr(v) => v.collect_free(bound, out),
            Term::Seq(t, s) => {
                t.collect_free(bound, out);
                s.collect_free(bound, out);
            }
            Term::Let(x, y, t, s) => {
                t.collect_free(bound, out);
                bound.push(x);
                bound.push(y);
                s.collect_free(bound, out);
                bound.truncate(bound.len() - 2);
            }
            Term::Match(t, x1, s1, x2, s2) => {
                t.collect_free(bound, out);
                bound.push(x1);
                s1.collect_free(bound, out);
                bound.pop();
                bound.push(x2);
                s2.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every name occurring in the term, bound or free.
    pub(crate) fn collect_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Void => {}
            Term::Lam(x, _, body) => {
                out.insert(x.clone());
                body.collect_names(out);
            }
            Term::Pair(a, b) | Term::App(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Term::Inl(v) | Term::Inr(v) => v.collect_names(out),
            Term::Seq(t, s) => {
                t.collect_names(out);
                s.collect_names(out);
            }
            Term::Let(x, y, t, s) => {
                out.insert(x.clone());
                out.insert(y.clone());
                t.collect_names(out);
                s.collect_names(out);
            }
            Term::Match(t, x1, s1, x2, s2) => {
                out.insert(x1.clone());
                out.insert(x2.clone());
                t.collect_names(out);
                s1.collect_names(out);
                s2.collect_names(out);
            }
        }
    }

    /// Number of syntax nodes, nested distributions included.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Void => 1,
            Term::Lam(_, _, body) => 1 + body.size(),
            Term::Pair(a, b) | Term::App(a, b) => 1 + a.size() + b.size(),
            Term::Inl(v) | Term::Inr(v) => 1 + v.size(),
            Term::Seq(t, s) | Term::Let(_, _, t, s) => 1 + t.size() + s.size(),
            Term::Match(t, _, s1, _, s2) => 1 + t.size() + s1.size() + s2.size(),
        }
    }

    fn tag(&self) -> u8 {
        match self {
            Term::Var(_) => 0,
            Term::Lam(..) => 1,
            Term::Void => 2,
            Term::Pair(..) => 3,
            Term::Inl(_) => 4,
            Term::Inr(_) => 5,
            Term::App(..) => 6,
            Term::Seq(..) => 7,
            Term::Let(..) => 8,
            Term::Match(..) => 9,
        }
    }

    pub fn alpha_cmp(&self, other: &Term) -> Ordering {
        cmp_terms(self, &mut Vec::new(), other, &mut Vec::new())
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.alpha_cmp(other) == Ordering::Equal
    }
}

impl Eq for Term {}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alpha_cmp(other)
    }
}

/// Position of `x` counted from the innermost binder.
fn de_bruijn(env: &[&str], x: &str) -> Option<usize> {
    env.iter().rev().position(|b| *b == x)
}

fn cmp_vars(a: &str, ea: &[&str], b: &str, eb: &[&str]) -> Ordering {
    match (de_bruijn(ea, a), de_bruijn(eb, b)) {
        (Some(i), Some(j)) => i.cmp(&j),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.cmp(b),
    }
}

pub(crate) fn cmp_terms<'a, 'b>(a: &'a Term, ea: &mut Vec<&'a str>, b: &'b Term, eb: &mut Vec<&'b str>) -> Ordering {
    let by_tag = a.tag().cmp(&b.tag());
    if by_tag != Ordering::Equal {
        return by_tag;
    }
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => cmp_vars(x, ea, y, eb),
        (Term::Void, Term::Void) => Ordering::Equal,
        (Term::Lam(x, ta, ba), Term::Lam(y, tb, bb)) => ta.cmp(tb).then_with(|| {
            ea.push(x);
            eb.push(y);
            let ord = cmp_dists(ba, ea, bb, eb);
            ea.pop();
            eb.pop();
            ord
        }),
        (Term::Pair(a1, a2), Term::Pair(b1, b2)) | (Term::App(a1, a2), Term::App(b1, b2)) => {
            cmp_terms(a1, ea, b1, eb).then_with(|| cmp_terms(a2, ea, b2, eb))
        }
        (Term::Inl(v), Term::Inl(w)) | (Term::Inr(v), Term::Inr(w)) => cmp_terms(v, ea, w, eb),
        (Term::Seq(t1, s1), Term::Seq(t2, s2)) => cmp_terms(t1, ea, t2, eb).then_with(|| cmp_dists(s1, ea, s2, eb)),
        (Term::Let(x1, y1, t1, s1), Term::Let(x2, y2, t2, s2)) => cmp_terms(t1, ea, t2, eb).then_with(|| {
            ea.push(x1);
            ea.push(y1);
            eb.push(x2);
            eb.push(y2);
            let ord = cmp_dists(s1, ea, s2, eb);
            ea.truncate(ea.len() - 2);
            eb.truncate(eb.len() - 2);
            ord
        }),
        (Term::Match(t1, x1, l1, y1, r1), Term::Match(t2, x2, l2, y2, r2)) => cmp_terms(t1, ea, t2, eb)
            .then_with(|| {
                ea.push(x1);
                eb.push(x2);
                let ord = cmp_dists(l1, ea, l2, eb);
                ea.pop();
                eb.pop();
                ord
            })
            .then_with(|| {
                ea.push(y1);
                eb.push(y2);
                let ord = cmp_dists(r1, ea, r2, eb);
                ea.pop();
                eb.pop();
                ord
            }),
        _ => unreachable!("tags already compared"),
    }
}

pub(crate) fn cmp_dists<'a, 'b>(a: &'a Dist, ea: &mut Vec<&'a str>, b: &'b Dist, eb: &mut Vec<&'b str>) -> Ordering {
    let (sa, sb) = (a.summands(), b.summands());
    sa.len().cmp(&sb.len()).then_with(|| {
        for ((ca, ta), (cb, tb)) in sa.iter().zip(sb) {
            let ord = cmp_scalar(*ca, *cb).then_with(|| cmp_terms(ta, ea, tb, eb));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    })
}
