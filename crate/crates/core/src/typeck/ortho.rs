//! Deciding that two match branches stay orthogonal for every closing
//! substitution.
//!
//! Three attempts, in order:
//! 1. every free variable ranges over finitely many pure values, so each side
//!    is closed in every possible way, normalized, and all pairs compared
//!    (flat variables of the shared context take the same value on both sides);
//! 2. both sides are values that carry opposite injections at a common
//!    position of every summand;
//! 3. otherwise the judgment is not derivable here and the match is rejected.

use std::collections::BTreeSet;

use crate::eval::Engine;
use crate::inner::orthogonal;
use crate::syntax::{Dist, Name, Subst, Term};

use super::error::{err, TypeError, TypeErrorKind};
use super::ty::Ty;

/// Closings tried per side before giving up on enumeration.
const MAX_CLOSINGS: usize = 512;
/// Pairs of closed branches compared, in total.
const MAX_PAIRS: usize = 1 << 16;

/// One side of the judgment: the branch binder with its type, and the body.
pub(crate) struct Branch<'a> {
    pub binder: &'a Name,
    pub binder_ty: &'a Ty,
    pub body: &'a Dist,
}

pub(crate) fn judge(
    ctx: &[(Name, Ty)],
    left: Branch<'_>,
    right: Branch<'_>,
    max_steps: usize,
) -> Result<(), TypeError> {
    if let Some(result) = by_enumeration(ctx, &left, &right, max_steps) {
        return result;
    }
    if left.body.is_value() && right.body.is_value() {
        if split_by_injection(left.body, right.body) {
            return Ok(());
        }
        return Err(err(
            TypeErrorKind::OrthogonalityUndecided,
            "cannot show the branches orthogonal for every value of their free variables",
        ));
    }
    Err(err(
        TypeErrorKind::OrthogonalityUndecided,
        "the branches are not values and their free variables cannot be enumerated",
    ))
}

/// Flat variables of the shared context are closed once for both sides: they
/// only ever receive pure values. Binders and non-flat variables are closed
/// independently on each side. `None` if something is not enumerable.
fn by_enumeration(
    ctx: &[(Name, Ty)],
    left: &Branch<'_>,
    right: &Branch<'_>,
    max_steps: usize,
) -> Option<Result<(), TypeError>> {
    let mut shared = BTreeSet::new();
    for b in [left, right] {
        for x in b.body.free_vars() {
            if x != *b.binder && lookup(ctx, b, &x).is_some_and(Ty::is_flat) {
                shared.insert(x);
            }
        }
    }
    let fixed = assignments(shared.iter().map(|x| (x, lookup_ctx(ctx, x))), MAX_CLOSINGS)?;
    let mut pairs = 0usize;
    let mut plans = Vec::with_capacity(fixed.len());
    for s in &fixed {
        let l = restrict(s, left.binder).apply_dist(left.body);
        let r = restrict(s, right.binder).apply_dist(right.body);
        let (cl, cr) = (closings(ctx, left, &l)?, closings(ctx, right, &r)?);
        pairs += cl.len() * cr.len();
        if pairs > MAX_PAIRS {
            return None;
        }
        plans.push((s, l, cl, r, cr));
    }
    let mut engine = Engine::default().with_max_steps(max_steps);
    for (s, l, cl, r, cr) in plans {
        let n1 = match closed_forms(&l, &cl, &mut engine) {
            Ok(n) => n,
            Err(e) => return Some(Err(e)),
        };
        let n2 = match closed_forms(&r, &cr, &mut engine) {
            Ok(n) => n,
            Err(e) => return Some(Err(e)),
        };
        for (d1, s1) in n1.iter().zip(&cl) {
            for (d2, s2) in n2.iter().zip(&cr) {
                if !orthogonal(d1, d2).expect("normal forms are values") {
                    let (w1, w2) = ([s.as_slice(), s1].concat(), [s.as_slice(), s2].concat());
                    return Some(Err(err(
                        TypeErrorKind::OrthogonalityFailure,
                        format!(
                            "branches overlap: `{d1}`{} is not orthogonal to `{d2}`{}",
                            describe(&w1),
                            describe(&w2)
                        ),
                    )));
                }
            }
        }
    }
    Some(Ok(()))
}

fn restrict(s: &[(Name, Term)], binder: &Name) -> Subst {
    let mut theta = Subst::new();
    for (x, v) in s.iter().filter(|(x, _)| x != binder) {
        theta.insert(x.clone(), v.clone());
    }
    theta
}

fn describe(s: &[(Name, Term)]) -> String {
    if s.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = s.iter().map(|(x, v)| format!("{x} := {v}")).collect();
    format!(" (with {})", parts.join(", "))
}

fn lookup<'a>(ctx: &'a [(Name, Ty)], branch: &'a Branch<'_>, x: &str) -> Option<&'a Ty> {
    if branch.binder == x {
        return Some(branch.binder_ty);
    }
    lookup_ctx(ctx, x)
}

fn lookup_ctx<'a>(ctx: &'a [(Name, Ty)], x: &str) -> Option<&'a Ty> {
    ctx.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
}

/// Every assignment of pure values to the remaining free variables of one
/// side, or `None` if some variable has a non-enumerable type.
fn closings(ctx: &[(Name, Ty)], branch: &Branch<'_>, body: &Dist) -> Option<Vec<Vec<(Name, Term)>>> {
    let fv = body.free_vars();
    assignments(fv.iter().map(|x| (x, lookup(ctx, branch, x))), MAX_CLOSINGS)
}

fn assignments<'a>(
    vars: impl Iterator<Item = (&'a Name, Option<&'a Ty>)>,
    cap: usize,
) -> Option<Vec<Vec<(Name, Term)>>> {
    let mut out: Vec<Vec<(Name, Term)>> = vec![Vec::new()];
    for (x, ty) in vars {
        let values = pure_values(ty?, cap)?;
        if out.len() * values.len() > cap {
            return None;
        }
        out = out
            .into_iter()
            .flat_map(|s| {
                values.iter().map(move |v| {
                    let mut s = s.clone();
                    s.push((x.clone(), v.clone()));
                    s
                })
            })
            .collect();
    }
    Some(out)
}

/// The closed pure values of a type, if there are at most `cap`.
/// A `#A` variable still only ever receives pure values of `A`.
pub(crate) fn pure_values(ty: &Ty, cap: usize) -> Option<Vec<Term>> {
    let out = match ty {
        // a hole only types a binder of a branch that is never taken
        Ty::Unit | Ty::Hole => vec![Term::Void],
        Ty::Arrow(..) => return None,
        Ty::Sharp(a) => return pure_values(a, cap),
        Ty::Sum(a, b) => {
            let mut out: Vec<Term> = pure_values(a, cap)?.into_iter().map(Term::inl).collect();
            out.extend(pure_values(b, cap)?.into_iter().map(Term::inr));
            out
        }
        Ty::Prod(a, b) => {
            let (xs, ys) = (pure_values(a, cap)?, pure_values(b, cap)?);
            if xs.len() * ys.len() > cap {
                return None;
            }
            xs.iter().flat_map(|x| ys.iter().map(move |y| Term::pair(x.clone(), y.clone()))).collect()
        }
    };
    (out.len() <= cap).then_some(out)
}

fn closed_forms(body: &Dist, closings: &[Vec<(Name, Term)>], engine: &mut Engine) -> Result<Vec<Dist>, TypeError> {
    closings
        .iter()
        .map(|s| {
            let mut theta = Subst::new();
            for (x, v) in s {
                theta.insert(x.clone(), v.clone());
            }
            let closed = theta.apply_dist(body);
            if closed.is_value() {
                return Ok(closed.canonicalize());
            }
            engine.normalize(&closed).map_err(|e| {
                err(TypeErrorKind::OrthogonalityUndecided, format!("a closed instance of a branch did not reduce: {e}"))
            })
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Fst,
    Snd,
    Under,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tag {
    L,
    R,
}

fn tag_at(t: &Term, path: &[Step]) -> Option<Tag> {
    let mut t = t;
    for step in path {
        t = match (step, t) {
            (Step::Fst, Term::Pair(a, _)) | (Step::Snd, Term::Pair(_, a)) => a,
            (Step::Under, Term::Inl(a) | Term::Inr(a)) => a,
            _ => return None,
        };
    }
    match t {
        Term::Inl(_) => Some(Tag::L),
        Term::Inr(_) => Some(Tag::R),
        _ => None,
    }
}

fn injection_paths(t: &Term, prefix: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
    match t {
        Term::Pair(a, b) => {
            prefix.push(Step::Fst);
            injection_paths(a, prefix, out);
            prefix.pop();
            prefix.push(Step::Snd);
            injection_paths(b, prefix, out);
            prefix.pop();
        }
        Term::Inl(a) | Term::Inr(a) => {
            out.push(prefix.clone());
            prefix.push(Step::Under);
            injection_paths(a, prefix, out);
            prefix.pop();
        }
        _ => {}
    }
}

/// A position where every summand on one side is `inl` and every summand on
/// the other is `inr`. Such values are orthogonal whatever the variables are.
fn split_by_injection(v1: &Dist, v2: &Dist) -> bool {
    let first = &v1.summands()[0].1;
    let mut paths = Vec::new();
    injection_paths(first, &mut Vec::new(), &mut paths);
    paths.iter().any(|p| {
        let Some(tag) = tag_at(first, p) else {
            return false;
        };
        let other = if tag == Tag::L { Tag::R } else { Tag::L };
        v1.terms().all(|t| tag_at(t, p) == Some(tag)) && v2.terms().all(|t| tag_at(t, p) == Some(other))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_program;

    fn d(s: &str) -> Dist {
        parse_program(s).unwrap()
    }

    fn bit() -> Ty {
        Ty::sum(Ty::Unit, Ty::Unit)
    }

    #[test]
    fn injection_split_on_open_values() {
        assert!(split_by_injection(&d("(inl *, f)"), &d("(inr *, g)")));
        assert!(split_by_injection(&d("(x, inl y)"), &d("sqrt2 * (z, inr *) - sqrt2 * (w, inr w)")));
        assert!(!split_by_injection(&d("(inl *, f)"), &d("(inl *, g)")));
        assert!(!split_by_injection(&d("f"), &d("g")));
    }

    #[test]
    fn enumeration_covers_sharp_binders() {
        let (x, b) = ("x".to_string(), bit().sharpen());
        let left = Branch { binder: &x, binder_ty: &b, body: &d("(x, inl *)") };
        let right = Branch { binder: &x, binder_ty: &b, body: &d("(x, inr *)") };
        assert!(judge(&[], left, right, 1000).is_ok());
        let left = Branch { binder: &x, binder_ty: &b, body: &d("x") };
        let right = Branch { binder: &x, binder_ty: &b, body: &d("x") };
        let e = judge(&[], left, right, 1000).unwrap_err();
        assert_eq!(e.kind, TypeErrorKind::OrthogonalityFailure);
    }

    #[test]
    fn functions_are_not_enumerated() {
        let (x, f) = ("x".to_string(), Ty::arrow(bit(), bit()));
        let left = Branch { binder: &x, binder_ty: &f, body: &d("x inl *") };
        let right = Branch { binder: &x, binder_ty: &f, body: &d("x inr *") };
        let e = judge(&[], left, right, 1000).unwrap_err();
        assert_eq!(e.kind, TypeErrorKind::OrthogonalityUndecided);
    }

    #[test]
    fn value_counts() {
        assert_eq!(pure_values(&Ty::prod(bit(), Ty::prod(bit(), bit())), 100).unwrap().len(), 8);
        assert!(pure_values(&Ty::prod(bit(), bit()), 3).is_none());
        assert!(pure_values(&Ty::arrow(Ty::Unit, Ty::Unit), 10).is_none());
    }
}
