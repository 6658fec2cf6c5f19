//! Bidirectional type checking with linear usage counting.
//!
//! Terms are checked against an expected type when one is known and
//! inferred otherwise. Distributions written with the linear notation are
//! folded back into the construct they came from (a superposed argument
//! under one operator, a superposed head under one `let`, a rank-one sum of
//! pairs, and so on) before the corresponding rule is applied.

mod derivation;
mod error;
mod ortho;
mod ty;

use std::collections::BTreeMap;

use crate::eval::Engine;
use crate::scalar::{approx_eq, tolerance, Scalar};
use crate::syntax::{Dist, Name, Term};
use crate::types::Type;

pub use derivation::{Derivation, Rule};
pub use error::{TypeError, TypeErrorKind};

use error::err;
use ortho::Branch;
use ty::{join, sub, Ty};

/// Duplicable and discardable: no `#` outside the right of an arrow.
pub fn is_flat(t: &Type) -> bool {
    t.is_flat()
}

/// Ordered bindings; later ones shadow earlier ones.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TypingContext {
    bindings: Vec<(Name, Type)>,
}

impl TypingContext {
    pub fn new() -> TypingContext {
        TypingContext::default()
    }

    pub fn with(mut self, x: impl Into<Name>, ty: Type) -> TypingContext {
        self.push(x, ty);
        self
    }

    pub fn push(&mut self, x: impl Into<Name>, ty: Type) {
        self.bindings.push((x.into(), ty));
    }

    pub fn get(&self, x: &str) -> Option<&Type> {
        self.bindings.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Type)> {
        self.bindings.iter().map(|(x, t)| (x, t))
    }
}

/// A successful check: the type assigned and how it was derived.
#[derive(Clone, Debug, PartialEq)]
pub struct Typing {
    pub ty: Type,
    pub derivation: Derivation,
}

/// Infers the type of a pure term.
pub fn check_pure(ctx: &TypingContext, t: &Term) -> Result<Typing, TypeError> {
    Checker::new(ctx).run(|c| c.pure(t, None))
}

/// Checks a pure term against a type.
pub fn check_pure_at(ctx: &TypingContext, t: &Term, expected: &Type) -> Result<Typing, TypeError> {
    Checker::new(ctx).run(|c| c.pure(t, Some(&expected.into())))
}

/// Checks a distribution against a type.
pub fn check_distribution(ctx: &TypingContext, d: &Dist, expected: &Type) -> Result<Typing, TypeError> {
    Checker::new(ctx).run(|c| c.dist(d, Some(&expected.into())))
}

/// Infers the type of a distribution.
pub fn infer_distribution(ctx: &TypingContext, d: &Dist) -> Result<Typing, TypeError> {
    Checker::new(ctx).run(|c| c.dist(d, None))
}

/// The type of a closed program.
pub fn type_of_program(d: &Dist) -> Result<Type, TypeError> {
    derive_program(d).map(|t| t.ty)
}

/// The type of a closed program, with its derivation.
pub fn derive_program(d: &Dist) -> Result<Typing, TypeError> {
    infer_distribution(&TypingContext::new(), d)
}

/// `ctx ⊢ (x1:t1 ⊢ v1 ⊥ x2:t2 ⊢ v2) : result`: both sides have the result
/// type and every closing of one side is orthogonal to every closing of the
/// other.
pub fn check_orthogonal_judgment(
    ctx: &TypingContext,
    left: (&str, &Type, &Dist),
    right: (&str, &Type, &Dist),
    result: &Type,
) -> Result<(), TypeError> {
    let mut c = Checker::new(ctx);
    let expected = Ty::from(result);
    let (x1, t1) = (left.0.to_string(), Ty::from(left.1));
    let (x2, t2) = (right.0.to_string(), Ty::from(right.1));
    let r1 = c.branch(&x1, &t1, left.2, Some(&expected))?;
    let r2 = c.branch(&x2, &t2, right.2, Some(&expected))?;
    let usage = c.merge_branches(r1.usage, r2.usage)?;
    c.finish(&usage)?;
    ortho::judge(
        &c.ctx,
        Branch { binder: &x1, binder_ty: &t1, body: left.2 },
        Branch { binder: &x2, binder_ty: &t2, body: right.2 },
        c.max_steps,
    )
}

type Usage = BTreeMap<Name, usize>;

fn add(into: &mut Usage, other: Usage) {
    for (x, n) in other {
        *into.entry(x).or_default() += n;
    }
}

struct Typed {
    ty: Ty,
    usage: Usage,
    deriv: Derivation,
}

impl Typed {
    fn leaf(rule: Rule, ty: Ty, usage: Usage) -> Typed {
        let deriv = Derivation::new(rule, ty.to_type(), Vec::new());
        Typed { ty, usage, deriv }
    }

    fn node(rule: Rule, ty: Ty, premises: Vec<Typed>) -> Typed {
        let mut usage = Usage::new();
        let mut derivs = Vec::with_capacity(premises.len());
        for p in premises {
            add(&mut usage, p.usage);
            derivs.push(p.deriv);
        }
        let deriv = Derivation::new(rule, ty.to_type(), derivs);
        Typed { ty, usage, deriv }
    }

    /// `A ≤ #A`, as a subtyping step.
    fn lift(self) -> Typed {
        if matches!(self.ty, Ty::Sharp(_)) {
            return self;
        }
        let ty = self.ty.sharpen();
        let deriv = Derivation::new(Rule::Sub, ty.to_type(), vec![self.deriv]);
        Typed { ty, usage: self.usage, deriv }
    }
}

#[derive(Clone, Copy)]
enum Part<'a> {
    Pure(&'a Term),
    Dist(&'a Dist),
}

fn mismatch(message: impl Into<String>) -> TypeError {
    err(TypeErrorKind::Mismatch, message)
}

fn known(expected: Option<&Ty>) -> Option<&Ty> {
    expected.filter(|e| **e != Ty::Hole)
}

struct Checker {
    ctx: Vec<(Name, Ty)>,
    max_steps: usize,
}

impl Checker {
    fn new(ctx: &TypingContext) -> Checker {
        let ctx = ctx.bindings.iter().map(|(x, t)| (x.clone(), Ty::from(t))).collect();
        Checker { ctx, max_steps: crate::eval::DEFAULT_MAX_STEPS }
    }

    fn run(mut self, f: impl FnOnce(&mut Checker) -> Result<Typed, TypeError>) -> Result<Typing, TypeError> {
        let typed = f(&mut self)?;
        self.finish(&typed.usage)?;
        Ok(Typing { ty: typed.ty.to_type(), derivation: typed.deriv })
    }

    /// Non-flat bindings of the outer context must each be used once.
    fn finish(&self, usage: &Usage) -> Result<(), TypeError> {
        let mut seen: Vec<&Name> = Vec::new();
        for (x, t) in self.ctx.iter().rev() {
            if seen.contains(&x) {
                continue;
            }
            seen.push(x);
            let n = usage.get(x).copied().unwrap_or(0);
            if !t.is_flat() && n != 1 {
                return Err(linearity(x, t, n));
            }
        }
        Ok(())
    }

    fn lookup(&self, x: &str) -> Option<&Ty> {
        self.ctx.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    /// Checks against `expected` by subsumption.
    fn conclude(&self, t: Typed, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        let Some(e) = known(expected) else {
            return Ok(t);
        };
        if t.ty == *e {
            return Ok(t);
        }
        if e.has_hole() {
            if let Some(ty) = ty::merge(&t.ty, e) {
                return Ok(Typed { ty, ..t });
            }
        }
        if !sub(&t.ty, e) {
            return Err(mismatch(format!("expected {e}, found {}", t.ty)));
        }
        let deriv = Derivation::new(Rule::Sub, e.to_type(), vec![t.deriv]);
        Ok(Typed { ty: e.clone(), usage: t.usage, deriv })
    }

    /// The body type for rules concluding `#C`: `Some(#D)` for an expected
    /// `#ⁿD`, `None` when inferring.
    fn sharp_target(&self, expected: Option<&Ty>) -> Result<Option<Ty>, TypeError> {
        let Some(e) = known(expected) else {
            return Ok(None);
        };
        match e.strip() {
            (_, Ty::Hole) => Ok(None),
            (0, _) => Err(mismatch(format!("expected {e}, but this term is in superposition and has a # type"))),
            (_, d) => Ok(Some(d.clone().sharpen())),
        }
    }

    fn part(&mut self, p: Part<'_>, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        match p {
            Part::Pure(t) => self.pure(t, expected),
            Part::Dist(d) => self.dist(d, expected),
        }
    }

    fn with_binding<T>(&mut self, x: &Name, ty: &Ty, f: impl FnOnce(&mut Checker) -> T) -> T {
        self.ctx.push((x.clone(), ty.clone()));
        let out = f(self);
        self.ctx.pop();
        out
    }

    /// Removes a binder's count, enforcing single use of non-flat binders.
    fn bind(&self, x: &Name, ty: &Ty, usage: &mut Usage) -> Result<(), TypeError> {
        let n = usage.remove(x).unwrap_or(0);
        if !ty.is_flat() && n != 1 {
            return Err(linearity(x, ty, n));
        }
        Ok(())
    }

    fn pure(&mut self, t: &Term, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        self.pure_inner(t, known(expected)).map_err(|e| e.about(t))
    }

    fn pure_inner(&mut self, t: &Term, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        match t {
            Term::Var(x) => {
                let ty = self
                    .lookup(x)
                    .ok_or_else(|| err(TypeErrorKind::UnboundVariable, format!("`{x}` is not bound")))?
                    .clone();
                let typed = Typed::leaf(Rule::Ax(x.clone()), ty, Usage::from([(x.clone(), 1)]));
                self.conclude(typed, expected)
            }
            Term::Void => self.conclude(Typed::leaf(Rule::Void, Ty::Unit, Usage::new()), expected),
            Term::Lam(x, a, body) => {
                let a = Ty::from(a);
                let body_expected = match expected.map(|e| (e, e.strip().1)) {
                    None | Some((_, Ty::Hole)) => None,
                    Some((e, Ty::Arrow(dom, cod))) => {
                        if !sub(dom, &a) {
                            return Err(mismatch(format!("expected {e}, found a function taking {a}")));
                        }
                        Some((**cod).clone())
                    }
                    Some((e, _)) => return Err(mismatch(format!("expected {e}, found a function"))),
                };
                let mut body = self.with_binding(x, &a, |c| c.dist(body, body_expected.as_ref()))?;
                self.bind(x, &a, &mut body.usage)?;
                let ty = Ty::arrow(a, body.ty.clone());
                self.conclude(Typed::node(Rule::Lam(x.clone()), ty, vec![body]), expected)
            }
            Term::Pair(v, w) => self.pair(Part::Pure(v), Part::Pure(w), expected),
            Term::Inl(v) => self.inj(true, Part::Pure(v), expected),
            Term::Inr(v) => self.inj(false, Part::Pure(v), expected),
            Term::App(f, s) => self.app(f, Part::Pure(s), expected),
            Term::Seq(h, tail) => self.seq(Part::Pure(h), tail, expected),
            Term::Let(x, y, h, body) => self.let_pair(x, y, Part::Pure(h), body, expected),
            Term::Match(h, x1, s1, x2, s2) => self.match_sum(Part::Pure(h), (x1, s1), (x2, s2), expected),
        }
    }

    fn pair(&mut self, v: Part<'_>, w: Part<'_>, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        let (e1, e2) = match expected.map(|e| (e, e.strip().1)) {
            None | Some((_, Ty::Hole)) => (None, None),
            Some((_, Ty::Prod(a, b))) => (Some((**a).clone()), Some((**b).clone())),
            Some((e, _)) => return Err(mismatch(format!("expected {e}, found a pair"))),
        };
        let a = self.part(v, e1.as_ref())?;
        let b = self.part(w, e2.as_ref())?;
        let ty = Ty::prod(a.ty.clone(), b.ty.clone());
        self.conclude(Typed::node(Rule::Pair, ty, vec![a, b]), expected)
    }

    fn inj(&mut self, left: bool, v: Part<'_>, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        let (e1, e2) = match expected.map(|e| (e, e.strip().1)) {
            None | Some((_, Ty::Hole)) => (Ty::Hole, Ty::Hole),
            Some((_, Ty::Sum(a, b))) => ((**a).clone(), (**b).clone()),
            Some((e, _)) => return Err(mismatch(format!("expected {e}, found an injection"))),
        };
        let (mine, other) = if left { (e1, e2) } else { (e2, e1) };
        let inner = self.part(v, Some(&mine))?;
        let (ty, rule) = if left {
            (Ty::sum(inner.ty.clone(), other), Rule::InL)
        } else {
            (Ty::sum(other, inner.ty.clone()), Rule::InR)
        };
        self.conclude(Typed::node(rule, ty, vec![inner]), expected)
    }

    fn app(&mut self, f: &Term, arg: Part<'_>, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        let op = self.pure(f, None)?;
        let Ty::Arrow(a, b) = op.ty.clone() else {
            return Err(mismatch(format!("cannot apply a term of type {}", op.ty)).about(f));
        };
        let arg = self.part(arg, Some(&a))?;
        self.conclude(Typed::node(Rule::App, *b, vec![op, arg]), expected)
    }

    fn seq(&mut self, head: Part<'_>, tail: &Dist, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        let h = self.part(head, None)?;
        let (m, core) = h.ty.strip();
        if !matches!(core, Ty::Unit | Ty::Hole) {
            return Err(mismatch(format!("the head of `;` has type {}, expected U or #U", h.ty)));
        }
        if m == 0 && matches!(head, Part::Pure(_)) {
            let t = self.dist(tail, expected)?;
            let ty = t.ty.clone();
            return Ok(Typed::node(Rule::PureSeq, ty, vec![h, t]));
        }
        let target = self.sharp_target(expected)?;
        let t = self.dist(tail, target.as_ref())?.lift();
        let ty = t.ty.clone();
        self.conclude(Typed::node(Rule::UnitarySeq, ty, vec![h.lift(), t]), expected)
    }

    fn let_pair(
        &mut self,
        x: &Name,
        y: &Name,
        head: Part<'_>,
        body: &Dist,
        expected: Option<&Ty>,
    ) -> Result<Typed, TypeError> {
        if x == y {
            return Err(mismatch(format!("`let` binds `{x}` twice")));
        }
        let h = self.part(head, None)?;
        let (m, core) = h.ty.strip();
        let (a, b) = match core {
            Ty::Prod(a, b) => ((**a).clone(), (**b).clone()),
            Ty::Hole => (Ty::Hole, Ty::Hole),
            _ => return Err(mismatch(format!("the head of `let` has type {}, expected a product", h.ty))),
        };
        let pure_rule = m == 0 && matches!(head, Part::Pure(_));
        let (a, b, target) = if pure_rule {
            (a, b, known(expected).cloned())
        } else {
            (a.sharpen(), b.sharpen(), self.sharp_target(expected)?)
        };
        let mut s = self.with_binding(x, &a, |c| c.with_binding(y, &b, |c| c.dist(body, target.as_ref())))?;
        self.bind(y, &b, &mut s.usage)?;
        self.bind(x, &a, &mut s.usage)?;
        if pure_rule {
            let ty = s.ty.clone();
            return Ok(Typed::node(Rule::PureLet, ty, vec![h, s]));
        }
        let s = s.lift();
        let ty = s.ty.clone();
        self.conclude(Typed::node(Rule::UnitaryLet, ty, vec![h.lift(), s]), expected)
    }

    fn match_sum(
        &mut self,
        head: Part<'_>,
        (x1, s1): (&Name, &Dist),
        (x2, s2): (&Name, &Dist),
        expected: Option<&Ty>,
    ) -> Result<Typed, TypeError> {
        let h = self.part(head, None)?;
        let (m, core) = h.ty.strip();
        let (a, b) = match core {
            Ty::Sum(a, b) => ((**a).clone(), (**b).clone()),
            Ty::Hole => (Ty::Hole, Ty::Hole),
            _ => return Err(mismatch(format!("the head of `match` has type {}, expected a sum", h.ty))),
        };
        let pure_rule = m == 0 && matches!(head, Part::Pure(_));
        let (a, b, target) = if pure_rule {
            (a, b, known(expected).cloned())
        } else {
            (a.sharpen(), b.sharpen(), self.sharp_target(expected)?)
        };
        let (r1, r2) = self.branches((x1, &a, s1), (x2, &b, s2), target.as_ref(), !pure_rule)?;
        ortho::judge(
            &self.ctx,
            Branch { binder: x1, binder_ty: &a, body: s1 },
            Branch { binder: x2, binder_ty: &b, body: s2 },
            self.max_steps,
        )?;
        let usage = self.merge_branches(r1.usage, r2.usage)?;
        let ty = r1.ty.clone();
        let (r1, r2) = (Typed { usage: Usage::new(), ..r1 }, Typed { usage, ..r2 });
        if pure_rule {
            return Ok(Typed::node(Rule::PureMatch, ty, vec![h, r1, r2]));
        }
        self.conclude(Typed::node(Rule::UnitaryMatch, ty, vec![h.lift(), r1, r2]), expected)
    }

    fn branch(&mut self, x: &Name, ty: &Ty, s: &Dist, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        let mut r = self.with_binding(x, ty, |c| c.dist(s, expected))?;
        self.bind(x, ty, &mut r.usage)?;
        Ok(r)
    }

    /// Types both branches at a common type: the expected one, or a join of
    /// the inferred ones.
    fn branches(
        &mut self,
        (x1, t1, s1): (&Name, &Ty, &Dist),
        (x2, t2, s2): (&Name, &Ty, &Dist),
        expected: Option<&Ty>,
        sharp: bool,
    ) -> Result<(Typed, Typed), TypeError> {
        let r1 = self.branch(x1, t1, s1, expected)?;
        let r2 = self.branch(x2, t2, s2, expected)?;
        let (r1, r2) = if sharp { (r1.lift(), r2.lift()) } else { (r1, r2) };
        if r1.ty == r2.ty {
            return Ok((r1, r2));
        }
        let j = join(&r1.ty, &r2.ty)
            .ok_or_else(|| mismatch(format!("the branches have incompatible types {} and {}", r1.ty, r2.ty)))?;
        let r1 = match self.conclude(r1, Some(&j)) {
            Ok(r) => r,
            Err(_) => self.branch(x1, t1, s1, Some(&j))?,
        };
        let r2 = match self.conclude(r2, Some(&j)) {
            Ok(r) => r,
            Err(_) => self.branch(x2, t2, s2, Some(&j))?,
        };
        if r1.ty != r2.ty {
            return Err(mismatch(format!("the branches have incompatible types {} and {}", r1.ty, r2.ty)));
        }
        Ok((r1, r2))
    }

    /// Branches share their context: a non-flat variable must be used the
    /// same number of times in both.
    fn merge_branches(&self, u1: Usage, mut u2: Usage) -> Result<Usage, TypeError> {
        let mut out = Usage::new();
        for (x, n1) in u1 {
            let n2 = u2.remove(&x).unwrap_or(0);
            self.merge_count(&x, n1, n2, &mut out)?;
        }
        for (x, n2) in u2 {
            self.merge_count(&x, 0, n2, &mut out)?;
        }
        Ok(out)
    }

    fn merge_count(&self, x: &Name, n1: usize, n2: usize, out: &mut Usage) -> Result<(), TypeError> {
        let flat = self.lookup(x).is_none_or(Ty::is_flat);
        if !flat && n1 != n2 {
            return Err(err(
                TypeErrorKind::LinearityViolation,
                format!("`{x}` is used {n1} times in one branch and {n2} in the other"),
            ));
        }
        out.insert(x.clone(), n1.max(n2));
        Ok(())
    }

    fn dist(&mut self, d: &Dist, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        let expected = known(expected);
        if let Some(t) = d.as_pure() {
            return self.pure(t, expected);
        }
        let canon = d.canonicalize();
        if let Some(t) = canon.as_pure() {
            return self.pure(t, expected);
        }
        let mut failure: Option<TypeError> = None;
        let mut note = |e: TypeError| {
            if failure.as_ref().is_none_or(|f| f.kind == TypeErrorKind::Mismatch) {
                failure = Some(e);
            }
        };
        let closed = canon.is_closed();
        if closed && canon.is_value() {
            match self.sup(&canon, expected) {
                Ok(t) => return Ok(t),
                Err(e) => note(e),
            }
        }
        if let Some(r) = self.unfold(&canon, expected) {
            match r {
                Ok(t) => return Ok(t),
                Err(e) => note(e),
            }
        }
        if closed && !canon.is_value() {
            match self.mixture(&canon, expected) {
                Ok(t) => return Ok(t),
                Err(e) => note(e),
            }
        }
        Err(failure.unwrap_or_else(|| mismatch(format!("cannot type the superposition `{canon}`"))))
    }

    /// The core `A` of a `#A` expected for a superposition.
    fn sup_target(&self, expected: Option<&Ty>) -> Result<Option<Ty>, TypeError> {
        Ok(self.sharp_target(expected)?.map(|t| match t {
            Ty::Sharp(a) => *a,
            other => other,
        }))
    }

    /// A normalized sum of distinct closed pure values, typed `#A`.
    fn sup(&mut self, canon: &Dist, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        let target = self.sup_target(expected)?;
        if target.as_ref().is_some_and(Ty::is_arrow_core) {
            return Err(sup_at_arrow());
        }
        let vals: Vec<&Term> = canon.terms().collect();
        let (core, typed) = match target {
            Some(a) => {
                let typed = vals.iter().map(|v| self.pure(v, Some(&a))).collect::<Result<Vec<_>, _>>()?;
                (a, typed)
            }
            None => {
                let typed = vals.iter().map(|v| self.pure(v, None)).collect::<Result<Vec<_>, _>>()?;
                let a = self.join_all(&typed, "superposed values")?;
                if a.is_arrow_core() {
                    return Err(sup_at_arrow());
                }
                let typed = typed
                    .into_iter()
                    .zip(&vals)
                    .map(|(t, v)| match self.conclude(t, Some(&a)) {
                        Ok(t) => Ok(t),
                        Err(_) => self.pure(v, Some(&a)),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                (a, typed)
            }
        };
        if core.is_arrow_core() {
            return Err(sup_at_arrow());
        }
        let n = canon.coefficient_norm_sqr();
        if !approx_eq(Scalar::new(n, 0.0), Scalar::new(1.0, 0.0)) {
            return Err(err(
                TypeErrorKind::NormViolation,
                format!("the coefficients have squared norm {n}, expected 1 (within {})", tolerance()),
            ));
        }
        let ty = Ty::Sharp(Box::new(core));
        self.conclude(Typed::node(Rule::Sup(n), ty, typed), expected)
    }

    fn join_all(&self, typed: &[Typed], what: &str) -> Result<Ty, TypeError> {
        let mut acc = typed[0].ty.clone();
        for t in &typed[1..] {
            acc = join(&acc, &t.ty)
                .ok_or_else(|| mismatch(format!("{what} have incompatible types {acc} and {}", t.ty)))?;
        }
        Ok(acc)
    }

    /// A closed superposition that is not yet a value: each summand is typed
    /// on its own at `#A` and the normal form of the whole must have type `A`.
    fn mixture(&mut self, canon: &Dist, expected: Option<&Ty>) -> Result<Typed, TypeError> {
        let terms: Vec<&Term> = canon.terms().collect();
        let nf = Engine::default()
            .with_max_steps(self.max_steps)
            .normalize(canon)
            .map_err(|e| mismatch(format!("the superposition does not reduce to a value: {e}")))?;
        let candidates = match expected {
            Some(t) => vec![t.clone()],
            None => {
                let typed = terms.iter().map(|s| self.pure(s, None)).collect::<Result<Vec<_>, _>>()?;
                let j = self.join_all(&typed, "superposed terms")?;
                let sharp = j.clone().sharpen();
                if sharp == j {
                    vec![j]
                } else {
                    vec![j, sharp]
                }
            }
        };
        let mut last = None;
        for ty in candidates {
            match self.mixture_at(&terms, &nf, &ty) {
                Ok(t) => return self.conclude(t, expected),
                Err(e) => last = Some(e),
            }
        }
        Err(last.expect("at least one candidate"))
    }

    fn mixture_at(&mut self, terms: &[&Term], nf: &Dist, ty: &Ty) -> Result<Typed, TypeError> {
        let summand_ty = ty.clone().sharpen();
        let mut typed = terms.iter().map(|s| self.pure(s, Some(&summand_ty))).collect::<Result<Vec<_>, _>>()?;
        typed.push(self.dist(nf, Some(ty))?);
        Ok(Typed::node(Rule::Mixture, ty.clone(), typed))
    }

    /// Reads a distribution as the linear extension of one construct.
    /// `None` when no construct fits its shape.
    fn unfold(&mut self, canon: &Dist, expected: Option<&Ty>) -> Option<Result<Typed, TypeError>> {
        let summands = canon.summands();
        let regroup = |f: &dyn Fn(&Term) -> Option<Term>| -> Option<Dist> {
            let parts = summands.iter().map(|(c, t)| f(t).map(|u| (*c, u))).collect::<Option<Vec<_>>>()?;
            Dist::new(parts).ok()
        };
        match &summands[0].1 {
            Term::App(f0, _) => {
                if !summands.iter().all(|(_, t)| matches!(t, Term::App(..))) {
                    return None;
                }
                if !summands.iter().all(|(_, t)| matches!(t, Term::App(f, _) if f == f0)) {
                    return Some(Err(err(
                        TypeErrorKind::HeadNotPure,
                        "a superposition of applications must share one operator",
                    )));
                }
                let arg = regroup(&|t| match t {
                    Term::App(_, s) => Some((**s).clone()),
                    _ => None,
                })?;
                Some(self.app(f0, Part::Dist(&arg), expected))
            }
            Term::Seq(_, tail0) => {
                let head = regroup(&|t| match t {
                    Term::Seq(h, tail) if tail == tail0 => Some((**h).clone()),
                    _ => None,
                })?;
                Some(self.seq(Part::Dist(&head), tail0, expected))
            }
            Term::Let(x0, y0, _, body0) => {
                let head = regroup(&|t| match t {
                    Term::Let(x, y, h, body) if x == x0 && y == y0 && body == body0 => Some((**h).clone()),
                    _ => None,
                })?;
                Some(self.let_pair(x0, y0, Part::Dist(&head), body0, expected))
            }
            Term::Match(_, x1, s1, x2, s2) => {
                let head = regroup(&|t| match t {
                    Term::Match(h, a, t1, b, t2) if a == x1 && b == x2 && t1 == s1 && t2 == s2 => Some((**h).clone()),
                    _ => None,
                })?;
                Some(self.match_sum(Part::Dist(&head), (x1, s1), (x2, s2), expected))
            }
            Term::Inl(_) | Term::Inr(_) => {
                let left = matches!(summands[0].1, Term::Inl(_));
                let inner = regroup(&|t| match (left, t) {
                    (true, Term::Inl(v)) | (false, Term::Inr(v)) => Some((**v).clone()),
                    _ => None,
                })?;
                Some(self.inj(left, Part::Dist(&inner), expected))
            }
            Term::Pair(..) => {
                let mut first_error = None;
                for (v, w) in factor_pairs(canon)? {
                    match self.pair(Part::Dist(&v), Part::Dist(&w), expected) {
                        Ok(t) => return Some(Ok(t)),
                        Err(e) => {
                            first_error.get_or_insert(e);
                        }
                    }
                }
                first_error.map(Err)
            }
            _ => None,
        }
    }
}

/// Writes `Σᵢⱼ αᵢβⱼ·(vᵢ, wⱼ)` as the pair of `Σαᵢ·vᵢ` and `Σβⱼ·wⱼ`, if the
/// coefficient matrix has rank one.
/// A lone pair `c·(v, w)` may carry its scalar on either side.
fn factor_pairs(canon: &Dist) -> Option<Vec<(Dist, Dist)>> {
    let mut pairs = Vec::with_capacity(canon.len());
    for (c, t) in canon.summands() {
        let Term::Pair(l, r) = t else { return None };
        pairs.push((*c, &**l, &**r));
    }
    let mut lefts: Vec<&Term> = Vec::new();
    let mut rights: Vec<&Term> = Vec::new();
    for (_, l, r) in &pairs {
        if !lefts.contains(l) {
            lefts.push(l);
        }
        if !rights.contains(r) {
            rights.push(r);
        }
    }
    let mut out = Vec::new();
    if lefts.len() == 1 {
        let w = Dist::new(pairs.iter().map(|(c, _, r)| (*c, (*r).clone())).collect()).ok()?;
        out.push((Dist::pure(lefts[0].clone()), w));
    }
    if rights.len() == 1 {
        let v = Dist::new(pairs.iter().map(|(c, l, _)| (*c, (*l).clone())).collect()).ok()?;
        out.push((v, Dist::pure(rights[0].clone())));
    }
    if !out.is_empty() {
        return Some(out);
    }
    if lefts.len() * rights.len() != pairs.len() {
        return None;
    }
    let index = |xs: &[&Term], t: &Term| xs.iter().position(|u| *u == t).expect("collected above");
    let zero = Scalar::new(0.0, 0.0);
    let mut m = vec![vec![zero; rights.len()]; lefts.len()];
    for (c, l, r) in &pairs {
        m[index(&lefts, l)][index(&rights, r)] = *c;
    }
    let (i0, j0) = (0..lefts.len())
        .flat_map(|i| (0..rights.len()).map(move |j| (i, j)))
        .max_by(|&(a, b), &(c, d)| m[a][b].norm().total_cmp(&m[c][d].norm()))?;
    if m[i0][j0].norm() == 0.0 {
        return None;
    }
    let row_norm = m[i0].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let beta: Vec<Scalar> = m[i0].iter().map(|c| c / row_norm).collect();
    let alpha: Vec<Scalar> = (0..lefts.len()).map(|i| m[i][j0] / beta[j0]).collect();
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !approx_eq(alpha[i] * beta[j], *c) {
                return None;
            }
        }
    }
    let v = Dist::new(alpha.into_iter().zip(lefts).map(|(a, t)| (a, t.clone())).collect()).ok()?;
    let w = Dist::new(beta.into_iter().zip(rights).map(|(b, t)| (b, t.clone())).collect()).ok()?;
    Some(vec![(v, w)])
}

fn linearity(x: &Name, ty: &Ty, n: usize) -> TypeError {
    err(
        TypeErrorKind::LinearityViolation,
        format!("`{x}` has non-duplicable type {ty} and must be used exactly once, but is used {n} times"),
    )
}

fn sup_at_arrow() -> TypeError {
    err(TypeErrorKind::SupAtArrowType, "functions cannot be superposed")
}
