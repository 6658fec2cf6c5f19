//! Call-by-pure-value small-step reduction on distributions.
//!
//! Redexes are beta, `*; s`, `let (x, y) = (v, w) in s`, and `match` on an
//! injection. Inside an application the argument is reduced before the
//! operator. Heads of `;`, `let` and `match` reduce in place and the result
//! is pushed back through the linear notation. Abstraction bodies are never
//! reduced. After every step the distribution is canonicalized.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::syntax::{mk_app, mk_let, mk_match, mk_seq, Dist, Subst, Term};

pub const DEFAULT_MAX_STEPS: usize = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub enum StepResult {
    Stepped(Dist),
    /// Every summand is a value.
    NormalForm,
    Stuck(Term, String),
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum EvalError {
    #[error("no normal form within {0} steps")]
    StepLimitExceeded(usize),
    #[error("stuck on `{term}`: {reason}")]
    Stuck { term: Box<Term>, reason: String },
}

/// Which non-value summand is reduced next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    /// Uniformly random among the non-value summands, seeded.
    Random(u64),
}

enum Reduct {
    Value,
    Step(Dist),
    Stuck(Term, String),
}

fn stuck(t: &Term, reason: &str) -> Reduct {
    Reduct::Stuck(t.clone(), reason.to_string())
}

fn reduce(t: &Term) -> Reduct {
    match t {
        Term::Var(_) | Term::Lam(..) | Term::Void | Term::Pair(..) | Term::Inl(_) | Term::Inr(_) => Reduct::Value,
        Term::App(op, arg) => {
            if !arg.is_value() {
                return match reduce(arg) {
                    Reduct::Step(r) => Reduct::Step(mk_app(op, &r)),
                    other => other,
                };
            }
            if !op.is_value() {
                return match reduce(op) {
                    Reduct::Step(r) => match r.summands() {
                        [(alpha, f)] => Reduct::Step(Dist::scaled(*alpha, Term::app(f.clone(), (**arg).clone()))),
                        _ => stuck(t, "operator reduced to a superposition"),
                    },
                    other => other,
                };
            }
            match &**op {
                Term::Lam(x, _, body) => Reduct::Step(Subst::single(x.clone(), (**arg).clone()).apply_dist(body)),
                Term::Var(_) => stuck(t, "application of a free variable"),
                _ => stuck(t, "application of a non-abstraction"),
            }
        }
        Term::Seq(head, tail) => match &**head {
            Term::Void => Reduct::Step(tail.clone()),
            h if h.is_value() => stuck(t, "sequencing on a value other than *"),
            h => match reduce(h) {
                Reduct::Step(r) => Reduct::Step(mk_seq(&r, tail)),
                other => other,
            },
        },
        Term::Let(x, y, head, body) => match &**head {
            Term::Pair(v, w) => {
                let mut s = Subst::new();
                s.insert(x.clone(), (**v).clone());
                s.insert(y.clone(), (**w).clone());
                Reduct::Step(s.apply_dist(body))
            }
            h if h.is_value() => stuck(t, "let-pair on a value that is not a pair"),
            h => match reduce(h) {
                Reduct::Step(r) => Reduct::Step(mk_let(x, y, &r, body)),
                other => other,
            },
        },
        Term::Match(head, x1, s1, x2, s2) => match &**head {
            Term::Inl(v) => Reduct::Step(Subst::single(x1.clone(), (**v).clone()).apply_dist(s1)),
            Term::Inr(v) => Reduct::Step(Subst::single(x2.clone(), (**v).clone()).apply_dist(s2)),
            h if h.is_value() => stuck(t, "match on a value that is not an injection"),
            h => match reduce(h) {
                Reduct::Step(r) => Reduct::Step(mk_match(&r, x1, s1, x2, s2)),
                other => other,
            },
        },
    }
}

/// A reducer with a fixed summand-selection strategy and step budget.
#[derive(Clone, Debug)]
pub struct Engine {
    max_steps: usize,
    rng: Option<StdRng>,
}

impl Default for Engine {
    fn default() -> Engine {
        Engine::new(Strategy::Leftmost)
    }
}

impl Engine {
    pub fn new(strategy: Strategy) -> Engine {
        let rng = match strategy {
            Strategy::Leftmost => None,
            Strategy::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        };
        Engine { max_steps: DEFAULT_MAX_STEPS, rng }
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Engine {
        assert!(max_steps > 0, "step budget must be positive");
        self.max_steps = max_steps;
        self
    }

    pub fn max_steps(&self) -> usize {
        self.max_steps
    }

    pub fn step(&mut self, d: &Dist) -> StepResult {
        match self.advance(d.clone()) {
            Advance::Stepped(next) => StepResult::Stepped(next),
            Advance::Normal(_) => StepResult::NormalForm,
            Advance::Stuck(term, reason) => StepResult::Stuck(term, reason),
        }
    }

    /// One step on an owned distribution; the untouched summands are moved.
    fn advance(&mut self, d: Dist) -> Advance {
        let pending: Vec<usize> = (0..d.len()).filter(|&i| !d.summands()[i].1.is_value()).collect();
        let Some(&first) = pending.first() else {
            return Advance::Normal(d);
        };
        let i = match &mut self.rng {
            None => first,
            Some(rng) => pending[rng.random_range(0..pending.len())],
        };
        let (alpha, t) = &d.summands()[i];
        match reduce(t) {
            Reduct::Step(r) => {
                let r = r.scale(*alpha).into_summands();
                let mut out = d.into_summands();
                out.splice(i..=i, r);
                Advance::Stepped(Dist::new(out).expect("non-empty").into_canonical())
            }
            Reduct::Stuck(term, reason) => Advance::Stuck(term, reason),
            Reduct::Value => unreachable!("selected summand is not a value"),
        }
    }

    /// Every distribution visited, starting with `d` itself.
    pub fn trace(&mut self, d: &Dist) -> Result<Vec<Dist>, EvalError> {
        let mut trace = vec![d.clone()];
        for _ in 0..=self.max_steps {
            match self.advance(trace.last().expect("non-empty trace").clone()) {
                Advance::Stepped(next) if trace.len() <= self.max_steps => trace.push(next),
                Advance::Stepped(_) => return Err(EvalError::StepLimitExceeded(self.max_steps)),
                Advance::Normal(_) => return Ok(trace),
                Advance::Stuck(term, reason) => return Err(EvalError::Stuck { term: Box::new(term), reason }),
            }
        }
        unreachable!("the loop returns once the budget is spent")
    }

    /// The canonical value distribution `d` reduces to.
    pub fn normalize(&mut self, d: &Dist) -> Result<Dist, EvalError> {
        let mut current = d.clone();
        for _ in 0..self.max_steps {
            match self.advance(current) {
                Advance::Stepped(next) => current = next,
                Advance::Normal(v) => return Ok(v.into_canonical()),
                Advance::Stuck(term, reason) => return Err(EvalError::Stuck { term: Box::new(term), reason }),
            }
        }
        if current.is_value() {
            Ok(current.into_canonical())
        } else {
            Err(EvalError::StepLimitExceeded(self.max_steps))
        }
    }
}

enum Advance {
    Stepped(Dist),
    Normal(Dist),
    Stuck(Term, String),
}

/// One leftmost step.
pub fn step(d: &Dist) -> StepResult {
    Engine::default().step(d)
}

pub fn normalize(d: &Dist, max_steps: usize) -> Result<Dist, EvalError> {
    Engine::default().with_max_steps(max_steps).normalize(d)
}

pub fn trace_normalize(d: &Dist, max_steps: usize) -> Result<Vec<Dist>, EvalError> {
    Engine::default().with_max_steps(max_steps).trace(d)
}

/// Both sides normalize to congruent value distributions.
pub fn equivalent(d1: &Dist, d2: &Dist) -> Result<bool, EvalError> {
    let mut engine = Engine::default();
    Ok(engine.normalize(d1)?.congruent(&engine.normalize(d2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::real;
    use crate::types::Type;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn plus() -> Dist {
        Dist::new(vec![(real(FRAC_1_SQRT_2), Term::zero()), (real(FRAC_1_SQRT_2), Term::one())]).unwrap()
    }

    fn not() -> Term {
        Term::lam("z", Type::bit(), Term::match_sum(Term::var("z"), "a", Term::one(), "b", Term::zero()))
    }

    #[test]
    fn beta() {
        let t = Term::app(Term::lam("x", Type::bit(), Term::var("x")), Term::zero());
        assert_eq!(normalize(&t.into(), 10).unwrap(), Dist::pure(Term::zero()));
    }

    #[test]
    fn void_sequence() {
        let t = Term::seq(Term::Void, plus());
        assert_eq!(step(&t.into()), StepResult::Stepped(plus().canonicalize()));
    }

    #[test]
    fn match_inl() {
        let t = Term::match_sum(Term::zero(), "x", Term::one(), "y", Term::zero());
        assert_eq!(normalize(&t.into(), 10).unwrap(), Dist::pure(Term::one()));
    }

    #[test]
    fn let_pair_is_simultaneous() {
        let t = Term::let_pair(
            "x",
            "y",
            Term::pair(Term::var("y"), Term::Void),
            Term::pair(Term::var("x"), Term::var("y")),
        );
        let out = normalize(&t.into(), 10).unwrap();
        assert_eq!(out, Dist::pure(Term::pair(Term::var("y"), Term::Void)));
    }

    #[test]
    fn argument_superposition_distributes() {
        // not applied to a superposed argument: reduce the argument first.
        let arg = Term::match_sum(Term::zero(), "u", plus(), "w", Term::zero());
        let out = normalize(&Term::app(not(), arg).into(), 100).unwrap();
        assert!(out.congruent(&plus()));
    }

    #[test]
    fn no_reduction_under_lambda() {
        let body = Term::app(not(), Term::zero());
        let lam = Term::lam("q", Type::Unit, body);
        assert_eq!(step(&lam.into()), StepResult::NormalForm);
    }

    #[test]
    fn stuck_on_ill_typed() {
        let t = Term::app(Term::Void, Term::Void);
        assert!(matches!(step(&t.clone().into()), StepResult::Stuck(..)));
        assert!(matches!(normalize(&t.into(), 10), Err(EvalError::Stuck { .. })));
    }

    #[test]
    fn step_limit() {
        // omega-like divergence through an untyped self-application
        let w = Term::lam("x", Type::Unit, Term::app(Term::var("x"), Term::var("x")));
        let t = Term::app(w.clone(), w);
        assert_eq!(normalize(&t.into(), 50), Err(EvalError::StepLimitExceeded(50)));
    }

    #[test]
    fn trace_shape() {
        let t: Dist = Term::app(not(), Term::app(not(), Term::zero())).into();
        let trace = trace_normalize(&t, 100).unwrap();
        assert_eq!(trace[0], t);
        assert!(trace.last().unwrap().congruent(&normalize(&t, 100).unwrap()));
        assert!(trace.len() <= 101);
        let short = trace_normalize(&Dist::pure(Term::Void), 1).unwrap();
        assert_eq!(short.len(), 1);
    }

    #[test]
    fn strategies_agree() {
        let d = Dist::new(vec![
            (real(0.6), Term::app(not(), Term::zero())),
            (real(0.8), Term::app(not(), Term::app(not(), Term::one()))),
        ])
        .unwrap();
        let a = normalize(&d, 100).unwrap();
        for seed in 0..8 {
            let b = Engine::new(Strategy::Random(seed)).normalize(&d).unwrap();
            assert!(a.congruent(&b));
        }
    }
}
