//! Typing derivations, as produced by the checker.

use std::fmt;

use crate::scalar::tolerance;
use crate::types::{subtype, Type};

#[derive(Clone, Debug, PartialEq)]
pub enum Rule {
    Ax(String),
    Lam(String),
    App,
    Void,
    PureSeq,
    UnitarySeq,
    Pair,
    PureLet,
    UnitaryLet,
    InL,
    InR,
    PureMatch,
    UnitaryMatch,
    /// A normalized superposition of pure values; holds `Σ|αᵢ|²`.
    Sup(f64),
    Sub,
    /// A closed superposition of non-values. The premises type each summand
    /// and, last, the normal form of the whole.
    Mixture,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Ax(x) => write!(f, "Ax {x}"),
            Rule::Lam(x) => write!(f, "Lam {x}"),
            Rule::Sup(n) => write!(f, "Sup (norm² {n})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub rule: Rule,
    pub ty: Type,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn new(rule: Rule, ty: Type, premises: Vec<Derivation>) -> Derivation {
        Derivation { rule, ty, premises }
    }

    /// Number of rule instances.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(Derivation::depth).max().unwrap_or(0)
    }

    /// Re-checks the local side condition of every node: arities, how the
    /// conclusion's type is assembled from the premises', norms and
    /// subtyping steps. It does not re-check linearity or orthogonality.
    pub fn verify(&self) -> Result<(), String> {
        self.verify_node().map_err(|e| format!("{}: {e}", self.rule))?;
        self.premises.iter().try_for_each(Derivation::verify)
    }

    fn verify_node(&self) -> Result<(), String> {
        let p: Vec<&Type> = self.premises.iter().map(|d| &d.ty).collect();
        let arity = |n: usize| {
            if p.len() == n {
                Ok(())
            } else {
                Err(format!("expected {n} premises, found {}", p.len()))
            }
        };
        let want = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
        let is_sharp = |t: &Type| matches!(t, Type::Sharp(_));
        let core = |t: &Type| t.strip_sharps().1.clone();
        match &self.rule {
            Rule::Ax(_) => arity(0),
            Rule::Void => {
                arity(0)?;
                want(self.ty == Type::Unit, "void has type U")
            }
            Rule::Lam(_) => {
                arity(1)?;
                want(matches!(&self.ty, Type::Arrow(_, b) if **b == *p[0]), "codomain is the body's type")
            }
            Rule::App => {
                arity(2)?;
                want(*p[0] == Type::arrow(p[1].clone(), self.ty.clone()), "operator type is argument -> result")
            }
            Rule::PureSeq => {
                arity(2)?;
                want(*p[0] == Type::Unit && self.ty == *p[1], "head U, result is the tail's type")
            }
            Rule::UnitarySeq => {
                arity(2)?;
                want(
                    is_sharp(p[0]) && core(p[0]) == Type::Unit && is_sharp(p[1]) && self.ty == *p[1],
                    "head #U, sharp tail",
                )
            }
            Rule::Pair => {
                arity(2)?;
                want(self.ty == Type::prod(p[0].clone(), p[1].clone()), "product of the components")
            }
            Rule::PureLet => {
                arity(2)?;
                want(matches!(p[0], Type::Prod(..)) && self.ty == *p[1], "head is a product")
            }
            Rule::UnitaryLet => {
                arity(2)?;
                want(
                    is_sharp(p[0]) && matches!(core(p[0]), Type::Prod(..)) && is_sharp(p[1]) && self.ty == *p[1],
                    "head #(A*B), sharp body",
                )
            }
            Rule::InL => {
                arity(1)?;
                want(matches!(&self.ty, Type::Sum(a, _) if **a == *p[0]), "left summand")
            }
            Rule::InR => {
                arity(1)?;
                want(matches!(&self.ty, Type::Sum(_, b) if **b == *p[0]), "right summand")
            }
            Rule::PureMatch => {
                arity(3)?;
                want(
                    matches!(p[0], Type::Sum(..)) && *p[1] == self.ty && *p[2] == self.ty,
                    "head is a sum, branches agree",
                )
            }
            Rule::UnitaryMatch => {
                arity(3)?;
                want(
                    is_sharp(p[0])
                        && matches!(core(p[0]), Type::Sum(..))
                        && is_sharp(&self.ty)
                        && *p[1] == self.ty
                        && *p[2] == self.ty,
                    "head #(A+B), sharp branches agree",
                )
            }
            Rule::Sup(n) => {
                want(!p.is_empty(), "at least one value")?;
                let Type::Sharp(a) = &self.ty else {
                    return Err("result is sharp".into());
                };
                want(!matches!(core(a), Type::Arrow(..)), "not at a function type")?;
                want(p.iter().all(|t| **t == **a), "every value has the core type")?;
                want((n - 1.0).abs() <= tolerance(), "unit norm")
            }
            Rule::Sub => {
                arity(1)?;
                want(subtype(p[0], &self.ty), "subtyping step")
            }
            Rule::Mixture => {
                want(p.len() >= 2, "summands and a normal form")?;
                let last = self.premises.last().expect("non-empty");
                want(last.ty == self.ty, "normal form at the result type")?;
                let sharp_ty = match &self.ty {
                    Type::Sharp(_) => self.ty.clone(),
                    other => Type::sharp(other.clone()),
                };
                want(p[..p.len() - 1].iter().all(|t| subtype(t, &sharp_ty)), "summands below the sharpened result")
            }
        }
    }

    fn write_tree(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        writeln!(f, "{:indent$}{} : {}", "", self.rule, self.ty)?;
        self.premises.iter().try_for_each(|d| d.write_tree(f, indent + 2))
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_tree(f, 0)
    }
}
