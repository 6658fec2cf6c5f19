//! Types with holes, as used during inference.
//!
//! `inl v` on its own says nothing about the right summand, so it infers
//! `A + ?`. A hole is compatible with every type and is filled by joins;
//! holes that survive to the end are reported as `U`.

use std::fmt;

use crate::types::Type;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Ty {
    Unit,
    Hole,
    Sharp(Box<Ty>),
    Sum(Box<Ty>, Box<Ty>),
    Prod(Box<Ty>, Box<Ty>),
    Arrow(Box<Ty>, Box<Ty>),
}

impl From<&Type> for Ty {
    fn from(t: &Type) -> Ty {
        match t {
            Type::Unit => Ty::Unit,
            Type::Sharp(a) => Ty::Sharp(Box::new(Ty::from(&**a))),
            Type::Sum(a, b) => Ty::sum(a.as_ref().into(), b.as_ref().into()),
            Type::Prod(a, b) => Ty::prod(a.as_ref().into(), b.as_ref().into()),
            Type::Arrow(a, b) => Ty::arrow(a.as_ref().into(), b.as_ref().into()),
        }
    }
}

impl Ty {
    pub fn sum(a: Ty, b: Ty) -> Ty {
        Ty::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: Ty, b: Ty) -> Ty {
        Ty::Prod(Box::new(a), Box::new(b))
    }

    pub fn arrow(a: Ty, b: Ty) -> Ty {
        Ty::Arrow(Box::new(a), Box::new(b))
    }

    /// `#A`, without stacking a second `#` on an already sharp type
    /// (`##A` and `#A` are subtypes of each other).
    pub fn sharpen(self) -> Ty {
        match self {
            Ty::Sharp(_) => self,
            other => Ty::Sharp(Box::new(other)),
        }
    }

    /// Holes become `U`.
    pub fn to_type(&self) -> Type {
        match self {
            Ty::Unit | Ty::Hole => Type::Unit,
            Ty::Sharp(a) => Type::sharp(a.to_type()),
            Ty::Sum(a, b) => Type::sum(a.to_type(), b.to_type()),
            Ty::Prod(a, b) => Type::prod(a.to_type(), b.to_type()),
            Ty::Arrow(a, b) => Type::arrow(a.to_type(), b.to_type()),
        }
    }

    pub fn has_hole(&self) -> bool {
        match self {
            Ty::Hole => true,
            Ty::Unit => false,
            Ty::Sharp(a) => a.has_hole(),
            Ty::Sum(a, b) | Ty::Prod(a, b) | Ty::Arrow(a, b) => a.has_hole() || b.has_hole(),
        }
    }

    pub fn is_flat(&self) -> bool {
        match self {
            Ty::Unit | Ty::Hole => true,
            Ty::Sharp(_) => false,
            Ty::Sum(a, b) | Ty::Prod(a, b) => a.is_flat() && b.is_flat(),
            Ty::Arrow(a, _) => a.is_flat(),
        }
    }

    pub fn strip(&self) -> (usize, &Ty) {
        let mut depth = 0;
        let mut ty = self;
        while let Ty::Sharp(inner) = ty {
            depth += 1;
            ty = inner;
        }
        (depth, ty)
    }

    /// Arrow once the leading `#`s are removed.
    pub fn is_arrow_core(&self) -> bool {
        matches!(self.strip().1, Ty::Arrow(..))
    }
}

/// Subtyping, with holes compatible with anything.
pub(crate) fn sub(a: &Ty, b: &Ty) -> bool {
    let (m, c) = a.strip();
    let (n, d) = b.strip();
    if matches!(c, Ty::Hole) || matches!(d, Ty::Hole) {
        return m == 0 || n >= 1;
    }
    if m == 0 {
        match (c, d) {
            (Ty::Unit, Ty::Unit) => true,
            (Ty::Sum(a1, b1), Ty::Sum(a2, b2)) | (Ty::Prod(a1, b1), Ty::Prod(a2, b2)) => sub(a1, a2) && sub(b1, b2),
            (Ty::Arrow(a1, b1), Ty::Arrow(a2, b2)) => sub(a2, a1) && sub(b1, b2),
            _ => false,
        }
    } else {
        n >= 1 && merge(c, d).is_some()
    }
}

/// Equality up to holes, filling holes from the other side.
pub(crate) fn merge(a: &Ty, b: &Ty) -> Option<Ty> {
    Some(match (a, b) {
        (Ty::Hole, t) | (t, Ty::Hole) => t.clone(),
        (Ty::Unit, Ty::Unit) => Ty::Unit,
        (Ty::Sharp(x), Ty::Sharp(y)) => Ty::Sharp(Box::new(merge(x, y)?)),
        (Ty::Sum(a1, b1), Ty::Sum(a2, b2)) => Ty::sum(merge(a1, a2)?, merge(b1, b2)?),
        (Ty::Prod(a1, b1), Ty::Prod(a2, b2)) => Ty::prod(merge(a1, a2)?, merge(b1, b2)?),
        (Ty::Arrow(a1, b1), Ty::Arrow(a2, b2)) => Ty::arrow(merge(a1, a2)?, merge(b1, b2)?),
        _ => return None,
    })
}

/// An upper bound of both types, preferring the most precise candidate.
/// Only a candidate: callers re-check against it.
pub(crate) fn join(a: &Ty, b: &Ty) -> Option<Ty> {
    if let Some(t) = merge(a, b) {
        return Some(t);
    }
    let (m, c) = a.strip();
    let (n, d) = b.strip();
    if m == 0 && n == 0 {
        return Some(match (c, d) {
            (Ty::Sum(a1, b1), Ty::Sum(a2, b2)) => Ty::sum(join(a1, a2)?, join(b1, b2)?),
            (Ty::Prod(a1, b1), Ty::Prod(a2, b2)) => Ty::prod(join(a1, a2)?, join(b1, b2)?),
            (Ty::Arrow(a1, b1), Ty::Arrow(a2, b2)) => Ty::arrow(merge(a1, a2)?, join(b1, b2)?),
            _ => return None,
        });
    }
    // below a # nothing may change, so the cores must agree
    let core = match (m, n) {
        (0, _) if sub(c, d) => d.clone(),
        (_, 0) if sub(d, c) => c.clone(),
        _ => merge(c, d)?,
    };
    Some(Ty::Sharp(Box::new(core)))
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // holes are an inference detail; show the defaulted type
        write!(f, "{}", self.to_type())
    }
}
