//! Types, flatness and subtyping.

use std::fmt;

/// `U | #A | A+B | A*B | A->B`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    Unit,
    Sharp(Box<Type>),
    Sum(Box<Type>, Box<Type>),
    Prod(Box<Type>, Box<Type>),
    Arrow(Box<Type>, Box<Type>),
}

impl Type {
    pub fn sharp(a: Type) -> Type {
        Type::Sharp(Box::new(a))
    }

    pub fn sum(a: Type, b: Type) -> Type {
        Type::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: Type, b: Type) -> Type {
        Type::Prod(Box::new(a), Box::new(b))
    }

    pub fn arrow(a: Type, b: Type) -> Type {
        Type::Arrow(Box::new(a), Box::new(b))
    }

    /// `B = U+U`.
    pub fn bit() -> Type {
        Type::sum(Type::Unit, Type::Unit)
    }

    /// `A (+) B = #(A+B)`.
    pub fn oplus(a: Type, b: Type) -> Type {
        Type::sharp(Type::sum(a, b))
    }

    /// `A (x) B = #(A*B)`.
    pub fn otimes(a: Type, b: Type) -> Type {
        Type::sharp(Type::prod(a, b))
    }

    /// `B^n = B*(B*(...))`, right-nested to match the qubit encoding.
    pub fn bits(n: usize) -> Type {
        assert!(n >= 1);
        let mut ty = Type::bit();
        for _ in 1..n {
            ty = Type::prod(Type::bit(), ty);
        }
        ty
    }

    /// `B^(x)n = #(B^n)`.
    pub fn qubits(n: usize) -> Type {
        Type::sharp(Type::bits(n))
    }

    /// No `#` occurs, except possibly to the right of an arrow.
    pub fn is_flat(&self) -> bool {
        match self {
            Type::Unit => true,
            Type::Sharp(_) => false,
            Type::Sum(a, b) | Type::Prod(a, b) => a.is_flat() && b.is_flat(),
            Type::Arrow(a, _) => a.is_flat(),
        }
    }

    /// Number of constructors in the type.
    pub fn size(&self) -> usize {
        match self {
            Type::Unit => 1,
            Type::Sharp(a) => 1 + a.size(),
            Type::Sum(a, b) | Type::Prod(a, b) | Type::Arrow(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Splits `#^m C` into `(m, C)` with `C` not `#`-headed.
    pub fn strip_sharps(&self) -> (usize, &Type) {
        let mut depth = 0;
        let mut ty = self;
        while let Type::Sharp(inner) = ty {
            depth += 1;
            ty = inner;
        }
        (depth, ty)
    }

    /// All types of exactly `size` constructors, in a fixed order.
    pub fn enumerate(size: usize) -> Vec<Type> {
        let mut by_size: Vec<Vec<Type>> = vec![Vec::new(), vec![Type::Unit]];
        for s in 2..=size {
            let mut out: Vec<Type> = by_size[s - 1].iter().cloned().map(Type::sharp).collect();
            for left in 1..s - 1 {
                let right = s - 1 - left;
                for a in &by_size[left] {
                    for b in &by_size[right] {
                        out.push(Type::sum(a.clone(), b.clone()));
                        out.push(Type::prod(a.clone(), b.clone()));
                        out.push(Type::arrow(a.clone(), b.clone()));
                    }
                }
            }
            by_size.push(out);
        }
        if size == 0 {
            return Vec::new();
        }
        by_size.swap_remove(size)
    }

    /// All types with at most `size` constructors.
    pub fn enumerate_up_to(size: usize) -> Vec<Type> {
        (1..=size).flat_map(Type::enumerate).collect()
    }
}

/// Decides `a <= b` in the system generated by reflexivity, transitivity,
/// `A <= #A`, `##A <= #A`, contravariant/covariant arrows, and congruence for
/// products and sums.
///
/// With `a = #^m C` and `b = #^n D` (`C`, `D` not `#`-headed) the relation
/// holds iff either `m = 0` and `C` relates to `D` by a congruence step whose
/// components are again subtypes, or `m, n >= 1` and `C = D`. There is no
/// congruence rule under `#`, so nothing below a `#` may change.
pub fn subtype(a: &Type, b: &Type) -> bool {
    let (m, c) = a.strip_sharps();
    let (n, d) = b.strip_sharps();
    if m == 0 {
        structural(c, d)
    } else {
        n >= 1 && c == d
    }
}

fn structural(c: &Type, d: &Type) -> bool {
    match (c, d) {
        (Type::Unit, Type::Unit) => true,
        (Type::Sum(a1, b1), Type::Sum(a2, b2)) | (Type::Prod(a1, b1), Type::Prod(a2, b2)) => {
            subtype(a1, a2) && subtype(b1, b2)
        }
        (Type::Arrow(a1, b1), Type::Arrow(a2, b2)) => subtype(a2, a1) && subtype(b1, b2),
        _ => false,
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_type(f, self, 0)
    }
}

// Precedence: 0 arrow, 1 sum, 2 product, 3 prefix/atom. All binary
// operators associate to the right.
fn write_type(f: &mut fmt::Formatter<'_>, ty: &Type, prec: u8) -> fmt::Result {
    let own = match ty {
        Type::Unit | Type::Sharp(_) => 3,
        Type::Sum(..) => 1,
        Type::Prod(..) => 2,
        Type::Arrow(..) => 0,
    };
    if own < prec {
        f.write_str("(")?;
    }
    match ty {
        Type::Unit => f.write_str("U")?,
        Type::Sharp(a) => {
            f.write_str("#")?;
            write_type(f, a, 3)?
        }
        Type::Sum(a, b) => binary(f, a, "+", b, own)?,
        Type::Prod(a, b) => binary(f, a, "*", b, own)?,
        Type::Arrow(a, b) => binary(f, a, " -> ", b, own)?,
    }
    if own < prec {
        f.write_str(")")?;
    }
    Ok(())
}

fn binary(f: &mut fmt::Formatter<'_>, a: &Type, op: &str, b: &Type, prec: u8) -> fmt::Result {
    write_type(f, a, prec + 1)?;
    f.write_str(op)?;
    write_type(f, b, prec)
}
