//! Pretty printer whose output parses back to an alpha-equivalent term with
//! bit-identical coefficients.

use std::fmt::{self, Write};

use crate::scalar::Scalar;
use crate::syntax::{Dist, Term};

/// Renders a coefficient. Shortest round-trip decimals, no exponent.
pub fn scalar_to_string(c: Scalar) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im.is_sign_negative() {
        format!("({}-{}i)", c.re, -c.im)
    } else {
        format!("({}+{}i)", c.re, c.im)
    }
}

fn is_atom(t: &Term) -> bool {
    matches!(t, Term::Var(_) | Term::Void | Term::Pair(..) | Term::Inl(_) | Term::Inr(_))
}

pub(crate) struct Printer<'o> {
    out: &'o mut dyn Write,
}

impl<'o> Printer<'o> {
    pub(crate) fn new(out: &'o mut dyn Write) -> Self {
        Printer { out }
    }

    pub(crate) fn dist(&mut self, d: &Dist) -> fmt::Result {
        if let Some(t) = d.as_pure() {
            return self.term(t);
        }
        for (i, (c, t)) in d.summands().iter().enumerate() {
            if i > 0 {
                self.out.write_str(" ")?;
            }
            if crate::scalar::is_exactly_one(*c) {
                if i > 0 {
                    self.out.write_str("+ ")?;
                }
            } else {
                let text = scalar_to_string(*c);
                match (i, text.strip_prefix('-')) {
                    (0, _) => self.out.write_str(&text)?,
                    (_, Some(rest)) => write!(self.out, "- {rest}")?,
                    (_, None) => write!(self.out, "+ {text}")?,
                }
                self.out.write_str(" * ")?;
            }
            self.wrapped(t, is_atom(t))?;
        }
        Ok(())
    }

    fn wrapped(&mut self, t: &Term, bare: bool) -> fmt::Result {
        if bare {
            self.term(t)
        } else {
            self.out.write_str("(")?;
            self.term(t)?;
            self.out.write_str(")")
        }
    }

    pub(crate) fn term(&mut self, t: &Term) -> fmt::Result {
        match t {
            Term::Var(x) => self.out.write_str(x),
            Term::Void => self.out.write_str("*"),
            Term::Lam(x, ty, body) => {
                write!(self.out, "\\{x}:{ty}. ")?;
                self.dist(body)
            }
            Term::Pair(a, b) => {
                self.out.write_str("(")?;
                self.term(a)?;
                self.out.write_str(", ")?;
                self.term(b)?;
                self.out.write_str(")")
            }
            Term::Inl(v) => {
                self.out.write_str("inl ")?;
                self.wrapped(v, is_atom(v))
            }
            Term::Inr(v) => {
                self.out.write_str("inr ")?;
                self.wrapped(v, is_atom(v))
            }
            Term::App(f, a) => {
                self.wrapped(f, is_atom(f) || matches!(**f, Term::App(..)))?;
                self.out.write_str(" ")?;
                self.wrapped(a, is_atom(a))
            }
            Term::Seq(h, tail) => {
                self.wrapped(h, is_atom(h) || matches!(**h, Term::App(..)))?;
                self.out.write_str("; ")?;
                self.dist(tail)
            }
            Term::Let(x, y, h, body) => {
                write!(self.out, "let ({x}, {y}) = ")?;
                self.term(h)?;
                self.out.write_str(" in ")?;
                self.dist(body)
            }
            Term::Match(h, x1, s1, x2, s2) => {
                self.out.write_str("match ")?;
                self.term(h)?;
                write!(self.out, " {{ inl {x1} -> ")?;
                self.dist(s1)?;
                write!(self.out, " | inr {x2} -> ")?;
                self.dist(s2)?;
                self.out.write_str(" }")
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer::new(f).term(self)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer::new(f).dist(self)
    }
}

/// Canonical form of `d`, printed.
pub fn pretty_print(d: &Dist) -> String {
    d.canonicalize().to_string()
}
