//! Terms, distributions, substitution and the linear notation.

mod dist;
mod notation;
mod subst;
mod term;

pub use dist::{canonicalize, congruent, Dist, DistError};
pub use notation::{mk_app, mk_app_dist, mk_inl, mk_inr, mk_let, mk_match, mk_pair, mk_seq};
pub use subst::{bilinear_substitute, substitute, Subst};
pub use term::{Name, Term};
