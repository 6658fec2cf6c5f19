//! A typed lambda calculus of linear combinations of terms that captures
//! exactly the isometries, with a compiler from isometry matrices.

pub mod eval;
pub mod inner;
pub mod quantum;
pub mod scalar;
pub mod surface;
pub mod syntax;
pub mod typeck;
pub mod types;

pub use eval::{equivalent, normalize, step, trace_normalize, Engine, EvalError, StepResult, Strategy};
pub use inner::{inner_product, norm, orthogonal, orthogonal_strict};
pub use scalar::{Complex64, Scalar};
pub use surface::{parse_program, parse_type, pretty_print, ParseError, SourceSpan};
pub use syntax::{Dist, DistError, Name, Term};
pub use typeck::{
    check_distribution, check_orthogonal_judgment, check_pure, check_pure_at, derive_program, infer_distribution,
    is_flat, type_of_program, Derivation, TypeError, TypeErrorKind, TypingContext,
};
pub use types::{subtype, Type};
