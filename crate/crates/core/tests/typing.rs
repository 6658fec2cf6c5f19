mod common;

use common::ProgramGen;
use lambda_s1::{
    check_distribution, derive_program, norm, parse_program, subtype, type_of_program, Engine, Strategy, Type,
    TypeErrorKind, TypingContext,
};
use proptest::prelude::*;

const NOT: &str = "(\\x:B. match x { inl a -> inr a | inr b -> inl b })";

fn no_sharp(t: &Type) -> bool {
    match t {
        Type::Unit => true,
        Type::Sharp(_) => false,
        Type::Sum(a, b) | Type::Prod(a, b) | Type::Arrow(a, b) => no_sharp(a) && no_sharp(b),
    }
}

/// Simply typed programs with pairs and sums, with their expected types.
fn stlc_corpus() -> Vec<(String, &'static str)> {
    let not = NOT;
    vec![
        ("\\x:B. x".into(), "B -> B"),
        (not.into(), "B -> B"),
        ("\\p:B * U. let (x, y) = p in (y, x)".into(), "B * U -> U * B"),
        ("\\x:B. \\y:B. x".into(), "B -> B -> B"),
        ("\\x:B. (x, x)".into(), "B -> B * B"),
        ("\\f:B -> B. \\x:B. f (f x)".into(), "(B -> B) -> B -> B"),
        ("\\f:B -> B. \\g:B -> B. \\x:B. f (g x)".into(), "(B -> B) -> (B -> B) -> B -> B"),
        (format!("(\\f:B -> B. \\x:B. f (f x)) {not} inr *"), "B"),
        (format!("\\q:B. \\p:B. match p {{ inl a -> a; q | inr b -> b; {not} q }}"), "B -> B -> B"),
        (
            format!("\\p:B * B. let (c, t) = p in match c {{ inl u -> u; (inl *, t) | inr v -> v; (\\y:B. (inr *, y)) ({not} t) }}"),
            "B * B -> B * B",
        ),
        (format!("let (a, b) = (inl *, inr *) in (\\y:B. (y, b)) ({not} a)"), "B * B"),
        ("\\x:B. match x { inl a -> inl (inl a) | inr b -> inr b }".into(), "B -> (U + U) + U"),
        ("(\\f:U -> B. f *) (\\u:U. u; inr *)".into(), "B"),
        (format!("match inr * {{ inl a -> a; (\\x:B. x) | inr b -> b; {not} }}"), "B -> B"),
    ]
}

#[test]
fn stlc_programs_type_with_flat_types() {
    for (src, want) in stlc_corpus() {
        let d = parse_program(&src).unwrap();
        let ty = type_of_program(&d).unwrap_or_else(|e| panic!("`{src}`: {e}"));
        let want = lambda_s1::parse_type(want).unwrap();
        assert!(subtype(&ty, &want), "`{src}`: {ty} is not below {want}");
        assert!(no_sharp(&ty) && ty.is_flat(), "`{src}` : {ty}");
        let v = lambda_s1::normalize(&d, 10_000).unwrap();
        assert!(v.as_pure().is_some(), "`{src}` normalized to a superposition `{v}`");
    }
}

#[test]
fn overlapping_classical_branches_are_refused() {
    // constant functions written with a match overlap on their branches
    let d = parse_program("\\x:B. match x { inl a -> inl * | inr b -> inl * }").unwrap();
    assert_eq!(type_of_program(&d).unwrap_err().kind, TypeErrorKind::OrthogonalityFailure);
}

/// Merges every `##` into `#`.
fn collapse(t: &Type) -> Type {
    match t {
        Type::Unit => Type::Unit,
        Type::Sharp(a) => match collapse(a) {
            Type::Sharp(inner) => Type::Sharp(inner),
            other => Type::sharp(other),
        },
        Type::Sum(a, b) => Type::sum(collapse(a), collapse(b)),
        Type::Prod(a, b) => Type::prod(collapse(a), collapse(b)),
        Type::Arrow(a, b) => Type::arrow(collapse(a), collapse(b)),
    }
}

fn universe() -> Vec<Type> {
    Type::enumerate_up_to(5)
}

proptest! {
    #[test]
    fn subtype_is_reflexive(a in prop::sample::select(universe())) {
        prop_assert!(subtype(&a, &a));
        prop_assert!(subtype(&a, &Type::sharp(a.clone())));
        let sharp = Type::sharp(a.clone());
        prop_assert!(subtype(&Type::sharp(sharp.clone()), &sharp));
    }

    #[test]
    fn subtype_is_transitive(a in prop::sample::select(universe()), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let all = universe();
        let above = |t: &Type| all.iter().filter(|u| subtype(t, u)).cloned().collect::<Vec<_>>();
        let b = i.get(&above(&a)).clone();
        let c = j.get(&above(&b)).clone();
        prop_assert!(subtype(&a, &c), "{} <= {} <= {}", a, b, c);
    }

    #[test]
    fn mutual_subtypes_differ_only_in_stacked_sharps(a in prop::sample::select(universe()), b in prop::sample::select(universe())) {
        if subtype(&a, &b) && subtype(&b, &a) {
            prop_assert_eq!(collapse(&a), collapse(&b));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn accepted_programs_carry_valid_derivations(seed in any::<u64>()) {
        let d = parse_program(&ProgramGen::new(seed).program()).unwrap();
        if let Ok(typing) = derive_program(&d) {
            typing.derivation.verify().map_err(TestCaseError::fail)?;
            prop_assert_eq!(type_of_program(&d).unwrap(), typing.ty);
        }
    }

    #[test]
    fn random_strategy_preserves_types_and_norm(seed in any::<u64>()) {
        let d = parse_program(&ProgramGen::new(seed).program()).unwrap();
        let Ok(ty) = type_of_program(&d) else { return Ok(()) };
        let trace = Engine::new(Strategy::Random(seed)).trace(&d).unwrap();
        for s in &trace {
            check_distribution(&TypingContext::new(), s, &ty).map_err(|e| TestCaseError::fail(format!("`{s}`: {e}")))?;
        }
        let last = trace.last().unwrap();
        prop_assert!(last.is_value());
        prop_assert!((norm(last).unwrap() - 1.0).abs() <= 1e-6);
        let left = Engine::default().normalize(&d).unwrap();
        prop_assert!(left.congruent(last));
    }
}
