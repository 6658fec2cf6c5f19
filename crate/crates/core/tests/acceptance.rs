//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

mod common;

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::ExitCode;
use std::time::Instant;

use common::{
    random_isometry, random_scalar, random_state, random_value_dist, rng, value_pool, ProgramGen, SubtypeOracle,
};
use lambda_s1::quantum::{basis_term, compile_isometry, decode, encode, gate, matrix_apply, StateVector};
use lambda_s1::syntax::mk_app;
use lambda_s1::{
    check_distribution, equivalent, inner_product, norm, parse_program, subtype, type_of_program, Dist, Engine, Scalar,
    Strategy, Term, Type, TypeErrorKind, TypingContext,
};

const COEFF_TOL: f64 = 1e-6;
const ROUND_TRIP_TOL: f64 = 1e-6;
const NORM_TOL: f64 = 1e-6;
const ALGEBRA_TOL: f64 = 1e-6;
const STEP_LIMIT: usize = 100_000;
const MIN_PROGRAMS: usize = 1000;
const ISOMETRIES_PER_N: usize = 100;
const INPUTS_PER_ISOMETRY: usize = 10;
const ORACLE_PAIR_SIZE: usize = 5;
const ORACLE_UNIVERSE: usize = 7;
const RANDOM_DISTS: usize = 10_000;

type Outcome = Result<String, String>;

fn close(a: Scalar, b: Scalar, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn ground_ghz() -> Outcome {
    let h = FRAC_1_SQRT_2;
    let amps: Vec<Scalar> = [h, 0.0, 0.0, h, 0.0, 0.0, 0.0, 0.0].iter().map(|&x| Scalar::new(x, 0.0)).collect();
    let d = encode(&StateVector::new(amps).map_err(|e| e.to_string())?).canonicalize();
    let want = [
        Term::pair(Term::zero(), Term::pair(Term::zero(), Term::zero())),
        Term::pair(Term::zero(), Term::pair(Term::one(), Term::one())),
    ];
    if d.len() != 2 {
        return Err(format!("expected two summands, got `{d}`"));
    }
    for t in &want {
        let Some((c, _)) = d.summands().iter().find(|(_, u)| u == t) else {
            return Err(format!("`{t}` missing from `{d}`"));
        };
        if !close(*c, Scalar::new(h, 0.0), COEFF_TOL) {
            return Err(format!("coefficient {c} of `{t}`"));
        }
    }
    check_distribution(&TypingContext::new(), &d, &Type::qubits(3)).map_err(|e| e.to_string())?;
    Ok(format!("`{d}` : {}", Type::qubits(3)))
}

fn cnot_table() -> Outcome {
    let cnot = compile_isometry(&gate("CNOT").unwrap()).map_err(|e| e.to_string())?;
    let mut engine = Engine::default();
    for (input, output) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        let got = engine.normalize(&mk_app(&cnot, &Dist::pure(basis_term(2, input)))).map_err(|e| e.to_string())?;
        if got != Dist::pure(basis_term(2, output)) {
            return Err(format!("|{input:02b}> went to `{got}`"));
        }
    }
    Ok("|00>,|01>,|10>,|11> -> |00>,|01>,|11>,|10>".into())
}

fn isometry_round_trip() -> Outcome {
    let mut r = rng(3);
    let mut engine = Engine::default();
    let mut worst = 0.0f64;
    for n in 1..=3 {
        for _ in 0..ISOMETRIES_PER_N {
            let m = random_isometry(&mut r, n);
            let u = compile_isometry(&m).map_err(|e| e.to_string())?;
            for _ in 0..INPUTS_PER_ISOMETRY {
                let v = random_state(&mut r, n);
                let out = engine.normalize(&mk_app(&u, &encode(&v))).map_err(|e| e.to_string())?;
                let got = decode(&out, n).map_err(|e| e.to_string())?;
                worst = worst.max(got.max_deviation(&matrix_apply(&m, &v).unwrap()));
            }
        }
    }
    let detail = format!("{} runs, max deviation {worst:.2e}", 3 * ISOMETRIES_PER_N * INPUTS_PER_ISOMETRY);
    if worst <= ROUND_TRIP_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Programs accepted by the checker with their types.
fn well_typed_programs() -> Vec<(Dist, Type)> {
    let mut gen = ProgramGen::new(2024);
    let mut out = Vec::new();
    while out.len() < MIN_PROGRAMS {
        let d = parse_program(&gen.program()).expect("generator emits valid syntax");
        if let Ok(ty) = type_of_program(&d) {
            out.push((d, ty));
        }
    }
    out
}

fn subject_reduction(programs: &[(Dist, Type)]) -> Outcome {
    let mut engine = Engine::default().with_max_steps(STEP_LIMIT);
    let (mut states, mut longest) = (0usize, 0usize);
    for (d, ty) in programs {
        let trace = engine.trace(d).map_err(|e| format!("`{d}`: {e}"))?;
        longest = longest.max(trace.len() - 1);
        for s in &trace[1..] {
            check_distribution(&TypingContext::new(), s, ty).map_err(|e| format!("`{s}` from `{d}` at {ty}: {e}"))?;
            states += 1;
        }
    }
    Ok(format!("{} programs, {states} reducts re-checked, longest trace {longest} steps", programs.len()))
}

fn norm_preservation(programs: &[(Dist, Type)]) -> Outcome {
    let mut engine = Engine::default().with_max_steps(STEP_LIMIT);
    let (mut count, mut worst) = (0usize, 0.0f64);
    for (d, ty) in programs.iter().filter(|(_, ty)| matches!(ty, Type::Sharp(_))) {
        let v = engine.normalize(d).map_err(|e| e.to_string())?;
        let n = norm(&v).map_err(|e| e.to_string())?;
        worst = worst.max((n - 1.0).abs());
        if (n - 1.0).abs() > NORM_TOL {
            return Err(format!("`{d}` : {ty} normalized to norm {n}"));
        }
        count += 1;
    }
    if count == 0 {
        return Err("no #-typed programs generated".into());
    }
    Ok(format!("{count} #-typed programs, max |norm - 1| = {worst:.2e}"))
}

fn subtype_oracle() -> Outcome {
    let smaller = SubtypeOracle::new(ORACLE_UNIVERSE - 1);
    let oracle = SubtypeOracle::new(ORACLE_UNIVERSE);
    let pairs = Type::enumerate_up_to(ORACLE_PAIR_SIZE);
    let mut related = 0usize;
    for a in &pairs {
        for b in &pairs {
            let (fast, slow) = (subtype(a, b), oracle.holds(a, b));
            if fast != slow {
                return Err(format!("{a} <= {b}: algorithm says {fast}, derivation search says {slow}"));
            }
            if slow != smaller.holds(a, b) {
                return Err(format!("{a} <= {b} depends on the search universe"));
            }
            related += slow as usize;
        }
    }
    Ok(format!("{} pairs, {related} related", pairs.len() * pairs.len()))
}

fn algebra() -> Outcome {
    let pool = value_pool();
    let mut r = rng(7);
    let eq = |a: &Dist, b: &Dist| a.congruent(b);
    for i in 0..RANDOM_DISTS {
        let (u, v, w) =
            (random_value_dist(&mut r, &pool), random_value_dist(&mut r, &pool), random_value_dist(&mut r, &pool));
        let (a, b) = (random_scalar(&mut r), random_scalar(&mut r));
        let fail = |what: &str| Err(format!("{what} fails on sample {i}: u = `{u}`, v = `{v}`"));
        if !eq(&v.scale(a + b), &v.scale(a).plus(&v.scale(b))) {
            return fail("(a+b)v = av + bv");
        }
        if !eq(&v.plus(&w).scale(a), &v.scale(a).plus(&w.scale(a))) {
            return fail("a(v+w) = av + aw");
        }
        if !eq(&v.scale(b).scale(a), &v.scale(a * b)) {
            return fail("a(bv) = (ab)v");
        }
        if !eq(&v.scale(Scalar::new(1.0, 0.0)), &v) {
            return fail("1v = v");
        }
        let ip = |x: &Dist, y: &Dist| inner_product(x, y).unwrap();
        let scale_tol = |x: Scalar| ALGEBRA_TOL * (1.0 + x.norm());
        let uv = ip(&u, &v);
        if !close(uv, ip(&v, &u).conj(), scale_tol(uv)) {
            return fail("conjugate symmetry");
        }
        let lin = ip(&u, &v.scale(a).plus(&w.scale(b)));
        if !close(lin, a * uv + b * ip(&u, &w), scale_tol(lin)) {
            return fail("linearity");
        }
        let anti = ip(&u.scale(a).plus(&w.scale(b)), &v);
        if !close(anti, a.conj() * uv + b.conj() * ip(&w, &v), scale_tol(anti)) {
            return fail("conjugate linearity");
        }
        let nv = norm(&v).unwrap();
        let zero = v.canonicalize().summands().iter().all(|(c, _)| c.norm() <= ALGEBRA_TOL);
        if nv < 0.0 || (nv <= ALGEBRA_TOL) != zero {
            return fail("definiteness");
        }
        if (norm(&v.scale(a)).unwrap() - a.norm() * nv).abs() > ALGEBRA_TOL * (1.0 + a.norm() * nv) {
            return fail("homogeneity");
        }
        if norm(&u.plus(&v)).unwrap() > norm(&u).unwrap() + nv + ALGEBRA_TOL {
            return fail("triangle inequality");
        }
    }
    Ok(format!("{RANDOM_DISTS} samples"))
}

fn equivalence_witnesses() -> Outcome {
    let h = gate("H").unwrap();
    let hh = compile_isometry(&h.mul(&h).unwrap()).map_err(|e| e.to_string())?;
    let zero = Dist::pure(Term::zero());
    if !equivalent(&mk_app(&hh, &zero), &zero).map_err(|e| e.to_string())? {
        return Err("H.H |0> is not equivalent to |0>".into());
    }
    let cnot = compile_isometry(&gate("CNOT").unwrap()).unwrap();
    let h0 = compile_isometry(&h.embed(&[0], 2).unwrap()).unwrap();
    let bell = Dist::pure(Term::app(cnot, Term::app(h0, basis_term(2, 0))));
    let left = Engine::new(Strategy::Leftmost).normalize(&bell).map_err(|e| e.to_string())?;
    let mut shuffled = 0;
    for seed in 0..8 {
        let random = Engine::new(Strategy::Random(seed)).normalize(&bell).map_err(|e| e.to_string())?;
        if !left.congruent(&random) {
            return Err(format!("Bell state differs under seed {seed}: `{left}` vs `{random}`"));
        }
        shuffled += 1;
    }
    let padded = parse_program("1 * inl * + 0 * inr *").unwrap();
    if equivalent(&zero, &padded).map_err(|e| e.to_string())? {
        return Err("inl * declared equivalent to 1 * inl * + 0 * inr *".into());
    }
    Ok(format!(
        "H.H|0> ~ |0>; Bell `{left}` under leftmost and {shuffled} random seeds; inl * !~ 1 * inl * + 0 * inr *"
    ))
}

fn negative_typing() -> Outcome {
    let uf = "\\f:B -> B. \\z:#(B * B). let (x, y) = z in match x { \
              inl a -> a; (\\r:B. (inl *, r)) (f inl *) | inr b -> b; (\\r:B. (inr *, r)) (f inr *) }";
    let cases = [
        ("inl * + inr *", Some(TypeErrorKind::NormViolation)),
        ("(1/sqrt2) * (\\x:U. x) + (1/sqrt2) * (\\x:U. *; x)", Some(TypeErrorKind::SupAtArrowType)),
        ("\\x:#B. (x, x)", Some(TypeErrorKind::LinearityViolation)),
        (uf, None),
    ];
    for (src, want) in cases {
        let d = parse_program(src).map_err(|e| e.to_string())?;
        match (type_of_program(&d), want) {
            (Ok(ty), _) => return Err(format!("`{src}` accepted at {ty}")),
            (Err(e), Some(k)) if e.kind != k => return Err(format!("`{src}`: expected {k}, got {e}")),
            _ => {}
        }
    }
    Ok("norm 2, arrow superposition, duplicated #-variable, oracle builder all rejected".into())
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let start = Instant::now();
    let programs = well_typed_programs();
    let criteria: Vec<(&str, Check)> = vec![
        ("encoding example types at #(B * B * B)", Box::new(ground_ghz)),
        ("compiled CNOT basis table", Box::new(cnot_table)),
        ("isometry round trip", Box::new(isometry_round_trip)),
        ("subject reduction and progress", Box::new(|| subject_reduction(&programs))),
        ("norm preservation", Box::new(|| norm_preservation(&programs))),
        ("subtyping agrees with derivation search", Box::new(subtype_oracle)),
        ("distribution algebra", Box::new(algebra)),
        ("equivalence witnesses", Box::new(equivalence_witnesses)),
        ("negative typing suite", Box::new(negative_typing)),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} FAIL  {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
