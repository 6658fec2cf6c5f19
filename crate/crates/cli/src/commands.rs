use std::fs;
use std::path::{Path, PathBuf};

use lambda_s1::quantum::{
    compile_isometry, encode, parse_circuit, parse_complex, parse_matrix, run_circuit, StateVector,
};
use lambda_s1::surface::{parse_program_with_spans, SpanIndex};
use lambda_s1::{
    check_distribution, check_pure_at, parse_program, pretty_print, subtype, type_of_program, Dist, Engine, Scalar,
    StepResult, Type, TypingContext,
};
use serde_json::json;

use crate::error::{CliError, NOT_EQUIVALENT};
use crate::report::Reporter;
use crate::{Cli, Command};

pub fn dispatch(cli: &Cli, out: &Reporter) -> Result<u8, CliError> {
    match &cli.command {
        Command::Check { file } => check(file, out),
        Command::Eval { file } => eval(cli, file, out),
        Command::CompileGate { matrix, output } => compile_gate(matrix, output.as_deref(), out),
        Command::Run { circuit, input } => run(cli, circuit, input.as_deref(), out),
        Command::Equiv { left, right } => equiv(cli, left, right, out),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(&path.display().to_string(), e))
}

struct Program {
    name: String,
    src: String,
    dist: Dist,
    spans: SpanIndex,
}

fn load(path: &Path) -> Result<Program, CliError> {
    let name = path.display().to_string();
    let src = read(path)?;
    let (dist, spans) = parse_program_with_spans(&src, Some(&name)).map_err(|e| CliError::Parse(e.render(&src)))?;
    Ok(Program { name, src, dist, spans })
}

fn infer(p: &Program) -> Result<Type, CliError> {
    type_of_program(&p.dist).map_err(|e| {
        let e = e.locate(&p.spans);
        let rendered = e.render(&p.src);
        CliError::Type(if e.location.is_some() { rendered } else { format!("{}: {rendered}", p.name) })
    })
}

fn check(file: &Path, out: &Reporter) -> Result<u8, CliError> {
    let p = load(file)?;
    let ty = infer(&p)?;
    out.emit(&ty, json!({ "command": "check", "file": p.name, "type": ty.to_string() }));
    Ok(0)
}

fn engine(cli: &Cli) -> Engine {
    Engine::default().with_max_steps(cli.max_steps as usize)
}

fn eval(cli: &Cli, file: &Path, out: &Reporter) -> Result<u8, CliError> {
    let p = load(file)?;
    let ty = if cli.no_check { None } else { Some(infer(&p)?) };
    let mut engine = engine(cli);
    let budget = engine.max_steps();
    let mut current = p.dist.clone();
    let mut steps = 0usize;
    let trace = |i: usize, d: &Dist| {
        if cli.trace {
            out.emit(format!("-- step {i}: {d}"), json!({ "step": i, "term": d.to_string() }));
        }
    };
    trace(0, &current);
    loop {
        match engine.step(&current) {
            StepResult::Stepped(next) => {
                if steps == budget {
                    return Err(lambda_s1::EvalError::StepLimitExceeded(budget).into());
                }
                steps += 1;
                current = next;
                trace(steps, &current);
            }
            StepResult::NormalForm => break,
            StepResult::Stuck(term, reason) => {
                return Err(lambda_s1::EvalError::Stuck { term: Box::new(term), reason }.into())
            }
        }
    }
    let printed = pretty_print(&current);
    if let Some(ty) = &ty {
        // the printed result must stand on its own at the program's type
        let again = parse_program(&printed).map_err(|e| CliError::Parse(format!("normal form: {e}")))?;
        check_distribution(&TypingContext::new(), &again, ty)
            .map_err(|e| CliError::Type(format!("normal form `{printed}` does not re-check at {ty}: {e}")))?;
    }
    let ty_text = ty.as_ref().map(Type::to_string);
    out.emit(&printed, json!({ "command": "eval", "normal_form": printed, "type": ty_text, "steps": steps }));
    Ok(0)
}

fn compile_gate(matrix: &Path, output: Option<&Path>, out: &Reporter) -> Result<u8, CliError> {
    let m = parse_matrix(&read(matrix)?)?;
    let term = compile_isometry(&m)?;
    let n = m.qubits();
    let ty = Type::arrow(Type::qubits(n), Type::qubits(n));
    check_pure_at(&TypingContext::new(), &term, &ty).map_err(|e| CliError::Type(e.to_string()))?;
    let text = format!("-- {ty}\n{term}\n");
    match output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::io(&path.display().to_string(), e))?;
            let record = json!({ "command": "compile-gate", "type": ty.to_string(), "qubits": n, "output": path.display().to_string() });
            out.emit(&ty, record);
        }
        None => {
            let record =
                json!({ "command": "compile-gate", "type": ty.to_string(), "qubits": n, "term": term.to_string() });
            out.emit(text.trim_end(), record);
        }
    }
    Ok(0)
}

fn parse_input(spec: &str) -> Result<StateVector, CliError> {
    let bad = |why: &str| CliError::Usage(format!("bad input `{spec}`: {why}"));
    let spec = spec.trim();
    if let Some(bits) = spec.strip_prefix('|').and_then(|s| s.strip_suffix('>')) {
        if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
            return Err(bad("a basis state is written |0110>"));
        }
        let k = usize::from_str_radix(bits, 2).map_err(|_| bad("too many qubits"))?;
        return Ok(StateVector::basis(bits.len(), k));
    }
    let amps = spec
        .split(',')
        .map(|a| parse_complex(a.trim()).ok_or_else(|| bad("amplitudes are complex literals separated by commas")))
        .collect::<Result<Vec<Scalar>, _>>()?;
    Ok(StateVector::new(amps)?)
}

fn amplitudes(v: &StateVector) -> serde_json::Value {
    v.amplitudes().iter().map(|c| json!([c.re, c.im])).collect()
}

fn run(cli: &Cli, circuit: &Path, input: Option<&str>, out: &Reporter) -> Result<u8, CliError> {
    let base = circuit.parent().map(Path::to_path_buf).unwrap_or_default();
    let gates = parse_circuit(&read(circuit)?, |path| {
        let full: PathBuf = base.join(path);
        let text = fs::read_to_string(&full)
            .map_err(|e| lambda_s1::quantum::FrontendError::Io(format!("{}: {e}", full.display())))?;
        parse_matrix(&text)
    })?;
    let input = match input {
        Some(spec) => parse_input(spec)?,
        None => {
            let width = gates.iter().flat_map(|g| g.targets.iter()).max().map_or(1, |w| w + 1);
            StateVector::basis(width, 0)
        }
    };
    let run = run_circuit(&gates, &input, &mut engine(cli))?;
    let deviation = run.max_deviation();
    let list = |v: &StateVector| {
        let parts: Vec<String> = v.amplitudes().iter().map(|c| lambda_s1::surface::scalar_to_string(*c)).collect();
        format!("[{}]", parts.join(", "))
    };
    let output = pretty_print(&run.output);
    let text = format!(
        "input: {}\noutput: {output}\ndecoded: {}\noracle: {}\nmax deviation: {deviation:e}",
        pretty_print(&encode(&input)),
        list(&run.decoded),
        list(&run.oracle)
    );
    let record = json!({
        "command": "run",
        "gates": gates.len(),
        "output": output,
        "decoded": amplitudes(&run.decoded),
        "oracle": amplitudes(&run.oracle),
        "max_deviation": deviation,
    });
    out.emit(text, record);
    let tolerance = lambda_s1::scalar::tolerance();
    if deviation > tolerance {
        return Err(CliError::Frontend(format!("deviation {deviation:e} exceeds the tolerance {tolerance:e}")));
    }
    Ok(0)
}

fn equiv(cli: &Cli, left: &Path, right: &Path, out: &Reporter) -> Result<u8, CliError> {
    let (l, r) = (load(left)?, load(right)?);
    if !cli.no_check {
        let (tl, tr) = (infer(&l)?, infer(&r)?);
        if !subtype(&tl, &tr) && !subtype(&tr, &tl) {
            return Err(CliError::Type(format!("{} has type {tl} but {} has type {tr}", l.name, r.name)));
        }
    }
    let mut engine = engine(cli);
    let (vl, vr) = (engine.normalize(&l.dist)?, engine.normalize(&r.dist)?);
    let same = vl.congruent(&vr);
    let verdict = if same { "equivalent" } else { "not equivalent" };
    let text = format!("{verdict}\n-- {}: {}\n-- {}: {}", l.name, pretty_print(&vl), r.name, pretty_print(&vr));
    let record = json!({
        "command": "equiv",
        "equivalent": same,
        "left": pretty_print(&vl),
        "right": pretty_print(&vr),
    });
    out.emit(text, record);
    Ok(if same { 0 } else { NOT_EQUIVALENT })
}
