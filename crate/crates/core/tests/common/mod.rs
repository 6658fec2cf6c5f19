//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use lambda_s1::quantum::{compile_isometry, encode, gate, GateMatrix, StateVector, GATE_NAMES};
use lambda_s1::{Dist, Scalar, Term, Type};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut StdRng) -> Scalar {
    Scalar::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A Haar-ish random unitary: Gram-Schmidt on complex Gaussian columns.
pub fn random_isometry(rng: &mut StdRng, qubits: usize) -> GateMatrix {
    let dim = 1 << qubits;
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Scalar> = (0..dim).map(|_| gaussian(rng)).collect();
        for u in &cols {
            let dot: Scalar = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-8 {
            cols.push(v.into_iter().map(|c| c / n).collect());
        }
    }
    let rows = (0..dim).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    GateMatrix::from_rows(rows).expect("square power-of-two matrix")
}

pub fn random_state(rng: &mut StdRng, qubits: usize) -> StateVector {
    let v: Vec<Scalar> = (0..1 << qubits).map(|_| gaussian(rng)).collect();
    let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    StateVector::new(v.into_iter().map(|c| c / n).collect()).expect("normalized")
}

/// Closed pure values used as the basis for random value distributions.
pub fn value_pool() -> Vec<Term> {
    let b = [Term::zero(), Term::one()];
    let mut pool = vec![Term::Void];
    pool.extend(b.iter().cloned());
    for x in &b {
        for y in &b {
            pool.push(Term::pair(x.clone(), y.clone()));
        }
    }
    pool.push(Term::lam("x", Type::Unit, Term::var("x")));
    pool.push(Term::lam("x", Type::bit(), Term::inl(Term::Void)));
    pool
}

/// A random value distribution of 1 to 5 summands, possibly repeating terms.
pub fn random_value_dist(rng: &mut StdRng, pool: &[Term]) -> Dist {
    let n = rng.random_range(1..=5);
    let summands = (0..n).map(|_| (gaussian(rng), pool[rng.random_range(0..pool.len())].clone())).collect();
    Dist::new(summands).expect("non-empty")
}

pub fn random_scalar(rng: &mut StdRng) -> Scalar {
    gaussian(rng)
}

/// Shapes of generated programs.
#[derive(Clone, Debug)]
pub enum Shape {
    Unit,
    Bit,
    /// `B^⊗n`
    Reg(usize),
    Pair(Box<Shape>, Box<Shape>),
    /// A register split by `let` and reassembled the other way round.
    Split(usize),
}

impl Shape {
    pub fn annotation(&self) -> String {
        match self {
            Shape::Unit => "U".into(),
            Shape::Bit => "B".into(),
            Shape::Reg(n) => format!("#({})", vec!["B"; *n].join(" * ")),
            Shape::Pair(a, b) => format!("({}) * ({})", a.annotation(), b.annotation()),
            Shape::Split(n) => format!("#(#({}) * #B)", vec!["B"; n - 1].join(" * ")),
        }
    }
}

const NOT: &str = "(\\x:B. match x { inl a -> inr a | inr b -> inl b })";

/// Generates closed programs as source text, by shape. Most are well typed;
/// callers filter with the checker.
pub struct ProgramGen {
    rng: StdRng,
}

impl ProgramGen {
    pub fn new(seed: u64) -> ProgramGen {
        ProgramGen { rng: rng(seed) }
    }

    pub fn shape(&mut self) -> Shape {
        match self.rng.random_range(0..10) {
            0 => Shape::Unit,
            1 | 2 => Shape::Bit,
            3..=5 => Shape::Reg(1),
            6 | 7 => Shape::Reg(2),
            8 => {
                if self.rng.random_bool(0.5) {
                    Shape::Reg(3)
                } else {
                    Shape::Split(2)
                }
            }
            _ => Shape::Pair(Box::new(Shape::Reg(1)), Box::new(Shape::Bit)),
        }
    }

    pub fn program(&mut self) -> String {
        let shape = self.shape();
        let depth = self.rng.random_range(1..=3);
        self.gen(&shape, depth)
    }

    fn pick<'a>(&mut self, xs: &[&'a str]) -> &'a str {
        xs[self.rng.random_range(0..xs.len())]
    }

    fn basis_pair(&mut self) -> (&'static str, &'static str) {
        if self.rng.random_bool(0.5) {
            ("inl *", "inr *")
        } else {
            ("inr *", "inl *")
        }
    }

    fn state(&mut self, n: usize) -> String {
        let v = if self.rng.random_bool(0.3) {
            StateVector::basis(n, self.rng.random_range(0..1 << n))
        } else {
            random_state(&mut self.rng, n)
        };
        format!("({})", encode(&v))
    }

    fn gate_term(&mut self, n: usize) -> String {
        let m = if n <= 2 && self.rng.random_bool(0.3) {
            random_isometry(&mut self.rng, n)
        } else {
            let names: Vec<&str> = GATE_NAMES.iter().copied().filter(|g| gate(g).unwrap().qubits() <= n).collect();
            let name = self.pick(&names);
            let g = gate(name).unwrap();
            let mut wires: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                wires.swap(i, self.rng.random_range(0..=i));
            }
            wires.truncate(g.qubits());
            g.embed(&wires, n).unwrap()
        };
        format!("({})", compile_isometry(&m).unwrap())
    }

    pub fn gen(&mut self, shape: &Shape, depth: usize) -> String {
        if depth == 0 {
            return self.leaf(shape);
        }
        let d = depth - 1;
        let choice = self.rng.random_range(0..4);
        match shape {
            Shape::Unit => match choice {
                0 => self.leaf(shape),
                1 => format!("(\\u:U. u) ({})", self.gen(shape, d)),
                2 => format!("({}); ({})", self.gen(shape, d), self.gen(shape, d)),
                _ => {
                    let pair = Shape::Pair(Box::new(Shape::Unit), Box::new(Shape::Unit));
                    format!("let (p, q) = ({}) in p; q", self.gen(&pair, d))
                }
            },
            Shape::Bit => match choice {
                0 => format!("{NOT} ({})", self.gen(shape, d)),
                1 => {
                    let (v, w) = self.basis_pair();
                    format!("match ({}) {{ inl a -> a; {v} | inr b -> b; {w} }}", self.gen(shape, d))
                }
                2 => format!("({}); ({})", self.gen(&Shape::Unit, d), self.gen(shape, d)),
                _ => {
                    let pair = Shape::Pair(Box::new(Shape::Bit), Box::new(Shape::Bit));
                    let xor = format!("match p {{ inl a -> a; q | inr b -> b; {NOT} q }}");
                    let body = match self.rng.random_range(0..3) {
                        0 => xor,
                        1 => "p".to_string(),
                        _ => "q".to_string(),
                    };
                    format!("let (p, q) = ({}) in {body}", self.gen(&pair, d))
                }
            },
            Shape::Reg(n) => match choice {
                0 => self.leaf(shape),
                1 | 2 => format!("{} ({})", self.gate_term(*n), self.gen(shape, d)),
                _ if *n == 1 && self.rng.random_bool(0.5) => {
                    format!("(\\x:#B. x) ({})", self.gen(&Shape::Bit, d))
                }
                _ => {
                    let dim = 1 << n;
                    let i = self.rng.random_range(0..dim);
                    let j = (i + self.rng.random_range(1..dim)) % dim;
                    let (v, w) = (StateVector::basis(*n, i), StateVector::basis(*n, j));
                    format!(
                        "match ({}) {{ inl a -> ({}) | inr b -> ({}) }}",
                        self.gen(&Shape::Bit, d),
                        encode(&v),
                        encode(&w)
                    )
                }
            },
            Shape::Split(n) => {
                let reg = self.gen(&Shape::Reg(*n), d);
                format!("let (x, y) = ({reg}) in (y, x)")
            }
            Shape::Pair(a, b) => {
                let (ta, tb) = (a.annotation(), b.annotation());
                let (ga, gb) = (self.gen(a, d), self.gen(b, d));
                format!("(\\x:{ta}. (\\y:{tb}. (x, y)) ({gb})) ({ga})")
            }
        }
    }

    fn leaf(&mut self, shape: &Shape) -> String {
        match shape {
            Shape::Unit => "*".into(),
            Shape::Bit => self.pick(&["inl *", "inr *"]).into(),
            Shape::Reg(n) => self.state(*n),
            Shape::Pair(..) | Shape::Split(_) => self.gen(shape, 1),
        }
    }
}

/// Subtyping by saturation: the least relation on `universe` closed under the
/// derivation rules, with transitivity only through types of the universe.
pub struct SubtypeOracle {
    index: std::collections::HashMap<Type, usize>,
    rows: Vec<Vec<u64>>,
}

impl SubtypeOracle {
    pub fn new(max_size: usize) -> SubtypeOracle {
        let types = Type::enumerate_up_to(max_size);
        let index: std::collections::HashMap<Type, usize> =
            types.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let words = types.len().div_ceil(64);
        let mut rows = vec![vec![0u64; words]; types.len()];
        let set = |rows: &mut Vec<Vec<u64>>, i: usize, j: usize| {
            let before = rows[i][j / 64];
            rows[i][j / 64] |= 1 << (j % 64);
            before != rows[i][j / 64]
        };
        for (i, t) in types.iter().enumerate() {
            set(&mut rows, i, i);
            if let Type::Sharp(a) = t {
                set(&mut rows, index[a.as_ref()], i);
                if let Type::Sharp(_) = a.as_ref() {
                    set(&mut rows, i, index[a.as_ref()]);
                }
            }
        }
        let get = |rows: &Vec<Vec<u64>>, i: usize, j: usize| rows[i][j / 64] >> (j % 64) & 1 == 1;
        let binary: Vec<(usize, u8, usize, usize)> = types
            .iter()
            .enumerate()
            .filter_map(|(i, t)| match t {
                Type::Sum(a, b) => Some((i, 0, index[a.as_ref()], index[b.as_ref()])),
                Type::Prod(a, b) => Some((i, 1, index[a.as_ref()], index[b.as_ref()])),
                Type::Arrow(a, b) => Some((i, 2, index[a.as_ref()], index[b.as_ref()])),
                _ => None,
            })
            .collect();
        loop {
            let mut changed = false;
            for &(i, ki, a, b) in &binary {
                for &(j, kj, c, d) in &binary {
                    if ki != kj || get(&rows, i, j) {
                        continue;
                    }
                    let first = if ki == 2 { get(&rows, c, a) } else { get(&rows, a, c) };
                    if first && get(&rows, b, d) {
                        changed |= set(&mut rows, i, j);
                    }
                }
            }
            for k in 0..types.len() {
                let via = rows[k].clone();
                for i in 0..types.len() {
                    if i != k && get(&rows, i, k) {
                        for (w, v) in rows[i].iter_mut().zip(&via) {
                            changed |= *w | v != *w;
                            *w |= v;
                        }
                    }
                }
            }
            if !changed {
                return SubtypeOracle { index, rows };
            }
        }
    }

    pub fn holds(&self, a: &Type, b: &Type) -> bool {
        let (i, j) = (self.index[a], self.index[b]);
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }
}
