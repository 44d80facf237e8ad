//! A call-by-value interpreter for Tiny that counts how often each
//! expression is entered.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::value::{Path, Scalar, Value};

pub const DEFAULT_FUEL: u64 = 100_000;

const EXP_CTORS: [&str; 10] = ["EInt", "EString", "EVar", "EBinop", "EApp", "ELam", "ELet", "EParen", "EList", "EIf"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("runtime error: {0}")]
    Runtime(String),
    #[error("evaluation ran out of fuel")]
    FuelExhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    /// Entry count per expression path; expressions never entered are absent.
    pub counts: BTreeMap<Path, u64>,
    /// The printed result, or why evaluation stopped. Counts are kept either way.
    pub result: Result<String, EvalError>,
}

#[derive(Clone)]
enum V<'a> {
    Int(i64),
    Str(String),
    Bool(bool),
    List(Vec<V<'a>>),
    Clo(Rc<Closure<'a>>),
    Prim(&'static str, Vec<V<'a>>),
    Compose(Box<V<'a>>, Box<V<'a>>),
}

struct Closure<'a> {
    params: Vec<String>,
    body: &'a Value,
    path: Path,
    env: Env<'a>,
    args: Vec<V<'a>>,
}

type Env<'a> = Option<Rc<Frame<'a>>>;

struct Frame<'a> {
    name: String,
    bind: Bind<'a>,
    parent: Env<'a>,
}

enum Bind<'a> {
    Val(V<'a>),
    /// A recursive function binding: the closure's environment is the frame itself.
    Rec { params: Vec<String>, body: &'a Value, path: Path },
}

impl fmt::Display for V<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            V::Int(n) => write!(f, "{n}"),
            V::Str(s) => write!(f, "{s:?}"),
            V::Bool(b) => write!(f, "{}", if *b { "True" } else { "False" }),
            V::List(xs) => {
                f.write_str("[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            _ => f.write_str("<function>"),
        }
    }
}

fn prim_arity(name: &str) -> Option<usize> {
    matches!(name, "not" | "head" | "tail" | "null" | "length").then_some(1)
}

fn name_of(ident: &Value) -> String {
    ident.child(1).and_then(Value::token).unwrap_or_default().to_string()
}

fn param_names(params: &Value) -> Vec<String> {
    params.children().iter().map(name_of).collect()
}

fn err<T>(msg: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError::Runtime(msg.into()))
}

struct Interp<'a> {
    fuel: u64,
    counts: BTreeMap<Path, u64>,
    globals: HashMap<String, (&'a Value, Path)>,
    cache: HashMap<String, V<'a>>,
}

impl<'a> Interp<'a> {
    fn lookup(&mut self, name: &str, env: &Env<'a>) -> Result<V<'a>, EvalError> {
        let mut cur = env.clone();
        while let Some(frame) = cur {
            if frame.name == name {
                return Ok(match &frame.bind {
                    Bind::Val(v) => v.clone(),
                    Bind::Rec { params, body, path } => V::Clo(Rc::new(Closure {
                        params: params.clone(),
                        body,
                        path: path.clone(),
                        env: Some(frame.clone()),
                        args: Vec::new(),
                    })),
                });
            }
            cur = frame.parent.clone();
        }
        if let Some(v) = self.cache.get(name) {
            return Ok(v.clone());
        }
        if let Some((eq, path)) = self.globals.get(name).cloned() {
            let params = param_names(&eq.children()[1]);
            let body = &eq.children()[3];
            let body_path = path.extend(4);
            let v = if params.is_empty() {
                self.eval(body, &body_path, &None)?
            } else {
                V::Clo(Rc::new(Closure { params, body, path: body_path, env: None, args: Vec::new() }))
            };
            self.cache.insert(name.to_string(), v.clone());
            return Ok(v);
        }
        match name {
            "True" => Ok(V::Bool(true)),
            "False" => Ok(V::Bool(false)),
            _ if prim_arity(name).is_some() => {
                let p = ["not", "head", "tail", "null", "length"].into_iter().find(|p| *p == name).expect("known");
                Ok(V::Prim(p, Vec::new()))
            }
            _ => err(format!("unbound variable `{name}`")),
        }
    }

    fn eval(&mut self, e: &'a Value, path: &Path, env: &Env<'a>) -> Result<V<'a>, EvalError> {
        if self.fuel == 0 {
            return Err(EvalError::FuelExhausted);
        }
        self.fuel -= 1;
        *self.counts.entry(path.clone()).or_insert(0) += 1;
        let kids = e.children();
        let at = |i: usize| path.extend(i);
        match e.ctor() {
            "EInt" => {
                let tok = kids[0].token().unwrap_or_default();
                tok.parse().map(V::Int).or_else(|_| err(format!("integer literal out of range: {tok}")))
            }
            "EString" => Ok(V::Str(kids[0].token().unwrap_or_default().to_string())),
            "EVar" => self.lookup(&name_of(&kids[0]), env),
            "EParen" => self.eval(&kids[0], &at(1), env),
            "EList" => {
                let mut xs = Vec::with_capacity(kids.len());
                for (i, k) in kids.iter().enumerate() {
                    xs.push(self.eval(k, &at(i + 1), env)?);
                }
                Ok(V::List(xs))
            }
            "EApp" => {
                let f = self.eval(&kids[0], &at(1), env)?;
                let a = self.eval(&kids[1], &at(2), env)?;
                self.apply(f, a)
            }
            "ELam" => Ok(V::Clo(Rc::new(Closure {
                params: param_names(&kids[1]),
                body: &kids[3],
                path: at(4),
                env: env.clone(),
                args: Vec::new(),
            }))),
            "ELet" => {
                let name = name_of(&kids[1]);
                let params = param_names(&kids[2]);
                let bind = if params.is_empty() {
                    Bind::Val(self.eval(&kids[4], &at(5), env)?)
                } else {
                    Bind::Rec { params, body: &kids[4], path: at(5) }
                };
                let env = Some(Rc::new(Frame { name, bind, parent: env.clone() }));
                self.eval(&kids[6], &at(7), &env)
            }
            "EIf" => match self.eval(&kids[1], &at(2), env)? {
                V::Bool(true) => self.eval(&kids[3], &at(4), env),
                V::Bool(false) => self.eval(&kids[5], &at(6), env),
                v => err(format!("`if` condition is not a boolean: {v}")),
            },
            "EBinop" => self.binop(kids, path, env),
            other => err(format!("cannot evaluate `{other}`")),
        }
    }

    fn binop(&mut self, kids: &'a [Value], path: &Path, env: &Env<'a>) -> Result<V<'a>, EvalError> {
        let op = kids[1].token().unwrap_or_default();
        let l = self.eval(&kids[0], &path.extend(1), env)?;
        if let ("&&" | "||", V::Bool(b)) = (op, &l) {
            if (op == "&&") != *b {
                return Ok(V::Bool(*b));
            }
        }
        let r = self.eval(&kids[2], &path.extend(3), env)?;
        use V::*;
        Ok(match (op, l, r) {
            ("$", f, x) => return self.apply(f, x),
            (".", f, g) => Compose(Box::new(f), Box::new(g)),
            (">>>", f, g) => Compose(Box::new(g), Box::new(f)),
            ("+", Int(a), Int(b)) => Int(a.wrapping_add(b)),
            ("-", Int(a), Int(b)) => Int(a.wrapping_sub(b)),
            ("*", Int(a), Int(b)) => Int(a.wrapping_mul(b)),
            ("/", Int(_), Int(0)) => return err("division by zero"),
            ("/", Int(a), Int(b)) => Int(a.wrapping_div(b)),
            ("&&" | "||", Bool(_), Bool(b)) => Bool(b),
            ("++", Str(a), Str(b)) => Str(a + &b),
            ("++", List(mut a), List(b)) => {
                a.extend(b);
                List(a)
            }
            (":", x, List(mut xs)) => {
                xs.insert(0, x);
                List(xs)
            }
            ("==" | "/=" | "<" | "<=" | ">" | ">=", a, b) => {
                let ord = compare(&a, &b).ok_or_else(|| EvalError::Runtime(format!("cannot compare {a} and {b}")))?;
                Bool(match op {
                    "==" => ord.is_eq(),
                    "/=" => ord.is_ne(),
                    "<" => ord.is_lt(),
                    "<=" => ord.is_le(),
                    ">" => ord.is_gt(),
                    _ => ord.is_ge(),
                })
            }
            (op, a, b) => return err(format!("cannot apply `{op}` to {a} and {b}")),
        })
    }

    fn apply(&mut self, f: V<'a>, a: V<'a>) -> Result<V<'a>, EvalError> {
        match f {
            V::Clo(c) => {
                let mut args = c.args.clone();
                args.push(a);
                if args.len() < c.params.len() {
                    return Ok(V::Clo(Rc::new(Closure {
                        params: c.params.clone(),
                        body: c.body,
                        path: c.path.clone(),
                        env: c.env.clone(),
                        args,
                    })));
                }
                let mut env = c.env.clone();
                for (name, v) in c.params.iter().zip(args) {
                    env = Some(Rc::new(Frame { name: name.clone(), bind: Bind::Val(v), parent: env }));
                }
                self.eval(c.body, &c.path, &env)
            }
            V::Prim(name, mut args) => {
                args.push(a);
                if args.len() < prim_arity(name).unwrap_or(1) {
                    return Ok(V::Prim(name, args));
                }
                prim(name, args)
            }
            V::Compose(f, g) => {
                let inner = self.apply(*g, a)?;
                self.apply(*f, inner)
            }
            v => err(format!("{v} is not a function")),
        }
    }
}

fn compare(a: &V<'_>, b: &V<'_>) -> Option<std::cmp::Ordering> {
    match (a, b) {
        (V::Int(x), V::Int(y)) => Some(x.cmp(y)),
        (V::Str(x), V::Str(y)) => Some(x.cmp(y)),
        (V::Bool(x), V::Bool(y)) => Some(x.cmp(y)),
        (V::List(xs), V::List(ys)) => {
            for (x, y) in xs.iter().zip(ys) {
                match compare(x, y)? {
                    std::cmp::Ordering::Equal => {}
                    o => return Some(o),
                }
            }
            Some(xs.len().cmp(&ys.len()))
        }
        _ => None,
    }
}

fn prim<'a>(name: &str, mut args: Vec<V<'a>>) -> Result<V<'a>, EvalError> {
    let x = args.pop().expect("arity 1");
    match (name, x) {
        ("not", V::Bool(b)) => Ok(V::Bool(!b)),
        ("head", V::List(xs)) => xs.into_iter().next().map_or_else(|| err("head of empty list"), Ok),
        ("tail", V::List(xs)) if !xs.is_empty() => Ok(V::List(xs[1..].to_vec())),
        ("tail", V::List(_)) => err("tail of empty list"),
        ("null", V::List(xs)) => Ok(V::Bool(xs.is_empty())),
        ("null", V::Str(s)) => Ok(V::Bool(s.is_empty())),
        ("length", V::List(xs)) => Ok(V::Int(xs.len() as i64)),
        ("length", V::Str(s)) => Ok(V::Int(s.chars().count() as i64)),
        (name, x) => err(format!("`{name}` cannot be applied to {x}")),
    }
}

/// Evaluates the zero-argument equation `entry` and annotates every
/// expression of `program` with `eval_count` and `eval_pct` (count relative
/// to the most-entered expression). Counts survive runtime errors and fuel
/// exhaustion.
pub fn trace_eval(program: &mut Value, entry: &str, fuel: u64) -> Trace {
    // Deeply recursive programs need more stack than a default thread has.
    let (counts, result) = std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(s, || run(program, entry, fuel))
            .expect("spawn interpreter thread")
            .join()
            .expect("interpreter does not panic")
    });
    let max = counts.values().copied().max().unwrap_or(0);
    let exps: Vec<Path> =
        program.walk().into_iter().filter(|(_, v)| EXP_CTORS.contains(&v.ctor())).map(|(p, _)| p).collect();
    for p in exps {
        let n = counts.get(&p).copied().unwrap_or(0);
        let pct = if max == 0 { 0.0 } else { n as f64 / max as f64 };
        let v = program.get_mut(&p).expect("walked path");
        v.annotate("eval_count", Scalar::Int(n as i64));
        v.annotate("eval_pct", Scalar::Float(pct));
    }
    Trace { counts, result }
}

fn run(program: &Value, entry: &str, fuel: u64) -> (BTreeMap<Path, u64>, Result<String, EvalError>) {
    let mut it = Interp { fuel, counts: BTreeMap::new(), globals: HashMap::new(), cache: HashMap::new() };
    for (i, d) in program.children().iter().enumerate() {
        if d.ctor() == "Equation" {
            it.globals.entry(name_of(&d.children()[0])).or_insert((d, Path::root().extend(i + 1)));
        }
    }
    let result = match it.globals.get(entry) {
        None => err(format!("no equation named `{entry}`")),
        Some((eq, _)) if !eq.children()[1].children().is_empty() => err(format!("`{entry}` takes arguments")),
        Some(_) => it.lookup(entry, &None).map(|v| v.to_string()),
    };
    (it.counts, result)
}
