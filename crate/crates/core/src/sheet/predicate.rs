//! Guard expressions: a small closed language over values bound by selectors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::value::{Path, Scalar, Value};

use super::ast::Pos;

#[derive(Debug, Clone)]
pub enum Lit {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
}

impl PartialEq for Lit {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Lit::Int(a), Lit::Int(b)) => a == b,
            (Lit::Float(a), Lit::Float(b)) => a.to_bits() == b.to_bits(),
            (Lit::Str(a), Lit::Str(b)) => a == b,
            (Lit::Bool(a), Lit::Bool(b)) => a == b,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnOp {
    Not,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Mod => "mod",
            BinOp::Eq => "==",
            BinOp::Ne => "/=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }

    /// Binding strength; higher binds tighter.
    pub fn level(self) -> u8 {
        match self {
            BinOp::Or => 1,
            BinOp::And => 2,
            BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => 3,
            BinOp::Add | BinOp::Sub => 4,
            BinOp::Mul | BinOp::Div | BinOp::Mod => 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    CtorOf,
    TokenOf,
    Ann,
    ChildCount,
}

impl Func {
    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "ctor_of" => Func::CtorOf,
            "token_of" => Func::TokenOf,
            "ann" => Func::Ann,
            "child_count" => Func::ChildCount,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::CtorOf => "ctor_of",
            Func::TokenOf => "token_of",
            Func::Ann => "ann",
            Func::ChildCount => "child_count",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Lit(Lit),
    Var(String, Pos),
    Unary(UnOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    In(Box<Expr>, Vec<Lit>),
    Call(Func, Vec<Expr>, Pos),
}

impl Expr {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Lit(_) => {}
            Expr::Var(v, _) => {
                out.insert(v.clone());
            }
            Expr::Unary(_, e) | Expr::In(e, _) => e.collect_vars(out),
            Expr::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Call(_, args, _) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

/// A value bound by a selector, with its provenance path.
#[derive(Debug, Clone, PartialEq)]
pub struct Binding<'a> {
    pub value: &'a Value,
    pub path: Path,
}

pub type ValueEnv<'a> = BTreeMap<String, Binding<'a>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct EvalError(pub String);

#[derive(Debug, Clone)]
enum Rt<'a> {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
    Value(&'a Value),
}

impl fmt::Display for Rt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rt::Int(i) => write!(f, "{i}"),
            Rt::Float(x) => write!(f, "{x}"),
            Rt::Str(s) => write!(f, "{s:?}"),
            Rt::Bool(b) => write!(f, "{b}"),
            Rt::Value(v) => write!(f, "<{}>", v.ctor()),
        }
    }
}

impl From<&Lit> for Rt<'_> {
    fn from(l: &Lit) -> Self {
        match l {
            Lit::Int(i) => Rt::Int(*i),
            Lit::Float(x) => Rt::Float(*x),
            Lit::Str(s) => Rt::Str(s.clone()),
            Lit::Bool(b) => Rt::Bool(*b),
        }
    }
}

impl From<&Scalar> for Rt<'_> {
    fn from(s: &Scalar) -> Self {
        match s {
            Scalar::Int(i) => Rt::Int(*i),
            Scalar::Float(x) => Rt::Float(*x),
            Scalar::Str(s) => Rt::Str(s.clone()),
            Scalar::Bool(b) => Rt::Bool(*b),
        }
    }
}

/// The token a value stands for: its own, or that of its only child.
pub fn token_of(v: &Value) -> Option<&Value> {
    let mut cur = v;
    loop {
        if cur.token().is_some() {
            return Some(cur);
        }
        match cur.children() {
            [only] => cur = only,
            _ => return None,
        }
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError(msg.into()))
}

/// Values used as operands become the scalar their token denotes:
/// `Int` leaves are integers, every other token is a string.
fn scalarize(r: Rt<'_>) -> Result<Rt<'_>, EvalError> {
    match r {
        Rt::Value(v) => {
            let leaf = token_of(v).ok_or_else(|| EvalError(format!("value <{}> has no token", v.ctor())))?;
            let tok = leaf.token().unwrap_or_default();
            if leaf.ctor() == "Int" {
                tok.parse::<i64>()
                    .map(Rt::Int)
                    .map_err(|_| EvalError(format!("malformed integer token {tok:?}")))
            } else {
                Ok(Rt::Str(tok.to_string()))
            }
        }
        other => Ok(other),
    }
}

fn as_bool(r: Rt<'_>) -> Result<bool, EvalError> {
    match scalarize(r)? {
        Rt::Bool(b) => Ok(b),
        other => err(format!("expected a boolean, found {other}")),
    }
}

fn compare(a: &Rt<'_>, b: &Rt<'_>) -> Result<std::cmp::Ordering, EvalError> {
    match (a, b) {
        (Rt::Int(x), Rt::Int(y)) => Ok(x.cmp(y)),
        (Rt::Int(_) | Rt::Float(_), Rt::Int(_) | Rt::Float(_)) => {
            let (x, y) = (num(a), num(b));
            x.partial_cmp(&y).ok_or_else(|| EvalError("comparison with NaN".into()))
        }
        (Rt::Str(x), Rt::Str(y)) => Ok(x.cmp(y)),
        (Rt::Bool(x), Rt::Bool(y)) => Ok(x.cmp(y)),
        _ => err(format!("cannot compare {a} with {b}")),
    }
}

fn num(r: &Rt<'_>) -> f64 {
    match r {
        Rt::Int(i) => *i as f64,
        Rt::Float(x) => *x,
        _ => f64::NAN,
    }
}

fn arith(op: BinOp, a: Rt<'_>, b: Rt<'_>) -> Result<Rt<'static>, EvalError> {
    match (&a, &b) {
        (Rt::Int(x), Rt::Int(y)) => {
            let (x, y) = (*x, *y);
            let r = match op {
                BinOp::Add => x.checked_add(y),
                BinOp::Sub => x.checked_sub(y),
                BinOp::Mul => x.checked_mul(y),
                BinOp::Div if y == 0 => return err("division by zero"),
                BinOp::Div => Some(x.div_euclid(y)),
                BinOp::Mod if y == 0 => return err("modulo by zero"),
                BinOp::Mod => Some(x.rem_euclid(y)),
                _ => unreachable!(),
            };
            r.map(Rt::Int).ok_or_else(|| EvalError("integer overflow".into()))
        }
        (Rt::Int(_) | Rt::Float(_), Rt::Int(_) | Rt::Float(_)) => {
            let (x, y) = (num(&a), num(&b));
            Ok(Rt::Float(match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => x / y,
                BinOp::Mod => x.rem_euclid(y),
                _ => unreachable!(),
            }))
        }
        (Rt::Str(x), Rt::Str(y)) if op == BinOp::Add => Ok(Rt::Str(format!("{x}{y}"))),
        _ => err(format!("operator {} does not apply to {a} and {b}", op.symbol())),
    }
}

fn eval<'a>(env: &ValueEnv<'a>, e: &Expr) -> Result<Rt<'a>, EvalError> {
    match e {
        Expr::Lit(l) => Ok(l.into()),
        Expr::Var(v, _) => env
            .get(v)
            .map(|b| Rt::Value(b.value))
            .ok_or_else(|| EvalError(format!("unbound variable `{v}`"))),
        Expr::Unary(UnOp::Not, x) => Ok(Rt::Bool(!as_bool(eval(env, x)?)?)),
        Expr::Unary(UnOp::Neg, x) => match scalarize(eval(env, x)?)? {
            Rt::Int(i) => i.checked_neg().map(Rt::Int).ok_or_else(|| EvalError("integer overflow".into())),
            Rt::Float(f) => Ok(Rt::Float(-f)),
            other => err(format!("cannot negate {other}")),
        },
        Expr::Binary(BinOp::And, a, b) => {
            Ok(Rt::Bool(as_bool(eval(env, a)?)? && as_bool(eval(env, b)?)?))
        }
        Expr::Binary(BinOp::Or, a, b) => {
            Ok(Rt::Bool(as_bool(eval(env, a)?)? || as_bool(eval(env, b)?)?))
        }
        Expr::Binary(op, a, b) => {
            let x = scalarize(eval(env, a)?)?;
            let y = scalarize(eval(env, b)?)?;
            use std::cmp::Ordering::*;
            let cmp = |want: &[std::cmp::Ordering]| compare(&x, &y).map(|o| Rt::Bool(want.contains(&o)));
            match op {
                BinOp::Eq => cmp(&[Equal]),
                BinOp::Ne => cmp(&[Less, Greater]),
                BinOp::Lt => cmp(&[Less]),
                BinOp::Le => cmp(&[Less, Equal]),
                BinOp::Gt => cmp(&[Greater]),
                BinOp::Ge => cmp(&[Greater, Equal]),
                _ => arith(*op, x, y),
            }
        }
        Expr::In(x, items) => {
            let x = scalarize(eval(env, x)?)?;
            for it in items {
                let y: Rt<'_> = it.into();
                if compare(&x, &y)? == std::cmp::Ordering::Equal {
                    return Ok(Rt::Bool(true));
                }
            }
            Ok(Rt::Bool(false))
        }
        Expr::Call(f, args, _) => call(env, *f, args),
    }
}

fn value_arg<'a>(env: &ValueEnv<'a>, f: Func, args: &[Expr], i: usize) -> Result<&'a Value, EvalError> {
    match args.get(i).map(|a| eval(env, a)).transpose()? {
        Some(Rt::Value(v)) => Ok(v),
        Some(other) => err(format!("{}: expected a bound value, found {other}", f.name())),
        None => err(format!("{}: missing argument", f.name())),
    }
}

fn call<'a>(env: &ValueEnv<'a>, f: Func, args: &[Expr]) -> Result<Rt<'a>, EvalError> {
    match f {
        Func::CtorOf => Ok(Rt::Str(value_arg(env, f, args, 0)?.ctor().to_string())),
        Func::ChildCount => Ok(Rt::Int(value_arg(env, f, args, 0)?.children().len() as i64)),
        Func::TokenOf => {
            let v = value_arg(env, f, args, 0)?;
            token_of(v)
                .and_then(Value::token)
                .map(|t| Rt::Str(t.to_string()))
                .ok_or_else(|| EvalError(format!("token_of: <{}> has no token", v.ctor())))
        }
        Func::Ann => {
            let v = value_arg(env, f, args, 0)?;
            let key = match args.get(1).map(|a| eval(env, a)).transpose()? {
                Some(Rt::Str(s)) => s,
                _ => return err("ann: second argument must be a string key"),
            };
            match (v.annotation(&key), args.get(2)) {
                (Some(s), _) => Ok(s.into()),
                (None, Some(default)) => scalarize(eval(env, default)?),
                (None, None) => err(format!("ann: <{}> has no annotation {key:?}", v.ctor())),
            }
        }
    }
}

/// Evaluates a guard; non-boolean results are errors.
pub fn eval_predicate(env: &ValueEnv<'_>, expr: &Expr) -> Result<bool, EvalError> {
    as_bool(eval(env, expr)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheet::parser::parse_expr;

    fn env_with<'a>(name: &str, v: &'a Value) -> ValueEnv<'a> {
        let mut env = ValueEnv::new();
        env.insert(name.into(), Binding { value: v, path: Path::root() });
        env
    }

    fn run(env: &ValueEnv<'_>, src: &str) -> Result<bool, EvalError> {
        eval_predicate(env, &parse_expr(src).unwrap())
    }

    #[test]
    fn square_membership() {
        let four = Value::int(4);
        let env = env_with("n", &four);
        assert_eq!(run(&env, "n in [0, 1, 4, 9, 16]"), Ok(true));
        let three = Value::int(3);
        assert_eq!(run(&env_with("n", &three), "n in [0, 1, 4, 9, 16]"), Ok(false));
    }

    #[test]
    fn operator_direction_membership() {
        let op = Value::leaf("Op", ">>=");
        assert_eq!(run(&env_with("op", &op), r#"token_of(op) in [">>=", ">>>"]"#), Ok(true));
    }

    #[test]
    fn constant_true() {
        assert_eq!(run(&ValueEnv::new(), "true"), Ok(true));
    }

    #[test]
    fn arithmetic_and_precedence() {
        let n = Value::node("EInt", vec![Value::int(7)]);
        let env = env_with("n", &n);
        assert_eq!(run(&env, "n mod 6 == 1 && not (n < 0)"), Ok(true));
        assert_eq!(run(&env, "n * 2 + 1 == 15"), Ok(true));
        assert_eq!(run(&env, "-n == 0 - 7"), Ok(true));
        assert_eq!(run(&env, "ctor_of(n) == \"EInt\" && child_count(n) == 1"), Ok(true));
    }

    #[test]
    fn annotations_and_defaults() {
        let v = Value::node("Ident", vec![Value::leaf("Name", "x")])
            .with_annotation("eval_pct", Scalar::Float(0.5))
            .with_annotation("binder_id", Scalar::Int(12));
        let env = env_with("x", &v);
        assert_eq!(run(&env, r#"ann(x, "eval_pct") > 0.25 && ann(x, "eval_pct") <= 0.5"#), Ok(true));
        assert_eq!(run(&env, r#"ann(x, "use_of", -1) == -1"#), Ok(true));
        assert!(run(&env, r#"ann(x, "use_of") == 1"#).is_err());
        assert_eq!(run(&env, r#"ann(x, "binder_id") mod 6 == 0"#), Ok(true));
    }

    #[test]
    fn type_mismatch_is_eval_error() {
        let op = Value::leaf("Op", "+");
        let env = env_with("op", &op);
        assert!(run(&env, "op > 3").is_err());
        assert!(run(&env, "1").is_err());
        assert!(run(&env, "missing == 1").is_err());
        assert!(run(&env, "1 / 0 == 0").is_err());
    }
}
