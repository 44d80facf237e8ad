//! Registry-dependent checks on parsed rules.

use std::collections::{BTreeSet, HashSet};

use crate::value::ConstructorRegistry;

use super::ast::*;
use super::predicate::Expr;
use super::{DiagKind, Diagnostic};

pub fn check_stylesheet(rules: &[ExternalRule], registry: &ConstructorRegistry) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for r in rules {
        for sel in &r.selectors {
            let mut seen = HashSet::new();
            for n in sel.nodes() {
                match &n.basic {
                    Basic::Pattern(p) => check_pattern(p, registry, &mut seen, &mut out),
                    Basic::Class { name: Some(x) } if !seen.insert(x.clone()) => {
                        out.push(Diagnostic::new(DiagKind::DuplicateBinding, r.pos, format!("`{x}` is bound twice")));
                    }
                    _ => {}
                }
            }
        }
        if let Some(g) = &r.guard {
            for (name, pos) in var_uses(g) {
                if let Some(i) = r.selectors.iter().position(|s| !s.value_binders().contains(&name)) {
                    out.push(Diagnostic::new(
                        DiagKind::UnboundVariable,
                        pos,
                        format!("guard variable `{name}` is not bound by selector {}", i + 1),
                    ));
                }
            }
        }
    }
    out
}

fn check_pattern(p: &Pattern, reg: &ConstructorRegistry, seen: &mut HashSet<String>, out: &mut Vec<Diagnostic>) {
    let mut bind = |name: &str, pos: Pos, out: &mut Vec<Diagnostic>| {
        if !seen.insert(name.to_string()) {
            out.push(Diagnostic::new(DiagKind::DuplicateBinding, pos, format!("`{name}` is bound twice")));
        }
    };
    match p {
        Pattern::Var { name, datatype, pos } => {
            bind(name, *pos, out);
            if let Some(d) = datatype {
                if !reg.has_datatype(d) {
                    out.push(Diagnostic::new(DiagKind::UnknownDatatype, *pos, format!("unknown datatype `{d}`")));
                }
            }
        }
        Pattern::Ctor { binder, ctor, args, pos } => {
            if let Some(b) = binder {
                bind(b, *pos, out);
            }
            match reg.arity(ctor) {
                None => out.push(Diagnostic::new(
                    DiagKind::UnknownConstructor,
                    *pos,
                    format!("unknown constructor `{ctor}`"),
                )),
                Some(ar) => {
                    if let Some(args) = args {
                        if !ar.accepts(args.len()) {
                            out.push(Diagnostic::new(
                                DiagKind::ArityMismatch,
                                *pos,
                                format!("`{ctor}` takes {ar} argument(s), pattern has {}", args.len()),
                            ));
                        }
                    }
                }
            }
            for a in args.iter().flatten() {
                check_pattern(a, reg, seen, out);
            }
        }
        _ => {}
    }
}

fn var_uses(e: &Expr) -> Vec<(String, Pos)> {
    fn go(e: &Expr, seen: &mut BTreeSet<String>, out: &mut Vec<(String, Pos)>) {
        match e {
            Expr::Var(v, p) => {
                if seen.insert(v.clone()) {
                    out.push((v.clone(), *p));
                }
            }
            Expr::Lit(_) => {}
            Expr::Unary(_, x) | Expr::In(x, _) => go(x, seen, out),
            Expr::Binary(_, a, b) => {
                go(a, seen, out);
                go(b, seen, out);
            }
            Expr::Call(_, args, _) => args.iter().for_each(|a| go(a, seen, out)),
        }
    }
    let mut out = Vec::new();
    go(e, &mut BTreeSet::new(), &mut out);
    out
}
