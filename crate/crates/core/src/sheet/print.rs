//! Canonical printer. `parse(print(rules)) == rules` for any parsed sheet.

use std::fmt::Write;

use super::ast::*;
use super::predicate::{Expr, Lit, UnOp};

pub fn print_stylesheet(rules: &[ExternalRule]) -> String {
    let mut out = String::new();
    for r in rules {
        out.push_str(&print_rule(r));
        out.push('\n');
    }
    out
}

pub fn print_rule(r: &ExternalRule) -> String {
    let mut out = r.selectors.iter().map(print_selector).collect::<Vec<_>>().join(", ");
    if let Some(g) = &r.guard {
        let _ = write!(out, " if {}", print_expr(g));
    }
    out.push_str(" ->");
    for b in &r.blocks {
        let _ = write!(out, "\n  {} {{", b.names.join(" "));
        for a in &b.attrs {
            let _ = write!(out, " {}: {}", a.name, a.value);
            if a.precedence != 0 {
                let _ = write!(out, " ! {}", a.precedence);
            }
            out.push(';');
        }
        out.push_str(" }");
    }
    out
}

pub fn print_selector(s: &PathSelector) -> String {
    let mut out = print_node(&s.head);
    for (c, n) in &s.tail {
        out.push_str(match c {
            Combinator::Child => " > ",
            Combinator::Descendant => " ",
            Combinator::NextSibling => " + ",
            Combinator::SubsequentSibling => " ~ ",
        });
        out.push_str(&print_node(n));
    }
    out
}

fn print_node(n: &NodeSelector) -> String {
    let mut out = match &n.basic {
        Basic::Pattern(p) => print_pattern(p),
        Basic::Class { name: Some(x) } => format!("{x}@"),
        Basic::Class { name: None } => String::new(),
        Basic::Top => "_".into(),
    };
    for c in &n.classes {
        let _ = write!(out, ".{c}");
    }
    out
}

pub fn print_pattern(p: &Pattern) -> String {
    match p {
        Pattern::Wildcard => "_".into(),
        Pattern::KeepOut => "xxx".into(),
        Pattern::Var { name, datatype: Some(d), .. } => format!("{name}:{d}"),
        Pattern::Var { name, datatype: None, .. } => name.clone(),
        Pattern::LitInt(i) => i.to_string(),
        Pattern::LitStr(s) => quote(s),
        Pattern::Ctor { binder, ctor, args, .. } => {
            let mut out = match binder {
                Some(b) => format!("{b}@"),
                None => String::new(),
            };
            out.push_str(ctor);
            if let Some(args) = args {
                out.push('(');
                out.push_str(&args.iter().map(print_pattern).collect::<Vec<_>>().join(", "));
                out.push(')');
            }
            out
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn print_lit(l: &Lit) -> String {
    match l {
        Lit::Int(i) => i.to_string(),
        Lit::Float(f) => format!("{f:?}"),
        Lit::Str(s) => quote(s),
        Lit::Bool(b) => b.to_string(),
    }
}

/// Fully parenthesised, so precedence never needs reconstructing.
pub fn print_expr(e: &Expr) -> String {
    match e {
        Expr::Lit(l) => print_lit(l),
        Expr::Var(v, _) => v.clone(),
        Expr::Unary(UnOp::Not, x) => format!("(not {})", print_expr(x)),
        Expr::Unary(UnOp::Neg, x) => format!("(- {})", print_expr(x)),
        Expr::Binary(op, a, b) => format!("({} {} {})", print_expr(a), op.symbol(), print_expr(b)),
        Expr::In(x, lits) => {
            format!("({} in [{}])", print_expr(x), lits.iter().map(print_lit).collect::<Vec<_>>().join(", "))
        }
        Expr::Call(f, args, _) => {
            format!("{}({})", f.name(), args.iter().map(print_expr).collect::<Vec<_>>().join(", "))
        }
    }
}
