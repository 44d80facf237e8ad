//! Style sheet language: syntax, parsing, checking and desugaring.

pub mod ast;
pub mod check;
pub mod desugar;
pub mod parser;
pub mod predicate;
pub mod print;

use std::fmt;

use serde::Serialize;

pub use ast::{Basic, Combinator, ExternalRule, NodeSelector, PathSelector, Pattern, Pos, StyledBlock};
pub use check::check_stylesheet;
pub use desugar::{desugar, desugar_all, InternalRule, NodeSubrule, PatternSubrule};
pub use parser::{parse_expr, parse_stylesheet};
pub use predicate::{eval_predicate, EvalError, Expr};
pub use print::print_stylesheet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiagKind {
    SyntaxError,
    UnknownConstructor,
    UnknownDatatype,
    ArityMismatch,
    UnboundStyleName,
    UnboundVariable,
    DuplicateBinding,
}

/// A located problem in a style sheet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagKind, pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic { kind, line: pos.line, col: pos.col, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {:?}: {}", self.line, self.col, self.kind, self.message)
    }
}

impl std::error::Error for Diagnostic {}

/// Parses and checks a sheet, returning every diagnostic found.
pub fn load_stylesheet(
    text: &str,
    registry: &crate::value::ConstructorRegistry,
) -> Result<Vec<ExternalRule>, Vec<Diagnostic>> {
    let rules = parse_stylesheet(text)?;
    let diags = check_stylesheet(&rules, registry);
    if diags.is_empty() {
        Ok(rules)
    } else {
        Err(diags)
    }
}
