//! Tiny: a small Haskell-like language used as the demonstration frontend.

mod interp;
mod names;
mod syntax;
mod view;

pub use interp::{trace_eval, EvalError, Trace, DEFAULT_FUEL};
pub use names::resolve_names;
pub use syntax::{associate, flatten_chain, parse_tiny, Assoc, FixityTable, Span, Syn, SyntaxError, TinyProgram};
pub use view::{print_tiny, view_tiny};

use crate::value::{Arity, ConstructorRegistry};

/// Constructors of the Tiny syntax tree plus a small prelude (`Either`, `List`).
pub fn tiny_registry() -> ConstructorRegistry {
    use Arity::{Fixed, Variadic};
    let mut r = ConstructorRegistry::with_primitives();
    let rows: &[(&str, &str, Arity)] = &[
        ("Program", "Program", Variadic),
        ("Decl", "Signature", Fixed(3)),
        ("Decl", "Equation", Fixed(4)),
        ("Decl", "Comment", Fixed(0)),
        ("Ident", "Ident", Fixed(1)),
        ("Params", "Params", Variadic),
        ("Exp", "EInt", Fixed(1)),
        ("Exp", "EString", Fixed(1)),
        ("Exp", "EVar", Fixed(1)),
        ("Exp", "EBinop", Fixed(3)),
        ("Exp", "EApp", Fixed(2)),
        ("Exp", "ELam", Fixed(4)),
        ("Exp", "ELet", Fixed(7)),
        ("Exp", "EParen", Fixed(1)),
        ("Exp", "EList", Variadic),
        ("Exp", "EIf", Fixed(6)),
        ("Type", "TCon", Fixed(1)),
        ("Type", "TVar", Fixed(1)),
        ("Type", "TFun", Fixed(3)),
        ("Type", "TApp", Fixed(2)),
        ("Type", "TList", Fixed(1)),
        ("Type", "TParen", Fixed(1)),
        ("Type", "TUnit", Fixed(0)),
        ("Name", "Name", Fixed(0)),
        ("Op", "Op", Fixed(0)),
        ("Keyword", "Kw", Fixed(0)),
        ("Either", "Left", Fixed(1)),
        ("Either", "Right", Fixed(1)),
        ("List", "List", Variadic),
    ];
    for &(dt, ctor, arity) in rows {
        r.add(dt, ctor, arity).expect("constructor names are unique");
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn either_has_two_constructors() {
        let got: Vec<_> = tiny_registry().lookup("Either").into_iter().collect();
        assert_eq!(got, ["Left", "Right"]);
    }
}
