//! Name resolution: every binding occurrence gets a `binder_id`; every use
//! gets the `use_of` its binder, or `unbound`.

use std::collections::HashMap;

use crate::value::{Path, Scalar, Value};

struct Resolver {
    next: i64,
    globals: HashMap<String, i64>,
    notes: Vec<(Path, &'static str, Scalar)>,
}

fn name_of(ident: &Value) -> &str {
    ident.child(1).and_then(Value::token).unwrap_or_default()
}

impl Resolver {
    fn bind(&mut self, path: Path) -> i64 {
        let id = self.next;
        self.next += 1;
        self.notes.push((path, "binder_id", Scalar::Int(id)));
        id
    }

    fn refer(&mut self, ident: &Value, path: Path, scope: &[(String, i64)]) {
        let name = name_of(ident);
        let found = scope.iter().rev().find(|(n, _)| n == name).map(|b| b.1).or_else(|| self.globals.get(name).copied());
        match found {
            Some(id) => self.notes.push((path, "use_of", Scalar::Int(id))),
            None => self.notes.push((path, "unbound", Scalar::Bool(true))),
        }
    }

    fn params(&mut self, params: &Value, path: &Path, scope: &mut Vec<(String, i64)>) {
        for (i, p) in params.children().iter().enumerate() {
            let id = self.bind(path.extend(i + 1));
            scope.push((name_of(p).to_string(), id));
        }
    }

    fn exp(&mut self, e: &Value, path: &Path, scope: &mut Vec<(String, i64)>) {
        let at = |i: usize| path.extend(i);
        let kids = e.children();
        match e.ctor() {
            "EVar" => self.refer(&kids[0], at(1), scope),
            "ELam" => {
                let mark = scope.len();
                self.params(&kids[1], &at(2), scope);
                self.exp(&kids[3], &at(4), scope);
                scope.truncate(mark);
            }
            "ELet" => {
                let mark = scope.len();
                let id = self.bind(at(2));
                scope.push((name_of(&kids[1]).to_string(), id));
                let inner = scope.len();
                self.params(&kids[2], &at(3), scope);
                self.exp(&kids[4], &at(5), scope);
                scope.truncate(inner);
                self.exp(&kids[6], &at(7), scope);
                scope.truncate(mark);
            }
            _ => {
                for (i, k) in kids.iter().enumerate() {
                    if matches!(k.ctor(), "Kw" | "Op") {
                        continue;
                    }
                    self.exp(k, &at(i + 1), scope);
                }
            }
        }
    }
}

/// Annotates `Ident` nodes of a Tiny program in place. Top-level equations
/// are mutually recursive; `let` is recursive; inner bindings shadow outer.
pub fn resolve_names(program: &mut Value) {
    let mut r = Resolver { next: 0, globals: HashMap::new(), notes: Vec::new() };
    let root = Path::root();
    for (i, d) in program.children().iter().enumerate() {
        if d.ctor() == "Equation" {
            let name = name_of(&d.children()[0]).to_string();
            if r.globals.contains_key(&name) {
                continue;
            }
            let id = r.bind(root.extend(i + 1).extend(1));
            r.globals.insert(name, id);
        }
    }
    for (i, d) in program.children().iter().enumerate() {
        let dp = root.extend(i + 1);
        match d.ctor() {
            "Signature" => r.refer(&d.children()[0], dp.extend(1), &[]),
            "Equation" => {
                // a second equation for an existing name is a use of the first
                let name_path = dp.extend(1);
                if !r.notes.iter().any(|(p, k, _)| *k == "binder_id" && *p == name_path) {
                    r.refer(&d.children()[0], name_path, &[]);
                }
                let mut scope = Vec::new();
                r.params(&d.children()[1], &dp.extend(2), &mut scope);
                r.exp(&d.children()[3], &dp.extend(4), &mut scope);
            }
            _ => {}
        }
    }
    for (path, key, val) in r.notes {
        if let Some(v) = program.get_mut(&path) {
            v.annotate(key, val);
        }
    }
}
