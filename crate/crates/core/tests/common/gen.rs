//! Random values, provenance-carrying views of them, and random rules.

use css4code_core::doc::StylishDoc;
use css4code_core::value::Arity;
use css4code_core::{ConstructorRegistry, Path, Value};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn registry() -> ConstructorRegistry {
    let mut r = ConstructorRegistry::with_primitives();
    r.add("T", "A", Arity::Fixed(0)).unwrap();
    r.add("T", "B", Arity::Fixed(1)).unwrap();
    r.add("T", "C", Arity::Fixed(2)).unwrap();
    r.add("T", "L", Arity::Variadic).unwrap();
    r
}

pub fn value(rng: &mut StdRng, depth: usize, budget: &mut usize) -> Value {
    if *budget == 0 || depth == 0 {
        return if rng.gen_bool(0.5) { Value::int(rng.gen_range(0..4)) } else { Value::node("A", vec![]) };
    }
    *budget -= 1;
    let mut kids = |n: usize, rng: &mut StdRng| (0..n).map(|_| value(rng, depth - 1, budget)).collect::<Vec<_>>();
    match rng.gen_range(0..5) {
        0 => Value::int(rng.gen_range(0..4)),
        1 => Value::node("A", vec![]),
        2 => Value::node("B", kids(1, rng)),
        3 => Value::node("C", kids(2, rng)),
        _ => {
            let n = rng.gen_range(0..4);
            Value::node("L", kids(n, rng))
        }
    }
}

const CLASSES: [&str; 3] = ["a", "b", "c"];

fn classes(rng: &mut StdRng) -> Vec<&'static str> {
    CLASSES.iter().copied().filter(|_| rng.gen_bool(0.25)).collect()
}

/// A view with unique paths: each displayed subvalue gets one node; some
/// children are hidden, some wrapped in path-less nodes, and text and
/// path-less decorations are interleaved.
pub fn view(rng: &mut StdRng, v: &Value, path: Path, budget: &mut usize) -> StylishDoc {
    *budget = budget.saturating_sub(1);
    let mut children = vec![StylishDoc::text(v.ctor().to_string())];
    for (i, c) in v.children().iter().enumerate() {
        if *budget == 0 || rng.gen_bool(0.1) {
            continue;
        }
        let mut child = view(rng, c, path.extend(i + 1), budget);
        if *budget > 0 && rng.gen_bool(0.2) {
            *budget -= 1;
            child = StylishDoc::node(None, &classes(rng), vec![child]);
        }
        children.push(StylishDoc::text(" "));
        children.push(child);
        if *budget > 0 && rng.gen_bool(0.15) {
            *budget -= 1;
            children.push(StylishDoc::node(None, &classes(rng), vec![StylishDoc::text("|")]));
        }
    }
    StylishDoc::node(Some(path), &classes(rng), children)
}

struct RuleGen<'r> {
    rng: &'r mut StdRng,
    names: Vec<String>,
    /// Binders of class selectors: they name a node, not a value.
    class_names: Vec<String>,
}

impl RuleGen<'_> {
    fn fresh(&mut self) -> String {
        let n = format!("v{}", self.names.len());
        self.names.push(n.clone());
        n
    }

    fn pattern(&mut self, depth: usize, top: bool) -> String {
        let leafy = depth == 0;
        match self.rng.gen_range(0..if leafy { 6 } else { 11 }) {
            0 => "_".into(),
            1 if !top => "xxx".into(),
            1 | 2 => self.fresh(),
            3 => {
                let dt = ["T", "Int"].choose(self.rng).unwrap();
                format!("{}:{dt}", self.fresh())
            }
            4 if !top => self.rng.gen_range(0..4).to_string(),
            4 => "_".into(),
            5 => ["A", "B", "C", "L"].choose(self.rng).unwrap().to_string(),
            6 => format!("B({})", self.pattern(depth - 1, false)),
            7 | 8 => {
                let binder = if self.rng.gen_bool(0.5) { format!("{}@", self.fresh()) } else { String::new() };
                format!("{binder}C({}, {})", self.pattern(depth - 1, false), self.pattern(depth - 1, false))
            }
            9 => format!("{}@B", self.fresh()),
            _ => format!("{}@L", self.fresh()),
        }
    }

    fn step(&mut self) -> String {
        let suffix: String = CLASSES.iter().filter(|_| self.rng.gen_bool(0.15)).map(|c| format!(".{c}")).collect();
        if self.rng.gen_bool(0.25) {
            let c = CLASSES.choose(self.rng).unwrap();
            return if self.rng.gen_bool(0.6) {
                let v = self.fresh();
                self.class_names.push(v.clone());
                format!("{v}@.{c}")
            } else { format!(".{c}") };
        }
        let depth = self.rng.gen_range(0..=3);
        let p = self.pattern(depth, true);
        // only constructor patterns may be parenthesized; a typed variable
        // would swallow the suffix into its datatype name
        if suffix.is_empty() || p.contains(':') {
            p
        } else if p.starts_with(|c: char| c.is_ascii_uppercase()) {
            format!("({p}){suffix}")
        } else {
            format!("{p}{suffix}")
        }
    }
}

/// A one-selector rule over `>` and descendant, length 1..=3, styling
/// every name it binds with a color unique to the rule and name.
pub fn rule(rng: &mut StdRng, index: usize) -> String {
    loop {
        let mut g = RuleGen { rng: &mut *rng, names: Vec::new(), class_names: Vec::new() };
        let len = g.rng.gen_range(1..=3);
        let mut sel = g.step();
        for _ in 1..len {
            sel.push_str(if g.rng.gen_bool(0.5) { " > " } else { " " });
            sel.push_str(&g.step());
        }
        let names = g.names.clone();
        // a style block needs a name to attach to
        if names.is_empty() {
            continue;
        }
        let values: Vec<&String> = names.iter().filter(|n| !g.class_names.contains(n)).collect();
        let guard = match values.choose(g.rng).map(|v| (v, g.rng.gen_range(0..10))) {
            None => String::new(),
            Some((v, 0)) => format!(" if ctor_of({v}) == \"C\""),
            Some((v, 1)) => format!(" if child_count({v}) >= 1"),
            Some((v, 2)) => format!(" if not (ctor_of({v}) == \"A\")"),
            _ => String::new(),
        };
        let blocks: String = names.iter().map(|n| format!(" {n} {{ color: r{index}{n}; }}")).collect();
        return format!("{sel}{guard} ->{blocks}");
    }
}
