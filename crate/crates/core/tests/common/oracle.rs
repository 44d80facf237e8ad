//! A deliberately naive reference for style computation: derivations are
//! enumerated rule by rule, with the descendant combinator expanded through
//! an intermediate top selector exactly as in the inference rules.

use std::collections::BTreeSet;

use css4code_core::doc::{StyleAttr, StylishDoc};
use css4code_core::sheet::desugar::{BasicSubrule, InternalRule, NodeSubrule, PatternSubrule};
use css4code_core::sheet::predicate::{eval_predicate, Binding, ValueEnv};
use css4code_core::sheet::Combinator;
use css4code_core::{ConstructorRegistry, Path, Value};

pub type Event = (usize, usize, StyleAttr);

struct Node<'d> {
    path: Option<Path>,
    classes: &'d BTreeSet<String>,
    kids: Vec<usize>,
    /// Ids of the node and everything below it.
    subtree: Vec<usize>,
}

fn index<'d>(doc: &'d StylishDoc, out: &mut Vec<Node<'d>>) -> Option<usize> {
    let StylishDoc::Node(n) = doc else { return None };
    let id = out.len();
    out.push(Node { path: n.path.clone(), classes: &n.classes, kids: Vec::new(), subtree: vec![id] });
    let mut kids = Vec::new();
    let mut below = Vec::new();
    for c in &n.children {
        if let Some(k) = index(c, out) {
            kids.push(k);
            below.extend(out[k].subtree.clone());
        }
    }
    out[id].kids = kids;
    out[id].subtree.extend(below);
    Some(id)
}

/// One derivation: value bindings, styles by path, styled nodes, fenced paths.
#[derive(Clone, Default)]
struct Deriv<'v> {
    env: Vec<(String, &'v Value, Path)>,
    styles: Vec<(Path, StyleAttr)>,
    styled: Vec<(usize, StyleAttr)>,
    fenced: Vec<Path>,
}

impl<'v> Deriv<'v> {
    fn join(mut self, other: Deriv<'v>) -> Deriv<'v> {
        self.env.extend(other.env);
        self.styles.extend(other.styles);
        self.styled.extend(other.styled);
        self.fenced.extend(other.fenced);
        self
    }
}

fn token(v: &Value) -> Option<&str> {
    match (v.token(), v.children()) {
        (Some(t), _) => Some(t),
        (None, [only]) => token(only),
        _ => None,
    }
}

/// Pattern subrule application. `xxx` has no rule of its own; inside a
/// constructor it is recorded as a fenced path.
fn pat<'v>(p: &PatternSubrule, v: &'v Value, path: &Path, sigma: &ConstructorRegistry, top: bool) -> Option<Deriv<'v>> {
    let mut d = Deriv::default();
    let bind = |d: &mut Deriv<'v>, name: &str, styles: &BTreeSet<StyleAttr>| {
        d.env.push((name.to_string(), v, path.clone()));
        d.styles.extend(styles.iter().map(|s| (path.clone(), s.clone())));
    };
    match p {
        PatternSubrule::Wildcard => {}
        PatternSubrule::KeepOut if top => return None,
        PatternSubrule::KeepOut => d.fenced.push(path.clone()),
        PatternSubrule::LitInt(i) => {
            if token(v).and_then(|t| t.parse::<i64>().ok()) != Some(*i) {
                return None;
            }
        }
        PatternSubrule::LitStr(s) => {
            if token(v) != Some(s.as_str()) {
                return None;
            }
        }
        PatternSubrule::Var { name, datatype, styles } => {
            if let Some(dt) = datatype {
                if !sigma.lookup(dt).contains(v.ctor()) {
                    return None;
                }
            }
            bind(&mut d, name, styles);
        }
        PatternSubrule::Ctor { binder, ctor, args, styles } => {
            if v.ctor() != ctor {
                return None;
            }
            if let Some(args) = args {
                if args.len() != v.children().len() {
                    return None;
                }
                for (i, (a, c)) in args.iter().zip(v.children()).enumerate() {
                    d = d.join(pat(a, c, &path.extend(i + 1), sigma, false)?);
                }
            }
            if let Some(b) = binder {
                bind(&mut d, b, styles);
            }
        }
    }
    Some(d)
}

struct Oracle<'a, 'v> {
    nodes: Vec<Node<'a>>,
    root: &'v Value,
    sigma: &'a ConstructorRegistry,
}

enum Step<'r> {
    Sel(&'r NodeSubrule),
    Top,
}

impl<'a, 'v> Oracle<'a, 'v> {
    fn fenced(&self, id: usize, fenced: &[Path]) -> bool {
        self.nodes[id].path.as_ref().is_some_and(|p| fenced.iter().any(|f| f.is_prefix_of(p)))
    }

    /// Node subrule application at one document node.
    fn node(&self, step: &Step<'_>, id: usize) -> Option<Deriv<'v>> {
        let n = &self.nodes[id];
        let sel = match step {
            Step::Top => return Some(Deriv::default()),
            Step::Sel(s) => s,
        };
        if !sel.classes.iter().all(|c| n.classes.contains(c)) {
            return None;
        }
        match &sel.basic {
            BasicSubrule::Top => Some(Deriv::default()),
            BasicSubrule::Class { styles, .. } => {
                Some(Deriv { styled: styles.iter().map(|s| (id, s.clone())).collect(), ..Deriv::default() })
            }
            BasicSubrule::Pattern(p) => {
                let path = n.path.as_ref()?;
                let v = path.apply(self.root)?;
                let mut d = pat(p, v, path, self.sigma, true)?;
                // the style environment is applied to the matched node's subtree
                for &m in &n.subtree {
                    if let Some(q) = &self.nodes[m].path {
                        d.styled.extend(d.styles.iter().filter(|(p, _)| p == q).map(|(_, s)| (m, s.clone())));
                    }
                }
                d.styles.clear();
                Some(d)
            }
        }
    }

    /// Path subrule application: all derivations of `steps` rooted at `id`.
    fn path_rule(&self, head: Step<'_>, rest: &[(Option<Combinator>, NodeSubrule)], id: usize, fenced: &[Path]) -> Vec<Deriv<'v>> {
        let Some(d1) = self.node(&head, id) else { return Vec::new() };
        let Some(((comb, next), tail)) = rest.split_first() else { return vec![d1] };
        let mut fence = fenced.to_vec();
        fence.extend(d1.fenced.iter().cloned());
        let mut out = Vec::new();
        for &k in &self.nodes[id].kids {
            if self.fenced(k, &fence) {
                continue;
            }
            match comb.expect("later steps carry a combinator") {
                Combinator::Child => {
                    for d2 in self.path_rule(Step::Sel(next), tail, k, &fence) {
                        out.push(d1.clone().join(d2));
                    }
                }
                Combinator::Descendant => {
                    // Descendant1: the match is this child.
                    for d2 in self.path_rule(Step::Sel(next), tail, k, &fence) {
                        out.push(d1.clone().join(d2));
                    }
                    // Descendant2: this child matches the top selector and the
                    // obligation moves one level down.
                    for d2 in self.top_then_descendant(next, tail, k, &fence) {
                        out.push(d1.clone().join(d2));
                    }
                }
                other => panic!("oracle covers > and descendant only, got {other:?}"),
            }
        }
        out
    }

    fn top_then_descendant(&self, next: &NodeSubrule, tail: &[(Option<Combinator>, NodeSubrule)], id: usize, fenced: &[Path]) -> Vec<Deriv<'v>> {
        let mut rest = vec![(Some(Combinator::Descendant), next.clone())];
        rest.extend(tail.iter().cloned());
        self.path_rule(Step::Top, &rest, id, fenced)
    }
}

/// Every `(node, rule, attribute)` event produced by any derivation of any
/// rule anchored at any node.
pub fn oracle_events(rules: &[InternalRule], doc: &StylishDoc, root: &Value, sigma: &ConstructorRegistry) -> BTreeSet<Event> {
    let mut nodes = Vec::new();
    index(doc, &mut nodes);
    let o = Oracle { nodes, root, sigma };
    let mut out = BTreeSet::new();
    for rule in rules {
        let Some(((_, head), rest)) = rule.steps.split_first() else { continue };
        for anchor in 0..o.nodes.len() {
            for d in o.path_rule(Step::Sel(head), rest, anchor, &[]) {
                let env: ValueEnv<'_> =
                    d.env.iter().map(|(n, v, p)| (n.clone(), Binding { value: v, path: p.clone() })).collect();
                let ok = rule.guard.as_ref().is_none_or(|g| eval_predicate(&env, g).unwrap_or(false));
                if ok {
                    out.extend(d.styled.into_iter().map(|(n, a)| (n, rule.rule_index, a)));
                }
            }
        }
    }
    out
}
