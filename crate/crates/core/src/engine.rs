//! Exhaustive, deterministic evaluation of desugared rules over a document.
//!
//! Every match of every rule is enumerated; the styles each match produces
//! are recorded as `(node, rule, attribute)` events, and the union of all
//! events is resolved per node. Because the final step is a set union
//! followed by an order-independent cascade, the result never depends on
//! rule order.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::doc::{inherit_styles, DocNode, StyleAttr, StyleEnv, StyleSet, StylishDoc};
use crate::sheet::desugar::{BasicSubrule, InternalRule, NodeSubrule, PatternSubrule};
use crate::sheet::predicate::{eval_predicate, token_of, Binding, ValueEnv};
use crate::sheet::Combinator;
use crate::value::{ConstructorRegistry, Path, Value};

/// Bindings, styles and keep-out regions produced by one pattern match.
#[derive(Debug, Clone, Default)]
pub struct MatchResult<'v> {
    pub value_env: ValueEnv<'v>,
    pub style_env: StyleEnv,
    /// Paths fenced off by `xxx`; later search steps never enter them.
    pub keep_out: Vec<Path>,
}

pub fn match_pattern<'v>(
    pattern: &PatternSubrule,
    value: &'v Value,
    path: &Path,
    registry: &ConstructorRegistry,
) -> Option<MatchResult<'v>> {
    let mut out = MatchResult::default();
    go(pattern, value, path, registry, &mut out).then_some(out)
}

fn go<'v>(p: &PatternSubrule, v: &'v Value, path: &Path, reg: &ConstructorRegistry, out: &mut MatchResult<'v>) -> bool {
    let bind = |name: &str, styles: &StyleSet, out: &mut MatchResult<'v>| {
        out.value_env.insert(name.to_string(), Binding { value: v, path: path.clone() });
        if !styles.is_empty() {
            out.style_env.entry(path.clone()).or_default().extend(styles.iter().cloned());
        }
    };
    match p {
        PatternSubrule::Wildcard => true,
        PatternSubrule::KeepOut => {
            out.keep_out.push(path.clone());
            true
        }
        PatternSubrule::LitInt(i) => token_of(v).and_then(|t| t.token()).and_then(|t| t.parse::<i64>().ok()) == Some(*i),
        PatternSubrule::LitStr(s) => token_of(v).and_then(|t| t.token()) == Some(s.as_str()),
        PatternSubrule::Var { name, datatype, styles } => {
            if let Some(d) = datatype {
                if !reg.contains(d, v.ctor()) {
                    return false;
                }
            }
            bind(name, styles, out);
            true
        }
        PatternSubrule::Ctor { binder, ctor, args, styles } => {
            if v.ctor() != ctor {
                return false;
            }
            if let Some(args) = args {
                if args.len() != v.children().len() {
                    return false;
                }
                for (i, (a, c)) in args.iter().zip(v.children()).enumerate() {
                    if !go(a, c, &path.extend(i + 1), reg, out) {
                        return false;
                    }
                }
            }
            if let Some(b) = binder {
                bind(b, styles, out);
            }
            true
        }
    }
}

/// Pre-order arena over the `Node` variants of a document. Ids agree with
/// [`StylishDoc::nodes`] and [`StylishDoc::map_styles`].
pub struct DocIndex<'d> {
    nodes: Vec<&'d DocNode>,
    kids: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    /// One past the last id in each node's subtree.
    end: Vec<usize>,
}

impl<'d> DocIndex<'d> {
    pub fn new(doc: &'d StylishDoc) -> Self {
        let mut ix = DocIndex { nodes: Vec::new(), kids: Vec::new(), parent: Vec::new(), end: Vec::new() };
        ix.add(doc, None);
        ix
    }

    fn add(&mut self, d: &'d StylishDoc, parent: Option<usize>) {
        let StylishDoc::Node(n) = d else { return };
        let id = self.nodes.len();
        self.nodes.push(n);
        self.kids.push(Vec::new());
        self.parent.push(parent);
        self.end.push(0);
        if let Some(p) = parent {
            self.kids[p].push(id);
        }
        for c in &n.children {
            self.add(c, Some(id));
        }
        self.end[id] = self.nodes.len();
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> &'d DocNode {
        self.nodes[id]
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.kids[id]
    }

    pub fn parent(&self, id: usize) -> Option<usize> {
        self.parent[id]
    }

    /// Ids of the subtree rooted at `id`, including `id`.
    pub fn subtree(&self, id: usize) -> std::ops::Range<usize> {
        id..self.end[id]
    }

    fn siblings_after(&self, id: usize) -> &[usize] {
        match self.parent[id] {
            Some(p) => {
                let s = &self.kids[p];
                let at = s.iter().position(|&k| k == id).expect("child of its parent");
                &s[at + 1..]
            }
            None => &[],
        }
    }
}

/// One attribute attached to one document node by one rule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StyleEvent {
    pub node: usize,
    pub rule: usize,
    pub attr: StyleAttr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineDiagKind {
    GuardEvalError,
    NoOp,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EngineDiagnostic {
    pub rule_index: usize,
    pub kind: EngineDiagKind,
    pub message: String,
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub events: BTreeSet<StyleEvent>,
    pub diagnostics: BTreeSet<EngineDiagnostic>,
}

struct Partial<'v> {
    env: ValueEnv<'v>,
    events: Vec<(usize, StyleAttr)>,
    keep_out: Vec<Path>,
}

struct Matcher<'a, 'v> {
    ix: &'a DocIndex<'a>,
    root: &'v Value,
    registry: &'a ConstructorRegistry,
}

impl<'a, 'v> Matcher<'a, 'v> {
    fn pruned(&self, id: usize, keep_out: &[Path]) -> bool {
        match &self.ix.node(id).path {
            Some(p) => keep_out.iter().any(|k| k.is_prefix_of(p)),
            None => false,
        }
    }

    /// Proper descendants of `id`, not entering fenced-off regions.
    fn descendants(&self, id: usize, keep_out: &[Path], out: &mut Vec<usize>) {
        for &k in self.ix.children(id) {
            if !self.pruned(k, keep_out) {
                out.push(k);
                self.descendants(k, keep_out, out);
            }
        }
    }

    fn candidates(&self, comb: Combinator, anchor: usize, keep_out: &[Path]) -> Vec<usize> {
        let mut out = match comb {
            Combinator::Child => self.ix.children(anchor).to_vec(),
            Combinator::Descendant => {
                let mut v = Vec::new();
                self.descendants(anchor, keep_out, &mut v);
                return v;
            }
            Combinator::NextSibling => self.ix.siblings_after(anchor).iter().take(1).copied().collect(),
            Combinator::SubsequentSibling => self.ix.siblings_after(anchor).to_vec(),
        };
        out.retain(|&c| !self.pruned(c, keep_out));
        out
    }

    /// Matches one node selector at a document node.
    fn node_selector(&self, sel: &NodeSubrule, id: usize) -> Option<Partial<'v>> {
        let node = self.ix.node(id);
        if !sel.classes.is_subset(&node.classes) {
            return None;
        }
        match &sel.basic {
            BasicSubrule::Top => Some(Partial { env: ValueEnv::new(), events: Vec::new(), keep_out: Vec::new() }),
            BasicSubrule::Class { styles, .. } => Some(Partial {
                env: ValueEnv::new(),
                events: styles.iter().map(|a| (id, a.clone())).collect(),
                keep_out: Vec::new(),
            }),
            BasicSubrule::Pattern(PatternSubrule::KeepOut) => None,
            BasicSubrule::Pattern(p) => {
                let path = node.path.as_ref()?;
                let value = path.apply(self.root)?;
                let m = match_pattern(p, value, path, self.registry)?;
                let mut events = Vec::new();
                if !m.style_env.is_empty() {
                    for d in self.ix.subtree(id) {
                        if let Some(styles) = self.ix.node(d).path.as_ref().and_then(|p| m.style_env.get(p)) {
                            events.extend(styles.iter().map(|a| (d, a.clone())));
                        }
                    }
                }
                Some(Partial { env: m.value_env, events, keep_out: m.keep_out })
            }
        }
    }

    fn extend(&self, rule: &InternalRule, step: usize, anchor: usize, acc: Partial<'v>, out: &mut Outcome) -> bool {
        let Some((comb, sel)) = rule.steps.get(step) else {
            return self.finish(rule, acc, out);
        };
        let comb = comb.expect("only the first step lacks a combinator");
        let mut any = false;
        for c in self.candidates(comb, anchor, &acc.keep_out) {
            if let Some(m) = self.node_selector(sel, c) {
                let mut next = Partial { env: acc.env.clone(), events: acc.events.clone(), keep_out: acc.keep_out.clone() };
                next.env.extend(m.env);
                next.events.extend(m.events);
                next.keep_out.extend(m.keep_out);
                any |= self.extend(rule, step + 1, c, next, out);
            }
        }
        any
    }

    fn finish(&self, rule: &InternalRule, acc: Partial<'v>, out: &mut Outcome) -> bool {
        let ok = match &rule.guard {
            None => true,
            Some(g) => match eval_predicate(&acc.env, g) {
                Ok(b) => b,
                Err(e) => {
                    out.diagnostics.insert(EngineDiagnostic {
                        rule_index: rule.rule_index,
                        kind: EngineDiagKind::GuardEvalError,
                        message: e.0,
                    });
                    false
                }
            },
        };
        if ok {
            out.events.extend(acc.events.into_iter().map(|(node, attr)| StyleEvent { node, rule: rule.rule_index, attr }));
        }
        ok
    }
}

/// Enumerates every styling event the rules produce on `doc`.
pub fn style_events(
    rules: &[InternalRule],
    doc: &StylishDoc,
    root: &Value,
    registry: &ConstructorRegistry,
) -> Outcome {
    let ix = DocIndex::new(doc);
    let m = Matcher { ix: &ix, root, registry };
    let mut out = Outcome::default();
    let mut fired: BTreeSet<usize> = BTreeSet::new();
    for rule in rules {
        let Some((_, head)) = rule.steps.first() else { continue };
        for id in 0..ix.len() {
            if let Some(p) = m.node_selector(head, id) {
                if m.extend(rule, 1, id, p, &mut out) {
                    fired.insert(rule.rule_index);
                }
            }
        }
    }
    for idx in rules.iter().map(|r| r.rule_index).collect::<BTreeSet<_>>() {
        if !fired.contains(&idx) {
            out.diagnostics.insert(EngineDiagnostic {
                rule_index: idx,
                kind: EngineDiagKind::NoOp,
                message: format!("rule {} matched nothing", idx + 1),
            });
        }
    }
    out
}

/// Styles a document: every event is added to its node, then each node's
/// cascade is resolved and inheritable attributes flow downwards.
pub fn apply_stylesheet(
    rules: &[InternalRule],
    doc: &StylishDoc,
    root: &Value,
    registry: &ConstructorRegistry,
) -> (StylishDoc, Vec<EngineDiagnostic>) {
    let outcome = style_events(rules, doc, root, registry);
    let mut per_node: BTreeMap<usize, StyleSet> = BTreeMap::new();
    for e in outcome.events {
        per_node.entry(e.node).or_default().insert(e.attr);
    }
    let styled = doc.map_styles(&mut |id, n| {
        let mut s = n.styles.clone();
        if let Some(extra) = per_node.remove(&id) {
            s.extend(extra);
        }
        s
    });
    (inherit_styles(&styled), outcome.diagnostics.into_iter().collect())
}

/// Styles produced by a single rule, applied once and not yet inherited.
pub fn apply_rule(
    rule: &InternalRule,
    doc: &StylishDoc,
    root: &Value,
    registry: &ConstructorRegistry,
) -> StylishDoc {
    let outcome = style_events(std::slice::from_ref(rule), doc, root, registry);
    let mut per_node: BTreeMap<usize, StyleSet> = BTreeMap::new();
    for e in outcome.events {
        per_node.entry(e.node).or_default().insert(e.attr);
    }
    doc.map_styles(&mut |id, n| {
        let mut s = n.styles.clone();
        s.extend(per_node.remove(&id).unwrap_or_default());
        s
    })
}
