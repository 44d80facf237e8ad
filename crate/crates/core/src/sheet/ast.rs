use std::collections::{BTreeMap, BTreeSet};

use crate::doc::{StyleAttr, StyleSet};

/// Source position (1-based). Positions are metadata: they never take part
/// in equality, so re-parsed rules compare equal to the originals.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Pos {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combinator {
    Child,
    Descendant,
    NextSibling,
    SubsequentSibling,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Pattern {
    Wildcard,
    /// `xxx`: never matches on its own; inside a constructor pattern it
    /// accepts its position and fences it off from further search.
    KeepOut,
    Var { name: String, datatype: Option<String>, pos: Pos },
    /// `args == None` is the bare form `C`, which accepts any arguments.
    Ctor { binder: Option<String>, ctor: String, args: Option<Vec<Pattern>>, pos: Pos },
    LitInt(i64),
    LitStr(String),
}

impl Pattern {
    /// Variables bound by this pattern, in left-to-right order.
    pub fn binders(&self, out: &mut Vec<String>) {
        match self {
            Pattern::Var { name, .. } => out.push(name.clone()),
            Pattern::Ctor { binder, args, .. } => {
                if let Some(b) = binder {
                    out.push(b.clone());
                }
                for a in args.iter().flatten() {
                    a.binders(out);
                }
            }
            _ => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Basic {
    Pattern(Pattern),
    /// `x@.cls` (named) or `.cls` (anonymous); the classes live on the
    /// enclosing [`NodeSelector`].
    Class { name: Option<String> },
    /// Matches any node. Only produced by internal rewrites.
    Top,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeSelector {
    pub basic: Basic,
    pub classes: BTreeSet<String>,
}

impl NodeSelector {
    pub fn binders(&self, out: &mut Vec<String>) {
        match &self.basic {
            Basic::Pattern(p) => p.binders(out),
            Basic::Class { name: Some(n) } => out.push(n.clone()),
            _ => {}
        }
    }

    /// Names bound to AST values (usable in guards).
    pub fn value_binders(&self, out: &mut Vec<String>) {
        if let Basic::Pattern(p) = &self.basic {
            p.binders(out);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathSelector {
    pub head: NodeSelector,
    pub tail: Vec<(Combinator, NodeSelector)>,
}

impl PathSelector {
    pub fn nodes(&self) -> impl Iterator<Item = &NodeSelector> {
        std::iter::once(&self.head).chain(self.tail.iter().map(|(_, n)| n))
    }

    pub fn binders(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.nodes().for_each(|n| n.binders(&mut out));
        out
    }

    pub fn value_binders(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.nodes().for_each(|n| n.value_binders(&mut out));
        out
    }
}

/// One `a b { ... }` block: the listed names all receive `attrs`.
#[derive(Debug, Clone, PartialEq)]
pub struct StyledBlock {
    pub names: Vec<String>,
    pub attrs: Vec<StyleAttr>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExternalRule {
    pub selectors: Vec<PathSelector>,
    pub guard: Option<super::predicate::Expr>,
    pub blocks: Vec<StyledBlock>,
    pub pos: Pos,
}

impl ExternalRule {
    /// Variable name → union of the style sets written for it.
    pub fn named_styles(&self) -> BTreeMap<String, StyleSet> {
        let mut out: BTreeMap<String, StyleSet> = BTreeMap::new();
        for b in &self.blocks {
            for n in &b.names {
                out.entry(n.clone()).or_default().extend(b.attrs.iter().cloned());
            }
        }
        out
    }
}
