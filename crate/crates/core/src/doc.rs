//! Stylish text documents: display trees whose nodes carry provenance paths,
//! classes and style attributes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::value::Path;

/// Attributes that flow from a node to descendants that do not set them.
pub const INHERITABLE: [&str; 5] = ["color", "font-family", "font-size", "font-weight", "font-style"];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StyleAttr {
    pub name: String,
    pub value: String,
    #[serde(rename = "prec")]
    pub precedence: i64,
}

impl StyleAttr {
    pub fn new(name: impl Into<String>, value: impl Into<String>, precedence: i64) -> Self {
        StyleAttr { name: name.into(), value: value.into(), precedence }
    }

    /// Attribute at the default precedence 0.
    pub fn plain(name: impl Into<String>, value: impl Into<String>) -> Self {
        Self::new(name, value, 0)
    }

    /// Lowercase ASCII letters, digits and hyphens; non-empty value.
    pub fn is_well_formed(&self) -> bool {
        !self.name.is_empty()
            && self
                .name
                .bytes()
                .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'-')
            && !self.value.is_empty()
    }
}

pub type StyleSet = BTreeSet<StyleAttr>;

/// Path → styles produced by one successful match.
pub type StyleEnv = BTreeMap<Path, StyleSet>;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DocNode {
    pub path: Option<Path>,
    pub classes: BTreeSet<String>,
    pub styles: StyleSet,
    pub children: Vec<StylishDoc>,
}

impl DocNode {
    /// The winning value per attribute name.
    pub fn resolved(&self) -> BTreeMap<&str, &StyleAttr> {
        let mut out: BTreeMap<&str, &StyleAttr> = BTreeMap::new();
        for a in &self.styles {
            match out.get(a.name.as_str()) {
                Some(cur) if cascade_key(cur) >= cascade_key(a) => {}
                _ => {
                    out.insert(a.name.as_str(), a);
                }
            }
        }
        out
    }

    pub fn style(&self, name: &str) -> Option<&str> {
        self.resolved().get(name).map(|a| a.value.as_str())
    }

    pub fn has_class(&self, class: &str) -> bool {
        self.classes.contains(class)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StylishDoc {
    Text { text: String },
    Html { html: String },
    Node(DocNode),
}

impl StylishDoc {
    pub fn text(s: impl Into<String>) -> Self {
        StylishDoc::Text { text: s.into() }
    }

    pub fn html(s: impl Into<String>) -> Self {
        StylishDoc::Html { html: s.into() }
    }

    pub fn node(path: Option<Path>, classes: &[&str], children: Vec<StylishDoc>) -> Self {
        StylishDoc::Node(DocNode {
            path,
            classes: classes.iter().map(|c| c.to_string()).collect(),
            styles: StyleSet::new(),
            children,
        })
    }

    pub fn with_styles(mut self, styles: impl IntoIterator<Item = StyleAttr>) -> Self {
        if let StylishDoc::Node(n) = &mut self {
            n.styles.extend(styles);
        }
        self
    }

    pub fn as_node(&self) -> Option<&DocNode> {
        match self {
            StylishDoc::Node(n) => Some(n),
            _ => None,
        }
    }

    pub fn children(&self) -> &[StylishDoc] {
        match self {
            StylishDoc::Node(n) => &n.children,
            _ => &[],
        }
    }

    /// Concatenation of every text leaf in document order.
    pub fn text_content(&self) -> String {
        let mut out = String::new();
        self.push_text(&mut out);
        out
    }

    fn push_text(&self, out: &mut String) {
        match self {
            StylishDoc::Text { text } => out.push_str(text),
            StylishDoc::Html { .. } => {}
            StylishDoc::Node(n) => n.children.iter().for_each(|c| c.push_text(out)),
        }
    }

    /// Pre-order list of the `Node` variants.
    pub fn nodes(&self) -> Vec<&DocNode> {
        let mut out = Vec::new();
        fn go<'a>(d: &'a StylishDoc, out: &mut Vec<&'a DocNode>) {
            if let StylishDoc::Node(n) = d {
                out.push(n);
                n.children.iter().for_each(|c| go(c, out));
            }
        }
        go(self, &mut out);
        out
    }

    /// Rebuilds the document, letting `f` rewrite each node's styles.
    /// `f` receives the node's pre-order index among `Node` variants.
    pub fn map_styles(&self, f: &mut impl FnMut(usize, &DocNode) -> StyleSet) -> StylishDoc {
        fn go(d: &StylishDoc, next: &mut usize, f: &mut impl FnMut(usize, &DocNode) -> StyleSet) -> StylishDoc {
            match d {
                StylishDoc::Node(n) => {
                    let id = *next;
                    *next += 1;
                    let styles = f(id, n);
                    let children = n.children.iter().map(|c| go(c, next, f)).collect();
                    StylishDoc::Node(DocNode {
                        path: n.path.clone(),
                        classes: n.classes.clone(),
                        styles,
                        children,
                    })
                }
                other => other.clone(),
            }
        }
        let mut next = 0;
        go(self, &mut next, f)
    }

    /// True when both documents agree on everything except styles.
    pub fn same_shape(&self, other: &StylishDoc) -> bool {
        match (self, other) {
            (StylishDoc::Text { text: a }, StylishDoc::Text { text: b }) => a == b,
            (StylishDoc::Html { html: a }, StylishDoc::Html { html: b }) => a == b,
            (StylishDoc::Node(a), StylishDoc::Node(b)) => {
                a.path == b.path
                    && a.classes == b.classes
                    && a.children.len() == b.children.len()
                    && a.children.iter().zip(&b.children).all(|(x, y)| x.same_shape(y))
            }
            _ => false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

fn cascade_key(a: &StyleAttr) -> (i64, &str) {
    (a.precedence, a.value.as_str())
}

/// Picks the winner among attributes sharing a name: highest precedence,
/// then greatest value string.
///
/// # Panics
/// Panics on empty input.
pub fn resolve_cascade<'a>(attrs: impl IntoIterator<Item = &'a StyleAttr>) -> StyleAttr {
    attrs
        .into_iter()
        .max_by(|a, b| cascade_key(a).cmp(&cascade_key(b)))
        .expect("resolve_cascade needs at least one attribute")
        .clone()
}

/// Collapses a style set to one attribute per name.
pub fn resolve_set(styles: &StyleSet) -> StyleSet {
    let mut by_name: BTreeMap<&str, Vec<&StyleAttr>> = BTreeMap::new();
    for a in styles {
        by_name.entry(&a.name).or_default().push(a);
    }
    by_name.into_values().map(resolve_cascade).collect()
}

/// Adds `env(path)` to every node of `doc` whose path is in the env.
pub fn apply_styles(env: &StyleEnv, doc: &StylishDoc) -> StylishDoc {
    if env.is_empty() {
        return doc.clone();
    }
    doc.map_styles(&mut |_, n| {
        let mut s = n.styles.clone();
        if let Some(extra) = n.path.as_ref().and_then(|p| env.get(p)) {
            s.extend(extra.iter().cloned());
        }
        s
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MergeError {
    #[error("documents differ in structure; only styles may differ")]
    StructureMismatch,
}

/// Node-wise union of two same-shape documents, conflicts resolved by
/// [`resolve_cascade`].
pub fn merge_docs(d1: &StylishDoc, d2: &StylishDoc) -> Result<StylishDoc, MergeError> {
    if !d1.same_shape(d2) {
        return Err(MergeError::StructureMismatch);
    }
    let other: Vec<&DocNode> = d2.nodes();
    Ok(d1.map_styles(&mut |id, n| {
        let mut s = n.styles.clone();
        s.extend(other[id].styles.iter().cloned());
        resolve_set(&s)
    }))
}

/// Resolves every node's cascade and copies inheritable attributes down
/// from the nearest ancestor that sets them.
pub fn inherit_styles(doc: &StylishDoc) -> StylishDoc {
    fn go(d: &StylishDoc, inherited: &BTreeMap<String, StyleAttr>) -> StylishDoc {
        match d {
            StylishDoc::Node(n) => {
                let mut styles = resolve_set(&n.styles);
                let present: BTreeSet<String> = styles.iter().map(|a| a.name.clone()).collect();
                for (name, a) in inherited {
                    if !present.contains(name) {
                        styles.insert(a.clone());
                    }
                }
                let next: BTreeMap<String, StyleAttr> = styles
                    .iter()
                    .filter(|a| INHERITABLE.contains(&a.name.as_str()))
                    .map(|a| (a.name.clone(), a.clone()))
                    .collect();
                let children = n.children.iter().map(|c| go(c, &next)).collect();
                StylishDoc::Node(DocNode {
                    path: n.path.clone(),
                    classes: n.classes.clone(),
                    styles,
                    children,
                })
            }
            other => other.clone(),
        }
    }
    go(doc, &BTreeMap::new())
}
