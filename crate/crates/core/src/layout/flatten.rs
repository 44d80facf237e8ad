use std::collections::BTreeMap;

use crate::doc::{DocNode, StylishDoc};
use crate::value::Path;

use super::metrics::FontMetrics;

/// An atomic single-line run of text (or one opaque HTML leaf).
#[derive(Debug, Clone, PartialEq)]
pub struct Fragment {
    pub text: String,
    pub html: bool,
    pub width: f64,
    pub height: f64,
    pub line: usize,
    /// Resolved by width resolution.
    pub x: f64,
    /// Resolved by height resolution: top of the fragment's line.
    pub y: f64,
    pub left_gadget: f64,
    pub right_gadget: f64,
    /// Layout node that directly contains the fragment.
    pub node: usize,
}

impl Fragment {
    pub fn is_blank(&self) -> bool {
        !self.html && self.text.chars().all(char::is_whitespace)
    }
}

/// Border-spacing attributes of one node; each applies to all four sides.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Spacing {
    pub margin: f64,
    pub border: f64,
    pub padding: f64,
    pub radius: f64,
    pub border_color: Option<String>,
    pub background: Option<String>,
}

impl Spacing {
    fn from_styles(styles: &BTreeMap<String, String>) -> Self {
        let num = |k: &str| styles.get(k).map_or(0.0, |v| px(v).max(0.0));
        Spacing {
            margin: num("margin"),
            border: num("border-width"),
            padding: num("padding"),
            radius: num("border-radius"),
            border_color: styles.get("border-color").cloned(),
            background: styles.get("background-color").cloned(),
        }
    }

    /// Total horizontal/vertical space reserved on each side.
    pub fn total(&self) -> f64 {
        self.margin + self.border + self.padding
    }

    /// Offset from the content box to the centre of the border stroke.
    pub fn stroke_offset(&self) -> f64 {
        self.padding + self.border / 2.0
    }

    pub fn has_outline(&self) -> bool {
        self.border > 0.0 || self.background.is_some()
    }
}

/// Parses `12`, `12px` or `12.5px`; anything else is 0.
pub fn px(v: &str) -> f64 {
    v.trim().trim_end_matches("px").trim().parse().unwrap_or(0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Frag(usize),
    Child(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutNode {
    pub parent: Option<usize>,
    pub items: Vec<Item>,
    /// Half-open range into the fragment vector.
    pub range: (usize, usize),
    pub spacing: Spacing,
    pub styles: BTreeMap<String, String>,
    pub classes: Vec<String>,
    pub path: Option<Path>,
}

impl LayoutNode {
    pub fn children(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().filter_map(|i| match i {
            Item::Child(c) => Some(*c),
            Item::Frag(_) => None,
        })
    }
}

/// Node ids coincide with the pre-order ids of the document's `Node`s.
/// A document whose root is a leaf gets a synthetic root node.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LayoutTree {
    pub nodes: Vec<LayoutNode>,
    pub line_count: usize,
}

pub fn flatten(doc: &StylishDoc, metrics: &FontMetrics) -> (Vec<Fragment>, LayoutTree) {
    let mut st = State { frags: Vec::new(), tree: LayoutTree::default(), line: 0, metrics };
    match doc {
        StylishDoc::Node(n) => {
            st.node(n, None);
        }
        leaf => {
            let synthetic = DocNode { children: vec![leaf.clone()], ..DocNode::default() };
            st.node(&synthetic, None);
        }
    }
    st.tree.line_count = st.line + 1;
    (st.frags, st.tree)
}

struct State<'m> {
    frags: Vec<Fragment>,
    tree: LayoutTree,
    line: usize,
    metrics: &'m FontMetrics,
}

impl State<'_> {
    fn node(&mut self, n: &DocNode, parent: Option<usize>) -> usize {
        let id = self.tree.nodes.len();
        let styles: BTreeMap<String, String> =
            n.resolved().into_iter().map(|(k, a)| (k.to_string(), a.value.clone())).collect();
        self.tree.nodes.push(LayoutNode {
            parent,
            items: Vec::new(),
            range: (self.frags.len(), 0),
            spacing: Spacing::from_styles(&styles),
            styles,
            classes: n.classes.iter().cloned().collect(),
            path: n.path.clone(),
        });
        let font_size = self.tree.nodes[id].styles.get("font-size").map(|v| px(v)).filter(|s| *s > 0.0);
        for c in &n.children {
            match c {
                StylishDoc::Node(child) => {
                    let cid = self.node(child, Some(id));
                    self.tree.nodes[id].items.push(Item::Child(cid));
                }
                StylishDoc::Text { text } => {
                    for (k, piece) in text.split('\n').enumerate() {
                        if k > 0 {
                            self.line += 1;
                        }
                        if !piece.is_empty() {
                            let width = self.metrics.measure(piece, font_size);
                            self.push(id, piece.to_string(), false, width, self.metrics.line_height);
                        }
                    }
                }
                StylishDoc::Html { html } => {
                    let styles = &self.tree.nodes[id].styles;
                    let width = styles.get("width").map_or(0.0, |v| px(v));
                    let height = styles.get("height").map_or(self.metrics.line_height, |v| px(v));
                    self.push(id, html.clone(), true, width, height);
                }
            }
        }
        self.tree.nodes[id].range.1 = self.frags.len();
        id
    }

    fn push(&mut self, node: usize, text: String, html: bool, width: f64, height: f64) {
        let f = Fragment {
            text,
            html,
            width,
            height,
            line: self.line,
            x: 0.0,
            y: 0.0,
            left_gadget: 0.0,
            right_gadget: 0.0,
            node,
        };
        self.tree.nodes[node].items.push(Item::Frag(self.frags.len()));
        self.frags.push(f);
    }
}
