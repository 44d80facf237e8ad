//! Width resolution: h-gadget placement and horizontal positions.

use std::collections::BTreeMap;

use serde::Serialize;

use super::flatten::{Fragment, Item, LayoutTree};

/// Where an h-gadget sits relative to its owner's fragment range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HCase {
    /// (i) before the first fragment of the range.
    RangeStart,
    /// (ii) after the last fragment of the range.
    RangeEnd,
    /// (iii) after the last fragment of an interior line.
    LineEnd,
    /// (iv) before the first non-blank fragment of a continuation line.
    LineStart,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HGadget {
    pub fragment: usize,
    pub left: bool,
    pub width: f64,
    pub owner: usize,
    pub case: HCase,
}

/// Content box of a node on each line it has visible text on: `(left, right)`.
pub type Extents = BTreeMap<usize, (f64, f64)>;

/// First and last non-blank fragment of `range` on each line.
pub fn line_ends(frags: &[Fragment], range: (usize, usize)) -> BTreeMap<usize, (usize, usize)> {
    let mut out: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (i, f) in frags.iter().enumerate().take(range.1).skip(range.0) {
        if f.is_blank() {
            continue;
        }
        out.entry(f.line).and_modify(|e| e.1 = i).or_insert((i, i));
    }
    out
}

/// Places h-gadgets, assigns every fragment its `x`, and returns each
/// node's per-line content extents.
pub fn resolve_widths(tree: &LayoutTree, frags: &mut [Fragment]) -> (Vec<HGadget>, Vec<Extents>) {
    let mut gadgets = Vec::new();
    for (id, n) in tree.nodes.iter().enumerate() {
        let s = n.spacing.total();
        if s <= 0.0 {
            continue;
        }
        let ends = line_ends(frags, n.range);
        let (Some(&first), Some(&last)) = (ends.keys().next(), ends.keys().next_back()) else { continue };
        for (&line, &(a, b)) in &ends {
            let left = if line == first { HCase::RangeStart } else { HCase::LineStart };
            let right = if line == last { HCase::RangeEnd } else { HCase::LineEnd };
            gadgets.push(HGadget { fragment: a, left: true, width: s, owner: id, case: left });
            gadgets.push(HGadget { fragment: b, left: false, width: s, owner: id, case: right });
        }
    }
    for f in frags.iter_mut() {
        f.left_gadget = 0.0;
        f.right_gadget = 0.0;
    }
    for g in &gadgets {
        let f = &mut frags[g.fragment];
        if g.left {
            f.left_gadget += g.width;
        } else {
            f.right_gadget += g.width;
        }
    }
    let mut cursor = 0.0;
    let mut line = usize::MAX;
    for f in frags.iter_mut() {
        if f.line != line {
            line = f.line;
            cursor = 0.0;
        }
        f.x = cursor + f.left_gadget;
        cursor = f.x + f.width + f.right_gadget;
    }
    (gadgets, extents(tree, frags))
}

fn extents(tree: &LayoutTree, frags: &[Fragment]) -> Vec<Extents> {
    let mut ext: Vec<Extents> = vec![Extents::new(); tree.nodes.len()];
    // pre-order ids: walking backwards visits children before parents
    for id in (0..tree.nodes.len()).rev() {
        let mut e = Extents::new();
        let mut add = |line: usize, l: f64, r: f64| {
            e.entry(line).and_modify(|(a, b)| {
                *a = a.min(l);
                *b = b.max(r);
            })
            .or_insert((l, r));
        };
        for item in &tree.nodes[id].items {
            match *item {
                Item::Frag(i) => {
                    let f = &frags[i];
                    if !f.is_blank() {
                        add(f.line, f.x, f.x + f.width);
                    }
                }
                Item::Child(c) => {
                    let s = tree.nodes[c].spacing.total();
                    for (&line, &(l, r)) in &ext[c] {
                        add(line, l - s, r + s);
                    }
                }
            }
        }
        ext[id] = e;
    }
    ext
}
