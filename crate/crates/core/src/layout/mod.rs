//! Nested-text layout: documents become positioned fragments plus s-block
//! outlines (rectangles that may lack their top-left and bottom-right
//! corners).

mod flatten;
mod height;
pub mod metrics;
mod width;

use serde_json::json;

use crate::doc::StylishDoc;

pub use flatten::{flatten, px, Fragment, Item, LayoutNode, LayoutTree, Spacing};
pub use height::{classify, classify_sblock, resolve_heights, simplify, SBlockCase, SBlockOutline, Stroke, VCase, VGadget};
pub use metrics::{FontMetrics, MetricsError};
pub use width::{line_ends, resolve_widths, Extents, HCase, HGadget};

#[derive(Debug, Clone)]
pub struct Layout {
    pub fragments: Vec<Fragment>,
    pub tree: LayoutTree,
    pub hgadgets: Vec<HGadget>,
    pub vgadgets: Vec<VGadget>,
    pub outlines: Vec<SBlockOutline>,
    /// Per-node content extents, by line.
    pub extents: Vec<Extents>,
    pub line_tops: Vec<f64>,
    pub width: f64,
    pub height: f64,
}

pub fn layout(doc: &StylishDoc, metrics: &FontMetrics) -> Layout {
    let (mut fragments, tree) = flatten(doc, metrics);
    let (hgadgets, extents) = resolve_widths(&tree, &mut fragments);
    let h = resolve_heights(&tree, &mut fragments, &extents, metrics.line_height);
    let text_right = fragments.iter().map(|f| f.x + f.width + f.right_gadget).fold(0.0, f64::max);
    let outline_right = h
        .outlines
        .iter()
        .flat_map(|o| {
            let half = o.stroke.as_ref().map_or(0.0, |s| s.width / 2.0);
            o.rings.iter().flatten().map(move |p| p.0 + half)
        })
        .fold(0.0, f64::max);
    Layout {
        fragments,
        tree,
        hgadgets,
        vgadgets: h.vgadgets,
        outlines: h.outlines,
        extents,
        line_tops: h.line_tops,
        width: text_right.max(outline_right),
        height: h.height,
    }
}

impl Layout {
    /// Fragment texts re-joined line by line.
    pub fn text(&self) -> String {
        let mut lines = vec![String::new(); self.tree.line_count];
        for f in self.fragments.iter().filter(|f| !f.html) {
            lines[f.line].push_str(&f.text);
        }
        lines.join("\n")
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "width": self.width,
            "height": self.height,
            "fragments": self.fragments.iter().map(|f| json!({
                "text": f.text,
                "x": f.x,
                "y": f.y,
                "w": f.width,
                "h": f.height,
                "line": f.line,
                "node": f.node,
            })).collect::<Vec<_>>(),
            "hgadgets": self.hgadgets,
            "vgadgets": self.vgadgets,
            "outlines": self.outlines,
        })
    }
}
