//! HTML emission: absolutely positioned text over an SVG layer of s-blocks.

use std::fmt::Write;

use crate::layout::{FontMetrics, Layout, SBlockOutline};

/// Attributes consumed by layout rather than forwarded to CSS.
const LAYOUT_ATTRS: [&str; 8] =
    ["margin", "padding", "border-width", "border-color", "border-radius", "background-color", "width", "height"];

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOutput {
    pub html: String,
    pub width: f64,
    pub height: f64,
}

/// Formats a coordinate with at most two decimals and no trailing zeros.
pub fn num(v: f64) -> String {
    let r = (v * 100.0).round() / 100.0;
    let s = format!("{r:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

/// Absolute SVG path commands for an outline; corners become arcs when the
/// outline has a radius.
pub fn svg_path_of(outline: &SBlockOutline) -> String {
    outline.rings.iter().map(|r| ring_path(r, outline.radius)).collect::<Vec<_>>().join(" ")
}

fn ring_path(pts: &[(f64, f64)], radius: f64) -> String {
    let n = pts.len();
    if n == 0 {
        return String::new();
    }
    let mut out = String::new();
    if radius <= 0.0 {
        for (i, p) in pts.iter().enumerate() {
            let _ = write!(out, "{} {} {} ", if i == 0 { "M" } else { "L" }, num(p.0), num(p.1));
        }
        out.push('Z');
        return out;
    }
    let len = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).abs() + (a.1 - b.1).abs();
    let toward = |from: (f64, f64), to: (f64, f64), d: f64| {
        let l = len(from, to);
        if l == 0.0 {
            from
        } else {
            (from.0 + (to.0 - from.0) * d / l, from.1 + (to.1 - from.1) * d / l)
        }
    };
    for i in 0..n {
        let prev = pts[(i + n - 1) % n];
        let cur = pts[i];
        let next = pts[(i + 1) % n];
        let r = radius.min(len(prev, cur) / 2.0).min(len(cur, next) / 2.0);
        let a = toward(cur, prev, r);
        let b = toward(cur, next, r);
        let cross = (cur.0 - prev.0) * (next.1 - cur.1) - (cur.1 - prev.1) * (next.0 - cur.0);
        let sweep = u8::from(cross > 0.0);
        let _ = write!(out, "{} {} {} ", if i == 0 { "M" } else { "L" }, num(a.0), num(a.1));
        let _ = write!(out, "A {} {} 0 0 {} {} {} ", num(r), num(r), sweep, num(b.0), num(b.1));
    }
    out.push('Z');
    out
}

fn css_props(styles: &std::collections::BTreeMap<String, String>) -> String {
    let mut out = String::new();
    for (k, v) in styles {
        if LAYOUT_ATTRS.contains(&k.as_str()) {
            continue;
        }
        let v = if k == "font-size" && v.trim().parse::<f64>().is_ok() { format!("{}px", v.trim()) } else { v.clone() };
        let _ = write!(out, ";{}:{}", k, escape(&v));
    }
    out
}

pub fn emit(layout: &Layout, metrics: &FontMetrics) -> RenderOutput {
    let (w, h) = (layout.width, layout.height);
    let mut html = String::new();
    html.push_str("<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<style>\n");
    let _ = writeln!(
        html,
        ".c4c{{position:relative;font-family:monospace;font-size:{}px;line-height:{}px;white-space:pre}}",
        num(metrics.base_size),
        num(metrics.line_height)
    );
    html.push_str(".c4c svg{position:absolute;left:0;top:0;overflow:visible}\n");
    html.push_str(".c4c span{position:absolute}\n");
    html.push_str("</style>\n</head>\n<body>\n");
    let _ = writeln!(html, "<div class=\"c4c\" style=\"width:{}px;height:{}px\">", num(w), num(h));
    let _ = writeln!(html, "<svg width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">", num(w), num(h), num(w), num(h));
    for o in &layout.outlines {
        let fill = o.fill.as_deref().map_or("none".to_string(), escape);
        let _ = write!(html, "<path d=\"{}\" fill=\"{}\"", svg_path_of(o), fill);
        match &o.stroke {
            Some(s) => {
                let _ = write!(html, " stroke=\"{}\" stroke-width=\"{}\"", escape(&s.color), num(s.width));
            }
            None => html.push_str(" stroke=\"none\""),
        }
        html.push_str("/>\n");
    }
    html.push_str("</svg>\n");
    for f in &layout.fragments {
        let node = &layout.tree.nodes[f.node];
        let _ = write!(
            html,
            "<span style=\"left:{}px;top:{}px{}\"",
            num(f.x),
            num(f.y),
            css_props(&node.styles)
        );
        if !node.classes.is_empty() {
            let _ = write!(html, " class=\"{}\"", escape(&node.classes.join(" ")));
        }
        html.push('>');
        if f.html {
            html.push_str(&f.text);
        } else {
            html.push_str(&escape(&f.text));
        }
        html.push_str("</span>\n");
    }
    html.push_str("</div>\n</body>\n</html>\n");
    RenderOutput { html, width: w, height: h }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doc::{StyleAttr, StylishDoc};
    use crate::layout::{layout, SBlockCase};

    fn rect(radius: f64) -> SBlockOutline {
        SBlockOutline {
            owner: 0,
            case: SBlockCase::OneLine,
            rings: vec![vec![(1.0, 2.0), (11.5, 2.0), (11.5, 20.0), (1.0, 20.0)]],
            radius,
            stroke: None,
            fill: None,
        }
    }

    #[test]
    fn numbers() {
        assert_eq!(num(3.0), "3");
        assert_eq!(num(3.456), "3.46");
        assert_eq!(num(-0.001), "0");
        assert_eq!(num(0.5), "0.5");
    }

    #[test]
    fn plain_rectangle() {
        assert_eq!(svg_path_of(&rect(0.0)), "M 1 2 L 11.5 2 L 11.5 20 L 1 20 Z");
    }

    #[test]
    fn rounded_rectangle_has_four_arcs() {
        let p = svg_path_of(&rect(3.0));
        assert_eq!(p.matches("A 3 3 0 0 1").count(), 4);
        assert!(p.starts_with("M 1 5 A 3 3 0 0 1 4 2 "));
    }

    #[test]
    fn radius_clamped_to_half_edge() {
        let p = svg_path_of(&rect(100.0));
        // shortest edge is 10.5 long
        assert_eq!(p.matches("A 5.25 5.25").count(), 4);
    }

    #[test]
    fn empty_document_is_valid_html() {
        let m = FontMetrics::mono();
        let out = emit(&layout(&StylishDoc::node(None, &[], vec![]), &m), &m);
        assert!(out.html.contains("<div class=\"c4c\""));
        assert!(!out.html.contains("<span"));
        assert!(out.html.ends_with("</html>\n"));
    }

    #[test]
    fn colors_pass_through_and_text_is_escaped() {
        let m = FontMetrics::mono();
        let doc = StylishDoc::node(None, &[], vec![StylishDoc::text("a<b")])
            .with_styles([StyleAttr::plain("color", "teal"), StyleAttr::plain("padding", "2")]);
        let out = emit(&layout(&doc, &m), &m);
        assert!(out.html.contains("color:teal"));
        assert!(!out.html.contains("padding:"));
        assert!(out.html.contains(">a&lt;b</span>"));
    }
}
