//! Height resolution: v-gadgets, line positions and s-block outlines.

use serde::Serialize;

use super::flatten::{Fragment, LayoutTree, Spacing};
use super::width::{line_ends, Extents};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SBlockCase {
    OneLine,
    TwoLineDisjoint,
    Multiline,
}

/// Classifies an s-block from its per-line extents; `None` if it has no
/// visible text.
pub fn classify(ext: &Extents) -> Option<SBlockCase> {
    let mut lines = ext.iter();
    let (_, &(l1, _)) = lines.next()?;
    match (lines.next(), lines.next()) {
        (None, _) => Some(SBlockCase::OneLine),
        (Some((_, &(_, r2))), None) if r2 <= l1 => Some(SBlockCase::TwoLineDisjoint),
        _ => Some(SBlockCase::Multiline),
    }
}

/// Classifies a fragment range by the raw fragment positions.
pub fn classify_sblock(frags: &[Fragment], range: (usize, usize)) -> Option<SBlockCase> {
    let ext: Extents = line_ends(frags, range)
        .into_iter()
        .map(|(line, (a, b))| (line, (frags[a].x, frags[b].x + frags[b].width)))
        .collect();
    classify(&ext)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VCase {
    /// Above or below a one-line part.
    Top,
    Bottom,
    /// Multiline (i)–(iv).
    FirstLineTop,
    SecondLineTop,
    LastLineBottom,
    PenultimateBottom,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VGadget {
    pub line: usize,
    /// Above the line (otherwise below it).
    pub above: bool,
    pub x_start: f64,
    pub x_end: f64,
    pub height: f64,
    /// Depth, measured away from the line's text, at which the gadget starts.
    pub level: f64,
    pub owner: usize,
    pub case: VCase,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stroke {
    pub color: String,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SBlockOutline {
    pub owner: usize,
    pub case: SBlockCase,
    /// Closed rectilinear rings, clockwise; two for a disjoint two-line block.
    #[serde(rename = "path")]
    pub rings: Vec<Vec<(f64, f64)>>,
    pub radius: f64,
    pub stroke: Option<Stroke>,
    pub fill: Option<String>,
}

#[derive(Debug, Default)]
struct Skyline {
    segs: Vec<(f64, f64, f64)>,
}

impl Skyline {
    fn level(&self, x0: f64, x1: f64) -> f64 {
        self.segs.iter().filter(|&&(a, b, _)| a < x1 && x0 < b).map(|s| s.2).fold(0.0, f64::max)
    }

    fn raise(&mut self, x0: f64, x1: f64, depth: f64) {
        self.segs.push((x0, x1, depth));
    }

    fn depth(&self) -> f64 {
        self.segs.iter().map(|s| s.2).fold(0.0, f64::max)
    }
}

pub struct Heights {
    pub vgadgets: Vec<VGadget>,
    pub outlines: Vec<SBlockOutline>,
    pub line_tops: Vec<f64>,
    pub line_heights: Vec<f64>,
    pub height: f64,
}

struct Request {
    line: usize,
    above: bool,
    x0: f64,
    x1: f64,
    case: VCase,
}

/// Allocates v-gadgets children-first, stacks them per line, assigns each
/// fragment its `y`, and traces the outline of every bordered block.
pub fn resolve_heights(tree: &LayoutTree, frags: &mut [Fragment], ext: &[Extents], base_line_height: f64) -> Heights {
    let n_lines = tree.line_count.max(1);
    let mut above: Vec<Skyline> = (0..n_lines).map(|_| Skyline::default()).collect();
    let mut below: Vec<Skyline> = (0..n_lines).map(|_| Skyline::default()).collect();
    let mut vgadgets = Vec::new();
    // (owner, case, requests, levels) for every node that will be outlined
    let mut pending = Vec::new();

    for id in (0..tree.nodes.len()).rev() {
        let sp = &tree.nodes[id].spacing;
        let s = sp.total();
        if s <= 0.0 && !sp.has_outline() {
            continue;
        }
        let e = &ext[id];
        let Some(case) = classify(e) else { continue };
        let reqs = requests(case, e, s);
        let mut levels = Vec::with_capacity(reqs.len());
        for r in &reqs {
            let sky = if r.above { &mut above[r.line] } else { &mut below[r.line] };
            let lvl = sky.level(r.x0, r.x1);
            levels.push(lvl);
            if s > 0.0 {
                sky.raise(r.x0, r.x1, lvl + s);
                vgadgets.push(VGadget {
                    line: r.line,
                    above: r.above,
                    x_start: r.x0,
                    x_end: r.x1,
                    height: s,
                    level: lvl,
                    owner: id,
                    case: r.case,
                });
            }
        }
        if sp.has_outline() {
            pending.push((id, case, reqs, levels));
        }
    }

    let mut line_heights = vec![base_line_height; n_lines];
    for f in frags.iter() {
        line_heights[f.line] = line_heights[f.line].max(f.height);
    }
    let mut line_tops = vec![0.0; n_lines];
    let mut y = 0.0;
    for l in 0..n_lines {
        if l > 0 {
            y += line_heights[l - 1] + below[l - 1].depth();
        }
        y += above[l].depth();
        line_tops[l] = y;
    }
    let height = line_tops[n_lines - 1] + line_heights[n_lines - 1] + below[n_lines - 1].depth();
    for f in frags.iter_mut() {
        f.y = line_tops[f.line];
    }

    let mut outlines: Vec<SBlockOutline> = pending
        .into_iter()
        .map(|(id, case, reqs, levels)| {
            let sp = &tree.nodes[id].spacing;
            let edge = |i: usize| {
                let r: &Request = &reqs[i];
                let off = levels[i] + sp.stroke_offset();
                if r.above {
                    line_tops[r.line] - off
                } else {
                    line_tops[r.line] + line_heights[r.line] + off
                }
            };
            let e = &ext[id];
            let a = sp.stroke_offset();
            let rect = |(l, r): (f64, f64), top: f64, bottom: f64| {
                vec![(l - a, top), (r + a, top), (r + a, bottom), (l - a, bottom)]
            };
            let rings = match case {
                SBlockCase::OneLine => {
                    let (_, &lr) = e.iter().next().expect("classified");
                    vec![rect(lr, edge(0), edge(1))]
                }
                SBlockCase::TwoLineDisjoint => {
                    let mut it = e.values();
                    let (p1, p2) = (*it.next().expect("two lines"), *it.next().expect("two lines"));
                    vec![rect(p1, edge(0), edge(1)), rect(p2, edge(2), edge(3))]
                }
                SBlockCase::Multiline => {
                    let (min_l, max_r) = bounds(e);
                    let lf = e.values().next().expect("lines").0 - a;
                    let rz = e.values().next_back().expect("lines").1 + a;
                    let (xl, xr) = (min_l - a, max_r + a);
                    let (t1, t2, b_last, b_pen) = (edge(0), edge(1), edge(2), edge(3));
                    vec![simplify(vec![
                        (lf, t1),
                        (xr, t1),
                        (xr, b_pen),
                        (rz, b_pen),
                        (rz, b_last),
                        (xl, b_last),
                        (xl, t2),
                        (lf, t2),
                    ])]
                }
            };
            SBlockOutline {
                owner: id,
                case,
                rings,
                radius: sp.radius,
                stroke: stroke(sp),
                fill: sp.background.clone(),
            }
        })
        .collect();
    outlines.sort_by_key(|o| o.owner);
    vgadgets.sort_by_key(|g| g.owner);
    Heights { vgadgets, outlines, line_tops, line_heights, height }
}

fn stroke(sp: &Spacing) -> Option<Stroke> {
    (sp.border > 0.0).then(|| Stroke {
        color: sp.border_color.clone().unwrap_or_else(|| "black".to_string()),
        width: sp.border,
    })
}

fn bounds(e: &Extents) -> (f64, f64) {
    e.values().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, r), &(a, b)| (l.min(a), r.max(b)))
}

fn requests(case: SBlockCase, e: &Extents, s: f64) -> Vec<Request> {
    let req = |line, above, x0, x1, case| Request { line, above, x0, x1, case };
    match case {
        SBlockCase::OneLine | SBlockCase::TwoLineDisjoint => e
            .iter()
            .flat_map(|(&line, &(l, r))| {
                [req(line, true, l - s, r + s, VCase::Top), req(line, false, l - s, r + s, VCase::Bottom)]
            })
            .collect(),
        SBlockCase::Multiline => {
            let (min_l, max_r) = bounds(e);
            let (&first, &(lf, _)) = e.iter().next().expect("lines");
            let (&last, &(_, rz)) = e.iter().next_back().expect("lines");
            vec![
                req(first, true, lf - s, max_r + s, VCase::FirstLineTop),
                req(first + 1, true, min_l - s, lf, VCase::SecondLineTop),
                req(last, false, min_l - s, rz + s, VCase::LastLineBottom),
                req(last - 1, false, rz, max_r + s, VCase::PenultimateBottom),
            ]
        }
    }
}

/// Drops repeated and collinear vertices of a closed rectilinear ring.
pub fn simplify(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut removed = false;
        for i in 0..n {
            let p = pts[(i + n - 1) % n];
            let q = pts[i];
            let r = pts[(i + 1) % n];
            let same = q == p;
            let collinear = (p.0 == q.0 && q.0 == r.0) || (p.1 == q.1 && q.1 == r.1);
            if same || collinear {
                pts.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return pts;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplify_drops_degenerate_corners() {
        let ring = vec![(0.0, 0.0), (10.0, 0.0), (10.0, 5.0), (10.0, 5.0), (10.0, 10.0), (0.0, 10.0), (0.0, 4.0), (0.0, 4.0)];
        assert_eq!(simplify(ring), vec![(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]);
    }

    #[test]
    fn classification() {
        let one: Extents = [(0, (0.0, 10.0))].into_iter().collect();
        let disjoint: Extents = [(0, (40.0, 60.0)), (1, (0.0, 24.0))].into_iter().collect();
        let overlap: Extents = [(0, (40.0, 60.0)), (1, (16.0, 48.0))].into_iter().collect();
        assert_eq!(classify(&one), Some(SBlockCase::OneLine));
        assert_eq!(classify(&disjoint), Some(SBlockCase::TwoLineDisjoint));
        assert_eq!(classify(&overlap), Some(SBlockCase::Multiline));
        assert_eq!(classify(&Extents::new()), None);
    }
}
