//! The whole render pipeline: parse, analyze, view, style, lay out, emit.

use serde::{Deserialize, Serialize};

use crate::demo::{parse_tallies, tally_registry, view_tallies};
use crate::doc::StylishDoc;
use crate::engine::apply_stylesheet;
use crate::layout::{layout, FontMetrics, Layout};
use crate::render::emit;
use crate::sheet::{desugar_all, load_stylesheet};
use crate::tiny::{parse_tiny, resolve_names, tiny_registry, trace_eval, view_tiny, FixityTable, DEFAULT_FUEL};
use crate::value::{ConstructorRegistry, Value};

/// Style sheets shipped with the tool, by name.
pub const BUNDLED_SHEETS: [(&str, &str); 7] = [
    ("blocks", include_str!("../sheets/blocks.c4c")),
    ("heat", include_str!("../sheets/heat.c4c")),
    ("pipeline", include_str!("../sheets/pipeline.c4c")),
    ("semantic", include_str!("../sheets/semantic.c4c")),
    ("skeleton", include_str!("../sheets/skeleton.c4c")),
    ("syntax", include_str!("../sheets/syntax.c4c")),
    ("tally", include_str!("../sheets/tally.c4c")),
];

pub fn bundled_sheet(name: &str) -> Option<&'static str> {
    BUNDLED_SHEETS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lang {
    #[default]
    Tiny,
    /// `[Left 1, Right 2, ...]` shown with tally marks.
    Tally,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    #[default]
    None,
    Names,
    Heat,
}

fn default_metrics() -> String {
    "mono".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderRequest {
    pub code: String,
    pub sheet: String,
    #[serde(default)]
    pub lang: Lang,
    #[serde(default)]
    pub analysis: Analysis,
    /// A preset name; table files are resolved by the caller.
    #[serde(default = "default_metrics")]
    pub metrics: String,
    #[serde(default)]
    pub entry: Option<String>,
    #[serde(default)]
    pub debug: bool,
}

impl RenderRequest {
    pub fn new(code: impl Into<String>, sheet: impl Into<String>) -> Self {
        RenderRequest {
            code: code.into(),
            sheet: sheet.into(),
            lang: Lang::Tiny,
            analysis: Analysis::None,
            metrics: default_metrics(),
            entry: None,
            debug: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// A problem reported to the user; `line`/`col` are 1-based, 0 when unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diag {
    pub severity: Severity,
    pub message: String,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone)]
pub struct Rendered {
    /// Empty when an error stopped the pipeline.
    pub html: String,
    pub diagnostics: Vec<Diag>,
    pub value: Option<Value>,
    pub doc: Option<StylishDoc>,
    pub layout: Option<Layout>,
}

impl Rendered {
    fn failed(diagnostics: Vec<Diag>) -> Self {
        Rendered { html: String::new(), diagnostics, value: None, doc: None, layout: None }
    }

    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(|d| d.severity == Severity::Error)
    }
}

fn error(message: String, line: usize, col: usize) -> Diag {
    Diag { severity: Severity::Error, message, line, col }
}

/// Runs the pipeline end to end. Parse and check errors stop it with empty
/// HTML; engine and evaluation problems are warnings.
pub fn render(req: &RenderRequest, metrics: &FontMetrics) -> Rendered {
    let (value, doc, registry): (Value, StylishDoc, ConstructorRegistry) = match req.lang {
        Lang::Tiny => {
            let program = match parse_tiny(&req.code, &FixityTable::default()) {
                Ok(p) => p,
                Err(e) => return Rendered::failed(vec![error(format!("code: {}", e.msg), e.line, e.col)]),
            };
            (program.value(), view_tiny(&program), tiny_registry())
        }
        Lang::Tally => match parse_tallies(&req.code) {
            Some(v) => {
                let doc = view_tallies(&v);
                (v, doc, tally_registry())
            }
            None => return Rendered::failed(vec![error("code: expected [Left n, Right n, ...]".into(), 1, 1)]),
        },
    };
    let rules = match load_stylesheet(&req.sheet, &registry) {
        Ok(r) => r,
        Err(ds) => {
            return Rendered::failed(ds.into_iter().map(|d| error(format!("sheet: {}", d.message), d.line, d.col)).collect())
        }
    };

    let mut value = value;
    let mut diagnostics = Vec::new();
    if req.lang == Lang::Tiny && req.analysis != Analysis::None {
        resolve_names(&mut value);
    }
    if req.lang == Lang::Tiny && req.analysis == Analysis::Heat {
        let entry = req.entry.as_deref().unwrap_or("main");
        if let Err(e) = trace_eval(&mut value, entry, DEFAULT_FUEL).result {
            diagnostics.push(Diag { severity: Severity::Warning, message: format!("eval: {e}"), line: 0, col: 0 });
        }
    }

    let internal = desugar_all(&rules);
    let (styled, engine_diags) = apply_stylesheet(&internal, &doc, &value, &registry);
    for d in engine_diags {
        let pos = rules.get(d.rule_index).map(|r| r.pos).unwrap_or_default();
        diagnostics.push(Diag { severity: Severity::Warning, message: d.message, line: pos.line, col: pos.col });
    }
    let l = layout(&styled, metrics);
    let html = emit(&l, metrics).html;
    Rendered { html, diagnostics, value: Some(value), doc: Some(styled), layout: Some(l) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_sheets_check_clean() {
        let tiny = tiny_registry();
        for (name, text) in BUNDLED_SHEETS {
            let reg = if name == "tally" { tally_registry() } else { tiny.clone() };
            if let Err(ds) = load_stylesheet(text, &reg) {
                panic!("{name}: {}", ds.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"));
            }
        }
    }

    #[test]
    fn syntax_error_yields_one_diagnostic_and_no_html() {
        let r = render(&RenderRequest::new("x = 1", "x@EInt( -> x { color: red; }"), &FontMetrics::mono());
        assert!(r.html.is_empty());
        assert_eq!(r.diagnostics.len(), 1);
        assert_eq!(r.diagnostics[0].severity, Severity::Error);
    }

    #[test]
    fn blocks_render() {
        let r = render(&RenderRequest::new("x = 1 + 2", bundled_sheet("blocks").unwrap()), &FontMetrics::mono());
        assert!(!r.has_errors(), "{:?}", r.diagnostics);
        assert_eq!(r.html.matches("<path").count(), 1);
    }

    #[test]
    fn heat_analysis_colors_expressions() {
        let mut req = RenderRequest::new("main = 1 + 2", bundled_sheet("heat").unwrap());
        req.analysis = Analysis::Heat;
        let r = render(&req, &FontMetrics::mono());
        assert!(r.html.contains("color:#ff4500"));
    }
}
