//! Deterministic font metrics: fixed per-character advances instead of
//! asking a browser to measure text.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("line {line}: {msg}")]
    Table { line: usize, msg: String },
    #[error("unknown metrics preset `{0}`")]
    UnknownPreset(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FontMetrics {
    advances: HashMap<char, f64>,
    pub default_advance: f64,
    pub line_height: f64,
    /// Distance from the top of a line to the text baseline.
    pub baseline: f64,
    /// The font size the advances are given for.
    pub base_size: f64,
}

impl FontMetrics {
    /// Every character 8px wide, 16px lines.
    pub fn mono() -> Self {
        FontMetrics { advances: HashMap::new(), default_advance: 8.0, line_height: 16.0, baseline: 12.0, base_size: 16.0 }
    }

    pub fn preset(name: &str) -> Result<Self, MetricsError> {
        match name {
            "mono" => Ok(Self::mono()),
            other => Err(MetricsError::UnknownPreset(other.to_string())),
        }
    }

    /// Parses a tab-separated table. Each row is `CHAR<TAB>ADVANCE`, where
    /// CHAR is a literal character or `U+XXXX`. Rows starting with `@` set
    /// `line_height`, `baseline`, `base_size` or `default`; `#` starts a
    /// comment. Unlisted properties keep their `mono` values.
    pub fn from_table(text: &str) -> Result<Self, MetricsError> {
        let mut m = Self::mono();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |msg: &str| MetricsError::Table { line, msg: msg.to_string() };
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let (key, val) = raw.split_once('\t').ok_or_else(|| err("expected KEY<TAB>VALUE"))?;
            let val: f64 = val.trim().parse().map_err(|_| err("value is not a number"))?;
            if !(val.is_finite() && val > 0.0) {
                return Err(err("values must be positive"));
            }
            match key {
                "@line_height" => m.line_height = val,
                "@baseline" => m.baseline = val,
                "@base_size" => m.base_size = val,
                "@default" => m.default_advance = val,
                k if k.starts_with('@') => return Err(err("unknown property")),
                k => {
                    let c = parse_char(k).ok_or_else(|| err("expected one character or U+XXXX"))?;
                    m.advances.insert(c, val);
                }
            }
        }
        Ok(m)
    }

    pub fn advance(&self, c: char) -> f64 {
        self.advances.get(&c).copied().unwrap_or(self.default_advance)
    }

    /// Width of a single-line string at `font_size` (`None` = base size).
    pub fn measure(&self, text: &str, font_size: Option<f64>) -> f64 {
        let scale = font_size.map_or(1.0, |s| s / self.base_size);
        text.chars().map(|c| self.advance(c)).sum::<f64>() * scale
    }
}

fn parse_char(k: &str) -> Option<char> {
    if let Some(hex) = k.strip_prefix("U+") {
        return u32::from_str_radix(hex, 16).ok().and_then(char::from_u32);
    }
    let mut cs = k.chars();
    match (cs.next(), cs.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}
