//! Style sheets for code: pattern-matching selectors over AST values,
//! evaluated against provenance-carrying display documents, and an s-block
//! layout engine that renders the result as HTML over SVG.

pub mod demo;
pub mod doc;
pub mod engine;
pub mod layout;
pub mod pipeline;
pub mod render;
pub mod sheet;
pub mod tiny;
pub mod value;

pub use doc::{StyleAttr, StyleEnv, StyleSet, StylishDoc};
pub use value::{ConstructorRegistry, Path, Value};
