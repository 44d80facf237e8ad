//! The Tiny view: a display document whose text is exactly the source.

use super::syntax::{Syn, TinyProgram};
use crate::doc::StylishDoc;
use crate::value::Path;

fn token_class(ctor: &str) -> Option<&'static str> {
    Some(match ctor {
        "Name" => "ident",
        "Int" => "int",
        "Str" => "string",
        "Op" => "op",
        "Kw" => "keyword",
        "Comment" => "comment",
        _ => return None,
    })
}

/// Every syntax node becomes a document node carrying its path; text between
/// children (spaces, brackets, commas, comments) becomes plain leaves, with
/// trivia comments wrapped in path-less `comment` nodes.
pub fn view_tiny(program: &TinyProgram) -> StylishDoc {
    view(&program.root, Path::root(), &program.source)
}

/// The exact source text, recovered from the view.
pub fn print_tiny(program: &TinyProgram) -> String {
    view_tiny(program).text_content()
}

fn view(s: &Syn, path: Path, src: &str) -> StylishDoc {
    let classes: Vec<&str> = token_class(s.ctor).into_iter().collect();
    let mut out = Vec::new();
    if s.token.is_some() {
        out.push(StylishDoc::text(&src[s.span.start..s.span.end]));
    } else {
        let mut cursor = s.span.start;
        for (i, c) in s.children.iter().enumerate() {
            gap(&src[cursor..c.span.start], &mut out);
            out.push(view(c, path.extend(i + 1), src));
            cursor = c.span.end.max(cursor);
        }
        gap(&src[cursor..s.span.end.max(cursor)], &mut out);
    }
    StylishDoc::node(Some(path), &classes, out)
}

fn gap(mut text: &str, out: &mut Vec<StylishDoc>) {
    while let Some(i) = text.find("--") {
        if i > 0 {
            out.push(StylishDoc::text(&text[..i]));
        }
        let end = text[i..].find('\n').map_or(text.len(), |n| i + n);
        out.push(StylishDoc::node(None, &["comment"], vec![StylishDoc::text(&text[i..end])]));
        text = &text[end..];
    }
    if !text.is_empty() {
        out.push(StylishDoc::text(text));
    }
}
