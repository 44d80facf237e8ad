//! The tally-marks demo: a list of tagged integers shown with their tallies.

use crate::doc::StylishDoc;
use crate::value::{Arity, ConstructorRegistry, Path, Value};

/// Colors the `Left` numbers, boxes the square ones, and widens every tally.
pub const TALLY_SHEET: &str = include_str!("../sheets/tally.c4c");

pub fn tally_registry() -> ConstructorRegistry {
    let mut r = ConstructorRegistry::with_primitives();
    r.add("Either", "Left", Arity::Fixed(1)).expect("fresh");
    r.add("Either", "Right", Arity::Fixed(1)).expect("fresh");
    r.add("List", "List", Arity::Variadic).expect("fresh");
    r
}

/// Parses `[Left 1, Right 2, ...]` into a variadic `List` value.
pub fn parse_tallies(src: &str) -> Option<Value> {
    let inner = src.trim().strip_prefix('[')?.strip_suffix(']')?;
    if inner.trim().is_empty() {
        return Some(Value::node("List", Vec::new()));
    }
    let items = inner
        .split(',')
        .map(|item| {
            let mut words = item.split_whitespace();
            let tag = words.next().filter(|t| matches!(*t, "Left" | "Right"))?;
            let n: i64 = words.next()?.parse().ok()?;
            words.next().is_none().then(|| Value::node(tag, vec![Value::int(n)]))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Value::node("List", items))
}

/// Each element shows its tag, then the number followed by its tally marks.
/// The number keeps its provenance; the wrapper and the marks have none.
pub fn view_tallies(v: &Value) -> StylishDoc {
    let root = Path::root();
    let mut items = Vec::new();
    for (i, e) in v.children().iter().enumerate() {
        if i > 0 {
            items.push(StylishDoc::text(", "));
        }
        let path = root.extend(i + 1);
        let n = e.child(1).and_then(Value::token).unwrap_or("0");
        let count = n.parse::<usize>().unwrap_or(0);
        let int_tallies = StylishDoc::node(
            None,
            &["int-tallies"],
            vec![
                StylishDoc::node(Some(path.extend(1)), &[], vec![StylishDoc::text(n)]),
                StylishDoc::text(" "),
                StylishDoc::node(None, &["tally-marks"], vec![StylishDoc::text("|".repeat(count))]),
            ],
        );
        items.push(StylishDoc::node(Some(path), &[], vec![StylishDoc::text(format!("{} ", e.ctor())), int_tallies]));
    }
    StylishDoc::node(Some(root), &[], items)
}
