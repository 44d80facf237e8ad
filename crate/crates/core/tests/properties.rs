mod common;

use common::gen;
use css4code_core::sheet::{desugar_all, load_stylesheet, parse_stylesheet, print_stylesheet};
use css4code_core::engine::style_events;
use css4code_core::tiny::{resolve_names, associate, flatten_chain, parse_tiny, print_tiny, Assoc, FixityTable};
use css4code_core::value::Scalar;
use css4code_core::{Path, Value};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

const OPS: [&str; 10] = ["+", "-", "*", ".", "$", ">>=", "++", ":", "==", "<+>"];

fn ident() -> impl Strategy<Value = String> {
    "v[a-c]?"
}

fn space() -> impl Strategy<Value = &'static str> {
    prop_oneof![4 => Just(" "), 1 => Just("  "), 1 => Just("\n  ")]
}

fn exp() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        ident(),
        (0u32..1000).prop_map(|n| n.to_string()),
        "[a-z ]{0,4}".prop_map(|s| format!("{s:?}")),
    ];
    atom.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), space(), prop::sample::select(&OPS[..]), space(), inner.clone())
                .prop_map(|(a, s1, op, s2, b)| format!("{a}{s1}{op}{s2}{b}")),
            (ident(), prop::collection::vec(inner.clone(), 1..3)).prop_map(|(f, xs)| format!("{f} ({})", xs.join(") ("))),
            inner.clone().prop_map(|e| format!("( {e} )")),
            prop::collection::vec(inner.clone(), 0..3).prop_map(|xs| format!("[{}]", xs.join(", "))),
            (ident(), inner.clone()).prop_map(|(x, e)| format!("\\{x} -> {e}")),
            (inner.clone(), inner.clone(), inner.clone()).prop_map(|(c, t, e)| format!("if {c} then {t} else {e}")),
            (ident(), inner.clone(), inner).prop_map(|(x, d, b)| format!("let {x} = {d} in {b}")),
        ]
    })
}

fn decl() -> impl Strategy<Value = String> {
    prop_oneof![
        (ident(), prop::collection::vec(ident(), 0..3), space(), exp(), prop::option::of("[a-z ]{0,8}")).prop_map(
            |(f, ps, s, e, c)| {
                let params: String = ps.iter().map(|p| format!(" {p}")).collect();
                let comment = c.map(|c| format!(" -- {c}")).unwrap_or_default();
                format!("{f}{params} ={s}{e}{comment}")
            }
        ),
        (ident(), prop::sample::select(vec!["Int", "a -> b", "[Int] -> Maybe (a -> b)", "Maybe a -> ()"]))
            .prop_map(|(f, t)| format!("{f} :: {t}")),
        "[a-z ]{0,10}".prop_map(|c| format!("-- {c}")),
        Just(String::new()),
    ]
}

fn program() -> impl Strategy<Value = String> {
    (prop::collection::vec(decl(), 0..6), any::<bool>()).prop_map(|(ds, newline)| {
        let mut s = ds.join("\n");
        if newline {
            s.push('\n');
        }
        s
    })
}

fn fixity() -> impl Strategy<Value = FixityTable> {
    prop::collection::vec((0i32..10, any::<bool>()), OPS.len()).prop_map(|rows| {
        let mut t = FixityTable::default();
        for (op, (prec, left)) in OPS.iter().zip(rows) {
            t.set(op, prec, if left { Assoc::Left } else { Assoc::Right });
        }
        t
    })
}

fn name(v: &Value) -> &str {
    v.child(1).and_then(Value::token).unwrap_or_default()
}

/// The region a binding occurrence scopes over, judged only from where it sits.
fn scope_of(binder: &[usize], root: &Value) -> Vec<usize> {
    let parent = &binder[..binder.len() - 1];
    let ctor = |p: &[usize]| Path::new(p.to_vec()).apply(root).unwrap().ctor().to_string();
    if binder.len() == 2 {
        return Vec::new(); // a top-level equation name
    }
    let owner = &parent[..parent.len() - 1];
    let with = |i: usize| [owner, &[i]].concat();
    match (ctor(owner).as_str(), parent.last().copied(), ctor(parent).as_str()) {
        ("Equation", _, "Params") => with(4),
        ("ELam", _, "Params") => with(4),
        ("ELet", _, "Params") => with(5),
        _ if ctor(parent) == "ELet" => parent.to_vec(),
        other => panic!("unexpected binder position {other:?}"),
    }
}

/// Identifiers inside types are not names of values.
fn is_var(p: &[usize], root: &Value) -> bool {
    Path::new(p[..p.len() - 1].to_vec()).apply(root).is_some_and(|v| v.ctor() == "EVar")
}

/// Independent resolution: the same-named binder with the innermost scope
/// covering the use, the later one on a tie.
fn expected_binders(root: &Value) -> Vec<(Vec<usize>, Option<Vec<usize>>)> {
    let idents: Vec<(Vec<usize>, &Value)> =
        root.walk().into_iter().filter(|(_, v)| v.ctor() == "Ident").map(|(p, v)| (p.indices().to_vec(), v)).collect();
    let binders: Vec<(&Vec<usize>, &Value, Vec<usize>)> = idents
        .iter()
        .filter(|(_, v)| v.annotation("binder_id").is_some())
        .map(|(p, v)| (p, *v, scope_of(p, root)))
        .collect();
    idents
        .iter()
        .filter(|(p, v)| v.annotation("binder_id").is_none() && (p.len() == 2 || is_var(p, root)))
        .map(|(p, v)| {
            let best = binders
                .iter()
                .filter(|(_, b, scope)| name(b) == name(v) && p.starts_with(scope))
                .max_by(|x, y| (x.2.len(), x.0).cmp(&(y.2.len(), y.0)))
                .map(|(bp, _, _)| (*bp).clone());
            (p.clone(), best)
        })
        .collect()
}

fn check_scopes(src: &str) -> Result<usize, TestCaseError> {
    let mut v = parse_tiny(src, &FixityTable::default()).unwrap().value();
    resolve_names(&mut v);
    let ids: std::collections::BTreeMap<i64, Vec<usize>> = v
        .walk()
        .into_iter()
        .filter_map(|(p, n)| match n.annotation("binder_id") {
            Some(Scalar::Int(id)) => Some((*id, p.indices().to_vec())),
            _ => None,
        })
        .collect();
    let expected = expected_binders(&v);
    for (use_path, want) in &expected {
        let n = Path::new(use_path.clone()).apply(&v).unwrap();
        let got = match (n.annotation("use_of"), n.annotation("unbound")) {
            (Some(Scalar::Int(id)), None) => Some(ids[id].clone()),
            (None, Some(Scalar::Bool(true))) => None,
            other => return Err(TestCaseError::fail(format!("{use_path:?} annotated {other:?}\n{src}"))),
        };
        prop_assert_eq!(&got, want, "use at {:?} in\n{}", use_path, src);
    }
    Ok(expected.len())
}

#[test]
fn let_shadows_a_parameter() {
    assert_eq!(check_scopes("f x = let x = 1 in x\n").unwrap(), 1);
    let mut v = parse_tiny("f x = let x = 1 in x\n", &FixityTable::default()).unwrap().value();
    resolve_names(&mut v);
    let body_use = Path::new(vec![1, 4, 7, 1]).apply(&v).unwrap();
    let let_name = Path::new(vec![1, 4, 2]).apply(&v).unwrap();
    assert_eq!(body_use.annotation("use_of"), let_name.annotation("binder_id"));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn tiny_printing_reproduces_the_source(src in program()) {
        let p = parse_tiny(&src, &FixityTable::default()).map_err(|e| TestCaseError::fail(format!("{e}\n{src}")))?;
        prop_assert_eq!(print_tiny(&p), src);
    }

    #[test]
    fn every_use_resolves_to_its_innermost_binder(src in program()) {
        check_scopes(&src)?;
    }

    #[test]
    fn reassociating_matches_parsing_under_the_new_table(
        operands in prop::collection::vec(ident(), 2..7),
        ops in prop::collection::vec(prop::sample::select(&OPS[..]), 6),
        table in fixity(),
    ) {
        let mut src = format!("x = {}", operands[0]);
        for (x, op) in operands[1..].iter().zip(&ops) {
            src.push_str(&format!(" {op} {x}"));
        }
        let under_default = parse_tiny(&src, &FixityTable::default()).unwrap();
        let under_table = parse_tiny(&src, &table).unwrap();
        let (xs, os) = flatten_chain(&under_default.root.children[0].children[3]);
        prop_assert_eq!(os.len(), operands.len() - 1);
        prop_assert_eq!(&associate(xs, os, &table), &under_table.root.children[0].children[3]);
    }

    #[test]
    fn sheet_printing_is_a_fixed_point(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let text: String = (0..n).map(|i| gen::rule(&mut rng, i) + "\n").collect();
        let once = print_stylesheet(&parse_stylesheet(&text).unwrap());
        let reparsed = parse_stylesheet(&once).map_err(|e| TestCaseError::fail(format!("{e:?}\n{once}")))?;
        prop_assert_eq!(print_stylesheet(&reparsed), once.clone());
        // printing loses nothing the engine uses
        let reg = gen::registry();
        let mut budget = 20;
        let value = gen::value(&mut rng, 5, &mut budget);
        let mut nodes = 50;
        let doc = gen::view(&mut rng, &value, Path::root(), &mut nodes);
        let events = |t: &str| style_events(&desugar_all(&load_stylesheet(t, &reg).unwrap()), &doc, &value, &reg).events;
        prop_assert_eq!(events(&text), events(&once));
    }
}
