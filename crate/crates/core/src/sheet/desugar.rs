//! Distributes a rule's named style blocks onto the pattern positions that
//! bind those names, expanding selector lists into separate rules.

use std::collections::{BTreeMap, BTreeSet};

use crate::doc::StyleSet;

use super::ast::*;
use super::predicate::Expr;

#[derive(Debug, Clone, PartialEq)]
pub enum PatternSubrule {
    Wildcard,
    KeepOut,
    Var { name: String, datatype: Option<String>, styles: StyleSet },
    Ctor { binder: Option<String>, ctor: String, args: Option<Vec<PatternSubrule>>, styles: StyleSet },
    LitInt(i64),
    LitStr(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum BasicSubrule {
    Pattern(PatternSubrule),
    Class { name: Option<String>, styles: StyleSet },
    Top,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeSubrule {
    pub basic: BasicSubrule,
    pub classes: BTreeSet<String>,
}

/// One path selector with styles attached in place. `steps[0]` has no
/// combinator; every later step records how it relates to its predecessor.
#[derive(Debug, Clone, PartialEq)]
pub struct InternalRule {
    pub steps: Vec<(Option<Combinator>, NodeSubrule)>,
    pub guard: Option<Expr>,
    /// Index of the originating rule in its sheet.
    pub rule_index: usize,
}

impl InternalRule {
    /// Every style attribute attached anywhere in the rule.
    pub fn attached_styles(&self) -> Vec<(String, StyleSet)> {
        fn walk(p: &PatternSubrule, out: &mut Vec<(String, StyleSet)>) {
            match p {
                PatternSubrule::Var { name, styles, .. } => out.push((name.clone(), styles.clone())),
                PatternSubrule::Ctor { binder, args, styles, .. } => {
                    if let Some(b) = binder {
                        out.push((b.clone(), styles.clone()));
                    }
                    args.iter().flatten().for_each(|a| walk(a, out));
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        for (_, n) in &self.steps {
            match &n.basic {
                BasicSubrule::Pattern(p) => walk(p, &mut out),
                BasicSubrule::Class { name: Some(x), styles } => out.push((x.clone(), styles.clone())),
                _ => {}
            }
        }
        out
    }
}

pub fn desugar(rule: &ExternalRule, rule_index: usize) -> Vec<InternalRule> {
    let named = rule.named_styles();
    rule.selectors
        .iter()
        .map(|sel| {
            let mut steps = vec![(None, node(&sel.head, &named))];
            steps.extend(sel.tail.iter().map(|(c, n)| (Some(*c), node(n, &named))));
            InternalRule { steps, guard: rule.guard.clone(), rule_index }
        })
        .collect()
}

pub fn desugar_all(rules: &[ExternalRule]) -> Vec<InternalRule> {
    rules.iter().enumerate().flat_map(|(i, r)| desugar(r, i)).collect()
}

fn styles_for(name: &str, named: &BTreeMap<String, StyleSet>) -> StyleSet {
    named.get(name).cloned().unwrap_or_default()
}

fn node(n: &NodeSelector, named: &BTreeMap<String, StyleSet>) -> NodeSubrule {
    let basic = match &n.basic {
        Basic::Pattern(p) => BasicSubrule::Pattern(pattern(p, named)),
        Basic::Class { name } => BasicSubrule::Class {
            name: name.clone(),
            styles: name.as_deref().map(|x| styles_for(x, named)).unwrap_or_default(),
        },
        Basic::Top => BasicSubrule::Top,
    };
    NodeSubrule { basic, classes: n.classes.clone() }
}

fn pattern(p: &Pattern, named: &BTreeMap<String, StyleSet>) -> PatternSubrule {
    match p {
        Pattern::Wildcard => PatternSubrule::Wildcard,
        Pattern::KeepOut => PatternSubrule::KeepOut,
        Pattern::LitInt(i) => PatternSubrule::LitInt(*i),
        Pattern::LitStr(s) => PatternSubrule::LitStr(s.clone()),
        Pattern::Var { name, datatype, .. } => PatternSubrule::Var {
            name: name.clone(),
            datatype: datatype.clone(),
            styles: styles_for(name, named),
        },
        Pattern::Ctor { binder, ctor, args, .. } => PatternSubrule::Ctor {
            binder: binder.clone(),
            ctor: ctor.clone(),
            args: args.as_ref().map(|a| a.iter().map(|p| pattern(p, named)).collect()),
            styles: binder.as_deref().map(|b| styles_for(b, named)).unwrap_or_default(),
        },
    }
}
