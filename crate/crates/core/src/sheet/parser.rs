//! Scannerless recursive-descent parser for `.c4c` style sheets.

use std::collections::{BTreeSet, HashSet};

use crate::doc::StyleAttr;

use super::ast::*;
use super::predicate::{BinOp, Expr, Func, Lit, UnOp};
use super::{DiagKind, Diagnostic};

type PResult<T> = Result<T, Diagnostic>;

struct Cursor<'s> {
    src: &'s str,
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Clone, Copy)]
struct Mark {
    pos: usize,
    line: usize,
    col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_lowercase() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn is_class_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

impl<'s> Cursor<'s> {
    fn new(src: &'s str) -> Self {
        Cursor { src, pos: 0, line: 1, col: 1 }
    }

    fn mark(&self) -> Mark {
        Mark { pos: self.pos, line: self.line, col: self.col }
    }

    fn reset(&mut self, m: Mark) {
        self.pos = m.pos;
        self.line = m.line;
        self.col = m.col;
    }

    fn here(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn rest(&self) -> &'s str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek2(&self) -> Option<char> {
        self.rest().chars().nth(1)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn starts_with(&self, s: &str) -> bool {
        self.rest().starts_with(s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.starts_with(s) {
            for _ in s.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    /// Skips whitespace and `--` comments; reports whether anything was skipped.
    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('-') if self.peek2() == Some('-') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        self.pos != start
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(Diagnostic::new(DiagKind::SyntaxError, self.here(), msg))
    }

    fn expect(&mut self, s: &str) -> PResult<()> {
        if self.eat(s) {
            Ok(())
        } else {
            let found = self.peek().map(|c| format!("`{c}`")).unwrap_or_else(|| "end of input".into());
            self.error(format!("expected `{s}`, found {found}"))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'s str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn ident(&mut self) -> Option<&'s str> {
        if self.peek().is_some_and(is_ident_start) {
            Some(self.take_while(is_ident_char))
        } else {
            None
        }
    }

    fn type_id(&mut self) -> Option<&'s str> {
        if self.peek().is_some_and(|c| c.is_ascii_uppercase()) {
            Some(self.take_while(is_ident_char))
        } else {
            None
        }
    }

    fn peek_word(&self) -> &'s str {
        let r = self.rest();
        let end = r.find(|c: char| !is_ident_char(c)).unwrap_or(r.len());
        &r[..end]
    }

    fn string_lit(&mut self) -> PResult<String> {
        let at = self.here();
        self.expect("\"")?;
        let mut out = String::new();
        loop {
            match self.bump() {
                None | Some('\n') => {
                    return Err(Diagnostic::new(DiagKind::SyntaxError, at, "unterminated string"))
                }
                Some('"') => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('n') => out.push('\n'),
                    Some('t') => out.push('\t'),
                    Some(c @ ('\\' | '"')) => out.push(c),
                    _ => return self.error("unknown escape"),
                },
                Some(c) => out.push(c),
            }
        }
    }

    /// Integer or float literal, with optional leading minus.
    fn number(&mut self) -> PResult<Lit> {
        let start = self.pos;
        let at = self.here();
        self.eat("-");
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return self.error("expected a number");
        }
        self.take_while(|c| c.is_ascii_digit());
        let float = self.peek() == Some('.') && self.peek2().is_some_and(|c| c.is_ascii_digit());
        if float {
            self.bump();
            self.take_while(|c| c.is_ascii_digit());
        }
        let text = &self.src[start..self.pos];
        let bad = || Diagnostic::new(DiagKind::SyntaxError, at, format!("bad number `{text}`"));
        if float {
            text.parse().map(Lit::Float).map_err(|_| bad())
        } else {
            text.parse().map(Lit::Int).map_err(|_| bad())
        }
    }
}

/// Parses a whole style sheet. Stops at the first syntax error.
pub fn parse_stylesheet(text: &str) -> Result<Vec<ExternalRule>, Vec<Diagnostic>> {
    let mut cur = Cursor::new(text);
    let mut rules = Vec::new();
    let mut diags = Vec::new();
    cur.skip_ws();
    while !cur.at_end() {
        match rule(&mut cur) {
            Ok(r) => {
                diags.extend(unbound_style_names(&r));
                rules.push(r);
            }
            Err(d) => return Err(vec![d]),
        }
        cur.skip_ws();
    }
    if diags.is_empty() {
        Ok(rules)
    } else {
        Err(diags)
    }
}

fn unbound_style_names(r: &ExternalRule) -> Vec<Diagnostic> {
    let bound: HashSet<String> = r.selectors.iter().flat_map(|s| s.binders()).collect();
    let mut out = Vec::new();
    for b in &r.blocks {
        for n in &b.names {
            if !bound.contains(n) {
                out.push(Diagnostic::new(
                    DiagKind::UnboundStyleName,
                    b.pos,
                    format!("style block names `{n}`, which no selector binds"),
                ));
            }
        }
    }
    out
}

fn rule(cur: &mut Cursor<'_>) -> PResult<ExternalRule> {
    let pos = cur.here();
    let mut selectors = vec![selector(cur)?];
    loop {
        cur.skip_ws();
        if cur.eat(",") {
            cur.skip_ws();
            selectors.push(selector(cur)?);
        } else {
            break;
        }
    }
    let guard = if cur.peek_word() == "if" {
        cur.eat("if");
        cur.skip_ws();
        let e = expr(cur, 0)?;
        cur.skip_ws();
        Some(e)
    } else {
        None
    };
    cur.expect("->")?;
    cur.skip_ws();
    let mut blocks = vec![styled(cur)?];
    loop {
        let m = cur.mark();
        cur.skip_ws();
        if starts_styled(cur) {
            blocks.push(styled(cur)?);
        } else {
            cur.reset(m);
            break;
        }
    }
    Ok(ExternalRule { selectors, guard, blocks, pos })
}

/// Lookahead: `IDENT+ "{"`.
fn starts_styled(cur: &mut Cursor<'_>) -> bool {
    let m = cur.mark();
    let mut any = false;
    while cur.ident().is_some() {
        any = true;
        cur.skip_ws();
    }
    let ok = any && cur.peek() == Some('{');
    cur.reset(m);
    ok
}

fn styled(cur: &mut Cursor<'_>) -> PResult<StyledBlock> {
    let pos = cur.here();
    let mut names = Vec::new();
    while let Some(n) = cur.ident() {
        names.push(n.to_string());
        cur.skip_ws();
    }
    if names.is_empty() {
        return cur.error("expected a variable name before `{`");
    }
    cur.expect("{")?;
    let mut attrs = Vec::new();
    loop {
        cur.skip_ws();
        if cur.eat("}") {
            break;
        }
        if cur.at_end() {
            return cur.error("unterminated style block");
        }
        attrs.push(declaration(cur)?);
    }
    Ok(StyledBlock { names, attrs, pos })
}

fn declaration(cur: &mut Cursor<'_>) -> PResult<StyleAttr> {
    let name = cur.take_while(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-');
    if name.is_empty() {
        return cur.error("expected an attribute name");
    }
    let name = name.to_string();
    cur.skip_ws();
    cur.expect(":")?;
    let at = cur.here();
    // raw value up to `;` or `}`, respecting quotes and parentheses
    let start = cur.pos;
    let mut depth = 0usize;
    let mut quote: Option<char> = None;
    while let Some(c) = cur.peek() {
        match (quote, c) {
            (Some(q), c) if c == q => quote = None,
            (Some(_), '\n') => return cur.error("unterminated string in value"),
            (Some(_), _) => {}
            (None, '"' | '\'') => quote = Some(c),
            (None, '(') => depth += 1,
            (None, ')') => depth = depth.saturating_sub(1),
            (None, ';' | '}') if depth == 0 => break,
            _ => {}
        }
        cur.bump();
    }
    let raw = cur.src[start..cur.pos].trim();
    cur.eat(";");
    let (value, precedence) = split_precedence(raw);
    if value.is_empty() {
        return Err(Diagnostic::new(DiagKind::SyntaxError, at, format!("empty value for `{name}`")));
    }
    Ok(StyleAttr::new(name, value, precedence))
}

/// `value ! 3` → ("value", 3).
fn split_precedence(raw: &str) -> (String, i64) {
    if let Some(i) = raw.rfind('!') {
        if let Ok(p) = raw[i + 1..].trim().parse::<i64>() {
            return (raw[..i].trim_end().to_string(), p);
        }
    }
    (raw.to_string(), 0)
}

fn selector(cur: &mut Cursor<'_>) -> PResult<PathSelector> {
    let head = node_selector(cur)?;
    let mut tail = Vec::new();
    loop {
        let m = cur.mark();
        let had_ws = cur.skip_ws();
        let comb = match cur.peek() {
            Some('>') => Some(Combinator::Child),
            Some('~') => Some(Combinator::SubsequentSibling),
            Some('+') => Some(Combinator::NextSibling),
            _ => None,
        };
        if let Some(c) = comb {
            cur.bump();
            cur.skip_ws();
            tail.push((c, node_selector(cur)?));
            continue;
        }
        let ends = cur.at_end() || cur.starts_with("->") || cur.starts_with(",") || cur.peek_word() == "if";
        if had_ws && !ends {
            tail.push((Combinator::Descendant, node_selector(cur)?));
            continue;
        }
        cur.reset(m);
        return Ok(PathSelector { head, tail });
    }
}

fn classes(cur: &mut Cursor<'_>) -> PResult<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    while cur.peek() == Some('.') {
        cur.bump();
        let c = cur.take_while(is_class_char);
        if c.is_empty() {
            return cur.error("expected a class name after `.`");
        }
        out.insert(c.to_string());
    }
    Ok(out)
}

fn node_selector(cur: &mut Cursor<'_>) -> PResult<NodeSelector> {
    if cur.peek() == Some('.') {
        let classes = classes(cur)?;
        return Ok(NodeSelector { basic: Basic::Class { name: None }, classes });
    }
    let m = cur.mark();
    if let Some(name) = cur.ident() {
        if cur.peek() == Some('@') && cur.rest()[1..].starts_with('.') {
            cur.bump();
            let classes = classes(cur)?;
            return Ok(NodeSelector { basic: Basic::Class { name: Some(name.to_string()) }, classes });
        }
        cur.reset(m);
    }
    let p = pattern(cur, false)?;
    if matches!(p, Pattern::LitInt(_) | Pattern::LitStr(_)) {
        return Err(Diagnostic::new(DiagKind::SyntaxError, Pos { line: m.line, col: m.col }, "a literal cannot be a node selector"));
    }
    let classes = classes(cur)?;
    Ok(NodeSelector { basic: Basic::Pattern(p), classes })
}

/// `in_args` allows whitespace between a constructor and its argument list.
fn pattern(cur: &mut Cursor<'_>, in_args: bool) -> PResult<Pattern> {
    let pos = cur.here();
    match cur.peek() {
        Some('"') => return Ok(Pattern::LitStr(cur.string_lit()?)),
        Some(c) if c.is_ascii_digit() || (c == '-' && cur.peek2().is_some_and(|d| d.is_ascii_digit())) => {
            return match cur.number()? {
                Lit::Int(i) => Ok(Pattern::LitInt(i)),
                _ => Err(Diagnostic::new(DiagKind::SyntaxError, pos, "float literals are not patterns")),
            };
        }
        Some('(') => return ctor(cur, None, in_args),
        Some(c) if c.is_ascii_uppercase() => return ctor(cur, None, in_args),
        _ => {}
    }
    let Some(name) = cur.ident() else {
        return cur.error("expected a pattern");
    };
    match name {
        "_" => Ok(Pattern::Wildcard),
        "xxx" => Ok(Pattern::KeepOut),
        _ if cur.eat("@") => ctor(cur, Some(name.to_string()), in_args),
        _ if cur.peek() == Some(':') && cur.peek2() != Some(':') => {
            cur.bump();
            let Some(dt) = cur.type_id() else {
                return cur.error("expected a datatype name after `:`");
            };
            Ok(Pattern::Var { name: name.to_string(), datatype: Some(dt.to_string()), pos })
        }
        _ => Ok(Pattern::Var { name: name.to_string(), datatype: None, pos }),
    }
}

fn ctor(cur: &mut Cursor<'_>, binder: Option<String>, in_args: bool) -> PResult<Pattern> {
    let pos = cur.here();
    if cur.eat("(") {
        cur.skip_ws();
        let inner = ctor(cur, None, true)?;
        cur.skip_ws();
        cur.expect(")")?;
        return match (binder, inner) {
            (Some(b), Pattern::Ctor { binder: None, ctor, args, pos }) => {
                Ok(Pattern::Ctor { binder: Some(b), ctor, args, pos })
            }
            (Some(_), _) => Err(Diagnostic::new(DiagKind::SyntaxError, pos, "a parenthesised pattern may not bind twice")),
            (None, p) => Ok(p),
        };
    }
    let Some(name) = cur.type_id() else {
        return cur.error("expected a constructor name");
    };
    let m = cur.mark();
    if in_args {
        cur.skip_ws();
    }
    let args = if cur.eat("(") {
        let mut args = Vec::new();
        loop {
            cur.skip_ws();
            args.push(pattern(cur, true)?);
            cur.skip_ws();
            if cur.eat(",") {
                continue;
            }
            cur.expect(")")?;
            break;
        }
        Some(args)
    } else {
        cur.reset(m);
        None
    };
    Ok(Pattern::Ctor { binder, ctor: name.to_string(), args, pos })
}

/// Parses a standalone guard expression.
pub fn parse_expr(src: &str) -> Result<Expr, Diagnostic> {
    let mut cur = Cursor::new(src);
    cur.skip_ws();
    let e = expr(&mut cur, 0)?;
    cur.skip_ws();
    if !cur.at_end() {
        return cur.error("trailing input after expression");
    }
    Ok(e)
}

fn peek_binop(cur: &Cursor<'_>) -> Option<(BinOp, usize)> {
    const OPS: [(&str, BinOp); 12] = [
        ("&&", BinOp::And),
        ("||", BinOp::Or),
        ("==", BinOp::Eq),
        ("/=", BinOp::Ne),
        ("<=", BinOp::Le),
        (">=", BinOp::Ge),
        ("<", BinOp::Lt),
        (">", BinOp::Gt),
        ("+", BinOp::Add),
        ("*", BinOp::Mul),
        ("/", BinOp::Div),
        ("-", BinOp::Sub),
    ];
    if cur.starts_with("->") || cur.starts_with("--") {
        return None;
    }
    if cur.peek_word() == "mod" {
        return Some((BinOp::Mod, 3));
    }
    OPS.iter().find(|(s, _)| cur.starts_with(s)).map(|(s, op)| (*op, s.len()))
}

/// Precedence climbing; every binary level is left-associative.
fn expr(cur: &mut Cursor<'_>, min_level: u8) -> PResult<Expr> {
    let mut lhs = unary(cur)?;
    loop {
        let m = cur.mark();
        cur.skip_ws();
        if cur.peek_word() == "in" && min_level < 3 {
            cur.eat("in");
            cur.skip_ws();
            lhs = Expr::In(Box::new(lhs), lit_list(cur)?);
            continue;
        }
        match peek_binop(cur) {
            Some((op, len)) if op.level() > min_level => {
                for _ in 0..len {
                    cur.bump();
                }
                cur.skip_ws();
                let rhs = expr(cur, op.level())?;
                lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
            }
            _ => {
                cur.reset(m);
                return Ok(lhs);
            }
        }
    }
}

fn lit_list(cur: &mut Cursor<'_>) -> PResult<Vec<Lit>> {
    cur.expect("[")?;
    let mut out = Vec::new();
    cur.skip_ws();
    if cur.eat("]") {
        return Ok(out);
    }
    loop {
        cur.skip_ws();
        out.push(literal(cur)?);
        cur.skip_ws();
        if cur.eat(",") {
            continue;
        }
        cur.expect("]")?;
        return Ok(out);
    }
}

fn literal(cur: &mut Cursor<'_>) -> PResult<Lit> {
    match cur.peek() {
        Some('"') => Ok(Lit::Str(cur.string_lit()?)),
        Some(c) if c.is_ascii_digit() || c == '-' => cur.number(),
        _ => match cur.peek_word() {
            "true" => {
                cur.eat("true");
                Ok(Lit::Bool(true))
            }
            "false" => {
                cur.eat("false");
                Ok(Lit::Bool(false))
            }
            _ => cur.error("expected a literal"),
        },
    }
}

fn unary(cur: &mut Cursor<'_>) -> PResult<Expr> {
    if cur.peek_word() == "not" {
        cur.eat("not");
        cur.skip_ws();
        return Ok(Expr::Unary(UnOp::Not, Box::new(unary(cur)?)));
    }
    if cur.peek() == Some('-') && !cur.starts_with("--") {
        if cur.peek2().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(Expr::Lit(cur.number()?));
        }
        cur.bump();
        cur.skip_ws();
        return Ok(Expr::Unary(UnOp::Neg, Box::new(unary(cur)?)));
    }
    atom(cur)
}

fn atom(cur: &mut Cursor<'_>) -> PResult<Expr> {
    let pos = cur.here();
    match cur.peek() {
        Some('(') => {
            cur.bump();
            cur.skip_ws();
            let e = expr(cur, 0)?;
            cur.skip_ws();
            cur.expect(")")?;
            Ok(e)
        }
        Some('"') => Ok(Expr::Lit(Lit::Str(cur.string_lit()?))),
        Some(c) if c.is_ascii_digit() => Ok(Expr::Lit(cur.number()?)),
        Some(c) if is_ident_start(c) => {
            let name = cur.ident().unwrap_or_default();
            match name {
                "true" => return Ok(Expr::Lit(Lit::Bool(true))),
                "false" => return Ok(Expr::Lit(Lit::Bool(false))),
                _ => {}
            }
            if cur.peek() == Some('(') {
                let Some(f) = Func::from_name(name) else {
                    return Err(Diagnostic::new(DiagKind::SyntaxError, pos, format!("unknown function `{name}`")));
                };
                cur.bump();
                let mut args = Vec::new();
                cur.skip_ws();
                if !cur.eat(")") {
                    loop {
                        cur.skip_ws();
                        args.push(expr(cur, 0)?);
                        cur.skip_ws();
                        if cur.eat(",") {
                            continue;
                        }
                        cur.expect(")")?;
                        break;
                    }
                }
                let (lo, hi) = match f {
                    Func::Ann => (2, 3),
                    _ => (1, 1),
                };
                if args.len() < lo || args.len() > hi {
                    return Err(Diagnostic::new(
                        DiagKind::SyntaxError,
                        pos,
                        format!("`{name}` takes {lo}{} argument(s)", if hi > lo { format!("-{hi}") } else { String::new() }),
                    ));
                }
                return Ok(Expr::Call(f, args, pos));
            }
            Ok(Expr::Var(name.to_string(), pos))
        }
        _ => cur.error("expected an expression"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(src: &str) -> ExternalRule {
        let mut rules = parse_stylesheet(src).unwrap_or_else(|d| panic!("{d:?}"));
        assert_eq!(rules.len(), 1);
        rules.remove(0)
    }

    #[test]
    fn blocks_rule() {
        let r = one("x@EBinop(_,_,_) -> x { border-width: 2; padding: 2; margin: 2; border-radius: 3; }");
        let sel = &r.selectors[0];
        assert!(sel.tail.is_empty());
        match &sel.head.basic {
            Basic::Pattern(Pattern::Ctor { binder, ctor, args, .. }) => {
                assert_eq!(binder.as_deref(), Some("x"));
                assert_eq!(ctor, "EBinop");
                assert_eq!(args.as_ref().unwrap().len(), 3);
            }
            other => panic!("{other:?}"),
        }
        let attrs: Vec<_> = r.blocks[0].attrs.iter().map(|a| (a.name.as_str(), a.value.as_str())).collect();
        assert_eq!(
            attrs,
            [("border-width", "2"), ("padding", "2"), ("margin", "2"), ("border-radius", "3")]
        );
    }

    #[test]
    fn teal_rule() {
        let r = one("y@EInt(_) -> y { color: teal; }");
        assert_eq!(r.named_styles()["y"].iter().next().unwrap().value, "teal");
    }

    #[test]
    fn missing_arrow_is_syntax_error() {
        let d = parse_stylesheet("x { color: red; }").unwrap_err();
        assert_eq!(d[0].kind, DiagKind::SyntaxError);
        assert_eq!((d[0].line, d[0].col), (1, 3));
    }

    #[test]
    fn combinators_and_classes() {
        let r = one("(Signature(_, xxx, xxx)) x@Ident(_) > .op.kw ~ y + _ -> x y { color: red; }");
        let sel = &r.selectors[0];
        let combs: Vec<_> = sel.tail.iter().map(|(c, _)| *c).collect();
        assert_eq!(
            combs,
            [Combinator::Descendant, Combinator::Child, Combinator::SubsequentSibling, Combinator::NextSibling]
        );
        assert_eq!(sel.tail[1].1.classes.len(), 2);
        assert_eq!(sel.binders(), ["x", "y"]);
    }

    #[test]
    fn class_binding_and_precedence() {
        let r = one("x@.tally-marks -> x { font-weight: 900 ! 2; font-family: \"Noto Serif\", serif }");
        assert_eq!(r.selectors[0].head.basic, Basic::Class { name: Some("x".into()) });
        let attrs = &r.blocks[0].attrs;
        assert_eq!(attrs[0], StyleAttr::new("font-weight", "900", 2));
        assert_eq!(attrs[1].value, "\"Noto Serif\", serif");
    }

    #[test]
    fn guard_and_lists() {
        let src = "Left(n) if n in [0, 1, 4, 9, 16] -> n { border-width: 3; }\n\
                   a@EInt(_), a@EString(_) -> a { color: teal; }";
        let rules = parse_stylesheet(src).unwrap();
        assert_eq!(rules.len(), 2);
        assert!(matches!(rules[0].guard, Some(Expr::In(..))));
        assert_eq!(rules[1].selectors.len(), 2);
    }

    #[test]
    fn multiple_blocks_and_comments() {
        let src = "-- pairs\npair@(Pair(x, y)) -> pair { color: a; } -- trailing\n x { color: b; }\n y { color: c; }\n\nz:Exp -> z { color: d; }";
        let rules = parse_stylesheet(src).unwrap();
        assert_eq!(rules.len(), 2);
        assert_eq!(rules[0].blocks.len(), 3);
        match &rules[1].selectors[0].head.basic {
            Basic::Pattern(Pattern::Var { datatype, .. }) => assert_eq!(datatype.as_deref(), Some("Exp")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbound_style_name() {
        let d = parse_stylesheet("x@EInt(_) -> y { color: red; }").unwrap_err();
        assert_eq!(d[0].kind, DiagKind::UnboundStyleName);
    }

    #[test]
    fn expression_precedence() {
        let e = parse_expr("a + b * c == 7 && not d || e").unwrap();
        let Expr::Binary(BinOp::Or, lhs, _) = e else { panic!() };
        let Expr::Binary(BinOp::And, cmp, _) = *lhs else { panic!() };
        let Expr::Binary(BinOp::Eq, sum, _) = *cmp else { panic!() };
        let Expr::Binary(BinOp::Add, _, prod) = *sum else { panic!() };
        assert!(matches!(*prod, Expr::Binary(BinOp::Mul, ..)));
        // left associativity
        let e = parse_expr("10 - 3 - 2").unwrap();
        let Expr::Binary(BinOp::Sub, l, _) = e else { panic!() };
        assert!(matches!(*l, Expr::Binary(BinOp::Sub, ..)));
    }
}
