//! Lexer and parser for Tiny, a small Haskell-like language.
//!
//! Declarations start in column 1; any line that starts with whitespace
//! continues the declaration above it.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::value::{Scalar, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assoc {
    Left,
    Right,
}

#[derive(Debug, Clone)]
pub struct FixityTable {
    table: HashMap<String, (i32, Assoc)>,
}

impl Default for FixityTable {
    fn default() -> Self {
        use Assoc::*;
        let rows: [(&str, i32, Assoc); 19] = [
            (".", 9, Right),
            ("*", 7, Left),
            ("/", 7, Left),
            ("+", 6, Left),
            ("-", 6, Left),
            (":", 5, Right),
            ("++", 5, Right),
            ("==", 4, Left),
            ("/=", 4, Left),
            ("<", 4, Left),
            ("<=", 4, Left),
            (">", 4, Left),
            (">=", 4, Left),
            ("&&", 3, Right),
            ("||", 2, Right),
            (">>=", 1, Left),
            (">>", 1, Left),
            (">>>", 1, Right),
            ("$", 0, Right),
        ];
        FixityTable { table: rows.iter().map(|&(op, p, a)| (op.to_string(), (p, a))).collect() }
    }
}

impl FixityTable {
    /// Unknown operators bind like function composition: 9, left.
    pub fn get(&self, op: &str) -> (i32, Assoc) {
        self.table.get(op).copied().unwrap_or((9, Assoc::Left))
    }

    pub fn set(&mut self, op: &str, prec: i32, assoc: Assoc) {
        self.table.insert(op.to_string(), (prec, assoc));
    }
}

/// Half-open byte range into the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// A concrete syntax node: constructor, children, optional token, span.
#[derive(Debug, Clone, PartialEq)]
pub struct Syn {
    pub ctor: &'static str,
    pub children: Vec<Syn>,
    pub token: Option<String>,
    pub span: Span,
    pub ann: BTreeMap<String, Scalar>,
}

impl Syn {
    fn leaf(ctor: &'static str, token: String, span: Span) -> Syn {
        Syn { ctor, children: Vec::new(), token: Some(token), span, ann: BTreeMap::new() }
    }

    fn node(ctor: &'static str, children: Vec<Syn>) -> Syn {
        let span = Span {
            start: children.first().map_or(0, |c| c.span.start),
            end: children.last().map_or(0, |c| c.span.end),
        };
        Syn { ctor, children, token: None, span, ann: BTreeMap::new() }
    }

    fn spanning(mut self, start: usize, end: usize) -> Syn {
        self.span = Span { start, end };
        self
    }

    pub fn to_value(&self) -> Value {
        let mut v = match &self.token {
            Some(t) => Value::leaf(self.ctor, t.clone()),
            None => Value::node(self.ctor, self.children.iter().map(Syn::to_value).collect()),
        };
        for (k, s) in &self.ann {
            v.annotate(k.clone(), s.clone());
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TinyProgram {
    pub source: String,
    pub root: Syn,
}

impl TinyProgram {
    pub fn value(&self) -> Value {
        self.root.to_value()
    }

    /// 1-based (line, col) of a byte offset; columns count characters.
    pub fn position(&self, offset: usize) -> (usize, usize) {
        let before = &self.source[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        (line, col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Name,
    Int,
    Str,
    Op,
    Kw,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Comment,
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    /// Decoded text (string literals lose their quotes and escapes).
    text: String,
    span: Span,
    line: usize,
    col: usize,
}

const KEYWORDS: [&str; 5] = ["let", "in", "if", "then", "else"];

fn is_symbol(c: char) -> bool {
    "!#$%&*+./<=>?@\\^|-~:".contains(c)
}

fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut toks = Vec::new();
    let mut it = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&(start, c)) = it.peek() {
        let (tline, tcol) = (line, col);
        let mut take = |it: &mut std::iter::Peekable<std::str::CharIndices<'_>>| {
            let (_, c) = it.next().expect("peeked");
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        let err = |msg: &str| SyntaxError { line: tline, col: tcol, msg: msg.to_string() };
        let kind = if c.is_whitespace() {
            take(&mut it);
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            while it.peek().is_some_and(|&(_, c)| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                take(&mut it);
            }
            Kind::Name
        } else if c.is_ascii_digit() {
            while it.peek().is_some_and(|&(_, c)| c.is_ascii_digit()) {
                take(&mut it);
            }
            Kind::Int
        } else if c == '"' {
            take(&mut it);
            let mut text = String::new();
            loop {
                match it.peek().map(|&(_, c)| c) {
                    None | Some('\n') => return Err(err("unterminated string literal")),
                    Some('"') => {
                        take(&mut it);
                        break;
                    }
                    Some('\\') => {
                        take(&mut it);
                        match it.peek().map(|&(_, c)| c) {
                            Some('n') => text.push('\n'),
                            Some('t') => text.push('\t'),
                            Some(c @ ('"' | '\\')) => text.push(c),
                            _ => return Err(err("unknown escape in string literal")),
                        }
                        take(&mut it);
                    }
                    Some(_) => text.push(take(&mut it)),
                }
            }
            let end = it.peek().map_or(src.len(), |&(i, _)| i);
            toks.push(Token { kind: Kind::Str, text, span: Span { start, end }, line: tline, col: tcol });
            continue;
        } else if is_symbol(c) {
            while it.peek().is_some_and(|&(_, c)| is_symbol(c)) {
                take(&mut it);
            }
            let end = it.peek().map_or(src.len(), |&(i, _)| i);
            let run = &src[start..end];
            if run.len() >= 2 && run.chars().all(|c| c == '-') {
                while it.peek().is_some_and(|&(_, c)| c != '\n') {
                    take(&mut it);
                }
                Kind::Comment
            } else if run == "\\" {
                Kind::Kw
            } else {
                Kind::Op
            }
        } else {
            take(&mut it);
            match c {
                '(' => Kind::LParen,
                ')' => Kind::RParen,
                '[' => Kind::LBrack,
                ']' => Kind::RBrack,
                ',' => Kind::Comma,
                _ => return Err(err(&format!("unexpected character {c:?}"))),
            }
        };
        let end = it.peek().map_or(src.len(), |&(i, _)| i);
        let text = src[start..end].to_string();
        let kind = if kind == Kind::Name && KEYWORDS.contains(&text.as_str()) { Kind::Kw } else { kind };
        toks.push(Token { kind, text, span: Span { start, end }, line: tline, col: tcol });
    }
    Ok(toks)
}

pub fn parse_tiny(src: &str, fixity: &FixityTable) -> Result<TinyProgram, SyntaxError> {
    let toks = lex(src)?;
    let mut decls = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let t = &toks[i];
        if t.col != 1 {
            if t.kind == Kind::Comment {
                i += 1;
                continue;
            }
            return Err(SyntaxError { line: t.line, col: t.col, msg: "declarations must start in column 1".into() });
        }
        if t.kind == Kind::Comment {
            decls.push(Syn::leaf("Comment", t.text.clone(), t.span));
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < toks.len() && toks[j].col != 1 {
            j += 1;
        }
        let body: Vec<Token> = toks[i..j].iter().filter(|t| t.kind != Kind::Comment).cloned().collect();
        let mut p = Parser { toks: &body, pos: 0, fixity };
        decls.push(p.decl()?);
        if let Some(t) = p.peek() {
            return Err(p.error_at(t, "unexpected token"));
        }
        i = j;
    }
    let root = Syn::node("Program", decls).spanning(0, src.len());
    Ok(TinyProgram { source: src.to_string(), root })
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    fixity: &'a FixityTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn error_at(&self, t: &Token, msg: &str) -> SyntaxError {
        SyntaxError { line: t.line, col: t.col, msg: format!("{msg} `{}`", t.text) }
    }

    fn error_here(&self, msg: &str) -> SyntaxError {
        match self.peek() {
            Some(t) => self.error_at(t, msg),
            None => {
                let last = self.toks.last().expect("a declaration has tokens");
                SyntaxError { line: last.line, col: last.col, msg: format!("{msg} at end of declaration") }
            }
        }
    }

    fn is(&self, kind: Kind, text: Option<&str>) -> bool {
        self.peek().is_some_and(|t| t.kind == kind && text.is_none_or(|s| t.text == s))
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn expect(&mut self, kind: Kind, text: Option<&str>, what: &str) -> Result<Token, SyntaxError> {
        if self.is(kind, text) {
            Ok(self.bump())
        } else {
            Err(self.error_here(&format!("expected {what}, found")))
        }
    }

    fn leaf(&mut self, ctor: &'static str) -> Syn {
        let t = self.bump();
        Syn::leaf(ctor, t.text, t.span)
    }

    fn ident(&mut self) -> Result<Syn, SyntaxError> {
        if !self.is(Kind::Name, None) {
            return Err(self.error_here("expected a name, found"));
        }
        let name = self.leaf("Name");
        let cap = name.token.as_deref().and_then(|s| s.chars().next()).is_some_and(|c| c.is_ascii_uppercase());
        let mut id = Syn::node("Ident", vec![name]);
        id.ann.insert("capitalized".into(), Scalar::Bool(cap));
        Ok(id)
    }

    fn params(&mut self, at: usize) -> Result<Syn, SyntaxError> {
        let mut ps = Vec::new();
        while self.is(Kind::Name, None) {
            ps.push(self.ident()?);
        }
        let p = Syn::node("Params", ps);
        Ok(if p.children.is_empty() { p.spanning(at, at) } else { p })
    }

    fn decl(&mut self) -> Result<Syn, SyntaxError> {
        let name = self.ident()?;
        if self.is(Kind::Op, Some("::")) {
            let op = self.leaf("Op");
            let ty = self.ty()?;
            return Ok(Syn::node("Signature", vec![name, op, ty]));
        }
        let params = self.params(name.span.end)?;
        let eq = self.expect(Kind::Op, Some("="), "`=` or `::`")?;
        let body = self.exp()?;
        Ok(Syn::node("Equation", vec![name, params, Syn::leaf("Op", eq.text, eq.span), body]))
    }

    fn ty(&mut self) -> Result<Syn, SyntaxError> {
        let lhs = self.btype()?;
        if self.is(Kind::Op, Some("->")) {
            let op = self.leaf("Op");
            let rhs = self.ty()?;
            return Ok(Syn::node("TFun", vec![lhs, op, rhs]));
        }
        Ok(lhs)
    }

    fn btype(&mut self) -> Result<Syn, SyntaxError> {
        let mut t = self.atype()?;
        while self.is(Kind::Name, None) || self.is(Kind::LParen, None) || self.is(Kind::LBrack, None) {
            let a = self.atype()?;
            t = Syn::node("TApp", vec![t, a]);
        }
        Ok(t)
    }

    fn atype(&mut self) -> Result<Syn, SyntaxError> {
        match self.peek().map(|t| t.kind) {
            Some(Kind::Name) => {
                let id = self.ident()?;
                let cap = id.ann.get("capitalized") == Some(&Scalar::Bool(true));
                Ok(Syn::node(if cap { "TCon" } else { "TVar" }, vec![id]))
            }
            Some(Kind::LParen) => {
                let open = self.bump();
                if self.is(Kind::RParen, None) {
                    let close = self.bump();
                    return Ok(Syn::leaf("TUnit", "()".into(), Span { start: open.span.start, end: close.span.end }));
                }
                let inner = self.ty()?;
                let close = self.expect(Kind::RParen, None, "`)`")?;
                Ok(Syn::node("TParen", vec![inner]).spanning(open.span.start, close.span.end))
            }
            Some(Kind::LBrack) => {
                let open = self.bump();
                let inner = self.ty()?;
                let close = self.expect(Kind::RBrack, None, "`]`")?;
                Ok(Syn::node("TList", vec![inner]).spanning(open.span.start, close.span.end))
            }
            _ => Err(self.error_here("expected a type, found")),
        }
    }

    fn exp(&mut self) -> Result<Syn, SyntaxError> {
        if self.is(Kind::Kw, Some("\\")) {
            let kw = self.leaf("Kw");
            let params = self.params(kw.span.end)?;
            if params.children.is_empty() {
                return Err(self.error_here("expected a lambda parameter, found"));
            }
            let arrow = self.expect(Kind::Op, Some("->"), "`->`")?;
            let body = self.exp()?;
            return Ok(Syn::node("ELam", vec![kw, params, Syn::leaf("Op", arrow.text, arrow.span), body]));
        }
        if self.is(Kind::Kw, Some("let")) {
            let kw = self.leaf("Kw");
            let name = self.ident()?;
            let params = self.params(name.span.end)?;
            let eq = self.expect(Kind::Op, Some("="), "`=`")?;
            let bound = self.exp()?;
            if !self.is(Kind::Kw, Some("in")) {
                return Err(self.error_here("expected `in`, found"));
            }
            let kw_in = self.leaf("Kw");
            let body = self.exp()?;
            return Ok(Syn::node(
                "ELet",
                vec![kw, name, params, Syn::leaf("Op", eq.text, eq.span), bound, kw_in, body],
            ));
        }
        if self.is(Kind::Kw, Some("if")) {
            let mut parts = vec![self.leaf("Kw"), self.exp()?];
            for kw in ["then", "else"] {
                if !self.is(Kind::Kw, Some(kw)) {
                    return Err(self.error_here(&format!("expected `{kw}`, found")));
                }
                parts.push(self.leaf("Kw"));
                parts.push(self.exp()?);
            }
            return Ok(Syn::node("EIf", parts));
        }
        self.opexp()
    }

    fn is_binop(&self) -> bool {
        self.peek().is_some_and(|t| t.kind == Kind::Op && !matches!(t.text.as_str(), "=" | "->" | "::"))
    }

    fn opexp(&mut self) -> Result<Syn, SyntaxError> {
        let mut operands = vec![self.app()?];
        let mut ops = Vec::new();
        while self.is_binop() {
            ops.push(self.leaf("Op"));
            let starts_block = self.is(Kind::Kw, Some("\\")) || self.is(Kind::Kw, Some("let")) || self.is(Kind::Kw, Some("if"));
            operands.push(if starts_block { self.exp()? } else { self.app()? });
        }
        Ok(associate(operands, ops, self.fixity))
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek().map(|t| t.kind), Some(Kind::Name | Kind::Int | Kind::Str | Kind::LParen | Kind::LBrack))
    }

    fn app(&mut self) -> Result<Syn, SyntaxError> {
        let mut f = self.atom()?;
        while self.starts_atom() {
            let a = self.atom()?;
            f = Syn::node("EApp", vec![f, a]);
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Syn, SyntaxError> {
        match self.peek().map(|t| t.kind) {
            Some(Kind::Int) => Ok(Syn::node("EInt", vec![self.leaf("Int")])),
            Some(Kind::Str) => Ok(Syn::node("EString", vec![self.leaf("Str")])),
            Some(Kind::Name) => Ok(Syn::node("EVar", vec![self.ident()?])),
            Some(Kind::LParen) => {
                let open = self.bump();
                let inner = self.exp()?;
                let close = self.expect(Kind::RParen, None, "`)`")?;
                Ok(Syn::node("EParen", vec![inner]).spanning(open.span.start, close.span.end))
            }
            Some(Kind::LBrack) => {
                let open = self.bump();
                let mut items = Vec::new();
                if !self.is(Kind::RBrack, None) {
                    items.push(self.exp()?);
                    while self.is(Kind::Comma, None) {
                        self.bump();
                        items.push(self.exp()?);
                    }
                }
                let close = self.expect(Kind::RBrack, None, "`,` or `]`")?;
                Ok(Syn::node("EList", items).spanning(open.span.start, close.span.end))
            }
            None => Err(self.error_here("expected an expression")),
            _ => Err(self.error_here("expected an expression, found")),
        }
    }
}

/// Builds an operator tree from a flat chain `e0 op1 e1 ... opn en`.
pub fn associate(operands: Vec<Syn>, ops: Vec<Syn>, fixity: &FixityTable) -> Syn {
    let mut operands = operands.into_iter();
    let mut ops = ops.into_iter().peekable();
    let first = operands.next().expect("at least one operand");
    climb(first, 0, &mut operands, &mut ops, fixity)
}

fn climb(
    mut lhs: Syn,
    min: i32,
    operands: &mut impl Iterator<Item = Syn>,
    ops: &mut std::iter::Peekable<impl Iterator<Item = Syn>>,
    fx: &FixityTable,
) -> Syn {
    let prec = |op: &Syn| fx.get(op.token.as_deref().unwrap_or_default());
    while let Some(op) = ops.next_if(|op| prec(op).0 >= min) {
        let (p, _) = prec(&op);
        let mut rhs = operands.next().expect("one operand per operator");
        while let Some(next) = ops.peek() {
            let (q, qa) = prec(next);
            if q > p {
                rhs = climb(rhs, p + 1, operands, ops, fx);
            } else if q == p && qa == Assoc::Right {
                rhs = climb(rhs, p, operands, ops, fx);
            } else {
                break;
            }
        }
        lhs = Syn::node("EBinop", vec![lhs, op, rhs]);
    }
    lhs
}

/// Splits an operator tree back into its chain (stopping at parentheses).
pub fn flatten_chain(e: &Syn) -> (Vec<Syn>, Vec<Syn>) {
    if e.ctor != "EBinop" {
        return (vec![e.clone()], Vec::new());
    }
    let (mut xs, mut ops) = flatten_chain(&e.children[0]);
    let (ys, ops2) = flatten_chain(&e.children[2]);
    ops.push(e.children[1].clone());
    xs.extend(ys);
    ops.extend(ops2);
    (xs, ops)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(src: &str) -> TinyProgram {
        parse_tiny(src, &FixityTable::default()).unwrap_or_else(|e| panic!("{e}"))
    }

    fn shape(s: &Syn, src: &str) -> String {
        match s.ctor {
            "EBinop" => format!(
                "({} {} {})",
                shape(&s.children[0], src),
                s.children[1].token.as_deref().unwrap(),
                shape(&s.children[2], src)
            ),
            _ => src[s.span.start..s.span.end].to_string(),
        }
    }

    fn body(p: &TinyProgram) -> String {
        let eq = &p.root.children[0];
        shape(&eq.children[3], &p.source)
    }

    #[test]
    fn multiplication_binds_tighter() {
        assert_eq!(body(&parse("x = 1 + 2 * 3")), "(1 + (2 * 3))");
        assert_eq!(body(&parse("x = 1 - 2 - 3")), "((1 - 2) - 3)");
    }

    #[test]
    fn dollar_is_looser_than_compose() {
        assert_eq!(body(&parse("f = g . h $ k")), "((g . h) $ k)");
        assert_eq!(body(&parse("f = a . b . c")), "(a . (b . c))");
    }

    #[test]
    fn pipeline() {
        let src = "main =\n  getContents\n    >>= print\n      . length\n      . filter (not . isPrefixOf \"--\")\n      . lines\n";
        assert_eq!(
            body(&parse(src)),
            "(getContents >>= (print . (length . (filter (not . isPrefixOf \"--\") . lines))))"
        );
    }

    #[test]
    fn unbalanced_paren() {
        let e = parse_tiny("x = (1 + 2", &FixityTable::default()).unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_tiny("x = 1 + 2)", &FixityTable::default()).is_err());
    }

    #[test]
    fn signatures_and_comments() {
        let p = parse("-- header\nf :: Int -> [a] -> IO ()\nf n xs = n -- trailing\n");
        let ctors: Vec<_> = p.root.children.iter().map(|d| d.ctor).collect();
        assert_eq!(ctors, ["Comment", "Signature", "Equation"]);
        let sig = &p.root.children[1];
        assert_eq!(sig.children[2].ctor, "TFun");
        assert_eq!(p.position(sig.span.start), (2, 1));
    }

    #[test]
    fn lambda_let_if() {
        let p = parse("f = \\x -> let y = x + 1 in if y > 2 then [y, x] else []");
        let e = &p.root.children[0].children[3];
        assert_eq!(e.ctor, "ELam");
        assert_eq!(e.children[3].ctor, "ELet");
        assert_eq!(e.children[3].children[6].ctor, "EIf");
    }

    #[test]
    fn continuation_must_be_indented() {
        let e = parse_tiny("f =\n1", &FixityTable::default()).unwrap_err();
        assert!(e.msg.contains("end of declaration"), "{e}");
    }

    #[test]
    fn reassociation_is_idempotent() {
        let fx = FixityTable::default();
        let p = parse("x = a + b * c - d . e $ f >>= g ++ h : i");
        let e = p.root.children[0].children[3].clone();
        let (xs, ops) = flatten_chain(&e);
        assert_eq!(associate(xs, ops, &fx), e);
    }
}
