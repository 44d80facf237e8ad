//! Constructor trees, provenance paths and constructor metadata.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Scalar annotation attached to a [`Value`] by an analysis phase.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Bool(a), Scalar::Bool(b)) => a == b,
            (Scalar::Int(a), Scalar::Int(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a.to_bits() == b.to_bits(),
            (Scalar::Str(a), Scalar::Str(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Bool(b) => write!(f, "{b}"),
            Scalar::Int(i) => write!(f, "{i}"),
            Scalar::Float(x) => write!(f, "{x}"),
            Scalar::Str(s) => write!(f, "{s:?}"),
        }
    }
}

/// A value of some algebraic datatype: a constructor applied to children.
///
/// Leaves that stand for source tokens or literals carry their text in
/// `token` and never have children.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Value {
    ctor: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    children: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    token: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    ann: BTreeMap<String, Scalar>,
}

impl Value {
    /// Builds an inner node.
    ///
    /// # Panics
    /// Panics if `ctor` is empty.
    pub fn node(ctor: impl Into<String>, children: Vec<Value>) -> Self {
        let ctor = ctor.into();
        assert!(!ctor.is_empty(), "constructor names are non-empty");
        Value { ctor, children, token: None, ann: BTreeMap::new() }
    }

    /// Builds a token leaf.
    pub fn leaf(ctor: impl Into<String>, token: impl Into<String>) -> Self {
        let ctor = ctor.into();
        assert!(!ctor.is_empty(), "constructor names are non-empty");
        Value { ctor, children: Vec::new(), token: Some(token.into()), ann: BTreeMap::new() }
    }

    /// Integer literal leaf (`Int` constructor).
    pub fn int(n: i64) -> Self {
        Value::leaf("Int", n.to_string())
    }

    pub fn ctor(&self) -> &str {
        &self.ctor
    }

    pub fn children(&self) -> &[Value] {
        &self.children
    }

    pub fn token(&self) -> Option<&str> {
        self.token.as_deref()
    }

    pub fn annotations(&self) -> &BTreeMap<String, Scalar> {
        &self.ann
    }

    pub fn annotation(&self, key: &str) -> Option<&Scalar> {
        self.ann.get(key)
    }

    pub fn with_annotation(mut self, key: impl Into<String>, value: Scalar) -> Self {
        self.annotate(key, value);
        self
    }

    pub fn annotate(&mut self, key: impl Into<String>, value: Scalar) {
        self.ann.insert(key.into(), value);
    }

    /// 1-based child access.
    pub fn child(&self, index: usize) -> Option<&Value> {
        index.checked_sub(1).and_then(|i| self.children.get(i))
    }

    /// Mutable access to the subvalue at `path`.
    pub fn get_mut(&mut self, path: &Path) -> Option<&mut Value> {
        let mut cur = self;
        for &i in path.indices() {
            cur = i.checked_sub(1).and_then(|i| cur.children.get_mut(i))?;
        }
        Some(cur)
    }

    /// Number of constructor nodes in this value.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Value::size).sum::<usize>()
    }

    /// Pre-order walk yielding every subvalue with its path.
    pub fn walk(&self) -> Vec<(Path, &Value)> {
        let mut out = Vec::new();
        fn go<'a>(v: &'a Value, path: Path, out: &mut Vec<(Path, &'a Value)>) {
            out.push((path.clone(), v));
            for (i, c) in v.children.iter().enumerate() {
                go(c, path.extend(i + 1), out);
            }
        }
        go(self, Path::root(), &mut out);
        out
    }
}

/// Location of a subvalue: 1-based child indices from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    /// # Panics
    /// Panics if any index is 0.
    pub fn new(indices: Vec<usize>) -> Self {
        assert!(indices.iter().all(|&i| i >= 1), "path indices are 1-based");
        Path(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends one child index.
    pub fn extend(&self, index: usize) -> Path {
        assert!(index >= 1, "path indices are 1-based");
        let mut v = self.0.clone();
        v.push(index);
        Path(v)
    }

    /// True iff `self` is a (possibly equal) prefix of `other`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Follows the path from `root`; `None` if an index is out of range.
    pub fn apply<'a>(&self, root: &'a Value) -> Option<&'a Value> {
        self.0.iter().try_fold(root, |v, &i| v.child(i))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, idx) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{idx}")?;
        }
        write!(f, "]")
    }
}

impl From<Vec<usize>> for Path {
    fn from(v: Vec<usize>) -> Self {
        Path::new(v)
    }
}

pub fn path_apply<'a>(path: &Path, root: &'a Value) -> Option<&'a Value> {
    path.apply(root)
}

pub fn path_extend(path: &Path, index: usize) -> Path {
    path.extend(index)
}

pub fn is_prefix(a: &Path, b: &Path) -> bool {
    a.is_prefix_of(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arity {
    Fixed(usize),
    /// List-like constructors take any number of children.
    Variadic,
}

impl Arity {
    pub fn accepts(self, n: usize) -> bool {
        match self {
            Arity::Fixed(k) => k == n,
            Arity::Variadic => true,
        }
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arity::Fixed(n) => write!(f, "{n}"),
            Arity::Variadic => write!(f, "any"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegistryError {
    #[error("constructor `{ctor}` already registered under datatype `{existing}`")]
    DuplicateConstructor { ctor: String, existing: String },
}

/// Datatype name → constructors with their arities.
#[derive(Debug, Clone, Default)]
pub struct ConstructorRegistry {
    entries: BTreeMap<String, BTreeMap<String, Arity>>,
    owner: BTreeMap<String, String>,
}

impl ConstructorRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers the primitive leaf datatypes shared by every frontend.
    pub fn with_primitives() -> Self {
        let mut r = Self::new();
        r.add("Int", "Int", Arity::Fixed(0)).unwrap();
        r.add("String", "Str", Arity::Fixed(0)).unwrap();
        r
    }

    pub fn add(&mut self, datatype: &str, ctor: &str, arity: Arity) -> Result<(), RegistryError> {
        if let Some(existing) = self.owner.get(ctor) {
            if existing != datatype {
                return Err(RegistryError::DuplicateConstructor {
                    ctor: ctor.to_string(),
                    existing: existing.clone(),
                });
            }
        }
        self.owner.insert(ctor.to_string(), datatype.to_string());
        self.entries.entry(datatype.to_string()).or_default().insert(ctor.to_string(), arity);
        Ok(())
    }

    /// Constructors of `datatype`; empty if the datatype is unknown.
    pub fn lookup(&self, datatype: &str) -> BTreeSet<String> {
        self.entries
            .get(datatype)
            .map(|m| m.keys().cloned().collect())
            .unwrap_or_default()
    }

    pub fn has_datatype(&self, datatype: &str) -> bool {
        self.entries.contains_key(datatype)
    }

    pub fn arity(&self, ctor: &str) -> Option<Arity> {
        let dt = self.owner.get(ctor)?;
        self.entries.get(dt)?.get(ctor).copied()
    }

    pub fn datatype_of(&self, ctor: &str) -> Option<&str> {
        self.owner.get(ctor).map(String::as_str)
    }

    /// Whether `ctor` belongs to `datatype`.
    pub fn contains(&self, datatype: &str, ctor: &str) -> bool {
        self.owner.get(ctor).is_some_and(|d| d == datatype)
    }
}

pub fn registry_lookup(registry: &ConstructorRegistry, datatype: &str) -> BTreeSet<String> {
    registry.lookup(datatype)
}
