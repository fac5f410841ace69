//! Class-inclusion hierarchies (with cross-classification) and part-whole
//! hierarchies, with description-length accounting.
//!
//! Attributes are atomic presence symbols; there is no overriding. A class
//! inherits the union of its ancestors' attributes, so an attribute reached
//! along two parent links is counted once.
//!
//! Description length counts symbols at the fixed-length baseline:
//!
//! * flat: one line per leaf class, `name attr attr ...` with the fully
//!   resolved attribute set;
//! * hierarchical: one line per class, `name own-attrs... parent-names...`,
//!   i.e. every parent link costs one symbol.
//!
//! The one-symbol link cost is a convention of this crate.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::pattern::{symbol_bits, PatternError, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("duplicate class {0:?}")]
    DuplicateClass(String),
    #[error("class {from:?} refers to undefined class {to:?}")]
    UnresolvedReference { from: String, to: String },
    #[error("cycle through class {0:?} in {1} links")]
    Cycle(String, &'static str),
    #[error("alphabet of size {given} cannot cover the {needed} distinct names and attributes")]
    AlphabetTooSmall { needed: usize, given: usize },
    #[error("hierarchy line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassNode {
    pub name: String,
    pub own_attributes: BTreeSet<Symbol>,
    pub parents: BTreeSet<String>,
    pub parts: Vec<String>,
}

impl ClassNode {
    pub fn new(name: impl Into<String>) -> Self {
        ClassNode { name: name.into(), own_attributes: BTreeSet::new(), parents: BTreeSet::new(), parts: Vec::new() }
    }

    pub fn with_attrs<'a>(mut self, attrs: impl IntoIterator<Item = &'a str>) -> Self {
        self.own_attributes.extend(attrs.into_iter().map(|a| Symbol::new(a).expect("valid attribute")));
        self
    }

    pub fn with_parents<'a>(mut self, parents: impl IntoIterator<Item = &'a str>) -> Self {
        self.parents.extend(parents.into_iter().map(str::to_owned));
        self
    }

    pub fn with_parts<'a>(mut self, parts: impl IntoIterator<Item = &'a str>) -> Self {
        self.parts.extend(parts.into_iter().map(str::to_owned));
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescriptionForm {
    Flat,
    Hierarchical,
}

impl fmt::Display for DescriptionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DescriptionForm::Flat => "flat",
            DescriptionForm::Hierarchical => "hierarchical",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Hierarchy {
    nodes: BTreeMap<String, ClassNode>,
}

impl Hierarchy {
    pub fn new(nodes: impl IntoIterator<Item = ClassNode>) -> Result<Self, HierarchyError> {
        let mut map = BTreeMap::new();
        for node in nodes {
            if Symbol::new(node.name.as_str()).is_err() {
                return Err(HierarchyError::Parse { line: 0, message: format!("bad class name {:?}", node.name) });
            }
            if map.contains_key(&node.name) {
                return Err(HierarchyError::DuplicateClass(node.name));
            }
            map.insert(node.name.clone(), node);
        }
        for node in map.values() {
            for to in node.parents.iter().chain(&node.parts) {
                if !map.contains_key(to) {
                    return Err(HierarchyError::UnresolvedReference { from: node.name.clone(), to: to.clone() });
                }
            }
        }
        let h = Hierarchy { nodes: map };
        h.check_acyclic(|n| n.parents.iter(), "parent")?;
        h.check_acyclic(|n| n.parts.iter(), "part")?;
        Ok(h)
    }

    fn check_acyclic<'a, I>(
        &'a self,
        edges: impl Fn(&'a ClassNode) -> I,
        kind: &'static str,
    ) -> Result<(), HierarchyError>
    where
        I: Iterator<Item = &'a String>,
    {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state: BTreeMap<&str, u8> = BTreeMap::new();
        for start in self.nodes.keys() {
            if state.get(start.as_str()).copied().unwrap_or(0) != 0 {
                continue;
            }
            let mut stack: Vec<(&str, Vec<&str>)> =
                vec![(start, edges(&self.nodes[start]).map(String::as_str).collect())];
            state.insert(start, 1);
            while let Some((name, pending)) = stack.last_mut() {
                match pending.pop() {
                    Some(next) => match state.get(next).copied().unwrap_or(0) {
                        0 => {
                            state.insert(next, 1);
                            let succ = edges(&self.nodes[next]).map(String::as_str).collect();
                            stack.push((next, succ));
                        }
                        1 => return Err(HierarchyError::Cycle(next.to_owned(), kind)),
                        _ => {}
                    },
                    None => {
                        state.insert(name, 2);
                        stack.pop();
                    }
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&ClassNode, HierarchyError> {
        self.nodes.get(name).ok_or_else(|| HierarchyError::UnknownClass(name.to_owned()))
    }

    pub fn nodes(&self) -> impl Iterator<Item = &ClassNode> {
        self.nodes.values()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// All proper ancestors reachable through parent links.
    pub fn ancestors(&self, name: &str) -> Result<BTreeSet<&str>, HierarchyError> {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<&str> = self.get(name)?.parents.iter().map(String::as_str).collect();
        while let Some(p) = queue.pop_front() {
            if seen.insert(p) {
                queue.extend(self.nodes[p].parents.iter().map(String::as_str));
            }
        }
        Ok(seen)
    }

    /// Own attributes united with every ancestor's.
    pub fn resolve_attributes(&self, name: &str) -> Result<BTreeSet<Symbol>, HierarchyError> {
        let mut attrs = self.get(name)?.own_attributes.clone();
        for a in self.ancestors(name)? {
            attrs.extend(self.nodes[a].own_attributes.iter().cloned());
        }
        Ok(attrs)
    }

    /// Classes that are nobody's parent.
    pub fn leaves(&self) -> Vec<&ClassNode> {
        let parents: BTreeSet<&str> = self.nodes.values().flat_map(|n| n.parents.iter().map(String::as_str)).collect();
        self.nodes.values().filter(|n| !parents.contains(n.name.as_str())).collect()
    }

    /// Distinct class names and attribute symbols.
    pub fn alphabet(&self) -> BTreeSet<&str> {
        let mut set: BTreeSet<&str> = self.nodes.keys().map(String::as_str).collect();
        for n in self.nodes.values() {
            set.extend(n.own_attributes.iter().map(Symbol::as_str));
        }
        set
    }

    /// Number of symbols written out in the given form.
    pub fn symbol_count(&self, form: DescriptionForm) -> Result<usize, HierarchyError> {
        match form {
            DescriptionForm::Flat => {
                self.leaves().into_iter().map(|leaf| Ok(1 + self.resolve_attributes(&leaf.name)?.len())).sum()
            }
            DescriptionForm::Hierarchical => {
                Ok(self.nodes.values().map(|n| 1 + n.own_attributes.len() + n.parents.len()).sum())
            }
        }
    }

    pub fn description_length(&self, form: DescriptionForm, alphabet_size: usize) -> Result<f64, HierarchyError> {
        let needed = self.alphabet().len();
        if alphabet_size < needed {
            return Err(HierarchyError::AlphabetTooSmall { needed, given: alphabet_size });
        }
        Ok(self.symbol_count(form)? as f64 * symbol_bits(alphabet_size)?)
    }

    /// Enclosing wholes of `part`, innermost first. When a class is a part
    /// of several wholes the lexicographically first one is followed.
    pub fn part_context(&self, part: &str) -> Result<Vec<String>, HierarchyError> {
        self.get(part)?;
        let mut chain = Vec::new();
        let mut current = part;
        while let Some(whole) = self.nodes.values().find(|n| n.parts.iter().any(|p| p == current)) {
            chain.push(whole.name.clone());
            current = &whole.name;
        }
        Ok(chain)
    }

    /// Parses the hierarchy file format, one class per line:
    ///
    /// ```text
    /// CLASS <name> : attrs=<a,b,...> parents=<p,...> parts=<q,...>
    /// ```
    ///
    /// Lists may be empty (`attrs=`) or omitted; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self, HierarchyError> {
        let mut nodes = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| HierarchyError::Parse { line: line_no, message };
            let rest = line
                .strip_prefix("CLASS")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| bad("expected `CLASS <name> : ...`".into()))?;
            let (name, fields) = rest.split_once(':').ok_or_else(|| bad("missing `:`".into()))?;
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(bad(format!("bad class name {name:?}")));
            }
            let mut node = ClassNode::new(name);
            for field in fields.split_whitespace() {
                let (key, value) =
                    field.split_once('=').ok_or_else(|| bad(format!("expected key=value, got {field:?}")))?;
                let items = value.split(',').filter(|s| !s.is_empty());
                match key {
                    "attrs" => {
                        for a in items {
                            node.own_attributes.insert(Symbol::new(a).map_err(|e| bad(e.to_string()))?);
                        }
                    }
                    "parents" => node.parents.extend(items.map(str::to_owned)),
                    "parts" => node.parts.extend(items.map(str::to_owned)),
                    other => return Err(bad(format!("unknown field {other:?}"))),
                }
            }
            nodes.push(node);
        }
        Hierarchy::new(nodes)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for n in self.nodes.values() {
            let attrs: Vec<&str> = n.own_attributes.iter().map(Symbol::as_str).collect();
            let parents: Vec<&str> = n.parents.iter().map(String::as_str).collect();
            out.push_str(&format!(
                "CLASS {} : attrs={} parents={} parts={}\n",
                n.name,
                attrs.join(","),
                parents.join(","),
                n.parts.join(",")
            ));
        }
        out
    }
}
