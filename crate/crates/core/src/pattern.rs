//! Symbols, patterns, pattern stores and the bit-cost model shared by every
//! other module.
//!
//! Costs are ideal (fractional) Shannon code lengths. The "raw" cost of a
//! sequence is the fixed-length baseline of `log2(A)` bits per symbol for an
//! alphabet of size `A`, with a floor of one bit per symbol when `A = 1`.
//! A stored pattern of frequency `f` in a store of total frequency `F` is
//! referenced at a cost of `-log2(f / F)` bits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("symbol text is empty")]
    EmptySymbol,
    #[error("symbol {0:?} contains whitespace")]
    WhitespaceInSymbol(String),
    #[error("pattern {0:?} has no symbols")]
    EmptyPattern(String),
    #[error("pattern {0:?} has frequency 0")]
    ZeroFrequency(String),
    #[error("alphabet size must be at least 1")]
    DegenerateAlphabet,
    #[error("unknown pattern {0:?}")]
    UnknownPattern(String),
    #[error("duplicate pattern id {0:?}")]
    DuplicateId(String),
    #[error("pattern {0:?} is a New pattern and cannot be stored")]
    NotOld(String),
    #[error("grammar line {line}: {message}")]
    Grammar { line: usize, message: String },
}

/// An atomic symbol: a non-empty token without whitespace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Symbol(String);

impl Symbol {
    pub fn new(text: impl Into<String>) -> Result<Self, PatternError> {
        let text = text.into();
        if text.is_empty() {
            return Err(PatternError::EmptySymbol);
        }
        if text.chars().any(char::is_whitespace) {
            return Err(PatternError::WhitespaceInSymbol(text));
        }
        Ok(Symbol(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Symbol {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl FromStr for Symbol {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Symbol::new(s)
    }
}

impl TryFrom<String> for Symbol {
    type Error = PatternError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Symbol::new(value)
    }
}

impl From<Symbol> for String {
    fn from(s: Symbol) -> Self {
        s.0
    }
}

/// How [`tokenize`] splits text into symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TokenizeMode {
    /// One symbol per non-whitespace character.
    Chars,
    /// One symbol per whitespace-separated token.
    #[default]
    Whitespace,
}

pub fn tokenize(text: &str, mode: TokenizeMode) -> Vec<Symbol> {
    match mode {
        TokenizeMode::Whitespace => text.split_whitespace().map(|t| Symbol(t.to_owned())).collect(),
        TokenizeMode::Chars => text.chars().filter(|c| !c.is_whitespace()).map(|c| Symbol(c.to_string())).collect(),
    }
}

/// Joins symbols with single spaces. Whitespace tokenization inverts this.
pub fn render(symbols: &[Symbol]) -> String {
    let mut out = String::new();
    for (i, s) in symbols.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(s.as_str());
    }
    out
}

/// Parses whitespace-separated symbols, mostly for tests and fixtures.
pub fn symbols(text: &str) -> Vec<Symbol> {
    tokenize(text, TokenizeMode::Whitespace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    /// Incoming information to be encoded.
    New,
    /// Stored knowledge that New information is encoded against.
    Old,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    id: String,
    symbols: Vec<Symbol>,
    frequency: u64,
    kind: PatternKind,
}

impl Pattern {
    pub fn new(
        id: impl Into<String>,
        symbols: Vec<Symbol>,
        frequency: u64,
        kind: PatternKind,
    ) -> Result<Self, PatternError> {
        let id = id.into();
        if symbols.is_empty() {
            return Err(PatternError::EmptyPattern(id));
        }
        if frequency == 0 {
            return Err(PatternError::ZeroFrequency(id));
        }
        Ok(Pattern { id, symbols, frequency, kind })
    }

    /// A stored pattern with frequency 1.
    pub fn old(id: impl Into<String>, symbols: Vec<Symbol>) -> Result<Self, PatternError> {
        Pattern::new(id, symbols, 1, PatternKind::Old)
    }

    /// An incoming pattern with frequency 1.
    pub fn new_input(id: impl Into<String>, symbols: Vec<Symbol>) -> Result<Self, PatternError> {
        Pattern::new(id, symbols, 1, PatternKind::New)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn frequency(&self) -> u64 {
        self.frequency
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn raw_cost(&self, alphabet_size: usize) -> Result<f64, PatternError> {
        raw_cost(&self.symbols, alphabet_size)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, render(&self.symbols))
    }
}

/// Bits per symbol under the fixed-length baseline.
pub fn symbol_bits(alphabet_size: usize) -> Result<f64, PatternError> {
    match alphabet_size {
        0 => Err(PatternError::DegenerateAlphabet),
        1 => Ok(1.0),
        a => Ok((a as f64).log2()),
    }
}

/// Ideal code length for an item of frequency `frequency` out of `total`.
pub fn code_bits(frequency: u64, total: u64) -> f64 {
    debug_assert!(frequency >= 1 && frequency <= total);
    if frequency == total {
        return 0.0;
    }
    -(frequency as f64 / total as f64).log2()
}

pub fn raw_cost(symbols: &[Symbol], alphabet_size: usize) -> Result<f64, PatternError> {
    Ok(symbols.len() as f64 * symbol_bits(alphabet_size)?)
}

/// Number of distinct symbol texts in a sequence.
pub fn alphabet_size(symbols: &[Symbol]) -> usize {
    symbols.iter().collect::<BTreeSet<_>>().len()
}

/// A dictionary of Old patterns keyed by id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PatternStore {
    patterns: BTreeMap<String, Pattern>,
    alphabet: BTreeSet<Symbol>,
    total_frequency: u64,
}

impl PatternStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_patterns(patterns: impl IntoIterator<Item = Pattern>) -> Result<Self, PatternError> {
        let mut store = PatternStore::new();
        for p in patterns {
            store.insert(p)?;
        }
        Ok(store)
    }

    pub fn insert(&mut self, pattern: Pattern) -> Result<(), PatternError> {
        if pattern.kind != PatternKind::Old {
            return Err(PatternError::NotOld(pattern.id));
        }
        if self.patterns.contains_key(&pattern.id) {
            return Err(PatternError::DuplicateId(pattern.id));
        }
        self.alphabet.extend(pattern.symbols.iter().cloned());
        self.total_frequency += pattern.frequency;
        self.patterns.insert(pattern.id.clone(), pattern);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&Pattern> {
        self.patterns.get(id)
    }

    /// Patterns in id order.
    pub fn iter(&self) -> impl Iterator<Item = &Pattern> {
        self.patterns.values()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn total_frequency(&self) -> u64 {
        self.total_frequency
    }

    pub fn code_cost(&self, id: &str) -> Result<f64, PatternError> {
        let p = self.patterns.get(id).ok_or_else(|| PatternError::UnknownPattern(id.to_owned()))?;
        Ok(code_bits(p.frequency, self.total_frequency))
    }

    /// Parses the grammar file format:
    ///
    /// ```text
    /// # comment
    /// PATTERN <id> <freq>: <sym> <sym> ...
    /// PATTERN <id>: <sym> ...          (frequency defaults to 1)
    /// ```
    pub fn parse_grammar(text: &str) -> Result<Self, PatternError> {
        let mut store = PatternStore::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: &str| PatternError::Grammar { line: line_no, message: message.to_owned() };
            let rest = line
                .strip_prefix("PATTERN")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| bad("expected `PATTERN <id> <freq>: <symbols>`"))?;
            let (head, body) = rest.split_once(':').ok_or_else(|| bad("missing `:`"))?;
            let mut head_parts = head.split_whitespace();
            let id = head_parts.next().ok_or_else(|| bad("missing pattern id"))?;
            let frequency = match head_parts.next() {
                None => 1,
                Some(f) => f.parse::<u64>().map_err(|_| bad("frequency is not an integer"))?,
            };
            if head_parts.next().is_some() {
                return Err(bad("unexpected tokens before `:`"));
            }
            let syms = symbols(body);
            let pattern = Pattern::new(id, syms, frequency, PatternKind::Old)
                .map_err(|e| PatternError::Grammar { line: line_no, message: e.to_string() })?;
            store.insert(pattern).map_err(|e| PatternError::Grammar { line: line_no, message: e.to_string() })?;
        }
        Ok(store)
    }

    pub fn to_grammar(&self) -> String {
        let mut out = String::new();
        for p in self.patterns.values() {
            out.push_str(&format!("PATTERN {} {}: {}\n", p.id, p.frequency, render(&p.symbols)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenize_modes() {
        assert_eq!(tokenize("a b c", TokenizeMode::Whitespace), symbols("a b c"));
        let info = tokenize("INFORMATION", TokenizeMode::Chars);
        assert_eq!(info.len(), 11);
        assert_eq!(info[0].as_str(), "I");
        assert_eq!(info[10].as_str(), "N");
        assert_eq!(tokenize("t w o k i t t e n s p l a y", TokenizeMode::Whitespace).len(), 14);
        assert!(tokenize("", TokenizeMode::Chars).is_empty());
        assert!(tokenize("   \n", TokenizeMode::Whitespace).is_empty());
    }

    #[test]
    fn symbol_validation() {
        assert_eq!(Symbol::new(""), Err(PatternError::EmptySymbol));
        assert!(matches!(Symbol::new("a b"), Err(PatternError::WhitespaceInSymbol(_))));
        assert_eq!(Symbol::new("#Nr").unwrap(), Symbol::new("#Nr").unwrap());
    }

    #[test]
    fn raw_cost_examples() {
        let dna = Pattern::old("d", symbols("G G A C T")).unwrap();
        assert_eq!(dna.raw_cost(4).unwrap(), 10.0);
        let bin = Pattern::old("b", symbols("0 1 1 0 1 0 0 1")).unwrap();
        assert_eq!(bin.raw_cost(2).unwrap(), 8.0);
        let info = Pattern::old("i", tokenize("INFORMATION", TokenizeMode::Chars)).unwrap();
        // 11 * log2(27) = 52.3037...
        assert!((info.raw_cost(27).unwrap() - 52.303_762_523_798_15).abs() < 1e-9);
        assert_eq!(dna.raw_cost(0), Err(PatternError::DegenerateAlphabet));
        assert_eq!(dna.raw_cost(1).unwrap(), 5.0);
    }

    #[test]
    fn code_cost_examples() {
        let sole = PatternStore::from_patterns([Pattern::old("p", symbols("a")).unwrap()]).unwrap();
        assert_eq!(sole.code_cost("p").unwrap(), 0.0);

        let two = PatternStore::from_patterns([
            Pattern::old("p", symbols("a")).unwrap(),
            Pattern::old("q", symbols("b")).unwrap(),
        ])
        .unwrap();
        assert_eq!(two.code_cost("p").unwrap(), 1.0);
        assert_eq!(two.code_cost("q").unwrap(), 1.0);

        let skew = PatternStore::from_patterns([
            Pattern::new("p", symbols("a"), 3, PatternKind::Old).unwrap(),
            Pattern::old("q", symbols("b")).unwrap(),
        ])
        .unwrap();
        // -log2(3/4) = 0.41503749927884376
        assert!((skew.code_cost("p").unwrap() - 0.415_037_499_278_843_8).abs() < 1e-12);
        assert_eq!(skew.code_cost("zz"), Err(PatternError::UnknownPattern("zz".into())));
    }

    #[test]
    fn store_invariants() {
        let store = PatternStore::from_patterns([
            Pattern::new("p", symbols("a b"), 2, PatternKind::Old).unwrap(),
            Pattern::old("q", symbols("b c")).unwrap(),
        ])
        .unwrap();
        assert_eq!(store.total_frequency(), 3);
        let alpha: Vec<_> = store.alphabet().iter().map(Symbol::as_str).collect();
        assert_eq!(alpha, ["a", "b", "c"]);

        let mut s = store.clone();
        assert_eq!(s.insert(Pattern::old("p", symbols("x")).unwrap()), Err(PatternError::DuplicateId("p".into())));
        assert_eq!(s.insert(Pattern::new_input("n", symbols("x")).unwrap()), Err(PatternError::NotOld("n".into())));
    }

    #[test]
    fn pattern_validation() {
        assert_eq!(Pattern::old("e", vec![]), Err(PatternError::EmptyPattern("e".into())));
        assert_eq!(Pattern::new("z", symbols("a"), 0, PatternKind::Old), Err(PatternError::ZeroFrequency("z".into())));
    }

    #[test]
    fn grammar_round_trip_and_errors() {
        let text = "# words\nPATTERN w1 3: t w o\nPATTERN w2: k i t t e n\n\n";
        let store = PatternStore::parse_grammar(text).unwrap();
        assert_eq!(store.len(), 2);
        assert_eq!(store.get("w1").unwrap().frequency(), 3);
        assert_eq!(store.get("w2").unwrap().frequency(), 1);
        assert_eq!(PatternStore::parse_grammar(&store.to_grammar()).unwrap(), store);

        let dup = "PATTERN a: x\nPATTERN a: y\n";
        assert!(matches!(PatternStore::parse_grammar(dup), Err(PatternError::Grammar { line: 2, .. })));
        assert!(matches!(PatternStore::parse_grammar("RULE a: x"), Err(PatternError::Grammar { line: 1, .. })));
        assert!(matches!(PatternStore::parse_grammar("PATTERN a x y"), Err(PatternError::Grammar { line: 1, .. })));
        assert!(matches!(PatternStore::parse_grammar("PATTERN a 2:"), Err(PatternError::Grammar { line: 1, .. })));
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn sym_strategy() -> impl Strategy<Value = Symbol> {
            "[a-zA-Z0-9#;]{1,4}".prop_map(|s| Symbol::new(s).unwrap())
        }

        proptest! {
            #[test]
            fn render_then_tokenize_is_identity(syms in prop::collection::vec(sym_strategy(), 0..30)) {
                prop_assert_eq!(tokenize(&render(&syms), TokenizeMode::Whitespace), syms);
            }

            #[test]
            fn raw_cost_is_additive(
                p in prop::collection::vec(sym_strategy(), 0..20),
                q in prop::collection::vec(sym_strategy(), 0..20),
                a in 1usize..64,
            ) {
                let mut pq = p.clone();
                pq.extend(q.iter().cloned());
                let lhs = raw_cost(&pq, a).unwrap();
                let rhs = raw_cost(&p, a).unwrap() + raw_cost(&q, a).unwrap();
                prop_assert!((lhs - rhs).abs() < 1e-9);
            }

            #[test]
            fn code_cost_decreases_with_frequency(total in 2u64..1000, f in 1u64..999) {
                prop_assume!(f < total);
                prop_assert!(code_bits(f + 1, total) < code_bits(f, total));
                prop_assert!(code_bits(f, total) > 0.0);
            }
        }
    }
}
