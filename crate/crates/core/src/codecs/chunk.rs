use std::collections::{BTreeMap, HashMap};

use super::CodecError;
use crate::pattern::{code_bits, symbol_bits, Pattern, PatternKind, PatternStore, Symbol};

/// One dictionary entry: a unified chunk and the code that stands for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chunk {
    pub code: String,
    pub pattern: Pattern,
    pub count: u64,
}

impl Chunk {
    pub fn symbols(&self) -> &[Symbol] {
        self.pattern.symbols()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChunkDictionary {
    entries: Vec<Chunk>,
}

impl ChunkDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a dictionary from `(code, symbols, count)` triples, checking
    /// that codes are unique, chunks have at least two symbols and counts are
    /// at least two.
    pub fn from_entries(entries: impl IntoIterator<Item = (String, Vec<Symbol>, u64)>) -> Result<Self, CodecError> {
        let mut dict = ChunkDictionary::new();
        for (code, syms, count) in entries {
            dict.push(code, syms, count)?;
        }
        Ok(dict)
    }

    pub fn push(&mut self, code: impl Into<String>, syms: Vec<Symbol>, count: u64) -> Result<(), CodecError> {
        let code = code.into();
        if self.get(&code).is_some() {
            return Err(CodecError::InvalidParameter(format!("duplicate code {code:?}")));
        }
        if syms.len() < 2 {
            return Err(CodecError::InvalidParameter(format!("chunk {code:?} is shorter than 2 symbols")));
        }
        if count < 2 {
            return Err(CodecError::InvalidParameter(format!("chunk {code:?} occurs fewer than 2 times")));
        }
        let pattern = Pattern::new(code.clone(), syms, count, PatternKind::Old)?;
        self.entries.push(Chunk { code, pattern, count });
        Ok(())
    }

    pub fn get(&self, code: &str) -> Option<&Chunk> {
        self.entries.iter().find(|c| c.code == code)
    }

    pub fn entries(&self) -> &[Chunk] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The dictionary as a pattern store whose frequencies are the chunk
    /// counts; code costs are taken from it.
    pub fn to_store(&self) -> PatternStore {
        let mut store = PatternStore::new();
        for c in &self.entries {
            store.insert(c.pattern.clone()).expect("codes are unique");
        }
        store
    }

    fn total_count(&self) -> u64 {
        self.entries.iter().map(|c| c.count).sum()
    }

    /// Bits to reference `code` under the ideal code for chunk counts.
    pub fn code_cost(&self, code: &str) -> Result<f64, CodecError> {
        let chunk = self.get(code).ok_or_else(|| CodecError::UnknownCode(code.to_owned()))?;
        Ok(code_bits(chunk.count, self.total_count()))
    }
}

/// Result of basic (lossy) unification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unified {
    pub pattern: Vec<Symbol>,
    pub count: u64,
}

/// Start positions of non-overlapping occurrences of `needle`, scanning left
/// to right.
fn non_overlapping(haystack: &[Symbol], needle: &[Symbol]) -> Vec<usize> {
    let mut hits = Vec::new();
    if needle.is_empty() || needle.len() > haystack.len() {
        return hits;
    }
    let mut i = 0;
    while i + needle.len() <= haystack.len() {
        if &haystack[i..i + needle.len()] == needle {
            hits.push(i);
            i += needle.len();
        } else {
            i += 1;
        }
    }
    hits
}

/// Merges every non-overlapping occurrence of `chunk` into a single unified
/// pattern. Where the occurrences were is discarded.
pub fn unify_basic(corpus: &[Symbol], chunk: &[Symbol]) -> Result<(Unified, Vec<Symbol>), CodecError> {
    let hits = non_overlapping(corpus, chunk);
    if hits.is_empty() {
        return Err(CodecError::NotPresent);
    }
    let mut residue = Vec::with_capacity(corpus.len() - hits.len() * chunk.len());
    let mut cursor = 0;
    for &h in &hits {
        residue.extend_from_slice(&corpus[cursor..h]);
        cursor = h + chunk.len();
    }
    residue.extend_from_slice(&corpus[cursor..]);
    Ok((Unified { pattern: chunk.to_vec(), count: hits.len() as u64 }, residue))
}

/// Length of the longest substring that occurs twice without overlapping.
fn longest_repeat(corpus: &[Symbol]) -> usize {
    let n = corpus.len();
    // ext[j] holds the common extension of suffixes (i + 1, j + 1) while row i
    // is being filled.
    let mut next = vec![0usize; n + 1];
    let mut cur = vec![0usize; n + 1];
    let mut best = 0;
    for i in (0..n).rev() {
        cur[n] = 0;
        for j in (i + 1..n).rev() {
            cur[j] = if corpus[i] == corpus[j] { next[j + 1] + 1 } else { 0 };
            best = best.max(cur[j].min(j - i));
        }
        std::mem::swap(&mut cur, &mut next);
    }
    best
}

/// Finds repeated contiguous chunks, longest first.
///
/// At each length `L` (from the longest repeat down to `min_len`), every
/// distinct `L`-gram lying wholly in not-yet-claimed positions is counted
/// with a non-overlapping left-to-right scan. It is kept when the count
/// reaches `min_count` and exceeds the count expected under a zero-order
/// model, `(n - L + 1) * prod p(sym)`. Kept occurrences claim their
/// positions, so later (shorter) chunks cannot reuse them. Codes are
/// `w1, w2, ...` in discovery order. A single pass is made; the residue is
/// not rescanned for chunks built from codes.
pub fn discover_chunks(corpus: &[Symbol], min_len: usize, min_count: usize) -> Result<ChunkDictionary, CodecError> {
    if min_len < 2 {
        return Err(CodecError::InvalidParameter("min_len must be at least 2".into()));
    }
    if min_count < 2 {
        return Err(CodecError::InvalidParameter("min_count must be at least 2".into()));
    }
    let n = corpus.len();
    let mut dict = ChunkDictionary::new();
    if n < 2 * min_len {
        return Ok(dict);
    }

    let mut freq: HashMap<&Symbol, usize> = HashMap::new();
    for s in corpus {
        *freq.entry(s).or_default() += 1;
    }
    let prob = |s: &Symbol| freq[s] as f64 / n as f64;

    let mut claimed = vec![false; n];
    let max_len = longest_repeat(corpus);

    for len in (min_len..=max_len).rev() {
        // distinct grams over free windows, in first-occurrence order
        let mut order: Vec<&[Symbol]> = Vec::new();
        let mut starts: HashMap<&[Symbol], Vec<usize>> = HashMap::new();
        for i in 0..=n - len {
            if claimed[i..i + len].iter().any(|&c| c) {
                continue;
            }
            let gram = &corpus[i..i + len];
            starts
                .entry(gram)
                .or_insert_with(|| {
                    order.push(gram);
                    Vec::new()
                })
                .push(i);
        }

        for gram in order {
            let positions = &starts[gram];
            if positions.len() < min_count {
                continue;
            }
            let mut taken = Vec::new();
            let mut next_free = 0;
            for &p in positions {
                if p >= next_free && !claimed[p..p + len].iter().any(|&c| c) {
                    taken.push(p);
                    next_free = p + len;
                }
            }
            let observed = taken.len();
            if observed < min_count {
                continue;
            }
            let expected = (n - len + 1) as f64 * gram.iter().map(prob).product::<f64>();
            if observed as f64 <= expected {
                continue;
            }
            for &p in &taken {
                claimed[p..p + len].iter_mut().for_each(|c| *c = true);
            }
            let code = format!("w{}", dict.len() + 1);
            dict.push(code, gram.to_vec(), observed as u64)?;
        }
    }
    Ok(dict)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamToken {
    CodeRef(String),
    Literal(Symbol),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedStream {
    pub dictionary: ChunkDictionary,
    pub tokens: Vec<StreamToken>,
}

impl EncodedStream {
    pub fn code_refs(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().filter_map(|t| match t {
            StreamToken::CodeRef(c) => Some(c.as_str()),
            StreamToken::Literal(_) => None,
        })
    }

    pub fn literal_count(&self) -> usize {
        self.tokens.iter().filter(|t| matches!(t, StreamToken::Literal(_))).count()
    }

    /// Σ code costs over code references plus raw cost of every literal.
    /// The dictionary itself is not charged; see [`Self::dictionary_bits`].
    pub fn encoded_bits(&self, alphabet_size: usize) -> Result<f64, CodecError> {
        let per_symbol = symbol_bits(alphabet_size)?;
        let mut bits = self.literal_count() as f64 * per_symbol;
        for code in self.code_refs() {
            bits += self.dictionary.code_cost(code)?;
        }
        Ok(bits)
    }

    /// Raw cost of storing each chunk once.
    pub fn dictionary_bits(&self, alphabet_size: usize) -> Result<f64, CodecError> {
        let per_symbol = symbol_bits(alphabet_size)?;
        Ok(self.dictionary.entries().iter().map(|c| c.symbols().len() as f64 * per_symbol).sum())
    }
}

/// Replaces chunk occurrences with code references, longest match first at
/// each position; ties go to the earlier dictionary entry.
pub fn chunk_encode(corpus: &[Symbol], dict: &ChunkDictionary) -> EncodedStream {
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < corpus.len() {
        let mut best: Option<&Chunk> = None;
        for chunk in dict.entries() {
            let syms = chunk.symbols();
            let fits = corpus[i..].starts_with(syms);
            if fits && best.is_none_or(|b| syms.len() > b.symbols().len()) {
                best = Some(chunk);
            }
        }
        match best {
            Some(chunk) => {
                tokens.push(StreamToken::CodeRef(chunk.code.clone()));
                i += chunk.symbols().len();
            }
            None => {
                tokens.push(StreamToken::Literal(corpus[i].clone()));
                i += 1;
            }
        }
    }
    EncodedStream { dictionary: dict.clone(), tokens }
}

pub fn chunk_decode(stream: &EncodedStream) -> Result<Vec<Symbol>, CodecError> {
    let lookup: BTreeMap<&str, &Chunk> = stream.dictionary.entries().iter().map(|c| (c.code.as_str(), c)).collect();
    let mut out = Vec::new();
    for token in &stream.tokens {
        match token {
            StreamToken::Literal(s) => out.push(s.clone()),
            StreamToken::CodeRef(code) => {
                let chunk = lookup.get(code.as_str()).ok_or_else(|| CodecError::UnknownCode(code.clone()))?;
                out.extend_from_slice(chunk.symbols());
            }
        }
    }
    Ok(out)
}
