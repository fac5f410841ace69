use std::fmt;

use super::CodecError;
use crate::pattern::{render, symbol_bits, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunCount {
    Times(u64),
    /// Repetition with no stated end, e.g. `(INFORMATION)*`. Display only.
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub block: Vec<Symbol>,
    pub count: RunCount,
}

impl Run {
    pub fn times(block: Vec<Symbol>, count: u64) -> Self {
        Run { block, count: RunCount::Times(count) }
    }

    pub fn unbounded(block: Vec<Symbol>) -> Self {
        Run { block, count: RunCount::Unbounded }
    }
}

impl fmt::Display for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.count {
            RunCount::Times(n) => write!(f, "({})×{}", render(&self.block), n),
            RunCount::Unbounded => write!(f, "({})*", render(&self.block)),
        }
    }
}

/// Number of immediate copies of `seq[at..at + len]` starting at `at`.
fn copies(seq: &[Symbol], at: usize, len: usize) -> usize {
    let block = &seq[at..at + len];
    let mut n = 1;
    while at + (n + 1) * len <= seq.len() && &seq[at + n * len..at + (n + 1) * len] == block {
        n += 1;
    }
    n
}

/// Run-length codes `seq`.
///
/// At each position every block length up to half the remaining input is
/// tried; the block whose repetitions cover the most symbols wins, and among
/// equal coverage the shorter block (greater count) wins. Symbols that start
/// no repetition are gathered into a single literal run of count 1.
pub fn rle_encode(seq: &[Symbol]) -> Vec<Run> {
    let mut runs = Vec::new();
    let mut literal: Vec<Symbol> = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        let remaining = seq.len() - i;
        let mut best: Option<(usize, usize)> = None;
        for len in 1..=remaining / 2 {
            let n = copies(seq, i, len);
            if n < 2 {
                continue;
            }
            let better = match best {
                None => true,
                Some((bl, bn)) => len * n > bl * bn,
            };
            if better {
                best = Some((len, n));
            }
        }
        match best {
            Some((len, n)) => {
                if !literal.is_empty() {
                    runs.push(Run::times(std::mem::take(&mut literal), 1));
                }
                runs.push(Run::times(seq[i..i + len].to_vec(), n as u64));
                i += len * n;
            }
            None => {
                literal.push(seq[i].clone());
                i += 1;
            }
        }
    }
    if !literal.is_empty() {
        runs.push(Run::times(literal, 1));
    }
    runs
}

pub fn rle_decode(runs: &[Run]) -> Result<Vec<Symbol>, CodecError> {
    let mut out = Vec::new();
    for run in runs {
        let RunCount::Times(n) = run.count else {
            return Err(CodecError::NotDecodable);
        };
        for _ in 0..n {
            out.extend_from_slice(&run.block);
        }
    }
    Ok(out)
}

/// Length in bits of the Elias gamma code for `n >= 1`.
pub fn elias_gamma_bits(n: u64) -> u64 {
    assert!(n >= 1, "gamma code is defined for n >= 1");
    2 * (63 - n.leading_zeros() as u64) + 1
}

/// Cost of a run list: raw cost of each block plus a gamma-coded count.
pub fn rle_cost(runs: &[Run], alphabet_size: usize) -> Result<f64, CodecError> {
    let per_symbol = symbol_bits(alphabet_size)?;
    let mut bits = 0.0;
    for run in runs {
        let RunCount::Times(n) = run.count else {
            return Err(CodecError::NotDecodable);
        };
        bits += run.block.len() as f64 * per_symbol + elias_gamma_bits(n) as f64;
    }
    Ok(bits)
}
