//! Multiple alignment of one New pattern against stored Old patterns.
//!
//! An [`Alignment`] is a sequence of columns. Row 0 is the New pattern and
//! rows `1..` are Old patterns in the order they were added. Each column
//! holds one occurrence of a single symbol from one or more rows; a column
//! with two or more rows is a hit. Every row's symbols appear left to right
//! in their original order, so rows never cross.
//!
//! Encoding cost of the New pattern under an alignment is the code cost of
//! every Old row plus the raw cost of each New symbol left outside a hit
//! column. Old-row symbols outside hit columns are free: they are content
//! the alignment predicts, not residue. This bookkeeping is this crate's own
//! reconstruction; it does not reproduce any published scores.

mod pairwise;
mod render;
mod search;

pub use pairwise::{align_pair, lcs_length};
pub use render::{column_dump, grid, parse_render};
pub use search::{
    alignment_probabilities, build_alignments, retrieve, AlignmentRanking, SearchParams, DEFAULT_BEAM,
    DEFAULT_MAX_OLD_ROWS,
};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::pattern::{symbol_bits, Pattern, PatternError, PatternStore, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlignmentError {
    #[error("cannot assign probabilities to an empty ranking")]
    EmptyRanking,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// One symbol occurrence: row index and position within that row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub symbol: Symbol,
    /// Sorted by row.
    pub cells: Vec<Cell>,
}

impl Column {
    pub fn is_hit(&self) -> bool {
        self.cells.len() >= 2
    }

    pub fn has_row(&self, row: usize) -> bool {
        self.cells.iter().any(|c| c.row == row)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    new_row: Pattern,
    old_rows: Vec<Pattern>,
    columns: Vec<Column>,
    encoding_cost: f64,
    compression_difference: f64,
}

impl Alignment {
    /// The New pattern alone, one column per symbol. Costs are zero until
    /// [`Alignment::score`] is called.
    pub fn literal(new_row: Pattern) -> Self {
        let columns = new_row
            .symbols()
            .iter()
            .enumerate()
            .map(|(pos, s)| Column { symbol: s.clone(), cells: vec![Cell { row: 0, pos }] })
            .collect();
        Alignment { new_row, old_rows: Vec::new(), columns, encoding_cost: 0.0, compression_difference: 0.0 }
    }

    pub fn new_row(&self) -> &Pattern {
        &self.new_row
    }

    pub fn old_rows(&self) -> &[Pattern] {
        &self.old_rows
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn encoding_cost(&self) -> f64 {
        self.encoding_cost
    }

    pub fn compression_difference(&self) -> f64 {
        self.compression_difference
    }

    pub fn row_count(&self) -> usize {
        1 + self.old_rows.len()
    }

    /// Pattern in row `row` (0 is New).
    pub fn row(&self, row: usize) -> &Pattern {
        if row == 0 {
            &self.new_row
        } else {
            &self.old_rows[row - 1]
        }
    }

    pub fn old_ids(&self) -> Vec<&str> {
        self.old_rows.iter().map(Pattern::id).collect()
    }

    pub fn contains_old(&self, id: &str) -> bool {
        self.old_rows.iter().any(|p| p.id() == id)
    }

    pub fn hit_count(&self) -> usize {
        self.columns.iter().filter(|c| c.is_hit()).count()
    }

    /// New-row positions that sit in hit columns.
    pub fn new_hits(&self) -> usize {
        self.columns.iter().filter(|c| c.is_hit() && c.has_row(0)).count()
    }

    /// True when every New symbol is in a hit column.
    pub fn covers_new(&self) -> bool {
        self.new_hits() == self.new_row.len()
    }

    /// Column index of every symbol of `row`, in row order.
    pub fn row_columns(&self, row: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.row(row).len()];
        for (k, col) in self.columns.iter().enumerate() {
            for cell in &col.cells {
                if cell.row == row {
                    out[cell.pos] = k;
                }
            }
        }
        out
    }

    /// Adds `old` as a new row, matching as many of its symbols as possible
    /// against columns that so far hold a single row. Returns `None` when
    /// the pattern is already present or nothing matches. The result is
    /// unscored.
    pub fn extend(&self, old: &Pattern) -> Option<Alignment> {
        if self.contains_old(old.id()) {
            return None;
        }
        let targets: Vec<(&Symbol, bool)> = self.columns.iter().map(|c| (&c.symbol, c.cells.len() == 1)).collect();
        let pairs = pairwise::lcs_pairs(old.symbols(), &targets);
        if pairs.is_empty() {
            return None;
        }
        Some(self.merge_row(old, &pairs))
    }

    /// Adds `old` as the next row. `pairs` are `(position in old, column)`
    /// matches, increasing in both; unmatched symbols get their own columns
    /// just before the next matched column (or after the last one).
    pub(crate) fn merge_row(&self, old: &Pattern, pairs: &[(usize, usize)]) -> Alignment {
        let row = self.row_count();
        let cell = |pos| Cell { row, pos };
        let single = |pos: usize| Column { symbol: old.symbols()[pos].clone(), cells: vec![cell(pos)] };

        let mut columns = Vec::with_capacity(self.columns.len() + old.len() - pairs.len());
        let mut next_col = 0;
        let mut next_sym = 0;
        for &(sym_pos, col) in pairs {
            columns.extend_from_slice(&self.columns[next_col..col]);
            columns.extend((next_sym..sym_pos).map(single));
            let mut merged = self.columns[col].clone();
            merged.cells.push(cell(sym_pos));
            columns.push(merged);
            next_col = col + 1;
            next_sym = sym_pos + 1;
        }
        columns.extend((next_sym..old.len()).map(single));
        columns.extend_from_slice(&self.columns[next_col..]);

        let mut old_rows = self.old_rows.clone();
        old_rows.push(old.clone());
        Alignment { new_row: self.new_row.clone(), old_rows, columns, encoding_cost: 0.0, compression_difference: 0.0 }
    }

    /// Fills in encoding cost and compression difference.
    pub fn score(&mut self, store: &PatternStore, alphabet_size: usize) -> Result<(), AlignmentError> {
        let cost = encoding_cost(self, store, alphabet_size)?;
        self.encoding_cost = cost;
        self.compression_difference = self.new_row.raw_cost(alphabet_size)? - cost;
        Ok(())
    }

    pub(crate) fn with_score(mut self, store: &PatternStore, alphabet_size: usize) -> Result<Self, AlignmentError> {
        self.score(store, alphabet_size)?;
        Ok(self)
    }

    /// Row-id-normalised hit columns, used to recognise the same alignment
    /// reached by different extension orders or laid out differently.
    pub(crate) fn canonical_key(&self) -> (Vec<String>, Vec<Vec<(String, usize)>>) {
        let mut ids: Vec<String> = self.old_rows.iter().map(|p| p.id().to_owned()).collect();
        ids.sort();
        let cols = self
            .columns
            .iter()
            .filter(|c| c.is_hit())
            .map(|c| {
                let mut cells: Vec<(String, usize)> = c
                    .cells
                    .iter()
                    .map(|cell| {
                        let id = if cell.row == 0 { String::new() } else { self.row(cell.row).id().to_owned() };
                        (id, cell.pos)
                    })
                    .collect();
                cells.sort();
                cells
            })
            .collect();
        (ids, cols)
    }

    /// Checks the structural invariants; used by tests.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut seen = BTreeSet::new();
        for (k, col) in self.columns.iter().enumerate() {
            if col.cells.is_empty() {
                return Err(format!("column {k} is empty"));
            }
            let mut rows = BTreeSet::new();
            for cell in &col.cells {
                if !rows.insert(cell.row) {
                    return Err(format!("column {k} holds row {} twice", cell.row));
                }
                if self.row(cell.row).symbols()[cell.pos] != col.symbol {
                    return Err(format!("column {k} mixes symbols"));
                }
                if !seen.insert(*cell) {
                    return Err(format!("cell {cell:?} appears twice"));
                }
            }
        }
        for row in 0..self.row_count() {
            let cols = self.row_columns(row);
            if cols.contains(&usize::MAX) {
                return Err(format!("row {row} has a symbol outside every column"));
            }
            if cols.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("row {row} is out of order"));
            }
        }
        Ok(())
    }
}

/// Σ code cost of Old rows plus raw cost of New symbols outside hit columns.
pub fn encoding_cost(al: &Alignment, store: &PatternStore, alphabet_size: usize) -> Result<f64, AlignmentError> {
    let per_symbol = symbol_bits(alphabet_size)?;
    // summed in id order so that equal row sets score identically
    let mut ids = al.old_ids();
    ids.sort_unstable();
    let mut cost = 0.0;
    for id in ids {
        cost += store.code_cost(id)?;
    }
    let unmatched = al.new_row.len() - al.new_hits();
    Ok(cost + unmatched as f64 * per_symbol)
}

/// Old-row symbols in columns without any other row, in column order.
pub fn infer_unmatched(al: &Alignment) -> Vec<(String, Symbol)> {
    al.columns
        .iter()
        .filter(|c| !c.is_hit() && c.cells[0].row != 0)
        .map(|c| (al.row(c.cells[0].row).id().to_owned(), c.symbol.clone()))
        .collect()
}

/// Alphabet size used when aligning `new` against `store`: distinct symbols
/// of the store and the New pattern together.
pub fn alignment_alphabet(new: &Pattern, store: &PatternStore) -> usize {
    let extra = new.symbols().iter().filter(|s| !store.alphabet().contains(*s)).collect::<BTreeSet<_>>().len();
    (store.alphabet().len() + extra).max(1)
}
