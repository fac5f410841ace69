use std::fmt::Write as _;

use super::MachineError;
use crate::pattern::Symbol;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub inputs: Vec<Symbol>,
    pub outputs: Vec<Symbol>,
}

/// Row chosen for an input tuple and how many input cells it matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    /// Zero-based index into the table's rows.
    pub row: usize,
    pub matched: usize,
    pub outputs: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    name: String,
    input_cols: Vec<String>,
    output_cols: Vec<String>,
    rows: Vec<TableRow>,
}

fn row(inputs: &str, outputs: &str) -> TableRow {
    TableRow { inputs: crate::pattern::symbols(inputs), outputs: crate::pattern::symbols(outputs) }
}

impl FunctionTable {
    pub fn new(
        name: impl Into<String>,
        input_cols: Vec<String>,
        output_cols: Vec<String>,
        rows: Vec<TableRow>,
    ) -> Result<Self, MachineError> {
        if input_cols.is_empty() {
            return Err(MachineError::Malformed("no input columns".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.inputs.len() != input_cols.len() || r.outputs.len() != output_cols.len() {
                return Err(MachineError::Malformed(format!("row {i} has the wrong number of cells")));
            }
            if let Some(j) = rows[..i].iter().position(|earlier| earlier.inputs == r.inputs) {
                return Err(MachineError::DuplicateInputs(j, i));
            }
        }
        Ok(FunctionTable { name: name.into(), input_cols, output_cols, rows })
    }

    /// One-bit adder, rows in the order 11, 10, 01, 00.
    pub fn adder() -> Self {
        let rows = vec![row("1 1", "0 1"), row("1 0", "1 0"), row("0 1", "1 0"), row("0 0", "0 0")];
        Self::new("adder", cols(&["a", "b"]), cols(&["sum", "carry"]), rows).expect("valid table")
    }

    /// XOR, rows in the order 11, 01, 10, 00.
    pub fn xor() -> Self {
        let rows = vec![row("1 1", "0"), row("0 1", "1"), row("1 0", "1"), row("0 0", "0")];
        Self::new("xor", cols(&["a", "b"]), cols(&["out"]), rows).expect("valid table")
    }

    pub fn nand() -> Self {
        let rows = vec![row("1 1", "0"), row("1 0", "1"), row("0 1", "1"), row("0 0", "1")];
        Self::new("nand", cols(&["a", "b"]), cols(&["out"]), rows).expect("valid table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn input_cols(&self) -> &[String] {
        &self.input_cols
    }

    pub fn output_cols(&self) -> &[String] {
        &self.output_cols
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    /// Same table with rows sorted by input tuple.
    pub fn normalized(&self) -> Self {
        let mut t = self.clone();
        t.rows.sort_by(|a, b| a.inputs.cmp(&b.inputs));
        t
    }

    /// Number of input cells each row shares with `inputs`.
    pub fn match_counts(&self, inputs: &[Symbol]) -> Vec<usize> {
        self.rows.iter().map(|r| r.inputs.iter().zip(inputs).filter(|(a, b)| a == b).count()).collect()
    }

    /// Picks the row that matches the most input cells. It must match all
    /// of them; a partial best is reported in the error.
    pub fn select(&self, inputs: &[Symbol]) -> Result<Selection, MachineError> {
        if inputs.len() != self.input_cols.len() {
            return Err(MachineError::ArityMismatch { expected: self.input_cols.len(), got: inputs.len() });
        }
        let counts = self.match_counts(inputs);
        let best = counts.iter().copied().max().unwrap_or(0);
        let winners: Vec<usize> = (0..counts.len()).filter(|&i| counts[i] == best).collect();
        if best < inputs.len() || winners.len() != 1 {
            return Err(MachineError::NoMatch { best_row: winners.first().copied(), matched: best });
        }
        let row = winners[0];
        Ok(Selection { row, matched: best, outputs: self.rows[row].outputs.clone() })
    }

    pub fn eval(&self, inputs: &[Symbol]) -> Result<Vec<Symbol>, MachineError> {
        self.select(inputs).map(|s| s.outputs)
    }

    /// Reads a tab-separated table: a header of `in:<name>` columns then
    /// `out:<name>` columns, one row per line. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse_tsv(name: impl Into<String>, text: &str) -> Result<Self, MachineError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (header_line, header) =
            lines.next().ok_or(MachineError::Parse { line: 0, message: "missing header".into() })?;
        let mut input_cols = Vec::new();
        let mut output_cols = Vec::new();
        for field in header.split('\t').map(str::trim) {
            let err = |message: String| MachineError::Parse { line: header_line, message };
            if let Some(n) = field.strip_prefix("in:") {
                if !output_cols.is_empty() {
                    return Err(err("input column after an output column".into()));
                }
                input_cols.push(n.to_owned());
            } else if let Some(n) = field.strip_prefix("out:") {
                output_cols.push(n.to_owned());
            } else {
                return Err(err(format!("header field {field:?} needs an in: or out: prefix")));
            }
        }
        let mut rows = Vec::new();
        for (line, text) in lines {
            let cells = text
                .split('\t')
                .map(|c| Symbol::new(c.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| MachineError::Parse { line, message: e.to_string() })?;
            if cells.len() != input_cols.len() + output_cols.len() {
                return Err(MachineError::Parse {
                    line,
                    message: format!("expected {} cells, got {}", input_cols.len() + output_cols.len(), cells.len()),
                });
            }
            let (i, o) = cells.split_at(input_cols.len());
            rows.push(TableRow { inputs: i.to_vec(), outputs: o.to_vec() });
        }
        Self::new(name, input_cols, output_cols, rows)
    }

    pub fn to_tsv(&self) -> String {
        let header: Vec<String> = self
            .input_cols
            .iter()
            .map(|c| format!("in:{c}"))
            .chain(self.output_cols.iter().map(|c| format!("out:{c}")))
            .collect();
        let mut out = header.join("\t");
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<&str> = r.inputs.iter().chain(&r.outputs).map(Symbol::as_ref).collect();
            let _ = writeln!(out, "{}", cells.join("\t"));
        }
        out
    }
}

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
