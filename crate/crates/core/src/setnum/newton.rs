use serde::Serialize;

use super::SetNumError;
use crate::pattern::{alphabet_size, raw_cost, tokenize, TokenizeMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NewtonRow {
    pub t: u64,
    /// Distance in tenths of a metre.
    pub tenths: i64,
}

impl NewtonRow {
    /// Distance with one decimal, e.g. `490.3`.
    pub fn distance(&self) -> String {
        format!("{}.{}", self.tenths / 10, self.tenths % 10)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonTable {
    pub g: f64,
    pub rows: Vec<NewtonRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewtonReport {
    pub g: f64,
    pub rows: Vec<(u64, String)>,
    pub formula_bits: f64,
    pub table_bits: f64,
}

/// `s = g t^2 / 2` for `t = 0..=t_max`, rounded half away from zero to
/// one decimal.
pub fn newton_table(g: f64, t_max: u64) -> Result<NewtonTable, SetNumError> {
    if !(g.is_finite() && g > 0.0) {
        return Err(SetNumError::InvalidParameter(format!("g must be positive, got {g}")));
    }
    let rows = (0..=t_max)
        .map(|t| {
            let s = g * (t * t) as f64 / 2.0;
            NewtonRow { t, tenths: (s * 10.0).round() as i64 }
        })
        .collect();
    Ok(NewtonTable { g, rows })
}

impl NewtonTable {
    /// One `t s` line per row.
    pub fn render(&self) -> String {
        self.rows.iter().map(|r| format!("{} {}\n", r.t, r.distance())).collect()
    }

    pub fn formula(&self) -> String {
        format!("s = (g t^2) / 2, g = {}", self.g)
    }

    /// Character-level raw cost of the rendered table and of the formula,
    /// both over the characters the two renderings use.
    pub fn report(&self) -> NewtonReport {
        let table = tokenize(&self.render(), TokenizeMode::Chars);
        let formula = tokenize(&self.formula(), TokenizeMode::Chars);
        let a = alphabet_size(&[table.as_slice(), formula.as_slice()].concat());
        let bits = |syms: &[_]| raw_cost(syms, a).expect("alphabet covers both");
        NewtonReport {
            g: self.g,
            rows: self.rows.iter().map(|r| (r.t, r.distance())).collect(),
            formula_bits: bits(&formula),
            table_bits: bits(&table),
        }
    }
}
