//! Sets from multisets, unary arithmetic with traces of its repeated
//! steps, Peano and positional numerals, and the falling-body table.

mod newton;
mod numerals;
mod sets;
mod unary;

pub use newton::{newton_table, NewtonReport, NewtonRow, NewtonTable};
pub use numerals::{compression_ratio, positional_to_unary, to_peano, unary_to_positional, PeanoNumeral};
pub use sets::{multiset_to_set, set_intersection, set_union};
pub use unary::{
    bounded_product, bounded_sum, unary_add, unary_divide, unary_factorial, unary_multiply, unary_power,
    unary_subtract, OperationTrace, StepKind, TraceStep, UnaryNumber, UNARY_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SetNumError {
    #[error("{0:?} occurs more than once")]
    NotASet(String),
    #[error("{a} - {b} is below zero")]
    Underflow { a: u64, b: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("0^0 is indeterminate")]
    Indeterminate,
    #[error("{0} exceeds the unary limit of 1000000")]
    TooLarge(u128),
    #[error("term {value} at index {index} is not an integer")]
    NonIntegerTerm { index: i64, value: f64 },
    #[error("term {value} at index {index} is negative")]
    NegativeTerm { index: i64, value: f64 },
    #[error("range {lo}..={hi} is empty")]
    EmptyRange { lo: i64, hi: i64 },
    #[error("{0:?} is not a digit string in this base")]
    BadDigit(String),
    #[error("base {0} is outside 2..=36")]
    BadBase(u32),
    #[error("{0:?} is not a unary numeral")]
    NotUnary(String),
    #[error("{0:?} is not a Peano numeral")]
    BadPeano(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
