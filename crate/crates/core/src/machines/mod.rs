//! Function tables evaluated by matching and unification, NAND circuits
//! built on the NAND table, and a transition-table Turing machine.

mod circuit;
mod table;
mod turing;

pub use circuit::{NandCircuit, Source};
pub use table::{FunctionTable, Selection, TableRow};
pub use turing::{tm_run, tm_step, tm_trajectory, Action, RunOutcome, Step, TapeState, Transition, TuringMachine};

use thiserror::Error;

use crate::pattern::PatternError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("expected {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("no row matches every input (best partial match covers {matched} cells)")]
    NoMatch { best_row: Option<usize>, matched: usize },
    #[error("rows {0} and {1} have the same inputs")]
    DuplicateInputs(usize, usize),
    #[error("table is malformed: {0}")]
    Malformed(String),
    #[error("input terminal {0:?} has no value")]
    MissingInput(String),
    #[error("value {0:?} is not 0 or 1")]
    NotBinary(String),
    #[error("{0:?} is used before it is defined")]
    Undefined(String),
    #[error("{0:?} is defined twice")]
    DuplicateName(String),
    #[error("{0} inputs is more than the 16 that can be enumerated")]
    TooLarge(usize),
    #[error("more than one transition for state {state:?} reading {read}")]
    NonDeterministic { state: String, read: u8 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}
