use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{FunctionTable, MachineError, TableRow};
use crate::pattern::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Write0,
    Write1,
    Left,
    Right,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Write0 => "W0",
            Action::Write1 => "W1",
            Action::Left => "L",
            Action::Right => "R",
        })
    }
}

impl FromStr for Action {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "W0" => Ok(Action::Write0),
            "W1" => Ok(Action::Write1),
            "L" => Ok(Action::Left),
            "R" => Ok(Action::Right),
            other => Err(format!("unknown action {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub state: String,
    pub read: u8,
    pub next: String,
    pub action: Action,
}

impl Transition {
    pub fn new(state: &str, read: u8, next: &str, action: Action) -> Self {
        Transition { state: state.into(), read, next: next.into(), action }
    }
}

/// Transition function held as a two-input function table
/// `(state, read) -> (next, action)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    transitions: Vec<Transition>,
    table: FunctionTable,
}

impl TuringMachine {
    pub fn new(transitions: Vec<Transition>) -> Result<Self, MachineError> {
        let mut rows = Vec::with_capacity(transitions.len());
        for (i, t) in transitions.iter().enumerate() {
            if t.read > 1 {
                return Err(MachineError::NotBinary(t.read.to_string()));
            }
            if transitions[..i].iter().any(|u| u.state == t.state && u.read == t.read) {
                return Err(MachineError::NonDeterministic { state: t.state.clone(), read: t.read });
            }
            rows.push(TableRow {
                inputs: vec![Symbol::new(t.state.as_str())?, Symbol::new(t.read.to_string())?],
                outputs: vec![Symbol::new(t.next.as_str())?, Symbol::new(t.action.to_string())?],
            });
        }
        let table = FunctionTable::new(
            "transitions",
            vec!["state".into(), "read".into()],
            vec!["next".into(), "action".into()],
            rows,
        )?;
        Ok(TuringMachine { transitions, table })
    }

    /// s0 1 -> s0 R; s0 0 -> s1 W1; s1 1 -> s1 L; s1 0 -> s2 R.
    pub fn table4() -> Self {
        Self::new(vec![
            Transition::new("s0", 1, "s0", Action::Right),
            Transition::new("s0", 0, "s1", Action::Write1),
            Transition::new("s1", 1, "s1", Action::Left),
            Transition::new("s1", 0, "s2", Action::Right),
        ])
        .expect("valid machine")
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn table(&self) -> &FunctionTable {
        &self.table
    }

    /// Lines `<state> <read> -> <next> <W0|W1|L|R>`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, MachineError> {
        let mut transitions = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| MachineError::Parse { line: i + 1, message };
            let words: Vec<&str> = line.split_whitespace().collect();
            let [state, read, arrow, next, action] = words[..] else {
                return Err(err("expected `<state> <read> -> <next> <action>`".into()));
            };
            if arrow != "->" {
                return Err(err(format!("expected `->`, found {arrow:?}")));
            }
            let read = match read {
                "0" => 0,
                "1" => 1,
                other => return Err(err(format!("read symbol {other:?} is not 0 or 1"))),
            };
            transitions.push(Transition::new(state, read, next, action.parse().map_err(err)?));
        }
        Self::new(transitions)
    }

    pub fn to_text(&self) -> String {
        self.transitions.iter().map(|t| format!("{} {} -> {} {}\n", t.state, t.read, t.next, t.action)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TapeState {
    /// Cells not present read as 0.
    pub cells: BTreeMap<i64, u8>,
    pub head: i64,
    pub state: String,
    /// Transitions applied so far.
    pub steps: u64,
}

impl TapeState {
    /// Tape laid out from position 0.
    pub fn new(tape: &[u8], head: i64, state: &str) -> Self {
        let cells = tape.iter().enumerate().map(|(i, &v)| (i as i64, v)).collect();
        TapeState { cells, head, state: state.into(), steps: 0 }
    }

    pub fn read(&self, pos: i64) -> u8 {
        self.cells.get(&pos).copied().unwrap_or(0)
    }

    /// Cells `lo..=hi` in order.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<u8> {
        (lo..=hi).map(|p| self.read(p)).collect()
    }

    /// Smallest window holding every 1 and the head.
    pub fn extent(&self) -> (i64, i64) {
        let ones = self.cells.iter().filter(|(_, &v)| v == 1).map(|(&p, _)| p);
        ones.fold((self.head, self.head), |(lo, hi), p| (lo.min(p), hi.max(p)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Next(TapeState),
    Halted,
}

/// Looks up `(state, cell under head)` in the transition table and applies
/// the one action of the selected row.
pub fn tm_step(m: &TuringMachine, s: &TapeState) -> Step {
    let (Ok(state), Ok(read)) = (Symbol::new(s.state.as_str()), Symbol::new(s.read(s.head).to_string())) else {
        return Step::Halted;
    };
    let Ok(sel) = m.table.select(&[state, read]) else {
        return Step::Halted;
    };
    let t = &m.transitions[sel.row];
    let mut next = s.clone();
    match t.action {
        Action::Write0 => {
            next.cells.insert(s.head, 0);
        }
        Action::Write1 => {
            next.cells.insert(s.head, 1);
        }
        Action::Left => next.head -= 1,
        Action::Right => next.head += 1,
    }
    next.state = t.next.clone();
    next.steps += 1;
    Step::Next(next)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub state: TapeState,
    pub halted: bool,
    /// Table lookups made, including the one that found no row.
    pub lookups: u64,
}

pub fn tm_run(m: &TuringMachine, tape: &[u8], head: i64, start: &str, max_steps: u64) -> RunOutcome {
    let mut state = TapeState::new(tape, head, start);
    let mut lookups = 0;
    while state.steps < max_steps {
        lookups += 1;
        match tm_step(m, &state) {
            Step::Next(next) => state = next,
            Step::Halted => return RunOutcome { state, halted: true, lookups },
        }
    }
    RunOutcome { state, halted: false, lookups }
}

/// Every configuration from the initial one up to the halting one (or the
/// step limit).
pub fn tm_trajectory(m: &TuringMachine, initial: TapeState, max_steps: u64) -> Vec<TapeState> {
    let mut out = vec![initial];
    while out.last().expect("non-empty").steps < max_steps {
        match tm_step(m, out.last().expect("non-empty")) {
            Step::Next(next) => out.push(next),
            Step::Halted => break,
        }
    }
    out
}
