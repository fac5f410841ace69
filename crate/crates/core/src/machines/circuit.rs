use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use super::{FunctionTable, MachineError, TableRow};
use crate::pattern::Symbol;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Terminal(usize),
    Gate(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Gate {
    id: String,
    a: Source,
    b: Source,
}

/// Circuit made only of two-input NAND gates. Gates are listed in
/// evaluation order and may only read terminals or earlier gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NandCircuit {
    inputs: Vec<String>,
    gates: Vec<Gate>,
    outputs: Vec<(String, Source)>,
}

fn nand_table() -> &'static FunctionTable {
    static TABLE: OnceLock<FunctionTable> = OnceLock::new();
    TABLE.get_or_init(FunctionTable::nand)
}

fn bit(v: u8) -> Symbol {
    Symbol::new(if v == 0 { "0" } else { "1" }).expect("valid symbol")
}

fn parse_bit(s: &Symbol) -> Result<u8, MachineError> {
    match s.as_ref() {
        "0" => Ok(0),
        "1" => Ok(1),
        other => Err(MachineError::NotBinary(other.to_owned())),
    }
}

impl NandCircuit {
    /// `gates` are `(id, source a, source b)` by name; `outputs` name
    /// terminals or gates.
    pub fn new<S: AsRef<str>>(inputs: &[S], gates: &[(S, S, S)], outputs: &[S]) -> Result<Self, MachineError> {
        let mut names: BTreeMap<String, Source> = BTreeMap::new();
        let mut input_names = Vec::new();
        for (i, name) in inputs.iter().enumerate() {
            let name = name.as_ref().to_owned();
            if names.insert(name.clone(), Source::Terminal(i)).is_some() {
                return Err(MachineError::DuplicateName(name));
            }
            input_names.push(name);
        }
        let lookup = |names: &BTreeMap<String, Source>, n: &str| {
            names.get(n).cloned().ok_or_else(|| MachineError::Undefined(n.to_owned()))
        };
        let mut built = Vec::new();
        for (g, (id, a, b)) in gates.iter().enumerate() {
            let gate =
                Gate { id: id.as_ref().to_owned(), a: lookup(&names, a.as_ref())?, b: lookup(&names, b.as_ref())? };
            if names.insert(gate.id.clone(), Source::Gate(g)).is_some() {
                return Err(MachineError::DuplicateName(gate.id));
            }
            built.push(gate);
        }
        let mut seen = BTreeSet::new();
        let mut outs = Vec::new();
        for o in outputs {
            let o = o.as_ref();
            if !seen.insert(o) {
                return Err(MachineError::DuplicateName(o.to_owned()));
            }
            outs.push((o.to_owned(), lookup(&names, o)?));
        }
        Ok(NandCircuit { inputs: input_names, gates: built, outputs: outs })
    }

    /// XOR from four NAND gates; output `xor`.
    pub fn xor() -> Self {
        let gates = [("n1", "a", "b"), ("n2", "a", "n1"), ("n3", "b", "n1"), ("xor", "n2", "n3")];
        Self::new(&["a", "b"], &gates, &["xor"]).expect("valid circuit")
    }

    /// One-bit adder from five NAND gates; outputs `sum` and `carry`.
    pub fn adder() -> Self {
        let gates =
            [("n1", "a", "b"), ("n2", "a", "n1"), ("n3", "b", "n1"), ("sum", "n2", "n3"), ("carry", "n1", "n1")];
        Self::new(&["a", "b"], &gates, &["sum", "carry"]).expect("valid circuit")
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn output_names(&self) -> Vec<&str> {
        self.outputs.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Evaluates every gate by selecting a row of the NAND table.
    pub fn eval(&self, inputs: &BTreeMap<String, u8>) -> Result<BTreeMap<String, u8>, MachineError> {
        self.eval_with(nand_table(), inputs)
    }

    /// As [`NandCircuit::eval`] but with `gate_table` standing in for NAND.
    pub fn eval_with(
        &self,
        gate_table: &FunctionTable,
        inputs: &BTreeMap<String, u8>,
    ) -> Result<BTreeMap<String, u8>, MachineError> {
        let mut terminals = Vec::with_capacity(self.inputs.len());
        for name in &self.inputs {
            let v = *inputs.get(name).ok_or_else(|| MachineError::MissingInput(name.clone()))?;
            if v > 1 {
                return Err(MachineError::NotBinary(v.to_string()));
            }
            terminals.push(bit(v));
        }
        let mut values: Vec<Symbol> = Vec::with_capacity(self.gates.len());
        let value = |src: &Source, values: &[Symbol]| match src {
            Source::Terminal(i) => terminals[*i].clone(),
            Source::Gate(g) => values[*g].clone(),
        };
        for gate in &self.gates {
            let out = gate_table.eval(&[value(&gate.a, &values), value(&gate.b, &values)])?;
            values.push(out[0].clone());
        }
        self.outputs.iter().map(|(name, src)| Ok((name.clone(), parse_bit(&value(src, &values))?))).collect()
    }

    /// Enumerates every input assignment, all ones first, into a table.
    pub fn compile_truth_table(&self) -> Result<FunctionTable, MachineError> {
        let n = self.inputs.len();
        if n > 16 {
            return Err(MachineError::TooLarge(n));
        }
        let mut rows = Vec::with_capacity(1 << n);
        for code in (0..1u32 << n).rev() {
            let assignment: BTreeMap<String, u8> = self
                .inputs
                .iter()
                .enumerate()
                .map(|(i, name)| (name.clone(), ((code >> (n - 1 - i)) & 1) as u8))
                .collect();
            let out = self.eval(&assignment)?;
            rows.push(TableRow {
                inputs: self.inputs.iter().map(|name| bit(assignment[name])).collect(),
                outputs: self.outputs.iter().map(|(name, _)| bit(out[name])).collect(),
            });
        }
        FunctionTable::new("circuit", self.inputs.clone(), self.outputs.iter().map(|(n, _)| n.clone()).collect(), rows)
    }

    /// Reads lines `INPUT a b ...`, `GATE id x y` and `OUTPUT o ...`;
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, MachineError> {
        let mut inputs = Vec::new();
        let mut gates = Vec::new();
        let mut outputs = Vec::new();
        let mut gate_lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| MachineError::Parse { line: i + 1, message };
            let mut words = line.split_whitespace();
            let keyword = words.next().unwrap_or("");
            let rest: Vec<String> = words.map(str::to_owned).collect();
            match keyword {
                "INPUT" => inputs.extend(rest),
                "OUTPUT" => outputs.extend(rest),
                "GATE" => match <[String; 3]>::try_from(rest) {
                    Ok([id, a, b]) => {
                        gates.push((id, a, b));
                        gate_lines.push(i + 1);
                    }
                    Err(_) => return Err(err("GATE needs an id and two sources".into())),
                },
                other => return Err(err(format!("unknown keyword {other:?}"))),
            }
        }
        Self::new(&inputs, &gates, &outputs).map_err(|e| match e {
            MachineError::Undefined(name) => {
                let line = gates.iter().position(|(_, a, b)| *a == name || *b == name).map_or(0, |g| gate_lines[g]);
                MachineError::Parse { line, message: format!("{name:?} is used before it is defined") }
            }
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let name = |s: &Source| match s {
            Source::Terminal(i) => self.inputs[*i].clone(),
            Source::Gate(g) => self.gates[*g].id.clone(),
        };
        let mut out = format!("INPUT {}\n", self.inputs.join(" "));
        for g in &self.gates {
            out.push_str(&format!("GATE {} {} {}\n", g.id, name(&g.a), name(&g.b)));
        }
        out.push_str(&format!("OUTPUT {}\n", self.output_names().join(" ")));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assign(pairs: &[(&str, u8)]) -> BTreeMap<String, u8> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn single_gate() {
        let c = NandCircuit::new(&["a", "b"], &[("g", "a", "b")], &["g"]).unwrap();
        assert_eq!(c.eval(&assign(&[("a", 1), ("b", 1)])).unwrap()["g"], 0);
        assert_eq!(c.compile_truth_table().unwrap().rows(), FunctionTable::nand().rows());
    }

    #[test]
    fn xor_and_adder_constructions() {
        assert_eq!(
            NandCircuit::xor().compile_truth_table().unwrap().normalized().rows(),
            FunctionTable::xor().normalized().rows()
        );
        assert_eq!(NandCircuit::adder().compile_truth_table().unwrap().rows(), FunctionTable::adder().rows());
    }

    #[test]
    fn passthrough() {
        let c = NandCircuit::new::<&str>(&["a"], &[], &["a"]).unwrap();
        let t = c.compile_truth_table().unwrap();
        assert_eq!(t.rows().len(), 2);
        assert!(t.rows().iter().all(|r| r.inputs == r.outputs));
    }

    #[test]
    fn errors() {
        let c = NandCircuit::xor();
        assert_eq!(c.eval(&assign(&[("a", 1)])), Err(MachineError::MissingInput("b".into())));
        assert_eq!(c.eval(&assign(&[("a", 1), ("b", 2)])), Err(MachineError::NotBinary("2".into())));
        assert_eq!(NandCircuit::new(&["a"], &[("g", "a", "h")], &["g"]), Err(MachineError::Undefined("h".into())));
        assert_eq!(NandCircuit::new(&["a", "a"], &[], &["a"]), Err(MachineError::DuplicateName("a".into())));
        let wide: Vec<String> = (0..17).map(|i| format!("x{i}")).collect();
        let c = NandCircuit::new::<String>(&wide, &[], &[]).unwrap();
        assert_eq!(c.compile_truth_table(), Err(MachineError::TooLarge(17)));
    }

    #[test]
    fn gates_go_through_the_table() {
        // an OR table in place of NAND changes what the xor circuit computes
        let or = FunctionTable::parse_tsv("or", "in:a\tin:b\tout:o\n1\t1\t1\n1\t0\t1\n0\t1\t1\n0\t0\t0\n").unwrap();
        let out = NandCircuit::xor().eval_with(&or, &assign(&[("a", 0), ("b", 0)])).unwrap();
        assert_eq!(out["xor"], 0);
        let out = NandCircuit::xor().eval_with(&or, &assign(&[("a", 1), ("b", 0)])).unwrap();
        assert_eq!(out["xor"], 1);
        let nand_xor = NandCircuit::xor().eval(&assign(&[("a", 1), ("b", 1)])).unwrap();
        let or_xor = NandCircuit::xor().eval_with(&or, &assign(&[("a", 1), ("b", 1)])).unwrap();
        assert_ne!(nand_xor, or_xor);
    }

    #[test]
    fn text_format() {
        let c = NandCircuit::adder();
        assert_eq!(NandCircuit::parse(&c.to_text()).unwrap(), c);
        let err = NandCircuit::parse("INPUT a\nGATE g a zz\nOUTPUT g\n").unwrap_err();
        assert!(matches!(err, MachineError::Parse { line: 2, .. }));
        assert!(matches!(NandCircuit::parse("WIRE a b"), Err(MachineError::Parse { line: 1, .. })));
    }
}
