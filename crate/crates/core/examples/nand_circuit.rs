use std::collections::BTreeMap;

use icmup::machines::{FunctionTable, NandCircuit};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let adder = NandCircuit::parse(include_str!("../data/adder.circuit"))?;
    println!("{} gates", adder.gate_count());

    let inputs: BTreeMap<String, u8> = [("a".to_string(), 1), ("b".to_string(), 1)].into();
    println!("1 + 1 -> {:?}", adder.eval(&inputs)?);

    let compiled = adder.compile_truth_table()?;
    print!("{}", compiled.to_tsv());
    assert_eq!(compiled.normalized().rows(), FunctionTable::adder().normalized().rows());
    Ok(())
}
