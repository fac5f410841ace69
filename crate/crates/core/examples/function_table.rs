use icmup::machines::FunctionTable;
use icmup::pattern::symbols;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let adder = FunctionTable::parse_tsv("adder", include_str!("../data/adder.tsv"))?;
    print!("{}", adder.to_tsv());
    for input in ["1 1", "1 0", "0 1", "0 0"] {
        let sel = adder.select(&symbols(input))?;
        println!("{input} -> row {} ({} cells matched) -> {:?}", sel.row + 1, sel.matched, sel.outputs);
    }
    match adder.select(&symbols("1 x")) {
        Ok(_) => unreachable!(),
        Err(e) => println!("1 x -> {e}"),
    }
    Ok(())
}
