use icmup::setnum::newton_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = newton_table(9.8, 6)?;
    print!("{}", table.render());
    println!("{}", table.formula());
    let report = table.report();
    println!("formula {:.3} bits vs table {:.3} bits", report.formula_bits, report.table_bits);
    Ok(())
}
