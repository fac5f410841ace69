use icmup::alignment::retrieve;
use icmup::pattern::{symbols, Pattern, PatternStore};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let store = PatternStore::parse_grammar(include_str!("../data/fig3.grammar"))?;
    let query = Pattern::new_input("Q", symbols("k i t t e n"))?;
    for (id, cd) in retrieve(&query, &store, 3)? {
        println!("{id:<12} {cd:8.3}");
    }
    Ok(())
}
