//! Aligns "t w o k i t t e n s p l a y" against a small grammar and prints
//! the winning parse.

use icmup::alignment::{build_alignments, grid, parse_render, SearchParams};
use icmup::pattern::{symbols, Pattern, PatternStore};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let store = PatternStore::parse_grammar(include_str!("../data/fig3.grammar"))?;
    let new = Pattern::new_input("NEW", symbols("t w o k i t t e n s p l a y"))?;

    let ranking = build_alignments(&new, &store, SearchParams::default())?;
    for (al, p) in ranking.alignments.iter().zip(&ranking.probabilities).take(3) {
        println!("CD {:7.3}  p {:.3}  {}", al.compression_difference(), p, al.old_ids().join(","));
    }
    let best = ranking.best();
    println!("\n{}\n", parse_render(best));
    print!("{}", grid(best));
    Ok(())
}
