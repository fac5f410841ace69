//! A menu schema with three slots; each meal is stored as its corrections.

use icmup::codecs::{Schema, SchemaElement, Slot};
use icmup::pattern::{symbols, Pattern, Symbol};

fn slot(name: &str, fillers: &[(&str, &str)]) -> Result<SchemaElement, Box<dyn std::error::Error>> {
    let fillers = fillers.iter().map(|(code, text)| Pattern::old(*code, symbols(text))).collect::<Result<_, _>>()?;
    Ok(SchemaElement::Slot(Slot { name: name.into(), fillers }))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixed = |s: &str| SchemaElement::Fixed(Symbol::new(s).unwrap());
    let menu = Schema::new(
        "MN",
        vec![
            fixed("starter"),
            slot("ST", &[("st1", "soup"), ("st2", "melon")])?,
            fixed("main"),
            slot("MC", &[("mc1", "fish chips"), ("mc5", "roast beef")])?,
            fixed("pudding"),
            slot("PG", &[("pg1", "trifle"), ("pg3", "ice cream")])?,
        ],
    )?;

    let meal = symbols("starter melon main roast beef pudding ice cream");
    let corrections = menu.encode(&meal)?;
    println!("{}", menu.render_corrections(&corrections)?);
    let back = menu.instantiate(&corrections)?;
    assert_eq!(back.symbols(), &meal[..]);
    Ok(())
}
