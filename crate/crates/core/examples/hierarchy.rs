use icmup::hierarchy::{DescriptionForm, Hierarchy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = Hierarchy::parse(include_str!("../data/mammals.hier"))?;
    println!("jane: {:?}", h.resolve_attributes("jane")?.iter().map(|s| s.as_str()).collect::<Vec<_>>());

    let a = h.alphabet().len();
    for form in [DescriptionForm::Flat, DescriptionForm::Hierarchical] {
        println!("{form}: {} symbols, {:.3} bits", h.symbol_count(form)?, h.description_length(form, a)?);
    }

    let car = Hierarchy::parse(include_str!("../data/car.hier"))?;
    println!("handle sits in {}", car.part_context("handle")?.join(" > "));
    Ok(())
}
