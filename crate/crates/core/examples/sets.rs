use icmup::pattern::{render, symbols};
use icmup::setnum::{multiset_to_set, set_intersection, set_union};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bag = symbols("c a b a c c");
    let s = multiset_to_set(&bag);
    println!("{} -> {}", render(&bag), render(&s));

    let t = multiset_to_set(&symbols("b c d"));
    println!("union {}", render(&set_union(&s, &t)?));
    println!("intersection {}", render(&set_intersection(&s, &t)?));
    println!("not a set: {}", set_union(&bag, &t).unwrap_err());
    Ok(())
}
