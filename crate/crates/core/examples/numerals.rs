use icmup::setnum::{compression_ratio, positional_to_unary, to_peano, unary_to_positional, UnaryNumber};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let three = to_peano(3);
    println!("{three}");
    println!("3 and 5 share {} applications of s", three.shared_depth(to_peano(5)));

    let n = UnaryNumber::new(1000)?;
    for base in [2, 10, 16] {
        println!("base {base:>2}: {:<10} ratio {:.1}", unary_to_positional(n, base)?, compression_ratio(n, base)?);
    }
    assert_eq!(positional_to_unary("3e8", 16)?, n);
    Ok(())
}
