use icmup::codecs::{rle_cost, rle_decode, rle_encode, Run};
use icmup::pattern::{alphabet_size, raw_cost, symbols};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seq = symbols(&"INFORMATION ".repeat(5));
    let seq: Vec<_> = seq.into_iter().chain(symbols("end")).collect();
    let a = alphabet_size(&seq);

    let runs = rle_encode(&seq);
    for r in &runs {
        println!("{r}");
    }
    println!("raw {:.3} bits, run-length {:.3} bits", raw_cost(&seq, a)?, rle_cost(&runs, a)?);
    assert_eq!(rle_decode(&runs)?, seq);

    let forever = Run::unbounded(symbols("INFORMATION"));
    println!("{forever} decodes? {}", rle_decode(std::slice::from_ref(&forever)).is_ok());
    Ok(())
}
