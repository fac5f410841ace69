//! Finds repeated chunks in a character corpus, codes them, and checks the
//! stream decodes back to the input.

use icmup::codecs::{chunk_decode, chunk_encode, discover_chunks, unify_basic};
use icmup::pattern::{alphabet_size, raw_cost, render, symbols, tokenize, TokenizeMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = include_str!("../data/info5.txt");
    let corpus = tokenize(text, TokenizeMode::Chars);
    let a = alphabet_size(&corpus);

    let (unified, residue) = unify_basic(&symbols("a b c x a b c y a b c"), &symbols("a b c"))?;
    println!("unify: {} x{} leaves {}", render(&unified.pattern), unified.count, render(&residue));

    let dict = discover_chunks(&corpus, 2, 2)?;
    for c in dict.entries() {
        println!("{} = {} (count {})", c.code, render(c.symbols()), c.count);
    }
    let stream = chunk_encode(&corpus, &dict);
    println!("raw {:.3} bits, encoded {:.3} bits", raw_cost(&corpus, a)?, stream.encoded_bits(a)?);
    assert_eq!(chunk_decode(&stream)?, corpus);
    Ok(())
}
