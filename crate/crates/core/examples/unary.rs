use icmup::setnum::{bounded_sum, unary_divide, unary_factorial, unary_multiply, StepKind, UnaryNumber};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (p, trace) = unary_multiply(UnaryNumber::new(3)?, UnaryNumber::new(10)?)?;
    println!("3 x 10 = {p} ({})", p.count());
    println!(
        "{} add iterations, {} transfers nested at depth 1",
        trace.count_at(0, StepKind::AddIteration),
        trace.count_at(1, StepKind::Transfer),
    );

    let (q, r, _) = unary_divide(UnaryNumber::new(12)?, UnaryNumber::new(3)?)?;
    println!("12 / 3 = {} r {}", q.count(), r.count());

    let (f, trace) = unary_factorial(UnaryNumber::new(5)?)?;
    println!("5! = {} in {} steps, depth {:?}", f.count(), trace.step_count(), trace.max_depth());

    let (s, _) = bounded_sum(1, 10, |i| i as f64)?;
    println!("sum 1..=10 = {}", s.count());
    Ok(())
}
