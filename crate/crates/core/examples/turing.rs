//! Runs the four-row unary successor machine and prints every configuration.

use icmup::machines::{tm_run, tm_trajectory, TapeState, TuringMachine};

fn main() {
    let m = TuringMachine::table4();
    print!("{}", m.to_text());

    let start = TapeState::new(&[0, 1, 1, 0, 0], 1, "s0");
    for (i, s) in tm_trajectory(&m, start, 100).iter().enumerate() {
        let tape: String = s.window(0, 4).iter().map(|b| char::from(b'0' + b)).collect();
        println!("{i}: {} head={} {tape}", s.state, s.head);
    }

    for n in 1..=5 {
        let mut tape = vec![0];
        tape.extend(std::iter::repeat_n(1, n));
        tape.extend([0, 0]);
        let out = tm_run(&m, &tape, 1, "s0", 1000);
        let ones = out.state.cells.values().filter(|&&c| c == 1).count();
        println!("n={n} -> {ones} ones after {} lookups", out.lookups);
    }
}
