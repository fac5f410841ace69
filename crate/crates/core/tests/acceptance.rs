//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use icmup::alignment::{align_pair, build_alignments, SearchParams};
use icmup::codecs::{
    chunk_decode, chunk_encode, discover_chunks, rle_decode, rle_encode, RleFile, Schema, SchemaElement, Slot,
    StreamFile, StreamToken,
};
use icmup::hierarchy::{ClassNode, DescriptionForm, Hierarchy};
use icmup::machines::{tm_run, tm_trajectory, FunctionTable, NandCircuit, TapeState, TuringMachine};
use icmup::pattern::{alphabet_size, symbols, tokenize, Pattern, PatternStore, Symbol, TokenizeMode};
use icmup::setnum::{
    positional_to_unary, to_peano, unary_add, unary_divide, unary_multiply, unary_power, unary_to_positional,
    PeanoNumeral, SetNumError, StepKind, UnaryNumber, UNARY_LIMIT,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = icmup::cli::run(std::iter::once("icmup").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

// Distances (m) for t = 0..16 s as printed in the falling-body table.
const TABLE1: [&str; 17] = [
    "0.0", "4.9", "19.6", "44.1", "78.5", "122.6", "176.5", "240.3", "313.8", "397.2", "490.3", "593.3", "706.1",
    "828.7", "961.1", "1103.2", "1255.3",
];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (code, out, err) = cli(&["newton", "--g", "9.80665", "--tmax", "16"]);
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    let rows: Vec<(String, String)> = out
        .lines()
        .skip(1)
        .take(17)
        .map(|l| {
            let mut w = l.split_whitespace();
            (w.next().unwrap_or("").to_owned(), w.next().unwrap_or("").to_owned())
        })
        .collect();
    for (t, expected) in TABLE1.iter().enumerate() {
        let row = rows.get(t).ok_or_else(|| format!("missing row for t={t}"))?;
        ensure(row.0 == t.to_string() && row.1 == *expected, || format!("t={t}: got {:?}, printed {expected}", row))?;
    }
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("17/17 rows exact in {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    // (in1, in2) -> outputs, in printed row order
    let adder_rows = [("1", "1", ["0", "1"]), ("1", "0", ["1", "0"]), ("0", "1", ["1", "0"]), ("0", "0", ["0", "0"])];
    let xor_rows = [("1", "1", "0"), ("0", "1", "1"), ("1", "0", "1"), ("0", "0", "0")];
    let adder = FunctionTable::parse_tsv("adder", &std::fs::read_to_string(data("adder.tsv")).unwrap()).unwrap();
    let xor = FunctionTable::parse_tsv("xor", &std::fs::read_to_string(data("xor.tsv")).unwrap()).unwrap();
    ensure(adder == FunctionTable::adder(), || "adder fixture differs from built-in".into())?;
    for (i, (a, b, out)) in adder_rows.iter().enumerate() {
        let sel = adder.select(&symbols(&format!("{a} {b}"))).map_err(|e| e.to_string())?;
        ensure(sel.row == i && sel.outputs == symbols(&out.join(" ")), || format!("adder({a},{b}) -> {sel:?}"))?;
    }
    for (i, (a, b, out)) in xor_rows.iter().enumerate() {
        let sel = xor.select(&symbols(&format!("{a} {b}"))).map_err(|e| e.to_string())?;
        ensure(sel.row == i && sel.outputs == symbols(out), || format!("xor({a},{b}) -> {sel:?}"))?;
    }
    let adder_path = data("adder.tsv");
    let (_, out, _) = cli(&["table", adder_path.to_str().unwrap(), "--in", "1,0"]);
    ensure(out == "sum=1 carry=0\nrow=2 matched=2\n", || format!("adder diagnostics {out:?}"))?;
    let xor_path = data("xor.tsv");
    let (_, out, _) = cli(&["table", xor_path.to_str().unwrap(), "--in", "1,0"]);
    ensure(out == "out=1\nrow=3 matched=2\n", || format!("xor diagnostics {out:?}"))?;
    Ok("8/8 rows; adder(1,0) selects row 2, XOR(1,0) selects row 3".into())
}

fn nand_oracle(gates: &[(usize, usize)], n_inputs: usize, bits: &[bool]) -> Vec<bool> {
    let mut values = bits.to_vec();
    for &(a, b) in gates {
        values.push(!(values[a] && values[b]));
    }
    debug_assert_eq!(values.len(), n_inputs + gates.len());
    values
}

fn criterion_3() -> Outcome {
    let xor = NandCircuit::parse(&std::fs::read_to_string(data("xor.circuit")).unwrap()).unwrap();
    let adder = NandCircuit::parse(&std::fs::read_to_string(data("adder.circuit")).unwrap()).unwrap();
    let xor_table = xor.compile_truth_table().map_err(|e| e.to_string())?;
    let adder_table = adder.compile_truth_table().map_err(|e| e.to_string())?;
    ensure(xor_table.normalized().rows() == FunctionTable::xor().normalized().rows(), || {
        format!("xor circuit table:\n{}", xor_table.to_tsv())
    })?;
    ensure(adder_table.normalized().rows() == FunctionTable::adder().normalized().rows(), || {
        format!("adder circuit table:\n{}", adder_table.to_tsv())
    })?;

    let strategy = (1usize..=6).prop_flat_map(|n| {
        (Just(n), prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..=10))
    });
    let mut checked = 0u64;
    let result = runner(300).run(&strategy, |(n, raw)| {
        let gates: Vec<(usize, usize)> =
            raw.iter().enumerate().map(|(g, (a, b))| (a.index(n + g), b.index(n + g))).collect();
        let name = |i: usize| if i < n { format!("x{i}") } else { format!("g{}", i - n) };
        let inputs: Vec<String> = (0..n).map(name).collect();
        let gate_defs: Vec<(String, String, String)> =
            gates.iter().enumerate().map(|(g, &(a, b))| (name(n + g), name(a), name(b))).collect();
        // every terminal and gate is an output
        let outputs: Vec<String> = (0..n + gates.len()).map(name).collect();
        let c = NandCircuit::new(&inputs, &gate_defs, &outputs).unwrap();
        let table = c.compile_truth_table().unwrap();
        prop_assert_eq!(table.rows().len(), 1 << n);
        for code in 0..1u32 << n {
            let bits: Vec<bool> = (0..n).map(|i| (code >> i) & 1 == 1).collect();
            let assignment: BTreeMap<String, u8> = (0..n).map(|i| (name(i), bits[i] as u8)).collect();
            let from_circuit = c.eval(&assignment).unwrap();
            let row_inputs: Vec<Symbol> =
                bits.iter().map(|&b| Symbol::new(if b { "1" } else { "0" }).unwrap()).collect();
            let from_table = table.eval(&row_inputs).unwrap();
            let oracle = nand_oracle(&gates, n, &bits);
            for (k, out) in outputs.iter().enumerate() {
                let expect = oracle[k] as u8;
                prop_assert_eq!(from_circuit[out], expect);
                prop_assert_eq!(from_table[k].as_str(), if expect == 1 { "1" } else { "0" });
            }
        }
        Ok(())
    });
    result.map_err(|e| e.to_string())?;
    checked += 300;
    Ok(format!("XOR and adder circuits equal their tables; {checked} random circuits up to 6 inputs agree"))
}

fn criterion_4() -> Outcome {
    let m = TuringMachine::parse(&std::fs::read_to_string(data("table4.tm")).unwrap()).unwrap();
    ensure(m == TuringMachine::table4(), || "fixture differs from the printed table".into())?;
    // (state, head, tape 0..5) before each table lookup, worked by hand
    let hand: [(&str, i64, [u8; 5]); 8] = [
        ("s0", 1, [0, 1, 1, 0, 0]),
        ("s0", 2, [0, 1, 1, 0, 0]),
        ("s0", 3, [0, 1, 1, 0, 0]),
        ("s1", 3, [0, 1, 1, 1, 0]),
        ("s1", 2, [0, 1, 1, 1, 0]),
        ("s1", 1, [0, 1, 1, 1, 0]),
        ("s1", 0, [0, 1, 1, 1, 0]),
        ("s2", 1, [0, 1, 1, 1, 0]),
    ];
    let traj = tm_trajectory(&m, TapeState::new(&[0, 1, 1, 0, 0], 1, "s0"), 1000);
    ensure(traj.len() == hand.len(), || format!("{} configurations, hand simulation has 8", traj.len()))?;
    for (i, (conf, (state, head, tape))) in traj.iter().zip(&hand).enumerate() {
        ensure(conf.state == *state && conf.head == *head && conf.window(0, 4) == tape, || {
            format!("configuration {i}: {conf:?}")
        })?;
    }
    let run = tm_run(&m, &[0, 1, 1, 0, 0], 1, "s0", 1000);
    ensure(run.halted && run.lookups == 8, || format!("{run:?}"))?;
    for n in 1..=10usize {
        let mut tape = vec![0u8];
        tape.extend(std::iter::repeat_n(1, n));
        tape.extend([0, 0]);
        let out = tm_run(&m, &tape, 1, "s0", 10_000);
        let ones: Vec<i64> = out.state.cells.iter().filter(|(_, &v)| v == 1).map(|(&p, _)| p).collect();
        let block: Vec<i64> = (1..=n as i64 + 1).collect();
        ensure(out.halted && out.state.state == "s2" && ones == block, || format!("n={n}: {out:?}"))?;
    }
    Ok("n=2 matches the hand simulation (8 lookups, 7 moves/writes); n=1..10 each end with n+1 ones".into())
}

fn criterion_5() -> Outcome {
    let cases = [
        (vec!["sets", "unify", "a b a c b b c a c"], "{a,b,c}\n"),
        (vec!["sets", "union", "b f d a c e", "e g i f d h"], "{a,b,c,d,e,f,g,h,i}\n"),
        (vec!["sets", "intersect", "b f d a c e", "e g i f d h"], "{d,e,f}\n"),
    ];
    for (args, expected) in cases {
        let (code, out, err) = cli(&args);
        ensure(code == 0 && out == expected, || format!("{args:?}: exit {code} {out:?} {err}"))?;
    }
    Ok("all three instances exact".into())
}

fn criterion_6() -> Outcome {
    let path = data("fig1.txt");
    let original = std::fs::read(&path).unwrap();
    let corpus = tokenize(std::str::from_utf8(&original).unwrap(), TokenizeMode::Whitespace);
    let info = tokenize("INFORMATION", TokenizeMode::Chars);
    let instances = corpus.windows(info.len()).filter(|w| *w == info.as_slice()).count();
    let filler = corpus.len() - instances * info.len();
    ensure(instances >= 2 && filler >= 20, || format!("{instances} instances, {filler} filler"))?;

    let dict = discover_chunks(&corpus, 2, 2).map_err(|e| e.to_string())?;
    let chunk = dict.entries().iter().find(|c| c.symbols() == info.as_slice()).ok_or("INFORMATION not found")?;
    let stream = chunk_encode(&corpus, &dict);
    let refs = stream.tokens.iter().filter(|t| matches!(t, StreamToken::CodeRef(c) if *c == chunk.code)).count();
    ensure(refs == instances, || format!("code {} used {refs} times", chunk.code))?;
    ensure(chunk_decode(&stream).map_err(|e| e.to_string())? == corpus, || "decode differs".into())?;

    // cost model worked out independently
    let a = corpus.iter().collect::<BTreeSet<_>>().len() as f64;
    let raw = corpus.len() as f64 * a.log2();
    let total: u64 = dict.entries().iter().map(|c| c.count).sum();
    let mut encoded = 0.0;
    for t in &stream.tokens {
        encoded += match t {
            StreamToken::CodeRef(code) => -((dict.get(code).unwrap().count as f64) / total as f64).log2(),
            StreamToken::Literal(_) => a.log2(),
        };
    }
    let lib = stream.encoded_bits(alphabet_size(&corpus)).map_err(|e| e.to_string())?;
    ensure((lib - encoded).abs() < 1e-9, || format!("library {lib} vs oracle {encoded}"))?;
    ensure(encoded < raw, || format!("encoded {encoded} >= raw {raw}"))?;

    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    let back = dir.path().join("back.txt");
    let (c1, _, e1) = cli(&["compress", path.to_str().unwrap(), "--out", s.to_str().unwrap()]);
    let (c2, _, e2) = cli(&["decompress", s.to_str().unwrap(), "--out", back.to_str().unwrap()]);
    ensure(c1 == 0 && c2 == 0, || format!("{e1}{e2}"))?;
    ensure(std::fs::read(&back).unwrap() == original, || "CLI round trip not byte-identical".into())?;
    Ok(format!("chunk {} x{refs}; encoded {encoded:.3} < raw {raw:.3} bits; byte-identical", chunk.code))
}

fn lcs_oracle(a: &[u8], b: &[u8]) -> usize {
    let mut dp = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            dp[i][j] = if a[i - 1] == b[j - 1] { dp[i - 1][j - 1] + 1 } else { dp[i - 1][j].max(dp[i][j - 1]) };
        }
    }
    dp[a.len()][b.len()]
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let store = PatternStore::parse_grammar(&std::fs::read_to_string(data("fig3.grammar")).unwrap()).unwrap();
    let new = Pattern::new_input("new", symbols("t w o k i t t e n s p l a y")).unwrap();
    let ranking = build_alignments(&new, &store, SearchParams::default()).map_err(|e| e.to_string())?;
    let best = ranking.best();
    ensure(new.len() == 14 && best.new_hits() == 14, || format!("{} of 14 New symbols hit", best.new_hits()))?;
    ensure(best.compression_difference() > 0.0, || format!("CD {}", best.compression_difference()))?;
    for word in ["D_two", "Nr_kitten", "Vr_play"] {
        ensure(best.contains_old(word), || format!("best alignment lacks {word}: {:?}", best.old_ids()))?;
    }
    let sum: f64 = ranking.probabilities.iter().sum();
    ensure((sum - 1.0).abs() <= 1e-9, || format!("probabilities sum to {sum}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("alignment took {elapsed:?}"))?;

    let alphabet = ["A", "C", "G", "T"];
    let seq = || prop::collection::vec(0u8..4, 1..=40);
    let to_pattern = |id: &str, s: &[u8]| {
        Pattern::old(id, s.iter().map(|&i| Symbol::new(alphabet[i as usize]).unwrap()).collect()).unwrap()
    };
    runner(500)
        .run(&(seq(), seq()), |(a, b)| {
            let al = align_pair(&to_pattern("a", &a), &to_pattern("b", &b));
            prop_assert_eq!(al.hit_count(), lcs_oracle(&a, &b));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "14/14 hit, CD {:.3} bits, Σp = 1 within 1e-9, search {elapsed:?}; 500 pairs match the LCS oracle",
        best.compression_difference()
    ))
}

fn criterion_8() -> Outcome {
    let u = |n: u64| UnaryNumber::new(n).unwrap();
    for a in 0..=50u64 {
        for b in 0..=50u64 {
            let (sum, t) = unary_add(u(a), u(b)).unwrap();
            ensure(sum.count() == a + b && t.step_count() == b as usize, || format!("{a}+{b}"))?;
            let (prod, t) = unary_multiply(u(a), u(b)).unwrap();
            ensure(prod.count() == a * b && t.count_at(0, StepKind::AddIteration) == b as usize, || {
                format!("{a}*{b}")
            })?;
            if b > 0 {
                let (q, r, t) = unary_divide(u(a), u(b)).unwrap();
                ensure(q.count() == a / b && r.count() == a % b, || format!("{a}/{b}"))?;
                ensure(t.count_at(0, StepKind::SubtractIteration) == (a / b) as usize, || format!("{a}/{b} trace"))?;
            }
            let k = b;
            let exact = (a as u128).checked_pow(k as u32);
            match unary_power(u(a), k) {
                Ok((p, t)) => {
                    ensure(Some(p.count() as u128) == exact, || format!("{a}^{k}"))?;
                    ensure(t.count_at(0, StepKind::MultiplyIteration) == k as usize, || format!("{a}^{k} trace"))?;
                }
                Err(SetNumError::Indeterminate) => ensure(a == 0 && k == 0, || format!("{a}^{k} indeterminate"))?,
                Err(SetNumError::TooLarge(_)) => {
                    ensure(exact.is_none_or(|v| v > UNARY_LIMIT as u128), || format!("{a}^{k} too large"))?
                }
                Err(e) => return Err(format!("{a}^{k}: {e}")),
            }
        }
    }
    let (n, t) = unary_add(u(3), u(7)).unwrap();
    ensure(n.count() == 10 && t.count(StepKind::Transfer) == 7, || "3 + 7".into())?;
    let (n, t) = unary_multiply(u(3), u(10)).unwrap();
    ensure(n.count() == 30 && t.count_at(0, StepKind::AddIteration) == 10, || "3 x 10".into())?;
    let (q, r, t) = unary_divide(u(12), u(3)).unwrap();
    ensure(q.count() == 4 && r.count() == 0 && t.count_at(0, StepKind::SubtractIteration) == 4, || "12 / 3".into())?;
    Ok("all laws hold for a, b, k in 0..=50; 3+7, 3x10, 12/3 as stated".into())
}

fn criterion_9() -> Outcome {
    let corpus = || prop::collection::vec(prop::sample::select(vec!["a", "b", "c", "d"]), 0..60);
    let syms = |v: &[&str]| v.iter().map(|s| Symbol::new(*s).unwrap()).collect::<Vec<_>>();

    runner(1000)
        .run(&corpus(), |v| {
            let c = syms(&v);
            let dict = discover_chunks(&c, 2, 2).unwrap();
            let stream = chunk_encode(&c, &dict);
            prop_assert_eq!(&chunk_decode(&stream).unwrap(), &c);
            let reread = StreamFile::parse(&StreamFile::to_json(&stream)).unwrap();
            prop_assert_eq!(chunk_decode(&reread).unwrap(), c);
            Ok(())
        })
        .map_err(|e| format!("chunk: {e}"))?;

    let runs = prop::collection::vec(
        (prop::collection::vec(prop::sample::select(vec!["a", "b", "c"]), 1..4), 1usize..5),
        0..8,
    );
    runner(1000)
        .run(&runs, |parts| {
            let mut c = Vec::new();
            for (block, n) in &parts {
                for _ in 0..*n {
                    c.extend(syms(block));
                }
            }
            let encoded = rle_encode(&c);
            prop_assert_eq!(&rle_decode(&encoded).unwrap(), &c);
            prop_assert_eq!(rle_decode(&RleFile::parse(&RleFile::to_json(&encoded)).unwrap()).unwrap(), c);
            Ok(())
        })
        .map_err(|e| format!("rle: {e}"))?;

    // slot fillers use symbols no other element uses, so every instance
    // has exactly one reading
    let schema_case = prop::collection::vec((any::<bool>(), 1usize..4, 1usize..4, any::<prop::sample::Index>()), 1..6);
    runner(1000)
        .run(&schema_case, |elements| {
            let mut els = Vec::new();
            let mut chosen = BTreeMap::new();
            for (i, (is_slot, n_fillers, len, pick)) in elements.iter().enumerate() {
                if *is_slot {
                    let fillers: Vec<Pattern> = (0..*n_fillers)
                        .map(|f| {
                            let body: Vec<Symbol> =
                                (0..*len).map(|k| Symbol::new(format!("v{i}_{f}_{k}")).unwrap()).collect();
                            Pattern::old(format!("c{i}_{f}"), body).unwrap()
                        })
                        .collect();
                    chosen.insert(format!("S{i}"), fillers[pick.index(*n_fillers)].id().to_owned());
                    els.push(SchemaElement::Slot(Slot { name: format!("S{i}"), fillers }));
                } else {
                    els.push(SchemaElement::Fixed(Symbol::new(format!("k{}", i % 2)).unwrap()));
                }
            }
            let schema = Schema::new("T", els).unwrap();
            let instance = schema.instantiate(&chosen).unwrap();
            prop_assert_eq!(schema.encode(instance.symbols()).unwrap(), chosen);
            Ok(())
        })
        .map_err(|e| format!("schema: {e}"))?;

    runner(1000)
        .run(&(0u64..=UNARY_LIMIT, 2u32..=36), |(n, base)| {
            let u = UnaryNumber::new(n).unwrap();
            let digits = unary_to_positional(u, base).unwrap();
            prop_assert_eq!(u64::from_str_radix(&digits, base).unwrap(), n);
            prop_assert_eq!(positional_to_unary(&digits, base).unwrap(), u);
            Ok(())
        })
        .map_err(|e| format!("positional: {e}"))?;

    runner(1000)
        .run(&(0u64..=10_000), |n| {
            let text = to_peano(n).to_string();
            prop_assert_eq!(text.matches('S').count() as u64, n);
            prop_assert_eq!(text.parse::<PeanoNumeral>().unwrap().depth, n);
            Ok(())
        })
        .map_err(|e| format!("peano: {e}"))?;
    Ok("5 properties x 1000 cases, no failures".into())
}

struct Enumerated {
    /// Parent bitmask per node; parents have smaller indices.
    parents: Vec<u32>,
    /// Own attribute bitmask per node over the pool.
    attrs: Vec<u32>,
}

const POOL: [&str; 2] = ["x", "y"];

impl Enumerated {
    fn name(i: usize) -> String {
        format!("c{i}")
    }

    fn ancestors(&self, i: usize) -> u32 {
        let mut acc = 0;
        for p in 0..i {
            if self.parents[i] & (1 << p) != 0 {
                acc |= (1 << p) | self.ancestors(p);
            }
        }
        acc
    }

    fn is_leaf(&self, i: usize) -> bool {
        self.parents.iter().all(|m| m & (1 << i) == 0)
    }

    fn attr_names(mask: u32) -> Vec<&'static str> {
        (0..POOL.len()).filter(|k| mask & (1 << k) != 0).map(|k| POOL[k]).collect()
    }

    fn flat_text(&self) -> String {
        let n = self.parents.len();
        let mut out = String::new();
        for i in (0..n).filter(|&i| self.is_leaf(i)) {
            let anc = self.ancestors(i);
            let mask = (0..n).filter(|&j| j == i || anc & (1 << j) != 0).fold(0, |m, j| m | self.attrs[j]);
            let line: Vec<String> =
                std::iter::once(Self::name(i)).chain(Self::attr_names(mask).into_iter().map(String::from)).collect();
            out.push_str(&(line.join(" ") + "\n"));
        }
        out
    }

    fn hierarchical_text(&self) -> String {
        let n = self.parents.len();
        let mut out = String::new();
        for i in 0..n {
            let parents: Vec<String> = (0..n).filter(|&p| self.parents[i] & (1 << p) != 0).map(Self::name).collect();
            let line: Vec<String> = std::iter::once(Self::name(i))
                .chain(Self::attr_names(self.attrs[i]).into_iter().map(String::from))
                .chain(parents)
                .collect();
            out.push_str(&(line.join(" ") + "\n"));
        }
        out
    }

    fn shares_through_common_ancestor(&self) -> bool {
        let n = self.parents.len();
        (0..n).any(|v| {
            let inheriting = (0..n).filter(|&l| self.is_leaf(l) && self.ancestors(l) & (1 << v) != 0).count();
            self.attrs[v].count_ones() >= 2 && inheriting >= 2
        })
    }

    fn build(&self) -> Hierarchy {
        let n = self.parents.len();
        Hierarchy::new((0..n).map(|i| {
            let parents: Vec<String> = (0..n).filter(|&p| self.parents[i] & (1 << p) != 0).map(Self::name).collect();
            ClassNode::new(Self::name(i))
                .with_attrs(Self::attr_names(self.attrs[i]))
                .with_parents(parents.iter().map(String::as_str))
        }))
        .unwrap()
    }
}

fn count_symbols(text: &str) -> usize {
    text.split_whitespace().count()
}

fn criterion_10() -> Outcome {
    let mut total = 0u64;
    let mut qualifying = 0u64;
    let mut violations = 0u64;
    let mut first: Option<String> = None;
    for n in 1..=5usize {
        let parent_choices: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
        let attr_choices = 1u32 << POOL.len();
        let structures: u64 = parent_choices.iter().map(|&c| c as u64).product();
        for s in 0..structures {
            let mut rest = s;
            let parents: Vec<u32> = parent_choices
                .iter()
                .map(|&c| {
                    let v = (rest % c as u64) as u32;
                    rest /= c as u64;
                    v
                })
                .collect();
            for a in 0..(attr_choices as u64).pow(n as u32) {
                let mut rest = a;
                let attrs: Vec<u32> = (0..n)
                    .map(|_| {
                        let v = (rest % attr_choices as u64) as u32;
                        rest /= attr_choices as u64;
                        v
                    })
                    .collect();
                let e = Enumerated { parents: parents.clone(), attrs };
                let flat = count_symbols(&e.flat_text());
                let hier = count_symbols(&e.hierarchical_text());
                let h = e.build();
                let lib_flat = h.symbol_count(DescriptionForm::Flat).unwrap();
                let lib_hier = h.symbol_count(DescriptionForm::Hierarchical).unwrap();
                if (lib_flat, lib_hier) != (flat, hier) {
                    return Err(format!(
                        "counter mismatch: library ({lib_flat}, {lib_hier}) vs brute force ({flat}, {hier})\n{}",
                        e.hierarchical_text()
                    ));
                }
                let size = h.alphabet().len();
                let dl_flat = h.description_length(DescriptionForm::Flat, size).unwrap();
                let dl_hier = h.description_length(DescriptionForm::Hierarchical, size).unwrap();
                total += 1;
                if e.shares_through_common_ancestor() {
                    qualifying += 1;
                    if dl_hier > dl_flat {
                        violations += 1;
                        first.get_or_insert_with(|| {
                            format!(
                                "flat {flat} symbols vs hierarchical {hier}:\n  flat: {}\n  hierarchical: {}",
                                e.flat_text().trim_end().replace('\n', " | "),
                                e.hierarchical_text().trim_end().replace('\n', " | ")
                            )
                        });
                    }
                }
            }
        }
    }
    match first {
        None => Ok(format!("{qualifying} qualifying of {total} hierarchies, hierarchical <= flat in all")),
        Some(example) => Err(format!(
            "{violations} of {qualifying} qualifying hierarchies (of {total}) have hierarchical > flat; first: {example}"
        )),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("newton table", criterion_1),
        ("adder and XOR tables", criterion_2),
        ("NAND circuits", criterion_3),
        ("transition-table machine", criterion_4),
        ("set instances", criterion_5),
        ("chunking with codes", criterion_6),
        ("multiple alignment", criterion_7),
        ("arithmetic traces", criterion_8),
        ("codec round trips", criterion_9),
        ("hierarchy description length", criterion_10),
    ];
    let mut failed = 0;
    let stderr = std::io::stderr();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let line = match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => format!("PASS {} {name}: {detail}", i + 1),
            Ok(Err(detail)) => {
                failed += 1;
                format!("FAIL {} {name}: {detail}", i + 1)
            }
            Err(_) => {
                failed += 1;
                format!("FAIL {} {name}: panicked", i + 1)
            }
        };
        let _ = writeln!(stderr.lock(), "{line}");
    }
    let _ = writeln!(stderr.lock(), "acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
