//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code: 0 on success, 2 for
//! unreadable or malformed input, 3 when the operation itself fails.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::alignment::{self, build_alignments, column_dump, grid, parse_render, retrieve, SearchParams};
use crate::codecs::{
    chunk_decode, chunk_encode, discover_chunks, rle_cost, rle_decode, rle_encode, CodecError, RleFile, StreamFile,
};
use crate::hierarchy::{DescriptionForm, Hierarchy, HierarchyError};
use crate::machines::{tm_run, FunctionTable, MachineError, NandCircuit, TuringMachine};
use crate::pattern::{
    alphabet_size, raw_cost, render, tokenize, Pattern, PatternError, PatternStore, Symbol, TokenizeMode,
};
use crate::setnum::{self, OperationTrace, SetNumError, StepKind, UnaryNumber};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error("cannot write {path}: {message}")]
    Write { path: PathBuf, message: String },
    /// Malformed input; exit code 2.
    #[error("{name}: {message}")]
    Input { name: String, message: String },
    /// The operation failed on well-formed input; exit code 3.
    #[error("{name}: {message}")]
    Domain { name: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { .. } => 3,
            _ => 2,
        }
    }

    fn input(e: impl std::fmt::Debug + std::fmt::Display) -> Self {
        CliError::Input { name: variant_name(&e), message: e.to_string() }
    }

    fn domain(e: impl std::fmt::Debug + std::fmt::Display) -> Self {
        CliError::Domain { name: variant_name(&e), message: e.to_string() }
    }
}

fn variant_name(e: &impl std::fmt::Debug) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_owned()
}

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        CliError::input(e)
    }
}

impl From<CodecError> for CliError {
    fn from(e: CodecError) -> Self {
        match e {
            CodecError::NotDecodable => CliError::domain(e),
            _ => CliError::input(e),
        }
    }
}

impl From<MachineError> for CliError {
    fn from(e: MachineError) -> Self {
        match e {
            MachineError::NoMatch { .. }
            | MachineError::ArityMismatch { .. }
            | MachineError::MissingInput(_)
            | MachineError::NotBinary(_)
            | MachineError::TooLarge(_) => CliError::domain(e),
            _ => CliError::input(e),
        }
    }
}

impl From<SetNumError> for CliError {
    fn from(e: SetNumError) -> Self {
        CliError::domain(e)
    }
}

impl From<HierarchyError> for CliError {
    fn from(e: HierarchyError) -> Self {
        match e {
            HierarchyError::UnknownClass(_) | HierarchyError::AlphabetTooSmall { .. } => CliError::domain(e),
            _ => CliError::input(e),
        }
    }
}

impl From<alignment::AlignmentError> for CliError {
    fn from(e: alignment::AlignmentError) -> Self {
        match e {
            alignment::AlignmentError::EmptyRanking => CliError::domain(e),
            _ => CliError::input(e),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "icmup", version, about = "Compression by matching and unifying patterns")]
struct Cli {
    /// Write a JSON run report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Treat every non-whitespace character as one symbol.
    #[arg(long, global = true)]
    chars: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Chunk,
    Rle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SetOp {
    Unify,
    Union,
    Intersect,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum UnaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Fact,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode a corpus file with chunking-with-codes or run-length coding.
    Compress {
        corpus: PathBuf,
        #[arg(long, value_enum, default_value = "chunk")]
        mode: Mode,
        #[arg(long, default_value_t = 2)]
        min_len: usize,
        #[arg(long, default_value_t = 2)]
        min_count: usize,
        /// Stream file to write; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild a corpus from a stream file.
    Decompress {
        stream: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank multiple alignments of a New pattern against a grammar.
    Align {
        grammar: PathBuf,
        #[arg(long = "new")]
        new_symbols: String,
        #[arg(long, default_value_t = alignment::DEFAULT_BEAM)]
        beam: usize,
        #[arg(long, default_value_t = alignment::DEFAULT_MAX_OLD_ROWS)]
        max_rows: usize,
        #[arg(long, default_value_t = 3)]
        top: usize,
    },
    /// Rank stored patterns by how well they match a query.
    Retrieve {
        grammar: PathBuf,
        #[arg(long)]
        query: String,
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Bracketed parse and grid of the best alignment.
    Parse {
        grammar: PathBuf,
        #[arg(long = "new")]
        new_symbols: String,
        #[arg(long, default_value_t = alignment::DEFAULT_BEAM)]
        beam: usize,
        #[arg(long, default_value_t = alignment::DEFAULT_MAX_OLD_ROWS)]
        max_rows: usize,
    },
    /// Evaluate a function table on one input tuple.
    Table {
        table: PathBuf,
        /// Comma-separated input values.
        #[arg(long = "in")]
        inputs: String,
    },
    /// Evaluate a NAND circuit, or print its truth table.
    Circuit {
        circuit: PathBuf,
        /// Assignments such as `a=1,b=0`.
        #[arg(long = "in", required_unless_present = "compile")]
        inputs: Option<String>,
        #[arg(long)]
        compile: bool,
    },
    /// Run a Turing machine transition table.
    Tm {
        machine: PathBuf,
        /// Initial cells from position 0, e.g. `01100`.
        #[arg(long, default_value = "")]
        tape: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        head: i64,
        #[arg(long, default_value = "s0")]
        state: String,
        #[arg(long, default_value_t = 10_000)]
        max_steps: u64,
    },
    /// Multiset reduction, union and intersection.
    Sets {
        #[arg(value_enum)]
        op: SetOp,
        a: String,
        b: Option<String>,
    },
    /// Unary arithmetic with step traces.
    Unary {
        #[arg(value_enum)]
        op: UnaryOp,
        a: u64,
        b: Option<u64>,
        /// Print every step.
        #[arg(long)]
        trace: bool,
    },
    /// Peano numerals.
    Peano {
        n: Option<u64>,
        /// Read a numeral such as `S(S(0))` instead.
        #[arg(long)]
        parse: Option<String>,
        /// Second numeral for the shared depth.
        #[arg(long)]
        shared: Option<u64>,
    },
    /// Unary to positional conversion and back.
    Base {
        n: Option<u64>,
        #[arg(long, default_value_t = 10)]
        base: u32,
        /// Read a digit string instead.
        #[arg(long)]
        parse: Option<String>,
    },
    /// Falling-body distance table and its description lengths.
    Newton {
        #[arg(long, default_value_t = 9.80665)]
        g: f64,
        #[arg(long, default_value_t = 16)]
        tmax: u64,
    },
    /// Description lengths of a class hierarchy.
    Hierarchy {
        file: PathBuf,
        /// Print the wholes enclosing this part.
        #[arg(long)]
        part: Option<String>,
        /// Alphabet size; defaults to the hierarchy's own.
        #[arg(long)]
        alphabet: Option<usize>,
    },
}

#[derive(Debug, Serialize)]
struct FileDigest {
    path: String,
    sha256: String,
}

/// Machine-readable summary written by `--report`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    command: String,
    inputs: Vec<FileDigest>,
    raw_bits: f64,
    encoded_bits: f64,
    ratio: f64,
    details: Value,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            inputs: Vec::new(),
            raw_bits: 0.0,
            encoded_bits: 0.0,
            ratio: 1.0,
            details: Value::Null,
        }
    }

    fn bits(mut self, raw: f64, encoded: f64) -> Self {
        self.raw_bits = raw;
        self.encoded_bits = encoded;
        self.ratio = if raw > 0.0 { encoded / raw } else { 1.0 };
        self
    }
}

/// Fixed three decimals, halves rounded away from zero.
pub fn fmt_bits(x: f64) -> String {
    format!("{:.3}", (x * 1000.0).round() / 1000.0 + 0.0)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

struct Ctx {
    mode: TokenizeMode,
    inputs: Vec<FileDigest>,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Read { path: path.into(), message: e.to_string() })?;
        self.inputs.push(FileDigest { path: path.display().to_string(), sha256: sha256_hex(&bytes) });
        String::from_utf8(bytes).map_err(|_| CliError::Read { path: path.into(), message: "not UTF-8".into() })
    }

    fn symbols(&self, text: &str) -> Vec<Symbol> {
        tokenize(text, self.mode)
    }

    fn render(&self, syms: &[Symbol]) -> String {
        match self.mode {
            TokenizeMode::Whitespace => render(syms),
            TokenizeMode::Chars => syms.iter().map(Symbol::as_str).collect(),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Write { path: path.into(), message: e.to_string() })
}

fn corpus_bits(corpus: &[Symbol]) -> Result<(usize, f64), CliError> {
    if corpus.is_empty() {
        return Ok((0, 0.0));
    }
    let a = alphabet_size(corpus);
    Ok((a, raw_cost(corpus, a)?))
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx =
        Ctx { mode: if cli.chars { TokenizeMode::Chars } else { TokenizeMode::Whitespace }, inputs: Vec::new() };
    let result = execute(&cli.command, &mut ctx).and_then(|(text, mut report)| {
        report.inputs = std::mem::take(&mut ctx.inputs);
        if let Some(path) = &cli.report {
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            write_file(path, &(json + "\n"))?;
        }
        Ok(text)
    });
    match result {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: &Command, ctx: &mut Ctx) -> Result<(String, RunReport), CliError> {
    match command {
        Command::Compress { corpus, mode, min_len, min_count, out } => {
            cmd_compress(ctx, corpus, *mode, *min_len, *min_count, out.as_deref())
        }
        Command::Decompress { stream, out } => cmd_decompress(ctx, stream, out.as_deref()),
        Command::Align { grammar, new_symbols, beam, max_rows, top } => {
            cmd_align(ctx, grammar, new_symbols, SearchParams { beam: *beam, max_old_rows: *max_rows }, *top)
        }
        Command::Retrieve { grammar, query, k } => cmd_retrieve(ctx, grammar, query, *k),
        Command::Parse { grammar, new_symbols, beam, max_rows } => {
            cmd_parse(ctx, grammar, new_symbols, SearchParams { beam: *beam, max_old_rows: *max_rows })
        }
        Command::Table { table, inputs } => cmd_table(ctx, table, inputs),
        Command::Circuit { circuit, inputs, compile } => cmd_circuit(ctx, circuit, inputs.as_deref(), *compile),
        Command::Tm { machine, tape, head, state, max_steps } => cmd_tm(ctx, machine, tape, *head, state, *max_steps),
        Command::Sets { op, a, b } => cmd_sets(ctx, *op, a, b.as_deref()),
        Command::Unary { op, a, b, trace } => cmd_unary(*op, *a, *b, *trace),
        Command::Peano { n, parse, shared } => cmd_peano(*n, parse.as_deref(), *shared),
        Command::Base { n, base, parse } => cmd_base(*n, *base, parse.as_deref()),
        Command::Newton { g, tmax } => cmd_newton(*g, *tmax),
        Command::Hierarchy { file, part, alphabet } => cmd_hierarchy(ctx, file, part.as_deref(), *alphabet),
    }
}

fn cmd_compress(
    ctx: &mut Ctx,
    path: &Path,
    mode: Mode,
    min_len: usize,
    min_count: usize,
    out: Option<&Path>,
) -> Result<(String, RunReport), CliError> {
    let text = ctx.read(path)?;
    let corpus = ctx.symbols(&text);
    let (a, raw) = corpus_bits(&corpus)?;
    let mut text = String::new();
    let (file, encoded, details) = match mode {
        Mode::Chunk => {
            let dict = discover_chunks(&corpus, min_len, min_count)?;
            let stream = chunk_encode(&corpus, &dict);
            let encoded = if corpus.is_empty() { 0.0 } else { stream.encoded_bits(a)? };
            let dict_bits = if corpus.is_empty() { 0.0 } else { stream.dictionary_bits(a)? };
            let mut chunks = Vec::new();
            for c in dict.entries() {
                let _ = writeln!(text, "chunk {} x{}: {}", c.code, c.count, render(c.symbols()));
                chunks.push(json!({"code": c.code, "symbols": render(c.symbols()), "count": c.count}));
            }
            let _ = writeln!(text, "tokens={} literals={}", stream.tokens.len(), stream.literal_count());
            let _ = writeln!(text, "dictionary_bits={}", fmt_bits(dict_bits));
            let details = json!({"mode": "chunk", "alphabet": a, "chunks": chunks, "dictionary_bits": dict_bits});
            (StreamFile::to_json(&stream), encoded, details)
        }
        Mode::Rle => {
            let runs = rle_encode(&corpus);
            let encoded = if corpus.is_empty() { 0.0 } else { rle_cost(&runs, a)? };
            for r in &runs {
                let _ = writeln!(text, "run {r}");
            }
            let details = json!({"mode": "rle", "alphabet": a, "runs": runs.len()});
            (RleFile::to_json(&runs), encoded, details)
        }
    };
    let report = RunReport::new("compress").bits(raw, encoded);
    let _ = writeln!(
        text,
        "raw_bits={} encoded_bits={} ratio={}",
        fmt_bits(raw),
        fmt_bits(encoded),
        fmt_bits(report.ratio)
    );
    match out {
        Some(p) => write_file(p, &(file + "\n"))?,
        None => {
            text.push_str(&file);
            text.push('\n');
        }
    }
    Ok((text, RunReport { details, ..report }))
}

fn cmd_decompress(ctx: &mut Ctx, path: &Path, out: Option<&Path>) -> Result<(String, RunReport), CliError> {
    let text = ctx.read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::from(CodecError::Format(e.to_string())))?;
    let corpus = if value.get("runs").is_some() {
        rle_decode(&RleFile::parse(&text)?)?
    } else {
        chunk_decode(&StreamFile::parse(&text)?)?
    };
    let mut rendered = ctx.render(&corpus);
    if !rendered.is_empty() {
        rendered.push('\n');
    }
    let mut report = RunReport::new("decompress");
    report.details = json!({"symbols": corpus.len()});
    match out {
        Some(p) => {
            write_file(p, &rendered)?;
            Ok((String::new(), report))
        }
        None => Ok((rendered, report)),
    }
}

fn load_grammar(ctx: &mut Ctx, path: &Path) -> Result<PatternStore, CliError> {
    Ok(PatternStore::parse_grammar(&ctx.read(path)?)?)
}

fn new_pattern(ctx: &Ctx, text: &str) -> Result<Pattern, CliError> {
    Ok(Pattern::new_input("new", ctx.symbols(text))?)
}

fn cmd_align(
    ctx: &mut Ctx,
    grammar: &Path,
    new_text: &str,
    params: SearchParams,
    top: usize,
) -> Result<(String, RunReport), CliError> {
    if top == 0 {
        return Err(CliError::Input { name: "InvalidParameter".into(), message: "--top must be at least 1".into() });
    }
    let store = load_grammar(ctx, grammar)?;
    let new = new_pattern(ctx, new_text)?;
    let ranking = build_alignments(&new, &store, params)?;
    let shown = &ranking.alignments[..top.min(ranking.len())];
    let probs = alignment::alignment_probabilities(shown)?;
    let mut text = String::new();
    let mut details = Vec::new();
    for (i, (al, p)) in shown.iter().zip(&probs).enumerate() {
        let _ = writeln!(
            text,
            "alignment {} cd={} cost={} p={}",
            i + 1,
            fmt_bits(al.compression_difference()),
            fmt_bits(al.encoding_cost()),
            fmt_bits(*p)
        );
        text.push_str(&column_dump(al));
        let _ = writeln!(text, "parse: {}", parse_render(al));
        details.push(json!({
            "old": al.old_ids(),
            "compression_difference": al.compression_difference(),
            "encoding_cost": al.encoding_cost(),
            "probability": p,
            "covers_new": al.covers_new(),
            "parse": parse_render(al),
        }));
    }
    let best = ranking.best();
    let raw = best.compression_difference() + best.encoding_cost();
    let mut report = RunReport::new("align").bits(raw, best.encoding_cost());
    report.details = Value::Array(details);
    Ok((text, report))
}

fn cmd_retrieve(ctx: &mut Ctx, grammar: &Path, query: &str, k: usize) -> Result<(String, RunReport), CliError> {
    let store = load_grammar(ctx, grammar)?;
    let query = new_pattern(ctx, query)?;
    let hits = retrieve(&query, &store, k)?;
    let mut text = String::new();
    for (id, cd) in &hits {
        let _ = writeln!(text, "{id} cd={}", fmt_bits(*cd));
    }
    let mut report = RunReport::new("retrieve");
    report.details = json!(hits.iter().map(|(id, cd)| json!({"id": id, "cd": cd})).collect::<Vec<_>>());
    Ok((text, report))
}

fn cmd_parse(
    ctx: &mut Ctx,
    grammar: &Path,
    new_text: &str,
    params: SearchParams,
) -> Result<(String, RunReport), CliError> {
    let store = load_grammar(ctx, grammar)?;
    let new = new_pattern(ctx, new_text)?;
    let ranking = build_alignments(&new, &store, params)?;
    let best = ranking.best();
    let mut text = format!("{}\n", parse_render(best));
    text.push_str(&grid(best));
    let raw = best.compression_difference() + best.encoding_cost();
    let mut report = RunReport::new("parse").bits(raw, best.encoding_cost());
    report.details = json!({"parse": parse_render(best), "old": best.old_ids()});
    Ok((text, report))
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn cmd_table(ctx: &mut Ctx, path: &Path, inputs: &str) -> Result<(String, RunReport), CliError> {
    let name = path.file_stem().map_or("table".into(), |s| s.to_string_lossy().into_owned());
    let table = FunctionTable::parse_tsv(name, &ctx.read(path)?)?;
    let values = split_list(inputs).into_iter().map(Symbol::new).collect::<Result<Vec<_>, _>>()?;
    let sel = table.select(&values)?;
    let assigned: Vec<String> = table.output_cols().iter().zip(&sel.outputs).map(|(c, v)| format!("{c}={v}")).collect();
    let text = format!("{}\nrow={} matched={}\n", assigned.join(" "), sel.row + 1, sel.matched);
    let mut report = RunReport::new("table");
    report.details = json!({
        "row": sel.row + 1,
        "matched": sel.matched,
        "match_counts": table.match_counts(&values),
        "outputs": sel.outputs,
    });
    Ok((text, report))
}

fn cmd_circuit(
    ctx: &mut Ctx,
    path: &Path,
    inputs: Option<&str>,
    compile: bool,
) -> Result<(String, RunReport), CliError> {
    let circuit = NandCircuit::parse(&ctx.read(path)?)?;
    let mut report = RunReport::new("circuit");
    if compile {
        let table = circuit.compile_truth_table()?;
        report.details = json!({"gates": circuit.gate_count(), "rows": table.rows().len()});
        return Ok((table.to_tsv(), report));
    }
    let mut assignment = BTreeMap::new();
    for pair in split_list(inputs.unwrap_or_default()) {
        let (k, v) = pair.split_once('=').ok_or_else(|| CliError::Input {
            name: "BadAssignment".into(),
            message: format!("expected name=value, got {pair:?}"),
        })?;
        let v: u8 = v.trim().parse().map_err(|_| CliError::from(MachineError::NotBinary(v.trim().to_owned())))?;
        assignment.insert(k.trim().to_owned(), v);
    }
    let out = circuit.eval(&assignment)?;
    let line: Vec<String> = circuit.output_names().iter().map(|n| format!("{n}={}", out[*n])).collect();
    report.details = json!({"gates": circuit.gate_count(), "outputs": out});
    Ok((format!("{}\n", line.join(" ")), report))
}

fn cmd_tm(
    ctx: &mut Ctx,
    path: &Path,
    tape: &str,
    head: i64,
    state: &str,
    max_steps: u64,
) -> Result<(String, RunReport), CliError> {
    let machine = TuringMachine::parse(&ctx.read(path)?)?;
    let cells = tape
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(CliError::from(MachineError::NotBinary(other.to_string()))),
        })
        .collect::<Result<Vec<u8>, _>>()?;
    let out = tm_run(&machine, &cells, head, state, max_steps);
    let (lo, hi) = out.state.extent();
    let (lo, hi) = (lo.min(0), hi.max(cells.len() as i64 - 1));
    let shown: String = out.state.window(lo, hi).iter().map(|v| v.to_string()).collect();
    let text = format!(
        "halted={} state={} head={} steps={} lookups={}\ntape={} (from {})\n",
        out.halted, out.state.state, out.state.head, out.state.steps, out.lookups, shown, lo
    );
    let mut report = RunReport::new("tm");
    report.details = json!({
        "halted": out.halted,
        "state": out.state.state,
        "head": out.state.head,
        "steps": out.state.steps,
        "lookups": out.lookups,
        "tape": shown,
        "tape_start": lo,
    });
    Ok((text, report))
}

fn cmd_sets(ctx: &mut Ctx, op: SetOp, a: &str, b: Option<&str>) -> Result<(String, RunReport), CliError> {
    let a = ctx.symbols(a);
    let need_b = || {
        b.map(|b| ctx.symbols(b)).ok_or_else(|| CliError::Input {
            name: "MissingOperand".into(),
            message: "this operation takes two sets".into(),
        })
    };
    let result = match op {
        SetOp::Unify => setnum::multiset_to_set(&a),
        SetOp::Union => setnum::set_union(&a, &need_b()?)?,
        SetOp::Intersect => setnum::set_intersection(&a, &need_b()?)?,
    };
    let rendered = format!("{{{}}}", result.iter().map(Symbol::as_str).collect::<Vec<_>>().join(","));
    let mut report = RunReport::new("sets");
    report.details = json!({"result": result});
    Ok((rendered + "\n", report))
}

fn trace_summary(trace: &OperationTrace) -> String {
    let kinds = [
        StepKind::MultiplyIteration,
        StepKind::AddIteration,
        StepKind::SubtractIteration,
        StepKind::TermChange,
        StepKind::Transfer,
        StepKind::Remove,
    ];
    let parts: Vec<String> = kinds
        .iter()
        .filter_map(|&k| match trace.count(k) {
            0 => None,
            n => Some(format!("{}={n}", k.name())),
        })
        .collect();
    format!("steps={}{}{}", trace.step_count(), if parts.is_empty() { "" } else { " " }, parts.join(" "))
}

fn cmd_unary(op: UnaryOp, a: u64, b: Option<u64>, show: bool) -> Result<(String, RunReport), CliError> {
    let ua = UnaryNumber::new(a)?;
    let operand = || {
        b.ok_or_else(|| CliError::Input {
            name: "MissingOperand".into(),
            message: "this operation takes two numbers".into(),
        })
    };
    let ub = || -> Result<UnaryNumber, CliError> { Ok(UnaryNumber::new(operand()?)?) };
    let (first, trace) = match op {
        UnaryOp::Add => {
            let (n, t) = setnum::unary_add(ua, ub()?)?;
            (n.count().to_string(), t)
        }
        UnaryOp::Sub => {
            let (n, t) = setnum::unary_subtract(ua, ub()?)?;
            (n.count().to_string(), t)
        }
        UnaryOp::Mul => {
            let (n, t) = setnum::unary_multiply(ua, ub()?)?;
            (n.count().to_string(), t)
        }
        UnaryOp::Div => {
            let (q, r, t) = setnum::unary_divide(ua, ub()?)?;
            (format!("{} remainder {}", q.count(), r.count()), t)
        }
        UnaryOp::Pow => {
            let (n, t) = setnum::unary_power(ua, operand()?)?;
            (n.count().to_string(), t)
        }
        UnaryOp::Fact => {
            let (n, t) = setnum::unary_factorial(ua)?;
            (n.count().to_string(), t)
        }
    };
    let mut text = format!("{first}\n{}\n", trace_summary(&trace));
    if show {
        text.push_str(&trace.dump());
    }
    let mut report = RunReport::new("unary");
    report.details = json!({"operation": trace.operation, "result": first, "steps": trace.step_count()});
    Ok((text, report))
}

fn cmd_peano(n: Option<u64>, parse: Option<&str>, shared: Option<u64>) -> Result<(String, RunReport), CliError> {
    let p = match (n, parse) {
        (_, Some(text)) => text.parse::<setnum::PeanoNumeral>()?,
        (Some(n), None) => setnum::to_peano(n),
        (None, None) => {
            return Err(CliError::Input { name: "MissingOperand".into(), message: "give a number or --parse".into() })
        }
    };
    let mut text = format!("{p}\ndepth={} succ={}\n", p.depth, p.succ());
    if let Some(q) = shared {
        let _ = writeln!(text, "shared_depth={}", p.shared_depth(setnum::to_peano(q)));
    }
    let mut report = RunReport::new("peano");
    report.details = json!({"depth": p.depth, "numeral": p.to_string()});
    Ok((text, report))
}

fn cmd_base(n: Option<u64>, base: u32, parse: Option<&str>) -> Result<(String, RunReport), CliError> {
    let u = match (n, parse) {
        (_, Some(digits)) => setnum::positional_to_unary(digits, base)?,
        (Some(n), None) => UnaryNumber::new(n)?,
        (None, None) => {
            return Err(CliError::Input { name: "MissingOperand".into(), message: "give a number or --parse".into() })
        }
    };
    let digits = setnum::unary_to_positional(u, base)?;
    let ratio = setnum::compression_ratio(u, base)?;
    let text = format!("{digits}\nunary_symbols={} digits={} ratio={}\n", u.count(), digits.len(), fmt_bits(ratio));
    let mut report = RunReport::new("base").bits(u.count() as f64, digits.len() as f64);
    report.details = json!({"value": u.count(), "base": base, "digits": digits});
    Ok((text, report))
}

fn cmd_newton(g: f64, tmax: u64) -> Result<(String, RunReport), CliError> {
    let table = setnum::newton_table(g, tmax)?;
    let r = table.report();
    let mut text = String::from("t s\n");
    text.push_str(&table.render());
    let _ = writeln!(text, "formula_bits={} table_bits={}", fmt_bits(r.formula_bits), fmt_bits(r.table_bits));
    let mut report = RunReport::new("newton").bits(r.table_bits, r.formula_bits);
    report.details = serde_json::to_value(&r).expect("report serializes");
    Ok((text, report))
}

fn cmd_hierarchy(
    ctx: &mut Ctx,
    path: &Path,
    part: Option<&str>,
    alphabet: Option<usize>,
) -> Result<(String, RunReport), CliError> {
    let h = Hierarchy::parse(&ctx.read(path)?)?;
    let a = alphabet.unwrap_or_else(|| h.alphabet().len());
    let flat_n = h.symbol_count(DescriptionForm::Flat)?;
    let hier_n = h.symbol_count(DescriptionForm::Hierarchical)?;
    let flat = h.description_length(DescriptionForm::Flat, a)?;
    let hier = h.description_length(DescriptionForm::Hierarchical, a)?;
    let mut text = format!(
        "alphabet={a}\nflat symbols={flat_n} bits={}\nhierarchical symbols={hier_n} bits={}\n",
        fmt_bits(flat),
        fmt_bits(hier)
    );
    let mut details = json!({"alphabet": a, "flat_symbols": flat_n, "hierarchical_symbols": hier_n});
    if let Some(p) = part {
        let chain = h.part_context(p)?;
        let _ = writeln!(text, "{p} is part of: {}", if chain.is_empty() { "-".into() } else { chain.join(" < ") });
        details["part_context"] = json!(chain);
    }
    let mut report = RunReport::new("hierarchy").bits(flat, hier);
    report.details = details;
    Ok((text, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_formatting() {
        assert_eq!(fmt_bits(1.0), "1.000");
        assert_eq!(fmt_bits(0.0005), "0.001");
        assert_eq!(fmt_bits(-0.0001), "0.000");
        assert_eq!(fmt_bits(52.303_762_523_798_15), "52.304");
    }

    #[test]
    fn digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn error_names() {
        let e = CliError::from(MachineError::NoMatch { best_row: None, matched: 0 });
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().starts_with("NoMatch: "));
        assert_eq!(CliError::from(CodecError::UnknownCode("w9".into())).exit_code(), 2);
    }
}
