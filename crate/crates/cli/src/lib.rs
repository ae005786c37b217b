//! Command-line front end for the `ftqc` workbench.
//!
//! Every subcommand prints a short summary to standard output and, when
//! given `--out`, writes a machine-readable artifact. Artifacts always carry
//! the seed that produced them.

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use ftqc::csscode::{Block, CssCode};
use ftqc::f2linalg::{format_code, read_code, reed_muller, LinearCode};
use ftqc::gadgets::{GadgetReport, Protocol};
use ftqc::montecarlo::{export_results, run_experiment, ExperimentConfig};
use ftqc::noise::{Machine, NoiseModel, RngStream};
use ftqc::statevec::{SparseState, StandardGate};
use ftqc::Error;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ABORT: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ftqc", version, about = "Fault-tolerant gadgets on CSS codes: inspect, simulate, sweep")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect or construct classical codes
    #[command(subcommand)]
    Code(CodeCommand),
    /// Write the amplitudes of an encoded basis state
    Encode(EncodeArgs),
    /// Inject Pauli errors into an encoded state and run one correction cycle
    Correct(CorrectArgs),
    /// Run the Toffoli gadget on an encoded basis input
    Toffoli(ToffoliArgs),
    /// Run a Monte Carlo sweep from a JSON config
    Experiment(ExperimentArgs),
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Parameters and classification of a code file
    Info {
        file: PathBuf,
        /// Write the summary as JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reed-Muller code RM(r, m), optionally punctured
    Rm {
        r: usize,
        m: usize,
        /// Coordinate to delete; the last one when given without a value
        #[arg(long, num_args = 0..=1, default_missing_value = "last")]
        puncture: Option<String>,
        /// Write the generator as a code file
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    S,
    C,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    file: PathBuf,
    #[arg(long, default_value = "0", value_parser = parse_bit, action = ArgAction::Set)]
    logical: bool,
    #[arg(long, value_enum, default_value_t = BasisArg::S)]
    basis: BasisArg,
    /// Write the state dump here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CorrectArgs {
    file: PathBuf,
    /// Error to inject, e.g. X@3; repeatable
    #[arg(long, required = true, value_parser = parse_injection)]
    inject: Vec<Injection>,
    /// Logical value of the encoded input
    #[arg(long, default_value = "0", value_parser = parse_bit, action = ArgAction::Set)]
    logical: bool,
    /// Physical error rate during the correction cycle
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    #[arg(long, env = "FTQC_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the correction report as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ToffoliArgs {
    /// Three input bits x y z; the gadget maps |x y z⟩ to |x y z+xy⟩
    #[arg(long, value_parser = parse_input)]
    input: [bool; 3],
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    #[arg(long, env = "FTQC_SEED", default_value_t = 0)]
    seed: u64,
    /// Code file; the bundled 7-qubit code when absent
    #[arg(long)]
    code: Option<PathBuf>,
    /// Write the gadget report as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    config: PathBuf,
    /// Physical error rates, replacing the config's list
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, env = "FTQC_SEED")]
    seed: Option<u64>,
    /// Base path for the .csv and .json results
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
struct Injection {
    pauli: char,
    pos: usize,
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.pauli, self.pos)
    }
}

fn parse_bit(s: &str) -> Result<bool, String> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(format!("expected 0 or 1, got {s:?}")),
    }
}

fn parse_injection(s: &str) -> Result<Injection, String> {
    let (p, pos) = s.split_once('@').ok_or_else(|| format!("expected PAULI@POS, got {s:?}"))?;
    let pauli = match p.to_ascii_uppercase().as_str() {
        "X" => 'X',
        "Y" => 'Y',
        "Z" => 'Z',
        _ => return Err(format!("unknown Pauli {p:?}")),
    };
    let pos = pos.parse().map_err(|e| format!("bad position {pos:?}: {e}"))?;
    Ok(Injection { pauli, pos })
}

fn parse_input(s: &str) -> Result<[bool; 3], String> {
    let bits: Vec<bool> = s.chars().map(|c| parse_bit(&c.to_string())).collect::<Result<_, _>>()?;
    bits.try_into().map_err(|_| format!("expected three bits, got {s:?}"))
}

fn bits_string(index: usize, k: usize) -> String {
    (0..k).map(|i| if (index >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

fn write_artifact(path: &Path, contents: &str) -> ftqc::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        with_path(dir, std::fs::create_dir_all(dir).map_err(Error::from))?;
    }
    with_path(path, std::fs::write(path, contents).map_err(Error::from))
}

/// Names the file in I/O errors.
fn with_path<T>(path: &Path, r: ftqc::Result<T>) -> ftqc::Result<T> {
    r.map_err(|e| match e {
        Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), format!("{}: {io}", path.display()))),
        e => e,
    })
}

fn load_code(path: &Path) -> ftqc::Result<LinearCode> {
    with_path(path, read_code(path))
}

fn load_css(path: &Path) -> ftqc::Result<CssCode> {
    CssCode::new(load_code(path)?)
}

fn ideal_machine(state: SparseState, seed: u64, p: f64) -> ftqc::Result<Machine> {
    let model = if p == 0.0 { NoiseModel::noiseless() } else { NoiseModel::new(p)? };
    Ok(Machine::new(state, model, RngStream::new(seed, 0)))
}

fn code_summary(code: &LinearCode) -> ftqc::Result<serde_json::Value> {
    let class = code.classify()?;
    Ok(json!({
        "n": code.n(),
        "k": code.k(),
        "d": code.min_distance()?,
        "t": code.correctable_errors()?,
        "contains_dual": class.contains_dual,
        "self_dual": class.self_dual,
        "doubly_even": class.doubly_even,
        "weight_distribution": code.weight_distribution()?,
    }))
}

fn print_summary(code: &LinearCode) -> ftqc::Result<serde_json::Value> {
    let s = code_summary(code)?;
    println!("n={} k={} d={} contains_dual={}", s["n"], s["k"], s["d"], s["contains_dual"]);
    println!("t={} self_dual={} doubly_even={}", s["t"], s["self_dual"], s["doubly_even"]);
    Ok(s)
}

fn code_info(file: &Path, out: Option<&Path>) -> ftqc::Result<()> {
    let summary = print_summary(&load_code(file)?)?;
    if let Some(out) = out {
        write_artifact(out, &(serde_json::to_string_pretty(&summary)? + "\n"))?;
    }
    Ok(())
}

fn code_rm(r: usize, m: usize, puncture: Option<&str>, out: Option<&Path>) -> ftqc::Result<()> {
    let mut code = reed_muller(r, m)?;
    let mut comment = format!("RM({r},{m})");
    if let Some(coord) = puncture {
        let coord = match coord {
            "last" => code.n() - 1,
            c => c
                .parse()
                .map_err(|e| Error::InvalidArgument(format!("bad puncture coordinate {c:?}: {e}")))?,
        };
        code = code.puncture(coord)?;
        comment.push_str(&format!(" punctured at {coord}"));
    }
    print_summary(&code)?;
    let text = format_code(&code, &[&comment]);
    match out {
        Some(out) => write_artifact(out, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn encode(args: &EncodeArgs) -> ftqc::Result<()> {
    let code = load_css(&args.file)?;
    let state = match args.basis {
        BasisArg::S => code.logical_state(args.logical),
        BasisArg::C => code.c_state(args.logical),
    };
    let dump = state.dump();
    match &args.out {
        Some(out) => {
            write_artifact(out, &dump)?;
            let name = if args.basis == BasisArg::S { 's' } else { 'c' };
            println!(
                "|{name}{}⟩: {} qubits, {} basis states -> {}",
                u8::from(args.logical),
                state.num_qubits(),
                state.support_size(),
                out.display()
            );
        }
        None => print!("{dump}"),
    }
    Ok(())
}

fn correct(args: &CorrectArgs) -> ftqc::Result<()> {
    let proto = Protocol::new(load_css(&args.file)?);
    let n = proto.code.n();
    let block = Block::new(0, n);
    let start = proto.code.logical_state(args.logical);
    let mut m = ideal_machine(start.clone(), args.seed, args.p)?;
    for inj in &args.inject {
        if inj.pos >= n {
            return Err(Error::InvalidArgument(format!("position {} outside a {n}-qubit block", inj.pos)));
        }
        let gate = match inj.pauli {
            'X' => StandardGate::X,
            'Y' => StandardGate::Y,
            _ => StandardGate::Z,
        };
        m.apply_ideal(gate, &[inj.pos])?;
    }
    let report = proto.correct_block(&mut m, block)?;
    let fidelity = m.state().fidelity(&start)?;
    let syndromes: Vec<_> = report
        .syndromes
        .iter()
        .map(|s| json!({ "basis": s.basis, "syndrome": s.accepted.map(|w| bits_string(w as usize, proto.code.check_masks().len())) }))
        .collect();
    println!(
        "injected {} on |s{}⟩ (seed {}, p {})",
        args.inject.iter().map(Injection::to_string).collect::<Vec<_>>().join(" "),
        u8::from(args.logical),
        args.seed,
        args.p
    );
    for s in &syndromes {
        println!("syndrome {}: {}", s["basis"].as_str().unwrap_or("?"), s["syndrome"].as_str().unwrap_or("none"));
    }
    let corrections = if report.corrections.is_empty() { "none".to_string() } else { report.corrections.join(" ") };
    println!("decoded corrections: {corrections}");
    println!("fidelity: {fidelity:.12}");
    if let Some(out) = &args.out {
        let artifact = json!({
            "seed": args.seed,
            "p": args.p,
            "logical": u8::from(args.logical),
            "injected": args.inject.iter().map(Injection::to_string).collect::<Vec<_>>(),
            "syndromes": syndromes,
            "corrections": report.corrections,
            "fidelity": fidelity,
            "report": report,
        });
        write_artifact(out, &(serde_json::to_string_pretty(&artifact)? + "\n"))?;
    }
    Ok(())
}

/// Most likely basis string of decoded register amplitudes, with its probability.
fn most_likely(amps: &[Complex64]) -> (usize, f64) {
    amps.iter()
        .enumerate()
        .map(|(i, a)| (i, a.norm_sqr()))
        .fold((0, -1.0), |best, x| if x.1 > best.1 { x } else { best })
}

fn toffoli(args: &ToffoliArgs) -> ftqc::Result<()> {
    let code = match &args.code {
        Some(path) => load_css(path)?,
        None => CssCode::steane(),
    };
    let proto = Protocol::new(code);
    let n = proto.code.n();
    let input: usize = args.input.iter().enumerate().map(|(i, &b)| usize::from(b) << i).sum();
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[input] = Complex64::new(1.0, 0.0);
    let start = proto.code.encode_register(&amps)?;
    let mut m = ideal_machine(start, args.seed, args.p)?;
    let (out, report): (_, GadgetReport) =
        proto.toffoli(&mut m, Block::new(0, n), Block::new(n, n), Block::new(2 * n, n))?;
    // Leftover correctable faults are removed before reading the result.
    m.set_model(NoiseModel::noiseless());
    for &b in &out.blocks {
        proto.correct_block(&mut m, b)?;
    }
    let decoded = match proto.code.decode_register(m.state(), &out.blocks) {
        Ok(a) => Some(most_likely(&a)),
        Err(Error::Leakage { .. } | Error::NotProduct(_)) => None,
        Err(e) => return Err(e),
    };
    let input_bits = bits_string(input, 3);
    let output = decoded.map(|(i, _)| bits_string(i, 3));
    let probability = decoded.map(|(_, pr)| pr);
    match (&output, probability) {
        (Some(o), Some(pr)) => println!("toffoli {input_bits} -> {o} (probability {pr:.12}, seed {}, p {})", args.seed, args.p),
        _ => println!("toffoli {input_bits} -> undecodable (seed {}, p {})", args.seed, args.p),
    }
    println!("gates {} measurements {} retries {}", report.gates, report.measurements, report.retries);
    if let Some(path) = &args.out {
        let artifact = json!({
            "seed": args.seed,
            "p": args.p,
            "input": input_bits,
            "output": output,
            "probability": probability,
            "report": report,
        });
        write_artifact(path, &(serde_json::to_string_pretty(&artifact)? + "\n"))?;
    }
    Ok(())
}

/// Returns whether some sweep point saturated on gadget aborts.
fn experiment(args: &ExperimentArgs) -> ftqc::Result<bool> {
    let text = with_path(&args.config, std::fs::read_to_string(&args.config).map_err(Error::from))?;
    let mut config: ExperimentConfig = serde_json::from_str(&text)?;
    if let Some(p) = &args.p {
        config.p_values = p.clone();
    }
    if let Some(trials) = args.trials {
        config.trials = trials;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(out) = &args.out {
        config.output = Some(out.clone());
    }
    // Relative paths inside the config are relative to the config file.
    let base = args.config.parent().unwrap_or(Path::new(""));
    if let Some(code) = config.code_file.as_mut().filter(|c| c.is_relative()) {
        *code = base.join(&*code);
    }
    config.validate()?;
    let result = run_experiment(&config)?;
    println!("{:?} sweep, seed {}, {} trials per point", config.kind, config.seed, config.trials);
    println!("{:>10} {:>9} {:>12} {:>25} {:>8}", "p", "failures", "rate", "99% interval", "aborted");
    for r in &result.records {
        println!(
            "{:>10} {:>9} {:>12.4e} {:>12.4e}..{:<11.4e} {:>8}",
            r.p, r.failures, r.rate, r.ci_lo, r.ci_hi, r.aborted
        );
        if let Some(b) = &r.baseline {
            println!("{:>10} {:>9} {:>12.4e}  (unencoded baseline)", "", b.failures, b.rate);
        }
    }
    if let Some(fit) = &result.fit {
        println!("slope {:.3} +/- {:.3}", fit.slope, fit.slope_stderr);
    }
    for note in &result.notes {
        println!("note: {note}");
    }
    if let Some(out) = &config.output {
        let (csv, json) = export_results(&result, out)?;
        println!("wrote {} and {}", csv.display(), json.display());
    }
    Ok(result.abort_saturated())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GadgetAbort { .. } | Error::SyndromeFailure { .. } => EXIT_ABORT,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Code(CodeCommand::Info { file, out }) => code_info(file, out.as_deref()),
        Command::Code(CodeCommand::Rm { r, m, puncture, out }) => code_rm(*r, *m, puncture.as_deref(), out.as_deref()),
        Command::Encode(args) => encode(args),
        Command::Correct(args) => correct(args),
        Command::Toffoli(args) => toffoli(args),
        Command::Experiment(args) => match experiment(args) {
            Ok(true) => {
                eprintln!("error: every trial at some p ended in a gadget abort");
                return EXIT_ABORT;
            }
            other => other.map(|_| ()),
        },
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
