use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use clifford_synth::circuit::Circuit;
use clifford_synth::codes::{css_build, load_code, save_code, CssSpec, StabilizerCode};
use clifford_synth::decompose::{decompose, factors_to_circuit, ElementaryFactor};
use clifford_synth::gf2::{BinMatrix, SymplecticMatrix};
use clifford_synth::par::{self, Execution};
use clifford_synth::sympsolve::DEFAULT_CAP;
use clifford_synth::synth::{synthesize, CliffordSpec, Mode, Policy, SynthesisOptions};
use clifford_synth::verify::verify_solution;
use clifford_synth::Error;

/// Synthesize, decompose and verify logical Clifford circuits for
/// stabilizer codes.
#[derive(Parser, Debug)]
#[command(name = "clifford-synth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate every physical circuit for a logical operator.
    Synth(SynthArgs),
    /// Check a circuit against a logical operator.
    Verify(VerifyArgs),
    /// Factor a symplectic matrix and lower it to gates.
    Decompose(DecomposeArgs),
    /// Build a CSS code file from classical matrices.
    Css(CssArgs),
    /// Print code parameters.
    Info(InfoArgs),
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long)]
    spec: PathBuf,
    /// Keep every solution (default).
    #[arg(long, conflicts_with = "min_depth")]
    all: bool,
    /// Keep only the shallowest circuit.
    #[arg(long)]
    min_depth: bool,
    /// Fix every stabilizer generator, ignoring generator images in the spec.
    #[arg(long, conflicts_with = "normalize")]
    centralize: bool,
    /// Require the spec to list generator images.
    #[arg(long)]
    normalize: bool,
    /// Directory for the circuit files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
    /// Largest number of solutions held in memory.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    circuit: PathBuf,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    /// Symplectic matrix in text form.
    #[arg(long)]
    matrix: PathBuf,
    /// Circuit file to write; printed to stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CssArgs {
    /// Generator matrix of the dual code, for a code containing its dual.
    #[arg(long, conflicts_with_all = ["c1", "c2"])]
    hc: Option<PathBuf>,
    /// Generator matrix of the larger code of a nested pair.
    #[arg(long, requires = "c2")]
    c1: Option<PathBuf>,
    /// Generator matrix of the smaller code of a nested pair.
    #[arg(long, requires = "c1")]
    c2: Option<PathBuf>,
    #[arg(long)]
    gx: Option<PathBuf>,
    #[arg(long)]
    gz: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct InfoArgs {
    #[arg(long)]
    code: PathBuf,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(msg) => Failure::Verification(msg),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<BinMatrix, Failure> {
    BinMatrix::parse_text(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(code: &Path, spec: &Path) -> Result<(StabilizerCode, CliffordSpec), Failure> {
    let code = load_code(code)?;
    let spec = CliffordSpec::parse(&read(spec)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", spec.display())))?;
    Ok((code, spec))
}

fn cmd_synth(args: &SynthArgs) -> Outcome {
    let (code, mut spec) = load(&args.code, &args.spec)?;
    if args.centralize {
        spec.policy = Policy::Centralize;
    }
    if args.normalize && spec.policy == Policy::Centralize {
        return Err(Failure::Input(
            "--normalize needs generator images in the spec".into(),
        ));
    }
    let execution = match args.jobs {
        Some(1) => Execution::Sequential,
        _ => Execution::default(),
    };
    let opts = SynthesisOptions {
        mode: if args.min_depth {
            Mode::MinDepth
        } else {
            Mode::All
        },
        execution,
        cap: args.cap,
    };
    let results = match args.jobs {
        Some(n) if n > 1 => par::with_threads(n, || synthesize(&code, &spec, &opts)),
        _ => synthesize(&code, &spec, &opts),
    }?;

    let mut summary = String::new();
    if args.min_depth {
        writeln!(summary, "minimum-depth solution").unwrap();
    } else {
        writeln!(summary, "{} solutions", results.len()).unwrap();
    }
    for r in &results {
        writeln!(
            summary,
            "solution {}: depth {} gates {} correction {}",
            r.index,
            r.depth,
            r.circuit.len(),
            r.correction
        )
        .unwrap();
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        for r in &results {
            let name = if args.min_depth {
                "min_depth.circ".to_string()
            } else {
                format!("solution_{:04}.circ", r.index)
            };
            write(&dir.join(name), &r.circuit.serialize())?;
        }
    } else if args.min_depth {
        if let Some(r) = results.first() {
            summary.push_str(&r.circuit.serialize());
        }
    }
    Ok(summary)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let (code, spec) = load(&args.code, &args.spec)?;
    let circuit = Circuit::parse(&read(&args.circuit)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", args.circuit.display())))?;
    let report = verify_solution(&code, &spec, &circuit)?;
    if report.passed() {
        Ok(format!("{report}verified\n"))
    } else {
        Err(Failure::Verification(format!(
            "{report}{} rows failed",
            report.failures().len()
        )))
    }
}

fn describe(factor: &ElementaryFactor) -> String {
    match factor {
        ElementaryFactor::Omega => "Omega\n".into(),
        ElementaryFactor::GK(k) => format!("G_k k={k}\n"),
        ElementaryFactor::AQ(q) => format!("A_Q\n{}", q.to_text()),
        ElementaryFactor::TR(r) => format!("T_R\n{}", r.to_text()),
        ElementaryFactor::OmegaTROmega(r) => format!("Omega T_R Omega\n{}", r.to_text()),
    }
}

fn cmd_decompose(args: &DecomposeArgs) -> Outcome {
    let f = SymplecticMatrix::new(read_matrix(&args.matrix)?)?;
    let factors = decompose(&f)?;
    let circuit = factors_to_circuit(&factors, f.m())?;
    let mut out = format!("{} factors\n", factors.len());
    for factor in &factors {
        out.push_str(&describe(factor));
    }
    match &args.out {
        Some(path) => write(path, &circuit.serialize())?,
        None => out.push_str(&circuit.serialize()),
    }
    Ok(out)
}

fn cmd_css(args: &CssArgs) -> Outcome {
    let opt = |p: &Option<PathBuf>| p.as_deref().map(read_matrix).transpose();
    let gx = opt(&args.gx)?;
    let gz = opt(&args.gz)?;
    let spec = match (&args.hc, &args.c1, &args.c2) {
        (Some(hc), None, None) => CssSpec::SelfOrthogonal {
            hc: read_matrix(hc)?,
            gx,
            gz,
        },
        (None, Some(c1), Some(c2)) => CssSpec::Nested {
            c1: read_matrix(c1)?,
            c2: read_matrix(c2)?,
            gx,
            gz,
        },
        _ => {
            return Err(Failure::Input(
                "give either --hc or both --c1 and --c2".into(),
            ))
        }
    };
    let code = css_build(&spec)?;
    save_code(&args.out, &code)?;
    Ok(info_line(&code))
}

fn info_line(code: &StabilizerCode) -> String {
    format!(
        "m={} k={} logical={} solutions-per-operator={}\n",
        code.num_qubits(),
        code.num_stabilizers(),
        code.num_logical(),
        code.solutions_per_operator()
    )
}

fn cmd_info(args: &InfoArgs) -> Outcome {
    Ok(info_line(&load_code(&args.code)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Synth(a) => cmd_synth(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Css(a) => cmd_css(a),
        Command::Info(a) => cmd_info(a),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
