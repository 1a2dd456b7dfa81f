use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toric_versal::report::{self, Command, GoldenStatus, Options};
use toric_versal::{acceptance, scheme, Error};

/// Minkowski summands, versal deformations and graded T1/T2 of the toric
/// Gorenstein singularity over a lattice polytope.
///
/// Exit codes: 0 success, 2 invalid input, 3 failed internal check.
#[derive(Parser)]
#[command(name = "toric-versal", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Every section below, for one polytope.
    Analyze(RunArgs),
    /// Scheme generators, base presentation, decompositions and components.
    Scheme(RunArgs),
    /// Hilbert basis, eta table and equations of the singularity.
    Singularity(RunArgs),
    /// Lifted equations of the versal family and the flatness check.
    Versal(RunArgs),
    /// Total spaces over the reduced components.
    Components(RunArgs),
    /// Graded dimensions of T1, T2 and W.
    Cohomology(RunArgs),
    /// Run the bundled polytopes against their golden files, then the
    /// acceptance checks.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Polytope file: {"name": optional string, "vertices": [[int, ...], ...]}.
    input: PathBuf,
    /// Print the machine block as JSON instead of the text rendering.
    #[arg(long)]
    json: bool,
    /// Largest number of Hilbert-basis elements summed into a candidate
    /// degree when generating equations.
    #[arg(long, value_name = "B", default_value_t = toric_versal::versal::DEFAULT_DEGREE_BOUND)]
    degree_bound: usize,
    /// Specialise the lifted family to the base presentation (needs a
    /// monomial residual ideal, e.g. the fat point of Q4).
    #[arg(long)]
    base_epsilon: bool,
    /// Multiple k of R* to report (repeatable). Default: 1 to max k0 + 1.
    #[arg(long = "degree", value_name = "K")]
    degrees: Vec<u32>,
    /// Scan the low degrees R = [c, 1 - max <v,c>] with |c_i| <= 2 in every
    /// dimension. Default: |c_i| <= 1, polygons only.
    #[arg(long)]
    all_low_degrees: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// Directory with the polytope inputs and golden files.
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Rewrite the golden files instead of comparing.
    #[arg(long)]
    bless: bool,
    /// Skip the acceptance checks.
    #[arg(long)]
    no_acceptance: bool,
}

fn options(a: &RunArgs) -> Options {
    Options {
        degree_bound: a.degree_bound,
        base_epsilon: a.base_epsilon,
        degrees: (!a.degrees.is_empty()).then(|| a.degrees.clone()),
        all_low_degrees: a.all_low_degrees,
    }
}

fn run_one(command: Command, a: &RunArgs) -> Result<String, Error> {
    if a.degree_bound < 2 {
        return Err(Error::InvalidInput("--degree-bound must be at least 2".into()));
    }
    let p = report::load_polytope(&a.input)?;
    let r = report::run(command, &p, &options(a))?;
    Ok(if a.json { report::to_json(&r.machine) } else { r.display })
}

fn default_corpus_dir() -> PathBuf {
    let local = PathBuf::from("corpus");
    if local.is_dir() {
        local
    } else {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
    }
}

fn corpus_inputs(dir: &Path) -> Result<Vec<PathBuf>, Error> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            name.ends_with(".json") && !name.ends_with(".golden.json")
        })
        .collect();
    files.sort();
    Ok(files)
}

fn run_corpus(a: &CorpusArgs) -> Result<bool, Error> {
    let dir = a.dir.clone().unwrap_or_else(default_corpus_dir);
    let mut ok = true;
    for input in corpus_inputs(&dir)? {
        let p = report::load_polytope(&input)?;
        let monomial = scheme::base_presentation(&p, &scheme::CoordinateChoice::Auto)?.monomial;
        let opts = Options { base_epsilon: monomial && p.dim == p.ambient, ..Options::default() };
        let r = report::run(Command::Analyze, &p, &opts)?;
        let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        for (ext, text) in [("golden.json", report::to_json(&r.machine)), ("golden.txt", r.display.clone())] {
            let path = dir.join(format!("{stem}.{ext}"));
            let status = report::check_golden(&path, &text, a.bless)?;
            let label = match status {
                GoldenStatus::Match => "ok",
                GoldenStatus::Written => "written",
                GoldenStatus::Mismatch => "MISMATCH",
                GoldenStatus::Missing => "MISSING",
            };
            ok &= matches!(status, GoldenStatus::Match | GoldenStatus::Written);
            println!("{label:<8} {}", path.display());
        }
    }
    if !a.no_acceptance {
        for o in acceptance::run_all() {
            println!("{}", o.line());
            ok &= o.passed();
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match &cli.command {
        Cmd::Analyze(a) => (Command::Analyze, a),
        Cmd::Scheme(a) => (Command::Scheme, a),
        Cmd::Singularity(a) => (Command::Singularity, a),
        Cmd::Versal(a) => (Command::Versal, a),
        Cmd::Components(a) => (Command::Components, a),
        Cmd::Cohomology(a) => (Command::Cohomology, a),
        Cmd::Corpus(a) => {
            return match run_corpus(a) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(3),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            };
        }
    };
    match run_one(command, args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
