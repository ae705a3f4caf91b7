use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sullivan::commands::{to_text, MAX_TRUNCATION};
use sullivan::document::Document;
use sullivan::library::{examples_dir_from_env, resolve};
use sullivan::{parse_document, run, Command, Options};

#[derive(Parser)]
#[command(name = "sullivan", version, about = "Rational homotopy computations on CDGAs, Lie algebras and complexes")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Document path, or a name in $SULLIVAN_EXAMPLES or the built-in library.
    #[arg(long, short, global = true)]
    input: Option<String>,
    /// Truncation degree N (default 8; above 16 warns).
    #[arg(long, short, global = true)]
    truncation: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Degree window `a..b` (inclusive).
    #[arg(long, value_parser = parse_window, global = true)]
    window: Option<RangeInclusive<i64>>,
    /// Gram document for `hodge` and `number-op`.
    #[arg(long, global = true)]
    gram: Option<String>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Validate d², Leibniz, Jacobi and compatibility conditions.
    Check,
    /// Betti numbers and cycle representatives (cdga, complex or map).
    Homology,
    /// Sullivan minimal model with Hirsch stages and certificate.
    MinimalModel,
    /// Ranks of rational homotopy groups from the minimal model.
    Homotopy,
    /// Weil algebra homology and basic subcomplex.
    Weil,
    /// Chevalley–Eilenberg cohomology.
    Ce,
    /// Cone of a complex, with its contracting homotopy.
    Cone,
    /// Mapping cylinder of a chain map.
    Cyl,
    /// Mapping cone of a chain map.
    ConeMap,
    /// Harmonic forms and Hodge decomposition for a Gram inner product.
    Hodge,
    /// Check H_L = H' + N on the Fock space of a graded Lie algebra.
    NumberOp,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Check => Command::Check,
            Cmd::Homology => Command::Homology,
            Cmd::MinimalModel => Command::MinimalModel,
            Cmd::Homotopy => Command::Homotopy,
            Cmd::Weil => Command::Weil,
            Cmd::Ce => Command::Ce,
            Cmd::Cone => Command::Cone,
            Cmd::Cyl => Command::Cyl,
            Cmd::ConeMap => Command::ConeMap,
            Cmd::Hodge => Command::Hodge,
            Cmd::NumberOp => Command::NumberOp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_window(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, found {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a.trim().parse().map_err(|_| format!("bad window start {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad window end {b:?}"))?;
    if a > b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok(a..=b)
}

fn load(input: &str) -> Result<Document, (u8, String)> {
    let text = resolve(input, examples_dir_from_env().as_deref()).map_err(|e| (2, e.to_string()))?;
    parse_document(&text).map_err(|e| (2, format!("{input}: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(input) = cli.input.as_deref() else {
        eprintln!("error: --input is required");
        return ExitCode::from(2);
    };
    let doc = match load(input) {
        Ok(d) => d,
        Err((code, m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(code);
        }
    };
    let gram = match cli.gram.as_deref().map(load) {
        None => None,
        Some(Ok(Document::Gram(g))) => Some(g),
        Some(Ok(other)) => {
            eprintln!("error: --gram expects a gram document, found {}", other.kind());
            return ExitCode::from(2);
        }
        Some(Err((code, m))) => {
            eprintln!("error: {m}");
            return ExitCode::from(code);
        }
    };
    let opts = Options { truncation: cli.truncation, window: cli.window.clone(), gram };
    let n = sullivan::commands::truncation_for(&doc, &opts);
    if n > MAX_TRUNCATION {
        eprintln!("warning: truncation {n} exceeds {MAX_TRUNCATION}; expect combinatorial growth in time and memory");
    }
    match run(cli.command.into(), &doc, &opts) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize")),
                Format::Text => print!("{}", to_text(&report)),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
