use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sofic_cli::format::{parse, Presentation};
use sofic_cli::output::{cover_text, dot, matrix_text, report_text};
use sofic_cli::Corruption;
use sofic_core::isocheck::{verify_all, DEFAULT_MAX_WORD_LEN};
use sofic_core::krieger::{
    build_cover, edge_matrix, enumerate_survivor_sets, realized_survivor_sets,
    transition_semigroup, KriegerCover,
};
use sofic_core::ktheory::k_groups;
use sofic_core::shift::{words_of_length, LabeledGraph};
use sofic_core::VertexSet;

/// Left Krieger covers of sofic shifts, their edge matrices and K-groups,
/// and finite checks of the Cuntz-Krieger identities.
#[derive(Parser)]
#[command(name = "sofic", version)]
struct Cli {
    /// Longest word used by `verify`.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WORD_LEN)]
    max_word_len: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the classes, representatives, and edges of the cover.
    Cover {
        file: PathBuf,
        /// Also write the cover as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the edge matrix of the cover.
    Matrix { file: PathBuf },
    /// Run every verification family; exit 1 if any fails.
    Verify {
        file: PathBuf,
        #[arg(long, hide = true)]
        corrupt: Option<Corruption>,
    },
    /// Print K0 and K1 of the Cuntz-Krieger algebra of the cover.
    Ktheory { file: PathBuf },
    /// Compare realized survivor sets against brute-force ray enumeration.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        bound: usize,
    },
    /// List the admissible words of length k.
    Words {
        file: PathBuf,
        #[arg(short)]
        k: usize,
    },
}

/// Input errors exit with 2, failed checks with 1.
enum Failure {
    Input(String),
    Check(String),
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn load(path: &Path) -> Result<Presentation, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LabeledGraph, Failure> {
    load(path)?.to_graph().map_err(input)
}

fn load_cover(path: &Path) -> Result<KriegerCover, Failure> {
    build_cover(&load_graph(path)?).map_err(input)
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        "set"
    } else {
        "sets"
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cover { file, dot: dot_path } => {
            let cover = load_cover(&file)?;
            print!("{}", cover_text(&cover));
            if let Some(path) = dot_path {
                fs::write(&path, dot(&cover))
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
        }
        Command::Matrix { file } => {
            let b = edge_matrix(&load_cover(&file)?).map_err(input)?;
            print!("{}", matrix_text(&b));
        }
        Command::Verify { file, corrupt } => {
            let mut cover = load_cover(&file)?;
            if let Some(c) = corrupt {
                cover = c.apply(&cover).map_err(Failure::Input)?;
            }
            let report = verify_all(&cover, cli.max_word_len);
            print!("{}", report_text(&report));
            if !report.passed() {
                return Err(Failure::Check(format!(
                    "{} verification families failed",
                    report.failed_families()
                )));
            }
        }
        Command::Ktheory { file } => {
            let b = edge_matrix(&load_cover(&file)?).map_err(input)?;
            let (k0, k1) = k_groups(&b);
            println!("K0 = {k0}, K1 = {k1}");
        }
        Command::Oracle { file, bound } => {
            let cover = load_cover(&file)?;
            let g = cover.presentation();
            let semigroup = transition_semigroup(g).map_err(input)?;
            let realized: Vec<VertexSet> = realized_survivor_sets(g, &semigroup)
                .into_iter()
                .map(|r| r.set)
                .collect();
            let enumerated: Vec<VertexSet> = enumerate_survivor_sets(g, bound).into_iter().collect();
            if realized == enumerated {
                println!("{} {} via both methods", realized.len(), plural(realized.len()));
            } else {
                println!(
                    "semigroup: {} {}, enumeration: {} {}",
                    realized.len(),
                    plural(realized.len()),
                    enumerated.len(),
                    plural(enumerated.len())
                );
                for c in realized.iter().filter(|c| !enumerated.contains(c)) {
                    println!("only via semigroup: {c:?}");
                }
                for c in enumerated.iter().filter(|c| !realized.contains(c)) {
                    println!("only via enumeration: {c:?}");
                }
                return Err(Failure::Check("survivor sets differ".into()));
            }
        }
        Command::Words { file, k } => {
            let g = load_graph(&file)?;
            for w in words_of_length(&g, k) {
                println!("{}", g.alphabet().render(&w));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("sofic: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("sofic: {msg}");
            ExitCode::from(2)
        }
    }
}
