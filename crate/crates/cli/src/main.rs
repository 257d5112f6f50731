//! Command-line front end: compute a single coset poset, build the class
//! catalog, run the verification battery, or compare two orbit matrices.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use doubleflag_core::verify::{acceptance_checks, all_passed};
use doubleflag_core::{
    classify, poset_for_blocks, reduced_case_list, stability_sweep_against, statistics, Backend,
    BlockComposition, Error, FinitePoset, LabeledCase, OrbitMatrix,
};

#[derive(Parser)]
#[command(
    name = "doubleflag",
    version,
    about = "Inclusion posets of diagonal orbit closures in double flag varieties",
    long_about = "Computes, classifies, and verifies the inclusion posets of the \
                  double coset systems attached to pairs of block compositions.  \
                  Block compositions are comma-separated positive integers; the rank \
                  is always their sum.\n\nEnvironment: RAYON_NUM_THREADS bounds the \
                  worker threads used by classification and sweeps."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the coset poset of one block pair.
    Poset {
        /// Row blocks, e.g. 3,3
        #[arg(long, value_parser = parse_blocks)]
        blocks_i: BlockComposition,
        /// Column blocks, e.g. 2,2,2
        #[arg(long, value_parser = parse_blocks)]
        blocks_j: BlockComposition,
        /// Computation route; "both" cross-checks the two.
        #[arg(long, default_value = "both", value_parser = parse_backend)]
        backend: Backend,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify the reduced cases and write the catalog as JSON.
    Classify {
        /// Rows to include, e.g. 3 or 1,2,3 (default: all eight).
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<u8>>,
        /// Additionally sweep every instance of the selected rows up to
        /// this degree and report where each lands.
        #[arg(long)]
        n_max: Option<usize>,
        /// Catalog destination.
        #[arg(long, default_value = "catalog.json")]
        output: PathBuf,
    },
    /// Run the verification battery; one status line per check.
    Verify {
        /// Shrink the swept degrees and sampled suites.
        #[arg(long)]
        quick: bool,
    },
    /// Compare two orbit matrices, given as JSON rows like \[\[1,0\],\[0,1\]\].
    MatrixOrder {
        left: String,
        right: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Dot,
    Json,
}

fn parse_blocks(s: &str) -> Result<BlockComposition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A diagnostic plus the exit code it warrants: 2 for unusable input,
/// 1 for failures of the computation itself.
struct Failure {
    message: String,
    code: u8,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        let code = match error {
            Error::InvalidPermutation(_)
            | Error::InvalidBlocks(_)
            | Error::TotalMismatch(_)
            | Error::InvalidMatrix(_)
            | Error::MarginMismatch(_)
            | Error::InvalidCase(_) => 2,
            _ => 1,
        };
        Failure {
            message: error.to_string(),
            code,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Poset {
            blocks_i,
            blocks_j,
            backend,
            format,
        } => cmd_poset(&blocks_i, &blocks_j, backend, format),
        Command::Classify {
            rows,
            n_max,
            output,
        } => cmd_classify(rows, n_max, &output),
        Command::Verify { quick } => Ok(cmd_verify(quick)),
        Command::MatrixOrder { left, right } => cmd_matrix_order(&left, &right),
    }
}

fn cmd_poset(
    left: &BlockComposition,
    right: &BlockComposition,
    backend: Backend,
    format: Format,
) -> Result<ExitCode, Failure> {
    let poset = poset_for_blocks(left, right, backend)?;
    match format {
        Format::Text => print!("{}", render_text(&poset)),
        Format::Dot => print!("{}", poset.to_dot()),
        Format::Json => {
            let body = serde_json::to_string_pretty(&poset).map_err(|e| Failure {
                message: e.to_string(),
                code: 1,
            })?;
            println!("{body}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn render_text(poset: &FinitePoset) -> String {
    let k = poset.size();
    let mut out = format!("{k} element{}\n", if k == 1 { "" } else { "s" });
    for (i, label) in poset.labels().iter().enumerate() {
        out.push_str(&format!("#{i} {label}\n"));
    }
    for &(a, b) in poset.covers() {
        out.push_str(&format!("#{a} < #{b}\n"));
    }
    out
}

fn cmd_classify(
    rows: Option<Vec<u8>>,
    n_max: Option<usize>,
    output: &std::path::Path,
) -> Result<ExitCode, Failure> {
    let mut rows = rows.unwrap_or_else(|| (1..=8).collect());
    rows.sort_unstable();
    rows.dedup();
    if rows.is_empty() || rows.iter().any(|&r| !(1..=8).contains(&r)) {
        return Err(Failure {
            message: format!("rows must be within 1..=8, got {rows:?}"),
            code: 2,
        });
    }
    let cases: Vec<LabeledCase> = reduced_case_list()
        .into_iter()
        .filter(|labeled| rows.contains(&labeled.case.row()))
        .collect();
    let catalog = classify(&cases, Backend::Both)?;
    std::fs::write(output, catalog.to_json()).map_err(|e| Failure {
        message: format!("cannot write {}: {e}", output.display()),
        code: 1,
    })?;
    println!("{}", statistics(&catalog));
    if let Some(limit) = n_max {
        for &row in &rows {
            let report = stability_sweep_against(&catalog, row, limit)?;
            let counts: Vec<String> = report
                .label_counts()
                .iter()
                .map(|(label, count)| format!("{label} x{count}"))
                .collect();
            println!(
                "row {row}: {} instances up to degree {limit} -> {}",
                report.assignments.len(),
                counts.join(", ")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(quick: bool) -> ExitCode {
    let outcomes = acceptance_checks(quick);
    for outcome in &outcomes {
        println!("{}", outcome.render());
    }
    if all_passed(&outcomes) {
        return ExitCode::SUCCESS;
    }
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.name)
        .collect();
    println!(
        "{}",
        serde_json::to_string(&failed).expect("names serialize")
    );
    ExitCode::from(1)
}

fn cmd_matrix_order(left: &str, right: &str) -> Result<ExitCode, Failure> {
    let left = parse_matrix(left)?;
    let right = parse_matrix(right)?;
    let forwards = left.leq(&right)?;
    let backwards = right.leq(&left)?;
    println!(
        "{}",
        match (forwards, backwards) {
            (true, true) => "equal",
            (true, false) => "left < right",
            (false, true) => "right < left",
            (false, false) => "incomparable",
        }
    );
    Ok(ExitCode::SUCCESS)
}

fn parse_matrix(text: &str) -> Result<OrbitMatrix, Failure> {
    let rows: Vec<Vec<u32>> = serde_json::from_str(text).map_err(|e| Failure {
        message: format!("matrices are JSON arrays of rows: {e}"),
        code: 2,
    })?;
    Ok(OrbitMatrix::from_rows(rows)?)
}
