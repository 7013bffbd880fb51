//! `dcamb` — build, verify, compare, and export the doubled Cambrian
//! framework of the oriented n-cycle.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 on usage errors. All output is deterministic given (n, seed).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dcamb::export;
use dcamb::fan;
use dcamb::framework::{self, LabeledQuasiGraph};
use dcamb::oracle;
use dcamb::verify;
use dcamb::DEFAULT_SEED;

#[derive(Parser)]
#[command(
    name = "dcamb",
    about = "Doubled Cambrian framework for the cyclically oriented n-cycle",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the framework and write it as JSON.
    Build {
        /// Rank of the cycle (n ≥ 3).
        #[arg(long)]
        n: usize,
        /// Output path for the JSON document.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the framework axiom checks plus the fan checks.
    Verify {
        /// Rank of the cycle (n ≥ 3). Ignored when --from is given.
        #[arg(long, required_unless_present = "from")]
        n: Option<usize>,
        /// Verify a previously exported JSON document instead of building.
        #[arg(long)]
        from: Option<PathBuf>,
        /// Number of sample points for the coverage check.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Seed for the deterministic sampler.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Optional path for the machine-readable JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build both the framework and the mutation oracle and check the
    /// exchange-graph isomorphism (B-matrices, c-vectors, g-vectors).
    Compare {
        #[arg(long)]
        n: usize,
    },
    /// Export the framework as DOT, JSON, or (n = 3) a two-chart fan SVG.
    Export {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Svg,
}

fn check_rank(n: usize) -> Result<(), String> {
    if n < 3 {
        Err(format!("--n must be at least 3, got {n}"))
    } else {
        Ok(())
    }
}

fn build_graph(n: usize) -> Result<LabeledQuasiGraph, String> {
    check_rank(n)?;
    framework::build(n).map_err(|e| e.to_string())
}

fn max_seeds() -> usize {
    std::env::var("DCAMB_MAX_SEEDS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000)
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Build { n, out } => {
            let g = build_graph(n)?;
            std::fs::write(&out, export::to_json(&g)).map_err(|e| e.to_string())?;
            println!(
                "wrote {} ({} vertices, {} edges)",
                out.display(),
                g.vertices.len(),
                g.edges.len()
            );
            Ok(true)
        }
        Command::Verify {
            n,
            from,
            samples,
            seed,
            out,
        } => {
            if samples == 0 {
                return Err("--samples must be at least 1".into());
            }
            let g = match from {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
                    export::from_json(&text).map_err(|e| e.to_string())?
                }
                None => build_graph(n.expect("clap enforces --n without --from"))?,
            };
            let mut report = verify::verify_all(&g);
            report.merge(fan::check_fan(&g, samples, seed));
            for check in &report.checks {
                let status = if check.passed { "PASS" } else { "FAIL" };
                println!("{status}  {:<16} {}", check.name, check.detail);
                if let Some(w) = &check.witness {
                    if let Some(v) = &w.vertex {
                        println!("      witness vertex: {v}");
                    }
                    if let Some((a, b)) = &w.edge {
                        println!("      witness edge: {a} -- {b}");
                    }
                    if let Some(l) = &w.label {
                        println!("      witness label: {l:?}");
                    }
                }
            }
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
                std::fs::write(&path, text + "\n").map_err(|e| e.to_string())?;
            }
            Ok(report.all_passed())
        }
        Command::Compare { n } => {
            check_rank(n)?;
            let g = build_graph(n)?;
            let ex = oracle::exchange_graph(n, max_seeds()).map_err(|e| e.to_string())?;
            let report = oracle::compare(&g, &ex);
            if report.matched {
                println!(
                    "{} = {}, isomorphism verified, c/g/B all match",
                    report.framework_vertices, report.oracle_seeds
                );
                Ok(true)
            } else {
                println!(
                    "MISMATCH ({} framework vertices, {} oracle seeds): {}",
                    report.framework_vertices,
                    report.oracle_seeds,
                    report.mismatch.as_deref().unwrap_or("unknown")
                );
                Ok(false)
            }
        }
        Command::Export { n, format, out } => {
            let g = build_graph(n)?;
            let text = match format {
                Format::Dot => export::to_dot(&g),
                Format::Json => export::to_json(&g),
                Format::Svg => export::to_svg(&g).map_err(|e| e.to_string())?,
            };
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| e.to_string())?;
                    println!("wrote {}", path.display());
                }
                None => print!("{text}"),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
