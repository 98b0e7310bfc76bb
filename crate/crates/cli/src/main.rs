//! Command-line front end: single computations, batch convergence reports,
//! the verification suite, and cache management.

mod output;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use moduli_core::correlators::Correlators;
use moduli_core::float::DEFAULT_DIGITS;
use moduli_core::harmonic::{self, SeriesKind};
use moduli_core::{graphs, sv, volumes};

use output::{Format, SvcJson, VolumeJson};

#[derive(Parser, Debug)]
#[command(
    name = "moduli",
    about = "Exact psi-class correlators, Masur-Veech volumes, and Siegel-Veech constants",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Float precision in decimal digits.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS)]
    precision: u32,

    /// Correlator cache file (default: the MODULI_CACHE environment
    /// variable). Loaded before computing, saved afterwards.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Worker thread count (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalized and raw intersection numbers <d>_{g,n}.
    Correlator {
        #[arg(long)]
        g: u32,
        /// Comma-separated exponent tuple, e.g. --d 4 or --d 2,1,0.
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
    },
    /// Masur-Veech volume of the principal stratum Q_{g,n}.
    Volume {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
        /// Restrict to the one-vertex graph with E self-loops: prints its
        /// closed-form contribution cross-checked against the pipeline.
        #[arg(long = "E")]
        e: Option<u32>,
    },
    /// Area Siegel-Veech constant and Lyapunov exponent sum.
    Svc {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
    },
    /// Harmonic sums H_k(N), Z_k(N) and their weighted limit sums.
    Hsum {
        /// Order k; omit to print the weighted sums over k <= omega ln N.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long = "N")]
        n_cap: u64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
    },
    /// Stable graphs of genus g with n legs.
    Graphs {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
    },
    /// Convergence report: correlator, volume, and Siegel-Veech trends.
    Report {
        /// Largest genus to include.
        #[arg(long = "max-g", default_value_t = 4)]
        max_g: u32,
        /// Width parameter for the sampled exponent sets (n < epsilon g^(1/2)).
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        /// Random exponent samples per (g, n) cell.
        #[arg(long = "N", default_value_t = 6)]
        samples: u64,
    },
    /// Run verification suites; any exact-inequality violation is fatal.
    Verify {
        /// all, numeric, correlators, walk, harmonic, graphs, volumes, sv.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Dimension cap for the exhaustive correlator bound scan.
        #[arg(long = "max-dim", default_value_t = 9)]
        max_dim: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Usage problems exit 64; --help / --version exit 0.
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    #[cfg(feature = "parallel")]
    if let Some(threads) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized");
        }
    }
    #[cfg(not(feature = "parallel"))]
    if cli.threads.is_some() {
        eprintln!("note: built without the parallel feature; --threads ignored");
    }

    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn cache_path(cli: &Cli) -> Option<PathBuf> {
    cli.cache
        .clone()
        .or_else(|| std::env::var_os("MODULI_CACHE").map(PathBuf::from))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let correlators = Correlators::new();
    let cache = cache_path(&cli);
    if let Some(path) = &cache {
        if path.exists() {
            correlators.load_cache(path)?;
        }
    }
    let digits = cli.precision;
    let format = cli.format;

    let exit = match &cli.command {
        Command::Correlator { g, d } => {
            let normalized = correlators.normalized(*g, d)?;
            let raw = correlators.raw(*g, d)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "normalized": normalized.to_string(),
                        "raw": raw.to_string(),
                    })
                ),
                Format::Csv => {
                    println!("g,d,normalized,raw");
                    let ds: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                    println!("{},{},{},{}", g, ds.join(" "), normalized, raw);
                }
                Format::Text => {
                    println!("normalized = {normalized}");
                    println!("raw        = {raw}");
                }
            }
            ExitCode::SUCCESS
        }
        Command::Volume { g, n, e: None } => {
            let breakdown = volumes::volume_breakdown(&correlators, *g, *n)?;
            output::print_volume(&VolumeJson::build(&breakdown, digits), format);
            ExitCode::SUCCESS
        }
        Command::Volume { g, n, e: Some(e) } => {
            let closed = volumes::one_vertex_closed_form(&correlators, *g, *n, *e)?;
            let graph = volumes::one_vertex_graph(*g, *n, *e)?;
            let pipeline = volumes::graph_contribution(&correlators, &graph, *g, *n)?;
            output::print_one_vertex(*g, *n, *e, &closed, closed == pipeline, digits, format);
            ExitCode::SUCCESS
        }
        Command::Svc { g, n } => {
            let decomposition = sv::c_area(&correlators, *g, *n)?;
            let lyapunov = sv::lyapunov_sum_from(&decomposition)?;
            output::print_svc(&SvcJson::build(&decomposition, &lyapunov, digits), format);
            ExitCode::SUCCESS
        }
        Command::Hsum { k, n_cap, omega } => {
            run_hsum(*k, *n_cap, *omega, digits, format)?;
            ExitCode::SUCCESS
        }
        Command::Graphs { g, n } => {
            let list = graphs::enumerate_stable_graphs(*g, *n)?;
            output::print_graphs(*g, *n, &list, format);
            ExitCode::SUCCESS
        }
        Command::Report {
            max_g,
            epsilon,
            samples,
        } => {
            let rows = report::convergence_report(
                &correlators,
                *max_g,
                *epsilon,
                *samples,
                digits,
            )?;
            output::print_report(&rows, format);
            ExitCode::SUCCESS
        }
        Command::Verify { suite, max_dim } => {
            let results = verify::run_suites(&correlators, suite, *max_dim, digits)?;
            let mut failed = false;
            for check in &results {
                let status = if check.passed { "PASS" } else { "FAIL" };
                println!("{status} {} {}", check.name, check.detail);
                failed |= !check.passed;
            }
            if failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
    };

    if let Some(path) = &cache {
        correlators.save_cache(path)?;
    }
    Ok(exit)
}

fn run_hsum(
    k: Option<u32>,
    n_cap: u64,
    omega: f64,
    digits: u32,
    format: Format,
) -> anyhow::Result<()> {
    match k {
        Some(k) => {
            // Exact values where the composition enumeration is feasible,
            // otherwise the series tables.
            let (h, z) = if n_cap <= 60 {
                (
                    format!("{}", harmonic::harmonic_h_exact(k, n_cap)),
                    format!("{}", harmonic::harmonic_z_exact(k, n_cap)),
                )
            } else {
                (
                    format!(
                        "{:.15e}",
                        harmonic::series_table(SeriesKind::H, k, n_cap, digits)
                            .coefficient(n_cap)
                            .to_f64()
                    ),
                    format!(
                        "{:.15e}",
                        harmonic::series_table(SeriesKind::Z, k, n_cap, digits)
                            .coefficient(n_cap)
                            .to_f64()
                    ),
                )
            };
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"kind":"hsum","k":k,"N":n_cap,"H":h,"Z":z})
                ),
                Format::Csv => {
                    println!("k,N,H,Z");
                    println!("{k},{n_cap},{h},{z}");
                }
                Format::Text => {
                    println!("H_{k}({n_cap}) = {h}");
                    println!("Z_{k}({n_cap}) = {z}");
                }
            }
        }
        None => {
            let h = harmonic::weighted_sum(SeriesKind::H, n_cap, omega, digits);
            let z = harmonic::weighted_sum(SeriesKind::Z, n_cap, omega, digits);
            let h_limit = 2.0 / std::f64::consts::PI.sqrt();
            let z_limit = 2.0f64.powf(1.5) / std::f64::consts::PI.sqrt();
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "kind": "weighted_sums", "N": n_cap, "omega": omega,
                        "H": h, "H_limit": h_limit, "H_deviation": (h - h_limit).abs(),
                        "Z": z, "Z_limit": z_limit, "Z_deviation": (z - z_limit).abs(),
                    })
                ),
                Format::Csv => {
                    println!("kind,N,omega,value,limit,deviation");
                    println!("H,{n_cap},{omega},{h},{h_limit},{}", (h - h_limit).abs());
                    println!("Z,{n_cap},{omega},{z},{z_limit},{}", (z - z_limit).abs());
                }
                Format::Text => {
                    println!(
                        "H weighted sum at N = {n_cap}: {h:.10} (limit {h_limit:.10}, deviation {:.3e})",
                        (h - h_limit).abs()
                    );
                    println!(
                        "Z weighted sum at N = {n_cap}: {z:.10} (limit {z_limit:.10}, deviation {:.3e})",
                        (z - z_limit).abs()
                    );
                }
            }
        }
    }
    Ok(())
}
