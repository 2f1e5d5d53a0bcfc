use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use weakdiam_core::graph::{Coloring, Graph};

use weakdiam::export::{export, Format};
use weakdiam::generate::{generate, GenParams, Kind};
use weakdiam::instance::{load_instance, load_result, save_instance, save_result};
use weakdiam::pipeline::weak_diameter_coloring;
use weakdiam::profile::run_profile;
use weakdiam::verifier::verify_result;

#[derive(Parser)]
#[command(name = "weakdiam", about = "Certified weak-diameter colorings of geometric intersection graphs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance file.
    Gen {
        #[arg(long, default_value = "disks")]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        dimension: usize,
        #[arg(long, default_value_t = 400)]
        points: usize,
        #[arg(long, default_value_t = 40)]
        objects: usize,
        #[arg(long, default_value_t = 2.0)]
        radius_min: f64,
        #[arg(long, default_value_t = 3.0)]
        radius_max: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Color the r-th power of the instance's intersection graph and
    /// certify the result.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        out: PathBuf,
        /// Worker thread cap (also: WEAKDIAM_THREADS).
        #[arg(long)]
        threads: Option<usize>,
        /// Use the 2^n-family product grid covers instead of the default
        /// n+1 shifted families.
        #[arg(long)]
        product_covers: bool,
    },
    /// Re-verify a result file against its instance from scratch.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        result: PathBuf,
    },
    /// Measure empirical space-filling counts for a query file.
    Profile {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        queries: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a solved instance as dot, svg or json.
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        result: PathBuf,
        #[arg(long)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen {
            kind,
            dimension,
            points,
            objects,
            radius_min,
            radius_max,
            seed,
            out,
        } => {
            let params = GenParams {
                kind,
                dimension,
                points,
                objects,
                radius_min,
                radius_max,
                seed,
            };
            let (instance, report) = generate(&params)?;
            save_instance(&instance, &out)?;
            println!("wrote {} ({} points, {} objects)", out.display(), instance.space.len(), instance.system.len());
            if let Some(eta) = report.eta {
                println!("sampled objects pass the roundness check at eta = {eta}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { input, radius, out, threads, product_covers } => {
            configure_threads(threads)?;
            let instance = load_instance(&input)?;
            let solved = weak_diameter_coloring(&instance, radius, product_covers)?;
            let result = solved.to_result_file(radius);
            save_result(&result, &out)?;
            let cert = &solved.certificate;
            println!(
                "colored {} vertices with {} colors (limit {}); measured diameter {} <= bound {}",
                solved.power_graph.vertex_count(),
                cert.colors_used,
                cert.color_limit,
                cert.measured_diameter,
                cert.overall_bound
            );
            if cert.verifiers.all_passed() {
                println!("all verifiers passed");
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("verifier flags: {:?}", cert.verifiers);
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Verify { input, result } => {
            let instance = load_instance(&input)?;
            let res = load_result(&result)?;
            let report = verify_result(&instance, &res);
            println!(
                "measured diameter {}; {} colors used",
                report.measured_diameter, report.colors_used
            );
            for note in &report.notes {
                println!("note: {note}");
            }
            if report.passed() {
                println!("verification passed");
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("verification FAILED");
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Profile { input, queries, out } => {
            let instance = load_instance(&input)?;
            let report = run_profile(&instance, &queries)?;
            let text = serde_json::to_string_pretty(&report).expect("serializable");
            match out {
                Some(path) => {
                    std::fs::write(&path, text)
                        .with_context(|| format!("cannot write {}", path.display()))?;
                    println!("wrote {}", path.display());
                }
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { input, result, format, out } => {
            let instance = load_instance(&input)?;
            let res = load_result(&result)?;
            let odd = if res.radius % 2 == 0 { res.radius + 1 } else { res.radius };
            let t = (odd - 1) / 2;
            let unions =
                weakdiam_core::spacefill::shallow_union_system(&instance.system, t);
            let g: Graph = weakdiam_core::graph::intersection_graph(&unions);
            anyhow::ensure!(
                res.colors.len() == g.vertex_count(),
                "result has {} colors for a {}-vertex power graph",
                res.colors.len(),
                g.vertex_count()
            );
            let palette = res.colors.iter().copied().max().unwrap_or(1);
            let coloring = Coloring::new(res.colors.clone(), palette);
            export(&g, &coloring, format, &instance, &out)?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let n = flag.or_else(|| {
        std::env::var("WEAKDIAM_THREADS").ok().and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("thread pool already initialized")?;
    }
    Ok(())
}
