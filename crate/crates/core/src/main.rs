use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyptri::experiment::{run_audit, run_lifts, run_tree, run_triangles};
use hyptri::lifts::Verdict;
use hyptri::render::render_svg;
use hyptri::report::{to_json, write_atomic};
use hyptri::surface::SurfaceGroup;
use hyptri::tolerance::{self, Tolerances};
use hyptri::Error;

/// Closed geodesics on hyperbolic surfaces: lifts, triangles and the dual tree.
#[derive(Parser)]
#[command(name = "hyptri", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate lifts of a closed geodesic and check every triangle.
    Triangles {
        /// Preset name or path to a surface config file.
        #[arg(long)]
        surface: String,
        /// Word such as "y1 y2 Y1" (capitals are inverses).
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Axis overlap sweep and tree triangles for conjugates of one element.
    Tree {
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        f: String,
        /// Longest conjugator word to try.
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw the disk, walls, lifts and triangles as SVG.
    Render {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit quasi-isometry constants of the cell map on a ball.
    AuditQi {
        #[arg(long)]
        surface: String,
        /// Hyperbolic radius of the sampling ball around the base point.
        #[arg(long)]
        ball: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn write_report<T: serde::Serialize>(path: &PathBuf, report: &T) -> Result<(), Error> {
    write_atomic(path, to_json(report)?.as_bytes())
}

fn run(cmd: Command) -> Result<Verdict, Error> {
    match cmd {
        Command::Triangles {
            surface,
            gamma,
            radius,
            out,
            seed,
        } => {
            let group = SurfaceGroup::resolve(&surface)?;
            let report = run_triangles(&group, &gamma, radius, seed)?;
            write_report(&out, &report)?;
            Ok(report.verdict)
        }
        Command::Tree { rank, f, bound, out } => {
            let report = run_tree(rank, &f, bound)?;
            write_report(&out, &report)?;
            Ok(report.verdict)
        }
        Command::Render {
            surface,
            gamma,
            radius,
            out,
        } => {
            let group = SurfaceGroup::resolve(&surface)?;
            let (set, search) = run_lifts(&group, &gamma, radius)?;
            write_atomic(&out, render_svg(&group, &set, &search, radius)?.as_bytes())?;
            Ok(Verdict::Pass)
        }
        Command::AuditQi {
            surface,
            ball,
            samples,
            seed,
            out,
        } => {
            let group = SurfaceGroup::resolve(&surface)?;
            let report = run_audit(&group, ball, samples, seed)?;
            write_report(&out, &report)?;
            Ok(report.verdict)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match Tolerances::from_env() {
        Ok(t) => {
            tolerance::install(t);
        }
        Err(msg) => {
            eprintln!("error[InvalidTolerance]: {msg}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => {
            eprintln!("verdict: FAIL (witness written to the report)");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
    }
}
