use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qnormal::coordinates::{q_matching_system, standard_matching_system, CoordKind};
use qnormal::report;
use qnormal::unknot::{cross_check, recognize, survey, PipelineConfig};
use qnormal::{parse_triangulation, Coord, Triangulation};

/// Exact normal surface theory for triangulated compact 3-manifolds.
#[derive(Parser)]
#[command(name = "qnormal", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coords {
    Quad,
    Standard,
}

impl From<Coords> for CoordKind {
    fn from(c: Coords) -> CoordKind {
        match c {
            Coords::Quad => CoordKind::Quad,
            Coords::Standard => CoordKind::Standard,
        }
    }
}

#[derive(Args)]
struct EnumOpts {
    /// Coordinate system to enumerate in.
    #[arg(long, value_enum, default_value = "quad")]
    coords: Coords,
    /// Disable the quad-condition filter during enumeration.
    #[arg(long)]
    no_filter: bool,
    /// Cross-check the vertex set against the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    /// Abort if an intermediate stage holds more rays than this.
    #[arg(long, default_value_t = 1 << 22)]
    max_rays: usize,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

impl EnumOpts {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            kind: self.coords.into(),
            filter: !self.no_filter,
            oracle: self.oracle,
            max_rays: self.max_rays,
            ..Default::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Search the vertex surfaces for an essential disc (solid torus /
    /// unknottedness certificate).
    Recognize {
        file: PathBuf,
        #[command(flatten)]
        opts: EnumOpts,
    },
    /// List every vertex surface with its invariants.
    Survey {
        file: PathBuf,
        #[command(flatten)]
        opts: EnumOpts,
        /// Also write the vertex vectors, one per line, in sparse
        /// index:value form.
        #[arg(long)]
        dump_rays: Option<PathBuf>,
    },
    /// Compare enumeration modes and the standard/quad correspondence.
    Crosscheck {
        file: PathBuf,
        #[arg(long, default_value_t = 1 << 22)]
        max_rays: usize,
        #[arg(long)]
        json: bool,
    },
    /// Dump a matching system as sparse `row col coeff` triplets.
    DumpEquations {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Coords,
    },
}

fn load(path: &PathBuf) -> Result<Triangulation> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let tri =
        parse_triangulation(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    Ok(tri)
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Recognize { file, opts } => {
            let tri = load(&file)?;
            let cfg = opts.config();
            let rep = recognize::<Coord>(&tri, &cfg)?;
            if opts.json {
                let json = report::recognition_json(&rep, file.to_str());
                println!("{}", serde_json::to_string_pretty(&json)?);
            } else {
                println!("verdict: {}", rep.verdict.as_str());
                if let Some(reason) = &rep.unsupported_reason {
                    println!("reason: {reason}");
                }
                println!(
                    "preconditions: orientable={} boundary_components={} torus_boundary={} (irreducibility assumed)",
                    rep.preconditions.orientable,
                    rep.preconditions.boundary_components,
                    rep.preconditions.torus_boundary
                );
                println!(
                    "vertex surfaces: {} ({} coordinates, oracle {})",
                    rep.survey.len(),
                    rep.kind,
                    if rep.oracle_checked {
                        "agreed"
                    } else {
                        "not run"
                    }
                );
                if let Some(w) = rep.witness {
                    let row = &rep.survey[w];
                    let c = &row.invariants.components[0];
                    println!(
                        "witness: vertex {w}, euler {} weight {} size {} two_sided {}",
                        c.euler, c.weight, c.size, c.orientable
                    );
                }
                if let Some(w) = rep.minimal_witness {
                    let row = &rep.survey[w];
                    let c = &row.invariants.components[0];
                    println!(
                        "minimal (weight, size) witness: vertex {w} at ({}, {})",
                        c.weight, c.size
                    );
                }
            }
            Ok(rep.verdict.exit_code())
        }
        Command::Survey {
            file,
            opts,
            dump_rays,
        } => {
            let tri = load(&file)?;
            let cfg = opts.config();
            let rep = survey::<Coord>(&tri, &cfg)?;
            if let Some(path) = dump_rays {
                fs::write(&path, report::dump_rays(&rep.rows))
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            if opts.json {
                let json = report::survey_json(&rep, file.to_str());
                println!("{}", serde_json::to_string_pretty(&json)?);
            } else {
                println!("{} {} vertex surfaces", rep.rows.len(), rep.kind);
                for row in &rep.rows {
                    let entries: Vec<String> = row
                        .solution
                        .support
                        .iter()
                        .map(|&i| format!("{i}:{}", row.solution.vector[i]))
                        .collect();
                    let c = &row.invariants;
                    println!(
                        "vertex {:>3}: [{}] components {} euler {} weight {} essential_disc {:?}",
                        row.index,
                        entries.join(" "),
                        c.components.len(),
                        c.total_euler,
                        c.total_weight,
                        row.essential_disc,
                    );
                }
            }
            Ok(0)
        }
        Command::Crosscheck {
            file,
            max_rays,
            json,
        } => {
            let tri = load(&file)?;
            let cfg = PipelineConfig {
                max_rays,
                ..Default::default()
            };
            let rep = cross_check::<Coord>(&tri, &cfg)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report::crosscheck_json(&rep, file.to_str()))?
                );
            } else {
                for check in &rep.checks {
                    println!(
                        "{}: {} ({})",
                        check.name,
                        if check.passed { "ok" } else { "FAILED" },
                        check.detail
                    );
                }
                for skip in &rep.oracle_skipped {
                    println!("oracle skipped: {skip}");
                }
                for d in &rep.discrepancies {
                    println!("discrepancy: {d}");
                }
            }
            Ok(if rep.passed() { 0 } else { 1 })
        }
        Command::DumpEquations { file, kind } => {
            let tri = load(&file)?;
            let out = match CoordKind::from(kind) {
                CoordKind::Standard => standard_matching_system::<Coord>(&tri).dump_triplets(),
                CoordKind::Quad => q_matching_system::<Coord>(&tri)?.dump_triplets(),
            };
            print!("{out}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}
