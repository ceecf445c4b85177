//! `wfsplit` command-line tool.
//!
//! Exit codes: 0 success, 1 domain failure (bad mesh, failed check),
//! 2 usage or I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wfsplit::generate::{generate, Family, GenSpec};
use wfsplit::io::{read_msh_ascii, read_tmesh, write_tmesh, write_vtk_legacy_to};
use wfsplit::regularity::{analyze_mesh, geometric_grid, param_name, sweep_sharpness, verify_mesh};
use wfsplit::report::{fmt_sig, provenance_csv, sweep_csv, to_csv_row, to_json_string, verification_json, verification_text};
use wfsplit::{refine_k, Error, TetMesh};

#[derive(Parser)]
#[command(name = "wfsplit", version, about = "Worsey-Farin refinement of tetrahedral meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated test mesh.
    Generate {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Refine a mesh with the 12-way split.
    Refine {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write a legacy VTK file with the parent id as cell data.
        #[arg(long)]
        vtk: Option<PathBuf>,
        /// Also write a child_id,parent_id CSV.
        #[arg(long)]
        provenance: Option<PathBuf>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        levels: u32,
    },
    /// Print element-quality metrics.
    Analyze {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        report: TableFormat,
    },
    /// Check every inequality on the mesh and its refinement.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        /// Tolerance for all non-strict checks.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
        report: VerifyFormat,
    },
    /// Compare the observed refined shape constant with the bound over a parameter range.
    Sweep {
        #[arg(long, value_parser = parse_family, default_value = "sliver")]
        family: Family,
        #[arg(long = "eps-from")]
        from: f64,
        #[arg(long = "eps-to")]
        to: f64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(2..))]
        steps: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Domain(String),
    Io(String),
}

impl Failure {
    fn domain(e: impl std::fmt::Display) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, contents: &str) -> CmdResult {
    match out {
        Some(p) => write_file(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

/// Read a `.tmesh` file, or a Gmsh `.msh` file by extension.
fn load(path: &Path) -> Result<TetMesh, Error> {
    let text = fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("msh")) {
        let import = read_msh_ascii(&text)?;
        for w in &import.warnings {
            eprintln!("warning: {w}");
        }
        Ok(import.mesh)
    } else {
        Ok(read_tmesh(&text)?)
    }
}

fn load_input(path: &Path) -> Result<TetMesh, Failure> {
    load(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn cmd_generate(spec: GenSpec, output: &Path) -> CmdResult {
    spec.check().map_err(|e| Failure::Io(e.to_string()))?;
    let mesh = generate(&spec).map_err(Failure::domain)?;
    write_file(output, &write_tmesh(&mesh))?;
    eprintln!("{}: {} vertices, {} tets", spec.family, mesh.num_vertices(), mesh.num_tets());
    Ok(())
}

fn cmd_refine(input: &Path, output: &Path, vtk: Option<&Path>, provenance: Option<&Path>, levels: usize) -> CmdResult {
    let mesh = load_input(input)?;
    let out = refine_k(&mesh, levels).map_err(Failure::domain)?;
    write_file(output, &write_tmesh(&out.refined))?;
    if let Some(path) = vtk {
        let parents: Vec<f64> = out.root_parent.iter().map(|&p| p as f64).collect();
        let mut buf = Vec::new();
        write_vtk_legacy_to(&out.refined, &[("parent_id", &parents)], &mut buf)
            .map_err(|e| Failure::Io(e.to_string()))?;
        fs::write(path, buf).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = provenance {
        write_file(path, &provenance_csv(&out))?;
    }
    println!("children = {}", out.refined.num_tets());
    println!("vertices = {}", out.refined.num_vertices());
    println!("volume_residual = {}", fmt_sig(out.volume_residual(&mesh)));
    Ok(())
}

fn cmd_analyze(input: &Path, format: TableFormat) -> CmdResult {
    let mesh = load_input(input)?;
    let analysis = analyze_mesh(&mesh).map_err(Failure::domain)?;
    let text = match format {
        TableFormat::Json => to_json_string(&analysis),
        TableFormat::Csv => to_csv_row(&analysis),
    };
    print!("{text}");
    Ok(())
}

fn cmd_verify(input: &Path, tolerance: Option<f64>, format: VerifyFormat) -> CmdResult {
    if tolerance.is_some_and(|t| !(t >= 0.0 && t.is_finite())) {
        return Err(Failure::Io("tolerance must be a non-negative number".into()));
    }
    let mesh = match load(input) {
        Ok(m) => m,
        Err(e @ Error::Io(_)) => return Err(Failure::Io(format!("{}: {e}", input.display()))),
        Err(e) => return Err(Failure::Domain(format!("{}: {e}", input.display()))),
    };
    let report = verify_mesh(&mesh, tolerance).map_err(Failure::domain)?;
    match format {
        VerifyFormat::Text => print!("{}", verification_text(&report)),
        VerifyFormat::Json => print!("{}", verification_json(&report)),
    }
    let failed: Vec<&str> = report.failed().map(|c| c.id.name()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Domain(format!("failed checks: {}", failed.join(", "))))
    }
}

fn cmd_sweep(template: GenSpec, from: f64, to: f64, steps: usize, out: Option<&Path>) -> CmdResult {
    let grid = geometric_grid(from, to, steps).map_err(|e| Failure::Io(e.to_string()))?;
    let outcome = sweep_sharpness(&template, &grid);
    for note in &outcome.notes {
        eprintln!("note: {note}");
    }
    for r in outcome.tight_records(1.0) {
        eprintln!(
            "warning: {} = {}: observed {} exceeds or meets the bound {}",
            param_name(template.family),
            fmt_sig(r.param),
            fmt_sig(r.observed),
            fmt_sig(r.c1)
        );
    }
    emit(out, &sweep_csv(param_name(template.family), &outcome.records))
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Generate {
            family,
            n,
            sigma,
            eps,
            seed,
            output,
        } => {
            let spec = GenSpec {
                family,
                n: n as usize,
                sigma,
                eps,
                seed,
            };
            cmd_generate(spec, &output)
        }
        Command::Refine {
            input,
            output,
            vtk,
            provenance,
            levels,
        } => cmd_refine(&input, &output, vtk.as_deref(), provenance.as_deref(), levels as usize),
        Command::Analyze { input, report } => cmd_analyze(&input, report),
        Command::Verify {
            input,
            tolerance,
            report,
        } => cmd_verify(&input, tolerance, report),
        Command::Sweep {
            family,
            from,
            to,
            steps,
            n,
            seed,
            out,
        } => {
            let template = GenSpec {
                n: n as usize,
                seed,
                ..GenSpec::new(family)
            };
            cmd_sweep(template, from, to, steps as usize, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
