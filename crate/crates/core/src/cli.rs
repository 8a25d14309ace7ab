//! Command-line front end: `present`, `satellite`, `alexander`, `color` and
//! `finiteq` subcommands over JSON input files.
//!
//! [`run`] returns the exit code and the text for stdout and stderr instead
//! of printing, so the binary is a thin wrapper and the command layer can be
//! tested in-process. Exit codes: 0 on success, 1 on an input or computation
//! error, 2 on a usage error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::alexander::{
    affine_colorability, coloring_target, delta, knot_matrix, module_factors, AlexanderError,
    Colorability,
};
use crate::coloring::{affine_colorings, count_colorings, find_nontrivial_coloring, ColoringError};
use crate::diagram::{Diagram, DiagramError};
use crate::finiteq::{report, FiniteQuandle, FiniteqError, DEFAULT_CAP};
use crate::lmatrix::{LMatrix, MatrixError};
use crate::presentation::{
    close_in_sphere, merge_generators, present, wirtinger_group, PresentationError,
};
use crate::satellite::{
    satellite_alexander_matrix, satellite_delta, satellite_presentation, SatelliteError,
    SatelliteSpec,
};

#[derive(Debug, Parser)]
#[command(
    name = "knotq",
    version,
    about = "Quandle presentations and Alexander invariants of knots"
)]
pub struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the quandle presentation of a diagram.
    Present(PresentArgs),
    /// Build a satellite from a pattern and a companion.
    Satellite(SatelliteArgs),
    /// Alexander polynomials, module factors and affine colorability.
    Alexander(AlexanderArgs),
    /// Count quandle colorings of a classical diagram.
    Color(ColorArgs),
    /// Check and analyse a finite quandle.
    Finiteq(FiniteqArgs),
}

#[derive(Debug, Args)]
pub struct PresentArgs {
    #[arg(long)]
    pub diagram: PathBuf,
    /// Print the Wirtinger presentation of the knot group instead.
    #[arg(long, conflicts_with_all = ["close", "merge"])]
    pub wirtinger: bool,
    /// Send the operator generator to the identity (solid-torus diagrams).
    #[arg(long)]
    pub close: bool,
    /// Identify generators related by equalities.
    #[arg(long)]
    pub merge: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Presentation,
    Matrix,
    Delta,
}

#[derive(Debug, Args)]
pub struct SatelliteArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub companion: PathBuf,
    /// Companion arc whose generator is the meridian (default 1).
    #[arg(long)]
    pub meridian_arc: Option<usize>,
    /// Companion arc where the longitude is read from (default: the meridian arc).
    #[arg(long)]
    pub longitude_start: Option<usize>,
    /// Correct the blackboard longitude by the companion writhe.
    #[arg(long)]
    pub preferred_framing: bool,
    #[arg(long, value_enum)]
    pub emit: Emit,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["diagram", "matrix"])))]
pub struct AlexanderArgs {
    /// Classical knot diagram.
    #[arg(long)]
    pub diagram: Option<PathBuf>,
    /// Presentation matrix JSON.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Print Δ_N (default: Δ_1 when nothing else is requested).
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    pub delta: Option<u32>,
    /// Print the cyclic factors Λ/(Δ_i/Δ_{i+1}) of the module.
    #[arg(long)]
    pub factors: bool,
    /// Report whether some nontrivial affine quandle colors the knot.
    #[arg(long)]
    pub colorability: bool,
    /// Print the affine quandle Aff(Λ/(Δ_1), t) that the knot maps into.
    #[arg(long)]
    pub target: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineSpec {
    pub n: u64,
    pub m: i64,
}

fn parse_affine(s: &str) -> Result<AffineSpec, String> {
    let (n, m) = s
        .split_once(',')
        .ok_or_else(|| "expected N,M".to_string())?;
    let n = n.trim().parse().map_err(|_| format!("bad modulus {n:?}"))?;
    let m = m
        .trim()
        .parse()
        .map_err(|_| format!("bad multiplier {m:?}"))?;
    Ok(AffineSpec { n, m })
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("quandle").required(true).args(["affine", "table"])))]
pub struct ColorArgs {
    #[arg(long)]
    pub diagram: PathBuf,
    /// The affine quandle Aff(Z_n, m), given as `n,m`.
    #[arg(long, value_parser = parse_affine)]
    pub affine: Option<AffineSpec>,
    /// A finite quandle table JSON.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("quandle").required(true).args(["affine", "table"])))]
pub struct FiniteqArgs {
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Build Aff(Z_n, m), given as `n,m`.
    #[arg(long, value_parser = parse_affine)]
    pub affine: Option<AffineSpec>,
    /// Print group orders, orbits, connectivity and the gamma quotient.
    #[arg(long)]
    pub report: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Satellite(#[from] SatelliteError),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Finiteq(#[from] FiniteqError),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Diagram(_) => "diagram",
            CliError::Presentation(_) => "presentation",
            CliError::Satellite(_) => "satellite",
            CliError::Alexander(_) => "alexander",
            CliError::Matrix(_) => "matrix",
            CliError::Coloring(_) => "coloring",
            CliError::Finiteq(_) => "finiteq",
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let stderr = format!("error: {e}\n");
            let stdout = if cli.json {
                format!(
                    "{}\n",
                    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
                )
            } else {
                String::new()
            };
            Outcome {
                code: 1,
                stdout,
                stderr,
            }
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_diagram(path: &Path) -> Result<Diagram, CliError> {
    Ok(Diagram::from_json(&read(path)?)?)
}

fn load_quandle(
    table: Option<&PathBuf>,
    affine: Option<AffineSpec>,
) -> Result<FiniteQuandle, CliError> {
    match (table, affine) {
        (Some(path), _) => Ok(FiniteQuandle::from_json(&read(path)?)?),
        (None, Some(a)) => Ok(FiniteQuandle::affine(a.n, a.m)?),
        (None, None) => unreachable!("clap requires one quandle source"),
    }
}

fn json_out(v: Value) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(&v).expect("JSON values serialize")
    )
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Present(a) => cmd_present(a, cli.json),
        Command::Satellite(a) => cmd_satellite(a, cli.json),
        Command::Alexander(a) => cmd_alexander(a, cli.json),
        Command::Color(a) => cmd_color(a),
        Command::Finiteq(a) => cmd_finiteq(a, cli.json),
    }
}

fn cmd_present(a: &PresentArgs, as_json: bool) -> Result<String, CliError> {
    let d = load_diagram(&a.diagram)?;
    if a.wirtinger {
        let g = wirtinger_group(&d, "y")?;
        return Ok(if as_json {
            json_out(json!({
                "generators": g.generators.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "relations": g.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            }))
        } else {
            g.to_string()
        });
    }
    let mut p = present(&d)?;
    if a.close {
        p = close_in_sphere(&p)?;
    }
    if a.merge {
        p = merge_generators(&p);
    }
    Ok(if as_json {
        json_out(p.to_json_value())
    } else {
        p.to_string()
    })
}

fn cmd_satellite(a: &SatelliteArgs, as_json: bool) -> Result<String, CliError> {
    let mut spec = SatelliteSpec::new(load_diagram(&a.pattern)?, load_diagram(&a.companion)?)?;
    if let Some(k) = a.meridian_arc {
        spec = spec.with_meridian_arc(k)?;
    }
    if let Some(k) = a.longitude_start {
        spec = spec.with_longitude_start(k)?;
    }
    spec = spec.with_preferred_framing(a.preferred_framing);
    Ok(match a.emit {
        Emit::Presentation => {
            let p = satellite_presentation(&spec)?;
            if as_json {
                json_out(p.to_json_value())
            } else {
                p.to_string()
            }
        }
        Emit::Matrix => {
            let m = satellite_alexander_matrix(&spec)?;
            if as_json {
                json_out(m.to_json_value())
            } else {
                format!("{}\n", m.to_json())
            }
        }
        Emit::Delta => {
            let d = satellite_delta(&spec)?;
            if as_json {
                json_out(json!({ "winding_number": spec.winding_number(), "delta": d.to_string() }))
            } else {
                format!("{d}\n")
            }
        }
    })
}

fn cmd_alexander(a: &AlexanderArgs, as_json: bool) -> Result<String, CliError> {
    let m = match (&a.diagram, &a.matrix) {
        (Some(p), _) => knot_matrix(&load_diagram(p)?)?,
        (None, Some(p)) => LMatrix::from_json(&read(p)?)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let only_delta = !(a.factors || a.colorability || a.target);
    let delta_n = a.delta.or(only_delta.then_some(1));
    let mut obj = serde_json::Map::new();
    let mut lines = Vec::new();
    if let Some(n) = delta_n {
        let d = delta(&m, n as usize)?;
        obj.insert("delta".into(), json!({ "n": n, "poly": d.to_string() }));
        lines.push(if only_delta {
            d.to_string()
        } else {
            format!("delta {n}: {d}")
        });
    }
    if a.factors {
        let fs = module_factors(&m);
        obj.insert(
            "factors".into(),
            fs.iter()
                .map(|f| json!({ "poly": f.poly.to_string(), "exact": f.exact }))
                .collect(),
        );
        if fs.is_empty() {
            lines.push("factors: none (trivial module)".into());
        }
        for f in &fs {
            let note = if f.exact { "" } else { " (inexact quotient)" };
            lines.push(format!("factor: Λ/({}){note}", f.poly));
        }
    }
    if a.colorability {
        let c = match affine_colorability(&m) {
            Colorability::Colorable => "colorable",
            Colorability::NotColorable => "not_colorable",
        };
        obj.insert("colorability".into(), json!(c));
        lines.push(format!("colorability: {c}"));
        if m.alexander_poly(1).is_zero() {
            lines.push("warning: Δ1 = 0".into());
            obj.insert("warning".into(), json!("delta1 is zero"));
        }
    }
    if a.target {
        let t = coloring_target(&m)?;
        obj.insert(
            "target".into(),
            json!({
                "delta1": t.delta1.to_string(),
                "j": t.j,
                "multiplier": t.multiplier.to_string(),
            }),
        );
        lines.push(format!("target: {t}"));
    }
    Ok(if as_json {
        json_out(Value::Object(obj))
    } else {
        lines.iter().map(|l| format!("{l}\n")).collect()
    })
}

fn cmd_color(a: &ColorArgs) -> Result<String, CliError> {
    let d = load_diagram(&a.diagram)?;
    let v = match (&a.table, a.affine) {
        (None, Some(AffineSpec { n, m })) => {
            let r = affine_colorings(&d, n, m)?;
            json!({
                "count": u64::try_from(&r.count)
                    .map(Value::from)
                    .unwrap_or_else(|_| Value::from(r.count.to_string())),
                "nontrivial": r.sample.is_some(),
                "sample": r.sample.map(|c| c.to_json_value()),
                "kernel_rank": r.kernel_rank,
            })
        }
        (table, affine) => {
            let q = load_quandle(table.as_ref(), affine)?;
            let count = count_colorings(&d, &q)?;
            let sample = find_nontrivial_coloring(&d, &q)?;
            json!({
                "count": count,
                "nontrivial": sample.is_some(),
                "sample": sample.map(|c| c.to_json_value()),
            })
        }
    };
    Ok(json_out(v))
}

fn cmd_finiteq(a: &FiniteqArgs, as_json: bool) -> Result<String, CliError> {
    let q = load_quandle(a.table.as_ref(), a.affine)?;
    if a.report {
        let r = report(&q, DEFAULT_CAP)?;
        return Ok(if as_json {
            json_out(r.to_json_value())
        } else {
            r.to_string()
        });
    }
    Ok(if as_json {
        json_out(json!({ "axioms": "ok", "size": q.size() }))
    } else {
        format!("axioms: ok\nsize: {}\n", q.size())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> String {
        format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn affine_argument() {
        assert_eq!(parse_affine("5,2"), Ok(AffineSpec { n: 5, m: 2 }));
        assert_eq!(parse_affine("7, -1"), Ok(AffineSpec { n: 7, m: -1 }));
        assert!(parse_affine("5").is_err());
        assert!(parse_affine("x,2").is_err());
    }

    #[test]
    fn alexander_delta() {
        let out = run([
            "knotq",
            "alexander",
            "--diagram",
            &data("trefoil"),
            "--delta",
            "1",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "t^2 - t + 1\n");
    }

    #[test]
    fn usage_and_input_errors() {
        let out = run(["knotq", "alexander", "--delta", "1"]);
        assert_eq!(out.code, 2);
        let out = run([
            "knotq",
            "color",
            "--diagram",
            &data("trefoil"),
            "--affine",
            "6,2",
        ]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("not a unit"));
        let out = run([
            "knotq",
            "--json",
            "present",
            "--diagram",
            "/nonexistent.json",
        ]);
        assert_eq!(out.code, 1);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "io");
    }
}
