//! Batch verification driver: loads a geometry fixture, runs the requested
//! check suite, prints a human-readable table and optionally writes the
//! machine-readable report. Exit code 0 means every check passed; fixture
//! problems exit 3, usage errors exit 2.

mod report;
mod suites;

use clap::{Parser, Subcommand};
use gv4::dt4;
use gv4::geometry::{load_geometry, GeometryData};
use gv4::rational::{parse_rat, Rat};
use report::Report;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gv4",
    version,
    about = "Exact verification suites for curve-counting invariants of Calabi-Yau 4-folds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the meeting-invariant table (printed as JSON) and check it
    Meeting {
        #[arg(long)]
        geometry: PathBuf,
        /// Total-degree bound for series and tables
        #[arg(long, default_value_t = 8)]
        cutoff: i64,
        /// Write the report as JSON to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Verify the pole-cancellation constraint identities
    Constraint {
        #[arg(long)]
        geometry: PathBuf,
        #[arg(long, default_value_t = 8)]
        cutoff: i64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run one descendent pipeline and print the result as JSON
    Dt4 {
        /// One of: local_p2, local_p1p1, local_p3, elliptic, cy3xe
        example: String,
        /// Comma-separated rational divisor coefficients
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        /// Multiple-cover degree for the elliptic and product cases
        #[arg(long, default_value_t = 1)]
        r: i64,
        /// Geometry fixture (elliptic pairing data comes from here)
        #[arg(long)]
        geometry: Option<PathBuf>,
        /// Euler characteristic of the 3-fold factor (product case)
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate the genus-1 descendent formula and compare with pipelines
    Conjecture {
        #[arg(long)]
        geometry: PathBuf,
        #[arg(long, default_value_t = 8)]
        cutoff: i64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Ideal-geometry consistency checks
    Heuristic {
        #[arg(long)]
        geometry: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Every suite that applies to the given geometry
    All {
        #[arg(long)]
        geometry: PathBuf,
        #[arg(long, default_value_t = 8)]
        cutoff: i64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn load(path: &PathBuf) -> gv4::Result<GeometryData> {
    load_geometry(path)
}

fn parse_alpha(s: &str) -> gv4::Result<Vec<Rat>> {
    s.split(',')
        .map(|part| {
            parse_rat(part).ok_or_else(|| gv4::Error::Parse {
                path: "--alpha".into(),
                message: format!("invalid rational `{part}`"),
            })
        })
        .collect()
}

fn finish(reports: Vec<Report>, json: Option<PathBuf>) -> gv4::Result<ExitCode> {
    for r in &reports {
        r.print();
    }
    let all_pass = reports.iter().all(|r| r.pass);
    if let Some(path) = json {
        let body = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(&reports)
        }
        .expect("report serialization cannot fail");
        std::fs::write(&path, body).map_err(|e| gv4::Error::Parse {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run(cli: Cli) -> gv4::Result<ExitCode> {
    match cli.command {
        Command::Meeting {
            geometry,
            cutoff,
            json,
        } => {
            let geom = load(&geometry)?;
            let (report, table) = suites::meeting_suite(&geom, cutoff)?;
            println!("{}", table.to_json());
            finish(vec![report], json)
        }
        Command::Constraint {
            geometry,
            cutoff,
            json,
        } => {
            let geom = load(&geometry)?;
            let report = suites::constraint_suite(&geom, cutoff)?;
            finish(vec![report], json)
        }
        Command::Conjecture {
            geometry,
            cutoff,
            json,
        } => {
            let geom = load(&geometry)?;
            let bound = suites::meeting_bound(&geom, cutoff);
            let table = gv4::meeting::meeting_table(&geom, bound)?;
            let report = suites::conjecture_suite(&geom, &table, cutoff)?;
            finish(vec![report], json)
        }
        Command::Heuristic { geometry, json } => {
            let geom = geometry.as_ref().map(load).transpose()?;
            let report = suites::heuristic_suite(geom.as_ref())?;
            finish(vec![report], json)
        }
        Command::All {
            geometry,
            cutoff,
            json,
        } => {
            let geom = load(&geometry)?;
            let (meeting_report, table) = suites::meeting_suite(&geom, cutoff)?;
            let reports = vec![
                meeting_report,
                suites::series_suite(&geom)?,
                suites::constraint_suite(&geom, cutoff)?,
                suites::conjecture_suite(&geom, &table, cutoff)?,
                suites::dt4_suite(&geom)?,
                suites::heuristic_suite(Some(&geom))?,
            ];
            finish(reports, json)
        }
        Command::Dt4 {
            example,
            alpha,
            r,
            geometry,
            chi,
            json,
        } => {
            let alpha = parse_alpha(&alpha)?;
            let result = match example.as_str() {
                "local_p2" => dt4::local_p2_tau1(&alpha[0])?,
                "local_p1p1" => {
                    if alpha.len() != 2 {
                        return Err(gv4::Error::Dimension(
                            "local_p1p1 needs --alpha a,b".into(),
                        ));
                    }
                    dt4::local_p1p1_tau1(&alpha[0], &alpha[1])?
                }
                "local_p3" => dt4::LocalP3Pipeline::new()?.tau1(&alpha[0])?,
                "elliptic" => {
                    let path = geometry.unwrap_or_else(|| PathBuf::from("fixtures/elliptic_p3.json"));
                    let geom = load(&path)?;
                    if alpha.len() != 2 {
                        return Err(gv4::Error::Dimension(
                            "elliptic needs --alpha a1,a2".into(),
                        ));
                    }
                    dt4::elliptic_tau1(&geom, r, &alpha)?
                }
                "cy3xe" => {
                    let chi = chi
                        .as_deref()
                        .and_then(parse_rat)
                        .ok_or_else(|| gv4::Error::Parse {
                            path: "--chi".into(),
                            message: "the product case needs --chi".into(),
                        })?;
                    let value = dt4::product_fiber_tau1(&chi, &alpha[0], r.unsigned_abs());
                    dt4::Dt4Result {
                        geometry: "cy3xE".into(),
                        beta: vec![r],
                        alpha: alpha.clone(),
                        value: value.clone(),
                        orientation_sign: 1,
                        unsigned_value: value,
                    }
                }
                other => {
                    return Err(gv4::Error::Parse {
                        path: "dt4".into(),
                        message: format!(
                            "unknown example `{other}`; use local_p2, local_p1p1, local_p3, elliptic or cy3xe"
                        ),
                    })
                }
            };
            let body = serde_json::to_string_pretty(&result).expect("result serialization");
            println!("{body}");
            if let Some(path) = json {
                std::fs::write(&path, &body).map_err(|e| gv4::Error::Parse {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
