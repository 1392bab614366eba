//! Batch front-end over the catalog, bound engine, and place stream.
//!
//! Exit codes: 0 all checks pass, 1 verification failure, 2 usage error.
//! Output is byte-deterministic for a fixed command line: reals render with
//! 15 significant digits, JSON keys have a fixed order, and the stream is
//! seeded. A JSON config file can supply defaults; flags win over it.

use crate::bounds::{best_bound, scenario, BoundDerivation};
use crate::catalog::{catalog, entry, list_catalog, CatalogEntry};
use crate::density::{empirical_lower_density, DEFAULT_S_GRID};
use crate::moments::moment_table_for;
use crate::report;
use crate::stream::PlaceStream;
use crate::verify::{run_verify, Fault};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Parser, Debug)]
#[command(
    name = "galdens",
    version,
    about = "Exact density bounds and seeded place-stream experiments for finite Galois models",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// JSON config file with default seed, count, s_grid, output, format
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Output format: json (default), or csv for grid commands
    #[arg(long, global = true, value_name = "FORMAT")]
    pub format: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect the built-in catalog
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Group-level reports for one catalog entry
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Exact vs. empirical disagreement density for a pair of roles
    Density {
        /// Catalog entry name
        name: String,
        /// Role of the first representation
        role_a: String,
        /// Role of the second representation
        role_b: String,
        /// Stream seed
        #[arg(long)]
        seed: Option<u64>,
        /// Number of places to sample
        #[arg(long)]
        count: Option<usize>,
        /// Comma-separated grid of s values, each > 1
        #[arg(long, value_delimiter = ',', value_name = "S,S,...")]
        s_grid: Option<Vec<f64>>,
    },
    /// Moment table for a pair of roles
    Moments {
        /// Catalog entry name
        name: String,
        /// Role of the first representation
        role_a: String,
        /// Role of the second representation
        role_b: String,
    },
    /// Lower-bound derivation from a named scenario or a moment-table file
    Bound {
        /// Named scenario, e.g. thm1a or ramakrishnan(3)
        #[arg(long, conflicts_with = "table")]
        scenario: Option<String>,
        /// JSON moment table {A, B, C, D} with optional P and Q
        #[arg(long, value_name = "FILE")]
        table: Option<PathBuf>,
    },
    /// Sample a seeded place stream and print one role's values
    Stream {
        /// Catalog entry name
        name: String,
        /// Role to evaluate at each place
        role: String,
        /// Stream seed
        #[arg(long)]
        seed: Option<u64>,
        /// Number of places to sample
        #[arg(long)]
        count: Option<usize>,
    },
    /// Run the full verification suite over the catalog
    Verify {
        /// Test fixture: corrupt one catalog entry before checking
        #[arg(long, hide = true, value_name = "NAME")]
        inject_fault: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// List every entry with order and distinguished degrees
    List,
}

#[derive(Subcommand, Debug)]
pub enum GroupAction {
    /// Conjugacy classes and the full character table of one entry
    Table {
        /// Catalog entry name
        name: String,
    },
}

const DEFAULT_SEED: u64 = 42;
const DEFAULT_COUNT: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Flag, config-file, and default resolution, in that priority order.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub count: usize,
    pub s_grid: Vec<f64>,
    pub output: Option<PathBuf>,
    /// None means the command's native format: JSON everywhere except
    /// `verify`, which prints its text report.
    pub format: Option<Format>,
}

#[derive(Clone, Debug, Default)]
struct ConfigFile {
    seed: Option<u64>,
    count: Option<usize>,
    s_grid: Option<Vec<f64>>,
    output: Option<PathBuf>,
    format: Option<Format>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => Err(format!("unknown format \"{other}\" (expected json or csv)")),
    }
}

fn load_config(path: &PathBuf) -> Result<ConfigFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let doc: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("config is not JSON: {e}"))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| "config must be a JSON object".to_string())?;
    let mut cfg = ConfigFile::default();
    for (key, value) in obj {
        match key.as_str() {
            "seed" => {
                cfg.seed = Some(
                    value
                        .as_u64()
                        .ok_or_else(|| "config seed must be a nonnegative integer".to_string())?,
                );
            }
            "count" => {
                cfg.count = Some(
                    value
                        .as_u64()
                        .ok_or_else(|| "config count must be a nonnegative integer".to_string())?
                        as usize,
                );
            }
            "s_grid" => {
                let arr = value
                    .as_array()
                    .ok_or_else(|| "config s_grid must be an array of reals".to_string())?;
                let mut grid = Vec::with_capacity(arr.len());
                for item in arr {
                    grid.push(
                        item.as_f64()
                            .ok_or_else(|| "config s_grid must be an array of reals".to_string())?,
                    );
                }
                cfg.s_grid = Some(grid);
            }
            "output" => {
                cfg.output = Some(PathBuf::from(
                    value
                        .as_str()
                        .ok_or_else(|| "config output must be a path string".to_string())?,
                ));
            }
            "format" => {
                cfg.format = Some(parse_format(
                    value
                        .as_str()
                        .ok_or_else(|| "config format must be a string".to_string())?,
                )?);
            }
            other => return Err(format!("unknown config field \"{other}\"")),
        }
    }
    Ok(cfg)
}

fn resolve(cli: &Cli, s_grid_flag: Option<&[f64]>, seed: Option<u64>, count: Option<usize>)
    -> Result<RunConfig, String>
{
    let cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None => ConfigFile::default(),
    };
    let format = match &cli.format {
        Some(s) => Some(parse_format(s)?),
        None => cfg.format,
    };
    Ok(RunConfig {
        seed: seed.or(cfg.seed).unwrap_or(DEFAULT_SEED),
        count: count.or(cfg.count).unwrap_or(DEFAULT_COUNT),
        s_grid: s_grid_flag
            .map(<[f64]>::to_vec)
            .or(cfg.s_grid)
            .unwrap_or_else(|| DEFAULT_S_GRID.to_vec()),
        output: cli.output.clone().or(cfg.output),
        format,
    })
}

fn emit(config: &RunConfig, rendered: &str) -> Result<(), String> {
    match &config.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn lookup(name: &str) -> Result<Arc<CatalogEntry>, String> {
    entry(name).map_err(|_| {
        let names: Vec<&str> = catalog().iter().map(|e| e.name.as_str()).collect();
        format!("unknown catalog entry \"{name}\" (available: {})", names.join(", "))
    })
}

fn role_row(e: &CatalogEntry, role: &str) -> Result<usize, String> {
    e.role(role).ok_or_else(|| {
        let roles: Vec<&str> = e.roles.keys().map(String::as_str).collect();
        format!(
            "unknown role \"{role}\" for {} (available: {})",
            e.name,
            roles.join(", ")
        )
    })
}

fn reject_csv(config: &RunConfig, command: &str) -> Result<(), String> {
    if config.format == Some(Format::Csv) {
        return Err(format!(
            "csv output is only available for grid commands (density, stream), not {command}"
        ));
    }
    Ok(())
}

fn bound_for_table_file(path: &PathBuf) -> Result<BoundDerivation, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read table {}: {e}", path.display()))?;
    let doc: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("table is not JSON: {e}"))?;
    let table = report::parse_moment_table(&doc)?;
    best_bound(&table).map_err(|e| e.to_string())
}

/// Run a parsed command line; the result is the process exit code.
pub fn execute(cli: &Cli) -> Result<i32, String> {
    match &cli.command {
        Command::Catalog { action: CatalogAction::List } => {
            let config = resolve(cli, None, None, None)?;
            reject_csv(&config, "catalog list")?;
            let doc = report::catalog_json(&list_catalog(catalog()));
            emit(&config, &doc.render())?;
            Ok(0)
        }
        Command::Group { action: GroupAction::Table { name } } => {
            let config = resolve(cli, None, None, None)?;
            reject_csv(&config, "group table")?;
            let e = lookup(name)?;
            let doc = report::group_table_json(&e);
            emit(&config, &doc.render())?;
            Ok(0)
        }
        Command::Moments { name, role_a, role_b } => {
            let config = resolve(cli, None, None, None)?;
            reject_csv(&config, "moments")?;
            let e = lookup(name)?;
            let i = role_row(&e, role_a)?;
            let j = role_row(&e, role_b)?;
            let t = moment_table_for(&e.table, i, j).map_err(|err| err.to_string())?;
            let doc = report::moments_json(&e, role_a, role_b, (i, j), &t);
            emit(&config, &doc.render())?;
            Ok(0)
        }
        Command::Bound { scenario: scenario_name, table } => {
            let config = resolve(cli, None, None, None)?;
            reject_csv(&config, "bound")?;
            let (source, description, derivation) = match (scenario_name, table) {
                (Some(name), None) => {
                    let s = scenario(name).map_err(|e| e.to_string())?;
                    let b = s.bound().map_err(|e| e.to_string())?;
                    (("scenario", name.clone()), s.description.to_string(), b)
                }
                (None, Some(path)) => {
                    let b = bound_for_table_file(path)?;
                    (
                        ("table", path.display().to_string()),
                        "user-supplied moment table".to_string(),
                        b,
                    )
                }
                _ => return Err("bound needs exactly one of --scenario or --table".to_string()),
            };
            let doc = report::bound_json((source.0, &source.1), &description, &derivation);
            emit(&config, &doc.render())?;
            Ok(0)
        }
        Command::Density { name, role_a, role_b, seed, count, s_grid } => {
            let config = resolve(cli, s_grid.as_deref(), *seed, *count)?;
            let e = lookup(name)?;
            let i = role_row(&e, role_a)?;
            let j = role_row(&e, role_b)?;
            let stream = PlaceStream::new(Arc::clone(&e.group), config.seed, config.count)
                .map_err(|err| err.to_string())?;
            let rep = empirical_lower_density(
                &stream,
                e.table.row(i),
                e.table.row(j),
                &config.s_grid,
            )
            .map_err(|err| err.to_string())?;
            let rendered = match config.format {
                Some(Format::Csv) => report::density_csv(&rep),
                _ => {
                    let t = moment_table_for(&e.table, i, j).map_err(|err| err.to_string())?;
                    let b = best_bound(&t).map_err(|err| err.to_string())?;
                    report::density_json(&e, role_a, role_b, &stream, &rep, &b).render()
                }
            };
            emit(&config, &rendered)?;
            Ok(0)
        }
        Command::Stream { name, role, seed, count } => {
            let config = resolve(cli, None, *seed, *count)?;
            let e = lookup(name)?;
            role_row(&e, role)?;
            let stream = PlaceStream::new(Arc::clone(&e.group), config.seed, config.count)
                .map_err(|err| err.to_string())?;
            let rendered = match config.format {
                Some(Format::Csv) => report::stream_csv(&e, role, &stream),
                _ => report::stream_json(&e, role, &stream).render(),
            };
            emit(&config, &rendered)?;
            Ok(0)
        }
        Command::Verify { inject_fault } => {
            let config = resolve(cli, None, None, None)?;
            reject_csv(&config, "verify")?;
            let fault = match inject_fault {
                Some(name) => Some(Fault::from_name(name).ok_or_else(|| {
                    format!(
                        "unknown fault \"{name}\" (available: {})",
                        Fault::NAMES.join(", ")
                    )
                })?),
                None => None,
            };
            let rep = run_verify(fault);
            let rendered = match config.format {
                Some(Format::Json) => report::verify_json(&rep).render(),
                _ => rep.render_text(),
            };
            emit(&config, &rendered)?;
            Ok(if rep.passed() { 0 } else { 1 })
        }
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(args).unwrap()
    }

    #[test]
    fn defaults_config_and_flags_layer_in_order() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.json");
        std::fs::write(&cfg, r#"{"seed": 7, "count": 99, "format": "json"}"#).unwrap();

        let cli = parse(&["galdens", "stream", "S3", "pi"]);
        let rc = resolve(&cli, None, None, None).unwrap();
        assert_eq!((rc.seed, rc.count), (DEFAULT_SEED, DEFAULT_COUNT));
        assert_eq!(rc.s_grid, DEFAULT_S_GRID.to_vec());
        assert_eq!(rc.format, None);

        let cfg_s = cfg.to_str().unwrap();
        let cli = parse(&["galdens", "stream", "S3", "pi", "--config", cfg_s]);
        let rc = resolve(&cli, None, None, None).unwrap();
        assert_eq!((rc.seed, rc.count), (7, 99));
        assert_eq!(rc.format, Some(Format::Json));

        let cli = parse(&[
            "galdens", "stream", "S3", "pi", "--config", cfg_s, "--seed", "3",
        ]);
        let seed = match &cli.command {
            Command::Stream { seed, .. } => *seed,
            _ => unreachable!(),
        };
        let rc = resolve(&cli, None, seed, None).unwrap();
        assert_eq!((rc.seed, rc.count), (3, 99));
    }

    #[test]
    fn config_rejects_unknown_fields() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.json");
        std::fs::write(&cfg, r#"{"sede": 7}"#).unwrap();
        let cli = parse(&["galdens", "verify", "--config", cfg.to_str().unwrap()]);
        let err = resolve(&cli, None, None, None).unwrap_err();
        assert!(err.contains("unknown config field"));
    }

    #[test]
    fn s_grid_flag_splits_on_commas() {
        let cli = parse(&[
            "galdens", "density", "C2", "trivial", "sign", "--s-grid", "1.5,1.2,1.1",
        ]);
        match &cli.command {
            Command::Density { s_grid, .. } => {
                assert_eq!(s_grid.as_deref(), Some(&[1.5, 1.2, 1.1][..]));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn csv_is_rejected_off_grid_commands() {
        let cli = parse(&["galdens", "moments", "S3", "trivial", "pi", "--format", "csv"]);
        let err = execute(&cli).unwrap_err();
        assert!(err.contains("only available for grid commands"));
    }

    #[test]
    fn bound_requires_exactly_one_source() {
        let cli = parse(&["galdens", "bound"]);
        assert!(execute(&cli).unwrap_err().contains("exactly one"));
        assert!(Cli::try_parse_from([
            "galdens", "bound", "--scenario", "thm2", "--table", "x.json",
        ])
        .is_err());
    }

    #[test]
    fn unknown_names_report_the_choices() {
        let cli = parse(&["galdens", "group", "table", "nope"]);
        let err = execute(&cli).unwrap_err();
        assert!(err.contains("unknown catalog entry"));
        assert!(err.contains("binary-tetrahedral"));

        let cli = parse(&["galdens", "moments", "G216", "trivial", "nope"]);
        let err = execute(&cli).unwrap_err();
        assert!(err.contains("unknown role"));
        assert!(err.contains("pi-twist"));
        assert!(err.contains("rho"));
    }
}
