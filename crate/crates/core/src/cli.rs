//! Command-line front end for the `psi-npoint` binary.
//!
//! Exit codes: 0 success, 1 verification or consistency failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::buryak::{f_bur_series, intersection_number, NPointSeries};
use crate::dvv::{CorrelatorTable, Strategy};
use crate::exact::render_scalar;
use crate::numeric::NumericConfig;
use crate::verify::{self, VerificationReport};

pub const DEFAULT_CACHE: &str = ".psi-npoint-cache";

/// Desk-scale bounds; larger requests run but print a warning.
const DESK_MAX_N: usize = 3;
const DESK_MAX_GENUS: u32 = 2;
const DESK_MAX_DEGREE: u32 = 8;

/// Spot checks performed when a cache file is loaded.
const CACHE_SPOT_CHECKS: usize = 4;

#[derive(Parser, Debug)]
#[command(name = "psi-npoint", version, about = "Psi-class intersection numbers and n-point functions")]
pub struct Cli {
    /// Correlator cache file.
    #[arg(long, global = true, default_value = DEFAULT_CACHE)]
    pub cache: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print one intersection number.
    Intersect {
        #[arg(long)]
        genus: u32,
        /// Comma-separated descendant indices.
        #[arg(long, value_delimiter = ',', required = true)]
        ds: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Source::Dvv)]
        source: Source,
    },
    /// Print the stable coefficients of the n-point function.
    Series {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run an identity suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        scale: ScaleFlags,
    },
    /// Manage the correlator cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

#[derive(clap::Args, Debug, Default, Clone)]
pub struct ScaleFlags {
    /// Number of points (largest n for prop31).
    #[arg(long)]
    pub n: Option<usize>,
    /// Truncation degree.
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub max_genus: Option<u32>,
    /// Comma-separated evaluation point.
    #[arg(long, value_delimiter = ',')]
    pub x: Option<Vec<f64>>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Quadrature nodes per axis.
    #[arg(long)]
    pub nodes: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Buryak,
    Dvv,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Prop31,
    Lemmas,
    DvvCross,
    Numeric,
    String,
    Kdv,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheAction {
    Dump,
    Clear,
    Path,
}

/// One row of `series --format json`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct JsonRow {
    pub n: usize,
    pub genus: u32,
    pub ds: Vec<u32>,
    pub value: String,
    pub source: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct JsonSeries {
    pub unstable: Option<String>,
    pub rows: Vec<JsonRow>,
}

impl JsonSeries {
    pub fn from_series(series: &NPointSeries) -> Self {
        JsonSeries {
            unstable: series.unstable.map(|u| u.to_string()),
            rows: series
                .rows()
                .into_iter()
                .map(|r| JsonRow {
                    n: series.n,
                    genus: r.genus,
                    ds: r.ds,
                    value: render_scalar(&r.value),
                    source: "buryak".to_string(),
                })
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

pub fn render_csv(series: &NPointSeries) -> String {
    let mut header: Vec<String> = (1..=series.n).map(|i| format!("d_{i}")).collect();
    header.push("genus".into());
    header.push("value".into());
    let mut out = header.join(",") + "\n";
    for row in series.rows() {
        let mut fields: Vec<String> = row.ds.iter().map(u32::to_string).collect();
        fields.push(row.genus.to_string());
        fields.push(render_scalar(&row.value));
        out += &(fields.join(",") + "\n");
    }
    out
}

/// Parses `args` and runs the command, writing to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

fn warn(err: &mut dyn Write, what: &str) {
    let _ = writeln!(err, "warning: {what} is beyond desk scale; factorial cost may be large");
}

fn load_table(path: &Path) -> Result<CorrelatorTable, String> {
    CorrelatorTable::load(path, Strategy::FastPaths, CACHE_SPOT_CHECKS).map_err(|e| e.to_string())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match &cli.command {
        Command::Intersect { genus, ds, source } => {
            let dvv = || -> Result<String, String> {
                let table = load_table(&cli.cache)?;
                let value = table.correlator(*genus, ds);
                table.save(&cli.cache).map_err(|e| e.to_string())?;
                Ok(render_scalar(&value))
            };
            let buryak = |err: &mut dyn Write| -> Result<String, String> {
                if ds.len() > DESK_MAX_N || *genus > DESK_MAX_GENUS {
                    warn(err, "n or genus");
                }
                intersection_number(*genus, ds).map(|v| render_scalar(&v)).map_err(|e| e.to_string())
            };
            match source {
                Source::Dvv => writeln!(out, "{}", dvv()?).map_err(io)?,
                Source::Buryak => writeln!(out, "{}", buryak(err)?).map_err(io)?,
                Source::Both => {
                    let (a, b) = (dvv()?, buryak(err)?);
                    writeln!(out, "dvv: {a}\nburyak: {b}\n{}", if a == b { "match" } else { "MISMATCH" }).map_err(io)?;
                    if a != b {
                        return Ok(1);
                    }
                }
            }
            Ok(0)
        }
        Command::Series { n, max_degree, format } => {
            if *n == 0 {
                let _ = writeln!(err, "error: --n must be at least 1");
                return Ok(2);
            }
            if *n > DESK_MAX_N || *max_degree > DESK_MAX_DEGREE + 1 {
                warn(err, "n or degree");
            }
            let series = f_bur_series(*n, *max_degree).map_err(|e| e.to_string())?;
            let text = match format {
                Format::Text => series.to_string(),
                Format::Csv => render_csv(&series),
                Format::Json => JsonSeries::from_series(&series).render() + "\n",
            };
            write!(out, "{text}").map_err(io)?;
            Ok(0)
        }
        Command::Verify { suite, scale } => {
            let reports = run_suite(*suite, scale, err)?;
            for report in &reports {
                write!(out, "{report}").map_err(io)?;
            }
            Ok(if verify::zero_failures(&reports) { 0 } else { 1 })
        }
        Command::Cache { action } => {
            match action {
                CacheAction::Path => writeln!(out, "{}", cli.cache.display()).map_err(io)?,
                CacheAction::Dump => {
                    let table = load_table(&cli.cache)?;
                    write!(out, "{}", table.render()).map_err(io)?;
                }
                CacheAction::Clear => match std::fs::remove_file(&cli.cache) {
                    Ok(()) => {}
                    Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
                    Err(e) => return Err(e.to_string()),
                },
            }
            Ok(0)
        }
    }
}

fn numeric_config(scale: &ScaleFlags) -> Result<NumericConfig, String> {
    let mut cfg = NumericConfig::default();
    if let Some(nodes) = scale.nodes {
        cfg.nodes_per_axis = nodes;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

/// Runs one suite (or all of them) at the requested scale.
pub fn run_suite(suite: Suite, scale: &ScaleFlags, err: &mut dyn Write) -> Result<Vec<VerificationReport>, String> {
    let seed = scale.seed.unwrap_or(1);
    let reports = match suite {
        Suite::Prop31 => {
            let n = scale.n.unwrap_or(DESK_MAX_N);
            let degree = scale.degree.unwrap_or(DESK_MAX_DEGREE);
            if n > DESK_MAX_N || degree > DESK_MAX_DEGREE {
                warn(err, "prop31 scale");
            }
            let ns: Vec<usize> = (2..=n.max(2)).collect();
            vec![verify::prop31(&ns, degree)]
        }
        Suite::Lemmas => {
            let max_n = scale.max_n.unwrap_or(5);
            vec![verify::lemmas(max_n, max_n + 1, max_n, scale.samples.unwrap_or(100), seed)]
        }
        Suite::DvvCross => {
            let max_n = scale.max_n.unwrap_or(DESK_MAX_N);
            let max_genus = scale.max_genus.unwrap_or(DESK_MAX_GENUS);
            if max_n > DESK_MAX_N || max_genus > DESK_MAX_GENUS {
                warn(err, "dvv-cross scale");
            }
            let bounds: Vec<(usize, u32)> = (1..=max_n).map(|n| (n, max_genus)).collect();
            vec![verify::dvv_cross(&bounds)]
        }
        Suite::Numeric => {
            let cfg = numeric_config(scale)?;
            let tol = scale.tol.unwrap_or(1e-4);
            let points = match (&scale.x, scale.n) {
                (Some(x), Some(n)) if x.len() != n => return Err(format!("--x has {} components but --n is {n}", x.len())),
                (Some(x), _) => vec![x.clone()],
                (None, Some(n)) => verify::sample_points(n, scale.samples.unwrap_or(3), seed, 0.3, 1.5),
                (None, None) => (1..=3)
                    .flat_map(|n| verify::sample_points(n, scale.samples.unwrap_or(2), seed + n as u64, 0.3, 1.5))
                    .collect(),
            };
            let mut reports = vec![
                verify::numeric_theorem(&points, tol, &cfg),
                verify::numeric_terms(&points, tol.min(1e-5), &cfg),
            ];
            if scale.x.is_none() {
                let ns: Vec<usize> = match scale.n {
                    Some(n) => vec![n],
                    None => vec![1, 2, 3],
                };
                reports.push(verify::series_vs_numeric(&ns, 0.2, scale.degree.unwrap_or(9), 1e-3, &cfg));
            }
            reports
        }
        Suite::String => vec![verify::string_suite(scale.max_n.unwrap_or(4), scale.degree.unwrap_or(8))],
        Suite::Kdv => vec![verify::kdv_suite(scale.degree.unwrap_or(8))],
        Suite::All => {
            let defaults = ScaleFlags { seed: scale.seed, ..ScaleFlags::default() };
            let mut all = Vec::new();
            for s in [Suite::Prop31, Suite::Lemmas, Suite::DvvCross, Suite::Numeric, Suite::String, Suite::Kdv] {
                all.extend(run_suite(s, &defaults, err)?);
            }
            all
        }
    };
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("psi-npoint").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn series_formats() {
        let (code, out, _) = call(&["series", "--n", "1", "--max-degree", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "unstable: x^-2\n1;g=1;1/24\n4;g=2;1/1152\n");

        let (_, csv, _) = call(&["series", "--n", "2", "--max-degree", "2", "--format", "csv"]);
        assert_eq!(csv, "d_1,d_2,genus,value\n0,2,1,1/24\n1,1,1,1/24\n2,0,1,1/24\n");

        let (_, json, _) = call(&["series", "--n", "3", "--max-degree", "0", "--format", "json"]);
        let parsed: JsonSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.rows, vec![JsonRow { n: 3, genus: 0, ds: vec![0, 0, 0], value: "1".into(), source: "buryak".into() }]);
        assert_eq!(parsed.render() + "\n", json);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["intersect", "--genus", "x", "--ds", "1"]).0, 2);
        assert_eq!(call(&["series", "--n", "2"]).0, 2);
        assert_eq!(call(&["verify", "nonsense"]).0, 2);
        assert_eq!(call(&["series", "--n", "0", "--max-degree", "2"]).0, 2);
    }

    #[test]
    fn intersect_and_cache() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("c.txt");
        let cache = cache.to_str().unwrap();
        assert_eq!(call(&["--cache", cache, "cache", "dump"]), (0, String::new(), String::new()));
        let (code, out, _) = call(&["--cache", cache, "intersect", "--genus", "2", "--ds", "4", "--source", "both"]);
        assert_eq!(code, 0);
        assert_eq!(out, "dvv: 1/1152\nburyak: 1/1152\nmatch\n");
        let (_, dump, _) = call(&["--cache", cache, "cache", "dump"]);
        assert!(dump.lines().any(|l| l == "2;4;1/1152"), "{dump}");
        assert_eq!(call(&["--cache", cache, "cache", "clear"]).0, 0);
        assert_eq!(call(&["--cache", cache, "cache", "dump"]).1, "");
        assert_eq!(call(&["--cache", cache, "intersect", "--genus", "0", "--ds", "2"]).1, "0\n");
        assert_eq!(call(&["--cache", cache, "cache", "path"]).1, format!("{cache}\n"));
    }
}
