//! Command-line front end. `main` only forwards to [`run`].

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qsums_core::{ClaimId, OracleId};
use serde::Deserialize;

use crate::error::{HarnessError, Result};
use crate::grid::{GridSpec, IntRange};
use crate::report::{emit_report, Format, Report};
use crate::sweep::{run_oracles, run_sweep, SweepOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qsums",
    version,
    about = "Exact divisibility checks for weighted q-binomial sums"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate claims over a parameter grid.
    Verify(VerifyArgs),
    /// Run the identity cross-checks over a parameter grid.
    Oracles(OracleArgs),
    /// Print every claim id with its expression and parameter shape.
    ListClaims,
}

/// Range and output flags shared by `verify` and `oracles`.
#[derive(Debug, Default, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub n_min: Option<i64>,
    #[arg(long)]
    pub n_max: Option<i64>,
    /// Smallest cycle length for claims over n_1..n_m.
    #[arg(long)]
    pub m_min: Option<i64>,
    #[arg(long)]
    pub m_max: Option<i64>,
    #[arg(long)]
    pub r_min: Option<i64>,
    #[arg(long)]
    pub r_max: Option<i64>,
    #[arg(long)]
    pub s_min: Option<i64>,
    #[arg(long)]
    pub s_max: Option<i64>,
    #[arg(long)]
    pub t_min: Option<i64>,
    #[arg(long)]
    pub t_max: Option<i64>,
    #[arg(long)]
    pub a_min: Option<i64>,
    #[arg(long)]
    pub a_max: Option<i64>,
    /// Worker threads (default: one per core).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit wall-clock fields so reruns are byte-identical.
    #[arg(long)]
    pub deterministic: bool,
    /// Evaluate only the first N grid points in lexicographic order.
    #[arg(long)]
    pub limit: Option<usize>,
    /// TOML file with the same keys as the flags (underscored); flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated claim ids, or `all`.
    #[arg(long, value_delimiter = ',')]
    pub claims: Vec<String>,
    /// `j` window `lo:hi`; negative bounds allowed.
    #[arg(long, allow_hyphen_values = true)]
    pub j_window: Option<String>,
    /// Without --j-window, conjectures run this far past their band.
    #[arg(long)]
    pub j_margin: Option<i64>,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, conflicts_with = "which")]
    pub all: bool,
    /// Comma-separated identity ids.
    #[arg(long, value_delimiter = ',')]
    pub which: Vec<String>,
    #[command(flatten)]
    pub grid: GridArgs,
}

/// Config-file mirror of the flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub claims: Option<Vec<String>>,
    pub which: Option<Vec<String>>,
    pub n_min: Option<i64>,
    pub n_max: Option<i64>,
    pub m_min: Option<i64>,
    pub m_max: Option<i64>,
    pub r_min: Option<i64>,
    pub r_max: Option<i64>,
    pub s_min: Option<i64>,
    pub s_max: Option<i64>,
    pub t_min: Option<i64>,
    pub t_max: Option<i64>,
    pub a_min: Option<i64>,
    pub a_max: Option<i64>,
    pub j_window: Option<String>,
    pub j_margin: Option<i64>,
    pub workers: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub deterministic: Option<bool>,
    pub limit: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| HarnessError::Config {
            path: path.to_path_buf(),
            source: Box::new(source),
        })
    }
}

/// Everything needed for one run after flags and config are merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolved {
    pub grid: GridSpec,
    pub opts: SweepOptions,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl GridArgs {
    fn resolve(
        &self,
        file: &FileConfig,
        j_window: Option<&str>,
        j_margin: Option<i64>,
    ) -> Result<Resolved> {
        let d = GridSpec::default();
        let range = |lo: Option<i64>,
                     flo: Option<i64>,
                     hi: Option<i64>,
                     fhi: Option<i64>,
                     def: IntRange| {
            IntRange::new(lo.or(flo).unwrap_or(def.lo), hi.or(fhi).unwrap_or(def.hi))
        };
        let j = j_window
            .or(file.j_window.as_deref())
            .map(str::parse::<IntRange>)
            .transpose()?;
        let grid = GridSpec {
            n: range(self.n_min, file.n_min, self.n_max, file.n_max, d.n),
            m: range(self.m_min, file.m_min, self.m_max, file.m_max, d.m),
            r: range(self.r_min, file.r_min, self.r_max, file.r_max, d.r),
            s: range(self.s_min, file.s_min, self.s_max, file.s_max, d.s),
            t: range(self.t_min, file.t_min, self.t_max, file.t_max, d.t),
            a: range(self.a_min, file.a_min, self.a_max, file.a_max, d.a),
            j,
            j_margin: j_margin.or(file.j_margin).unwrap_or(d.j_margin),
        };
        grid.validate()?;
        Ok(Resolved {
            grid,
            opts: SweepOptions {
                workers: self.workers.or(file.workers),
                deterministic: self.deterministic || file.deterministic.unwrap_or(false),
                limit: self.limit.or(file.limit),
            },
            format: self.format.or(file.format).unwrap_or_default(),
            out: self.out.clone().or_else(|| file.out.clone()),
        })
    }

    fn file_config(&self) -> Result<FileConfig> {
        self.config
            .as_deref()
            .map_or_else(|| Ok(FileConfig::default()), FileConfig::load)
    }
}

fn parse_ids<T>(names: &[String], all: &[T]) -> Result<Vec<T>>
where
    T: Copy + std::str::FromStr<Err = qsums_core::QError>,
{
    if names.iter().any(|n| n.trim().eq_ignore_ascii_case("all")) {
        return Ok(all.to_vec());
    }
    names
        .iter()
        .map(|n| {
            n.parse::<T>()
                .map_err(|e| HarnessError::usage(e.to_string()))
        })
        .collect()
}

/// Merges flags with the config file and resolves claim ids.
pub fn resolve_verify(args: &VerifyArgs) -> Result<(Vec<ClaimId>, Resolved)> {
    let file = args.grid.file_config()?;
    let names = if args.claims.is_empty() {
        file.claims.clone().unwrap_or_default()
    } else {
        args.claims.clone()
    };
    if names.is_empty() {
        return Err(HarnessError::usage(
            "no claims given (use --claims ID,.. or --claims all)",
        ));
    }
    let claims = parse_ids(&names, &ClaimId::ALL)?;
    Ok((
        claims,
        args.grid
            .resolve(&file, args.j_window.as_deref(), args.j_margin)?,
    ))
}

pub fn resolve_oracles(args: &OracleArgs) -> Result<(Vec<OracleId>, Resolved)> {
    let file = args.grid.file_config()?;
    let names = if args.all {
        vec!["all".to_string()]
    } else if !args.which.is_empty() {
        args.which.clone()
    } else {
        file.which.clone().unwrap_or_default()
    };
    if names.is_empty() {
        return Err(HarnessError::usage(
            "no identities given (use --all or --which ID,..)",
        ));
    }
    let which = parse_ids(&names, &OracleId::ALL)?;
    Ok((which, args.grid.resolve(&file, None, None)?))
}

fn finish(report: &Report, resolved: &Resolved) -> Result<i32> {
    emit_report(report, resolved.format, resolved.out.as_deref())?;
    let s = report.summary;
    eprintln!(
        "{} of {} grid points evaluated: {} holds, {} fails, {} skipped",
        report.results.len(),
        report.total_grid_size,
        s.holds,
        s.fails,
        s.skipped
    );
    Ok(if report.has_failures() {
        EXIT_FAILS
    } else {
        EXIT_OK
    })
}

pub fn list_claims(out: &mut impl Write) -> std::io::Result<()> {
    for c in ClaimId::ALL {
        let kind = if c.is_conjecture() {
            "conjecture"
        } else {
            "theorem"
        };
        writeln!(out, "{:<18} {:<10} {}", c.as_str(), kind, c.signature())?;
        writeln!(out, "{:<29} {}", "", c.description())?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify(args) => {
            let (claims, resolved) = resolve_verify(&args)?;
            let report = run_sweep(&claims, &resolved.grid, &resolved.opts)?;
            finish(&report, &resolved)
        }
        Command::Oracles(args) => {
            let (which, resolved) = resolve_oracles(&args)?;
            let report = run_oracles(&which, &resolved.grid, &resolved.opts)?;
            finish(&report, &resolved)
        }
        Command::ListClaims => {
            list_claims(&mut std::io::stdout().lock()).map_err(|source| HarnessError::Io {
                path: "<stdout>".into(),
                source,
            })?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qsums: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify(args: &[&str]) -> VerifyArgs {
        let cli = Cli::try_parse_from(
            std::iter::once("qsums")
                .chain(std::iter::once("verify"))
                .chain(args.iter().copied()),
        )
        .unwrap();
        match cli.command {
            Command::Verify(v) => v,
            _ => unreachable!(),
        }
    }

    #[test]
    fn flags_resolve() {
        let v = verify(&[
            "--claims",
            "THM_1_1,thm_1_2",
            "--n-max",
            "12",
            "--j-window",
            "-2:6",
            "--workers",
            "8",
            "--deterministic",
        ]);
        let (claims, r) = resolve_verify(&v).unwrap();
        assert_eq!(claims, vec![ClaimId::CentralSum, ClaimId::CyclicSum]);
        assert_eq!(r.grid.n, IntRange::new(1, 12));
        assert_eq!(r.grid.j, Some(IntRange::new(-2, 6)));
        assert_eq!(
            r.opts,
            SweepOptions {
                workers: Some(8),
                deterministic: true,
                limit: None
            }
        );
        assert_eq!(r.format, Format::Json);
    }

    #[test]
    fn all_claims_keyword() {
        let (claims, _) = resolve_verify(&verify(&["--claims", "all"])).unwrap();
        assert_eq!(claims, ClaimId::ALL.to_vec());
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(
            resolve_verify(&verify(&[])),
            Err(HarnessError::Usage(_))
        ));
        assert!(matches!(
            resolve_verify(&verify(&["--claims", "THM_9_9"])),
            Err(HarnessError::Usage(_))
        ));
        assert!(matches!(
            resolve_verify(&verify(&[
                "--claims", "THM_1_1", "--n-min", "5", "--n-max", "2"
            ])),
            Err(HarnessError::Usage(_))
        ));
        assert!(matches!(
            resolve_verify(&verify(&["--claims", "THM_1_1", "--j-window", "x"])),
            Err(HarnessError::Usage(_))
        ));
    }

    #[test]
    fn listing_mentions_every_claim() {
        let mut buf = Vec::new();
        list_claims(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        for c in ClaimId::ALL {
            assert!(text.contains(c.as_str()));
        }
    }
}
