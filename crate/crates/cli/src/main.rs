use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use skewcodes_cli::commands::{self, RingArgs};
use skewcodes_cli::config::Config;
use skewcodes_cli::report::Report;
use skewcodes_cli::search::{search, Cursor, SearchParams};

#[derive(Parser)]
#[command(name = "skewcodes", version, about = "Skew cyclic codes with derivation: verify tables, search, inspect")]
struct Cli {
    /// Key-value config file (overrides SKEWCODES_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Ring {
    /// Field order p^m.
    #[arg(long)]
    q: u32,
    /// Derivation multiplier alpha in delta(a) = alpha(theta(a) - a).
    #[arg(long, default_value = "t")]
    alpha: String,
    /// Frobenius exponent e in theta(a) = a^(p^e).
    #[arg(long, default_value_t = 1)]
    frobenius: u32,
}

impl Ring {
    fn args(&self) -> RingArgs {
        RingArgs { q: self.q, frobenius: self.frobenius, alpha: self.alpha.clone() }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Txt,
    Fasta,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rebuild fixture rows and compare with the expected parameters.
    Verify {
        #[arg(long, required = true, num_args = 1..)]
        fixtures: Vec<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Enumerate right divisors of x^n - 1 and keep the best (k, d) per k.
    Search {
        #[command(flatten)]
        ring: SearchRing,
        #[arg(long)]
        n: usize,
        /// Degree range `a..b` (inclusive) or a single degree.
        #[arg(long)]
        deg: String,
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Keep only codes with at least this distance.
        #[arg(long)]
        target_d: Option<usize>,
        /// Candidates to examine in this run (defaults to the configured search budget).
        #[arg(long)]
        budget: Option<u64>,
        /// Cursor `alpha:degree:index` printed by an interrupted run.
        #[arg(long)]
        resume: Option<String>,
        /// Try the enumerated 2x2 Gray family, not just the identity.
        #[arg(long)]
        gray_family: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameters of the code generated by g.
    CodeInfo {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: String,
    },
    /// Check a Gray matrix and optionally the image of an R_l code.
    Gray {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        l: usize,
        /// Matrix file (one row per line) or inline `a,b;c,d`.
        #[arg(long = "N")]
        matrix: String,
        #[arg(long)]
        n: Option<usize>,
        /// Component generators g_1 .. g_l.
        #[arg(long, num_args = 1..)]
        g: Vec<String>,
    },
    /// DNA codewords of an F_4 code.
    Dna {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: String,
        #[arg(long, value_enum, default_value = "txt")]
        emit: Emit,
    },
    /// Multiply a displayed cofactor by g and compare with x^n - 1.
    FactorCheck {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: String,
        #[arg(long)]
        cofactor: String,
    },
    /// Re-parse and validate a saved report.
    ValidateReport { path: PathBuf },
}

#[derive(Args, Clone)]
struct SearchRing {
    #[arg(long)]
    q: u32,
    /// Comma-separated alpha candidates.
    #[arg(long, default_value = "t", value_delimiter = ',')]
    alpha: Vec<String>,
    #[arg(long, default_value_t = 1)]
    frobenius: u32,
}

fn parse_degrees(s: &str) -> Result<(usize, usize)> {
    match s.split_once("..") {
        Some((a, b)) => Ok((a.trim().parse().context("degree range start")?, b.trim().parse().context("degree range end")?)),
        None => {
            let d = s.trim().parse().context("degree")?;
            Ok((d, d))
        }
    }
}

fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(v)?))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.cmd {
        Cmd::Verify { fixtures, report, csv } => {
            let rep = commands::verify(&cfg, &fixtures)?;
            let mut lines = String::new();
            for row in &rep.rows {
                let a = row.representative();
                let got = a
                    .map(|a| {
                        let d = match (a.d, a.d_exact) {
                            (Some(d), Some(true)) => d.to_string(),
                            (Some(d), _) => format!(">={d}"),
                            _ => "?".into(),
                        };
                        let k = a.k.map_or("?".into(), |k| k.to_string());
                        format!("[{},{k},{d}] alpha={}", a.n.unwrap_or(0), a.alpha)
                    })
                    .unwrap_or_default();
                lines.push_str(&format!("{:<8} {:<28} {got}\n", row.status.as_str(), row.id));
            }
            let s = &rep.summary;
            lines.push_str(&format!("{} rows: {} pass, {} fail, {} flagged\n", s.total, s.pass, s.fail, s.flagged));
            emit(&lines)?;
            if let Some(p) = report {
                fs::write(&p, rep.to_json()).with_context(|| format!("writing {}", p.display()))?;
            }
            if let Some(p) = csv {
                let f = fs::File::create(&p).with_context(|| format!("creating {}", p.display()))?;
                rep.write_csv(f)?;
            }
            Ok(if rep.has_failures() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
        }
        Cmd::Search { ring, n, deg, l, target_d, budget, resume, gray_family, out } => {
            let params = SearchParams {
                q: ring.q,
                frobenius: ring.frobenius,
                n,
                l,
                degrees: parse_degrees(&deg)?,
                alphas: ring.alpha,
                target_d,
                budget: budget.unwrap_or(cfg.search_budget),
                resume: resume.map(|c| c.parse::<Cursor>()).transpose()?,
                gray_family,
            };
            let rep = search(&cfg, &params)?;
            match out {
                Some(p) => fs::write(&p, serde_json::to_string_pretty(&rep)?)?,
                None => print_json(&rep)?,
            }
            if let Some(c) = &rep.next_cursor {
                eprintln!("budget exhausted; resume with --resume {c}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CodeInfo { ring, n, g } => {
            print_json(&commands::code_info(&cfg, &ring.args(), n, &g)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gray { ring, l, matrix, n, g } => {
            let text = commands::read_matrix_text(&matrix)?;
            print_json(&commands::gray(&cfg, &ring.args(), l, &text, n, &g)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Dna { ring, n, g, emit: format } => {
            let info = commands::dna(&cfg, &ring.args(), n, &g)?;
            match format {
                Emit::Json => print_json(&info)?,
                Emit::Txt => emit(&commands::dna_text(&info, false))?,
                Emit::Fasta => emit(&commands::dna_text(&info, true))?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::FactorCheck { ring, n, g, cofactor } => {
            let r = commands::factor_check(&cfg, &ring.args(), n, &g, &cofactor)?;
            print_json(&r)?;
            Ok(if r.product_equals { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::ValidateReport { path } => {
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let rep = Report::from_json(&text)?;
            let s = &rep.summary;
            emit(&format!("valid: {} rows, {} pass, {} fail, {} flagged\n", s.total, s.pass, s.fail, s.flagged))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
