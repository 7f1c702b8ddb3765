use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spintail::registry::{self, Params};
use spintail::skein::colored_jones_torus;
use spintail::tails::normalize_laurent;
use spintail::tl::{bracket_closed_with, parse_network, OracleConfig};
use spintail::{Error, VLaurent};

mod output;
mod suite;

#[derive(Parser)]
#[command(
    name = "spintail",
    version,
    about = "Skein evaluations and q-series tails of colored spin networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named series. Parameters follow as `--k 2`, `--a -q^4`.
    Series {
        name: String,
        /// Number of coefficients.
        #[arg(short = 'N', long, default_value_t = 20)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, hide = true)]
        params: Vec<String>,
    },
    /// Run a verification suite: a JSON file or `builtin:<name>`.
    Verify {
        suite: String,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also run cases tagged slow.
        #[arg(long)]
        slow: bool,
        /// Overrides the order of identity cases.
        #[arg(short = 'N', long)]
        order: Option<usize>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Colored Jones polynomial of the (2, f) torus knot, divided by the unknot.
    Jones {
        #[arg(long)]
        f: u32,
        #[arg(long)]
        n: u32,
        /// Print the normalized q-series instead of the v-polynomial.
        #[arg(long)]
        normalized: bool,
        /// Coefficients to print when normalized; default is the whole polynomial.
        #[arg(short = 'N', long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate the Kauffman bracket of a network file (`-` reads stdin).
    Oracle {
        path: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = OracleConfig::default().max_color)]
        max_color: usize,
        #[arg(long, default_value_t = OracleConfig::default().max_crossings)]
        max_crossings: usize,
        #[arg(long, default_value_t = OracleConfig::default().max_boundary)]
        max_boundary: usize,
    },
    /// List registered series, generators and builtin suites.
    List,
}

/// A failure carrying its exit code.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    let mut stdout = io::stdout().lock();
    match command {
        Command::Series {
            name,
            order,
            format,
            params,
        } => {
            let (params, order, format) = split_params(&params, order, format)?;
            let s = registry::series(&name, &params, order)?;
            stdout.write_all(output::series(&s, format).as_bytes())?;
            Ok(0)
        }
        Command::Verify {
            suite,
            jobs,
            slow,
            order,
            out,
            format,
        } => {
            let suite = suite::load(&suite)?;
            let report = suite::run(&suite, &suite::RunOptions { jobs, slow, order })?;
            if let Some(path) = out {
                fs::write(
                    path,
                    serde_json::to_string_pretty(&report.to_json()).unwrap() + "\n",
                )?;
            }
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report.to_json()).unwrap() + "\n",
                _ => report.to_text(),
            };
            stdout.write_all(text.as_bytes())?;
            Ok(report.exit_code())
        }
        Command::Jones {
            f,
            n,
            normalized,
            order,
            format,
        } => {
            let p = colored_jones_torus(f, n)?;
            let text = if normalized {
                let order = order.unwrap_or_else(|| span(&p));
                output::series(&normalize_laurent(&p, order)?, format)
            } else {
                output::laurent(&p, format)
            };
            stdout.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Oracle {
            path,
            format,
            max_color,
            max_crossings,
            max_boundary,
        } => {
            let text = if path == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(&path).map_err(|e| Failure::usage(format!("{path}: {e}")))?
            };
            let net = parse_network(&text)?;
            let cfg = OracleConfig {
                max_color,
                max_crossings,
                max_boundary,
            };
            let value = bracket_closed_with(&net, &cfg)?;
            stdout.write_all(output::rational(&value, format).as_bytes())?;
            Ok(0)
        }
        Command::List => {
            let mut text = String::from("series:\n");
            for e in registry::SERIES {
                text += &format!("  {:<18} {:<18} {}\n", e.name, e.params.join(" "), e.about);
            }
            text += "generators:\n";
            for e in registry::GENERATORS {
                text += &format!("  {:<18} {:<18} {}\n", e.name, e.params.join(" "), e.about);
            }
            text += "suites:\n";
            for (name, body) in suite::BUILTIN {
                let about = suite::parse(body)
                    .ok()
                    .and_then(|s| s.description)
                    .unwrap_or_default();
                text += &format!("  builtin:{name:<29} {about}\n");
            }
            stdout.write_all(text.as_bytes())?;
            Ok(0)
        }
    }
}

/// Number of q-powers a Laurent polynomial in v spans.
fn span(p: &VLaurent) -> usize {
    match (p.min_exp(), p.max_exp()) {
        (Some(lo), Some(hi)) => ((hi - lo) / 4) as usize + 1,
        _ => 0,
    }
}

/// Reads `--key value` and `--key=value` pairs. `--order` and `--format`
/// may also appear among them.
fn split_params(
    raw: &[String],
    mut order: usize,
    mut format: Format,
) -> Result<(Params, usize, Format), Failure> {
    let mut params = Params::new();
    let mut it = raw.iter();
    while let Some(flag) = it.next() {
        let Some(key) = flag
            .strip_prefix("--")
            .or_else(|| flag.strip_prefix('-').filter(|k| *k == "N"))
        else {
            return Err(Failure::usage(format!(
                "expected --name value, found {flag:?}"
            )));
        };
        let (key, value) = match key.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| Failure::usage(format!("--{key} needs a value")))?;
                (key.to_string(), v.clone())
            }
        };
        match key.as_str() {
            "order" | "N" => {
                order = value
                    .parse()
                    .map_err(|_| Failure::usage(format!("bad order {value:?}")))?;
            }
            "format" => {
                format = Format::from_str(&value, true)
                    .map_err(|_| Failure::usage(format!("bad format {value:?}")))?;
            }
            _ => params.insert(&key, value),
        }
    }
    Ok((params, order, format))
}
