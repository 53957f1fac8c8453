//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the library rejects the input, 2 on a
//! malformed command line.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{complexity_interval, cor2_family, cover_bound, pretzel_bound, BoundReport};
use crate::census::{self, census_report_with, ingest_volumes, CensusRow, Execution};
use crate::cf::{equivalence_class, normalize, ContinuedFraction, TwoBridgeLink};
use crate::error::Error;
use crate::spine::initial_ledger;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "twobridge",
    version,
    about = "Spine vertex counts and complexity bounds for two-bridge link complements"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct LinkArgs {
    /// Numerator p >= 2.
    #[arg(allow_negative_numbers = true)]
    pub p: Option<i64>,
    /// Any q coprime to p; it is reduced and mirror-normalized.
    #[arg(allow_negative_numbers = true)]
    pub q: Option<i64>,
    /// Comma-separated partial quotients, e.g. 3,2,1,3,3.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true, conflicts_with_all = ["p", "q"])]
    pub cf: Option<IntList>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize (p, q) and print its continued fraction.
    Expand {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// All bounds on the complexity of the link complement.
    Bound(LinkArgs),
    /// Vertex-count ledger of the spine, with its event trace.
    Spine(LinkArgs),
    /// Bound for the d-fold meridian-cyclic branched cover.
    Cover {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        d: u64,
    },
    /// The link C(2,1,...,1,2) of length n and its exact complexity.
    Family {
        #[arg(long)]
        n: usize,
    },
    /// Upper bound for a pretzel link complement.
    Pretzel {
        #[arg(value_parser = parse_list, allow_hyphen_values = true)]
        params: IntList,
    },
    /// Bound table for every link class with p <= max-p.
    Census {
        #[arg(long)]
        max_p: u64,
        /// CSV with header `p,q,volume`.
        #[arg(long)]
        volumes: Option<PathBuf>,
        /// Compute rows on a single thread.
        #[arg(long)]
        serial: bool,
    },
}

/// A comma-separated list of integers given as one argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

fn parse_list(s: &str) -> Result<IntList, String> {
    let items: Vec<&str> = s.split(',').map(str::trim).collect();
    if items.iter().any(|item| item.is_empty()) {
        return Err(format!("malformed list `{s}`"));
    }
    items
        .into_iter()
        .map(|item| {
            item.parse::<i64>()
                .map_err(|_| format!("`{item}` is not an integer"))
        })
        .collect::<Result<_, _>>()
        .map(IntList)
}

enum Failure {
    Usage(String),
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::Io(e.into())
    }
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match run(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn resolve_link(args: &LinkArgs) -> Result<TwoBridgeLink, Failure> {
    match (&args.cf, args.p, args.q) {
        (Some(entries), None, None) => {
            let cf = ContinuedFraction::from_signed(&entries.0)?;
            Ok(TwoBridgeLink::from_cf(&cf)?)
        }
        (None, Some(p), Some(q)) => Ok(normalize(p, q)?),
        _ => Err(Failure::Usage(
            "expected `<p> <q>` or `--cf a1,a2,...`".into(),
        )),
    }
}

fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Expand { p, q } => expand(*p, *q, cli.format, out),
        Command::Bound(args) => {
            let link = resolve_link(args)?;
            let report = complexity_interval(&link)?;
            print_report(&report, cli.format, out)
        }
        Command::Spine(args) => spine(args, cli.format, out),
        Command::Cover { p, q, d } => {
            let bound = cover_bound(&normalize(*p, *q)?, *d)?;
            match cli.format {
                Format::Json => write_json_line(out, &bound),
                Format::Csv => {
                    writeln!(out, "p,q,d,r,value")?;
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        bound.p, bound.q, bound.d, bound.r, bound.value
                    )?;
                    Ok(())
                }
                Format::Table => {
                    writeln!(
                        out,
                        "c(M_{d}(K({p},{q}))) <= {value}  (r = {r})",
                        d = bound.d,
                        p = bound.p,
                        q = bound.q,
                        value = bound.value,
                        r = bound.r
                    )?;
                    Ok(())
                }
            }
        }
        Command::Family { n } => {
            let (link, exact) = cor2_family(*n)?;
            match cli.format {
                Format::Json => write_json_line(
                    out,
                    &json!({"n": n, "p": link.p(), "q": link.q(), "cf": link.cf(), "exact": exact}),
                ),
                Format::Csv => {
                    writeln!(out, "n,p,q,cf,exact")?;
                    writeln!(
                        out,
                        "{n},{},{},\"{}\",{exact}",
                        link.p(),
                        link.q(),
                        link.cf()
                    )?;
                    Ok(())
                }
                Format::Table => {
                    writeln!(
                        out,
                        "{}/{} = {}  c = {exact}",
                        link.p(),
                        link.q(),
                        link.cf()
                    )?;
                    Ok(())
                }
            }
        }
        Command::Pretzel { params } => {
            let params = &params.0;
            let bound = pretzel_bound(params)?;
            match cli.format {
                Format::Json => write_json_line(out, &json!({"params": params, "upper": bound})),
                Format::Csv => {
                    let joined: Vec<_> = params.iter().map(ToString::to_string).collect();
                    writeln!(out, "params,upper")?;
                    writeln!(out, "\"{}\",{bound}", joined.join(","))?;
                    Ok(())
                }
                Format::Table => {
                    writeln!(out, "{bound}")?;
                    Ok(())
                }
            }
        }
        Command::Census {
            max_p,
            volumes,
            serial,
        } => {
            let table = volumes.as_deref().map(ingest_volumes).transpose()?;
            if let Some(table) = &table {
                for (p, q) in table.unmatched(*max_p) {
                    writeln!(
                        err,
                        "warning: volume for K({p},{q}) lies beyond --max-p {max_p}"
                    )?;
                }
            }
            let execution = if *serial {
                Execution::Serial
            } else {
                Execution::Parallel
            };
            let rows = census_report_with(*max_p, table.as_ref(), execution)?;
            match cli.format {
                Format::Json => census::write_json(&rows, out)?,
                Format::Csv => census::write_csv(&rows, out)?,
                Format::Table => print_census_table(&rows, out)?,
            }
            Ok(())
        }
    }
}

fn write_json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn expand(p: i64, q: i64, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let link = normalize(p, q)?;
    match format {
        Format::Json => write_json_line(
            out,
            &json!({
                "p": link.p(),
                "q": link.q(),
                "cf": link.cf(),
                "trace": link.trace(),
                "class": equivalence_class(&link),
                "hyperbolic": link.is_hyperbolic(),
            }),
        ),
        Format::Csv => {
            writeln!(out, "p,q,cf")?;
            writeln!(out, "{},{},\"{}\"", link.p(), link.q(), link.cf())?;
            Ok(())
        }
        Format::Table => {
            let mut parts: Vec<String> = link.trace().iter().map(ToString::to_string).collect();
            parts.push(format!("{}/{} = {}", link.p(), link.q(), link.cf()));
            writeln!(out, "{}", parts.join("; "))?;
            Ok(())
        }
    }
}

fn spine(args: &LinkArgs, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let link = resolve_link(args)?;
    let ledger = initial_ledger(link.cf())?.run_all_replacements()?;
    match format {
        Format::Table => out.write_all(ledger.render_trace().as_bytes())?,
        Format::Json => out.write_all(ledger.trace_json_lines().as_bytes())?,
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(out);
            wtr.write_record(["kind", "pillowcase", "boundary", "case", "labels", "counts"])?;
            for event in ledger.events() {
                let value = serde_json::to_value(event)?;
                let field = |key: &str| match &value[key] {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Null => String::new(),
                    other => other.to_string(),
                };
                let labels: Vec<_> = event.labels.iter().map(ToString::to_string).collect();
                let counts: Vec<_> = event.counts.iter().map(ToString::to_string).collect();
                wtr.write_record([
                    field("kind"),
                    event.pillowcase.to_string(),
                    field("boundary"),
                    field("case"),
                    labels.join(" "),
                    counts.join(" "),
                ])?;
            }
            wtr.flush()?;
        }
    }
    Ok(())
}

fn print_report(report: &BoundReport, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Json => write_json_line(out, report),
        Format::Csv => {
            writeln!(
                out,
                "p,q,cf,n,upper_thm1,upper_lemma1,upper_sw,lower,lower_volume,exact,hyperbolic"
            )?;
            writeln!(
                out,
                "{},{},\"{}\",{},{},{},{},{},{:.6},{},{}",
                report.p,
                report.q,
                report.cf,
                report.n,
                report.upper_thm1,
                report.upper_lemma1,
                report.upper_sw,
                report.lower,
                report.lower_volume,
                report.exact.map(|e| e.to_string()).unwrap_or_default(),
                report.hyperbolic
            )?;
            Ok(())
        }
        Format::Table => {
            let exact = report
                .exact
                .map(|e| e.to_string())
                .unwrap_or_else(|| "-".into());
            let rows = [
                ("link", format!("K({},{})", report.p, report.q)),
                ("cf", report.cf.to_string()),
                ("n", report.n.to_string()),
                ("upper_thm1", report.upper_thm1.to_string()),
                ("upper_lemma1", report.upper_lemma1.to_string()),
                ("upper_sw", report.upper_sw.to_string()),
                ("lower", report.lower.to_string()),
                ("lower_volume", format!("{:.6}", report.lower_volume)),
                ("exact", exact),
                ("hyperbolic", report.hyperbolic.to_string()),
            ];
            for (key, value) in rows {
                writeln!(out, "{key:<14}{value}")?;
            }
            Ok(())
        }
    }
}

fn print_census_table(rows: &[CensusRow], out: &mut dyn Write) -> io::Result<()> {
    let header = [
        "p", "q", "cf", "n", "thm1", "lemma1", "sw", "lower", "eff", "exact", "hyp",
    ];
    let dash = || "-".to_string();
    let body: Vec<[String; 11]> = rows
        .iter()
        .map(|row| {
            let r = row.report.as_ref();
            [
                row.p.to_string(),
                row.q.to_string(),
                row.cf.to_string(),
                row.n.to_string(),
                r.map_or_else(dash, |r| r.upper_thm1.to_string()),
                r.map_or_else(dash, |r| r.upper_lemma1.to_string()),
                r.map_or_else(dash, |r| r.upper_sw.to_string()),
                row.lower.to_string(),
                row.effective_lower.to_string(),
                row.exact.map_or_else(dash, |e| e.to_string()),
                if row.hyperbolic { "yes" } else { "no" }.to_string(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for line in &body {
        for (w, cell) in widths.iter_mut().zip(line) {
            *w = (*w).max(cell.len());
        }
    }
    let render = |cells: &mut dyn Iterator<Item = &str>| {
        cells
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", render(&mut header.iter().copied()))?;
    for line in &body {
        writeln!(out, "{}", render(&mut line.iter().map(String::as_str)))?;
    }
    Ok(())
}
