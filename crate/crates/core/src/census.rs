//! Census of two-bridge links up to a bound on `p`.
//!
//! Links are grouped by the classes `{±q^{±1} mod p}`, one row per class, keyed
//! by the smallest member. Rows can be sharpened with volumes from an external
//! table: a volume `V` gives the integer lower bound `⌈V / v_3⌉`.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{complexity_interval, BoundReport, V3};
use crate::cf::{gcd, normalize, ContinuedFraction, TwoBridgeLink};
use crate::error::{Error, Result};

/// Slack subtracted from volume quotients before rounding up.
pub const VOLUME_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Class representative for `(p, q)` with `q < p/2`, if `q` is the class minimum.
fn representative(p: u64, q: u64) -> Option<TwoBridgeLink> {
    if gcd(p, q) != 1 {
        return None;
    }
    let link = normalize(p as i64, q as i64).ok()?;
    (link.canonical_q() == q).then_some(link)
}

fn links_for(p: u64) -> Vec<TwoBridgeLink> {
    (1..=p / 2).filter_map(|q| representative(p, q)).collect()
}

/// One representative per class with `p <= max_p`, ordered by `(p, q*)`.
pub fn enumerate_links(max_p: u64) -> Vec<TwoBridgeLink> {
    enumerate_with(max_p, Execution::Serial)
}

pub fn enumerate_with(max_p: u64, execution: Execution) -> Vec<TwoBridgeLink> {
    if max_p < 2 {
        return Vec::new();
    }
    let per_p: Vec<Vec<TwoBridgeLink>> = match execution {
        Execution::Serial => (2..=max_p).map(links_for).collect(),
        Execution::Parallel => (2..=max_p).into_par_iter().map(links_for).collect(),
    };
    per_p.into_iter().flatten().collect()
}

/// `⌈volume / v_3 - 1e-9⌉`, clamped at zero.
pub fn volume_lower_bound(volume: f64) -> u64 {
    let quotient = (volume / V3 - VOLUME_SLACK).ceil();
    if quotient <= 0.0 {
        0
    } else {
        quotient as u64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeEntry {
    pub volume: f64,
    /// 1-based line in the source file.
    pub line: u64,
    /// Set for links that are not hyperbolic; such volumes are never used.
    pub flagged: bool,
}

/// Volumes keyed by class representative `(p, q*)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VolumeTable {
    entries: BTreeMap<(u64, u64), VolumeEntry>,
}

impl VolumeTable {
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut table = Self::default();
        let mut saw_header = false;
        for record in rdr.records() {
            let record = record.map_err(|e| Error::VolumeRow {
                line: e.position().map(|p| p.line()).unwrap_or(0),
                message: e.to_string(),
            })?;
            let line = record.position().map(|p| p.line()).unwrap_or(0);
            if record.iter().all(str::is_empty) {
                continue;
            }
            if !saw_header {
                saw_header = true;
                let header: Vec<_> = record.iter().collect();
                if header != ["p", "q", "volume"] {
                    return Err(Error::VolumeRow {
                        line,
                        message: format!(
                            "expected header `p,q,volume`, found `{}`",
                            header.join(",")
                        ),
                    });
                }
                continue;
            }
            table.insert_record(&record, line)?;
        }
        Ok(table)
    }

    fn insert_record(&mut self, record: &csv::StringRecord, line: u64) -> Result<()> {
        let row_err = |message: String| Error::VolumeRow { line, message };
        if record.len() != 3 {
            return Err(row_err(format!(
                "expected 3 columns, found {}",
                record.len()
            )));
        }
        let int = |idx: usize, name: &str| {
            record[idx]
                .parse::<i64>()
                .map_err(|_| row_err(format!("{name} is not an integer: `{}`", &record[idx])))
        };
        let p = int(0, "p")?;
        let q = int(1, "q")?;
        let volume: f64 = record[2]
            .parse()
            .map_err(|_| row_err(format!("volume is not numeric: `{}`", &record[2])))?;
        if !volume.is_finite() || volume < 0.0 {
            return Err(row_err(format!(
                "volume must be finite and non-negative: `{}`",
                &record[2]
            )));
        }
        let link = normalize(p, q).map_err(|e| row_err(e.to_string()))?;
        let key = (link.p(), link.canonical_q());
        if let Some(existing) = self.entries.get(&key) {
            return Err(Error::DuplicateVolume {
                line,
                first: existing.line,
                p: key.0,
                q: key.1,
            });
        }
        self.entries.insert(
            key,
            VolumeEntry {
                volume,
                line,
                flagged: !link.is_hyperbolic(),
            },
        );
        Ok(())
    }

    pub fn get(&self, p: u64, q: u64) -> Option<&VolumeEntry> {
        self.entries.get(&(p, q))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u64, u64), &VolumeEntry)> {
        self.entries.iter()
    }

    /// Keys that a census up to `max_p` will not consume.
    pub fn unmatched(&self, max_p: u64) -> Vec<(u64, u64)> {
        self.entries
            .keys()
            .copied()
            .filter(|&(p, _)| p > max_p)
            .collect()
    }
}

pub fn ingest_volumes(path: &Path) -> Result<VolumeTable> {
    let file = File::open(path).map_err(|e| Error::VolumeFile {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    VolumeTable::from_reader(file)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRow {
    pub p: u64,
    /// Class representative `q*`, the minimum of `class_members`.
    pub q: u64,
    pub class_members: Vec<u64>,
    pub cf: ContinuedFraction,
    pub n: usize,
    pub hyperbolic: bool,
    /// Absent for `(2, p)` torus links, where the spine construction does not apply.
    pub report: Option<BoundReport>,
    pub lower: u64,
    pub volume: Option<f64>,
    pub lower_from_volume: Option<u64>,
    pub effective_lower: u64,
    pub exact: Option<u64>,
}

fn census_row(link: &TwoBridgeLink, volumes: Option<&VolumeTable>) -> Result<CensusRow> {
    let hyperbolic = link.is_hyperbolic();
    let report = if link.n() >= 2 {
        Some(complexity_interval(link)?)
    } else {
        None
    };
    let lower = report.as_ref().map_or(0, |r| r.lower);
    let volume = volumes
        .and_then(|t| t.get(link.p(), link.q()))
        .filter(|entry| !entry.flagged)
        .map(|entry| entry.volume);
    let lower_from_volume = volume.map(volume_lower_bound);
    let effective_lower = lower.max(lower_from_volume.unwrap_or(0));
    let exact = report
        .as_ref()
        .filter(|r| r.hyperbolic && effective_lower == r.upper_thm1)
        .map(|r| r.upper_thm1);
    Ok(CensusRow {
        p: link.p(),
        q: link.q(),
        class_members: link.equivalence_class().into_iter().collect(),
        cf: link.cf().clone(),
        n: link.n(),
        hyperbolic,
        report,
        lower,
        volume,
        lower_from_volume,
        effective_lower,
        exact,
    })
}

pub fn census_report(max_p: u64, volumes: Option<&VolumeTable>) -> Result<Vec<CensusRow>> {
    census_report_with(max_p, volumes, Execution::Parallel)
}

/// Rows come back in `(p, q*)` order for either execution mode.
pub fn census_report_with(
    max_p: u64,
    volumes: Option<&VolumeTable>,
    execution: Execution,
) -> Result<Vec<CensusRow>> {
    let links = enumerate_with(max_p, execution);
    match execution {
        Execution::Serial => links.iter().map(|l| census_row(l, volumes)).collect(),
        Execution::Parallel => links.par_iter().map(|l| census_row(l, volumes)).collect(),
    }
}

pub const CSV_HEADER: [&str; 11] = [
    "p",
    "q",
    "cf",
    "n",
    "upper_thm1",
    "upper_lemma1",
    "upper_sw",
    "lower",
    "effective_lower",
    "exact",
    "hyperbolic",
];

fn opt<T: ToString>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[CensusRow], out: W) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(CSV_HEADER)?;
    for row in rows {
        let r = row.report.as_ref();
        wtr.write_record([
            row.p.to_string(),
            row.q.to_string(),
            row.cf.to_string(),
            row.n.to_string(),
            opt(r.map(|r| r.upper_thm1)),
            opt(r.map(|r| r.upper_lemma1)),
            opt(r.map(|r| r.upper_sw)),
            row.lower.to_string(),
            row.effective_lower.to_string(),
            opt(row.exact),
            row.hyperbolic.to_string(),
        ])?;
    }
    wtr.flush()
}

pub fn write_json<W: Write>(rows: &[CensusRow], mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)
}
