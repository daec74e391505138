//! Seeded experiment grid: build, classify and verify every
//! `(p, d, seed)` cell, then emit rows in a canonical order.

use std::io::Write;
use std::thread;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{build_instance, InstanceSpec};
use crate::verify::{classify_s, classify_v, verify_timed, Report};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub degrees: Vec<usize>,
    pub seeds: Vec<u64>,
    pub primes: Vec<u64>,
    /// Report `ms = 0` so that output is byte-for-byte reproducible.
    pub no_timing: bool,
}

impl SuiteConfig {
    fn cells(&self) -> Vec<InstanceSpec> {
        let mut out = Vec::new();
        for &p in &self.primes {
            for &d in &self.degrees {
                for &seed in &self.seeds {
                    out.push(InstanceSpec::new(p, d, seed));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub p: u64,
    pub d: usize,
    pub seed: u64,
    pub report: Option<Report>,
    pub s_match: bool,
    pub v_match: bool,
    pub error: Option<String>,
    pub input_error: bool,
    pub ms: f64,
}

impl CellResult {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.s_match && self.v_match && self.report.as_ref().is_some_and(|r| r.theorem_holds)
    }
}

/// One CSV line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub p: u64,
    pub d: usize,
    pub seed: u64,
    #[serde(rename = "stype_S")]
    pub stype_s: String,
    #[serde(rename = "stype_V")]
    pub stype_v: String,
    #[serde(rename = "q_S")]
    pub q_s: Option<usize>,
    #[serde(rename = "q_V")]
    pub q_v: Option<usize>,
    pub q_overlap: Option<usize>,
    #[serde(rename = "q_C")]
    pub q_c: Option<usize>,
    pub q_sum: Option<usize>,
    pub holds: bool,
    pub ms: String,
}

impl From<&CellResult> for CsvRow {
    fn from(c: &CellResult) -> Self {
        let r = c.report.as_ref();
        Self {
            p: c.p,
            d: c.d,
            seed: c.seed,
            stype_s: r.map(|r| r.stype_s.to_string()).unwrap_or_default(),
            stype_v: r.map(|r| r.stype_v.to_string()).unwrap_or_default(),
            q_s: r.map(|r| r.dims.q_s),
            q_v: r.map(|r| r.dims.q_v),
            q_overlap: r.map(|r| r.dims.q_overlap),
            q_c: r.map(|r| r.dims.q_c),
            q_sum: r.map(|r| r.dims.q_sum),
            holds: c.pass(),
            ms: format!("{:.1}", c.ms),
        }
    }
}

pub fn run_cell(spec: &InstanceSpec, no_timing: bool) -> CellResult {
    let start = Instant::now();
    let mut cell = CellResult {
        p: spec.p,
        d: spec.d,
        seed: spec.seed,
        report: None,
        s_match: false,
        v_match: false,
        error: None,
        input_error: false,
        ms: 0.0,
    };
    let outcome = (|| -> Result<()> {
        let inst = build_instance(spec)?;
        let build_ms = start.elapsed().as_secs_f64() * 1e3;
        cell.s_match = classify_s(&inst).matched;
        cell.v_match = classify_v(&inst)?.matched;
        let mut report = verify_timed(&inst, build_ms)?;
        if no_timing {
            report.timings = Default::default();
        }
        cell.report = Some(report);
        Ok(())
    })();
    if let Err(e) = outcome {
        cell.input_error = e.is_input_error();
        cell.error = Some(e.to_string());
    }
    if !no_timing {
        cell.ms = start.elapsed().as_secs_f64() * 1e3;
    }
    cell
}

/// Runs every cell, in parallel across available cores, and returns them
/// ordered by `(p, d, seed)` as listed in the config.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CellResult>> {
    if cfg.degrees.is_empty() || cfg.seeds.is_empty() || cfg.primes.is_empty() {
        return Err(Error::Input("suite ranges must be nonempty".into()));
    }
    let cells = cfg.cells();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(cells.len());
    let chunk = cells.len().div_ceil(workers);
    let results = thread::scope(|s| {
        let handles: Vec<_> = cells
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|c| run_cell(c, cfg.no_timing)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("suite worker panicked")).collect()
    });
    Ok(results)
}

pub fn write_csv<W: Write>(cells: &[CellResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for c in cells {
        w.serialize(CsvRow::from(c)).map_err(|e| Error::Input(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}

/// Parses `6..10`, `6..=10`, `6-10` (inclusive) or a comma list.
pub fn parse_range(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad range {s:?}"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    let out: Vec<u64> = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?..=num(b)?).collect()
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?..=num(b)?).collect()
    } else if let Some((a, b)) = s.split_once('-') {
        (num(a)?..=num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_>>()?
    };
    if out.is_empty() {
        return Err(Error::Input(format!("empty range {s:?}")));
    }
    Ok(out)
}
