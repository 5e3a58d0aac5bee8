//! CSV and JSON report files, and scaling tables.
//!
//! CSV numbers use Rust's shortest round-trip formatting; infinities are
//! written `inf` / `-inf`, NaN as `nan`, and absent MC columns as empty
//! fields.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context};
use ncmd_core::diagnostics::{ConvergenceReport, Regime, Row};
use ncmd_core::scalings::ScalingFamily;

pub const CSV_HEADER: [&str; 12] = [
    "family",
    "regime",
    "scaling",
    "n",
    "x",
    "log_p_exact",
    "log_p_mc",
    "stderr_log",
    "s_n",
    "normalized_rate",
    "rate_target",
    "residual",
];

pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        // Display is shortest round-trip and spells infinities inf / -inf
        v.to_string()
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

/// One CSV line's worth of data: a row with its report's labels.
#[derive(Debug, Clone)]
pub struct LabeledRow<'a> {
    pub family: &'a str,
    pub regime: Regime,
    pub scaling: Option<&'a str>,
    pub row: &'a Row,
}

pub fn labeled_rows(reports: &[ConvergenceReport]) -> Vec<LabeledRow<'_>> {
    reports
        .iter()
        .flat_map(|r| {
            r.rows.iter().map(move |row| LabeledRow {
                family: &r.family,
                regime: r.regime,
                scaling: r.scaling.as_deref(),
                row,
            })
        })
        .collect()
}

/// Rows of several reports ordered by (regime, x, n), then family.
pub fn merged_rows(reports: &[ConvergenceReport]) -> Vec<LabeledRow<'_>> {
    let mut rows = labeled_rows(reports);
    rows.sort_by(|a, b| {
        a.regime
            .cmp(&b.regime)
            .then(a.row.x.total_cmp(&b.row.x))
            .then(a.row.n.cmp(&b.row.n))
            .then(a.family.cmp(b.family))
            .then(a.scaling.cmp(&b.scaling))
    });
    rows
}

pub fn write_csv<W: Write>(rows: &[LabeledRow<'_>], out: W) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let row = r.row;
        w.write_record([
            r.family.to_string(),
            r.regime.as_str().to_string(),
            r.scaling.unwrap_or("").to_string(),
            row.n.to_string(),
            fmt_num(row.x),
            fmt_num(row.log_p_exact),
            fmt_opt(row.log_p_mc),
            fmt_opt(row.stderr_log),
            fmt_num(row.s_n),
            fmt_num(row.normalized_rate),
            fmt_num(row.rate_target),
            fmt_num(row.residual),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_report_csv(report: &ConvergenceReport, path: &Path) -> anyhow::Result<()> {
    let f = fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    write_csv(&labeled_rows(std::slice::from_ref(report)), f)
}

pub fn write_report_json(report: &ConvergenceReport, path: &Path) -> anyhow::Result<()> {
    let s = serde_json::to_string_pretty(report)?;
    fs::write(path, s + "\n").with_context(|| format!("cannot write {}", path.display()))
}

/// Reads a report file holding either one report object or an array of them.
pub fn read_reports(path: &Path) -> anyhow::Result<Vec<ConvergenceReport>> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let v: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))?;
    let reports = if v.is_array() {
        serde_json::from_value(v)
    } else {
        serde_json::from_value(v).map(|r| vec![r])
    }
    .with_context(|| format!("{} is not a convergence report", path.display()))?;
    Ok(reports)
}

/// Loads `table:<path>`: a CSV of `n,a_n` pairs (a header line is optional).
pub fn load_table_scaling(path: &str) -> anyhow::Result<ScalingFamily> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .with_context(|| format!("cannot read scaling table {path}"))?;
    let mut points = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() != 2 {
            bail!("{path}: line {} needs exactly two columns n,a_n", i + 1);
        }
        let (n, a) = (rec[0].parse::<f64>(), rec[1].parse::<f64>());
        match (n, a) {
            (Ok(n), Ok(a)) => points.push((n, a)),
            // tolerate a header
            _ if i == 0 => continue,
            _ => bail!("{path}: line {} is not numeric: `{}`", i + 1, rec.iter().collect::<Vec<_>>().join(",")),
        }
    }
    Ok(ScalingFamily::table(path, points)?)
}

/// `pow:`, `logpow:` or `table:<path>` (the latter read from disk).
pub fn parse_scaling(spec: &str) -> anyhow::Result<ScalingFamily> {
    match spec.trim().strip_prefix("table:") {
        Some(path) => load_table_scaling(path),
        None => Ok(spec.parse()?),
    }
}
