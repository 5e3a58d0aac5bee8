//! `ncmd verify | lemmas | report`.
//!
//! Exit codes: 0 pass, 2 fail, 3 inconclusive, 1 usage or input error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ncmd_core::diagnostics::{
    attach_monte_carlo, default_weak_grid, ldp_probe, md_probe, weak_probe, ConvergenceReport, Regime, Verdict,
};
use ncmd_core::rvtoolkit::{lemma_suite, LemmaReport};
use ncmd_core::{Distribution, FamilySpec};

use crate::config::{FileConfig, ListSpec, McSection, OutputSection, RunConfig, TolSection, XSpec};
use crate::formats::{self, fmt_num};
use crate::{mc, svg};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ncmd", version, about = "Exact convergence checks for large, moderate and weak deviation regimes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
enum Cmd {
    /// Run a convergence probe and report its verdict.
    Verify(VerifyArgs),
    /// Run the regular-variation probes on a distribution.
    Lemmas(LemmaArgs),
    /// Merge JSON reports into one CSV, optionally with SVG plots.
    Report(ReportArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum RegimeArg {
    Ld,
    Md,
    Weak,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Regime to probe (may come from --config instead).
    regime: Option<RegimeArg>,
    /// Family specifier, e.g. minima:exponential:1 or coupon.
    #[arg(long)]
    family: Option<String>,
    /// MD scaling: pow:<gamma>, logpow:<gamma> or table:<path>.
    #[arg(long)]
    scaling: Option<String>,
    /// Sample sizes, comma-separated (1e3 notation accepted).
    #[arg(long)]
    n: Option<String>,
    /// Probe points, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Probe grid lo:hi:k.
    #[arg(long, allow_hyphen_values = true)]
    x_grid: Option<String>,
    /// Monte Carlo trials per row (omit to skip Monte Carlo).
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    ld_tol: Option<f64>,
    #[arg(long)]
    md_tol: Option<f64>,
    #[arg(long)]
    weak_tol: Option<f64>,
    /// Write <PREFIX>.json and <PREFIX>.csv (and <PREFIX>.svg with --plot).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    plot: bool,
    /// TOML run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Print every row, not just the summary.
    #[arg(long)]
    rows: bool,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    /// Distribution, e.g. weibull:2 (gumbel_maxima:<dist> also accepted).
    #[arg(long)]
    dist: String,
    /// Write the per-check results as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// JSON report files written by `verify`.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Write <PREFIX>.csv (and <PREFIX>-<regime>.svg with --plot); CSV goes
    /// to stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, requires = "out")]
    plot: bool,
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let out = match cli.cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Lemmas(a) => cmd_lemmas(a),
        Cmd::Report(a) => cmd_report(a),
    };
    match out {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

pub fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn flag_config(a: &VerifyArgs) -> FileConfig {
    FileConfig {
        family: a.family.clone(),
        regime: a.regime.map(|r| format!("{r:?}").to_ascii_lowercase()),
        scaling: a.scaling.clone(),
        n: a.n.clone().map(ListSpec::Text),
        x: a.x.clone().map(ListSpec::Text),
        x_grid: a.x_grid.clone(),
        mc: McSection {
            trials: a.trials,
            seed: a.seed,
            threads: a.threads,
        },
        tolerances: TolSection {
            ld_rel: a.ld_tol,
            md_rel: a.md_tol,
            weak: a.weak_tol,
        },
        output: OutputSection {
            prefix: a.out.clone(),
            plot: a.plot.then_some(true),
        },
    }
}

/// Runs the probe a resolved configuration describes.
pub fn run_probe(rc: &RunConfig) -> anyhow::Result<ConvergenceReport> {
    let fam = &rc.family;
    let mut report = match rc.regime {
        Regime::Ld => ldp_probe(fam, x_points(rc, fam)?.as_slice(), &rc.n_list, &rc.tolerances)?,
        Regime::Md => {
            let s = rc.scaling.as_ref().context("md runs need a scaling")?;
            md_probe(fam, s, x_points(rc, fam)?.as_slice(), &rc.n_list, &rc.tolerances)?
        }
        Regime::Weak => weak_probe(fam, &rc.n_list, &x_points(rc, fam)?, &rc.tolerances)?,
    };
    if let Some(m) = &rc.mc {
        attach_monte_carlo(&mut report, fam, rc.scaling.as_ref(), m.trials, m.seed, mc::estimator(m.threads))?;
    }
    Ok(report)
}

fn x_points(rc: &RunConfig, fam: &FamilySpec) -> anyhow::Result<Vec<f64>> {
    Ok(match &rc.x {
        XSpec::List(v) => v.clone(),
        XSpec::Grid(g) => g.points(),
        XSpec::Default if rc.regime == Regime::Weak => default_weak_grid(fam, 101),
        XSpec::Default => bail!("no x values given"),
    })
}

fn with_ext(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_verify(a: VerifyArgs) -> anyhow::Result<i32> {
    let base = match &a.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let rc = RunConfig::resolve(&base.overlay(flag_config(&a)))?;
    if rc.plot && rc.prefix.is_none() {
        bail!("--plot needs --out <prefix>");
    }
    let report = run_probe(&rc)?;
    print_report(&report, a.rows);
    if let Some(prefix) = &rc.prefix {
        if let Some(dir) = prefix.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        }
        formats::write_report_json(&report, &with_ext(prefix, ".json"))?;
        formats::write_report_csv(&report, &with_ext(prefix, ".csv"))?;
        if rc.plot {
            let title = format!("{} {}", report.family, report.regime.as_str());
            let path = with_ext(prefix, ".svg");
            std::fs::write(&path, svg::render_reports(&title, &[&report]))
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    Ok(verdict_code(report.verdict))
}

fn print_report(r: &ConvergenceReport, all_rows: bool) {
    println!("family   {}", r.family);
    println!("regime   {}", r.regime.as_str());
    if let Some(s) = &r.scaling {
        println!("scaling  {s}");
    }
    if r.regime == Regime::Weak && !all_rows {
        println!("{:>12}  {:>14}", "n", "sup_distance");
        for (n, d) in r.sup_distance_by_n() {
            println!("{n:>12}  {:>14}", fmt_num(d));
        }
    } else {
        println!(
            "{:>12}  {:>10}  {:>22}  {:>22}  {:>22}  {:>22}",
            "n", "x", "log_p_exact", "normalized_rate", "rate_target", "residual"
        );
        let mut rows: Vec<_> = r.rows.iter().collect();
        rows.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.n.cmp(&b.n)));
        for row in rows {
            println!(
                "{:>12}  {:>10}  {:>22}  {:>22}  {:>22}  {:>22}",
                row.n,
                fmt_num(row.x),
                fmt_num(row.log_p_exact),
                fmt_num(row.normalized_rate),
                fmt_num(row.rate_target),
                fmt_num(row.residual)
            );
        }
    }
    for note in &r.notes {
        println!("note     {note}");
    }
    println!("verdict  {}", r.verdict.as_str());
}

fn lemma_dist(spec: &str) -> anyhow::Result<Distribution> {
    let s = spec.trim();
    let s = s.strip_prefix("gumbel_maxima:").unwrap_or(s);
    Ok(s.parse()?)
}

fn cmd_lemmas(a: LemmaArgs) -> anyhow::Result<i32> {
    let d = lemma_dist(&a.dist)?;
    let rep: LemmaReport = lemma_suite(&d)?;
    println!("distribution  {}", rep.dist);
    println!("mu            {}", fmt_num(rep.mu));
    if rep.mu_flag {
        println!("mu-flag       mu <= 0: outside the Gumbel domain with regularly varying w");
    }
    if let Some(ell) = rep.checks.iter().find(|c| c.name == "ell_bound") {
        println!("ell-estimate  {:.6}", ell.value);
    }
    for c in &rep.checks {
        println!(
            "{:<14} {:<5} {:>14}  {}",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            fmt_num(c.value),
            c.detail
        );
    }
    let passed = rep.passed();
    println!("verdict       {}", if passed { "pass" } else { "fail" });
    if let Some(p) = &a.json {
        std::fs::write(p, serde_json::to_string_pretty(&rep)? + "\n")
            .with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(if passed { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_report(a: ReportArgs) -> anyhow::Result<i32> {
    let mut reports = Vec::new();
    for p in &a.inputs {
        reports.extend(formats::read_reports(p)?);
    }
    let rows = formats::merged_rows(&reports);
    match &a.out {
        Some(prefix) => {
            let path = with_ext(prefix, ".csv");
            let f = std::fs::File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
            formats::write_csv(&rows, f)?;
            println!("wrote {}", path.display());
        }
        None => formats::write_csv(&rows, std::io::stdout().lock())?,
    }
    if a.plot {
        let prefix = a.out.as_ref().expect("clap enforces --out with --plot");
        for regime in [Regime::Ld, Regime::Md, Regime::Weak] {
            let group: Vec<&ConvergenceReport> = reports.iter().filter(|r| r.regime == regime).collect();
            if group.is_empty() {
                continue;
            }
            let path = with_ext(prefix, &format!("-{}.svg", regime.as_str()));
            std::fs::write(&path, svg::render_reports(&format!("{} residuals", regime.as_str()), &group))
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(EXIT_PASS)
}
