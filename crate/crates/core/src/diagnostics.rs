//! Convergence evidence for the three regimes and the slope identities.
//!
//! A probe tabulates rows (n, x, log p, normalized rate, target, residual)
//! from the exact evaluators and derives a verdict from the rows alone:
//!
//! * LD / MD, finite target: **fail** if |residual| at the largest n
//!   exceeds `rel·(1 + target)`; **inconclusive** if it is within
//!   tolerance but |residual| does not decay monotonically in n;
//!   **pass** otherwise.
//! * LD / MD, infinite target: **pass** if log p = −∞ throughout or the
//!   normalized rate grows strictly with n; **fail** otherwise.
//! * WEAK: rows hold P(scaled C_n ≤ x) against the limit CDF; the sup
//!   distance over x must be non-increasing in n (else inconclusive) and
//!   below tolerance at the largest n (else fail).
//!
//! Monte Carlo columns are optional and never enter a verdict.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::estimators::McEstimate;
use crate::families::{FamilyKind, FamilySpec, Side};
use crate::math::{abs, exp};
use crate::scalings::{validate, ScalingFamily};

/// Monotonicity slack for residual sequences.
const SLACK: f64 = 1e-12;
/// Largest n for gumbel_maxima MD probes; beyond it m_n and h_n lose
/// double-precision fidelity for slowly varying tails.
pub const GUMBEL_MD_N_CAP: u64 = 10_000_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Regime {
    #[cfg_attr(feature = "serde", serde(rename = "LD"))]
    Ld,
    #[cfg_attr(feature = "serde", serde(rename = "MD"))]
    Md,
    #[cfg_attr(feature = "serde", serde(rename = "WEAK"))]
    Weak,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Ld => "LD",
            Regime::Md => "MD",
            Regime::Weak => "WEAK",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    fn combine(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerances {
    /// LD tolerance is `ld_rel·(1 + I_LD(x))`.
    pub ld_rel: f64,
    /// MD tolerance is `md_rel·(1 + I_MD(x))`.
    pub md_rel: f64,
    /// Absolute bound on the weak sup distance.
    pub weak: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            ld_rel: 0.05,
            md_rel: 0.05,
            weak: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Row {
    pub n: u64,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub x: f64,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub log_p_exact: f64,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::opt_f64_ext", default))]
    pub log_p_mc: Option<f64>,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::opt_f64_ext", default))]
    pub stderr_log: Option<f64>,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub s_n: f64,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub normalized_rate: f64,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub rate_target: f64,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McMeta {
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceReport {
    pub family: String,
    pub regime: Regime,
    #[cfg_attr(feature = "serde", serde(default))]
    pub scaling: Option<String>,
    pub rows: Vec<Row>,
    pub verdict: Verdict,
    pub tolerances: Tolerances,
    #[cfg_attr(feature = "serde", serde(default))]
    pub notes: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub monte_carlo: Option<McMeta>,
}

impl ConvergenceReport {
    /// Re-derives the verdict from the stored rows and tolerances.
    pub fn recompute_verdict(&self) -> Verdict {
        judge(self.regime, &self.rows, &self.tolerances).0
    }

    /// sup_x |residual| per n, ascending in n (meaningful for WEAK).
    pub fn sup_distance_by_n(&self) -> Vec<(u64, f64)> {
        sup_by_n(&self.rows)
    }

    /// Rows for one x, ascending in n.
    pub fn rows_at(&self, x: f64) -> Vec<&Row> {
        let mut v: Vec<&Row> = self.rows.iter().filter(|r| r.x == x).collect();
        v.sort_by_key(|r| r.n);
        v
    }
}

fn sup_by_n(rows: &[Row]) -> Vec<(u64, f64)> {
    let mut m: BTreeMap<u64, f64> = BTreeMap::new();
    for r in rows {
        let e = m.entry(r.n).or_insert(0.0);
        let d = abs(r.residual);
        // NaN poisons the sup on purpose
        if d.is_nan() || d > *e {
            *e = d;
        }
    }
    m.into_iter().collect()
}

fn non_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] + SLACK)
}

/// The verdict rules of the module documentation, with one note per x
/// (or per report for WEAK).
pub fn judge(regime: Regime, rows: &[Row], tol: &Tolerances) -> (Verdict, Vec<String>) {
    let mut notes = Vec::new();
    if rows.is_empty() {
        return (Verdict::Inconclusive, alloc::vec!["no rows".to_string()]);
    }
    if regime == Regime::Weak {
        let sups = sup_by_n(rows);
        let d: Vec<f64> = sups.iter().map(|s| s.1).collect();
        let last = d[d.len() - 1];
        let v = if !(last < tol.weak) {
            Verdict::Fail
        } else if !non_increasing(&d) {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        notes.push(format!(
            "sup distance by n: {}; tolerance {}",
            sups.iter().map(|(n, d)| format!("{n}: {d:e}")).collect::<Vec<_>>().join(", "),
            tol.weak
        ));
        return (v, notes);
    }
    let rel = if regime == Regime::Ld { tol.ld_rel } else { tol.md_rel };
    let mut by_x: BTreeMap<u64, Vec<&Row>> = BTreeMap::new();
    for r in rows {
        by_x.entry(order_key(r.x)).or_default().push(r);
    }
    let mut verdict = Verdict::Pass;
    for group in by_x.values_mut() {
        group.sort_by_key(|r| r.n);
        let x = group[0].x;
        let target = group[0].rate_target;
        let v = if target.is_infinite() {
            let vals: Vec<f64> = group.iter().map(|r| r.normalized_rate).collect();
            let growing = vals.iter().all(|v| *v == f64::INFINITY)
                || vals.windows(2).all(|w| w[1] > w[0] || w[1] == f64::INFINITY);
            notes.push(format!(
                "x = {x}: infinite target, normalized rates {vals:?} -> {}",
                if growing { "diverging" } else { "not diverging" }
            ));
            if growing {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        } else {
            let res: Vec<f64> = group.iter().map(|r| abs(r.residual)).collect();
            let last = res[res.len() - 1];
            let t = rel * (1.0 + target);
            let v = if !(last <= t) {
                Verdict::Fail
            } else if !non_increasing(&res) {
                Verdict::Inconclusive
            } else {
                Verdict::Pass
            };
            notes.push(format!(
                "x = {x}: final |residual| {last:e} against tolerance {t:e}, monotone decay {}",
                non_increasing(&res)
            ));
            v
        };
        verdict = verdict.combine(v);
    }
    (verdict, notes)
}

/// Total order on f64 usable as a map key.
fn order_key(x: f64) -> u64 {
    let b = x.to_bits();
    if b >> 63 == 1 {
        !b
    } else {
        b | (1 << 63)
    }
}

fn residual(normalized: f64, target: f64) -> f64 {
    if normalized.is_infinite() && target.is_infinite() && normalized.signum() == target.signum() {
        0.0
    } else {
        normalized - target
    }
}

fn side_of(x: f64) -> Result<Side> {
    if x > 0.0 {
        Ok(Side::Upper)
    } else if x < 0.0 {
        Ok(Side::Lower)
    } else {
        Err(Error::InvalidGrid("probe points must avoid x = 0".into()))
    }
}

fn finish(
    fam: &FamilySpec,
    regime: Regime,
    scaling: Option<String>,
    rows: Vec<Row>,
    tol: &Tolerances,
    mut notes: Vec<String>,
) -> ConvergenceReport {
    let (verdict, mut more) = judge(regime, &rows, tol);
    notes.append(&mut more);
    ConvergenceReport {
        family: fam.to_string(),
        regime,
        scaling,
        rows,
        verdict,
        tolerances: *tol,
        notes,
        monte_carlo: None,
    }
}

fn check_lists(x_list: &[f64], n_list: &[u64]) -> Result<()> {
    if x_list.is_empty() || n_list.is_empty() {
        return Err(Error::InvalidGrid("x and n lists must be non-empty".into()));
    }
    if x_list.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid("x values must be finite".into()));
    }
    Ok(())
}

/// Large-deviation probe: −log P(C_n ≥ x)/v_n (x > 0) or −log P(C_n ≤ x)/v_n
/// (x < 0) against I_LD(x).
pub fn ldp_probe(fam: &FamilySpec, x_list: &[f64], n_list: &[u64], tol: &Tolerances) -> Result<ConvergenceReport> {
    check_lists(x_list, n_list)?;
    let rate = fam.rate_ld();
    let mut rows = Vec::new();
    for &x in x_list {
        let side = side_of(x)?;
        let target = rate.eval(x);
        for &n in n_list {
            let lp = fam.exact_log_tail(n, x, side)?;
            let s_n = fam.speed(n)?;
            let norm = -lp / s_n;
            rows.push(Row {
                n,
                x,
                log_p_exact: lp,
                log_p_mc: None,
                stderr_log: None,
                s_n,
                normalized_rate: norm,
                rate_target: target,
                residual: residual(norm, target),
            });
        }
    }
    Ok(finish(fam, Regime::Ld, None, rows, tol, span_note(n_list)))
}

fn span_note(n_list: &[u64]) -> Vec<String> {
    let lo = n_list.iter().copied().min().unwrap_or(1) as f64;
    let hi = n_list.iter().copied().max().unwrap_or(1) as f64;
    if hi < 1000.0 * lo {
        alloc::vec![format!("n range [{lo}, {hi}] spans fewer than three decades")]
    } else {
        Vec::new()
    }
}

/// The n range an MD scaling is validated on: the probe's own range,
/// widened to three decades when it is shorter.
fn validation_range(fam: &FamilySpec, n_list: &[u64]) -> [u64; 2] {
    let lo = n_list.iter().copied().min().unwrap_or(2).max(fam.min_n());
    let hi = n_list.iter().copied().max().unwrap_or(lo).max(lo.saturating_mul(1000));
    [lo, hi]
}

/// Moderate-deviation probe: −a_n·log P(a_n v_n C_n ≥ x) against I_MD(x)
/// (√(a_n n) in place of a_n v_n for Gaussian sums).
pub fn md_probe(
    fam: &FamilySpec,
    scaling: &ScalingFamily,
    x_list: &[f64],
    n_list: &[u64],
    tol: &Tolerances,
) -> Result<ConvergenceReport> {
    check_lists(x_list, n_list)?;
    let range = validation_range(fam, n_list);
    let val = validate(scaling, fam, &range)?;
    if !val.accepted() {
        return Err(Error::ScalingRejected(format!(
            "{scaling} against {fam}: {} fails on n in [{}, {}]",
            val.failures().join(", "),
            range[0],
            range[1]
        )));
    }
    let mut notes = Vec::new();
    let mut ns: Vec<u64> = n_list.to_vec();
    if fam.kind() == FamilyKind::GumbelMaxima && ns.iter().any(|&n| n > GUMBEL_MD_N_CAP) {
        ns.retain(|&n| n <= GUMBEL_MD_N_CAP);
        notes.push(format!("n capped at {GUMBEL_MD_N_CAP:e} for gumbel_maxima"));
        if ns.is_empty() {
            return Err(Error::InvalidGrid("every n exceeds the gumbel_maxima cap".into()));
        }
    }
    let rate = fam.rate_md();
    let mut rows = Vec::new();
    for &x in x_list {
        let side = side_of(x)?;
        let target = rate.eval(x);
        for &n in &ns {
            let a = scaling.a_n(fam, n)?;
            let thr = x / fam.md_factor(n, a)?;
            let lp = fam.exact_log_tail(n, thr, side)?;
            let norm = -a * lp;
            rows.push(Row {
                n,
                x,
                log_p_exact: lp,
                log_p_mc: None,
                stderr_log: None,
                s_n: 1.0 / a,
                normalized_rate: norm,
                rate_target: target,
                residual: residual(norm, target),
            });
        }
    }
    Ok(finish(fam, Regime::Md, Some(scaling.to_string()), rows, tol, notes))
}

/// Weak-convergence probe: P(v_n C_n ≤ x) (√n C_n for Gaussian sums)
/// against the limit CDF over `x_grid`.
pub fn weak_probe(fam: &FamilySpec, n_list: &[u64], x_grid: &[f64], tol: &Tolerances) -> Result<ConvergenceReport> {
    if x_grid.len() < 41 {
        return Err(Error::GridTooShort {
            min: 41,
            got: x_grid.len(),
        });
    }
    check_lists(x_grid, n_list)?;
    let mut rows = Vec::new();
    for &n in n_list {
        let w = fam.weak_factor(n)?;
        let thr: Vec<f64> = x_grid.iter().map(|x| x / w).collect();
        let lps = fam.exact_log_lower_tail_many(n, &thr)?;
        for (&x, lp) in x_grid.iter().zip(lps) {
            let p = exp(lp);
            let h = fam.limit_cdf(x);
            rows.push(Row {
                n,
                x,
                log_p_exact: lp,
                log_p_mc: None,
                stderr_log: None,
                s_n: w,
                normalized_rate: p,
                rate_target: h,
                residual: p - h,
            });
        }
    }
    Ok(finish(fam, Regime::Weak, None, rows, tol, span_note(n_list)))
}

/// `k` equally spaced points between the 0.5% and 99.5% quantiles of the
/// family's limit law.
pub fn default_weak_grid(fam: &FamilySpec, k: usize) -> Vec<f64> {
    let q = |p: f64| {
        let (mut lo, mut hi) = (-1e3, 1e3);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if fam.limit_cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    };
    let (a, b) = (q(0.005), q(0.995));
    (0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect()
}

/// Where a report row's event lives on the unscaled C_n.
pub fn row_event(
    fam: &FamilySpec,
    regime: Regime,
    scaling: Option<&ScalingFamily>,
    n: u64,
    x: f64,
) -> Result<(f64, Side)> {
    match regime {
        Regime::Ld => Ok((x, side_of(x)?)),
        Regime::Md => {
            let s = scaling.ok_or_else(|| Error::InvalidParameter {
                target: "row_event".into(),
                reason: "MD rows need their scaling".into(),
            })?;
            let a = s.a_n(fam, n)?;
            Ok((x / fam.md_factor(n, a)?, side_of(x)?))
        }
        Regime::Weak => Ok((x / fam.weak_factor(n)?, Side::Lower)),
    }
}

/// Fills the Monte Carlo columns of every row using `estimator`
/// (called as `estimator(fam, n, threshold, side, trials, seed)`).
pub fn attach_monte_carlo<F>(
    report: &mut ConvergenceReport,
    fam: &FamilySpec,
    scaling: Option<&ScalingFamily>,
    trials: u64,
    seed: u64,
    estimator: F,
) -> Result<()>
where
    F: Fn(&FamilySpec, u64, f64, Side, u64, u64) -> Result<McEstimate>,
{
    for row in report.rows.iter_mut() {
        let (thr, side) = row_event(fam, report.regime, scaling, row.n, row.x)?;
        let est = estimator(fam, row.n, thr, side, trials, seed)?;
        row.log_p_mc = Some(est.log_p_hat);
        row.stderr_log = Some(est.stderr_log);
    }
    report.monte_carlo = Some(McMeta { trials, seed });
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SideCheck {
    pub side: String,
    pub applicable: bool,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub finite_difference: f64,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub target: f64,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SlopeReport {
    pub family: String,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub h: f64,
    pub checks: Vec<SideCheck>,
}

impl SlopeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// One-sided difference quotients of I_LD at 0 against the slopes of
/// I_MD; for Gaussian sums the second difference against 1/σ².
pub fn slope_identity_check(fam: &FamilySpec, h: f64) -> Result<SlopeReport> {
    if !(h > 0.0 && h <= 1e-3) {
        return Err(Error::InvalidParameter {
            target: "slope_identity_check".into(),
            reason: format!("step h = {h} must lie in (0, 1e-3]"),
        });
    }
    let ld = fam.rate_ld();
    let md = fam.rate_md();
    let i0 = ld.eval(0.0);
    let mut checks = Vec::new();
    if let FamilySpec::ClassicalSums { sigma } = fam {
        let d2 = (ld.eval(h) - 2.0 * i0 + ld.eval(-h)) / (h * h);
        let target = 1.0 / (sigma * sigma);
        checks.push(SideCheck {
            side: "second".into(),
            applicable: true,
            finite_difference: d2,
            target,
            tolerance: 1e-4,
            passed: abs(d2 - target) <= 1e-4,
        });
    } else {
        let tol = (10.0 * h).max(1e-6);
        let right = (ld.eval(h) - i0) / h;
        let rt = md.right_slope_at_zero();
        checks.push(SideCheck {
            side: "right".into(),
            applicable: true,
            finite_difference: right,
            target: rt,
            tolerance: tol,
            passed: abs(right - rt) <= tol,
        });
        let applicable = md.eval(-h).is_finite();
        let left = (i0 - ld.eval(-h)) / h;
        let lt = md.left_slope_at_zero();
        checks.push(SideCheck {
            side: "left".into(),
            applicable,
            finite_difference: left,
            target: lt,
            tolerance: tol,
            passed: !applicable || abs(left - lt) <= tol,
        });
    }
    Ok(SlopeReport {
        family: fam.to_string(),
        h,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::mc_log_tail;

    fn fam(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    fn repl() -> FamilySpec {
        fam("replacement:exponential:1,exponential:2,t=1,beta=0.4")
    }

    const DECADES: [u64; 4] = [10, 100, 1000, 10_000];

    #[test]
    fn ld_replacement_closed_form() {
        let r = ldp_probe(&repl(), &[0.5], &DECADES, &Tolerances::default()).unwrap();
        for row in &r.rows {
            let want = (0.6f64).ln().abs() / row.n as f64;
            assert!(abs(row.residual - want) < 1e-12, "{row:?}");
        }
        assert!(r.rows.last().unwrap().residual < 1e-4);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn ld_minima_exact_and_null() {
        let m = fam("minima:exponential:1");
        let r = ldp_probe(&m, &[0.3], &DECADES, &Tolerances::default()).unwrap();
        assert!(r.rows.iter().all(|row| abs(row.residual) < 1e-15));
        assert_eq!(r.verdict, Verdict::Pass);
        let u = fam("minima:uniform01");
        let r = ldp_probe(&u, &[-0.1], &DECADES, &Tolerances::default()).unwrap();
        assert!(r.rows.iter().all(|row| row.log_p_exact == f64::NEG_INFINITY && row.residual == 0.0));
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(ldp_probe(&u, &[0.0], &DECADES, &Tolerances::default()).is_err());
    }

    #[test]
    fn md_minima_exact() {
        let m = fam("minima:exponential:1");
        let s: ScalingFamily = "pow:0.5".parse().unwrap();
        let r = md_probe(&m, &s, &[2.0], &[100], &Tolerances::default()).unwrap();
        assert!(abs(r.rows[0].normalized_rate - 2.0) < 1e-12);
    }

    #[test]
    fn md_replacement_and_rejection() {
        let rep = repl();
        let s: ScalingFamily = "pow:0.5".parse().unwrap();
        let ns = [100u64, 10_000, 1_000_000, 100_000_000];
        let r = md_probe(&rep, &s, &[1.0], &ns, &Tolerances::default()).unwrap();
        let res: Vec<f64> = r.rows.iter().map(|r| abs(r.residual)).collect();
        assert!(res.windows(2).all(|w| w[1] < w[0]), "{res:?}");
        assert_eq!(r.verdict, Verdict::Pass);
        let bad: ScalingFamily = "logpow:0.5".parse().unwrap();
        assert!(matches!(
            md_probe(&rep, &bad, &[1.0], &ns, &Tolerances::default()),
            Err(Error::ScalingRejected(_))
        ));
    }

    #[test]
    fn weak_minima_exact_and_replacement() {
        let m = fam("minima:exponential:1");
        let g = default_weak_grid(&m, 101);
        let r = weak_probe(&m, &[10, 1000], &g, &Tolerances::default()).unwrap();
        assert!(r.sup_distance_by_n().iter().all(|(_, d)| *d < 1e-12));
        let rep = repl();
        let g = default_weak_grid(&rep, 101);
        let r = weak_probe(&rep, &[100, 10_000], &g, &Tolerances::default()).unwrap();
        assert!(r.sup_distance_by_n()[1].1 < 0.01);
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(matches!(
            weak_probe(&rep, &[100], &g[..40], &Tolerances::default()),
            Err(Error::GridTooShort { .. })
        ));
    }

    #[test]
    fn verdict_policy() {
        let mk = |n, res: f64| Row {
            n,
            x: 1.0,
            log_p_exact: -1.0,
            log_p_mc: None,
            stderr_log: None,
            s_n: n as f64,
            normalized_rate: 1.0 + res,
            rate_target: 1.0,
            residual: res,
        };
        let t = Tolerances::default();
        assert_eq!(judge(Regime::Ld, &[mk(10, 0.05), mk(100, 0.01)], &t).0, Verdict::Pass);
        assert_eq!(judge(Regime::Ld, &[mk(10, 0.01), mk(100, 0.02)], &t).0, Verdict::Inconclusive);
        assert_eq!(judge(Regime::Ld, &[mk(10, 0.01), mk(100, 0.2)], &t).0, Verdict::Fail);
        // row order does not matter
        assert_eq!(judge(Regime::Ld, &[mk(100, 0.01), mk(10, 0.05)], &t).0, Verdict::Pass);
        let mut inf = mk(10, f64::NEG_INFINITY);
        inf.rate_target = f64::INFINITY;
        inf.normalized_rate = 3.0;
        let mut inf2 = inf.clone();
        inf2.n = 100;
        inf2.normalized_rate = 2.0;
        assert_eq!(judge(Regime::Ld, &[inf.clone(), inf2.clone()], &t).0, Verdict::Fail);
        inf2.normalized_rate = 30.0;
        assert_eq!(judge(Regime::Ld, &[inf, inf2], &t).0, Verdict::Pass);
    }

    #[test]
    fn slope_checks() {
        let t = 1e-4;
        let r = slope_identity_check(&fam("minima:exponential:1"), t).unwrap();
        assert!(r.passed());
        assert!(abs(r.checks[0].finite_difference - 1.0) < 1e-12);
        assert!(!r.checks[1].applicable);
        let r = slope_identity_check(&fam("gumbel_maxima:weibull:2"), t).unwrap();
        assert!(r.passed() && r.checks[0].target == 1.0);
        let r = slope_identity_check(&repl(), t).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(abs(r.checks[1].target + 0.581_976_706_869_326_4) < 1e-15);
        let r = slope_identity_check(&fam("classical:sigma=2"), 1e-3).unwrap();
        assert!(r.passed() && r.checks[0].target == 0.25);
        assert!(slope_identity_check(&FamilySpec::Coupon, 0.1).is_err());
    }

    #[test]
    fn monte_carlo_attachment() {
        let m = fam("minima:exponential:1");
        let mut r = ldp_probe(&m, &[0.1], &[10, 20], &Tolerances::default()).unwrap();
        let v = r.verdict;
        attach_monte_carlo(&mut r, &m, None, 20_000, 5, mc_log_tail).unwrap();
        assert_eq!(r.recompute_verdict(), v);
        for row in &r.rows {
            let mc = row.log_p_mc.unwrap();
            assert!(abs(mc - row.log_p_exact) < 4.0 * row.stderr_log.unwrap() + 1e-12);
        }
        assert_eq!(r.monte_carlo, Some(McMeta { trials: 20_000, seed: 5 }));
    }
}
