//! Regular-variation probes for laws in the Gumbel domain of attraction.
//!
//! The hazard reciprocal w = F̄/f is assumed regularly varying with index
//! 1 − μ, i.e. w(x) = x^{1−μ} L(x) with L slowly varying. Everything here
//! is numeric evidence on finite grids: running maxima, trend checks and
//! ratio bounds. Nothing extrapolates.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::distributions::Distribution;
use crate::error::{invalid, Error, Result};
use crate::math::{abs, exp, ln, powf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum MuSource {
    Declared,
    Estimated,
}

/// A distribution together with its regular-variation exponent μ > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GumbelMdaProfile {
    pub dist: Distribution,
    pub mu: f64,
    pub mu_source: MuSource,
}

/// The exponent μ known in closed form for catalog members.
///
/// `Some(0.0)` for the log-normal (regularly varying w with index 1, which
/// the μ > 0 theory excludes); `None` for laws outside the Gumbel domain
/// altogether (the uniform has a finite right endpoint).
pub fn declared_mu(d: &Distribution) -> Option<f64> {
    match *d {
        Distribution::Exponential { .. } => Some(1.0),
        Distribution::Weibull { shape } => Some(shape),
        Distribution::Gamma { .. } => Some(1.0),
        Distribution::StdNormal => Some(2.0),
        Distribution::Logistic => Some(1.0),
        Distribution::LogNormal => Some(0.0),
        Distribution::Uniform01 => None,
    }
}

impl GumbelMdaProfile {
    pub fn declared(dist: Distribution) -> Result<Self> {
        match declared_mu(&dist) {
            Some(mu) if mu > 0.0 => Ok(GumbelMdaProfile {
                dist,
                mu,
                mu_source: MuSource::Declared,
            }),
            Some(_) => Err(invalid(
                dist.name(),
                "w has regular-variation exponent 1 (mu = 0); mu > 0 is required",
            )),
            None => Err(invalid(
                dist.name(),
                "finite right endpoint: not in the Gumbel domain of attraction",
            )),
        }
    }

    /// Builds a profile from an estimated exponent; rejects μ̂ ≤ 0.05.
    pub fn estimated(dist: Distribution, grid: &[f64], t: f64) -> Result<Self> {
        let est = estimate_rv_index(&dist, grid, t)?;
        if est.flagged {
            return Err(invalid(
                dist.name(),
                &format!("estimated mu {:.4} is not positive enough", est.mu_hat),
            ));
        }
        Ok(GumbelMdaProfile {
            dist,
            mu: est.mu_hat,
            mu_source: MuSource::Estimated,
        })
    }

    /// L in closed form, where the catalog provides one.
    pub fn l_closed_form(&self, x: f64) -> Option<f64> {
        match self.dist {
            Distribution::Exponential { rate } => Some(1.0 / rate),
            Distribution::Weibull { shape } => Some(1.0 / shape),
            Distribution::Logistic => Some(1.0 + exp(-x)),
            _ => None,
        }
    }
}

/// log w(x) = log F̄(x) − log f(x).
pub fn log_w(d: &Distribution, x: f64) -> Result<f64> {
    if !d.support().interior(x) {
        return Err(Error::OutsideSupport(x));
    }
    let lp = d.log_pdf(x);
    if lp == f64::NEG_INFINITY {
        return Err(Error::ZeroDensity(x));
    }
    Ok(d.log_sf(x) - lp)
}

/// Hazard reciprocal w(x) = F̄(x)/f(x).
pub fn w(d: &Distribution, x: f64) -> Result<f64> {
    log_w(d, x).map(exp)
}

/// L(x) = w(x)·x^{μ−1}.
pub fn slowly_varying_part(p: &GumbelMdaProfile, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::OutsideSupport(x));
    }
    Ok(exp(log_w(&p.dist, x)? + (p.mu - 1.0) * ln(x)))
}

fn check_n(n: u64) -> Result<()> {
    if n < 2 {
        Err(Error::SampleSizeTooSmall { n, min: 2 })
    } else {
        Ok(())
    }
}

/// m_n = F^{-1}(1 − 1/n), computed as the point where log F̄ = −log n.
pub fn characteristic_level(d: &Distribution, n: u64) -> Result<f64> {
    check_n(n)?;
    Ok(d.inverse_log_sf(-ln(n as f64)))
}

/// h_n = m_n·n·f(m_n) and the same quantity through m_n / w(m_n).
pub fn normalizing_rate_pair(d: &Distribution, n: u64) -> Result<(f64, f64)> {
    let m = characteristic_level(d, n)?;
    if m <= 0.0 {
        return Err(invalid(
            d.name(),
            &format!("m_n = {m} is not positive at n = {n}; take n larger"),
        ));
    }
    let lp = d.log_pdf(m);
    if lp == f64::NEG_INFINITY {
        return Err(Error::ZeroDensity(m));
    }
    let direct = exp(ln(m) + ln(n as f64) + lp);
    let via_w = exp(ln(m) - log_w(d, m)?);
    Ok((direct, via_w))
}

pub fn normalizing_rate(d: &Distribution, n: u64) -> Result<f64> {
    normalizing_rate_pair(d, n).map(|(h, _)| h)
}

/// Least n ≥ 2 at which h_n is defined (m_n > 0 with positive density).
pub fn least_admissible_n(d: &Distribution) -> u64 {
    let mut n = 2;
    while normalizing_rate(d, n).is_err() && n < 1 << 20 {
        n += 1;
    }
    n
}

#[derive(Debug, Clone, PartialEq)]
pub struct EllProbe {
    pub running_max: Vec<f64>,
    pub estimate: f64,
    pub grid_upper: f64,
}

/// Running maxima of −L(x)·log F̄(x)/x^μ along the grid.
pub fn ell_probe(p: &GumbelMdaProfile, x_grid: &[f64]) -> Result<EllProbe> {
    if x_grid.is_empty() {
        return Err(Error::GridTooShort { min: 1, got: 0 });
    }
    let mut out = Vec::with_capacity(x_grid.len());
    let mut best = f64::NEG_INFINITY;
    for &x in x_grid {
        let l = slowly_varying_part(p, x)?;
        let v = -l * p.dist.log_sf(x) / powf(x, p.mu);
        best = best.max(v);
        out.push(best);
    }
    Ok(EllProbe {
        estimate: best,
        grid_upper: x_grid[x_grid.len() - 1],
        running_max: out,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotterOutcome {
    pub holds: bool,
    /// max over pairs of L(y)/L(z) divided by the bound; ≤ 1 when it holds.
    pub worst_ratio: f64,
}

pub fn potter_check(
    p: &GumbelMdaProfile,
    a: f64,
    delta: f64,
    pairs: &[(f64, f64)],
) -> Result<PotterOutcome> {
    let mut worst = 0.0f64;
    for &(y, z) in pairs {
        let r = slowly_varying_part(p, y)? / slowly_varying_part(p, z)?;
        let bound = a * powf(z / y, delta).max(powf(y / z, delta));
        worst = worst.max(r / bound);
    }
    Ok(PotterOutcome {
        holds: worst <= 1.0,
        worst_ratio: worst,
    })
}

/// h_n / (μ·log n) along `n_list`.
pub fn hn_trend(p: &GumbelMdaProfile, n_list: &[u64]) -> Result<Vec<f64>> {
    n_list
        .iter()
        .map(|&n| Ok(normalizing_rate(&p.dist, n)? / (p.mu * ln(n as f64))))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RvIndexEstimate {
    pub mu_hat: f64,
    /// μ̂ ≤ 0.05: the law looks like it sits outside the μ > 0 class.
    pub flagged: bool,
}

/// μ̂ = 1 − median of log(w(t·x)/w(x))/log t over the grid.
pub fn estimate_rv_index(d: &Distribution, x_grid: &[f64], t: f64) -> Result<RvIndexEstimate> {
    if x_grid.len() < 4 {
        return Err(Error::GridTooShort {
            min: 4,
            got: x_grid.len(),
        });
    }
    if !(t > 1.0) {
        return Err(invalid("estimate_rv_index", "t must exceed 1"));
    }
    let lt = ln(t);
    let mut slopes = x_grid
        .iter()
        .map(|&x| Ok((log_w(d, t * x)? - log_w(d, x)?) / lt))
        .collect::<Result<Vec<f64>>>()?;
    slopes.sort_by(|a, b| a.total_cmp(b));
    let k = slopes.len();
    let median = if k % 2 == 1 {
        slopes[k / 2]
    } else {
        0.5 * (slopes[k / 2 - 1] + slopes[k / 2])
    };
    let mu_hat = 1.0 - median;
    Ok(RvIndexEstimate {
        mu_hat,
        flagged: mu_hat <= 0.05,
    })
}

/// `k` geometrically spaced points on [lo, hi].
pub fn geometric_grid(lo: f64, hi: f64, k: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || k < 2 {
        return Err(Error::InvalidGrid(format!(
            "geometric grid needs 0 < lo < hi < inf and k >= 2 (lo={lo}, hi={hi}, k={k})"
        )));
    }
    let (a, b) = (ln(lo), ln(hi));
    Ok((0..k)
        .map(|i| {
            if i + 1 == k {
                hi
            } else {
                exp(a + (b - a) * i as f64 / (k - 1) as f64)
            }
        })
        .collect())
}

/// 64 geometric points between the levels where log F̄ = −100 and −700.
pub fn default_tail_grid(d: &Distribution) -> Result<Vec<f64>> {
    geometric_grid(d.inverse_log_sf(-100.0), d.inverse_log_sf(-700.0), 64)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaCheck {
    pub name: String,
    pub passed: bool,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub value: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaReport {
    pub dist: String,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_ext::f64_ext"))]
    pub mu: f64,
    /// Set when μ ≤ 0 (declared or estimated): the theory does not apply.
    pub mu_flag: bool,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        !self.mu_flag && self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, passed: bool, value: f64, detail: String) -> LemmaCheck {
    LemmaCheck {
        name: name.into(),
        passed,
        value,
        detail,
    }
}

fn non_increasing(v: &[f64], slack: f64) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] + slack)
}

/// Runs every probe on `d` and collects per-lemma verdicts.
///
/// Errors only for laws outside the Gumbel domain (no μ at all); a
/// non-positive μ is reported through `mu_flag`.
pub fn lemma_suite(d: &Distribution) -> Result<LemmaReport> {
    let mu = declared_mu(d)
        .ok_or_else(|| invalid(d.name(), "finite right endpoint: not in the Gumbel domain"))?;
    let label = format!("{d}");
    if mu <= 0.0 {
        let grid = geometric_grid(1e10, 1e14, 16)?;
        let est = estimate_rv_index(d, &grid, 2.0)?;
        return Ok(LemmaReport {
            dist: label,
            mu,
            mu_flag: true,
            checks: alloc::vec![check(
                "mu_positive",
                false,
                est.mu_hat,
                format!(
                    "declared mu = {mu}; estimated mu on [1e10, 1e14] = {:.4} (flag at <= 0.05)",
                    est.mu_hat
                ),
            )],
        });
    }
    let p = GumbelMdaProfile::declared(*d)?;
    let tail = default_tail_grid(d)?;
    let mut checks = Vec::new();

    checks.push(check(
        "mu_positive",
        true,
        mu,
        format!("declared mu = {mu}"),
    ));

    // w = x^{1-mu} L
    let mut worst = 0.0f64;
    let closed = p.l_closed_form(tail[0]).is_some();
    for &x in &tail {
        let lhs = w(d, x)?;
        let l = match p.l_closed_form(x) {
            Some(l) => l,
            None => slowly_varying_part(&p, x)?,
        };
        let rhs = powf(x, 1.0 - mu) * l;
        worst = worst.max(abs(lhs - rhs) / abs(lhs));
    }
    checks.push(check(
        "representation",
        worst <= 1e-9,
        worst,
        if closed {
            format!("max relative gap between w and x^(1-mu) L (closed form): {worst:e}")
        } else {
            format!("no closed-form L; identity holds by construction ({worst:e})")
        },
    ));

    // L(x)/x^mu -> 0
    let hi = powf(10.0, (4.0f64).max(4.0 / mu)).min(1e200);
    let fgrid = geometric_grid(1.0, hi, 64)?;
    let vals = fgrid
        .iter()
        .map(|&x| Ok(slowly_varying_part(&p, x)? / powf(x, mu)))
        .collect::<Result<Vec<f64>>>()?;
    let tail_half = &vals[vals.len() / 2..];
    let decreasing = tail_half.windows(2).all(|w| w[1] < w[0]);
    let last = vals[vals.len() - 1];
    checks.push(check(
        "feller_limit",
        decreasing && last < 1e-3,
        last,
        format!("L(x)/x^mu on [1, {hi:e}]: last half strictly decreasing = {decreasing}, final {last:e}"),
    ));

    // ell <= 1/mu
    let ell = ell_probe(&p, &tail)?;
    checks.push(check(
        "ell_bound",
        ell.estimate <= 1.0 / mu + 0.05,
        ell.estimate,
        format!(
            "running max {:.6} up to x = {:.4} against 1/mu = {:.6}",
            ell.estimate,
            ell.grid_upper,
            1.0 / mu
        ),
    ));

    // w(m_n)/w(m_n(1 + 1/log n)) -> 1
    let ns = [100u64, 10_000, 100_000_000, 10_000_000_000_000_000];
    let mut gaps = Vec::new();
    for &n in &ns {
        let m = characteristic_level(d, n)?;
        let y = m * (1.0 + 1.0 / ln(n as f64));
        gaps.push(abs(exp(log_w(d, m)? - log_w(d, y)?) - 1.0));
    }
    checks.push(check(
        "w_ratio",
        non_increasing(&gaps, 1e-12),
        gaps[gaps.len() - 1],
        format!("|w(m_n)/w(y_n) - 1| at n = 1e2, 1e4, 1e8, 1e16: {gaps:?}"),
    ));

    // h_n ~ mu log n
    let hn_ns = [10_000u64, 100_000_000, 1_000_000_000_000, 10_000_000_000_000_000];
    let ratios = hn_trend(&p, &hn_ns)?;
    let dev: Vec<f64> = ratios.iter().map(|r| abs(r - 1.0)).collect();
    checks.push(check(
        "hn_log_growth",
        non_increasing(&dev, 1e-12),
        ratios[ratios.len() - 1],
        format!("h_n/(mu log n) at n = 1e4, 1e8, 1e12, 1e16: {ratios:?}"),
    ));

    // Potter bound
    let pts: Vec<f64> = tail.iter().step_by(7).copied().collect();
    let mut pairs = Vec::new();
    for &y in &pts {
        for &z in &pts {
            pairs.push((y, z));
        }
    }
    let pot = potter_check(&p, 1.5, 0.5, &pairs)?;
    checks.push(check(
        "potter_bound",
        pot.holds,
        pot.worst_ratio,
        format!("A = 1.5, delta = 0.5 over {} pairs; worst ratio {:.6}", pairs.len(), pot.worst_ratio),
    ));

    Ok(LemmaReport {
        dist: label,
        mu,
        mu_flag: false,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wb(a: f64) -> Distribution {
        Distribution::Weibull { shape: a }
    }

    #[test]
    fn w_examples() {
        assert!(abs(w(&wb(2.0), 3.0).unwrap() - 1.0 / 6.0) < 1e-15);
        assert!(abs(w(&Distribution::Logistic, 0.0).unwrap() - 2.0) < 1e-15);
        let e = Distribution::Exponential { rate: 1.0 };
        for x in [0.1, 5.0, 300.0] {
            assert!(abs(w(&e, x).unwrap() - 1.0) < 1e-15);
        }
        assert!(matches!(w(&e, -1.0), Err(Error::OutsideSupport(_))));
    }

    #[test]
    fn slowly_varying_examples() {
        let p = GumbelMdaProfile::declared(wb(2.0)).unwrap();
        assert!(abs(slowly_varying_part(&p, 7.0).unwrap() - 0.5) < 1e-14);
        let p = GumbelMdaProfile::declared(Distribution::Exponential { rate: 1.0 }).unwrap();
        assert!(abs(slowly_varying_part(&p, 5.0).unwrap() - 1.0) < 1e-15);
        let p = GumbelMdaProfile::declared(Distribution::StdNormal).unwrap();
        let l = slowly_varying_part(&p, 6.0).unwrap();
        // mpmath: 6·(sf/pdf)(6) = 0.974265965381205
        assert!(abs(l - 0.974_265_965_381_205) < 1e-12, "{l}");
    }

    #[test]
    fn lognormal_and_uniform_rejected() {
        assert!(GumbelMdaProfile::declared(Distribution::LogNormal).is_err());
        assert!(GumbelMdaProfile::declared(Distribution::Uniform01).is_err());
    }

    #[test]
    fn characteristic_level_examples() {
        let e = Distribution::Exponential { rate: 1.0 };
        assert!(abs(characteristic_level(&e, 100).unwrap() - ln(100.0)) < 1e-14);
        let m = characteristic_level(&wb(2.0), 55).unwrap();
        assert!(abs(m - 2.001_832_456_833_606) < 1e-12);
        assert!(abs(wb(2.0).cdf(m) - (1.0 - 1.0 / 55.0)) < 1e-12);
        assert!(abs(characteristic_level(&Distribution::Uniform01, 10).unwrap() - 0.9) < 1e-15);
        assert!(characteristic_level(&e, 1).is_err());
    }

    #[test]
    fn normalizing_rate_examples() {
        let (h, hw) = normalizing_rate_pair(&wb(2.0), 55).unwrap();
        assert!(abs(h - 8.014_666_370_464_942) < 1e-9, "{h}");
        assert!(abs(h / hw - 1.0) < 1e-9);
        let e = Distribution::Exponential { rate: 1.0 };
        assert!(abs(normalizing_rate(&e, 1000).unwrap() - ln(1000.0)) < 1e-12);
        assert!(abs(normalizing_rate(&Distribution::Uniform01, 10).unwrap() - 9.0) < 1e-12);
        let (h, hw) = normalizing_rate_pair(&Distribution::StdNormal, 100_000_000).unwrap();
        assert!(abs(h / hw - 1.0) < 1e-9);
    }

    #[test]
    fn ell_examples() {
        let p = GumbelMdaProfile::declared(wb(2.0)).unwrap();
        let g = geometric_grid(1.0, 20.0, 30).unwrap();
        let e = ell_probe(&p, &g).unwrap();
        assert!(e.running_max.iter().all(|v| abs(v - 0.5) < 1e-12));
        let p = GumbelMdaProfile::declared(Distribution::Exponential { rate: 1.0 }).unwrap();
        let e = ell_probe(&p, &geometric_grid(1.0, 50.0, 30).unwrap()).unwrap();
        assert!(e.running_max.iter().all(|v| abs(v - 1.0) < 1e-12));
        // normal: the running maximum is attained at the start of the grid
        // (the ratio decreases towards 1/2), so the grid starts at 8
        let p = GumbelMdaProfile::declared(Distribution::StdNormal).unwrap();
        let e = ell_probe(&p, &geometric_grid(8.0, 12.0, 16).unwrap()).unwrap();
        assert!(e.estimate > 0.45 && e.estimate < 0.55, "{}", e.estimate);
        assert!(ell_probe(&p, &[]).is_err());
    }

    #[test]
    fn potter_examples() {
        let p = GumbelMdaProfile::declared(wb(2.0)).unwrap();
        let pairs = [(1.0, 1.0), (1.0, 5.0), (7.0, 2.0)];
        let r = potter_check(&p, 1.1, 0.1, &pairs).unwrap();
        assert!(r.holds);
        assert!(abs(r.worst_ratio - 1.0 / 1.1) < 1e-15);

        let p = GumbelMdaProfile::declared(Distribution::StdNormal).unwrap();
        let g = geometric_grid(5.0, 12.0, 8).unwrap();
        let pairs: Vec<_> = g.iter().flat_map(|&y| g.iter().map(move |&z| (y, z))).collect();
        assert!(potter_check(&p, 1.5, 0.5, &pairs).unwrap().holds);

        let p = GumbelMdaProfile::declared(Distribution::Logistic).unwrap();
        let g = geometric_grid(20.0, 40.0, 8).unwrap();
        let pairs: Vec<_> = g.iter().flat_map(|&y| g.iter().map(move |&z| (y, z))).collect();
        assert!(potter_check(&p, 1.01, 0.01, &pairs).unwrap().holds);
    }

    #[test]
    fn hn_trend_examples() {
        let ns = [10u64, 1000, 1_000_000, 1_000_000_000_000];
        for a in [1.0, 2.0, 3.0] {
            let p = GumbelMdaProfile::declared(wb(a)).unwrap();
            for r in hn_trend(&p, &ns).unwrap() {
                assert!(abs(r - 1.0) < 1e-12, "a={a}: {r}");
            }
        }
        let p = GumbelMdaProfile::declared(Distribution::Exponential { rate: 1.0 }).unwrap();
        for r in hn_trend(&p, &ns).unwrap() {
            assert!(abs(r - 1.0) < 1e-12);
        }
        let p = GumbelMdaProfile::declared(Distribution::StdNormal).unwrap();
        let r = hn_trend(&p, &[10_000, 100_000_000, 1_000_000_000_000]).unwrap();
        // mpmath: 0.79919, 0.88051, 0.91287
        assert!(abs(r[0] - 0.79919) < 1e-5 && abs(r[1] - 0.88051) < 1e-5 && abs(r[2] - 0.91287) < 1e-5, "{r:?}");
        assert!(abs(r[1] - 1.0) < abs(r[0] - 1.0) && abs(r[2] - 1.0) < abs(r[1] - 1.0));
    }

    #[test]
    fn rv_index_examples() {
        let g = geometric_grid(2.0, 8.0, 9).unwrap();
        let est = estimate_rv_index(&wb(3.0), &g, 2.0).unwrap();
        assert!(abs(est.mu_hat - 3.0) < 0.02);
        let g = geometric_grid(1.0, 50.0, 9).unwrap();
        let est = estimate_rv_index(&Distribution::Exponential { rate: 1.0 }, &g, 3.0).unwrap();
        assert!(abs(est.mu_hat - 1.0) < 1e-9);
        assert!(!est.flagged);
        // log-normal: mu_hat ~ 1/log x decays only logarithmically, so the
        // flag needs a far grid
        let far = geometric_grid(1e10, 1e14, 9).unwrap();
        let est = estimate_rv_index(&Distribution::LogNormal, &far, 2.0).unwrap();
        assert!(est.flagged, "{}", est.mu_hat);
        let near = geometric_grid(10.0, 1e4, 9).unwrap();
        let est = estimate_rv_index(&Distribution::LogNormal, &near, 2.0).unwrap();
        assert!(est.mu_hat > 0.05 && est.mu_hat < 0.4, "{}", est.mu_hat);
        assert!(matches!(
            estimate_rv_index(&wb(2.0), &[1.0, 2.0, 3.0], 2.0),
            Err(Error::GridTooShort { min: 4, got: 3 })
        ));
    }

    #[test]
    fn w_ratio_at_one_million() {
        let n = 1_000_000u64;
        for d in [Distribution::Exponential { rate: 1.0 }, Distribution::Logistic] {
            let m = characteristic_level(&d, n).unwrap();
            let y = m * (1.0 + 1.0 / ln(n as f64));
            let r = w(&d, m).unwrap() / w(&d, y).unwrap();
            assert!(abs(r - 1.0) < 0.02, "{d}: {r}");
        }
        // Weibull(2): w ∝ 1/x so the ratio is exactly 1 + 1/log n, which
        // tends to 1 only logarithmically (0.072 off at n = 1e6)
        let d = wb(2.0);
        let m = characteristic_level(&d, n).unwrap();
        let r = w(&d, m).unwrap() / w(&d, m * (1.0 + 1.0 / ln(n as f64))).unwrap();
        assert!(abs(r - (1.0 + 1.0 / ln(n as f64))) < 1e-12);
    }

    #[test]
    fn lemma_suite_catalog() {
        for d in [
            Distribution::Exponential { rate: 1.0 },
            Distribution::Exponential { rate: 3.0 },
            wb(0.5),
            wb(2.0),
            wb(3.0),
            Distribution::Gamma { shape: 0.5 },
            Distribution::Gamma { shape: 3.0 },
            Distribution::StdNormal,
            Distribution::Logistic,
        ] {
            let r = lemma_suite(&d).unwrap();
            assert!(r.passed(), "{d}: {:#?}", r.checks);
        }
        let r = lemma_suite(&Distribution::LogNormal).unwrap();
        assert!(r.mu_flag && !r.passed());
        assert!(lemma_suite(&Distribution::Uniform01).is_err());
        let r = lemma_suite(&Distribution::Exponential { rate: 1.0 }).unwrap();
        let ell = r.checks.iter().find(|c| c.name == "ell_bound").unwrap();
        assert!(abs(ell.value - 1.0) < 1e-12);
    }
}
