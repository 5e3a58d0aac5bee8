//! The five scaled sequences C_n.
//!
//! | family          | C_n                    | speed v_n |
//! |-----------------|------------------------|-----------|
//! | classical_sums  | Gaussian sample mean   | n         |
//! | minima          | min(X_1..X_n)          | n         |
//! | gumbel_maxima   | M_n/m_n − 1            | h_n       |
//! | coupon          | T_n/(n log n) − 1      | log n     |
//! | replacement     | Z_n − t                | n         |
//!
//! Exact tails are for the unscaled C_n; the probes map thresholds through
//! [`FamilySpec::md_factor`] and [`FamilySpec::weak_factor`].

pub mod coupon;
pub mod rate;
pub mod replacement;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::distributions::{parse_number, Distribution};
use crate::error::{invalid, Error, Result};
use crate::math::{abs, ceil, exp, floor, ln, ln_1p, log1mexp, normal_log_sf, round, sqrt};
use crate::rng::TrialRng;
use crate::rvtoolkit::{characteristic_level, least_admissible_n, normalizing_rate, GumbelMdaProfile};

pub use rate::{shift_rate, RateFunction};
pub use replacement::ReplacementParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    ClassicalSums,
    Minima,
    GumbelMaxima,
    Coupon,
    Replacement,
}

impl FamilyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyKind::ClassicalSums => "classical_sums",
            FamilyKind::Minima => "minima",
            FamilyKind::GumbelMaxima => "gumbel_maxima",
            FamilyKind::Coupon => "coupon",
            FamilyKind::Replacement => "replacement",
        }
    }
}

/// Which tail of C_n an event refers to: `C_n ≥ x` or `C_n ≤ x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    ClassicalSums { sigma: f64 },
    Minima { dist: Distribution, fprime0: f64 },
    GumbelMaxima { profile: GumbelMdaProfile },
    Coupon,
    Replacement(ReplacementParams),
}

impl FamilySpec {
    pub fn classical(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(invalid("classical_sums", "sigma must be finite and positive"));
        }
        Ok(FamilySpec::ClassicalSums { sigma })
    }

    pub fn minima(dist: Distribution) -> Result<Self> {
        if dist.support().lower != 0.0 {
            return Err(invalid("minima", "the distribution must live on [0, inf) with F(0) = 0"));
        }
        let fprime0 = dist.density_at_lower();
        if !(fprime0 > 0.0 && fprime0.is_finite()) {
            return Err(invalid(
                "minima",
                &format!("F'(0+) = {fprime0} for {dist}; it must be finite and positive"),
            ));
        }
        Ok(FamilySpec::Minima { dist, fprime0 })
    }

    pub fn gumbel_maxima(dist: Distribution) -> Result<Self> {
        Ok(FamilySpec::GumbelMaxima {
            profile: GumbelMdaProfile::declared(dist)?,
        })
    }

    pub fn coupon() -> Self {
        FamilySpec::Coupon
    }

    pub fn replacement(params: ReplacementParams) -> Self {
        FamilySpec::Replacement(params)
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::ClassicalSums { .. } => FamilyKind::ClassicalSums,
            FamilySpec::Minima { .. } => FamilyKind::Minima,
            FamilySpec::GumbelMaxima { .. } => FamilyKind::GumbelMaxima,
            FamilySpec::Coupon => FamilyKind::Coupon,
            FamilySpec::Replacement(_) => FamilyKind::Replacement,
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind().as_str()
    }

    /// Smallest admissible n. For gumbel_maxima this is the least n ≥ 2
    /// at which m_n is positive with positive density.
    pub fn min_n(&self) -> u64 {
        match self {
            FamilySpec::GumbelMaxima { profile } => least_admissible_n(&profile.dist).max(2),
            FamilySpec::Coupon => 2,
            _ => 1,
        }
    }

    pub fn check_n(&self, n: u64) -> Result<()> {
        let min = self.min_n();
        if n < min {
            Err(Error::SampleSizeTooSmall { n, min })
        } else {
            Ok(())
        }
    }

    /// v_n.
    pub fn speed(&self, n: u64) -> Result<f64> {
        self.check_n(n)?;
        Ok(match self {
            FamilySpec::GumbelMaxima { profile } => normalizing_rate(&profile.dist, n)?,
            FamilySpec::Coupon => ln(n as f64),
            _ => n as f64,
        })
    }

    /// The multiplier of C_n in the moderate-deviation sequence:
    /// a_n·v_n, except √(a_n·n) for Gaussian sums.
    pub fn md_factor(&self, n: u64, a_n: f64) -> Result<f64> {
        match self {
            FamilySpec::ClassicalSums { .. } => {
                self.check_n(n)?;
                Ok(sqrt(a_n * n as f64))
            }
            _ => Ok(a_n * self.speed(n)?),
        }
    }

    /// The multiplier of C_n in the weakly converging sequence: v_n,
    /// except √n for Gaussian sums.
    pub fn weak_factor(&self, n: u64) -> Result<f64> {
        match self {
            FamilySpec::ClassicalSums { .. } => {
                self.check_n(n)?;
                Ok(sqrt(n as f64))
            }
            _ => self.speed(n),
        }
    }

    pub fn rate_ld(&self) -> RateFunction {
        match self {
            FamilySpec::ClassicalSums { sigma } => RateFunction::Quadratic {
                inv_var: 1.0 / (sigma * sigma),
            },
            FamilySpec::Minima { dist, .. } => RateFunction::NegLogSurvival { dist: *dist },
            FamilySpec::GumbelMaxima { profile } => {
                shift_rate(&RateFunction::GumbelJ { mu: profile.mu }, 1.0)
            }
            FamilySpec::Coupon => shift_rate(&RateFunction::CouponJ, 1.0),
            FamilySpec::Replacement(p) => RateFunction::ReplacementLd { params: *p },
        }
    }

    pub fn rate_md(&self) -> RateFunction {
        match self {
            FamilySpec::ClassicalSums { .. } => self.rate_ld(),
            FamilySpec::Minima { fprime0, .. } => RateFunction::Linear {
                left: None,
                right: *fprime0,
            },
            FamilySpec::GumbelMaxima { .. } | FamilySpec::Coupon => RateFunction::Linear {
                left: None,
                right: 1.0,
            },
            FamilySpec::Replacement(p) => RateFunction::Linear {
                left: Some(p.left_md_slope()),
                right: p.right_md_slope(),
            },
        }
    }

    /// CDF of the weak limit of the scaled sequence.
    pub fn limit_cdf(&self, x: f64) -> f64 {
        match self {
            FamilySpec::ClassicalSums { sigma } => exp(normal_log_sf(-x / sigma)),
            FamilySpec::Minima { fprime0, .. } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -crate::math::exp_m1(-fprime0 * x)
                }
            }
            FamilySpec::GumbelMaxima { .. } | FamilySpec::Coupon => exp(-exp(-x)),
            FamilySpec::Replacement(p) => p.limit_cdf(x),
        }
    }

    /// log P(C_n ≥ x).
    pub fn exact_log_upper_tail(&self, n: u64, x: f64) -> Result<f64> {
        self.check_n(n)?;
        let nf = n as f64;
        Ok(match self {
            FamilySpec::ClassicalSums { sigma } => normal_log_sf(x * sqrt(nf) / sigma),
            FamilySpec::Minima { dist, .. } => {
                if x <= 0.0 {
                    0.0
                } else {
                    nf * dist.log_sf(x)
                }
            }
            FamilySpec::GumbelMaxima { profile } => {
                let m = characteristic_level(&profile.dist, n)?;
                log1mexp(nf * profile.dist.log_cdf(m * (1.0 + x)))
            }
            FamilySpec::Coupon => coupon::coupon_log_sf(n, coupon_upper_threshold(n, x) - 1)?,
            FamilySpec::Replacement(p) => p.log_sf_z(n, x + p.t),
        })
    }

    /// log P(C_n ≤ x).
    pub fn exact_log_lower_tail(&self, n: u64, x: f64) -> Result<f64> {
        self.check_n(n)?;
        let nf = n as f64;
        Ok(match self {
            FamilySpec::ClassicalSums { sigma } => normal_log_sf(-x * sqrt(nf) / sigma),
            FamilySpec::Minima { dist, .. } => {
                if x < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    log1mexp(nf * dist.log_sf(x))
                }
            }
            FamilySpec::GumbelMaxima { profile } => {
                let m = characteristic_level(&profile.dist, n)?;
                nf * profile.dist.log_cdf(m * (1.0 + x))
            }
            FamilySpec::Coupon => coupon::coupon_log_cdf(n, coupon_lower_threshold(n, x))?,
            FamilySpec::Replacement(p) => p.log_cdf_z(n, x + p.t),
        })
    }

    pub fn exact_log_tail(&self, n: u64, x: f64, side: Side) -> Result<f64> {
        match side {
            Side::Upper => self.exact_log_upper_tail(n, x),
            Side::Lower => self.exact_log_lower_tail(n, x),
        }
    }

    /// log P(C_n ≤ x) for many x at once; the coupon DP runs a single pass.
    pub fn exact_log_lower_tail_many(&self, n: u64, xs: &[f64]) -> Result<Vec<f64>> {
        if let FamilySpec::Coupon = self {
            self.check_n(n)?;
            let ms: Vec<i64> = xs.iter().map(|&x| coupon_lower_threshold(n, x)).collect();
            let top = ms.iter().copied().max().unwrap_or(0);
            if top < n as i64 {
                return Ok(alloc::vec![f64::NEG_INFINITY; xs.len()]);
            }
            let table = coupon::coupon_log_cdf_table(n, top as u64)?;
            return Ok(ms
                .iter()
                .map(|&m| if m < 0 { f64::NEG_INFINITY } else { table[m as usize].min(0.0) })
                .collect());
        }
        xs.iter().map(|&x| self.exact_log_lower_tail(n, x)).collect()
    }

    /// Precomputes the per-n constants of the sampler.
    pub fn sampler(&self, n: u64) -> Result<Sampler<'_>> {
        self.check_n(n)?;
        let aux = match self {
            FamilySpec::GumbelMaxima { profile } => characteristic_level(&profile.dist, n)?,
            FamilySpec::Coupon => n as f64 * ln(n as f64),
            _ => 0.0,
        };
        Ok(Sampler { fam: self, n, aux })
    }

    /// One realization of C_n.
    pub fn sample(&self, n: u64, rng: &mut TrialRng) -> Result<f64> {
        Ok(self.sampler(n)?.draw(rng))
    }

    /// Whether a sampled C_n lies in the tail event at `x`. Coupon samples
    /// are mapped back to the integer T_n so the integer thresholds of the
    /// exact evaluator apply verbatim.
    pub fn in_event(&self, n: u64, c: f64, x: f64, side: Side) -> bool {
        match self {
            FamilySpec::Coupon => {
                let nf = n as f64;
                let t = round((c + 1.0) * nf * ln(nf)) as i64;
                match side {
                    Side::Upper => t >= coupon_upper_threshold(n, x),
                    Side::Lower => t <= coupon_lower_threshold(n, x),
                }
            }
            _ => match side {
                Side::Upper => c >= x,
                Side::Lower => c <= x,
            },
        }
    }
}

/// (x + 1)·n·log n, snapped to the nearest integer when within rounding.
fn coupon_level(n: u64, x: f64) -> f64 {
    let nf = n as f64;
    let v = (x + 1.0) * nf * ln(nf);
    let r = round(v);
    if abs(v - r) <= 1e-9 * v.abs().max(1.0) {
        r
    } else {
        v
    }
}

/// Least integer m with "C_n ≥ x" ⇔ "T_n ≥ m".
pub fn coupon_upper_threshold(n: u64, x: f64) -> i64 {
    let v = ceil(coupon_level(n, x));
    v.clamp(i64::MIN as f64, i64::MAX as f64) as i64
}

/// Greatest integer m with "C_n ≤ x" ⇔ "T_n ≤ m".
pub fn coupon_lower_threshold(n: u64, x: f64) -> i64 {
    let v = floor(coupon_level(n, x));
    v.clamp(i64::MIN as f64, i64::MAX as f64) as i64
}

/// A family sampler with its per-n constants resolved.
#[derive(Debug, Clone)]
pub struct Sampler<'a> {
    fam: &'a FamilySpec,
    n: u64,
    /// m_n for gumbel_maxima, n·log n for coupon.
    aux: f64,
}

impl Sampler<'_> {
    pub fn draw(&self, rng: &mut TrialRng) -> f64 {
        let nf = self.n as f64;
        match self.fam {
            FamilySpec::ClassicalSums { sigma } => {
                let u = rng.uniform();
                let z = if u < 0.5 {
                    Distribution::StdNormal.inverse_log_cdf(ln(u))
                } else {
                    Distribution::StdNormal.inverse_log_sf(ln_1p(-u))
                };
                sigma / sqrt(nf) * z
            }
            // P(min > y) = F̄(y)^n
            FamilySpec::Minima { dist, .. } => dist.inverse_log_sf(ln_1p(-rng.uniform()) / nf),
            // P(max ≤ y) = F(y)^n
            FamilySpec::GumbelMaxima { profile } => {
                let m = profile.dist.inverse_log_cdf(ln(rng.uniform()) / nf);
                m / self.aux - 1.0
            }
            FamilySpec::Coupon => {
                let mut t = 0.0;
                for k in 1..=self.n {
                    let q = (k - 1) as f64 / nf;
                    let u = rng.uniform();
                    t += if k == 1 {
                        1.0
                    } else {
                        ceil(ln(u) / ln(q)).max(1.0)
                    };
                }
                t / self.aux - 1.0
            }
            FamilySpec::Replacement(p) => p.quantile_z(self.n, rng.uniform()) - p.t,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::ClassicalSums { sigma } => write!(f, "classical:sigma={sigma}"),
            FamilySpec::Minima { dist, .. } => write!(f, "minima:{dist}"),
            FamilySpec::GumbelMaxima { profile } => write!(f, "gumbel_maxima:{}", profile.dist),
            FamilySpec::Coupon => f.write_str("coupon"),
            FamilySpec::Replacement(p) => {
                write!(f, "replacement:{},{},t={},beta={}", p.f, p.g, p.t, p.beta)
            }
        }
    }
}

fn parse_err(token: &str, reason: &str) -> Error {
    Error::Parse {
        token: token.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_replacement(rest: &str) -> Result<FamilySpec> {
    // a token with ':' or a bare name starts a distribution; bare numbers
    // extend the previous distribution's parameter list
    let mut dists: Vec<String> = Vec::new();
    let mut t = None;
    let mut beta = None;
    let mut fp = None;
    let mut gp = None;
    for raw in rest.split(',') {
        let tok = raw.trim();
        if let Some((k, v)) = tok.split_once('=') {
            let val = parse_number(v)?;
            match k.trim() {
                "t" => t = Some(val),
                "beta" => beta = Some(val),
                "fprime" => fp = Some(val),
                "gprime" => gp = Some(val),
                other => return Err(parse_err(other, "unknown replacement key (t, beta, fprime, gprime)")),
            }
        } else if tok.contains(':') || tok.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
            dists.push(tok.to_string());
        } else if let Some(last) = dists.last_mut() {
            parse_number(tok)?;
            last.push(',');
            last.push_str(tok);
        } else {
            return Err(parse_err(tok, "expected a distribution before parameters"));
        }
    }
    if dists.len() != 2 {
        return Err(parse_err(rest, "replacement needs exactly two distributions F and G"));
    }
    let f: Distribution = dists[0].parse()?;
    let g: Distribution = dists[1].parse()?;
    let t = t.ok_or_else(|| parse_err(rest, "missing t=<value>"))?;
    let beta = beta.ok_or_else(|| parse_err(rest, "missing beta=<value>"))?;
    let params = match (fp, gp) {
        (None, None) => ReplacementParams::new(f, g, t, beta)?,
        (fp, gp) => ReplacementParams::with_derivatives(
            f,
            g,
            t,
            beta,
            fp.unwrap_or_else(|| f.pdf(t)),
            gp.unwrap_or_else(|| g.pdf(t)),
        )?,
    };
    Ok(FamilySpec::Replacement(params))
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        match (head, rest) {
            ("classical" | "classical_sums", None) => FamilySpec::classical(1.0),
            ("classical" | "classical_sums", Some(r)) => {
                let v = r
                    .trim()
                    .strip_prefix("sigma=")
                    .ok_or_else(|| parse_err(r, "expected sigma=<value>"))?;
                FamilySpec::classical(parse_number(v)?)
            }
            ("minima", Some(r)) => FamilySpec::minima(r.parse()?),
            ("gumbel_maxima", Some(r)) => FamilySpec::gumbel_maxima(r.parse()?),
            ("coupon", None) => Ok(FamilySpec::Coupon),
            ("coupon", Some(r)) => Err(parse_err(r, "coupon takes no parameters")),
            ("replacement", Some(r)) => parse_replacement(r),
            ("minima" | "gumbel_maxima" | "replacement", None) => {
                Err(parse_err(head, "missing parameters after ':'"))
            }
            (other, _) => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// Parses a family specifier.
pub fn make_family(spec: &str) -> Result<FamilySpec> {
    spec.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn repl() -> FamilySpec {
        "replacement:exponential:1,exponential:2,t=1,beta=0.4".parse().unwrap()
    }

    #[test]
    fn make_family_examples() {
        let m: FamilySpec = "minima:exponential:1".parse().unwrap();
        for x in [0.0, 0.5, 3.0] {
            assert!(abs(m.rate_ld().eval(x) - x) < 1e-15);
        }
        let g: FamilySpec = "gumbel_maxima:weibull:2".parse().unwrap();
        assert!(abs(g.rate_ld().eval(1.0) - 1.5) < 1e-15);
        let r = repl();
        assert_eq!(r.rate_md().right_slope_at_zero(), 2.0);
        assert!(abs(r.rate_md().left_slope_at_zero() + 0.581_976_706_869_326_4) < 1e-15);
    }

    #[test]
    fn family_spec_errors() {
        assert!(matches!("gumbel_maxima:lognormal".parse::<FamilySpec>(), Err(Error::InvalidParameter { .. })));
        assert!(matches!("minima:std_normal".parse::<FamilySpec>(), Err(Error::InvalidParameter { .. })));
        assert!(matches!("minima:weibull:2".parse::<FamilySpec>(), Err(Error::InvalidParameter { .. })));
        assert!(matches!("poisson".parse::<FamilySpec>(), Err(Error::UnknownFamily(_))));
        assert!(matches!("classical:sigma=0".parse::<FamilySpec>(), Err(Error::InvalidParameter { .. })));
        let e = "replacement:exponential:1,exponential:2,t=1,gamma=0.4".parse::<FamilySpec>();
        assert!(matches!(e, Err(Error::Parse { ref token, .. }) if token == "gamma"));
    }

    #[test]
    fn spec_round_trip() {
        for s in [
            "classical:sigma=1",
            "minima:exponential:1",
            "minima:uniform01",
            "gumbel_maxima:weibull:2",
            "gumbel_maxima:std_normal",
            "coupon",
            "replacement:exponential:1,exponential:2,t=1,beta=0.4",
        ] {
            let f: FamilySpec = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        let f: FamilySpec = "classical_sums:sigma=2.0".parse().unwrap();
        assert_eq!(f.to_string(), "classical:sigma=2");
    }

    #[test]
    fn upper_tail_examples() {
        let m: FamilySpec = "minima:exponential:1".parse().unwrap();
        assert!(abs(m.exact_log_upper_tail(10, 0.5).unwrap() + 5.0) < 1e-15);
        let r = repl();
        let want = 0.6f64.ln() - 7.0;
        assert!(abs(r.exact_log_upper_tail(7, 0.5).unwrap() - want) < 1e-13);
        // P(T_2 >= 3) = 1/2 with x placing the threshold exactly at 3
        let c = FamilySpec::Coupon;
        let x = 3.0 / (2.0 * 2f64.ln()) - 1.0;
        assert_eq!(coupon_upper_threshold(2, x), 3);
        assert!(abs(c.exact_log_upper_tail(2, x).unwrap() - 0.5f64.ln()) < 1e-15);
    }

    #[test]
    fn lower_tail_examples() {
        let m: FamilySpec = "minima:exponential:1".parse().unwrap();
        assert_eq!(m.exact_log_lower_tail(5, -0.1).unwrap(), f64::NEG_INFINITY);
        let r = repl();
        // mpmath: log 0.4 + 3 log(F(0.5)/F(1)) = -2.33852...
        let f = |z: f64| 1.0 - (-z).exp();
        let want = 0.4f64.ln() + 3.0 * (f(0.5) / f(1.0)).ln();
        let got = r.exact_log_lower_tail(3, -0.5).unwrap();
        assert!(abs(got - want) < 1e-13);
        assert!(abs(got + 2.338_522) < 1e-6, "{got}");
        let g: FamilySpec = "gumbel_maxima:weibull:2".parse().unwrap();
        let got = g.exact_log_lower_tail(100, 0.0).unwrap();
        assert!(abs(got - 100.0 * 0.99f64.ln()) < 1e-12);
    }

    #[test]
    fn mass_split_and_gumbel_identity() {
        let r = repl();
        for n in [1u64, 10, 100, 10_000] {
            assert!(abs(r.exact_log_lower_tail(n, 0.0).unwrap().exp() - 0.4) < 1e-14);
        }
        let g: FamilySpec = "gumbel_maxima:weibull:2".parse().unwrap();
        let p = g.exact_log_lower_tail(10_000, 0.0).unwrap().exp();
        assert!(abs(p - (-1.0f64).exp()) < 1e-3);
        assert!(abs(g.limit_cdf(0.0) - (-1.0f64).exp()) < 1e-15);
    }

    #[test]
    fn speeds() {
        let g: FamilySpec = "gumbel_maxima:weibull:2".parse().unwrap();
        assert!(abs(g.speed(55).unwrap() - 8.014_666_370_464_942) < 1e-9);
        assert!(abs(FamilySpec::Coupon.speed(100).unwrap() - 100f64.ln()) < 1e-15);
        assert!(FamilySpec::Coupon.speed(1).is_err());
        assert_eq!(repl().speed(7).unwrap(), 7.0);
        let n: FamilySpec = "gumbel_maxima:std_normal".parse().unwrap();
        assert!(n.min_n() >= 3);
    }

    #[test]
    fn sampler_examples() {
        let m: FamilySpec = "minima:exponential:1".parse().unwrap();
        let mut r1 = TrialRng::new(11, 0);
        let mut r2 = TrialRng::new(11, 0);
        let u = r2.uniform();
        let c = m.sample(4, &mut r1).unwrap();
        assert!(abs(c - (-(1.0 - u).ln() / 4.0)) < 1e-15);
        assert!(FamilySpec::Coupon.sample(1, &mut r1).is_err());
        // coupon samples are integers after undoing the scaling
        for t in 0..50 {
            let mut rng = TrialRng::new(5, t);
            let c = FamilySpec::Coupon.sample(10, &mut rng).unwrap();
            let tt = (c + 1.0) * 10.0 * 10f64.ln();
            assert!(abs(tt - tt.round()) < 1e-9 && tt >= 10.0);
        }
    }

    #[test]
    fn limit_cdfs_are_cdfs() {
        for s in [
            "classical:sigma=1",
            "minima:uniform01",
            "gumbel_maxima:weibull:2",
            "coupon",
            "replacement:exponential:1,exponential:2,t=1,beta=0.4",
        ] {
            let f: FamilySpec = s.parse().unwrap();
            assert!(f.limit_cdf(-50.0) < 1e-10, "{s}");
            assert!(f.limit_cdf(50.0) > 1.0 - 1e-10, "{s}");
            let mut prev = 0.0;
            for i in -200..=200 {
                let v = f.limit_cdf(i as f64 / 10.0);
                assert!(v >= prev, "{s}");
                prev = v;
            }
        }
    }
}
