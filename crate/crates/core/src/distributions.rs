//! Catalog of continuous distributions with log-domain tail access.
//!
//! Every member exposes `cdf`, `sf` and `pdf` together with `log_cdf` and
//! `log_sf` that stay finite far past the point where the direct forms
//! underflow. Quantiles use closed forms where one exists and bracketed
//! bisection otherwise. The inverse of the log-survival function is the
//! primitive the rest of the crate leans on: characteristic levels and the
//! single-uniform samplers are all expressed through it.
//!
//! Specifiers parse from `name` or `name:param[,param]`, e.g.
//! `exponential:1.0` or `weibull:2`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::math::{
    self, abs, exp, exp_m1, ln, ln_1p, log1mexp, powf, softplus, solve_monotone,
};

/// A continuous univariate law from the catalog.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "name", rename_all = "snake_case"))]
pub enum Distribution {
    Exponential { rate: f64 },
    Uniform01,
    Weibull { shape: f64 },
    Gamma { shape: f64 },
    StdNormal,
    Logistic,
    LogNormal,
}

/// Closed interval `[lower, upper]`; `upper` may be `+inf`, `lower` may be `-inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lower: f64,
    pub upper: f64,
}

impl Support {
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }

    pub fn interior(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }
}

/// Names accepted by [`catalog_get`].
pub const CATALOG: [&str; 7] = [
    "exponential",
    "uniform01",
    "weibull",
    "gamma",
    "std_normal",
    "logistic",
    "lognormal",
];

/// Looks a distribution up by name.
pub fn catalog_get(name: &str, params: &[f64]) -> Result<Distribution> {
    let one = |label: &str, default: Option<f64>| -> Result<f64> {
        match (params, default) {
            ([v], _) => {
                if v.is_finite() && *v > 0.0 {
                    Ok(*v)
                } else {
                    Err(invalid(label, "parameter must be finite and strictly positive"))
                }
            }
            ([], Some(d)) => Ok(d),
            _ => Err(invalid(label, "expects exactly one parameter")),
        }
    };
    let none = |label: &str| -> Result<()> {
        if params.is_empty() {
            Ok(())
        } else {
            Err(invalid(label, "takes no parameters"))
        }
    };
    match name {
        "exponential" => Ok(Distribution::Exponential {
            rate: one("exponential", Some(1.0))?,
        }),
        "uniform01" => none("uniform01").map(|_| Distribution::Uniform01),
        "weibull" => Ok(Distribution::Weibull {
            shape: one("weibull", None)?,
        }),
        "gamma" => Ok(Distribution::Gamma {
            shape: one("gamma", None)?,
        }),
        "std_normal" => none("std_normal").map(|_| Distribution::StdNormal),
        "logistic" => none("logistic").map(|_| Distribution::Logistic),
        "lognormal" => none("lognormal").map(|_| Distribution::LogNormal),
        other => Err(Error::UnknownDistribution(other.into())),
    }
}

impl Distribution {
    pub fn name(&self) -> &'static str {
        match self {
            Distribution::Exponential { .. } => "exponential",
            Distribution::Uniform01 => "uniform01",
            Distribution::Weibull { .. } => "weibull",
            Distribution::Gamma { .. } => "gamma",
            Distribution::StdNormal => "std_normal",
            Distribution::Logistic => "logistic",
            Distribution::LogNormal => "lognormal",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Distribution::Exponential { rate } => vec![rate],
            Distribution::Weibull { shape } | Distribution::Gamma { shape } => vec![shape],
            _ => Vec::new(),
        }
    }

    pub fn support(&self) -> Support {
        match self {
            Distribution::StdNormal | Distribution::Logistic => Support {
                lower: f64::NEG_INFINITY,
                upper: f64::INFINITY,
            },
            Distribution::Uniform01 => Support {
                lower: 0.0,
                upper: 1.0,
            },
            _ => Support {
                lower: 0.0,
                upper: f64::INFINITY,
            },
        }
    }

    /// log P(X > x).
    pub fn log_sf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let s = self.support();
        if x <= s.lower {
            return 0.0;
        }
        if x >= s.upper {
            return f64::NEG_INFINITY;
        }
        match *self {
            Distribution::Exponential { rate } => -rate * x,
            Distribution::Uniform01 => ln_1p(-x),
            Distribution::Weibull { shape } => -powf(x, shape),
            Distribution::Gamma { shape } => math::log_gamma_p_q(shape, x).1,
            Distribution::StdNormal => math::normal_log_sf(x),
            Distribution::Logistic => -softplus(x),
            Distribution::LogNormal => math::normal_log_sf(ln(x)),
        }
    }

    /// log P(X <= x).
    pub fn log_cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let s = self.support();
        if x <= s.lower {
            return f64::NEG_INFINITY;
        }
        if x >= s.upper {
            return 0.0;
        }
        match *self {
            Distribution::Exponential { rate } => log1mexp(-rate * x),
            Distribution::Uniform01 => ln(x),
            Distribution::Weibull { shape } => log1mexp(-powf(x, shape)),
            Distribution::Gamma { shape } => math::log_gamma_p_q(shape, x).0,
            Distribution::StdNormal => math::normal_log_sf(-x),
            Distribution::Logistic => -softplus(-x),
            Distribution::LogNormal => math::normal_log_sf(-ln(x)),
        }
    }

    pub fn sf(&self, x: f64) -> f64 {
        exp(self.log_sf(x))
    }

    pub fn cdf(&self, x: f64) -> f64 {
        exp(self.log_cdf(x))
    }

    /// log f(x); `-inf` outside the support.
    pub fn log_pdf(&self, x: f64) -> f64 {
        let s = self.support();
        if x.is_nan() {
            return f64::NAN;
        }
        if x < s.lower || x > s.upper {
            return f64::NEG_INFINITY;
        }
        match *self {
            Distribution::Exponential { rate } => ln(rate) - rate * x,
            Distribution::Uniform01 => 0.0,
            Distribution::Weibull { shape } => {
                if x == 0.0 {
                    return ln(self.density_at_lower());
                }
                ln(shape) + (shape - 1.0) * ln(x) - powf(x, shape)
            }
            Distribution::Gamma { shape } => {
                if x == 0.0 {
                    return ln(self.density_at_lower());
                }
                (shape - 1.0) * ln(x) - x - math::lgamma(shape)
            }
            Distribution::StdNormal => math::normal_log_pdf(x),
            Distribution::Logistic => {
                let a = abs(x);
                -a - 2.0 * ln_1p(exp(-a))
            }
            Distribution::LogNormal => {
                if x == 0.0 {
                    return f64::NEG_INFINITY;
                }
                let l = ln(x);
                math::normal_log_pdf(l) - l
            }
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        exp(self.log_pdf(x))
    }

    /// f(x) / (1 - F(x)).
    pub fn hazard(&self, x: f64) -> f64 {
        exp(self.log_pdf(x) - self.log_sf(x))
    }

    /// The right derivative F'(lower+) = lim F(x)/x at a zero lower endpoint.
    ///
    /// Returns `+inf` when the density blows up at the endpoint and `0` when
    /// it vanishes there.
    pub fn density_at_lower(&self) -> f64 {
        match *self {
            Distribution::Exponential { rate } => rate,
            Distribution::Uniform01 => 1.0,
            Distribution::Weibull { shape } | Distribution::Gamma { shape } => {
                if shape == 1.0 {
                    1.0
                } else if shape < 1.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
            Distribution::LogNormal => 0.0,
            Distribution::StdNormal | Distribution::Logistic => f64::NAN,
        }
    }

    /// Inverse of the CDF on (0, 1).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        Ok(match *self {
            Distribution::Exponential { rate } => -ln_1p(-p) / rate,
            Distribution::Uniform01 => p,
            Distribution::Weibull { shape } => powf(-ln_1p(-p), 1.0 / shape),
            Distribution::Logistic => ln(p) - ln_1p(-p),
            _ => {
                if p <= 0.5 {
                    self.inverse_log_cdf(ln(p))
                } else {
                    self.inverse_log_sf(ln_1p(-p))
                }
            }
        })
    }

    /// The point x with log P(X > x) = `log_q`, for `log_q` in [-inf, 0].
    pub fn inverse_log_sf(&self, log_q: f64) -> f64 {
        let s = self.support();
        if log_q >= 0.0 {
            return s.lower;
        }
        if log_q == f64::NEG_INFINITY {
            return s.upper;
        }
        match *self {
            Distribution::Exponential { rate } => -log_q / rate,
            Distribution::Uniform01 => -exp_m1(log_q),
            Distribution::Weibull { shape } => powf(-log_q, 1.0 / shape),
            Distribution::Logistic => ln(exp_m1(-log_q)),
            Distribution::LogNormal => exp(Distribution::StdNormal.inverse_log_sf(log_q)),
            Distribution::StdNormal | Distribution::Gamma { .. } => solve_monotone(
                |x| self.log_sf(x),
                log_q,
                false,
                self.solver_seed(),
                s.lower,
                s.upper,
            ),
        }
    }

    /// The point x with log P(X <= x) = `log_p`, for `log_p` in [-inf, 0].
    pub fn inverse_log_cdf(&self, log_p: f64) -> f64 {
        let s = self.support();
        if log_p >= 0.0 {
            return s.upper;
        }
        if log_p == f64::NEG_INFINITY {
            return s.lower;
        }
        match *self {
            Distribution::Exponential { rate } => -log1mexp(log_p) / rate,
            Distribution::Uniform01 => exp(log_p),
            Distribution::Weibull { shape } => powf(-log1mexp(log_p), 1.0 / shape),
            Distribution::Logistic => -ln(exp_m1(-log_p)),
            Distribution::LogNormal => exp(Distribution::StdNormal.inverse_log_cdf(log_p)),
            Distribution::StdNormal | Distribution::Gamma { .. } => solve_monotone(
                |x| self.log_cdf(x),
                log_p,
                true,
                self.solver_seed(),
                s.lower,
                s.upper,
            ),
        }
    }

    fn solver_seed(&self) -> f64 {
        match *self {
            Distribution::Gamma { shape } => shape,
            _ => 0.0,
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        let params = self.params();
        for (i, p) in params.iter().enumerate() {
            f.write_str(if i == 0 { ":" } else { "," })?;
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (s, None),
        };
        let mut params = Vec::new();
        if let Some(rest) = rest {
            for tok in rest.split(',') {
                params.push(parse_number(tok)?);
            }
        }
        catalog_get(name, &params)
    }
}

pub(crate) fn parse_number(tok: &str) -> Result<f64> {
    let t = tok.trim();
    t.parse::<f64>().map_err(|_| Error::Parse {
        token: t.to_string(),
        reason: String::from("expected a number"),
    })
}

/// Canonical rendering of a specifier (parses then re-renders).
pub fn normalize_spec(s: &str) -> Result<String> {
    Ok(format!("{}", s.parse::<Distribution>()?))
}
