//! Extended-real rate functions with a unique zero at the origin.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;

use crate::distributions::Distribution;
use crate::math::{ln, powf};

use super::replacement::ReplacementParams;

const INF: f64 = f64::INFINITY;

#[derive(Debug, Clone, PartialEq)]
pub enum RateFunction {
    /// x² · inv_var / 2.
    Quadratic { inv_var: f64 },
    /// `right·x` for x ≥ 0; `left·|x|` for x < 0, or +∞ there when `left` is `None`.
    Linear { left: Option<f64>, right: f64 },
    /// −log F̄(x) on [0, ω_F), +∞ elsewhere.
    NegLogSurvival { dist: Distribution },
    /// (y^μ − 1)/μ for y ≥ 1, +∞ below.
    GumbelJ { mu: f64 },
    /// y − 1 for y ≥ 1, +∞ below.
    CouponJ,
    /// Piecewise log-ratio rate of the replacement model.
    ReplacementLd { params: ReplacementParams },
    /// x ↦ inner(x + c).
    Shifted { inner: Box<RateFunction>, c: f64 },
}

/// The contraction x ↦ J(x + c); a zero shift returns `J` itself.
pub fn shift_rate(j: &RateFunction, c: f64) -> RateFunction {
    if c == 0.0 {
        return j.clone();
    }
    RateFunction::Shifted {
        inner: Box::new(j.clone()),
        c,
    }
}

impl RateFunction {
    pub fn eval(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        match self {
            RateFunction::Quadratic { inv_var } => 0.5 * x * x * inv_var,
            RateFunction::Linear { left, right } => {
                if x >= 0.0 {
                    right * x
                } else {
                    match left {
                        Some(l) => -l * x,
                        None => INF,
                    }
                }
            }
            RateFunction::NegLogSurvival { dist } => {
                if x < 0.0 || x >= dist.support().upper {
                    INF
                } else {
                    -dist.log_sf(x)
                }
            }
            RateFunction::GumbelJ { mu } => {
                if x < 1.0 {
                    INF
                } else {
                    crate::math::exp_m1(mu * ln(x)) / mu
                }
            }
            RateFunction::CouponJ => {
                if x < 1.0 {
                    INF
                } else {
                    x - 1.0
                }
            }
            RateFunction::ReplacementLd { params } => params.rate_ld(x),
            RateFunction::Shifted { inner, c } => inner.eval(x + c),
        }
    }

    /// Analytic right derivative at `x`.
    pub fn right_derivative(&self, x: f64) -> f64 {
        match self {
            RateFunction::Quadratic { inv_var } => x * inv_var,
            RateFunction::Linear { left, right } => {
                if x >= 0.0 {
                    *right
                } else {
                    left.map_or(INF, |l| -l)
                }
            }
            RateFunction::NegLogSurvival { dist } => {
                if x < 0.0 || x >= dist.support().upper {
                    f64::NAN
                } else {
                    dist.hazard(x)
                }
            }
            RateFunction::GumbelJ { mu } => {
                if x < 1.0 {
                    f64::NAN
                } else {
                    powf(x, mu - 1.0)
                }
            }
            RateFunction::CouponJ => {
                if x < 1.0 {
                    f64::NAN
                } else {
                    1.0
                }
            }
            RateFunction::ReplacementLd { params } => params.rate_ld_derivative(x, true),
            RateFunction::Shifted { inner, c } => inner.right_derivative(x + c),
        }
    }

    /// Analytic left derivative at `x`; −∞ where the function jumps to +∞
    /// immediately to the left.
    pub fn left_derivative(&self, x: f64) -> f64 {
        match self {
            RateFunction::Quadratic { inv_var } => x * inv_var,
            RateFunction::Linear { left, right } => {
                if x > 0.0 {
                    *right
                } else {
                    left.map_or(f64::NEG_INFINITY, |l| -l)
                }
            }
            RateFunction::NegLogSurvival { dist } => {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    dist.hazard(x)
                }
            }
            RateFunction::GumbelJ { mu } => {
                if x <= 1.0 {
                    f64::NEG_INFINITY
                } else {
                    powf(x, mu - 1.0)
                }
            }
            RateFunction::CouponJ => {
                if x <= 1.0 {
                    f64::NEG_INFINITY
                } else {
                    1.0
                }
            }
            RateFunction::ReplacementLd { params } => params.rate_ld_derivative(x, false),
            RateFunction::Shifted { inner, c } => inner.left_derivative(x + c),
        }
    }

    pub fn right_slope_at_zero(&self) -> f64 {
        self.right_derivative(0.0)
    }

    pub fn left_slope_at_zero(&self) -> f64 {
        self.left_derivative(0.0)
    }

    pub fn domain_note(&self) -> String {
        match self {
            RateFunction::Quadratic { inv_var } => {
                format!("x^2/(2 sigma^2) on R, sigma^2 = {}", 1.0 / inv_var)
            }
            RateFunction::Linear { left: Some(l), right } => {
                format!("{right}·x for x >= 0, {l}·|x| for x < 0")
            }
            RateFunction::Linear { left: None, right } => {
                format!("{right}·x for x >= 0, +inf for x < 0")
            }
            RateFunction::NegLogSurvival { dist } => format!(
                "-log sf_{dist}(x) on [0, {}), +inf elsewhere",
                dist.support().upper
            ),
            RateFunction::GumbelJ { mu } => format!("(y^{mu} - 1)/{mu} for y >= 1, +inf below"),
            RateFunction::CouponJ => String::from("y - 1 for y >= 1, +inf below"),
            RateFunction::ReplacementLd { params } => format!(
                "-log(F(x+t)/F(t)) on (-t, 0], -log(sf_G(x+t)/sf_G(t)) on (0, inf), +inf on (-inf, -t]; t = {}",
                params.t
            ),
            RateFunction::Shifted { inner, c } => {
                format!("x -> J(x + {c}) with J: {}", inner.domain_note())
            }
        }
    }

    /// Checks the zero and shape invariants on `grid`; the message names the
    /// first offending point.
    pub fn check_shape(&self, grid: &[f64]) -> core::result::Result<(), String> {
        let z = self.eval(0.0);
        if z != 0.0 {
            return Err(format!("I(0) = {z}, expected 0"));
        }
        let mut neg: alloc::vec::Vec<f64> = grid.iter().copied().filter(|x| *x < 0.0).collect();
        let mut pos: alloc::vec::Vec<f64> = grid.iter().copied().filter(|x| *x > 0.0).collect();
        for &x in neg.iter().chain(pos.iter()) {
            let v = self.eval(x);
            if !(v > 0.0) {
                return Err(format!("I({x}) = {v} is not strictly positive"));
            }
        }
        neg.sort_by(|a, b| a.total_cmp(b));
        pos.sort_by(|a, b| a.total_cmp(b));
        for w in neg.windows(2) {
            if self.eval(w[1]) > self.eval(w[0]) {
                return Err(format!("increases on the negative side between {} and {}", w[0], w[1]));
            }
        }
        for w in pos.windows(2) {
            if self.eval(w[1]) < self.eval(w[0]) {
                return Err(format!("decreases on the positive side between {} and {}", w[0], w[1]));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_examples() {
        let j = RateFunction::GumbelJ { mu: 2.0 };
        let i = shift_rate(&j, 1.0);
        assert!((i.eval(1.0) - 1.5).abs() < 1e-15);
        assert_eq!(i.eval(-0.5), INF);
        assert_eq!(i.right_slope_at_zero(), 1.0);

        let j = RateFunction::CouponJ;
        let i = shift_rate(&j, 1.0);
        for x in [0.0, 0.3, 2.0, 17.0] {
            assert!((i.eval(x) - x).abs() < 1e-14 * (1.0 + x));
        }
        assert_eq!(i.eval(-0.1), INF);

        let q = RateFunction::Quadratic { inv_var: 2.0 };
        assert_eq!(shift_rate(&q, 0.0), q);
    }

    #[test]
    fn shapes() {
        let grid: alloc::vec::Vec<f64> = (-50..=50).map(|i| i as f64 / 10.0).collect();
        let fs = [
            RateFunction::Quadratic { inv_var: 1.0 },
            RateFunction::Linear { left: None, right: 1.0 },
            RateFunction::Linear { left: Some(0.5), right: 2.0 },
            RateFunction::NegLogSurvival { dist: Distribution::Uniform01 },
            shift_rate(&RateFunction::GumbelJ { mu: 3.0 }, 1.0),
            shift_rate(&RateFunction::CouponJ, 1.0),
        ];
        for f in &fs {
            f.check_shape(&grid).unwrap();
        }
        // unshifted J has its zero at 1, not 0
        assert!(RateFunction::CouponJ.check_shape(&grid).is_err());
    }

    #[test]
    fn slopes() {
        let f = RateFunction::Linear { left: None, right: 3.0 };
        assert_eq!(f.left_slope_at_zero(), f64::NEG_INFINITY);
        let f = RateFunction::NegLogSurvival {
            dist: Distribution::Exponential { rate: 2.0 },
        };
        assert!((f.right_slope_at_zero() - 2.0).abs() < 1e-15);
        assert!(f.domain_note().contains("inf"));
    }
}
