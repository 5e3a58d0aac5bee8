//! The lifetime-replacement model: Z_n has CDF β(F(z)/F(t))^n on [0, t]
//! and 1 − (1−β)(Ḡ(z)/Ḡ(t))^n above t.

use crate::distributions::Distribution;
use crate::error::{invalid, Result};
use crate::math::{abs, exp, ln, ln_1p, log1mexp};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplacementParams {
    pub f: Distribution,
    pub g: Distribution,
    pub t: f64,
    pub beta: f64,
    /// F′(t−)
    pub fp_tminus: f64,
    /// G′(t+)
    pub gp_tplus: f64,
}

/// Centered finite-difference derivative of a CDF at `t`.
fn fd_derivative(d: &Distribution, t: f64) -> f64 {
    let h = 1e-5 * t.max(1e-3);
    // difference of survival functions keeps precision when F(t) ~ 1
    (d.sf(t - h) - d.sf(t + h)) / (2.0 * h)
}

impl ReplacementParams {
    /// Builds the parameter set with analytic one-sided derivatives
    /// (the densities at t) and validates everything.
    pub fn new(f: Distribution, g: Distribution, t: f64, beta: f64) -> Result<Self> {
        Self::with_derivatives(f, g, t, beta, f.pdf(t), g.pdf(t))
    }

    pub fn with_derivatives(
        f: Distribution,
        g: Distribution,
        t: f64,
        beta: f64,
        fp_tminus: f64,
        gp_tplus: f64,
    ) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(invalid("replacement", "t must be finite and positive"));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(invalid("replacement", "beta must lie in (0, 1)"));
        }
        for (label, d) in [("F", &f), ("G", &g)] {
            if d.support().lower != 0.0 {
                return Err(invalid("replacement", &alloc::format!("{label} = {d} must have support starting at 0")));
            }
            let p = d.cdf(t);
            if !(p > 0.0 && p < 1.0) {
                return Err(invalid("replacement", &alloc::format!("{label}(t) = {p} must lie in (0, 1)")));
            }
        }
        for (label, d, v) in [("F'(t-)", &f, fp_tminus), ("G'(t+)", &g, gp_tplus)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid("replacement", &alloc::format!("{label} must be positive and finite")));
            }
            let fd = fd_derivative(d, t);
            if abs(fd - v) > 1e-6 * abs(v) {
                return Err(invalid(
                    "replacement",
                    &alloc::format!("{label} = {v} disagrees with the finite difference {fd}"),
                ));
            }
        }
        Ok(ReplacementParams {
            f,
            g,
            t,
            beta,
            fp_tminus,
            gp_tplus,
        })
    }

    /// F′(t−)/F(t), the left slope magnitude of the MD rate.
    pub fn left_md_slope(&self) -> f64 {
        self.fp_tminus / self.f.cdf(self.t)
    }

    /// G′(t+)/(1 − G(t)), the right slope of the MD rate.
    pub fn right_md_slope(&self) -> f64 {
        self.gp_tplus / self.g.sf(self.t)
    }

    pub fn rate_ld(&self, x: f64) -> f64 {
        let z = x + self.t;
        if x > 0.0 {
            self.g.log_sf(self.t) - self.g.log_sf(z)
        } else if z > 0.0 {
            self.f.log_cdf(self.t) - self.f.log_cdf(z)
        } else {
            f64::INFINITY
        }
    }

    pub fn rate_ld_derivative(&self, x: f64, right: bool) -> f64 {
        let z = x + self.t;
        let upper = if right { x >= 0.0 } else { x > 0.0 };
        if upper {
            self.g.hazard(z)
        } else if z > 0.0 {
            -exp(self.f.log_pdf(z) - self.f.log_cdf(z))
        } else {
            f64::NEG_INFINITY
        }
    }

    /// log P(Z_n ≤ z).
    pub fn log_cdf_z(&self, n: u64, z: f64) -> f64 {
        let nf = n as f64;
        if z <= 0.0 {
            f64::NEG_INFINITY
        } else if z <= self.t {
            ln(self.beta) + nf * (self.f.log_cdf(z) - self.f.log_cdf(self.t))
        } else {
            log1mexp(self.log_sf_z(n, z))
        }
    }

    /// log P(Z_n > z).
    pub fn log_sf_z(&self, n: u64, z: f64) -> f64 {
        let nf = n as f64;
        if z > self.t {
            ln_1p(-self.beta) + nf * (self.g.log_sf(z) - self.g.log_sf(self.t))
        } else {
            log1mexp(self.log_cdf_z(n, z))
        }
    }

    /// Inverse of the Z_n CDF at u ∈ (0, 1).
    pub fn quantile_z(&self, n: u64, u: f64) -> f64 {
        let nf = n as f64;
        if u < self.beta {
            let target = self.f.log_cdf(self.t) + (ln(u) - ln(self.beta)) / nf;
            self.f.inverse_log_cdf(target)
        } else {
            let target = self.g.log_sf(self.t) + (ln_1p(-u) - ln_1p(-self.beta)) / nf;
            self.g.inverse_log_sf(target)
        }
    }

    /// The asymmetric Laplace limit H of n(Z_n − t).
    pub fn limit_cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            self.beta * exp(self.left_md_slope() * x)
        } else {
            1.0 - (1.0 - self.beta) * exp(-self.right_md_slope() * x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ReplacementParams {
        ReplacementParams::new(
            Distribution::Exponential { rate: 1.0 },
            Distribution::Exponential { rate: 2.0 },
            1.0,
            0.4,
        )
        .unwrap()
    }

    #[test]
    fn slopes() {
        let p = base();
        assert!(abs(p.right_md_slope() - 2.0) < 1e-15);
        assert!(abs(p.left_md_slope() - 0.581_976_706_869_326_4) < 1e-15);
    }

    #[test]
    fn validation() {
        let e = Distribution::Exponential { rate: 1.0 };
        assert!(ReplacementParams::new(e, e, 1.0, 1.0).is_err());
        assert!(ReplacementParams::new(e, e, -1.0, 0.5).is_err());
        assert!(ReplacementParams::new(Distribution::StdNormal, e, 1.0, 0.5).is_err());
        assert!(ReplacementParams::new(Distribution::Uniform01, e, 1.0, 0.5).is_err());
        // a derivative that disagrees with the CDF is refused
        assert!(ReplacementParams::with_derivatives(e, e, 1.0, 0.5, 0.5, 0.1).is_err());
        assert!(ReplacementParams::with_derivatives(e, e, 1.0, 0.5, (-1.0f64).exp(), (-1.0f64).exp()).is_ok());
    }

    #[test]
    fn mass_split_at_t() {
        let p = base();
        for n in [1u64, 3, 10, 1000, 1_000_000] {
            assert!(abs(exp(p.log_cdf_z(n, p.t)) - 0.4) < 1e-15);
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        let p = base();
        for n in [1u64, 4, 50] {
            for u in [0.01, 0.2, 0.39, 0.41, 0.7, 0.999] {
                let z = p.quantile_z(n, u);
                assert!(abs(exp(p.log_cdf_z(n, z)) - u) < 1e-12, "n={n} u={u}");
            }
        }
        // n = 1, u = 0.2: F(z) = 0.2·F(1)/0.4
        let z = p.quantile_z(1, 0.2);
        assert!(abs(z - 0.379_885_493_041_722_3) < 1e-12, "{z}");
    }

    #[test]
    fn limit_is_a_cdf() {
        let p = base();
        assert!(p.limit_cdf(-1e3) < 1e-200);
        assert!(1.0 - p.limit_cdf(1e3) < 1e-200);
        assert_eq!(p.limit_cdf(0.0), 0.4);
    }
}
