//! Log-probability primitives and the deterministic Monte Carlo engine.
//!
//! Trial `i` draws only from `TrialRng::new(seed, i)`, and aggregation is
//! integer addition, so any partition of the trial range across workers
//! returns the same counts. [`mc_count`] is the unit of work; the std
//! companion crate fans it out over threads.

use core::ops::Range;

use crate::error::{Error, Result};
use crate::families::{FamilySpec, Side};
use crate::math::{exp, ln, log1mexp, sqrt};
use crate::rng::TrialRng;

/// A log-probability in [−∞, 0].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogProb(f64);

impl LogProb {
    pub fn new(v: f64) -> Result<Self> {
        if v.is_nan() || v > 0.0 {
            Err(Error::PositiveLogProb(v))
        } else {
            Ok(LogProb(v))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn prob(self) -> f64 {
        exp(self.0)
    }

    /// log(1 − e^{lp}).
    pub fn complement(self) -> LogProb {
        LogProb(log1mexp(self.0))
    }
}

/// log(1 − e^{lp}) for lp ≤ 0, branching at −log 2.
pub fn stable_log_complement(lp: f64) -> Result<f64> {
    Ok(LogProb::new(lp)?.complement().value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    /// log(hits/trials); −∞ when there were no hits.
    pub log_p_hat: f64,
    pub hits: u64,
    pub trials: u64,
    /// Delta-method standard error of log p̂, √((1 − p̂)/hits); +∞ when
    /// there were no hits.
    pub stderr_log: f64,
    pub seed: u64,
    pub zero_hits: bool,
    /// One-sided 95% Clopper-Pearson upper bound 1 − 0.05^{1/N}, reported
    /// when there were no hits (NaN otherwise).
    pub upper_bound_95: f64,
    /// The standard error is not informative (fewer than two trials, or
    /// an all-or-nothing outcome).
    pub degenerate: bool,
}

impl McEstimate {
    pub fn from_counts(hits: u64, trials: u64, seed: u64) -> Self {
        assert!(trials >= 1 && hits <= trials, "need 1 <= trials and hits <= trials");
        let nf = trials as f64;
        let p = hits as f64 / nf;
        let zero = hits == 0;
        McEstimate {
            log_p_hat: if zero { f64::NEG_INFINITY } else { ln(p) },
            hits,
            trials,
            stderr_log: if zero {
                f64::INFINITY
            } else {
                sqrt((1.0 - p) / hits as f64)
            },
            seed,
            zero_hits: zero,
            upper_bound_95: if zero {
                -crate::math::exp_m1(ln(0.05) / nf)
            } else {
                f64::NAN
            },
            degenerate: trials < 2 || zero || hits == trials,
        }
    }

    pub fn p_hat(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }

    /// Binomial standard error of p̂.
    pub fn stderr_p(&self) -> f64 {
        let p = self.p_hat();
        sqrt(p * (1.0 - p) / self.trials as f64)
    }

    /// Normal-approximation interval p̂ ± z·stderr.
    pub fn normal_interval(&self, z: f64) -> (f64, f64) {
        let (p, s) = (self.p_hat(), self.stderr_p());
        (p - z * s, p + z * s)
    }
}

/// Counts trials in `trials` whose C_n falls in the tail event at `x`.
pub fn mc_count(
    fam: &FamilySpec,
    n: u64,
    x: f64,
    side: Side,
    seed: u64,
    trials: Range<u64>,
) -> Result<u64> {
    let sampler = fam.sampler(n)?;
    let mut hits = 0;
    for i in trials {
        let mut rng = TrialRng::new(seed, i);
        if fam.in_event(n, sampler.draw(&mut rng), x, side) {
            hits += 1;
        }
    }
    Ok(hits)
}

/// Single-threaded Monte Carlo estimate of log P(C_n ≥ x) or log P(C_n ≤ x).
pub fn mc_log_tail(
    fam: &FamilySpec,
    n: u64,
    x: f64,
    side: Side,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter {
            target: "mc_log_tail".into(),
            reason: "trials must be at least 1".into(),
        });
    }
    let hits = mc_count(fam, n, x, side, seed, 0..trials)?;
    Ok(McEstimate::from_counts(hits, trials, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_examples() {
        assert_eq!(stable_log_complement(f64::NEG_INFINITY).unwrap(), 0.0);
        let h = 0.5f64.ln();
        assert!((stable_log_complement(h).unwrap() - h).abs() < 1e-15);
        assert!((stable_log_complement(-1e-9).unwrap() + 20.723_265_837_446_41).abs() < 1e-6);
        assert!(matches!(stable_log_complement(0.1), Err(Error::PositiveLogProb(_))));
    }

    #[test]
    fn complement_accuracy() {
        // mpmath, 40 digits: log(1 - exp(lp))
        let cases = [
            (-745.0, -0.0),
            (-1e-15, -34.538_776_394_910_686),
            (-0.1, -2.352_168_461_044_090_8),
            (-0.7, -0.686_341_002_808_385_1),
            (-5.0, -0.006_760_749_449_488_557),
        ];
        for (lp, want) in cases {
            let got = stable_log_complement(lp).unwrap();
            if want == 0.0 {
                assert!(got.abs() < 1e-300);
            } else {
                assert!(((got - want) / want).abs() < 1e-14, "lp={lp}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn minima_example() {
        let fam: FamilySpec = "minima:exponential:1".parse().unwrap();
        let est = mc_log_tail(&fam, 10, 0.05, Side::Upper, 100_000, 42).unwrap();
        let p = (-0.5f64).exp();
        assert!((est.p_hat() - p).abs() <= 4.0 * est.stderr_p());
    }

    #[test]
    fn coupon_example() {
        let x = 3.0 / (2.0 * 2f64.ln()) - 1.0;
        let est = mc_log_tail(&FamilySpec::Coupon, 2, x, Side::Upper, 100_000, 7).unwrap();
        assert!((est.p_hat() - 0.5).abs() <= 4.0 * est.stderr_p());
    }

    #[test]
    fn single_trial_is_degenerate() {
        let fam: FamilySpec = "minima:exponential:1".parse().unwrap();
        let est = mc_log_tail(&fam, 3, 0.1, Side::Upper, 1, 9).unwrap();
        assert!(est.hits <= 1 && est.degenerate);
        let zero = McEstimate::from_counts(0, 1000, 1);
        assert!(zero.zero_hits && zero.log_p_hat == f64::NEG_INFINITY);
        assert!((zero.upper_bound_95 - (1.0 - 0.05f64.powf(1e-3))).abs() < 1e-15);
    }

    #[test]
    fn partitions_merge() {
        let fam: FamilySpec = "replacement:exponential:1,exponential:2,t=1,beta=0.4".parse().unwrap();
        let whole = mc_count(&fam, 5, 0.1, Side::Upper, 3, 0..10_000).unwrap();
        let a = mc_count(&fam, 5, 0.1, Side::Upper, 3, 0..3_333).unwrap();
        let b = mc_count(&fam, 5, 0.1, Side::Upper, 3, 3_333..10_000).unwrap();
        assert_eq!(whole, a + b);
    }
}
