//! Exact distribution of the coupon-collector time T_n.
//!
//! T_k = G_1 + … + G_k with G_j geometric on {1, 2, …} of success
//! probability p_j = 1 − (j−1)/n. By memorylessness, conditioning on the
//! first draw of G_k gives
//!
//!   P(T_k ≤ m) = q_k·P(T_k ≤ m−1) + p_k·P(T_{k−1} ≤ m−1),
//!
//! and the identical recurrence for P(T_k > m). Both use only
//! non-negative terms, so nothing cancels. When a result drops below
//! ~1e-250 the pass is redone in log space.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{abs, exp, ln, ln_1p, log_add_exp, powf, Dd};

const CELL_LIMIT: u128 = 1_000_000_000;
const LINEAR_FLOOR: f64 = 1e-250;

fn guard(n: u64, m: u64) -> Result<()> {
    let cells = n as u128 * (m as u128 + 1);
    if cells > CELL_LIMIT {
        Err(Error::ResourceGuard { cells })
    } else {
        Ok(())
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::SampleSizeTooSmall { n, min: 1 })
    } else {
        Ok(())
    }
}

/// Which tail a DP pass accumulates.
#[derive(Clone, Copy, PartialEq)]
enum Tail {
    /// P(T_k ≤ m)
    Cdf,
    /// P(T_k > m)
    Sf,
}

/// Runs the recurrence up to `m_max` and returns the k = n column for
/// every m in 0..=m_max.
fn linear_table(n: u64, m_max: u64, tail: Tail) -> Vec<f64> {
    let nf = n as f64;
    let n = n as usize;
    // v[k] holds the value at the previous m; start at m = -1
    let mut v = match tail {
        Tail::Cdf => vec![0.0; n + 1],
        Tail::Sf => vec![1.0; n + 1],
    };
    let q: Vec<f64> = (0..=n).map(|k| k.saturating_sub(1) as f64 / nf).collect();
    let mut out = Vec::with_capacity(m_max as usize + 1);
    for _ in 0..=m_max {
        // descending k so v[k-1] still holds the previous m
        for k in (1..=n).rev() {
            v[k] = q[k] * v[k] + (1.0 - q[k]) * v[k - 1];
        }
        v[0] = match tail {
            Tail::Cdf => 1.0,
            Tail::Sf => 0.0,
        };
        out.push(v[n]);
    }
    out
}

fn log_table(n: u64, m_max: u64, tail: Tail) -> Vec<f64> {
    let nf = n as f64;
    let n = n as usize;
    let (start, base) = match tail {
        Tail::Cdf => (f64::NEG_INFINITY, 0.0),
        Tail::Sf => (0.0, f64::NEG_INFINITY),
    };
    let mut v = vec![start; n + 1];
    let lq: Vec<f64> = (0..=n)
        .map(|k| if k == 0 { 0.0 } else { ln((k - 1) as f64 / nf) })
        .collect();
    let lp: Vec<f64> = (0..=n)
        .map(|k| if k == 0 { 0.0 } else { ln_1p(-((k - 1) as f64) / nf) })
        .collect();
    let mut out = Vec::with_capacity(m_max as usize + 1);
    for _ in 0..=m_max {
        for k in (1..=n).rev() {
            v[k] = log_add_exp(lq[k] + v[k], lp[k] + v[k - 1]);
        }
        v[0] = base;
        out.push(v[n]);
    }
    out
}

/// log P(T_n ≤ m) for m = 0..=m_max.
pub fn coupon_log_cdf_table(n: u64, m_max: u64) -> Result<Vec<f64>> {
    check_n(n)?;
    guard(n, m_max)?;
    let lin = linear_table(n, m_max, Tail::Cdf);
    // below m = n the probability is exactly zero; above, a zero or tiny
    // entry means the linear pass lost it
    let lost = lin
        .iter()
        .skip(n as usize)
        .any(|&v| v < LINEAR_FLOOR);
    let mut out = if lost {
        log_table(n, m_max, Tail::Cdf)
    } else {
        lin.iter().map(|&v| ln(v)).collect()
    };
    for v in out.iter_mut().take(n.min(m_max + 1) as usize) {
        *v = f64::NEG_INFINITY;
    }
    Ok(out)
}

/// log P(T_n > m) for m = 0..=m_max.
pub fn coupon_log_sf_table(n: u64, m_max: u64) -> Result<Vec<f64>> {
    check_n(n)?;
    guard(n, m_max)?;
    let lin = linear_table(n, m_max, Tail::Sf);
    if lin.iter().any(|&v| v < LINEAR_FLOOR) {
        return Ok(log_table(n, m_max, Tail::Sf));
    }
    Ok(lin.iter().map(|&v| ln(v)).collect())
}

/// Exact P(T_n ≤ m).
pub fn coupon_cdf_dp(n: u64, m: u64) -> Result<f64> {
    check_n(n)?;
    if m < n {
        return Ok(0.0);
    }
    guard(n, m)?;
    Ok(linear_table(n, m, Tail::Cdf)[m as usize].clamp(0.0, 1.0))
}

/// log P(T_n ≤ m), with m possibly negative.
pub fn coupon_log_cdf(n: u64, m: i64) -> Result<f64> {
    check_n(n)?;
    if m < n as i64 {
        return Ok(f64::NEG_INFINITY);
    }
    let t = coupon_log_cdf_table(n, m as u64)?;
    Ok(t[m as usize].min(0.0))
}

/// log P(T_n > m), with m possibly negative.
pub fn coupon_log_sf(n: u64, m: i64) -> Result<f64> {
    check_n(n)?;
    if m < n as i64 {
        return Ok(0.0);
    }
    let t = coupon_log_sf_table(n, m as u64)?;
    Ok(t[m as usize].min(0.0))
}

/// Alternating occupancy sum Σ (−1)^k C(n,k) (1 − k/n)^m with its
/// condition number Σ|terms| / |sum|. No guard is applied; terms and the
/// running sum are carried in double-double, so the absolute error stays
/// near 1e-32·Σ|terms| even where f64 would cancel catastrophically.
pub fn coupon_ie_raw(n: u64, m: u64) -> (f64, f64) {
    let nf = n as f64;
    let mut acc = Dd::default();
    let mut mag = 0.0;
    let mut binom = Dd::from(1.0);
    for k in 0..=n {
        let pw = if k == n {
            Dd::from(if m == 0 { 1.0 } else { 0.0 })
        } else {
            Dd::from((n - k) as f64).div_f64(nf).powi(m)
        };
        let term = binom.mul(pw);
        mag += term.hi;
        acc = acc.add(if k % 2 == 0 { term } else { term.neg() });
        binom = binom.mul(Dd::from((n - k) as f64)).div_f64(k as f64 + 1.0);
    }
    let s = acc.value();
    (s, mag / abs(s))
}

/// P(T_n ≤ m) by inclusion-exclusion; refuses when the predicted
/// cancellation exceeds 1e12.
pub fn coupon_cdf_inclusion_exclusion(n: u64, m: u64) -> Result<f64> {
    check_n(n)?;
    if m < n {
        return Err(Error::InvalidParameter {
            target: "coupon_cdf_inclusion_exclusion".into(),
            reason: "requires m >= n".into(),
        });
    }
    let (s, cond) = coupon_ie_raw(n, m);
    if !(cond <= 1e12) {
        return Err(Error::Cancellation(cond));
    }
    Ok(s.clamp(0.0, 1.0))
}

/// P(T_n > c·n·log n) ≤ n^{1−c}.
pub fn coupon_upper_tail_bound(n: u64, c: f64) -> f64 {
    powf(n as f64, 1.0 - c)
}

/// P(T_n ≤ m) ≤ 2(1 − e^{−m/n})^n.
pub fn coupon_lower_tail_bound(n: u64, m: u64) -> f64 {
    let nf = n as f64;
    2.0 * exp(nf * ln(-crate::math::exp_m1(-(m as f64) / nf)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouponBounds {
    pub upper_tail_bound: f64,
    /// m = ⌊n·log n / c⌋, where the lower-tail bound has content.
    pub lower_m: u64,
    pub lower_tail_bound: f64,
}

pub fn coupon_paper_bounds(n: u64, c: f64) -> CouponBounds {
    let nf = n as f64;
    let lower_m = crate::math::floor(nf * ln(nf) / c) as u64;
    CouponBounds {
        upper_tail_bound: coupon_upper_tail_bound(n, c),
        lower_m,
        lower_tail_bound: coupon_lower_tail_bound(n, lower_m),
    }
}
