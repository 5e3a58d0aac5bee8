//! Elementary and special functions used by the evaluators.
//!
//! Everything here is `no_std`; transcendental functions go through `libm`.

pub(crate) const LN_2: f64 = core::f64::consts::LN_2;
/// log(sqrt(2π))
pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub(crate) fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}
#[inline]
pub(crate) fn exp_m1(x: f64) -> f64 {
    libm::expm1(x)
}
#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}
#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}
#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}
#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}
#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}
#[inline]
pub(crate) fn lgamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// log(1 - e^x) for x <= 0, switching branch at -ln 2.
pub(crate) fn log1mexp(x: f64) -> f64 {
    if x > -LN_2 {
        ln(-exp_m1(x))
    } else {
        ln_1p(-exp(x))
    }
}

/// log(e^a + e^b) without overflow.
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + ln_1p(exp(lo - hi))
}

/// log(1 + e^x).
pub(crate) fn softplus(x: f64) -> f64 {
    x.max(0.0) + ln_1p(exp(-abs(x)))
}

/// Mills ratio sf(x)/pdf(x) of the standard normal for x >= 8, by the
/// continued fraction 1/(x + 1/(x + 2/(x + 3/(x + ...)))) (modified Lentz).
fn normal_mills_ratio_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64;
        d = x + a * d;
        if abs(d) < TINY {
            d = TINY;
        }
        c = x + a / c;
        if abs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if abs(delta - 1.0) < 1e-16 {
            break;
        }
    }
    1.0 / f
}

/// log of the standard normal density.
pub(crate) fn normal_log_pdf(x: f64) -> f64 {
    -0.5 * x * x - LN_SQRT_2PI
}

/// log P(Z > x) for a standard normal Z, accurate far into both tails.
pub(crate) fn normal_log_sf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return f64::NEG_INFINITY;
    }
    if x < 0.0 {
        return log1mexp(normal_log_sf(-x));
    }
    if x < 8.0 {
        ln(0.5 * libm::erfc(x * core::f64::consts::FRAC_1_SQRT_2))
    } else {
        normal_log_pdf(x) + ln(normal_mills_ratio_cf(x))
    }
}

/// Upper regularized incomplete gamma Q(a, x) and lower P(a, x), in log
/// domain; series below a + 1, continued fraction above.
pub(crate) fn log_gamma_p_q(a: f64, x: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (f64::NEG_INFINITY, 0.0);
    }
    if x == f64::INFINITY {
        return (0.0, f64::NEG_INFINITY);
    }
    let prefix = a * ln(x) - x - lgamma(a);
    if x < a + 1.0 {
        let mut ap = a;
        let mut del = 1.0 / a;
        let mut sum = del;
        for _ in 0..10_000 {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if abs(del) < abs(sum) * 1e-17 {
                break;
            }
        }
        let log_p = (prefix + ln(sum)).min(0.0);
        (log_p, log1mexp(log_p))
    } else {
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if abs(d) < TINY {
                d = TINY;
            }
            c = b + an / c;
            if abs(c) < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if abs(delta - 1.0) < 1e-16 {
                break;
            }
        }
        let log_q = (prefix + ln(h)).min(0.0);
        (log1mexp(log_q), log_q)
    }
}

/// Solves `f(x) = target` for a monotone `f` over `[lower, upper]`.
///
/// The bracket is seeded at `seed` with half-width 1 and doubled until it
/// straddles the target, then bisected down to adjacent floats (at most
/// 200 bisection steps). Positive brackets spanning more than a factor 4
/// are split geometrically so tiny quantiles near a zero lower bound are
/// reachable.
pub(crate) fn solve_monotone<F: Fn(f64) -> f64>(
    f: F,
    target: f64,
    increasing: bool,
    seed: f64,
    lower: f64,
    upper: f64,
) -> f64 {
    let above = |x: f64| {
        let v = f(x);
        if increasing {
            v >= target
        } else {
            v <= target
        }
    };
    let mut width = 1.0;
    let mut lo = seed;
    let mut hi = seed;
    // grow downwards until the lower end is below the target
    loop {
        if !above(lo) {
            break;
        }
        let next = if lower.is_finite() && lower >= 0.0 && lo > lower {
            lower + (lo - lower) * 0.5
        } else {
            lo - width
        };
        if next <= lower || next == lo {
            lo = lower;
            break;
        }
        hi = lo;
        lo = next;
        width *= 2.0;
    }
    width = 1.0;
    loop {
        if above(hi) {
            break;
        }
        let next = hi + width;
        if next >= upper || next == hi {
            hi = upper;
            break;
        }
        lo = lo.max(hi);
        hi = next;
        width *= 2.0;
    }
    for _ in 0..200 {
        let mid = if lo > 0.0 && hi.is_finite() && hi > 4.0 * lo {
            sqrt(lo) * sqrt(hi)
        } else {
            lo + (hi - lo) * 0.5
        };
        if mid <= lo || mid >= hi {
            break;
        }
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // return whichever endpoint is closer in value
    let dlo = abs(f(lo) - target);
    let dhi = abs(f(hi) - target);
    if dlo.is_nan() || dhi <= dlo {
        hi
    } else {
        lo
    }
}

/// Double-double number hi + lo with |lo| ≤ ulp(hi)/2 (about 32 digits).
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    pub(crate) fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub(crate) fn value(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub(crate) fn add(self, y: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, y.hi);
        let (t, f) = two_sum(self.lo, y.lo);
        let r = quick_two_sum(s, e + t);
        quick_two_sum(r.hi, r.lo + f)
    }

    pub(crate) fn mul(self, y: Dd) -> Dd {
        let p = self.hi * y.hi;
        let e = libm::fma(self.hi, y.hi, -p);
        quick_two_sum(p, e + (self.hi * y.lo + self.lo * y.hi))
    }

    pub(crate) fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let p = q1 * d;
        let e = libm::fma(q1, d, -p);
        let r = ((self.hi - p) - e + self.lo) / d;
        quick_two_sum(q1, r)
    }

    pub(crate) fn powi(self, mut k: u64) -> Dd {
        let mut base = self;
        let mut acc = Dd::from(1.0);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            k >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_log_sf_matches_high_precision() {
        // mpmath, 50 digits
        let cases = [
            (8.0, -35.013_437_159_914_55),
            (20.0, -203.917_155_371_097_26),
            (30.0, -454.321_243_956_343_2),
            (38.0, -726.557_216_018_820_1),
            (40.0, -804.608_442_013_753_8),
        ];
        for (x, want) in cases {
            let got = normal_log_sf(x);
            assert!(abs(got - want) <= 1e-12 * abs(want), "x={x} got={got}");
        }
        assert!(abs(normal_log_sf(0.0) + LN_2) < 1e-15);
    }

    #[test]
    fn normal_branches_meet() {
        let below = normal_log_sf(8.0 - 1e-12);
        let at = normal_log_sf(8.0);
        assert!(abs(below - at) < 1e-9);
    }

    #[test]
    fn log1mexp_branches() {
        assert!(abs(log1mexp(-1e-9) - (-20.723_265_837_446_41)) < 1e-6);
        assert!(abs(log1mexp(-LN_2) + LN_2) < 1e-15);
        assert_eq!(log1mexp(f64::NEG_INFINITY), 0.0);
    }

    #[test]
    fn incomplete_gamma_exponential_case() {
        // Gamma(1) is Exp(1)
        for x in [0.1, 1.0, 3.0, 50.0] {
            let (lp, lq) = log_gamma_p_q(1.0, x);
            assert!(abs(lq + x) < 1e-12, "x={x}");
            assert!(abs(exp(lp) - (1.0 - exp(-x))) < 1e-14);
        }
        // Gamma(2): Q = (1 + x) e^{-x}
        let (_, lq) = log_gamma_p_q(2.0, 10.0);
        assert!(abs(lq - (ln(11.0) - 10.0)) < 1e-12);
    }

    #[test]
    fn solver_reaches_adjacent_floats() {
        let x = solve_monotone(|x| x * x * x, 2.0, true, 0.0, f64::NEG_INFINITY, f64::INFINITY);
        assert!(abs(x - libm::cbrt(2.0)) <= 4.0 * f64::EPSILON);
        let y = solve_monotone(|x| -x, -1e-200, false, 1.0, 0.0, f64::INFINITY);
        assert!(abs(y / 1e-200 - 1.0) < 1e-12);
    }
}
