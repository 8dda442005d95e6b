//! Incidence-bound envelopes, dyadic multiplicity bookkeeping, and log-log
//! exponent fitting.
//!
//! For curves with `k` degrees of freedom the classical incidence envelope is
//! `m^(k/(2k-1)) * N^((2k-2)/(2k-1)) + m + N`; the multiplicity-aware variant
//! scales the leading term by `t^(1/(2k-1))`, the point term by `t`, and the
//! curve term by `max(1, ceil(log2 t))`. Since `m`, `N`, `t` are integer
//! counts, each leading term is a single `(2k-1)`-th root of an exact
//! rational; we evaluate it as a certified interval with about 40 decimal
//! digits (roughly 133 bits) of precision, far tighter than the documented
//! 1e-9 relative-error requirement. Comparisons against envelopes always use
//! the certified upper end.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ceil_log2, floor_log2, rat_to_f64, Rat};

/// Decimal digits of scaling used for certified roots.
const ROOT_PRECISION_DIGITS: u32 = 40;

/// A certified enclosure `lo <= value <= hi` of a real number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl CertInterval {
    pub fn mid_f64(&self) -> f64 {
        (rat_to_f64(&self.lo) + rat_to_f64(&self.hi)) / 2.0
    }

    /// Certified relative width `(hi - lo) / lo` (for positive values).
    pub fn rel_width_f64(&self) -> f64 {
        rat_to_f64(&((&self.hi - &self.lo) / &self.lo))
    }
}

/// Certified interval around `x^(1/n)` for `x >= 0`, `n >= 1`.
///
/// Scale by `10^(digits * n)`, take exact integer floor roots of a floor and
/// a ceiling of the scaled value, and widen by one unit in the last place on
/// each side — every step is exact integer arithmetic, so the enclosure is
/// sound by construction.
pub fn nth_root_interval(x: &Rat, n: u32) -> Result<CertInterval> {
    if n == 0 {
        return Err(Error::ParameterRange {
            what: "0th root".into(),
        });
    }
    if x.is_negative() {
        return Err(Error::ParameterRange {
            what: format!("nth_root_interval of negative value {x}"),
        });
    }
    if x.is_zero() {
        return Ok(CertInterval {
            lo: Rat::zero(),
            hi: Rat::zero(),
        });
    }
    let scale: BigInt = BigInt::from(10).pow(ROOT_PRECISION_DIGITS);
    let scale_n = scale.pow(n);
    let num = x.numer() * &scale_n;
    let den = x.denom();
    let floor_scaled = num.clone() / den;
    let ceil_scaled = (&num + (den - BigInt::one())) / den;
    let lo_int = floor_scaled.nth_root(n);
    let hi_int = ceil_scaled.nth_root(n) + BigInt::one();
    Ok(CertInterval {
        lo: Rat::new(lo_int, scale.clone()),
        hi: Rat::new(hi_int, scale),
    })
}

/// An evaluated incidence envelope: certified leading term plus the two exact
/// linear terms.
#[derive(Debug, Clone)]
pub struct BoundEnvelope {
    /// `(t * m^k * N^(2k-2))^(1/(2k-1))`, certified.
    pub leading: CertInterval,
    /// `t * m` (exact).
    pub m_term: Rat,
    /// `max(1, ceil(log2 t)) * N` (exact).
    pub n_term: Rat,
}

impl BoundEnvelope {
    /// Certified upper end of the whole envelope; use this side for
    /// comparisons.
    pub fn upper(&self) -> Rat {
        &self.leading.hi + &self.m_term + &self.n_term
    }

    pub fn upper_f64(&self) -> f64 {
        rat_to_f64(&self.upper())
    }
}

fn check_envelope_params(m: u64, curves: u64, k: u32, t: u64) -> Result<()> {
    if m < 1 || curves < 1 || t < 1 {
        return Err(Error::ParameterRange {
            what: format!("envelope needs m, N, t >= 1 (got m={m}, N={curves}, t={t})"),
        });
    }
    if k < 2 {
        return Err(Error::ParameterRange {
            what: format!("envelope needs k >= 2 (got k={k})"),
        });
    }
    Ok(())
}

/// Plain envelope `m^(k/(2k-1)) N^((2k-2)/(2k-1)) + m + N` for `m` points and
/// `N` curves with `k` degrees of freedom.
pub fn envelope_ps(m: u64, curves: u64, k: u32) -> Result<BoundEnvelope> {
    envelope_mult(m, curves, k, 1)
}

/// Multiplicity-aware envelope with maximum curve multiplicity `t`.
pub fn envelope_mult(m: u64, curves: u64, k: u32, t: u64) -> Result<BoundEnvelope> {
    check_envelope_params(m, curves, k, t)?;
    let base = BigInt::from(t) * BigInt::from(m).pow(k) * BigInt::from(curves).pow(2 * k - 2);
    let leading = nth_root_interval(&Rat::from_integer(base), 2 * k - 1)?;
    let m_term = Rat::from_integer(BigInt::from(t) * BigInt::from(m));
    let log_coeff = u64::from(ceil_log2(t)).max(1);
    let n_term = Rat::from_integer(BigInt::from(log_coeff) * BigInt::from(curves));
    Ok(BoundEnvelope {
        leading,
        m_term,
        n_term,
    })
}

/// Exponent of the leading envelope term when the inputs are powers of a
/// common scale `n`: `m = n^mu`, `N = n^nu`, `t = n^tau` give leading
/// exponent `(tau + k*mu + (2k-2)*nu) / (2k-1)`.
pub fn symbolic_leading_exponent(k: u32, mu: f64, nu: f64, tau: f64) -> f64 {
    let k = k as f64;
    (tau + k * mu + (2.0 * k - 2.0) * nu) / (2.0 * k - 1.0)
}

/// One dyadic multiplicity level: classes whose multiplicity lies in
/// `[2^level, 2^(level+1))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DyadicLevel {
    pub level: u32,
    /// Number of distinct classes at this level.
    pub class_count: u64,
    /// Total multiplicity mass carried by the level.
    pub mass: u64,
}

/// Partition class multiplicities into dyadic levels, verifying the two exact
/// bookkeeping identities: the level masses sum to the multiset size, and
/// each level holds at most `total / 2^level` classes.
pub fn dyadic_partition(multiplicities: &[u64]) -> Result<Vec<DyadicLevel>> {
    if multiplicities.iter().any(|&m| m == 0) {
        return Err(Error::ParameterRange {
            what: "class multiplicities must be positive".into(),
        });
    }
    let total: u64 = multiplicities.iter().sum();
    let mut levels: std::collections::BTreeMap<u32, (u64, u64)> = Default::default();
    for &m in multiplicities {
        let entry = levels.entry(floor_log2(m)).or_insert((0, 0));
        entry.0 += 1;
        entry.1 += m;
    }
    let out: Vec<DyadicLevel> = levels
        .into_iter()
        .map(|(level, (class_count, mass))| DyadicLevel {
            level,
            class_count,
            mass,
        })
        .collect();
    // Exact invariants; a failure here means the partition logic is broken.
    let mass_sum: u64 = out.iter().map(|l| l.mass).sum();
    assert_eq!(mass_sum, total, "dyadic levels must conserve total mass");
    for l in &out {
        assert!(
            l.class_count.saturating_mul(1 << l.level) <= total,
            "level {} holds {} classes, more than total/2^level allows",
            l.level,
            l.class_count
        );
    }
    Ok(out)
}

/// Least-squares fit of `ln(value) = slope * ln(n) + intercept`.
#[derive(Debug, Clone, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub rms_residual: f64,
    pub samples: usize,
}

/// Fit a power law to `(n, value)` samples; needs at least three samples with
/// strictly positive coordinates.
pub fn fit_exponent(samples: &[(f64, f64)]) -> Result<ExponentFit> {
    if samples.len() < 3 {
        return Err(Error::InsufficientSamples {
            needed: 3,
            got: samples.len(),
        });
    }
    if samples.iter().any(|&(n, v)| n <= 0.0 || v <= 0.0) {
        return Err(Error::ParameterRange {
            what: "fit_exponent needs strictly positive samples".into(),
        });
    }
    let logs: Vec<(f64, f64)> = samples.iter().map(|&(n, v)| (n.ln(), v.ln())).collect();
    let count = logs.len() as f64;
    let sx: f64 = logs.iter().map(|&(x, _)| x).sum();
    let sy: f64 = logs.iter().map(|&(_, y)| y).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| x * x).sum();
    let sxy: f64 = logs.iter().map(|&(x, y)| x * y).sum();
    let denom = count * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return Err(Error::ParameterRange {
            what: "fit_exponent needs at least two distinct n values".into(),
        });
    }
    let slope = (count * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / count;
    let ss: f64 = logs
        .iter()
        .map(|&(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    Ok(ExponentFit {
        slope,
        intercept,
        rms_residual: (ss / count).sqrt(),
        samples: samples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn certified_roots_bracket_tightly() {
        let iv = nth_root_interval(&rat_int(2), 2).unwrap();
        assert!(iv.lo < iv.hi);
        let mid = iv.mid_f64();
        assert!((mid - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(iv.rel_width_f64() < 1e-30);
        // Perfect powers still bracket correctly.
        let iv = nth_root_interval(&rat_int(27), 3).unwrap();
        assert!(iv.lo <= rat_int(3) && rat_int(3) <= iv.hi);
        // Rational bases too: (4/9)^(1/2) = 2/3.
        let iv = nth_root_interval(&rat(4, 9), 2).unwrap();
        assert!(iv.lo <= rat(2, 3) && rat(2, 3) <= iv.hi);
        assert!(nth_root_interval(&rat_int(-1), 2).is_err());
    }

    #[test]
    fn envelope_smallest_case() {
        let e = envelope_ps(1, 1, 2).unwrap();
        assert!(e.leading.lo <= rat_int(1) && rat_int(1) <= e.leading.hi);
        assert_eq!(e.m_term, rat_int(1));
        assert_eq!(e.n_term, rat_int(1));
        let upper = e.upper_f64();
        assert!((upper - 3.0).abs() < 1e-9);
    }

    #[test]
    fn envelope_100_100_k3() {
        // m = N = 100, k = 3: leading term is 100^(7/5) ~ 630.957.
        let e = envelope_ps(100, 100, 3).unwrap();
        assert!((e.leading.mid_f64() - 630.9573444801933).abs() < 1e-6);
    }

    #[test]
    fn envelope_mult_reduces_to_plain_at_t1() {
        let a = envelope_ps(50, 700, 3).unwrap();
        let b = envelope_mult(50, 700, 3, 1).unwrap();
        assert_eq!(a.leading, b.leading);
        assert_eq!(a.m_term, b.m_term);
        assert_eq!(a.n_term, b.n_term);
    }

    #[test]
    fn envelope_mult_t_doubling_scales_leading() {
        // Doubling t multiplies the leading term by 2^(1/(2k-1)).
        let k = 3;
        let a = envelope_mult(40, 900, k, 4).unwrap();
        let b = envelope_mult(40, 900, k, 8).unwrap();
        let ratio = b.leading.mid_f64() / a.leading.mid_f64();
        let expected = 2f64.powf(1.0 / (2.0 * k as f64 - 1.0));
        assert!((ratio - expected).abs() < 1e-9, "ratio {ratio}");
    }

    #[test]
    fn envelope_monotone_in_each_parameter() {
        let base = envelope_mult(30, 500, 3, 2).unwrap();
        for (m, n, t) in [(31, 500, 2), (30, 501, 2), (30, 500, 3)] {
            let bigger = envelope_mult(m, n, 3, t).unwrap();
            assert!(bigger.leading.lo >= base.leading.lo);
            assert!(bigger.leading.hi >= base.leading.hi);
            assert!(bigger.upper() >= base.upper());
        }
    }

    #[test]
    fn envelope_rejects_bad_parameters() {
        assert!(envelope_ps(0, 10, 3).is_err());
        assert!(envelope_ps(10, 0, 3).is_err());
        assert!(envelope_ps(10, 10, 1).is_err());
        assert!(envelope_mult(10, 10, 3, 0).is_err());
    }

    #[test]
    fn symbolic_exponents() {
        // k = 3, m = n^(2a), N = n^2, t = 1: leading exponent (6a + 8) / 5.
        let a = 0.5;
        let got = symbolic_leading_exponent(3, 2.0 * a, 2.0, 0.0);
        assert!((got - (6.0 * a + 8.0) / 5.0).abs() < 1e-12);
        // With t = n^(4(1-a)) the exponent becomes (2a + 12) / 5.
        let got = symbolic_leading_exponent(3, 2.0 * a, 2.0, 4.0 * (1.0 - a));
        assert!((got - (2.0 * a + 12.0) / 5.0).abs() < 1e-12);
        // k = 4, m = n^(2a), N = n^2 gives (8a + 12) / 7.
        let got = symbolic_leading_exponent(4, 2.0 * a, 2.0, 0.0);
        assert!((got - (8.0 * a + 12.0) / 7.0).abs() < 1e-12);
    }

    #[test]
    fn dyadic_partition_levels() {
        let levels = dyadic_partition(&[1, 2, 3, 8]).unwrap();
        assert_eq!(
            levels,
            vec![
                DyadicLevel { level: 0, class_count: 1, mass: 1 },
                DyadicLevel { level: 1, class_count: 2, mass: 5 },
                DyadicLevel { level: 3, class_count: 1, mass: 8 },
            ]
        );
        assert!(dyadic_partition(&[1, 0]).is_err());
        assert_eq!(dyadic_partition(&[]).unwrap(), vec![]);
    }

    #[test]
    fn fit_recovers_exact_power_law() {
        let samples: Vec<(f64, f64)> = (1..=6).map(|k| {
            let n = 10f64.powi(k);
            (n, 3.0 * n * n)
        })
        .collect();
        let fit = fit_exponent(&samples).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-9);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-9);
        assert!(fit.rms_residual < 1e-9);
        assert!(fit_exponent(&samples[..2]).is_err());
        assert!(fit_exponent(&[(1.0, 1.0), (2.0, -1.0), (3.0, 1.0)]).is_err());
    }
}
