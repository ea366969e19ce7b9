//! Asymptotic rates of constant-rank and constant-dimension codes, over
//! exact rationals.
//!
//! Parameters are normalized by the extension degree: ν = n/m, ρ = r/m,
//! δ_R = d_R/m, δ_S = d_S/(2m). Rates are exponents of q^{m²} as m grows.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Normalized parameter tuple with the domain invariants checked.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedParams {
    pub nu: BigRational,
    pub rho: BigRational,
    pub delta_r: BigRational,
    pub delta_s: BigRational,
}

impl NormalizedParams {
    pub fn new(m: u64, n: u64, r: u64, d_r: u64, d_s: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("m must be positive".into()));
        }
        let p = NormalizedParams {
            nu: rational(n as i64, m as i64),
            rho: rational(r as i64, m as i64),
            delta_r: rational(d_r as i64, m as i64),
            delta_s: rational(d_s as i64, 2 * m as i64),
        };
        let cap = p.nu.clone().min(BigRational::one());
        if p.rho > cap || p.delta_r > cap {
            return Err(Error::Domain(
                "rho and delta_R must lie in [0, min(nu, 1)]".into(),
            ));
        }
        Ok(p)
    }
}

/// Asymptotic rate of constant-dimension codes:
/// min{(1−ρ)(ρ−δ_S), ρ(1−ρ−δ_S)} for 0 ≤ δ_S ≤ min(ρ, 1−ρ), else 0.
pub fn asymptotic_as(delta_s: &BigRational, rho: &BigRational) -> Result<BigRational> {
    if rho.is_negative() || rho > &BigRational::one() {
        return Err(Error::Domain("rho must lie in [0, 1]".into()));
    }
    if delta_s.is_negative() {
        return Err(Error::Domain("delta_S must be nonnegative".into()));
    }
    let one = BigRational::one();
    let cap = rho.clone().min(&one - rho);
    if *delta_s > cap {
        return Ok(BigRational::zero());
    }
    let a = (&one - rho) * (rho - delta_s);
    let b = rho * (&one - rho - delta_s);
    Ok(a.min(b))
}

/// Interval of asymptotic rates; `exact` when the endpoints coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct RateInterval {
    pub lower: BigRational,
    pub upper: BigRational,
    pub exact: bool,
}

impl RateInterval {
    fn exact(v: BigRational) -> Self {
        RateInterval {
            lower: v.clone(),
            upper: v,
            exact: true,
        }
    }
}

/// Asymptotic rate of constant-rank codes a_R(ν, δ_R, ρ).
///
/// For ν ≤ 1 the rate is exactly ρ(1+ν−ρ) − δ_R when δ_R ≤ ρ, and lies in
/// [max{0, ρ(1+ν−ρ) − δ_R}, ρ(ν−δ_R)] for ρ ≤ δ_R ≤ min(2ρ, ν). For ν > 1
/// the same shape holds with νδ_R in place of δ_R in the lower expressions
/// and ρ(1−δ_R) as the upper. The rate is 0 beyond δ_R = 2ρ.
pub fn asymptotic_ar(
    nu: &BigRational,
    delta_r: &BigRational,
    rho: &BigRational,
) -> Result<RateInterval> {
    if !nu.is_positive() {
        return Err(Error::Domain("nu must be positive".into()));
    }
    if rho.is_negative() || delta_r.is_negative() {
        return Err(Error::Domain("rho and delta_R must be nonnegative".into()));
    }
    let one = BigRational::one();
    let cap = nu.clone().min(one.clone());
    if rho > &cap || delta_r > &cap {
        return Err(Error::Domain(
            "rho and delta_R must lie in [0, min(nu, 1)]".into(),
        ));
    }

    let two_rho = rho + rho;
    if *delta_r > two_rho {
        return Ok(RateInterval::exact(BigRational::zero()));
    }

    // weighted distance term: δ_R for ν ≤ 1, νδ_R for ν > 1
    let weighted = if *nu <= one {
        delta_r.clone()
    } else {
        nu * delta_r
    };
    let base = rho * &(&one + nu - rho) - &weighted;

    if delta_r <= rho {
        return Ok(RateInterval::exact(base));
    }

    let lower = base.max(BigRational::zero());
    let upper = if *nu <= one {
        rho * &(nu - delta_r)
    } else {
        rho * &(&one - delta_r)
    };
    let exact = lower == upper;
    Ok(RateInterval {
        lower,
        upper,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn as_rate_examples() {
        // δ_S = 0 -> ρ(1−ρ)
        let r = asymptotic_as(&rational(0, 1), &rational(1, 2)).unwrap();
        assert_eq!(r, rational(1, 4));
        // beyond min(ρ, 1−ρ) the rate is 0
        let r = asymptotic_as(&rational(3, 4), &rational(1, 2)).unwrap();
        assert_eq!(r, rational(0, 1));
        // ρ = 1/2, δ_S = 1/4 -> 1/8
        let r = asymptotic_as(&rational(1, 4), &rational(1, 2)).unwrap();
        assert_eq!(r, rational(1, 8));
    }

    #[test]
    fn ar_rate_exact_region() {
        // ν = 1, ρ = 1: a_R = 1 − δ_R for δ_R ≤ 1
        for i in 0..=32i64 {
            let d = rational(i, 32);
            let r = asymptotic_ar(&rational(1, 1), &d, &rational(1, 1)).unwrap();
            assert!(r.exact);
            assert_eq!(r.lower, rational(1, 1) - d);
        }
    }

    #[test]
    fn ar_rate_interval_region() {
        // ν = 1, ρ = 1/2, δ_R = 3/4 -> [0, 1/8]
        let r = asymptotic_ar(&rational(1, 1), &rational(3, 4), &rational(1, 2)).unwrap();
        assert!(!r.exact);
        assert_eq!(r.lower, rational(0, 1));
        assert_eq!(r.upper, rational(1, 8));
    }

    #[test]
    fn ar_rate_zero_beyond_diameter() {
        let r = asymptotic_ar(&rational(1, 1), &rational(1, 2), &rational(1, 5)).unwrap();
        assert!(r.exact);
        assert_eq!(r.lower, rational(0, 1));
    }

    #[test]
    fn ar_rate_wide_regime() {
        // ν > 1 uses νδ_R: ν = 2, ρ = 1/2, δ_R = 1/4 -> ρ(1+ν−ρ) − νδ_R = 3/4
        let r = asymptotic_ar(&rational(2, 1), &rational(1, 4), &rational(1, 2)).unwrap();
        assert!(r.exact);
        assert_eq!(r.lower, rational(3, 4));
        // interval branch: δ_R = 3/4 -> upper ρ(1−δ_R) = 1/8
        let r = asymptotic_ar(&rational(2, 1), &rational(3, 4), &rational(1, 2)).unwrap();
        assert_eq!(r.upper, rational(1, 8));
    }

    #[test]
    fn ar_lower_never_exceeds_upper_on_grid() {
        for nu_i in 1..=32i64 {
            let nu = rational(nu_i, 32);
            for rho_i in 0..=32i64 {
                let rho = rational(rho_i, 32);
                for d_i in 0..=32i64 {
                    let d = rational(d_i, 32);
                    match asymptotic_ar(&nu, &d, &rho) {
                        Ok(iv) => assert!(iv.lower <= iv.upper, "nu={nu} d={d} rho={rho}"),
                        Err(_) => {
                            let cap = nu.clone().min(rational(1, 1));
                            assert!(rho > cap || d > cap);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_continuity_at_delta_equals_rho() {
        let nu = rational(1, 1);
        let rho = rational(1, 2);
        let at = asymptotic_ar(&nu, &rho, &rho).unwrap();
        assert!(at.exact);
        assert_eq!(at.lower, &rho * &(&nu - &rho));
    }

    #[test]
    fn domain_violations_rejected() {
        assert!(asymptotic_ar(&rational(0, 1), &rational(0, 1), &rational(0, 1)).is_err());
        assert!(asymptotic_ar(&rational(1, 2), &rational(3, 4), &rational(1, 4)).is_err());
        assert!(asymptotic_as(&rational(1, 4), &rational(3, 2)).is_err());
        assert!(NormalizedParams::new(2, 2, 1, 1, 2).is_ok());
        assert!(NormalizedParams::new(2, 2, 3, 1, 2).is_err());
    }
}
