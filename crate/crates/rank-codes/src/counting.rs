//! Counting functions of the rank metric, exact over big integers.
//!
//! `alpha(m, r, q)` counts ordered r-tuples of independent vectors in
//! GF(q)^m, `gaussian(n, r, q)` counts r-dimensional subspaces of GF(q)^n,
//! `count_rank` counts vectors of a given rank weight, `ball_volume` sums
//! them, and `mrd_rank_distribution` evaluates the rank distribution of a
//! linear MRD code.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::factor_prime_power;

/// The parameter triple (q, m, n) shared by the counting functions.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CountingContext {
    pub q: u64,
    pub m: u32,
    pub n: u32,
}

impl CountingContext {
    pub fn new(q: u64, m: u32, n: u32) -> Result<Self> {
        if factor_prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        if m == 0 || n == 0 {
            return Err(Error::Domain("m and n must be positive".into()));
        }
        Ok(CountingContext { q, m, n })
    }

    pub fn max_rank(&self) -> u32 {
        self.m.min(self.n)
    }

    /// q^{mn}, the number of vectors in GF(q^m)^n.
    pub fn space_size(&self) -> BigUint {
        BigUint::from(self.q).pow(self.m * self.n)
    }
}

fn qpow(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

/// alpha(m, r) = prod_{i=0}^{r-1} (q^m − q^i), with alpha(m, 0) = 1: the
/// number of ordered r-tuples of linearly independent vectors in GF(q)^m.
pub fn alpha(m: u32, r: u32, q: u64) -> BigUint {
    let qm = qpow(q, m);
    let mut acc = BigUint::one();
    for i in 0..r {
        if i >= m {
            return BigUint::zero();
        }
        acc *= &qm - qpow(q, i);
    }
    acc
}

/// Gaussian binomial [n r]_q = alpha(n, r) / alpha(r, r): the number of
/// r-dimensional subspaces of GF(q)^n. Returns 0 when r > n (documented
/// convention, so alternating sums can run without range bookkeeping).
pub fn gaussian(n: u32, r: u32, q: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let num = alpha(n, r, q);
    let den = alpha(r, r, q);
    let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(rem.is_zero(), "Gaussian binomial is an integer");
    quot
}

/// N_r(q^m, n) = [n r]_q · alpha(m, r): the number of vectors of rank r in
/// GF(q^m)^n.
pub fn count_rank(r: u32, ctx: &CountingContext) -> Result<BigUint> {
    if r > ctx.max_rank() {
        return Err(Error::Domain(format!(
            "rank {r} exceeds min(m, n) = {}",
            ctx.max_rank()
        )));
    }
    Ok(gaussian(ctx.n, r, ctx.q) * alpha(ctx.m, r, ctx.q))
}

/// V_r(q^m, n) = sum_{i=0}^{r} N_i(q^m, n): the volume of a rank-metric ball.
pub fn ball_volume(r: u32, ctx: &CountingContext) -> Result<BigUint> {
    if r > ctx.max_rank() {
        return Err(Error::Domain(format!(
            "radius {r} exceeds min(m, n) = {}",
            ctx.max_rank()
        )));
    }
    let mut acc = BigUint::zero();
    for i in 0..=r {
        acc += count_rank(i, ctx)?;
    }
    Ok(acc)
}

/// Number of codewords of rank r in an (n, n−d+1, d) linear MRD code over
/// GF(q^m):
///
///   M_{d,r} = [n r] · sum_{j=d}^{r} (−1)^{r−j} [r j] q^{binom(r−j,2)} (q^{m(j−d+1)} − 1)
///
/// Requires 1 ≤ d ≤ r ≤ n ≤ m.
pub fn mrd_rank_distribution(d: u32, r: u32, ctx: &CountingContext) -> Result<BigUint> {
    if !(1 <= d && d <= r && r <= ctx.n && ctx.n <= ctx.m) {
        return Err(Error::Domain(format!(
            "need 1 <= d <= r <= n <= m, got d={d}, r={r}, n={}, m={}",
            ctx.n, ctx.m
        )));
    }
    let q = ctx.q;
    let mut sum = BigInt::zero();
    for j in d..=r {
        let sign = if (r - j) % 2 == 0 { 1 } else { -1 };
        let choose2 = (r - j) * (r - j).saturating_sub(1) / 2;
        let term = BigInt::from(gaussian(r, j, q))
            * BigInt::from(qpow(q, choose2))
            * (BigInt::from(qpow(q, ctx.m * (j - d + 1))) - BigInt::one());
        sum += sign * term;
    }
    let total = BigInt::from(gaussian(ctx.n, r, q)) * sum;
    total
        .try_into()
        .map_err(|_| Error::Domain("rank distribution evaluated negative".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn alpha_values() {
        // alpha(m, 0) = 1
        assert_eq!(alpha(3, 0, 2), big(1));
        // alpha(2, 1) with q=2: 2^2 − 1 = 3
        assert_eq!(alpha(2, 1, 2), big(3));
        // alpha(2, 2) with q=2: ordered independent pairs in GF(2)^2 = 3·2
        assert_eq!(alpha(2, 2, 2), big(6));
        assert_eq!(alpha(3, 2, 2), big(42));
        // more vectors than dimensions: no independent tuples
        assert_eq!(alpha(2, 3, 2), big(0));
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian(5, 0, 2), big(1));
        assert_eq!(gaussian(2, 1, 2), big(3));
        assert_eq!(gaussian(3, 1, 2), big(7));
        assert_eq!(gaussian(3, 2, 2), big(7));
        // exhaustively cross-checked against subspace enumeration elsewhere
        assert_eq!(gaussian(4, 2, 2), big(35));
        assert_eq!(gaussian(4, 2, 3), big(130));
        // out of range -> 0 by convention
        assert_eq!(gaussian(2, 3, 2), big(0));
    }

    #[test]
    fn gaussian_symmetry() {
        for n in 0..6u32 {
            for r in 0..=n {
                for q in [2u64, 3, 4] {
                    assert_eq!(gaussian(n, r, q), gaussian(n, n - r, q));
                }
            }
        }
    }

    #[test]
    fn count_rank_values() {
        let ctx = CountingContext::new(2, 2, 2).unwrap();
        assert_eq!(count_rank(0, &ctx).unwrap(), big(1));
        // brute-force over all 16 vectors of GF(4)^2: 9 have rank 1
        assert_eq!(count_rank(1, &ctx).unwrap(), big(9));
        assert_eq!(count_rank(2, &ctx).unwrap(), big(6));
        assert!(count_rank(3, &ctx).is_err());

        let ctx33 = CountingContext::new(2, 3, 3).unwrap();
        assert_eq!(count_rank(2, &ctx33).unwrap(), big(294));
    }

    #[test]
    fn ranks_partition_the_space() {
        for (q, m, n) in [(2u64, 3u32, 3u32), (3, 2, 2), (2, 2, 3)] {
            let ctx = CountingContext::new(q, m, n).unwrap();
            let mut total = BigUint::default();
            for r in 0..=ctx.max_rank() {
                total += count_rank(r, &ctx).unwrap();
            }
            assert_eq!(total, ctx.space_size());
        }
    }

    #[test]
    fn ball_volume_values() {
        let ctx = CountingContext::new(2, 2, 2).unwrap();
        assert_eq!(ball_volume(0, &ctx).unwrap(), big(1));
        assert_eq!(ball_volume(1, &ctx).unwrap(), big(10));
        // radius min(m,n) covers the whole space
        assert_eq!(ball_volume(2, &ctx).unwrap(), ctx.space_size());
    }

    #[test]
    fn mrd_distribution_small_cases() {
        // q=2, m=n=r=d=2: the 3 nonzero words of a (2,1,2) code all have rank 2
        let ctx = CountingContext::new(2, 2, 2).unwrap();
        assert_eq!(mrd_rank_distribution(2, 2, &ctx).unwrap(), big(3));

        // q=2, m=n=3, d=2: M_{2,2} + M_{2,3} + 1 = 64
        let ctx33 = CountingContext::new(2, 3, 3).unwrap();
        let m22 = mrd_rank_distribution(2, 2, &ctx33).unwrap();
        let m23 = mrd_rank_distribution(2, 3, &ctx33).unwrap();
        assert_eq!(m22, big(49));
        assert_eq!(m23, big(14));
        assert_eq!(m22 + m23 + 1u32, big(64));

        // d=3: M_{3,3} + 1 = 8
        assert_eq!(mrd_rank_distribution(3, 3, &ctx33).unwrap(), big(7));
    }

    #[test]
    fn mrd_distribution_rejects_bad_order() {
        let ctx = CountingContext::new(2, 3, 3).unwrap();
        // d > r violates the precondition
        assert!(mrd_rank_distribution(3, 2, &ctx).is_err());
        // n > m is outside the formula's domain
        let wide = CountingContext::new(2, 2, 3).unwrap();
        assert!(mrd_rank_distribution(2, 2, &wide).is_err());
    }

    #[test]
    fn mrd_distribution_sums_to_code_size() {
        // sum_{r=d}^{n} M_{d,r} + 1 = q^{m(n−d+1)} on a desk-scale grid
        for (q, m, n) in [(2u64, 3u32, 3u32), (2, 4, 3), (3, 2, 2), (2, 4, 4)] {
            let ctx = CountingContext::new(q, m, n).unwrap();
            for d in 1..=n {
                let mut total = BigUint::one();
                for r in d..=n {
                    total += mrd_rank_distribution(d, r, &ctx).unwrap();
                }
                assert_eq!(total, qpow(q, m * (n - d + 1)), "q={q} m={m} n={n} d={d}");
            }
        }
    }

    #[test]
    fn context_validation() {
        assert!(CountingContext::new(6, 2, 2).is_err());
        assert!(CountingContext::new(2, 0, 2).is_err());
        assert!(CountingContext::new(4, 2, 2).is_ok());
    }
}
