//! Cardinality bounds on A_R(q^m, n, d, r) and A_S(q, n, 2d, r), combined
//! into best-known intervals.
//!
//! All arithmetic is exact: lower bounds are ceiled and upper bounds floored
//! at every division, since the bounded quantities are integers. The
//! transposition identity A_R(q^m, n, d, r) = A_R(q^n, m, d, r) normalizes
//! every query to n ≤ m before any formula is applied, and the subspace
//! symmetry A_S(q, n, 2d, r) = A_S(q, n, 2d, n−r) normalizes r to 2r ≤ n.
//!
//! Johnson-type recursions resolve by memoized descent: the length recursion
//! steps n down to r, and the square full-rank chain steps m down to the
//! d = m base where the exact value q^m − 1 applies. The self-referential
//! progression bound substitutes best available lower bounds for the
//! subtracted terms, a sound weakening that keeps the engine search-free.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::counting::{alpha, count_rank, gaussian, mrd_rank_distribution, CountingContext};
use crate::error::{Error, Result};
use crate::field::factor_prime_power;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

/// Which formula produced a bound. Adapted sources carry the rank actually
/// used in their chain notes.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoundSource {
    /// Every nonempty code has at least one word.
    Trivial,
    /// Rank-r slice of a linear MRD code (lower, r ≥ d).
    MrdSlice,
    /// Sphere-averaging lower bound N_r · q^{m(1−d)}, ceiled.
    BassalygoElias,
    /// min of the two constant-dimension lower bounds (r < d).
    SubspacePairing,
    /// Constant-dimension lower bound at d = 2r.
    SubspaceDisjoint,
    /// Constant-dimension lower bound on square ambient (n = m, r < d).
    SubspaceSquare,
    /// Singleton cap q^{m(n−d+1)} − 1 (upper, r ≥ d).
    SingletonCap,
    /// Singleton cap minus the MRD rank census over ranks far from r.
    RankCensus,
    /// Singleton cap minus optimal-code sizes along a rank progression,
    /// minimized over the progression offset.
    RankProgression,
    /// Johnson-type length recursion (r < n), floored.
    JohnsonLength,
    /// Johnson-type square full-rank recursion (n = m = r, d < m).
    JohnsonSquare,
    /// One word per elementary linear subspace (upper, r < d).
    ElsCap,
    /// d = 1: every rank-r vector.
    ExactAllVectors,
    /// Two words cannot be d apart: d > 2r or d > n.
    ExactDiameter,
    /// r = 0: only the zero vector.
    ExactZeroRank,
    /// d = r: the MRD slice is optimal.
    ExactMrdSlice,
    /// d = 2, r = 1: one word per line.
    ExactLines,
    /// A_S packing lower bound q^{(n−r)(r−d+1)}.
    AsPacking,
    /// A_S anticode upper bound alpha(n, r−d+1)/alpha(r, r−d+1), floored.
    AsAnticode,
    /// A_S exact: all of E_r(q, n) at d ≤ 1.
    AsAllSubspaces,
    /// A_S exact: 1 for d > r.
    AsSingleton,
}

impl BoundSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundSource::Trivial => "trivial",
            BoundSource::MrdSlice => "mrd_slice",
            BoundSource::BassalygoElias => "bassalygo_elias",
            BoundSource::SubspacePairing => "subspace_pairing",
            BoundSource::SubspaceDisjoint => "subspace_disjoint",
            BoundSource::SubspaceSquare => "subspace_square",
            BoundSource::SingletonCap => "singleton_cap",
            BoundSource::RankCensus => "rank_census",
            BoundSource::RankProgression => "rank_progression",
            BoundSource::JohnsonLength => "johnson_length",
            BoundSource::JohnsonSquare => "johnson_square",
            BoundSource::ElsCap => "els_cap",
            BoundSource::ExactAllVectors => "exact_all_vectors",
            BoundSource::ExactDiameter => "exact_diameter",
            BoundSource::ExactZeroRank => "exact_zero_rank",
            BoundSource::ExactMrdSlice => "exact_mrd_slice",
            BoundSource::ExactLines => "exact_lines",
            BoundSource::AsPacking => "as_packing",
            BoundSource::AsAnticode => "as_anticode",
            BoundSource::AsAllSubspaces => "as_all_subspaces",
            BoundSource::AsSingleton => "as_singleton",
        }
    }
}

impl std::fmt::Display for BoundSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated bound, with an optional recursion trace.
#[derive(Clone, Debug)]
pub struct BoundResult {
    pub value: BigUint,
    pub kind: BoundKind,
    pub source: BoundSource,
    pub chain: Vec<String>,
}

impl BoundResult {
    fn new(value: BigUint, kind: BoundKind, source: BoundSource) -> Self {
        BoundResult {
            value,
            kind,
            source,
            chain: Vec::new(),
        }
    }

    fn with_chain(mut self, chain: Vec<String>) -> Self {
        self.chain = chain;
        self
    }
}

fn qpow(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

fn ceil_div(num: &BigUint, den: &BigUint) -> BigUint {
    let (quot, rem) = num.div_rem(den);
    if rem.is_zero() {
        quot
    } else {
        quot + 1u32
    }
}

// ---------------------------------------------------------------------------
// A_S bounds
// ---------------------------------------------------------------------------

/// Best-known interval for A_S(q, n, 2d, r). Note `d` is half the subspace
/// distance: the bounded quantity is the maximum size of a code of
/// r-dimensional subspaces of GF(q)^n with minimum subspace distance 2d.
#[derive(Clone, Debug)]
pub struct AsInterval {
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub r: u32,
    /// r after the A_S(q,n,2d,r) = A_S(q,n,2d,n−r) normalization.
    pub r_used: u32,
    pub lower: BigUint,
    pub upper: BigUint,
    pub exact: bool,
    pub bounds: Vec<BoundResult>,
}

pub fn as_bounds(q: u64, n: u32, d: u32, r: u32) -> Result<AsInterval> {
    if factor_prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if r > n {
        return Err(Error::Domain(format!(
            "subspace dimension {r} exceeds ambient dimension {n}"
        )));
    }
    let r_used = r.min(n - r);

    let exact = |value: BigUint, source: BoundSource| AsInterval {
        q,
        n,
        d,
        r,
        r_used,
        lower: value.clone(),
        upper: value.clone(),
        exact: true,
        bounds: vec![BoundResult::new(value, BoundKind::Exact, source)],
    };

    // d <= 1: any two distinct equal-dimension subspaces are at distance >= 2
    if d <= 1 {
        return Ok(exact(gaussian(n, r_used, q), BoundSource::AsAllSubspaces));
    }
    if d > r_used {
        return Ok(exact(BigUint::one(), BoundSource::AsSingleton));
    }

    // 2 <= d <= r_used and 2·r_used <= n
    let e = r_used - d + 1;
    let lower = qpow(q, (n - r_used) * e);
    let upper = alpha(n, e, q).div_floor(&alpha(r_used, e, q));
    assert!(
        lower <= upper,
        "A_S bounds crossed at q={q} n={n} d={d} r={r}: implementation bug"
    );
    let exact_flag = lower == upper;
    Ok(AsInterval {
        q,
        n,
        d,
        r,
        r_used,
        lower: lower.clone(),
        upper: upper.clone(),
        exact: exact_flag,
        bounds: vec![
            BoundResult::new(lower, BoundKind::Lower, BoundSource::AsPacking),
            BoundResult::new(upper, BoundKind::Upper, BoundSource::AsAnticode),
        ],
    })
}

// ---------------------------------------------------------------------------
// A_R bounds
// ---------------------------------------------------------------------------

/// Best-known interval for A_R(q^m, n, d, r).
#[derive(Clone, Debug)]
pub struct ArInterval {
    pub q: u64,
    pub m: u32,
    pub n: u32,
    pub d: u32,
    pub r: u32,
    /// (m, n) after the transposition normalization to n ≤ m.
    pub m_used: u32,
    pub n_used: u32,
    pub lower: BigUint,
    pub upper: BigUint,
    /// The exact source when a closed form pins the value.
    pub exact: Option<BoundSource>,
    pub bounds: Vec<BoundResult>,
}

impl ArInterval {
    pub fn is_exact(&self) -> bool {
        self.exact.is_some() || self.lower == self.upper
    }
}

fn validate(q: u64, m: u32, n: u32, d: u32, r: u32) -> Result<()> {
    if factor_prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if m == 0 || n == 0 {
        return Err(Error::Domain("m and n must be positive".into()));
    }
    if d == 0 {
        return Err(Error::Domain("distance must be positive".into()));
    }
    if r > m.min(n) {
        return Err(Error::Domain(format!(
            "rank {r} exceeds min(m, n) = {}",
            m.min(n)
        )));
    }
    Ok(())
}

/// Closed forms. Assumes n ≤ m and r ≤ n.
fn ar_exact(q: u64, m: u32, n: u32, d: u32, r: u32) -> Option<(BigUint, BoundSource)> {
    if r == 0 {
        return Some((BigUint::one(), BoundSource::ExactZeroRank));
    }
    if d == 1 {
        let ctx = CountingContext::new(q, m, n).expect("validated");
        return Some((
            count_rank(r, &ctx).expect("validated"),
            BoundSource::ExactAllVectors,
        ));
    }
    if d > 2 * r || d > n {
        return Some((BigUint::one(), BoundSource::ExactDiameter));
    }
    if d == r {
        return Some((
            gaussian(n, r, q) * (qpow(q, m) - 1u32),
            BoundSource::ExactMrdSlice,
        ));
    }
    if d == 2 && r == 1 {
        return Some((gaussian(n, 1, q), BoundSource::ExactLines));
    }
    None
}

/// All applicable lower bounds. Assumes n ≤ m, 1 ≤ r ≤ n, d ≥ 1.
fn ar_lower_list(q: u64, m: u32, n: u32, d: u32, r: u32) -> Result<Vec<BoundResult>> {
    let mut out = vec![BoundResult::new(
        BigUint::one(),
        BoundKind::Lower,
        BoundSource::Trivial,
    )];
    let ctx = CountingContext::new(q, m, n)?;

    if d <= r {
        out.push(BoundResult::new(
            mrd_rank_distribution(d, r, &ctx)?,
            BoundKind::Lower,
            BoundSource::MrdSlice,
        ));
    }

    if d <= n {
        let nr = count_rank(r, &ctx)?;
        let value = ceil_div(&nr, &qpow(q, m * (d - 1)));
        out.push(BoundResult::new(
            value,
            BoundKind::Lower,
            BoundSource::BassalygoElias,
        ));
    }

    // Constant-dimension bounds, applied to n−r instead of r when 2r > n.
    let r_eff = r.min(n - r);
    let adapted = r_eff != r;
    let note = |mut b: BoundResult| {
        if adapted {
            b.chain.push(format!("adapted to rank n-r = {r_eff}"));
        }
        b
    };
    if r_eff >= 1 {
        if r_eff < d && d <= n {
            let first = as_bounds(q, n, d - r_eff, r_eff)?;
            let second = as_bounds(q, m, r_eff, r_eff)?;
            out.push(note(
                BoundResult::new(
                    first.lower.clone().min(second.lower.clone()),
                    BoundKind::Lower,
                    BoundSource::SubspacePairing,
                )
                .with_chain(vec![
                    format!("A_S(q,{n},2*{},{r_eff}) >= {}", d - r_eff, first.lower),
                    format!("A_S(q,{m},2*{r_eff},{r_eff}) >= {}", second.lower),
                ]),
            ));
        }
        if d == 2 * r_eff {
            let iv = as_bounds(q, n, r_eff, r_eff)?;
            out.push(note(BoundResult::new(
                iv.lower,
                BoundKind::Lower,
                BoundSource::SubspaceDisjoint,
            )));
        }
        if n == m && r_eff < d && d <= 2 * r_eff {
            let iv = as_bounds(q, m, r_eff, r_eff)?;
            out.push(note(BoundResult::new(
                iv.lower,
                BoundKind::Lower,
                BoundSource::SubspaceSquare,
            )));
        }
    }
    Ok(out)
}

/// Best available lower value (exact if a closed form applies).
fn ar_lower_best(q: u64, m: u32, n: u32, d: u32, r: u32) -> Result<BigUint> {
    if let Some((v, _)) = ar_exact(q, m, n, d, r) {
        return Ok(v);
    }
    Ok(ar_lower_list(q, m, n, d, r)?
        .into_iter()
        .map(|b| b.value)
        .max()
        .expect("trivial bound always present"))
}

/// Number of codewords of rank `i` in an (n, n−d+1, d) linear MRD code.
fn mrd_census(i: u32, d: u32, ctx: &CountingContext) -> Result<BigUint> {
    if i == 0 {
        Ok(BigUint::one())
    } else if i < d {
        Ok(BigUint::zero())
    } else {
        mrd_rank_distribution(d, i, ctx)
    }
}

type Key = (u64, u32, u32, u32, u32);

/// Minimum over all applicable upper bounds, memoized over (q, m, n, d, r).
fn ar_upper_best(q: u64, m: u32, n: u32, d: u32, r: u32, memo: &mut HashMap<Key, BigUint>) -> Result<BigUint> {
    if let Some((v, _)) = ar_exact(q, m, n, d, r) {
        return Ok(v);
    }
    let key = (q, m, n, d, r);
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let best = ar_upper_list(q, m, n, d, r, memo)?
        .into_iter()
        .map(|b| b.value)
        .min()
        .expect("upper bound list is nonempty");
    memo.insert(key, best.clone());
    Ok(best)
}

/// All applicable upper bounds. Assumes n ≤ m, 1 ≤ r ≤ n, 2 ≤ d ≤ min(2r, n).
fn ar_upper_list(
    q: u64,
    m: u32,
    n: u32,
    d: u32,
    r: u32,
    memo: &mut HashMap<Key, BigUint>,
) -> Result<Vec<BoundResult>> {
    let mut out = Vec::new();
    let ctx = CountingContext::new(q, m, n)?;
    let total = qpow(q, m * (n - d + 1));

    if r < d {
        out.push(BoundResult::new(
            gaussian(n, r, q),
            BoundKind::Upper,
            BoundSource::ElsCap,
        ));
    }
    if r >= d {
        out.push(BoundResult::new(
            &total - 1u32,
            BoundKind::Upper,
            BoundSource::SingletonCap,
        ));
    }

    // Singleton cap minus the census of MRD codewords at ranks |i - r| >= d.
    {
        let mut census = BigUint::zero();
        for i in 0..=n {
            if i.abs_diff(r) >= d {
                census += mrd_census(i, d, &ctx)?;
            }
        }
        let value = (&total - census).clone();
        out.push(BoundResult::new(
            value,
            BoundKind::Upper,
            BoundSource::RankCensus,
        ));
    }

    // Progression form: subtract optimal-code lower bounds along each residue
    // class modulo d, report the minimum over offsets.
    {
        let mut best: Option<BigUint> = None;
        let mut chain = Vec::new();
        for a in 0..d {
            let mut sub = BigUint::zero();
            for j in (a..=n).step_by(d as usize) {
                if j.abs_diff(r) >= d {
                    sub += ar_lower_best(q, m, n, d, j)?;
                }
            }
            let value = (&total - sub).clone();
            chain.push(format!("offset {a}: {value}"));
            best = Some(match best {
                None => value,
                Some(b) => b.min(value),
            });
        }
        out.push(
            BoundResult::new(
                best.expect("d >= 1"),
                BoundKind::Upper,
                BoundSource::RankProgression,
            )
            .with_chain(chain),
        );
    }

    if r < n {
        let sub = ar_upper_best(q, m, n - 1, d, r, memo)?;
        let num = &sub * (qpow(q, n) - 1u32);
        let den = qpow(q, n - r) - 1u32;
        let value = num.div_floor(&den);
        out.push(
            BoundResult::new(value, BoundKind::Upper, BoundSource::JohnsonLength).with_chain(
                vec![format!(
                    "A_R(q^{m},{},{d},{r}) <= {sub}, times (q^{n}-1)/(q^{}-1)",
                    n - 1,
                    n - r
                )],
            ),
        );
    }

    if n == m && r == m && d < m {
        let sub = ar_upper_best(q, m - 1, m - 1, d, m - 1, memo)?;
        let factor = qpow(q, m - 1) * (qpow(q, m) - 1u32);
        out.push(
            BoundResult::new(&sub * factor, BoundKind::Upper, BoundSource::JohnsonSquare)
                .with_chain(vec![format!(
                    "A_R(q^{},{},{d},{}) <= {sub}, times q^{}(q^{m}-1)",
                    m - 1,
                    m - 1,
                    m - 1,
                    m - 1
                )]),
        );
    }

    Ok(out)
}

/// Lower bounds on A_R, normalized to n ≤ m first.
pub fn ar_lower_bounds(q: u64, m: u32, n: u32, d: u32, r: u32) -> Result<Vec<BoundResult>> {
    validate(q, m, n, d, r)?;
    let (m, n) = if n > m { (n, m) } else { (m, n) };
    if r == 0 {
        return Ok(vec![BoundResult::new(
            BigUint::one(),
            BoundKind::Lower,
            BoundSource::Trivial,
        )]);
    }
    ar_lower_list(q, m, n, d, r)
}

/// Upper bounds on A_R, normalized to n ≤ m first. Closed forms are returned
/// as `Exact` entries.
pub fn ar_upper_bounds(q: u64, m: u32, n: u32, d: u32, r: u32) -> Result<Vec<BoundResult>> {
    validate(q, m, n, d, r)?;
    let (m, n) = if n > m { (n, m) } else { (m, n) };
    let mut out = Vec::new();
    if let Some((v, s)) = ar_exact(q, m, n, d, r) {
        out.push(BoundResult::new(v, BoundKind::Exact, s));
    }
    if r >= 1 && d >= 2 && d <= 2 * r && d <= n {
        let mut memo = HashMap::new();
        out.extend(ar_upper_list(q, m, n, d, r, &mut memo)?);
    }
    Ok(out)
}

/// Combined best-known interval: the max of all lower bounds and the min of
/// all upper bounds, with closed forms collapsing the interval. A crossed
/// interval is an implementation bug and panics.
pub fn ar_interval(q: u64, m: u32, n: u32, d: u32, r: u32) -> Result<ArInterval> {
    validate(q, m, n, d, r)?;
    let (m_used, n_used) = if n > m { (n, m) } else { (m, n) };
    let exact = ar_exact(q, m_used, n_used, d, r);

    let mut bounds = Vec::new();
    if let Some((v, s)) = &exact {
        bounds.push(BoundResult::new(v.clone(), BoundKind::Exact, *s));
    }
    if r >= 1 {
        bounds.extend(ar_lower_list(q, m_used, n_used, d, r)?);
        if d >= 2 && d <= 2 * r && d <= n_used {
            let mut memo = HashMap::new();
            bounds.extend(ar_upper_list(q, m_used, n_used, d, r, &mut memo)?);
        }
    } else {
        bounds.push(BoundResult::new(
            BigUint::one(),
            BoundKind::Lower,
            BoundSource::Trivial,
        ));
    }

    let mut lower = BigUint::zero();
    let mut upper: Option<BigUint> = None;
    for b in &bounds {
        match b.kind {
            BoundKind::Lower | BoundKind::Exact => {
                if b.value > lower {
                    lower = b.value.clone();
                }
            }
            BoundKind::Upper => {}
        }
        match b.kind {
            BoundKind::Upper | BoundKind::Exact => {
                upper = Some(match upper.take() {
                    None => b.value.clone(),
                    Some(u) => u.min(b.value.clone()),
                });
            }
            BoundKind::Lower => {}
        }
    }
    let upper = upper.unwrap_or_else(|| lower.clone());

    assert!(
        lower <= upper,
        "bound interval crossed at q={q} m={m} n={n} d={d} r={r}: lower {lower} > upper {upper}; implementation bug"
    );
    if let Some((v, _)) = &exact {
        assert!(
            lower <= *v && *v <= upper,
            "exact value {v} escapes [{lower}, {upper}] at q={q} m={m} n={n} d={d} r={r}: implementation bug"
        );
    }

    Ok(ArInterval {
        q,
        m,
        n,
        d,
        r,
        m_used,
        n_used,
        lower,
        upper,
        exact: exact.map(|(_, s)| s),
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn as_exact_cases() {
        // d > r -> exactly one subspace
        let iv = as_bounds(2, 4, 3, 2).unwrap();
        assert!(iv.exact);
        assert_eq!(iv.upper, big(1));
        // d = 1 -> the whole Grassmannian
        let iv = as_bounds(2, 4, 1, 2).unwrap();
        assert!(iv.exact);
        assert_eq!(iv.lower, big(35));
    }

    #[test]
    fn as_spread_interval() {
        // q=2, n=4, d=2, r=2 -> [4, 5]
        let iv = as_bounds(2, 4, 2, 2).unwrap();
        assert_eq!(iv.lower, big(4));
        assert_eq!(iv.upper, big(5));
        assert!(!iv.exact);
    }

    #[test]
    fn as_normalizes_r() {
        let a = as_bounds(2, 5, 2, 2).unwrap();
        let b = as_bounds(2, 5, 2, 3).unwrap();
        assert_eq!(a.lower, b.lower);
        assert_eq!(a.upper, b.upper);
        assert_eq!(b.r_used, 2);
    }

    #[test]
    fn ar_exact_cases() {
        // d = 1: all rank-r vectors
        let iv = ar_interval(2, 3, 3, 1, 2).unwrap();
        assert_eq!(iv.exact, Some(BoundSource::ExactAllVectors));
        assert_eq!(iv.lower, big(294));
        // d > 2r: singleton
        let iv = ar_interval(2, 3, 3, 3, 1).unwrap();
        assert_eq!(iv.exact, Some(BoundSource::ExactDiameter));
        assert_eq!(iv.upper, big(1));
        // d = r: MRD slice optimal, e.g. (q=2, m=n=2, d=r=2) -> 3
        let iv = ar_interval(2, 2, 2, 2, 2).unwrap();
        assert_eq!(iv.exact, Some(BoundSource::ExactMrdSlice));
        assert_eq!(iv.lower, big(3));
        // d = 2, r = 1: one word per line, e.g. (q=2, m=n=4) -> 15
        let iv = ar_interval(2, 4, 4, 2, 1).unwrap();
        assert_eq!(iv.exact, Some(BoundSource::ExactLines));
        assert_eq!(iv.lower, big(15));
        // r = 0
        let iv = ar_interval(2, 3, 3, 2, 0).unwrap();
        assert_eq!(iv.exact, Some(BoundSource::ExactZeroRank));
    }

    #[test]
    fn transposition_normalization() {
        // A_R(q^m, n, d, r) = A_R(q^n, m, d, r)
        let a = ar_interval(2, 2, 3, 2, 2).unwrap();
        let b = ar_interval(2, 3, 2, 2, 2).unwrap();
        assert_eq!(a.lower, b.lower);
        assert_eq!(a.upper, b.upper);
        assert_eq!((a.m_used, a.n_used), (3, 2));
        // Prop-5 shape: d = r = 2 on the normalized side gives [2 2](q^3 − 1) = 7
        assert_eq!(a.exact, Some(BoundSource::ExactMrdSlice));
        assert_eq!(a.lower, big(7));
    }

    #[test]
    fn bassalygo_example() {
        // q=2, m=3, n=3, d=2, r=2: ceil(294 / 8) = 37
        let lowers = ar_lower_bounds(2, 3, 3, 2, 2).unwrap();
        let be = lowers
            .iter()
            .find(|b| b.source == BoundSource::BassalygoElias)
            .unwrap();
        assert_eq!(be.value, big(37));
        // the MRD slice is stronger here: M_{2,2} = 49
        let slice = lowers
            .iter()
            .find(|b| b.source == BoundSource::MrdSlice)
            .unwrap();
        assert_eq!(slice.value, big(49));
    }

    #[test]
    fn upper_example_63() {
        // q=2, m=3, n=3, d=2, r=2: the singleton-derived cap gives 63, and
        // the Johnson length chain sharpens the interval to [49, 49]
        let iv = ar_interval(2, 3, 3, 2, 2).unwrap();
        assert_eq!(iv.lower, big(49));
        assert!(iv.upper <= big(63));
        assert_eq!(iv.upper, big(49));
        assert!(iv
            .bounds
            .iter()
            .any(|b| b.source == BoundSource::SingletonCap && b.value == big(63)));
    }

    #[test]
    fn els_cap_example() {
        // q=2, m=n=3, d=3, r=2: r < d, cap [3 2]_2 = 7
        let uppers = ar_upper_bounds(2, 3, 3, 3, 2).unwrap();
        let cap = uppers
            .iter()
            .find(|b| b.source == BoundSource::ElsCap)
            .unwrap();
        assert_eq!(cap.value, big(7));
    }

    #[test]
    fn johnson_chain_reproduces_mrd_slice_exactness() {
        // applying the length recursion n−r times and then the singleton cap
        // reproduces [n r](q^m − 1) at d = r: q=2, n=3, r=2, m=3
        let mut memo = HashMap::new();
        let chained = ar_upper_list(2, 3, 3, 2, 2, &mut memo)
            .unwrap()
            .into_iter()
            .find(|b| b.source == BoundSource::JohnsonLength)
            .unwrap();
        let prop5 = gaussian(3, 2, 2) * (qpow(2, 3) - 1u32);
        assert_eq!(chained.value, prop5);
        assert_eq!(chained.value, big(49));
    }

    #[test]
    fn johnson_square_base_case() {
        // A_R(q^m, m, d, m) <= A_R(q^{m-1}, m-1, d, m-1) · q^{m-1}(q^m − 1),
        // descending to the d = m base where the value is q^m − 1 exactly.
        // At (q=2, m=3, d=2): base A_R(4,2,2,2) = 3, factor 4·7 = 28 -> 84.
        let uppers = ar_upper_bounds(2, 3, 3, 2, 3).unwrap();
        let sq = uppers
            .iter()
            .find(|b| b.source == BoundSource::JohnsonSquare)
            .unwrap();
        assert_eq!(sq.value, big(84));
    }

    #[test]
    fn sandwich_on_grid() {
        // every lower bound <= every upper bound on the full desk-scale grid
        for q in [2u64, 3] {
            for m in 1..=4u32 {
                for n in 1..=4u32 {
                    for r in 0..=m.min(n) {
                        for d in 1..=(2 * r + 1).max(1) {
                            let iv = ar_interval(q, m, n, d, r)
                                .unwrap_or_else(|e| panic!("q={q} m={m} n={n} d={d} r={r}: {e}"));
                            let max_lower = iv
                                .bounds
                                .iter()
                                .filter(|b| b.kind != BoundKind::Upper)
                                .map(|b| &b.value)
                                .max()
                                .unwrap();
                            let min_upper = iv
                                .bounds
                                .iter()
                                .filter(|b| b.kind != BoundKind::Lower)
                                .map(|b| &b.value)
                                .min();
                            if let Some(u) = min_upper {
                                assert!(max_lower <= u, "q={q} m={m} n={n} d={d} r={r}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn monotonicity_on_grid() {
        // interval endpoints: non-decreasing in m and n, non-increasing in d
        for q in [2u64, 3] {
            for m in 1..=4u32 {
                for n in 1..=m {
                    for r in 0..=n {
                        for d in 1..=2 * r.max(1) {
                            let iv = ar_interval(q, m, n, d, r).unwrap();
                            if m < 4 {
                                let up = ar_interval(q, m + 1, n, d, r).unwrap();
                                assert!(up.lower >= iv.lower, "lower in m at q={q} m={m} n={n} d={d} r={r}");
                                assert!(up.upper >= iv.upper, "upper in m at q={q} m={m} n={n} d={d} r={r}");
                            }
                            if n < m {
                                let up = ar_interval(q, m, n + 1, d, r).unwrap();
                                assert!(up.lower >= iv.lower, "lower in n at q={q} m={m} n={n} d={d} r={r}");
                                assert!(up.upper >= iv.upper, "upper in n at q={q} m={m} n={n} d={d} r={r}");
                            }
                            if d > 1 {
                                let down = ar_interval(q, m, n, d - 1, r).unwrap();
                                assert!(down.lower >= iv.lower, "lower in d at q={q} m={m} n={n} d={d} r={r}");
                                assert!(down.upper >= iv.upper, "upper in d at q={q} m={m} n={n} d={d} r={r}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exact_values_inside_all_other_bounds() {
        for q in [2u64, 3] {
            for m in 1..=4u32 {
                for n in 1..=4u32 {
                    for r in 0..=m.min(n) {
                        for d in 1..=2 * r.max(1) + 1 {
                            let iv = ar_interval(q, m, n, d, r).unwrap();
                            if let Some(_src) = iv.exact {
                                let exact_val = iv
                                    .bounds
                                    .iter()
                                    .find(|b| b.kind == BoundKind::Exact)
                                    .map(|b| b.value.clone())
                                    .unwrap();
                                for b in &iv.bounds {
                                    match b.kind {
                                        BoundKind::Lower => assert!(
                                            b.value <= exact_val,
                                            "{} at q={q} m={m} n={n} d={d} r={r}",
                                            b.source
                                        ),
                                        BoundKind::Upper => assert!(
                                            b.value >= exact_val,
                                            "{} at q={q} m={m} n={n} d={d} r={r}",
                                            b.source
                                        ),
                                        BoundKind::Exact => {}
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ar_interval(6, 2, 2, 1, 1).is_err());
        assert!(ar_interval(2, 0, 2, 1, 1).is_err());
        assert!(ar_interval(2, 2, 2, 0, 1).is_err());
        assert!(ar_interval(2, 2, 2, 1, 3).is_err());
        assert!(as_bounds(2, 3, 2, 4).is_err());
    }
}
