//! Code containers and the Gabidulin (linear MRD) construction.
//!
//! Minimum distances are computed by exhaustive pairwise scans (desk scale);
//! the scan is partitioned across rayon workers under the `parallel` feature
//! and the result is the deterministic minimum either way. A singleton code
//! reports the distinguished [`Distance::Unbounded`] rather than an integer.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::sync::OnceLock;

use num_bigint::BigUint;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::counting::{mrd_rank_distribution, CountingContext};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, FqmElem};
use crate::linalg::Subspace;
use crate::vector::RankVector;

/// Minimum distance of a codebook; a singleton has no pair to measure.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Unbounded,
}

impl Distance {
    pub fn at_least(&self, d: usize) -> bool {
        match self {
            Distance::Finite(v) => *v >= d,
            Distance::Unbounded => true,
        }
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            Distance::Finite(v) => Some(*v),
            Distance::Unbounded => None,
        }
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(v) => write!(f, "{v}"),
            Distance::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Minimum pairwise rank distance of a word list. `Unbounded` for fewer than
/// two words.
pub fn pairwise_min_distance(words: &[RankVector]) -> Distance {
    #[cfg(feature = "parallel")]
    {
        if words.len() < 2 {
            return Distance::Unbounded;
        }
        let min = (0..words.len() - 1)
            .into_par_iter()
            .map(|i| {
                (i + 1..words.len())
                    .map(|j| words[i].distance(&words[j]).expect("same code"))
                    .min()
                    .unwrap()
            })
            .min()
            .unwrap();
        Distance::Finite(min)
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairwise_min_distance_seq(words)
    }
}

/// Sequential reference path for [`pairwise_min_distance`].
pub fn pairwise_min_distance_seq(words: &[RankVector]) -> Distance {
    if words.len() < 2 {
        return Distance::Unbounded;
    }
    let mut min = usize::MAX;
    for i in 0..words.len() - 1 {
        for j in i + 1..words.len() {
            min = min.min(words[i].distance(&words[j]).expect("same code"));
        }
    }
    Distance::Finite(min)
}

/// Structured outcome of re-verifying a codebook.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub passed: bool,
    pub cardinality: usize,
    /// The common rank (or dimension) if the constant-parameter check holds.
    pub constant_param: Option<usize>,
    pub distinct: bool,
    pub min_distance: Distance,
    /// Description of the first violating word or pair, if any.
    pub first_violation: Option<String>,
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} words, constant parameter {}, min distance {}",
            if self.passed { "pass" } else { "FAIL" },
            self.cardinality,
            match self.constant_param {
                Some(r) => r.to_string(),
                None => "violated".into(),
            },
            self.min_distance,
        )?;
        if let Some(v) = &self.first_violation {
            write!(f, " ({v})")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Constant-rank codes
// ---------------------------------------------------------------------------

/// A nonempty set of distinct vectors in GF(q^m)^n, all of rank weight r.
#[derive(Clone)]
pub struct ConstantRankCode {
    spec: Arc<FieldSpec>,
    n: usize,
    r: usize,
    words: Vec<RankVector>,
    d_min: OnceLock<Distance>,
}

impl ConstantRankCode {
    /// Validates the defining invariants: nonempty, all words distinct, all
    /// of the same length and rank weight.
    pub fn new(spec: Arc<FieldSpec>, words: Vec<RankVector>) -> Result<Self> {
        let first = words
            .first()
            .ok_or_else(|| Error::InvalidCode("a code must be nonempty".into()))?;
        let n = first.len();
        let r = first.rank_weight();
        let mut seen = BTreeSet::new();
        for w in &words {
            if w.spec().id() != spec.id() {
                return Err(Error::MixedFields);
            }
            if w.len() != n {
                return Err(Error::InvalidCode(format!(
                    "word lengths differ: {} vs {n}",
                    w.len()
                )));
            }
            let rw = w.rank_weight();
            if rw != r {
                return Err(Error::InvalidCode(format!(
                    "rank weights differ: word {:?} has rank {rw}, expected {r}",
                    w.indices()
                )));
            }
            if !seen.insert(w.indices()) {
                return Err(Error::InvalidCode(format!(
                    "duplicate word {:?}",
                    w.indices()
                )));
            }
        }
        Ok(ConstantRankCode {
            spec,
            n,
            r,
            words,
            d_min: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }
    pub fn len(&self) -> usize {
        self.words.len()
    }
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
    pub fn word_length(&self) -> usize {
        self.n
    }
    pub fn rank(&self) -> usize {
        self.r
    }
    pub fn words(&self) -> &[RankVector] {
        &self.words
    }

    /// Exact minimum rank distance (cached after the first scan).
    pub fn min_distance(&self) -> Distance {
        *self
            .d_min
            .get_or_init(|| pairwise_min_distance(&self.words))
    }

    /// Recomputes every invariant from scratch and caches the distance.
    pub fn verify(&self) -> VerifyReport {
        let mut violation = None;
        let mut constant = true;
        for w in &self.words {
            let rw = w.rank_weight();
            if rw != self.r {
                constant = false;
                violation = Some(format!("word {:?} has rank {rw} != {}", w.indices(), self.r));
                break;
            }
        }
        let mut seen = BTreeSet::new();
        let mut distinct = true;
        for w in &self.words {
            if !seen.insert(w.indices()) {
                distinct = false;
                if violation.is_none() {
                    violation = Some(format!("duplicate word {:?}", w.indices()));
                }
                break;
            }
        }
        let min_distance = self.min_distance();
        VerifyReport {
            passed: constant && distinct && !self.words.is_empty(),
            cardinality: self.words.len(),
            constant_param: constant.then_some(self.r),
            distinct,
            min_distance,
            first_violation: violation,
        }
    }

    /// Sorted multiset of all pairwise distances (used by isometry checks).
    pub fn distance_multiset(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..self.words.len() {
            for j in i + 1..self.words.len() {
                out.push(self.words[i].distance(&self.words[j]).expect("same code"));
            }
        }
        out.sort_unstable();
        out
    }
}

// ---------------------------------------------------------------------------
// Constant-dimension codes
// ---------------------------------------------------------------------------

/// A nonempty set of distinct r-dimensional subspaces of GF(q)^n.
#[derive(Clone)]
pub struct ConstantDimensionCode {
    field: Arc<crate::field::Gfq>,
    ambient: usize,
    r: usize,
    subspaces: Vec<Subspace>,
    ds_min: OnceLock<Distance>,
}

impl ConstantDimensionCode {
    pub fn new(subspaces: Vec<Subspace>) -> Result<Self> {
        let first = subspaces
            .first()
            .ok_or_else(|| Error::InvalidCode("a code must be nonempty".into()))?;
        let field = first.field().clone();
        let ambient = first.ambient_dim();
        let r = first.dim();
        let mut seen = BTreeSet::new();
        for s in &subspaces {
            if !s.field().same_field(&field) {
                return Err(Error::MixedFields);
            }
            if s.ambient_dim() != ambient {
                return Err(Error::InvalidCode("ambient dimensions differ".into()));
            }
            if s.dim() != r {
                return Err(Error::InvalidCode(format!(
                    "dimensions differ: {} vs {r}",
                    s.dim()
                )));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::InvalidCode("duplicate subspace".into()));
            }
        }
        Ok(ConstantDimensionCode {
            field,
            ambient,
            r,
            subspaces,
            ds_min: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &Arc<crate::field::Gfq> {
        &self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.r
    }
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }
    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }
    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    /// Exact minimum subspace distance, computed as 2·stack_rank − 2r.
    pub fn min_distance(&self) -> Distance {
        *self.ds_min.get_or_init(|| {
            if self.subspaces.len() < 2 {
                return Distance::Unbounded;
            }
            let scan = |i: usize| -> usize {
                (i + 1..self.subspaces.len())
                    .map(|j| {
                        self.subspaces[i]
                            .distance(&self.subspaces[j])
                            .expect("same ambient")
                    })
                    .min()
                    .unwrap()
            };
            #[cfg(feature = "parallel")]
            let min = (0..self.subspaces.len() - 1)
                .into_par_iter()
                .map(scan)
                .min()
                .unwrap();
            #[cfg(not(feature = "parallel"))]
            let min = (0..self.subspaces.len() - 1).map(scan).min().unwrap();
            Distance::Finite(min)
        })
    }

    pub fn verify(&self) -> VerifyReport {
        let constant = self.subspaces.iter().all(|s| s.dim() == self.r);
        let mut seen = BTreeSet::new();
        let distinct = self.subspaces.iter().all(|s| seen.insert(s.clone()));
        VerifyReport {
            passed: constant && distinct && !self.subspaces.is_empty(),
            cardinality: self.subspaces.len(),
            constant_param: constant.then_some(self.r),
            distinct,
            min_distance: self.min_distance(),
            first_violation: None,
        }
    }
}

// ---------------------------------------------------------------------------
// Gabidulin codes
// ---------------------------------------------------------------------------

/// The classical linear MRD construction: the generator matrix has entry
/// (i, j) = g_j^{q^i} for evaluation points g_0, …, g_{n−1} that are linearly
/// independent over GF(q). Codewords are evaluations of q-degree-bounded
/// linearized polynomials.
pub struct GabidulinCode {
    spec: Arc<FieldSpec>,
    n: usize,
    k: usize,
    eval_points: Vec<FqmElem>,
    generator: Vec<FqmElem>, // k x n, row-major
}

impl GabidulinCode {
    /// Builds the (n, n−d+1, d) code with evaluation points taken from the
    /// first n elements of the expansion basis.
    pub fn new(spec: Arc<FieldSpec>, n: usize, d: usize) -> Result<Self> {
        let points = spec.basis()[..n.min(spec.basis().len())]
            .iter()
            .map(|&b| spec.elem(b))
            .collect::<Result<Vec<_>>>()?;
        Self::with_points(spec, n, d, points)
    }

    /// Same construction with explicit evaluation points (checked for
    /// GF(q)-linear independence).
    pub fn with_points(
        spec: Arc<FieldSpec>,
        n: usize,
        d: usize,
        eval_points: Vec<FqmElem>,
    ) -> Result<Self> {
        if n == 0 || n > spec.m() as usize {
            return Err(Error::Domain(format!(
                "length must satisfy 1 <= n <= m, got n={n}, m={}",
                spec.m()
            )));
        }
        if d == 0 || d > n {
            return Err(Error::Domain(format!(
                "distance must satisfy 1 <= d <= n, got d={d}, n={n}"
            )));
        }
        if eval_points.len() != n {
            return Err(Error::Dimension(format!(
                "need {n} evaluation points, got {}",
                eval_points.len()
            )));
        }
        let point_vec = RankVector::new(spec.clone(), eval_points.clone());
        if point_vec.rank_weight() != n {
            return Err(Error::Domain(
                "evaluation points are not linearly independent over GF(q)".into(),
            ));
        }
        let k = n - d + 1;
        let mut generator = Vec::with_capacity(k * n);
        for i in 0..k {
            for g in &eval_points {
                generator.push(spec.frobenius(*g, i as u32));
            }
        }
        Ok(GabidulinCode {
            spec,
            n,
            k,
            eval_points,
            generator,
        })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }
    pub fn length(&self) -> usize {
        self.n
    }
    pub fn dimension(&self) -> usize {
        self.k
    }
    pub fn designed_distance(&self) -> usize {
        self.n - self.k + 1
    }
    pub fn eval_points(&self) -> &[FqmElem] {
        &self.eval_points
    }

    /// q^{mk}, the number of codewords.
    pub fn codeword_count(&self) -> BigUint {
        BigUint::from(self.spec.qm()).pow(self.k as u32)
    }

    pub fn generator_entry(&self, i: usize, j: usize) -> FqmElem {
        self.generator[i * self.n + j]
    }

    /// Encodes one message (length-k vector over GF(q^m)).
    pub fn encode(&self, message: &[FqmElem]) -> RankVector {
        assert_eq!(message.len(), self.k);
        let coords = (0..self.n)
            .map(|j| {
                let mut acc = self.spec.zero();
                for (i, &u) in message.iter().enumerate() {
                    acc = self.spec.add(acc, self.spec.mul(u, self.generator_entry(i, j)));
                }
                acc
            })
            .collect();
        RankVector::new(self.spec.clone(), coords)
    }

    /// All q^{mk} codewords, messages in base-q^m counting order.
    pub fn codewords(&self, cap: u64) -> Result<impl Iterator<Item = RankVector> + '_> {
        let count = (self.spec.qm() as u128).saturating_pow(self.k as u32);
        if count > cap as u128 {
            return Err(Error::EnumerationCap { count, cap });
        }
        let qm = self.spec.qm();
        Ok((0..count as u64).map(move |t| {
            let mut msg = vec![self.spec.zero(); self.k];
            let mut rest = t;
            for i in (0..self.k).rev() {
                msg[i] = self.spec.elem(rest % qm).expect("digit in range");
                rest /= qm;
            }
            self.encode(&msg)
        }))
    }

    /// The codewords of rank exactly `r`, as an (n, d, r) constant-rank code
    /// with cardinality M_{d,r}. Empty below the designed distance.
    pub fn constant_rank_slice(&self, r: usize, cap: u64) -> Result<ConstantRankCode> {
        let d = self.designed_distance();
        if r < d {
            return Err(Error::EmptySlice { r, d });
        }
        if r > self.n {
            return Err(Error::Domain(format!(
                "rank {r} exceeds the code length {}",
                self.n
            )));
        }
        let words: Vec<RankVector> = self
            .codewords(cap)?
            .filter(|w| w.rank_weight() == r)
            .collect();
        let code = ConstantRankCode::new(self.spec.clone(), words)?;
        // cardinality check against the rank distribution formula
        let ctx = CountingContext::new(self.spec.q(), self.spec.m(), self.n as u32)?;
        let expected = mrd_rank_distribution(d as u32, r as u32, &ctx)?;
        if BigUint::from(code.len()) != expected {
            return Err(Error::Postcondition(format!(
                "slice cardinality {} differs from the rank distribution {expected}",
                code.len()
            )));
        }
        Ok(code)
    }
}
