//! Vectors over GF(q^m) with rank-weight semantics.
//!
//! The rank weight of a vector is the rank of its m×n coordinate-expansion
//! matrix over GF(q); it does not depend on the expansion basis. Enumeration
//! of GF(q^m)^n walks coordinate indices in base-q^m counting order with the
//! first coordinate most significant, so fixtures and searches reproduce.

use std::sync::Arc;

use num_bigint::BigUint;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, FqmElem};
use crate::linalg::{MatrixQ, Subspace};

/// A length-n vector over GF(q^m).
#[derive(Clone)]
pub struct RankVector {
    spec: Arc<FieldSpec>,
    coords: Vec<FqmElem>,
}

impl PartialEq for RankVector {
    fn eq(&self, other: &Self) -> bool {
        self.spec.id() == other.spec.id() && self.coords == other.coords
    }
}

impl Eq for RankVector {}

impl std::hash::Hash for RankVector {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.spec.id().hash(state);
        self.coords.hash(state);
    }
}

impl PartialOrd for RankVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RankVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.spec.id(), &self.coords).cmp(&(other.spec.id(), &other.coords))
    }
}

impl std::fmt::Debug for RankVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RankVector{:?}", self.coords)
    }
}

impl RankVector {
    pub fn new(spec: Arc<FieldSpec>, coords: Vec<FqmElem>) -> Self {
        // re-tagging through elem() asserts every coordinate belongs to spec
        let coords = coords
            .into_iter()
            .map(|c| {
                spec.elem(c.index()).expect("coordinate out of range");
                c
            })
            .collect();
        RankVector { spec, coords }
    }

    pub fn from_indices(spec: &Arc<FieldSpec>, indices: &[u64]) -> Result<Self> {
        let coords = indices
            .iter()
            .map(|&i| spec.elem(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(RankVector {
            spec: spec.clone(),
            coords,
        })
    }

    pub fn zero(spec: &Arc<FieldSpec>, n: usize) -> Self {
        RankVector {
            spec: spec.clone(),
            coords: vec![spec.zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coords(&self) -> &[FqmElem] {
        &self.coords
    }

    pub fn indices(&self) -> Vec<u64> {
        self.coords.iter().map(|c| c.index()).collect()
    }

    fn check_compatible(&self, other: &RankVector) -> Result<()> {
        if self.spec.id() != other.spec.id() {
            return Err(Error::MixedFields);
        }
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "vector lengths differ: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &RankVector) -> Result<RankVector> {
        self.check_compatible(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.spec.add(a, b))
            .collect();
        Ok(RankVector {
            spec: self.spec.clone(),
            coords,
        })
    }

    pub fn sub(&self, other: &RankVector) -> Result<RankVector> {
        self.check_compatible(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.spec.sub(a, b))
            .collect();
        Ok(RankVector {
            spec: self.spec.clone(),
            coords,
        })
    }

    /// The m×n matrix over GF(q) whose column j is the expansion of
    /// coordinate j with respect to the basis B_m.
    pub fn expansion_matrix(&self) -> MatrixQ {
        let m = self.spec.m() as usize;
        let n = self.len();
        let mut out = MatrixQ::zeros(self.spec.gfq().clone(), m, n);
        for (j, &c) in self.coords.iter().enumerate() {
            for (i, e) in self.spec.expand(c).into_iter().enumerate() {
                out.set(i, j, e);
            }
        }
        out
    }

    /// Maximum number of coordinates linearly independent over GF(q); equals
    /// the rank of the expansion matrix and is independent of the basis.
    pub fn rank_weight(&self) -> usize {
        self.expansion_matrix().rank()
    }

    /// Rank distance d_R(x, y) = rk(x − y).
    pub fn distance(&self, other: &RankVector) -> Result<usize> {
        Ok(self.sub(other)?.rank_weight())
    }

    /// Row span of the expansion matrix: an r-dimensional subspace of
    /// GF(q)^n identifying the unique minimal elementary linear subspace
    /// containing the vector.
    pub fn row_space(&self) -> Subspace {
        self.expansion_matrix().row_space()
    }

    /// Column span of the expansion matrix: the subspace of GF(q)^m spanned
    /// by the coordinates.
    pub fn col_space(&self) -> Subspace {
        self.expansion_matrix().col_space()
    }

    /// Position of this vector in enumeration order.
    pub fn enumeration_index(&self) -> u128 {
        let qm = self.spec.qm() as u128;
        self.coords
            .iter()
            .fold(0u128, |acc, c| acc * qm + c.index() as u128)
    }
}

/// Total number of vectors in GF(q^m)^n, as a u128 guard value.
fn space_size(spec: &FieldSpec, n: usize) -> u128 {
    (spec.qm() as u128).saturating_pow(n as u32)
}

/// Enumerates all of GF(q^m)^n in base-q^m counting order (first coordinate
/// most significant).
pub fn enumerate_vectors(
    spec: &Arc<FieldSpec>,
    n: usize,
    cap: u64,
) -> Result<impl Iterator<Item = RankVector> + '_> {
    let count = space_size(spec, n);
    if count > cap as u128 {
        return Err(Error::EnumerationCap { count, cap });
    }
    let spec = spec.clone();
    Ok((0..count as u64).map(move |t| vector_at(&spec, n, t)))
}

fn vector_at(spec: &Arc<FieldSpec>, n: usize, t: u64) -> RankVector {
    let qm = spec.qm();
    let mut coords = vec![spec.zero(); n];
    let mut rest = t;
    for j in (0..n).rev() {
        coords[j] = spec.elem(rest % qm).expect("digit in range");
        rest /= qm;
    }
    RankVector {
        spec: spec.clone(),
        coords,
    }
}

/// Enumerates the vectors of rank weight exactly `r`, in enumeration order.
/// The stream has exactly N_r(q^m, n) items.
pub fn enumerate_vectors_of_rank(
    r: usize,
    spec: &Arc<FieldSpec>,
    n: usize,
    cap: u64,
) -> Result<impl Iterator<Item = RankVector> + '_> {
    Ok(enumerate_vectors(spec, n, cap)?.filter(move |v| v.rank_weight() == r))
}

/// Histogram of rank weights over all of GF(q^m)^n, indexed by rank.
pub fn rank_histogram(spec: &Arc<FieldSpec>, n: usize, cap: u64) -> Result<Vec<BigUint>> {
    #[cfg(feature = "parallel")]
    {
        let count = space_size(spec, n);
        if count > cap as u128 {
            return Err(Error::EnumerationCap { count, cap });
        }
        let bins = spec.m().min(n as u32) as usize + 1;
        let hist = (0..count as u64)
            .into_par_iter()
            .fold(
                || vec![0u64; bins],
                |mut acc, t| {
                    acc[vector_at(spec, n, t).rank_weight()] += 1;
                    acc
                },
            )
            .reduce(
                || vec![0u64; bins],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
        Ok(hist.into_iter().map(BigUint::from).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        rank_histogram_seq(spec, n, cap)
    }
}

/// Sequential reference path for [`rank_histogram`].
pub fn rank_histogram_seq(spec: &Arc<FieldSpec>, n: usize, cap: u64) -> Result<Vec<BigUint>> {
    let bins = spec.m().min(n as u32) as usize + 1;
    let mut hist = vec![0u64; bins];
    for v in enumerate_vectors(spec, n, cap)? {
        hist[v.rank_weight()] += 1;
    }
    Ok(hist.into_iter().map(BigUint::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{count_rank, CountingContext};
    use crate::field::make_field;

    #[test]
    fn expansion_matrix_examples() {
        let f = make_field(2, 1, 2).unwrap(); // GF(4)
        let zero = RankVector::zero(&f, 2);
        assert!(zero.expansion_matrix().entries().iter().all(|&e| e == 0));

        // x = (ω, ω²) -> columns (0,1)ᵀ, (1,1)ᵀ
        let x = RankVector::from_indices(&f, &[2, 3]).unwrap();
        let m = x.expansion_matrix();
        assert_eq!(m.get(0, 0), 0);
        assert_eq!(m.get(1, 0), 1);
        assert_eq!(m.get(0, 1), 1);
        assert_eq!(m.get(1, 1), 1);

        // basis vector coordinates give unit columns
        let b = RankVector::from_indices(&f, &[1, 2]).unwrap();
        let mb = b.expansion_matrix();
        assert_eq!(mb.get(0, 0), 1);
        assert_eq!(mb.get(1, 0), 0);
        assert_eq!(mb.get(0, 1), 0);
        assert_eq!(mb.get(1, 1), 1);
    }

    #[test]
    fn rank_weight_examples() {
        let f = make_field(2, 1, 2).unwrap();
        assert_eq!(RankVector::zero(&f, 2).rank_weight(), 0);
        // (1, ω) has two GF(2)-independent coordinates
        let x = RankVector::from_indices(&f, &[1, 2]).unwrap();
        assert_eq!(x.rank_weight(), 2);
        // (1, 1, 0) lies in GF(2)·1
        let y = RankVector::from_indices(&f, &[1, 1, 0]).unwrap();
        assert_eq!(y.rank_weight(), 1);
    }

    #[test]
    fn rank_distance_examples() {
        let f = make_field(2, 1, 2).unwrap();
        let x = RankVector::from_indices(&f, &[1, 2]).unwrap();
        let y = RankVector::from_indices(&f, &[1, 1]).unwrap();
        assert_eq!(x.distance(&x).unwrap(), 0);
        let zero = RankVector::zero(&f, 2);
        assert_eq!(x.distance(&zero).unwrap(), x.rank_weight());
        // d_R((1,ω),(1,1)) = rk((0, ω+1)) = 1
        assert_eq!(x.distance(&y).unwrap(), 1);
    }

    #[test]
    fn distance_rejects_mismatch() {
        let f = make_field(2, 1, 2).unwrap();
        let g = make_field(2, 1, 2).unwrap();
        let x = RankVector::from_indices(&f, &[1, 2]).unwrap();
        let y = RankVector::from_indices(&g, &[1, 2]).unwrap();
        assert!(matches!(x.distance(&y), Err(Error::MixedFields)));
        let short = RankVector::from_indices(&f, &[1]).unwrap();
        assert!(x.distance(&short).is_err());
    }

    #[test]
    fn metric_axioms_on_random_triples() {
        let f = make_field(2, 1, 3).unwrap();
        let n = 3;
        let vecs: Vec<RankVector> = (0..30)
            .map(|s| {
                let idx: Vec<u64> = (0..n).map(|j| ((s * 37 + j * 11 + 5) % 8) as u64).collect();
                RankVector::from_indices(&f, &idx).unwrap()
            })
            .collect();
        for a in &vecs {
            for b in &vecs {
                let dab = a.distance(b).unwrap();
                assert_eq!(dab, b.distance(a).unwrap());
                assert_eq!(dab == 0, a.indices() == b.indices());
                for c in &vecs {
                    let dac = a.distance(c).unwrap();
                    let dcb = c.distance(b).unwrap();
                    assert!(dab <= dac + dcb, "triangle inequality");
                }
            }
        }
    }

    #[test]
    fn row_space_examples() {
        let f = make_field(2, 1, 2).unwrap();
        assert_eq!(RankVector::zero(&f, 3).row_space().dim(), 0);
        // all coordinates in one GF(2)-line -> 1-dimensional row span
        let y = RankVector::from_indices(&f, &[2, 2, 0]).unwrap();
        assert_eq!(y.row_space().dim(), 1);
        // (1, ω, 0) in GF(4)^3 spans the first coordinate plane
        let x = RankVector::from_indices(&f, &[1, 2, 0]).unwrap();
        let els = x.row_space();
        assert_eq!(els.dim(), 2);
        assert_eq!(els.basis().entries(), &[1, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn row_space_dim_is_rank_weight() {
        let f = make_field(2, 1, 2).unwrap();
        for v in enumerate_vectors(&f, 2, 1 << 10).unwrap() {
            assert_eq!(v.row_space().dim(), v.rank_weight());
            assert_eq!(v.col_space().dim(), v.rank_weight());
        }
    }

    #[test]
    fn enumeration_counts_match_formulas() {
        // the enumeration is itself the oracle; cross-check both directions
        for (p, m, n) in [(2u64, 2u32, 2usize), (2, 3, 2), (2, 2, 3), (3, 2, 2)] {
            let f = make_field(p, 1, m).unwrap();
            let ctx = CountingContext::new(f.q(), m, n as u32).unwrap();
            for r in 0..=ctx.max_rank() {
                let counted = enumerate_vectors_of_rank(r as usize, &f, n, 1 << 20)
                    .unwrap()
                    .count();
                assert_eq!(BigUint::from(counted), count_rank(r, &ctx).unwrap());
            }
        }
    }

    #[test]
    fn rank_zero_enumeration_is_zero_vector() {
        let f = make_field(2, 1, 2).unwrap();
        let zs: Vec<_> = enumerate_vectors_of_rank(0, &f, 2, 1 << 10)
            .unwrap()
            .collect();
        assert_eq!(zs.len(), 1);
        assert!(zs[0].is_zero());
    }

    #[test]
    fn full_rank_count_gf9() {
        // q=3, m=n=2, r=2: alpha(2,2)·[2 2] = 48 of the 81 vectors
        let f = make_field(3, 1, 2).unwrap();
        let c = enumerate_vectors_of_rank(2, &f, 2, 1 << 10).unwrap().count();
        assert_eq!(c, 48);
    }

    #[test]
    fn histogram_matches_seq_and_formulas() {
        let f = make_field(2, 1, 3).unwrap();
        let h = rank_histogram(&f, 3, 1 << 20).unwrap();
        let hs = rank_histogram_seq(&f, 3, 1 << 20).unwrap();
        assert_eq!(h, hs);
        let ctx = CountingContext::new(2, 3, 3).unwrap();
        for (r, c) in h.iter().enumerate() {
            assert_eq!(*c, count_rank(r as u32, &ctx).unwrap());
        }
    }

    #[test]
    fn enumeration_order_is_big_endian() {
        let f = make_field(2, 1, 2).unwrap();
        let all: Vec<_> = enumerate_vectors(&f, 2, 1 << 10).unwrap().collect();
        assert_eq!(all[0].indices(), vec![0, 0]);
        assert_eq!(all[1].indices(), vec![0, 1]);
        assert_eq!(all[4].indices(), vec![1, 0]);
        for (t, v) in all.iter().enumerate() {
            assert_eq!(v.enumeration_index(), t as u128);
        }
    }

    #[test]
    fn basis_independence_of_rank_weight() {
        use crate::field::{FieldSpec, Gfq, DEFAULT_FIELD_CAP};
        let poly = make_field(2, 1, 3).unwrap();
        let gfq = Gfq::new(2, 1, DEFAULT_FIELD_CAP).unwrap();
        let alt = FieldSpec::over(gfq, 3, None, Some(vec![1, 3, 5])).unwrap();
        for t in 0..64u64 {
            let idx = [t % 8, (t / 8) % 8, 3];
            let a = RankVector::from_indices(&poly, &idx).unwrap();
            let b = RankVector::from_indices(&alt, &idx).unwrap();
            assert_eq!(a.rank_weight(), b.rank_weight());
        }
    }
}
