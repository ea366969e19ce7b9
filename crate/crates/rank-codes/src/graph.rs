//! Rank- and subspace-distance graphs whose independent sets are codes.
//!
//! The bilinear forms graph takes all of GF(q^m)^n as vertices; the
//! constant-rank graph is its subgraph induced by the vectors of rank r; the
//! subspace-distance graph lives on the Grassmannian of r-dimensional
//! subspaces. In each, two vertices are adjacent exactly when their distance
//! is below the threshold, so an independent set is a code with minimum
//! distance at least the threshold.
//!
//! Adjacency is stored as packed bitsets per vertex for the intersection
//! heavy branch-and-bound loops in [`crate::search`]. Rows are independent,
//! so graph construction parallelizes per vertex under the `parallel`
//! feature with bit-identical output.

use std::sync::Arc;

use num_bigint::BigUint;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::counting::{count_rank, gaussian, CountingContext};
use crate::error::{Error, Result};
use crate::field::{factor_prime_power, FieldSpec, Gfq, DEFAULT_FIELD_CAP};
use crate::linalg::{enumerate_subspaces, MatrixQ, Subspace};
use crate::vector::{enumerate_vectors, RankVector};

/// Default ceiling on graph order.
pub const DEFAULT_VERTEX_CAP: u64 = 512;

/// Fixed-universe bitset used for adjacency rows and candidate sets.
#[derive(Clone, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn new(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// True when no bit is set.
    pub fn is_clear(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn and_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Complement within the universe, with the tail bits kept clear.
    pub fn complement(&self) -> BitRow {
        let mut out = BitRow {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        let tail = self.len % 64;
        if tail != 0 {
            *out.words.last_mut().unwrap() &= (1 << tail) - 1;
        }
        out
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

impl std::fmt::Debug for BitRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitRow[{}: {:?}]", self.len, self.ones().collect::<Vec<_>>())
    }
}

/// Which distance graph, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphKind {
    /// All vectors of GF(q^m)^n; adjacency d_R < d.
    BilinearForms { q: u64, m: u32, n: u32, d: u32 },
    /// Vectors of rank exactly r; adjacency d_R < d.
    ConstantRank { q: u64, m: u32, n: u32, d: u32, r: u32 },
    /// r-dimensional subspaces of GF(q)^n; adjacency d_S < ds.
    SubspaceDistance { q: u64, n: u32, ds: u32, r: u32 },
}

impl GraphKind {
    /// Exact vertex count, used to enforce the cap before construction.
    pub fn order(&self) -> Result<BigUint> {
        match *self {
            GraphKind::BilinearForms { q, m, n, .. } => {
                let ctx = CountingContext::new(q, m, n)?;
                Ok(ctx.space_size())
            }
            GraphKind::ConstantRank { q, m, n, r, .. } => {
                let ctx = CountingContext::new(q, m, n)?;
                count_rank(r, &ctx)
            }
            GraphKind::SubspaceDistance { q, n, r, .. } => {
                if factor_prime_power(q).is_none() {
                    return Err(Error::NotPrimePower(q));
                }
                if r > n {
                    return Err(Error::Domain(format!(
                        "subspace dimension {r} exceeds ambient dimension {n}"
                    )));
                }
                Ok(gaussian(n, r, q))
            }
        }
    }
}

pub enum GraphVertices {
    Vectors {
        spec: Arc<FieldSpec>,
        list: Vec<RankVector>,
    },
    Subspaces {
        field: Arc<Gfq>,
        list: Vec<Subspace>,
    },
}

/// A distance graph with packed adjacency.
pub struct DistanceGraph {
    kind: GraphKind,
    vertices: GraphVertices,
    adj: Vec<BitRow>,
}

impl DistanceGraph {
    /// Builds the graph, erroring if the order exceeds `vertex_cap`.
    /// Vertices appear in the module enumeration orders, so indices are
    /// stable across runs.
    pub fn build(kind: GraphKind, vertex_cap: u64) -> Result<Self> {
        Self::build_inner(kind, vertex_cap, true)
    }

    /// Sequential reference path for [`DistanceGraph::build`].
    pub fn build_seq(kind: GraphKind, vertex_cap: u64) -> Result<Self> {
        Self::build_inner(kind, vertex_cap, false)
    }

    fn build_inner(kind: GraphKind, vertex_cap: u64, parallel: bool) -> Result<Self> {
        let order = kind.order()?;
        if order > BigUint::from(vertex_cap) {
            return Err(Error::VertexCap {
                count: order.try_into().unwrap_or(u128::MAX),
                cap: vertex_cap,
            });
        }
        match kind {
            GraphKind::BilinearForms { q, m, n, d } => {
                let (p, k) = factor_prime_power(q).expect("validated");
                let spec = crate::field::make_field_with_cap(
                    p,
                    k,
                    m,
                    DEFAULT_FIELD_CAP.max(q.saturating_pow(m)),
                )?;
                let list: Vec<RankVector> =
                    enumerate_vectors(&spec, n as usize, vertex_cap)?.collect();
                let adj = vector_adjacency(&list, d as usize, parallel);
                Ok(DistanceGraph {
                    kind,
                    vertices: GraphVertices::Vectors { spec, list },
                    adj,
                })
            }
            GraphKind::ConstantRank { q, m, n, d, r } => {
                let (p, k) = factor_prime_power(q).expect("validated");
                let spec = crate::field::make_field_with_cap(
                    p,
                    k,
                    m,
                    DEFAULT_FIELD_CAP.max(q.saturating_pow(m)),
                )?;
                // the ambient space may exceed the vertex cap; only the
                // induced vertex list must respect it
                let full_cap = (q as u128).saturating_pow(m * n).min(1 << 22) as u64;
                let list: Vec<RankVector> = enumerate_vectors(&spec, n as usize, full_cap)?
                    .filter(|v| v.rank_weight() == r as usize)
                    .collect();
                let adj = vector_adjacency(&list, d as usize, parallel);
                Ok(DistanceGraph {
                    kind,
                    vertices: GraphVertices::Vectors { spec, list },
                    adj,
                })
            }
            GraphKind::SubspaceDistance { q, n, ds, r } => {
                let (p, k) = factor_prime_power(q).expect("validated");
                let field = Gfq::new(p, k, DEFAULT_FIELD_CAP.max(q))?;
                let list: Vec<Subspace> =
                    enumerate_subspaces(&field, n as usize, r as usize, vertex_cap)?.collect();
                let adj = subspace_adjacency(&list, ds as usize, parallel);
                Ok(DistanceGraph {
                    kind,
                    vertices: GraphVertices::Subspaces { field, list },
                    adj,
                })
            }
        }
    }

    pub fn kind(&self) -> &GraphKind {
        &self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].get(v)
    }

    pub fn row(&self, u: usize) -> &BitRow {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitRow::count_ones).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &GraphVertices {
        &self.vertices
    }

    pub fn vector_vertices(&self) -> Option<(&Arc<FieldSpec>, &[RankVector])> {
        match &self.vertices {
            GraphVertices::Vectors { spec, list } => Some((spec, list)),
            GraphVertices::Subspaces { .. } => None,
        }
    }

    pub fn subspace_vertices(&self) -> Option<&[Subspace]> {
        match &self.vertices {
            GraphVertices::Subspaces { list, .. } => Some(list),
            GraphVertices::Vectors { .. } => None,
        }
    }
}

fn vector_adjacency(list: &[RankVector], d: usize, parallel: bool) -> Vec<BitRow> {
    let n = list.len();
    // precompute expansions once; a pair's distance is the rank of the
    // entrywise difference of expansion matrices
    let mats: Vec<MatrixQ> = list.iter().map(RankVector::expansion_matrix).collect();
    let row = |i: usize| -> BitRow {
        let mut row = BitRow::new(n);
        for j in 0..n {
            if j != i && mats[i].entrywise_sub(&mats[j]).rank() < d {
                row.set(j);
            }
        }
        row
    };
    build_rows(n, row, parallel)
}

fn subspace_adjacency(list: &[Subspace], ds: usize, parallel: bool) -> Vec<BitRow> {
    let n = list.len();
    let row = |i: usize| -> BitRow {
        let mut row = BitRow::new(n);
        for j in 0..n {
            if j != i && list[i].distance(&list[j]).expect("same ambient") < ds {
                row.set(j);
            }
        }
        row
    };
    build_rows(n, row, parallel)
}

fn build_rows(n: usize, row: impl Fn(usize) -> BitRow + Send + Sync, parallel: bool) -> Vec<BitRow> {
    #[cfg(feature = "parallel")]
    {
        if parallel {
            return (0..n).into_par_iter().map(row).collect();
        }
    }
    let _ = parallel;
    (0..n).map(row).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitrow_basics() {
        let mut b = BitRow::new(130);
        b.set(0);
        b.set(64);
        b.set(129);
        assert!(b.get(64));
        assert!(!b.get(1));
        assert_eq!(b.count_ones(), 3);
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        b.clear(64);
        assert_eq!(b.count_ones(), 2);
        let c = b.complement();
        assert_eq!(c.count_ones(), 128);
        assert!(!c.get(0));
        assert!(c.get(64));
    }

    #[test]
    fn edgeless_at_unit_distance() {
        // d = 1: distinct equal-rank words are never at distance < 1
        let g = DistanceGraph::build(
            GraphKind::ConstantRank {
                q: 2,
                m: 2,
                n: 2,
                d: 1,
                r: 1,
            },
            512,
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn constant_rank_graph_order() {
        // K_2(2,2,2,2) has N_2(4,2) = 6 vertices
        let g = DistanceGraph::build(
            GraphKind::ConstantRank {
                q: 2,
                m: 2,
                n: 2,
                d: 2,
                r: 2,
            },
            512,
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 6);
        // adjacency is symmetric and irreflexive
        for u in 0..6 {
            assert!(!g.adjacent(u, u));
            for v in 0..6 {
                assert_eq!(g.adjacent(u, v), g.adjacent(v, u));
            }
        }
    }

    #[test]
    fn bilinear_forms_graph_order() {
        let g = DistanceGraph::build(
            GraphKind::BilinearForms {
                q: 2,
                m: 2,
                n: 2,
                d: 2,
            },
            512,
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 16);
    }

    #[test]
    fn subspace_graph_order() {
        // E_2(2,4) has 35 planes
        let g = DistanceGraph::build(
            GraphKind::SubspaceDistance {
                q: 2,
                n: 4,
                ds: 4,
                r: 2,
            },
            512,
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 35);
    }

    #[test]
    fn vertex_cap_enforced() {
        assert!(matches!(
            DistanceGraph::build(
                GraphKind::BilinearForms {
                    q: 2,
                    m: 3,
                    n: 3,
                    d: 2
                },
                100
            ),
            Err(Error::VertexCap { .. })
        ));
    }

    #[test]
    fn parallel_and_sequential_builds_agree() {
        let kind = GraphKind::ConstantRank {
            q: 2,
            m: 3,
            n: 2,
            d: 2,
            r: 2,
        };
        let a = DistanceGraph::build(kind.clone(), 512).unwrap();
        let b = DistanceGraph::build_seq(kind, 512).unwrap();
        assert_eq!(a.vertex_count(), b.vertex_count());
        for u in 0..a.vertex_count() {
            assert_eq!(a.row(u), b.row(u));
        }
    }
}
