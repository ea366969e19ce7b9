//! Exact optimal-code search: maximum independent sets of distance graphs.
//!
//! The solver runs branch and bound on the complement graph (maximum clique)
//! with a greedy-coloring upper bound, vertices ordered by degree with
//! lexicographic tie-breaks. It is single-threaded and fully deterministic:
//! the cardinality, the witness, and the node count reproduce across runs.
//! A node-expansion budget turns the result into a tri-state: exact, a
//! lower bound with witness, or unknown — never a silent guess.

use num_bigint::BigUint;

use crate::bounds::{ar_interval, as_bounds};
use crate::codes::{ConstantDimensionCode, ConstantRankCode};
use crate::error::{Error, Result};
use crate::graph::{BitRow, DistanceGraph, GraphKind};

/// Default node-expansion budget for the branch-and-bound search.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// The optimum was certified.
    Exact,
    /// The budget ran out; `size` is only a lower bound.
    LowerBoundOnly,
    /// The budget ran out before any independent set was recorded.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub size: usize,
    /// Vertex indices of the best independent set found, in ascending order.
    pub witness: Vec<usize>,
    pub nodes: u64,
}

struct CliqueSolver {
    /// Complement adjacency in search order.
    comp: Vec<BitRow>,
    /// search label -> original vertex index
    labels: Vec<usize>,
    best: usize,
    best_set: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl CliqueSolver {
    /// Greedy coloring of the candidate set in ascending vertex order; a
    /// clique needs one vertex per color, so the class index bounds the
    /// clique size reachable through each vertex. Each class tracks the
    /// union of its members' neighborhoods.
    fn color(&self, cand: &BitRow) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<(BitRow, Vec<usize>)> = Vec::new();
        for v in cand.ones() {
            match classes.iter_mut().find(|(blocked, _)| !blocked.get(v)) {
                Some((blocked, members)) => {
                    blocked.or_assign(&self.comp[v]);
                    members.push(v);
                }
                None => classes.push((self.comp[v].clone(), vec![v])),
            }
        }
        let count = cand.count_ones();
        let mut order = Vec::with_capacity(count);
        let mut colors = Vec::with_capacity(count);
        for (ci, (_, members)) in classes.iter().enumerate() {
            for &v in members {
                order.push(v);
                colors.push(ci + 1);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, mut cand: BitRow) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if cand.is_clear() {
            if self.current.len() > self.best {
                self.best = self.current.len();
                self.best_set = self.current.clone();
            }
            return;
        }
        let (order, colors) = self.color(&cand);
        for idx in (0..order.len()).rev() {
            if self.exhausted {
                return;
            }
            if self.current.len() + colors[idx] <= self.best {
                return;
            }
            let v = order[idx];
            cand.clear(v);
            let mut next = cand.clone();
            next.and_assign(&self.comp[v]);
            self.current.push(v);
            self.expand(next);
            self.current.pop();
        }
    }
}

/// Exact maximum independent set by branch and bound, with a node budget.
pub fn max_independent_set(g: &DistanceGraph, budget: u64) -> SearchOutcome {
    let n = g.vertex_count();
    if n == 0 {
        return SearchOutcome {
            status: SearchStatus::Exact,
            size: 0,
            witness: Vec::new(),
            nodes: 0,
        };
    }

    // an independent set of g is a clique of the complement
    let comp_orig: Vec<BitRow> = (0..n)
        .map(|u| {
            let mut row = g.row(u).complement();
            row.clear(u);
            row
        })
        .collect();

    // order by complement degree descending, lowest index first on ties
    let mut labels: Vec<usize> = (0..n).collect();
    labels.sort_by_key(|&u| (usize::MAX - comp_orig[u].count_ones(), u));
    let mut position = vec![0usize; n];
    for (i, &u) in labels.iter().enumerate() {
        position[u] = i;
    }
    let comp: Vec<BitRow> = labels
        .iter()
        .map(|&u| {
            let mut row = BitRow::new(n);
            for v in comp_orig[u].ones() {
                row.set(position[v]);
            }
            row
        })
        .collect();

    let mut solver = CliqueSolver {
        comp,
        labels,
        best: 0,
        best_set: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    let mut all = BitRow::new(n);
    for i in 0..n {
        all.set(i);
    }
    solver.expand(all);

    let mut witness: Vec<usize> = solver.best_set.iter().map(|&i| solver.labels[i]).collect();
    witness.sort_unstable();
    // the witness must re-verify as independent before it is returned
    for (a, &u) in witness.iter().enumerate() {
        for &v in &witness[a + 1..] {
            assert!(!g.adjacent(u, v), "witness is not independent: solver bug");
        }
    }
    let status = if !solver.exhausted {
        SearchStatus::Exact
    } else if solver.best > 0 {
        SearchStatus::LowerBoundOnly
    } else {
        SearchStatus::Unknown
    };
    SearchOutcome {
        status,
        size: solver.best,
        witness,
        nodes: solver.nodes,
    }
}

/// Exact A_R(q^m, n, d, r) with its optimal witness code. Errors if the
/// budget is exhausted before the optimum is certified; the certified value
/// is cross-checked against the bound engine's interval.
pub struct ArSearch {
    pub value: usize,
    pub witness: ConstantRankCode,
    pub nodes: u64,
}

pub fn exact_ar(
    q: u64,
    m: u32,
    n: u32,
    d: u32,
    r: u32,
    vertex_cap: u64,
    budget: u64,
) -> Result<ArSearch> {
    let g = DistanceGraph::build(GraphKind::ConstantRank { q, m, n, d, r }, vertex_cap)?;
    let out = max_independent_set(&g, budget);
    if out.status != SearchStatus::Exact {
        return Err(Error::BudgetExhausted {
            nodes: out.nodes,
            best: out.size,
        });
    }
    let interval = ar_interval(q, m, n, d, r)?;
    let value = BigUint::from(out.size);
    assert!(
        interval.lower <= value && value <= interval.upper,
        "search value {} escapes the bound interval [{}, {}] at q={q} m={m} n={n} d={d} r={r}: implementation bug",
        out.size,
        interval.lower,
        interval.upper
    );
    let (spec, list) = g.vector_vertices().expect("rank graph");
    let words = out.witness.iter().map(|&i| list[i].clone()).collect();
    let witness = ConstantRankCode::new(spec.clone(), words)?;
    Ok(ArSearch {
        value: out.size,
        witness,
        nodes: out.nodes,
    })
}

/// Exact A_S(q, n, ds, r) (ds is the full subspace distance) with witness.
pub struct AsSearch {
    pub value: usize,
    pub witness: ConstantDimensionCode,
    pub nodes: u64,
}

pub fn exact_as(q: u64, n: u32, ds: u32, r: u32, vertex_cap: u64, budget: u64) -> Result<AsSearch> {
    let g = DistanceGraph::build(GraphKind::SubspaceDistance { q, n, ds, r }, vertex_cap)?;
    let out = max_independent_set(&g, budget);
    if out.status != SearchStatus::Exact {
        return Err(Error::BudgetExhausted {
            nodes: out.nodes,
            best: out.size,
        });
    }
    // subspace distances between equal dimensions are even
    let half = ds.div_ceil(2);
    let interval = as_bounds(q, n, half, r)?;
    let value = BigUint::from(out.size);
    assert!(
        interval.lower <= value && value <= interval.upper,
        "search value {} escapes the bound interval [{}, {}] at q={q} n={n} ds={ds} r={r}: implementation bug",
        out.size,
        interval.lower,
        interval.upper
    );
    let list = g.subspace_vertices().expect("subspace graph");
    let subs = out.witness.iter().map(|&i| list[i].clone()).collect();
    let witness = ConstantDimensionCode::new(subs)?;
    Ok(AsSearch {
        value: out.size,
        witness,
        nodes: out.nodes,
    })
}

// ---------------------------------------------------------------------------
// Automorphism checks
// ---------------------------------------------------------------------------

/// True iff `perm` is an adjacency-preserving vertex bijection (both
/// directions, via bitset row comparison). Errors if `perm` is not a
/// bijection on the vertex set.
pub fn check_automorphism(g: &DistanceGraph, perm: &[usize]) -> Result<bool> {
    let n = g.vertex_count();
    if perm.len() != n {
        return Err(Error::Domain(format!(
            "map has {} entries for {n} vertices",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in perm {
        if v >= n || seen[v] {
            return Err(Error::Domain("map is not a vertex bijection".into()));
        }
        seen[v] = true;
    }
    for u in 0..n {
        let mut mapped = BitRow::new(n);
        for v in g.row(u).ones() {
            mapped.set(perm[v]);
        }
        if &mapped != g.row(perm[u]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The translation x ↦ x + (x_v − x_u) as a vertex permutation of the
/// bilinear forms graph.
pub fn translation_map(g: &DistanceGraph, u: usize, v: usize) -> Result<Vec<usize>> {
    let GraphKind::BilinearForms { .. } = g.kind() else {
        return Err(Error::Domain(
            "translations act on the bilinear forms graph".into(),
        ));
    };
    let (spec, list) = g.vector_vertices().expect("vector graph");
    let shift = list[v].sub(&list[u])?;
    let qm = spec.qm() as u128;
    let perm = list
        .iter()
        .map(|x| {
            let y = x.add(&shift)?;
            let mut idx = 0u128;
            for c in y.coords() {
                idx = idx * qm + c.index() as u128;
            }
            Ok(idx as usize)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(perm)
}

/// The full-rank multiplication x ↦ y with Y = X·U⁻¹V as a vertex
/// permutation of the square full-rank constant-rank graph.
pub fn multiplication_map(g: &DistanceGraph, u: usize, v: usize) -> Result<Vec<usize>> {
    let GraphKind::ConstantRank { m, n, r, .. } = *g.kind() else {
        return Err(Error::Domain(
            "multiplications act on the constant-rank graph".into(),
        ));
    };
    if !(m == n && n == r) {
        return Err(Error::Domain(
            "multiplication maps need the square full-rank graph".into(),
        ));
    }
    let (spec, list) = g.vector_vertices().expect("vector graph");
    let xu = list[u].expansion_matrix();
    let xv = list[v].expansion_matrix();
    let t = xu
        .inverse()
        .ok_or_else(|| Error::Domain("base vertex is not full rank".into()))?
        .mul(&xv);
    let index_of: std::collections::HashMap<Vec<u64>, usize> = list
        .iter()
        .enumerate()
        .map(|(i, x)| (x.indices(), i))
        .collect();
    let perm = list
        .iter()
        .map(|x| {
            let y = crate::construct::vector_from_expansion(&x.expansion_matrix().mul(&t), spec)?;
            index_of
                .get(&y.indices())
                .copied()
                .ok_or_else(|| Error::Domain("image leaves the vertex set".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(perm)
}

/// An automorphism carrying `u` to `v`, when the graph family has one in
/// closed form: translations for the bilinear forms graph, full-rank
/// multiplications for the square constant-rank graph. Returns `None` for
/// graphs with no canned transitive family (no search is attempted). The
/// returned map is always re-verified through [`check_automorphism`].
pub fn vertex_transitivity_witness(
    g: &DistanceGraph,
    u: usize,
    v: usize,
) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    if u >= n || v >= n {
        return Err(Error::Domain("vertex index out of range".into()));
    }
    if u == v {
        return Ok(Some((0..n).collect()));
    }
    let perm = match g.kind() {
        GraphKind::BilinearForms { .. } => translation_map(g, u, v)?,
        GraphKind::ConstantRank { m, n: len, r, .. } if m == len && len == r => {
            if list_rank_full(g, u) {
                multiplication_map(g, u, v)?
            } else {
                return Ok(None);
            }
        }
        _ => return Ok(None),
    };
    if perm[u] != v {
        return Err(Error::Postcondition("map does not carry u to v".into()));
    }
    if !check_automorphism(g, &perm)? {
        return Err(Error::Postcondition(
            "constructed map failed the automorphism check".into(),
        ));
    }
    Ok(Some(perm))
}

fn list_rank_full(g: &DistanceGraph, u: usize) -> bool {
    g.vector_vertices()
        .map(|(spec, list)| list[u].rank_weight() == spec.m() as usize)
        .unwrap_or(false)
}
