//! The repository's identity self-test suite.
//!
//! Each check recomputes a documented identity or fixture from scratch and
//! reports a deterministic pass/fail line. The CLI `verify` subcommand runs
//! all of them; the acceptance test target runs each as its own test with a
//! runtime budget. Details never include timings or other run-varying data,
//! so output is byte-identical across runs.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::{asymptotic_ar, asymptotic_as, rational};
use crate::bounds::{ar_interval, as_bounds};
use crate::codes::GabidulinCode;
use crate::construct::{
    boost_construction, column_span, extend_full_rank, lift_identity, row_span, transpose_code,
};
use crate::counting::{count_rank, CountingContext};
use crate::field::{make_field, FieldSpec, Gfq, DEFAULT_FIELD_CAP};
use crate::graph::{DistanceGraph, GraphKind};
use crate::search::{
    check_automorphism, exact_ar, exact_as, max_independent_set, vertex_transitivity_witness,
    SearchStatus, DEFAULT_BUDGET,
};
use crate::vector::{rank_histogram, RankVector};

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const CRITERIA: [(u32, &str); 12] = [
    (1, "counting identity"),
    (2, "MRD rank distribution vs enumeration"),
    (3, "equal-rank slice exactness"),
    (4, "line-code exactness"),
    (5, "subspace code fixture"),
    (6, "sandwich soundness"),
    (7, "fiber sizes"),
    (8, "distance-boosting construction"),
    (9, "isometry constructions"),
    (10, "executable automorphisms"),
    (11, "basis independence"),
    (12, "asymptotic rates"),
];

/// Runs one criterion by id (1-based, per [`CRITERIA`]).
pub fn run_criterion(id: u32, seed: u64) -> CheckReport {
    let (name, result) = match id {
        1 => ("counting identity", counting_identity()),
        2 => ("MRD rank distribution vs enumeration", mrd_vs_enumeration()),
        3 => ("equal-rank slice exactness", equal_rank_exactness()),
        4 => ("line-code exactness", line_code_exactness()),
        5 => ("subspace code fixture", subspace_fixture()),
        6 => ("sandwich soundness", sandwich_soundness()),
        7 => ("fiber sizes", fiber_sizes()),
        8 => ("distance-boosting construction", boost_check()),
        9 => ("isometry constructions", isometry_checks()),
        10 => ("executable automorphisms", automorphism_checks()),
        11 => ("basis independence", basis_independence(seed)),
        12 => ("asymptotic rates", asymptotic_checks()),
        _ => ("unknown", Err(format!("no criterion {id}"))),
    };
    match result {
        Ok(detail) => CheckReport {
            id,
            name,
            passed: true,
            detail,
        },
        Err(detail) => CheckReport {
            id,
            name,
            passed: false,
            detail,
        },
    }
}

/// Runs the whole suite in order.
pub fn run_all(seed: u64) -> Vec<CheckReport> {
    CRITERIA
        .iter()
        .map(|&(id, _)| run_criterion(id, seed))
        .collect()
}

type Check = std::result::Result<String, String>;

fn counting_identity() -> Check {
    let mut points = 0;
    for (p, m_max, n_max) in [(2u64, 3u32, 3u32), (3, 2, 2)] {
        for m in 1..=m_max {
            for n in 1..=n_max {
                let spec = make_field(p, 1, m).map_err(|e| e.to_string())?;
                let ctx = CountingContext::new(p, m, n).map_err(|e| e.to_string())?;
                let hist =
                    rank_histogram(&spec, n as usize, 1 << 20).map_err(|e| e.to_string())?;
                let mut total = BigUint::from(0u32);
                for (r, got) in hist.iter().enumerate() {
                    let expect = count_rank(r as u32, &ctx).map_err(|e| e.to_string())?;
                    if *got != expect {
                        return Err(format!(
                            "q={p} m={m} n={n} r={r}: enumerated {got}, formula {expect}"
                        ));
                    }
                    total += got;
                }
                if total != ctx.space_size() {
                    return Err(format!("q={p} m={m} n={n}: histogram sums to {total}"));
                }
                points += 1;
            }
        }
    }
    Ok(format!("{points} parameter points, all histograms match"))
}

fn mrd_vs_enumeration() -> Check {
    let spec = make_field(2, 1, 3).map_err(|e| e.to_string())?;
    let ctx = CountingContext::new(2, 3, 3).map_err(|e| e.to_string())?;
    for d in [2u32, 3] {
        let code = GabidulinCode::new(spec.clone(), 3, d as usize).map_err(|e| e.to_string())?;
        let mut hist = vec![0u64; 4];
        let mut size = 0u64;
        for w in code.codewords(1 << 10).map_err(|e| e.to_string())? {
            hist[w.rank_weight()] += 1;
            size += 1;
        }
        if BigUint::from(size) != code.codeword_count() {
            return Err(format!("d={d}: enumerated {size} codewords"));
        }
        let mut sum = BigUint::from(1u32);
        for r in d..=3 {
            let expect =
                crate::counting::mrd_rank_distribution(d, r, &ctx).map_err(|e| e.to_string())?;
            if BigUint::from(hist[r as usize]) != expect {
                return Err(format!(
                    "d={d} r={r}: enumerated {}, formula {expect}",
                    hist[r as usize]
                ));
            }
            sum += expect;
        }
        if sum != code.codeword_count() {
            return Err(format!("d={d}: distribution sums to {sum}"));
        }
    }
    Ok("rank histograms match the distribution formula at d=2 and d=3".into())
}

fn equal_rank_exactness() -> Check {
    let a = exact_ar(2, 2, 2, 2, 2, 512, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let b = exact_ar(2, 2, 3, 2, 2, 512, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    if a.value != 3 {
        failures.push(format!("search over 6 vertices returned {}, expected 3", a.value));
    }
    if b.value != 21 {
        failures.push(format!(
            "search over 42 vertices returned {}, expected 21",
            b.value
        ));
    }
    if failures.is_empty() {
        Ok("both equal-rank optima match".into())
    } else {
        Err(failures.join("; "))
    }
}

fn line_code_exactness() -> Check {
    let s = exact_ar(2, 2, 3, 2, 1, 512, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    if s.value == 7 {
        Ok("search over 21 vertices returned 7".into())
    } else {
        Err(format!(
            "search over 21 vertices returned {}, expected 7",
            s.value
        ))
    }
}

fn subspace_fixture() -> Check {
    let s = exact_as(2, 4, 4, 2, 512, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let iv = as_bounds(2, 4, 2, 2).map_err(|e| e.to_string())?;
    if s.value != 5 {
        return Err(format!("search over 35 planes returned {}, expected 5", s.value));
    }
    if iv.lower != BigUint::from(4u32) || iv.upper != BigUint::from(5u32) {
        return Err(format!("interval [{}, {}], expected [4, 5]", iv.lower, iv.upper));
    }
    if !s.witness.verify().passed || !s.witness.min_distance().at_least(4) {
        return Err("witness spread failed verification".into());
    }
    Ok("optimum 5 equals the anticode upper bound; witness verifies".into())
}

fn sandwich_soundness() -> Check {
    let mut points = 0;
    let mut violations = Vec::new();
    for m in 1..=3u32 {
        for n in 1..=3u32 {
            let ctx = CountingContext::new(2, m, n).map_err(|e| e.to_string())?;
            for r in 0..=m.min(n) {
                let order = count_rank(r, &ctx).map_err(|e| e.to_string())?;
                if order > BigUint::from(128u32) {
                    continue;
                }
                for d in 1..=2 * r.max(1) + 1 {
                    let g = DistanceGraph::build(
                        GraphKind::ConstantRank { q: 2, m, n, d, r },
                        128,
                    )
                    .map_err(|e| e.to_string())?;
                    let out = max_independent_set(&g, DEFAULT_BUDGET);
                    if out.status != SearchStatus::Exact {
                        return Err(format!("budget exhausted at m={m} n={n} d={d} r={r}"));
                    }
                    let iv = ar_interval(2, m, n, d, r).map_err(|e| e.to_string())?;
                    let v = BigUint::from(out.size);
                    if v < iv.lower || v > iv.upper {
                        violations.push(format!(
                            "m={m} n={n} d={d} r={r}: {} outside [{}, {}]",
                            out.size, iv.lower, iv.upper
                        ));
                    }
                    points += 1;
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(format!("{points} parameter points, zero violations"))
    } else {
        Err(violations.join("; "))
    }
}

fn fiber_sizes() -> Check {
    let spec = make_field(2, 1, 2).map_err(|e| e.to_string())?;
    let mut by_row = std::collections::BTreeMap::new();
    let mut by_col = std::collections::BTreeMap::new();
    for v in crate::vector::enumerate_vectors_of_rank(1, &spec, 2, 1 << 10)
        .map_err(|e| e.to_string())?
    {
        *by_row.entry(row_span(&v)).or_insert(0u32) += 1;
        *by_col.entry(column_span(&v)).or_insert(0u32) += 1;
    }
    let lines = 3;
    if by_row.len() != lines || by_col.len() != lines {
        return Err(format!(
            "expected {lines} lines, got {} row spans and {} column spans",
            by_row.len(),
            by_col.len()
        ));
    }
    for (s, c) in by_row.iter().chain(by_col.iter()) {
        if *c != 3 {
            return Err(format!("fiber over {s:?} has {c} vectors, expected 3"));
        }
    }
    Ok("all six fibers have exactly alpha(2,1) = 3 preimages".into())
}

fn boost_check() -> Check {
    let spread = exact_as(2, 4, 4, 2, 512, DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?
        .witness;
    if spread.len() != 5 {
        return Err(format!("computed spread has {} planes", spread.len()));
    }
    let boosted = boost_construction(&spread, &spread).map_err(|e| e.to_string())?;
    let report = boosted.verify();
    if !report.passed {
        return Err(format!("boosted code failed verification: {report}"));
    }
    if boosted.len() != 5 || boosted.rank() != 2 || boosted.spec().qm() != 16 {
        return Err(format!(
            "boosted code: {} words of rank {} over field of size {}",
            boosted.len(),
            boosted.rank(),
            boosted.spec().qm()
        ));
    }
    if !boosted.min_distance().at_least(4) {
        return Err(format!(
            "boosted minimum distance {} below 4",
            boosted.min_distance()
        ));
    }
    Ok(format!(
        "5-word rank-2 code over GF(16) with minimum distance {}",
        boosted.min_distance()
    ))
}

fn isometry_checks() -> Check {
    let f3 = make_field(2, 1, 3).map_err(|e| e.to_string())?;
    // transposition preserves distance multisets on three slices
    let fixtures = [
        (f3.clone(), 3usize, 2usize, 2usize),
        (f3.clone(), 3, 3, 3),
        (f3.clone(), 2, 2, 2),
    ];
    for (spec, n, d, r) in fixtures {
        let g = GabidulinCode::new(spec, n, d).map_err(|e| e.to_string())?;
        let code = g.constant_rank_slice(r, 1 << 12).map_err(|e| e.to_string())?;
        let t = transpose_code(&code).map_err(|e| e.to_string())?;
        if t.len() != code.len() || t.distance_multiset() != code.distance_multiset() {
            return Err(format!("transposition broke the (n={n}, d={d}, r={r}) slice"));
        }
    }
    // full-rank extension preserves the multiset exactly
    let f2 = make_field(2, 1, 2).map_err(|e| e.to_string())?;
    let base = GabidulinCode::new(f2, 2, 2)
        .and_then(|g| g.constant_rank_slice(2, 1 << 10))
        .map_err(|e| e.to_string())?;
    let ext = extend_full_rank(&base).map_err(|e| e.to_string())?;
    if ext.distance_multiset() != base.distance_multiset() || ext.rank() != 3 {
        return Err("full-rank extension is not an isometry".into());
    }
    // identity lifting is injective on the 64-codeword MRD code
    let g = GabidulinCode::new(f3, 3, 2).map_err(|e| e.to_string())?;
    let words: Vec<RankVector> = g
        .codewords(1 << 10)
        .map_err(|e| e.to_string())?
        .collect();
    let lifted = lift_identity(&words).map_err(|e| e.to_string())?;
    if lifted.len() != 64 {
        return Err(format!(
            "identity lifting collapsed 64 codewords to {} subspaces",
            lifted.len()
        ));
    }
    Ok("transposition, extension, and identity lifting all verified".into())
}

fn automorphism_checks() -> Check {
    let r_graph = DistanceGraph::build(
        GraphKind::BilinearForms {
            q: 2,
            m: 2,
            n: 2,
            d: 2,
        },
        512,
    )
    .map_err(|e| e.to_string())?;
    let nv = r_graph.vertex_count();
    let mut pairs = 0;
    for u in 0..nv {
        for v in 0..nv {
            match vertex_transitivity_witness(&r_graph, u, v) {
                Ok(Some(w)) if w[u] == v => pairs += 1,
                other => {
                    return Err(format!(
                        "translation failed at ({u}, {v}): {other:?}"
                    ))
                }
            }
        }
    }

    let k_graph = DistanceGraph::build(
        GraphKind::ConstantRank {
            q: 2,
            m: 2,
            n: 2,
            d: 2,
            r: 2,
        },
        512,
    )
    .map_err(|e| e.to_string())?;
    let kv = k_graph.vertex_count();
    let mut kpairs = 0;
    for u in 0..kv {
        for v in 0..kv {
            match vertex_transitivity_witness(&k_graph, u, v) {
                Ok(Some(w)) => {
                    if !check_automorphism(&k_graph, &w).map_err(|e| e.to_string())? {
                        return Err(format!("multiplication map not an automorphism at ({u}, {v})"));
                    }
                    kpairs += 1;
                }
                other => return Err(format!("multiplication failed at ({u}, {v}): {other:?}")),
            }
        }
    }
    Ok(format!(
        "{pairs} translation pairs and {kpairs} multiplication pairs verified"
    ))
}

fn basis_independence(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poly = make_field(2, 1, 3).map_err(|e| e.to_string())?;
    let mut specs = vec![poly.clone()];
    while specs.len() < 11 {
        // random invertible 3x3 over GF(2); columns become basis elements
        let entries: Vec<u64> = (0..9).map(|_| rng.gen_range(0..2u64)).collect();
        let gfq = Gfq::new(2, 1, DEFAULT_FIELD_CAP).map_err(|e| e.to_string())?;
        let m = crate::linalg::MatrixQ::new(gfq.clone(), 3, 3, entries.clone())
            .map_err(|e| e.to_string())?;
        if m.rank() != 3 {
            continue;
        }
        let basis: Vec<u64> = (0..3)
            .map(|i| (0..3).map(|j| entries[j * 3 + i] << j).sum())
            .collect();
        let spec =
            FieldSpec::over(gfq, 3, None, Some(basis)).map_err(|e| e.to_string())?;
        specs.push(spec);
    }
    for _ in 0..100 {
        let idx: Vec<u64> = (0..3).map(|_| rng.gen_range(0..8u64)).collect();
        let reference = RankVector::from_indices(&specs[0], &idx)
            .map_err(|e| e.to_string())?
            .rank_weight();
        for spec in &specs[1..] {
            let got = RankVector::from_indices(spec, &idx)
                .map_err(|e| e.to_string())?
                .rank_weight();
            if got != reference {
                return Err(format!(
                    "vector {idx:?} has rank {reference} in the polynomial basis but {got} in an alternative basis"
                ));
            }
        }
    }
    Ok("100 vectors agree across the polynomial basis and 10 random bases".into())
}

fn asymptotic_checks() -> Check {
    // interval sanity on the rational grid
    let mut checked = 0;
    for nu_i in 1..=32i64 {
        let nu = rational(nu_i, 32);
        for rho_i in 0..=32i64 {
            let rho = rational(rho_i, 32);
            for d_i in 0..=32i64 {
                let d = rational(d_i, 32);
                if let Ok(iv) = asymptotic_ar(&nu, &d, &rho) {
                    if iv.lower > iv.upper {
                        return Err(format!("crossed interval at nu={nu} rho={rho} d={d}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    // full-rank codes match the MRD rate exactly
    for nu in [rational(1, 2), rational(1, 1)] {
        let steps = 32;
        for i in 0..=steps {
            let d = rational(i, 32);
            if d > nu {
                break;
            }
            let iv = asymptotic_ar(&nu, &d, &nu).map_err(|e| e.to_string())?;
            if !iv.exact || iv.lower != nu.clone() - d.clone() {
                return Err(format!("a_R(nu, d, nu) != nu - d at nu={nu} d={d}"));
            }
        }
    }
    // subspace rate matches its closed form, including the zero region
    for rho_i in 0..=32i64 {
        let rho = rational(rho_i, 32);
        for d_i in 0..=32i64 {
            let d = rational(d_i, 32);
            let got = asymptotic_as(&d, &rho).map_err(|e| e.to_string())?;
            // expanded form evaluated independently
            let one = rational(1, 1);
            let expect = if d <= rho.clone().min(one.clone() - rho.clone()) {
                let a = &rho - &rho * &rho - &d + &d * &rho;
                let b = &rho - &rho * &rho - &rho * &d;
                a.min(b)
            } else {
                rational(0, 1)
            };
            if got != expect {
                return Err(format!("a_S mismatch at rho={rho} d={d}"));
            }
        }
    }
    Ok(format!(
        "{checked} grid points sane; full-rank and subspace closed forms match"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_table_is_consistent() {
        for (i, &(id, name)) in CRITERIA.iter().enumerate() {
            assert_eq!(id as usize, i + 1);
            let r = run_criterion(id, DEFAULT_SEED);
            assert_eq!(r.id, id);
            assert_eq!(r.name, name);
        }
    }

    #[test]
    fn deterministic_reports() {
        for id in [1u32, 5, 7, 12] {
            let a = run_criterion(id, DEFAULT_SEED);
            let b = run_criterion(id, DEFAULT_SEED);
            assert_eq!(a.passed, b.passed);
            assert_eq!(a.detail, b.detail);
        }
    }
}
