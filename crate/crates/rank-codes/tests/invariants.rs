//! Cross-module invariants: field axioms as properties, elementary-subspace
//! membership counts, Singleton equality for the MRD construction, duality
//! under transposition, and consistency of the finite bounds with the
//! asymptotic rates.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use rank_codes::asymptotics::{asymptotic_ar, rational};
use rank_codes::bounds::ar_lower_bounds;
use rank_codes::codebook::CodebookFile;
use rank_codes::codes::{pairwise_min_distance, ConstantRankCode, Distance, GabidulinCode};
use rank_codes::counting::{alpha, gaussian, CountingContext};
use rank_codes::field::{make_field, FieldSpec, DEFAULT_FIELD_CAP};
use rank_codes::linalg::enumerate_subspaces;
use rank_codes::search::{exact_ar, DEFAULT_BUDGET};
use rank_codes::vector::{enumerate_vectors, enumerate_vectors_of_rank, RankVector};

fn small_field() -> impl Strategy<Value = Arc<FieldSpec>> {
    prop_oneof![
        Just((2u64, 1u32, 2u32)),
        Just((2, 1, 3)),
        Just((2, 2, 2)),
        Just((3, 1, 2)),
        Just((5, 1, 1)),
    ]
    .prop_map(|(p, k, m)| make_field(p, k, m).unwrap())
}

proptest! {
    #[test]
    fn field_axioms_hold((spec, seeds) in small_field().prop_flat_map(|spec| {
        let qm = spec.qm();
        (Just(spec), proptest::collection::vec(0..qm, 3))
    })) {
        let a = spec.elem(seeds[0]).unwrap();
        let b = spec.elem(seeds[1]).unwrap();
        let c = spec.elem(seeds[2]).unwrap();
        // associativity, commutativity, distributivity
        prop_assert_eq!(spec.add(spec.add(a, b), c), spec.add(a, spec.add(b, c)));
        prop_assert_eq!(spec.mul(spec.mul(a, b), c), spec.mul(a, spec.mul(b, c)));
        prop_assert_eq!(spec.add(a, b), spec.add(b, a));
        prop_assert_eq!(spec.mul(a, b), spec.mul(b, a));
        prop_assert_eq!(
            spec.mul(a, spec.add(b, c)),
            spec.add(spec.mul(a, b), spec.mul(a, c))
        );
        // inverses
        if !a.is_zero() {
            prop_assert_eq!(spec.mul(a, spec.inv(a).unwrap()), spec.one());
        }
        prop_assert_eq!(spec.add(a, spec.neg(a)), spec.zero());
    }

    #[test]
    fn expansion_is_linear_bijection((spec, seeds) in small_field().prop_flat_map(|spec| {
        let qm = spec.qm();
        (Just(spec), proptest::collection::vec(0..qm, 2))
    })) {
        let a = spec.elem(seeds[0]).unwrap();
        let b = spec.elem(seeds[1]).unwrap();
        prop_assert_eq!(spec.contract(&spec.expand(a)).unwrap(), a);
        let sum: Vec<u64> = spec
            .expand(a)
            .iter()
            .zip(spec.expand(b))
            .map(|(&x, y)| spec.gfq().add(x, y))
            .collect();
        prop_assert_eq!(spec.expand(spec.add(a, b)), sum);
    }

    #[test]
    fn rank_code_roundtrips_through_codebook(mask in 1u64..64, r in 1usize..=2) {
        let spec = make_field(2, 1, 2).unwrap();
        let all: Vec<RankVector> = enumerate_vectors_of_rank(r, &spec, 2, 1 << 10)
            .unwrap()
            .collect();
        let words: Vec<RankVector> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 6) & 1 == 1 || *i == 0)
            .map(|(_, w)| w.clone())
            .collect();
        let code = ConstantRankCode::new(spec, words).unwrap();
        let parsed = CodebookFile::parse(&CodebookFile::from_rank_code(&code).to_json_string())
            .unwrap()
            .to_rank_code(DEFAULT_FIELD_CAP)
            .unwrap();
        prop_assert_eq!(parsed.len(), code.len());
        prop_assert_eq!(parsed.min_distance(), code.min_distance());
        let a: Vec<_> = parsed.words().iter().map(RankVector::indices).collect();
        let b: Vec<_> = code.words().iter().map(RankVector::indices).collect();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn hyperplane_els_membership_count() {
    // a vector of rank r lies in exactly [n-r 1]_q subspace hulls of
    // dimension n-1, verified by exhaustive enumeration at q=2, n <= 3
    for (m, n) in [(2u32, 2usize), (2, 3), (3, 2), (3, 3)] {
        let spec = make_field(2, 1, m).unwrap();
        let hyperplanes: Vec<_> = enumerate_subspaces(spec.gfq(), n, n - 1, 1 << 10)
            .unwrap()
            .collect();
        for x in enumerate_vectors(&spec, n, 1 << 12).unwrap() {
            let r = x.rank_weight();
            let row = x.row_space();
            let count = hyperplanes
                .iter()
                .filter(|h| (0..row.dim()).all(|i| h.contains(row.basis().row(i))))
                .count();
            assert_eq!(
                BigUint::from(count),
                gaussian((n - r) as u32, 1, 2),
                "m={m} n={n} rank {r}"
            );
        }
    }
}

#[test]
fn els_fiber_count_is_alpha() {
    // every r-dimensional elementary subspace contains exactly alpha(m, r)
    // vectors of rank r
    for (m, n) in [(2u32, 2usize), (3, 2), (2, 3), (3, 3)] {
        let spec = make_field(2, 1, m).unwrap();
        for r in 0..=(m as usize).min(n) {
            let mut counts: std::collections::BTreeMap<_, u64> = enumerate_subspaces(
                spec.gfq(),
                n,
                r,
                1 << 10,
            )
            .unwrap()
            .map(|s| (s, 0u64))
            .collect();
            for x in enumerate_vectors_of_rank(r, &spec, n, 1 << 12).unwrap() {
                *counts.get_mut(&x.row_space()).unwrap() += 1;
            }
            for (s, c) in counts {
                assert_eq!(
                    BigUint::from(c),
                    alpha(m, r as u32, 2),
                    "m={m} n={n} r={r} subspace {s:?}"
                );
            }
        }
    }
}

#[test]
fn gabidulin_attains_singleton_equality() {
    // d_R = n - log_{q^m}|C| + 1 with equality for the MRD construction
    for (m, n, d) in [(2u32, 2usize, 2usize), (3, 2, 2), (3, 3, 2), (3, 3, 3), (4, 3, 2)] {
        let spec = make_field(2, 1, m).unwrap();
        let code = GabidulinCode::new(spec, n, d).unwrap();
        let words: Vec<_> = code.codewords(1 << 14).unwrap().collect();
        let dist = pairwise_min_distance(&words);
        assert_eq!(dist, Distance::Finite(d), "m={m} n={n} d={d}");
        assert_eq!(
            BigUint::from(words.len()),
            BigUint::from(code.spec().qm()).pow((n - d + 1) as u32)
        );
    }
}

#[test]
fn exact_search_is_transposition_invariant() {
    for (m, n, d, r) in [(2u32, 3u32, 2u32, 1u32), (2, 3, 2, 2), (3, 2, 3, 2), (2, 2, 2, 1)] {
        let a = exact_ar(2, m, n, d, r, 512, DEFAULT_BUDGET).unwrap().value;
        let b = exact_ar(2, n, m, d, r, 512, DEFAULT_BUDGET).unwrap().value;
        assert_eq!(a, b, "m={m} n={n} d={d} r={r}");
    }
}

#[test]
fn transpose_duality_of_codes() {
    // transposing an (n, d, r) code over GF(q^m) gives an (m, d, r) code
    // over GF(q^n) with the same cardinality and distances
    let spec = make_field(2, 1, 3).unwrap();
    let code = GabidulinCode::new(spec, 2, 2)
        .unwrap()
        .constant_rank_slice(2, 1 << 10)
        .unwrap();
    let t = rank_codes::construct::transpose_code(&code).unwrap();
    assert_eq!(t.spec().m(), 2);
    assert_eq!(t.word_length(), 3);
    assert_eq!(t.len(), code.len());
    assert_eq!(t.distance_multiset(), code.distance_multiset());
}

fn log_q_rate(value: &BigUint, q: u64, m: u32) -> f64 {
    let v = value.to_f64().expect("value fits f64 at these sizes");
    v.log2() / ((m as f64) * (m as f64) * (q as f64).log2())
}

#[test]
fn finite_lower_bounds_track_asymptotic_rate() {
    // formula-only: the best finite lower bound at m = 8, 12, 16 stays
    // within 0.1 of the asymptotic lower rate at m = 16, with the gap
    // shrinking as m grows
    let samples = [
        // (nu, rho, delta) as (num, den) with denominators dividing 4
        ((1i64, 1i64), (1i64, 2i64), (1i64, 4i64)),
        ((1, 1), (1, 2), (1, 2)),
        ((1, 1), (1, 4), (1, 4)),
        ((1, 2), (1, 4), (1, 4)),
        ((1, 2), (1, 2), (1, 4)),
    ];
    for ((nn, nd), (rn, rd), (dn, dd)) in samples {
        let nu = rational(nn, nd);
        let rho = rational(rn, rd);
        let delta = rational(dn, dd);
        let asym = asymptotic_ar(&nu, &delta, &rho).unwrap().lower;
        let asym = asym.to_f64().unwrap();
        let mut gaps = Vec::new();
        for m in [8u32, 12, 16] {
            let n = (m as i64 * nn / nd) as u32;
            let r = (m as i64 * rn / rd) as u32;
            let d = (m as i64 * dn / dd) as u32;
            let best = ar_lower_bounds(2, m, n, d, r)
                .unwrap()
                .into_iter()
                .map(|b| b.value)
                .max()
                .unwrap();
            let rate = log_q_rate(&best, 2, m);
            gaps.push((rate - asym).abs());
        }
        assert!(
            gaps[2] <= 0.1,
            "gap {} at m=16 for nu={nu} rho={rho} delta={delta}",
            gaps[2]
        );
        assert!(
            gaps[0] >= gaps[1] && gaps[1] >= gaps[2],
            "gaps not shrinking: {gaps:?} for nu={nu} rho={rho} delta={delta}"
        );
    }
}

#[test]
fn lift_cardinality_sandwich() {
    // |S(C)| <= |C| <= alpha(n, r) |S(C)| across lifted fixtures
    use rank_codes::codes::ConstantDimensionCode;
    use rank_codes::construct::{column_span, lift_via_column_span};
    let gfq = rank_codes::field::Gfq::new(2, 1, DEFAULT_FIELD_CAP).unwrap();
    for r in 1..=2usize {
        let gamma = ConstantDimensionCode::new(
            enumerate_subspaces(&gfq, 3, r, 1 << 10).unwrap().collect(),
        )
        .unwrap();
        let code = lift_via_column_span(&gamma, (r).max(2)).unwrap();
        let spans: std::collections::BTreeSet<_> =
            code.words().iter().map(column_span).collect();
        let s_count = spans.len();
        let a = alpha(code.word_length() as u32, r as u32, 2)
            .to_u64()
            .unwrap() as usize;
        assert!(s_count <= code.len());
        assert!(code.len() <= a * s_count);
        assert_eq!(code.len(), gamma.len());
    }
}

#[test]
fn counting_context_rejects_junk() {
    assert!(CountingContext::new(6, 2, 2).is_err());
    assert!(CountingContext::new(2, 2, 0).is_err());
}
