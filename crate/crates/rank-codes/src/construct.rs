//! Constructive bridges between constant-rank and constant-dimension codes.
//!
//! A vector x over GF(q^m) determines two subspaces through its expansion
//! matrix X: the column span (a subspace of GF(q)^m spanned by the
//! coordinates) and the row span (the minimal elementary linear subspace of
//! GF(q)^n containing x). Both maps are surjective onto subspaces of the
//! right dimension, with fibers of exact size alpha(n, r) and alpha(m, r);
//! [`vector_from_spans`] produces the canonical witness X = GᵀH.
//!
//! On top of these sit the code-level constructions: span lifts of
//! constant-dimension codes, the distance-boosting pairing of two
//! constant-dimension codes, the identity lifting into the Grassmannian of
//! GF(q)^{m+n}, the full-rank extension that grows a square code by one
//! dimension, and transposition. Every construction re-verifies its claimed
//! parameters on the produced words instead of trusting them.

use std::sync::Arc;

use crate::codes::{ConstantDimensionCode, ConstantRankCode, Distance};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{MatrixQ, Subspace};
use crate::vector::RankVector;

/// Column span of the expansion matrix: the subspace of GF(q)^m spanned by
/// the coordinates of `x`.
pub fn column_span(x: &RankVector) -> Subspace {
    x.col_space()
}

/// Row span of the expansion matrix: the minimal elementary linear subspace
/// of GF(q)^n containing `x`.
pub fn row_span(x: &RankVector) -> Subspace {
    x.row_space()
}

/// The canonical rank-r witness with prescribed column span `s` ⊆ GF(q)^m
/// and row span `t` ⊆ GF(q)^n: the vector whose expansion is GᵀH for the
/// canonical generator matrices G of `s` and H of `t`.
pub fn vector_from_spans(
    s: &Subspace,
    t: &Subspace,
    spec: &Arc<FieldSpec>,
) -> Result<RankVector> {
    if s.dim() != t.dim() {
        return Err(Error::Dimension(format!(
            "span dimensions differ: {} vs {}",
            s.dim(),
            t.dim()
        )));
    }
    if s.ambient_dim() != spec.m() as usize {
        return Err(Error::Dimension(format!(
            "column span lives in GF(q)^{}, expected GF(q)^{}",
            s.ambient_dim(),
            spec.m()
        )));
    }
    if !s.field().same_field(spec.gfq()) || !t.field().same_field(spec.gfq()) {
        return Err(Error::MixedFields);
    }
    let x = s.basis().transpose().mul(t.basis()); // m x n over GF(q)
    let coords = (0..x.cols())
        .map(|j| {
            let col: Vec<u64> = (0..x.rows()).map(|i| x.get(i, j)).collect();
            spec.contract(&col)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankVector::new(spec.clone(), coords))
}

/// Lifts a constant-dimension code Γ ⊆ E_r(q, m) to a constant-rank code of
/// length `n` over GF(q^m) with column spans exactly Γ, one canonical
/// witness per subspace (row span fixed to the first r-dimensional subspace
/// of GF(q)^n), so the output has |Γ| words.
pub fn lift_via_column_span(gamma: &ConstantDimensionCode, n: usize) -> Result<ConstantRankCode> {
    let m = gamma.ambient_dim();
    let r = gamma.dim();
    if !(r <= n && n <= m) {
        return Err(Error::Domain(format!(
            "need r <= n <= m, got r={r}, n={n}, m={m}"
        )));
    }
    let spec = FieldSpec::over(gamma.field().clone(), m as u32, None, None)?;
    let t0 = first_subspace(gamma.field().clone(), n, r);
    let words = gamma
        .subspaces()
        .iter()
        .map(|u| vector_from_spans(u, &t0, &spec))
        .collect::<Result<Vec<_>>>()?;
    let code = ConstantRankCode::new(spec, words)?;
    for (w, u) in code.words().iter().zip(gamma.subspaces()) {
        if column_span(w) != *u {
            return Err(Error::Postcondition(
                "lifted word does not reproduce its column span".into(),
            ));
        }
    }
    Ok(code)
}

/// Dual lift: takes Δ ⊆ E_r(q, n) to a constant-rank code of length n over
/// GF(q^m) with row spans exactly Δ (column span fixed canonically).
pub fn lift_via_row_span(delta: &ConstantDimensionCode, m: usize) -> Result<ConstantRankCode> {
    let n = delta.ambient_dim();
    let r = delta.dim();
    if !(r <= n && n <= m) {
        return Err(Error::Domain(format!(
            "need r <= n <= m, got r={r}, n={n}, m={m}"
        )));
    }
    let spec = FieldSpec::over(delta.field().clone(), m as u32, None, None)?;
    let s0 = first_subspace(delta.field().clone(), m, r);
    let words = delta
        .subspaces()
        .iter()
        .map(|v| vector_from_spans(&s0, v, &spec))
        .collect::<Result<Vec<_>>>()?;
    let code = ConstantRankCode::new(spec, words)?;
    for (w, v) in code.words().iter().zip(delta.subspaces()) {
        if row_span(w) != *v {
            return Err(Error::Postcondition(
                "lifted word does not reproduce its row span".into(),
            ));
        }
    }
    Ok(code)
}

/// The lexicographically first r-dimensional subspace: row space of [I_r | 0].
fn first_subspace(field: Arc<crate::field::Gfq>, ambient: usize, r: usize) -> Subspace {
    let mut m = MatrixQ::zeros(field, r, ambient);
    for i in 0..r {
        m.set(i, i, 1);
    }
    Subspace::from_generators(m)
}

/// Distance-boosting construction. Takes Γ ⊆ E_r(q, m) with minimum subspace
/// distance 2r (pairwise trivial intersections) and Δ ⊆ E_r(q, n) with
/// minimum subspace distance 2d', and pairs them into a constant-rank code
/// over GF(q^m) of length n, rank r, cardinality min(|Γ|, |Δ|), and minimum
/// rank distance at least d' + r. Word i is Σ_l β_{i,l} · (row l of Y_i),
/// where the expansion of β_{i,l} is the l-th row of X_i.
///
/// The claimed rank and distance are re-verified on the output.
pub fn boost_construction(
    gamma: &ConstantDimensionCode,
    delta: &ConstantDimensionCode,
) -> Result<ConstantRankCode> {
    if !gamma.field().same_field(delta.field()) {
        return Err(Error::MixedFields);
    }
    let r = gamma.dim();
    if delta.dim() != r {
        return Err(Error::Domain(format!(
            "constant dimensions differ: {} vs {}",
            r,
            delta.dim()
        )));
    }
    let m = gamma.ambient_dim();
    let n = delta.ambient_dim();
    if n > m {
        return Err(Error::Domain(format!("need n <= m, got n={n}, m={m}")));
    }
    if !gamma.min_distance().at_least(2 * r) {
        return Err(Error::Domain(format!(
            "first code must have minimum subspace distance {} (pairwise trivial intersections), found {}",
            2 * r,
            gamma.min_distance()
        )));
    }
    let d_prime = match delta.min_distance() {
        Distance::Unbounded => r.max(1), // singleton second code: any floor works
        Distance::Finite(ds) => ds / 2,
    };
    let spec = FieldSpec::over(gamma.field().clone(), m as u32, None, None)?;

    let count = gamma.len().min(delta.len());
    let mut words = Vec::with_capacity(count);
    for i in 0..count {
        let x = gamma.subspaces()[i].basis(); // r x m
        let y = delta.subspaces()[i].basis(); // r x n
        let betas = (0..r)
            .map(|l| spec.contract(x.row(l)))
            .collect::<Result<Vec<_>>>()?;
        let coords = (0..n)
            .map(|j| {
                let mut acc = spec.zero();
                for (l, &beta) in betas.iter().enumerate() {
                    acc = spec.add(acc, spec.scale(y.get(l, j), beta));
                }
                acc
            })
            .collect();
        words.push(RankVector::new(spec.clone(), coords));
    }

    let code = ConstantRankCode::new(spec, words)?;
    if code.rank() != r {
        return Err(Error::Postcondition(format!(
            "boosted code has rank {}, expected {r}",
            code.rank()
        )));
    }
    if !code.min_distance().at_least(d_prime + r) {
        return Err(Error::Postcondition(format!(
            "boosted code has minimum distance {}, expected at least {}",
            code.min_distance(),
            d_prime + r
        )));
    }
    Ok(code)
}

/// Identity lifting: each codeword becomes the row space of (I_m | X), an
/// m-dimensional subspace of GF(q)^{m+n}. Injective because the identity
/// block pins the representation.
pub fn lift_identity(words: &[RankVector]) -> Result<ConstantDimensionCode> {
    let first = words
        .first()
        .ok_or_else(|| Error::InvalidCode("a code must be nonempty".into()))?;
    let spec = first.spec().clone();
    let m = spec.m() as usize;
    let subspaces = words
        .iter()
        .map(|w| {
            if w.spec().id() != spec.id() || w.len() != first.len() {
                return Err(Error::MixedFields);
            }
            let id = MatrixQ::identity(spec.gfq().clone(), m);
            Ok(id.hstack(&w.expansion_matrix()).row_space())
        })
        .collect::<Result<Vec<_>>>()?;
    ConstantDimensionCode::new(subspaces)
}

/// Full-rank extension: maps an (s, d, s) constant-rank code over GF(q^s)
/// to an (s+1, d, s+1) constant-rank code over GF(q^{s+1}) by extending each
/// expansion matrix with a unit corner. Preserves pairwise distances exactly.
pub fn extend_full_rank(code: &ConstantRankCode) -> Result<ConstantRankCode> {
    let spec = code.spec();
    let s = spec.m() as usize;
    if code.word_length() != s || code.rank() != s {
        return Err(Error::Domain(format!(
            "input must be a square full-rank code: length {} and rank {} must equal m = {s}",
            code.word_length(),
            code.rank()
        )));
    }
    let target = spec.sibling(spec.m() + 1)?;
    let words = code
        .words()
        .iter()
        .map(|w| {
            let x = w.expansion_matrix();
            let mut y = MatrixQ::zeros(spec.gfq().clone(), s + 1, s + 1);
            for i in 0..s {
                for j in 0..s {
                    y.set(i, j, x.get(i, j));
                }
            }
            y.set(s, s, 1);
            vector_from_expansion(&y, &target)
        })
        .collect::<Result<Vec<_>>>()?;
    let out = ConstantRankCode::new(target, words)?;
    if out.rank() != s + 1 {
        return Err(Error::Postcondition(format!(
            "extended code has rank {}, expected {}",
            out.rank(),
            s + 1
        )));
    }
    if out.distance_multiset() != code.distance_multiset() {
        return Err(Error::Postcondition(
            "extension changed the pairwise distance multiset".into(),
        ));
    }
    Ok(out)
}

/// Transposition: an (n, d, r) constant-rank code over GF(q^m) becomes an
/// (m, d, r) constant-rank code over GF(q^n) by transposing every expansion
/// matrix. An isometry, and an involution on expansion matrices.
pub fn transpose_code(code: &ConstantRankCode) -> Result<ConstantRankCode> {
    let spec = code.spec();
    let target = spec.sibling(code.word_length() as u32)?;
    let words = code
        .words()
        .iter()
        .map(|w| vector_from_expansion(&w.expansion_matrix().transpose(), &target))
        .collect::<Result<Vec<_>>>()?;
    let out = ConstantRankCode::new(target, words)?;
    if out.distance_multiset() != code.distance_multiset() {
        return Err(Error::Postcondition(
            "transposition changed the pairwise distance multiset".into(),
        ));
    }
    Ok(out)
}

/// Reassembles a vector from an expansion matrix (columns are coordinates).
pub fn vector_from_expansion(x: &MatrixQ, spec: &Arc<FieldSpec>) -> Result<RankVector> {
    if x.rows() != spec.m() as usize {
        return Err(Error::Dimension(format!(
            "expansion has {} rows but the field has degree {}",
            x.rows(),
            spec.m()
        )));
    }
    let coords = (0..x.cols())
        .map(|j| {
            let col: Vec<u64> = (0..x.rows()).map(|i| x.get(i, j)).collect();
            spec.contract(&col)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankVector::new(spec.clone(), coords))
}
