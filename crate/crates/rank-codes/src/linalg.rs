//! Dense linear algebra over GF(q): rank, RREF, spans, and canonical
//! subspace representations.
//!
//! A [`Subspace`] is identified by the reduced row echelon form of a
//! generator matrix, so subspaces compare, hash, and sort by exact equality
//! of their canonical bases. [`enumerate_subspaces`] walks the Grassmannian
//! in a fixed order: pivot columns in lexicographically increasing order,
//! then free entries in base-q counting order.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::counting;
use crate::error::{Error, Result};
use crate::field::Gfq;

/// Row-major dense matrix over GF(q). Entries are element indices.
#[derive(Clone)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    field: Arc<Gfq>,
}

impl std::fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatrixQ {}x{} over GF({})", self.rows, self.cols, self.field.q())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl PartialEq for MatrixQ {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
            && self.field.same_field(&other.field)
    }
}

impl Eq for MatrixQ {}

impl MatrixQ {
    pub fn new(field: Arc<Gfq>, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|&e| e >= field.q()) {
            return Err(Error::Domain("matrix entry out of range".into()));
        }
        Ok(MatrixQ {
            rows,
            cols,
            entries,
            field,
        })
    }

    pub fn zeros(field: Arc<Gfq>, rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            entries: vec![0; rows * cols],
            field,
        }
    }

    pub fn identity(field: Arc<Gfq>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &Arc<Gfq> {
        &self.field
    }
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < self.field.q());
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut out = MatrixQ::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &MatrixQ) -> MatrixQ {
        assert!(self.field.same_field(&other.field), "mixed-field matrices");
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let f = self.field.as_ref();
        let mut out = MatrixQ::zeros(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other.get(k, j));
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, t));
                }
            }
        }
        out
    }

    /// Matrix–vector product (vector as a column).
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "inner dimensions must agree");
        let f = self.field.as_ref();
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (j, &vj) in v.iter().enumerate() {
                    acc = f.add(acc, f.mul(self.get(i, j), vj));
                }
                acc
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &MatrixQ) -> MatrixQ {
        assert!(self.field.same_field(&other.field), "mixed-field matrices");
        assert_eq!(self.cols, other.cols, "column counts must agree");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        MatrixQ {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
            field: self.field.clone(),
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &MatrixQ) -> MatrixQ {
        assert!(self.field.same_field(&other.field), "mixed-field matrices");
        assert_eq!(self.rows, other.rows, "row counts must agree");
        let mut out = MatrixQ::zeros(self.field.clone(), self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn entrywise_sub(&self, other: &MatrixQ) -> MatrixQ {
        assert!(self.field.same_field(&other.field), "mixed-field matrices");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field.as_ref();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            entries,
            field: self.field.clone(),
        }
    }

    /// In-place reduction to RREF; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let f = f.as_ref();
        let mut pivots = Vec::new();
        let mut pr = 0; // next pivot row
        for col in 0..self.cols {
            let Some(src) = (pr..self.rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            if src != pr {
                for j in 0..self.cols {
                    let (a, b) = (self.get(pr, j), self.get(src, j));
                    self.set(pr, j, b);
                    self.set(src, j, a);
                }
            }
            let inv = f.inv(self.get(pr, col)).expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = f.mul(self.get(pr, j), inv);
                self.set(pr, j, v);
            }
            for i in 0..self.rows {
                if i == pr {
                    continue;
                }
                let factor = self.get(i, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let t = f.mul(factor, self.get(pr, j));
                    let v = f.sub(self.get(i, j), t);
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            pr += 1;
            if pr == self.rows {
                break;
            }
        }
        pivots
    }

    /// Reduced row echelon form. Idempotent; preserves the row space.
    pub fn rref(&self) -> MatrixQ {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|&e| e == 0)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<MatrixQ> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = self.hstack(&MatrixQ::identity(self.field.clone(), n));
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut out = MatrixQ::zeros(self.field.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }

    /// Span of the rows, as a canonical subspace of GF(q)^cols.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_generators(self.clone())
    }

    /// Span of the columns, as a canonical subspace of GF(q)^rows.
    pub fn col_space(&self) -> Subspace {
        Subspace::from_generators(self.transpose())
    }
}

/// Rank of the column-wise concatenation (Xᵀ | Yᵀ), i.e. the dimension of the
/// sum of the row spaces of `x` and `y`.
pub fn stack_rank(x: &MatrixQ, y: &MatrixQ) -> Result<usize> {
    if x.cols() != y.cols() {
        return Err(Error::Dimension(format!(
            "ambient dimensions differ: {} vs {}",
            x.cols(),
            y.cols()
        )));
    }
    Ok(x.vstack(y).rank())
}

/// A subspace of GF(q)^k in canonical form: the basis matrix is in RREF with
/// no zero rows, so equality of subspaces is equality of representations.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: MatrixQ,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of GF({})^{}: {:?})",
            self.dim(),
            self.basis.field().q(),
            self.ambient_dim(),
            self.basis.entries()
        )
    }
}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.basis.cols.hash(state);
        self.basis.rows.hash(state);
        self.basis.entries.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.basis.cols, self.basis.rows, &self.basis.entries).cmp(&(
            other.basis.cols,
            other.basis.rows,
            &other.basis.entries,
        ))
    }
}

impl Subspace {
    /// Canonicalizes a generator matrix (rows span the subspace).
    pub fn from_generators(mat: MatrixQ) -> Subspace {
        let mut m = mat;
        let pivots = m.rref_in_place();
        let dim = pivots.len();
        let mut entries = Vec::with_capacity(dim * m.cols());
        for i in 0..dim {
            entries.extend_from_slice(m.row(i));
        }
        Subspace {
            basis: MatrixQ {
                rows: dim,
                cols: m.cols(),
                entries,
                field: m.field().clone(),
            },
        }
    }

    /// Wraps a matrix already known to be in RREF with no zero rows.
    pub(crate) fn from_rref_unchecked(basis: MatrixQ) -> Subspace {
        debug_assert_eq!(basis.rref().entries(), basis.entries());
        Subspace { basis }
    }

    pub fn zero(field: Arc<Gfq>, ambient: usize) -> Subspace {
        Subspace {
            basis: MatrixQ::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: Arc<Gfq>, ambient: usize) -> Subspace {
        Subspace {
            basis: MatrixQ::identity(field, ambient),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> &Arc<Gfq> {
        self.basis.field()
    }

    /// Canonical generator matrix (RREF, no zero rows).
    pub fn basis(&self) -> &MatrixQ {
        &self.basis
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient_dim());
        let f = self.basis.field().as_ref();
        let mut v = v.to_vec();
        for i in 0..self.dim() {
            let pivot = self.basis.row(i).iter().position(|&e| e != 0).unwrap();
            let c = v[pivot];
            if c != 0 {
                for (j, &bj) in self.basis.row(i).iter().enumerate() {
                    v[j] = f.sub(v[j], f.mul(c, bj));
                }
            }
        }
        v.iter().all(|&e| e == 0)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        Subspace::from_generators(self.basis.vstack(&other.basis))
    }

    /// Subspace distance dim(U+V) − dim(U∩V) = 2 dim(U+V) − dim U − dim V.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::Dimension(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        let s = stack_rank(&self.basis, &other.basis)?;
        Ok(2 * s - self.dim() - other.dim())
    }

    /// Vectors of the subspace in a deterministic order (coefficient
    /// odometer over the basis rows).
    pub fn vectors(&self) -> Vec<Vec<u64>> {
        let f = self.basis.field().as_ref();
        let q = f.q();
        let r = self.dim();
        let n = self.ambient_dim();
        let count = q.pow(r as u32);
        let mut out = Vec::with_capacity(count as usize);
        for t in 0..count {
            let mut v = vec![0u64; n];
            let mut rest = t;
            for i in (0..r).rev() {
                let c = rest % q;
                rest /= q;
                if c != 0 {
                    for (j, &bj) in self.basis.row(i).iter().enumerate() {
                        v[j] = f.add(v[j], f.mul(c, bj));
                    }
                }
            }
            out.push(v);
        }
        out
    }
}

// Serialization: a matrix is {rows, cols, q, entries}; a subspace is its
// canonical basis matrix.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub q: u64,
    pub entries: Vec<u64>,
}

impl MatrixQ {
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            q: self.field.q(),
            entries: self.entries.clone(),
        }
    }

    pub fn from_json(js: &MatrixJson, field: Arc<Gfq>) -> Result<MatrixQ> {
        if field.q() != js.q {
            return Err(Error::Codebook(format!(
                "matrix is over GF({}) but the context field is GF({})",
                js.q,
                field.q()
            )));
        }
        MatrixQ::new(field, js.rows, js.cols, js.entries.clone())
    }
}

/// Enumerates all `dim`-dimensional subspaces of GF(q)^ambient in canonical
/// order. The count is checked against `cap` before anything is produced.
pub fn enumerate_subspaces(
    field: &Arc<Gfq>,
    ambient: usize,
    dim: usize,
    cap: u64,
) -> Result<SubspaceEnumerator> {
    if dim > ambient {
        return Err(Error::Domain(format!(
            "subspace dimension {dim} exceeds ambient dimension {ambient}"
        )));
    }
    let count = counting::gaussian(ambient as u32, dim as u32, field.q());
    if count > BigUint::from(cap) {
        return Err(Error::EnumerationCap {
            count: count.try_into().unwrap_or(u128::MAX),
            cap,
        });
    }
    Ok(SubspaceEnumerator {
        field: field.clone(),
        ambient,
        dim,
        pivots: (0..dim).collect(),
        odometer: Vec::new(),
        fresh_pattern: true,
        done: false,
    })
}

pub struct SubspaceEnumerator {
    field: Arc<Gfq>,
    ambient: usize,
    dim: usize,
    pivots: Vec<usize>,
    odometer: Vec<u64>,
    fresh_pattern: bool,
    done: bool,
}

impl SubspaceEnumerator {
    fn free_cells(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for (i, &p) in self.pivots.iter().enumerate() {
            for j in p + 1..self.ambient {
                if !self.pivots.contains(&j) {
                    cells.push((i, j));
                }
            }
        }
        cells
    }

    fn build(&self, cells: &[(usize, usize)]) -> Subspace {
        let mut m = MatrixQ::zeros(self.field.clone(), self.dim, self.ambient);
        for (i, &p) in self.pivots.iter().enumerate() {
            m.set(i, p, 1);
        }
        for (&(i, j), &v) in cells.iter().zip(&self.odometer) {
            m.set(i, j, v);
        }
        Subspace::from_rref_unchecked(m)
    }

    /// Lexicographic successor of the pivot combination.
    fn advance_pattern(&mut self) -> bool {
        let r = self.dim;
        let n = self.ambient;
        if r == 0 {
            return false;
        }
        let mut i = r;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if self.pivots[i] < n - (r - i) {
                self.pivots[i] += 1;
                for j in i + 1..r {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
    }
}

impl Iterator for SubspaceEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let q = self.field.q();
        let cells = self.free_cells();
        if self.fresh_pattern {
            self.odometer = vec![0; cells.len()];
            self.fresh_pattern = false;
        }
        let item = self.build(&cells);

        // advance: free entries count in base q, last cell fastest
        let mut pos = cells.len();
        loop {
            if pos == 0 {
                if !self.advance_pattern() {
                    self.done = true;
                } else {
                    self.fresh_pattern = true;
                }
                break;
            }
            pos -= 1;
            self.odometer[pos] += 1;
            if self.odometer[pos] < q {
                break;
            }
            self.odometer[pos] = 0;
        }
        Some(item)
    }
}
