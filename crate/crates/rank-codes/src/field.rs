//! Exact arithmetic in a tower GF(p) ⊂ GF(q) ⊂ GF(q^m).
//!
//! Elements are stored as integer indices: the positional encoding of their
//! coefficient vector in the polynomial basis, constant term first (base p
//! for GF(q), base q for GF(q^m)). Defining irreducible polynomials are the
//! lexicographically first monic irreducibles of the right degree, so the
//! same parameters always reproduce the same field bit for bit.
//!
//! Multiplication and inversion go through discrete-log tables, which caps
//! fields at desk scale ([`DEFAULT_FIELD_CAP`], configurable per field).

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::MatrixQ;

/// Default ceiling on q^m. Raise via the `*_with_cap` constructors.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

static NEXT_FIELD_ID: AtomicU32 = AtomicU32::new(1);

fn fresh_id() -> u32 {
    NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q` as `p^k` with `p` prime, if possible.
pub fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    if !is_prime(p) {
        return None;
    }
    let mut k = 0u32;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

// ---------------------------------------------------------------------------
// Polynomial arithmetic over an abstract coefficient field, used only while
// constructing fields (irreducibility tests, generator search, table fill).
// ---------------------------------------------------------------------------

trait Coeffs {
    fn size(&self) -> u64;
    fn add(&self, a: u64, b: u64) -> u64;
    fn sub(&self, a: u64, b: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
}

/// The prime field GF(p) with elements 0..p.
struct Fp {
    p: u64,
}

impl Coeffs for Fp {
    fn size(&self) -> u64 {
        self.p
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
}

impl Coeffs for Gfq {
    fn size(&self) -> u64 {
        self.q
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        Gfq::add(self, a, b)
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        Gfq::sub(self, a, b)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        Gfq::mul(self, a, b)
    }
}

fn idx_to_coeffs(mut idx: u64, radix: u64, len: usize) -> Vec<u64> {
    let mut c = vec![0u64; len];
    for d in c.iter_mut() {
        *d = idx % radix;
        idx /= radix;
    }
    c
}

fn coeffs_to_idx(coeffs: &[u64], radix: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * radix + c)
}

fn poly_trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn poly_mul<F: Coeffs>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo a monic `modulus`.
fn poly_rem<F: Coeffs>(f: &F, a: &[u64], modulus: &[u64]) -> Vec<u64> {
    debug_assert_eq!(*modulus.last().unwrap(), 1, "modulus must be monic");
    let deg = modulus.len() - 1;
    let mut r = a.to_vec();
    poly_trim(&mut r);
    while r.len() > deg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - deg;
        for (j, &mj) in modulus.iter().enumerate().take(deg) {
            let t = f.mul(lead, mj);
            r[shift + j] = f.sub(r[shift + j], t);
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn poly_mul_mod<F: Coeffs>(f: &F, a: &[u64], b: &[u64], modulus: &[u64]) -> Vec<u64> {
    poly_rem(f, &poly_mul(f, a, b), modulus)
}

/// Trial-division irreducibility test for a monic polynomial, desk scale.
fn poly_is_irreducible<F: Coeffs>(f: &F, poly: &[u64]) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    let radix = f.size();
    for e in 1..=deg / 2 {
        let mut count = radix.pow(e as u32);
        let mut t = 0u64;
        while count > 0 {
            let mut div = idx_to_coeffs(t, radix, e);
            div.push(1); // monic divisor of degree e
            if poly_rem(f, poly, &div).is_empty() {
                return false;
            }
            t += 1;
            count -= 1;
        }
    }
    true
}

/// Lexicographically first monic irreducible of the given degree: candidates
/// are ordered by the positional index of their non-leading coefficients.
fn first_irreducible<F: Coeffs>(f: &F, degree: u32) -> Vec<u64> {
    let radix = f.size();
    let deg = degree as usize;
    let count = radix
        .checked_pow(degree)
        .expect("field construction overflow");
    for t in 0..count {
        let mut cand = idx_to_coeffs(t, radix, deg);
        cand.push(1);
        if poly_is_irreducible(f, &cand) {
            return cand;
        }
    }
    unreachable!("monic irreducibles of every degree exist over a finite field")
}

/// Finds the least generator of the multiplicative group of order `n`,
/// multiplying through `mul` on index-encoded elements.
fn find_generator(n: u64, mul: impl Fn(u64, u64) -> u64) -> u64 {
    let pow = |mut base: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let factors = prime_factors(n);
    for g in 1..=n {
        if factors.iter().all(|&f| pow(g, n / f) != 1) {
            return g;
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

// ---------------------------------------------------------------------------
// GF(q)
// ---------------------------------------------------------------------------

/// The ground field GF(q), q = p^k. Elements are indices in [0, q): the base-p
/// encoding of their coefficient vector, constant term first.
pub struct Gfq {
    p: u64,
    k: u32,
    q: u64,
    irred: Vec<u64>,
    exp: Vec<u64>,
    log: Vec<u64>,
    cap: u64,
    id: u32,
}

impl std::fmt::Debug for Gfq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gfq(q={}={}^{})", self.q, self.p, self.k)
    }
}

impl Gfq {
    pub fn new(p: u64, k: u32, cap: u64) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::Domain("extension degree k must be positive".into()));
        }
        let fp = Fp { p };
        let irred = first_irreducible(&fp, k);
        Self::with_irreducible(p, k, irred, cap)
    }

    /// Builds GF(p^k) with an explicit defining polynomial (constant first,
    /// monic, degree k, irreducible over GF(p)).
    pub fn with_irreducible(p: u64, k: u32, irred: Vec<u64>, cap: u64) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= cap)
            .ok_or(Error::CapExceeded {
                size: (p as u128).pow(k),
                cap,
            })?;
        let fp = Fp { p };
        if irred.len() != k as usize + 1 || irred.last() != Some(&1) {
            return Err(Error::Domain(format!(
                "defining polynomial must be monic of degree {k}"
            )));
        }
        if irred.iter().any(|&c| c >= p) {
            return Err(Error::Domain("polynomial coefficient out of range".into()));
        }
        if !poly_is_irreducible(&fp, &irred) {
            return Err(Error::Domain(
                "defining polynomial is reducible over GF(p)".into(),
            ));
        }

        let mul_idx = |a: u64, b: u64| -> u64 {
            let pa = idx_to_coeffs(a, p, k as usize);
            let pb = idx_to_coeffs(b, p, k as usize);
            coeffs_to_idx(&poly_mul_mod(&fp, &pa, &pb, &irred), p)
        };
        let g = find_generator(q - 1, mul_idx);
        let mut exp = vec![0u64; (q - 1) as usize];
        let mut log = vec![0u64; q as usize];
        let mut cur = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = i as u64;
            cur = mul_idx(cur, g);
        }
        debug_assert_eq!(cur, 1, "generator order mismatch");

        Ok(Arc::new(Gfq {
            p,
            k,
            q,
            irred,
            exp,
            log,
            cap,
            id: fresh_id(),
        }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn cap(&self) -> u64 {
        self.cap
    }
    pub fn id(&self) -> u32 {
        self.id
    }
    /// Defining polynomial over GF(p), constant term first.
    pub fn irreducible(&self) -> &[u64] {
        &self.irred
    }

    /// Structural equality: same (p, k, defining polynomial). Two fields that
    /// agree here have identical arithmetic on indices.
    pub fn same_field(&self, other: &Gfq) -> bool {
        self.p == other.p && self.k == other.k && self.irred == other.irred
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.k {
            out += (a % self.p + b % self.p) % self.p * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.q);
        if self.p == 2 {
            return a;
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let mut a = a;
        for _ in 0..self.k {
            out += (self.p - a % self.p) % self.p * pw;
            a /= self.p;
            pw *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % order) as usize]
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        debug_assert!(a < self.q);
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let order = self.q - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        debug_assert!(a < self.q);
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = self.q - 1;
        let e = (self.log[a as usize] as u128 * (e % order) as u128 % order as u128) as usize;
        self.exp[e]
    }
}

// ---------------------------------------------------------------------------
// GF(q^m)
// ---------------------------------------------------------------------------

/// An element of GF(q^m), tagged with the id of its field.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqmElem {
    idx: u64,
    field: u32,
}

impl FqmElem {
    /// Positional index in [0, q^m): the base-q encoding of the coefficient
    /// vector in the polynomial basis, constant term first.
    pub fn index(&self) -> u64 {
        self.idx
    }
    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }
}

impl std::fmt::Debug for FqmElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "#{}", self.idx)
    }
}

/// Description of the tower GF(p) ⊂ GF(q) ⊂ GF(q^m) with a fixed expansion
/// basis of GF(q^m) over GF(q). Immutable after construction and safe to
/// share; all element operations are pure.
pub struct FieldSpec {
    gfq: Arc<Gfq>,
    m: u32,
    qm: u64,
    irred_qm: Vec<u64>,
    basis: Vec<u64>,
    /// Maps polynomial-basis digit columns to B_m coordinates (inverse of the
    /// basis expansion matrix); `None` when the basis is the polynomial basis.
    expand_mat: Option<MatrixQ>,
    /// Maps B_m coordinates back to polynomial-basis digits.
    contract_mat: Option<MatrixQ>,
    exp: Vec<u64>,
    log: Vec<u64>,
    id: u32,
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FieldSpec(q^m={}^{}, p={}, k={})",
            self.gfq.q,
            self.m,
            self.gfq.p,
            self.gfq.k
        )
    }
}

/// Builds GF(p^k)^m with deterministic defining polynomials, the polynomial
/// expansion basis, and the default desk-scale cap.
pub fn make_field(p: u64, k: u32, m: u32) -> Result<Arc<FieldSpec>> {
    make_field_with_cap(p, k, m, DEFAULT_FIELD_CAP)
}

pub fn make_field_with_cap(p: u64, k: u32, m: u32, cap: u64) -> Result<Arc<FieldSpec>> {
    let gfq = Gfq::new(p, k, cap)?;
    FieldSpec::over(gfq, m, None, None)
}

impl FieldSpec {
    /// Builds GF(q^m) over an existing ground field. `irred_qm` and `basis`
    /// default to the lexicographically first irreducible and the polynomial
    /// basis respectively.
    pub fn over(
        gfq: Arc<Gfq>,
        m: u32,
        irred_qm: Option<Vec<u64>>,
        basis: Option<Vec<u64>>,
    ) -> Result<Arc<Self>> {
        Self::over_raw(gfq, m, irred_qm, basis).map(Arc::new)
    }

    fn over_raw(
        gfq: Arc<Gfq>,
        m: u32,
        irred_qm: Option<Vec<u64>>,
        basis: Option<Vec<u64>>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("extension degree m must be positive".into()));
        }
        let q = gfq.q();
        let cap = gfq.cap();
        let qm = q
            .checked_pow(m)
            .filter(|&qm| qm <= cap)
            .ok_or(Error::CapExceeded {
                size: (q as u128).pow(m),
                cap,
            })?;

        let irred_qm = match irred_qm {
            Some(poly) => {
                if poly.len() != m as usize + 1 || poly.last() != Some(&1) {
                    return Err(Error::Domain(format!(
                        "defining polynomial must be monic of degree {m}"
                    )));
                }
                if poly.iter().any(|&c| c >= q) {
                    return Err(Error::Domain("polynomial coefficient out of range".into()));
                }
                if !poly_is_irreducible(gfq.as_ref(), &poly) {
                    return Err(Error::Domain(
                        "defining polynomial is reducible over GF(q)".into(),
                    ));
                }
                poly
            }
            None => first_irreducible(gfq.as_ref(), m),
        };

        let mul_idx = |a: u64, b: u64| -> u64 {
            let pa = idx_to_coeffs(a, q, m as usize);
            let pb = idx_to_coeffs(b, q, m as usize);
            coeffs_to_idx(&poly_mul_mod(gfq.as_ref(), &pa, &pb, &irred_qm), q)
        };
        let g = find_generator(qm - 1, mul_idx);
        let mut exp = vec![0u64; (qm - 1) as usize];
        let mut log = vec![0u64; qm as usize];
        let mut cur = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = i as u64;
            cur = mul_idx(cur, g);
        }
        debug_assert_eq!(cur, 1, "generator order mismatch");

        // Polynomial basis 1, β, …, β^{m−1} has indices 1, q, q², …
        let poly_basis: Vec<u64> = (0..m).map(|i| q.pow(i)).collect();
        let (basis, expand_mat, contract_mat) = match basis {
            None => (poly_basis, None, None),
            Some(b) if b == poly_basis => (b, None, None),
            Some(b) => {
                if b.len() != m as usize {
                    return Err(Error::Domain(format!("basis must have {m} elements")));
                }
                if b.iter().any(|&x| x >= qm) {
                    return Err(Error::Domain("basis element out of range".into()));
                }
                // Column i holds the polynomial-basis digits of b[i].
                let mut entries = vec![0u64; (m * m) as usize];
                for (i, &bi) in b.iter().enumerate() {
                    let digits = idx_to_coeffs(bi, q, m as usize);
                    for (row, &d) in digits.iter().enumerate() {
                        entries[row * m as usize + i] = d;
                    }
                }
                let contract = MatrixQ::new(gfq.clone(), m as usize, m as usize, entries)?;
                let expand = contract.inverse().ok_or_else(|| {
                    Error::Domain("basis is not linearly independent over GF(q)".into())
                })?;
                (b, Some(expand), Some(contract))
            }
        };

        Ok(FieldSpec {
            gfq,
            m,
            qm,
            irred_qm,
            basis,
            expand_mat,
            contract_mat,
            exp,
            log,
            id: fresh_id(),
        })
    }

    /// Rebuilds the tower from serialized parts, validating everything.
    pub fn from_parts(
        p: u64,
        k: u32,
        m: u32,
        irred_q: Vec<u64>,
        irred_qm: Vec<u64>,
        basis: Vec<u64>,
        cap: u64,
    ) -> Result<Arc<Self>> {
        let gfq = Gfq::with_irreducible(p, k, irred_q, cap)?;
        FieldSpec::over(gfq, m, Some(irred_qm), Some(basis))
    }

    /// A field with the same ground field and cap but extension degree
    /// `new_m`, with deterministic defaults. Used by transposition and the
    /// full-rank extension, which move codes between tower heights.
    pub fn sibling(&self, new_m: u32) -> Result<Arc<Self>> {
        FieldSpec::over(self.gfq.clone(), new_m, None, None)
    }

    pub fn gfq(&self) -> &Arc<Gfq> {
        &self.gfq
    }
    pub fn p(&self) -> u64 {
        self.gfq.p()
    }
    pub fn k(&self) -> u32 {
        self.gfq.k()
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u64 {
        self.gfq.q()
    }
    pub fn qm(&self) -> u64 {
        self.qm
    }
    pub fn id(&self) -> u32 {
        self.id
    }
    /// Defining polynomial of GF(q^m) over GF(q), constant term first.
    pub fn irred_qm(&self) -> &[u64] {
        &self.irred_qm
    }
    /// The expansion basis B_m as element indices.
    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn same_parameters(&self, other: &FieldSpec) -> bool {
        self.gfq.same_field(&other.gfq)
            && self.m == other.m
            && self.irred_qm == other.irred_qm
            && self.basis == other.basis
    }

    pub fn elem(&self, idx: u64) -> Result<FqmElem> {
        if idx >= self.qm {
            return Err(Error::Domain(format!(
                "element index {idx} out of range for field of size {}",
                self.qm
            )));
        }
        Ok(FqmElem {
            idx,
            field: self.id,
        })
    }

    pub fn zero(&self) -> FqmElem {
        FqmElem {
            idx: 0,
            field: self.id,
        }
    }

    pub fn one(&self) -> FqmElem {
        FqmElem {
            idx: 1,
            field: self.id,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqmElem> + '_ {
        (0..self.qm).map(|idx| FqmElem {
            idx,
            field: self.id,
        })
    }

    fn own(&self, e: FqmElem) -> u64 {
        assert_eq!(
            e.field, self.id,
            "operands belong to different fields (mixed-field operation)"
        );
        e.idx
    }

    fn wrap(&self, idx: u64) -> FqmElem {
        FqmElem {
            idx,
            field: self.id,
        }
    }

    pub fn add(&self, a: FqmElem, b: FqmElem) -> FqmElem {
        let (a, b) = (self.own(a), self.own(b));
        if self.gfq.p() == 2 {
            return self.wrap(a ^ b);
        }
        let q = self.gfq.q();
        let mut out = 0u64;
        let mut pw = 1u64;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.m {
            out += self.gfq.add(a % q, b % q) * pw;
            a /= q;
            b /= q;
            pw *= q;
        }
        self.wrap(out)
    }

    pub fn neg(&self, a: FqmElem) -> FqmElem {
        let a = self.own(a);
        if self.gfq.p() == 2 {
            return self.wrap(a);
        }
        let q = self.gfq.q();
        let mut out = 0u64;
        let mut pw = 1u64;
        let mut a = a;
        for _ in 0..self.m {
            out += self.gfq.neg(a % q) * pw;
            a /= q;
            pw *= q;
        }
        self.wrap(out)
    }

    pub fn sub(&self, a: FqmElem, b: FqmElem) -> FqmElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqmElem, b: FqmElem) -> FqmElem {
        let (a, b) = (self.own(a), self.own(b));
        if a == 0 || b == 0 {
            return self.wrap(0);
        }
        let order = self.qm - 1;
        self.wrap(self.exp[((self.log[a as usize] + self.log[b as usize]) % order) as usize])
    }

    pub fn inv(&self, a: FqmElem) -> Result<FqmElem> {
        let a = self.own(a);
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let order = self.qm - 1;
        Ok(self.wrap(self.exp[((order - self.log[a as usize]) % order) as usize]))
    }

    pub fn pow(&self, a: FqmElem, e: u64) -> FqmElem {
        let a = self.own(a);
        if a == 0 {
            return self.wrap(if e == 0 { 1 } else { 0 });
        }
        let order = self.qm - 1;
        let idx = self.log[a as usize] as u128 * (e % order) as u128 % order as u128;
        self.wrap(self.exp[idx as usize])
    }

    /// Frobenius power a^{q^i}, the distinguished fast path: the exponent is
    /// reduced modulo q^m − 1 before a single table walk.
    pub fn frobenius(&self, a: FqmElem, i: u32) -> FqmElem {
        let order = self.qm - 1;
        let mut e = 1u64;
        let q = self.gfq.q() % order;
        for _ in 0..i {
            e = (e as u128 * q as u128 % order as u128) as u64;
        }
        self.pow(a, e)
    }

    /// Scales by an element of the ground field embedded in GF(q^m).
    pub fn scale(&self, c: u64, a: FqmElem) -> FqmElem {
        debug_assert!(c < self.gfq.q());
        self.mul(self.wrap(c), a)
    }

    /// Coordinates of `x` over GF(q) with respect to the expansion basis B_m
    /// (an m-entry column). The inverse of [`FieldSpec::contract`].
    pub fn expand(&self, x: FqmElem) -> Vec<u64> {
        let idx = self.own(x);
        let digits = idx_to_coeffs(idx, self.gfq.q(), self.m as usize);
        match &self.expand_mat {
            None => digits,
            Some(mat) => mat.mul_vec(&digits),
        }
    }

    /// Reassembles an element from its B_m coordinates.
    pub fn contract(&self, coords: &[u64]) -> Result<FqmElem> {
        if coords.len() != self.m as usize {
            return Err(Error::Dimension(format!(
                "expected {} coordinates, got {}",
                self.m,
                coords.len()
            )));
        }
        let q = self.gfq.q();
        if coords.iter().any(|&c| c >= q) {
            return Err(Error::Domain("coordinate out of range".into()));
        }
        let digits = match &self.contract_mat {
            None => coords.to_vec(),
            Some(mat) => mat.mul_vec(coords),
        };
        Ok(self.wrap(coeffs_to_idx(&digits, q)))
    }
}

// ---------------------------------------------------------------------------
// Serialization: {p, k, m, irred_q, irred_qm, basis} with polynomials as
// coefficient arrays, constant term first.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FieldSpecJson {
    p: u64,
    k: u32,
    m: u32,
    irred_q: Vec<u64>,
    irred_qm: Vec<u64>,
    basis: Vec<u64>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpecJson {
            p: self.p(),
            k: self.k(),
            m: self.m,
            irred_q: self.gfq.irreducible().to_vec(),
            irred_qm: self.irred_qm.clone(),
            basis: self.basis.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FieldSpecJson::deserialize(d)?;
        let gfq = Gfq::with_irreducible(raw.p, raw.k, raw.irred_q, DEFAULT_FIELD_CAP)
            .map_err(serde::de::Error::custom)?;
        FieldSpec::over_raw(gfq, raw.m, Some(raw.irred_qm), Some(raw.basis))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime() {
        assert!(matches!(make_field(4, 1, 2), Err(Error::NotPrime(4))));
        assert!(matches!(make_field(1, 1, 1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn rejects_cap_excess() {
        assert!(matches!(
            make_field_with_cap(2, 1, 30, 1 << 20),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn identity_tower() {
        // (2,1,1): GF(2) inside GF(2)
        let f = make_field(2, 1, 1).unwrap();
        assert_eq!(f.qm(), 2);
        assert_eq!(f.irred_qm(), &[0, 1]); // x
        let one = f.one();
        assert_eq!(f.mul(one, one), one);
    }

    #[test]
    fn gf4_uses_unique_irreducible() {
        // x^2 + x + 1 is the only monic degree-2 irreducible over GF(2)
        let f = make_field(2, 1, 2).unwrap();
        assert_eq!(f.irred_qm(), &[1, 1, 1]);
    }

    #[test]
    fn gf9_lex_first_irreducible() {
        // Enumeration oracle: among monic degree-2 polynomials over GF(3),
        // x^2 + 1 is the first irreducible in index order.
        let fp = Fp { p: 3 };
        let mut first = None;
        for t in 0..9u64 {
            let mut cand = idx_to_coeffs(t, 3, 2);
            cand.push(1);
            if poly_is_irreducible(&fp, &cand) {
                first = Some(cand);
                break;
            }
        }
        assert_eq!(first.unwrap(), vec![1, 0, 1]); // x^2 + 1

        let f = make_field(3, 1, 2).unwrap();
        assert_eq!(f.irred_qm(), &[1, 0, 1]);
    }

    #[test]
    fn gf4_multiplication_table() {
        // GF(4) = {0, 1, ω, ω²} with ω = index 2 and ω² = ω + 1 = index 3
        let f = make_field(2, 1, 2).unwrap();
        let w = f.elem(2).unwrap();
        let w2 = f.elem(3).unwrap();
        assert_eq!(f.mul(w, w), w2);
        assert_eq!(f.mul(w, w2), f.one());
        assert_eq!(f.add(w, f.one()), w2);
    }

    #[test]
    fn additive_identity_and_frobenius_fixpoint() {
        let f = make_field(3, 1, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.zero()), a);
            // a^{q^m} = a
            assert_eq!(f.pow(a, f.qm()), a);
        }
    }

    #[test]
    fn multiplicative_group_order() {
        for f in [
            make_field(2, 1, 3).unwrap(),
            make_field(2, 2, 2).unwrap(),
            make_field(3, 1, 2).unwrap(),
            make_field(5, 1, 1).unwrap(),
        ] {
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, f.qm() - 1), f.one());
            }
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = make_field(2, 1, 2).unwrap();
        assert!(matches!(f.inv(f.zero()), Err(Error::ZeroInverse)));
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixed_field_operands_panic() {
        let f = make_field(2, 1, 2).unwrap();
        let g = make_field(2, 1, 3).unwrap();
        let _ = f.add(f.one(), g.one());
    }

    #[test]
    fn expand_contract_roundtrip_and_linearity() {
        let f = make_field(2, 1, 3).unwrap();
        for x in f.elements() {
            let col = f.expand(x);
            assert_eq!(f.contract(&col).unwrap(), x);
        }
        // expand(0) is the zero column, basis elements give unit columns
        assert_eq!(f.expand(f.zero()), vec![0, 0, 0]);
        for (i, &b) in f.basis().to_vec().iter().enumerate() {
            let col = f.expand(f.elem(b).unwrap());
            let mut unit = vec![0u64; 3];
            unit[i] = 1;
            assert_eq!(col, unit);
        }
        // GF(q)-linearity
        for a in f.elements() {
            for b in f.elements() {
                let lhs = f.expand(f.add(a, b));
                let rhs: Vec<u64> = f
                    .expand(a)
                    .iter()
                    .zip(f.expand(b))
                    .map(|(&x, y)| f.gfq().add(x, y))
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn gf4_expand_omega_squared() {
        // polynomial basis: expand(ω²) = expand(ω + 1) = (1, 1)ᵀ
        let f = make_field(2, 1, 2).unwrap();
        assert_eq!(f.expand(f.elem(3).unwrap()), vec![1, 1]);
    }

    #[test]
    fn frobenius_matches_pow() {
        let f = make_field(2, 1, 3).unwrap();
        for a in f.elements() {
            for i in 0..4 {
                let e = f.q().pow(i);
                assert_eq!(f.frobenius(a, i), f.pow(a, e));
            }
        }
    }

    #[test]
    fn custom_basis_roundtrip() {
        // basis {1, β, β+β²} of GF(8): expansion matrix is invertible
        let gfq = Gfq::new(2, 1, DEFAULT_FIELD_CAP).unwrap();
        let f = FieldSpec::over(gfq, 3, None, Some(vec![1, 2, 6])).unwrap();
        for x in f.elements() {
            assert_eq!(f.contract(&f.expand(x)).unwrap(), x);
        }
        // dependent set rejected
        let gfq = Gfq::new(2, 1, DEFAULT_FIELD_CAP).unwrap();
        assert!(FieldSpec::over(gfq, 3, None, Some(vec![1, 2, 3])).is_err());
    }

    #[test]
    fn tower_with_k2() {
        // GF(4) ⊂ GF(16): q = 4, m = 2
        let f = make_field(2, 2, 2).unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f.qm(), 16);
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(a, 15), f.one());
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn field_spec_json_roundtrip() {
        let f = make_field(2, 1, 3).unwrap();
        let js = serde_json::to_string(f.as_ref()).unwrap();
        let back: FieldSpec = serde_json::from_str(&js).unwrap();
        assert!(back.same_parameters(&f));
    }

    #[test]
    fn prime_power_factoring() {
        assert_eq!(factor_prime_power(8), Some((2, 3)));
        assert_eq!(factor_prime_power(9), Some((3, 2)));
        assert_eq!(factor_prime_power(12), None);
        assert_eq!(factor_prime_power(1), None);
    }
}
