//! Arithmetic over GF(p^k) for prime powers q = p^k up to 2^16, polynomial
//! evaluation/interpolation, and the GF(2) kernel search used by the
//! spread-based encoders.
//!
//! Elements are numbered 0..q-1 by the base-p digit encoding of their
//! coefficient vector over the prime subfield (little-endian: digit 0 is the
//! constant term). Extension fields are built modulo the first irreducible
//! monic polynomial of degree k in that same numbering, so element numbering
//! is reproducible across runs. For GF(4) this picks x^2+x+1, for GF(8)
//! x^3+x+1, for GF(16) x^4+x+1.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::bits::BitWord;
use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// An element of the active field, numbered in [0, q-1].
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn value(self) -> u32 {
        self.0
    }
}

impl std::fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic context for GF(p^k). Immutable once built; safe to share
/// across threads. Multiplications (including inversions) are tallied in a
/// relaxed atomic counter so encoders and decoders can be cost-checked.
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Modulus coefficients, lowest degree first, length k+1; empty for k = 1.
    modulus: Vec<u32>,
    /// exp[i] = g^i for a fixed generator g, i in [0, q-2].
    exp: Vec<u32>,
    /// log[exp[i]] = i; log[0] is unused.
    log: Vec<u32>,
    mul_counter: AtomicU64,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// Splits q into (p, k) with p prime, or fails.
fn prime_power_split(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::param(format!("field size {q} is not a prime power")));
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Ok((q as u32, 1)); // q itself is prime
    }
    let mut rest = q;
    let mut k = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::param(format!("field size {q} is not a prime power")));
    }
    Ok((p as u32, k))
}

/// Multiplies two polynomials over F_p given as digit vectors, reducing
/// modulo `modulus` (monic, degree k).
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    // reduce: x^k = -(modulus without leading term)
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (j, &mj) in modulus.iter().take(k).enumerate() {
            // subtract c * mj * x^(d-k+j)
            let idx = d - k + j;
            let sub = c * mj as u64 % p as u64;
            prod[idx] = (prod[idx] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(k.max(1));
    prod.iter().map(|&c| c as u32).collect()
}

fn digits(value: u32, p: u32, k: u32) -> Vec<u32> {
    let mut v = value;
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// True when the monic polynomial (digit vector, lowest first, length deg+1)
/// has no monic divisor of degree in [1, deg/2].
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        // all monic polynomials of degree d
        let count = (p as u64).pow(d as u32);
        for c in 0..count {
            let mut div = digits(c as u32, p, d as u32);
            div.push(1);
            if poly_divides(&div, poly, p) {
                return false;
            }
        }
    }
    true
}

/// True when `div` divides `poly` exactly over F_p (both monic).
fn poly_divides(div: &[u32], poly: &[u32], p: u32) -> bool {
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    let dd = div.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let top = rem.len() - 1;
        if lead != 0 {
            for (j, &c) in div.iter().enumerate() {
                let idx = top - dd + j;
                let sub = lead * c as u64 % p as u64;
                rem[idx] = (rem[idx] + p as u64 - sub) % p as u64;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

impl Field {
    /// Builds the arithmetic context for GF(q), q = p^k <= 2^16.
    pub fn new(q: u64) -> Result<Field> {
        if q > MAX_FIELD_SIZE {
            return Err(Error::param(format!(
                "field size {q} exceeds the supported maximum {MAX_FIELD_SIZE}"
            )));
        }
        let (p, k) = prime_power_split(q)?;
        let q = q as u32;
        let modulus = if k == 1 {
            Vec::new()
        } else {
            // first irreducible monic polynomial of degree k in element order
            let mut found = None;
            for c in 0..q {
                let mut poly = digits(c, p, k);
                poly.push(1);
                if is_irreducible(&poly, p) {
                    found = Some(poly);
                    break;
                }
            }
            found.expect("an irreducible polynomial of each degree exists")
        };

        let mut field = Field {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: vec![0; q as usize],
            mul_counter: AtomicU64::new(0),
        };
        field.build_log_tables();
        Ok(field)
    }

    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            (a as u64 * b as u64 % self.p as u64) as u32
        } else {
            let da = digits(a, self.p, self.k);
            let db = digits(b, self.p, self.k);
            undigits(&poly_mul_mod(&da, &db, &self.modulus, self.p), self.p)
        }
    }

    fn build_log_tables(&mut self) {
        let order = (self.q - 1) as usize;
        'candidates: for g in 2..self.q {
            let mut exp = Vec::with_capacity(order);
            let mut x = 1u32;
            for _ in 0..order {
                exp.push(x);
                x = self.raw_mul(x, g);
                if x == 1 && exp.len() < order {
                    continue 'candidates; // order of g too small
                }
            }
            if x == 1 {
                for (i, &e) in exp.iter().enumerate() {
                    self.log[e as usize] = i as u32;
                }
                self.exp = exp;
                return;
            }
        }
        // q = 2: the multiplicative group is trivial
        assert_eq!(self.q, 2);
        self.exp = vec![1];
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    /// Modulus digit vector (lowest degree first, length k+1); empty for
    /// prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elem(&self, value: u64) -> Result<FieldElem> {
        if value < self.q as u64 {
            Ok(FieldElem(value as u32))
        } else {
            Err(Error::param(format!(
                "element {value} out of range for GF({})",
                self.q
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if self.k == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let da = digits(a.0, self.p, self.k);
        let db = digits(b.0, self.p, self.k);
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        FieldElem(undigits(&sum, self.p))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return FieldElem((self.p - a.0) % self.p);
        }
        let da = digits(a.0, self.p, self.k);
        let neg: Vec<u32> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElem(undigits(&neg, self.p))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul_counter.fetch_add(1, Ordering::Relaxed);
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let order = (self.q - 1) as u64;
        let idx = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % order.max(1);
        FieldElem(self.exp[idx as usize])
    }

    /// Multiplicative inverse; only defined for nonzero elements.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::param("zero has no multiplicative inverse"));
        }
        self.mul_counter.fetch_add(1, Ordering::Relaxed);
        let order = (self.q - 1) as u64;
        let idx = (order - self.log[a.0 as usize] as u64) % order.max(1);
        Ok(FieldElem(self.exp[idx as usize]))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Number of multiplications (and inversions) performed so far.
    pub fn mul_count(&self) -> u64 {
        self.mul_counter.load(Ordering::Relaxed)
    }
}

/// A polynomial over the active field, coefficients lowest degree first,
/// normalized to carry no trailing zeros. The zero polynomial has an empty
/// coefficient vector and degree -1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last() == Some(&FieldElem::ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    /// Horner evaluation at x.
    pub fn eval(&self, field: &Field, x: FieldElem) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, x), c);
        }
        acc
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, field: &Field, c: FieldElem) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    /// Multiplication by the linear factor (x - root).
    pub fn mul_linear(&self, field: &Field, root: FieldElem) -> Poly {
        if self.coeffs.is_empty() {
            return Poly::zero();
        }
        let neg_root = field.neg(root);
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] = field.add(out[i + 1], c);
            out[i] = field.add(out[i], field.mul(c, neg_root));
        }
        Poly::from_coeffs(out)
    }

    /// Monic product of (x - r) over the given roots.
    pub fn from_roots(field: &Field, roots: &[FieldElem]) -> Poly {
        let mut p = Poly::constant(FieldElem::ONE);
        for &r in roots {
            p = p.mul_linear(field, r);
        }
        p
    }
}

/// Unique polynomial of degree < points.len() through the given points.
/// All x must be distinct.
pub fn lagrange_interpolate(field: &Field, points: &[(FieldElem, FieldElem)]) -> Result<Poly> {
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in &points[..i] {
            if xi == xj {
                return Err(Error::param(format!(
                    "duplicate interpolation point x = {}",
                    xi.value()
                )));
            }
        }
    }
    let mut acc = Poly::zero();
    for (i, &(xi, yi)) in points.iter().enumerate() {
        if yi == FieldElem::ZERO {
            continue;
        }
        let mut num = Poly::constant(FieldElem::ONE);
        let mut den = FieldElem::ONE;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i != j {
                num = num.mul_linear(field, xj);
                den = field.mul(den, field.sub(xi, xj));
            }
        }
        let factor = field.mul(yi, field.inv(den)?);
        acc = acc.add(field, &num.scale(field, factor));
    }
    Ok(acc)
}

/// A dense matrix over the active field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixQ {
    pub rows: usize,
    pub cols: usize,
    data: Vec<FieldElem>,
}

impl MatrixQ {
    pub fn zero(rows: usize, cols: usize) -> MatrixQ {
        MatrixQ {
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Result<MatrixQ> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::param("ragged matrix rows"));
        }
        Ok(MatrixQ {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn scale_row(&mut self, field: &Field, r: usize, by: FieldElem) {
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, field.mul(v, by));
        }
    }

    /// row a -= factor * row b
    pub fn add_scaled_row(&mut self, field: &Field, a: usize, b: usize, factor: FieldElem) {
        for c in 0..self.cols {
            let v = field.add(self.get(a, c), field.mul(factor, self.get(b, c)));
            self.set(a, c, v);
        }
    }

    /// Rank of the submatrix formed by the given columns.
    #[allow(clippy::needless_range_loop)] // parallel row access
    pub fn column_rank(&self, field: &Field, cols: &[usize]) -> usize {
        let mut m: Vec<Vec<FieldElem>> = (0..self.rows)
            .map(|r| cols.iter().map(|&c| self.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for c in 0..cols.len() {
            let pivot = (rank..self.rows).find(|&r| m[r][c] != FieldElem::ZERO);
            let Some(pr) = pivot else { continue };
            m.swap(rank, pr);
            let inv = field.inv(m[rank][c]).expect("pivot nonzero");
            for r in 0..self.rows {
                if r != rank && m[r][c] != FieldElem::ZERO {
                    let factor = field.mul(m[r][c], inv);
                    for cc in 0..cols.len() {
                        let sub = field.mul(factor, m[rank][cc]);
                        m[r][cc] = field.sub(m[r][cc], sub);
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// Solves x * mat = target for a row vector x of length mat.rows, given that
/// the system is consistent and mat has full row-relevant rank; returns None
/// when no solution exists.
#[allow(clippy::needless_range_loop)] // parallel row access
pub fn solve_left(field: &Field, mat: &MatrixQ, target: &[FieldElem]) -> Option<Vec<FieldElem>> {
    assert_eq!(target.len(), mat.cols);
    // transpose into (cols x rows) augmented system: mat^T y = target^T
    let mut aug: Vec<Vec<FieldElem>> = (0..mat.cols)
        .map(|c| {
            let mut row: Vec<FieldElem> = (0..mat.rows).map(|r| mat.get(r, c)).collect();
            row.push(target[c]);
            row
        })
        .collect();
    let nrows = aug.len();
    let ncols = mat.rows;
    let mut pivot_of_col = vec![usize::MAX; ncols];
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&r| aug[r][c] != FieldElem::ZERO) else {
            continue;
        };
        aug.swap(rank, pr);
        let inv = field.inv(aug[rank][c]).expect("pivot nonzero");
        for cc in 0..=ncols {
            aug[rank][cc] = field.mul(aug[rank][cc], inv);
        }
        for r in 0..nrows {
            if r != rank && aug[r][c] != FieldElem::ZERO {
                let factor = aug[r][c];
                for cc in 0..=ncols {
                    let sub = field.mul(factor, aug[rank][cc]);
                    aug[r][cc] = field.sub(aug[r][cc], sub);
                }
            }
        }
        pivot_of_col[c] = rank;
        rank += 1;
    }
    // inconsistency: a zero row with nonzero rhs
    for row in aug.iter().skip(rank) {
        if row[ncols] != FieldElem::ZERO {
            return None;
        }
    }
    let mut x = vec![FieldElem::ZERO; ncols];
    for c in 0..ncols {
        if pivot_of_col[c] != usize::MAX {
            x[c] = aug[pivot_of_col[c]][ncols];
        }
    }
    Some(x)
}

/// Finds a nonzero GF(2) combination of the given rows summing to zero, or
/// None when the rows are independent. Bit i of the result selects row i.
/// Among all admissible combinations the one with the smallest integer
/// encoding is returned, which makes every caller deterministic.
pub fn gf2_kernel_vector(rows: &[BitWord]) -> Option<BitWord> {
    assert!(rows.len() <= 64, "kernel search limited to 64 rows");
    let mut echelon: Vec<(BitWord, u64)> = Vec::new(); // (reduced row, combination)
    let mut dependencies: Vec<u64> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut cur = row.clone();
        let mut combo = 1u64 << i;
        for (e, c) in &echelon {
            if let Some(p) = e.lowest_one() {
                if cur.len() > p && cur.get(p) {
                    cur.xor_in(e);
                    combo ^= c;
                }
            }
        }
        if cur.is_zero() {
            dependencies.push(combo);
        } else {
            echelon.push((cur, combo));
        }
    }
    if dependencies.is_empty() {
        return None;
    }
    // smallest integer in the span of the dependency combinations: build an
    // xor-basis indexed by highest bit, then take the basis vector whose
    // leading bit is lowest (it is the unique span element with that leading
    // bit, hence the minimum).
    let mut basis = [0u64; 64];
    for mut v in dependencies {
        while v != 0 {
            let h = 63 - v.leading_zeros() as usize;
            if basis[h] == 0 {
                basis[h] = v;
                break;
            }
            v ^= basis[h];
        }
    }
    let min = basis.into_iter().find(|&v| v != 0)?;
    Some(BitWord::from_u64(rows.len(), min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gf2_characteristic_two() {
        let f = Field::new(2).unwrap();
        assert_eq!(f.add(FieldElem(1), FieldElem(1)), FieldElem(0));
        assert_eq!(f.mul(FieldElem(1), FieldElem(1)), FieldElem(1));
    }

    #[test]
    fn gf4_uses_smallest_irreducible_modulus() {
        let f = Field::new(4).unwrap();
        // x^2 + x + 1
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // alpha * alpha = alpha + 1
        assert_eq!(f.mul(FieldElem(2), FieldElem(2)), FieldElem(3));
    }

    #[test]
    fn gf8_gf16_moduli() {
        assert_eq!(Field::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(Field::new(9).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn gf5_inverse() {
        let f = Field::new(5).unwrap();
        assert_eq!(f.inv(FieldElem(3)).unwrap(), FieldElem(2));
        assert!(f.inv(FieldElem(0)).is_err());
    }

    #[test]
    fn rejects_non_prime_powers_and_oversize() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(12).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new((1 << 16) + 1).is_err());
        assert!(Field::new(1 << 16).is_ok());
    }

    #[test]
    fn poly_eval_basics() {
        let f = Field::new(5).unwrap();
        assert_eq!(Poly::zero().eval(&f, FieldElem(3)), FieldElem(0));
        let p = Poly::from_coeffs(vec![FieldElem(1), FieldElem(2)]);
        assert_eq!(p.eval(&f, FieldElem(3)), FieldElem(2)); // 1 + 6 mod 5
    }

    /// Naive power-sum evaluation, kept independent of Horner.
    fn eval_naive(field: &Field, p: &Poly, x: FieldElem) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        for (i, &c) in p.coeffs.iter().enumerate() {
            acc = field.add(acc, field.mul(c, field.pow(x, i as u64)));
        }
        acc
    }

    #[test]
    fn horner_matches_naive_oracle_gf8() {
        let f = Field::new(8).unwrap();
        let p = Poly::from_coeffs(vec![FieldElem(3), FieldElem(5), FieldElem(0), FieldElem(7)]);
        for x in f.elements() {
            assert_eq!(p.eval(&f, x), eval_naive(&f, &p, x));
        }
    }

    #[test]
    fn lagrange_small_cases() {
        let f = Field::new(5).unwrap();
        let single = lagrange_interpolate(&f, &[(FieldElem(2), FieldElem(4))]).unwrap();
        assert_eq!(single, Poly::constant(FieldElem(4)));

        let p = lagrange_interpolate(
            &f,
            &[(FieldElem(0), FieldElem(1)), (FieldElem(1), FieldElem(3))],
        )
        .unwrap();
        assert_eq!(p.coeffs, vec![FieldElem(1), FieldElem(2)]);

        let dup = lagrange_interpolate(
            &f,
            &[(FieldElem(1), FieldElem(0)), (FieldElem(1), FieldElem(2))],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn lagrange_recovers_degree_five_poly_gf16() {
        let f = Field::new(16).unwrap();
        let p = Poly::from_coeffs(
            [7u32, 0, 3, 12, 1, 9].iter().map(|&c| FieldElem(c)).collect(),
        );
        let points: Vec<_> = (0..6).map(|x| (FieldElem(x), p.eval(&f, FieldElem(x)))).collect();
        assert_eq!(lagrange_interpolate(&f, &points).unwrap(), p);
    }

    #[test]
    fn kernel_of_equal_rows_is_their_sum() {
        let row = BitWord::from_support(4, [0, 2]);
        let c = gf2_kernel_vector(&[row.clone(), row]).unwrap();
        assert_eq!(c.as_u64(), 0b11);
    }

    #[test]
    fn three_rows_in_two_columns_always_dependent() {
        for bits in 0..64u64 {
            let rows: Vec<BitWord> = (0..3)
                .map(|i| BitWord::from_u64(2, bits >> (2 * i) & 0b11))
                .collect();
            let c = gf2_kernel_vector(&rows).expect("3 vectors in GF(2)^2 are dependent");
            assert!(!c.is_zero());
            let mut sum = BitWord::zero(2);
            for (i, r) in rows.iter().enumerate() {
                if c.get(i) {
                    sum.xor_in(r);
                }
            }
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn independent_rows_have_no_kernel() {
        let rows = vec![BitWord::from_u64(3, 0b001), BitWord::from_u64(3, 0b010)];
        assert!(gf2_kernel_vector(&rows).is_none());
    }

    #[test]
    fn empty_columns_give_first_row_alone() {
        // with zero columns every combination vanishes; the smallest nonzero
        // one selects just row 0
        let rows = vec![BitWord::zero(0), BitWord::zero(0), BitWord::zero(0)];
        assert_eq!(gf2_kernel_vector(&rows).unwrap().as_u64(), 1);
    }

    #[test]
    fn solve_left_roundtrip() {
        let f = Field::new(7).unwrap();
        let mat = MatrixQ::from_rows(vec![
            vec![FieldElem(1), FieldElem(2), FieldElem(3)],
            vec![FieldElem(0), FieldElem(1), FieldElem(5)],
        ])
        .unwrap();
        let x = [FieldElem(4), FieldElem(6)];
        let target: Vec<FieldElem> = (0..3)
            .map(|c| f.add(f.mul(x[0], mat.get(0, c)), f.mul(x[1], mat.get(1, c))))
            .collect();
        assert_eq!(solve_left(&f, &mat, &target).unwrap(), x.to_vec());
        // the row space is {(a, 2a+b, 3a+5b)}, which forces t2 = 5*t1; the
        // target (0,1,0) violates that and must be rejected
        let bad = vec![FieldElem(0), FieldElem(1), FieldElem(0)];
        assert!(solve_left(&f, &mat, &bad).is_none());
    }

    /// Every prime power up to 64.
    fn small_prime_powers() -> Vec<u64> {
        vec![
            2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49,
            53, 59, 61, 64,
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(qi in 0usize..27, a in 0u64..64, b in 0u64..64, c in 0u64..64) {
            let q = small_prime_powers()[qi];
            let f = Field::new(q).unwrap();
            let a = FieldElem((a % q) as u32);
            let b = FieldElem((b % q) as u32);
            let c = FieldElem((c % q) as u32);
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            if a != FieldElem::ZERO {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
            }
            prop_assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
        }

        #[test]
        fn interpolation_reproduces_points(
            qi in 0usize..27,
            seed in 0u64..1_000_000,
            npoints in 1usize..=8,
        ) {
            let q = small_prime_powers()[qi];
            let f = Field::new(q).unwrap();
            let npoints = npoints.min(q as usize);
            // deterministic scatter of distinct x values and arbitrary y values
            let mut xs: Vec<u32> = (0..q as u32).collect();
            let mut s = seed;
            for i in (1..xs.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                xs.swap(i, (s % (i as u64 + 1)) as usize);
            }
            let points: Vec<(FieldElem, FieldElem)> = xs[..npoints]
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(i as u64);
                    (FieldElem(x), FieldElem((s % q) as u32))
                })
                .collect();
            let poly = lagrange_interpolate(&f, &points).unwrap();
            prop_assert!(poly.degree() < npoints as isize);
            for (x, y) in points {
                prop_assert_eq!(poly.eval(&f, x), y);
            }
        }

        #[test]
        fn kernel_vector_annihilates_rows(rows in prop::collection::vec(0u64..16, 5)) {
            let rows: Vec<BitWord> = rows.into_iter().map(|r| BitWord::from_u64(4, r)).collect();
            let c = gf2_kernel_vector(&rows).expect("5 rows in GF(2)^4 are dependent");
            prop_assert!(!c.is_zero());
            let mut sum = BitWord::zero(4);
            for (i, r) in rows.iter().enumerate() {
                if c.get(i) {
                    sum.xor_in(r);
                }
            }
            prop_assert!(sum.is_zero());
        }
    }
}
