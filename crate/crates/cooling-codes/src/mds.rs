//! Constant-power cooling codes from linear erasure codes.
//!
//! Take an [N, K, D] code over GF(q) whose last N-D coordinates carry a
//! rank-(K-1) block of the generator. Group codewords into codesets by that
//! suffix, truncate every codeword to its first w symbols, and place symbol
//! x_j of column j on wire (j * q + x_j) of a q x w wire grid. When
//! N-D+1 <= w <= D each codeset becomes a parallel class of q blocks
//! covering every wire exactly once, so any hot set of at most q-1 wires
//! misses at least one block: a (qw, q-1, w) constant-power cooling code of
//! size q^(K-1).
//!
//! The first-class instantiation uses the extended Reed-Solomon code with
//! N = q+1, K = w, evaluation points 0..q-1 in element order plus the
//! leading coefficient as the final coordinate. Encoding costs O(n) field
//! multiplications; decoding interpolates the w clean symbols (the rest of
//! the codeword is N-w erasures, all recoverable since N-w <= D-1) and reads
//! the codeset label back off the suffix.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{lagrange_interpolate, solve_left, Field, FieldElem, MatrixQ, Poly};
use crate::model::{
    CodeKind, Codeset, CodesetProvider, Codeword, GeneratorDescriptor, HotSet, LpcCode,
};

/// Decoder flavor: interpolation for the Reed-Solomon instantiation, linear
/// solving for arbitrary generator matrices.
#[derive(Clone, Debug)]
enum DecodePath {
    ReedSolomon {
        /// Field elements serving as the first K-2 suffix coordinates; the
        /// final suffix coordinate is the leading polynomial coefficient.
        suffix_points: Vec<FieldElem>,
    },
    Linear,
}

#[derive(Clone)]
pub struct MdsCpcCode {
    field: Arc<Field>,
    q: u64,
    w: usize,
    big_n: usize,
    k: usize,
    d: usize,
    /// Reduced generator in block form (K x N): the first K-1 rows restrict
    /// to an identity-like pivot block on the suffix, the last row is zero
    /// there and nonzero on every one of the first w coordinates.
    reduced: MatrixQ,
    /// First K-1 reduced rows restricted to the first w coordinates.
    base_trunc: Vec<Vec<FieldElem>>,
    /// Last reduced row restricted to the first w coordinates (all nonzero);
    /// scanning its q multiples walks the parallel class of a codeset.
    line_trunc: Vec<FieldElem>,
    decode_path: DecodePath,
    descriptor: GeneratorDescriptor,
}

/// Builds the (qw, q-1, w) code from the extended Reed-Solomon code with
/// N = q+1, K = w, D = q-w+2.
pub fn build_rs_cpc(q: u64, w: usize) -> Result<MdsCpcCode> {
    if w < 2 {
        return Err(Error::param(format!("w must be at least 2; got w={w}")));
    }
    let field = Arc::new(Field::new(q)?);
    if q < 2 * w as u64 - 2 {
        return Err(Error::param(format!(
            "the extended Reed-Solomon route needs q >= 2w-2; got q={q}, w={w}"
        )));
    }
    let big_n = q as usize + 1;
    let k = w;
    let d = big_n - k + 1; // MDS

    // suffix coordinates: the last w-2 field elements in element order, then
    // the leading-coefficient coordinate
    let suffix_points: Vec<FieldElem> = (q - (w as u64 - 2)..q)
        .map(|v| FieldElem(v as u32))
        .collect();

    // the codeset line direction: monic polynomial vanishing on the field
    // suffix points, degree w-2, leading-coefficient coordinate zero
    let g = Poly::from_roots(&field, &suffix_points);
    // sigma rows: Lagrange basis over the suffix points (degree <= w-3), and
    // x*g(x) for the leading-coefficient coordinate (monic, degree w-1)
    let mut rows: Vec<Poly> = Vec::with_capacity(k);
    for (i, _) in suffix_points.iter().enumerate() {
        let points: Vec<(FieldElem, FieldElem)> = suffix_points
            .iter()
            .enumerate()
            .map(|(j, &s)| (s, if i == j { FieldElem::ONE } else { FieldElem::ZERO }))
            .collect();
        rows.push(lagrange_interpolate(&field, &points)?);
    }
    rows.push(g.mul_linear(&field, FieldElem::ZERO)); // x * g
    rows.push(g);

    let eval_row = |p: &Poly| -> Vec<FieldElem> {
        let mut row: Vec<FieldElem> = (0..q).map(|v| p.eval(&field, FieldElem(v as u32))).collect();
        row.push(p.coeff(k - 1));
        row
    };
    let reduced = MatrixQ::from_rows(rows.iter().map(eval_row).collect())?;

    finish(
        field,
        q,
        w,
        big_n,
        k,
        d,
        reduced,
        DecodePath::ReedSolomon { suffix_points },
        GeneratorDescriptor::MdsCpc { q, w },
    )
}

/// Builds the code from an arbitrary generator matrix over GF(q). The
/// minimum distance is found by exhaustive scan, so inputs are restricted to
/// desk scale (N <= 24 or q^K <= 2^20). If the trailing N-D columns do not
/// already carry rank K-1, columns are permuted to put the zero-support of a
/// minimum-weight codeword last.
pub fn build_linear_cpc(q: u64, generator: &[Vec<u64>], w: usize) -> Result<MdsCpcCode> {
    let field = Arc::new(Field::new(q)?);
    let k = generator.len();
    if k < 2 {
        return Err(Error::param("the generator needs at least two rows"));
    }
    let big_n = generator[0].len();
    let rows = generator
        .iter()
        .map(|row| {
            if row.len() != big_n {
                return Err(Error::param("ragged generator matrix"));
            }
            row.iter().map(|&v| field.elem(v)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let gen = MatrixQ::from_rows(rows)?;

    let all_cols: Vec<usize> = (0..big_n).collect();
    if gen.column_rank(&field, &all_cols) != k {
        return Err(Error::param("generator rows are linearly dependent"));
    }
    let words = (q as u128).checked_pow(k as u32);
    if big_n > 24 && words.is_none_or(|c| c > 1 << 20) {
        return Err(Error::param(format!(
            "minimum-weight search needs N <= 24 or q^K <= 2^20; got N={big_n}, q^K={words:?}"
        )));
    }

    let (d, min_word) = find_min_weight(&field, &gen);
    if w > d {
        return Err(Error::param(format!(
            "w must satisfy w <= D = {d}; got w={w}"
        )));
    }
    if w + d < big_n + 1 {
        return Err(Error::param(format!(
            "w must satisfy w >= N-D+1 = {}; got w={w}",
            big_n - d + 1
        )));
    }

    // keep the input's coordinate order when its trailing block already has
    // rank K-1 (always true for MDS inputs); otherwise move the zero-support
    // of the minimum-weight codeword to the back
    let suffix_len = big_n - d;
    let trailing: Vec<usize> = (big_n - suffix_len..big_n).collect();
    let permuted = if gen.column_rank(&field, &trailing) == k - 1 {
        gen
    } else {
        let support: Vec<usize> = (0..big_n)
            .filter(|&c| min_word[c] != FieldElem::ZERO)
            .collect();
        let zeros: Vec<usize> = (0..big_n)
            .filter(|&c| min_word[c] == FieldElem::ZERO)
            .collect();
        let order: Vec<usize> = support.into_iter().chain(zeros).collect();
        let mut m = MatrixQ::zero(k, big_n);
        for r in 0..k {
            for (new_c, &old_c) in order.iter().enumerate() {
                m.set(r, new_c, gen.get(r, old_c));
            }
        }
        m
    };

    let reduced = reduce_to_block_form(&field, permuted, suffix_len)?;
    finish(
        field,
        q,
        w,
        big_n,
        k,
        d,
        reduced,
        DecodePath::Linear,
        GeneratorDescriptor::LinearCpc {
            q,
            w,
            generator: generator.to_vec(),
        },
    )
}

/// Exhaustive minimum-weight scan; returns the first minimum-weight codeword
/// in a fixed depth-first enumeration of message digit vectors.
fn find_min_weight(field: &Field, gen: &MatrixQ) -> (usize, Vec<FieldElem>) {
    let mut acc = vec![FieldElem::ZERO; gen.cols];
    let mut best = (usize::MAX, Vec::new());
    scan_codewords(field, gen, 0, &mut acc, &mut best);
    best
}

fn scan_codewords(
    field: &Field,
    gen: &MatrixQ,
    depth: usize,
    acc: &mut Vec<FieldElem>,
    best: &mut (usize, Vec<FieldElem>),
) {
    if depth == gen.rows {
        let weight = acc.iter().filter(|&&c| c != FieldElem::ZERO).count();
        if weight > 0 && weight < best.0 {
            *best = (weight, acc.clone());
        }
        return;
    }
    scan_codewords(field, gen, depth + 1, acc, best);
    let mut prev = FieldElem::ZERO;
    for v in 1..field.q() {
        let v = FieldElem(v);
        let delta = field.sub(v, prev);
        for (slot, &g) in acc.iter_mut().zip(gen.row(depth)) {
            *slot = field.add(*slot, field.mul(delta, g));
        }
        prev = v;
        scan_codewords(field, gen, depth + 1, acc, best);
    }
    for (slot, &g) in acc.iter_mut().zip(gen.row(depth)) {
        *slot = field.sub(*slot, field.mul(prev, g));
    }
}

/// Row-reduces so the trailing `suffix_len` columns carry a rank-(K-1)
/// echelon block in the first K-1 rows and the last row is zero there.
fn reduce_to_block_form(field: &Field, mut m: MatrixQ, suffix_len: usize) -> Result<MatrixQ> {
    let k = m.rows;
    let n = m.cols;
    let first_suffix = n - suffix_len;
    let mut pivot_row = 0;
    for c in first_suffix..n {
        let Some(pr) = (pivot_row..k).find(|&r| m.get(r, c) != FieldElem::ZERO) else {
            continue;
        };
        m.swap_rows(pivot_row, pr);
        let inv = field.inv(m.get(pivot_row, c))?;
        m.scale_row(field, pivot_row, inv);
        for r in 0..k {
            if r != pivot_row && m.get(r, c) != FieldElem::ZERO {
                let factor = field.neg(m.get(r, c));
                m.add_scaled_row(field, r, pivot_row, factor);
            }
        }
        pivot_row += 1;
    }
    if pivot_row != k - 1 {
        // rank K-1 is forced for a trailing block chosen off a minimum-weight
        // codeword; anything else means the input matrix was corrupted
        return Err(Error::param(format!(
            "suffix block has rank {pivot_row}, expected K-1 = {}; generator input is inconsistent",
            k - 1
        )));
    }
    // normalize the suffix-free row: leading coordinate scaled to one
    let last = k - 1;
    let lead = (0..n)
        .map(|c| m.get(last, c))
        .find(|&v| v != FieldElem::ZERO)
        .expect("generator has independent rows");
    let inv = field.inv(lead)?;
    m.scale_row(field, last, inv);
    Ok(m)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    field: Arc<Field>,
    q: u64,
    w: usize,
    big_n: usize,
    k: usize,
    d: usize,
    reduced: MatrixQ,
    decode_path: DecodePath,
    descriptor: GeneratorDescriptor,
) -> Result<MdsCpcCode> {
    let base_trunc: Vec<Vec<FieldElem>> = (0..k - 1)
        .map(|r| reduced.row(r)[..w].to_vec())
        .collect();
    let line_trunc: Vec<FieldElem> = reduced.row(k - 1)[..w].to_vec();
    assert!(
        line_trunc.iter().all(|&v| v != FieldElem::ZERO),
        "the codeset line direction must be nonzero on every grid column"
    );
    Ok(MdsCpcCode {
        field,
        q,
        w,
        big_n,
        k,
        d,
        reduced,
        base_trunc,
        line_trunc,
        decode_path,
        descriptor,
    })
}

impl std::fmt::Debug for MdsCpcCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MdsCpcCode {{ q: {}, w: {}, [N,K,D]: [{},{},{}] }}",
            self.q, self.w, self.big_n, self.k, self.d
        )
    }
}

impl MdsCpcCode {
    pub fn n(&self) -> usize {
        self.q as usize * self.w
    }

    pub fn t(&self) -> usize {
        self.q as usize - 1
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Underlying [N, K, D] parameters.
    pub fn code_params(&self) -> (usize, usize, usize) {
        (self.big_n, self.k, self.d)
    }

    pub fn num_codesets(&self) -> u128 {
        (self.q as u128).pow(self.k as u32 - 1)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Reduced block-form generator (testing and inspection).
    pub fn reduced_generator(&self) -> &MatrixQ {
        &self.reduced
    }

    /// Codeset labels are vectors of K-1 field elements; externally they are
    /// integers in base-q digit order, least significant digit first.
    pub fn index_to_label(&self, mut index: u128) -> Result<Vec<FieldElem>> {
        if index >= self.num_codesets() {
            return Err(Error::param(format!(
                "codeset index {index} out of range (M = {})",
                self.num_codesets()
            )));
        }
        let label = (0..self.k - 1)
            .map(|_| {
                let digit = (index % self.q as u128) as u32;
                index /= self.q as u128;
                FieldElem(digit)
            })
            .collect();
        Ok(label)
    }

    pub fn label_to_index(&self, label: &[FieldElem]) -> u128 {
        label
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.q as u128 + c.value() as u128)
    }

    fn check_label(&self, label: &[FieldElem]) -> Result<()> {
        if label.len() != self.k - 1 {
            return Err(Error::param(format!(
                "label must have K-1 = {} symbols; got {}",
                self.k - 1,
                label.len()
            )));
        }
        if let Some(c) = label.iter().find(|c| c.value() as u64 >= self.q) {
            return Err(Error::param(format!(
                "label symbol {} out of range for GF({})",
                c.value(),
                self.q
            )));
        }
        Ok(())
    }

    /// Truncated codeword values (one symbol per grid column) for the block
    /// with multiplier `scale` in codeset `label`.
    fn block_values(&self, base: &[FieldElem], scale: FieldElem) -> Vec<FieldElem> {
        (0..self.w)
            .map(|j| {
                self.field
                    .add(base[j], self.field.mul(scale, self.line_trunc[j]))
            })
            .collect()
    }

    fn base_values(&self, label: &[FieldElem]) -> Vec<FieldElem> {
        (0..self.w)
            .map(|j| {
                label.iter().enumerate().fold(FieldElem::ZERO, |acc, (i, &s)| {
                    self.field.add(acc, self.field.mul(s, self.base_trunc[i][j]))
                })
            })
            .collect()
    }

    fn values_to_codeword(&self, values: &[FieldElem]) -> Codeword {
        let q = self.q as usize;
        let support: Vec<usize> = values
            .iter()
            .enumerate()
            .map(|(j, &v)| j * q + v.value() as usize)
            .collect();
        Codeword::new(self.n(), support).expect("grid support is valid by construction")
    }

    /// Finds the codeword of codeset `label` avoiding the hot set: computes
    /// the truncated base word with K-1 row combinations, then scans the q
    /// parallel-class blocks in multiplier order and returns the first that
    /// misses every hot wire. A hot set of at most q-1 wires can meet at
    /// most q-1 of the q pairwise-disjoint blocks.
    pub fn encode(&self, label: &[FieldElem], hot: &HotSet) -> Result<Codeword> {
        self.check_label(label)?;
        if hot.len() > self.t() {
            return Err(Error::param(format!(
                "hot set of size {} exceeds t = {}",
                hot.len(),
                self.t()
            )));
        }
        let base = self.base_values(label);
        let q = self.q as usize;
        let mut hot_wires = vec![false; self.n()];
        for &wire in hot.wires() {
            hot_wires[wire] = true;
        }
        for scale in self.field.elements() {
            let mut clear = true;
            let mut support = Vec::with_capacity(self.w);
            for (j, (&b, &l)) in base.iter().zip(&self.line_trunc).enumerate() {
                let v = self.field.add(b, self.field.mul(scale, l));
                let wire = j * q + v.value() as usize;
                if hot_wires[wire] {
                    clear = false;
                    break;
                }
                support.push(wire);
            }
            if clear {
                return Ok(Codeword::new(self.n(), support).expect("grid support is valid"));
            }
        }
        unreachable!("a parallel class of q disjoint blocks always dodges q-1 hot wires")
    }

    /// Reads one grid value per column, erasure-decodes the underlying
    /// codeword (interpolation on the Reed-Solomon path), and returns the
    /// codeset label.
    pub fn decode(&self, word: &Codeword) -> Result<Vec<FieldElem>> {
        let values = self.column_values(word)?;
        match &self.decode_path {
            DecodePath::ReedSolomon { suffix_points } => {
                let points: Vec<(FieldElem, FieldElem)> = values
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| (FieldElem(j as u32), v))
                    .collect();
                let f = lagrange_interpolate(&self.field, &points)?;
                let mut label: Vec<FieldElem> = suffix_points
                    .iter()
                    .map(|&s| f.eval(&self.field, s))
                    .collect();
                label.push(f.coeff(self.k - 1));
                Ok(label)
            }
            DecodePath::Linear => {
                let trunc = MatrixQ::from_rows(
                    (0..self.k)
                        .map(|r| self.reduced.row(r)[..self.w].to_vec())
                        .collect(),
                )?;
                let message = solve_left(&self.field, &trunc, &values).ok_or_else(|| {
                    Error::MalformedCodeword(
                        "grid values are inconsistent with every codeword".into(),
                    )
                })?;
                Ok(message[..self.k - 1].to_vec())
            }
        }
    }

    fn column_values(&self, word: &Codeword) -> Result<Vec<FieldElem>> {
        if word.n() != self.n() {
            return Err(Error::MalformedCodeword(format!(
                "word length {} does not match n = {}",
                word.n(),
                self.n()
            )));
        }
        let q = self.q as usize;
        let mut values = vec![None; self.w];
        for &wire in word.support() {
            let column = wire / q;
            if values[column].replace(FieldElem((wire % q) as u32)).is_some() {
                return Err(Error::MalformedCodeword(format!(
                    "column {column} lights two wires; this decoder corrects erasures only"
                )));
            }
        }
        values
            .into_iter()
            .enumerate()
            .map(|(j, v)| {
                v.ok_or_else(|| {
                    Error::MalformedCodeword(format!(
                        "column {j} lights no wire; this decoder corrects erasures only"
                    ))
                })
            })
            .collect()
    }

    pub fn codeset(&self, label: &[FieldElem]) -> Result<Codeset> {
        self.check_label(label)?;
        let base = self.base_values(label);
        let words = self
            .field
            .elements()
            .map(|scale| self.values_to_codeword(&self.block_values(&base, scale)))
            .collect();
        Codeset::new(words)
    }

    pub fn into_code(self) -> Result<LpcCode> {
        let (n, t, w) = (self.n(), self.t(), self.w);
        let descriptor = self.descriptor.clone();
        LpcCode::new_generator(n, t, w, CodeKind::Cpc, descriptor, Arc::new(self))
    }
}

impl CodesetProvider for MdsCpcCode {
    fn num_codesets(&self) -> u128 {
        MdsCpcCode::num_codesets(self)
    }

    fn materialize(&self, index: u128) -> Result<Codeset> {
        self.codeset(&self.index_to_label(index)?)
    }

    fn encode(&self, index: u128, hot: &HotSet) -> Result<Codeword> {
        MdsCpcCode::encode(self, &self.index_to_label(index)?, hot)
    }

    fn decode(&self, received: &Codeword) -> Result<u128> {
        Ok(self.label_to_index(&MdsCpcCode::decode(self, received)?))
    }
}
