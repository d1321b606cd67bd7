//! Error-correcting constant-power cooling codes.
//!
//! Pick 2w-e-1 distinct field points: w column points a_j and w-e-1 message
//! points b_i. Every polynomial f of degree at most w-e-1 yields the block
//! {(f(a_j), j)} on the q x w wire grid, and the codeset of a message sigma
//! collects the q blocks of the polynomials with f(b_i) = sigma_i. Codesets
//! are parallel classes (cooling for any q-1 hot wires), and two distinct
//! blocks share at most w-e-1 grid points, so the code has minimum Hamming
//! distance at least 2e+2 and corrects e bit flips per transmission.
//!
//! Decoding reads one symbol per grid column, treats columns with zero or
//! several lit wires as erasures, and runs an error-and-erasure decoder for
//! the [w, w-e, e+1] Reed-Solomon code at the column points: e' erasures
//! leave a budget of floor((e-e')/2) symbol errors, located by the
//! Berlekamp-Welch key equations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{lagrange_interpolate, Field, FieldElem, Poly};
use crate::model::{
    CodeKind, Codeset, CodesetProvider, Codeword, GeneratorDescriptor, HotSet, LpcCode,
};

#[derive(Clone)]
pub struct CpeccCode {
    field: Arc<Field>,
    q: u64,
    w: usize,
    e: usize,
    /// Grid column j carries evaluations at column_points[j].
    column_points: Vec<FieldElem>,
    /// Message symbols are the polynomial's values at these points.
    message_points: Vec<FieldElem>,
    /// Monic polynomial vanishing on the message points; its multiples walk
    /// a codeset's parallel class.
    vanishing: Poly,
}

pub fn build_cpecc(q: u64, w: usize, e: usize) -> Result<CpeccCode> {
    if e < 1 {
        return Err(Error::param(format!("error budget e must be >= 1; got e={e}")));
    }
    if w < e + 2 {
        return Err(Error::param(format!("w must be >= e+2; got w={w}, e={e}")));
    }
    let needed = (2 * w - e - 1) as u64;
    if q < needed {
        return Err(Error::param(format!(
            "q >= 2w-e-1 distinct field points are needed; got q={q} < {needed}"
        )));
    }
    let field = Arc::new(Field::new(q)?);
    let column_points: Vec<FieldElem> = (0..w as u32).map(FieldElem).collect();
    let message_points: Vec<FieldElem> =
        (w as u32..(2 * w - e - 1) as u32).map(FieldElem).collect();
    let vanishing = Poly::from_roots(&field, &message_points);
    Ok(CpeccCode {
        field,
        q,
        w,
        e,
        column_points,
        message_points,
        vanishing,
    })
}

impl std::fmt::Debug for CpeccCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CpeccCode {{ q: {}, w: {}, e: {} }}", self.q, self.w, self.e)
    }
}

impl CpeccCode {
    pub fn n(&self) -> usize {
        self.q as usize * self.w
    }

    pub fn t(&self) -> usize {
        self.q as usize - 1
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Message length in field symbols.
    pub fn message_len(&self) -> usize {
        self.w - self.e - 1
    }

    pub fn num_codesets(&self) -> u128 {
        (self.q as u128).pow(self.message_len() as u32)
    }

    pub fn index_to_label(&self, mut index: u128) -> Result<Vec<FieldElem>> {
        if index >= self.num_codesets() {
            return Err(Error::param(format!(
                "codeset index {index} out of range (M = {})",
                self.num_codesets()
            )));
        }
        Ok((0..self.message_len())
            .map(|_| {
                let digit = (index % self.q as u128) as u32;
                index /= self.q as u128;
                FieldElem(digit)
            })
            .collect())
    }

    pub fn label_to_index(&self, label: &[FieldElem]) -> u128 {
        label
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.q as u128 + c.value() as u128)
    }

    fn check_label(&self, label: &[FieldElem]) -> Result<()> {
        if label.len() != self.message_len() {
            return Err(Error::param(format!(
                "label must have {} symbols; got {}",
                self.message_len(),
                label.len()
            )));
        }
        Ok(())
    }

    /// The polynomial of a codeset's block with the given multiplier.
    fn block_poly(&self, label: &[FieldElem], scale: FieldElem) -> Result<Poly> {
        let points: Vec<(FieldElem, FieldElem)> = self
            .message_points
            .iter()
            .copied()
            .zip(label.iter().copied())
            .collect();
        let anchor = lagrange_interpolate(&self.field, &points)?;
        Ok(anchor.add(&self.field, &self.vanishing.scale(&self.field, scale)))
    }

    fn poly_to_codeword(&self, f: &Poly) -> Codeword {
        let q = self.q as usize;
        let support: Vec<usize> = self
            .column_points
            .iter()
            .enumerate()
            .map(|(j, &a)| j * q + f.eval(&self.field, a).value() as usize)
            .collect();
        Codeword::new(self.n(), support).expect("grid support is valid by construction")
    }

    /// First block of the codeset (in multiplier order) avoiding the hot set.
    pub fn encode(&self, label: &[FieldElem], hot: &HotSet) -> Result<Codeword> {
        self.check_label(label)?;
        if hot.len() > self.t() {
            return Err(Error::param(format!(
                "hot set of size {} exceeds t = {}",
                hot.len(),
                self.t()
            )));
        }
        let points: Vec<(FieldElem, FieldElem)> = self
            .message_points
            .iter()
            .copied()
            .zip(label.iter().copied())
            .collect();
        let anchor = lagrange_interpolate(&self.field, &points)?;
        let anchor_vals: Vec<FieldElem> = self
            .column_points
            .iter()
            .map(|&a| anchor.eval(&self.field, a))
            .collect();
        let vanish_vals: Vec<FieldElem> = self
            .column_points
            .iter()
            .map(|&a| self.vanishing.eval(&self.field, a))
            .collect();
        let q = self.q as usize;
        let mut hot_wires = vec![false; self.n()];
        for &wire in hot.wires() {
            hot_wires[wire] = true;
        }
        for scale in self.field.elements() {
            let mut clear = true;
            let mut support = Vec::with_capacity(self.w);
            for j in 0..self.w {
                let v = self
                    .field
                    .add(anchor_vals[j], self.field.mul(scale, vanish_vals[j]));
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

    /// Recovers the message from a received word with up to e flipped wire
    /// bits. Columns lighting exactly one wire contribute a symbol; all
    /// others are erasures.
    pub fn decode(&self, received: &Codeword) -> Result<Vec<FieldElem>> {
        if received.n() != self.n() {
            return Err(Error::MalformedCodeword(format!(
                "word length {} does not match n = {}",
                received.n(),
                self.n()
            )));
        }
        let q = self.q as usize;
        let mut symbols: Vec<Option<FieldElem>> = vec![None; self.w];
        let mut seen_twice = vec![false; self.w];
        for &wire in received.support() {
            let column = wire / q;
            if seen_twice[column] {
                continue;
            }
            if symbols[column].replace(FieldElem((wire % q) as u32)).is_some() {
                symbols[column] = None;
                seen_twice[column] = true;
            }
        }
        let f = rs_decode_errors_erasures(
            &self.field,
            &self.column_points,
            &symbols,
            self.w - self.e,
        )?;
        Ok(self
            .message_points
            .iter()
            .map(|&b| f.eval(&self.field, b))
            .collect())
    }

    pub fn codeset(&self, label: &[FieldElem]) -> Result<Codeset> {
        self.check_label(label)?;
        let words = self
            .field
            .elements()
            .map(|scale| Ok(self.poly_to_codeword(&self.block_poly(label, scale)?)))
            .collect::<Result<Vec<_>>>()?;
        Codeset::new(words)
    }

    pub fn into_code(self) -> Result<LpcCode> {
        let (n, t, w, e) = (self.n(), self.t(), self.w, self.e);
        let descriptor = GeneratorDescriptor::Cpecc { q: self.q, w, e };
        LpcCode::new_generator(n, t, w, CodeKind::Cpecc { e }, descriptor, Arc::new(self))
    }
}

impl CodesetProvider for CpeccCode {
    fn num_codesets(&self) -> u128 {
        CpeccCode::num_codesets(self)
    }

    fn materialize(&self, index: u128) -> Result<Codeset> {
        self.codeset(&self.index_to_label(index)?)
    }

    fn encode(&self, index: u128, hot: &HotSet) -> Result<Codeword> {
        CpeccCode::encode(self, &self.index_to_label(index)?, hot)
    }

    fn decode(&self, received: &Codeword) -> Result<u128> {
        Ok(self.label_to_index(&CpeccCode::decode(self, received)?))
    }
}

/// Error-and-erasure decoding of a Reed-Solomon code: `xs` are the distinct
/// evaluation points, `received[i]` is the symbol at `xs[i]` or None for an
/// erasure, `k` the dimension. Returns the unique polynomial of degree < k
/// within the decoding budget 2*errors + erasures <= xs.len() - k, or a
/// decoding failure; it never silently returns a wrong polynomial inside the
/// budget.
pub fn rs_decode_errors_erasures(
    field: &Field,
    xs: &[FieldElem],
    received: &[Option<FieldElem>],
    k: usize,
) -> Result<Poly> {
    assert_eq!(xs.len(), received.len());
    let w = xs.len();
    if k == 0 || k > w {
        return Err(Error::param(format!("dimension k={k} out of range for length {w}")));
    }
    let clean: Vec<(FieldElem, FieldElem)> = xs
        .iter()
        .zip(received)
        .filter_map(|(&x, y)| y.map(|y| (x, y)))
        .collect();
    let erasures = w - clean.len();
    let distance_budget = w - k;
    if erasures > distance_budget {
        return Err(Error::DecodeFailure(format!(
            "{erasures} erasures exceed the budget of {distance_budget}"
        )));
    }
    let errors_allowed = (distance_budget - erasures) / 2;

    if errors_allowed == 0 {
        let f = lagrange_interpolate(field, &clean[..k])?;
        let consistent = clean[k..].iter().all(|&(x, y)| f.eval(field, x) == y);
        return if consistent && f.degree() < k as isize {
            Ok(f)
        } else {
            Err(Error::DecodeFailure(
                "received symbols are inconsistent with every codeword".into(),
            ))
        };
    }

    berlekamp_welch(field, &clean, k, errors_allowed)
}

/// Key-equation decoder: finds polynomials Q (degree < b+k) and E != 0
/// (degree <= b) with Q(x_i) = y_i E(x_i) on every clean position; when at
/// most b positions are in error, Q = f E for the transmitted f.
fn berlekamp_welch(
    field: &Field,
    clean: &[(FieldElem, FieldElem)],
    k: usize,
    b: usize,
) -> Result<Poly> {
    let m = clean.len();
    let q_terms = b + k;
    let unknowns = q_terms + b + 1;
    // rows: Q(x_i) - y_i * E(x_i) = 0
    let mut rows: Vec<Vec<FieldElem>> = Vec::with_capacity(m);
    for &(x, y) in clean {
        let mut row = Vec::with_capacity(unknowns);
        let mut pw = FieldElem::ONE;
        for _ in 0..q_terms {
            row.push(pw);
            pw = field.mul(pw, x);
        }
        let mut pw = FieldElem::ONE;
        for _ in 0..=b {
            row.push(field.neg(field.mul(y, pw)));
            pw = field.mul(pw, x);
        }
        rows.push(row);
    }
    let solution = nonzero_kernel(field, rows, unknowns)
        .ok_or_else(|| Error::DecodeFailure("key equations have no nonzero solution".into()))?;
    let q_poly = Poly::from_coeffs(solution[..q_terms].to_vec());
    let e_poly = Poly::from_coeffs(solution[q_terms..].to_vec());
    if e_poly == Poly::zero() {
        return Err(Error::DecodeFailure("degenerate error locator".into()));
    }
    let f = poly_div_exact(field, &q_poly, &e_poly).ok_or_else(|| {
        Error::DecodeFailure("error locator does not divide the key polynomial".into())
    })?;
    let mismatches = clean
        .iter()
        .filter(|&&(x, y)| f.eval(field, x) != y)
        .count();
    if f.degree() >= k as isize || mismatches > b {
        return Err(Error::DecodeFailure(format!(
            "no codeword within {b} errors of the received symbols"
        )));
    }
    Ok(f)
}

/// A nonzero kernel vector of the given row system (columns = unknowns), or
/// None when only the zero vector solves it.
#[allow(clippy::needless_range_loop)] // parallel row access
fn nonzero_kernel(field: &Field, mut rows: Vec<Vec<FieldElem>>, unknowns: usize) -> Option<Vec<FieldElem>> {
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0;
    for c in 0..unknowns {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != FieldElem::ZERO) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = field.inv(rows[rank][c]).expect("pivot nonzero");
        for cc in 0..unknowns {
            rows[rank][cc] = field.mul(rows[rank][cc], inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != FieldElem::ZERO {
                let factor = rows[r][c];
                for cc in 0..unknowns {
                    let sub = field.mul(factor, rows[rank][cc]);
                    rows[r][cc] = field.sub(rows[r][cc], sub);
                }
            }
        }
        pivot_col_of_row.push(c);
        rank += 1;
    }
    if rank == unknowns {
        return None;
    }
    // set the first free column to one, read pivots off the reduced rows
    let free = (0..unknowns).find(|c| !pivot_col_of_row.contains(c))?;
    let mut sol = vec![FieldElem::ZERO; unknowns];
    sol[free] = FieldElem::ONE;
    for (r, &pc) in pivot_col_of_row.iter().enumerate() {
        sol[pc] = field.neg(rows[r][free]);
    }
    Some(sol)
}

/// Exact polynomial division; None when the remainder is nonzero.
fn poly_div_exact(field: &Field, num: &Poly, den: &Poly) -> Option<Poly> {
    if den.coeffs.is_empty() {
        return None;
    }
    let mut rem = num.coeffs.clone();
    let dd = den.coeffs.len() - 1;
    let lead_inv = field.inv(*den.coeffs.last().unwrap()).ok()?;
    if rem.len() < den.coeffs.len() {
        return if rem.is_empty() { Some(Poly::zero()) } else { None };
    }
    let mut quot = vec![FieldElem::ZERO; rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let factor = field.mul(rem[top], lead_inv);
        quot[top - dd] = factor;
        if factor != FieldElem::ZERO {
            for (j, &dc) in den.coeffs.iter().enumerate() {
                let sub = field.mul(factor, dc);
                rem[top - dd + j] = field.sub(rem[top - dd + j], sub);
            }
        }
    }
    if rem.iter().any(|&c| c != FieldElem::ZERO) {
        return None;
    }
    Some(Poly::from_coeffs(quot))
}

/// Brute-force error-and-erasure reference decoder: tries every error
/// location set of admissible size as additional erasures and keeps the
/// interpolation that matches all remaining symbols. Used as the oracle the
/// key-equation decoder is checked against.
pub fn rs_decode_bruteforce(
    field: &Field,
    xs: &[FieldElem],
    received: &[Option<FieldElem>],
    k: usize,
) -> Result<Poly> {
    let w = xs.len();
    let clean: Vec<(FieldElem, FieldElem)> = xs
        .iter()
        .zip(received)
        .filter_map(|(&x, y)| y.map(|y| (x, y)))
        .collect();
    let erasures = w - clean.len();
    if k > w || erasures > w - k {
        return Err(Error::DecodeFailure("too many erasures".into()));
    }
    let b = (w - k - erasures) / 2;
    let positions: Vec<usize> = (0..clean.len()).collect();
    for wrong in 0..=b {
        for error_set in crate::bits::Combinations::new(&positions, wrong) {
            let kept: Vec<(FieldElem, FieldElem)> = positions
                .iter()
                .filter(|p| !error_set.contains(p))
                .map(|&p| clean[p])
                .collect();
            let f = lagrange_interpolate(field, &kept[..k])?;
            if f.degree() < k as isize && kept[k..].iter().all(|&(x, y)| f.eval(field, x) == y) {
                return Ok(f);
            }
        }
    }
    Err(Error::DecodeFailure(
        "no codeword within the error budget".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::subsets_of_range;
    use crate::model::{min_distance, verify_code, VerifyMode, VerifyOptions};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parameter_checks() {
        let code = build_cpecc(8, 4, 1).unwrap();
        assert_eq!((code.n(), code.t(), code.w(), code.e()), (32, 7, 4, 1));
        assert_eq!(code.num_codesets(), 64);

        let code = build_cpecc(5, 3, 1).unwrap();
        assert_eq!((code.n(), code.t()), (15, 4));
        assert_eq!(code.num_codesets(), 5);

        let err = build_cpecc(4, 4, 1).unwrap_err().to_string();
        assert!(err.contains("2w-e-1"), "{err}");
        assert!(build_cpecc(8, 4, 0).is_err());
        assert!(build_cpecc(8, 2, 1).is_err());
    }

    #[test]
    fn zero_message_with_empty_hot_set_is_the_zero_polynomial_block() {
        let code = build_cpecc(8, 4, 1).unwrap();
        let label = vec![FieldElem::ZERO; 2];
        let word = code.encode(&label, &HotSet::empty()).unwrap();
        // the multiplier scan starts at zero, and the zero polynomial lights
        // wire value 0 in every column
        let expected: Vec<usize> = (0..4).map(|j| j * 8).collect();
        assert_eq!(word.support(), &expected[..]);
    }

    #[test]
    fn exhaustive_avoidance_sweep_15_4_3_1() {
        let code = build_cpecc(5, 3, 1).unwrap();
        for idx in 0..code.num_codesets() {
            let label = code.index_to_label(idx).unwrap();
            for hot in subsets_of_range(15, 4) {
                let hot = HotSet::new(15, hot).unwrap();
                let word = code.encode(&label, &hot).unwrap();
                assert!(word.avoids(&hot));
            }
        }
    }

    #[test]
    fn verification_and_min_distance_15_4_3_1() {
        let lpc = build_cpecc(5, 3, 1).unwrap().into_code().unwrap();
        let report = verify_code(&lpc, VerifyMode::Exhaustive, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(min_distance(&lpc, 1_000_000).unwrap() >= 4);
    }

    #[test]
    fn codesets_are_parallel_classes_with_q_to_the_w_minus_e_words() {
        let code = build_cpecc(5, 3, 1).unwrap();
        let mut all_words = std::collections::HashSet::new();
        for idx in 0..code.num_codesets() {
            let cs = code.codeset(&code.index_to_label(idx).unwrap()).unwrap();
            assert_eq!(cs.len(), 5);
            let mut wires = std::collections::HashSet::new();
            for cw in &cs.codewords {
                assert_eq!(cw.weight(), 3);
                assert!(cw.support().iter().all(|&w| wires.insert(w)));
                assert!(all_words.insert(cw.support().to_vec()));
            }
            assert_eq!(wires.len(), 15);
        }
        assert_eq!(all_words.len(), 25); // q^(w-e)
    }

    /// First-principles oracle: enumerate every polynomial of degree below
    /// w-e and group its grid word by the values at the message points; the
    /// materialized codesets must match exactly.
    #[test]
    fn codesets_match_direct_polynomial_enumeration() {
        use std::collections::{HashMap, HashSet};
        for (q, w, e) in [(5u64, 3usize, 1usize), (8, 4, 1), (7, 4, 2)] {
            let code = build_cpecc(q, w, e).unwrap();
            let field = Field::new(q).unwrap();
            let deg = w - e; // number of coefficients
            let mut groups: HashMap<Vec<u32>, HashSet<Vec<usize>>> = HashMap::new();
            let mut coeffs = vec![FieldElem::ZERO; deg];
            loop {
                let poly = Poly::from_coeffs(coeffs.clone());
                let support: Vec<usize> = (0..w)
                    .map(|j| j * q as usize + poly.eval(&field, FieldElem(j as u32)).value() as usize)
                    .collect();
                let label: Vec<u32> = (w as u32..(2 * w - e - 1) as u32)
                    .map(|b| poly.eval(&field, FieldElem(b)).value())
                    .collect();
                groups.entry(label).or_default().insert(support);
                let mut carry = true;
                for digit in coeffs.iter_mut() {
                    if carry {
                        let next = digit.value() + 1;
                        *digit = if next as u64 == q {
                            FieldElem::ZERO
                        } else {
                            carry = false;
                            FieldElem(next)
                        };
                    }
                }
                if carry {
                    break;
                }
            }
            assert_eq!(groups.len() as u128, code.num_codesets());
            for (label, expected) in groups {
                let label: Vec<FieldElem> = label.into_iter().map(FieldElem).collect();
                let got: HashSet<Vec<usize>> = code
                    .codeset(&label)
                    .unwrap()
                    .codewords
                    .iter()
                    .map(|cw| cw.support().to_vec())
                    .collect();
                assert_eq!(got, expected, "q={q} w={w} e={e} label {label:?}");
            }
        }
    }

    #[test]
    fn plain_and_erasure_only_decoding() {
        let field = Field::new(8).unwrap();
        let xs: Vec<FieldElem> = (0..4).map(FieldElem).collect();
        let f = Poly::from_coeffs(vec![FieldElem(3), FieldElem(5), FieldElem(1)]);
        let clean: Vec<Option<FieldElem>> = xs.iter().map(|&x| Some(f.eval(&field, x))).collect();
        assert_eq!(rs_decode_errors_erasures(&field, &xs, &clean, 3).unwrap(), f);

        let mut erased = clean.clone();
        erased[2] = None;
        assert_eq!(rs_decode_errors_erasures(&field, &xs, &erased, 3).unwrap(), f);

        let mut too_many = clean;
        too_many[1] = None;
        too_many[2] = None;
        assert!(rs_decode_errors_erasures(&field, &xs, &too_many, 3).is_err());
    }

    #[test]
    fn single_value_flip_recovered_for_every_codeword_and_position() {
        // RS layer of the (32,7,4,1) code: length 4, dimension 3, one error
        // after zero erasures is beyond budget (floor(1/2) = 0), so check
        // erasure handling instead at the wire level in decode tests below;
        // here exercise a [5,3] code with budget 1 directly.
        let field = Field::new(8).unwrap();
        let xs: Vec<FieldElem> = (0..5).map(FieldElem).collect();
        for c0 in 0..8 {
            for c1 in 0..8 {
                let f = Poly::from_coeffs(vec![FieldElem(c0), FieldElem(c1), FieldElem(2)]);
                let sent: Vec<FieldElem> = xs.iter().map(|&x| f.eval(&field, x)).collect();
                for pos in 0..5 {
                    for wrong in field.elements().filter(|&v| v != sent[pos]) {
                        let mut rx: Vec<Option<FieldElem>> =
                            sent.iter().map(|&y| Some(y)).collect();
                        rx[pos] = Some(wrong);
                        let got = rs_decode_errors_erasures(&field, &xs, &rx, 3).unwrap();
                        assert_eq!(got, f, "flip at {pos}");
                        let oracle = rs_decode_bruteforce(&field, &xs, &rx, 3).unwrap();
                        assert_eq!(oracle, f);
                    }
                }
            }
        }
    }

    #[test]
    fn key_equation_decoder_agrees_with_bruteforce_oracle() {
        let field = Field::new(9).unwrap();
        let xs: Vec<FieldElem> = (0..7).map(FieldElem).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let rx: Vec<Option<FieldElem>> = (0..7)
                .map(|_| {
                    if rng.gen_ratio(1, 8) {
                        None
                    } else {
                        Some(FieldElem(rng.gen_range(0..9)))
                    }
                })
                .collect();
            let main = rs_decode_errors_erasures(&field, &xs, &rx, 3);
            let oracle = rs_decode_bruteforce(&field, &xs, &rx, 3);
            match (main, oracle) {
                (Ok(a), Ok(b)) => assert_eq!(a, b),
                (Err(_), Err(_)) => {}
                (a, b) => panic!("decoders disagree: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn every_single_bit_flip_is_corrected_15_4_3_1() {
        let code = build_cpecc(5, 3, 1).unwrap();
        for idx in 0..code.num_codesets() {
            let label = code.index_to_label(idx).unwrap();
            let cs = code.codeset(&label).unwrap();
            for cw in &cs.codewords {
                assert_eq!(code.decode(cw).unwrap(), label, "uncorrupted round trip");
                for wire in 0..code.n() {
                    let mut support = cw.support().to_vec();
                    match support.iter().position(|&s| s == wire) {
                        Some(p) => {
                            support.remove(p);
                        }
                        None => support.push(wire),
                    }
                    let corrupted = Codeword::new(code.n(), support).unwrap();
                    assert_eq!(code.decode(&corrupted).unwrap(), label, "flip {wire}");
                }
            }
        }
    }

    #[test]
    fn randomized_avoidance_sweep_32_7_4_1() {
        let code = build_cpecc(8, 4, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for idx in 0..code.num_codesets() {
            let label = code.index_to_label(idx).unwrap();
            for _ in 0..1000 {
                let hot: Vec<usize> = rand::seq::index::sample(&mut rng, 32, 7).into_vec();
                let hot = HotSet::new(32, hot).unwrap();
                assert!(code.encode(&label, &hot).unwrap().avoids(&hot));
            }
        }
    }

    #[test]
    fn e_2_instance_has_distance_six_and_corrects_single_flips() {
        let code = build_cpecc(8, 5, 2).unwrap();
        let lpc = code.clone().into_code().unwrap();
        assert!(min_distance(&lpc, 1_000_000).unwrap() >= 6); // 2e+2
        for idx in 0..code.num_codesets() {
            let label = code.index_to_label(idx).unwrap();
            for cw in &code.codeset(&label).unwrap().codewords {
                for wire in 0..code.n() {
                    let mut support = cw.support().to_vec();
                    match support.iter().position(|&s| s == wire) {
                        Some(p) => {
                            support.remove(p);
                        }
                        None => support.push(wire),
                    }
                    let corrupted = Codeword::new(code.n(), support).unwrap();
                    assert_eq!(code.decode(&corrupted).unwrap(), label);
                }
            }
        }
    }

    #[test]
    fn every_double_bit_flip_is_corrected_at_e_2() {
        let code = build_cpecc(8, 5, 2).unwrap();
        assert_eq!((code.n(), code.t(), code.w(), code.e()), (40, 7, 5, 2));
        let wire_pairs = subsets_of_range(code.n(), 2);
        for idx in 0..code.num_codesets() {
            let label = code.index_to_label(idx).unwrap();
            for cw in &code.codeset(&label).unwrap().codewords {
                let base: std::collections::BTreeSet<usize> =
                    cw.support().iter().copied().collect();
                for pair in &wire_pairs {
                    let mut support = base.clone();
                    for &wire in pair {
                        if !support.remove(&wire) {
                            support.insert(wire);
                        }
                    }
                    let corrupted =
                        Codeword::new(code.n(), support.into_iter().collect()).unwrap();
                    assert_eq!(code.decode(&corrupted).unwrap(), label, "flips {pair:?}");
                }
            }
        }
    }

    #[test]
    fn beyond_budget_corruption_never_panics() {
        let code = build_cpecc(5, 3, 1).unwrap();
        let label = code.index_to_label(3).unwrap();
        let cw = &code.codeset(&label).unwrap().codewords[0];
        // two flips in one column: drop the column's wire, add another
        let mut support = cw.support().to_vec();
        let dropped = support.remove(0);
        support.push(if dropped.is_multiple_of(5) { dropped + 1 } else { dropped - 1 });
        let corrupted = Codeword::new(code.n(), support).unwrap();
        let _ = code.decode(&corrupted); // outcome is unspecified beyond e
    }
}
