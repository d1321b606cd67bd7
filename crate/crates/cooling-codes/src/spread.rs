//! Cooling codes from line partitions of GF(2)^n.
//!
//! Identify GF(2)^n with GF(2^tau)^k where tau = t+1 and k = n/tau. The
//! (q^k - 1)/(q - 1) one-dimensional subspaces (lines) partition the nonzero
//! vectors, so the lines minus zero form disjoint codesets. Any t
//! coordinates impose t linear conditions on a tau-dimensional line, which
//! always leaves a nonzero vector vanishing on all of them: that is the
//! cooling property, and the encoder finds the vector by a GF(2) kernel
//! computation.
//!
//! The module also hosts the pipeline that combines these cooling codes with
//! product domination mappings into low-power cooling codes on 5w wires.

use std::sync::Arc;

use crate::bits::BitWord;
use crate::domination::{self, DominationMapping};
use crate::error::{Error, Result};
use crate::gf::{gf2_kernel_vector, Field, FieldElem};
use crate::model::{
    CodeKind, Codeset, CodesetProvider, Codeword, GeneratorDescriptor, HotSet, LpcCode,
    SpreadParams,
};

pub const MAX_SPREAD_LENGTH: usize = 64;

/// An (n, t)-cooling code whose codesets are the lines of GF(2^(t+1))^(n/(t+1))
/// minus zero. Codeset indices enumerate canonical line representatives
/// (first nonzero coordinate normalized to one) in lexicographic order.
#[derive(Clone)]
pub struct CoolingCode {
    n: usize,
    t: usize,
    tau: usize,
    k: usize,
    field: Arc<Field>,
    /// rank_prefix[j] = number of representatives on a suffix of length j.
    rank_prefix: Vec<u128>,
}

pub fn build_spread_cooling(n: usize, t: usize) -> Result<CoolingCode> {
    let tau = t + 1;
    if t == 0 || n == 0 {
        return Err(Error::param("spread cooling codes need n >= 2 and t >= 1"));
    }
    if !n.is_multiple_of(tau) {
        return Err(Error::param(format!(
            "t+1 = {tau} must divide n = {n}; line partitions only exist then \
             (partial spreads for the non-dividing case are out of scope)"
        )));
    }
    if n > MAX_SPREAD_LENGTH {
        return Err(Error::param(format!(
            "spread cooling codes are limited to n <= {MAX_SPREAD_LENGTH}"
        )));
    }
    let field = Arc::new(Field::new(1u64 << tau)?);
    let k = n / tau;
    let q = 1u128 << tau;
    let mut rank_prefix = vec![0u128; k + 1];
    for j in 1..=k {
        rank_prefix[j] = rank_prefix[j - 1] + q.pow((j - 1) as u32);
    }
    Ok(CoolingCode {
        n,
        t,
        tau,
        k,
        field,
        rank_prefix,
    })
}

impl std::fmt::Debug for CoolingCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CoolingCode {{ n: {}, t: {} }}", self.n, self.t)
    }
}

impl CoolingCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of codesets: (2^n - 1) / (2^(t+1) - 1).
    pub fn num_codesets(&self) -> u128 {
        self.rank_prefix[self.k]
    }

    /// Any integer of this many bits is a valid message index; the code is
    /// slightly larger than a power of two, so the full index range
    /// [0, num_codesets) exceeds it.
    pub fn bit_capacity(&self) -> usize {
        self.n - self.tau
    }

    /// Canonical representative of line `index`, as k coordinates over
    /// GF(2^tau).
    fn representative(&self, index: u128) -> Result<Vec<FieldElem>> {
        if index >= self.num_codesets() {
            return Err(Error::param(format!("message index {index} out of range")));
        }
        let q = 1u128 << self.tau;
        let mut coords = Vec::with_capacity(self.k);
        let mut rest_len = self.k;
        // ranks below rank_prefix[rest_len - 1] belong to zero-prefixed
        // representatives and keep their rank within the suffix
        while index < self.rank_prefix[rest_len - 1] {
            coords.push(FieldElem::ZERO);
            rest_len -= 1;
        }
        let mut s = index - self.rank_prefix[rest_len - 1];
        coords.push(FieldElem::ONE);
        let mut tail = vec![FieldElem::ZERO; rest_len - 1];
        for slot in tail.iter_mut().rev() {
            *slot = FieldElem((s % q) as u32);
            s /= q;
        }
        coords.extend(tail);
        Ok(coords)
    }

    fn index_of_representative(&self, rep: &[FieldElem]) -> u128 {
        let q = 1u128 << self.tau;
        let p = rep
            .iter()
            .position(|&c| c != FieldElem::ZERO)
            .expect("representative is nonzero");
        debug_assert_eq!(rep[p], FieldElem::ONE);
        let rest_len = self.k - p;
        let mut s = 0u128;
        for &c in &rep[p + 1..] {
            s = s * q + c.value() as u128;
        }
        self.rank_prefix[rest_len - 1] + s
    }

    /// Lays out k coordinates over GF(2^tau) as an n-bit word: coordinate i
    /// occupies bits [i*tau, (i+1)*tau), least significant digit first.
    fn word_from_coords(&self, coords: &[FieldElem]) -> BitWord {
        let mut w = BitWord::zero(self.n);
        for (i, c) in coords.iter().enumerate() {
            for s in 0..self.tau {
                if c.value() >> s & 1 == 1 {
                    w.set(i * self.tau + s, true);
                }
            }
        }
        w
    }

    fn coords_from_word(&self, word: &BitWord) -> Vec<FieldElem> {
        (0..self.k)
            .map(|i| {
                let mut v = 0u32;
                for s in 0..self.tau {
                    if word.get(i * self.tau + s) {
                        v |= 1 << s;
                    }
                }
                FieldElem(v)
            })
            .collect()
    }

    fn scale(&self, coords: &[FieldElem], by: FieldElem) -> Vec<FieldElem> {
        coords.iter().map(|&c| self.field.mul(c, by)).collect()
    }

    /// A nonzero word of line `msg` vanishing on every hot wire.
    pub fn encode(&self, msg: u128, hot: &HotSet) -> Result<Codeword> {
        if hot.len() > self.t {
            return Err(Error::param(format!(
                "hot set of size {} exceeds t = {}",
                hot.len(),
                self.t
            )));
        }
        let rep = self.representative(msg)?;
        // basis of the line over GF(2): x^s * rep for s < tau, restricted to
        // the hot coordinates
        let basis_words: Vec<BitWord> = (0..self.tau)
            .map(|s| self.word_from_coords(&self.scale(&rep, FieldElem(1 << s))))
            .collect();
        let rows: Vec<BitWord> = basis_words
            .iter()
            .map(|bw| {
                let mut row = BitWord::zero(hot.len());
                for (col, &wire) in hot.wires().iter().enumerate() {
                    row.set(col, bw.get(wire));
                }
                row
            })
            .collect();
        let combo = gf2_kernel_vector(&rows)
            .expect("t+1 basis rows restricted to t coordinates are dependent");
        let factor = FieldElem(combo.as_u64() as u32);
        let word = self.word_from_coords(&self.scale(&rep, factor));
        assert!(!word.is_zero(), "encoded cooling word must be nonzero");
        assert!(
            !word.intersects(&hot.to_mask(self.n)),
            "encoded cooling word must vanish on the hot set"
        );
        Codeword::new(self.n, word.support())
    }

    /// Line index of a word: normalize by the first nonzero coordinate and
    /// rank the representative.
    pub fn decode(&self, word: &Codeword) -> Result<u128> {
        if word.n() != self.n {
            return Err(Error::MalformedCodeword(format!(
                "word length {} does not match n = {}",
                word.n(),
                self.n
            )));
        }
        if word.weight() == 0 {
            return Err(Error::MalformedCodeword(
                "the zero word lies on every line".into(),
            ));
        }
        let coords = self.coords_from_word(&word.to_mask());
        let first = coords
            .iter()
            .find(|&&c| c != FieldElem::ZERO)
            .copied()
            .expect("nonzero word has a nonzero coordinate");
        let rep = self.scale(&coords, self.field.inv(first)?);
        Ok(self.index_of_representative(&rep))
    }

    pub fn codeset(&self, index: u128) -> Result<Codeset> {
        let rep = self.representative(index)?;
        let words = (1..1u64 << self.tau)
            .map(|e| {
                let coords = self.scale(&rep, FieldElem(e as u32));
                Codeword::new(self.n, self.word_from_coords(&coords).support())
            })
            .collect::<Result<Vec<_>>>()?;
        Codeset::new(words)
    }

    /// Wraps the cooling code in the shared code model (kind "cooling",
    /// w carried as n).
    pub fn into_code(self) -> Result<LpcCode> {
        let descriptor = GeneratorDescriptor::SpreadCooling {
            n: self.n,
            t: self.t,
        };
        let (n, t) = (self.n, self.t);
        LpcCode::new_generator(n, t, n, CodeKind::Cooling, descriptor, Arc::new(self))
    }
}

impl CodesetProvider for CoolingCode {
    fn num_codesets(&self) -> u128 {
        CoolingCode::num_codesets(self)
    }

    fn materialize(&self, index: u128) -> Result<Codeset> {
        self.codeset(index)
    }

    fn encode(&self, index: u128, hot: &HotSet) -> Result<Codeword> {
        CoolingCode::encode(self, index, hot)
    }

    fn decode(&self, received: &Codeword) -> Result<u128> {
        CoolingCode::decode(self, received)
    }
}

/// The 5w-wire low-power pipeline: a 3w-wire spread cooling code pushed
/// through the product of alpha (9,15,3) mappings and beta (12,20,4)
/// mappings. Requires 3w = 9 alpha + 12 beta and (t+1) | 3w; yields a
/// (5w, t, w)-LPC code of size (2^(3w) - 1) / (2^(t+1) - 1).
pub fn build_construction4(w: usize, t: usize, alpha: usize, beta: usize) -> Result<LpcCode> {
    if w < 6 {
        return Err(Error::param(format!("this pipeline needs w >= 6; got w={w}")));
    }
    let m = 3 * w;
    if 9 * alpha + 12 * beta != m {
        return Err(Error::param(format!(
            "3w = 9*alpha + 12*beta has no solution here: 3*{w} = {m} but 9*{alpha} + 12*{beta} = {}",
            9 * alpha + 12 * beta
        )));
    }
    let cooling = build_spread_cooling(m, t)?;
    let (phi1, _) = domination::synthesize_auto(9, 15, 3)?;
    let (phi2, _) = domination::synthesize_auto(12, 20, 4)?;
    let mut factors = Vec::with_capacity(alpha + beta);
    factors.extend(std::iter::repeat_with(|| phi1.clone()).take(alpha));
    factors.extend(std::iter::repeat_with(|| phi2.clone()).take(beta));
    let mapping = domination::product(factors)?;
    debug_assert_eq!(mapping.n(), 5 * w);
    debug_assert_eq!(mapping.w(), w);
    domination::lpc_from_cooling_with_descriptor(
        cooling,
        mapping,
        GeneratorDescriptor::Construction4 { w, t, alpha, beta },
    )
}

/// Re-export point used by the descriptor materializer.
pub fn lpc_from_cooling_params(params: &SpreadParams, mapping: DominationMapping) -> Result<LpcCode> {
    let cooling = build_spread_cooling(params.n, params.t)?;
    domination::lpc_from_cooling(cooling, mapping)
}
