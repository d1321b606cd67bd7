//! Blow-up construction: an (n, t, w)-CPC code with uniform codeword weight
//! is lifted to an (nq, tq, w)-CPC code.
//!
//! The outer structure lives on a q x n wire grid: every polynomial f over
//! GF(q) of degree below w yields the block {(f(a_j), j)}, and fixing the
//! values at w-1 message points splits the blocks into q^(w-1) parallel
//! classes of q blocks each. Each block is identified with the inner code's
//! point set column by column, and every inner codeset is planted into all q
//! blocks of a class. A hot set of tq wires meets some block of each class
//! in at most t points by pigeonhole, and the inner code dodges those.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{lagrange_interpolate, Field, FieldElem, Poly};
use crate::model::{
    to_schema, CodeKind, Codeset, CodesetProvider, Codeword, GeneratorDescriptor, HotSet,
    InnerCodeRef, LpcCode,
};

#[derive(Clone)]
pub struct RecursiveCpcCode {
    field: Arc<Field>,
    q: u64,
    n_inner: usize,
    t_inner: usize,
    /// Uniform inner codeword weight; outer polynomials have degree < w.
    w: usize,
    inner: Vec<Codeset>,
    /// Lookup from an inner support to its codeset index, for decoding.
    inner_index: HashMap<Vec<usize>, usize>,
    column_points: Vec<FieldElem>,
    message_points: Vec<FieldElem>,
    vanishing: Poly,
    warnings: Vec<String>,
    descriptor: GeneratorDescriptor,
}

pub fn build_recursive(q: u64, inner: &LpcCode) -> Result<RecursiveCpcCode> {
    let sets = match inner.source() {
        crate::model::CodesetSource::Explicit(sets) => sets.clone(),
        crate::model::CodesetSource::Generator { .. } => {
            return Err(Error::param(
                "the inner code must have explicit codesets (materialize it first)",
            ))
        }
    };
    let w = sets[0].codewords[0].weight();
    for cs in &sets {
        for cw in &cs.codewords {
            if cw.weight() != w {
                return Err(Error::param(format!(
                    "inner code mixes codeword weights {w} and {}; uniform weight is required",
                    cw.weight()
                )));
            }
        }
    }
    if w == 0 {
        return Err(Error::param("inner codewords must be nonempty"));
    }
    let n_inner = inner.n;
    let t_inner = inner.t;
    let field = Arc::new(Field::new(q)?);
    if (q as u128) < (n_inner + w - 1) as u128 {
        return Err(Error::param(format!(
            "the outer field needs q >= n+w-1 distinct points; got q={q} < {}",
            n_inner + w - 1
        )));
    }
    let mut warnings = Vec::new();
    if t_inner * w < n_inner {
        warnings.push(format!(
            "inner code has t = {t_inner} < n/w = {n_inner}/{w}; the direct grid construction \
             already reaches this hot-set regime"
        ));
    }
    let column_points: Vec<FieldElem> = (0..n_inner as u32).map(FieldElem).collect();
    let message_points: Vec<FieldElem> = (n_inner as u32..(n_inner + w - 1) as u32)
        .map(FieldElem)
        .collect();
    let vanishing = Poly::from_roots(&field, &message_points);
    let mut inner_index = HashMap::new();
    for (l, cs) in sets.iter().enumerate() {
        for cw in &cs.codewords {
            inner_index.insert(cw.support().to_vec(), l);
        }
    }
    let descriptor = GeneratorDescriptor::RecursiveCpc {
        q,
        inner: Box::new(InnerCodeRef::Inline(to_schema(inner))),
    };
    Ok(RecursiveCpcCode {
        field,
        q,
        n_inner,
        t_inner,
        w,
        inner: sets,
        inner_index,
        column_points,
        message_points,
        vanishing,
        warnings,
        descriptor,
    })
}

impl std::fmt::Debug for RecursiveCpcCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "RecursiveCpcCode {{ q: {}, inner: ({}, {}, {}) x {} }}",
            self.q,
            self.n_inner,
            self.t_inner,
            self.w,
            self.inner.len()
        )
    }
}

impl RecursiveCpcCode {
    pub fn n(&self) -> usize {
        self.n_inner * self.q as usize
    }

    pub fn t(&self) -> usize {
        self.t_inner * self.q as usize
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn inner_size(&self) -> usize {
        self.inner.len()
    }

    pub fn classes(&self) -> u128 {
        (self.q as u128).pow(self.w as u32 - 1)
    }

    pub fn num_codesets(&self) -> u128 {
        self.classes() * self.inner.len() as u128
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Codeset indices flatten (class, inner codeset) as class * m + inner.
    pub fn split_index(&self, index: u128) -> Result<(u128, usize)> {
        if index >= self.num_codesets() {
            return Err(Error::param(format!(
                "codeset index {index} out of range (M = {})",
                self.num_codesets()
            )));
        }
        let m = self.inner.len() as u128;
        Ok((index / m, (index % m) as usize))
    }

    pub fn flatten_index(&self, class: u128, inner: usize) -> u128 {
        class * self.inner.len() as u128 + inner as u128
    }

    fn class_label(&self, mut class: u128) -> Vec<FieldElem> {
        (0..self.w - 1)
            .map(|_| {
                let digit = (class % self.q as u128) as u32;
                class /= self.q as u128;
                FieldElem(digit)
            })
            .collect()
    }

    fn label_to_class(&self, label: &[FieldElem]) -> u128 {
        label
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.q as u128 + c.value() as u128)
    }

    /// Values of the class anchor polynomial at every column point.
    fn anchor_values(&self, label: &[FieldElem]) -> Result<Vec<FieldElem>> {
        let points: Vec<(FieldElem, FieldElem)> = self
            .message_points
            .iter()
            .copied()
            .zip(label.iter().copied())
            .collect();
        let anchor = lagrange_interpolate(&self.field, &points)?;
        Ok(self
            .column_points
            .iter()
            .map(|&a| anchor.eval(&self.field, a))
            .collect())
    }

    /// Encodes message (class, inner codeset) under a hot set of up to
    /// t_inner * q wires: scans the class's q blocks in multiplier order for
    /// one meeting the hot set in at most t_inner grid points (pigeonhole
    /// over q disjoint blocks), pulls those points back to an inner hot set,
    /// and lifts the inner encoder's answer into the block.
    pub fn encode(&self, class: u128, inner: usize, hot: &HotSet) -> Result<Codeword> {
        if class >= self.classes() {
            return Err(Error::param(format!("class index {class} out of range")));
        }
        let Some(inner_set) = self.inner.get(inner) else {
            return Err(Error::param(format!("inner codeset {inner} out of range")));
        };
        if hot.len() > self.t() {
            return Err(Error::param(format!(
                "hot set of size {} exceeds t = {}",
                hot.len(),
                self.t()
            )));
        }
        let label = self.class_label(class);
        let anchor_vals = self.anchor_values(&label)?;
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
            let block_vals: Vec<FieldElem> = (0..self.n_inner)
                .map(|c| {
                    self.field
                        .add(anchor_vals[c], self.field.mul(scale, vanish_vals[c]))
                })
                .collect();
            let inner_hot: Vec<usize> = (0..self.n_inner)
                .filter(|&c| hot_wires[c * q + block_vals[c].value() as usize])
                .collect();
            if inner_hot.len() > self.t_inner {
                continue;
            }
            let inner_hot = HotSet::new(self.n_inner, inner_hot)?;
            let word = inner_set
                .codewords
                .iter()
                .find(|cw| cw.avoids(&inner_hot))
                .ok_or_else(|| {
                    Error::param(format!(
                        "inner codeset {inner} cannot avoid {:?}",
                        inner_hot.wires()
                    ))
                })?;
            let support: Vec<usize> = word
                .support()
                .iter()
                .map(|&c| c * q + block_vals[c].value() as usize)
                .collect();
            return Ok(Codeword::new(self.n(), support).expect("lifted support is valid"));
        }
        unreachable!("pigeonhole: a hot set of tq wires meets some of q disjoint blocks in <= t points")
    }

    /// Recovers (class, inner codeset): the block polynomial is the unique
    /// interpolant through the w support points (distinct blocks share fewer
    /// than w grid points, so the block is unambiguous), the class is its
    /// value at the message points, and the inner codeset comes from the
    /// support-column lookup.
    pub fn decode(&self, word: &Codeword) -> Result<(u128, usize)> {
        if word.n() != self.n() {
            return Err(Error::MalformedCodeword(format!(
                "word length {} does not match n = {}",
                word.n(),
                self.n()
            )));
        }
        if word.weight() != self.w {
            return Err(Error::MalformedCodeword(format!(
                "weight {} word in a weight-{} code",
                word.weight(),
                self.w
            )));
        }
        let q = self.q as usize;
        let mut points = Vec::with_capacity(self.w);
        let mut columns = Vec::with_capacity(self.w);
        for &wire in word.support() {
            let column = wire / q;
            if columns.last() == Some(&column) {
                return Err(Error::MalformedCodeword(format!(
                    "column {column} lights two wires"
                )));
            }
            columns.push(column);
            points.push((self.column_points[column], FieldElem((wire % q) as u32)));
        }
        let f = lagrange_interpolate(&self.field, &points)?;
        let label: Vec<FieldElem> = self
            .message_points
            .iter()
            .map(|&b| f.eval(&self.field, b))
            .collect();
        let inner = *self.inner_index.get(&columns).ok_or_else(|| {
            Error::MalformedCodeword("support columns do not form an inner codeword".into())
        })?;
        Ok((self.label_to_class(&label), inner))
    }

    fn materialize_pair(&self, class: u128, inner: usize) -> Result<Codeset> {
        let label = self.class_label(class);
        let anchor_vals = self.anchor_values(&label)?;
        let vanish_vals: Vec<FieldElem> = self
            .column_points
            .iter()
            .map(|&a| self.vanishing.eval(&self.field, a))
            .collect();
        let q = self.q as usize;
        let mut words = Vec::new();
        for scale in self.field.elements() {
            let block_vals: Vec<FieldElem> = (0..self.n_inner)
                .map(|c| {
                    self.field
                        .add(anchor_vals[c], self.field.mul(scale, vanish_vals[c]))
                })
                .collect();
            for cw in &self.inner[inner].codewords {
                let support: Vec<usize> = cw
                    .support()
                    .iter()
                    .map(|&c| c * q + block_vals[c].value() as usize)
                    .collect();
                words.push(Codeword::new(self.n(), support)?);
            }
        }
        Codeset::new(words)
    }

    pub fn into_code(self) -> Result<LpcCode> {
        let (n, t, w) = (self.n(), self.t(), self.w);
        let descriptor = self.descriptor.clone();
        LpcCode::new_generator(n, t, w, CodeKind::Cpc, descriptor, Arc::new(self))
    }
}

impl CodesetProvider for RecursiveCpcCode {
    fn num_codesets(&self) -> u128 {
        RecursiveCpcCode::num_codesets(self)
    }

    fn materialize(&self, index: u128) -> Result<Codeset> {
        let (class, inner) = self.split_index(index)?;
        self.materialize_pair(class, inner)
    }

    fn encode(&self, index: u128, hot: &HotSet) -> Result<Codeword> {
        let (class, inner) = self.split_index(index)?;
        RecursiveCpcCode::encode(self, class, inner, hot)
    }

    fn decode(&self, received: &Codeword) -> Result<u128> {
        let (class, inner) = RecursiveCpcCode::decode(self, received)?;
        Ok(self.flatten_index(class, inner))
    }
}

/// The single-codeset code holding every w-subset of n wires: a valid
/// (n, n-w, w)-CPC code (some w-subset dodges any t <= n-w wires).
pub fn build_trivial_inner(n: usize, w: usize) -> Result<LpcCode> {
    if w == 0 || w > n {
        return Err(Error::param(format!("need 1 <= w <= n; got n={n}, w={w}")));
    }
    let words = crate::bits::subsets_of_range(n, w)
        .into_iter()
        .map(|s| Codeword::new(n, s))
        .collect::<Result<Vec<_>>>()?;
    LpcCode::new_explicit(n, n - w, w, CodeKind::Cpc, vec![Codeset::new(words)?])
}

/// Disjoint union of the blow-ups of trivial inner codes of weights 1..=w:
/// an (nq, tq, w)-LPC code of size 1 + q + ... + q^(w-1). Codesets of
/// different weights never collide, and each sub-code handles hot sets of
/// size tq on its own.
pub fn build_lpc_union(n_inner: usize, t_inner: usize, w: usize, q: u64) -> Result<LpcCode> {
    if t_inner + w > n_inner {
        return Err(Error::param(format!(
            "need t + w <= n; got t={t_inner}, w={w}, n={n_inner}"
        )));
    }
    if w == 0 {
        return Err(Error::param("w must be positive"));
    }
    let mut parts = Vec::with_capacity(w);
    for weight in 1..=w {
        let words = crate::bits::subsets_of_range(n_inner, weight)
            .into_iter()
            .map(|s| Codeword::new(n_inner, s))
            .collect::<Result<Vec<_>>>()?;
        let inner = LpcCode::new_explicit(
            n_inner,
            t_inner,
            weight,
            CodeKind::Cpc,
            vec![Codeset::new(words)?],
        )?;
        parts.push(build_recursive(q, &inner)?);
    }
    let descriptor = GeneratorDescriptor::LpcUnion {
        n: n_inner,
        t: t_inner,
        w,
        q,
    };
    let provider = Arc::new(LpcUnionCode { parts });
    LpcCode::new_generator(
        n_inner * q as usize,
        t_inner * q as usize,
        w,
        CodeKind::Lpc,
        descriptor,
        provider,
    )
}

/// Union of per-weight blow-ups; codeset indices are offset part by part and
/// received words dispatch on their weight.
struct LpcUnionCode {
    parts: Vec<RecursiveCpcCode>,
}

impl LpcUnionCode {
    fn locate(&self, index: u128) -> Result<(usize, u128)> {
        let mut offset = 0u128;
        for (p, part) in self.parts.iter().enumerate() {
            let size = part.num_codesets();
            if index < offset + size {
                return Ok((p, index - offset));
            }
            offset += size;
        }
        Err(Error::param(format!("codeset index {index} out of range")))
    }
}

impl CodesetProvider for LpcUnionCode {
    fn num_codesets(&self) -> u128 {
        self.parts.iter().map(|p| p.num_codesets()).sum()
    }

    fn materialize(&self, index: u128) -> Result<Codeset> {
        let (p, local) = self.locate(index)?;
        self.parts[p].materialize(local)
    }

    fn encode(&self, index: u128, hot: &HotSet) -> Result<Codeword> {
        let (p, local) = self.locate(index)?;
        self.parts[p].encode_local(local, hot)
    }

    fn decode(&self, received: &Codeword) -> Result<u128> {
        let weight = received.weight();
        if weight == 0 || weight > self.parts.len() {
            return Err(Error::MalformedCodeword(format!(
                "weight {weight} matches no component (1..={})",
                self.parts.len()
            )));
        }
        let mut offset = 0u128;
        for part in &self.parts[..weight - 1] {
            offset += part.num_codesets();
        }
        Ok(offset + CodesetProvider::decode(&self.parts[weight - 1], received)?)
    }
}

impl RecursiveCpcCode {
    fn encode_local(&self, index: u128, hot: &HotSet) -> Result<Codeword> {
        let (class, inner) = self.split_index(index)?;
        RecursiveCpcCode::encode(self, class, inner, hot)
    }
}
