//! Core data model: codewords, codesets, cooling codes of all kinds, the
//! brute-force verifier, bound calculators and persistence.

mod bounds;
mod io;
mod verify;

pub use bounds::{
    binomial, bounds, concatenation_sizes, sunflower_size, Applicability, Bounds, ConcatReport,
    SunflowerReport,
};
pub use io::{explicit_from_schema, read_code_file, save_code, to_schema, CodeFile, InnerCodeRef};
pub(crate) use io::kind_from_strings;
pub use verify::{
    is_turan_system, min_distance, verify_code, CheckResult, FailDetail, VerifyMode, VerifyOptions,
    VerifyReport,
};

use std::sync::Arc;

use crate::bits::BitWord;
use crate::error::{Error, Result};

/// A binary word on n wires, stored as its sorted support.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Codeword {
    n: usize,
    support: Vec<usize>,
}

impl Codeword {
    pub fn new(n: usize, mut support: Vec<usize>) -> Result<Codeword> {
        support.sort_unstable();
        if let Some(w) = support.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::param(format!("duplicate wire index {}", w[0])));
        }
        if let Some(&i) = support.iter().find(|&&i| i >= n) {
            return Err(Error::param(format!("wire index {i} out of range for n={n}")));
        }
        Ok(Codeword { n, support })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn to_mask(&self) -> BitWord {
        BitWord::from_support(self.n, self.support.iter().copied())
    }

    pub fn avoids(&self, hot: &HotSet) -> bool {
        // both sides sorted: merge scan
        let mut it = hot.wires().iter().peekable();
        for &s in &self.support {
            while let Some(&&h) = it.peek() {
                if h < s {
                    it.next();
                } else if h == s {
                    return false;
                } else {
                    break;
                }
            }
        }
        true
    }
}

/// The set of codewords jointly representing one message.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Codeset {
    pub codewords: Vec<Codeword>,
}

impl Codeset {
    pub fn new(codewords: Vec<Codeword>) -> Result<Codeset> {
        if codewords.is_empty() {
            return Err(Error::param("empty codeset"));
        }
        let n = codewords[0].n();
        if codewords.iter().any(|c| c.n() != n) {
            return Err(Error::param("codewords of mixed length in one codeset"));
        }
        Ok(Codeset { codewords })
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }
}

/// A set of at most t wires on which transitions are forbidden.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HotSet {
    wires: Vec<usize>,
}

impl HotSet {
    pub fn new(n: usize, mut wires: Vec<usize>) -> Result<HotSet> {
        wires.sort_unstable();
        wires.dedup();
        if let Some(&i) = wires.iter().find(|&&i| i >= n) {
            return Err(Error::param(format!("hot wire {i} out of range for n={n}")));
        }
        Ok(HotSet { wires })
    }

    pub fn empty() -> HotSet {
        HotSet::default()
    }

    pub fn len(&self) -> usize {
        self.wires.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wires.is_empty()
    }

    pub fn wires(&self) -> &[usize] {
        &self.wires
    }

    pub fn contains(&self, wire: usize) -> bool {
        self.wires.binary_search(&wire).is_ok()
    }

    pub fn to_mask(&self, n: usize) -> BitWord {
        BitWord::from_support(n, self.wires.iter().copied())
    }
}

/// What kind of code a collection of codesets claims to be. The kind fixes
/// the per-codeword weight rule the verifier applies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CodeKind {
    /// Weight at most w per codeword.
    Lpc,
    /// Weight exactly w per codeword.
    Cpc,
    /// Constant weight w, plus correction of up to e bit errors.
    Cpecc { e: usize },
    /// No weight restriction (w is carried as n).
    Cooling,
}

impl CodeKind {
    pub fn name(&self) -> &'static str {
        match self {
            CodeKind::Lpc => "lpc",
            CodeKind::Cpc => "cpc",
            CodeKind::Cpecc { .. } => "cpecc",
            CodeKind::Cooling => "cooling",
        }
    }
}

/// On-demand access to the codesets of a construction-backed code. Codes of
/// size 2^20 never materialize all codesets; the provider computes any one
/// of them from its index, and carries the construction's encoder/decoder.
pub trait CodesetProvider: Send + Sync {
    fn num_codesets(&self) -> u128;
    fn materialize(&self, index: u128) -> Result<Codeset>;
    fn encode(&self, index: u128, hot: &HotSet) -> Result<Codeword>;
    fn decode(&self, received: &Codeword) -> Result<u128>;
}

/// Descriptor for a generator-backed code, as persisted in code files.
/// Parameters mirror each construction's entry point.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "construction", content = "params", rename_all = "snake_case")]
pub enum GeneratorDescriptor {
    MdsCpc {
        q: u64,
        w: usize,
    },
    LinearCpc {
        q: u64,
        w: usize,
        /// Row-major generator matrix with entries in [0, q-1].
        generator: Vec<Vec<u64>>,
    },
    Cpecc {
        q: u64,
        w: usize,
        e: usize,
    },
    RecursiveCpc {
        q: u64,
        inner: Box<InnerCodeRef>,
    },
    LpcUnion {
        n: usize,
        t: usize,
        w: usize,
        q: u64,
    },
    SpreadCooling {
        n: usize,
        t: usize,
    },
    Construction4 {
        w: usize,
        t: usize,
        alpha: usize,
        beta: usize,
    },
    LpcFromCooling {
        cooling: SpreadParams,
        mapping: crate::domination::MappingSchema,
    },
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SpreadParams {
    pub n: usize,
    pub t: usize,
}

/// Backing storage of a code: either explicit codesets or a construction
/// descriptor paired with its live provider.
#[derive(Clone)]
pub enum CodesetSource {
    Explicit(Vec<Codeset>),
    Generator {
        descriptor: GeneratorDescriptor,
        provider: Arc<dyn CodesetProvider>,
    },
}

/// A low-power cooling code: disjoint codesets of bounded-weight words such
/// that every codeset can avoid any small hot set. Disjointness and the
/// cooling property are verified, not assumed, by [`verify_code`].
#[derive(Clone)]
pub struct LpcCode {
    pub n: usize,
    pub t: usize,
    pub w: usize,
    pub kind: CodeKind,
    source: CodesetSource,
}

impl std::fmt::Debug for LpcCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LpcCode {{ kind: {}, n: {}, t: {}, w: {}, M: {}, {} }}",
            self.kind.name(),
            self.n,
            self.t,
            self.w,
            self.num_codesets(),
            if self.is_explicit() { "explicit" } else { "generator" }
        )
    }
}

impl LpcCode {
    pub fn new_explicit(
        n: usize,
        t: usize,
        w: usize,
        kind: CodeKind,
        codesets: Vec<Codeset>,
    ) -> Result<LpcCode> {
        check_parameters(n, t, w, kind)?;
        if codesets.is_empty() {
            return Err(Error::param("a code needs at least one codeset"));
        }
        for (i, cs) in codesets.iter().enumerate() {
            for cw in &cs.codewords {
                if cw.n() != n {
                    return Err(Error::param(format!(
                        "codeset {i} carries a word of length {} in a code of length {n}",
                        cw.n()
                    )));
                }
                check_weight(kind, w, cw)
                    .map_err(|e| Error::param(format!("codeset {i}: {e}")))?;
            }
            let mut seen = std::collections::HashSet::new();
            for cw in &cs.codewords {
                if !seen.insert(cw.support().to_vec()) {
                    return Err(Error::param(format!(
                        "codeset {i} contains a repeated codeword"
                    )));
                }
            }
        }
        Ok(LpcCode {
            n,
            t,
            w,
            kind,
            source: CodesetSource::Explicit(codesets),
        })
    }

    pub fn new_generator(
        n: usize,
        t: usize,
        w: usize,
        kind: CodeKind,
        descriptor: GeneratorDescriptor,
        provider: Arc<dyn CodesetProvider>,
    ) -> Result<LpcCode> {
        check_parameters(n, t, w, kind)?;
        Ok(LpcCode {
            n,
            t,
            w,
            kind,
            source: CodesetSource::Generator {
                descriptor,
                provider,
            },
        })
    }

    pub fn source(&self) -> &CodesetSource {
        &self.source
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.source, CodesetSource::Explicit(_))
    }

    pub fn descriptor(&self) -> Option<&GeneratorDescriptor> {
        match &self.source {
            CodesetSource::Explicit(_) => None,
            CodesetSource::Generator { descriptor, .. } => Some(descriptor),
        }
    }

    pub fn num_codesets(&self) -> u128 {
        match &self.source {
            CodesetSource::Explicit(cs) => cs.len() as u128,
            CodesetSource::Generator { provider, .. } => provider.num_codesets(),
        }
    }

    pub fn codeset(&self, index: u128) -> Result<Codeset> {
        match &self.source {
            CodesetSource::Explicit(cs) => cs
                .get(usize::try_from(index).map_err(|_| bad_index(index))?)
                .cloned()
                .ok_or_else(|| bad_index(index)),
            CodesetSource::Generator { provider, .. } => {
                if index >= provider.num_codesets() {
                    return Err(bad_index(index));
                }
                provider.materialize(index)
            }
        }
    }

    /// Encodes message `index` under the hot set: returns a codeword of
    /// codeset `index` whose support avoids every hot wire.
    pub fn encode(&self, index: u128, hot: &HotSet) -> Result<Codeword> {
        if hot.len() > self.t {
            return Err(Error::param(format!(
                "hot set of size {} exceeds t = {}",
                hot.len(),
                self.t
            )));
        }
        match &self.source {
            CodesetSource::Explicit(cs) => {
                let set = cs
                    .get(usize::try_from(index).map_err(|_| bad_index(index))?)
                    .ok_or_else(|| bad_index(index))?;
                set.codewords
                    .iter()
                    .find(|cw| cw.avoids(hot))
                    .cloned()
                    .ok_or_else(|| {
                        Error::param(format!(
                            "codeset {index} has no codeword avoiding {:?}",
                            hot.wires()
                        ))
                    })
            }
            CodesetSource::Generator { provider, .. } => {
                if index >= provider.num_codesets() {
                    return Err(bad_index(index));
                }
                provider.encode(index, hot)
            }
        }
    }

    /// Materializes every codeset into an explicit code. `max_codesets`
    /// guards against expanding 2^20-codeset constructions by accident.
    pub fn to_explicit(&self, max_codesets: u128) -> Result<LpcCode> {
        let m = self.num_codesets();
        if m > max_codesets {
            return Err(Error::param(format!(
                "code has {m} codesets, above the materialization cap {max_codesets}"
            )));
        }
        let codesets = (0..m).map(|i| self.codeset(i)).collect::<Result<Vec<_>>>()?;
        LpcCode::new_explicit(self.n, self.t, self.w, self.kind, codesets)
    }

    /// Recovers the codeset index of a received word. Explicit codes look the
    /// word up; construction-backed codes run their decoder (which for
    /// error-correcting kinds tolerates corrupted words).
    pub fn decode(&self, received: &Codeword) -> Result<u128> {
        match &self.source {
            CodesetSource::Explicit(cs) => {
                for (i, set) in cs.iter().enumerate() {
                    if set.codewords.iter().any(|c| c == received) {
                        return Ok(i as u128);
                    }
                }
                Err(Error::MalformedCodeword(
                    "word is not in any codeset".into(),
                ))
            }
            CodesetSource::Generator { provider, .. } => provider.decode(received),
        }
    }
}

fn bad_index(index: u128) -> Error {
    Error::param(format!("codeset index {index} out of range"))
}

fn check_parameters(n: usize, t: usize, w: usize, kind: CodeKind) -> Result<()> {
    match kind {
        CodeKind::Cooling => {
            if w != n {
                return Err(Error::param(format!(
                    "cooling codes carry w = n; got w={w}, n={n}"
                )));
            }
            if t >= n {
                return Err(Error::param(format!("cooling code needs t < n; got t={t}, n={n}")));
            }
        }
        _ => {
            if t + w > n {
                return Err(Error::param(format!(
                    "parameters violate t + w <= n: t={t}, w={w}, n={n}"
                )));
            }
            if w == 0 {
                return Err(Error::param("w must be positive"));
            }
        }
    }
    if let CodeKind::Cpecc { e } = kind {
        if e == 0 {
            return Err(Error::param("error-correcting kind needs e >= 1"));
        }
    }
    Ok(())
}

fn check_weight(kind: CodeKind, w: usize, cw: &Codeword) -> Result<()> {
    match kind {
        CodeKind::Lpc if cw.weight() > w => Err(Error::param(format!(
            "codeword of weight {} exceeds w = {w}",
            cw.weight()
        ))),
        CodeKind::Cpc | CodeKind::Cpecc { .. } if cw.weight() != w => Err(Error::param(format!(
            "codeword of weight {} in a constant-weight code with w = {w}",
            cw.weight()
        ))),
        _ => Ok(()),
    }
}
