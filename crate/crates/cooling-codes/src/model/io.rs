//! Code file persistence. The format is JSON: header fields `version`,
//! `kind` ("lpc" | "cpc" | "cpecc" | "cooling"), `n`, `t`, `w`, optional `e`,
//! and either explicit `codesets` (arrays of arrays of 0-based wire indices)
//! or a `generator` descriptor for codes materialized on demand.

use std::path::Path;

use super::{CodeKind, Codeset, Codeword, CodesetSource, GeneratorDescriptor, LpcCode};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CodeFile {
    pub version: u32,
    pub kind: String,
    pub n: usize,
    pub t: usize,
    pub w: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codesets: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorDescriptor>,
}

/// An inner code for the recursive construction: either a path to a code
/// file or the code object inlined.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum InnerCodeRef {
    Path(String),
    Inline(CodeFile),
}

pub(crate) fn kind_to_string(kind: CodeKind) -> (String, Option<usize>) {
    match kind {
        CodeKind::Cpecc { e } => ("cpecc".into(), Some(e)),
        k => (k.name().into(), None),
    }
}

pub(crate) fn kind_from_strings(kind: &str, e: Option<usize>) -> Result<CodeKind> {
    match (kind, e) {
        ("lpc", None) => Ok(CodeKind::Lpc),
        ("cpc", None) => Ok(CodeKind::Cpc),
        ("cooling", None) => Ok(CodeKind::Cooling),
        ("cpecc", Some(e)) if e >= 1 => Ok(CodeKind::Cpecc { e }),
        ("cpecc", _) => Err(Error::InvalidFile(
            "kind \"cpecc\" requires a field e >= 1".into(),
        )),
        (k, Some(_)) if matches!(k, "lpc" | "cpc" | "cooling") => Err(Error::InvalidFile(format!(
            "field e is only valid for kind \"cpecc\", not \"{k}\""
        ))),
        (k, _) => Err(Error::InvalidFile(format!(
            "unknown kind \"{k}\" (expected lpc, cpc, cpecc or cooling)"
        ))),
    }
}

pub fn to_schema(code: &LpcCode) -> CodeFile {
    let (kind, e) = kind_to_string(code.kind);
    let (codesets, generator) = match code.source() {
        CodesetSource::Explicit(sets) => (
            Some(
                sets.iter()
                    .map(|cs| {
                        cs.codewords
                            .iter()
                            .map(|cw| cw.support().to_vec())
                            .collect()
                    })
                    .collect(),
            ),
            None,
        ),
        CodesetSource::Generator { descriptor, .. } => (None, Some(descriptor.clone())),
    };
    CodeFile {
        version: 1,
        kind,
        n: code.n,
        t: code.t,
        w: code.w,
        e,
        codesets,
        generator,
    }
}

pub fn save_code(code: &LpcCode, path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(std::io::BufWriter::new(file), &to_schema(code))?;
    Ok(())
}

pub fn read_code_file(path: impl AsRef<Path>) -> Result<CodeFile> {
    let file = std::fs::File::open(path)?;
    let schema: CodeFile = serde_json::from_reader(std::io::BufReader::new(file))?;
    Ok(schema)
}

/// Rebuilds an explicit code from its schema, rejecting any violated
/// invariant by name. Generator-backed schemas are materialized by
/// [`crate::construct::load_code`] instead.
pub fn explicit_from_schema(schema: &CodeFile) -> Result<LpcCode> {
    if schema.version != 1 {
        return Err(Error::InvalidFile(format!(
            "unsupported version {} (expected 1)",
            schema.version
        )));
    }
    let kind = kind_from_strings(&schema.kind, schema.e)?;
    let Some(raw_sets) = &schema.codesets else {
        return Err(Error::InvalidFile(
            "file has no explicit codesets (generator-backed files go through load_code)".into(),
        ));
    };
    if schema.generator.is_some() {
        return Err(Error::InvalidFile(
            "file carries both codesets and a generator".into(),
        ));
    }
    let codesets = raw_sets
        .iter()
        .enumerate()
        .map(|(i, set)| {
            let words = set
                .iter()
                .map(|support| Codeword::new(schema.n, support.clone()))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::InvalidFile(format!("codeset {i}: {e}")))?;
            Codeset::new(words).map_err(|e| Error::InvalidFile(format!("codeset {i}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    LpcCode::new_explicit(schema.n, schema.t, schema.w, kind, codesets)
        .map_err(|e| Error::InvalidFile(e.to_string()))
}
