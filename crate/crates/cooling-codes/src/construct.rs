//! Turns persisted generator descriptors back into live codes, and the
//! code-file loader that dispatches between explicit and generator-backed
//! files.

use std::path::Path;

use crate::domination::DominationMapping;
use crate::error::{Error, Result};
use crate::model::{
    explicit_from_schema, read_code_file, CodeFile, GeneratorDescriptor, InnerCodeRef, LpcCode,
};

/// Builds the code a descriptor names.
pub fn materialize(descriptor: &GeneratorDescriptor) -> Result<LpcCode> {
    match descriptor {
        GeneratorDescriptor::MdsCpc { q, w } => crate::mds::build_rs_cpc(*q, *w)?.into_code(),
        GeneratorDescriptor::LinearCpc { q, w, generator } => {
            crate::mds::build_linear_cpc(*q, generator, *w)?.into_code()
        }
        GeneratorDescriptor::Cpecc { q, w, e } => {
            crate::cpecc::build_cpecc(*q, *w, *e)?.into_code()
        }
        GeneratorDescriptor::RecursiveCpc { q, inner } => {
            let inner = resolve_inner(inner)?;
            crate::recursive::build_recursive(*q, &inner)?.into_code()
        }
        GeneratorDescriptor::LpcUnion { n, t, w, q } => {
            crate::recursive::build_lpc_union(*n, *t, *w, *q)
        }
        GeneratorDescriptor::SpreadCooling { n, t } => {
            crate::spread::build_spread_cooling(*n, *t)?.into_code()
        }
        GeneratorDescriptor::Construction4 { w, t, alpha, beta } => {
            crate::spread::build_construction4(*w, *t, *alpha, *beta)
        }
        GeneratorDescriptor::LpcFromCooling { cooling, mapping } => {
            let mapping = DominationMapping::from_schema(mapping)?;
            crate::spread::lpc_from_cooling_params(cooling, mapping)
        }
    }
}

fn resolve_inner(inner: &InnerCodeRef) -> Result<LpcCode> {
    match inner {
        InnerCodeRef::Path(path) => load_code(path),
        InnerCodeRef::Inline(schema) => code_from_schema(schema),
    }
}

/// Rebuilds a code from a parsed file, materializing generator descriptors
/// and cross-checking the header against what the construction produced.
pub fn code_from_schema(schema: &CodeFile) -> Result<LpcCode> {
    match (&schema.codesets, &schema.generator) {
        (Some(_), None) => explicit_from_schema(schema),
        (None, Some(descriptor)) => {
            if schema.version != 1 {
                return Err(Error::InvalidFile(format!(
                    "unsupported version {} (expected 1)",
                    schema.version
                )));
            }
            let code = materialize(descriptor)?;
            let expected_kind = crate::model::kind_from_strings(&schema.kind, schema.e)?;
            if code.kind != expected_kind {
                return Err(Error::InvalidFile(format!(
                    "header kind {:?} does not match the construction's {:?}",
                    expected_kind, code.kind
                )));
            }
            if (schema.n, schema.t, schema.w) != (code.n, code.t, code.w) {
                return Err(Error::InvalidFile(format!(
                    "header parameters ({}, {}, {}) do not match the construction's ({}, {}, {})",
                    schema.n, schema.t, schema.w, code.n, code.t, code.w
                )));
            }
            Ok(code)
        }
        (Some(_), Some(_)) => Err(Error::InvalidFile(
            "file carries both codesets and a generator".into(),
        )),
        (None, None) => Err(Error::InvalidFile(
            "file carries neither codesets nor a generator".into(),
        )),
    }
}

pub fn load_code(path: impl AsRef<Path>) -> Result<LpcCode> {
    code_from_schema(&read_code_file(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::save_code;

    #[test]
    fn generator_files_round_trip_through_materialization() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mds.json");
        let code = crate::mds::build_rs_cpc(4, 3).unwrap().into_code().unwrap();
        save_code(&code, &path).unwrap();
        let loaded = load_code(&path).unwrap();
        assert_eq!((loaded.n, loaded.t, loaded.w), (12, 3, 3));
        assert_eq!(loaded.num_codesets(), 16);
        for i in [0u128, 7, 15] {
            assert_eq!(
                loaded.codeset(i).unwrap(),
                code.codeset(i).unwrap(),
                "codeset {i}"
            );
        }
    }

    #[test]
    fn header_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mds.json");
        let code = crate::mds::build_rs_cpc(4, 3).unwrap().into_code().unwrap();
        save_code(&code, &path).unwrap();
        let mut schema = read_code_file(&path).unwrap();
        schema.t = 5;
        assert!(code_from_schema(&schema).is_err());
    }

    #[test]
    fn recursive_descriptor_with_inline_inner() {
        let inner = crate::recursive::build_trivial_inner(4, 2).unwrap();
        let code = crate::recursive::build_recursive(5, &inner)
            .unwrap()
            .into_code()
            .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("recursive.json");
        save_code(&code, &path).unwrap();
        let loaded = load_code(&path).unwrap();
        assert_eq!((loaded.n, loaded.t, loaded.w), (20, 10, 2));
        assert_eq!(loaded.num_codesets(), 5);
    }

    #[test]
    fn spread_and_pipeline_descriptors_round_trip() {
        let dir = tempfile::tempdir().unwrap();

        let cooling = crate::spread::build_spread_cooling(4, 1).unwrap().into_code().unwrap();
        let path = dir.path().join("cooling.json");
        save_code(&cooling, &path).unwrap();
        let loaded = load_code(&path).unwrap();
        assert_eq!(loaded.num_codesets(), 5);
        assert_eq!(loaded.kind, crate::model::CodeKind::Cooling);

        let spread = crate::spread::build_spread_cooling(4, 1).unwrap();
        let graph = crate::domination::DominationGraph::new(vec![vec![0], vec![1, 2]]).unwrap();
        let leaf = crate::domination::synthesize_mapping(&graph, 1).unwrap();
        let mapping = crate::domination::product(vec![leaf.clone(), leaf]).unwrap();
        let lpc = crate::domination::lpc_from_cooling(spread, mapping).unwrap();
        let path = dir.path().join("pipeline.json");
        save_code(&lpc, &path).unwrap();
        let loaded = load_code(&path).unwrap();
        assert_eq!((loaded.n, loaded.t, loaded.w), (6, 1, 2));
        assert_eq!(loaded.num_codesets(), 5);
    }
}
