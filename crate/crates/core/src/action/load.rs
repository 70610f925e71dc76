//! System specification documents and the built-in systems.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::system::{DynamicalSystem, GenAction};
use crate::error::{Error, ErrorCode, Result};
use crate::space::SpaceModel;

/// JSON description of a dynamical system.
///
/// ```json
/// {"kind":"odometer","base":[2,2,2]}
/// {"kind":"full_shift","alphabet":2}
/// {"kind":"f2_boundary"}
/// {"kind":"finite","points":4,"generators":[[1,2,3,0]]}
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub format_version: Option<u32>,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub base: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alphabet: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub points: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generators: Option<Vec<Vec<u32>>>,
}

fn reject_field<T>(opt: &Option<T>, kind: &str, field: &str) -> Result<()> {
    if opt.is_some() {
        Err(Error::schema(format!(
            "field {field:?} does not apply to kind {kind:?}"
        )))
    } else {
        Ok(())
    }
}

/// Build a system from its specification document, validating the schema and
/// the homeomorphism invariants of every generator.
pub fn load_system(spec: &SystemSpec) -> Result<Arc<DynamicalSystem>> {
    if let Some(v) = spec.format_version {
        if v != 1 {
            return Err(Error::schema(format!("unsupported format_version {v}")));
        }
    }
    let sys = match spec.kind.as_str() {
        "odometer" => {
            reject_field(&spec.alphabet, "odometer", "alphabet")?;
            reject_field(&spec.points, "odometer", "points")?;
            reject_field(&spec.generators, "odometer", "generators")?;
            let base = spec
                .base
                .clone()
                .ok_or_else(|| Error::schema("odometer requires \"base\""))?;
            DynamicalSystem::new(SpaceModel::Odometer { base }, vec![GenAction::OdometerAdd])?
        }
        "full_shift" => {
            reject_field(&spec.base, "full_shift", "base")?;
            reject_field(&spec.points, "full_shift", "points")?;
            reject_field(&spec.generators, "full_shift", "generators")?;
            let alphabet = spec
                .alphabet
                .ok_or_else(|| Error::schema("full_shift requires \"alphabet\""))?;
            DynamicalSystem::new(SpaceModel::FullShift { alphabet }, vec![GenAction::ShiftLeft])?
        }
        "f2_boundary" => {
            reject_field(&spec.base, "f2_boundary", "base")?;
            reject_field(&spec.alphabet, "f2_boundary", "alphabet")?;
            reject_field(&spec.points, "f2_boundary", "points")?;
            reject_field(&spec.generators, "f2_boundary", "generators")?;
            DynamicalSystem::new(
                SpaceModel::F2Boundary,
                vec![GenAction::F2Mult(0), GenAction::F2Mult(2)],
            )?
        }
        "finite" => {
            reject_field(&spec.base, "finite", "base")?;
            reject_field(&spec.alphabet, "finite", "alphabet")?;
            let points = spec
                .points
                .ok_or_else(|| Error::schema("finite requires \"points\""))?;
            let generators = spec.generators.clone().unwrap_or_default();
            DynamicalSystem::new(
                SpaceModel::Finite { points },
                generators.into_iter().map(GenAction::Permutation).collect(),
            )?
        }
        other => {
            return Err(Error::new(
                ErrorCode::UnknownKind,
                format!("unknown system kind {other:?}"),
            ))
        }
    };
    Ok(Arc::new(sys))
}

pub fn load_system_json(text: &str) -> Result<Arc<DynamicalSystem>> {
    let spec: SystemSpec = serde_json::from_str(text).map_err(|e| Error::schema(e.to_string()))?;
    load_system(&spec)
}

/// The built-in systems used throughout the test suites.
pub mod builtin {
    use super::*;

    /// 2-adic odometer.
    pub fn odometer2() -> Arc<DynamicalSystem> {
        load_system_json(r#"{"kind":"odometer","base":[2]}"#).unwrap()
    }

    /// Full shift on two symbols.
    pub fn shift2() -> Arc<DynamicalSystem> {
        load_system_json(r#"{"kind":"full_shift","alphabet":2}"#).unwrap()
    }

    /// Boundary of the rank-2 free group.
    pub fn f2_boundary() -> Arc<DynamicalSystem> {
        load_system_json(r#"{"kind":"f2_boundary"}"#).unwrap()
    }

    /// ℤ/4 rotation on four points.
    pub fn z4_rotation() -> Arc<DynamicalSystem> {
        load_system_json(r#"{"kind":"finite","points":4,"generators":[[1,2,3,0]]}"#).unwrap()
    }

    /// Trivial group acting on two points.
    pub fn trivial2() -> Arc<DynamicalSystem> {
        load_system_json(r#"{"kind":"finite","points":2,"generators":[]}"#).unwrap()
    }

    /// One representative per space-model kind.
    pub fn all_four() -> Vec<(&'static str, Arc<DynamicalSystem>)> {
        vec![
            ("z4", z4_rotation()),
            ("odometer2", odometer2()),
            ("shift2", shift2()),
            ("f2", f2_boundary()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_specs_load() {
        for (_, sys) in builtin::all_four() {
            assert!(sys.generator_count() >= 1);
        }
        assert_eq!(builtin::trivial2().generator_count(), 0);
    }

    #[test]
    fn non_bijective_rejected() {
        let err =
            load_system_json(r#"{"kind":"finite","points":3,"generators":[[0,0,1]]}"#).unwrap_err();
        assert_eq!(err.code, ErrorCode::NotHomeomorphism);
    }

    #[test]
    fn unknown_kind_rejected() {
        let err = load_system_json(r#"{"kind":"torus"}"#).unwrap_err();
        assert_eq!(err.code, ErrorCode::UnknownKind);
    }

    #[test]
    fn irrelevant_fields_rejected() {
        let err = load_system_json(r#"{"kind":"odometer","base":[2],"alphabet":2}"#).unwrap_err();
        assert_eq!(err.code, ErrorCode::Schema);
        assert!(load_system_json(r#"{"kind":"odometer","base":[2],"unknown":1}"#).is_err());
    }
}
