//! JSON literal syntax for clopen sets, one shape per space model:
//! finite `{"points":[0,2]}`, odometer `{"level":3,"classes":[0,1,2]}`,
//! shift `{"cylinders":["01","10"]}`, f2 `{"cylinders":["a","b⁻¹a"]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::clopen::ClopenSet;
use super::model::{f2, SpaceModel, F2_LETTERS};
use crate::error::{Error, ErrorCode, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FiniteLit {
    points: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OdometerLit {
    level: u32,
    classes: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CylinderLit {
    cylinders: Vec<String>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::new(ErrorCode::BadLiteral, msg)
}

/// Parse letters of the free group over a,b: ASCII `a,A,b,B` or `a⁻¹`, `b⁻¹`.
pub fn parse_f2_letters(s: &str) -> Result<Vec<u8>> {
    let mut letters = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(ch) = chars.next() {
        let base = match ch {
            'a' => 0u8,
            'b' => 2u8,
            'A' => {
                letters.push(1);
                continue;
            }
            'B' => {
                letters.push(3);
                continue;
            }
            _ => return Err(bad(format!("unexpected character {ch:?} in f2 word"))),
        };
        if chars.peek() == Some(&'⁻') {
            chars.next();
            if chars.next() != Some('¹') {
                return Err(bad("expected ⁻¹ inverse marker"));
            }
            letters.push(base + 1);
        } else {
            letters.push(base);
        }
    }
    Ok(letters)
}

pub fn f2_letters_to_string(letters: &[u8]) -> String {
    letters.iter().map(|&l| F2_LETTERS[l as usize]).collect()
}

fn parse_shift_cylinder(s: &str, alphabet: u32) -> Result<(u32, u64)> {
    if s.len() % 2 != 0 {
        return Err(bad(format!(
            "shift cylinder {s:?} must have even length (centered window)"
        )));
    }
    let mut idx = 0u64;
    for ch in s.chars() {
        let d = ch
            .to_digit(10)
            .filter(|&d| d < alphabet)
            .ok_or_else(|| bad(format!("symbol {ch:?} out of alphabet range")))?;
        idx = idx * alphabet as u64 + d as u64;
    }
    Ok(((s.len() / 2) as u32, idx))
}

fn shift_cylinder_string(alphabet: u32, depth: u32, mut idx: u64) -> String {
    let mut digits = vec![0u8; (2 * depth) as usize];
    for slot in digits.iter_mut().rev() {
        *slot = (idx % alphabet as u64) as u8;
        idx /= alphabet as u64;
    }
    digits.iter().map(|d| char::from(b'0' + d)).collect()
}

/// Parse a clopen literal for the given model. Cylinders of different depths
/// are unioned, so mixed-depth literals are accepted.
pub fn parse_clopen(model: &SpaceModel, value: &Value) -> Result<ClopenSet> {
    match model {
        SpaceModel::Finite { .. } => {
            let lit: FiniteLit =
                serde_json::from_value(value.clone()).map_err(|e| bad(e.to_string()))?;
            ClopenSet::from_atom_indices(model.clone(), 0, lit.points)
        }
        SpaceModel::Odometer { .. } => {
            let lit: OdometerLit =
                serde_json::from_value(value.clone()).map_err(|e| bad(e.to_string()))?;
            ClopenSet::from_atom_indices(model.clone(), lit.level, lit.classes)
                .map(|c| c.canonical())
        }
        SpaceModel::FullShift { alphabet } => {
            let lit: CylinderLit =
                serde_json::from_value(value.clone()).map_err(|e| bad(e.to_string()))?;
            let mut acc = ClopenSet::empty(model.clone(), 0)?;
            for s in &lit.cylinders {
                let (depth, idx) = parse_shift_cylinder(s, *alphabet)?;
                let cyl = ClopenSet::from_atom_indices(model.clone(), depth, [idx])?;
                acc = acc.union(&cyl)?;
            }
            Ok(acc)
        }
        SpaceModel::F2Boundary => {
            let lit: CylinderLit =
                serde_json::from_value(value.clone()).map_err(|e| bad(e.to_string()))?;
            let mut acc = ClopenSet::empty(model.clone(), 0)?;
            for s in &lit.cylinders {
                let letters = parse_f2_letters(s)?;
                if letters.windows(2).any(|p| p[1] == f2::inverse(p[0])) {
                    return Err(bad(format!("f2 cylinder word {s:?} is not reduced")));
                }
                let idx = f2::word_to_index(&letters)
                    .ok_or_else(|| bad(format!("f2 cylinder word {s:?} is not reduced")))?;
                let cyl =
                    ClopenSet::from_atom_indices(model.clone(), letters.len() as u32, [idx])?;
                acc = acc.union(&cyl)?;
            }
            Ok(acc)
        }
    }
}

/// Canonical literal for a clopen set: atoms listed at canonical depth in
/// ascending index order, so equal sets serialize to identical documents.
pub fn clopen_literal(c: &ClopenSet) -> Value {
    let k = c.canonical();
    match k.model() {
        SpaceModel::Finite { .. } => serde_json::json!({
            "points": k.atom_indices().collect::<Vec<_>>(),
        }),
        SpaceModel::Odometer { .. } => serde_json::json!({
            "level": k.depth(),
            "classes": k.atom_indices().collect::<Vec<_>>(),
        }),
        SpaceModel::FullShift { alphabet } => {
            let q = *alphabet;
            let cylinders: Vec<String> = k
                .atom_indices()
                .map(|i| shift_cylinder_string(q, k.depth(), i))
                .collect();
            serde_json::json!({ "cylinders": cylinders })
        }
        SpaceModel::F2Boundary => {
            let cylinders: Vec<String> = k
                .atom_indices()
                .map(|i| f2_letters_to_string(&f2::index_to_word(k.depth(), i)))
                .collect();
            serde_json::json!({ "cylinders": cylinders })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn odometer_literal_round_trip() {
        let model = SpaceModel::Odometer { base: vec![2] };
        let c = parse_clopen(&model, &json!({"level":3,"classes":[0,1,2]})).unwrap();
        assert_eq!(c.count(), 3);
        let lit = clopen_literal(&c);
        assert_eq!(lit, json!({"level":3,"classes":[0,1,2]}));
    }

    #[test]
    fn f2_ascii_and_superscript_agree() {
        let model = SpaceModel::F2Boundary;
        let a = parse_clopen(&model, &json!({"cylinders":["b⁻¹a"]})).unwrap();
        let b = parse_clopen(&model, &json!({"cylinders":["Ba"]})).unwrap();
        assert_eq!(a, b);
        assert_eq!(clopen_literal(&a), json!({"cylinders":["b⁻¹a"]}));
    }

    #[test]
    fn f2_rejects_unreduced() {
        let model = SpaceModel::F2Boundary;
        let err = parse_clopen(&model, &json!({"cylinders":["aA"]})).unwrap_err();
        assert_eq!(err.code, ErrorCode::BadLiteral);
    }

    #[test]
    fn shift_mixed_depth_union() {
        let model = SpaceModel::FullShift { alphabet: 2 };
        let c = parse_clopen(&model, &json!({"cylinders":["01","10"]})).unwrap();
        assert_eq!(c.depth(), 1);
        assert_eq!(c.count(), 2);
        let full = parse_clopen(&model, &json!({"cylinders":[""]})).unwrap();
        assert!(full.is_full());
    }

    #[test]
    fn unknown_fields_rejected() {
        let model = SpaceModel::Finite { points: 3 };
        assert!(parse_clopen(&model, &json!({"points":[0],"bogus":1})).is_err());
    }

    #[test]
    fn finite_literal() {
        let model = SpaceModel::Finite { points: 4 };
        let c = parse_clopen(&model, &json!({"points":[0,2]})).unwrap();
        assert_eq!(clopen_literal(&c), json!({"points":[0,2]}));
        assert!(parse_clopen(&model, &json!({"points":[5]})).is_err());
    }
}
