//! JSON file formats. Every rational is written as a `"p/q"` string; sets are
//! sorted 1-based element lists and entries appear in ascending mask order.

use serde::{Deserialize, Deserializer, Serialize};

use crate::approx::AlphaBounds;
use crate::coverage::{self, CoverageVerdict};
use crate::error::{Error, Result};
use crate::extension::{ExtensionStatus, ExtensionVerdict};
use crate::norm::NormResult;
use crate::scalar::{serde_rational, Extended, Rational, Scalar};
use crate::set::{all_subsets, check_enumerable, SetMask, DEFAULT_ENUMERATION_CAP};
use crate::{PartialFunction, TotalSetFunction, WCoefficients};

/// Accepts `"p/q"`, `"p"` or a bare JSON integer.
fn lenient_rational<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Int(i64),
    }
    match Raw::deserialize(d)? {
        Raw::Text(s) => Rational::parse_exact(&s).map_err(crate::error::de_error),
        Raw::Int(v) => Ok(Rational::from_integer(v.into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry {
    pub set: SetMask,
    #[serde(serialize_with = "serde_rational::serialize", deserialize_with = "lenient_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub set: SetMask,
    #[serde(with = "serde_rational")]
    pub weight: Rational,
}

fn weight_entries(w: &WCoefficients) -> Vec<WeightEntry> {
    w.iter()
        .map(|(set, weight)| WeightEntry {
            set,
            weight: weight.clone(),
        })
        .collect()
}

/// `{"m": 2, "points": [{"set": [1], "value": "1/2"}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub m: usize,
    pub points: Vec<PointEntry>,
}

impl From<&PartialFunction> for InstanceFile {
    fn from(h: &PartialFunction) -> InstanceFile {
        InstanceFile {
            m: h.ground_size(),
            points: h
                .points()
                .iter()
                .map(|(set, value)| PointEntry {
                    set: *set,
                    value: value.clone(),
                })
                .collect(),
        }
    }
}

/// 1-based line of the `k`-th (0-based) `"set"` key in `text`.
fn line_of_set_key(text: &str, k: usize) -> Option<usize> {
    let (offset, _) = text.match_indices("\"set\"").nth(k)?;
    Some(text[..offset].matches('\n').count() + 1)
}

fn duplicate_error(text: &str, set: SetMask, first: usize, second: usize) -> Error {
    match (line_of_set_key(text, first), line_of_set_key(text, second)) {
        (Some(a), Some(b)) => Error::Parse(format!("line {b}: duplicate set {set} (first defined on line {a})")),
        _ => Error::Parse(format!("duplicate set {set} at entries {} and {}", first + 1, second + 1)),
    }
}

fn find_duplicate(entries: &[PointEntry]) -> Option<(usize, usize)> {
    let mut seen = std::collections::HashMap::new();
    for (i, e) in entries.iter().enumerate() {
        if let Some(&j) = seen.get(&e.set) {
            return Some((j, i));
        }
        seen.insert(e.set, i);
    }
    None
}

pub fn parse_instance(text: &str) -> Result<PartialFunction> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some((a, b)) = find_duplicate(&file.points) {
        return Err(duplicate_error(text, file.points[a].set, a, b));
    }
    PartialFunction::new(file.m, file.points.into_iter().map(|p| (p.set, p.value)).collect())
}

pub fn instance_to_json(h: &PartialFunction) -> String {
    serde_json::to_string_pretty(&InstanceFile::from(h)).expect("instance serializes")
}

/// `{"m": 2, "values": [{"set": [1], "value": "1"}, ...]}`; unlisted sets are
/// 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TotalFunctionFile {
    pub m: usize,
    pub values: Vec<PointEntry>,
}

pub fn parse_total_function(text: &str) -> Result<TotalSetFunction> {
    let file: TotalFunctionFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some((a, b)) = find_duplicate(&file.values) {
        return Err(duplicate_error(text, file.values[a].set, a, b));
    }
    check_enumerable(file.m, DEFAULT_ENUMERATION_CAP)?;
    let full = SetMask::full(file.m);
    let mut values = vec![Rational::from_integer(0.into()); 1usize << file.m];
    for p in file.values {
        if !p.set.is_subset_of(full) {
            return Err(Error::Parse(format!("set {} outside ground set of size {}", p.set, file.m)));
        }
        values[p.set.bits() as usize] = p.value;
    }
    TotalSetFunction::new(file.m, values)
}

pub fn total_function_to_json(f: &TotalSetFunction) -> String {
    let file = TotalFunctionFile {
        m: f.ground_size(),
        values: all_subsets(f.ground_size())
            .filter(|s| !s.is_empty())
            .map(|set| PointEntry {
                set,
                value: f.value(set).clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("function serializes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WeightEntry>>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational::option_vec"
    )]
    pub certificate: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl From<&ExtensionVerdict> for VerdictReport {
    fn from(v: &ExtensionVerdict) -> VerdictReport {
        VerdictReport {
            status: match v.status {
                ExtensionStatus::Extendible => "extendible",
                ExtensionStatus::NotExtendible => "not_extendible",
            }
            .into(),
            witness: v.witness.as_ref().map(weight_entries),
            certificate: v.certificate.clone(),
            verified: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub kappa: Extended<Rational>,
    pub kappa_is_exact: bool,
    pub lower: Extended<Rational>,
    pub upper: Extended<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_star: Option<Extended<Rational>>,
    pub degenerate: bool,
    pub floor_applied: bool,
}

impl From<&AlphaBounds> for BoundsReport {
    fn from(b: &AlphaBounds) -> BoundsReport {
        BoundsReport {
            kappa: b.kappa_estimate.clone(),
            kappa_is_exact: b.kappa_is_exact,
            lower: b.lower.clone(),
            upper: b.upper.clone(),
            alpha_star: b.alpha_star.clone(),
            degenerate: b.degenerate,
            floor_applied: b.floor_applied,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormReport {
    #[serde(with = "serde_rational")]
    pub opt_restricted: Rational,
    pub witness: Vec<WeightEntry>,
    #[serde(with = "serde_rational::vec")]
    pub primal_errors: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub dual_restricted: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub dual_rounded: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub additive_bound: Rational,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational::option"
    )]
    pub opt_exact: Option<Rational>,
}

impl From<&NormResult> for NormReport {
    fn from(r: &NormResult) -> NormReport {
        NormReport {
            opt_restricted: r.opt_restricted.clone(),
            witness: weight_entries(&r.witness),
            primal_errors: r.primal_errors.clone(),
            dual_restricted: r.dual_restricted.clone(),
            dual_rounded: r.dual_rounded.clone(),
            additive_bound: r.additive_bound.clone(),
            opt_exact: r.opt_exact.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformReport {
    pub m: usize,
    pub coefficients: Vec<WeightEntry>,
    pub is_coverage: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violating_set: Option<SetMask>,
}

impl TransformReport {
    pub fn new(f: &TotalSetFunction) -> TransformReport {
        let w = coverage::w_transform(f);
        let violating_set = match coverage::is_coverage(f) {
            CoverageVerdict::Coverage => None,
            CoverageVerdict::NotCoverage { violating_set, .. } => Some(violating_set),
        };
        TransformReport {
            m: f.ground_size(),
            coefficients: weight_entries(&w),
            is_coverage: violating_set.is_none(),
            violating_set,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::decide_extension;
    use crate::scalar::{int, rat};

    const PAIR: &str = r#"{
  "m": 2,
  "points": [
    {"set": [1], "value": "1"},
    {"set": [2], "value": 1},
    {"set": [1, 2], "value": "3/2"}
  ]
}"#;

    #[test]
    fn instance_round_trip() {
        let h = parse_instance(PAIR).unwrap();
        assert_eq!(h.value(2), &rat(3, 2));
        let text = instance_to_json(&h);
        assert_eq!(parse_instance(&text).unwrap(), h);
    }

    #[test]
    fn duplicate_sets_report_lines() {
        let text = "{\"m\": 2, \"points\": [\n{\"set\": [1], \"value\": \"1\"},\n{\"set\": [2], \"value\": \"1\"},\n{\"set\": [1], \"value\": \"2\"}\n]}";
        let err = parse_instance(text).unwrap_err();
        assert_eq!(err, Error::Parse("line 4: duplicate set {1} (first defined on line 2)".into()));
    }

    #[test]
    fn malformed_values_are_rejected() {
        let zero_den = r#"{"m": 1, "points": [{"set": [1], "value": "1/0"}]}"#;
        assert!(matches!(parse_instance(zero_den), Err(Error::Parse(_))));
        let out_of_range = r#"{"m": 1, "points": [{"set": [2], "value": "1"}]}"#;
        assert!(parse_instance(out_of_range).is_err());
        let extra = r#"{"m": 1, "points": [], "n": 3}"#;
        assert!(matches!(parse_instance(extra), Err(Error::Parse(_))));
    }

    #[test]
    fn verdict_json() {
        let h = parse_instance(PAIR).unwrap();
        let v = decide_extension(&h).unwrap();
        let report = VerdictReport::from(&v);
        let text = serde_json::to_string(&report).unwrap();
        assert_eq!(
            text,
            r#"{"status":"extendible","witness":[{"set":[1],"weight":"1/2"},{"set":[2],"weight":"1/2"},{"set":[1,2],"weight":"1/2"}]}"#
        );
        assert_eq!(serde_json::from_str::<VerdictReport>(&text).unwrap(), report);
    }

    #[test]
    fn total_function_files() {
        let text = r#"{"m": 2, "values": [{"set": [1], "value": "1"}, {"set": [1, 2], "value": "1"}]}"#;
        let f = parse_total_function(text).unwrap();
        assert_eq!(f.value(SetMask(0b10)), &int(0));
        assert!(TransformReport::new(&f).is_coverage);
        let text = r#"{"m": 2, "values": [{"set": [1], "value": "1"}, {"set": [2], "value": "1"}, {"set": [1, 2], "value": "3"}]}"#;
        let g = parse_total_function(text).unwrap();
        let report = TransformReport::new(&g);
        assert!(!report.is_coverage);
        assert_eq!(report.violating_set, Some(SetMask(0b11)));
        assert_eq!(parse_total_function(&total_function_to_json(&f)).unwrap(), f);
    }
}
