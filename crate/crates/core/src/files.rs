//! On-disk formats: group files and subdegree reports, both JSON.
//!
//! A group file stores generators as lists of disjoint cycles over 1-based
//! points with fixed points omitted; the identity is the empty list. Reports
//! print every big integer as a decimal string.

use crate::engine::{Checks, Method, SubdegreeEntry, SubdegreeReport};
use crate::error::SaxlError;
use crate::group::{Group, Subgroup};
use crate::perm::Permutation;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<Vec<u32>>>,
    pub stabilizer_generators: Vec<Vec<Vec<u32>>>,
}

impl GroupFile {
    pub fn parse(json: &str) -> Result<GroupFile, SaxlError> {
        Ok(serde_json::from_str(json)?)
    }

    fn perms(&self, cycles: &[Vec<Vec<u32>>]) -> Result<Vec<Permutation>, SaxlError> {
        cycles
            .iter()
            .map(|c| Permutation::from_cycles(self.degree, c))
            .collect()
    }

    /// Builds the ambient group and the stabiliser subgroup, verifying that
    /// every stabiliser generator lies in the group.
    pub fn build(&self, cap: usize) -> Result<(Group, Subgroup), SaxlError> {
        let gens = self.perms(&self.generators)?;
        let group = Group::from_generators(gens)?;
        let h_gens = self.perms(&self.stabilizer_generators)?;
        for (i, p) in h_gens.iter().enumerate() {
            if !group.contains(p) {
                return Err(SaxlError::StabiliserMismatch(format!(
                    "stabilizer generator {i} of `{}` is not in the group",
                    self.name
                )));
            }
        }
        let h = Subgroup::closure(self.degree, &h_gens, cap)?;
        Ok((group, h))
    }

    pub fn from_parts(
        name: &str,
        degree: usize,
        generators: &[Permutation],
        stabilizer_generators: &[Permutation],
    ) -> GroupFile {
        GroupFile {
            name: name.to_string(),
            degree,
            generators: generators.iter().map(|p| p.cycles()).collect(),
            stabilizer_generators: stabilizer_generators.iter().map(|p| p.cycles()).collect(),
        }
    }
}

pub fn load_group_file(path: &std::path::Path, cap: usize) -> Result<(Group, Subgroup, String), SaxlError> {
    let text = std::fs::read_to_string(path)?;
    let file = GroupFile::parse(&text)?;
    let (g, h) = file.build(cap)?;
    Ok((g, h, file.name))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdegreeJson {
    pub length: String,
    pub multiplicity: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub sum_rule: bool,
    pub valency_divisibility: bool,
    pub cross_method_agreement: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub group: String,
    #[serde(rename = "order_G")]
    pub order_g: String,
    #[serde(rename = "order_H")]
    pub order_h: String,
    pub index: String,
    pub subdegrees: Vec<SubdegreeJson>,
    pub valency: String,
    pub method: String,
    pub checks: ChecksJson,
}

impl From<&SubdegreeReport> for ReportJson {
    fn from(r: &SubdegreeReport) -> ReportJson {
        ReportJson {
            group: r.group_name.clone(),
            order_g: r.order_g.to_string(),
            order_h: r.order_h.to_string(),
            index: r.index.to_string(),
            subdegrees: r
                .entries
                .iter()
                .map(|e| SubdegreeJson {
                    length: e.length.to_string(),
                    multiplicity: e.multiplicity.to_string(),
                })
                .collect(),
            valency: r.valency.to_string(),
            method: r.method.as_str().to_string(),
            checks: ChecksJson {
                sum_rule: r.checks.sum_rule,
                valency_divisibility: r.checks.valency_divisibility,
                cross_method_agreement: r.checks.cross_method_agreement,
            },
        }
    }
}

fn parse_big(s: &str, what: &str) -> Result<BigUint, SaxlError> {
    s.parse::<BigUint>()
        .map_err(|_| SaxlError::Parse(format!("bad integer `{s}` in {what}")))
}

impl ReportJson {
    pub fn to_report(&self) -> Result<SubdegreeReport, SaxlError> {
        let method = match self.method.as_str() {
            "bruteforce" => Method::BruteForce,
            "delta-engine" => Method::DeltaEngine,
            "closed-form" => Method::ClosedForm,
            other => return Err(SaxlError::Parse(format!("unknown method `{other}`"))),
        };
        Ok(SubdegreeReport {
            group_name: self.group.clone(),
            order_g: parse_big(&self.order_g, "order_G")?,
            order_h: parse_big(&self.order_h, "order_H")?,
            index: parse_big(&self.index, "index")?,
            entries: self
                .subdegrees
                .iter()
                .map(|s| {
                    Ok(SubdegreeEntry {
                        length: parse_big(&s.length, "subdegree length")?,
                        multiplicity: parse_big(&s.multiplicity, "subdegree multiplicity")?,
                    })
                })
                .collect::<Result<_, SaxlError>>()?,
            valency: parse_big(&self.valency, "valency")?,
            method,
            checks: Checks {
                sum_rule: self.checks.sum_rule,
                valency_divisibility: self.checks.valency_divisibility,
                cross_method_agreement: self.checks.cross_method_agreement,
            },
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_file_roundtrip_and_validation() {
        let json = r#"{
            "name": "a4",
            "degree": 4,
            "generators": [[[1,2,3]], [[2,3,4]]],
            "stabilizer_generators": [[[2,3,4]]]
        }"#;
        let f = GroupFile::parse(json).unwrap();
        let (g, h) = f.build(10_000).unwrap();
        assert_eq!(g.order_u64(), 12);
        assert_eq!(h.order(), 3);
    }

    #[test]
    fn rejects_non_bijective_generator() {
        let json = r#"{
            "name": "bad", "degree": 3,
            "generators": [[[1,1,2]]],
            "stabilizer_generators": []
        }"#;
        let f = GroupFile::parse(json).unwrap();
        assert!(f.build(100).is_err());
    }

    #[test]
    fn rejects_stabilizer_outside_group() {
        let json = r#"{
            "name": "a4-bad", "degree": 4,
            "generators": [[[1,2,3]], [[2,3,4]]],
            "stabilizer_generators": [[[1,2]]]
        }"#;
        let f = GroupFile::parse(json).unwrap();
        match f.build(100) {
            Err(SaxlError::StabiliserMismatch(_)) => {}
            other => panic!("expected stabiliser mismatch, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn report_json_roundtrip() {
        let json = ReportJson {
            group: "test".into(),
            order_g: "120".into(),
            order_h: "6".into(),
            index: "20".into(),
            subdegrees: vec![SubdegreeJson {
                length: "1".into(),
                multiplicity: "1".into(),
            }],
            valency: "0".into(),
            method: "bruteforce".into(),
            checks: ChecksJson {
                sum_rule: false,
                valency_divisibility: true,
                cross_method_agreement: None,
            },
        };
        let s = json.to_json_string();
        let back: ReportJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back, json);
        assert!(s.contains("\"order_G\""));
        // bool|null field
        assert!(s.contains("\"cross_method_agreement\": null"));
        let report = back.to_report().unwrap();
        let again = ReportJson::from(&report);
        assert_eq!(again, json);
    }
}
