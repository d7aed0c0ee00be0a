//! JSON instance and body files. Every number is an exact `"p/q"` string.

use serde::{Deserialize, Serialize};

use crate::arrangement::Hyperplane;
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, LinearConstraint, Rational};
use crate::gen::{random_body, random_hyperplanes, GenConfig};

#[derive(Serialize, Deserialize)]
struct HyperplaneRecord {
    a: Vec<String>,
    b: String,
}

#[derive(Serialize, Deserialize)]
struct HalfspaceRecord {
    c: Vec<String>,
    d: String,
}

#[derive(Serialize, Deserialize)]
struct BodyRecord {
    dim: usize,
    halfspaces: Vec<HalfspaceRecord>,
}

#[derive(Serialize, Deserialize)]
struct InstanceRecord {
    dim: usize,
    hyperplanes: Vec<HyperplaneRecord>,
    body: BodyRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub dim: usize,
    pub hyperplanes: Vec<Hyperplane>,
    pub body: ConvexBody,
    pub seed: Option<u64>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_all(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

impl BodyRecord {
    fn of(body: &ConvexBody) -> Self {
        BodyRecord {
            dim: body.dim(),
            halfspaces: body
                .halfspaces()
                .iter()
                .map(|c| HalfspaceRecord {
                    c: strings(c.coeffs()),
                    d: format_rational(c.offset()),
                })
                .collect(),
        }
    }

    fn build(&self) -> Result<ConvexBody> {
        let hs = self
            .halfspaces
            .iter()
            .map(|h| {
                Ok(LinearConstraint::ge(
                    parse_all(&h.c)?,
                    parse_rational(&h.d)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        ConvexBody::new(self.dim, hs)
    }
}

pub fn body_to_json(body: &ConvexBody) -> String {
    serde_json::to_string_pretty(&BodyRecord::of(body)).expect("records always serialize")
}

pub fn body_from_json(text: &str) -> Result<ConvexBody> {
    serde_json::from_str::<BodyRecord>(text)?.build()
}

impl Instance {
    pub fn generate(cfg: &GenConfig) -> Result<Instance> {
        Ok(Instance {
            dim: cfg.d,
            hyperplanes: random_hyperplanes(cfg)?,
            body: random_body(cfg)?,
            seed: Some(cfg.seed),
        })
    }

    pub fn to_json(&self) -> String {
        let record = InstanceRecord {
            dim: self.dim,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| HyperplaneRecord {
                    a: strings(h.normal()),
                    b: format_rational(h.offset()),
                })
                .collect(),
            body: BodyRecord::of(&self.body),
            seed: self.seed,
        };
        let mut s = serde_json::to_string_pretty(&record).expect("records always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        let record: InstanceRecord = serde_json::from_str(text)?;
        if record.body.dim != record.dim {
            return Err(Error::Malformed(format!(
                "body dimension {} differs from instance dimension {}",
                record.body.dim, record.dim
            )));
        }
        let hyperplanes = record
            .hyperplanes
            .iter()
            .map(|h| {
                let a = parse_all(&h.a)?;
                if a.len() != record.dim {
                    return Err(Error::Malformed(format!(
                        "hyperplane has {} coefficients, expected {}",
                        a.len(),
                        record.dim
                    )));
                }
                Hyperplane::new(a, parse_rational(&h.b)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance {
            dim: record.dim,
            hyperplanes,
            body: record.body.build()?,
            seed: record.seed,
        })
    }

    pub fn read(path: &std::path::Path) -> Result<Instance> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}
