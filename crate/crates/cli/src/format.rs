//! JSON documents: instance files and solver results.
//!
//! Rationals travel as strings (`"3/4"`, `"-2"`), indices and representation
//! values are 1-based.

use std::fmt;
use std::str::FromStr;

use colourful_core::model::{Configuration, EqualCoefficientCertificate, FunctionRepresentation, InjectiveAssignment};
use colourful_core::Rational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// A rational that (de)serializes as `"p/q"`, or `"p"` for integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct QVisitor;

        impl Visitor<'_> for QVisitor {
            type Value = Q;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string such as \"3/4\" or \"-2\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                Rational::from_str(v.trim()).map(Q).map_err(|_| E::custom(format!("not a rational: {v:?}")))
            }
        }

        d.deserialize_str(QVisitor)
    }
}

pub fn to_q(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

pub fn from_q(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

/// Instance shapes understood by `generate`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    Tverberg,
    Radon,
    Tolerant,
    Balanced,
}

/// What a result document claims to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Radon,
    Tverberg,
    Tolerant,
    Balanced,
    RadonGale,
    #[value(skip)]
    Enumerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub kind: InstanceKind,
    pub k: usize,
    pub d: usize,
    pub r: usize,
}

/// An instance on disk: either colour classes (`classes`, with `t` points
/// each) or a coloured point set (`points` plus 1-based `colours`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<InstanceKind>,
    pub d: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Vec<Vec<Q>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<Q>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colours: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
}

/// The fields that identify an instance; metadata is left out of the hash.
#[derive(Serialize)]
struct HashedContent<'a> {
    d: usize,
    n: usize,
    t: Option<usize>,
    r: Option<usize>,
    classes: &'a Option<Vec<Vec<Vec<Q>>>>,
    points: &'a Option<Vec<Vec<Q>>>,
    colours: &'a Option<Vec<usize>>,
}

impl InstanceFile {
    /// Hex SHA-256 of the compact JSON of the geometric content.
    pub fn hash(&self) -> String {
        let content = HashedContent {
            d: self.d,
            n: self.n,
            t: self.t,
            r: self.r,
            classes: &self.classes,
            points: &self.points,
            colours: &self.colours,
        };
        let bytes = serde_json::to_vec(&content).expect("instance content serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn configuration(&self) -> Result<Configuration, CliError> {
        let classes = self.classes.as_ref().ok_or_else(|| CliError::usage("instance has no \"classes\""))?;
        if classes.len() != self.n {
            return Err(CliError::usage(format!("\"n\" is {} but there are {} classes", self.n, classes.len())));
        }
        if let Some(t) = self.t {
            if let Some((j, c)) = classes.iter().enumerate().find(|(_, c)| c.len() != t) {
                return Err(CliError::usage(format!("class {} has {} points, \"t\" is {t}", j + 1, c.len())));
            }
        }
        let classes = classes.iter().map(|c| c.iter().map(|p| from_q(p)).collect()).collect();
        Ok(Configuration::new(self.d, classes)?)
    }

    /// Points and 1-based colours of a coloured point-set instance.
    pub fn coloured_points(&self) -> Result<(Vec<Vec<Rational>>, Vec<usize>), CliError> {
        let points = self.points.as_ref().ok_or_else(|| CliError::usage("instance has no \"points\""))?;
        let colours = self.colours.as_ref().ok_or_else(|| CliError::usage("instance has no \"colours\""))?;
        if points.len() != self.n || colours.len() != self.n {
            return Err(CliError::usage(format!(
                "\"n\" is {} but there are {} points and {} colours",
                self.n,
                points.len(),
                colours.len()
            )));
        }
        if let Some(p) = points.iter().position(|p| p.len() != self.d) {
            return Err(CliError::usage(format!("point {} does not have {} coordinates", p + 1, self.d)));
        }
        if colours.contains(&0) {
            return Err(CliError::usage("colours are 1-based"));
        }
        Ok((points.iter().map(|p| from_q(p)).collect(), colours.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub alpha: Vec<Q>,
    pub point: Vec<Q>,
}

impl From<&EqualCoefficientCertificate> for CertificateDoc {
    fn from(c: &EqualCoefficientCertificate) -> Self {
        Self { alpha: to_q(&c.coefficients), point: to_q(&c.common_point) }
    }
}

impl CertificateDoc {
    pub fn to_certificate(&self) -> EqualCoefficientCertificate {
        EqualCoefficientCertificate { coefficients: from_q(&self.alpha), common_point: from_q(&self.point) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TolerantEntryDoc {
    /// 1-based indices of the removed classes.
    pub removed: Vec<usize>,
    pub certificate: CertificateDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub r: usize,
    pub entries: Vec<TolerantEntryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shared: Option<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionDoc {
    pub point: Vec<Q>,
    /// Convex weights, one list per part, over that part's points in order.
    pub weights: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitDoc {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// Normal of the cut through the origin in the Gale dual.
    pub normal: Vec<Q>,
    pub intersection: IntersectionDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub representation: Vec<Vec<usize>>,
    pub certificate: CertificateDoc,
}

/// Output of `solve` and `enumerate`, input to `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFile {
    pub command: Command,
    pub instance_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection: Option<IntersectionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    /// The lower bound on the partition count, as a decimal string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meets_bound: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partitions: Option<Vec<PartitionDoc>>,
}

impl ResultFile {
    pub fn new(command: Command, instance_hash: String) -> Self {
        Self {
            command,
            instance_hash,
            representation: None,
            certificate: None,
            family: None,
            intersection: None,
            split: None,
            count: None,
            bound: None,
            meets_bound: None,
            partitions: None,
        }
    }
}

/// `σ_j(i)` as `rows[j][i]`, 1-based.
pub fn representation_doc(rep: &FunctionRepresentation) -> Vec<Vec<usize>> {
    rep.assignments().iter().map(|s| s.values().iter().map(|v| v + 1).collect()).collect()
}

pub fn parse_representation(rows: &[Vec<usize>], t: usize) -> Result<FunctionRepresentation, String> {
    let assignments = rows
        .iter()
        .enumerate()
        .map(|(j, row)| {
            let values = row
                .iter()
                .map(|&v| v.checked_sub(1).ok_or_else(|| format!("class {}: representation values are 1-based", j + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            InjectiveAssignment::new(t, values).map_err(|e| format!("class {}: {e}", j + 1))
        })
        .collect::<Result<Vec<_>, _>>()?;
    FunctionRepresentation::new(assignments).map_err(|e| e.to_string())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}
