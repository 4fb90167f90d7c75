//! JSON file formats for instances, graphs and certificates.

use std::fs;
use std::path::Path;

use polyresolve_core::graph::{Edge, EdgeSet, Kind, SimpleGraph};
use polyresolve_core::oddcover::OddCoverCert;
use polyresolve_core::perm::{CycleSeq, Partition};
use polyresolve_core::polycycle::UndirectedDecomposition;
use polyresolve_core::resolve::LowerBoundFamily;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> IoError {
    IoError::Invalid(msg.into())
}

/// A pair of partitions to resolve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub m: usize,
    pub n: usize,
    pub p: Vec<usize>,
    pub p_prime: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyTag>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyTag {
    #[serde(rename = "even2cycles")]
    EvenTwoCycles,
    #[serde(rename = "odd2cycles3cycle")]
    OddTwoCyclesThreeCycle,
}

impl From<LowerBoundFamily> for FamilyTag {
    fn from(f: LowerBoundFamily) -> Self {
        match f {
            LowerBoundFamily::EvenTwoCycles => FamilyTag::EvenTwoCycles,
            LowerBoundFamily::OddTwoCyclesThreeCycle => FamilyTag::OddTwoCyclesThreeCycle,
        }
    }
}

/// Validated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub p: Partition,
    pub q: Partition,
    pub bound: Option<usize>,
    pub family: Option<FamilyTag>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            m: inst.p.m(),
            n: inst.p.n(),
            p: inst.p.assign().to_vec(),
            p_prime: inst.q.assign().to_vec(),
            bound: inst.bound,
            family: inst.family,
        }
    }

    pub fn validate(self) -> Result<Instance, IoError> {
        if self.p.len() != self.m || self.p_prime.len() != self.m {
            return Err(invalid(format!("expected {} items in p and p_prime", self.m)));
        }
        let p = Partition::new(self.n, self.p).map_err(|e| invalid(format!("p: {e}")))?;
        let q = Partition::new(self.n, self.p_prime).map_err(|e| invalid(format!("p_prime: {e}")))?;
        if p.shape() != q.shape() {
            return Err(invalid("p and p_prime have different cluster sizes"));
        }
        Ok(Instance {
            p,
            q,
            bound: self.bound,
            family: self.family,
        })
    }
}

/// Undirected simple graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphFile {
    pub fn from_graph(g: &SimpleGraph) -> Self {
        GraphFile {
            n: g.n(),
            edges: edge_list(g.edges()),
        }
    }

    pub fn validate(self) -> Result<SimpleGraph, IoError> {
        SimpleGraph::from_edges(self.n, self.edges.iter().map(|&[a, b]| (a, b)))
            .map_err(|e| invalid(format!("graph: {e}")))
    }
}

pub fn edge_list(edges: &EdgeSet) -> Vec<[usize; 2]> {
    edges.iter().map(|e| [e.u(), e.v()]).collect()
}

fn edge_set(part: &[[usize; 2]], n: Option<usize>) -> Result<EdgeSet, IoError> {
    let mut out = EdgeSet::new();
    for &[a, b] in part {
        if let Some(n) = n {
            if a >= n || b >= n {
                return Err(invalid(format!("edge ({a}, {b}) leaves the vertex range")));
            }
        }
        let e = Edge::try_new(a, b).ok_or_else(|| invalid(format!("loop at {a}")))?;
        if !out.insert(e) {
            return Err(invalid(format!("edge ({a}, {b}) repeated within a part")));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindTag {
    Path,
    Cycle,
    LinearForest,
}

impl From<Kind> for KindTag {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Path => KindTag::Path,
            Kind::Cycle => KindTag::Cycle,
            Kind::LinearForest => KindTag::LinearForest,
        }
    }
}

impl From<KindTag> for Kind {
    fn from(k: KindTag) -> Self {
        match k {
            KindTag::Path => Kind::Path,
            KindTag::Cycle => Kind::Cycle,
            KindTag::LinearForest => Kind::LinearForest,
        }
    }
}

/// Either certificate type, tagged by `"type"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CertificateFile {
    Resolution {
        taus: Vec<Vec<usize>>,
    },
    OddCover {
        kind: KindTag,
        parts: Vec<Vec<[usize; 2]>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Resolution(Vec<CycleSeq>),
    Cover(OddCoverCert),
}

impl CertificateFile {
    pub fn from_resolution(taus: &[CycleSeq]) -> Self {
        CertificateFile::Resolution {
            taus: taus.iter().map(|t| t.items().to_vec()).collect(),
        }
    }

    pub fn from_cover(cert: &OddCoverCert) -> Self {
        CertificateFile::OddCover {
            kind: cert.kind.into(),
            parts: cert.parts.iter().map(edge_list).collect(),
        }
    }

    pub fn validate(self) -> Result<Certificate, IoError> {
        match self {
            CertificateFile::Resolution { taus } => taus
                .into_iter()
                .enumerate()
                .map(|(i, t)| CycleSeq::new(t).map_err(|e| invalid(format!("tau {i}: {e}"))))
                .collect::<Result<_, _>>()
                .map(Certificate::Resolution),
            CertificateFile::OddCover { kind, parts } => {
                let parts = parts
                    .iter()
                    .map(|p| edge_set(p, None))
                    .collect::<Result<_, _>>()?;
                Ok(Certificate::Cover(OddCoverCert {
                    kind: kind.into(),
                    parts,
                }))
            }
        }
    }
}

/// Polycycle decomposition of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub parts: Vec<Vec<[usize; 2]>>,
    pub cycle_suffix_len: usize,
}

impl DecompositionFile {
    pub fn from_decomposition(d: &UndirectedDecomposition) -> Self {
        DecompositionFile {
            parts: d.parts.iter().map(edge_list).collect(),
            cycle_suffix_len: d.cycle_suffix_len,
        }
    }

    pub fn validate(self) -> Result<UndirectedDecomposition, IoError> {
        let parts: Vec<EdgeSet> = self
            .parts
            .iter()
            .map(|p| edge_set(p, None))
            .collect::<Result<_, _>>()?;
        if self.cycle_suffix_len > parts.len() {
            return Err(invalid("cycle suffix longer than the decomposition"));
        }
        Ok(UndirectedDecomposition {
            parts,
            cycle_suffix_len: self.cycle_suffix_len,
        })
    }
}

/// Verification outcome as written to disk or stdout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub check: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("file types serialize infallibly")
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_instance(path: &Path) -> Result<Instance, IoError> {
    read_json::<InstanceFile>(path)?.validate()
}

pub fn read_graph(path: &Path) -> Result<SimpleGraph, IoError> {
    read_json::<GraphFile>(path)?.validate()
}

pub fn read_certificate(path: &Path) -> Result<Certificate, IoError> {
    read_json::<CertificateFile>(path)?.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_tags() {
        let c = CertificateFile::Resolution {
            taus: vec![vec![0, 1]],
        };
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"type":"resolution","taus":[[0,1]]}"#);
        let c = CertificateFile::OddCover {
            kind: KindTag::Cycle,
            parts: vec![vec![[0, 1], [1, 2], [0, 2]]],
        };
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.starts_with(r#"{"type":"odd_cover","kind":"cycle""#));
    }

    #[test]
    fn instance_validation() {
        let f = InstanceFile {
            m: 2,
            n: 2,
            p: vec![0, 1],
            p_prime: vec![0, 0],
            bound: None,
            family: None,
        };
        assert!(matches!(f.validate(), Err(IoError::Invalid(_))));
        let text = r#"{"m":2,"n":2,"p":[0,1],"p_prime":[1,0],"family":"even2cycles"}"#;
        let f: InstanceFile = serde_json::from_str(text).unwrap();
        assert_eq!(f.family, Some(FamilyTag::EvenTwoCycles));
        assert!(f.validate().is_ok());
    }

    #[test]
    fn duplicate_graph_edges_rejected() {
        let f = GraphFile {
            n: 3,
            edges: vec![[0, 1], [1, 0]],
        };
        assert!(f.validate().is_err());
    }
}
