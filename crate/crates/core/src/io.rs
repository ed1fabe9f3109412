//! JSON interchange formats for configurations, states, projection bundles
//! and clusters.

use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::Cluster;
use crate::lincore::{ChiralityMatrix, DirectionTensor, DiscreteState, LineConfig, LineSpec, Vec3};
use crate::matrix::IntMatrix;
use crate::projection::{bundle_from_parts, ProjectionBundle, ProjectionKind};
use crate::rational::{big_to_f64, to_f64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub n: usize,
    pub lines: Vec<LineSpec>,
}

impl ConfigFile {
    pub fn new(lines: Vec<LineSpec>) -> Self {
        Self { n: lines.len(), lines }
    }

    pub fn to_config(&self) -> Result<LineConfig> {
        check_len(self.n, self.lines.len())?;
        LineConfig::from_spec(&self.lines)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateFile {
    pub n: usize,
    #[serde(rename = "P")]
    pub p: Vec<Vec<i64>>,
    #[serde(rename = "N")]
    pub n_hat: Vec<Vec<Vec<i64>>>,
}

impl StateFile {
    pub fn from_state(s: &DiscreteState) -> Self {
        Self { n: s.dim(), p: s.p.matrix().rows(), n_hat: s.dir.components().iter().map(IntMatrix::rows).collect() }
    }

    pub fn to_state(&self) -> Result<DiscreteState> {
        check_len(self.n, self.p.len())?;
        check_len(self.n, self.n_hat.len())?;
        let p = ChiralityMatrix::from_rows(&self.p)?;
        let dir = tensor_from_rows(self.n, &self.n_hat)?;
        DiscreteState::new(p, dir)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleFile {
    pub n: usize,
    pub kind: ProjectionKind,
    #[serde(rename = "U")]
    pub u: Vec3,
    #[serde(rename = "prM")]
    pub prm: Vec<Vec<Vec<i64>>>,
    #[serde(rename = "O")]
    pub overlap: Vec<Vec<i64>>,
}

impl BundleFile {
    pub fn from_bundle(b: &ProjectionBundle) -> Self {
        Self {
            n: b.dim(),
            kind: b.kind,
            u: b.center,
            prm: b.prm.components().iter().map(IntMatrix::rows).collect(),
            overlap: b.overlap.rows(),
        }
    }

    pub fn to_bundle(&self) -> Result<ProjectionBundle> {
        check_len(self.n, self.overlap.len())?;
        let prm = tensor_from_rows(self.n, &self.prm)?;
        let overlap = IntMatrix::from_rows(&self.overlap)
            .ok_or_else(|| Error::Format("overlap matrix is not square".into()))?;
        let mut b = bundle_from_parts(prm, overlap);
        b.kind = self.kind;
        b.center = self.u;
        Ok(b)
    }
}

/// A cluster with its states as hexadecimal tensor keys.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterFile {
    pub n: usize,
    #[serde(rename = "P")]
    pub p: Vec<Vec<i64>>,
    pub det: i128,
    /// Number of distinct invariant values.
    pub size: usize,
    pub states: Vec<String>,
    pub adjacency: Vec<Vec<usize>>,
    /// Exact invariant per state as `num/den`; `null` where singular.
    pub invariants: Vec<Option<String>>,
    /// Sum of the distinct invariants, exact and decimal.
    pub gsum: String,
    pub gsum_decimal: f64,
}

impl ClusterFile {
    pub fn from_cluster(c: &Cluster) -> Self {
        let g = c.gsum();
        Self {
            n: c.dim(),
            p: c.p.matrix().rows(),
            det: c.det(),
            size: c.size(),
            states: c.states.iter().map(|b| format!("{b:x}")).collect(),
            adjacency: c.adjacency.clone(),
            invariants: c.inv_values.iter().map(|v| v.map(|r| r.to_string())).collect(),
            gsum: g.to_string(),
            gsum_decimal: big_to_f64(&g),
        }
    }

    /// Decimal invariants, singular states skipped.
    pub fn decimal_invariants(&self) -> Result<Vec<f64>> {
        self.invariants
            .iter()
            .flatten()
            .map(|s| s.parse().map(|r| to_f64(&r)).map_err(|_| Error::Format(format!("bad rational {s:?}"))))
            .collect()
    }
}

fn check_len(n: usize, got: usize) -> Result<()> {
    if n == got {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected: n, got })
    }
}

fn tensor_from_rows(n: usize, comps: &[Vec<Vec<i64>>]) -> Result<DirectionTensor> {
    check_len(n, comps.len())?;
    let mats = comps
        .iter()
        .map(|c| IntMatrix::from_rows(c).ok_or_else(|| Error::Format("tensor component is not square".into())))
        .collect::<Result<Vec<_>>>()?;
    DirectionTensor::from_components(&mats)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("line {}, column {}: {e}", e.line(), e.column())))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json(value)? + "\n").map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_round_trip() {
        let p = ChiralityMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        let mut t = DirectionTensor::zeros(3);
        t.set_cyclic(0, 1, 2, 1);
        let s = DiscreteState::new(p, t).unwrap();
        let text = to_json(&StateFile::from_state(&s)).unwrap();
        assert!(text.contains("\"P\""));
        let back = from_json::<StateFile>(&text).unwrap().to_state().unwrap();
        assert_eq!(back.canonical_key(), s.canonical_key());
    }

    #[test]
    fn errors_carry_positions() {
        let err = from_json::<StateFile>("{\n \"n\": 3,\n \"P\": oops }").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn size_mismatch() {
        let f = StateFile { n: 3, p: vec![vec![0, 1], vec![1, 0]], n_hat: vec![] };
        assert!(matches!(f.to_state(), Err(Error::SizeMismatch { .. })));
    }
}
