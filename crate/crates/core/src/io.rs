//! JSON file formats for states and channels.
//!
//! State:
//!
//! ```json
//! { "dims": [2, 2], "ordering": "S⊗X", "matrix": [[re, im], ...] }
//! ```
//!
//! Channel:
//!
//! ```json
//! { "dim": 2, "label": "optional", "kraus": [[[re, im], ...], ...] }
//! ```
//!
//! Matrices are row-major. Numbers are written in shortest round-trip form
//! (at most 17 significant digits), so `f64` states round-trip bit-exactly.

use std::fs;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::state::{validate, DensityMatrix, Ordering, ValidationReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    #[serde(default = "default_ordering")]
    pub ordering: String,
    pub matrix: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub kraus: Vec<Vec<[f64; 2]>>,
}

fn default_ordering() -> String {
    Ordering::SX.label().to_string()
}

fn encode<T: Real>(m: &ComplexMatrix<T>) -> Vec<[f64; 2]> {
    m.as_slice().iter().map(|z| [z.re.as_f64(), z.im.as_f64()]).collect()
}

fn decode<T: Real>(entries: &[[f64; 2]]) -> Result<ComplexMatrix<T>> {
    ComplexMatrix::from_row_major(
        entries
            .iter()
            .map(|&[re, im]| Complex::new(T::lit(re), T::lit(im)))
            .collect(),
    )
    .map_err(|e| Error::Format(e.to_string()))
}

impl StateFile {
    pub fn from_state<T: Real>(rho: &DensityMatrix<T>) -> Self {
        Self {
            dims: rho.dims().to_vec(),
            ordering: rho.ordering().label().to_string(),
            matrix: encode(rho.matrix()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn ordering(&self) -> Result<Ordering> {
        Ordering::parse(&self.ordering)
            .ok_or_else(|| Error::Format(format!("unknown ordering {:?}", self.ordering)))
    }

    pub fn raw_matrix<T: Real>(&self) -> Result<ComplexMatrix<T>> {
        let m = decode(&self.matrix)?;
        if self.dims.iter().product::<usize>() != m.dim() {
            return Err(Error::Format(format!(
                "dims {:?} do not match a {}x{} matrix",
                self.dims,
                m.dim(),
                m.dim()
            )));
        }
        Ok(m)
    }

    /// Structural parse followed by the density-matrix checks.
    pub fn validation_report<T: Real>(&self) -> Result<ValidationReport> {
        self.ordering()?;
        Ok(validate(&self.raw_matrix::<T>()?, &self.dims))
    }

    pub fn to_state<T: Real>(&self) -> Result<DensityMatrix<T>> {
        let ordering = self.ordering()?;
        DensityMatrix::new(self.raw_matrix()?, self.dims.clone(), ordering)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state file serializes")
    }
}

impl ChannelFile {
    pub fn from_channel<T: Real>(ch: &KrausChannel<T>) -> Self {
        Self {
            dim: ch.dim(),
            label: Some(ch.label().to_string()),
            kraus: ch.operators().iter().map(encode).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_channel<T: Real>(&self) -> Result<KrausChannel<T>> {
        let ops = self
            .kraus
            .iter()
            .map(|k| {
                let m = decode::<T>(k)?;
                if m.dim() != self.dim {
                    return Err(Error::Format(format!(
                        "Kraus operator of dimension {} in a channel declared with dim {}",
                        m.dim(),
                        self.dim
                    )));
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        KrausChannel::new(ops, self.label.clone().unwrap_or_else(|| "file".into()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("channel file serializes")
    }
}

pub fn read_state<T: Real>(path: impl AsRef<Path>) -> Result<DensityMatrix<T>> {
    StateFile::parse(&fs::read_to_string(path)?)?.to_state()
}

pub fn write_state<T: Real>(path: impl AsRef<Path>, rho: &DensityMatrix<T>) -> Result<()> {
    fs::write(path, StateFile::from_state(rho).to_json() + "\n")?;
    Ok(())
}

pub fn read_channel<T: Real>(path: impl AsRef<Path>) -> Result<KrausChannel<T>> {
    ChannelFile::parse(&fs::read_to_string(path)?)?.to_channel()
}

pub fn write_channel<T: Real>(path: impl AsRef<Path>, ch: &KrausChannel<T>) -> Result<()> {
    fs::write(path, ChannelFile::from_channel(ch).to_json() + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::update_channel;
    use crate::state::bell_phi_plus;

    #[test]
    fn state_text_layout() {
        let bell = bell_phi_plus::<f64>(Ordering::SX);
        let text = StateFile::from_state(&bell).to_json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dims"], serde_json::json!([2, 2]));
        assert_eq!(v["ordering"], "S⊗X");
        assert_eq!(v["matrix"].as_array().unwrap().len(), 16);
        assert_eq!(v["matrix"][0], serde_json::json!([0.5, 0.0]));
    }

    #[test]
    fn malformed_inputs_are_format_errors() {
        for text in [
            "not json",
            r#"{"dims": [2], "matrix": [[1, 0], [0, 0], [0, 0]]}"#,
            r#"{"dims": [2, 2], "matrix": [[1, 0], [0, 0], [0, 0], [0, 0]]}"#,
            r#"{"dims": [2], "ordering": "AB", "matrix": [[1, 0], [0, 0], [0, 0], [0, 0]]}"#,
            r#"{"dims": [2], "matrix": [[1, 0], [0, 0], [0, 0], [0, 0]], "extra": 1}"#,
        ] {
            let res = StateFile::parse(text).and_then(|f| f.to_state::<f64>());
            assert!(matches!(res, Err(Error::Format(_))), "{text}: {res:?}");
        }
    }

    #[test]
    fn invalid_state_is_a_validation_error() {
        let text = r#"{"dims": [2], "matrix": [[0.6, 0], [0, 0], [0, 0], [0.6, 0]]}"#;
        let f = StateFile::parse(text).unwrap();
        assert!(!f.validation_report::<f64>().unwrap().is_ok());
        assert!(matches!(f.to_state::<f64>(), Err(Error::InvalidState(_))));
    }

    #[test]
    fn channel_round_trip() {
        let ch = update_channel(0.7f64).unwrap();
        let back = ChannelFile::parse(&ChannelFile::from_channel(&ch).to_json())
            .unwrap()
            .to_channel::<f64>()
            .unwrap();
        assert_eq!(back, ch);
        let bad = r#"{"dim": 2, "kraus": [[[1, 0], [0, 0], [0, 0], [0.5, 0]]]}"#;
        assert!(matches!(
            ChannelFile::parse(bad).unwrap().to_channel::<f64>(),
            Err(Error::IncompleteKraus(_))
        ));
    }
}
