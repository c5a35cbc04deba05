//! JSON pmf documents: `{"offset": <int>, "probs": [<float>...], "meta": {...}?}`.
//!
//! Floats are written in shortest round-trip form (at most 17 significant
//! digits), so a written document reloads to the identical pmf.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{make_pmf, DiscretePmf, PmfMeta};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmfDocument {
    pub offset: i64,
    pub probs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<PmfMeta>,
}

impl DiscretePmf {
    /// Parse and validate a pmf document; the weights must sum to one within 1e-9.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PmfDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn from_json_bytes(bytes: &[u8]) -> Result<Self> {
        let doc: PmfDocument = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn from_document(doc: PmfDocument) -> Result<Self> {
        let pmf = make_pmf(doc.offset, &doc.probs, false)?;
        Ok(match doc.meta {
            Some(meta) => {
                let input_sum = pmf.meta().input_sum;
                pmf.with_meta(PmfMeta { input_sum, ..meta })
            }
            None => pmf,
        })
    }

    pub fn to_document(&self) -> PmfDocument {
        let meta = self.meta();
        PmfDocument {
            offset: self.offset(),
            probs: self.weights().to_vec(),
            meta: if *meta == PmfMeta::default() {
                None
            } else {
                Some(meta.clone())
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("pmf documents contain only finite floats")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pmf::{binomial, poisson};

    #[test]
    fn round_trip_is_exact() {
        for p in [binomial(7, 0.31).unwrap(), poisson(2.5, 1e-12).unwrap()] {
            let text = p.to_json();
            let back = DiscretePmf::from_json(&text).unwrap();
            assert_eq!(back.offset(), p.offset());
            assert_eq!(back.weights(), p.weights());
            assert_eq!(back.meta().family, p.meta().family);
        }
    }

    #[test]
    fn loader_validates() {
        assert!(DiscretePmf::from_json(r#"{"offset": 0, "probs": [0.5, 0.5]}"#).is_ok());
        let trimmed = DiscretePmf::from_json(r#"{"offset": -3, "probs": [0, 1, 0]}"#).unwrap();
        assert_eq!(trimmed.offset(), -2);
        for bad in [
            r#"{"offset": 0, "probs": [0.5, 0.6]}"#,
            r#"{"offset": 0, "probs": []}"#,
            r#"{"offset": 0, "probs": [-0.5, 1.5]}"#,
            r#"{"offset": 0.5, "probs": [1]}"#,
            r#"{"probs": [1]}"#,
            r#"{"offset": 0, "probs": [1], "extra": 1}"#,
            r#"[1, 2]"#,
            "",
        ] {
            assert!(DiscretePmf::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn meta_is_optional_and_kept() {
        let p = DiscretePmf::from_json(
            r#"{"offset": 0, "probs": [0.25, 0.75], "meta": {"family": "bernoulli", "params": {"p": 0.75}}}"#,
        )
        .unwrap();
        assert_eq!(p.meta().family.as_deref(), Some("bernoulli"));
        assert_eq!(p.meta().params["p"], 0.75);
    }
}
