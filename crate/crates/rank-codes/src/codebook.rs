//! JSON interchange format for codebooks.
//!
//! A codebook file is
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "type": "constant_rank",
//!   "params": { "q": 2, "m": 4, "n": 4, "d": 4, "r": 2 },
//!   "words": [[0, 1, 2, 3], ...]
//! }
//! ```
//!
//! For `constant_rank` codes, words are coordinate index arrays over
//! GF(q^m); the field is rebuilt deterministically from (q, m). For
//! `constant_dimension` codes, `m` is omitted and each word is the canonical
//! basis matrix of a subspace as `{rows, cols, q, entries}`. The `d` field
//! records the verified minimum distance; it is absent for singletons,
//! whose distance is the unbounded sentinel.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::codes::{ConstantDimensionCode, ConstantRankCode, Distance};
use crate::error::{Error, Result};
use crate::field::{factor_prime_power, make_field_with_cap, Gfq};
use crate::linalg::{MatrixJson, MatrixQ, Subspace};
use crate::vector::RankVector;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodebookParams {
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    pub r: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CodebookPayload {
    ConstantRank {
        params: CodebookParams,
        words: Vec<Vec<u64>>,
    },
    ConstantDimension {
        params: CodebookParams,
        words: Vec<MatrixJson>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodebookFile {
    pub schema_version: u32,
    #[serde(flatten)]
    pub payload: CodebookPayload,
}

impl CodebookFile {
    pub fn from_rank_code(code: &ConstantRankCode) -> Self {
        let d = match code.min_distance() {
            Distance::Finite(v) => Some(v as u64),
            Distance::Unbounded => None,
        };
        CodebookFile {
            schema_version: SCHEMA_VERSION,
            payload: CodebookPayload::ConstantRank {
                params: CodebookParams {
                    q: code.spec().q(),
                    m: Some(code.spec().m()),
                    n: code.word_length() as u32,
                    d,
                    r: code.rank() as u32,
                },
                words: code.words().iter().map(RankVector::indices).collect(),
            },
        }
    }

    pub fn from_dimension_code(code: &ConstantDimensionCode) -> Self {
        let d = match code.min_distance() {
            Distance::Finite(v) => Some(v as u64),
            Distance::Unbounded => None,
        };
        CodebookFile {
            schema_version: SCHEMA_VERSION,
            payload: CodebookPayload::ConstantDimension {
                params: CodebookParams {
                    q: code.field().q(),
                    m: None,
                    n: code.ambient_dim() as u32,
                    d,
                    r: code.dim() as u32,
                },
                words: code.subspaces().iter().map(|s| s.basis().to_json()).collect(),
            },
        }
    }

    pub fn params(&self) -> &CodebookParams {
        match &self.payload {
            CodebookPayload::ConstantRank { params, .. } => params,
            CodebookPayload::ConstantDimension { params, .. } => params,
        }
    }

    pub fn is_rank(&self) -> bool {
        matches!(self.payload, CodebookPayload::ConstantRank { .. })
    }

    /// Rebuilds the constant-rank code, revalidating every invariant.
    pub fn to_rank_code(&self, cap: u64) -> Result<ConstantRankCode> {
        let CodebookPayload::ConstantRank { params, words } = &self.payload else {
            return Err(Error::Codebook(
                "expected a constant_rank codebook".into(),
            ));
        };
        let m = params
            .m
            .ok_or_else(|| Error::Codebook("constant_rank codebook needs m".into()))?;
        let (p, k) = factor_prime_power(params.q)
            .ok_or(Error::NotPrimePower(params.q))?;
        let spec = make_field_with_cap(p, k, m, cap)?;
        let code_words = words
            .iter()
            .map(|w| {
                if w.len() != params.n as usize {
                    return Err(Error::Codebook(format!(
                        "word length {} does not match n = {}",
                        w.len(),
                        params.n
                    )));
                }
                RankVector::from_indices(&spec, w)
            })
            .collect::<Result<Vec<_>>>()?;
        let code = ConstantRankCode::new(spec, code_words)?;
        if code.rank() != params.r as usize {
            return Err(Error::Codebook(format!(
                "words have rank {}, params claim r = {}",
                code.rank(),
                params.r
            )));
        }
        Ok(code)
    }

    /// Rebuilds the constant-dimension code, revalidating every invariant.
    pub fn to_dimension_code(&self, cap: u64) -> Result<ConstantDimensionCode> {
        let CodebookPayload::ConstantDimension { params, words } = &self.payload else {
            return Err(Error::Codebook(
                "expected a constant_dimension codebook".into(),
            ));
        };
        let (p, k) = factor_prime_power(params.q)
            .ok_or(Error::NotPrimePower(params.q))?;
        let field = Gfq::new(p, k, cap.max(params.q))?;
        let subspaces = words
            .iter()
            .map(|w| {
                let mat = MatrixQ::from_json(w, field.clone())?;
                if mat.cols() != params.n as usize {
                    return Err(Error::Codebook(format!(
                        "subspace ambient {} does not match n = {}",
                        mat.cols(),
                        params.n
                    )));
                }
                let s = Subspace::from_generators(mat);
                if s.dim() != params.r as usize {
                    return Err(Error::Codebook(format!(
                        "subspace dimension {} does not match r = {}",
                        s.dim(),
                        params.r
                    )));
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        ConstantDimensionCode::new(subspaces)
    }

    /// Claimed minimum distance against the recomputed one; used by the
    /// verification paths.
    pub fn check_claimed_distance(&self, actual: Distance) -> Result<()> {
        let claimed = self.params().d;
        match (claimed, actual) {
            (None, Distance::Unbounded) => Ok(()),
            (Some(c), Distance::Finite(a)) if c == a as u64 => Ok(()),
            (claimed, actual) => Err(Error::Codebook(format!(
                "claimed minimum distance {claimed:?} but recomputed {actual}"
            ))),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: CodebookFile = serde_json::from_str(text)?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Codebook(format!(
                "unsupported schema_version {}",
                file.schema_version
            )));
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

/// Standalone serialization of a rank vector: {field, coords}.
#[derive(Serialize, Deserialize)]
pub struct RankVectorJson {
    pub field: crate::field::FieldSpec,
    pub coords: Vec<u64>,
}

impl RankVectorJson {
    pub fn from_vector(v: &RankVector) -> Result<Self> {
        // round-trip the field through its serialized parts
        let js = serde_json::to_string(v.spec().as_ref())?;
        let field: crate::field::FieldSpec = serde_json::from_str(&js)?;
        Ok(RankVectorJson {
            field,
            coords: v.indices(),
        })
    }

    pub fn into_vector(self) -> Result<RankVector> {
        let spec = Arc::new(self.field);
        RankVector::from_indices(&spec, &self.coords)
    }
}
