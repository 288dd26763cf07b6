//! Binary model checkpoints.
//!
//! Layout (all integers and floats little-endian):
//!
//! ```text
//! magic    4 bytes  b"IDNE"
//! version  u32      1
//! n_w      u32
//! n_t      u32
//! p        u32
//! vocab    u64      Vocabulary::hash of the aligned term list
//! W        n_w * p  f32, row-major
//! T        n_t * p  f32, row-major
//! ```

use std::fs;
use std::path::Path;

use ndarray::Array2;

use crate::error::{IdneError, Result};
use crate::scalar::Scalar;
use crate::twa::ModelParams;

pub const MAGIC: &[u8; 4] = b"IDNE";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 * 4 + 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckpointHeader {
    pub version: u32,
    pub n_words: usize,
    pub n_topics: usize,
    pub dim: usize,
    pub vocab_hash: u64,
}

pub fn encode<F: Scalar>(params: &ModelParams<F>, vocab_hash: u64) -> Vec<u8> {
    let n = (params.n_words() + params.n_topics()) * params.dim();
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * n);
    out.extend_from_slice(MAGIC);
    for v in [VERSION, params.n_words() as u32, params.n_topics() as u32, params.dim() as u32] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&vocab_hash.to_le_bytes());
    for v in params.words().iter().chain(params.topics().iter()) {
        let f = v.to_f32().expect("finite parameters");
        out.extend_from_slice(&f.to_le_bytes());
    }
    out
}

pub fn decode<F: Scalar>(bytes: &[u8]) -> Result<(ModelParams<F>, CheckpointHeader)> {
    let bad = |m: &str| IdneError::Checkpoint(m.to_owned());
    if bytes.len() < HEADER_LEN {
        return Err(bad("truncated header"));
    }
    if &bytes[..4] != MAGIC {
        return Err(bad("bad magic"));
    }
    let word = |k: usize| u32::from_le_bytes(bytes[4 + 4 * k..8 + 4 * k].try_into().unwrap());
    let header = CheckpointHeader {
        version: word(0),
        n_words: word(1) as usize,
        n_topics: word(2) as usize,
        dim: word(3) as usize,
        vocab_hash: u64::from_le_bytes(bytes[20..28].try_into().unwrap()),
    };
    if header.version != VERSION {
        return Err(IdneError::Checkpoint(format!(
            "unsupported version {}",
            header.version
        )));
    }
    let nw = header.n_words * header.dim;
    let nt = header.n_topics * header.dim;
    let body = &bytes[HEADER_LEN..];
    if body.len() != 4 * (nw + nt) {
        return Err(IdneError::Checkpoint(format!(
            "expected {} payload bytes, found {}",
            4 * (nw + nt),
            body.len()
        )));
    }
    let values: Vec<F> = body
        .chunks_exact(4)
        .map(|c| F::of(f32::from_le_bytes(c.try_into().unwrap()) as f64))
        .collect();
    let words = Array2::from_shape_vec((header.n_words, header.dim), values[..nw].to_vec())
        .map_err(|e| IdneError::Checkpoint(e.to_string()))?;
    let topics = Array2::from_shape_vec((header.n_topics, header.dim), values[nw..].to_vec())
        .map_err(|e| IdneError::Checkpoint(e.to_string()))?;
    Ok((ModelParams::new(words, topics)?, header))
}

pub fn save<F: Scalar>(path: &Path, params: &ModelParams<F>, vocab_hash: u64) -> Result<()> {
    fs::write(path, encode(params, vocab_hash)).map_err(|e| IdneError::io(path, e))
}

pub fn load<F: Scalar>(path: &Path) -> Result<(ModelParams<F>, CheckpointHeader)> {
    let bytes = fs::read(path).map_err(|e| IdneError::io(path, e))?;
    decode(&bytes)
}
