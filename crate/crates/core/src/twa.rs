//! Topic-word attention: word and topic vectors, per-document attention
//! maps and document vectors.
//!
//! For a document with distinct terms `j` (counts `c_j`, total `N`):
//!
//! ```text
//! s_kj = t_k · w_j
//! Z_kj = relu(s_kj) / Σ_k' relu(s_k'j)        (column normalization)
//! D_k  = Σ_j Z_kj c_j w_j / N
//! d    = Σ_k D_k
//! ```
//!
//! A column whose rectified scores sum to at most [`COLUMN_EPS`] is left at
//! zero and reported as flagged; that word then contributes nothing to `d`.

use ndarray::{s, Array1, Array2, ArrayView1, Axis, Zip};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::corpus::{DocRow, DocTermMatrix};
use crate::error::{IdneError, Result};
use crate::scalar::Scalar;

/// Column sums at or below this are treated as zero.
pub const COLUMN_EPS: f64 = 1e-12;

/// Word matrix `W` (`n_w × p`) and topic matrix `T` (`n_t × p`).
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams<F> {
    words: Array2<F>,
    topics: Array2<F>,
}

impl<F: Scalar> ModelParams<F> {
    pub fn new(words: Array2<F>, topics: Array2<F>) -> Result<Self> {
        if words.ncols() != topics.ncols() {
            return Err(IdneError::InvalidDimension(format!(
                "word dim {} != topic dim {}",
                words.ncols(),
                topics.ncols()
            )));
        }
        if words.nrows() == 0 || topics.nrows() == 0 || words.ncols() == 0 {
            return Err(IdneError::InvalidDimension(format!(
                "n_w={}, n_t={}, p={} must all be >= 1",
                words.nrows(),
                topics.nrows(),
                words.ncols()
            )));
        }
        Ok(Self { words, topics })
    }

    /// I.i.d. uniform entries on `[-1/√p, 1/√p]`. Values are drawn in `f64`
    /// so `f32` and `f64` models from the same seed agree up to rounding.
    pub fn init(n_words: usize, n_topics: usize, dim: usize, seed: u64) -> Result<Self> {
        if n_words == 0 || n_topics == 0 || dim == 0 {
            return Err(IdneError::InvalidDimension(format!(
                "n_w={n_words}, n_t={n_topics}, p={dim} must all be >= 1"
            )));
        }
        let bound = 1.0 / (dim as f64).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |shape: (usize, usize)| {
            Array2::from_shape_simple_fn(shape, || F::of(rng.random_range(-bound..=bound)))
        };
        let words = draw((n_words, dim));
        let topics = draw((n_topics, dim));
        Self::new(words, topics)
    }

    pub fn words(&self) -> &Array2<F> {
        &self.words
    }

    pub fn topics(&self) -> &Array2<F> {
        &self.topics
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut Array2<F>, &mut Array2<F>) {
        (&mut self.words, &mut self.topics)
    }

    pub fn n_words(&self) -> usize {
        self.words.nrows()
    }

    pub fn n_topics(&self) -> usize {
        self.topics.nrows()
    }

    pub fn dim(&self) -> usize {
        self.words.ncols()
    }

    pub fn is_finite(&self) -> bool {
        self.words.iter().chain(self.topics.iter()).all(|v| v.is_finite())
    }

    pub fn cast<G: Scalar>(&self) -> ModelParams<G> {
        ModelParams {
            words: self.words.mapv(|v| G::of(v.as_f64())),
            topics: self.topics.mapv(|v| G::of(v.as_f64())),
        }
    }
}

/// Attention weights of one document over its distinct terms.
#[derive(Debug, Clone, PartialEq)]
pub struct AttentionMap<F> {
    /// `n_t × n_terms`; every column sums to one unless flagged.
    pub weights: Array2<F>,
    pub terms: Vec<usize>,
    pub counts: Vec<u32>,
    /// Column positions whose rectified scores were all zero.
    pub flagged: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DocEmbedding<F> {
    pub vector: Array1<F>,
    /// Row `k` is the representation of the document seen from topic `k`.
    pub topic_parts: Array2<F>,
}

/// Intermediate values of one forward pass, kept for the backward pass.
#[derive(Debug, Clone)]
pub(crate) struct DocForward<F> {
    pub terms: Vec<usize>,
    /// `c_j / N`.
    pub weights: Array1<F>,
    /// Gathered word vectors, `n_terms × p`.
    pub word_rows: Array2<F>,
    /// Raw topic-word dot products, `n_t × n_terms`.
    pub scores: Array2<F>,
    pub col_sums: Vec<F>,
    pub attention: Array2<F>,
    pub flagged: Vec<usize>,
    pub topic_parts: Array2<F>,
    pub vector: Array1<F>,
}

pub(crate) fn forward<F: Scalar>(params: &ModelParams<F>, doc: DocRow<'_>) -> Result<DocForward<F>> {
    if doc.is_empty() {
        return Err(IdneError::EmptyDocument);
    }
    if let Some(&t) = doc.terms.iter().find(|&&t| t >= params.n_words()) {
        return Err(IdneError::Shape(format!(
            "term {t} out of range for {} words",
            params.n_words()
        )));
    }
    let total = F::of(doc.total() as f64);
    let weights: Array1<F> = doc.counts.iter().map(|&c| F::of(c as f64) / total).collect();
    let word_rows = params.words.select(Axis(0), doc.terms);
    let scores = params.topics.dot(&word_rows.t());

    let eps = F::of(COLUMN_EPS);
    let mut attention = scores.mapv(|v| v.max(F::zero()));
    let mut col_sums = Vec::with_capacity(doc.len());
    let mut flagged = Vec::new();
    for (j, mut col) in attention.axis_iter_mut(Axis(1)).enumerate() {
        let sum: F = col.iter().copied().sum();
        col_sums.push(sum);
        if sum > eps {
            col.mapv_inplace(|v| v / sum);
        } else {
            col.fill(F::zero());
            flagged.push(j);
        }
    }

    let scaled = &attention * &weights.view().insert_axis(Axis(0));
    let topic_parts = scaled.dot(&word_rows);
    let mut vector = Array1::zeros(params.dim());
    for part in topic_parts.rows() {
        vector += &part;
    }
    Ok(DocForward {
        terms: doc.terms.to_vec(),
        weights,
        word_rows,
        scores,
        col_sums,
        attention,
        flagged,
        topic_parts,
        vector,
    })
}

/// Gradients of one document's contribution given `∂L/∂d`.
pub(crate) struct DocBackward<F> {
    /// Rows aligned with `DocForward::terms`.
    pub words: Array2<F>,
    pub topics: Array2<F>,
}

pub(crate) fn backward<F: Scalar>(
    params: &ModelParams<F>,
    fwd: &DocForward<F>,
    grad_vector: ArrayView1<'_, F>,
) -> DocBackward<F> {
    let n_t = params.n_topics();
    // d = Σ_k D_k, so every topic part receives the same upstream gradient.
    let grad_parts = grad_vector
        .insert_axis(Axis(0))
        .broadcast((n_t, params.dim()))
        .unwrap()
        .to_owned();
    let scaled = &fwd.attention * &fwd.weights.view().insert_axis(Axis(0));

    // Value path: D_k = Σ_j Z_kj (c_j/N) w_j.
    let mut grad_words = scaled.t().dot(&grad_parts);

    // ∂L/∂Z_kj = (c_j/N) g_k · w_j
    let grad_attention = grad_parts.dot(&fwd.word_rows.t()) * fwd.weights.view().insert_axis(Axis(0));

    // Through column normalization and the rectifier.
    let mut grad_scores = Array2::<F>::zeros(grad_attention.raw_dim());
    let eps = F::of(COLUMN_EPS);
    for j in 0..fwd.terms.len() {
        let sum = fwd.col_sums[j];
        if sum <= eps {
            continue;
        }
        let z = fwd.attention.column(j);
        let gz = grad_attention.column(j);
        let inner: F = z.iter().zip(gz.iter()).map(|(&a, &b)| a * b).sum();
        let mut out = grad_scores.column_mut(j);
        Zip::from(&mut out)
            .and(&gz)
            .and(fwd.scores.column(j))
            .for_each(|o, &g, &s| {
                if s > F::zero() {
                    *o = (g - inner) / sum;
                }
            });
    }

    // Key path: s_kj = t_k · w_j.
    let grad_topics = grad_scores.dot(&fwd.word_rows);
    grad_words += &grad_scores.t().dot(&params.topics);
    DocBackward {
        words: grad_words,
        topics: grad_topics,
    }
}

pub fn attention<F: Scalar>(params: &ModelParams<F>, doc: DocRow<'_>) -> Result<AttentionMap<F>> {
    let f = forward(params, doc)?;
    Ok(AttentionMap {
        weights: f.attention,
        terms: f.terms,
        counts: doc.counts.to_vec(),
        flagged: f.flagged,
    })
}

/// Embeds one document from its term counts. Training and inductive
/// inference both go through this path.
pub fn embed_doc<F: Scalar>(params: &ModelParams<F>, doc: DocRow<'_>) -> Result<DocEmbedding<F>> {
    let f = forward(params, doc)?;
    Ok(DocEmbedding {
        vector: f.vector,
        topic_parts: f.topic_parts,
    })
}

/// Embeds every row of `x`; rows without terms become zero vectors.
pub fn embed_corpus<F: Scalar>(params: &ModelParams<F>, x: &DocTermMatrix) -> Array2<F> {
    let rows: Vec<Array1<F>> = (0..x.n_docs())
        .into_par_iter()
        .map(|i| {
            let row = x.row(i);
            if row.is_empty() {
                Array1::zeros(params.dim())
            } else {
                forward(params, row).expect("row validated").vector
            }
        })
        .collect();
    let mut out = Array2::zeros((x.n_docs(), params.dim()));
    for (i, r) in rows.into_iter().enumerate() {
        out.slice_mut(s![i, ..]).assign(&r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::SparseDoc;
    use ndarray::array;

    fn doc(pairs: &[(usize, u32)]) -> SparseDoc {
        SparseDoc::from_counts(pairs.iter().copied())
    }

    #[test]
    fn init_shapes_bounds_and_determinism() {
        let p: ModelParams<f32> = ModelParams::init(50, 4, 16, 7).unwrap();
        assert_eq!(p.words().dim(), (50, 16));
        assert_eq!(p.topics().dim(), (4, 16));
        let b = 0.25f32;
        assert!(p.words().iter().chain(p.topics().iter()).all(|v| v.abs() <= b));
        assert_eq!(p, ModelParams::init(50, 4, 16, 7).unwrap());
        assert_ne!(p, ModelParams::init(50, 4, 16, 8).unwrap());
        let one: ModelParams<f64> = ModelParams::init(3, 1, 1, 0).unwrap();
        assert_eq!(one.dim(), 1);
        assert!(ModelParams::<f64>::init(0, 1, 1, 0).is_err());
        assert!(ModelParams::<f64>::init(1, 0, 1, 0).is_err());
        assert!(ModelParams::<f64>::init(1, 1, 0, 0).is_err());
    }

    #[test]
    fn init_f32_matches_f64_draws() {
        let a: ModelParams<f32> = ModelParams::init(10, 3, 5, 1).unwrap();
        let b: ModelParams<f64> = ModelParams::init(10, 3, 5, 1).unwrap();
        assert_eq!(a, b.cast::<f32>());
    }

    #[test]
    fn single_topic_columns_are_one() {
        let words = array![[1.0, 0.5], [0.2, 0.9], [2.0, 0.1]];
        let topics = array![[1.0, 1.0]];
        let p = ModelParams::new(words, topics).unwrap();
        let z = attention(&p, doc(&[(0, 1), (1, 3), (2, 2)]).as_row()).unwrap();
        assert_eq!(z.weights, array![[1.0, 1.0, 1.0]]);
        assert!(z.flagged.is_empty());
    }

    #[test]
    fn orthogonal_words_give_identity() {
        let e = array![[1.0, 0.0], [0.0, 1.0]];
        let p = ModelParams::new(e.clone(), e).unwrap();
        let z = attention(&p, doc(&[(0, 1), (1, 4)]).as_row()).unwrap();
        assert_eq!(z.weights, array![[1.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn opposed_word_is_flagged() {
        let words = array![[1.0, 0.0], [-1.0, 0.0]];
        let topics = array![[1.0, 0.0], [0.0, 1.0]];
        let p = ModelParams::new(words, topics).unwrap();
        let f = forward(&p, doc(&[(0, 1), (1, 1)]).as_row()).unwrap();
        assert_eq!(f.flagged, vec![1]);
        assert_eq!(f.attention.column(1).sum(), 0.0);
        // only word 0 contributes, with weight 1/2
        assert_eq!(f.vector, array![0.5, 0.0]);
    }

    #[test]
    fn repeated_single_word_embeds_to_itself() {
        let words = array![[0.3, -0.7, 0.2], [1.0, 1.0, 1.0]];
        let topics = array![[0.5, -1.0, 0.0]];
        let p = ModelParams::new(words, topics).unwrap();
        for c in [1, 2, 7] {
            let e = embed_doc(&p, doc(&[(0, c)]).as_row()).unwrap();
            assert!((&e.vector - &p.words().row(0)).iter().all(|v: &f64| v.abs() < 1e-15));
        }
    }

    #[test]
    fn equal_topics_split_evenly() {
        let words = array![[0.3, 0.7], [0.9, 0.1], [0.4, 0.4]];
        let topics = array![[1.0, 2.0], [1.0, 2.0]];
        let p = ModelParams::new(words, topics).unwrap();
        let e = embed_doc(&p, doc(&[(0, 2), (2, 1)]).as_row()).unwrap();
        assert_eq!(e.topic_parts.row(0), e.topic_parts.row(1));
        assert_eq!(e.vector, &e.topic_parts.row(0) * 2.0);
    }

    #[test]
    fn empty_document_is_error() {
        let p: ModelParams<f64> = ModelParams::init(3, 2, 2, 0).unwrap();
        assert!(matches!(
            embed_doc(&p, SparseDoc::default().as_row()),
            Err(IdneError::EmptyDocument)
        ));
    }

    #[test]
    fn corpus_rows_match_single_embeddings() {
        let p: ModelParams<f64> = ModelParams::init(6, 3, 4, 2).unwrap();
        let rows = vec![doc(&[(0, 1), (3, 2)]), SparseDoc::default(), doc(&[(5, 1)])];
        let x = DocTermMatrix::from_rows(6, rows.clone()).unwrap();
        let e = embed_corpus(&p, &x);
        assert_eq!(e.row(0), embed_doc(&p, rows[0].as_row()).unwrap().vector);
        assert!(e.row(1).iter().all(|&v| v == 0.0));
        assert_eq!(e.row(2), embed_doc(&p, rows[2].as_row()).unwrap().vector);
    }
}
