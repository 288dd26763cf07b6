//! Inductive document network embedding with topic-word attention.
//!
//! Word and topic vectors live in one space. A document is embedded by
//! letting every topic attend to the document's words ([`twa`]); the vectors
//! are trained so that documents within two hops in the citation or link
//! graph get high `σ(d_i · d_j)` ([`trainer`]). Because embedding only needs
//! the text, unseen documents are embedded inductively.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the precision used by the command-line tool and by the
//! gradient checks respectively.

pub mod checkpoint;
pub mod corpus;
pub mod error;
pub mod evaluator;
pub mod graph;
pub mod interpret;
pub mod scalar;
pub mod seed;
pub mod trainer;
pub mod twa;

pub use corpus::{
    build_vocab, load_cora, load_generic, tokenize, vectorize, DocTermMatrix, LabelMatrix, RawCorpus,
    Tokenizer, VocabConfig, Vocabulary,
};
pub use error::{IdneError, Result};
pub use graph::{build_delta, build_graph, DocumentGraph, PairBatch, PairSampler, ReachabilityMatrix};
pub use scalar::Scalar;
pub use trainer::{train, TrainConfig, TrainReport};
pub use twa::{attention, embed_corpus, embed_doc, AttentionMap, DocEmbedding, ModelParams};

/// Single-precision model, the checkpoint precision.
pub type ModelParams32 = ModelParams<f32>;
/// Double-precision model.
pub type ModelParams64 = ModelParams<f64>;
pub type TrainReport32 = TrainReport<f32>;
pub type TrainReport64 = TrainReport<f64>;
pub type DocEmbedding32 = DocEmbedding<f32>;
pub type DocEmbedding64 = DocEmbedding<f64>;
