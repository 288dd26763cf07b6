//! Scalar reference implementations shared by the integration tests. They
//! use plain nested loops over `Vec<f64>` and never call into the model
//! code, so they check it independently.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct Instance {
    pub words: Vec<Vec<f64>>,
    pub topics: Vec<Vec<f64>>,
    /// Per document: `(term, count)` with distinct sorted terms.
    pub docs: Vec<Vec<(usize, u32)>>,
}

pub fn random_instance(rng: &mut ChaCha8Rng, max_topics: usize, max_dim: usize, max_words: usize, n_docs: usize) -> Instance {
    let n_t = rng.random_range(1..=max_topics);
    let p = rng.random_range(1..=max_dim);
    let n_w = rng.random_range(2..=max_words);
    let mut mat = |rows: usize| -> Vec<Vec<f64>> {
        (0..rows)
            .map(|_| (0..p).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect()
    };
    let words = mat(n_w);
    let topics = mat(n_t);
    let docs = (0..n_docs)
        .map(|_| {
            let mut d = Vec::new();
            for w in 0..n_w {
                if rng.random_bool(0.6) {
                    d.push((w, rng.random_range(1..=4u32)));
                }
            }
            if d.is_empty() {
                d.push((rng.random_range(0..n_w), rng.random_range(1..=4)));
            }
            d
        })
        .collect();
    Instance { words, topics, docs }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Reference embedding: returns `(d, topic_parts, Z)`.
pub fn oracle_embed(words: &[Vec<f64>], topics: &[Vec<f64>], doc: &[(usize, u32)]) -> (Vec<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let n_t = topics.len();
    let p = words[0].len();
    let m = doc.len();
    let mut total = 0.0;
    for &(_, c) in doc {
        total += c as f64;
    }
    let mut z = vec![vec![0.0; m]; n_t];
    for j in 0..m {
        let w = &words[doc[j].0];
        let mut col_sum = 0.0;
        for k in 0..n_t {
            let mut s = 0.0;
            for q in 0..p {
                s += topics[k][q] * w[q];
            }
            let r = if s > 0.0 { s } else { 0.0 };
            z[k][j] = r;
            col_sum += r;
        }
        for k in 0..n_t {
            z[k][j] = if col_sum > EPS { z[k][j] / col_sum } else { 0.0 };
        }
    }
    let mut parts = vec![vec![0.0; p]; n_t];
    for k in 0..n_t {
        for j in 0..m {
            let (w, c) = doc[j];
            for q in 0..p {
                parts[k][q] += z[k][j] * c as f64 * words[w][q] / total;
            }
        }
    }
    let mut d = vec![0.0; p];
    for k in 0..n_t {
        for q in 0..p {
            d[q] += parts[k][q];
        }
    }
    (d, parts, z)
}

pub fn oracle_pair_loss(s: f64, linked: bool) -> f64 {
    // -[y log σ(s) + (1-y) log σ(-s)], both branches written out directly
    if linked {
        if s >= 0.0 {
            (1.0 + (-s).exp()).ln()
        } else {
            -s + (1.0 + s.exp()).ln()
        }
    } else if s >= 0.0 {
        s + (1.0 + (-s).exp()).ln()
    } else {
        (1.0 + s.exp()).ln()
    }
}

/// Mean loss over `pairs` computed entirely with the reference embedding.
pub fn oracle_batch_loss(words: &[Vec<f64>], topics: &[Vec<f64>], docs: &[Vec<(usize, u32)>], pairs: &[(usize, usize, bool)]) -> f64 {
    let mut total = 0.0;
    for &(i, j, y) in pairs {
        let di = oracle_embed(words, topics, &docs[i]).0;
        let dj = oracle_embed(words, topics, &docs[j]).0;
        let s: f64 = di.iter().zip(&dj).map(|(a, b)| a * b).sum();
        total += oracle_pair_loss(s, y);
    }
    total / pairs.len() as f64
}

/// Random undirected edge list on `n` nodes (self-loops and repeats included
/// on purpose).
pub fn random_edges(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Dense `(A + A²)` with zeroed diagonal, after symmetrizing and dropping loops.
pub fn brute_path_counts(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u32>> {
    let mut a = vec![vec![0u32; n]; n];
    for &(i, j) in edges {
        if i != j {
            a[i][j] = 1;
            a[j][i] = 1;
        }
    }
    let mut out = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut two = 0;
            for k in 0..n {
                two += a[i][k] * a[k][j];
            }
            out[i][j] = a[i][j] + two;
        }
    }
    out
}

/// Two 10-document cliques over disjoint 5-word vocabularies (terms 0..5 and
/// 5..10). Returns per-document `(term, count)` lists and the clique edges.
pub fn two_cliques(rng: &mut ChaCha8Rng) -> (Vec<Vec<(usize, u32)>>, Vec<(usize, usize)>) {
    let words_per_side = 5;
    let mut docs = Vec::new();
    let mut edges = Vec::new();
    for side in 0..2 {
        for a in 0..10 {
            for b in a + 1..10 {
                edges.push((side * 10 + a, side * 10 + b));
            }
            let mut doc = Vec::new();
            for w in 0..words_per_side {
                if rng.random_bool(0.6) {
                    doc.push((side * words_per_side + w, rng.random_range(1..=3u32)));
                }
            }
            if doc.is_empty() {
                doc.push((side * words_per_side + rng.random_range(0..words_per_side), 1));
            }
            docs.push(doc);
        }
    }
    (docs, edges)
}
