//! Document graph, two-hop reachability matrix and balanced pair sampling.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::corpus::RawCorpus;
use crate::error::{IdneError, Result};

/// Compressed sparse rows with sorted column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix<V> {
    n: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<V>,
}

impl<V: Copy> CsrMatrix<V> {
    /// Square matrix from per-row `(column, value)` lists (sorted on input).
    fn from_sorted_rows(rows: Vec<Vec<(usize, V)>>) -> Self {
        let n = rows.len();
        let mut indptr = Vec::with_capacity(n + 1);
        indptr.push(0);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for row in rows {
            for (j, v) in row {
                indices.push(j);
                values.push(v);
            }
            indptr.push(indices.len());
        }
        Self {
            n,
            indptr,
            indices,
            values,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[V]) {
        let (a, b) = (self.indptr[i], self.indptr[i + 1]);
        (&self.indices[a..b], &self.values[a..b])
    }

    pub fn get(&self, i: usize, j: usize) -> Option<V> {
        let (cols, vals) = self.row(i);
        cols.binary_search(&j).ok().map(|k| vals[k])
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.row(i).0.binary_search(&j).is_ok()
    }

    /// Fraction of the `n²` cells that are stored.
    pub fn density(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.nnz() as f64 / (self.n as f64 * self.n as f64)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, V)> + '_ {
        (0..self.n).flat_map(move |i| {
            let (c, v) = self.row(i);
            c.iter().zip(v).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn is_symmetric(&self) -> bool
    where
        V: PartialEq,
    {
        self.iter().all(|(i, j, v)| self.get(j, i) == Some(v))
    }
}

/// Undirected document graph: symmetric binary adjacency with empty diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentGraph {
    adjacency: CsrMatrix<()>,
}

impl DocumentGraph {
    /// Symmetrizes `edges`, dropping self-loops and collapsing parallel edges.
    pub fn from_edges(n_docs: usize, edges: &[(usize, usize)]) -> Self {
        let mut rows: Vec<Vec<(usize, ())>> = vec![Vec::new(); n_docs];
        for &(i, j) in edges {
            assert!(i < n_docs && j < n_docs, "edge ({i}, {j}) out of range");
            if i != j {
                rows[i].push((j, ()));
                rows[j].push((i, ()));
            }
        }
        for r in &mut rows {
            r.sort_unstable_by_key(|e| e.0);
            r.dedup_by_key(|e| e.0);
        }
        Self {
            adjacency: CsrMatrix::from_sorted_rows(rows),
        }
    }

    pub fn n_docs(&self) -> usize {
        self.adjacency.n()
    }

    pub fn adjacency(&self) -> &CsrMatrix<()> {
        &self.adjacency
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        self.adjacency.row(i).0
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency.contains(i, j)
    }

    /// Number of undirected links.
    pub fn n_links(&self) -> usize {
        self.adjacency.nnz() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .filter(|(i, j, _)| i < j)
            .map(|(i, j, _)| (i, j))
    }

    /// Subgraph induced by `keep`; node `k` of the result is `keep[k]`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> DocumentGraph {
        let mut position = vec![usize::MAX; self.n_docs()];
        for (k, &i) in keep.iter().enumerate() {
            position[i] = k;
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter_map(|(i, j)| {
                let (a, b) = (position[i], position[j]);
                (a != usize::MAX && b != usize::MAX).then_some((a, b))
            })
            .collect();
        DocumentGraph::from_edges(keep.len(), &edges)
    }
}

pub fn build_graph(corpus: &RawCorpus) -> DocumentGraph {
    DocumentGraph::from_edges(corpus.len(), &corpus.edges)
}

/// Binary two-hop reachability `delta` together with the path counts
/// `(A + A²)_ij` it was derived from. Diagonal entries are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct ReachabilityMatrix {
    pos_weight: CsrMatrix<u32>,
}

impl ReachabilityMatrix {
    /// Explicit path counts as `(i, j, count)`. Diagonal and zero entries are
    /// dropped; repeated entries are summed. No symmetry is imposed.
    pub fn from_weights(n_docs: usize, entries: &[(usize, usize, u32)]) -> Result<Self> {
        let mut rows: Vec<std::collections::BTreeMap<usize, u32>> = vec![Default::default(); n_docs];
        for &(i, j, c) in entries {
            if i >= n_docs || j >= n_docs {
                return Err(IdneError::Shape(format!("pair ({i}, {j}) outside {n_docs} documents")));
            }
            if i != j && c > 0 {
                *rows[i].entry(j).or_insert(0) += c;
            }
        }
        Ok(Self {
            pos_weight: CsrMatrix::from_sorted_rows(rows.into_iter().map(|r| r.into_iter().collect()).collect()),
        })
    }

    pub fn n_docs(&self) -> usize {
        self.pos_weight.n()
    }

    pub fn pos_weight(&self) -> &CsrMatrix<u32> {
        &self.pos_weight
    }

    pub fn is_linked(&self, i: usize, j: usize) -> bool {
        i != j && self.pos_weight.contains(i, j)
    }

    /// Number of ordered pairs with `delta = 1`.
    pub fn n_positive(&self) -> usize {
        self.pos_weight.nnz()
    }

    pub fn density(&self) -> f64 {
        self.pos_weight.density()
    }
}

pub fn build_delta(graph: &DocumentGraph) -> ReachabilityMatrix {
    let n = graph.n_docs();
    let mut acc = vec![0u32; n];
    let mut touched = Vec::new();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let bump = |j: usize, acc: &mut [u32], touched: &mut Vec<usize>| {
            if acc[j] == 0 {
                touched.push(j);
            }
            acc[j] += 1;
        };
        for &k in graph.neighbors(i) {
            bump(k, &mut acc, &mut touched);
            for &l in graph.neighbors(k) {
                bump(l, &mut acc, &mut touched);
            }
        }
        touched.sort_unstable();
        let row: Vec<(usize, u32)> = touched
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| (j, acc[j]))
            .collect();
        for &j in &touched {
            acc[j] = 0;
        }
        touched.clear();
        rows.push(row);
    }
    ReachabilityMatrix {
        pos_weight: CsrMatrix::from_sorted_rows(rows),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DocPair {
    pub i: usize,
    pub j: usize,
    pub linked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairBatch {
    pub pairs: Vec<DocPair>,
}

impl PairBatch {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Cap on rejected negative draws per sampled pair.
pub const MAX_REJECTIONS: usize = 10_000;

/// Draws balanced batches: positives proportionally to their two-hop path
/// counts, negatives uniformly among unlinked ordered pairs.
#[derive(Debug, Clone)]
pub struct PairSampler<'a> {
    reach: &'a ReachabilityMatrix,
    positives: Vec<(usize, usize)>,
    weights: WeightedIndex<u32>,
    eligible: Vec<usize>,
}

impl<'a> PairSampler<'a> {
    /// `eligible[i]` is false for documents that must never be sampled
    /// (documents with no in-vocabulary terms).
    pub fn new(reach: &'a ReachabilityMatrix, eligible: &[bool]) -> Result<Self> {
        assert_eq!(eligible.len(), reach.n_docs());
        let mut positives = Vec::new();
        let mut w = Vec::new();
        for (i, j, c) in reach.pos_weight.iter() {
            if eligible[i] && eligible[j] {
                positives.push((i, j));
                w.push(c);
            }
        }
        if positives.is_empty() {
            return Err(IdneError::NoPositivePairs);
        }
        let nodes: Vec<usize> = (0..eligible.len()).filter(|&i| eligible[i]).collect();
        let m = nodes.len();
        if m * (m - 1) <= positives.len() {
            return Err(IdneError::NoNegativePairs);
        }
        let weights = WeightedIndex::new(&w).expect("positive weights are non-zero");
        Ok(Self {
            reach,
            positives,
            weights,
            eligible: nodes,
        })
    }

    pub fn n_positive(&self) -> usize {
        self.positives.len()
    }

    pub fn sample_positive<R: Rng + ?Sized>(&self, rng: &mut R) -> DocPair {
        let (i, j) = self.positives[self.weights.sample(rng)];
        DocPair { i, j, linked: true }
    }

    pub fn sample_negative<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<DocPair> {
        let m = self.eligible.len();
        for _ in 0..MAX_REJECTIONS {
            let i = self.eligible[rng.random_range(0..m)];
            let j = self.eligible[rng.random_range(0..m)];
            if i != j && !self.reach.is_linked(i, j) {
                return Ok(DocPair {
                    i,
                    j,
                    linked: false,
                });
            }
        }
        Err(IdneError::RejectionLimit(MAX_REJECTIONS))
    }

    /// `batch_size / 2` positives followed by as many negatives, drawn with
    /// replacement.
    pub fn sample_batch<R: Rng + ?Sized>(&self, rng: &mut R, batch_size: usize) -> Result<PairBatch> {
        if batch_size == 0 || !batch_size.is_multiple_of(2) {
            return Err(IdneError::BatchSize(batch_size));
        }
        let half = batch_size / 2;
        let mut pairs = Vec::with_capacity(batch_size);
        for _ in 0..half {
            pairs.push(self.sample_positive(rng));
        }
        for _ in 0..half {
            pairs.push(self.sample_negative(rng)?);
        }
        Ok(PairBatch { pairs })
    }
}
