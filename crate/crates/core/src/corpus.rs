//! Document ingestion: loaders for the Cora and generic tab-separated
//! formats, tokenization, vocabulary pruning and the document-term matrix.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{IdneError, Result};

/// Body of a raw document: either free text, or precomputed term counts
/// (the binary word-attribute form of the LINQS Cora release).
#[derive(Debug, Clone, PartialEq)]
pub enum DocBody {
    Text(String),
    Terms(Vec<(String, u32)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawDoc {
    pub id: String,
    pub labels: Vec<String>,
    pub body: DocBody,
}

/// Documents plus their links, with edge endpoints resolved to document
/// positions. Self-loops and duplicate undirected links are kept here and
/// removed when the graph is built.
#[derive(Debug, Clone, Default)]
pub struct RawCorpus {
    pub docs: Vec<RawDoc>,
    pub edges: Vec<(usize, usize)>,
    /// Edge rows whose endpoints did not resolve to a known document.
    pub dangling_edges: usize,
}

impl RawCorpus {
    pub fn new(docs: Vec<RawDoc>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(docs.len());
        for d in &docs {
            if !seen.insert(d.id.as_str()) {
                return Err(IdneError::DuplicateId(d.id.clone()));
            }
        }
        Ok(Self {
            docs,
            edges: Vec::new(),
            dangling_edges: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn id_index(&self) -> HashMap<&str, usize> {
        self.docs
            .iter()
            .enumerate()
            .map(|(i, d)| (d.id.as_str(), i))
            .collect()
    }

    /// Adds an edge by id; unknown endpoints are counted as dangling.
    pub fn add_edge_by_id(&mut self, index: &HashMap<&str, usize>, a: &str, b: &str) -> bool {
        match (index.get(a), index.get(b)) {
            (Some(&i), Some(&j)) => {
                self.edges.push((i, j));
                true
            }
            _ => {
                self.dangling_edges += 1;
                false
            }
        }
    }

    /// Sorted distinct label names.
    pub fn label_names(&self) -> Vec<String> {
        let set: std::collections::BTreeSet<&str> = self
            .docs
            .iter()
            .flat_map(|d| d.labels.iter().map(String::as_str))
            .collect();
        set.into_iter().map(str::to_owned).collect()
    }

    /// Multi-hot label assignment, one row per document.
    pub fn label_matrix(&self) -> LabelMatrix {
        let names = self.label_names();
        let pos: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut hot = ndarray::Array2::from_elem((self.docs.len(), names.len()), false);
        for (i, d) in self.docs.iter().enumerate() {
            for l in &d.labels {
                hot[[i, pos[l.as_str()]]] = true;
            }
        }
        LabelMatrix { names, hot }
    }
}

/// Multi-hot labels: `hot[[doc, class]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMatrix {
    pub names: Vec<String>,
    pub hot: ndarray::Array2<bool>,
}

impl LabelMatrix {
    pub fn n_classes(&self) -> usize {
        self.names.len()
    }

    /// True when every document carries at most one label.
    pub fn is_single_label(&self) -> bool {
        self.hot
            .rows()
            .into_iter()
            .all(|r| r.iter().filter(|&&b| b).count() <= 1)
    }

    /// First label of each document, if any.
    pub fn primary(&self) -> Vec<Option<usize>> {
        self.hot
            .rows()
            .into_iter()
            .map(|r| r.iter().position(|&b| b))
            .collect()
    }

    pub fn select(&self, rows: &[usize]) -> LabelMatrix {
        LabelMatrix {
            names: self.names.clone(),
            hot: self.hot.select(ndarray::Axis(0), rows),
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| IdneError::io(path, e))
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> IdneError {
    IdneError::Parse {
        path: path.to_owned(),
        line,
        message: message.into(),
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Loads a Cora-style corpus.
///
/// Content rows are `id<TAB>...<TAB>label`. When the middle fields are all
/// integers they are read as per-attribute counts and the attribute index
/// becomes the term; otherwise the middle field is raw text. Cites rows are
/// two whitespace-separated ids.
pub fn load_cora(content_path: &Path, cites_path: &Path) -> Result<RawCorpus> {
    let text = read_text(content_path)?;
    if text.trim().is_empty() {
        return Err(IdneError::EmptyFile(content_path.to_owned()));
    }
    let mut docs = Vec::new();
    let mut attr_width: Option<usize> = None;
    for (ln, line) in lines(&text) {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 3 {
            return Err(parse_err(
                content_path,
                ln,
                format!("expected at least 3 tab-separated fields, got {}", fields.len()),
            ));
        }
        let id = fields[0].trim();
        let label = fields[fields.len() - 1].trim();
        if id.is_empty() {
            return Err(parse_err(content_path, ln, "empty document id"));
        }
        let middle = &fields[1..fields.len() - 1];
        let attrs: Option<Vec<u32>> = middle.iter().map(|f| f.trim().parse().ok()).collect();
        let body = match attrs {
            Some(values) if middle.len() > 1 || attr_width.is_some() => {
                match attr_width {
                    None => attr_width = Some(values.len()),
                    Some(w) if w != values.len() => {
                        return Err(parse_err(
                            content_path,
                            ln,
                            format!("expected {w} attribute columns, got {}", values.len()),
                        ))
                    }
                    _ => {}
                }
                DocBody::Terms(
                    values
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c > 0)
                        .map(|(k, &c)| (k.to_string(), c))
                        .collect(),
                )
            }
            _ if middle.len() == 1 => DocBody::Text(middle[0].to_owned()),
            _ => {
                return Err(parse_err(
                    content_path,
                    ln,
                    "attribute columns must be non-negative integers",
                ))
            }
        };
        docs.push(RawDoc {
            id: id.to_owned(),
            labels: if label.is_empty() {
                vec![]
            } else {
                vec![label.to_owned()]
            },
            body,
        });
    }
    let mut corpus = RawCorpus::new(docs)?;

    let cites = read_text(cites_path)?;
    let index = corpus.id_index();
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    let mut dangling = 0;
    for (ln, line) in lines(&cites) {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 2 {
            return Err(parse_err(
                cites_path,
                ln,
                format!("expected 2 ids, got {}", f.len()),
            ));
        }
        match (index.get(f[0]), index.get(f[1])) {
            (Some(&i), Some(&j)) => {
                if seen.insert((i, j)) {
                    edges.push((i, j));
                }
            }
            _ => dangling += 1,
        }
    }
    if dangling > 0 {
        log::warn!("{}: dropped {dangling} citations to unknown ids", cites_path.display());
    }
    corpus.edges = edges;
    corpus.dangling_edges = dangling;
    Ok(corpus)
}

/// Parses one generic docs record: `id<TAB>label1,label2<TAB>text`.
pub fn parse_generic_doc(line: &str) -> Option<RawDoc> {
    let mut parts = line.splitn(3, '\t');
    let id = parts.next()?.trim();
    let labels = parts.next()?;
    let text = parts.next()?;
    if id.is_empty() {
        return None;
    }
    Some(RawDoc {
        id: id.to_owned(),
        labels: labels
            .split(',')
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_owned)
            .collect(),
        body: DocBody::Text(text.to_owned()),
    })
}

/// Loads the generic format: docs as `id<TAB>labels<TAB>text`, edges as
/// `src<TAB>dst`. Multi-label records are allowed.
pub fn load_generic(docs_path: &Path, edges_path: &Path) -> Result<RawCorpus> {
    let text = read_text(docs_path)?;
    if text.trim().is_empty() {
        return Err(IdneError::EmptyFile(docs_path.to_owned()));
    }
    let mut docs = Vec::new();
    for (ln, line) in lines(&text) {
        let doc = parse_generic_doc(line).ok_or_else(|| {
            parse_err(docs_path, ln, "expected `id<TAB>labels<TAB>text`")
        })?;
        docs.push(doc);
    }
    let mut corpus = RawCorpus::new(docs)?;
    let edges_text = read_text(edges_path)?;
    let index = corpus.id_index();
    let mut edges = Vec::new();
    let mut dangling = 0;
    for (ln, line) in lines(&edges_text) {
        let f: Vec<&str> = line.split('\t').map(str::trim).collect();
        if f.len() != 2 {
            return Err(parse_err(
                edges_path,
                ln,
                format!("expected `src<TAB>dst`, got {} fields", f.len()),
            ));
        }
        match (index.get(f[0]), index.get(f[1])) {
            (Some(&i), Some(&j)) => edges.push((i, j)),
            _ => dangling += 1,
        }
    }
    if dangling > 0 {
        log::warn!("{}: dropped {dangling} edges to unknown ids", edges_path.display());
    }
    corpus.edges = edges;
    corpus.dangling_edges = dangling;
    Ok(corpus)
}

/// English stop words (NLTK snapshot, alphabetic entries only since tokens
/// never contain apostrophes).
pub const ENGLISH_STOP_WORDS: &[&str] = &[
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
    "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
    "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
    "who", "whom", "this", "that", "these", "those", "am", "is", "are", "was", "were", "be",
    "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing", "a", "an",
    "the", "and", "but", "if", "or", "because", "as", "until", "while", "of", "at", "by",
    "for", "with", "about", "against", "between", "into", "through", "during", "before",
    "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
    "under", "again", "further", "then", "once", "here", "there", "when", "where", "why",
    "how", "all", "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
    "nor", "not", "only", "own", "same", "so", "than", "too", "very", "s", "t", "can", "will",
    "just", "don", "should", "now", "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren",
    "couldn", "didn", "doesn", "hadn", "hasn", "haven", "isn", "ma", "mightn", "mustn",
    "needn", "shan", "shouldn", "wasn", "weren", "won", "wouldn",
];

/// Lowercasing tokenizer over maximal alphabetic runs, with stop-word removal.
#[derive(Debug, Clone)]
pub struct Tokenizer {
    stop_words: HashSet<String>,
}

impl Default for Tokenizer {
    fn default() -> Self {
        Self::with_stop_words(ENGLISH_STOP_WORDS.iter().map(|s| s.to_string()))
    }
}

impl Tokenizer {
    pub fn with_stop_words(words: impl IntoIterator<Item = String>) -> Self {
        Self {
            stop_words: words.into_iter().map(|w| w.to_lowercase()).collect(),
        }
    }

    /// Reads a stop-word file, one word per line.
    pub fn from_stop_word_file(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        Ok(Self::with_stop_words(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(str::to_owned),
        ))
    }

    pub fn is_stop_word(&self, token: &str) -> bool {
        self.stop_words.contains(token)
    }

    pub fn tokenize(&self, text: &str) -> Vec<String> {
        alphabetic_runs(text)
            .map(|(_, run)| run.to_lowercase())
            .filter(|t| !self.stop_words.contains(t))
            .collect()
    }

    /// Term counts of a raw document body.
    pub fn term_counts(&self, body: &DocBody) -> BTreeMap<String, u32> {
        let mut counts = BTreeMap::new();
        match body {
            DocBody::Text(t) => {
                for tok in self.tokenize(t) {
                    *counts.entry(tok).or_insert(0) += 1;
                }
            }
            DocBody::Terms(terms) => {
                for (t, c) in terms {
                    *counts.entry(t.clone()).or_insert(0) += c;
                }
            }
        }
        counts
    }
}

/// Byte offsets and slices of maximal alphabetic runs in `text`.
pub fn alphabetic_runs(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut iter = text.char_indices().peekable();
    std::iter::from_fn(move || {
        while let Some(&(_, c)) = iter.peek() {
            if c.is_alphabetic() {
                break;
            }
            iter.next();
        }
        let (start, _) = *iter.peek()?;
        let mut end = start;
        while let Some(&(i, c)) = iter.peek() {
            if !c.is_alphabetic() {
                break;
            }
            end = i + c.len_utf8();
            iter.next();
        }
        Some((start, &text[start..end]))
    })
}

/// Tokenizes with the built-in English stop-word list.
pub fn tokenize(text: &str) -> Vec<String> {
    Tokenizer::default().tokenize(text)
}

/// Document-frequency pruning thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VocabConfig {
    pub min_df: usize,
    pub max_df_ratio: f64,
}

impl Default for VocabConfig {
    fn default() -> Self {
        Self {
            min_df: 5,
            max_df_ratio: 0.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
    /// Corpus document frequency per term; zero when loaded from a term list.
    doc_freq: Vec<u32>,
}

impl Vocabulary {
    pub fn from_terms(terms: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(terms.len());
        for (i, t) in terms.iter().enumerate() {
            if index.insert(t.clone(), i).is_some() {
                return Err(IdneError::DuplicateId(t.clone()));
            }
        }
        let doc_freq = vec![0; terms.len()];
        Ok(Self {
            terms,
            index,
            doc_freq,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> &str {
        &self.terms[i]
    }

    pub fn get(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn doc_freq(&self) -> &[u32] {
        &self.doc_freq
    }

    /// 64-bit digest of the ordered term list, stored in checkpoints to
    /// catch index misalignment.
    pub fn hash(&self) -> u64 {
        let mut h = Sha256::new();
        for t in &self.terms {
            h.update(t.as_bytes());
            h.update(b"\n");
        }
        u64::from_le_bytes(h.finalize()[..8].try_into().unwrap())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for t in &self.terms {
            out.push_str(t);
            out.push('\n');
        }
        fs::write(path, out).map_err(|e| IdneError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        Self::from_terms(text.lines().map(str::to_owned).collect())
    }
}

/// Builds the pruned vocabulary: terms with `min_df <= df <= max_df_ratio * n_d`,
/// ordered by descending corpus frequency, ties broken lexicographically.
pub fn build_vocab(corpus: &RawCorpus, tokenizer: &Tokenizer, config: &VocabConfig) -> Result<Vocabulary> {
    if corpus.is_empty() {
        return Err(IdneError::EmptyCorpus);
    }
    let mut stats: HashMap<String, (u32, u64)> = HashMap::new();
    for doc in &corpus.docs {
        for (term, c) in tokenizer.term_counts(&doc.body) {
            let e = stats.entry(term).or_insert((0, 0));
            e.0 += 1;
            e.1 += c as u64;
        }
    }
    let n_d = corpus.len();
    let max_df = config.max_df_ratio * n_d as f64;
    let mut kept: Vec<(String, u32, u64)> = stats
        .into_iter()
        .filter(|(_, (df, _))| (*df as usize) >= config.min_df && (*df as f64) <= max_df)
        .map(|(t, (df, cf))| (t, df, cf))
        .collect();
    if kept.is_empty() {
        return Err(IdneError::EmptyVocabulary {
            min_df: config.min_df,
            max_df: config.max_df_ratio,
            n_docs: n_d,
        });
    }
    kept.sort_by(|a, b| b.2.cmp(&a.2).then_with(|| a.0.cmp(&b.0)));
    let doc_freq = kept.iter().map(|k| k.1).collect();
    let mut vocab = Vocabulary::from_terms(kept.into_iter().map(|k| k.0).collect())?;
    vocab.doc_freq = doc_freq;
    Ok(vocab)
}

/// Borrowed sparse count vector of one document, sorted by term index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DocRow<'a> {
    pub terms: &'a [usize],
    pub counts: &'a [u32],
}

impl DocRow<'_> {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Total token count, `|X_i|_1`.
    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

/// Owned sparse count vector.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseDoc {
    pub terms: Vec<usize>,
    pub counts: Vec<u32>,
}

impl SparseDoc {
    /// Builds from unsorted `(term, count)` pairs, merging duplicates and
    /// dropping zero counts.
    pub fn from_counts(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (t, c) in pairs {
            *map.entry(t).or_insert(0u32) += c;
        }
        let (terms, counts) = map.into_iter().filter(|&(_, c)| c > 0).unzip();
        Self { terms, counts }
    }

    pub fn as_row(&self) -> DocRow<'_> {
        DocRow {
            terms: &self.terms,
            counts: &self.counts,
        }
    }
}

/// Sparse non-negative document-term count matrix (CSR).
#[derive(Debug, Clone, PartialEq)]
pub struct DocTermMatrix {
    n_terms: usize,
    indptr: Vec<usize>,
    terms: Vec<usize>,
    counts: Vec<u32>,
    empty_rows: Vec<usize>,
}

impl DocTermMatrix {
    pub fn from_rows(n_terms: usize, rows: impl IntoIterator<Item = SparseDoc>) -> Result<Self> {
        let mut m = Self {
            n_terms,
            indptr: vec![0],
            terms: Vec::new(),
            counts: Vec::new(),
            empty_rows: Vec::new(),
        };
        for (i, row) in rows.into_iter().enumerate() {
            if let Some(&t) = row.terms.iter().find(|&&t| t >= n_terms) {
                return Err(IdneError::Shape(format!(
                    "term index {t} out of range for {n_terms} terms"
                )));
            }
            if row.terms.is_empty() {
                m.empty_rows.push(i);
            }
            m.terms.extend_from_slice(&row.terms);
            m.counts.extend_from_slice(&row.counts);
            m.indptr.push(m.terms.len());
        }
        Ok(m)
    }

    pub fn n_docs(&self) -> usize {
        self.indptr.len() - 1
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    pub fn row(&self, i: usize) -> DocRow<'_> {
        let (a, b) = (self.indptr[i], self.indptr[i + 1]);
        DocRow {
            terms: &self.terms[a..b],
            counts: &self.counts[a..b],
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = DocRow<'_>> {
        (0..self.n_docs()).map(move |i| self.row(i))
    }

    /// Rows that lost every token to pruning.
    pub fn empty_rows(&self) -> &[usize] {
        &self.empty_rows
    }

    pub fn nonempty_mask(&self) -> Vec<bool> {
        self.rows().map(|r| !r.is_empty()).collect()
    }

    pub fn get(&self, i: usize, term: usize) -> u32 {
        let r = self.row(i);
        r.terms
            .binary_search(&term)
            .map(|k| r.counts[k])
            .unwrap_or(0)
    }

    pub fn select_rows(&self, rows: &[usize]) -> DocTermMatrix {
        let docs = rows.iter().map(|&i| {
            let r = self.row(i);
            SparseDoc {
                terms: r.terms.to_vec(),
                counts: r.counts.to_vec(),
            }
        });
        Self::from_rows(self.n_terms, docs).expect("rows come from a valid matrix")
    }

    /// Mean total tokens per document.
    pub fn mean_tokens(&self) -> f64 {
        if self.n_docs() == 0 {
            return 0.0;
        }
        self.rows().map(|r| r.total() as f64).sum::<f64>() / self.n_docs() as f64
    }
}

/// In-vocabulary counts of one body; out-of-vocabulary terms are returned
/// separately in first-seen order.
pub fn vectorize_body(tokenizer: &Tokenizer, vocab: &Vocabulary, body: &DocBody) -> (SparseDoc, Vec<String>) {
    let mut oov = Vec::new();
    let mut pairs = Vec::new();
    for (term, c) in tokenizer.term_counts(body) {
        match vocab.get(&term) {
            Some(k) => pairs.push((k, c)),
            None => oov.push(term),
        }
    }
    (SparseDoc::from_counts(pairs), oov)
}

pub fn vectorize_text(tokenizer: &Tokenizer, vocab: &Vocabulary, text: &str) -> (SparseDoc, Vec<String>) {
    vectorize_body(tokenizer, vocab, &DocBody::Text(text.to_owned()))
}

/// Counts of vocabulary terms per document. All-zero rows are kept in place
/// and listed in [`DocTermMatrix::empty_rows`].
pub fn vectorize(corpus: &RawCorpus, tokenizer: &Tokenizer, vocab: &Vocabulary) -> DocTermMatrix {
    let rows = corpus
        .docs
        .iter()
        .map(|d| vectorize_body(tokenizer, vocab, &d.body).0);
    let m = DocTermMatrix::from_rows(vocab.len(), rows).expect("vocabulary indices are in range");
    if !m.empty_rows().is_empty() {
        log::warn!("{} documents have no in-vocabulary terms", m.empty_rows().len());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn text_doc(id: &str, text: &str) -> RawDoc {
        RawDoc {
            id: id.into(),
            labels: vec![],
            body: DocBody::Text(text.into()),
        }
    }

    fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> std::path::PathBuf {
        let p = dir.path().join(name);
        fs::File::create(&p).unwrap().write_all(body.as_bytes()).unwrap();
        p
    }

    #[test]
    fn tokenize_rules() {
        assert_eq!(
            tokenize("Neural networks, the CLASSIFIER!"),
            vec!["neural", "networks", "classifier"]
        );
        assert!(tokenize("").is_empty());
        assert!(tokenize("a an of").is_empty());
        assert_eq!(tokenize("x2y 42 Émile"), vec!["x", "émile"]);
    }

    #[test]
    fn cora_single_doc_empty_cites() {
        let dir = tempfile::tempdir().unwrap();
        let c = write(&dir, "c.content", "p1\tgenetic algorithm search\tGA\n");
        let e = write(&dir, "c.cites", "");
        let corpus = load_cora(&c, &e).unwrap();
        assert_eq!(corpus.len(), 1);
        assert!(corpus.edges.is_empty());
        assert_eq!(corpus.docs[0].labels, vec!["GA"]);
    }

    #[test]
    fn cora_attribute_form_and_dangling() {
        let dir = tempfile::tempdir().unwrap();
        let c = write(&dir, "c.content", "10\t0\t1\t2\tA\n20\t1\t0\t0\tB\n");
        let e = write(&dir, "c.cites", "10\t20\n10\t20\n10\t99\n");
        let corpus = load_cora(&c, &e).unwrap();
        assert_eq!(
            corpus.docs[0].body,
            DocBody::Terms(vec![("1".into(), 1), ("2".into(), 2)])
        );
        assert_eq!(corpus.edges, vec![(0, 1)]);
        assert_eq!(corpus.dangling_edges, 1);
    }

    #[test]
    fn cora_errors() {
        let dir = tempfile::tempdir().unwrap();
        let empty = write(&dir, "empty", "\n");
        let cites = write(&dir, "cites", "");
        assert!(matches!(load_cora(&empty, &cites), Err(IdneError::EmptyFile(_))));
        let bad = write(&dir, "bad", "a\tx y\tL\nb\tL\n");
        match load_cora(&bad, &cites) {
            Err(IdneError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let good = write(&dir, "good", "a\ttext\tL\n");
        let bad_cites = write(&dir, "bc", "a\n");
        assert!(matches!(
            load_cora(&good, &bad_cites),
            Err(IdneError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn generic_loader() {
        let dir = tempfile::tempdir().unwrap();
        let d = write(&dir, "docs", "a\tx,y\tfirst text\nb\t\tsecond\nc\tz\tthird\n");
        let e = write(&dir, "edges", "a\tb\nc\tc\n");
        let corpus = load_generic(&d, &e).unwrap();
        assert_eq!(corpus.len(), 3);
        assert_eq!(corpus.edges, vec![(0, 1), (2, 2)]);
        assert_eq!(corpus.docs[0].labels, vec!["x", "y"]);
        assert!(corpus.docs[1].labels.is_empty());
        let lm = corpus.label_matrix();
        assert_eq!(lm.names, vec!["x", "y", "z"]);
        assert!(!lm.is_single_label());

        let dup = write(&dir, "dup", "a\t\tone\na\t\ttwo\n");
        match load_generic(&dup, &e) {
            Err(IdneError::DuplicateId(id)) => assert_eq!(id, "a"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vocab_pruning_bounds() {
        // 100 docs; "rare" in exactly 5, "common" in 26 (> 25%), "edge" in 25.
        let docs: Vec<RawDoc> = (0..100)
            .map(|i| {
                let mut t = format!("filler{i}");
                if i < 5 {
                    t.push_str(" rare");
                }
                if i < 4 {
                    t.push_str(" scarce");
                }
                if i < 26 {
                    t.push_str(" common");
                }
                if i < 25 {
                    t.push_str(" edge");
                }
                text_doc(&i.to_string(), &t)
            })
            .collect();
        let corpus = RawCorpus::new(docs).unwrap();
        let v = build_vocab(&corpus, &Tokenizer::default(), &VocabConfig::default()).unwrap();
        assert_eq!(v.terms(), &["edge".to_string(), "rare".to_string()]);
        assert_eq!(v.doc_freq(), &[25, 5]);
    }

    #[test]
    fn vocab_all_pruned_is_error() {
        let docs = (0..10).map(|i| text_doc(&i.to_string(), "alpha")).collect();
        let corpus = RawCorpus::new(docs).unwrap();
        assert!(matches!(
            build_vocab(&corpus, &Tokenizer::default(), &VocabConfig::default()),
            Err(IdneError::EmptyVocabulary { .. })
        ));
    }

    #[test]
    fn vectorize_counts_and_flags() {
        let vocab = Vocabulary::from_terms(vec!["genetic".into(), "fitness".into()]).unwrap();
        let corpus = RawCorpus::new(vec![
            text_doc("a", "genetic genetic fitness"),
            text_doc("b", "nothing relevant here"),
        ])
        .unwrap();
        let x = vectorize(&corpus, &Tokenizer::default(), &vocab);
        assert_eq!(x.get(0, 0), 2);
        assert_eq!(x.get(0, 1), 1);
        assert_eq!(x.empty_rows(), &[1]);
        assert_eq!(x.row(0).total(), 3);
    }

    #[test]
    fn vocab_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let v = Vocabulary::from_terms(vec!["b".into(), "a".into()]).unwrap();
        let p = dir.path().join("vocab.txt");
        v.write(&p).unwrap();
        let back = Vocabulary::read(&p).unwrap();
        assert_eq!(back.terms(), v.terms());
        assert_eq!(back.hash(), v.hash());
    }
}
