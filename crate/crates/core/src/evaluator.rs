//! Evaluation protocols: one-vs-rest logistic regression on document
//! embeddings scored by micro-averaged ROC AUC, in the traditional setting
//! (model trained on the whole network) and the inductive setting (a tenth
//! of the documents hidden during training and embedded from text alone).

use std::cell::RefCell;
use std::fmt;

use argmin::core::{CostFunction, Executor, Gradient, State};
use argmin::solver::linesearch::MoreThuenteLineSearch;
use argmin::solver::quasinewton::LBFGS;
use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::corpus::{DocTermMatrix, LabelMatrix};
use crate::error::{IdneError, Result};
use crate::graph::{build_delta, DocumentGraph};
use crate::scalar::{logistic_loss, sigmoid, Scalar};
use crate::seed;
use crate::trainer::{train, TrainConfig};
use crate::twa::embed_corpus;

/// Regularization values tried by cross-validation.
pub const C_GRID: [f64; 5] = [0.01, 0.1, 1.0, 10.0, 100.0];
pub const CV_FOLDS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Task {
    Traditional,
    InductiveClassification,
    InductiveLink,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Traditional => "traditional",
            Task::InductiveClassification => "inductive-classification",
            Task::InductiveLink => "inductive-link",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `ratio` is the labelled training fraction in the traditional setting and
/// the hidden-document fraction in the inductive one.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitSpec {
    pub ratio: f64,
    pub repetitions: usize,
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(ratio: f64, repetitions: usize, seed: u64) -> Result<Self> {
        let spec = Self {
            ratio,
            repetitions,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(IdneError::Config(format!("ratio must lie in (0, 1), got {}", self.ratio)));
        }
        if self.repetitions == 0 {
            return Err(IdneError::Config("repetitions must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub task: Task,
    pub ratio: f64,
    /// One AUC per repetition, in repetition order.
    pub aucs: Vec<f64>,
    pub warnings: Vec<String>,
}

impl EvalReport {
    pub fn mean(&self) -> f64 {
        self.aucs.iter().sum::<f64>() / self.aucs.len() as f64
    }

    /// Sample standard deviation; zero for a single repetition.
    pub fn std(&self) -> f64 {
        let n = self.aucs.len();
        if n < 2 {
            return 0.0;
        }
        let m = self.mean();
        (self.aucs.iter().map(|a| (a - m).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InductiveReport {
    pub classification: EvalReport,
    pub link: EvalReport,
}

/// ROC AUC via the Mann–Whitney statistic with midranks for ties.
pub fn roc_auc(scores: &[f64], truth: &[bool]) -> Result<f64> {
    if scores.len() != truth.len() {
        return Err(IdneError::Shape(format!("{} scores for {} labels", scores.len(), truth.len())));
    }
    let n_pos = truth.iter().filter(|&&t| t).count();
    let n_neg = truth.len() - n_pos;
    if n_pos == 0 {
        return Err(IdneError::UndefinedAuc("no positive cells"));
    }
    if n_neg == 0 {
        return Err(IdneError::UndefinedAuc("no negative cells"));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut rank_sum = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        // ranks start..end (1-based: start+1..=end) share their average
        let midrank = (start + 1 + end) as f64 / 2.0;
        let pos = order[start..end].iter().filter(|&&k| truth[k]).count();
        rank_sum += midrank * pos as f64;
        start = end;
    }
    let (p, n) = (n_pos as f64, n_neg as f64);
    Ok((rank_sum - p * (p + 1.0) / 2.0) / (p * n))
}

/// AUC over every (instance, class) cell flattened into one list.
pub fn micro_auc(scores: ArrayView2<'_, f64>, truth: ArrayView2<'_, bool>) -> Result<f64> {
    if scores.dim() != truth.dim() {
        return Err(IdneError::Shape(format!("scores {:?} vs truth {:?}", scores.dim(), truth.dim())));
    }
    let s: Vec<f64> = scores.iter().copied().collect();
    let t: Vec<bool> = truth.iter().copied().collect();
    roc_auc(&s, &t)
}

/// Cosine similarity, defined as zero when either vector is zero.
pub fn cosine(a: ArrayView1<'_, f64>, b: ArrayView1<'_, f64>) -> f64 {
    let na = a.dot(&a).sqrt();
    let nb = b.dot(&b).sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        a.dot(&b) / (na * nb)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogRegConfig {
    /// Inverse regularization strength.
    pub c: f64,
    pub max_iters: u64,
    pub grad_tol: f64,
}

impl Default for LogRegConfig {
    fn default() -> Self {
        Self {
            c: 1.0,
            max_iters: 1000,
            grad_tol: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClassModel {
    Fitted { weights: Array1<f64>, bias: f64 },
    /// Class absent (or universal) in training: constant training prevalence.
    Prior(f64),
}

/// L independent binary classifiers on standardized features.
#[derive(Debug, Clone, PartialEq)]
pub struct OvrClassifier {
    pub mean: Array1<f64>,
    pub scale: Array1<f64>,
    pub classes: Vec<ClassModel>,
}

impl OvrClassifier {
    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    /// Indices of classes scored by their prior.
    pub fn prior_classes(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&k| matches!(self.classes[k], ClassModel::Prior(_)))
            .collect()
    }

    fn standardize(&self, features: ArrayView2<'_, f64>) -> Array2<f64> {
        (&features - &self.mean) / &self.scale
    }

    /// Per-class probabilities, `n × L`.
    pub fn predict_proba(&self, features: ArrayView2<'_, f64>) -> Array2<f64> {
        let z = self.standardize(features);
        let mut out = Array2::zeros((z.nrows(), self.classes.len()));
        for (k, class) in self.classes.iter().enumerate() {
            let mut col = out.column_mut(k);
            match class {
                ClassModel::Fitted { weights, bias } => {
                    let m = z.dot(weights);
                    col.assign(&m.mapv(|v| sigmoid(v + bias)));
                }
                ClassModel::Prior(p) => col.fill(*p),
            }
        }
        out
    }
}

/// Objective `mean logistic loss + ‖w‖² / (2 C n)`; the bias (last entry of
/// the parameter vector) is not penalized.
struct BinaryProblem<'a> {
    x: ArrayView2<'a, f64>,
    /// Contiguous transpose of `x` for the gradient product.
    xt: ArrayView2<'a, f64>,
    y: Vec<bool>,
    penalty: f64,
    /// Margins at the last evaluated point; the line search asks for the
    /// cost and the gradient at the same parameters.
    last: RefCell<Option<(Vec<f64>, Array1<f64>)>>,
}

impl BinaryProblem<'_> {
    fn margins(&self, p: &[f64]) -> Array1<f64> {
        if let Some((q, m)) = self.last.borrow().as_ref() {
            if q.as_slice() == p {
                return m.clone();
            }
        }
        let d = self.x.ncols();
        let m = self.x.dot(&ArrayView1::from(&p[..d])) + p[d];
        *self.last.borrow_mut() = Some((p.to_vec(), m.clone()));
        m
    }
}

impl CostFunction for BinaryProblem<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Vec<f64>) -> std::result::Result<f64, argmin::core::Error> {
        let d = self.x.ncols();
        let n = self.y.len() as f64;
        let m = self.margins(p);
        let loss: f64 = m.iter().zip(&self.y).map(|(&s, &y)| logistic_loss(s, y)).sum();
        let w2: f64 = p[..d].iter().map(|v| v * v).sum();
        Ok(loss / n + 0.5 * self.penalty * w2)
    }
}

impl Gradient for BinaryProblem<'_> {
    type Param = Vec<f64>;
    type Gradient = Vec<f64>;

    fn gradient(&self, p: &Vec<f64>) -> std::result::Result<Vec<f64>, argmin::core::Error> {
        let d = self.x.ncols();
        let n = self.y.len() as f64;
        let m = self.margins(p);
        let r: Array1<f64> = m
            .iter()
            .zip(&self.y)
            .map(|(&s, &y)| (sigmoid(s) - if y { 1.0 } else { 0.0 }) / n)
            .collect();
        let gw = self.xt.dot(&r);
        let mut g: Vec<f64> = gw.iter().zip(&p[..d]).map(|(g, w)| g + self.penalty * w).collect();
        g.push(r.sum());
        Ok(g)
    }
}

fn fit_binary(
    x: ArrayView2<'_, f64>,
    xt: ArrayView2<'_, f64>,
    y: Vec<bool>,
    init: Vec<f64>,
    config: &LogRegConfig,
) -> Result<ClassModel> {
    let d = x.ncols();
    let n = y.len() as f64;
    let problem = BinaryProblem {
        x,
        xt,
        y,
        penalty: 1.0 / (config.c * n),
        last: RefCell::new(None),
    };
    let solver = LBFGS::new(MoreThuenteLineSearch::new(), 20)
        .with_tolerance_grad(config.grad_tol)
        .map_err(|e| IdneError::Solver(e.to_string()))?;
    let res = Executor::new(problem, solver)
        .configure(|s| s.param(init).max_iters(config.max_iters))
        .run()
        .map_err(|e| IdneError::Solver(e.to_string()))?;
    let state = res.state();
    let p = state
        .get_best_param()
        .ok_or_else(|| IdneError::Solver("no parameters returned".into()))?;
    if p.iter().any(|v| !v.is_finite()) {
        return Err(IdneError::Solver("non-finite weights".into()));
    }
    Ok(ClassModel::Fitted {
        weights: Array1::from(p[..d].to_vec()),
        bias: p[d],
    })
}

/// Fits one L2-regularized logistic regression per label column. Features
/// are standardized with the training mean and standard deviation (constant
/// columns are only centred).
pub fn logreg_ovr_train(
    features: ArrayView2<'_, f64>,
    labels: ArrayView2<'_, bool>,
    config: &LogRegConfig,
) -> Result<OvrClassifier> {
    fit_ovr(features, labels, config, None)
}

/// As [`logreg_ovr_train`], starting each class from `warm` (a classifier
/// fitted on the same rows) when it has fitted weights for it.
fn fit_ovr(
    features: ArrayView2<'_, f64>,
    labels: ArrayView2<'_, bool>,
    config: &LogRegConfig,
    warm: Option<&OvrClassifier>,
) -> Result<OvrClassifier> {
    let n = features.nrows();
    if n == 0 || labels.nrows() != n {
        return Err(IdneError::Shape(format!(
            "{} feature rows for {} label rows",
            n,
            labels.nrows()
        )));
    }
    if features.iter().any(|v| !v.is_finite()) {
        return Err(IdneError::Config("features must be finite".into()));
    }
    if !(config.c > 0.0) {
        return Err(IdneError::Config(format!("C must be positive, got {}", config.c)));
    }
    let mean = features.mean_axis(Axis(0)).expect("non-empty");
    let scale = features
        .std_axis(Axis(0), 0.0)
        .mapv(|s| if s > 0.0 { s } else { 1.0 });
    let z = (&features - &mean) / &scale;
    let zt = z.t().as_standard_layout().into_owned();
    let classes = labels
        .columns()
        .into_iter()
        .enumerate()
        .map(|(k, col)| {
            let y: Vec<bool> = col.to_vec();
            let pos = y.iter().filter(|&&b| b).count();
            let prevalence = pos as f64 / n as f64;
            if pos == 0 || pos == n {
                Ok(ClassModel::Prior(prevalence))
            } else {
                let init = match warm.map(|w| &w.classes[k]) {
                    Some(ClassModel::Fitted { weights, bias }) => {
                        let mut v = weights.to_vec();
                        v.push(*bias);
                        v
                    }
                    _ => {
                        let mut v = vec![0.0; z.ncols() + 1];
                        v[z.ncols()] = (prevalence / (1.0 - prevalence)).ln();
                        v
                    }
                };
                fit_binary(z.view(), zt.view(), y, init, config)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OvrClassifier { mean, scale, classes })
}

/// Stratified split with `round(ratio · n)` training items (at least one on
/// each side). Per-stratum quotas use largest remainders. Returns sorted
/// `(train, test)` index lists.
pub fn stratified_split<R: Rng + ?Sized>(
    strata: &[Option<usize>],
    ratio: f64,
    rng: &mut R,
) -> (Vec<usize>, Vec<usize>) {
    let n = strata.len();
    let n_train = ((ratio * n as f64).round() as usize).clamp(1, n.saturating_sub(1).max(1));
    let groups = group_by_stratum(strata);
    let exact: Vec<f64> = groups
        .iter()
        .map(|g| g.len() as f64 * n_train as f64 / n as f64)
        .collect();
    let mut quota: Vec<usize> = exact.iter().map(|q| q.floor() as usize).collect();
    let mut left = n_train - quota.iter().sum::<usize>();
    let mut by_remainder: Vec<usize> = (0..groups.len()).collect();
    by_remainder.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &g in by_remainder.iter().cycle() {
        if left == 0 {
            break;
        }
        if quota[g] < groups[g].len() {
            quota[g] += 1;
            left -= 1;
        }
    }
    let mut train = Vec::with_capacity(n_train);
    let mut test = Vec::with_capacity(n - n_train);
    for (g, members) in groups.into_iter().enumerate() {
        let mut members = members;
        members.shuffle(rng);
        train.extend_from_slice(&members[..quota[g]]);
        test.extend_from_slice(&members[quota[g]..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

fn group_by_stratum(strata: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut keys: Vec<Option<usize>> = strata.to_vec();
    keys.sort_unstable();
    keys.dedup();
    keys.iter()
        .map(|k| (0..strata.len()).filter(|&i| strata[i] == *k).collect())
        .collect()
}

/// Fold id per item. Stratified when every present stratum has at least
/// `k` members; otherwise a plain shuffle, reported through the flag.
pub fn assign_folds<R: Rng + ?Sized>(strata: &[Option<usize>], k: usize, rng: &mut R) -> (Vec<usize>, bool) {
    let groups = group_by_stratum(strata);
    let stratified = groups.iter().all(|g| g.len() >= k);
    let mut fold = vec![0; strata.len()];
    if stratified {
        for (offset, mut g) in groups.into_iter().enumerate() {
            g.shuffle(rng);
            for (r, i) in g.into_iter().enumerate() {
                fold[i] = (offset + r) % k;
            }
        }
    } else {
        let mut all: Vec<usize> = (0..strata.len()).collect();
        all.shuffle(rng);
        for (r, i) in all.into_iter().enumerate() {
            fold[i] = r % k;
        }
    }
    (fold, stratified)
}

/// Picks C from `grid` by `k`-fold cross-validated micro-AUC. Ties go to the
/// earlier (smaller) value; folds whose AUC is undefined are skipped.
pub fn select_c<R: Rng + ?Sized>(
    features: ArrayView2<'_, f64>,
    labels: &LabelMatrix,
    grid: &[f64],
    k: usize,
    rng: &mut R,
    warnings: &mut Vec<String>,
) -> Result<f64> {
    if grid.is_empty() {
        return Err(IdneError::Config("empty regularization grid".into()));
    }
    if grid.len() == 1 || features.nrows() < k {
        return Ok(grid[0]);
    }
    let (fold, stratified) = assign_folds(&labels.primary(), k, rng);
    if !stratified {
        warnings.push(format!("a class has fewer than {k} training documents; cross-validation folds are not stratified"));
    }
    // Folds outside, C inside, so each fit warm-starts from the previous C.
    let mut sums = vec![0.0; grid.len()];
    let mut counts = vec![0usize; grid.len()];
    for f in 0..k {
        let tr: Vec<usize> = (0..fold.len()).filter(|&i| fold[i] != f).collect();
        let te: Vec<usize> = (0..fold.len()).filter(|&i| fold[i] == f).collect();
        if tr.is_empty() || te.is_empty() {
            continue;
        }
        let xtr = features.select(Axis(0), &tr);
        let ytr = labels.hot.select(Axis(0), &tr);
        let xte = features.select(Axis(0), &te);
        let yte = labels.hot.select(Axis(0), &te);
        let mut warm: Option<OvrClassifier> = None;
        for (g, &c) in grid.iter().enumerate() {
            let config = LogRegConfig {
                c,
                ..Default::default()
            };
            let model = fit_ovr(xtr.view(), ytr.view(), &config, warm.as_ref())?;
            if let Ok(auc) = micro_auc(model.predict_proba(xte.view()).view(), yte.view()) {
                sums[g] += auc;
                counts[g] += 1;
            }
            warm = Some(model);
        }
    }
    let mut best = (f64::NEG_INFINITY, grid[0]);
    for (g, &c) in grid.iter().enumerate() {
        if counts[g] == 0 {
            continue;
        }
        let mean = sums[g] / counts[g] as f64;
        if mean > best.0 {
            best = (mean, c);
        }
    }
    Ok(best.1)
}

/// Cross-validates C on the training rows, fits, and scores the test rows.
fn classify(
    features: ArrayView2<'_, f64>,
    labels: &LabelMatrix,
    train_rows: &[usize],
    test_rows: &[usize],
    rng: &mut ChaCha8Rng,
    warnings: &mut Vec<String>,
) -> Result<f64> {
    let xf = features.select(Axis(0), train_rows);
    let yf = labels.select(train_rows);
    let c = select_c(xf.view(), &yf, &C_GRID, CV_FOLDS, rng, warnings)?;
    let model = logreg_ovr_train(
        xf.view(),
        yf.hot.view(),
        &LogRegConfig {
            c,
            ..Default::default()
        },
    )?;
    for k in model.prior_classes() {
        warnings.push(format!("class {} has no training contrast; scored with its prior", labels.names[k]));
    }
    let proba = model.predict_proba(features.select(Axis(0), test_rows).view());
    micro_auc(proba.view(), labels.hot.select(Axis(0), test_rows).view())
}

fn merge_warnings(per_rep: Vec<Vec<String>>) -> Vec<String> {
    let mut all: Vec<String> = per_rep.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    for w in &all {
        log::warn!("{w}");
    }
    all
}

/// Traditional setting: the embeddings come from a model trained on the full
/// network; each repetition draws a stratified labelled subset of size
/// `ratio · n` and scores the remaining documents.
pub fn eval_traditional(embeddings: ArrayView2<'_, f64>, labels: &LabelMatrix, spec: &SplitSpec) -> Result<EvalReport> {
    spec.validate()?;
    if embeddings.nrows() != labels.hot.nrows() {
        return Err(IdneError::Shape(format!(
            "{} embeddings for {} labelled documents",
            embeddings.nrows(),
            labels.hot.nrows()
        )));
    }
    let strata = labels.primary();
    let label = format!("traditional/{}", spec.ratio);
    let results: Vec<(f64, Vec<String>)> = (0..spec.repetitions)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed::derive_indexed(spec.seed, &label, rep));
            let (train_rows, test_rows) = stratified_split(&strata, spec.ratio, &mut rng);
            let mut warnings = Vec::new();
            let auc = classify(embeddings, labels, &train_rows, &test_rows, &mut rng, &mut warnings)?;
            Ok((auc, warnings))
        })
        .collect::<Result<_>>()?;
    let (aucs, warnings): (Vec<f64>, Vec<Vec<String>>) = results.into_iter().unzip();
    Ok(EvalReport {
        task: Task::Traditional,
        ratio: spec.ratio,
        aucs,
        warnings: merge_warnings(warnings),
    })
}

/// Inductive setting. Each repetition hides `ratio · n` documents, retrains
/// from scratch on the sub-network induced by the rest, then embeds every
/// document from its terms alone. Classification trains on the observed
/// documents and scores the hidden ones; link prediction ranks every pair
/// (hidden i, any j ≠ i) by cosine similarity against the full-network
/// reachability.
pub fn eval_inductive<F: Scalar>(
    x: &DocTermMatrix,
    graph: &DocumentGraph,
    labels: &LabelMatrix,
    config: &TrainConfig,
    spec: &SplitSpec,
) -> Result<InductiveReport> {
    spec.validate()?;
    config.validate()?;
    let n = x.n_docs();
    if graph.n_docs() != n || labels.hot.nrows() != n {
        return Err(IdneError::Shape(format!(
            "{n} documents, {} graph nodes, {} label rows",
            graph.n_docs(),
            labels.hot.nrows()
        )));
    }
    let full_reach = build_delta(graph);
    let results: Vec<(f64, f64, Vec<String>)> = (0..spec.repetitions)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed::derive_indexed(spec.seed, "inductive", rep));
            let n_hidden = ((spec.ratio * n as f64).round() as usize).clamp(1, n - 1);
            let mut hidden = rand::seq::index::sample(&mut rng, n, n_hidden).into_vec();
            hidden.sort_unstable();
            let mut is_hidden = vec![false; n];
            for &h in &hidden {
                is_hidden[h] = true;
            }
            let observed: Vec<usize> = (0..n).filter(|&i| !is_hidden[i]).collect();

            let sub_reach = build_delta(&graph.induced_subgraph(&observed));
            let rep_config = TrainConfig {
                seed: seed::derive_indexed(config.seed, "inductive-train", rep),
                ..config.clone()
            };
            let report = train::<F>(&x.select_rows(&observed), &sub_reach, &rep_config)?;
            let emb = embed_corpus(&report.params, x).mapv(|v| v.as_f64());

            let mut warnings = Vec::new();
            let empty_hidden = hidden.iter().filter(|&&h| x.row(h).is_empty()).count();
            if empty_hidden > 0 {
                warnings.push(format!(
                    "repetition {rep}: {empty_hidden} hidden documents have no vocabulary terms and embed to zero"
                ));
            }
            let class_auc = classify(emb.view(), labels, &observed, &hidden, &mut rng, &mut warnings)?;

            let mut scores = Vec::with_capacity(n_hidden * (n - 1));
            let mut truth = Vec::with_capacity(n_hidden * (n - 1));
            for &i in &hidden {
                for j in (0..n).filter(|&j| j != i) {
                    scores.push(cosine(emb.row(i), emb.row(j)));
                    truth.push(full_reach.is_linked(i, j));
                }
            }
            let link_auc = roc_auc(&scores, &truth)?;
            log::info!("inductive repetition {rep}: classification {class_auc:.4}, link {link_auc:.4}");
            Ok((class_auc, link_auc, warnings))
        })
        .collect::<Result<_>>()?;
    let mut class_aucs = Vec::new();
    let mut link_aucs = Vec::new();
    let mut warnings = Vec::new();
    for (c, l, w) in results {
        class_aucs.push(c);
        link_aucs.push(l);
        warnings.push(w);
    }
    let warnings = merge_warnings(warnings);
    Ok(InductiveReport {
        classification: EvalReport {
            task: Task::InductiveClassification,
            ratio: spec.ratio,
            aucs: class_aucs,
            warnings: warnings.clone(),
        },
        link: EvalReport {
            task: Task::InductiveLink,
            ratio: spec.ratio,
            aucs: link_aucs,
            warnings,
        },
    })
}
