//! Maximum-likelihood training of word and topic vectors on the two-hop
//! reachability matrix, with mini-batch ADAM.

use std::collections::HashMap;
use std::time::Instant;

use ndarray::{Array1, Array2, ArrayView1, Zip};
use rayon::prelude::*;

use crate::corpus::DocTermMatrix;
use crate::error::{IdneError, Result};
use crate::graph::{PairBatch, PairSampler, ReachabilityMatrix};
use crate::scalar::{logistic_loss, sigmoid, Scalar};
use crate::seed;
use crate::twa::{self, ModelParams};

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub n_topics: usize,
    pub dim: usize,
    pub steps: usize,
    /// Pairs per batch, half linked and half unlinked.
    pub batch_size: usize,
    pub learning_rate: f64,
    pub adam_beta1: f64,
    pub adam_beta2: f64,
    pub adam_eps: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            n_topics: 32,
            dim: 256,
            steps: 5000,
            batch_size: 32,
            learning_rate: 1e-3,
            adam_beta1: 0.9,
            adam_beta2: 0.999,
            adam_eps: 1e-8,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(IdneError::Config(m));
        if self.steps == 0 {
            return fail("steps must be >= 1".into());
        }
        if self.n_topics == 0 || self.dim == 0 {
            return fail(format!(
                "topics ({}) and dim ({}) must be >= 1",
                self.n_topics, self.dim
            ));
        }
        if self.batch_size == 0 || !self.batch_size.is_multiple_of(2) {
            return fail(format!("batch size must be even and positive, got {}", self.batch_size));
        }
        for (name, v) in [
            ("learning rate", self.learning_rate),
            ("adam beta1", self.adam_beta1),
            ("adam beta2", self.adam_beta2),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return fail(format!("{name} must lie in (0, 1), got {v}"));
            }
        }
        if !(self.adam_eps > 0.0) {
            return fail(format!("adam eps must be positive, got {}", self.adam_eps));
        }
        Ok(())
    }

    pub fn adam(&self) -> AdamConfig {
        AdamConfig {
            learning_rate: self.learning_rate,
            beta1: self.adam_beta1,
            beta2: self.adam_beta2,
            eps: self.adam_eps,
        }
    }
}

/// Negative log-likelihood of one pair under `σ(d_i · d_j)`.
pub fn pair_loss<F: Scalar>(d_i: ArrayView1<'_, F>, d_j: ArrayView1<'_, F>, linked: bool) -> F {
    logistic_loss(d_i.dot(&d_j), linked)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gradients<F> {
    pub words: Array2<F>,
    pub topics: Array2<F>,
}

impl<F: Scalar> Gradients<F> {
    pub fn zeros_like(params: &ModelParams<F>) -> Self {
        Self {
            words: Array2::zeros(params.words().raw_dim()),
            topics: Array2::zeros(params.topics().raw_dim()),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.words.iter().chain(self.topics.iter()).all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone)]
pub struct BatchGradients<F> {
    pub grads: Gradients<F>,
    pub mean_loss: F,
}

/// Mean pair loss over `batch` and its exact gradient with respect to every
/// entry of `W` and `T`.
///
/// Each distinct document is embedded once. Per-document passes run in
/// parallel; all reductions follow pair order, then first-appearance order,
/// so results do not depend on scheduling.
pub fn batch_gradients<F: Scalar>(
    params: &ModelParams<F>,
    x: &DocTermMatrix,
    batch: &PairBatch,
) -> Result<BatchGradients<F>> {
    let mut slot_of: HashMap<usize, usize> = HashMap::new();
    let mut docs = Vec::new();
    let slots: Vec<(usize, usize)> = batch
        .pairs
        .iter()
        .map(|p| {
            let mut slot = |d: usize| {
                *slot_of.entry(d).or_insert_with(|| {
                    docs.push(d);
                    docs.len() - 1
                })
            };
            (slot(p.i), slot(p.j))
        })
        .collect();

    let forwards = docs
        .par_iter()
        .map(|&d| twa::forward(params, x.row(d)))
        .collect::<Result<Vec<_>>>()?;

    let scale = F::one() / F::of(batch.len().max(1) as f64);
    let mut total = F::zero();
    let mut grad_vectors = vec![Array1::<F>::zeros(params.dim()); docs.len()];
    for (p, &(a, b)) in batch.pairs.iter().zip(&slots) {
        let (va, vb) = (&forwards[a].vector, &forwards[b].vector);
        let s = va.dot(vb);
        total += logistic_loss(s, p.linked);
        let y = if p.linked { F::one() } else { F::zero() };
        let g = (sigmoid(s) - y) * scale;
        grad_vectors[a].scaled_add(g, vb);
        grad_vectors[b].scaled_add(g, va);
    }

    let backs: Vec<_> = forwards
        .par_iter()
        .zip(grad_vectors.par_iter())
        .map(|(f, g)| twa::backward(params, f, g.view()))
        .collect();

    let mut grads = Gradients::zeros_like(params);
    for (f, b) in forwards.iter().zip(&backs) {
        for (r, &term) in f.terms.iter().enumerate() {
            let mut row = grads.words.row_mut(term);
            row += &b.words.row(r);
        }
        grads.topics += &b.topics;
    }
    Ok(BatchGradients {
        grads,
        mean_loss: total * scale,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        TrainConfig::default().adam()
    }
}

/// One bias-corrected ADAM update of `theta` in place. `step` counts from 1.
pub fn adam_update<F: Scalar>(
    theta: &mut Array2<F>,
    grad: &Array2<F>,
    m: &mut Array2<F>,
    v: &mut Array2<F>,
    step: usize,
    cfg: &AdamConfig,
) {
    assert!(step >= 1, "ADAM steps count from 1");
    let (b1, b2) = (F::of(cfg.beta1), F::of(cfg.beta2));
    let bc1 = F::of(1.0 - cfg.beta1.powi(step as i32));
    let bc2 = F::of(1.0 - cfg.beta2.powi(step as i32));
    let (lr, eps) = (F::of(cfg.learning_rate), F::of(cfg.eps));
    let one = F::one();
    Zip::from(theta)
        .and(grad)
        .and(m)
        .and(v)
        .for_each(|t, &g, m, v| {
            *m = b1 * *m + (one - b1) * g;
            *v = b2 * *v + (one - b2) * g * g;
            let m_hat = *m / bc1;
            let v_hat = *v / bc2;
            *t -= lr * m_hat / (v_hat.sqrt() + eps);
        });
}

/// ADAM moments for both parameter matrices.
#[derive(Debug, Clone)]
pub struct Adam<F> {
    config: AdamConfig,
    step: usize,
    m: Gradients<F>,
    v: Gradients<F>,
}

impl<F: Scalar> Adam<F> {
    pub fn new(params: &ModelParams<F>, config: AdamConfig) -> Self {
        Self {
            config,
            step: 0,
            m: Gradients::zeros_like(params),
            v: Gradients::zeros_like(params),
        }
    }

    pub fn steps_taken(&self) -> usize {
        self.step
    }

    pub fn step(&mut self, params: &mut ModelParams<F>, grads: &Gradients<F>) -> Result<()> {
        let next = self.step + 1;
        if !grads.words.iter().all(|g| g.is_finite()) {
            return Err(IdneError::NonFiniteGradient {
                step: next,
                which: "words",
            });
        }
        if !grads.topics.iter().all(|g| g.is_finite()) {
            return Err(IdneError::NonFiniteGradient {
                step: next,
                which: "topics",
            });
        }
        self.step = next;
        let (words, topics) = params.parts_mut();
        adam_update(words, &grads.words, &mut self.m.words, &mut self.v.words, next, &self.config);
        adam_update(topics, &grads.topics, &mut self.m.topics, &mut self.v.topics, next, &self.config);
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct TrainReport<F> {
    /// Mean batch loss per step.
    pub loss_curve: Vec<f64>,
    pub params: ModelParams<F>,
    pub wallclock_secs: f64,
    /// Documents with no in-vocabulary terms, excluded from sampling.
    pub flagged_docs: usize,
    /// Eligible documents without links; they only ever appear as negatives.
    pub isolated_docs: usize,
    pub positive_pairs: usize,
    pub delta_density: f64,
}

impl<F> TrainReport<F> {
    pub fn final_loss(&self) -> f64 {
        self.loss_curve.last().copied().unwrap_or(f64::NAN)
    }
}

pub fn train<F: Scalar>(
    x: &DocTermMatrix,
    reach: &ReachabilityMatrix,
    config: &TrainConfig,
) -> Result<TrainReport<F>> {
    train_with(x, reach, config, |_, _, _| Ok(()))
}

/// Runs `config.steps` iterations of sample → gradient → ADAM. `on_step`
/// sees the step number (from 1), the updated parameters and the batch loss.
pub fn train_with<F: Scalar>(
    x: &DocTermMatrix,
    reach: &ReachabilityMatrix,
    config: &TrainConfig,
    mut on_step: impl FnMut(usize, &ModelParams<F>, f64) -> Result<()>,
) -> Result<TrainReport<F>> {
    config.validate()?;
    if x.n_docs() != reach.n_docs() {
        return Err(IdneError::Shape(format!(
            "{} documents but reachability over {}",
            x.n_docs(),
            reach.n_docs()
        )));
    }
    let started = Instant::now();
    let eligible = x.nonempty_mask();
    let sampler = PairSampler::new(reach, &eligible)?;
    let isolated_docs = (0..x.n_docs())
        .filter(|&i| eligible[i] && reach.pos_weight().row(i).0.is_empty())
        .count();
    log::info!(
        "delta: {} positive ordered pairs, density {:.4}%, {} flagged docs, {} isolated docs",
        reach.n_positive(),
        100.0 * reach.density(),
        x.empty_rows().len(),
        isolated_docs
    );

    let mut params = ModelParams::<F>::init(
        x.n_terms(),
        config.n_topics,
        config.dim,
        seed::derive_seed(config.seed, "init"),
    )?;
    let mut adam = Adam::new(&params, config.adam());
    let mut rng = seed::rng_for(config.seed, "sampler");
    let mut loss_curve = Vec::with_capacity(config.steps);
    for step in 1..=config.steps {
        let batch = sampler.sample_batch(&mut rng, config.batch_size)?;
        let bg = batch_gradients(&params, x, &batch)?;
        adam.step(&mut params, &bg.grads)?;
        let loss = bg.mean_loss.as_f64();
        loss_curve.push(loss);
        on_step(step, &params, loss)?;
        if step % 1000 == 0 {
            log::debug!("step {step}: loss {loss:.4}");
        }
    }
    Ok(TrainReport {
        loss_curve,
        params,
        wallclock_secs: started.elapsed().as_secs_f64(),
        flagged_docs: x.empty_rows().len(),
        isolated_docs,
        positive_pairs: sampler.n_positive(),
        delta_density: reach.density(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::SparseDoc;
    use crate::graph::DocPair;
    use ndarray::array;

    fn pair(i: usize, j: usize, linked: bool) -> DocPair {
        DocPair { i, j, linked }
    }

    #[test]
    fn loss_examples() {
        let z = array![0.0, 0.0];
        assert!((pair_loss(z.view(), z.view(), true) - 2f64.ln()).abs() < 1e-15);
        assert!((pair_loss(z.view(), z.view(), false) - 2f64.ln()).abs() < 1e-15);
        let a = array![5.0f64, 5.0];
        let b = array![5.0, 5.0];
        assert!((pair_loss(a.view(), b.view(), false) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn config_validation() {
        assert!(TrainConfig::default().validate().is_ok());
        for bad in [
            TrainConfig { steps: 0, ..Default::default() },
            TrainConfig { batch_size: 31, ..Default::default() },
            TrainConfig { learning_rate: 0.0, ..Default::default() },
            TrainConfig { adam_beta2: 1.0, ..Default::default() },
            TrainConfig { n_topics: 0, ..Default::default() },
        ] {
            assert!(matches!(bad.validate(), Err(IdneError::Config(_))), "{bad:?}");
        }
    }

    #[test]
    fn adam_zero_gradient_keeps_params() {
        let mut theta = array![[0.3, -0.2]];
        let before = theta.clone();
        let g = Array2::zeros((1, 2));
        let (mut m, mut v) = (Array2::zeros((1, 2)), Array2::zeros((1, 2)));
        adam_update(&mut theta, &g, &mut m, &mut v, 1, &AdamConfig::default());
        assert_eq!(theta, before);
    }

    #[test]
    fn adam_first_step_is_lr_sign() {
        let cfg = AdamConfig::default();
        for c in [3.0f64, -0.5, 1e-3] {
            let mut theta = array![[1.0]];
            let (mut m, mut v) = (Array2::zeros((1, 1)), Array2::zeros((1, 1)));
            adam_update(&mut theta, &array![[c]], &mut m, &mut v, 1, &cfg);
            let expect = -cfg.learning_rate * c / (c.abs() + cfg.eps);
            assert!((theta[[0, 0]] - 1.0 - expect).abs() < 1e-15, "c={c}");
        }
    }

    #[test]
    fn adam_constant_gradient_converges_to_lr() {
        let cfg = AdamConfig::default();
        let mut theta = array![[0.0]];
        let (mut m, mut v) = (Array2::zeros((1, 1)), Array2::zeros((1, 1)));
        let mut last = 0.0;
        for t in 1..=5000 {
            let before = theta[[0, 0]];
            adam_update(&mut theta, &array![[-2.0]], &mut m, &mut v, t, &cfg);
            last = theta[[0, 0]] - before;
        }
        assert!((last - cfg.learning_rate).abs() < 1e-9, "{last}");
    }

    #[test]
    fn adam_rejects_non_finite() {
        let mut p: ModelParams<f64> = ModelParams::init(2, 1, 2, 0).unwrap();
        let mut adam = Adam::new(&p, AdamConfig::default());
        let mut g = Gradients::zeros_like(&p);
        g.words[[1, 1]] = f64::NAN;
        assert!(matches!(
            adam.step(&mut p, &g),
            Err(IdneError::NonFiniteGradient { step: 1, which: "words" })
        ));
        assert_eq!(adam.steps_taken(), 0);
    }

    #[test]
    fn all_flagged_documents_get_zero_gradient() {
        // every word is opposed to the only topic, so every column is flagged
        let words = array![[-1.0, 0.0], [-0.5, -0.5]];
        let topics = array![[1.0, 0.5]];
        let p = ModelParams::new(words, topics).unwrap();
        let x = DocTermMatrix::from_rows(
            2,
            vec![
                SparseDoc::from_counts([(0, 1)]),
                SparseDoc::from_counts([(1, 2)]),
            ],
        )
        .unwrap();
        let batch = PairBatch { pairs: vec![pair(0, 1, true)] };
        let bg = batch_gradients(&p, &x, &batch).unwrap();
        assert!((bg.mean_loss - 2f64.ln()).abs() < 1e-15);
        assert!(bg.grads.words.iter().chain(bg.grads.topics.iter()).all(|&g| g == 0.0));
    }

    #[test]
    fn duplicated_pair_doubles_gradient() {
        let p: ModelParams<f64> = ModelParams::init(5, 2, 3, 4).unwrap();
        let x = DocTermMatrix::from_rows(
            5,
            vec![
                SparseDoc::from_counts([(0, 1), (2, 3)]),
                SparseDoc::from_counts([(1, 1), (3, 1), (4, 2)]),
            ],
        )
        .unwrap();
        let one = batch_gradients(&p, &x, &PairBatch { pairs: vec![pair(0, 1, false)] }).unwrap();
        let two = batch_gradients(
            &p,
            &x,
            &PairBatch { pairs: vec![pair(0, 1, false), pair(0, 1, false)] },
        )
        .unwrap();
        // summed gradient of the doubled batch is 2× the single pair's
        let summed = &two.grads.words * 2.0;
        let expect = &one.grads.words * 2.0;
        for (a, b) in summed.iter().zip(expect.iter()) {
            assert!((a - b).abs() <= 1e-15 * b.abs().max(1.0));
        }
        assert!((two.mean_loss - one.mean_loss).abs() < 1e-15);
    }
}
