//! Topic summaries and per-document attention annotations.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::corpus::{alphabetic_runs, vectorize_text, DocRow, Tokenizer, Vocabulary};
use crate::error::{IdneError, Result};
use crate::scalar::Scalar;
use crate::twa::{attention, ModelParams};

/// Attention above this value counts as a confident topic assignment.
pub const PASS_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct RankedWord {
    pub index: usize,
    pub term: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopicSummary {
    /// Per topic, the `k` words with the largest `t_k · w`.
    pub topics: Vec<Vec<RankedWord>>,
    /// Words with the largest L2 norms, descending.
    pub largest_norms: Vec<RankedWord>,
    /// Words with the smallest L2 norms, ascending.
    pub smallest_norms: Vec<RankedWord>,
}

impl TopicSummary {
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        for (k, words) in self.topics.iter().enumerate() {
            let list: Vec<&str> = words.iter().map(|w| w.term.as_str()).collect();
            let _ = writeln!(out, "topic {k:>3}\t{}", list.join(", "));
        }
        let fmt = |ws: &[RankedWord]| {
            ws.iter()
                .map(|w| format!("{} ({:.3})", w.term, w.score))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(out, "largest norms\t{}", fmt(&self.largest_norms));
        let _ = writeln!(out, "smallest norms\t{}", fmt(&self.smallest_norms));
        out
    }
}

/// Indices sorted by descending score, ties by ascending index.
fn rank_desc(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    idx
}

fn check_vocab<F: Scalar>(params: &ModelParams<F>, vocab: &Vocabulary) -> Result<()> {
    if vocab.len() != params.n_words() {
        return Err(IdneError::Shape(format!(
            "vocabulary has {} terms but the model has {} word vectors",
            vocab.len(),
            params.n_words()
        )));
    }
    Ok(())
}

pub fn topic_top_words<F: Scalar>(params: &ModelParams<F>, vocab: &Vocabulary, k: usize) -> Result<TopicSummary> {
    check_vocab(params, vocab)?;
    let n_w = params.n_words();
    if k > n_w {
        return Err(IdneError::Config(format!("k = {k} exceeds the {n_w} vocabulary words")));
    }
    let ranked = |idx: &[usize], scores: &[f64]| -> Vec<RankedWord> {
        idx.iter()
            .take(k)
            .map(|&i| RankedWord {
                index: i,
                term: vocab.term(i).to_owned(),
                score: scores[i],
            })
            .collect()
    };
    let sims = params.topics().dot(&params.words().t());
    let topics = sims
        .rows()
        .into_iter()
        .map(|row| {
            let scores: Vec<f64> = row.iter().map(|v| v.as_f64()).collect();
            ranked(&rank_desc(&scores), &scores)
        })
        .collect();
    let norms: Vec<f64> = params
        .words()
        .rows()
        .into_iter()
        .map(|w| w.iter().map(|v| v.as_f64().powi(2)).sum::<f64>().sqrt())
        .collect();
    let desc = rank_desc(&norms);
    let mut asc: Vec<usize> = (0..n_w).collect();
    asc.sort_by(|&a, &b| norms[a].total_cmp(&norms[b]).then(a.cmp(&b)));
    Ok(TopicSummary {
        topics,
        largest_norms: ranked(&desc, &norms),
        smallest_norms: ranked(&asc, &norms),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermAnnotation {
    pub index: usize,
    pub term: String,
    pub count: u32,
    /// Argmax topic of the term's attention column; `None` when flagged.
    pub topic: Option<usize>,
    pub weight: f64,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DocAnnotation {
    /// Distinct in-vocabulary terms in vocabulary order.
    pub terms: Vec<TermAnnotation>,
    /// Attention mass per topic over all terms, normalized to sum to one
    /// (all zeros when every term is flagged).
    pub topic_shares: Vec<f64>,
    /// Up to two topics with the largest shares, most shared first.
    pub highlighted: Vec<usize>,
    pub out_of_vocabulary: Vec<String>,
}

/// Annotates an already-vectorized document.
pub fn annotate_row<F: Scalar>(params: &ModelParams<F>, vocab: &Vocabulary, row: DocRow<'_>) -> Result<DocAnnotation> {
    check_vocab(params, vocab)?;
    let z = attention(params, row)?;
    let n_t = params.n_topics();
    let mut terms = Vec::with_capacity(z.terms.len());
    for (j, &term) in z.terms.iter().enumerate() {
        let col = z.weights.column(j);
        let (topic, weight) = if z.flagged.contains(&j) {
            (None, 0.0)
        } else {
            let mut best = (0, col[0].as_f64());
            for (k, v) in col.iter().enumerate().skip(1) {
                if v.as_f64() > best.1 {
                    best = (k, v.as_f64());
                }
            }
            (Some(best.0), best.1)
        };
        terms.push(TermAnnotation {
            index: term,
            term: vocab.term(term).to_owned(),
            count: z.counts[j],
            topic,
            weight,
            passes: weight > PASS_THRESHOLD,
        });
    }
    let mass: Vec<f64> = (0..n_t)
        .map(|k| z.weights.row(k).iter().map(|v| v.as_f64()).sum())
        .collect();
    let total: f64 = mass.iter().sum();
    let topic_shares: Vec<f64> = if total > 0.0 {
        mass.iter().map(|m| m / total).collect()
    } else {
        vec![0.0; n_t]
    };
    let highlighted = if total > 0.0 {
        rank_desc(&topic_shares)
            .into_iter()
            .take(2)
            .filter(|&k| topic_shares[k] > 0.0)
            .collect()
    } else {
        Vec::new()
    };
    Ok(DocAnnotation {
        terms,
        topic_shares,
        highlighted,
        out_of_vocabulary: Vec::new(),
    })
}

/// Tokenizes and vectorizes `text` against `vocab`, then annotates it.
pub fn annotate_document<F: Scalar>(
    params: &ModelParams<F>,
    vocab: &Vocabulary,
    tokenizer: &Tokenizer,
    text: &str,
) -> Result<DocAnnotation> {
    let (doc, oov) = vectorize_text(tokenizer, vocab, text);
    if doc.terms.is_empty() {
        return Err(IdneError::NoVocabularyTokens(oov));
    }
    let mut ann = annotate_row(params, vocab, doc.as_row())?;
    ann.out_of_vocabulary = oov;
    Ok(ann)
}

const ANSI_FIRST: &str = "\x1b[32;4m";
const ANSI_SECOND: &str = "\x1b[34;21m";
const ANSI_RESET: &str = "\x1b[0m";

impl DocAnnotation {
    pub fn term(&self, term: &str) -> Option<&TermAnnotation> {
        self.terms.iter().find(|t| t.term == term)
    }

    /// 0 for the most shared highlighted topic, 1 for the second.
    fn highlight_rank(&self, token: &str, tokenizer: &Tokenizer) -> Option<usize> {
        let lower = token.to_lowercase();
        if tokenizer.is_stop_word(&lower) {
            return None;
        }
        let t = self.lookup().get(lower.as_str()).copied()?;
        if !t.passes {
            return None;
        }
        self.highlighted.iter().position(|&k| Some(k) == t.topic)
    }

    fn lookup(&self) -> HashMap<&str, &TermAnnotation> {
        self.terms.iter().map(|t| (t.term.as_str(), t)).collect()
    }

    fn share_line(&self) -> String {
        self.highlighted
            .iter()
            .map(|&k| format!("topic {k}: {:.1}%", 100.0 * self.topic_shares[k]))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// `text` with confidently assigned words of the most shared topic
    /// underlined in green and those of the second in blue (double
    /// underline), followed by the two shares.
    pub fn render_ansi(&self, text: &str, tokenizer: &Tokenizer) -> String {
        let mut out = String::new();
        self.render(text, tokenizer, &mut out, |rank, word, out| {
            let style = if rank == 0 { ANSI_FIRST } else { ANSI_SECOND };
            out.push_str(style);
            out.push_str(word);
            out.push_str(ANSI_RESET);
        }, |s, out| out.push_str(s));
        let _ = write!(out, "\n\n{}\n", self.share_line());
        out
    }

    /// Self-contained HTML with inline styles only.
    pub fn render_html(&self, text: &str, tokenizer: &Tokenizer) -> String {
        let mut body = String::new();
        self.render(text, tokenizer, &mut body, |rank, word, out| {
            let style = if rank == 0 {
                "text-decoration: underline solid #1a7f37"
            } else {
                "text-decoration: underline double #0550ae"
            };
            let _ = write!(out, "<span class=\"topic-{rank}\" style=\"{style}\">{}</span>", escape(word));
        }, |s, out| out.push_str(&escape(s)));
        let shares = self
            .highlighted
            .iter()
            .enumerate()
            .map(|(rank, &k)| {
                let style = if rank == 0 {
                    "text-decoration: underline solid #1a7f37"
                } else {
                    "text-decoration: underline double #0550ae"
                };
                format!(
                    "<li><span style=\"{style}\">topic {k}</span>: {:.1}%</li>",
                    100.0 * self.topic_shares[k]
                )
            })
            .collect::<String>();
        format!(
            "<!DOCTYPE html>\n<html>\n<head><meta charset=\"utf-8\"><title>Document annotation</title></head>\n\
             <body style=\"font-family: serif; max-width: 48em; margin: 2em auto; line-height: 1.6\">\n\
             <p style=\"white-space: pre-wrap\">{body}</p>\n<ul>{shares}</ul>\n</body>\n</html>\n"
        )
    }

    fn render(
        &self,
        text: &str,
        tokenizer: &Tokenizer,
        out: &mut String,
        mut word: impl FnMut(usize, &str, &mut String),
        mut plain: impl FnMut(&str, &mut String),
    ) {
        let mut last = 0;
        for (start, run) in alphabetic_runs(text) {
            if let Some(rank) = self.highlight_rank(run, tokenizer) {
                plain(&text[last..start], out);
                word(rank, run, out);
                last = start + run.len();
            }
        }
        plain(&text[last..], out);
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '&' => out.push_str("&amp;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}
