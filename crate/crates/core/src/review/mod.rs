//! Human review: queues, verdict journal, agreement statistics and the HTTP server.

mod agreement;
mod item;
pub mod server;
mod verdict;

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use agreement::{fleiss_kappa, krippendorff_alpha, AgreementError, Metric};
pub use item::{item_id, read_queue, write_queue, ItemKind, ItemStatus, ReviewItem};
pub use verdict::{
    current_view, majority_verdict, read_journal, AlignmentCategory, Journal, Majority, Verdict,
    VerdictError, SCORES,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewerStats {
    pub n: usize,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub metric: Metric,
    pub reviewers: BTreeMap<String, ReviewerStats>,
    /// Items scored by every reviewer; the population for kappa.
    pub items_rated_by_all: usize,
    pub fleiss_kappa: Option<f64>,
    pub kappa_error: Option<String>,
    pub krippendorff_alpha: Option<f64>,
    pub alpha_error: Option<String>,
    pub majority: BTreeMap<String, Majority>,
}

/// Mean and population std of a slice; `None` when empty.
pub fn mean_std(xs: &[f64]) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    Some((mean, var.sqrt()))
}

/// Agreement over the latest verdict of each reviewer on each item.
pub fn agreement_report<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>, metric: Metric) -> AgreementReport {
    let mut by_item: BTreeMap<&str, BTreeMap<&str, i8>> = BTreeMap::new();
    for v in verdicts {
        by_item.entry(&v.item).or_default().insert(&v.reviewer, v.score);
    }
    let reviewers: BTreeSet<&str> = by_item.values().flat_map(|m| m.keys().copied()).collect();

    let mut stats = BTreeMap::new();
    for r in &reviewers {
        let scores: Vec<f64> = by_item.values().filter_map(|m| m.get(r)).map(|&s| f64::from(s)).collect();
        let (mean, std) = mean_std(&scores).unwrap_or((0.0, 0.0));
        stats.insert(r.to_string(), ReviewerStats { n: scores.len(), mean, std });
    }

    let full: Vec<Vec<usize>> = by_item
        .values()
        .filter(|m| m.len() == reviewers.len())
        .map(|m| {
            let mut row = vec![0usize; SCORES.len()];
            for &s in m.values() {
                row[(s + 2) as usize] += 1;
            }
            row
        })
        .collect();
    let kappa = fleiss_kappa(&full);

    let units: Vec<Vec<Option<i64>>> = by_item
        .values()
        .map(|m| reviewers.iter().map(|r| m.get(r).map(|&s| i64::from(s))).collect())
        .collect();
    let alpha = krippendorff_alpha(&units, metric);

    let majority = by_item
        .iter()
        .map(|(id, m)| (id.to_string(), majority_verdict(&m.values().copied().collect::<Vec<_>>())))
        .collect();

    AgreementReport {
        metric,
        reviewers: stats,
        items_rated_by_all: full.len(),
        fleiss_kappa: kappa.as_ref().ok().copied(),
        kappa_error: kappa.err().map(|e| e.to_string()),
        krippendorff_alpha: alpha.as_ref().ok().copied(),
        alpha_error: alpha.err().map(|e| e.to_string()),
        majority,
    }
}

/// Markdown rendering: a reviewer table with two-decimal mean and std,
/// then kappa, alpha and the majority tally.
pub fn render_report(r: &AgreementReport) -> String {
    let mut out = String::from("| Reviewer | Mean score | St. dev. |\n|:---|---:|---:|\n");
    for (name, s) in &r.reviewers {
        out.push_str(&format!("| {name} | {:.2} | {:.2} |\n", s.mean, s.std));
    }
    let num = |v: Option<f64>, err: &Option<String>| match (v, err) {
        (Some(x), _) => format!("{x:.3}"),
        (None, Some(e)) => format!("undefined ({e})"),
        (None, None) => "undefined".to_string(),
    };
    out.push_str(&format!(
        "\nFleiss' kappa: {} over {} items rated by all reviewers\n",
        num(r.fleiss_kappa, &r.kappa_error),
        r.items_rated_by_all
    ));
    let metric = match r.metric {
        Metric::Nominal => "nominal",
        Metric::Ordinal => "ordinal",
    };
    out.push_str(&format!(
        "Krippendorff's alpha ({metric}): {}\n",
        num(r.krippendorff_alpha, &r.alpha_error)
    ));
    let count = |m: Majority| r.majority.values().filter(|&&x| x == m).count();
    out.push_str(&format!(
        "Majority: {} wrong, {} unsure, {} good\n",
        count(Majority::Wrong),
        count(Majority::Unsure),
        count(Majority::Good)
    ));
    out
}

/// Deterministic per-reviewer presentation order.
pub fn reviewer_order<T>(items: &mut [T], seed: u64, reviewer: &str) {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(reviewer.as_bytes());
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    let mut rng = ChaCha8Rng::from_seed(key);
    items.shuffle(&mut rng);
}
