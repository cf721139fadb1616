//! Term-conflation detection: clusters whose labels are mutually dissimilar.

mod embed;

use serde::{Deserialize, Serialize};
use serde_json::json;

pub use embed::{cosine, fnv1a64, EmbedError, EmbeddingProvider, FileProvider, HashNgramProvider, DEFAULT_DIM};

use crate::cluster::ClusterSet;
use crate::rdf::vocab::rdfs;
use crate::rdf::{Graph, Iri, Term, Triple};
use crate::reporting::{Category, Finding, Severity};
use crate::review::{mean_std, ItemKind, ReviewItem};

pub const DEFAULT_MIN_SIZE: usize = 3;
pub const DEFAULT_MEAN_CUT: f64 = 0.45;
pub const DEFAULT_STD_CUT: f64 = 0.15;

/// Similarity statistics over the off-diagonal entries of a label set.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelScores {
    /// Per label: mean and population std of its similarity to the others.
    pub per_label: Vec<(f64, f64)>,
    pub mean: f64,
    pub std: f64,
}

/// Scores a set of labels. Needs at least two.
pub fn score_labels(labels: &[&str], provider: &dyn EmbeddingProvider) -> Result<Option<LabelScores>, EmbedError> {
    if labels.len() < 2 {
        return Ok(None);
    }
    let vecs: Vec<Vec<f64>> = labels.iter().map(|l| provider.embed(l)).collect::<Result<_, _>>()?;
    let n = vecs.len();
    let mut sim = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let s = cosine(&vecs[i], &vecs[j])?;
            sim[i][j] = s;
            sim[j][i] = s;
        }
    }
    let mut all = Vec::with_capacity(n * (n - 1));
    let mut per_label = Vec::with_capacity(n);
    for (i, row) in sim.iter().enumerate() {
        let others: Vec<f64> = row.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &s)| s).collect();
        per_label.push(mean_std(&others).expect("n >= 2"));
        all.extend(others);
    }
    let (mean, std) = mean_std(&all).expect("n >= 2");
    Ok(Some(LabelScores { per_label, mean, std }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicScore {
    pub topic: Iri,
    pub label: String,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterScore {
    pub cluster: Iri,
    pub per_topic: Vec<TopicScore>,
    pub cluster_mean: f64,
    pub cluster_std: f64,
    pub n: usize,
}

impl ClusterScore {
    /// The member least similar to the rest; ties go to the smaller IRI.
    pub fn outlier(&self) -> Option<&TopicScore> {
        self.per_topic
            .iter()
            .min_by(|a, b| a.mean.total_cmp(&b.mean).then_with(|| a.topic.cmp(&b.topic)))
    }
}

/// Label used for `topic`: the smallest untagged or English rdfs:label,
/// else any label, else the IRI's local name with underscores as spaces.
pub fn topic_label(graph: &Graph, topic: &Iri) -> String {
    let subject = Term::Iri(topic.clone());
    let label = Term::Iri(Iri::new(rdfs::LABEL).expect("constant"));
    let lits: Vec<_> = graph
        .match_pattern(Some(&subject), Some(&label), None)
        .into_iter()
        .filter_map(|t| t.object.as_literal())
        .collect();
    let plain = lits
        .iter()
        .find(|l| l.language().is_none_or(|lang| lang == "en" || lang.starts_with("en-")));
    if let Some(l) = plain.or(lits.first()) {
        return l.lexical().to_string();
    }
    let s = topic.as_str();
    let local = s.rsplit(['/', '#']).next().unwrap_or(s);
    local.replace('_', " ")
}

/// Scores every cluster with two or more members, in canonical order.
pub fn score_clusters(
    graph: &Graph,
    clusters: &ClusterSet,
    provider: &dyn EmbeddingProvider,
) -> Result<Vec<ClusterScore>, EmbedError> {
    let mut out = Vec::new();
    let mut sorted: Vec<_> = clusters.iter().filter(|c| c.members.len() >= 2).collect();
    sorted.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    for c in sorted {
        let topics: Vec<&Iri> = c.members.iter().collect();
        let labels: Vec<String> = topics.iter().map(|t| topic_label(graph, t)).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let Some(s) = score_labels(&refs, provider)? else {
            continue;
        };
        out.push(ClusterScore {
            cluster: c.canonical.clone(),
            per_topic: topics
                .iter()
                .zip(labels)
                .zip(&s.per_label)
                .map(|((t, label), &(mean, std))| TopicScore {
                    topic: (*t).clone(),
                    label,
                    mean,
                    std,
                })
                .collect(),
            cluster_mean: s.mean,
            cluster_std: s.std,
            n: topics.len(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuspectOptions {
    pub min_size: usize,
    pub mean_cut: f64,
    pub std_cut: f64,
    /// Keep only the k lowest-mean selections.
    pub top_k: Option<usize>,
}

impl Default for SuspectOptions {
    fn default() -> Self {
        SuspectOptions {
            min_size: DEFAULT_MIN_SIZE,
            mean_cut: DEFAULT_MEAN_CUT,
            std_cut: DEFAULT_STD_CUT,
            top_k: None,
        }
    }
}

/// Clusters that are uniformly dissimilar: large enough, low mean and low
/// spread. Ordered by ascending mean, then cluster IRI.
pub fn select_suspects<'a>(scores: &'a [ClusterScore], opts: &SuspectOptions) -> Vec<&'a ClusterScore> {
    let mut out: Vec<&ClusterScore> = scores
        .iter()
        .filter(|s| s.n >= opts.min_size && s.cluster_mean <= opts.mean_cut && s.cluster_std <= opts.std_cut)
        .collect();
    out.sort_by(|a, b| a.cluster_mean.total_cmp(&b.cluster_mean).then_with(|| a.cluster.cmp(&b.cluster)));
    if let Some(k) = opts.top_k {
        out.truncate(k);
    }
    out
}

pub fn review_item(score: &ClusterScore) -> ReviewItem {
    let members: Vec<_> = score
        .per_topic
        .iter()
        .map(|t| json!({"topic": t.topic, "label": t.label, "mean": t.mean, "std": t.std}))
        .collect();
    ReviewItem::new(
        ItemKind::ConflationSuspect,
        json!({
            "cluster": score.cluster,
            "cluster_mean": score.cluster_mean,
            "cluster_std": score.cluster_std,
            "members": members,
        }),
    )
}

/// Informational findings for the selected clusters, citing member labels.
pub fn suspect_findings(graph: &Graph, suspects: &[&ClusterScore], ontology: &str) -> Vec<Finding> {
    let label = Iri::new(rdfs::LABEL).expect("constant");
    suspects
        .iter()
        .map(|s| {
            let mut evidence: Vec<Triple> = Vec::new();
            for t in &s.per_topic {
                let subj = Term::Iri(t.topic.clone());
                evidence.extend(
                    graph
                        .match_pattern(Some(&subj), Some(&Term::Iri(label.clone())), None)
                        .iter()
                        .map(|r| r.to_owned()),
                );
            }
            Finding::new(Category::ConflationSuspect, Severity::Info, ontology)
                .with_subject(Term::Iri(s.cluster.clone()))
                .with_evidence(evidence)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trigram() -> HashNgramProvider {
        HashNgramProvider::default()
    }

    #[test]
    fn singleton_has_no_score() {
        assert_eq!(score_labels(&["x"], &trigram()).unwrap(), None);
    }

    #[test]
    fn order_invariant_and_bounded() {
        let a = ["pedagogy", "string theory", "malware", "gene expression"];
        let mut b = a;
        b.reverse();
        let sa = score_labels(&a, &trigram()).unwrap().unwrap();
        let sb = score_labels(&b, &trigram()).unwrap().unwrap();
        assert!((sa.mean - sb.mean).abs() < 1e-12);
        assert!((sa.std - sb.std).abs() < 1e-12);
        let lo = sa.per_label.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let hi = sa.per_label.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        assert!(lo <= sa.mean + 1e-12 && sa.mean <= hi + 1e-12);
    }

    #[test]
    fn missing_label_is_an_error() {
        let p = FileProvider::parse("dim 2\na\t1 0\n").unwrap();
        assert_eq!(score_labels(&["a", "b"], &p), Err(EmbedError::MissingLabel("b".into())));
    }

    fn fake(n: usize, mean: f64, std: f64, name: &str) -> ClusterScore {
        ClusterScore {
            cluster: Iri::new(format!("http://x/{name}")).unwrap(),
            per_topic: vec![],
            cluster_mean: mean,
            cluster_std: std,
            n,
        }
    }

    #[test]
    fn selection_is_monotone_in_cuts() {
        let scores = vec![
            fake(3, 0.1, 0.05, "a"),
            fake(4, 0.3, 0.1, "b"),
            fake(2, 0.0, 0.0, "c"),
            fake(5, 0.5, 0.01, "d"),
            fake(3, 0.2, 0.3, "e"),
        ];
        let pick = |mean_cut, std_cut| {
            let opts = SuspectOptions { mean_cut, std_cut, ..Default::default() };
            select_suspects(&scores, &opts).iter().map(|s| s.cluster.to_string()).collect::<Vec<_>>()
        };
        assert_eq!(pick(0.45, 0.15), ["http://x/a", "http://x/b"]);
        let mut prev = 0;
        for cut in [0.0, 0.1, 0.25, 0.45, 0.6, 1.0] {
            let n = pick(cut, 0.15).len();
            assert!(n >= prev);
            prev = n;
        }
        let top1 = SuspectOptions { top_k: Some(1), ..Default::default() };
        assert_eq!(select_suspects(&scores, &top1).len(), 1);
    }
}
