//! Inter-annotator agreement: Fleiss' kappa and Krippendorff's alpha.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AgreementError {
    #[error("no items to compare")]
    Empty,
    #[error("every item needs the same number of ratings (at least 2)")]
    UnequalRaters,
    #[error("all ratings fall in one category; expected agreement is 1")]
    DegenerateCategories,
    #[error("fewer than two pairable values")]
    InsufficientData,
    #[error("no variation in the pairable values")]
    NoVariation,
}

/// Fleiss' kappa from an items x categories count matrix.
pub fn fleiss_kappa(counts: &[Vec<usize>]) -> Result<f64, AgreementError> {
    if counts.is_empty() {
        return Err(AgreementError::Empty);
    }
    let n: usize = counts[0].iter().sum();
    if n < 2 || counts.iter().any(|row| row.iter().sum::<usize>() != n) {
        return Err(AgreementError::UnequalRaters);
    }
    let k = counts[0].len();
    if counts.iter().any(|row| row.len() != k) {
        return Err(AgreementError::UnequalRaters);
    }
    let items = counts.len() as f64;
    let nf = n as f64;
    let mut p_j = vec![0.0; k];
    let mut p_bar = 0.0;
    for row in counts {
        let mut sq = 0usize;
        for (j, &c) in row.iter().enumerate() {
            p_j[j] += c as f64;
            sq += c * c;
        }
        p_bar += (sq - n) as f64 / (nf * (nf - 1.0));
    }
    p_bar /= items;
    let p_e: f64 = p_j.iter().map(|t| (t / (items * nf)).powi(2)).sum();
    if (1.0 - p_e).abs() < 1e-15 {
        return Err(AgreementError::DegenerateCategories);
    }
    if (1.0 - p_bar).abs() < 1e-15 {
        return Ok(1.0);
    }
    Ok((p_bar - p_e) / (1.0 - p_e))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Nominal,
    #[default]
    Ordinal,
}

impl std::str::FromStr for Metric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "nominal" => Ok(Metric::Nominal),
            "ordinal" => Ok(Metric::Ordinal),
            other => Err(format!("unknown metric {other:?}; expected nominal or ordinal")),
        }
    }
}

/// Krippendorff's alpha over units (rows) of ratings, `None` for missing.
/// Units with fewer than two ratings are not pairable and are skipped.
pub fn krippendorff_alpha(units: &[Vec<Option<i64>>], metric: Metric) -> Result<f64, AgreementError> {
    // coincidence matrix over the distinct values, in ascending order
    let mut values: Vec<i64> = units.iter().flatten().flatten().copied().collect();
    values.sort_unstable();
    values.dedup();
    let index: BTreeMap<i64, usize> = values.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let v = values.len();
    let mut o = vec![vec![0.0f64; v]; v];
    for unit in units {
        let present: Vec<usize> = unit.iter().flatten().map(|x| index[x]).collect();
        let m = present.len();
        if m < 2 {
            continue;
        }
        let w = 1.0 / (m as f64 - 1.0);
        for (a, &ca) in present.iter().enumerate() {
            for (b, &cb) in present.iter().enumerate() {
                if a != b {
                    o[ca][cb] += w;
                }
            }
        }
    }
    let n_c: Vec<f64> = o.iter().map(|row| row.iter().sum()).collect();
    let n: f64 = n_c.iter().sum();
    if n < 2.0 - 1e-9 {
        return Err(AgreementError::InsufficientData);
    }
    let delta = |c: usize, k: usize| -> f64 {
        match metric {
            Metric::Nominal => f64::from(u8::from(c != k)),
            Metric::Ordinal => {
                let (lo, hi) = if c <= k { (c, k) } else { (k, c) };
                let between: f64 = n_c[lo..=hi].iter().sum();
                (between - (n_c[lo] + n_c[hi]) / 2.0).powi(2)
            }
        }
    };
    let mut observed = 0.0;
    let mut expected = 0.0;
    for c in 0..v {
        for k in 0..v {
            if c == k {
                continue;
            }
            let d = delta(c, k);
            observed += o[c][k] * d;
            expected += n_c[c] * n_c[k] * d;
        }
    }
    if expected <= 0.0 {
        return Err(AgreementError::NoVariation);
    }
    if observed == 0.0 {
        return Ok(1.0);
    }
    Ok(1.0 - (n - 1.0) * observed / expected)
}
