//! Fixed-length barcode signatures and the desk-scale nearest-neighbour
//! classification harness.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::persistence::Barcode;

/// Top-k lifespans per homology degree, degrees concatenated in increasing
/// order, zero-padded. `cap` is the radius used to finitise essential bars.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureVector {
    values: Vec<f64>,
    k: usize,
    cap: f64,
}

impl SignatureVector {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }
}

/// Per degree, the `k` largest lifespans in descending order, padded with
/// zeros; essential bars count `cap - birth`.
pub fn top_lifespans(barcode: &Barcode, degrees: &[usize], k: usize, cap: f64) -> Result<SignatureVector> {
    if k == 0 {
        return Err(Error::invalid("signature length k must be at least 1"));
    }
    if !cap.is_finite() || cap < 0.0 {
        return Err(Error::invalid(format!("cap must be finite and non-negative, got {cap}")));
    }
    if let Some(bad) = barcode
        .intervals()
        .iter()
        .find(|i| !i.is_essential() && i.death > cap)
    {
        return Err(Error::invalid(format!(
            "cap {cap} is smaller than the finite death {} in degree {}",
            bad.death, bad.dim
        )));
    }
    let mut sorted_degrees = degrees.to_vec();
    sorted_degrees.sort_unstable();
    sorted_degrees.dedup();
    let mut values = Vec::with_capacity(sorted_degrees.len() * k);
    for &degree in &sorted_degrees {
        let mut lifespans: Vec<f64> = barcode.in_dim(degree).map(|i| i.lifespan(cap)).collect();
        lifespans.sort_by(|a, b| b.total_cmp(a));
        lifespans.truncate(k);
        lifespans.resize(k, 0.0);
        values.extend_from_slice(&lifespans);
    }
    Ok(SignatureVector { values, k, cap })
}

/// Outcome of a leave-one-out 1-NN run. `confusion[(truth, predicted)]`
/// counts samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub accuracy: f64,
    pub n: usize,
    pub correct: usize,
    pub confusion: BTreeMap<(u32, u32), usize>,
}

/// Leave-one-out 1-nearest-neighbour under Euclidean distance; distance ties
/// go to the smaller sample index.
pub fn loo_nn_report(signatures: &[SignatureVector], labels: &[u32]) -> Result<ClassificationReport> {
    let n = signatures.len();
    if n != labels.len() {
        return Err(Error::invalid(format!("{n} signatures but {} labels", labels.len())));
    }
    if n < 2 {
        return Err(Error::invalid("classification needs at least two samples"));
    }
    let len = signatures[0].values.len();
    if signatures.iter().any(|s| s.values.len() != len) {
        return Err(Error::invalid("signatures must all have the same length"));
    }
    {
        let mut distinct = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < 2 {
            return Err(Error::invalid("classification needs at least two distinct labels"));
        }
    }

    let mut correct = 0;
    let mut confusion: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for i in 0..n {
        let mut best: Option<(f64, usize)> = None;
        for j in 0..n {
            if j == i {
                continue;
            }
            let d2: f64 = signatures[i]
                .values
                .iter()
                .zip(&signatures[j].values)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let candidate = (d2, j);
            if best.is_none_or(|b| candidate.0.total_cmp(&b.0).then(candidate.1.cmp(&b.1)).is_lt()) {
                best = Some(candidate);
            }
        }
        let predicted = labels[best.unwrap().1];
        if predicted == labels[i] {
            correct += 1;
        }
        *confusion.entry((labels[i], predicted)).or_insert(0) += 1;
    }
    Ok(ClassificationReport { accuracy: correct as f64 / n as f64, n, correct, confusion })
}

/// Accuracy-only form of [`loo_nn_report`].
pub fn loo_nn_classify(signatures: &[SignatureVector], labels: &[u32]) -> Result<f64> {
    Ok(loo_nn_report(signatures, labels)?.accuracy)
}

/// Signature CSV: label first, then the signature entries, one row per cloud.
pub fn signatures_to_csv(signatures: &[SignatureVector], labels: &[u32]) -> String {
    let mut out = String::new();
    for (sig, label) in signatures.iter().zip(labels) {
        let mut row = vec![label.to_string()];
        row.extend(sig.values.iter().map(|v| format!("{v:.11e}")));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
