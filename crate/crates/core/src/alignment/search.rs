use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{alignment_alphabet, Alignment, AlignmentError};
use crate::pattern::{Pattern, PatternStore};

pub const DEFAULT_BEAM: usize = 50;
pub const DEFAULT_MAX_OLD_ROWS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    pub beam: usize,
    pub max_old_rows: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { beam: DEFAULT_BEAM, max_old_rows: DEFAULT_MAX_OLD_ROWS }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentRanking {
    /// Best first.
    pub alignments: Vec<Alignment>,
    pub probabilities: Vec<f64>,
}

impl AlignmentRanking {
    pub fn best(&self) -> &Alignment {
        &self.alignments[0]
    }

    pub fn len(&self) -> usize {
        self.alignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alignments.is_empty()
    }
}

/// Higher compression difference first, then fewer Old rows, then the
/// lexicographically smaller sequence of Old ids.
fn rank_order(a: &Alignment, b: &Alignment) -> Ordering {
    b.compression_difference()
        .total_cmp(&a.compression_difference())
        .then_with(|| a.old_rows().len().cmp(&b.old_rows().len()))
        .then_with(|| a.old_ids().cmp(&b.old_ids()))
}

/// Beam search for alignments that encode `new` economically.
///
/// The search is seeded with the literal alignment and with the best
/// pairwise alignment against each stored pattern. Each round extends every
/// frontier candidate by every stored pattern not yet in it, matching
/// still-unmatched symbols of New or of already placed Old rows. Only
/// extensions that raise the compression difference survive, and the best
/// `beam` of them form the next frontier. The search ends when a round
/// produces no improvement or every frontier candidate has `max_old_rows`
/// rows. The ranking holds the best `beam` distinct alignments seen.
pub fn build_alignments(
    new: &Pattern,
    store: &PatternStore,
    params: SearchParams,
) -> Result<AlignmentRanking, AlignmentError> {
    if params.beam == 0 {
        return Err(AlignmentError::InvalidParameter("beam must be at least 1".into()));
    }
    let alphabet = alignment_alphabet(new, store);
    let literal = Alignment::literal(new.clone()).with_score(store, alphabet)?;

    let mut seen = BTreeSet::new();
    seen.insert(literal.canonical_key());
    let mut kept = vec![literal.clone()];

    let mut seeds = Vec::new();
    if params.max_old_rows > 0 {
        for old in store.iter() {
            if let Some(al) = literal.extend(old) {
                let al = al.with_score(store, alphabet)?;
                if seen.insert(al.canonical_key()) {
                    seeds.push(al);
                }
            }
        }
    }
    seeds.sort_by(rank_order);
    kept.extend(seeds.iter().cloned());
    let mut frontier: Vec<Alignment> = seeds.into_iter().take(params.beam).collect();

    loop {
        let expandable: Vec<&Alignment> =
            frontier.iter().filter(|al| al.old_rows().len() < params.max_old_rows).collect();
        if expandable.is_empty() {
            break;
        }
        let results: Vec<Result<Vec<Alignment>, AlignmentError>> = expandable
            .par_iter()
            .map(|parent| {
                let mut out = Vec::new();
                for old in store.iter() {
                    if let Some(child) = parent.extend(old) {
                        let child = child.with_score(store, alphabet)?;
                        if child.compression_difference() > parent.compression_difference() {
                            out.push(child);
                        }
                    }
                }
                Ok(out)
            })
            .collect();
        let mut improved = Vec::new();
        for r in results {
            improved.extend(r?);
        }
        // canonical order before de-duplication so the survivor does not
        // depend on which worker produced it
        improved.sort_by(rank_order);
        improved.retain(|al| seen.insert(al.canonical_key()));
        if improved.is_empty() {
            break;
        }
        improved.truncate(params.beam);
        kept.extend(improved.iter().cloned());
        frontier = improved;
    }

    kept.sort_by(rank_order);
    kept.truncate(params.beam.max(1));
    let probabilities = alignment_probabilities(&kept)?;
    Ok(AlignmentRanking { alignments: kept, probabilities })
}

/// `p_i = 2^-cost_i / Σ_j 2^-cost_j`.
pub fn alignment_probabilities(alignments: &[Alignment]) -> Result<Vec<f64>, AlignmentError> {
    let costs: Vec<f64> = alignments.iter().map(Alignment::encoding_cost).collect();
    probabilities_from_costs(&costs)
}

pub(crate) fn probabilities_from_costs(costs: &[f64]) -> Result<Vec<f64>, AlignmentError> {
    let min = costs.iter().copied().fold(f64::INFINITY, f64::min);
    if costs.is_empty() {
        return Err(AlignmentError::EmptyRanking);
    }
    // shifting by the minimum keeps the exponents in range
    let weights: Vec<f64> = costs.iter().map(|c| (min - c).exp2()).collect();
    let total: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// Ranks stored patterns by the compression difference of aligning `query`
/// against each one alone; ties go to the smaller id.
pub fn retrieve(query: &Pattern, store: &PatternStore, k: usize) -> Result<Vec<(String, f64)>, AlignmentError> {
    if k == 0 {
        return Err(AlignmentError::InvalidParameter("k must be at least 1".into()));
    }
    let alphabet = alignment_alphabet(query, store);
    let literal = Alignment::literal(query.clone()).with_score(store, alphabet)?;
    let mut scored = Vec::with_capacity(store.len());
    for old in store.iter() {
        let cd = match literal.extend(old) {
            Some(al) => al.with_score(store, alphabet)?.compression_difference(),
            // the pattern contributes nothing but its code
            None => -store.code_cost(old.id())?,
        };
        scored.push((old.id().to_owned(), cd));
    }
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    scored.truncate(k);
    Ok(scored)
}
