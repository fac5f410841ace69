use super::Alignment;
use crate::pattern::{alphabet_size, Pattern, PatternKind, PatternStore, Symbol};

/// Maximum set of order-preserving matches between `syms` and `targets`.
///
/// A target may only be matched when its flag is set. Returns
/// `(index in syms, index in targets)` pairs. Among optimal solutions each
/// symbol, taken left to right, is matched to the leftmost target that still
/// allows an optimal completion.
pub(crate) fn lcs_pairs(syms: &[Symbol], targets: &[(&Symbol, bool)]) -> Vec<(usize, usize)> {
    let (m, k) = (syms.len(), targets.len());
    let width = k + 1;
    // suffix[i * width + j] = best match count for syms[i..] vs targets[j..]
    let mut suffix = vec![0u32; (m + 1) * width];
    let matches = |i: usize, j: usize| targets[j].1 && targets[j].0 == &syms[i];
    for i in (0..m).rev() {
        for j in (0..k).rev() {
            let skip = suffix[(i + 1) * width + j].max(suffix[i * width + j + 1]);
            let take = if matches(i, j) { suffix[(i + 1) * width + j + 1] + 1 } else { 0 };
            suffix[i * width + j] = skip.max(take);
        }
    }

    let mut pairs = Vec::with_capacity(suffix[0] as usize);
    let (mut i, mut j) = (0, 0);
    while i < m && j < k {
        let remaining = suffix[i * width + j];
        if remaining == 0 {
            break;
        }
        let found = (j..k).find(|&jj| matches(i, jj) && suffix[(i + 1) * width + jj + 1] + 1 == remaining);
        match found {
            Some(jj) => {
                pairs.push((i, jj));
                i += 1;
                j = jj + 1;
            }
            None => i += 1,
        }
    }
    pairs
}

/// Length of the longest common subsequence of two symbol sequences.
pub fn lcs_length(a: &[Symbol], b: &[Symbol]) -> usize {
    let targets: Vec<(&Symbol, bool)> = a.iter().map(|s| (s, true)).collect();
    lcs_pairs(b, &targets).len()
}

/// Two-row alignment with as many hit columns as possible.
///
/// `a` takes the New role in row 0 and `b` the Old role in row 1. The result
/// is scored as though `b` were the only stored pattern, over the alphabet
/// of both sequences.
pub fn align_pair(a: &Pattern, b: &Pattern) -> Alignment {
    let targets: Vec<(&Symbol, bool)> = a.symbols().iter().map(|s| (s, true)).collect();
    let pairs = lcs_pairs(b.symbols(), &targets);
    let old = Pattern::new(b.id(), b.symbols().to_vec(), b.frequency(), PatternKind::Old).expect("valid pattern");
    let store = PatternStore::from_patterns([old.clone()]).expect("single pattern");
    let mut all = a.symbols().to_vec();
    all.extend_from_slice(b.symbols());
    Alignment::literal(a.clone())
        .merge_row(&old, &pairs)
        .with_score(&store, alphabet_size(&all))
        .expect("row is in the store")
}
