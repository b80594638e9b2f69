//! Independent brute-force counterparts of the fast paths: path sums by
//! outright path enumeration and random valid matchings for stress tests.
//! Nothing here shares code with the implementations it checks.

use crate::complex::{validate_matching, BasedComplex, CellKey, Matching};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sum of weighted paths from `source` to `target` in the rerouted graph,
/// by enumerating every path explicitly. Exponential; only for small
/// complexes in tests.
pub fn gamma_by_enumeration(
    cx: &BasedComplex,
    matching: &Matching,
    source: CellKey,
    target: CellKey,
) -> BigInt {
    let matched_pairs: std::collections::BTreeSet<(CellKey, CellKey)> = matching
        .edges
        .iter()
        .map(|e| (e.upper, e.lower))
        .collect();
    let mut adj: BTreeMap<CellKey, Vec<(CellKey, BigInt)>> = BTreeMap::new();
    for (from, entries) in &cx.diff {
        for (to, coeff) in entries {
            if matched_pairs.contains(&(*from, *to)) {
                assert!(
                    coeff.scalar == BigInt::one() || coeff.scalar == -BigInt::one(),
                    "matched edges carry unit coefficients"
                );
                let w = -coeff.scalar.clone();
                adj.entry(*to).or_default().push((*from, w));
            } else {
                adj.entry(*from).or_default().push((*to, coeff.scalar.clone()));
            }
        }
    }
    let mut total = BigInt::zero();
    let mut stack: Vec<(CellKey, BigInt)> = vec![(source, BigInt::one())];
    while let Some((node, weight)) = stack.pop() {
        if node == target {
            total += &weight;
            continue;
        }
        if let Some(tos) = adj.get(&node) {
            for (to, w) in tos {
                stack.push((*to, &weight * w));
            }
        }
    }
    total
}

/// Per-source path sums against every critical target, by enumeration.
pub fn morse_entries_by_enumeration(
    cx: &BasedComplex,
    matching: &Matching,
) -> BTreeMap<(CellKey, CellKey), BigInt> {
    let matched = matching.matched_cells();
    let mut out = BTreeMap::new();
    for source in cx.cell_keys() {
        if matched.contains(&source) || source.0 == 0 {
            continue;
        }
        for target in cx.cell_keys() {
            if target.0 + 1 != source.0 || matched.contains(&target) {
                continue;
            }
            let gamma = gamma_by_enumeration(cx, matching, source, target);
            if !gamma.is_zero() {
                out.insert((source, target), gamma);
            }
        }
    }
    out
}

/// Grow a random acyclic matching by adding unit-coefficient edges in a
/// shuffled order, keeping only additions that stay valid.
pub fn random_valid_matching<R: rand::Rng>(cx: &BasedComplex, rng: &mut R) -> Matching {
    let mut candidates: Vec<(CellKey, CellKey)> = Vec::new();
    for (from, entries) in &cx.diff {
        for (to, coeff) in entries {
            if coeff.is_unit() {
                candidates.push((*from, *to));
            }
        }
    }
    use rand::seq::SliceRandom;
    candidates.shuffle(rng);
    let mut matching = Matching::new();
    let mut used: std::collections::BTreeSet<CellKey> = std::collections::BTreeSet::new();
    for (upper, lower) in candidates {
        if used.contains(&upper) || used.contains(&lower) {
            continue;
        }
        let mut trial = matching.clone();
        trial.add(upper, lower, 1);
        let ok = validate_matching(cx, &trial)
            .map(|r| r.ok())
            .unwrap_or(false);
        if ok {
            matching = trial;
            used.insert(upper);
            used.insert(lower);
        }
    }
    matching
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{complex_homology, morse_complex};
    use crate::corpus::random_ideals;
    use crate::linalg::Rationals;
    use crate::taylor::build_taylor;
    use rand::SeedableRng;

    /// The dynamic-programming path sums agree with outright enumeration,
    /// and the rerouted complex keeps the homology, on random complexes
    /// with random matchings.
    #[test]
    fn dp_matches_enumeration_on_random_matchings() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for ideal in random_ideals(12, 12345) {
            let cx = build_taylor(&ideal, false).unwrap();
            let matching = random_valid_matching(&cx, &mut rng);
            let morse = morse_complex(&cx, &matching).unwrap();
            assert!(morse.check_dd_zero().is_ok());
            let enumerated = morse_entries_by_enumeration(&cx, &matching);
            let mut fast = BTreeMap::new();
            for (from, entries) in &morse.diff {
                for (to, coeff) in entries {
                    fast.insert((*from, *to), coeff.scalar.clone());
                }
            }
            assert_eq!(fast, enumerated, "ideal {}", ideal);
            let h0 = complex_homology(&cx.tensor_k(), &Rationals).unwrap();
            let h1 = complex_homology(&morse.tensor_k(), &Rationals).unwrap();
            assert_eq!(h0, h1, "homology changed for {}", ideal);
            assert_eq!(
                cx.euler_per_multidegree(),
                morse.euler_per_multidegree(),
                "euler changed for {}",
                ideal
            );
        }
    }
}
