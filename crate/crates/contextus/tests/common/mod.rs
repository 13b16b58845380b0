//! Shared fixtures and independent oracles for the integration suites.
// Not every suite uses every helper.
#![allow(dead_code)]

use std::collections::BTreeMap;

use contextus::contexts::{build_context_poset, filter_strings, ContextPoset, ObservableString};
use contextus::pauli::{Pauli, Sign};
use contextus::poset::{DownSet, FinitePoset};
use contextus::quantum::StateVector;

/// All 2^n strings over the per-qubit alphabet {X, Y}.
pub fn xy_strings(n: usize) -> Vec<ObservableString> {
    (0..1usize << n)
        .map(|mask| {
            let letters = (0..n)
                .map(|k| {
                    if mask >> (n - 1 - k) & 1 == 1 {
                        Pauli::Y
                    } else {
                        Pauli::X
                    }
                })
                .collect();
            ObservableString::new(letters).unwrap()
        })
        .collect()
}

/// The GHZ scenario: state, retained strings, context poset.
pub fn ghz_scenario() -> (StateVector, BTreeMap<ObservableString, Sign>, ContextPoset) {
    let ghz = StateVector::ghz(3).unwrap();
    let retained = filter_strings(&xy_strings(3), &ghz).unwrap();
    let cp = build_context_poset(&retained).unwrap();
    (ghz, retained, cp)
}

/// Brute-force down-set oracle: filters all 2^k subsets.
pub fn brute_force_downsets(poset: &FinitePoset) -> Vec<DownSet> {
    assert!(poset.len() <= 20, "oracle is for small posets");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << poset.len()) {
        let membership: Vec<bool> = (0..poset.len()).map(|i| mask >> i & 1 == 1).collect();
        let candidate = DownSet::new(membership);
        if poset.is_down_set(&candidate) {
            out.push(candidate);
        }
    }
    out
}

/// All posets on at most `max` elements whose natural labeling is a linear
/// extension: every isomorphism class appears. Enumerates the transitive
/// relations supported on index pairs i < j.
pub fn all_small_posets(max: usize) -> Vec<FinitePoset> {
    let mut posets = Vec::new();
    for n in 0..=max {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..(1u32 << pairs.len()) {
            let mut rel = vec![false; n * n];
            for a in 0..n {
                rel[a * n + a] = true;
            }
            for (bit, &(i, j)) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    rel[i * n + j] = true;
                }
            }
            let transitive = (0..n).all(|a| {
                (0..n).all(|b| !rel[a * n + b] || (0..n).all(|c| !rel[b * n + c] || rel[a * n + c]))
            });
            if !transitive {
                continue;
            }
            let labels = (0..n).map(|i| format!("p{i}")).collect();
            posets.push(FinitePoset::new(labels, rel).unwrap());
        }
    }
    posets
}

/// A poset from arbitrary upper-triangle edge bits: the transitive closure
/// of any such relation is a valid partial order.
pub fn poset_from_edge_bits(n: usize, bits: &[bool]) -> FinitePoset {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .zip(bits)
        .filter(|(_, &b)| b)
        .map(|(&e, _)| e)
        .collect();
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FinitePoset::from_cover_edges(labels, &edges).unwrap()
}
