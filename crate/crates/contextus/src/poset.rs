//! Finite posets, Hasse diagrams and order-ideal (down-set) enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the element count for down-set enumeration.
pub const DOWNSET_ELEMENT_CAP: usize = 24;

/// A finite poset over labelled elements. The element order is the
/// canonical order supplied by the builder and is preserved everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    // leq[a * len + b] is true iff a <= b
    leq: Vec<bool>,
    len: usize,
}

impl FinitePoset {
    /// Builds a poset from a full relation matrix, validating reflexivity,
    /// antisymmetry and transitivity.
    pub fn new(labels: Vec<String>, leq: Vec<bool>) -> Result<FinitePoset> {
        let len = labels.len();
        if leq.len() != len * len {
            return Err(Error::InvalidPoset(format!(
                "relation has {} entries, expected {}",
                leq.len(),
                len * len
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for label in &labels {
            if !seen.insert(label) {
                return Err(Error::InvalidPoset(format!("duplicate label {label:?}")));
            }
        }
        let poset = FinitePoset { labels, leq, len };
        for a in 0..len {
            if !poset.leq(a, a) {
                return Err(Error::InvalidPoset(format!(
                    "not reflexive at {:?}",
                    poset.labels[a]
                )));
            }
            for b in 0..len {
                if a != b && poset.leq(a, b) && poset.leq(b, a) {
                    return Err(Error::InvalidPoset(format!(
                        "not antisymmetric at {:?}, {:?}",
                        poset.labels[a], poset.labels[b]
                    )));
                }
                for c in 0..len {
                    if poset.leq(a, b) && poset.leq(b, c) && !poset.leq(a, c) {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive at {:?} <= {:?} <= {:?}",
                            poset.labels[a], poset.labels[b], poset.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(poset)
    }

    /// Builds a poset from a pointwise order predicate.
    pub fn from_leq_fn(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<FinitePoset> {
        let len = labels.len();
        let mut rel = vec![false; len * len];
        for a in 0..len {
            for b in 0..len {
                rel[a * len + b] = leq(a, b);
            }
        }
        FinitePoset::new(labels, rel)
    }

    /// Builds a poset as the reflexive-transitive closure of cover edges
    /// `(lower, upper)`.
    pub fn from_cover_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<FinitePoset> {
        let len = labels.len();
        let mut rel = vec![false; len * len];
        for a in 0..len {
            rel[a * len + a] = true;
        }
        for &(lo, hi) in edges {
            if lo >= len || hi >= len {
                return Err(Error::InvalidPoset(format!(
                    "edge ({lo}, {hi}) out of range"
                )));
            }
            rel[lo * len + hi] = true;
        }
        // Floyd-Warshall style closure.
        for k in 0..len {
            for a in 0..len {
                if rel[a * len + k] {
                    for b in 0..len {
                        if rel[k * len + b] {
                            rel[a * len + b] = true;
                        }
                    }
                }
            }
        }
        FinitePoset::new(labels, rel)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// The covering relation: pairs x < y with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for a in 0..self.len {
            for b in 0..self.len {
                if !self.lt(a, b) {
                    continue;
                }
                let covered = (0..self.len).any(|m| self.lt(a, m) && self.lt(m, b));
                if !covered {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Elements strictly below `x`, plus `x` itself, as a down-set.
    pub fn down_closure(&self, x: usize) -> DownSet {
        DownSet {
            membership: (0..self.len).map(|y| self.leq(y, x)).collect(),
        }
    }

    pub fn is_down_set(&self, set: &DownSet) -> bool {
        if set.len() != self.len {
            return false;
        }
        for x in 0..self.len {
            if !set.contains(x) {
                continue;
            }
            for y in 0..self.len {
                if self.leq(y, x) && !set.contains(y) {
                    return false;
                }
            }
        }
        true
    }

    /// All down-sets (order ideals), ordered by cardinality then
    /// lexicographically on the membership bit-vector.
    ///
    /// Enumeration extends partial ideals along a fixed linear extension,
    /// so the cost is proportional to the output size.
    pub fn enumerate_downsets(&self) -> Result<Vec<DownSet>> {
        if self.len > DOWNSET_ELEMENT_CAP {
            return Err(Error::Capacity {
                what: "down-set enumeration",
                n: self.len,
                max: DOWNSET_ELEMENT_CAP,
            });
        }
        // Linear extension: ascending size of the strict down-closure.
        let mut order: Vec<usize> = (0..self.len).collect();
        let below: Vec<usize> = (0..self.len)
            .map(|x| (0..self.len).filter(|&y| self.lt(y, x)).count())
            .collect();
        order.sort_by_key(|&x| (below[x], x));

        let mut out = Vec::new();
        let mut membership = vec![false; self.len];
        self.extend_downsets(&order, 0, &mut membership, &mut out);
        out.sort_by_key(|d| (d.cardinality(), d.membership.clone()));
        Ok(out)
    }

    fn extend_downsets(
        &self,
        order: &[usize],
        pos: usize,
        membership: &mut Vec<bool>,
        out: &mut Vec<DownSet>,
    ) {
        if pos == order.len() {
            out.push(DownSet {
                membership: membership.clone(),
            });
            return;
        }
        let x = order[pos];
        self.extend_downsets(order, pos + 1, membership, out);
        let admissible = (0..self.len).all(|y| !self.lt(y, x) || membership[y]);
        if admissible {
            membership[x] = true;
            self.extend_downsets(order, pos + 1, membership, out);
            membership[x] = false;
        }
    }

    /// Connected components of the comparability graph, each sorted, in
    /// order of their smallest element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut component = vec![usize::MAX; self.len];
        let mut count = 0;
        for start in 0..self.len {
            if component[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            component[start] = count;
            while let Some(x) = stack.pop() {
                for (y, slot) in component.iter_mut().enumerate() {
                    if *slot == usize::MAX && (self.leq(x, y) || self.leq(y, x)) {
                        *slot = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        let mut parts = vec![Vec::new(); count];
        for (x, &c) in component.iter().enumerate() {
            parts[c].push(x);
        }
        parts
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.len).all(|a| (0..self.len).all(|b| !self.lt(a, b)))
    }

    /// DOT rendering of the Hasse diagram; node names are the poset labels.
    pub fn to_dot(&self) -> String {
        let mut dot = String::from("digraph hasse {\n  rankdir = BT;\n");
        for label in &self.labels {
            dot.push_str(&format!("  \"{label}\";\n"));
        }
        for (lo, hi) in self.hasse_edges() {
            dot.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                self.labels[lo], self.labels[hi]
            ));
        }
        dot.push_str("}\n");
        dot
    }

    pub fn to_dump(&self) -> PosetDump {
        PosetDump {
            labels: self.labels.clone(),
            cover_edges: self
                .hasse_edges()
                .into_iter()
                .map(|(lo, hi)| (self.labels[lo].clone(), self.labels[hi].clone()))
                .collect(),
        }
    }
}

/// JSON dump of a poset: labels plus cover edges by label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetDump {
    pub labels: Vec<String>,
    pub cover_edges: Vec<(String, String)>,
}

impl PosetDump {
    pub fn realize(&self) -> Result<FinitePoset> {
        let index = |label: &str| {
            self.labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::InvalidPoset(format!("unknown edge label {label:?}")))
        };
        let edges = self
            .cover_edges
            .iter()
            .map(|(lo, hi)| Ok((index(lo)?, index(hi)?)))
            .collect::<Result<Vec<_>>>()?;
        FinitePoset::from_cover_edges(self.labels.clone(), &edges)
    }
}

/// An order ideal, stored as a membership bit-vector over the poset
/// elements. The derived order (lexicographic on the bit-vector) backs the
/// canonical down-set ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DownSet {
    membership: Vec<bool>,
}

impl DownSet {
    pub fn new(membership: Vec<bool>) -> DownSet {
        DownSet { membership }
    }

    pub fn empty(len: usize) -> DownSet {
        DownSet {
            membership: vec![false; len],
        }
    }

    pub fn full(len: usize) -> DownSet {
        DownSet {
            membership: vec![true; len],
        }
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> DownSet {
        let mut membership = vec![false; len];
        for &i in indices {
            membership[i] = true;
        }
        DownSet { membership }
    }

    /// Length of the membership vector, i.e. the base poset size, not the
    /// member count, which is `cardinality`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty_set(&self) -> bool {
        self.membership.iter().all(|&b| !b)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.membership[i]
    }

    pub fn cardinality(&self) -> usize {
        self.membership.iter().filter(|&&b| b).count()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.membership
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn membership(&self) -> &[bool] {
        &self.membership
    }

    pub fn is_subset_of(&self, other: &DownSet) -> bool {
        self.membership
            .iter()
            .zip(&other.membership)
            .all(|(&a, &b)| !a || b)
    }

    pub fn intersection(&self, other: &DownSet) -> DownSet {
        DownSet {
            membership: self
                .membership
                .iter()
                .zip(&other.membership)
                .map(|(&a, &b)| a && b)
                .collect(),
        }
    }

    pub fn union(&self, other: &DownSet) -> DownSet {
        DownSet {
            membership: self
                .membership
                .iter()
                .zip(&other.membership)
                .map(|(&a, &b)| a || b)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinitePoset {
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        FinitePoset::from_leq_fn(labels, |a, b| a <= b).unwrap()
    }

    fn antichain(n: usize) -> FinitePoset {
        let labels = (0..n).map(|i| format!("a{i}")).collect();
        FinitePoset::from_leq_fn(labels, |a, b| a == b).unwrap()
    }

    /// The 10-node GHZ scenario poset: masas 0..4 each covering three of
    /// the singleton nodes 4..10.
    fn ghz_poset() -> FinitePoset {
        let labels = ["V1", "V2", "V3", "V4", "x1", "x2", "x3", "y1", "y2", "y3"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let edges = [
            (4, 0),
            (5, 0),
            (6, 0), // V1 over x1 x2 x3
            (4, 1),
            (8, 1),
            (9, 1), // V2 over x1 y2 y3
            (5, 2),
            (7, 2),
            (9, 2), // V3 over x2 y1 y3
            (6, 3),
            (7, 3),
            (8, 3), // V4 over x3 y1 y2
        ];
        FinitePoset::from_cover_edges(labels, &edges).unwrap()
    }

    #[test]
    fn validation_rejects_cycles() {
        let labels = vec!["a".into(), "b".into()];
        let err = FinitePoset::from_cover_edges(labels, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidPoset(_)));
    }

    #[test]
    fn validation_rejects_duplicate_labels() {
        let labels = vec!["a".into(), "a".into()];
        assert!(FinitePoset::from_cover_edges(labels, &[]).is_err());
    }

    #[test]
    fn hasse_edges_of_chain_and_antichain() {
        assert_eq!(chain(2).hasse_edges(), vec![(0, 1)]);
        assert!(antichain(3).hasse_edges().is_empty());
        // Transitive edges are not covers.
        assert_eq!(chain(3).hasse_edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn ghz_poset_has_twelve_cover_edges() {
        assert_eq!(ghz_poset().hasse_edges().len(), 12);
    }

    #[test]
    fn ghz_poset_has_113_downsets() {
        let downsets = ghz_poset().enumerate_downsets().unwrap();
        assert_eq!(downsets.len(), 113);
        assert_eq!(downsets.len(), brute_force_downsets(&ghz_poset()).len());
    }

    #[test]
    fn post_measurement_poset_has_five_downsets() {
        // x1 below both V1 and V2.
        let labels = vec!["V1".into(), "V2".into(), "x1".into()];
        let poset = FinitePoset::from_cover_edges(labels, &[(2, 0), (2, 1)]).unwrap();
        let downsets = poset.enumerate_downsets().unwrap();
        assert_eq!(downsets.len(), 5);
        let expected = vec![
            DownSet::from_indices(3, &[]),
            DownSet::from_indices(3, &[2]),
            DownSet::from_indices(3, &[1, 2]),
            DownSet::from_indices(3, &[0, 2]),
            DownSet::from_indices(3, &[0, 1, 2]),
        ];
        assert_eq!(downsets, expected);
    }

    #[test]
    fn empty_poset_has_one_downset() {
        let poset = FinitePoset::new(vec![], vec![]).unwrap();
        assert_eq!(poset.enumerate_downsets().unwrap().len(), 1);
    }

    #[test]
    fn downset_cap() {
        let err = antichain(25).enumerate_downsets().unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
    }

    fn brute_force_downsets(poset: &FinitePoset) -> Vec<DownSet> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << poset.len()) {
            let membership: Vec<bool> = (0..poset.len()).map(|i| mask >> i & 1 == 1).collect();
            let ds = DownSet::new(membership);
            if poset.is_down_set(&ds) {
                out.push(ds);
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force_and_is_closed() {
        for poset in [chain(4), antichain(4), ghz_poset()] {
            let mut enumerated = poset.enumerate_downsets().unwrap();
            let mut brute = brute_force_downsets(&poset);
            enumerated.sort();
            brute.sort();
            assert_eq!(enumerated, brute);
            for a in &enumerated {
                assert!(poset.is_down_set(a));
                for b in &enumerated {
                    assert!(poset.is_down_set(&a.union(b)));
                    assert!(poset.is_down_set(&a.intersection(b)));
                }
            }
        }
    }

    #[test]
    fn downset_count_multiplies_over_disjoint_union() {
        // Two disjoint 2-chains: 3 * 3 ideals.
        let labels = vec!["a".into(), "b".into(), "c".into(), "d".into()];
        let poset = FinitePoset::from_cover_edges(labels, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(poset.enumerate_downsets().unwrap().len(), 9);
        assert_eq!(poset.connected_components().len(), 2);
    }

    #[test]
    fn components_and_antichains() {
        assert_eq!(ghz_poset().connected_components().len(), 1);
        assert_eq!(antichain(4).connected_components().len(), 4);
        assert!(antichain(1).is_antichain());
        assert!(!chain(2).is_antichain());
        assert!(!ghz_poset().is_antichain());
    }

    #[test]
    fn downset_order_is_cardinality_then_lex() {
        let downsets = antichain(2).enumerate_downsets().unwrap();
        assert_eq!(
            downsets,
            vec![
                DownSet::new(vec![false, false]),
                DownSet::new(vec![false, true]),
                DownSet::new(vec![true, false]),
                DownSet::new(vec![true, true]),
            ]
        );
    }

    #[test]
    fn dot_export_is_stable() {
        let dot = chain(2).to_dot();
        assert_eq!(
            dot,
            "digraph hasse {\n  rankdir = BT;\n  \"c0\";\n  \"c1\";\n  \"c0\" -> \"c1\";\n}\n"
        );
    }

    #[test]
    fn dump_round_trip() {
        let poset = ghz_poset();
        let dump = poset.to_dump();
        let back = dump.realize().unwrap();
        assert_eq!(poset, back);
    }
}
