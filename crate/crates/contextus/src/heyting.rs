//! The Heyting algebra of down-sets of a finite poset, and its
//! non-Booleanness.
//!
//! Meet and join are intersection and union. The relative pseudo-complement
//! is A ⇒ B = {x : ↓x ∩ A ⊆ B}, negation is ¬A = A ⇒ ∅, and an element is
//! complemented when A ∨ ¬A is the whole poset. Non-Booleanness is the
//! exact fraction of non-complemented elements.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{DownSet, FinitePoset};

/// The full down-set lattice of a poset, materialized eagerly.
#[derive(Debug, Clone)]
pub struct DownSetAlgebra {
    poset: FinitePoset,
    carrier: Vec<DownSet>,
}

impl DownSetAlgebra {
    pub fn new(poset: FinitePoset) -> Result<DownSetAlgebra> {
        let carrier = poset.enumerate_downsets()?;
        Ok(DownSetAlgebra { poset, carrier })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn carrier(&self) -> &[DownSet] {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn bottom(&self) -> DownSet {
        DownSet::empty(self.poset.len())
    }

    pub fn top(&self) -> DownSet {
        DownSet::full(self.poset.len())
    }

    fn check(&self, a: &DownSet) -> Result<()> {
        if a.len() != self.poset.len() {
            return Err(Error::MismatchedBase {
                expected: self.poset.len(),
                got: a.len(),
            });
        }
        Ok(())
    }

    pub fn leq(&self, a: &DownSet, b: &DownSet) -> bool {
        a.is_subset_of(b)
    }

    pub fn meet(&self, a: &DownSet, b: &DownSet) -> Result<DownSet> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.intersection(b))
    }

    pub fn join(&self, a: &DownSet, b: &DownSet) -> Result<DownSet> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.union(b))
    }

    /// Relative pseudo-complement: the largest down-set C with C ∧ A ≤ B.
    pub fn implies(&self, a: &DownSet, b: &DownSet) -> Result<DownSet> {
        self.check(a)?;
        self.check(b)?;
        let membership = (0..self.poset.len())
            .map(|x| {
                (0..self.poset.len())
                    .all(|y| !self.poset.leq(y, x) || !a.contains(y) || b.contains(y))
            })
            .collect();
        Ok(DownSet::new(membership))
    }

    /// Pseudo-complement ¬A = A ⇒ ⊥, the greatest down-set disjoint from A.
    pub fn neg(&self, a: &DownSet) -> Result<DownSet> {
        self.implies(a, &self.bottom())
    }

    /// The elements with A ∨ ¬A = ⊤. These are exactly the unions of
    /// connected components of the base poset.
    pub fn complemented_elements(&self) -> Vec<DownSet> {
        let top = self.top();
        self.carrier
            .iter()
            .filter(|a| {
                let neg = self.neg(a).expect("carrier member has the right length");
                a.union(&neg) == top
            })
            .cloned()
            .collect()
    }

    /// Non-Booleanness: 1 − |complemented| / |carrier|, exact.
    pub fn non_booleanness(&self) -> Ratio<u64> {
        let total = self.carrier.len() as u64;
        let complemented = self.complemented_elements().len() as u64;
        Ratio::new(total - complemented, total)
    }

    pub fn is_boolean(&self) -> bool {
        self.non_booleanness() == Ratio::from_integer(0)
    }

    pub fn report(&self) -> AlgebraReport {
        AlgebraReport {
            downset_count: self.size() as u64,
            complemented_count: self.complemented_elements().len() as u64,
            q: self.non_booleanness().to_string(),
        }
    }

    /// Full ∧/∨/⇒ tables, available for small posets only.
    pub fn truth_tables(&self) -> Result<TruthTables> {
        if self.poset.len() > 6 {
            return Err(Error::Capacity {
                what: "truth-table dump",
                n: self.poset.len(),
                max: 6,
            });
        }
        let name = |d: &DownSet| {
            d.indices()
                .iter()
                .map(|&i| self.poset.label(i).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let k = self.carrier.len();
        let mut meet = vec![vec![0; k]; k];
        let mut join = vec![vec![0; k]; k];
        let mut implies = vec![vec![0; k]; k];
        let index_of = |d: &DownSet| self.carrier.iter().position(|c| c == d).unwrap();
        for (i, a) in self.carrier.iter().enumerate() {
            for (j, b) in self.carrier.iter().enumerate() {
                meet[i][j] = index_of(&self.meet(a, b)?);
                join[i][j] = index_of(&self.join(a, b)?);
                implies[i][j] = index_of(&self.implies(a, b)?);
            }
        }
        Ok(TruthTables {
            elements: self.carrier.iter().map(name).collect(),
            meet,
            join,
            implies,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub downset_count: u64,
    pub complemented_count: u64,
    pub q: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TruthTables {
    pub elements: Vec<String>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub implies: Vec<Vec<usize>>,
}
