//! Contexts (commuting Pauli generator sets) and the context poset built
//! from observable strings and a resource state.
//!
//! A context stands for the Abelian algebra generated by its generators.
//! Membership is signed: the context contains g exactly when ±g is a
//! product of generators, so generators are canonicalized to phase +1 and
//! the sign of any group element is recovered from its factorization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator, Sign};
use crate::poset::FinitePoset;
use crate::quantum::StateVector;

/// A string of local observables, one non-identity letter per qubit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObservableString {
    letters: Vec<Pauli>,
}

impl ObservableString {
    pub fn new(letters: Vec<Pauli>) -> Result<ObservableString> {
        if letters.is_empty() {
            return Err(Error::EmptyInput {
                what: "observable string",
            });
        }
        if letters.contains(&Pauli::I) {
            return Err(Error::Parse(
                "observable strings must be non-identity on every qubit".into(),
            ));
        }
        Ok(ObservableString { letters })
    }

    pub fn qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    /// The local observable at `qubit`, embedded in the full register.
    pub fn local(&self, qubit: usize) -> PauliOperator {
        PauliOperator::single(self.letters.len(), qubit, self.letters[qubit])
            .expect("qubit index is within the string")
    }

    pub fn locals(&self) -> Vec<PauliOperator> {
        (0..self.letters.len()).map(|k| self.local(k)).collect()
    }

    /// The product O_1 ⋯ O_n of the local observables; phase +1 since the
    /// factors act on distinct qubits.
    pub fn full_product(&self) -> PauliOperator {
        PauliOperator::from_letters(self.letters.clone())
    }
}

impl fmt::Display for ObservableString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &p in &self.letters {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for ObservableString {
    type Err = Error;

    fn from_str(s: &str) -> Result<ObservableString> {
        let letters = s
            .chars()
            .map(|c| {
                Pauli::from_symbol(c).ok_or_else(|| Error::Parse(format!("invalid letter {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ObservableString::new(letters)
    }
}

/// Symplectic bit-vector of a Pauli word: bits 2k, 2k+1 are the X and Z
/// components of qubit k. Captures the word up to phase.
fn symplectic(op: &PauliOperator) -> u64 {
    let mut bits = 0u64;
    for (k, &p) in op.letters().iter().enumerate() {
        let (x, z) = match p {
            Pauli::I => (0, 0),
            Pauli::X => (1, 0),
            Pauli::Z => (0, 1),
            Pauli::Y => (1, 1),
        };
        bits |= x << (2 * k);
        bits |= z << (2 * k + 1);
    }
    bits
}

/// Row-echelon GF(2) span with combination tracking, over symplectic
/// vectors of the generators.
struct Gf2Span {
    // (echelon vector, combination mask over original generators)
    rows: Vec<(u64, u64)>,
}

impl Gf2Span {
    fn new(generators: &[PauliOperator]) -> Gf2Span {
        let mut span = Gf2Span { rows: Vec::new() };
        for (j, g) in generators.iter().enumerate() {
            span.insert(symplectic(g), 1u64 << j);
        }
        span
    }

    /// Reduces `vec` against the rows; returns the residual and the
    /// combination used.
    fn reduce(&self, mut vec: u64, mut combo: u64) -> (u64, u64) {
        for &(row, row_combo) in &self.rows {
            let pivot = 1u64 << (63 - row.leading_zeros());
            if vec & pivot != 0 {
                vec ^= row;
                combo ^= row_combo;
            }
        }
        (vec, combo)
    }

    /// Inserts a vector; returns false when it was already in the span.
    fn insert(&mut self, vec: u64, combo: u64) -> bool {
        let (residual, combo) = self.reduce(vec, combo);
        if residual == 0 {
            return false;
        }
        self.rows.push((residual, combo));
        self.rows.sort_by_key(|&(row, _)| std::cmp::Reverse(row));
        true
    }

    /// The generator subset whose product has the letters of `vec`, if
    /// `vec` is in the span.
    fn solve(&self, vec: u64) -> Option<u64> {
        let (residual, combo) = self.reduce(vec, 0);
        (residual == 0).then_some(combo)
    }
}

/// A commuting, independent set of Hermitian Pauli words, standing for the
/// Abelian algebra it generates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Context {
    label: String,
    generators: Vec<PauliOperator>,
}

impl Context {
    /// Canonicalizes the given generators: validates Hermiticity and
    /// pairwise commutation, drops signs, reduces to an independent set and
    /// sorts.
    pub fn new(label: impl Into<String>, generators: &[PauliOperator]) -> Result<Context> {
        let label = label.into();
        let n = match generators.first() {
            Some(g) => g.qubits(),
            None => {
                return Err(Error::EmptyInput {
                    what: "context generators",
                })
            }
        };
        for g in generators {
            if g.qubits() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: g.qubits(),
                });
            }
            if !g.is_hermitian() {
                return Err(Error::NonHermitian { op: g.to_string() });
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !a.commutes(b)? {
                    return Err(Error::NonCommuting {
                        a: a.to_string(),
                        b: b.to_string(),
                    });
                }
            }
        }
        let mut reduced: Vec<PauliOperator> = Vec::new();
        let mut span = Gf2Span { rows: Vec::new() };
        for g in generators {
            let unsigned = g.unsigned();
            if unsigned.is_identity_word() {
                continue;
            }
            if span.insert(symplectic(&unsigned), 0) {
                reduced.push(unsigned);
            }
        }
        if reduced.is_empty() {
            return Err(Error::InvalidContext(
                "generators span only the identity".into(),
            ));
        }
        reduced.sort();
        Ok(Context {
            label,
            generators: reduced,
        })
    }

    /// As `new`, with the label derived from the sorted generator text.
    pub fn with_derived_label(generators: &[PauliOperator]) -> Result<Context> {
        let mut context = Context::new(String::new(), generators)?;
        context.label = derived_label(&context.generators);
        Ok(context)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Number of independent generators.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn qubits(&self) -> usize {
        self.generators[0].qubits()
    }

    /// Signed membership: ±op is a product of generators.
    pub fn contains(&self, op: &PauliOperator) -> bool {
        op.qubits() == self.qubits()
            && op.is_hermitian()
            && Gf2Span::new(&self.generators)
                .solve(symplectic(op))
                .is_some()
    }

    /// Writes `op` as a product of generators: returns the generator
    /// indices and the sign `rel` with ∏ generators[indices] = rel · op.
    pub fn factorize(&self, op: &PauliOperator) -> Result<(Vec<usize>, Sign)> {
        if op.qubits() != self.qubits() {
            return Err(Error::DimensionMismatch {
                left: op.qubits(),
                right: self.qubits(),
            });
        }
        let op_sign = op
            .sign()
            .ok_or(Error::NonHermitian { op: op.to_string() })?;
        let combo = Gf2Span::new(&self.generators)
            .solve(symplectic(op))
            .ok_or_else(|| Error::NotAMember {
                op: op.to_string(),
                context: self.label.clone(),
            })?;
        let indices: Vec<usize> = (0..self.generators.len())
            .filter(|&j| combo >> j & 1 == 1)
            .collect();
        let mut product = PauliOperator::identity(self.qubits());
        for &j in &indices {
            product = product.multiply(&self.generators[j])?;
        }
        let product_sign = product
            .sign()
            .expect("products of commuting Hermitian words are Hermitian");
        Ok((indices, product_sign * op_sign))
    }

    /// All 2^rank letter-words of the generated group (identity included),
    /// with the sign carried by the exact generator product.
    pub fn group_elements(&self) -> Vec<PauliOperator> {
        let k = self.generators.len();
        let mut elements = Vec::with_capacity(1 << k);
        for combo in 0..1u64 << k {
            let mut product = PauliOperator::identity(self.qubits());
            for (j, g) in self.generators.iter().enumerate() {
                if combo >> j & 1 == 1 {
                    product = product.multiply(g).expect("equal qubit counts");
                }
            }
            elements.push(product);
        }
        elements
    }

    /// True iff every generator of `self` lies in the group generated by
    /// `other`'s generators (up to sign).
    pub fn is_subcontext_of(&self, other: &Context) -> bool {
        if self.qubits() != other.qubits() {
            return false;
        }
        let span = Gf2Span::new(&other.generators);
        self.generators
            .iter()
            .all(|g| span.solve(symplectic(g)).is_some())
    }

    pub fn same_group(&self, other: &Context) -> bool {
        self.is_subcontext_of(other) && other.is_subcontext_of(self)
    }

    /// Intersection of the generated groups, as a context with a derived
    /// label; `None` when only the identity is shared.
    pub fn intersect(&self, other: &Context) -> Result<Option<Context>> {
        if self.qubits() != other.qubits() {
            return Err(Error::DimensionMismatch {
                left: self.qubits(),
                right: other.qubits(),
            });
        }
        let other_words: BTreeSet<Vec<Pauli>> = other
            .group_elements()
            .into_iter()
            .map(|g| g.letters().to_vec())
            .collect();
        let mut shared: Vec<PauliOperator> = self
            .group_elements()
            .into_iter()
            .filter(|g| !g.is_identity_word() && other_words.contains(g.letters()))
            .map(|g| g.unsigned())
            .collect();
        shared.sort();
        if shared.is_empty() {
            return Ok(None);
        }
        Ok(Some(Context::with_derived_label(&shared)?))
    }
}

/// Label text for an intersection node: generator words joined by `&`,
/// e.g. `"XII"` or `"XX&ZZ"`.
fn derived_label(generators: &[PauliOperator]) -> String {
    generators
        .iter()
        .map(|g| {
            let word: String = g.letters().iter().map(|p| p.symbol()).collect();
            match g.sign() {
                Some(Sign::Minus) => format!("-{word}"),
                _ => word,
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

/// The context poset: contexts ordered by inclusion of their generated
/// groups, with an aligned [`FinitePoset`] over the context labels.
#[derive(Debug, Clone)]
pub struct ContextPoset {
    poset: FinitePoset,
    contexts: Vec<Context>,
}

impl ContextPoset {
    /// Closes the given contexts under pairwise intersection (iterated to a
    /// fixed point) and orders the result by group inclusion. The trivial
    /// algebra is never a node. Input contexts keep their labels and come
    /// first; intersection nodes follow in label order.
    pub fn from_masas(masas: Vec<Context>) -> Result<ContextPoset> {
        if masas.is_empty() {
            return Err(Error::EmptyInput {
                what: "context poset",
            });
        }
        let n = masas[0].qubits();
        for c in &masas {
            if c.qubits() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: c.qubits(),
                });
            }
        }
        for (i, a) in masas.iter().enumerate() {
            for b in &masas[i + 1..] {
                if a.same_group(b) {
                    return Err(Error::InvalidContext(format!(
                        "contexts {:?} and {:?} generate the same algebra",
                        a.label(),
                        b.label()
                    )));
                }
            }
        }
        let mut nodes = masas;
        let top_count = nodes.len();
        loop {
            let mut added = Vec::new();
            for i in 0..nodes.len() {
                for j in i + 1..nodes.len() {
                    if let Some(meet) = nodes[i].intersect(&nodes[j])? {
                        let known = nodes
                            .iter()
                            .chain(added.iter())
                            .any(|c: &Context| c.same_group(&meet));
                        if !known {
                            added.push(meet);
                        }
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            nodes.extend(added);
        }
        let mut intersections: Vec<Context> = nodes.split_off(top_count);
        intersections.sort_by(|a, b| a.label().cmp(b.label()));
        nodes.extend(intersections);

        let labels = nodes.iter().map(|c| c.label().to_string()).collect();
        let poset = FinitePoset::from_leq_fn(labels, |a, b| nodes[a].is_subcontext_of(&nodes[b]))?;
        Ok(ContextPoset {
            poset,
            contexts: nodes,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn context(&self, index: usize) -> &Context {
        &self.contexts[index]
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn by_label(&self, label: &str) -> Option<&Context> {
        self.contexts.iter().find(|c| c.label() == label)
    }

    /// Indices of the maximal elements.
    pub fn maximal_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| !self.poset.lt(a, b)))
            .collect()
    }
}

/// Keeps exactly the strings whose full product has `state` as an
/// eigenvector, recording the eigenvalue sign.
pub fn filter_strings(
    strings: &[ObservableString],
    state: &StateVector,
) -> Result<BTreeMap<ObservableString, Sign>> {
    let mut retained = BTreeMap::new();
    for s in strings {
        if let Some(sign) = state.eigensign(&s.full_product())? {
            retained.insert(s.clone(), sign);
        }
    }
    Ok(retained)
}

/// Builds the context poset of a retained-string family: one masa per
/// string (labelled V1, V2, … in string order), closed under pairwise
/// intersection of the generated groups.
pub fn build_context_poset(retained: &BTreeMap<ObservableString, Sign>) -> Result<ContextPoset> {
    if retained.is_empty() {
        return Err(Error::EmptyInput {
            what: "retained strings",
        });
    }
    let masas = retained
        .keys()
        .enumerate()
        .map(|(i, s)| Context::new(format!("V{}", i + 1), &s.locals()))
        .collect::<Result<Vec<_>>>()?;
    ContextPoset::from_masas(masas)
}
