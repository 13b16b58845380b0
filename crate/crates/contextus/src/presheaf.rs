//! Characters, restriction maps and the global-section search that decide
//! contextuality over a context poset.
//!
//! A character assigns a ±1 value to each generator of a context; the value
//! of any group element follows multiplicatively, with the sign of the
//! generator product tracked exactly. The full character sets form the
//! state-space presheaf; the subsets compatible with a state (positive
//! joint-eigenspace weight) form its pseudostate. A global section picks
//! one character per node consistently under restriction; contextuality is
//! the non-existence of such a section.

use std::collections::BTreeMap;

use crate::contexts::{Context, ContextPoset};
use crate::error::{Error, Result};
use crate::pauli::{PauliOperator, Sign};
use crate::quantum::StateVector;

/// Threshold for counting a joint-eigenspace weight as non-zero.
const WEIGHT_TOL: f64 = 1e-9;

/// A ±1 valuation of a context's generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Character {
    context: Context,
    signs: Vec<Sign>,
}

impl Character {
    pub fn new(context: Context, signs: Vec<Sign>) -> Result<Character> {
        if signs.len() != context.rank() {
            return Err(Error::Parse(format!(
                "context {} has {} generators but {} signs were given",
                context.label(),
                context.rank(),
                signs.len()
            )));
        }
        Ok(Character { context, signs })
    }

    /// All 2^rank characters of a context, in sign-lexicographic order with
    /// + before −.
    pub fn enumerate(context: &Context) -> Vec<Character> {
        let k = context.rank();
        (0..1usize << k)
            .map(|mask| Character {
                context: context.clone(),
                signs: (0..k)
                    .map(|j| {
                        if mask >> (k - 1 - j) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect(),
            })
            .collect()
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// The sign assigned to a single generator.
    pub fn generator_sign(&self, g: &PauliOperator) -> Option<Sign> {
        self.context
            .generators()
            .iter()
            .position(|gen| gen == g)
            .map(|j| self.signs[j])
    }

    /// The induced value on any member of the generated group: the product
    /// of the factor signs, corrected by the sign of the exact generator
    /// product.
    pub fn evaluate(&self, op: &PauliOperator) -> Result<Sign> {
        let (indices, rel) = self.context.factorize(op)?;
        let product = indices
            .iter()
            .fold(Sign::Plus, |acc, &j| acc * self.signs[j]);
        Ok(rel * product)
    }

    /// The unique character of a subcontext agreeing with this one.
    pub fn restrict(&self, sub: &Context) -> Result<Character> {
        if !sub.is_subcontext_of(&self.context) {
            return Err(Error::NotASubcontext {
                sub: sub.label().to_string(),
                sup: self.context.label().to_string(),
            });
        }
        let signs = sub
            .generators()
            .iter()
            .map(|g| self.evaluate(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Character {
            context: sub.clone(),
            signs,
        })
    }

    /// Human/JSON form: generator text ↦ sign.
    pub fn sign_map(&self) -> BTreeMap<String, String> {
        self.context
            .generators()
            .iter()
            .zip(&self.signs)
            .map(|(g, s)| {
                let word: String = g.letters().iter().map(|p| p.symbol()).collect();
                (word, s.to_string())
            })
            .collect()
    }
}

/// The characters of `context` compatible with `state`: those whose joint
/// eigenspace carries positive Born weight.
pub fn pseudostate_sections(state: &StateVector, context: &Context) -> Result<Vec<Character>> {
    let mut sections = Vec::new();
    for character in Character::enumerate(context) {
        let weight = state.joint_weight(context.generators(), character.signs())?;
        if weight > WEIGHT_TOL {
            sections.push(character);
        }
    }
    Ok(sections)
}

/// Allowed character sets per poset node: the full character sets (the
/// state-space presheaf itself).
pub fn full_local_sections(cp: &ContextPoset) -> Vec<Vec<Character>> {
    cp.contexts().iter().map(Character::enumerate).collect()
}

/// Allowed character sets per poset node under a state (the pseudostate).
pub fn pseudostate_local_sections(
    cp: &ContextPoset,
    state: &StateVector,
) -> Result<Vec<Vec<Character>>> {
    cp.contexts()
        .iter()
        .map(|c| pseudostate_sections(state, c))
        .collect()
}

/// A compatible choice of one character per poset node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalSection {
    assignment: BTreeMap<String, Character>,
}

impl GlobalSection {
    pub fn character(&self, label: &str) -> Option<&Character> {
        self.assignment.get(label)
    }

    pub fn assignment(&self) -> &BTreeMap<String, Character> {
        &self.assignment
    }

    /// JSON form: node label ↦ (generator ↦ sign).
    pub fn sign_maps(&self) -> BTreeMap<String, BTreeMap<String, String>> {
        self.assignment
            .iter()
            .map(|(label, ch)| (label.clone(), ch.sign_map()))
            .collect()
    }
}

/// Exhaustive, duplicate-free enumeration of the global sections of the
/// given local-section family, by backtracking over nodes in decreasing
/// rank with immediate downward propagation.
pub fn global_sections(cp: &ContextPoset, local: &[Vec<Character>]) -> Result<Vec<GlobalSection>> {
    if local.len() != cp.len() {
        return Err(Error::Parse(format!(
            "{} local section sets for {} poset nodes",
            local.len(),
            cp.len()
        )));
    }
    let mut order: Vec<usize> = (0..cp.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(cp.context(i).rank()), i));
    // below[v] lists the nodes strictly under v.
    let below: Vec<Vec<usize>> = (0..cp.len())
        .map(|v| (0..cp.len()).filter(|&u| cp.poset().lt(u, v)).collect())
        .collect();

    let mut assigned: Vec<Option<Character>> = vec![None; cp.len()];
    let mut sections = Vec::new();
    search(cp, local, &order, &below, 0, &mut assigned, &mut sections)?;
    Ok(sections)
}

fn search(
    cp: &ContextPoset,
    local: &[Vec<Character>],
    order: &[usize],
    below: &[Vec<usize>],
    pos: usize,
    assigned: &mut Vec<Option<Character>>,
    sections: &mut Vec<GlobalSection>,
) -> Result<()> {
    if pos == order.len() {
        let assignment = (0..cp.len())
            .map(|i| {
                (
                    cp.poset().label(i).to_string(),
                    assigned[i].clone().expect("search assigns every node"),
                )
            })
            .collect();
        sections.push(GlobalSection { assignment });
        return Ok(());
    }
    let node = order[pos];
    if assigned[node].is_some() {
        return search(cp, local, order, below, pos + 1, assigned, sections);
    }
    for candidate in &local[node] {
        let mut pinned = vec![node];
        assigned[node] = Some(candidate.clone());
        let mut consistent = true;
        for &u in &below[node] {
            let restricted = candidate.restrict(cp.context(u))?;
            match &assigned[u] {
                Some(existing) => {
                    if *existing != restricted {
                        consistent = false;
                        break;
                    }
                }
                None => {
                    if !local[u].contains(&restricted) {
                        consistent = false;
                        break;
                    }
                    assigned[u] = Some(restricted);
                    pinned.push(u);
                }
            }
        }
        if consistent {
            search(cp, local, order, below, pos + 1, assigned, sections)?;
        }
        for u in pinned {
            assigned[u] = None;
        }
    }
    Ok(())
}

/// Contextuality of a local-section family: no global section exists.
pub fn is_contextual(cp: &ContextPoset, local: &[Vec<Character>]) -> Result<bool> {
    Ok(global_sections(cp, local)?.is_empty())
}

/// State-independent check over the full character sets.
pub fn is_state_independent_contextual(cp: &ContextPoset) -> Result<bool> {
    is_contextual(cp, &full_local_sections(cp))
}

/// State-dependent check over the pseudostate of `state`.
pub fn is_state_dependent_contextual(state: &StateVector, cp: &ContextPoset) -> Result<bool> {
    let local = pseudostate_local_sections(cp, state)?;
    is_contextual(cp, &local)
}
