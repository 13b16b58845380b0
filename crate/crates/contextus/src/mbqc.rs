//! Measurement-based computation with mod-2 side processing: simulation,
//! function tables, linearity tests, and the step-by-step trace of how the
//! scenario's non-Booleanness is consumed by measurements.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::contexts::{build_context_poset, filter_strings, ContextPoset, ObservableString};
use crate::error::{Error, Result};
use crate::heyting::DownSetAlgebra;
use crate::pauli::{Pauli, PauliOperator, Sign};
use crate::presheaf::is_state_dependent_contextual;
use crate::quantum::{StateDescriptor, StateVector};

/// Output table of a computation: input bits ↦ output bit. Total when it
/// has an entry for every input in Z₂^m.
pub type FunctionTable = BTreeMap<Vec<u8>, u8>;

/// A temporally flat, deterministic mod-2 measurement-based computation:
/// a resource state, a pair of candidate local observables per qubit, and
/// a GF(2) matrix mapping input bits to measurement settings.
#[derive(Debug, Clone)]
pub struct MbqcSpec {
    resource: StateVector,
    obs: Vec<(PauliOperator, PauliOperator)>,
    // q_map[k][j]: setting bit k picks up input bit j.
    q_map: Vec<Vec<u8>>,
    input_bits: usize,
}

impl MbqcSpec {
    pub fn new(
        resource: StateVector,
        obs: Vec<(PauliOperator, PauliOperator)>,
        q_map: Vec<Vec<u8>>,
        input_bits: usize,
    ) -> Result<MbqcSpec> {
        let n = resource.qubits();
        if obs.len() != n {
            return Err(Error::Parse(format!(
                "{} observable pairs for {n} qubits",
                obs.len()
            )));
        }
        for (k, (o0, o1)) in obs.iter().enumerate() {
            for o in [o0, o1] {
                if o.qubits() != n {
                    return Err(Error::DimensionMismatch {
                        left: o.qubits(),
                        right: n,
                    });
                }
                if !o.is_hermitian() {
                    return Err(Error::NonHermitian { op: o.to_string() });
                }
                if o.support() != vec![k] {
                    return Err(Error::Parse(format!(
                        "observable {o} must act on qubit {k} only"
                    )));
                }
            }
            if o0.letters() == o1.letters() {
                return Err(Error::Parse(format!(
                    "the two observables of qubit {k} must differ"
                )));
            }
        }
        if q_map.len() != n {
            return Err(Error::Parse(format!(
                "setting map has {} rows for {n} qubits",
                q_map.len()
            )));
        }
        for row in &q_map {
            if row.len() != input_bits {
                return Err(Error::Parse(format!(
                    "setting map row has {} columns for {input_bits} input bits",
                    row.len()
                )));
            }
            if row.iter().any(|&b| b > 1) {
                return Err(Error::Parse("setting map entries must be bits".into()));
            }
        }
        Ok(MbqcSpec {
            resource,
            obs,
            q_map,
            input_bits,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.resource.qubits()
    }

    pub fn input_bits(&self) -> usize {
        self.input_bits
    }

    pub fn resource(&self) -> &StateVector {
        &self.resource
    }

    pub fn observable(&self, qubit: usize, setting: u8) -> &PauliOperator {
        if setting == 0 {
            &self.obs[qubit].0
        } else {
            &self.obs[qubit].1
        }
    }

    /// The measurement settings q = Q·i over GF(2).
    pub fn settings_for(&self, input: &[u8]) -> Result<Vec<u8>> {
        if input.len() != self.input_bits || input.iter().any(|&b| b > 1) {
            return Err(Error::Parse(format!(
                "input must be {} bits",
                self.input_bits
            )));
        }
        Ok(self
            .q_map
            .iter()
            .map(|row| {
                row.iter()
                    .zip(input)
                    .map(|(&q, &i)| q & i)
                    .fold(0, |a, b| a ^ b)
            })
            .collect())
    }

    /// The observable string selected by the settings q.
    pub fn string_for_settings(&self, settings: &[u8]) -> Result<ObservableString> {
        let letters = settings
            .iter()
            .enumerate()
            .map(|(k, &q)| {
                let op = self.observable(k, q);
                op.letter(k)
            })
            .collect();
        ObservableString::new(letters)
    }

    fn all_inputs(&self) -> Vec<Vec<u8>> {
        (0..1usize << self.input_bits)
            .map(|mask| {
                (0..self.input_bits)
                    .map(|j| ((mask >> (self.input_bits - 1 - j)) & 1) as u8)
                    .collect()
            })
            .collect()
    }

    /// All 2^n observable strings over the per-qubit observable pairs,
    /// keyed by their setting vector.
    pub fn all_setting_strings(&self) -> Result<Vec<(Vec<u8>, ObservableString)>> {
        let n = self.qubit_count();
        (0..1usize << n)
            .map(|mask| {
                let settings: Vec<u8> = (0..n).map(|k| ((mask >> (n - 1 - k)) & 1) as u8).collect();
                let string = self.string_for_settings(&settings)?;
                Ok((settings, string))
            })
            .collect()
    }

    /// The deterministic output table o(i): the eigenvalue sign of the
    /// selected string's product, as a bit. Errors when some input's
    /// product does not have the resource as an eigenvector.
    pub fn function_table(&self) -> Result<FunctionTable> {
        let mut table = BTreeMap::new();
        for input in self.all_inputs() {
            let settings = self.settings_for(&input)?;
            if self.qubit_count() == 0 {
                table.insert(input, 0);
                continue;
            }
            let string = self.string_for_settings(&settings)?;
            let sign = self
                .resource
                .eigensign(&string.full_product())?
                .ok_or_else(|| Error::NonDeterministic {
                    input: bits_text(&input),
                })?;
            table.insert(input, sign.bit());
        }
        Ok(table)
    }

    /// Samples the computation once: measures each qubit's selected
    /// observable in turn with Born-rule outcomes, and returns the mod-2
    /// sum together with the individual outcome signs.
    pub fn run_sampled(&self, input: &[u8], seed: u64) -> Result<(u8, Vec<Sign>)> {
        let settings = self.settings_for(input)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state = self.resource.clone();
        let mut outcomes = Vec::with_capacity(self.qubit_count());
        let mut sum = 0u8;
        for (k, &q) in settings.iter().enumerate() {
            let op = self.observable(k, q).clone();
            let p_plus = match state.measure_update(&op, Sign::Plus) {
                Ok((_, p)) => p,
                Err(Error::ImpossibleOutcome { .. }) => 0.0,
                Err(e) => return Err(e),
            };
            let outcome = if rng.random::<f64>() < p_plus {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let (next, _) = state.measure_update(&op, outcome)?;
            state = next;
            sum ^= outcome.bit();
            outcomes.push(outcome);
        }
        Ok((sum, outcomes))
    }

    /// Service view of the full scenario: retained strings and their
    /// context poset.
    pub fn scenario(&self) -> Result<(BTreeMap<ObservableString, Sign>, ContextPoset)> {
        let strings: Vec<ObservableString> = self
            .all_setting_strings()?
            .into_iter()
            .map(|(_, s)| s)
            .collect();
        let retained = filter_strings(&strings, &self.resource)?;
        let cp = build_context_poset(&retained)?;
        Ok((retained, cp))
    }

    /// Both sides of the non-linearity ⇒ contextuality implication for
    /// this computation.
    pub fn contextuality_link(&self) -> Result<ContextualityLink> {
        let table = self.function_table()?;
        let linear = is_linear(&table, self.input_bits)?;
        let (retained, cp) = self.scenario()?;
        let contextual = is_state_dependent_contextual(&self.resource, &cp)?;
        Ok(ContextualityLink {
            table,
            linear,
            retained,
            context_poset: cp,
            state_dependent_contextual: contextual,
        })
    }

    /// Runs a measurement plan and records the scenario after every step:
    /// post-state, re-filtered strings, rebuilt poset, down-set count,
    /// non-Booleanness, contextuality and the residual function table.
    pub fn consumption_trace(&self, plan: &[PlanStep], seed: u64) -> Result<TraceReport> {
        // Determinism gate; also the step-0 residual table.
        let full_table = self.function_table()?;
        let all_strings = self.all_setting_strings()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        let mut state = self.resource.clone();
        let mut fixed_settings: BTreeMap<usize, u8> = BTreeMap::new();
        let mut steps = Vec::with_capacity(plan.len() + 1);
        steps.push(self.trace_step(None, &state, &fixed_settings, &all_strings, &full_table)?);

        for step in plan {
            if step.qubit >= self.qubit_count() {
                return Err(Error::Plan(format!(
                    "qubit {} out of range",
                    step.qubit + 1
                )));
            }
            if step.setting > 1 {
                return Err(Error::Plan("setting must be 0 or 1".into()));
            }
            if fixed_settings.contains_key(&step.qubit) {
                return Err(Error::Plan(format!(
                    "qubit {} measured twice",
                    step.qubit + 1
                )));
            }
            let op = self.observable(step.qubit, step.setting).clone();
            let outcome = match step.outcome {
                OutcomeChoice::Forced(sign) => sign,
                OutcomeChoice::Sampled => {
                    let p_plus = match state.measure_update(&op, Sign::Plus) {
                        Ok((_, p)) => p,
                        Err(Error::ImpossibleOutcome { .. }) => 0.0,
                        Err(e) => return Err(e),
                    };
                    if rng.random::<f64>() < p_plus {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                }
            };
            let (next, _) = state.measure_update(&op, outcome)?;
            state = next;
            fixed_settings.insert(step.qubit, step.setting);
            steps.push(self.trace_step(
                Some((op, outcome)),
                &state,
                &fixed_settings,
                &all_strings,
                &full_table,
            )?);
        }
        Ok(TraceReport { steps })
    }

    fn trace_step(
        &self,
        measured: Option<(PauliOperator, Sign)>,
        state: &StateVector,
        fixed_settings: &BTreeMap<usize, u8>,
        all_strings: &[(Vec<u8>, ObservableString)],
        full_table: &FunctionTable,
    ) -> Result<TraceStep> {
        // Strings must agree with every already-measured observable and
        // still have the current state as an eigenvector.
        let candidates: Vec<ObservableString> = all_strings
            .iter()
            .filter(|(settings, _)| fixed_settings.iter().all(|(&k, &q)| settings[k] == q))
            .map(|(_, s)| s.clone())
            .collect();
        let retained = filter_strings(&candidates, state)?;
        let context_poset = build_context_poset(&retained)?;
        let algebra = DownSetAlgebra::new(context_poset.poset().clone())?;
        let contextual = is_state_dependent_contextual(state, &context_poset)?;

        // Inputs whose settings agree with every fixed setting; outputs
        // recomputed against the current state.
        let mut residual_table = FunctionTable::new();
        for input in full_table.keys() {
            let settings = self.settings_for(input)?;
            if !fixed_settings.iter().all(|(&k, &q)| settings[k] == q) {
                continue;
            }
            let string = self.string_for_settings(&settings)?;
            if let Some(sign) = state.eigensign(&string.full_product())? {
                residual_table.insert(input.clone(), sign.bit());
            }
        }

        Ok(TraceStep {
            measured,
            state: state.clone(),
            retained,
            downset_count: algebra.size() as u64,
            non_booleanness: algebra.non_booleanness(),
            state_dependent_contextual: contextual,
            residual_table,
            fixed_settings: fixed_settings.clone(),
            context_poset,
        })
    }
}

/// True iff the total table is affine over GF(2):
/// f(i ⊕ j) = f(i) ⊕ f(j) ⊕ f(0) for all i, j.
pub fn is_linear(table: &FunctionTable, input_bits: usize) -> Result<bool> {
    let expected = 1usize << input_bits;
    if table.len() != expected || table.keys().any(|k| k.len() != input_bits) {
        return Err(Error::PartialTable {
            expected,
            got: table.len(),
        });
    }
    let zero = vec![0u8; input_bits];
    let f0 = table[&zero];
    for (i, &fi) in table {
        for (j, &fj) in table {
            let xor: Vec<u8> = i.iter().zip(j).map(|(&a, &b)| a ^ b).collect();
            if table[&xor] != fi ^ fj ^ f0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Table, linearity verdict, retained strings and contextuality verdict
/// for one computation.
#[derive(Debug, Clone)]
pub struct ContextualityLink {
    pub table: FunctionTable,
    pub linear: bool,
    pub retained: BTreeMap<ObservableString, Sign>,
    pub context_poset: ContextPoset,
    pub state_dependent_contextual: bool,
}

/// One step of a measurement plan.
#[derive(Debug, Clone)]
pub struct PlanStep {
    /// 0-based qubit index.
    pub qubit: usize,
    /// Which of the qubit's two observables is measured.
    pub setting: u8,
    pub outcome: OutcomeChoice,
}

#[derive(Debug, Clone, Copy)]
pub enum OutcomeChoice {
    Forced(Sign),
    Sampled,
}

/// The scenario after a measurement (or before any, for the first entry).
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub measured: Option<(PauliOperator, Sign)>,
    pub state: StateVector,
    pub retained: BTreeMap<ObservableString, Sign>,
    pub downset_count: u64,
    pub non_booleanness: Ratio<u64>,
    pub state_dependent_contextual: bool,
    pub residual_table: FunctionTable,
    pub fixed_settings: BTreeMap<usize, u8>,
    pub context_poset: ContextPoset,
}

#[derive(Debug, Clone)]
pub struct TraceReport {
    pub steps: Vec<TraceStep>,
}

impl TraceReport {
    pub fn q_sequence(&self) -> Vec<Ratio<u64>> {
        self.steps.iter().map(|s| s.non_booleanness).collect()
    }
}

/// Renders a bit vector as a compact string, e.g. `[0, 1]` ↦ `"01"`.
pub fn bits_text(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

/// Parses a compact bit string, e.g. `"01"` ↦ `[0, 1]`.
pub fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("invalid bit {c:?}"))),
        })
        .collect()
}

/// JSON form of a computation spec.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MbqcSpecJson {
    pub n: usize,
    pub m: usize,
    pub state: StateDescriptor,
    /// Per-qubit letter pair, e.g. `[["X","Y"], ["X","Y"], ["X","Y"]]`.
    pub obs: Vec<(String, String)>,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<u8>>,
}

impl MbqcSpecJson {
    pub fn realize(&self) -> Result<MbqcSpec> {
        let state = self.state.realize()?;
        if state.qubits() != self.n {
            return Err(Error::Parse(format!(
                "state has {} qubits, spec says {}",
                state.qubits(),
                self.n
            )));
        }
        let parse_letter = |text: &str| -> Result<Pauli> {
            let mut chars = text.chars();
            let letter = chars
                .next()
                .and_then(Pauli::from_symbol)
                .filter(|&p| p != Pauli::I);
            match (letter, chars.next()) {
                (Some(p), None) => Ok(p),
                _ => Err(Error::Parse(format!("invalid local observable {text:?}"))),
            }
        };
        let obs = self
            .obs
            .iter()
            .enumerate()
            .map(|(k, (a, b))| {
                Ok((
                    PauliOperator::single(self.n, k, parse_letter(a)?)?,
                    PauliOperator::single(self.n, k, parse_letter(b)?)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        MbqcSpec::new(state, obs, self.q.clone(), self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario;

    fn ab_spec() -> MbqcSpec {
        scenario::ghz_or_spec().unwrap()
    }

    fn table_of(pairs: &[(&str, u8)]) -> FunctionTable {
        pairs
            .iter()
            .map(|(k, v)| (parse_bits(k).unwrap(), *v))
            .collect()
    }

    #[test]
    fn anders_browne_computes_or() {
        let table = ab_spec().function_table().unwrap();
        assert_eq!(
            table,
            table_of(&[("00", 0), ("01", 1), ("10", 1), ("11", 1)])
        );
    }

    #[test]
    fn input_00_sums_the_x_outcomes_to_zero() {
        let spec = ab_spec();
        let settings = spec.settings_for(&[0, 0]).unwrap();
        assert_eq!(settings, vec![0, 0, 0]);
        let string = spec.string_for_settings(&settings).unwrap();
        assert_eq!(string.to_string(), "XXX");
        assert_eq!(spec.function_table().unwrap()[&vec![0, 0]], 0);
    }

    #[test]
    fn non_eigenstate_setting_is_a_determinism_error() {
        let plus = StateVector::new(
            1,
            vec![
                num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ],
        )
        .unwrap();
        let spec = MbqcSpec::new(
            plus,
            vec![("+ X".parse().unwrap(), "+ Z".parse().unwrap())],
            vec![vec![1]],
            1,
        )
        .unwrap();
        let err = spec.function_table().unwrap_err();
        assert_eq!(err, Error::NonDeterministic { input: "1".into() });
    }

    #[test]
    fn sampling_agrees_with_the_table() {
        let spec = ab_spec();
        let table = spec.function_table().unwrap();
        for input in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            for seed in 0..20 {
                let (bit, outcomes) = spec.run_sampled(&input, seed).unwrap();
                assert_eq!(bit, table[&input.to_vec()], "input {input:?} seed {seed}");
                assert_eq!(outcomes.len(), 3);
            }
        }
    }

    #[test]
    fn sampled_outcomes_vary_across_seeds() {
        let spec = ab_spec();
        let distinct: std::collections::BTreeSet<Vec<Sign>> = (0..100)
            .map(|seed| spec.run_sampled(&[0, 0], seed).unwrap().1)
            .collect();
        assert!(distinct.len() > 1);
    }

    #[test]
    fn zero_qubit_spec_outputs_zero() {
        let scalar = StateVector::new(0, vec![num_complex::Complex64::new(1.0, 0.0)]).unwrap();
        let spec = MbqcSpec::new(scalar, vec![], vec![], 1).unwrap();
        let table = spec.function_table().unwrap();
        assert_eq!(table, table_of(&[("0", 0), ("1", 0)]));
        assert_eq!(spec.run_sampled(&[1], 7).unwrap(), (0, vec![]));
    }

    #[test]
    fn linearity_verdicts() {
        let or = table_of(&[("00", 0), ("01", 1), ("10", 1), ("11", 1)]);
        assert!(!is_linear(&or, 2).unwrap());
        let xor = table_of(&[("00", 0), ("01", 1), ("10", 1), ("11", 0)]);
        assert!(is_linear(&xor, 2).unwrap());
        let const_one = table_of(&[("00", 1), ("01", 1), ("10", 1), ("11", 1)]);
        assert!(is_linear(&const_one, 2).unwrap());
        let partial = table_of(&[("00", 0), ("01", 1)]);
        assert!(matches!(
            is_linear(&partial, 2).unwrap_err(),
            Error::PartialTable {
                expected: 4,
                got: 2
            }
        ));
    }

    #[test]
    fn anders_browne_link() {
        let link = ab_spec().contextuality_link().unwrap();
        assert!(!link.linear);
        assert!(link.state_dependent_contextual);
        assert_eq!(link.retained.len(), 4);
        assert_eq!(link.context_poset.len(), 10);
    }

    #[test]
    fn bell_parity_link_is_linear_and_non_contextual() {
        let link = scenario::bell_parity_spec()
            .unwrap()
            .contextuality_link()
            .unwrap();
        assert!(link.linear);
        assert!(!link.state_dependent_contextual);
        assert_eq!(link.retained.len(), 2);
        assert_eq!(link.context_poset.len(), 2);
    }

    #[test]
    fn consumption_trace_of_the_or_gate() {
        let spec = ab_spec();
        let plan = [
            PlanStep {
                qubit: 0,
                setting: 0,
                outcome: OutcomeChoice::Forced(Sign::Plus),
            },
            PlanStep {
                qubit: 1,
                setting: 0,
                outcome: OutcomeChoice::Forced(Sign::Plus),
            },
        ];
        let report = spec.consumption_trace(&plan, 0).unwrap();
        assert_eq!(report.steps.len(), 3);
        let q: Vec<String> = report.q_sequence().iter().map(|r| r.to_string()).collect();
        assert_eq!(q, vec!["111/113", "3/5", "0"]);
        let sizes: Vec<usize> = report.steps.iter().map(|s| s.context_poset.len()).collect();
        assert_eq!(sizes, vec![10, 3, 1]);
        let retained: Vec<usize> = report.steps.iter().map(|s| s.retained.len()).collect();
        assert_eq!(retained, vec![4, 2, 1]);
        // q strictly decreases along the program.
        assert!(report.steps[0].non_booleanness > report.steps[1].non_booleanness);
        assert!(report.steps[1].non_booleanness > report.steps[2].non_booleanness);
        // Contextuality is spent after the first measurement.
        assert!(report.steps[0].state_dependent_contextual);
        assert!(!report.steps[1].state_dependent_contextual);
        assert!(!report.steps[2].state_dependent_contextual);
    }

    #[test]
    fn single_step_residual_table() {
        let spec = ab_spec();
        let plan = [PlanStep {
            qubit: 0,
            setting: 0,
            outcome: OutcomeChoice::Forced(Sign::Plus),
        }];
        let report = spec.consumption_trace(&plan, 0).unwrap();
        let step = &report.steps[1];
        assert_eq!(step.residual_table, table_of(&[("00", 0), ("01", 1)]));
        assert_eq!(step.fixed_settings, [(0usize, 0u8)].into_iter().collect());
    }

    #[test]
    fn empty_plan_reproduces_the_standalone_scenario() {
        let spec = ab_spec();
        let report = spec.consumption_trace(&[], 0).unwrap();
        assert_eq!(report.steps.len(), 1);
        let step = &report.steps[0];
        assert_eq!(step.downset_count, 113);
        assert_eq!(step.residual_table, spec.function_table().unwrap());
        let (retained, cp) = spec.scenario().unwrap();
        assert_eq!(step.retained, retained);
        assert_eq!(step.context_poset.poset(), cp.poset());
        assert_eq!(step.non_booleanness, Ratio::new(111, 113));
    }

    #[test]
    fn plan_errors() {
        let spec = ab_spec();
        let double = [
            PlanStep {
                qubit: 0,
                setting: 0,
                outcome: OutcomeChoice::Forced(Sign::Plus),
            },
            PlanStep {
                qubit: 0,
                setting: 1,
                outcome: OutcomeChoice::Forced(Sign::Plus),
            },
        ];
        assert!(matches!(
            spec.consumption_trace(&double, 0).unwrap_err(),
            Error::Plan(_)
        ));
        let out_of_range = [PlanStep {
            qubit: 5,
            setting: 0,
            outcome: OutcomeChoice::Forced(Sign::Plus),
        }];
        assert!(matches!(
            spec.consumption_trace(&out_of_range, 0).unwrap_err(),
            Error::Plan(_)
        ));
    }

    #[test]
    fn q_is_non_increasing_over_arbitrary_or_gate_plans() {
        let spec = ab_spec();
        for settings_mask in 0u8..8 {
            for seed in 0..3 {
                let plan: Vec<PlanStep> = (0..3)
                    .map(|k| PlanStep {
                        qubit: k,
                        setting: settings_mask >> k & 1,
                        outcome: OutcomeChoice::Sampled,
                    })
                    .collect();
                let report = spec.consumption_trace(&plan, seed).unwrap();
                let q = report.q_sequence();
                for window in q.windows(2) {
                    assert!(
                        window[0] >= window[1],
                        "settings {settings_mask:03b} seed {seed}: {q:?}"
                    );
                }
                assert_eq!(*q.last().unwrap(), Ratio::from_integer(0));
            }
        }
    }

    #[test]
    fn sampled_trace_is_reproducible() {
        let spec = ab_spec();
        let plan = [
            PlanStep {
                qubit: 0,
                setting: 0,
                outcome: OutcomeChoice::Sampled,
            },
            PlanStep {
                qubit: 1,
                setting: 0,
                outcome: OutcomeChoice::Sampled,
            },
        ];
        let a = spec.consumption_trace(&plan, 42).unwrap();
        let b = spec.consumption_trace(&plan, 42).unwrap();
        let outcome = |r: &TraceReport| -> Vec<Sign> {
            r.steps
                .iter()
                .filter_map(|s| s.measured.as_ref().map(|(_, sign)| *sign))
                .collect()
        };
        assert_eq!(outcome(&a), outcome(&b));
        assert_eq!(a.q_sequence(), b.q_sequence());
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"{
            "n": 3, "m": 2,
            "state": {"type": "ghz", "n": 3},
            "obs": [["X","Y"],["X","Y"],["X","Y"]],
            "Q": [[1,0],[0,1],[1,1]]
        }"#;
        let parsed: MbqcSpecJson = serde_json::from_str(json).unwrap();
        let spec = parsed.realize().unwrap();
        assert_eq!(
            spec.function_table().unwrap(),
            ab_spec().function_table().unwrap()
        );
    }
}
