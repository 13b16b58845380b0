//! Dense state vectors for desk-scale qubit counts.
//!
//! Basis convention: amplitude index bit k is qubit k's σ_z eigenbit with
//! qubit 0 (the first tensor factor) most significant, so for n = 3 the
//! index 0b011 addresses |011⟩.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::max_qubits;
use crate::pauli::{PauliOperator, Sign};

const NORM_TOL: f64 = 1e-12;
const EIGEN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// A normalized state from explicit amplitudes (length 2^n, unit norm
    /// within 1e-12).
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<StateVector> {
        let max = max_qubits();
        if n > max {
            return Err(Error::Capacity {
                what: "state vector",
                n,
                max,
            });
        }
        if amps.len() != 1 << n {
            return Err(Error::Parse(format!(
                "expected {} amplitudes for {n} qubits, got {}",
                1usize << n,
                amps.len()
            )));
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq.sqrt() - 1.0).abs() > NORM_TOL {
            return Err(Error::Parse(format!(
                "state is not normalized: |ψ| = {}",
                norm_sq.sqrt()
            )));
        }
        Ok(StateVector { n, amps })
    }

    /// The n-qubit GHZ state (|0…0⟩ + |1…1⟩)/√2; |+⟩ for n = 1.
    pub fn ghz(n: usize) -> Result<StateVector> {
        let max = max_qubits();
        if n > max {
            return Err(Error::Capacity {
                what: "state vector",
                n,
                max,
            });
        }
        if n == 0 {
            return Err(Error::EmptyInput { what: "ghz qubits" });
        }
        let dim = 1usize << n;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[0] = w;
        amps[dim - 1] = w;
        Ok(StateVector { n, amps })
    }

    /// The computational basis state |index⟩.
    pub fn basis(n: usize, index: usize) -> Result<StateVector> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector::new(n, amps)
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    fn check_op(&self, a: &PauliOperator) -> Result<()> {
        if a.qubits() != self.n {
            return Err(Error::DimensionMismatch {
                left: a.qubits(),
                right: self.n,
            });
        }
        if !a.is_hermitian() {
            return Err(Error::NonHermitian { op: a.to_string() });
        }
        Ok(())
    }

    /// Applies a Pauli word (including its phase) to the state.
    pub fn apply(&self, a: &PauliOperator) -> Result<StateVector> {
        if a.qubits() != self.n {
            return Err(Error::DimensionMismatch {
                left: a.qubits(),
                right: self.n,
            });
        }
        let phase = crate::pauli::phase_factor(a.phase_exponent());
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (col, &amp) in self.amps.iter().enumerate() {
            let (row, factor) = a.column_action(col);
            out[row] += phase * factor * amp;
        }
        Ok(StateVector {
            n: self.n,
            amps: out,
        })
    }

    /// Euclidean distance to another state vector.
    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// The eigenvalue sign when the state is a ±1 eigenvector of the
    /// observable `a` (within 1e-9), `None` otherwise.
    pub fn eigensign(&self, a: &PauliOperator) -> Result<Option<Sign>> {
        self.check_op(a)?;
        let image = self.apply(a)?;
        let mut dist_plus = 0.0;
        let mut dist_minus = 0.0;
        for (im, orig) in image.amps.iter().zip(&self.amps) {
            dist_plus += (im - orig).norm_sqr();
            dist_minus += (im + orig).norm_sqr();
        }
        if dist_plus.sqrt() < EIGEN_TOL {
            Ok(Some(Sign::Plus))
        } else if dist_minus.sqrt() < EIGEN_TOL {
            Ok(Some(Sign::Minus))
        } else {
            Ok(None)
        }
    }

    /// Born weight ⟨ψ|Π|ψ⟩ of the joint eigenspace selected by the signs,
    /// with Π = ∏_k (1 + s_k a_k)/2.
    pub fn joint_weight(&self, generators: &[PauliOperator], signs: &[Sign]) -> Result<f64> {
        if generators.len() != signs.len() {
            return Err(Error::Parse(format!(
                "got {} generators but {} signs",
                generators.len(),
                signs.len()
            )));
        }
        for a in generators {
            self.check_op(a)?;
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
        let mut projected = self.clone();
        for (a, &s) in generators.iter().zip(signs) {
            projected = projected.half_project(a, s)?;
        }
        Ok(projected.amps.iter().map(|a| a.norm_sqr()).sum())
    }

    /// (1 + s·a)/2 applied to the state, unnormalized.
    fn half_project(&self, a: &PauliOperator, s: Sign) -> Result<StateVector> {
        let image = self.apply(a)?;
        let half = 0.5 * s.value();
        let amps = self
            .amps
            .iter()
            .zip(&image.amps)
            .map(|(orig, im)| 0.5 * orig + half * im)
            .collect();
        Ok(StateVector { n: self.n, amps })
    }

    /// Projective measurement update: the normalized post-measurement state
    /// for the given outcome, plus its Born probability.
    pub fn measure_update(&self, a: &PauliOperator, outcome: Sign) -> Result<(StateVector, f64)> {
        self.check_op(a)?;
        let projected = self.half_project(a, outcome)?;
        let p: f64 = projected.amps.iter().map(|a| a.norm_sqr()).sum();
        if p <= NORM_TOL {
            return Err(Error::ImpossibleOutcome {
                op: a.to_string(),
                outcome: outcome.to_string(),
            });
        }
        let scale = 1.0 / p.sqrt();
        let amps = projected.amps.iter().map(|a| a * scale).collect();
        Ok((StateVector { n: self.n, amps }, p))
    }
}

/// JSON-facing state descriptor.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum StateDescriptor {
    Ghz {
        n: usize,
    },
    Amplitudes {
        n: usize,
        re: Vec<f64>,
        im: Vec<f64>,
    },
    Stabilizer {
        generators: Vec<String>,
    },
}

impl StateDescriptor {
    /// Builds the described dense state.
    pub fn realize(&self) -> Result<StateVector> {
        match self {
            StateDescriptor::Ghz { n } => StateVector::ghz(*n),
            StateDescriptor::Amplitudes { n, re, im } => {
                if re.len() != im.len() {
                    return Err(Error::Parse(format!(
                        "re has {} entries but im has {}",
                        re.len(),
                        im.len()
                    )));
                }
                let amps = re
                    .iter()
                    .zip(im)
                    .map(|(&r, &i)| Complex64::new(r, i))
                    .collect();
                StateVector::new(*n, amps)
            }
            StateDescriptor::Stabilizer { generators } => {
                let ops = generators
                    .iter()
                    .map(|g| g.parse::<PauliOperator>())
                    .collect::<Result<Vec<_>>>()?;
                stabilizer_state(&ops)
            }
        }
    }

    /// Amplitude dump of a concrete state.
    pub fn from_state(state: &StateVector) -> StateDescriptor {
        StateDescriptor::Amplitudes {
            n: state.qubits(),
            re: state.amplitudes().iter().map(|a| a.re).collect(),
            im: state.amplitudes().iter().map(|a| a.im).collect(),
        }
    }
}

/// Expands signed stabilizer generators to a dense vector by projector
/// products: the first computational basis state with non-vanishing joint
/// projection is projected and normalized.
pub fn stabilizer_state(generators: &[PauliOperator]) -> Result<StateVector> {
    let n = match generators.first() {
        Some(g) => g.qubits(),
        None => {
            return Err(Error::EmptyInput {
                what: "stabilizer generators",
            })
        }
    };
    let signs: Vec<Sign> = generators
        .iter()
        .map(|g| g.sign().ok_or(Error::NonHermitian { op: g.to_string() }))
        .collect::<Result<_>>()?;
    let unsigned: Vec<PauliOperator> = generators.iter().map(|g| g.unsigned()).collect();
    for index in 0..1usize << n {
        let seed = StateVector::basis(n, index)?;
        let mut projected = seed;
        for (g, &s) in unsigned.iter().zip(&signs) {
            projected = projected.half_project(g, s)?;
        }
        let p: f64 = projected.amps.iter().map(|a| a.norm_sqr()).sum();
        if p > EIGEN_TOL {
            let scale = 1.0 / p.sqrt();
            let amps = projected.amps.iter().map(|a| a * scale).collect();
            return Ok(StateVector { n, amps });
        }
    }
    Err(Error::Parse(
        "stabilizer generators have no common +1 eigenspace".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn ghz_amplitudes() {
        let ghz = StateVector::ghz(3).unwrap();
        let w = std::f64::consts::FRAC_1_SQRT_2;
        assert!((ghz.amplitudes()[0].re - w).abs() < 1e-15);
        assert!((ghz.amplitudes()[7].re - w).abs() < 1e-15);
        for k in 1..7 {
            assert_eq!(ghz.amplitudes()[k], Complex64::new(0.0, 0.0));
        }
        assert_eq!(StateVector::ghz(1).unwrap().amplitudes().len(), 2);
        assert_eq!(StateVector::ghz(2).unwrap().amplitudes().len(), 4);
    }

    #[test]
    fn capacity_cap_is_enforced() {
        assert!(matches!(
            StateVector::ghz(13).unwrap_err(),
            Error::Capacity { .. }
        ));
    }

    #[test]
    fn eigensigns_of_ghz() {
        let ghz = StateVector::ghz(3).unwrap();
        assert_eq!(ghz.eigensign(&op("+ XXX")).unwrap(), Some(Sign::Plus));
        assert_eq!(ghz.eigensign(&op("+ XYY")).unwrap(), Some(Sign::Minus));
        assert_eq!(ghz.eigensign(&op("+ XXY")).unwrap(), None);
    }

    #[test]
    fn eigensign_rejects_non_hermitian() {
        let ghz = StateVector::ghz(3).unwrap();
        assert!(matches!(
            ghz.eigensign(&op("+i XXX")).unwrap_err(),
            Error::NonHermitian { .. }
        ));
    }

    #[test]
    fn joint_weights_on_ghz() {
        let ghz = StateVector::ghz(3).unwrap();
        let gens = [op("+ XII"), op("+ IXI"), op("+ IIX")];
        use Sign::*;
        let w = ghz.joint_weight(&gens, &[Plus, Plus, Plus]).unwrap();
        assert!((w - 0.25).abs() < 1e-12);
        let w = ghz.joint_weight(&gens, &[Plus, Plus, Minus]).unwrap();
        assert!(w.abs() < 1e-12);
        assert!((ghz.joint_weight(&[], &[]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn joint_weight_rejects_noncommuting() {
        let ghz = StateVector::ghz(3).unwrap();
        let gens = [op("+ XII"), op("+ YII")];
        assert!(matches!(
            ghz.joint_weight(&gens, &[Sign::Plus, Sign::Plus])
                .unwrap_err(),
            Error::NonCommuting { .. }
        ));
    }

    #[test]
    fn measure_update_chain_reaches_plus_plus_plus() {
        let ghz = StateVector::ghz(3).unwrap();
        let (after_x1, p1) = ghz.measure_update(&op("+ XII"), Sign::Plus).unwrap();
        assert!((p1 - 0.5).abs() < 1e-12);
        // |+⟩ ⊗ (|00⟩ + |11⟩)/√2
        let half = Complex64::new(0.5, 0.0);
        let expected = StateVector::new(
            3,
            vec![
                half,
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                half,
                half,
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                half,
            ],
        )
        .unwrap();
        assert!(after_x1.distance(&expected) < 1e-9);

        let (after_x2, p2) = after_x1.measure_update(&op("+ IXI"), Sign::Plus).unwrap();
        assert!((p2 - 0.5).abs() < 1e-12);
        let eighth = Complex64::new(1.0 / 8f64.sqrt(), 0.0);
        let plus3 = StateVector::new(3, vec![eighth; 8]).unwrap();
        assert!(after_x2.distance(&plus3) < 1e-9);
    }

    #[test]
    fn measuring_an_eigenstate_is_certain() {
        let plus = StateVector::new(
            1,
            vec![
                Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ],
        )
        .unwrap();
        let (post, p) = plus.measure_update(&op("+ X"), Sign::Plus).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!(post.distance(&plus) < 1e-12);
        assert!(matches!(
            plus.measure_update(&op("+ X"), Sign::Minus).unwrap_err(),
            Error::ImpossibleOutcome { .. }
        ));
    }

    #[test]
    fn outcome_probabilities_sum_to_one() {
        let ghz = StateVector::ghz(3).unwrap();
        for text in ["+ XII", "+ ZII", "+ XYZ"] {
            let a = op(text);
            let p_plus = ghz
                .measure_update(&a, Sign::Plus)
                .map(|(_, p)| p)
                .unwrap_or(0.0);
            let p_minus = ghz
                .measure_update(&a, Sign::Minus)
                .map(|(_, p)| p)
                .unwrap_or(0.0);
            assert!((p_plus + p_minus - 1.0).abs() < 1e-9, "observable {text}");
        }
    }

    #[test]
    fn stabilizer_expansion_matches_ghz() {
        let desc = StateDescriptor::Stabilizer {
            generators: vec!["+ XXX".into(), "+ ZZI".into(), "+ IZZ".into()],
        };
        let state = desc.realize().unwrap();
        let ghz = StateVector::ghz(3).unwrap();
        assert!(state.distance(&ghz) < 1e-9);
    }

    #[test]
    fn descriptor_round_trip() {
        let ghz = StateVector::ghz(2).unwrap();
        let desc = StateDescriptor::from_state(&ghz);
        let back = desc.realize().unwrap();
        assert!(back.distance(&ghz) < 1e-12);
        let json = serde_json::to_string(&StateDescriptor::Ghz { n: 3 }).unwrap();
        assert_eq!(json, r#"{"type":"ghz","n":3}"#);
    }
}
