//! Built-in scenarios used by the CLI and as regression fixtures.

use num_complex::Complex64;

use crate::contexts::{Context, ContextPoset};
use crate::error::{Error, Result};
use crate::mbqc::MbqcSpec;
use crate::pauli::PauliOperator;
use crate::quantum::StateVector;

pub const NAMES: [&str; 3] = ["ghz-or", "peres-mermin", "bell-parity"];

/// The OR-gate on the 3-qubit GHZ state: X or Y per qubit, settings
/// q = (i1, i2, i1 ⊕ i2).
pub fn ghz_or_spec() -> Result<MbqcSpec> {
    let obs = (0..3)
        .map(|k| {
            Ok((
                PauliOperator::single(3, k, crate::pauli::Pauli::X)?,
                PauliOperator::single(3, k, crate::pauli::Pauli::Y)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    MbqcSpec::new(
        StateVector::ghz(3)?,
        obs,
        vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        2,
    )
}

/// A parity gate on the 2-qubit Bell state: the retained strings are
/// XX (+1) and YY (−1), so the single input bit is passed through.
pub fn bell_parity_spec() -> Result<MbqcSpec> {
    let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let bell = StateVector::new(2, vec![w, zero, zero, w])?;
    let obs = (0..2)
        .map(|k| {
            Ok((
                PauliOperator::single(2, k, crate::pauli::Pauli::X)?,
                PauliOperator::single(2, k, crate::pauli::Pauli::Y)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    MbqcSpec::new(bell, obs, vec![vec![1], vec![1]], 1)
}

/// The Peres-Mermin square: six two-qubit contexts from the rows and
/// columns of the 3×3 observable grid. State-independently contextual.
pub fn peres_mermin_poset() -> Result<ContextPoset> {
    let op = |text: &str| -> Result<PauliOperator> { text.parse() };
    let masas = vec![
        Context::new("R1", &[op("+ XI")?, op("+ IX")?])?,
        Context::new("R2", &[op("+ IZ")?, op("+ ZI")?])?,
        Context::new("R3", &[op("+ XZ")?, op("+ ZX")?])?,
        Context::new("C1", &[op("+ XI")?, op("+ IZ")?])?,
        Context::new("C2", &[op("+ IX")?, op("+ ZI")?])?,
        Context::new("C3", &[op("+ XX")?, op("+ ZZ")?])?,
    ];
    ContextPoset::from_masas(masas)
}

/// Looks up a built-in MBQC spec by scenario name.
pub fn mbqc_spec_by_name(name: &str) -> Result<MbqcSpec> {
    match name {
        "ghz-or" => ghz_or_spec(),
        "bell-parity" => bell_parity_spec(),
        "peres-mermin" => Err(Error::Parse(
            "peres-mermin is a contextuality scenario, not a computation".into(),
        )),
        _ => Err(Error::Parse(format!("unknown scenario {name:?}"))),
    }
}

/// The context poset of a built-in scenario.
pub fn poset_by_name(name: &str) -> Result<ContextPoset> {
    match name {
        "peres-mermin" => peres_mermin_poset(),
        "ghz-or" | "bell-parity" => {
            let spec = mbqc_spec_by_name(name)?;
            let (_, cp) = spec.scenario()?;
            Ok(cp)
        }
        _ => Err(Error::Parse(format!("unknown scenario {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf;

    #[test]
    fn peres_mermin_square_has_fifteen_nodes() {
        let cp = peres_mermin_poset().unwrap();
        assert_eq!(cp.len(), 15);
        assert_eq!(cp.maximal_nodes().len(), 6);
        assert_eq!(cp.poset().hasse_edges().len(), 18);
    }

    #[test]
    fn peres_mermin_is_state_independently_contextual() {
        let cp = peres_mermin_poset().unwrap();
        assert!(presheaf::is_state_independent_contextual(&cp).unwrap());
    }

    #[test]
    fn scenario_names_resolve() {
        for name in NAMES {
            assert!(poset_by_name(name).is_ok(), "scenario {name}");
        }
        assert!(poset_by_name("nope").is_err());
        assert!(mbqc_spec_by_name("peres-mermin").is_err());
    }
}
