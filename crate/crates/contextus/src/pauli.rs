//! Exact n-qubit Pauli arithmetic with a tracked global phase.
//!
//! A [`PauliOperator`] is a word over {I, X, Y, Z} together with a phase
//! i^k, k in 0..4. Products are phase-exact, so operator identities such as
//! (X⊗X⊗X)(X⊗Y⊗Y)(Y⊗X⊗Y)(Y⊗Y⊗X) = −1 come out with the right sign.
//! Observables are the Hermitian words, i.e. those with phase ±1.

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::max_qubits;

/// A single-qubit Pauli letter. The derived order `I < X < Y < Z` is the
/// canonical letter order used everywhere sets are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// Single-letter product: returns the resulting letter and the phase
    /// exponent delta (power of i) it contributes.
    fn mul(self, other: Pauli) -> (Pauli, u8) {
        use Pauli::*;
        match (self, other) {
            (I, p) => (p, 0),
            (p, I) => (p, 0),
            (X, X) | (Y, Y) | (Z, Z) => (I, 0),
            (X, Y) => (Z, 1),
            (Y, X) => (Z, 3),
            (Y, Z) => (X, 1),
            (Z, Y) => (X, 3),
            (Z, X) => (Y, 1),
            (X, Z) => (Y, 3),
        }
    }
}

/// A ±1 sign, the Hermitian part of the phase group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// The output bit convention of the computation model: +1 ↦ 0, −1 ↦ 1.
    pub fn bit(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "+" | "+1" => Ok(Sign::Plus),
            "-" | "-1" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("invalid sign {s:?}"))),
        }
    }
}

/// An n-qubit Pauli word with tracked global phase i^k.
///
/// The derived total order (letters lexicographically, then phase exponent)
/// is the canonical order for reproducible enumeration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliOperator {
    letters: Vec<Pauli>,
    phase: u8,
}

impl PauliOperator {
    /// The identity word on `n` qubits.
    pub fn identity(n: usize) -> PauliOperator {
        PauliOperator {
            letters: vec![Pauli::I; n],
            phase: 0,
        }
    }

    /// A word from letters with phase +1.
    pub fn from_letters(letters: Vec<Pauli>) -> PauliOperator {
        PauliOperator { letters, phase: 0 }
    }

    /// The local observable acting as `p` on `qubit` (0-based) and as
    /// identity elsewhere.
    pub fn single(n: usize, qubit: usize, p: Pauli) -> Result<PauliOperator> {
        if qubit >= n {
            return Err(Error::Parse(format!(
                "qubit index {qubit} out of range for {n} qubits"
            )));
        }
        let mut letters = vec![Pauli::I; n];
        letters[qubit] = p;
        Ok(PauliOperator { letters, phase: 0 })
    }

    /// Same word with the phase multiplied by i^k.
    pub fn with_phase_exponent(mut self, k: u8) -> PauliOperator {
        self.phase = (self.phase + k) % 4;
        self
    }

    pub fn negated(self) -> PauliOperator {
        self.with_phase_exponent(2)
    }

    pub fn qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn letter(&self, qubit: usize) -> Pauli {
        self.letters[qubit]
    }

    /// Phase as an exponent of i, in 0..4.
    pub fn phase_exponent(&self) -> u8 {
        self.phase
    }

    /// The word is an observable iff its phase is ±1.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// The ±1 sign of a Hermitian word; `None` when the phase is ±i.
    pub fn sign(&self) -> Option<Sign> {
        match self.phase {
            0 => Some(Sign::Plus),
            2 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Letters-only copy with phase +1.
    pub fn unsigned(&self) -> PauliOperator {
        PauliOperator {
            letters: self.letters.clone(),
            phase: 0,
        }
    }

    pub fn is_identity_word(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    /// Indices of the non-identity letters.
    pub fn support(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .map(|(k, _)| k)
            .collect()
    }

    fn check_dims(&self, other: &PauliOperator) -> Result<()> {
        if self.qubits() != other.qubits() {
            return Err(Error::DimensionMismatch {
                left: self.qubits(),
                right: other.qubits(),
            });
        }
        Ok(())
    }

    /// Phase-exact product `self * other`.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_dims(other)?;
        let mut phase = (self.phase + other.phase) % 4;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (p, k) = a.mul(b);
                phase = (phase + k) % 4;
                p
            })
            .collect();
        Ok(PauliOperator { letters, phase })
    }

    /// True iff `self * other == other * self`; equivalently the number of
    /// positions where both letters are non-identity and different is even.
    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        self.check_dims(other)?;
        let anti = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(&a, &b)| a != Pauli::I && b != Pauli::I && a != b)
            .count();
        Ok(anti % 2 == 0)
    }

    /// Dense 2^n × 2^n matrix with the tracked phase applied. Verification
    /// oracle for small n.
    pub fn as_matrix(&self) -> Result<Array2<Complex64>> {
        let n = self.qubits();
        let max = max_qubits();
        if n > max {
            return Err(Error::Capacity {
                what: "dense matrix",
                n,
                max,
            });
        }
        let dim = 1usize << n;
        let phase = phase_factor(self.phase);
        let mut m = Array2::zeros((dim, dim));
        for col in 0..dim {
            let (row, factor) = self.column_action(col);
            m[(row, col)] = phase * factor;
        }
        Ok(m)
    }

    /// Action on a computational basis index: the word maps |col⟩ to
    /// `factor` · |row⟩ (phase not included). Qubit 0 is the most
    /// significant index bit.
    pub(crate) fn column_action(&self, col: usize) -> (usize, Complex64) {
        let n = self.qubits();
        let mut row = col;
        let mut factor = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        for (k, &p) in self.letters.iter().enumerate() {
            let bit_pos = n - 1 - k;
            let bit = (col >> bit_pos) & 1;
            match p {
                Pauli::I => {}
                Pauli::X => row ^= 1 << bit_pos,
                Pauli::Z => {
                    if bit == 1 {
                        factor = -factor;
                    }
                }
                Pauli::Y => {
                    row ^= 1 << bit_pos;
                    factor *= i;
                    if bit == 1 {
                        factor = -factor;
                    }
                }
            }
        }
        (row, factor)
    }
}

pub(crate) fn phase_factor(exponent: u8) -> Complex64 {
    match exponent % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

const PHASE_TEXT: [&str; 4] = ["+", "+i", "-", "-i"];

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", PHASE_TEXT[self.phase as usize])?;
        for &p in &self.letters {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Parses the text form `"s P1P2…Pn"`, e.g. `"+ XYY"` or `"-i ZZ"`.
    fn from_str(s: &str) -> Result<PauliOperator> {
        let (sign_text, word) = s
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("expected \"<sign> <letters>\", got {s:?}")))?;
        let phase = PHASE_TEXT
            .iter()
            .position(|&t| t == sign_text)
            .ok_or_else(|| Error::Parse(format!("invalid phase {sign_text:?}")))?
            as u8;
        let letters = word
            .trim()
            .chars()
            .map(|c| {
                Pauli::from_symbol(c).ok_or_else(|| Error::Parse(format!("invalid letter {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliOperator { letters, phase })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    /// Independent 2×2 oracle for the single-letter matrices.
    fn letter_matrix(p: Pauli) -> [[Complex64; 2]; 2] {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match p {
            Pauli::I => [[one, zero], [zero, one]],
            Pauli::X => [[zero, one], [one, zero]],
            Pauli::Y => [[zero, -i], [i, zero]],
            Pauli::Z => [[one, zero], [zero, -one]],
        }
    }

    #[test]
    fn single_qubit_product_xy() {
        let product = op("+ X").multiply(&op("+ Y")).unwrap();
        assert_eq!(product, op("+i Z"));
    }

    #[test]
    fn three_qubit_product_acquires_sign() {
        // (X⊗X⊗X)(X⊗Y⊗Y) = I⊗(iZ)⊗(iZ) = −(I⊗Z⊗Z)
        let product = op("+ XXX").multiply(&op("+ XYY")).unwrap();
        assert_eq!(product, op("- IZZ"));
    }

    #[test]
    fn mermin_fold_is_minus_identity() {
        let product = op("+ XXX")
            .multiply(&op("+ XYY"))
            .unwrap()
            .multiply(&op("+ YXY"))
            .unwrap()
            .multiply(&op("+ YYX"))
            .unwrap();
        assert_eq!(product, op("- III"));
    }

    #[test]
    fn mismatched_lengths_error() {
        let err = op("+ X").multiply(&op("+ XX")).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 1, right: 2 });
        assert!(op("+ X").commutes(&op("+ XX")).is_err());
    }

    #[test]
    fn commutation() {
        assert!(!op("+ XII").commutes(&op("+ YII")).unwrap());
        assert!(op("+ XXX").commutes(&op("+ XYY")).unwrap());
        assert!(op("+ XYZ").commutes(&PauliOperator::identity(3)).unwrap());
    }

    #[test]
    fn hermitian_sign() {
        assert_eq!(op("+ XY").sign(), Some(Sign::Plus));
        assert_eq!(op("- XY").sign(), Some(Sign::Minus));
        assert_eq!(op("+i XY").sign(), None);
        assert!(!op("+i XY").is_hermitian());
    }

    #[test]
    fn text_round_trip() {
        for text in ["+ XYY", "- IZZ", "+i Z", "-i IXYZ"] {
            assert_eq!(op(text).to_string(), text);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("XYY".parse::<PauliOperator>().is_err());
        assert!("* XYY".parse::<PauliOperator>().is_err());
        assert!("+ XQ".parse::<PauliOperator>().is_err());
    }

    #[test]
    fn identity_matrix() {
        let m = op("+ I").as_matrix().unwrap();
        assert_eq!(m[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(0, 1)], Complex64::new(0.0, 0.0));
        assert_eq!(m[(1, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(m[(1, 1)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn iz_matrix_is_diag_i_minus_i() {
        let m = op("+i Z").as_matrix().unwrap();
        assert_eq!(m[(0, 0)], Complex64::new(0.0, 1.0));
        assert_eq!(m[(1, 1)], Complex64::new(0.0, -1.0));
    }

    #[test]
    fn xy_matrix_is_kronecker_product() {
        // Direct Kronecker oracle for X⊗Y.
        let x = letter_matrix(Pauli::X);
        let y = letter_matrix(Pauli::Y);
        let m = op("+ XY").as_matrix().unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let expected = x[r / 2][c / 2] * y[r % 2][c % 2];
                assert_eq!(m[(r, c)], expected, "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn matrix_capacity_cap() {
        let big = PauliOperator::identity(15);
        assert!(matches!(
            big.as_matrix().unwrap_err(),
            Error::Capacity { .. }
        ));
    }

    #[test]
    fn canonical_order_is_letters_then_phase() {
        let mut ops = vec![op("+ XII"), op("+ IXI"), op("- IXI"), op("+ IIX")];
        ops.sort();
        assert_eq!(
            ops,
            vec![op("+ IIX"), op("+ IXI"), op("- IXI"), op("+ XII")]
        );
    }

    #[test]
    fn hermitian_commuting_product_is_hermitian() {
        let a = op("+ XX");
        let b = op("- YY");
        assert!(a.commutes(&b).unwrap());
        assert!(a.multiply(&b).unwrap().is_hermitian());
    }
}
