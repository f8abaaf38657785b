//! State vector and gate kernels.
//!
//! Basis index bit `q` is qubit `q` (qubit 0 least significant). Every
//! built-in unitary is a permutation of basis states except the Hadamard,
//! so most kernels are (controlled) swaps.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::rng::SimRng;
use super::SimError;
use crate::elab::UnitaryKind;

/// Branch probabilities below this are treated as numeric corruption.
pub const NORM_UNDERFLOW: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` over `n` qubits.
    pub fn new(n: usize, limit: usize) -> Result<Self, SimError> {
        if n > limit {
            return Err(SimError::QubitLimitExceeded { n, limit });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, SimError> {
        if !amps.len().is_power_of_two() {
            return Err(SimError::BadLength(amps.len()));
        }
        Ok(StateVector {
            n: amps.len().trailing_zeros() as usize,
            amps,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubits(&self, qubits: &[usize]) -> Result<(), SimError> {
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.n {
                return Err(SimError::IndexOutOfRange { qubit: q, n: self.n });
            }
            if qubits[..i].contains(&q) {
                return Err(SimError::DuplicateQubit(q));
            }
        }
        Ok(())
    }

    /// Applies a built-in unitary. Operands follow the gate's port order:
    /// controls first, then the target(s).
    pub fn apply_unitary(&mut self, kind: UnitaryKind, qubits: &[usize]) -> Result<(), SimError> {
        if qubits.len() != kind.arity() {
            return Err(SimError::Arity {
                kind,
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        self.check_qubits(qubits)?;
        match kind {
            UnitaryKind::Not => self.controlled_flip(0, qubits[0]),
            UnitaryKind::Hadamard => self.hadamard(qubits[0]),
            UnitaryKind::Cnot => self.controlled_flip(1 << qubits[0], qubits[1]),
            UnitaryKind::Toffoli => self.controlled_flip((1 << qubits[0]) | (1 << qubits[1]), qubits[2]),
            UnitaryKind::Fredkin => self.controlled_swap(1 << qubits[0], qubits[1], qubits[2]),
        }
        Ok(())
    }

    fn controlled_flip(&mut self, controls: usize, target: usize) {
        let t = 1usize << target;
        for k in 0..self.amps.len() {
            if k & t == 0 && k & controls == controls {
                self.amps.swap(k, k | t);
            }
        }
    }

    fn controlled_swap(&mut self, controls: usize, a: usize, b: usize) {
        let (a, b) = (1usize << a, 1usize << b);
        for k in 0..self.amps.len() {
            if k & controls == controls && k & a != 0 && k & b == 0 {
                self.amps.swap(k, k ^ a ^ b);
            }
        }
    }

    fn hadamard(&mut self, target: usize) {
        let t = 1usize << target;
        for k in 0..self.amps.len() {
            if k & t == 0 {
                let (x, y) = (self.amps[k], self.amps[k | t]);
                self.amps[k] = (x + y) * FRAC_1_SQRT_2;
                self.amps[k | t] = (x - y) * FRAC_1_SQRT_2;
            }
        }
    }

    /// Probability of reading 1 on `qubit`.
    pub fn probability_one(&self, qubit: usize) -> Result<f64, SimError> {
        self.check_qubits(&[qubit])?;
        let bit = 1usize << qubit;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(k, _)| k & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Projective measurement in the computational basis. Consumes exactly
    /// one draw from `rng`.
    pub fn measure_qubit(&mut self, qubit: usize, rng: &mut SimRng) -> Result<u8, SimError> {
        let p1 = self.probability_one(qubit)?;
        let u = rng.next_f64();
        let outcome = u8::from(u < p1);
        let bit = 1usize << qubit;
        let keep = |k: usize| (k & bit != 0) == (outcome == 1);
        let p: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(k, _)| keep(*k))
            .map(|(_, a)| a.norm_sqr())
            .sum();
        if p < NORM_UNDERFLOW {
            return Err(SimError::NormUnderflow { qubit, probability: p });
        }
        let scale = 1.0 / p.sqrt();
        for (k, a) in self.amps.iter_mut().enumerate() {
            if keep(k) {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok(outcome)
    }

    /// Measures, then flips if the outcome differs from `value`. Returns the
    /// measured bit.
    pub fn prepare_qubit(&mut self, qubit: usize, value: u8, rng: &mut SimRng) -> Result<u8, SimError> {
        let seen = self.measure_qubit(qubit, rng)?;
        if seen != value {
            self.controlled_flip(0, qubit);
        }
        Ok(seen)
    }

    /// `(magnitude, phase)` per basis state. Phases lie in `(-π, π]`; a zero
    /// amplitude has phase 0.
    pub fn snapshot(&self) -> Vec<(f64, f64)> {
        self.amps
            .iter()
            .map(|a| {
                if a.re == 0.0 && a.im == 0.0 {
                    return (0.0, 0.0);
                }
                let mut phase = a.im.atan2(a.re);
                if phase <= -PI {
                    phase = PI;
                }
                (a.norm(), phase + 0.0)
            })
            .collect()
    }
}
