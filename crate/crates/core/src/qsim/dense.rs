//! Full state-vector simulation.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{Circuit, Gate};

/// Largest register the dense path accepts unless configured otherwise.
pub const DEFAULT_DENSE_CAP: usize = 24;

/// The 2^n complex amplitudes of an n-qubit register. Index `i` holds the
/// coefficient of basis state |i⟩, where bit `q` of `i` is qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    num_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// |0…0⟩ on `num_qubits` qubits.
    pub fn zero_state(num_qubits: usize) -> Self {
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); 1 << num_qubits];
        amplitudes[0] = Complex::new(T::one(), T::zero());
        StateVector {
            num_qubits,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn probability(&self, index: usize) -> T {
        self.amplitudes[index].norm_sqr()
    }

    /// The basis index carrying all the weight, if the state is a basis state.
    pub fn as_basis_state(&self) -> Option<usize> {
        let tol = T::grouping_tolerance();
        let mut found = None;
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p > tol {
                if found.is_some() || (p - T::one()).abs() > tol {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn apply(&mut self, gate: &Gate) {
        match *gate {
            Gate::X { target } => {
                let t = 1usize << target;
                for i in 0..self.amplitudes.len() {
                    if i & t == 0 {
                        self.amplitudes.swap(i, i | t);
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let c = 1usize << control;
                let t = 1usize << target;
                for i in 0..self.amplitudes.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amplitudes.swap(i, i | t);
                    }
                }
            }
        }
    }
}

/// Evolves |0…0⟩ through every gate of `circuit`.
pub fn simulate_dense<T: Real>(circuit: &Circuit) -> Result<StateVector<T>> {
    simulate_dense_capped(circuit, DEFAULT_DENSE_CAP)
}

pub fn simulate_dense_capped<T: Real>(circuit: &Circuit, cap: usize) -> Result<StateVector<T>> {
    let n = circuit.num_qubits();
    if n > cap {
        return Err(Error::Capacity {
            what: "dense simulation width",
            requested: n,
            cap,
        });
    }
    let mut state = StateVector::zero_state(n);
    for g in circuit.gates() {
        state.apply(g);
    }
    Ok(state)
}
