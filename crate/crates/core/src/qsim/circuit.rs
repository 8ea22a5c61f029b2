use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::BitString;

/// Gates supported by the simulator: Pauli-X for data entry, CNOT for XOR.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    X { target: usize },
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn target(&self) -> usize {
        match *self {
            Gate::X { target } | Gate::Cnot { target, .. } => target,
        }
    }

    pub fn control(&self) -> Option<usize> {
        match *self {
            Gate::X { .. } => None,
            Gate::Cnot { control, .. } => Some(control),
        }
    }
}

/// An ordered gate list over `num_qubits` qubits, all starting in |0⟩,
/// followed by a terminal measurement of `measured` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    measured: BTreeSet<usize>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::contract("a circuit needs at least one qubit"));
        }
        Ok(Circuit {
            num_qubits,
            gates: Vec::new(),
            measured: BTreeSet::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Measured qubits in ascending order.
    pub fn measured_qubits(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.measured.iter().copied()
    }

    /// True when the measured set is exactly `0..num_measured()`.
    pub(crate) fn measured_contiguous_from_zero(&self) -> bool {
        match (self.measured.first(), self.measured.last()) {
            (Some(&0), Some(&hi)) => hi + 1 == self.measured.len(),
            _ => false,
        }
    }

    pub fn num_measured(&self) -> usize {
        self.measured.len()
    }

    pub fn cnot_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Cnot { .. }))
            .count()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::Index {
                what: "qubits",
                index: q,
                len: self.num_qubits,
            });
        }
        Ok(())
    }

    fn check_open(&self) -> Result<()> {
        if !self.measured.is_empty() {
            return Err(Error::contract(
                "gates cannot follow measurement; measurement is terminal",
            ));
        }
        Ok(())
    }

    /// Appends a validated gate.
    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        self.check_open()?;
        match gate {
            Gate::X { target } => self.check_qubit(target)?,
            Gate::Cnot { control, target } => {
                self.check_qubit(control)?;
                self.check_qubit(target)?;
                if control == target {
                    return Err(Error::contract(format!(
                        "cnot control and target are both qubit {control}"
                    )));
                }
            }
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn x(&mut self, target: usize) -> Result<&mut Self> {
        self.push(Gate::X { target })
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.push(Gate::Cnot { control, target })
    }

    /// Loads `bits` into qubits `offset..offset + bits.len()` by placing an X
    /// gate on each qubit whose bit is 1. The rightmost bit lands on `offset`.
    pub fn encode_bits(&mut self, bits: &BitString, offset: usize) -> Result<&mut Self> {
        let end = offset.saturating_add(bits.len());
        if end > self.num_qubits {
            return Err(Error::Index {
                what: "qubits",
                index: end.saturating_sub(1),
                len: self.num_qubits,
            });
        }
        self.check_open()?;
        for i in 0..bits.len() {
            if bits.lsb(i) {
                self.gates.push(Gate::X { target: offset + i });
            }
        }
        Ok(self)
    }

    /// Marks qubits for terminal measurement. No gates may be added afterwards.
    pub fn measure(&mut self, qubits: impl IntoIterator<Item = usize>) -> Result<&mut Self> {
        let qubits: Vec<usize> = qubits.into_iter().collect();
        for &q in &qubits {
            self.check_qubit(q)?;
        }
        self.measured.extend(qubits);
        Ok(self)
    }

    pub fn measure_all(&mut self) -> Result<&mut Self> {
        self.measure(0..self.num_qubits)
    }

    /// Drops all gates, keeping width and measurement. Used to refill a
    /// circuit of fixed layout without reallocating.
    pub(crate) fn clear_gates(&mut self) {
        self.gates.clear();
    }

    /// Appends a gate the caller has already validated against this layout.
    #[inline]
    pub(crate) fn push_unchecked(&mut self, gate: Gate) {
        debug_assert!(gate.target() < self.num_qubits);
        self.gates.push(gate);
    }

    /// Picks the measured qubits out of a full-register basis string.
    pub(crate) fn project(&self, full: &BitString) -> BitString {
        let n = self.num_qubits;
        BitString::from_bits(
            self.measured
                .iter()
                .rev()
                .map(|&q| full.bits()[n - 1 - q])
                .collect(),
        )
    }
}
