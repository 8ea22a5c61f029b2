//! Computational-basis fast path.
//!
//! X and CNOT map basis states to basis states, so a circuit built from them
//! can be tracked as one classical bit per qubit. This scales to thousands of
//! qubits, the same regime a stabilizer simulator covers for this gate set.

use rand::Rng;

use super::{BitString, Circuit, Gate, NoiseModel};

/// Packed classical register, qubit `q` at bit `q % 64` of word `q / 64`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BasisRegister {
    words: Vec<u64>,
    n: usize,
}

impl BasisRegister {
    pub(crate) fn zeros(n: usize) -> Self {
        BasisRegister {
            words: vec![0; n.div_ceil(64)],
            n,
        }
    }

    #[inline(always)]
    pub(crate) fn get(&self, q: usize) -> bool {
        (self.words[q >> 6] >> (q & 63)) & 1 == 1
    }

    #[inline(always)]
    pub(crate) fn flip(&mut self, q: usize) {
        self.words[q >> 6] ^= 1 << (q & 63);
    }

    #[inline(always)]
    pub(crate) fn apply(&mut self, gate: &Gate) {
        match *gate {
            Gate::X { target } => self.flip(target),
            Gate::Cnot { control, target } => {
                if self.get(control) {
                    self.flip(target)
                }
            }
        }
    }

    /// Flips every qubit whose bit is set in the basis index `index`.
    pub(crate) fn xor_index(&mut self, index: usize) {
        let mut rest = index;
        while rest != 0 {
            let q = rest.trailing_zeros() as usize;
            self.flip(q);
            rest &= rest - 1;
        }
    }

    pub(crate) fn to_bitstring(&self) -> BitString {
        BitString::from_bits((0..self.n).rev().map(|q| self.get(q)).collect())
    }

    /// Measured qubits, highest first.
    pub(crate) fn measure(&self, circuit: &Circuit) -> BitString {
        let measured: Vec<usize> = circuit.measured_qubits().collect();
        BitString::from_bits(measured.iter().rev().map(|&q| self.get(q)).collect())
    }
}

pub(crate) fn evolve(circuit: &Circuit) -> BasisRegister {
    let mut reg = BasisRegister::zeros(circuit.num_qubits());
    for g in circuit.gates() {
        reg.apply(g);
    }
    reg
}

/// One noisy trajectory: after each CNOT, control and target each flip
/// independently with the model's probability.
pub(crate) fn evolve_noisy<R: Rng>(
    circuit: &Circuit,
    noise: &NoiseModel,
    rng: &mut R,
) -> BasisRegister {
    let p = noise.cnot_flip_prob();
    let mut reg = BasisRegister::zeros(circuit.num_qubits());
    for g in circuit.gates() {
        reg.apply(g);
        if let Gate::Cnot { control, target } = *g {
            if rng.gen::<f64>() < p {
                reg.flip(control);
            }
            if rng.gen::<f64>() < p {
                reg.flip(target);
            }
        }
    }
    reg
}

/// Bit-flip error frame of one noisy shot. X/CNOT gates conjugate X errors to
/// X errors, so the noisy final state is the noiseless one with this frame of
/// flips applied. Draws the same two numbers per CNOT as [`evolve_noisy`].
pub(crate) fn error_frame<R: Rng>(
    circuit: &Circuit,
    noise: &NoiseModel,
    rng: &mut R,
) -> BasisRegister {
    let p = noise.cnot_flip_prob();
    let mut frame = BasisRegister::zeros(circuit.num_qubits());
    for g in circuit.gates() {
        if let Gate::Cnot { control, target } = *g {
            frame.apply(g);
            if rng.gen::<f64>() < p {
                frame.flip(control);
            }
            if rng.gen::<f64>() < p {
                frame.flip(target);
            }
        }
    }
    frame
}

/// Measured value of a noiseless circuit of at most 64 qubits, packed with the
/// lowest measured qubit in bit 0.
pub(crate) fn measured_u64(circuit: &Circuit) -> u64 {
    debug_assert!(circuit.num_qubits() <= 64);
    let mut reg = 0u64;
    for g in circuit.gates() {
        match *g {
            Gate::X { target } => reg ^= 1 << target,
            Gate::Cnot { control, target } => reg ^= ((reg >> control) & 1) << target,
        }
    }
    let k = circuit.num_measured();
    if k == 0 {
        return 0;
    }
    if circuit.measured_contiguous_from_zero() {
        return if k == 64 { reg } else { reg & ((1u64 << k) - 1) };
    }
    circuit
        .measured_qubits()
        .enumerate()
        .fold(0u64, |acc, (i, q)| acc | (((reg >> q) & 1) << i))
}

/// Final basis state of a noiseless X/CNOT circuit, qubit `n-1` leftmost.
pub fn simulate_basis(circuit: &Circuit) -> BitString {
    evolve(circuit).to_bitstring()
}
