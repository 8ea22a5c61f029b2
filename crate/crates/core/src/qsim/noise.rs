use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Independent bit-flip (Pauli-X) errors on both qubits a CNOT touches,
/// applied right after the gate, each with probability `cnot_flip_prob`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    cnot_flip_prob: f64,
}

impl NoiseModel {
    pub fn new(cnot_flip_prob: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&cnot_flip_prob) {
            return Err(Error::contract(format!(
                "flip probability {cnot_flip_prob} outside [0, 1]"
            )));
        }
        Ok(NoiseModel { cnot_flip_prob })
    }

    pub fn cnot_flip_prob(&self) -> f64 {
        self.cnot_flip_prob
    }

    pub fn is_noiseless(&self) -> bool {
        self.cnot_flip_prob == 0.0
    }
}
