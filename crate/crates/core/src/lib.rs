//! SHA-256 whose XOR core runs as simulated CNOT circuits.
//!
//! * [`sha256`]: bit-exact FIPS 180-4 hashing, generic over the XOR provider.
//! * [`qsim`]: X/CNOT circuit simulation (state vector and basis tracking),
//!   shot sampling and a bit-flip noise model.
//! * [`hybrid`]: the hash chain with windowed XORs delegated to classical,
//!   ideal or noisy quantum backends, plus a toy proof-of-work search.
//! * [`qhash`]: amplitude-form quantum hashing and collision-resistance sweeps.
//! * [`annealer`]: XOR as a QUBO, exact enumeration and simulated annealing.
//! * [`energy`]: tagged mining-energy comparison.
//! * [`cli`]: the command-line front end.
//!
//! Numeric modules are generic over [`scalar::Real`] (`f32`/`f64`) or, for
//! energy figures, [`scalar::Quantity`] (which adds exact rationals). The
//! aliases below pin the common instantiations.

pub mod annealer;
pub mod cli;
pub mod energy;
mod error;
pub mod hybrid;
pub mod qhash;
pub mod qsim;
pub mod scalar;
pub mod sha256;

pub use error::{Error, Result};
pub use hybrid::{hybrid_sha256, pow_search, quantum_xor, BackendKind, XorBackend, XorTrace};
pub use qsim::{BitString, Circuit, NoiseModel, ShotHistogram};
pub use sha256::{sha256, Digest, HashState};

pub type StateVector64 = qsim::StateVector<f64>;
pub type StateVector32 = qsim::StateVector<f32>;

pub type QuantumHashState64 = qhash::QuantumHashState<f64>;
pub type QuantumHashState32 = qhash::QuantumHashState<f32>;
pub type ResistanceReport64 = qhash::ResistanceReport<f64>;

pub type Qubo64 = annealer::Qubo<f64>;
pub type Qubo32 = annealer::Qubo<f32>;

pub type EnergyProfile64 = energy::EnergyProfile<f64>;
/// Energy profile with exact rational arithmetic.
pub type ExactEnergyProfile = energy::EnergyProfile<num_rational::Rational64>;
