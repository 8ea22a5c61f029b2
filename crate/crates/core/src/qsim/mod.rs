//! Gate-level simulation of X/CNOT circuits with terminal measurement.
//!
//! Outcome strings put the highest measured qubit on the left; the basis
//! index of a state is the binary value of its string under that ordering.

mod basis;
mod bits;
mod circuit;
mod dense;
mod histogram;
mod noise;
pub mod text;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use basis::simulate_basis;
pub(crate) use basis::measured_u64;
pub use bits::BitString;
pub use circuit::{Circuit, Gate};
pub use dense::{simulate_dense, simulate_dense_capped, StateVector, DEFAULT_DENSE_CAP};
pub use histogram::ShotHistogram;
pub use noise::NoiseModel;

/// Which simulation path executes a circuit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Basis tracking; every circuit in the X/CNOT gate set qualifies.
    #[default]
    Auto,
    Basis,
    /// Full state vector, limited by the dense cap.
    Dense,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Simulator {
    pub method: Method,
    pub dense_cap: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Simulator {
            method: Method::Auto,
            dense_cap: DEFAULT_DENSE_CAP,
        }
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derives an independent stream seed from a parent seed and an index.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix64(mix64(seed) ^ index.wrapping_mul(0xd6e8feb86659fd93))
}

fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, shot))
}

impl Simulator {
    /// Executes `circuit` for `shots` repetitions. Each shot draws from its own
    /// stream derived from `(seed, shot index)`, so results do not depend on
    /// how shots are scheduled.
    pub fn run(
        &self,
        circuit: &Circuit,
        shots: u64,
        noise: Option<&NoiseModel>,
        seed: u64,
    ) -> Result<ShotHistogram> {
        if shots == 0 {
            return Err(Error::contract("shots must be at least 1"));
        }
        if circuit.num_measured() == 0 {
            return Err(Error::contract("circuit measures no qubits"));
        }
        let noise = noise.filter(|n| !n.is_noiseless());
        match self.method {
            Method::Auto | Method::Basis => Ok(run_basis(circuit, shots, noise, seed)),
            Method::Dense => run_dense(circuit, shots, noise, seed, self.dense_cap),
        }
    }
}

/// [`Simulator::run`] with the default configuration.
pub fn run(
    circuit: &Circuit,
    shots: u64,
    noise: Option<&NoiseModel>,
    seed: u64,
) -> Result<ShotHistogram> {
    Simulator::default().run(circuit, shots, noise, seed)
}

fn run_basis(
    circuit: &Circuit,
    shots: u64,
    noise: Option<&NoiseModel>,
    seed: u64,
) -> ShotHistogram {
    let mut hist = ShotHistogram::new(circuit.num_measured());
    match noise {
        None => {
            let outcome = basis::evolve(circuit).measure(circuit);
            hist.record_n(outcome, shots).expect("width matches");
        }
        Some(model) => {
            for shot in 0..shots {
                let mut rng = shot_rng(seed, shot);
                let reg = basis::evolve_noisy(circuit, model, &mut rng);
                hist.record(reg.measure(circuit)).expect("width matches");
            }
        }
    }
    hist
}

/// Marginal distribution of the measured qubits, outcomes ascending.
fn measured_distribution(circuit: &Circuit, state: &StateVector<f64>) -> Vec<(BitString, f64)> {
    let n = circuit.num_qubits();
    let mut dist: std::collections::BTreeMap<BitString, f64> = Default::default();
    for (i, a) in state.amplitudes().iter().enumerate() {
        let p = a.norm_sqr();
        if p > 0.0 {
            let full = BitString::from_bits((0..n).rev().map(|q| (i >> q) & 1 == 1).collect());
            *dist.entry(circuit.project(&full)).or_insert(0.0) += p;
        }
    }
    dist.into_iter().collect()
}

fn sample<K: Clone, R: Rng>(dist: &[(K, f64)], rng: &mut R) -> K {
    let total: f64 = dist.iter().map(|(_, p)| p).sum();
    let mut u = rng.gen::<f64>() * total;
    for (k, p) in dist {
        if u < *p {
            return k.clone();
        }
        u -= p;
    }
    dist.last().expect("non-empty distribution").0.clone()
}

fn run_dense(
    circuit: &Circuit,
    shots: u64,
    noise: Option<&NoiseModel>,
    seed: u64,
    cap: usize,
) -> Result<ShotHistogram> {
    let mut hist = ShotHistogram::new(circuit.num_measured());
    match noise {
        None => {
            let state = simulate_dense_capped::<f64>(circuit, cap)?;
            let dist = measured_distribution(circuit, &state);
            for shot in 0..shots {
                let mut rng = shot_rng(seed, shot);
                hist.record(sample(&dist, &mut rng))?;
            }
        }
        Some(model) => {
            let state = simulate_dense_capped::<f64>(circuit, cap)?;
            let support: Vec<(usize, f64)> = state
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(i, a)| (i, a.norm_sqr()))
                .filter(|&(_, p)| p > 0.0)
                .collect();
            for shot in 0..shots {
                let mut rng = shot_rng(seed, shot);
                let mut reg = basis::error_frame(circuit, model, &mut rng);
                reg.xor_index(sample(&support, &mut rng));
                hist.record(reg.measure(circuit))?;
            }
        }
    }
    Ok(hist)
}
