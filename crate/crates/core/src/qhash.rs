//! Amplitude-form quantum hashing over a key set.
//!
//! A message `M < N = 2^n` is mapped to `d = |K|` amplitude pairs
//! `(cos θ_i, sin θ_i) / √d` with `θ_i = 2π k_i M / N`. The overlap of two
//! such states is `|(1/d) Σ cos(2π k_i (M1 − M2) / N)|`, and the worst case
//! over distinct messages, `δ(K)`, measures collision resistance.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const MAX_WIDTH: u32 = 30;
/// Widest message space `delta_of_keyset` sweeps by default.
pub const DEFAULT_SWEEP_CAP: u32 = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeySet {
    keys: Vec<u64>,
    n: u32,
}

impl KeySet {
    /// Distinct keys, each below `2^n`.
    pub fn new(keys: Vec<u64>, n: u32) -> Result<Self> {
        check_width(n)?;
        if keys.is_empty() {
            return Err(Error::contract("key set must be non-empty"));
        }
        let modulus = 1u64 << n;
        let mut seen = BTreeSet::new();
        for &k in &keys {
            if k >= modulus {
                return Err(Error::contract(format!("key {k} outside 0..{modulus}")));
            }
            if !seen.insert(k) {
                return Err(Error::contract(format!("duplicate key {k}")));
            }
        }
        Ok(KeySet { keys, n })
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn width(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        1 << self.n
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    fn check_message(&self, m: u64) -> Result<()> {
        if m >= self.modulus() {
            return Err(Error::contract(format!(
                "message {m} outside 0..{}",
                self.modulus()
            )));
        }
        Ok(())
    }

    /// `2π (k·x mod N) / N`, with the product reduced exactly in integers.
    fn angle<T: Real>(&self, k: u64, x: u64) -> T {
        let r = ((k as u128 * x as u128) % self.modulus() as u128) as u64;
        T::TAU() * T::from_u64(r).unwrap() / T::from_u64(self.modulus()).unwrap()
    }
}

fn check_width(n: u32) -> Result<()> {
    if !(1..=MAX_WIDTH).contains(&n) {
        return Err(Error::contract(format!(
            "message width {n} bits; expected 1..={MAX_WIDTH}"
        )));
    }
    Ok(())
}

/// Draws `d` distinct keys uniformly from `0..2^n`, in draw order.
pub fn generate_key_set(d: usize, n: u32, seed: u64) -> Result<KeySet> {
    check_width(n)?;
    if d == 0 {
        return Err(Error::contract("key set size must be at least 1"));
    }
    let modulus = 1usize << n;
    if d > modulus {
        return Err(Error::Infeasible(format!(
            "{d} distinct keys requested from a space of {modulus}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let keys = rand::seq::index::sample(&mut rng, modulus, d)
        .into_iter()
        .map(|k| k as u64)
        .collect();
    KeySet::new(keys, n)
}

/// The `d` amplitude pairs `(c_i, s_i)` of a hashed message.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumHashState<T: Real> {
    pub message: u64,
    pub pairs: Vec<(T, T)>,
}

impl<T: Real> QuantumHashState<T> {
    pub fn norm_sqr(&self) -> T {
        self.pairs
            .iter()
            .fold(T::zero(), |acc, &(c, s)| acc + c * c + s * s)
    }

    /// Real inner product; the states have real amplitudes.
    pub fn inner_product(&self, other: &Self) -> T {
        self.pairs
            .iter()
            .zip(other.pairs.iter())
            .fold(T::zero(), |acc, (&(c1, s1), &(c2, s2))| {
                acc + c1 * c2 + s1 * s2
            })
    }
}

pub fn qhash<T: Real>(message: u64, keys: &KeySet) -> Result<QuantumHashState<T>> {
    keys.check_message(message)?;
    let scale = T::one() / T::from_usize(keys.len()).unwrap().sqrt();
    let pairs = keys
        .keys
        .iter()
        .map(|&k| {
            let (s, c) = keys.angle::<T>(k, message).sin_cos();
            (c * scale, s * scale)
        })
        .collect();
    Ok(QuantumHashState { message, pairs })
}

/// Overlap as a function of the message difference `D = M1 − M2 mod N`.
fn fidelity_of_difference<T: Real>(diff: u64, keys: &KeySet) -> T {
    let sum = keys
        .keys
        .iter()
        .fold(T::zero(), |acc, &k| acc + keys.angle::<T>(k, diff).cos());
    (sum / T::from_usize(keys.len()).unwrap()).abs()
}

/// `|⟨h(M1)|h(M2)⟩|` in closed form.
pub fn fidelity<T: Real>(m1: u64, m2: u64, keys: &KeySet) -> Result<T> {
    keys.check_message(m1)?;
    keys.check_message(m2)?;
    let diff = m1.wrapping_sub(m2) & (keys.modulus() - 1);
    Ok(fidelity_of_difference(diff, keys))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResistanceReport<T: Real + Serialize> {
    pub delta: T,
    /// Smallest difference attaining `delta`.
    pub difference: u64,
    /// A maximizing message pair, `(difference, 0)`.
    pub arg_pair: (u64, u64),
    pub d: usize,
    pub n: u32,
}

/// Exact `δ(K) = max_{M1 ≠ M2} fidelity(M1, M2)` for widths up to the default cap.
pub fn delta_of_keyset<T: Real + Serialize>(keys: &KeySet) -> Result<ResistanceReport<T>> {
    delta_of_keyset_capped(keys, DEFAULT_SWEEP_CAP)
}

/// Sweeps the `N − 1` nonzero differences; fidelity depends on the pair only
/// through `M1 − M2 mod N`, so this equals the maximum over all pairs.
pub fn delta_of_keyset_capped<T: Real + Serialize>(
    keys: &KeySet,
    cap: u32,
) -> Result<ResistanceReport<T>> {
    if keys.width() > cap {
        return Err(Error::Capacity {
            what: "delta sweep width",
            requested: keys.width() as usize,
            cap: cap as usize,
        });
    }
    let mut best = (T::neg_infinity(), 0u64);
    for diff in 1..keys.modulus() {
        let f = fidelity_of_difference::<T>(diff, keys);
        if f > best.0 {
            best = (f, diff);
        }
    }
    Ok(ResistanceReport {
        delta: best.0,
        difference: best.1,
        arg_pair: (best.1, 0),
        d: keys.len(),
        n: keys.width(),
    })
}
