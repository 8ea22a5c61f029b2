//! Minimum-energy formulation of XOR as a QUBO, with an exact enumeration
//! solver and a Metropolis simulated-annealing solver.
//!
//! Energy of a binary assignment `s`:
//! `offset + Σ_i w_i s_i + Σ_{i<j} J_ij s_i s_j`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest problem `solve_exhaustive` will enumerate.
pub const EXHAUSTIVE_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct Qubo<T: Real> {
    num_vars: usize,
    weights: Vec<T>,
    couplers: BTreeMap<(usize, usize), T>,
    offset: T,
}

impl<T: Real> Qubo<T> {
    pub fn new(num_vars: usize) -> Self {
        Qubo {
            num_vars,
            weights: vec![T::zero(); num_vars],
            couplers: BTreeMap::new(),
            offset: T::zero(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn offset(&self) -> T {
        self.offset
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Couplers keyed by `(i, j)` with `i < j`.
    pub fn couplers(&self) -> &BTreeMap<(usize, usize), T> {
        &self.couplers
    }

    fn check_var(&self, i: usize) -> Result<()> {
        if i >= self.num_vars {
            return Err(Error::Index {
                what: "variables",
                index: i,
                len: self.num_vars,
            });
        }
        Ok(())
    }

    pub fn add_offset(&mut self, v: T) -> &mut Self {
        self.offset = self.offset + v;
        self
    }

    pub fn add_weight(&mut self, i: usize, w: T) -> Result<&mut Self> {
        self.check_var(i)?;
        self.weights[i] = self.weights[i] + w;
        Ok(self)
    }

    /// Adds `strength · s_i · s_j`; the pair is unordered.
    pub fn add_coupler(&mut self, i: usize, j: usize, strength: T) -> Result<&mut Self> {
        self.check_var(i)?;
        self.check_var(j)?;
        if i == j {
            return Err(Error::contract(format!("coupler on a single variable {i}")));
        }
        let key = (i.min(j), i.max(j));
        let e = self.couplers.entry(key).or_insert(T::zero());
        *e = *e + strength;
        Ok(self)
    }

    pub fn energy(&self, s: &Assignment) -> Result<T> {
        if s.len() != self.num_vars {
            return Err(Error::contract(format!(
                "assignment has {} bits, qubo has {} variables",
                s.len(),
                self.num_vars
            )));
        }
        Ok(self.energy_unchecked(s.bits()))
    }

    fn energy_unchecked(&self, bits: &[bool]) -> T {
        let mut e = self.offset;
        for (w, &b) in self.weights.iter().zip(bits) {
            if b {
                e = e + *w;
            }
        }
        for (&(i, j), &c) in &self.couplers {
            if bits[i] && bits[j] {
                e = e + c;
            }
        }
        e
    }

    /// Neighbour lists for O(degree) flip deltas.
    fn adjacency(&self) -> Vec<Vec<(usize, T)>> {
        let mut adj = vec![Vec::new(); self.num_vars];
        for (&(i, j), &c) in &self.couplers {
            adj[i].push((j, c));
            adj[j].push((i, c));
        }
        adj
    }

    /// Text form: `vars N`, `offset R`, `w I R`, `c I J R`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vars {}", self.num_vars).unwrap();
        writeln!(out, "offset {}", self.offset).unwrap();
        for (i, w) in self.weights.iter().enumerate() {
            if *w != T::zero() {
                writeln!(out, "w {i} {w}").unwrap();
            }
        }
        for (&(i, j), c) in &self.couplers {
            writeln!(out, "c {i} {j} {c}").unwrap();
        }
        out
    }

    /// Parses the text form. Repeated terms accumulate.
    pub fn parse(src: &str) -> Result<Self> {
        fn num<T: Real>(tok: Option<&str>, line: usize) -> Result<T> {
            let tok = tok.ok_or_else(|| Error::parse(line, "missing number"))?;
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid number {tok:?}")))?;
            T::from_f64(v).ok_or_else(|| Error::parse(line, format!("unrepresentable {tok:?}")))
        }
        fn idx(tok: Option<&str>, line: usize) -> Result<usize> {
            let tok = tok.ok_or_else(|| Error::parse(line, "missing index"))?;
            tok.parse()
                .map_err(|_| Error::parse(line, format!("invalid index {tok:?}")))
        }

        let mut qubo: Option<Qubo<T>> = None;
        for (n, raw) in src.lines().enumerate() {
            let line = n + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let mut toks = content.split_whitespace();
            let op = toks.next().expect("non-empty");
            if op == "vars" {
                if qubo.is_some() {
                    return Err(Error::parse(line, "duplicate vars declaration"));
                }
                qubo = Some(Qubo::new(idx(toks.next(), line)?));
            } else {
                let q = qubo
                    .as_mut()
                    .ok_or_else(|| Error::parse(line, "`vars N` must come first"))?;
                match op {
                    "offset" => {
                        q.add_offset(num(toks.next(), line)?);
                    }
                    "w" => {
                        let i = idx(toks.next(), line)?;
                        q.add_weight(i, num(toks.next(), line)?)?;
                    }
                    "c" => {
                        let i = idx(toks.next(), line)?;
                        let j = idx(toks.next(), line)?;
                        q.add_coupler(i, j, num(toks.next(), line)?)?;
                    }
                    other => {
                        return Err(Error::parse(line, format!("unknown record {other:?}")))
                    }
                }
            }
            if let Some(t) = toks.next() {
                return Err(Error::parse(line, format!("unexpected token {t:?}")));
            }
        }
        qubo.ok_or_else(|| Error::parse(0, "no `vars N` declaration"))
    }
}

/// One binary value per variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn zeros(n: usize) -> Self {
        Assignment(vec![false; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }

    /// `0`/`1` values, variable 0 first.
    pub fn from_values(values: &[u8]) -> Self {
        Assignment(values.iter().map(|&v| v != 0).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assignment({self})")
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Variable indices of one XOR bit position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct XorRoles {
    pub x: usize,
    pub y: usize,
    /// Output, `x ⊕ y` at the ground state.
    pub z: usize,
    /// Carry ancilla, `x ∧ y` at the ground state.
    pub a: usize,
}

/// Encodes `z = x ⊕ y` at each of `width` positions as the penalty
/// `(x + y − z − 2a)²`, expanded using `s² = s` for binary `s`:
///
/// `x + y + z + 4a + 2xy − 2xz − 4xa − 2yz − 4ya + 4za`.
///
/// The penalty is 0 exactly when `z = x ⊕ y` and `a = x ∧ y`, and at least 1
/// otherwise.
pub fn build_xor_qubo<T: Real>(width: usize) -> Result<(Qubo<T>, Vec<XorRoles>)> {
    if width == 0 {
        return Err(Error::contract("xor qubo width must be at least 1"));
    }
    let mut q = Qubo::new(4 * width);
    let mut roles = Vec::with_capacity(width);
    let l = T::lit;
    for p in 0..width {
        let r = XorRoles {
            x: 4 * p,
            y: 4 * p + 1,
            z: 4 * p + 2,
            a: 4 * p + 3,
        };
        q.add_weight(r.x, l(1.0))?;
        q.add_weight(r.y, l(1.0))?;
        q.add_weight(r.z, l(1.0))?;
        q.add_weight(r.a, l(4.0))?;
        q.add_coupler(r.x, r.y, l(2.0))?;
        q.add_coupler(r.x, r.z, l(-2.0))?;
        q.add_coupler(r.x, r.a, l(-4.0))?;
        q.add_coupler(r.y, r.z, l(-2.0))?;
        q.add_coupler(r.y, r.a, l(-4.0))?;
        q.add_coupler(r.z, r.a, l(4.0))?;
        roles.push(r);
    }
    Ok((q, roles))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactSolution<T: Real + Serialize> {
    pub ground_energy: T,
    /// Sorted ascending by rendered bitstring.
    pub ground_states: Vec<Assignment>,
}

/// Enumerates all `2^n` assignments in Gray-code order.
pub fn solve_exhaustive<T: Real + Serialize>(q: &Qubo<T>) -> Result<ExactSolution<T>> {
    let n = q.num_vars();
    if n > EXHAUSTIVE_CAP {
        return Err(Error::Capacity {
            what: "exhaustive qubo size",
            requested: n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let tol = T::grouping_tolerance();
    let adj = q.adjacency();
    let mut bits = vec![false; n];
    let mut e = q.offset();
    let mut best = e;
    let mut candidates: Vec<Vec<bool>> = vec![bits.clone()];

    for k in 1u64..(1u64 << n) {
        let i = k.trailing_zeros() as usize;
        e = e + flip_delta(q, &adj, &bits, i);
        bits[i] = !bits[i];
        if e < best - tol {
            best = e;
            candidates.clear();
            candidates.push(bits.clone());
        } else if e <= best + tol {
            candidates.push(bits.clone());
            if e < best {
                best = e;
            }
        }
    }

    // re-evaluate from scratch so accumulated rounding cannot leak in
    let exact: Vec<(T, Vec<bool>)> = candidates
        .into_iter()
        .map(|b| (q.energy_unchecked(&b), b))
        .collect();
    let ground = exact
        .iter()
        .map(|(e, _)| *e)
        .fold(T::infinity(), |a, b| a.min(b));
    let mut ground_states: Vec<Assignment> = exact
        .into_iter()
        .filter(|(e, _)| *e <= ground + tol)
        .map(|(_, b)| Assignment(b))
        .collect();
    ground_states.sort();
    Ok(ExactSolution {
        ground_energy: ground,
        ground_states,
    })
}

/// Energy change from flipping variable `i`.
#[inline]
fn flip_delta<T: Real>(q: &Qubo<T>, adj: &[Vec<(usize, T)>], bits: &[bool], i: usize) -> T {
    let mut field = q.weights[i];
    for &(j, c) in &adj[i] {
        if bits[j] {
            field = field + c;
        }
    }
    if bits[i] {
        -field
    } else {
        field
    }
}

/// Geometric cooling from `initial_temperature` to `final_temperature`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnnealSchedule {
    pub initial_temperature: f64,
    pub final_temperature: f64,
    pub sweeps: usize,
    pub seed: u64,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        AnnealSchedule {
            initial_temperature: 2.0,
            final_temperature: 0.01,
            sweeps: 2000,
            seed: 0,
        }
    }
}

impl AnnealSchedule {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (t0, t1) = (self.initial_temperature, self.final_temperature);
        if !(t0 > 0.0 && t1 > 0.0 && t0.is_finite()) {
            return Err(Error::contract("temperatures must be positive and finite"));
        }
        if t1 > t0 {
            return Err(Error::contract(
                "final temperature must not exceed the initial temperature",
            ));
        }
        if self.sweeps == 0 {
            return Err(Error::contract("schedule needs at least one sweep"));
        }
        Ok(())
    }

    /// Temperature for sweep `k` of `sweeps`.
    pub fn temperature(&self, k: usize) -> f64 {
        if self.sweeps <= 1 {
            return self.initial_temperature;
        }
        let frac = k as f64 / (self.sweeps - 1) as f64;
        self.initial_temperature * (self.final_temperature / self.initial_temperature).powf(frac)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory<T: Real + Serialize> {
    pub sweeps: usize,
    pub proposals: u64,
    pub accepted: u64,
    pub initial_energy: T,
    pub final_energy: T,
    /// Sweep index at which the best energy was first reached.
    pub best_sweep: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnealResult<T: Real + Serialize> {
    pub best: Assignment,
    pub energy: T,
    pub trajectory: Trajectory<T>,
}

/// Simulated annealing from a seeded random start.
pub fn solve_anneal<T: Real + Serialize>(
    q: &Qubo<T>,
    schedule: &AnnealSchedule,
) -> Result<AnnealResult<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(schedule.seed);
    let start = Assignment((0..q.num_vars()).map(|_| rng.gen::<bool>()).collect());
    anneal_core(q, schedule, start, &mut rng, |_, _| {})
}

/// Simulated annealing from a given start.
pub fn solve_anneal_from<T: Real + Serialize>(
    q: &Qubo<T>,
    schedule: &AnnealSchedule,
    start: Assignment,
) -> Result<AnnealResult<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(schedule.seed);
    anneal_core(q, schedule, start, &mut rng, |_, _| {})
}

/// Metropolis single-bit-flip sweeps. `on_accept` sees the state and the
/// incrementally tracked energy after each accepted move.
fn anneal_core<T, R, F>(
    q: &Qubo<T>,
    schedule: &AnnealSchedule,
    start: Assignment,
    rng: &mut R,
    mut on_accept: F,
) -> Result<AnnealResult<T>>
where
    T: Real + Serialize,
    R: Rng,
    F: FnMut(&[bool], T),
{
    schedule.validate()?;
    if q.num_vars() == 0 {
        return Err(Error::contract("annealing needs at least one variable"));
    }
    let initial_energy = q.energy(&start)?;
    let adj = q.adjacency();
    let mut bits = start.0;
    let mut e = initial_energy;
    let mut best = (e, bits.clone(), 0usize);
    let mut proposals = 0u64;
    let mut accepted = 0u64;

    for sweep in 0..schedule.sweeps {
        let temp = schedule.temperature(sweep);
        for i in 0..q.num_vars() {
            proposals += 1;
            let d = flip_delta(q, &adj, &bits, i);
            let df = d.to_f64().unwrap_or(f64::INFINITY);
            let accept = df <= 0.0 || rng.gen::<f64>() < (-df / temp).exp();
            if accept {
                bits[i] = !bits[i];
                e = e + d;
                accepted += 1;
                on_accept(&bits, e);
                if e < best.0 {
                    best = (e, bits.clone(), sweep);
                }
            }
        }
    }

    let (_, best_bits, best_sweep) = best;
    let best = Assignment(best_bits);
    let energy = q.energy_unchecked(best.bits());
    Ok(AnnealResult {
        best,
        energy,
        trajectory: Trajectory {
            sweeps: schedule.sweeps,
            proposals,
            accepted,
            initial_energy,
            final_energy: q.energy_unchecked(&bits),
            best_sweep,
        },
    })
}
