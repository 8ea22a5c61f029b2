//! Hybrid classical/quantum SHA-256.
//!
//! The hash chain, rotations, Ch/Maj masking and modular additions run on the
//! CPU. Every 32-bit XOR the round function issues is cut into windows and
//! each window is evaluated as a three-register CNOT circuit on a pluggable
//! backend. Noisy backends are decoded by majority vote over shots.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::{self, BitString, Circuit, Gate, Method, NoiseModel, ShotHistogram, Simulator};
use crate::sha256::{self, Digest, FeedForward, WordXor};

pub const DEFAULT_WINDOW_BITS: usize = 8;
pub const DEFAULT_SHOTS: u64 = 1022;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendKind {
    Classical,
    QuantumIdeal,
    QuantumNoisy,
}

/// Where XOR windows are evaluated and how.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XorBackend {
    pub kind: BackendKind,
    pub shots: u64,
    pub noise: Option<NoiseModel>,
    pub window_bits: usize,
    pub seed: u64,
    pub method: Method,
    pub dense_cap: usize,
}

impl XorBackend {
    pub fn classical() -> Self {
        XorBackend {
            kind: BackendKind::Classical,
            shots: 1,
            noise: None,
            window_bits: DEFAULT_WINDOW_BITS,
            seed: 0,
            method: Method::Auto,
            dense_cap: qsim::DEFAULT_DENSE_CAP,
        }
    }

    pub fn quantum_ideal(shots: u64) -> Self {
        XorBackend {
            kind: BackendKind::QuantumIdeal,
            shots,
            ..Self::classical()
        }
    }

    pub fn quantum_noisy(noise: NoiseModel, shots: u64, seed: u64) -> Self {
        XorBackend {
            kind: BackendKind::QuantumNoisy,
            shots,
            noise: Some(noise),
            seed,
            ..Self::classical()
        }
    }

    pub fn with_window(mut self, window_bits: usize) -> Self {
        self.window_bits = window_bits;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::contract("backend shots must be at least 1"));
        }
        if self.window_bits == 0 || self.window_bits > 32 {
            return Err(Error::contract(format!(
                "window of {} bits; expected 1..=32",
                self.window_bits
            )));
        }
        if self.kind == BackendKind::QuantumNoisy && self.noise.is_none() {
            return Err(Error::contract("noisy backend requires a noise model"));
        }
        if self.kind != BackendKind::Classical
            && self.method == Method::Dense
            && 3 * self.window_bits > self.dense_cap
        {
            return Err(Error::Capacity {
                what: "xor circuit width",
                requested: 3 * self.window_bits,
                cap: self.dense_cap,
            });
        }
        Ok(())
    }

    fn simulator(&self) -> Simulator {
        Simulator {
            method: self.method,
            dense_cap: self.dense_cap,
        }
    }

    fn active_noise(&self) -> Option<&NoiseModel> {
        match self.kind {
            BackendKind::QuantumNoisy => self.noise.as_ref(),
            _ => None,
        }
    }
}

/// Builds the XOR circuit for `w`-bit operands on `3w` qubits: `a` on qubits
/// `2w..3w`, `b` on `w..2w`, and a fresh output register on `0..w` that
/// receives `CNOT(a_i → out_i)` and `CNOT(b_i → out_i)`. Only the output
/// register is measured.
pub fn xor_circuit(a: &BitString, b: &BitString) -> Result<Circuit> {
    let w = a.len();
    if w != b.len() {
        return Err(Error::contract(format!(
            "xor operands differ in width: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if w == 0 {
        return Err(Error::contract("xor operands are empty"));
    }
    let mut c = Circuit::new(3 * w)?;
    c.encode_bits(a, 2 * w)?;
    c.encode_bits(b, w)?;
    for i in 0..w {
        c.cnot(2 * w + i, i)?;
        c.cnot(w + i, i)?;
    }
    c.measure(0..w)?;
    Ok(c)
}

/// Reduces a shot histogram to one outcome: the mode, ties resolved toward the
/// lexicographically smallest bitstring.
pub fn decode_majority(hist: &ShotHistogram) -> Result<BitString> {
    hist.mode()
        .map(|(k, _)| k.clone())
        .ok_or_else(|| Error::contract("cannot decode an empty histogram"))
}

/// Result of one windowed XOR evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct XorOutcome {
    pub decoded: BitString,
    pub histogram: Option<ShotHistogram>,
}

/// Evaluates `a ⊕ b` on `backend`, drawing shots from `seed`.
pub fn quantum_xor_seeded(
    a: &BitString,
    b: &BitString,
    backend: &XorBackend,
    seed: u64,
) -> Result<XorOutcome> {
    backend.validate()?;
    if a.len() != b.len() {
        return Err(Error::contract(format!(
            "xor operands differ in width: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.len() > backend.window_bits {
        return Err(Error::contract(format!(
            "operand width {} exceeds window of {} bits",
            a.len(),
            backend.window_bits
        )));
    }
    if backend.kind == BackendKind::Classical {
        return Ok(XorOutcome {
            decoded: a.xor(b)?,
            histogram: None,
        });
    }
    let circuit = xor_circuit(a, b)?;
    let hist = backend
        .simulator()
        .run(&circuit, backend.shots, backend.active_noise(), seed)?;
    Ok(XorOutcome {
        decoded: decode_majority(&hist)?,
        histogram: Some(hist),
    })
}

/// `a ⊕ b` through `backend`, seeded with the backend's own seed.
pub fn quantum_xor(a: &BitString, b: &BitString, backend: &XorBackend) -> Result<BitString> {
    quantum_xor_seeded(a, b, backend, backend.seed).map(|o| o.decoded)
}

/// How much of each XOR call the trace keeps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TraceLevel {
    /// Every window call is recorded.
    #[default]
    Full,
    /// Only counters.
    Summary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XorRecord {
    pub call: u64,
    pub a: BitString,
    pub b: BitString,
    pub decoded: BitString,
    pub agreed: bool,
    pub shots: u64,
    /// Distinct outcomes seen; 0 when no circuit was run.
    pub outcomes: usize,
    pub modal_count: u64,
}

/// Audit log of the windowed XOR calls made while hashing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XorTrace {
    records: Vec<XorRecord>,
    calls: u64,
    agreed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceSummary {
    pub calls: u64,
    pub agreed: u64,
    pub agreement_rate: f64,
}

impl XorTrace {
    pub fn records(&self) -> &[XorRecord] {
        &self.records
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }

    pub fn agreed(&self) -> u64 {
        self.agreed
    }

    pub fn all_agreed(&self) -> bool {
        self.agreed == self.calls
    }

    /// Fraction of windows whose decoded value equals classical XOR; 1 when
    /// no windows were evaluated.
    pub fn agreement_rate(&self) -> f64 {
        if self.calls == 0 {
            1.0
        } else {
            self.agreed as f64 / self.calls as f64
        }
    }

    pub fn summary(&self) -> TraceSummary {
        TraceSummary {
            calls: self.calls,
            agreed: self.agreed,
            agreement_rate: self.agreement_rate(),
        }
    }

    /// One JSON object per line, in call order.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r).map_err(|e| Error::Io(e.to_string()))?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// [`WordXor`] implementation that routes windows to an [`XorBackend`].
struct WindowedXor<'a> {
    backend: &'a XorBackend,
    level: TraceLevel,
    trace: XorTrace,
    scratch: Option<Circuit>,
}

impl<'a> WindowedXor<'a> {
    fn new(backend: &'a XorBackend, level: TraceLevel) -> Self {
        WindowedXor {
            backend,
            level,
            trace: XorTrace::default(),
            scratch: None,
        }
    }

    /// Refills the reusable full-width circuit with operands `a`, `b`.
    fn load(&mut self, a: u64, b: u64, w: usize) -> &Circuit {
        let fresh = match &self.scratch {
            Some(c) => c.num_qubits() != 3 * w,
            None => true,
        };
        if fresh {
            let mut c = Circuit::new(3 * w).expect("w >= 1");
            c.measure(0..w).expect("in range");
            self.scratch = Some(c);
        }
        let c = self.scratch.as_mut().expect("initialized");
        c.clear_gates();
        for i in 0..w {
            if (a >> i) & 1 == 1 {
                c.push_unchecked(Gate::X { target: 2 * w + i });
            }
        }
        for i in 0..w {
            if (b >> i) & 1 == 1 {
                c.push_unchecked(Gate::X { target: w + i });
            }
        }
        for i in 0..w {
            c.push_unchecked(Gate::Cnot {
                control: 2 * w + i,
                target: i,
            });
            c.push_unchecked(Gate::Cnot {
                control: w + i,
                target: i,
            });
        }
        c
    }

    fn window(&mut self, a: u64, b: u64, w: usize) -> Result<u64> {
        let call = self.trace.calls;
        let backend = self.backend;
        let (decoded, hist) = match backend.kind {
            BackendKind::Classical => (a ^ b, None),
            BackendKind::QuantumIdeal if backend.method != Method::Dense && 3 * w <= 64 => {
                let c = self.load(a, b, w);
                (qsim::measured_u64(c), None)
            }
            _ => {
                let seed = qsim::derive_seed(backend.seed, call);
                let shots = backend.shots;
                let noise = backend.active_noise().copied();
                let sim = backend.simulator();
                let c = self.load(a, b, w);
                let hist = sim.run(c, shots, noise.as_ref(), seed)?;
                let d = decode_majority(&hist)?
                    .to_u64()
                    .expect("window fits in 64 bits");
                (d, Some(hist))
            }
        };
        let agreed = decoded == a ^ b;
        self.trace.calls += 1;
        self.trace.agreed += agreed as u64;
        if self.level == TraceLevel::Full {
            let (shots, outcomes, modal_count) = match (&hist, backend.kind) {
                (Some(h), _) => (h.shots(), h.num_outcomes(), h.mode().map_or(0, |m| m.1)),
                (None, BackendKind::Classical) => (0, 0, 0),
                (None, _) => (backend.shots, 1, backend.shots),
            };
            self.trace.records.push(XorRecord {
                call,
                a: BitString::from_u64(a, w),
                b: BitString::from_u64(b, w),
                decoded: BitString::from_u64(decoded, w),
                agreed,
                shots,
                outcomes,
                modal_count,
            });
        }
        Ok(decoded)
    }
}

impl WordXor for WindowedXor<'_> {
    /// Windows are issued least-significant first.
    fn xor(&mut self, a: u32, b: u32) -> Result<u32> {
        let w = self.backend.window_bits;
        let mut out = 0u32;
        let mut lo = 0;
        while lo < 32 {
            let width = w.min(32 - lo);
            let mask = if width == 32 {
                u32::MAX
            } else {
                (1u32 << width) - 1
            };
            let wa = (a >> lo) & mask;
            let wb = (b >> lo) & mask;
            let d = self.window(wa as u64, wb as u64, width)? as u32;
            out |= (d & mask) << lo;
            lo += width;
        }
        Ok(out)
    }
}

/// Runs SHA-256 with its XORs delegated to a backend.
#[derive(Clone, Debug)]
pub struct HybridHasher {
    pub backend: XorBackend,
    pub feed_forward: FeedForward,
    pub trace_level: TraceLevel,
}

impl HybridHasher {
    pub fn new(backend: XorBackend) -> Self {
        HybridHasher {
            backend,
            feed_forward: FeedForward::ModularAdd,
            trace_level: TraceLevel::Full,
        }
    }

    pub fn with_feed_forward(mut self, feed_forward: FeedForward) -> Self {
        self.feed_forward = feed_forward;
        self
    }

    pub fn with_trace_level(mut self, level: TraceLevel) -> Self {
        self.trace_level = level;
        self
    }

    pub fn hash(&self, message: &[u8]) -> Result<(Digest, XorTrace)> {
        self.backend.validate()?;
        let mut xor = WindowedXor::new(&self.backend, self.trace_level);
        let digest = sha256::digest_with(message, &mut xor, self.feed_forward)?;
        Ok((digest, xor.trace))
    }
}

/// SHA-256 of `message` with every round XOR evaluated on `backend`.
pub fn hybrid_sha256(message: &[u8], backend: &XorBackend) -> Result<(Digest, XorTrace)> {
    HybridHasher::new(backend.clone()).hash(message)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowSolution {
    pub nonce: u64,
    pub digest: Digest,
    pub attempts: u64,
}

/// `header ∥ nonce` with the nonce as 8 big-endian bytes.
pub fn pow_preimage(header: &[u8], nonce: u64) -> Vec<u8> {
    let mut buf = Vec::with_capacity(header.len() + 8);
    buf.extend_from_slice(header);
    buf.extend_from_slice(&nonce.to_be_bytes());
    buf
}

/// Tries nonces `0..max_nonce` in order and returns the first whose digest has
/// at least `difficulty_bits` leading zero bits.
pub fn pow_search(
    header: &[u8],
    difficulty_bits: u32,
    backend: &XorBackend,
    max_nonce: u64,
) -> Result<Option<PowSolution>> {
    if difficulty_bits > 32 {
        return Err(Error::contract(format!(
            "difficulty {difficulty_bits} bits; expected 0..=32"
        )));
    }
    if max_nonce == 0 {
        return Err(Error::contract("max_nonce must be at least 1"));
    }
    let hasher = HybridHasher::new(backend.clone()).with_trace_level(TraceLevel::Summary);
    hasher.backend.validate()?;
    for nonce in 0..max_nonce {
        let digest = match backend.kind {
            BackendKind::Classical => sha256::sha256(&pow_preimage(header, nonce)),
            _ => {
                let mut h = hasher.clone();
                h.backend.seed = qsim::derive_seed(backend.seed, nonce);
                h.hash(&pow_preimage(header, nonce))?.0
            }
        };
        if digest.leading_zero_bits() >= difficulty_bits {
            return Ok(Some(PowSolution {
                nonce,
                digest,
                attempts: nonce + 1,
            }));
        }
    }
    Ok(None)
}
