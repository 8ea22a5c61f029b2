//! Command-line front end.
//!
//! Every invocation emits either human-readable `key: value` lines or
//! line-delimited JSON records (`--format jsonl`). The first record always
//! echoes the resolved inputs, including defaults and the seed, so identical
//! flags reproduce byte-identical output.
//!
//! Exit codes: 0 success, 2 usage error, otherwise [`Error::exit_code`].

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::annealer::{self, AnnealSchedule, Qubo};
use crate::energy::{self, ClassicalEstimate, EnergyProfile, Figure};
use crate::error::{Error, Result};
use crate::hybrid::{self, HybridHasher, TraceLevel, XorBackend, XorRecord};
use crate::qhash::{self, KeySet};
use crate::qsim::{self, BitString, Circuit, Method, NoiseModel, Simulator};
use crate::scalar::Quantity;
use crate::sha256::FeedForward;

/// Environment variable supplying the default seed.
pub const SEED_ENV: &str = "QSHA256_SEED";

#[derive(Parser, Debug)]
#[command(name = "qsha256", version, about = "Hybrid quantum/classical SHA-256 toolkit")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Master seed for every stochastic path.
    #[arg(long, env = SEED_ENV, default_value_t = 0, global = true)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Jsonl,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hash a message classically or through a quantum XOR backend.
    Hash(HashArgs),
    /// Verify a per-call XOR trace written by `hash --trace-out`.
    Audit {
        trace: PathBuf,
    },
    /// Build or run X/CNOT circuits in the text gate-list format.
    #[command(subcommand)]
    Circuit(CircuitCmd),
    /// Quantum hash states, fidelities and collision resistance.
    #[command(subcommand)]
    Qhash(QhashCmd),
    /// Solve XOR or file-supplied QUBOs.
    #[command(subcommand)]
    Anneal(AnnealCmd),
    /// Toy proof-of-work search with energy attribution.
    Mine(MineArgs),
    /// Tagged energy comparison report.
    Energy(EnergyArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct MessageInput {
    /// Literal text, encoded one byte per character (Latin-1).
    #[arg(long)]
    pub message: Option<String>,
    /// Message bytes as hex.
    #[arg(long)]
    pub hex: Option<String>,
    /// Read the message bytes from a file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

impl MessageInput {
    fn bytes(&self) -> Result<Vec<u8>> {
        if let Some(m) = &self.message {
            latin1(m)
        } else if let Some(h) = &self.hex {
            hex::decode(h.trim()).map_err(|e| Error::parse(1, format!("message hex: {e}")))
        } else if let Some(p) = &self.file {
            Ok(std::fs::read(p)?)
        } else {
            Err(Error::contract("no message given"))
        }
    }
}

fn latin1(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| {
            u8::try_from(c as u32)
                .map_err(|_| Error::contract(format!("character {c:?} is not a single byte")))
        })
        .collect()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Classical,
    QuantumIdeal,
    QuantumNoisy,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Basis,
    Dense,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Basis => Method::Basis,
            MethodArg::Dense => Method::Dense,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct BackendArgs {
    #[arg(long, value_enum, default_value_t = BackendArg::Classical)]
    pub backend: BackendArg,
    /// XOR window width in bits.
    #[arg(long, default_value_t = hybrid::DEFAULT_WINDOW_BITS)]
    pub window: usize,
    #[arg(long, default_value_t = hybrid::DEFAULT_SHOTS)]
    pub shots: u64,
    /// CNOT bit-flip probability for the noisy backend.
    #[arg(long, default_value_t = 0.05)]
    pub p: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
}

impl BackendArgs {
    fn backend(&self, seed: u64) -> Result<XorBackend> {
        let be = match self.backend {
            BackendArg::Classical => XorBackend::classical(),
            BackendArg::QuantumIdeal => XorBackend::quantum_ideal(self.shots),
            BackendArg::QuantumNoisy => {
                XorBackend::quantum_noisy(NoiseModel::new(self.p)?, self.shots, seed)
            }
        }
        .with_window(self.window)
        .with_seed(seed)
        .with_method(self.method.into());
        be.validate()?;
        Ok(be)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FeedForwardArg {
    /// Modular addition (SHA-256).
    Add,
    /// Generic XOR feed-forward; not SHA-256.
    Xor,
}

#[derive(Args, Debug)]
pub struct HashArgs {
    #[command(flatten)]
    pub input: MessageInput,
    #[command(flatten)]
    pub backend: BackendArgs,
    #[arg(long, value_enum, default_value_t = FeedForwardArg::Add)]
    pub feed_forward: FeedForwardArg,
    /// Print the XOR trace summary and agreement rate.
    #[arg(long)]
    pub audit: bool,
    /// Write one JSON record per XOR window call to this file.
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CircuitCmd {
    /// Emit the XOR circuit for two equal-width operands.
    Xor {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Write the circuit here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also simulate through the dense state-vector path.
        #[arg(long)]
        dense: bool,
        #[arg(long, default_value_t = qsim::DEFAULT_DENSE_CAP)]
        dense_cap: usize,
        #[arg(long, default_value_t = hybrid::DEFAULT_SHOTS)]
        shots: u64,
    },
    /// Simulate a circuit file.
    Run {
        file: PathBuf,
        #[arg(long, default_value_t = hybrid::DEFAULT_SHOTS)]
        shots: u64,
        /// CNOT bit-flip probability; 0 runs noiselessly.
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, default_value_t = qsim::DEFAULT_DENSE_CAP)]
        dense_cap: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct KeyArgs {
    /// Message width in bits.
    #[arg(long)]
    pub n: u32,
    /// Explicit comma-separated keys.
    #[arg(long, value_delimiter = ',', conflicts_with = "d")]
    pub keys: Option<Vec<u64>>,
    /// Number of keys to draw with the master seed.
    #[arg(long)]
    pub d: Option<usize>,
}

impl KeyArgs {
    fn key_set(&self, seed: u64) -> Result<KeySet> {
        match (&self.keys, self.d) {
            (Some(k), _) => KeySet::new(k.clone(), self.n),
            (None, Some(d)) => qhash::generate_key_set(d, self.n, seed),
            (None, None) => Err(Error::contract("give --keys or --d")),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum QhashCmd {
    /// Worst-case fidelity over distinct messages.
    Delta {
        #[command(flatten)]
        keys: KeyArgs,
        #[arg(long, default_value_t = qhash::DEFAULT_SWEEP_CAP)]
        cap: u32,
    },
    Fidelity {
        #[command(flatten)]
        keys: KeyArgs,
        #[arg(long)]
        m1: u64,
        #[arg(long)]
        m2: u64,
    },
    State {
        #[command(flatten)]
        keys: KeyArgs,
        #[arg(long)]
        m: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ScheduleArgs {
    #[arg(long, default_value_t = 2.0)]
    pub t0: f64,
    #[arg(long, default_value_t = 0.01)]
    pub t1: f64,
    #[arg(long, default_value_t = 2000)]
    pub sweeps: usize,
    /// Independent annealing runs, seeded from the master seed.
    #[arg(long, default_value_t = 1)]
    pub runs: u64,
    /// Enumerate exactly instead of annealing.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Subcommand, Debug)]
pub enum AnnealCmd {
    /// Built-in XOR QUBO.
    Xor {
        #[arg(long)]
        width: usize,
        #[command(flatten)]
        schedule: ScheduleArgs,
        /// Write the QUBO in text form to this file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// QUBO read from a text file.
    File {
        path: PathBuf,
        #[command(flatten)]
        schedule: ScheduleArgs,
    },
}

#[derive(Args, Debug)]
pub struct MineArgs {
    /// Header text (Latin-1 bytes).
    #[arg(long, conflicts_with = "header_hex")]
    pub header: Option<String>,
    #[arg(long)]
    pub header_hex: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub difficulty: u32,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_nonce: u64,
    #[command(flatten)]
    pub backend: BackendArgs,
    /// Joules per classical hash (an assumption; enables energy attribution).
    #[arg(long)]
    pub per_hash_joules: Option<f64>,
    #[arg(long, default_value_t = 80)]
    pub classical_source: u32,
}

#[derive(Args, Debug)]
pub struct EnergyArgs {
    /// Published network estimate in TWh/year: 80, 110 or 91.
    #[arg(long, default_value_t = 80, conflicts_with = "config")]
    pub classical_source: u32,
    /// TOML profile with a value and source for every entry.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Hash attempts to attribute energy to.
    #[arg(long)]
    pub attempts: Option<u64>,
    #[arg(long)]
    pub per_hash_joules: Option<f64>,
    /// Use exact rational arithmetic.
    #[arg(long)]
    pub exact: bool,
}

struct Emitter<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Emitter<'_> {
    fn record(&mut self, kind: &str, fields: Value) -> Result<()> {
        let obj = match fields {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        match self.format {
            Format::Jsonl => {
                let mut full = Map::new();
                full.insert("record".into(), Value::String(kind.into()));
                full.extend(obj);
                writeln!(self.out, "{}", Value::Object(full))?;
            }
            Format::Text => {
                for (k, v) in obj {
                    let rendered = match v {
                        Value::String(s) => s,
                        other => other.to_string(),
                    };
                    writeln!(self.out, "{kind}.{k}: {rendered}")?;
                }
            }
        }
        Ok(())
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn figures_value(figs: &[Figure]) -> Value {
    let mut m = Map::new();
    for f in figs {
        m.insert(
            f.name.into(),
            json!({ "value": f.value, "approx": f.approx, "unit": f.unit, "source": f.source }),
        );
    }
    Value::Object(m)
}

fn backend_value(be: &XorBackend, args: &BackendArgs) -> Value {
    json!({
        "backend": be.kind,
        "window_bits": be.window_bits,
        "shots": be.shots,
        "cnot_flip_prob": if be.kind == hybrid::BackendKind::QuantumNoisy { Some(args.p) } else { None },
        "method": be.method,
        "dense_cap": be.dense_cap,
    })
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let mut em = Emitter {
        format: cli.format,
        out,
    };
    let seed = cli.seed;
    match &cli.command {
        Command::Hash(a) => cmd_hash(a, seed, &mut em),
        Command::Audit { trace } => cmd_audit(trace, &mut em),
        Command::Circuit(c) => cmd_circuit(c, seed, &mut em),
        Command::Qhash(c) => cmd_qhash(c, seed, &mut em),
        Command::Anneal(c) => cmd_anneal(c, seed, &mut em),
        Command::Mine(a) => cmd_mine(a, seed, &mut em),
        Command::Energy(a) => cmd_energy(a, &mut em),
    }
}

fn cmd_hash(a: &HashArgs, seed: u64, em: &mut Emitter) -> Result<()> {
    let message = a.input.bytes()?;
    let be = a.backend.backend(seed)?;
    let ff = match a.feed_forward {
        FeedForwardArg::Add => FeedForward::ModularAdd,
        FeedForwardArg::Xor => FeedForward::Xor,
    };
    let level = if a.trace_out.is_some() {
        TraceLevel::Full
    } else {
        TraceLevel::Summary
    };
    let mut cfg = backend_value(&be, &a.backend);
    cfg["seed"] = json!(seed);
    cfg["message_bytes"] = json!(message.len());
    cfg["feed_forward"] = json!(match ff {
        FeedForward::ModularAdd => "add",
        FeedForward::Xor => "xor",
    });
    em.record("config", cfg)?;

    let (digest, trace) = HybridHasher::new(be)
        .with_feed_forward(ff)
        .with_trace_level(level)
        .hash(&message)?;
    em.record("hash", json!({ "digest": digest.to_hex() }))?;

    if let Some(path) = &a.trace_out {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        trace.write_jsonl(&mut w)?;
        w.flush()?;
    }
    if a.audit {
        let s = trace.summary();
        em.record(
            "audit",
            json!({
                "xor_calls": s.calls,
                "agreed": s.agreed,
                "agreement_rate": s.agreement_rate,
            }),
        )?;
    }
    Ok(())
}

fn cmd_audit(path: &PathBuf, em: &mut Emitter) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    let mut calls = 0u64;
    let mut agreed = 0u64;
    let mut mislabeled = 0u64;
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let r: XorRecord =
            serde_json::from_str(line).map_err(|e| Error::parse(i + 1, e.to_string()))?;
        let truth = r.a.xor(&r.b)?;
        let ok = truth == r.decoded;
        calls += 1;
        agreed += ok as u64;
        mislabeled += (ok != r.agreed) as u64;
    }
    let rate = if calls == 0 {
        1.0
    } else {
        agreed as f64 / calls as f64
    };
    em.record(
        "audit",
        json!({
            "xor_calls": calls,
            "agreed": agreed,
            "agreement_rate": rate,
            "mislabeled_records": mislabeled,
        }),
    )
}

fn cmd_circuit(c: &CircuitCmd, seed: u64, em: &mut Emitter) -> Result<()> {
    match c {
        CircuitCmd::Xor {
            a,
            b,
            out,
            dense,
            dense_cap,
            shots,
        } => {
            let a: BitString = a.parse()?;
            let b: BitString = b.parse()?;
            let circuit = hybrid::xor_circuit(&a, &b)?;
            let text = qsim::text::to_text(&circuit);
            em.record(
                "config",
                json!({
                    "a": a, "b": b, "shots": shots, "dense": dense,
                    "dense_cap": dense_cap, "seed": seed,
                }),
            )?;
            let method = if *dense { Method::Dense } else { Method::Auto };
            let sim = Simulator {
                method,
                dense_cap: *dense_cap,
            };
            let hist = sim.run(&circuit, *shots, None, seed)?;
            em.record(
                "circuit",
                json!({
                    "qubits": circuit.num_qubits(),
                    "x_gates": circuit.gates().len() - circuit.cnot_count(),
                    "cnot_gates": circuit.cnot_count(),
                    "path": out.as_ref().map(|p| p.display().to_string()),
                }),
            )?;
            match out {
                Some(p) => std::fs::write(p, &text)?,
                None => em.record("circuit_text", json!({ "text": text }))?,
            }
            em.record(
                "result",
                json!({
                    "histogram": hist,
                    "decoded": hybrid::decode_majority(&hist)?,
                }),
            )
        }
        CircuitCmd::Run {
            file,
            shots,
            p,
            method,
            dense_cap,
        } => {
            let circuit: Circuit = std::fs::read_to_string(file)?.parse()?;
            let noise = NoiseModel::new(*p)?;
            let sim = Simulator {
                method: (*method).into(),
                dense_cap: *dense_cap,
            };
            em.record(
                "config",
                json!({
                    "file": file.display().to_string(), "shots": shots, "cnot_flip_prob": p,
                    "method": sim.method, "dense_cap": dense_cap, "seed": seed,
                }),
            )?;
            let hist = sim.run(&circuit, *shots, Some(&noise), seed)?;
            em.record(
                "result",
                json!({
                    "qubits": circuit.num_qubits(),
                    "measured": circuit.measured_qubits().collect::<Vec<_>>(),
                    "histogram": hist,
                    "mode": hybrid::decode_majority(&hist)?,
                }),
            )
        }
    }
}

fn keys_config(k: &KeyArgs, ks: &KeySet, seed: u64) -> Value {
    json!({
        "n": k.n,
        "d": ks.len(),
        "keys": ks.keys(),
        "keys_generated": k.keys.is_none(),
        "seed": seed,
    })
}

fn cmd_qhash(c: &QhashCmd, seed: u64, em: &mut Emitter) -> Result<()> {
    match c {
        QhashCmd::Delta { keys, cap } => {
            let ks = keys.key_set(seed)?;
            let mut cfg = keys_config(keys, &ks, seed);
            cfg["cap"] = json!(cap);
            em.record("config", cfg)?;
            let r = qhash::delta_of_keyset_capped::<f64>(&ks, *cap)?;
            em.record("delta", to_value(&r))
        }
        QhashCmd::Fidelity { keys, m1, m2 } => {
            let ks = keys.key_set(seed)?;
            em.record("config", keys_config(keys, &ks, seed))?;
            let f = qhash::fidelity::<f64>(*m1, *m2, &ks)?;
            em.record("fidelity", json!({ "m1": m1, "m2": m2, "fidelity": f }))
        }
        QhashCmd::State { keys, m } => {
            let ks = keys.key_set(seed)?;
            em.record("config", keys_config(keys, &ks, seed))?;
            let s = qhash::qhash::<f64>(*m, &ks)?;
            em.record(
                "state",
                json!({ "m": m, "pairs": s.pairs, "norm_sqr": s.norm_sqr() }),
            )
        }
    }
}

fn solve_qubo(q: &Qubo<f64>, s: &ScheduleArgs, seed: u64, em: &mut Emitter) -> Result<()> {
    if s.exhaustive {
        let sol = annealer::solve_exhaustive(q)?;
        return em.record(
            "exhaustive",
            json!({
                "ground_energy": sol.ground_energy,
                "ground_state_count": sol.ground_states.len(),
                "ground_states": sol.ground_states,
            }),
        );
    }
    if s.runs == 0 {
        return Err(Error::contract("--runs must be at least 1"));
    }
    let mut best: Option<annealer::AnnealResult<f64>> = None;
    for run in 0..s.runs {
        let schedule = AnnealSchedule {
            initial_temperature: s.t0,
            final_temperature: s.t1,
            sweeps: s.sweeps,
            seed: qsim::derive_seed(seed, run),
        };
        let r = annealer::solve_anneal(q, &schedule)?;
        em.record(
            "run",
            json!({
                "run": run,
                "seed": schedule.seed,
                "energy": r.energy,
                "assignment": r.best,
                "trajectory": r.trajectory,
            }),
        )?;
        if best.as_ref().is_none_or(|b| r.energy < b.energy) {
            best = Some(r);
        }
    }
    let best = best.expect("at least one run");
    em.record(
        "best",
        json!({ "energy": best.energy, "assignment": best.best }),
    )
}

fn schedule_config(s: &ScheduleArgs, seed: u64) -> Value {
    json!({
        "t0": s.t0, "t1": s.t1, "sweeps": s.sweeps, "runs": s.runs,
        "exhaustive": s.exhaustive, "seed": seed,
    })
}

fn cmd_anneal(c: &AnnealCmd, seed: u64, em: &mut Emitter) -> Result<()> {
    match c {
        AnnealCmd::Xor {
            width,
            schedule,
            export,
        } => {
            let (q, roles) = annealer::build_xor_qubo::<f64>(*width)?;
            let mut cfg = schedule_config(schedule, seed);
            cfg["width"] = json!(width);
            cfg["vars"] = json!(q.num_vars());
            em.record("config", cfg)?;
            em.record("roles", json!({ "positions": roles }))?;
            if let Some(p) = export {
                std::fs::write(p, q.to_text())?;
            }
            solve_qubo(&q, schedule, seed, em)
        }
        AnnealCmd::File { path, schedule } => {
            let q = Qubo::<f64>::parse(&std::fs::read_to_string(path)?)?;
            let mut cfg = schedule_config(schedule, seed);
            cfg["file"] = json!(path.display().to_string());
            cfg["vars"] = json!(q.num_vars());
            em.record("config", cfg)?;
            solve_qubo(&q, schedule, seed, em)
        }
    }
}

fn cmd_mine(a: &MineArgs, seed: u64, em: &mut Emitter) -> Result<()> {
    let header = match (&a.header, &a.header_hex) {
        (Some(h), _) => latin1(h)?,
        (None, Some(h)) => {
            hex::decode(h.trim()).map_err(|e| Error::parse(1, format!("header hex: {e}")))?
        }
        (None, None) => return Err(Error::contract("give --header or --header-hex")),
    };
    let be = a.backend.backend(seed)?;
    let mut cfg = backend_value(&be, &a.backend);
    cfg["seed"] = json!(seed);
    cfg["header_hex"] = json!(hex::encode(&header));
    cfg["difficulty_bits"] = json!(a.difficulty);
    cfg["max_nonce"] = json!(a.max_nonce);
    cfg["nonce_encoding"] = json!("8-byte big-endian suffix");
    cfg["per_hash_joules"] = json!(a.per_hash_joules);
    cfg["classical_source_twh"] = json!(a.classical_source);
    em.record("config", cfg)?;

    let found = hybrid::pow_search(&header, a.difficulty, &be, a.max_nonce)?;
    let attempts = match &found {
        Some(s) => {
            em.record("solution", to_value(s))?;
            s.attempts
        }
        None => {
            em.record("exhausted", json!({ "attempts": a.max_nonce }))?;
            a.max_nonce
        }
    };
    if let Some(j) = a.per_hash_joules {
        let profile = EnergyProfile::<f64>::published(ClassicalEstimate::from_twh(
            a.classical_source,
        )?)
        .with_per_hash_joules(j);
        let attr = energy::attribute_mining_energy(attempts, &profile)?;
        em.record(
            "energy",
            json!({
                "figures": figures_value(&attr.figures()),
                "assumptions": attr.assumption_flags,
            }),
        )?;
    }
    Ok(())
}

fn energy_report<Q: Quantity>(
    profile: EnergyProfile<Q>,
    a: &EnergyArgs,
    em: &mut Emitter,
) -> Result<()> {
    let report = energy::compare(&profile)?;
    em.record(
        "comparison",
        json!({
            "figures": figures_value(&report.figures()),
            "notes": report.notes,
        }),
    )?;
    if let Some(attempts) = a.attempts {
        let attr = energy::attribute_mining_energy(attempts, &profile)?;
        em.record(
            "attribution",
            json!({
                "figures": figures_value(&attr.figures()),
                "assumptions": attr.assumption_flags,
            }),
        )?;
    }
    Ok(())
}

fn build_profile<Q: Quantity>(a: &EnergyArgs) -> Result<EnergyProfile<Q>> {
    let mut p = match &a.config {
        Some(path) => EnergyProfile::<Q>::from_toml_file(path)?,
        None => EnergyProfile::published(ClassicalEstimate::from_twh(a.classical_source)?),
    };
    if let Some(j) = a.per_hash_joules {
        let v = Q::from_f64(j)
            .ok_or_else(|| Error::contract(format!("per-hash energy {j} not representable")))?;
        p = p.with_per_hash_joules(v);
    }
    Ok(p)
}

fn cmd_energy(a: &EnergyArgs, em: &mut Emitter) -> Result<()> {
    em.record(
        "config",
        json!({
            "classical_source_twh": if a.config.is_none() { Some(a.classical_source) } else { None },
            "config": a.config.as_ref().map(|p| p.display().to_string()),
            "attempts": a.attempts,
            "per_hash_joules": a.per_hash_joules,
            "arithmetic": if a.exact { "exact-rational" } else { "f64" },
        }),
    )?;
    if a.exact {
        energy_report(build_profile::<Rational64>(a)?, a, em)
    } else {
        energy_report(build_profile::<f64>(a)?, a, em)
    }
}
