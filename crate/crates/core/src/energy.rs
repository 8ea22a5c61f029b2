//! Mining energy comparison between a classical network and quantum hardware.
//!
//! Every figure carries a [`Source`]. Quantities are generic over
//! [`Quantity`], so the same report can be produced in floating point or with
//! exact rational arithmetic.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Quantity;

/// Where a number came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// A published estimate, identified by its citation label.
    Cited(String),
    /// Supplied by the user; no published figure exists.
    UserAssumption,
    /// Computed from other tagged figures.
    Derived(String),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Cited(c) => write!(f, "[{c}]"),
            Source::UserAssumption => f.write_str("[user assumption]"),
            Source::Derived(from) => write!(f, "[derived: {from}]"),
        }
    }
}

impl Serialize for Source {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Source {
    fn from_label(label: &str) -> Result<Self> {
        let label = label.trim();
        if label.is_empty() {
            return Err(Error::contract("every profile value needs a source"));
        }
        if label.eq_ignore_ascii_case("user assumption") || label.eq_ignore_ascii_case("user") {
            Ok(Source::UserAssumption)
        } else {
            Ok(Source::Cited(label.to_string()))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tagged<Q> {
    pub value: Q,
    pub unit: &'static str,
    pub source: Source,
}

impl<Q> Tagged<Q> {
    pub fn new(value: Q, unit: &'static str, source: Source) -> Self {
        Tagged {
            value,
            unit,
            source,
        }
    }
}

/// Published annual network consumption estimates, in TWh/year.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassicalEstimate {
    Twh80,
    Twh110,
    Twh91,
}

impl ClassicalEstimate {
    pub fn from_twh(twh: u32) -> Result<Self> {
        match twh {
            80 => Ok(ClassicalEstimate::Twh80),
            110 => Ok(ClassicalEstimate::Twh110),
            91 => Ok(ClassicalEstimate::Twh91),
            other => Err(Error::contract(format!(
                "no published estimate of {other} TWh/year; choose 80, 110 or 91"
            ))),
        }
    }

    pub fn twh(&self) -> u32 {
        match self {
            ClassicalEstimate::Twh80 => 80,
            ClassicalEstimate::Twh110 => 110,
            ClassicalEstimate::Twh91 => 91,
        }
    }

    pub fn citation(&self) -> &'static str {
        match self {
            ClassicalEstimate::Twh80 => "ref 31",
            ClassicalEstimate::Twh110 => "ref 32",
            ClassicalEstimate::Twh91 => "ref 33",
        }
    }
}

pub const TWH_PER_YEAR: &str = "TWh/year";
pub const KWH_PER_YEAR: &str = "kWh/year";
pub const MWH_PER_YEAR: &str = "MWh/year";
pub const TONS_PER_YEAR: &str = "tons/year";
pub const JOULES: &str = "J";
pub const JOULES_PER_HASH: &str = "J/hash";
pub const MINERS: &str = "miners";

pub const CO2_UNIT_NOTE: &str = "network CO2 figure reproduced verbatim as published; \
     its unit is likely megatonnes rather than tons given the stated consumption";

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyProfile<Q: Quantity> {
    pub classical_network: Tagged<Q>,
    pub classical_co2: Tagged<Q>,
    /// Annual consumption of one quantum machine.
    pub quantum: Tagged<Q>,
    pub miner_count: Tagged<u64>,
    pub per_hash_joules: Option<Tagged<Q>>,
}

fn q<Q: Quantity>(v: u64) -> Q {
    Q::from_u64(v).expect("integer constant representable")
}

impl<Q: Quantity> EnergyProfile<Q> {
    pub fn published(estimate: ClassicalEstimate) -> Self {
        EnergyProfile {
            classical_network: Tagged::new(
                q(estimate.twh() as u64),
                TWH_PER_YEAR,
                Source::Cited(estimate.citation().into()),
            ),
            classical_co2: Tagged::new(q(267), TONS_PER_YEAR, Source::Cited("ref 31".into())),
            quantum: Tagged::new(q(25), KWH_PER_YEAR, Source::Cited("refs 35, 36".into())),
            miner_count: Tagged::new(1_000_000, MINERS, Source::Cited("ref 34".into())),
            per_hash_joules: None,
        }
    }

    pub fn with_per_hash_joules(mut self, joules: Q) -> Self {
        self.per_hash_joules = Some(Tagged::new(joules, JOULES_PER_HASH, Source::UserAssumption));
        self
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("classical network consumption", &self.classical_network.value),
            ("classical CO2", &self.classical_co2.value),
            ("quantum consumption", &self.quantum.value),
        ];
        for (name, v) in checks {
            if v.is_negative() {
                return Err(Error::contract(format!("{name} must be non-negative")));
            }
        }
        if let Some(p) = &self.per_hash_joules {
            if p.value.is_negative() {
                return Err(Error::contract("per-hash energy must be non-negative"));
            }
        }
        Ok(())
    }

    /// Loads a profile from TOML; every entry needs `value` and `source`.
    pub fn from_toml(src: &str) -> Result<Self> {
        let cfg: ProfileConfig =
            toml::from_str(src).map_err(|e| Error::parse(0, format!("energy profile: {e}")))?;
        let conv = |e: &EntryConfig, unit: &'static str| -> Result<Tagged<Q>> {
            let value = Q::from_f64(e.value)
                .ok_or_else(|| Error::parse(0, format!("unrepresentable value {}", e.value)))?;
            Ok(Tagged::new(value, unit, Source::from_label(&e.source)?))
        };
        let miners = &cfg.miner_count;
        if miners.value < 0.0 || miners.value.fract() != 0.0 {
            return Err(Error::contract("miner count must be a non-negative integer"));
        }
        let profile = EnergyProfile {
            classical_network: conv(&cfg.classical_network_twh_per_year, TWH_PER_YEAR)?,
            classical_co2: conv(&cfg.classical_co2_tons_per_year, TONS_PER_YEAR)?,
            quantum: conv(&cfg.quantum_kwh_per_year, KWH_PER_YEAR)?,
            miner_count: Tagged::new(
                miners.value as u64,
                MINERS,
                Source::from_label(&miners.source)?,
            ),
            per_hash_joules: cfg
                .per_hash_joules
                .as_ref()
                .map(|e| {
                    conv(e, JOULES_PER_HASH).map(|mut t| {
                        // a per-hash figure is never published data
                        t.source = Source::UserAssumption;
                        t
                    })
                })
                .transpose()?,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn from_toml_file(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryConfig {
    value: f64,
    source: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileConfig {
    classical_network_twh_per_year: EntryConfig,
    classical_co2_tons_per_year: EntryConfig,
    quantum_kwh_per_year: EntryConfig,
    miner_count: EntryConfig,
    per_hash_joules: Option<EntryConfig>,
}

/// A ratio whose denominator may be zero.
#[derive(Clone, Debug, PartialEq)]
pub enum Ratio<Q> {
    Finite(Q),
    Infinite,
}

impl<Q: fmt::Display> fmt::Display for Ratio<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite(v) => write!(f, "{v}"),
            Ratio::Infinite => f.write_str("inf"),
        }
    }
}

/// One reported number.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure {
    pub name: &'static str,
    /// Exact rendering of the value.
    pub value: String,
    /// Floating-point approximation; absent for infinite or non-numeric values.
    pub approx: Option<f64>,
    pub unit: &'static str,
    pub source: Source,
}

impl Figure {
    fn of<Q: Quantity>(name: &'static str, t: &Tagged<Q>) -> Self {
        Figure {
            name,
            value: t.value.to_string(),
            approx: t.value.to_f64(),
            unit: t.unit,
            source: t.source.clone(),
        }
    }

    fn of_ratio<Q: Quantity>(name: &'static str, r: &Ratio<Q>, unit: &'static str, source: Source) -> Self {
        Figure {
            name,
            value: r.to_string(),
            approx: match r {
                Ratio::Finite(v) => v.to_f64(),
                Ratio::Infinite => None,
            },
            unit,
            source,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport<Q: Quantity> {
    pub classical_network: Tagged<Q>,
    pub classical_network_kwh: Tagged<Q>,
    pub quantum: Tagged<Q>,
    /// Classical network consumption over one quantum machine's.
    pub consumption_ratio: Ratio<Q>,
    pub miner_count: Tagged<u64>,
    pub per_miner: Ratio<Q>,
    pub classical_co2: Tagged<Q>,
    pub notes: Vec<&'static str>,
}

impl<Q: Quantity> ComparisonReport<Q> {
    /// All figures, each with its source tag.
    pub fn figures(&self) -> Vec<Figure> {
        vec![
            Figure::of("classical_network", &self.classical_network),
            Figure::of("classical_network_kwh", &self.classical_network_kwh),
            Figure::of("quantum_machine", &self.quantum),
            Figure::of_ratio(
                "consumption_ratio",
                &self.consumption_ratio,
                "x",
                Source::Derived("classical_network_kwh / quantum_machine".into()),
            ),
            Figure {
                name: "miner_count",
                value: self.miner_count.value.to_string(),
                approx: Some(self.miner_count.value as f64),
                unit: self.miner_count.unit,
                source: self.miner_count.source.clone(),
            },
            Figure::of_ratio(
                "per_miner_energy",
                &self.per_miner,
                MWH_PER_YEAR,
                Source::Derived("classical_network / miner_count".into()),
            ),
            Figure::of("classical_co2", &self.classical_co2),
            Figure {
                name: "quantum_co2",
                value: "N/A".into(),
                approx: None,
                unit: TONS_PER_YEAR,
                source: self.quantum.source.clone(),
            },
        ]
    }
}

/// Builds the tagged comparison. Division by a zero quantum consumption or a
/// zero miner count yields [`Ratio::Infinite`].
pub fn compare<Q: Quantity>(profile: &EnergyProfile<Q>) -> Result<ComparisonReport<Q>> {
    profile.validate()?;
    let twh = profile.classical_network.value.clone();
    let kwh = twh.clone() * q::<Q>(1_000_000_000);
    let ratio = if profile.quantum.value.is_zero() {
        Ratio::Infinite
    } else {
        Ratio::Finite(kwh.clone() / profile.quantum.value.clone())
    };
    let per_miner = if profile.miner_count.value == 0 {
        Ratio::Infinite
    } else {
        Ratio::Finite(twh * q::<Q>(1_000_000) / q::<Q>(profile.miner_count.value))
    };
    Ok(ComparisonReport {
        classical_network: profile.classical_network.clone(),
        classical_network_kwh: Tagged::new(
            kwh,
            KWH_PER_YEAR,
            Source::Derived("classical_network x 1e9".into()),
        ),
        quantum: profile.quantum.clone(),
        consumption_ratio: ratio,
        miner_count: profile.miner_count.clone(),
        per_miner,
        classical_co2: profile.classical_co2.clone(),
        notes: vec![CO2_UNIT_NOTE],
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MiningAttribution<Q: Quantity> {
    pub attempts: u64,
    pub per_hash: Tagged<Q>,
    pub classical_joules: Tagged<Q>,
    pub quantum_joules: Tagged<Q>,
    pub assumption_flags: Vec<&'static str>,
}

impl<Q: Quantity> MiningAttribution<Q> {
    pub fn figures(&self) -> Vec<Figure> {
        vec![
            Figure {
                name: "attempts",
                value: self.attempts.to_string(),
                approx: Some(self.attempts as f64),
                unit: "hashes",
                source: Source::Derived("proof-of-work search".into()),
            },
            Figure::of("per_hash_energy", &self.per_hash),
            Figure::of("classical_mining_energy", &self.classical_joules),
            Figure::of("quantum_mining_energy", &self.quantum_joules),
        ]
    }
}

pub const PER_HASH_ASSUMPTION: &str =
    "per-hash energy is a user-supplied assumption; no published per-hash figure exists";
pub const QUANTUM_SCALING_ASSUMPTION: &str =
    "quantum energy scaled by the quantum/classical annual consumption ratio";

/// Energy for `attempts` hashes: classical at the user's per-hash figure,
/// quantum scaled by the profile's consumption ratio.
pub fn attribute_mining_energy<Q: Quantity>(
    attempts: u64,
    profile: &EnergyProfile<Q>,
) -> Result<MiningAttribution<Q>> {
    profile.validate()?;
    let per_hash = profile.per_hash_joules.clone().ok_or_else(|| {
        Error::AssumptionRequired(
            "per-hash energy (J/hash) must be supplied; it has no published value".into(),
        )
    })?;
    let classical = q::<Q>(attempts) * per_hash.value.clone();
    let kwh = profile.classical_network.value.clone() * q::<Q>(1_000_000_000);
    if kwh.is_zero() {
        return Err(Error::contract(
            "classical consumption of zero leaves the quantum scaling undefined",
        ));
    }
    let quantum = classical.clone() * profile.quantum.value.clone() / kwh;
    Ok(MiningAttribution {
        attempts,
        per_hash,
        classical_joules: Tagged::new(
            classical,
            JOULES,
            Source::Derived("attempts x per_hash_energy".into()),
        ),
        quantum_joules: Tagged::new(
            quantum,
            JOULES,
            Source::Derived("classical_mining_energy / consumption_ratio".into()),
        ),
        assumption_flags: vec![PER_HASH_ASSUMPTION, QUANTUM_SCALING_ASSUMPTION],
    })
}
