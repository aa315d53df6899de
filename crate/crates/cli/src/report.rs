//! Machine-readable reports. Every field except `timing_ms` is a function of
//! the command line, so repeated runs serialize identically apart from it.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use infharm_core::calculus::{Mode, TensionReport, TensionVerdict};
use infharm_core::classify::{Counterexample, SearchOutcome, TheoremReport, Verdict};
use infharm_core::exprcore::default_names;
use infharm_core::mapspec::MapSpec;
use infharm_core::{format_rational, Cleared};

/// Hex SHA-256 of the canonical JSON form of a map.
pub fn map_digest(spec: &MapSpec) -> String {
    Sha256::digest(spec.to_json().to_string().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// An expression as display text plus a re-parseable numerator and divisor
/// factors with exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rendered {
    pub text: String,
    pub numerator: String,
    pub divisor: Vec<(String, u32)>,
}

impl Rendered {
    pub fn new(c: &Cleared) -> Self {
        let names = default_names(c.nvars());
        let (numerator, divisor) = c.render_parts(&names);
        Rendered { text: c.render(&names), numerator, divisor }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: Vec<String>,
    pub component: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub harmonic: bool,
    pub theorem: String,
    pub classification: String,
    /// Residuals that do not vanish, as `name = value`.
    pub nonzero_residuals: Vec<String>,
    pub notes: Vec<String>,
}

impl Prediction {
    pub fn new(v: &Verdict) -> Self {
        Prediction {
            harmonic: v.harmonic,
            theorem: v.theorem.to_string(),
            classification: v.tag.to_string(),
            nonzero_residuals: v.residuals.iter().filter(|r| !r.value.is_zero()).map(|r| format!("{} = {}", r.name, r.value)).collect(),
            notes: v.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub domain: String,
    pub codomain: String,
    pub map: serde_json::Value,
    pub map_digest: String,
    pub mode: String,
    pub energy_density: Option<Rendered>,
    pub tension: Vec<Rendered>,
    pub harmonic: bool,
    pub witness: Option<Witness>,
    pub predicted: Option<Prediction>,
    pub agree: Option<bool>,
    pub seed: Option<u64>,
    pub timing_ms: u64,
}

pub fn witness(v: &TensionVerdict) -> Option<Witness> {
    match v {
        TensionVerdict::Zero => None,
        TensionVerdict::NonZero { witness, component, value } => {
            Some(Witness { point: witness.iter().map(format_rational).collect(), component: *component, value: *value })
        }
    }
}

pub fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Exact => "exact",
        Mode::NumericSampled => "numeric",
    }
}

impl RunReport {
    pub fn tension_parts(direct: &TensionReport) -> (Option<Rendered>, Vec<Rendered>) {
        (direct.energy_density.as_ref().map(Rendered::new), direct.infinity_tension.iter().map(Rendered::new).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremSummary {
    pub id: String,
    pub statement: String,
    pub trials: u64,
    pub agreements: u64,
    pub positives: u64,
    pub disagreements: Vec<String>,
}

impl TheoremSummary {
    pub fn new(r: &TheoremReport) -> Self {
        TheoremSummary {
            id: r.id.to_string(),
            statement: r.id.describe().to_string(),
            trials: r.trials,
            agreements: r.agreements(),
            positives: r.positives,
            disagreements: r.disagreements.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub command: Vec<String>,
    pub seed: u64,
    pub trials: u64,
    pub theorems: Vec<TheoremSummary>,
    pub total_disagreements: u64,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleEntry {
    pub trial: u64,
    pub theorem: String,
    pub predicted_harmonic: bool,
    pub map: serde_json::Value,
    pub witness: Option<Vec<String>>,
}

impl CounterexampleEntry {
    pub fn new(c: &Counterexample) -> Self {
        CounterexampleEntry {
            trial: c.trial,
            theorem: c.theorem.to_string(),
            predicted_harmonic: c.predicted_harmonic,
            map: c.spec.to_json(),
            witness: c.witness.as_ref().map(|w| w.iter().map(format_rational).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub command: Vec<String>,
    pub family: String,
    pub domain: String,
    pub codomain: String,
    pub trials: u64,
    pub seed: u64,
    pub predicted_harmonic: u64,
    pub counterexamples: Vec<CounterexampleEntry>,
    pub timing_ms: u64,
}

impl SearchReport {
    pub fn new(command: Vec<String>, domain: String, codomain: String, out: &SearchOutcome, timing_ms: u64) -> Self {
        SearchReport {
            command,
            family: out.family.to_string(),
            domain,
            codomain,
            trials: out.trials,
            seed: out.seed,
            predicted_harmonic: out.predicted_harmonic,
            counterexamples: out.counterexamples.iter().map(CounterexampleEntry::new).collect(),
            timing_ms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use infharm_core::calculus::infinity_tension;
    use infharm_core::spaces::ModelSpace;

    #[test]
    fn run_report_round_trips() {
        let (d, c) = (ModelSpace::parse("euclid:1").unwrap(), ModelSpace::parse("sphere:1").unwrap());
        let spec = MapSpec::from_json_str(r#"{"kind": "custom", "dim": 1, "components": ["x^2/3"]}"#).unwrap();
        let direct = infinity_tension(&d, &c, &spec).unwrap();
        let (energy_density, tension) = RunReport::tension_parts(&direct);
        let r = RunReport {
            command: vec!["check".into()],
            domain: "euclid:1".into(),
            codomain: "sphere:1".into(),
            map: spec.to_json(),
            map_digest: map_digest(&spec),
            mode: mode_name(direct.mode).into(),
            energy_density,
            tension,
            harmonic: direct.verdict.is_zero(),
            witness: witness(&direct.verdict),
            predicted: None,
            agree: None,
            seed: Some(7),
            timing_ms: 3,
        };
        let back: RunReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(r.witness.is_some());
    }

    #[test]
    fn digest_is_stable() {
        let a = MapSpec::from_json_str(r#"{"kind": "custom", "dim": 2, "components": ["y + x"]}"#).unwrap();
        let b = MapSpec::from_json_str(r#"{"kind": "custom", "dim": 2, "components": ["x + y"]}"#).unwrap();
        assert_eq!(map_digest(&a), map_digest(&b));
    }
}
