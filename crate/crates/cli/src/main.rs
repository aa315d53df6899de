//! `infharm`: check maps for ∞-harmonicity, print energy densities and
//! tension fields, and run the seeded theorem campaigns.
//!
//! Exit codes: 0 harmonic or verified, 1 not harmonic or a disagreement was
//! found, 2 usage or input error.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use infharm_core::calculus::{self, Mode, TensionReport};
use infharm_core::classify::{self, Family, TheoremId, ALL_THEOREMS};
use infharm_core::mapspec::MapSpec;
use infharm_core::spaces::{catalog, ModelSpace};
use infharm_core::Error;

use report::{map_digest, mode_name, witness, Prediction, RunReport, SearchReport, SuiteReport, TheoremSummary};

const THEOREM_HELP: &str = "Theorem ids: all, L2.1, T2.2, T2.3, L3.1, T3.2, T3.3, T4.1, T5.1, T5.2, T6.1, T6.2, T7.1, T7.2, T8.1, T8.3, PHM, LEM1.1";

#[derive(Parser)]
#[command(name = "infharm", version, about = "Exact checks of infinity-harmonic maps between model spaces", after_help = THEOREM_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a map is infinity-harmonic (exit 0) or not (exit 1).
    Check(CheckArgs),
    /// Print the energy density |dphi|^2.
    Energy(MapArgs),
    /// Print the infinity-tension components and the verdict.
    Tension(MapArgs),
    /// Run seeded theorem campaigns.
    #[command(after_help = THEOREM_HELP)]
    Suite(SuiteArgs),
    /// Search for maps on which a theorem's criterion and the direct computation disagree.
    Search(SearchArgs),
    /// List the catalog of model spaces.
    Spaces,
}

#[derive(Args)]
struct MapArgs {
    /// Domain space label, e.g. euclid:3, nil, sol, sphere:2, complex:1.
    #[arg(long)]
    domain: String,
    /// Codomain space label.
    #[arg(long)]
    codomain: String,
    /// Map document (JSON).
    #[arg(long)]
    map: PathBuf,
    /// Zero-pad the map's components up to the codomain dimension.
    #[arg(long)]
    pad: bool,
    /// Write the JSON report here ("-" for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Exact symbolic verdict (numeric fallback when needed) or sampled only.
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
}

#[derive(Args)]
struct SuiteArgs {
    /// Theorem id or "all".
    #[arg(long, default_value = "all")]
    theorem: String,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long, env = "IH_SEED")]
    seed: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// linear, quadratic or holomorphic.
    #[arg(long)]
    family: String,
    #[arg(long)]
    domain: String,
    #[arg(long)]
    codomain: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, env = "IH_SEED")]
    seed: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Failure of a command: a message and the exit code to report.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<bool, Failure>;

fn argv() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn space(label: &str, role: &str) -> Result<ModelSpace, Failure> {
    ModelSpace::parse(label).map_err(|e| Failure(format!("{role}: {e}")))
}

fn load_map(path: &Path, pad_to: Option<usize>) -> Result<MapSpec, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let spec = MapSpec::from_json_str(&src).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    match pad_to {
        Some(n) => spec.padded(n).map_err(|e| Failure(format!("{}: {e}", path.display()))),
        None => Ok(spec),
    }
}

struct Loaded {
    domain: ModelSpace,
    codomain: ModelSpace,
    spec: MapSpec,
}

fn load(args: &MapArgs) -> Result<Loaded, Failure> {
    let domain = space(&args.domain, "domain")?;
    let codomain = space(&args.codomain, "codomain")?;
    let spec = load_map(&args.map, args.pad.then(|| codomain.dim()))?;
    if spec.domain_dim() != domain.dim() || spec.codomain_dim() != codomain.dim() {
        return Err(Failure(format!(
            "{}: map is R^{} -> R^{}, spaces have dimensions {} and {}",
            args.map.display(),
            spec.domain_dim(),
            spec.codomain_dim(),
            domain.dim(),
            codomain.dim()
        )));
    }
    Ok(Loaded { domain, codomain, spec })
}

fn write_json<T: Serialize>(target: Option<&PathBuf>, value: &T) -> Result<bool, Failure> {
    let Some(path) = target else { return Ok(false) };
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure(e.to_string()))?;
    if path.as_os_str() == "-" {
        println!("{text}");
        return Ok(true);
    }
    std::fs::write(path, text + "\n").map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    Ok(false)
}

fn build_report(args: &MapArgs, l: &Loaded, direct: &TensionReport, predicted: Option<&classify::Verdict>, t: Instant) -> RunReport {
    let (energy_density, tension) = RunReport::tension_parts(direct);
    let harmonic = direct.verdict.is_zero();
    RunReport {
        command: argv(),
        domain: args.domain.clone(),
        codomain: args.codomain.clone(),
        map: l.spec.to_json(),
        map_digest: map_digest(&l.spec),
        mode: mode_name(direct.mode).into(),
        energy_density,
        tension,
        harmonic,
        witness: witness(&direct.verdict),
        predicted: predicted.map(Prediction::new),
        agree: predicted.map(|p| p.harmonic == harmonic),
        seed: None,
        timing_ms: elapsed_ms(t),
    }
}

fn print_summary(r: &RunReport) {
    if let Some(e) = &r.energy_density {
        println!("energy density: {}", e.text);
    }
    for (k, c) in r.tension.iter().enumerate() {
        println!("tension[{}]: {}", k + 1, c.text);
    }
    println!("mode: {}", r.mode);
    match &r.witness {
        None => println!("verdict: infinity-harmonic"),
        Some(w) => println!("verdict: not infinity-harmonic; component {} = {:e} at ({})", w.component + 1, w.value, w.point.join(", ")),
    }
    if let Some(p) = &r.predicted {
        let agree = if r.agree == Some(true) { "agrees" } else { "DISAGREES" };
        println!("predicted ({}): harmonic={} {} [{agree}]", p.theorem, p.harmonic, p.classification);
        for note in &p.notes {
            println!("note: {note}");
        }
    }
}

fn cmd_check(args: &CheckArgs) -> CmdResult {
    let t = Instant::now();
    let l = load(&args.map)?;
    let direct = match args.mode {
        ModeArg::Exact => calculus::infinity_tension(&l.domain, &l.codomain, &l.spec)?,
        ModeArg::Numeric => TensionReport {
            energy_density: None,
            infinity_tension: Vec::new(),
            verdict: calculus::numeric_tension_verdict(&l.domain, &l.codomain, &l.spec)?,
            mode: Mode::NumericSampled,
        },
    };
    let predicted = match classify::predict(&l.domain, &l.codomain, &l.spec) {
        Ok(v) => Some(v),
        Err(Error::UnsupportedPair(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let r = build_report(&args.map, &l, &direct, predicted.as_ref(), t);
    if !write_json(args.map.json.as_ref(), &r)? {
        print_summary(&r);
    }
    Ok(r.harmonic)
}

fn cmd_energy(args: &MapArgs) -> CmdResult {
    let t = Instant::now();
    let l = load(args)?;
    let e = calculus::energy_density(&l.domain, &l.codomain, &l.spec)?;
    let direct = TensionReport {
        energy_density: Some(e),
        infinity_tension: Vec::new(),
        verdict: calculus::TensionVerdict::Zero,
        mode: Mode::Exact,
    };
    let mut r = build_report(args, &l, &direct, None, t);
    r.witness = None;
    if !write_json(args.json.as_ref(), &r)? {
        println!("{}", r.energy_density.as_ref().map_or("", |e| e.text.as_str()));
    }
    Ok(true)
}

fn cmd_tension(args: &MapArgs) -> CmdResult {
    let t = Instant::now();
    let l = load(args)?;
    let direct = calculus::infinity_tension(&l.domain, &l.codomain, &l.spec)?;
    let r = build_report(args, &l, &direct, None, t);
    if !write_json(args.json.as_ref(), &r)? {
        print_summary(&r);
    }
    Ok(true)
}

fn cmd_suite(args: &SuiteArgs) -> CmdResult {
    let t = Instant::now();
    let ids: Vec<TheoremId> = if args.theorem.eq_ignore_ascii_case("all") {
        ALL_THEOREMS.to_vec()
    } else {
        vec![args.theorem.parse::<TheoremId>()?]
    };
    let mut theorems = Vec::new();
    for id in ids {
        let r = classify::run_theorem(id, args.trials, args.seed)?;
        theorems.push(TheoremSummary::new(&r));
    }
    let total: u64 = theorems.iter().map(|s| s.disagreements.len() as u64).sum();
    let report = SuiteReport { command: argv(), seed: args.seed, trials: args.trials, theorems, total_disagreements: total, timing_ms: elapsed_ms(t) };
    if !write_json(args.json.as_ref(), &report)? {
        for s in &report.theorems {
            let status = if s.disagreements.is_empty() { "ok" } else { "FAIL" };
            println!("{:<7} {status:<4} {}/{} agree, {} positive  {}", s.id, s.agreements, s.trials, s.positives, s.statement);
            for d in s.disagreements.iter().take(5) {
                println!("        {d}");
            }
        }
        println!("disagreements: {total}");
    }
    Ok(total == 0)
}

fn cmd_search(args: &SearchArgs) -> CmdResult {
    let t = Instant::now();
    let family: Family = args.family.parse()?;
    let domain = space(&args.domain, "domain")?;
    let codomain = space(&args.codomain, "codomain")?;
    let out = classify::falsify_search(family, &domain, &codomain, args.trials, args.seed)?;
    let report = SearchReport::new(argv(), args.domain.clone(), args.codomain.clone(), &out, elapsed_ms(t));
    if !write_json(args.json.as_ref(), &report)? {
        println!(
            "{} {} -> {}: {} trials, {} predicted harmonic, {} counterexamples",
            report.family,
            report.domain,
            report.codomain,
            report.trials,
            report.predicted_harmonic,
            report.counterexamples.len()
        );
        for c in report.counterexamples.iter().take(10) {
            println!("  trial {} ({}): predicted harmonic={} map={}", c.trial, c.theorem, c.predicted_harmonic, c.map);
        }
    }
    Ok(out.survived())
}

fn cmd_spaces() -> CmdResult {
    for (name, description) in catalog() {
        println!("{name:<28} {description}");
    }
    Ok(true)
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Energy(a) => cmd_energy(a),
        Command::Tension(a) => cmd_tension(a),
        Command::Suite(a) => cmd_suite(a),
        Command::Search(a) => cmd_search(a),
        Command::Spaces => cmd_spaces(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    // a closed stdout (e.g. `| head`) ends the run quietly; other panics are
    // reported in one line
    std::panic::set_hook(Box::new(|info| {
        let msg = info.payload().downcast_ref::<String>().map(String::as_str).or_else(|| info.payload().downcast_ref::<&str>().copied());
        match msg {
            Some(m) if m.contains("Broken pipe") => {}
            Some(m) => eprintln!("error: internal: {m}"),
            None => eprintln!("error: internal failure"),
        }
    }));
    match std::panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(true)) => ExitCode::SUCCESS,
        Ok(Ok(false)) => ExitCode::from(1),
        Ok(Err(Failure(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn theorem_help_lists_every_id() {
        for id in ALL_THEOREMS {
            assert!(THEOREM_HELP.contains(id.as_str()), "{id}");
        }
    }
}
