use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cubic_dm::cli::{
    boundary_divisors, field_to_json, line_points_to_json, parse_config, parse_field_arg, plane_points_to_json,
    report_text, run_suite, CliError, ConfigFile, Suite, TrialPlan,
};
use cubic_dm::cremona::{geometric_swap, swap_word, SwapSet};
use cubic_dm::dm::{collision_stratum, descendants, format_weights, stability, P1Config, WeightVector};
use cubic_dm::phi::{classify, fiber_orbit, phi67, phi67_on_conic, PlaneConfig, StratumClass};

#[derive(Parser)]
#[command(name = "cubic-dm", version, about = "Six points in the plane and weighted points on the line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Io {
    /// Configuration file (JSON).
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Stratum of a plane configuration, stability of a line configuration.
    Classify(Io),
    /// Seven points on the line attached to a plane configuration.
    Phi(Io),
    /// The sixteen configurations with the same image.
    Fiber(Io),
    /// Cremona word realizing a swap set, optionally applied to a configuration.
    Swap {
        #[arg(long)]
        set: String,
        #[arg(short = 'i', long = "input")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight vectors obtained by merging points.
    Descendants {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The boundary divisor census.
    Boundary {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "prime:2147483647")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

fn plane_of(cfg: &ConfigFile) -> Result<&PlaneConfig, CliError> {
    cfg.plane_config.as_ref().ok_or_else(|| CliError::Parse { context: "plane_config".into(), message: "missing".into() })
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn stratum_json(class: &StratumClass) -> Value {
    match class {
        StratumClass::CollinearThrough6(pair) => json!({ "stratum": class.name(), "pair": pair }),
        StratumClass::Excluded(reason) => json!({ "stratum": class.name(), "reason": reason }),
        _ => json!({ "stratum": class.name() }),
    }
}

fn line_summary(cfg: &P1Config) -> Value {
    json!({
        "stability": stability(cfg).as_str(),
        "merged": format_weights(&collision_stratum(cfg).merged),
    })
}

fn classify_cmd(cfg: &ConfigFile) -> Result<Value, CliError> {
    let mut out = match &cfg.plane_config {
        Some(pc) => stratum_json(&classify(pc)),
        None => json!({}),
    };
    match &cfg.p1_config {
        Some(p1) => out["p1_config"] = line_summary(p1),
        None if cfg.plane_config.is_none() => {
            return Err(CliError::Parse { context: "$".into(), message: "no configuration given".into() })
        }
        None => {}
    }
    Ok(out)
}

fn phi_cmd(cfg: &ConfigFile) -> Result<Value, CliError> {
    let pc = plane_of(cfg)?;
    let class = classify(pc);
    let mut out = stratum_json(&class);
    let line = match class {
        StratumClass::OnConic => {
            let p1 = phi67_on_conic(pc).map_err(domain)?;
            out["points"] = line_points_to_json(p1.points());
            p1
        }
        _ => {
            let img = phi67(pc).map_err(domain)?;
            out["ordered"] = line_points_to_json(&img.ordered);
            out["pair"] = line_points_to_json(&img.pair);
            img.to_p1_config().map_err(domain)?
        }
    };
    out["weights"] = json!(line.weights().to_string());
    out["field"] = field_to_json(&cfg.field);
    out["line"] = line_summary(&line);
    Ok(out)
}

fn fiber_cmd(cfg: &ConfigFile) -> Result<Value, CliError> {
    let orbit = fiber_orbit(plane_of(cfg)?).map_err(domain)?;
    let members: Vec<Value> = orbit
        .iter()
        .map(|(s, m)| json!({ "swap": s.to_string(), "points": plane_points_to_json(m.points()) }))
        .collect();
    Ok(json!({ "size": orbit.len(), "members": members }))
}

fn swap_cmd(set: &str, input: Option<&Path>) -> Result<Value, CliError> {
    let s: SwapSet = set.parse().map_err(|e| CliError::Parse { context: "--set".into(), message: format!("{e}") })?;
    let mut out = json!({ "set": s.to_string(), "word": swap_word(s).to_string() });
    if let Some(path) = input {
        let cfg = read_config(path)?;
        let image = geometric_swap(plane_of(&cfg)?, s).map_err(domain)?;
        out["points"] = plane_points_to_json(image.points());
    }
    Ok(out)
}

fn descendants_cmd(mu: &str, points: usize) -> Result<Value, CliError> {
    let mu: WeightVector = mu.parse().map_err(|e| CliError::Parse { context: "--mu".into(), message: format!("{e}") })?;
    let found: Vec<String> = descendants(&mu, points).iter().map(ToString::to_string).collect();
    Ok(json!({ "mu": mu.to_string(), "points": points, "count": found.len(), "descendants": found }))
}

fn boundary_cmd() -> Value {
    let census = boundary_divisors();
    let [a, b, c, d] = census.class_counts();
    let orbits: Vec<Vec<String>> =
        census.orbits.iter().map(|o| o.iter().map(|&k| census.labels[k].to_string()).collect()).collect();
    json!({
        "count": census.labels.len(),
        "classes": { "A": a, "B": b, "C": c, "D": d },
        "labels": census.labels.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "orbits": orbits,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn error_kind(e: &CliError) -> &'static str {
    match e {
        CliError::Parse { .. } => "ParseError",
        CliError::ExhaustedRetries(_) => "ExhaustedRetries",
        CliError::UnknownSuite(_) => "UnknownSuite",
        CliError::InvalidPlan(_) => "InvalidPlan",
        CliError::Io(_) => "IoError",
        CliError::Domain(_) => "DomainError",
    }
}

/// Exit status 0 or 1 on success.
fn run(cli: Cli) -> Result<u8, CliError> {
    let (value, out) = match cli.command {
        Command::Classify(io) => (classify_cmd(&read_config(&io.input)?)?, io.out),
        Command::Phi(io) => (phi_cmd(&read_config(&io.input)?)?, io.out),
        Command::Fiber(io) => (fiber_cmd(&read_config(&io.input)?)?, io.out),
        Command::Swap { set, input, out } => (swap_cmd(&set, input.as_deref())?, out),
        Command::Descendants { mu, points, out } => (descendants_cmd(&mu, points)?, out),
        Command::Boundary { out } => (boundary_cmd(), out),
        Command::Verify { suite, trials, seed, field, out } => {
            let suite: Suite = suite.parse()?;
            let plan = TrialPlan::new(suite, trials, seed, parse_field_arg(&field)?)?;
            let report = run_suite(&plan);
            emit(&report_text(&report), out.as_deref())?;
            return Ok(if report.ok() { 0 } else { 1 });
        }
    };
    emit(&pretty(&value), out.as_deref())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = json!({ "error": { "kind": "UsageError", "message": e.render().to_string() } });
            print!("{}", pretty(&err));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let err = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
            print!("{}", pretty(&err));
            ExitCode::from(2)
        }
    }
}
