use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use abclosure::abelian::{
    balance_coefficient_window, corridor_profile, frequency_bounds_from_profile,
    shortest_unbalanced_pair_window, window_weights, Verdict,
};
use abclosure::family::{construct_family, verify_distinct, FamilyConfig};
use abclosure::structure::{rauzy_graph, word_graph};
use abclosure::suites::{run_suite, SuiteOptions};
use abclosure::transforms::flip::flipping_family;
use abclosure::transforms::squeeze::{squeeze, SqueezeMode, SqueezeParams};
use abclosure::transforms::traffic::{traffic_f_spec, traffic_t_spec, PREIMAGE_CAP};
use abclosure::transforms::BinaryMorphism;
use abclosure::{Error, FiniteWord, InfiniteWordSpec, QuadraticNumber, Slope};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "abclosure", version, about = "Abelian closures of infinite binary words")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on exhaustive searches.
    #[arg(long, global = true, env = "ABCLOSURE_CAP", default_value_t = PREIMAGE_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
    /// Graphviz, for `rauzy:<n>` only.
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Upper,
    TwoSided,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a prefix of a word.
    Gen {
        spec: String,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Corridor, complexities, balance, graphs and frequency bounds.
    Analyze {
        spec: String,
        /// corridor | complexity | abelian-complexity | balance | graph | rauzy:<n> | frequency
        #[arg(long)]
        what: String,
        #[arg(long, default_value_t = 64)]
        window: usize,
        /// Sampled prefix length; defaults to 16 times the window.
        #[arg(long)]
        sample: Option<usize>,
        /// Tolerance for `frequency`.
        #[arg(long, default_value = "1/100")]
        tolerance: String,
    },
    /// Apply T, F, a squeeze, a morphism or a flip family.
    Transform {
        spec: String,
        /// T | F | squeeze | morph:<rules> | flip-family:<k>:<bits>
        #[arg(long)]
        op: String,
        /// Squeeze slope; defaults to the word's letter frequency.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long = "C", default_value = "0")]
        c: String,
        #[arg(long, value_enum, default_value_t = Mode::Upper)]
        mode: Mode,
        #[arg(long)]
        length: usize,
    },
    /// Run a named property suite.
    Verify {
        lemma: String,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value_t = 256)]
        window: usize,
    },
    /// Build the family of minimal subshifts from a seed and check distinctness.
    Family {
        seed_spec: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 100_000)]
        window: usize,
    },
}

/// Exit status of a command that ran to completion.
enum Outcome {
    Pass,
    Refuted,
    Resource,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Refuted) => ExitCode::from(1),
        Ok(Outcome::Resource) => ExitCode::from(3),
        Err(e) => {
            if cli.format == Format::Json {
                let diag = json!({
                    "schema_version": SCHEMA_VERSION,
                    "error": { "kind": error_kind(&e), "message": e.to_string() },
                });
                eprintln!("{diag}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Config(_) => "config",
        Error::Domain(_) => "domain",
        Error::Range(_) => "range",
        Error::Resource { .. } => "resource",
        Error::BoundaryUndetermined { .. } => "boundary-undetermined",
        Error::InsufficientOccurrences(_) => "insufficient-occurrences",
        Error::NotApplicable(_) => "not-applicable",
        Error::Io(_) => "io",
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } | Error::BoundaryUndetermined { .. } | Error::InsufficientOccurrences(_) => 3,
        _ => 2,
    }
}

fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn emit(text: &str) -> abclosure::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))
}

fn emit_json(command: &str, result: impl Serialize) -> abclosure::Result<()> {
    let doc = json!({ "schema_version": SCHEMA_VERSION, "command": command, "result": result });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Io(e.to_string()))?;
    emit(&format!("{text}\n"))
}

fn tsv<R: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: R) -> String {
    let mut s = header.join("\t");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join("\t"));
        s.push('\n');
    }
    s
}

fn require_tsv_or_json(format: Format) -> abclosure::Result<()> {
    if format == Format::Dot {
        return Err(config("--format dot applies only to analyze --what rauzy:<n>"));
    }
    Ok(())
}

fn run(cli: &Cli) -> abclosure::Result<Outcome> {
    match &cli.command {
        Command::Gen { spec, length, out } => {
            require_tsv_or_json(cli.format)?;
            let s: InfiniteWordSpec = spec.parse()?;
            let u = s.prefix(*length)?;
            if let Some(path) = out {
                fs::write(path, format!("{u}\n")).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            } else if cli.format == Format::Json {
                emit_json("gen", json!({ "spec": s.to_string(), "length": length, "word": u }))?;
            } else {
                emit(&format!("{u}\n"))?;
            }
            Ok(Outcome::Pass)
        }
        Command::Analyze { spec, what, window, sample, tolerance } => {
            let s: InfiniteWordSpec = spec.parse()?;
            analyze(cli.format, &s, what, *window, sample.unwrap_or(16 * window), tolerance)
        }
        Command::Transform { spec, op, alpha, c, mode, length } => {
            require_tsv_or_json(cli.format)?;
            let s: InfiniteWordSpec = spec.parse()?;
            let u = transform(&s, op, alpha.as_deref(), c, *mode, *length)?;
            if cli.format == Format::Json {
                emit_json("transform", json!({ "spec": s.to_string(), "op": op, "length": length, "word": u }))?;
            } else {
                emit(&format!("{u}\n"))?;
            }
            Ok(Outcome::Pass)
        }
        Command::Verify { lemma, spec, window } => {
            require_tsv_or_json(cli.format)?;
            let spec = spec.as_deref().map(str::parse::<InfiniteWordSpec>).transpose()?;
            let opts = SuiteOptions { spec, window: *window, seed: cli.seed, cap: cli.cap };
            let report = run_suite(lemma, &opts)?;
            if cli.format == Format::Json {
                emit_json("verify", &report)?;
            } else {
                let verdict = if report.passed { "pass" } else { "fail" };
                let mut text = format!(
                    "{}\t{verdict}\tcases={}\tfailures={}\tseed={}\twindow={}\n",
                    report.id,
                    report.cases,
                    report.failures.len(),
                    report.seed,
                    report.window
                );
                for f in &report.failures {
                    text.push_str(&format!("failure\t{f}\n"));
                }
                for n in &report.notes {
                    text.push_str(&format!("note\t{n}\n"));
                }
                emit(&text)?;
            }
            Ok(if report.passed { Outcome::Pass } else { Outcome::Refuted })
        }
        Command::Family { seed_spec, depth, window } => {
            require_tsv_or_json(cli.format)?;
            family(cli.format, &seed_spec.parse()?, *depth, *window)
        }
    }
}

fn analyze(
    format: Format,
    s: &InfiniteWordSpec,
    what: &str,
    window: usize,
    sample: usize,
    tolerance: &str,
) -> abclosure::Result<Outcome> {
    if window == 0 {
        return Err(config("--window must be positive"));
    }
    if let Some(order) = what.strip_prefix("rauzy:") {
        let n: usize = order.parse().map_err(|_| config(format!("invalid Rauzy order {order:?}")))?;
        let g = rauzy_graph(s, n, sample)?;
        match format {
            Format::Json => emit_json("analyze", json!({ "spec": s.to_string(), "what": what, "graph": g }))?,
            Format::Dot => emit(&g.to_dot())?,
            Format::Tsv => emit(&tsv(
                &["from", "to", "label"],
                g.edges.iter().map(|e| vec![g.vertices[e.from].to_string(), g.vertices[e.to].to_string(), e.label.to_string()]),
            ))?,
        }
        return Ok(Outcome::Pass);
    }
    require_tsv_or_json(format)?;
    let (body, value): (String, Value) = match what {
        "corridor" => {
            let p = corridor_profile(s, window, sample)?;
            (p.to_tsv(), serde_json::to_value(&p).map_err(|e| Error::Io(e.to_string()))?)
        }
        "complexity" | "abelian-complexity" => {
            if sample < 2 * window {
                return Err(config(format!("sample {sample} must be at least twice the window {window}")));
            }
            let u = s.prefix(sample)?;
            let abelian = what == "abelian-complexity";
            let rows: Vec<(usize, usize)> = (1..=window)
                .map(|n| (n, if abelian { window_weights(&u, n).len() } else { u.factor_count(n) }))
                .collect();
            let head = if abelian { "rho_ab" } else { "rho" };
            (
                tsv(&["n", head], rows.iter().map(|(n, r)| vec![n.to_string(), r.to_string()])),
                json!({ "sample": sample, "rows": rows }),
            )
        }
        "balance" => {
            if sample < 2 * window {
                return Err(config(format!("sample {sample} must be at least twice the window {window}")));
            }
            let u = s.prefix(sample)?;
            let b = balance_coefficient_window(&u, window);
            let pair = shortest_unbalanced_pair_window(&u, window);
            let mut text = format!("balance\t{b}\n");
            if let Some(p) = &pair {
                let core = if p.core.is_empty() { "ε".to_string() } else { p.core.to_string() };
                text.push_str(&format!("unbalanced_length\t{}\nunbalanced_core\t{core}\n", p.length));
            }
            (text, json!({ "sample": sample, "balance": b, "shortest_unbalanced_pair": pair }))
        }
        "graph" => {
            let g = word_graph(s, window)?;
            (g.to_tsv(), serde_json::to_value(&g).map_err(|e| Error::Io(e.to_string()))?)
        }
        "frequency" => {
            let tol: Ratio<u64> = tolerance.parse().map_err(|_| config(format!("invalid tolerance {tolerance:?}")))?;
            let p = corridor_profile(s, window, sample)?;
            let fb = frequency_bounds_from_profile(&p, tol);
            let mut text = tsv(
                &["n", "lower", "upper"],
                fb.per_window.iter().map(|(n, lo, hi)| vec![n.to_string(), lo.to_string(), hi.to_string()]),
            );
            text.push_str(&format!(
                "# lower {} upper {} uniform_frequency_plausible {}\n",
                fb.lower, fb.upper, fb.uniform_frequency_plausible
            ));
            if let Some(alpha) = s.letter_frequency() {
                text.push_str(&format!("# frequency {alpha} bracketed {}\n", fb.brackets(&alpha)));
            }
            (text, serde_json::to_value(&fb).map_err(|e| Error::Io(e.to_string()))?)
        }
        other => return Err(config(format!("unknown analysis {other:?}"))),
    };
    if format == Format::Json {
        emit_json("analyze", json!({ "spec": s.to_string(), "what": what, "window": window, "data": value }))?;
    } else {
        emit(&body)?;
    }
    Ok(Outcome::Pass)
}

fn transform(
    s: &InfiniteWordSpec,
    op: &str,
    alpha: Option<&str>,
    c: &str,
    mode: Mode,
    n: usize,
) -> abclosure::Result<FiniteWord> {
    match op {
        "T" => traffic_t_spec(s, n),
        "F" => traffic_f_spec(s, n),
        "squeeze" => {
            let alpha = match alpha {
                Some(a) => a.parse::<Slope>()?,
                None => Slope::new(
                    s.letter_frequency()
                        .ok_or_else(|| config(format!("{s} has no known letter frequency; pass --alpha")))?,
                )?,
            };
            let mode = match mode {
                Mode::Upper => SqueezeMode::Upper,
                Mode::TwoSided => SqueezeMode::TwoSided,
            };
            squeeze(s, &SqueezeParams::new(alpha, c.parse::<QuadraticNumber>()?, mode)?, n)
        }
        _ => {
            if let Some(rules) = op.strip_prefix("morph:") {
                let f: BinaryMorphism = rules.parse()?;
                let src = s.prefix(f.source_len_for(n)?)?;
                f.apply_prefix(&src, n)
            } else if let Some(rest) = op.strip_prefix("flip-family:") {
                let (k, bits) = rest.split_once(':').ok_or_else(|| config("flip-family expects <k>:<bits>"))?;
                let k: usize = k.parse().map_err(|_| config(format!("invalid flip level {k:?}")))?;
                let InfiniteWordSpec::Directive(dir) = s else {
                    return Err(config(format!("flip-family needs a directive-sequence word, got {s}")));
                };
                flipping_family(dir, k, &bits.parse()?, n)
            } else {
                Err(config(format!("unknown transform {op:?}")))
            }
        }
    }
}

fn family(format: Format, seed: &InfiniteWordSpec, depth: usize, window: usize) -> abclosure::Result<Outcome> {
    let run = construct_family(seed, &FamilyConfig::new(depth, window))?;
    let report = if run.stages.len() >= 2 { Some(verify_distinct(&run.stages)?) } else { None };
    let seed_ok = run.stages.iter().all(|s| s.seed_membership.verdict == Verdict::Consistent);
    let chain_ok = run
        .stages
        .iter()
        .all(|s| s.chain_membership.as_ref().is_none_or(|c| c.verdict == Verdict::Consistent));
    let identities_ok = run.stages.iter().all(|s| s.length_identity);
    let distinct_ok = report.as_ref().is_none_or(|r| r.all_distinct && r.growth.iter().all(|&g| g));
    if format == Format::Json {
        emit_json("family", json!({ "run": run, "distinctness": report }))?;
    } else {
        let verdict = |v: Verdict| if v == Verdict::Consistent { "consistent" } else { "refuted" };
        let mut text = tsv(
            &["stage", "pair_length", "phi", "shift_offset", "exchanged", "length_identity", "seed", "chain"],
            run.stages.iter().map(|s| {
                vec![
                    s.index.to_string(),
                    s.pair_length.to_string(),
                    s.phi.to_string(),
                    s.shift_offset.to_string(),
                    s.exchanged.to_string(),
                    s.length_identity.to_string(),
                    verdict(s.seed_membership.verdict).to_string(),
                    s.chain_membership.as_ref().map_or("-".to_string(), |c| verdict(c.verdict).to_string()),
                ]
            }),
        );
        if let Some(r) = &report {
            text.push_str(&format!("# all_distinct {}\n", r.all_distinct));
            for p in &r.pairs {
                text.push_str(&format!("# stages {} {}: {:?} at length {}\n", p.m, p.n, p.verdict, p.length));
            }
        }
        if let Some(f) = &run.failure {
            text.push_str(&format!("# stage {} failed: {} ({})\n", f.stage, f.hypothesis, f.detail));
        }
        emit(&text)?;
    }
    Ok(if run.failure.is_some() {
        Outcome::Resource
    } else if seed_ok && chain_ok && identities_ok && distinct_ok {
        Outcome::Pass
    } else {
        Outcome::Refuted
    })
}
