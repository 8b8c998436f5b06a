use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psp_core::abstraction::{abstract_formula, mutex_formula};
use psp_core::psp::render_expr;
use psp_core::*;
use rayon::prelude::*;

mod report;

const EXIT_SAT: u8 = 0;
const EXIT_UNSAT: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "psp", version, about = "Consistency checking for property specification patterns with numeric constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a requirement file is consistent.
    Check(CheckArgs),
    /// Print the Boolean encoding of a requirement file.
    Encode(EncodeArgs),
    /// Emit a random requirement file.
    Generate(GenArgs),
    /// Show the pattern catalog or how one requirement is translated.
    Explain(ExplainArgs),
    /// Generate and check a batch of random specifications in parallel.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Conj,
    Implication,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Conj => Mode::Conjunction,
            ModeArg::Implication => Mode::Implication,
        }
    }
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, value_enum, default_value = "conj")]
    mode: ModeArg,
    #[arg(long, default_value_t = 1_000_000)]
    budget_states: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, env = "PSP_BUDGET_SECS", default_value_t = 600.0)]
    budget_secs: f64,
    /// Print a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Canonical,
    SmvInvar,
    SmvNoinvar,
}

#[derive(Args)]
struct EncodeArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "canonical")]
    format: Format,
    #[arg(long, value_enum, default_value = "conj")]
    mode: ModeArg,
}

#[derive(Args, Clone)]
struct GenArgs {
    #[arg(long, default_value_t = 60)]
    n_req: usize,
    #[arg(long, default_value_t = 20)]
    n_vars: usize,
    #[arg(long, default_value_t = 4)]
    dom: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    bool_atom_ratio: f64,
    /// `scope=probability`, repeatable; replaces the uniform default.
    #[arg(long = "scope-prob", value_name = "SCOPE=P")]
    scope_probs: Vec<String>,
    /// `body=probability`, repeatable; replaces the default body set.
    #[arg(long = "body-prob", value_name = "BODY=P")]
    body_probs: Vec<String>,
    /// Prefix the output with the resolved configuration as a JSON comment.
    #[arg(long)]
    emit_config: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExplainArgs {
    #[arg(long)]
    catalog: bool,
    #[arg(long)]
    requirement: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    first_seed: u64,
    #[command(flatten)]
    generator: GenArgs,
    #[command(flatten)]
    budget: BudgetArgs,
}

type CliResult = Result<u8, String>;

fn parse_probs<K: Ord>(
    entries: &[String],
    key: impl Fn(&str) -> Option<K>,
    what: &str,
) -> Result<Option<std::collections::BTreeMap<K, f64>>, String> {
    if entries.is_empty() {
        return Ok(None);
    }
    let mut out = std::collections::BTreeMap::new();
    for e in entries {
        let (k, v) = e.split_once('=').ok_or_else(|| format!("expected {what}=probability, got `{e}`"))?;
        let k = key(k.trim()).ok_or_else(|| format!("unknown {what} `{k}`"))?;
        let v: f64 = v.trim().parse().map_err(|_| format!("bad probability in `{e}`"))?;
        out.insert(k, v);
    }
    Ok(Some(out))
}

impl GenArgs {
    fn config(&self) -> Result<GeneratorConfig, String> {
        let mut cfg = GeneratorConfig {
            n_req: self.n_req,
            n_vars: self.n_vars,
            dom: self.dom,
            seed: self.seed,
            bool_atom_ratio: self.bool_atom_ratio,
            ..Default::default()
        };
        if let Some(p) = parse_probs(&self.scope_probs, ScopeKind::from_key, "scope")? {
            cfg.scope_probs = p;
        }
        if let Some(p) = parse_probs(&self.body_probs, BodyKind::from_key, "body")? {
            cfg.body_probs = p;
        }
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget, String> {
        Budget::new(self.budget_states, self.budget_secs).map_err(|e| e.to_string())
    }
}

fn read_spec(path: &PathBuf) -> Result<SpecDocument, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_spec(&text).map_err(|e| format!("{}:\n{e}", path.display()))
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::Sat => EXIT_SAT,
        Status::Unsat => EXIT_UNSAT,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn cmd_check(args: &CheckArgs) -> CliResult {
    let spec = read_spec(&args.file)?;
    let budget = args.budget.budget()?;
    let mode = Mode::from(args.budget.mode);
    let report = check_document(&spec, mode, budget).map_err(|e| e.to_string())?;
    if args.budget.json {
        println!("{}", report::json(&report));
    } else {
        print!("{}", report::text(&spec, &report));
    }
    Ok(exit_for(report.verdict.status))
}

fn cmd_encode(args: &EncodeArgs) -> CliResult {
    let spec = read_spec(&args.file)?;
    let p = encode(&spec, args.mode.into()).map_err(|e| e.to_string())?;
    match args.format {
        Format::Canonical => {
            println!("# thresholds");
            for line in p.thresholds.to_string().lines() {
                println!("#   {line}");
            }
            println!("{}", export_canonical(&p.goal));
        }
        Format::SmvInvar => print!("{}", export_smv(&p, SmvVariant::Invar)),
        Format::SmvNoinvar => print!("{}", export_smv(&p, SmvVariant::NoInvar)),
    }
    Ok(EXIT_SAT)
}

fn cmd_generate(args: &GenArgs) -> CliResult {
    let cfg = args.config()?;
    let doc = generate(&cfg).map_err(|e| e.to_string())?;
    if args.emit_config {
        println!("# config: {}", serde_json::to_string(&cfg).expect("serializable config"));
    }
    print!("{}", render_document(&doc));
    Ok(EXIT_SAT)
}

fn cmd_explain(args: &ExplainArgs) -> CliResult {
    let Some(text) = &args.requirement else {
        print!("{}", render_catalog());
        return Ok(EXIT_SAT);
    };
    let psp = parse_requirement(text).map_err(|e| e.to_string())?;
    println!("pattern:      {} / {}", psp.body.kind().name(), psp.scope.kind().name());
    let (q, r) = psp.scope.delimiters();
    for (name, f) in [("Q", q), ("R", r)] {
        if let Some(f) = f {
            println!("  {name} = {}", render_expr(f));
        }
    }
    for (c, f) in psp.body.kind().placeholders().iter().zip(psp.body.args()) {
        println!("  {c} = {}", render_expr(f));
    }
    if let Some(k) = psp.body.bound() {
        println!("  k = {k}");
    }
    let f = instantiate(&psp);
    println!("instantiated: {f}");
    let tm = collect_thresholds([&f]);
    if !tm.is_empty() {
        for line in tm.to_string().lines() {
            println!("thresholds:   {line}");
        }
    }
    let abs = abstract_formula(&f, &tm).map_err(|e| e.to_string())?;
    println!("abstracted:   {abs}");
    let m = mutex_formula(&tm);
    if m != Formula::True {
        println!("mutex:        {m}");
    }
    Ok(EXIT_SAT)
}

fn cmd_bench(args: &BenchArgs) -> CliResult {
    let budget = args.budget.budget()?;
    let mode = Mode::from(args.budget.mode);
    let base = args.generator.config()?;
    let seeds: Vec<u64> = (args.first_seed..args.first_seed + args.seeds).collect();
    let rows: Vec<Result<(u64, ConsistencyReport), String>> = seeds
        .par_iter()
        .map(|&seed| {
            let doc = generate(&GeneratorConfig { seed, ..base.clone() }).map_err(|e| e.to_string())?;
            let r = check_document(&doc, mode, budget).map_err(|e| e.to_string())?;
            Ok((seed, r))
        })
        .collect();
    let rows: Vec<(u64, ConsistencyReport)> = rows.into_iter().collect::<Result<_, _>>()?;
    if args.budget.json {
        let out: Vec<_> = rows
            .iter()
            .map(|(seed, r)| {
                serde_json::json!({
                    "seed": seed,
                    "verdict": r.verdict.status.key(),
                    "states": r.verdict.stats.states,
                    "seconds": r.verdict.stats.seconds,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        for (seed, r) in &rows {
            let s = &r.verdict.stats;
            println!("seed {seed:>4}  {:<7}  states {:>8}  {:>9.3}s", r.verdict.status.key(), s.states, s.seconds);
        }
        let solved = rows.iter().filter(|(_, r)| r.verdict.status != Status::Unknown).count();
        println!("solved {solved}/{}", rows.len());
    }
    Ok(EXIT_SAT)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_SAT });
        }
    };
    let result = match &cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Encode(a) => cmd_encode(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Explain(a) => cmd_explain(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
