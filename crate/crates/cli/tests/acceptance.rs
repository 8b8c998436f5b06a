//! End-to-end acceptance suite, one line per criterion.
//!
//! Run with `cargo test -p psp-cli --test acceptance`; the process exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use psp_core::abstraction::mutex_pairs;
use psp_core::catalog::placeholder_psp;
use psp_core::generator::random_formula;
use psp_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{what} took {:.1} s, limit {} s", took.as_secs_f64(), limit.as_secs()));
    }
    Ok(())
}

fn fixture_path(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", "fixtures", &format!("{name}.psp")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn response_mappings() -> Outcome {
    let start = Instant::now();
    let expected = [
        (ScopeKind::Globally, "G (p -> F s)"),
        (ScopeKind::Before, "F r -> ((p -> (!r U (s & !r))) U r)"),
        (ScopeKind::After, "G (q -> G (p -> F s))"),
        (ScopeKind::Between, "G ((q & !r & F r) -> ((p -> (!r U (s & !r))) U r))"),
        (ScopeKind::AfterUntil, "G ((q & !r) -> ((p -> (!r U (s & !r))) W r))"),
    ];
    for (scope, text) in expected {
        let got = instantiate(&placeholder_psp(BodyKind::Response, scope));
        let want = parse_formula(text).map_err(|e| e.to_string())?;
        ensure!(got == want, "{}: got `{got}`, want `{want}`", scope.name());
    }
    within(start, Duration::from_secs(1), "instantiation")?;
    Ok("Response matches all five scope mappings".into())
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let fx = load_fixture("eq1-worked-example").map_err(|e| e.to_string())?;
    let report = check_document(&fx.spec, Mode::Conjunction, Budget::default()).map_err(|e| e.to_string())?;
    let p = &report.problem;
    let v = Ident::new("v").unwrap();
    let ts: Vec<String> = p.thresholds.thresholds(&v).iter().map(|t| t.to_string()).collect();
    ensure!(ts == ["3.2", "5.0", "8.5"], "T_v = {ts:?}");

    let props = ["c1", "c2", "c3", "e1", "e2", "e3"];
    let name = |s: &str| format!("__psp_{}_v_{}", &s[..1], &s[1..]);
    let want: Vec<(String, String)> = props
        .iter()
        .enumerate()
        .flat_map(|(i, a)| props[i + 1..].iter().map(move |b| (name(a), name(b))))
        .collect();
    let got: Vec<(String, String)> = mutex_pairs(&p.thresholds).iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    ensure!(got == want, "mutex pairs {got:?}");
    ensure!(p.phi_m.conjuncts().len() == 15, "phi_M has {} conjuncts", p.phi_m.conjuncts().len());

    let conjuncts: Vec<String> = p.phi_prime.conjuncts().iter().map(|c| c.to_string()).collect();
    let want = [
        "G (__psp_c_v_1 | __psp_c_v_2 | __psp_e_v_1 | __psp_e_v_2)",
        "G (a -> F (__psp_c_v_1 | __psp_c_v_2 | __psp_c_v_3 | __psp_e_v_1 | __psp_e_v_2 | __psp_e_v_3))",
        "G (a -> G (!__psp_c_v_1 -> F z))",
    ];
    ensure!(conjuncts == want, "phi' conjuncts {conjuncts:?}");
    // v >= 3.2 is !(v < 3.2), and v < 3.2 is the single region c_1
    ensure!(conjuncts[2].contains("!__psp_c_v_1 ->") && !conjuncts[2].contains("__psp_e_v_1"), "third conjunct");

    ensure!(report.verdict.status == Status::Sat, "verdict {:?}", report.verdict.status);
    let trace = match &report.concrete {
        Some(Ok(t)) => t,
        other => return Err(format!("no concrete witness: {other:?}")),
    };
    for (i, r) in fx.spec.requirements.iter().enumerate() {
        ensure!(eval_concrete(&instantiate(r), trace), "witness violates R{}", i + 1);
    }
    within(start, Duration::from_secs(5), "worked example")?;
    Ok(format!("T_v = {{3.2, 5.0, 8.5}}, 15 mutex pairs, sat in {} states", report.verdict.stats.states))
}

fn random_corpus(n: usize) -> Vec<Formula> {
    let atoms: Vec<Formula> = ["a", "b", "c", "d", "e"].iter().map(|a| Formula::var(a)).collect();
    (0..n as u64)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xACCE);
            rng.set_stream(i);
            let k = rng.random_range(1..=5);
            let pool = &atoms[..k];
            if i % 3 == 0 {
                // conjunction of small pieces, 10 connectives in total
                let pieces = rng.random_range(2..=4);
                let mut left = 10 - (pieces - 1);
                let mut f = None;
                for j in 0..pieces {
                    let size = if j + 1 == pieces { left } else { rng.random_range(0..=left.min(4)) };
                    left -= size;
                    let g = random_formula(&mut rng, pool, size);
                    f = Some(match f {
                        None => g,
                        Some(acc) => Formula::and(acc, g),
                    });
                }
                f.unwrap()
            } else {
                let size = rng.random_range(0..=10);
                random_formula(&mut rng, pool, size)
            }
        })
        .collect()
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let corpus = random_corpus(500);
    let results: Vec<Result<Status, String>> = corpus
        .par_iter()
        .map(|f| {
            let v = check_sat(f, Budget::default()).map_err(|e| e.to_string())?;
            let b = brute_force_sat(f, 5, 5).map_err(|e| e.to_string())?;
            match v.status {
                Status::Sat => {
                    ensure!(b.is_sat(), "checker sat, oracle found nothing within (5,5): {f}");
                    ensure!(eval_trace(f, v.witness.as_ref().unwrap()).unwrap(), "bad witness for {f}");
                }
                Status::Unsat => ensure!(!b.is_sat(), "checker unsat, oracle found a lasso: {f}"),
                Status::Unknown => return Err(format!("budget exhausted on {f}")),
            }
            Ok(v.status)
        })
        .collect();
    let statuses: Vec<Status> = results.into_iter().collect::<Result<_, _>>()?;
    within(start, Duration::from_secs(60), "500 formulas")?;
    let sat = statuses.iter().filter(|s| **s == Status::Sat).count();
    Ok(format!("500 formulas agree ({sat} sat, {} unsat)", statuses.len() - sat))
}

fn equisatisfiability() -> Outcome {
    let start = Instant::now();
    let configs: Vec<GeneratorConfig> = (0..200u64)
        .map(|i| GeneratorConfig {
            n_req: 1 + (i % 6) as usize,
            n_vars: 1 + (i / 6 % 2) as usize,
            dom: 1 + (i / 12 % 2) as u32,
            seed: 1000 + i,
            ..Default::default()
        })
        .collect();
    let results: Vec<Result<Status, String>> = configs
        .par_iter()
        .map(|cfg| {
            let doc = generate(cfg).map_err(|e| e.to_string())?;
            let r = check_document(&doc, Mode::Conjunction, Budget::default()).map_err(|e| e.to_string())?;
            match r.verdict.status {
                Status::Sat => match &r.concrete {
                    Some(Ok(t)) => ensure!(eval_concrete(&r.problem.original, t), "seed {}: witness is not a model", cfg.seed),
                    other => return Err(format!("seed {}: {other:?}", cfg.seed)),
                },
                Status::Unsat => {
                    let b = brute_force_sat_regions(&r.problem.original, 4, 4).map_err(|e| e.to_string())?;
                    ensure!(!b.is_sat(), "seed {}: unsat but a region lasso exists", cfg.seed);
                }
                Status::Unknown => return Err(format!("seed {}: unknown", cfg.seed)),
            }
            Ok(r.verdict.status)
        })
        .collect();
    let statuses: Vec<Status> = results.into_iter().collect::<Result<_, _>>()?;
    within(start, Duration::from_secs(120), "200 specs")?;
    let sat = statuses.iter().filter(|s| **s == Status::Sat).count();
    Ok(format!("200 specs confirmed ({sat} sat, {} unsat)", statuses.len() - sat))
}

fn fault_detection() -> Outcome {
    let start = Instant::now();
    let mut states = BTreeMap::new();
    for (name, code) in [("robot-mini-base", 0), ("robot-mini-fault2", 1), ("robot-mini-fault6", 1)] {
        let out = Command::new(env!("CARGO_BIN_EXE_psp"))
            .args(["check", &fixture_path(name), "--json"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(out.status.code() == Some(code), "{name}: exit {:?}, want {code}", out.status.code());
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        states.insert(name, v["stats"]["states"].as_u64().unwrap_or(0));
    }
    let (f2, f6) = (states["robot-mini-fault2"], states["robot-mini-fault6"]);
    ensure!(f2 < f6, "explored states fault2 = {f2}, fault6 = {f6}");
    within(start, Duration::from_secs(30), "fixtures")?;
    Ok(format!("exit codes 0/1/1, states fault2 = {f2} < fault6 = {f6}"))
}

fn scalability() -> Outcome {
    let seeds: Vec<u64> = (0..10).collect();
    let rows: Vec<Result<(Status, f64), String>> = seeds
        .par_iter()
        .map(|&seed| {
            let doc = generate(&GeneratorConfig { seed, ..Default::default() }).map_err(|e| e.to_string())?;
            let text = render_document(&doc);
            let start = Instant::now();
            let parsed = parse_spec(&text).map_err(|e| e.to_string())?;
            let p = encode(&parsed, Mode::Conjunction).map_err(|e| e.to_string())?;
            let smv = export_smv(&p, SmvVariant::Invar);
            ensure!(smv.contains("LTLSPEC"), "seed {seed}: no LTLSPEC");
            within(start, Duration::from_secs(2), &format!("seed {seed} parse+encode+export"))?;
            let v = check_sat(&p.goal, Budget::default()).map_err(|e| e.to_string())?;
            Ok((v.status, v.stats.seconds))
        })
        .collect();
    let rows: Vec<(Status, f64)> = rows.into_iter().collect::<Result<_, _>>()?;
    let solved = rows.iter().filter(|(s, _)| *s != Status::Unknown).count();
    let slowest = rows.iter().map(|(_, t)| *t).fold(0.0, f64::max);
    ensure!(solved >= 7, "only {solved}/10 seeds decided");
    Ok(format!("{solved}/10 default specs decided, slowest {slowest:.1} s"))
}

fn generator_statistics() -> Outcome {
    let start = Instant::now();
    let cfg = GeneratorConfig { n_req: 10_000, seed: 7, ..Default::default() };
    let doc = generate(&cfg).map_err(|e| e.to_string())?;
    ensure!(doc == generate(&cfg).map_err(|e| e.to_string())?, "two runs differ");
    let n = doc.requirements.len() as f64;
    let mut bodies: BTreeMap<BodyKind, usize> = BTreeMap::new();
    let mut scopes: BTreeMap<ScopeKind, usize> = BTreeMap::new();
    for r in &doc.requirements {
        *bodies.entry(r.body.kind()).or_default() += 1;
        *scopes.entry(r.scope.kind()).or_default() += 1;
    }
    for (kind, p) in &cfg.body_probs {
        let freq = bodies.get(kind).copied().unwrap_or(0) as f64 / n;
        ensure!((freq - p).abs() <= 0.02, "{} frequency {freq:.4}", kind.name());
    }
    for kind in ScopeKind::ALL {
        let freq = scopes.get(&kind).copied().unwrap_or(0) as f64 / n;
        ensure!((freq - 0.2).abs() <= 0.02, "{} frequency {freq:.4}", kind.name());
    }
    ensure!(bodies.len() == cfg.body_probs.len(), "unexpected body kinds {:?}", bodies.keys());
    within(start, Duration::from_secs(30), "generator")?;
    Ok("10000 requirements within 0.02 of the configured frequencies".into())
}

fn mode_contrast() -> Outcome {
    let start = Instant::now();
    let fx = load_fixture("robot-mini-fault2").map_err(|e| e.to_string())?;
    let conj = check_document(&fx.spec, Mode::Conjunction, Budget::default()).map_err(|e| e.to_string())?;
    ensure!(conj.verdict.status == Status::Unsat, "conjunction verdict {:?}", conj.verdict.status);
    let imp = check_document(&fx.spec, Mode::Implication, Budget::default()).map_err(|e| e.to_string())?;
    ensure!(imp.verdict.status == Status::Sat, "implication verdict {:?}", imp.verdict.status);
    let err = match &imp.concrete {
        Some(Err(e @ ConcretizeError::MutexViolation { .. })) => e.to_string(),
        other => return Err(format!("expected a mutex violation, got {other:?}")),
    };
    within(start, Duration::from_secs(10), "mode contrast")?;
    Ok(format!("conj unsat, implication sat; {err}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Response mappings", response_mappings),
        ("worked example", worked_example),
        ("oracle agreement", oracle_agreement),
        ("equisatisfiability", equisatisfiability),
        ("fault detection", fault_detection),
        ("scalability smoke", scalability),
        ("generator statistics", generator_statistics),
        ("mode contrast", mode_contrast),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("[PASS] {} {name}: {msg} ({secs:.2} s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {} {name}: {msg} ({secs:.2} s)", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
