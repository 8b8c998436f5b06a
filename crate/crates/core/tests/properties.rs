use std::collections::BTreeSet;

use proptest::prelude::*;
use psp_core::abstraction::{abstract_formula, mutex_formula, mutex_pairs, region_of, Region};
use psp_core::catalog::placeholder_psp;
use psp_core::generator::random_formula;
use psp_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rust_decimal::Decimal;

fn atoms(names: &[&str]) -> Vec<Formula> {
    names.iter().map(|n| Formula::var(n)).collect()
}

fn formula(names: &'static [&'static str], max_conn: usize) -> impl Strategy<Value = Formula> {
    (any::<u64>(), 0..=max_conn)
        .prop_map(move |(seed, n)| random_formula(&mut ChaCha8Rng::seed_from_u64(seed), &atoms(names), n))
}

fn lasso(names: &'static [&'static str], max_prefix: usize, max_loop: usize) -> impl Strategy<Value = LassoTrace> {
    let state = proptest::sample::subsequence(names.to_vec(), 0..=names.len())
        .prop_map(|s| s.into_iter().map(|n| Ident::any(n).unwrap()).collect::<BTreeSet<_>>());
    (proptest::collection::vec(state.clone(), 0..=max_prefix), proptest::collection::vec(state, 1..=max_loop))
        .prop_map(|(prefix, loop_)| LassoTrace::new(prefix, loop_).unwrap())
}

const ABC: &[&str] = &["a", "b", "c"];
const FIVE: &[&str] = &["a", "b", "c", "d", "e"];

fn d(s: &str) -> Decimal {
    s.parse().unwrap()
}

proptest! {
    #[test]
    fn nnf_preserves_semantics(f in formula(ABC, 10), t in lasso(ABC, 3, 3)) {
        prop_assert_eq!(eval_trace(&f, &t).unwrap(), eval_trace(&f.to_nnf(), &t).unwrap());
    }

    #[test]
    fn unrolling_is_invisible(f in formula(ABC, 10), t in lasso(ABC, 3, 3)) {
        prop_assert_eq!(eval_trace(&f, &t).unwrap(), eval_trace(&f, &t.unrolled()).unwrap());
    }

    #[test]
    fn always_and_eventually_not_is_false(t in lasso(ABC, 3, 3)) {
        prop_assert!(!eval_trace(&parse_formula("G a & F !a").unwrap(), &t).unwrap());
    }

    #[test]
    fn canonical_round_trip(f in formula(FIVE, 12)) {
        prop_assert_eq!(parse_formula(&export_canonical(&f)).unwrap(), f);
    }

    #[test]
    fn canonical_round_trip_with_constraints(seed in any::<u64>(), n in 0..10usize) {
        let pool = vec![
            Formula::var("a"),
            parse_formula("v < 3.25").unwrap(),
            parse_formula("v = 3.25").unwrap(),
            parse_formula("w < -1").unwrap(),
        ];
        let f = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), &pool, n);
        prop_assert_eq!(parse_formula(&export_canonical(&f)).unwrap(), f);
    }

    #[test]
    fn generated_documents_round_trip(seed in any::<u64>(), n_req in 1..20usize, n_vars in 1..5usize, dom in 1..5u32) {
        let cfg = GeneratorConfig { n_req, n_vars, dom, seed, ..Default::default() };
        let doc = generate(&cfg).unwrap();
        prop_assert_eq!(&doc, &generate(&cfg).unwrap());
        for r in &doc.requirements {
            prop_assert_eq!(&parse_requirement(&r.to_string()).unwrap(), r);
        }
        let tm = collect_thresholds(doc.requirements.iter().flat_map(|r| r.parameters()));
        prop_assert!(tm.variables().count() <= n_vars);
        for (_, ts) in tm.iter() {
            prop_assert!(ts.len() <= dom as usize);
        }
    }

    #[test]
    fn after_scope_is_vacuous_when_never_opened(t in lasso(&["p", "s", "t", "z", "r"], 3, 3)) {
        for body in BodyKind::ALL {
            let f = instantiate(&placeholder_psp(body, ScopeKind::After));
            prop_assert!(eval_trace(&f, &t).unwrap(), "{:?}", body);
        }
    }

    // With q at step 0 and r never, Between has nothing to enforce while
    // After-until behaves like After.
    #[test]
    fn between_and_after_until_without_closing_delimiter(t in lasso(&["p", "s", "q"], 3, 3)) {
        let mut t = t;
        let q = Ident::any("q").unwrap();
        match t.prefix.first_mut() {
            Some(s) => { s.insert(q); }
            None => { t.prefix.push([q].into()); }
        }
        for body in [BodyKind::Absence, BodyKind::Universality, BodyKind::Response] {
            let eval = |scope| eval_trace(&instantiate(&placeholder_psp(body, scope)), &t).unwrap();
            prop_assert!(eval(ScopeKind::Between));
            prop_assert_eq!(eval(ScopeKind::AfterUntil), eval(ScopeKind::After));
        }
    }

    #[test]
    fn abstraction_agrees_with_regions(
        raw in proptest::collection::btree_set(-20i32..20, 1..5),
        value in -25i32..25,
        half in any::<bool>(),
    ) {
        let ts: Vec<Decimal> = raw.iter().map(|&t| Decimal::from(t)).collect();
        let v = Decimal::from(value) + if half { d("0.5") } else { Decimal::ZERO };
        let x = Ident::new("x").unwrap();
        let mut tm = ThresholdMap::default();
        for &t in &ts {
            tm.insert(x.clone(), t);
        }
        // exactly one region, and the region propositions agree with it
        let held: Vec<bool> = (1..=ts.len())
            .flat_map(|j| {
                let below = v < ts[j - 1] && (j == 1 || v > ts[j - 2]);
                [below, v == ts[j - 1]]
            })
            .collect();
        let above = v > *ts.last().unwrap();
        prop_assert_eq!(held.iter().filter(|b| **b).count() + above as usize, 1);
        prop_assert_eq!(matches!(region_of(&ts, v), Region::Above), above);
        let state: BTreeSet<Ident> = tm.region_prop(&x, v).into_iter().collect();
        let trace = LassoTrace::new(vec![], vec![state]).unwrap();
        for &t in &ts {
            for rel in [Relation::Lt, Relation::Eq] {
                let atom = Formula::constraint(x.clone(), rel, t);
                let abs = abstract_formula(&atom, &tm).unwrap();
                prop_assert_eq!(eval_trace(&abs, &trace).unwrap(), rel.holds(v, t));
            }
        }
        let n = ts.len();
        prop_assert_eq!(mutex_pairs(&tm).len(), n * (2 * n - 1));
        prop_assert_eq!(mutex_formula(&tm).conjuncts().len(), n * (2 * n - 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn checker_agrees_with_bounded_oracle(f in formula(FIVE, 10)) {
        let v = check_sat(&f, Budget::default()).unwrap();
        let b = brute_force_sat(&f, 5, 5).unwrap();
        match v.status {
            Status::Sat => {
                prop_assert!(eval_trace(&f, v.witness.as_ref().unwrap()).unwrap());
                prop_assert!(b.is_sat());
            }
            Status::Unsat => prop_assert_eq!(b, BruteResult::NoLassoFound),
            Status::Unknown => prop_assert!(false, "budget exhausted on {}", f),
        }
    }

    #[test]
    fn checker_is_deterministic(f in formula(FIVE, 10)) {
        let a = check_sat(&f, Budget::default()).unwrap();
        let b = check_sat(&f, Budget::default()).unwrap();
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.witness, b.witness);
        prop_assert_eq!(a.stats.states, b.stats.states);
    }

    #[test]
    fn duality(f in formula(ABC, 8)) {
        let pos = check_sat(&f, Budget::default()).unwrap().status;
        let neg = check_sat(&Formula::not(f.clone()).to_nnf(), Budget::default()).unwrap().status;
        prop_assert!(pos == Status::Sat || neg == Status::Sat);
        if pos == Status::Unsat {
            prop_assert_eq!(neg, Status::Sat);
        }
    }

    #[test]
    fn witnesses_concretize_to_models(seed in any::<u64>(), n_req in 1..=6usize, n_vars in 1..=2usize, dom in 1..=2u32) {
        let doc = generate(&GeneratorConfig { n_req, n_vars, dom, seed, ..Default::default() }).unwrap();
        let report = check_document(&doc, Mode::Conjunction, Budget::default()).unwrap();
        match report.verdict.status {
            Status::Sat => {
                let trace = report.concrete.unwrap().unwrap();
                prop_assert!(eval_concrete(&report.problem.original, &trace));
            }
            Status::Unsat => {
                let b = brute_force_sat_regions(&report.problem.original, 3, 3).unwrap();
                prop_assert_eq!(b, BruteResult::NoLassoFound);
            }
            Status::Unknown => prop_assert!(false),
        }
    }

    #[test]
    fn region_oracle_finds_models_of_small_specs(seed in any::<u64>(), n_req in 1..=4usize) {
        let cfg = GeneratorConfig { n_req, n_vars: 1, dom: 2, seed, ..Default::default() };
        let doc = generate(&cfg).unwrap();
        let report = check_document(&doc, Mode::Conjunction, Budget::default()).unwrap();
        let b = brute_force_sat_regions(&report.problem.original, 4, 4).unwrap();
        prop_assert_eq!(report.verdict.status == Status::Sat, b.is_sat());
    }

    #[test]
    fn tautologies_with_fresh_thresholds_are_irrelevant(seed in any::<u64>(), n_req in 1..=6usize) {
        let doc = generate(&GeneratorConfig { n_req, n_vars: 2, dom: 2, seed, ..Default::default() }).unwrap();
        let mut text = render_document(&doc);
        text.push_str("Globally, it is always the case that x0 < 7.5 or x0 >= 7.5 holds.\n");
        let padded = parse_spec(&text).unwrap();
        let a = check_document(&doc, Mode::Conjunction, Budget::default()).unwrap();
        let b = check_document(&padded, Mode::Conjunction, Budget::default()).unwrap();
        prop_assert_eq!(a.verdict.status, b.verdict.status);
    }

    #[test]
    fn smv_specification_negates_the_goal(seed in any::<u64>(), n_req in 1..=8usize) {
        let doc = generate(&GeneratorConfig { n_req, n_vars: 3, dom: 3, seed, ..Default::default() }).unwrap();
        let p = encode(&doc, Mode::Conjunction).unwrap();
        for variant in [SmvVariant::Invar, SmvVariant::NoInvar] {
            let text = export_smv(&p, variant);
            let specs: Vec<&str> = text.lines().filter(|l| l.starts_with("LTLSPEC ")).collect();
            prop_assert_eq!(specs.len(), 1);
            prop_assert!(specs[0].starts_with("LTLSPEC !"));
            let invars = text.lines().filter(|l| l.starts_with("INVAR ")).count();
            let expected = if variant == SmvVariant::Invar { mutex_pairs(&p.thresholds).len() } else { 0 };
            prop_assert_eq!(invars, expected);
        }
    }
}

#[test]
fn surface_relations_point_checks() {
    let t = d("5.0");
    for (op, truth) in [
        ("<", (|a: Decimal, b: Decimal| a < b) as fn(Decimal, Decimal) -> bool),
        ("<=", |a, b| a <= b),
        ("=", |a, b| a == b),
        ("!=", |a, b| a != b),
        (">", |a, b| a > b),
        (">=", |a, b| a >= b),
    ] {
        let psp = parse_requirement(&format!("Globally, it is always the case that v {op} 5.0 holds.")).unwrap();
        let atom = psp.body.args()[0].clone();
        for v in ["-3", "4.9", "4.99", "5", "5.0", "5.00", "5.01", "6", "100"] {
            let trace = ConcreteTrace {
                prefix: vec![],
                loop_: vec![ConcreteState { booleans: Default::default(), numerics: [(Ident::new("v").unwrap(), d(v))].into() }],
            };
            assert_eq!(eval_concrete(&atom, &trace), truth(d(v), t), "v = {v}, relation {op}");
        }
    }
}
