//! Random requirement documents for benchmarking.
//!
//! Each requirement draws its own pseudo-random stream (ChaCha8 keyed by the
//! seed, stream number = requirement index), so output is reproducible on
//! every platform and requirement `i` does not depend on how many came
//! before it.

use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rust_decimal::Decimal;
use serde::Serialize;

use crate::error::GeneratorError;
use crate::formula::{Formula, Ident};
use crate::parser::{desugar, SurfaceRel};
use crate::psp::{Body, BodyKind, Psp, Scope, ScopeKind, SpecDocument, DEFAULT_BOUND};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorConfig {
    pub n_req: usize,
    pub scope_probs: BTreeMap<ScopeKind, f64>,
    pub body_probs: BTreeMap<BodyKind, f64>,
    pub n_vars: usize,
    /// Thresholds of each variable are drawn from `1..=dom`.
    pub dom: u32,
    pub seed: u64,
    /// Probability that a parameter is a Boolean signal rather than a
    /// constraint.
    pub bool_atom_ratio: f64,
}

/// Bodies enabled by default, each with probability 0.1.
pub const DEFAULT_BODIES: [BodyKind; 10] = [
    BodyKind::Absence,
    BodyKind::Universality,
    BodyKind::Existence,
    BodyKind::Precedence,
    BodyKind::Response,
    BodyKind::PrecedenceChain12,
    BodyKind::PrecedenceChain21,
    BodyKind::ResponseChain12,
    BodyKind::ResponseChain21,
    BodyKind::Invariant,
];

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            n_req: 60,
            scope_probs: ScopeKind::ALL.iter().map(|&s| (s, 0.2)).collect(),
            body_probs: DEFAULT_BODIES.iter().map(|&b| (b, 0.1)).collect(),
            n_vars: 20,
            dom: 4,
            seed: 0,
            bool_atom_ratio: 0.5,
        }
    }
}

fn check_distribution<K>(what: &'static str, probs: &BTreeMap<K, f64>) -> Result<(), GeneratorError> {
    for &value in probs.values() {
        if !(0.0..=1.0).contains(&value) {
            return Err(GeneratorError::BadProbability { what, value });
        }
    }
    let sum: f64 = probs.values().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(GeneratorError::BadDistribution { what, sum });
    }
    Ok(())
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), GeneratorError> {
        if self.n_req == 0 {
            return Err(GeneratorError::NotPositive("n_req"));
        }
        if self.n_vars == 0 {
            return Err(GeneratorError::NotPositive("n_vars"));
        }
        if self.dom == 0 {
            return Err(GeneratorError::NotPositive("dom"));
        }
        if !(0.0..=1.0).contains(&self.bool_atom_ratio) {
            return Err(GeneratorError::BadProbability { what: "bool_atom_ratio", value: self.bool_atom_ratio });
        }
        check_distribution("scope", &self.scope_probs)?;
        check_distribution("body", &self.body_probs)
    }
}

struct Sampler<'a> {
    cfg: &'a GeneratorConfig,
    scopes: Vec<ScopeKind>,
    scope_dist: WeightedIndex<f64>,
    bodies: Vec<BodyKind>,
    body_dist: WeightedIndex<f64>,
}

impl Sampler<'_> {
    fn atom(&self, rng: &mut ChaCha8Rng) -> Formula {
        let k = rng.random_range(0..self.cfg.n_vars);
        if rng.random_bool(self.cfg.bool_atom_ratio) {
            Formula::var(&format!("p{k}"))
        } else {
            let x = Ident::new(&format!("x{k}")).expect("generated name");
            let rel = SurfaceRel::ALL[rng.random_range(0..SurfaceRel::ALL.len())];
            let c = Decimal::from(rng.random_range(1..=self.cfg.dom));
            desugar(x, rel, c)
        }
    }

    fn requirement(&self, index: usize) -> Psp {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(index as u64);
        let scope_kind = self.scopes[self.scope_dist.sample(&mut rng)];
        let body_kind = self.bodies[self.body_dist.sample(&mut rng)];
        let scope = match scope_kind {
            ScopeKind::Globally => Scope::Globally,
            ScopeKind::Before => Scope::Before(self.atom(&mut rng)),
            ScopeKind::After => Scope::After(self.atom(&mut rng)),
            ScopeKind::Between => {
                let q = self.atom(&mut rng);
                Scope::Between(q, self.atom(&mut rng))
            }
            ScopeKind::AfterUntil => {
                let q = self.atom(&mut rng);
                Scope::AfterUntil(q, self.atom(&mut rng))
            }
        };
        let args = body_kind.placeholders().iter().map(|_| self.atom(&mut rng)).collect();
        Psp::new(scope, Body::from_parts(body_kind, args, DEFAULT_BOUND))
    }
}

fn weighted<K: Copy>(probs: &BTreeMap<K, f64>) -> (Vec<K>, WeightedIndex<f64>) {
    let keys = probs.keys().copied().collect();
    let dist = WeightedIndex::new(probs.values().copied()).expect("validated distribution");
    (keys, dist)
}

/// Generates a requirement document; Boolean signals are named `p<k>`,
/// numeric variables `x<k>`.
pub fn generate(cfg: &GeneratorConfig) -> Result<SpecDocument, GeneratorError> {
    cfg.validate()?;
    let (scopes, scope_dist) = weighted(&cfg.scope_probs);
    let (bodies, body_dist) = weighted(&cfg.body_probs);
    let sampler = Sampler { cfg, scopes, scope_dist, bodies, body_dist };
    let requirements = (0..cfg.n_req).map(|i| sampler.requirement(i)).collect();
    Ok(SpecDocument::from_requirements(requirements).expect("signal kinds are disjoint by name"))
}

/// A random formula over `atoms` with exactly `connectives` operators,
/// drawn uniformly from the unary `! X F G` and binary `& | -> U W R`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, atoms: &[Formula], connectives: usize) -> Formula {
    assert!(!atoms.is_empty(), "need at least one atom");
    if connectives == 0 {
        return atoms[rng.random_range(0..atoms.len())].clone();
    }
    let op = rng.random_range(0..10);
    if op < 4 {
        let a = random_formula(rng, atoms, connectives - 1);
        return match op {
            0 => Formula::not(a),
            1 => Formula::next(a),
            2 => Formula::eventually(a),
            _ => Formula::always(a),
        };
    }
    let left = rng.random_range(0..connectives);
    let a = random_formula(rng, atoms, left);
    let b = random_formula(rng, atoms, connectives - 1 - left);
    match op {
        4 => Formula::and(a, b),
        5 => Formula::or(a, b),
        6 => Formula::implies(a, b),
        7 => Formula::until(a, b),
        8 => Formula::weak_until(a, b),
        _ => Formula::release(a, b),
    }
}
