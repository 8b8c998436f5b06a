//! Shared inputs for the benchmarks.

use psp_core::{generate, load_fixture, GeneratorConfig, SpecDocument};

pub const FIXTURES: [&str; 4] = ["eq1-worked-example", "robot-mini-base", "robot-mini-fault2", "robot-mini-fault6"];

pub fn fixture_spec(name: &str) -> SpecDocument {
    load_fixture(name).expect("bundled fixture").spec
}

/// A generated document with default probabilities and the given size.
pub fn generated(seed: u64, n_req: usize, n_vars: usize) -> SpecDocument {
    generate(&GeneratorConfig { n_req, n_vars, seed, ..Default::default() }).expect("valid config")
}
