//! Consistency checking for property specification patterns with numeric
//! constraints: parse structured-English requirements, instantiate them as
//! LTL over constraint atoms, abstract thresholds into Boolean region
//! propositions and decide satisfiability with a built-in tableau checker.

pub mod abstraction;
pub mod catalog;
pub mod consistency;
pub mod error;
pub mod export;
pub mod fixtures;
pub mod formula;
pub mod generator;
pub mod parser;
pub mod psp;
pub mod sat;
pub mod syntax;
pub mod trace;

pub use abstraction::{
    collect_thresholds, concretize, encode, eval_concrete, ConcreteState, ConcreteTrace, EncodedProblem, Mode,
    ThresholdMap,
};
pub use catalog::{instantiate, render_catalog, template};
pub use consistency::{check_document, ConsistencyReport};
pub use error::{
    CheckError, ConcretizeError, ConsistencyError, Diagnostic, DiagnosticKind, EncodeError, EvalError, FixtureError,
    GeneratorError, SpecError, SyntaxError,
};
pub use export::{export_canonical, export_smv, SmvVariant};
pub use fixtures::{fixture_names, load_fixture, Fixture};
pub use formula::{ConstraintAtom, Formula, Ident, Relation};
pub use generator::{generate, GeneratorConfig};
pub use parser::{parse_requirement, parse_spec};
pub use psp::{render_document, Body, BodyKind, Psp, Scope, ScopeKind, SignalKind, SpecDocument};
pub use sat::brute::{brute_force_sat, brute_force_sat_regions, BruteResult};
pub use sat::checker::{check_sat, Budget, CheckStats, CheckVerdict, Status};
pub use syntax::{parse_formula, to_canonical};
pub use trace::{eval_trace, LassoTrace};
