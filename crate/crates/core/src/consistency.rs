//! The whole pipeline: encode a document, decide the goal, map the witness
//! back to real values.

use crate::abstraction::{concretize, encode, ConcreteTrace, EncodedProblem, Mode};
use crate::error::{ConcretizeError, ConsistencyError};
use crate::psp::SpecDocument;
use crate::sat::checker::{check_sat, Budget, CheckVerdict};

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    pub problem: EncodedProblem,
    pub verdict: CheckVerdict,
    /// Concretized witness when the verdict is Sat. In implication mode the
    /// abstract witness may violate region exclusivity, reported as an error.
    pub concrete: Option<Result<ConcreteTrace, ConcretizeError>>,
}

pub fn check_document(spec: &SpecDocument, mode: Mode, budget: Budget) -> Result<ConsistencyReport, ConsistencyError> {
    let problem = encode(spec, mode)?;
    let verdict = check_sat(&problem.goal, budget)?;
    let concrete = verdict.witness.as_ref().map(|w| concretize(w, &problem.thresholds));
    Ok(ConsistencyReport { problem, verdict, concrete })
}
