//! Text exports: canonical formula syntax and model-checker input.
//!
//! The SMV module is the universal model over every proposition of the
//! encoded problem: unconstrained Boolean variables, no transition
//! relation. The specification is the negated consistency goal, so the
//! requirements are consistent exactly when the model checker reports a
//! counterexample.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::abstraction::{mutex_pairs, EncodedProblem};
use crate::formula::{Atom, Formula, Ident};
use crate::syntax::to_canonical;

pub fn export_canonical(f: &Formula) -> String {
    to_canonical(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SmvVariant {
    /// Mutex clauses as `INVAR` constraints, `LTLSPEC !φ'`.
    Invar,
    /// Everything in the specification: `LTLSPEC !goal`.
    NoInvar,
}

impl SmvVariant {
    pub fn key(self) -> &'static str {
        match self {
            SmvVariant::Invar => "smv-invar",
            SmvVariant::NoInvar => "smv-noinvar",
        }
    }
}

const SMV_KEYWORDS: &[&str] = &[
    "A", "ABF", "ABG", "AF", "AG", "ASSIGN", "AX", "BU", "COMPASSION", "COMPUTE", "COMPWFF", "CONSTANTS",
    "CONSTARRAY", "CONSTRAINT", "CTLSPEC", "CTLWFF", "DEFINE", "E", "EBF", "EBG", "EF", "EG", "EX", "F", "FAIRNESS",
    "FALSE", "FROZENVAR", "FUN", "G", "H", "IN", "INIT", "INVAR", "INVARSPEC", "ISA", "IVAR", "JUSTICE", "LTLSPEC",
    "LTLWFF", "MAX", "MDEFINE", "MIN", "MIRROR", "MODULE", "NAME", "O", "PRED", "PREDICATES", "PSLSPEC", "PARSYNTH",
    "S", "SIMPWFF", "SPEC", "T", "TRANS", "TRUE", "U", "V", "VAR", "X", "Y", "Z", "array", "bool", "boolean", "case",
    "count", "esac", "extend", "in", "init", "integer", "mod", "next", "of", "process", "real", "resize", "self",
    "signed", "sizeof", "swconst", "toint", "union", "unsigned", "uwconst", "word", "word1", "xnor", "xor",
];

/// Deterministic SMV-safe names: keywords get a `_` suffix until unique.
fn smv_names(props: &BTreeSet<Ident>) -> BTreeMap<Ident, String> {
    let mut taken: BTreeSet<String> = props.iter().map(|p| p.to_string()).collect();
    let mut out = BTreeMap::new();
    for p in props {
        let mut name = p.to_string();
        if SMV_KEYWORDS.contains(&name.as_str()) {
            taken.remove(&name);
            while SMV_KEYWORDS.contains(&name.as_str()) || taken.contains(&name) {
                name.push('_');
            }
            taken.insert(name.clone());
        }
        out.insert(p.clone(), name);
    }
    out
}

fn smv_formula(out: &mut String, f: &Formula, names: &BTreeMap<Ident, String>) {
    let bin = |out: &mut String, op: &str, a: &Formula, b: &Formula| {
        out.push('(');
        smv_formula(out, a, names);
        let _ = write!(out, " {op} ");
        smv_formula(out, b, names);
        out.push(')');
    };
    match f {
        Formula::True => out.push_str("TRUE"),
        Formula::False => out.push_str("FALSE"),
        Formula::Atom(Atom::Prop(p)) => out.push_str(&names[p]),
        Formula::Atom(Atom::Constraint(c)) => panic!("constraint atom {c:?} in an encoded formula"),
        Formula::Not(a) => {
            out.push('!');
            smv_formula(out, a, names);
        }
        Formula::Next(a) | Formula::Eventually(a) | Formula::Always(a) => {
            out.push_str(match f {
                Formula::Next(_) => "X ",
                Formula::Eventually(_) => "F ",
                _ => "G ",
            });
            smv_formula(out, a, names);
        }
        Formula::And(a, b) => bin(out, "&", a, b),
        Formula::Or(a, b) => bin(out, "|", a, b),
        Formula::Implies(a, b) => bin(out, "->", a, b),
        Formula::Until(a, b) => bin(out, "U", a, b),
        Formula::Release(a, b) => bin(out, "V", a, b),
        Formula::WeakUntil(a, b) => {
            let rewritten = Formula::or(Formula::until((**a).clone(), (**b).clone()), Formula::always((**a).clone()));
            smv_formula(out, &rewritten, names);
        }
    }
}

/// Model-checker input for an encoded problem.
pub fn export_smv(p: &EncodedProblem, variant: SmvVariant) -> String {
    let mut props = p.goal.props();
    props.extend(p.thresholds.all_region_props());
    let names = smv_names(&props);
    let mut out = String::new();
    let _ = writeln!(out, "-- consistency check, {} encoding, {} mode", variant.key(), p.mode);
    let _ = writeln!(out, "-- requirements are consistent iff the specification has a counterexample");
    if names.iter().any(|(k, v)| k.as_str() != v) {
        out.push_str("-- name map:\n");
        for (k, v) in names.iter().filter(|(k, v)| k.as_str() != *v) {
            let _ = writeln!(out, "--   {k} -> {v}");
        }
    }
    out.push_str("MODULE main\n");
    if !names.is_empty() {
        out.push_str("VAR\n");
        for v in names.values() {
            let _ = writeln!(out, "  {v} : boolean;");
        }
    }
    let spec = match variant {
        SmvVariant::Invar => {
            for (a, b) in mutex_pairs(&p.thresholds) {
                let _ = writeln!(out, "INVAR !({} & {});", names[&a], names[&b]);
            }
            &p.phi_prime
        }
        SmvVariant::NoInvar => &p.goal,
    };
    out.push_str("LTLSPEC !");
    smv_formula(&mut out, spec, &names);
    out.push_str(";\n");
    out
}
