//! Temporal formula representation shared by every stage of the pipeline.
//!
//! The same [`Formula`] type carries both LTL with numeric constraint atoms
//! (as produced by pattern instantiation) and pure propositional LTL (as
//! produced by the threshold abstraction). [`Formula::is_pure_boolean`]
//! distinguishes the two.

use std::collections::BTreeSet;
use std::fmt;

use rust_decimal::Decimal;
use serde::Serialize;

use crate::error::IdentError;

/// Prefix reserved for generated region propositions.
pub const RESERVED_PREFIX: &str = "__psp_";

/// A signal or variable name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Ident(String);

impl Ident {
    /// Validates a user-facing identifier. Names starting with
    /// [`RESERVED_PREFIX`] are rejected.
    pub fn new(name: &str) -> Result<Self, IdentError> {
        let ident = Self::any(name)?;
        if name.starts_with(RESERVED_PREFIX) {
            return Err(IdentError::Reserved(name.to_string()));
        }
        Ok(ident)
    }

    /// Validates the lexical shape only; generated names are allowed.
    pub fn any(name: &str) -> Result<Self, IdentError> {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(IdentError::Malformed(name.to_string())),
        }
        if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(IdentError::Malformed(name.to_string()));
        }
        if FORMULA_KEYWORDS.contains(&name) {
            return Err(IdentError::Keyword(name.to_string()));
        }
        Ok(Ident(name.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_generated(&self) -> bool {
        self.0.starts_with(RESERVED_PREFIX)
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Canonical relations. Surface forms (`<=`, `>`, `>=`, `!=`) are desugared
/// by the requirement parser and never reach this type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Relation {
    Lt,
    Eq,
}

impl Relation {
    pub fn holds(self, value: Decimal, threshold: Decimal) -> bool {
        match self {
            Relation::Lt => value < threshold,
            Relation::Eq => value == threshold,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Eq => "=",
        }
    }
}

/// `variable <relation> threshold`.
///
/// Thresholds compare and hash by numeric value, so `5.0` and `5.00` are
/// the same atom. The written scale is kept for display.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstraintAtom {
    pub variable: Ident,
    pub relation: Relation,
    threshold: Decimal,
}

impl ConstraintAtom {
    pub fn new(variable: Ident, relation: Relation, threshold: Decimal) -> Self {
        ConstraintAtom { variable, relation, threshold }
    }

    pub fn threshold(&self) -> Decimal {
        self.threshold
    }

    pub fn holds(&self, value: Decimal) -> bool {
        self.relation.holds(value, self.threshold)
    }
}

/// Renders a decimal the way thresholds appear in requirement files.
pub fn format_decimal(d: Decimal) -> String {
    d.to_string()
}

/// Words that are operators in the canonical formula syntax.
pub const FORMULA_KEYWORDS: [&str; 8] = ["X", "F", "G", "U", "W", "R", "true", "false"];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Prop(Ident),
    Constraint(ConstraintAtom),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    False,
    True,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    WeakUntil(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    Eventually(Box<Formula>),
    Always(Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn prop(name: Ident) -> Self {
        Atom(crate::formula::Atom::Prop(name))
    }

    /// Convenience for tests and generated names; panics on malformed input.
    pub fn var(name: &str) -> Self {
        Self::prop(Ident::any(name).expect("malformed identifier"))
    }

    pub fn constraint(variable: Ident, relation: Relation, threshold: Decimal) -> Self {
        Atom(crate::formula::Atom::Constraint(ConstraintAtom::new(variable, relation, threshold)))
    }

    pub fn not(f: Formula) -> Self {
        Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Self {
        And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Self {
        Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Self {
        Implies(Box::new(a), Box::new(b))
    }
    pub fn next(f: Formula) -> Self {
        Next(Box::new(f))
    }
    pub fn until(a: Formula, b: Formula) -> Self {
        Until(Box::new(a), Box::new(b))
    }
    pub fn weak_until(a: Formula, b: Formula) -> Self {
        WeakUntil(Box::new(a), Box::new(b))
    }
    pub fn release(a: Formula, b: Formula) -> Self {
        Release(Box::new(a), Box::new(b))
    }
    pub fn eventually(f: Formula) -> Self {
        Eventually(Box::new(f))
    }
    pub fn always(f: Formula) -> Self {
        Always(Box::new(f))
    }

    /// Right-associated conjunction; `True` for an empty input.
    pub fn conjunction<I>(items: I) -> Self
    where
        I: IntoIterator<Item = Formula>,
        I::IntoIter: DoubleEndedIterator,
    {
        let mut iter = items.into_iter().rev();
        match iter.next() {
            None => True,
            Some(last) => iter.fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    /// Right-associated disjunction; `False` for an empty input.
    pub fn disjunction<I>(items: I) -> Self
    where
        I: IntoIterator<Item = Formula>,
        I::IntoIter: DoubleEndedIterator,
    {
        let mut iter = items.into_iter().rev();
        match iter.next() {
            None => False,
            Some(last) => iter.fold(last, |acc, f| Formula::or(f, acc)),
        }
    }

    /// True iff no constraint atom occurs anywhere in the formula.
    pub fn is_pure_boolean(&self) -> bool {
        let mut pure = true;
        self.visit(&mut |f| {
            if let Atom(crate::formula::Atom::Constraint(_)) = f {
                pure = false;
            }
        });
        pure
    }

    /// True iff the formula has no temporal operator.
    pub fn is_propositional(&self) -> bool {
        let mut prop = true;
        self.visit(&mut |f| {
            if matches!(
                f,
                Next(_) | Until(..) | WeakUntil(..) | Release(..) | Eventually(_) | Always(_)
            ) {
                prop = false;
            }
        });
        prop
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        match self {
            False | True | Atom(_) => {}
            Not(a) | Next(a) | Eventually(a) | Always(a) => a.visit(f),
            And(a, b) | Or(a, b) | Implies(a, b) | Until(a, b) | WeakUntil(a, b) | Release(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Rebuilds the formula bottom-up, replacing atoms through `f`.
    pub fn map_atoms<F: FnMut(&crate::formula::Atom) -> Formula>(&self, f: &mut F) -> Formula {
        match self {
            False => False,
            True => True,
            Atom(a) => f(a),
            Not(a) => Formula::not(a.map_atoms(f)),
            Next(a) => Formula::next(a.map_atoms(f)),
            Eventually(a) => Formula::eventually(a.map_atoms(f)),
            Always(a) => Formula::always(a.map_atoms(f)),
            And(a, b) => Formula::and(a.map_atoms(f), b.map_atoms(f)),
            Or(a, b) => Formula::or(a.map_atoms(f), b.map_atoms(f)),
            Implies(a, b) => Formula::implies(a.map_atoms(f), b.map_atoms(f)),
            Until(a, b) => Formula::until(a.map_atoms(f), b.map_atoms(f)),
            WeakUntil(a, b) => Formula::weak_until(a.map_atoms(f), b.map_atoms(f)),
            Release(a, b) => Formula::release(a.map_atoms(f), b.map_atoms(f)),
        }
    }

    /// Boolean proposition names, sorted.
    pub fn props(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Atom(crate::formula::Atom::Prop(p)) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Constraint atoms in pre-order, duplicates included.
    pub fn constraints(&self) -> Vec<ConstraintAtom> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Atom(crate::formula::Atom::Constraint(c)) = f {
                out.push(c.clone());
            }
        });
        out
    }

    /// Number of operator nodes (atoms and constants excluded).
    pub fn connectives(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| {
            if !matches!(f, True | False | Atom(_)) {
                n += 1;
            }
        });
        n
    }

    /// Negation normal form: negations only directly above atoms, and only
    /// `And`, `Or`, `Next`, `Until` and `Release` as connectives.
    pub fn to_nnf(&self) -> Formula {
        nnf(self, false)
    }

    /// Top-level conjuncts of a right- or left-nested conjunction.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                And(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                other => out.push(other),
            }
        }
        out
    }
}

/// Free-function form of [`Formula::to_nnf`].
pub fn to_nnf(f: &Formula) -> Formula {
    f.to_nnf()
}

fn nnf(f: &Formula, neg: bool) -> Formula {
    match (f, neg) {
        (True, false) | (False, true) => True,
        (False, false) | (True, true) => False,
        (Atom(a), false) => Atom(a.clone()),
        (Atom(a), true) => Formula::not(Atom(a.clone())),
        (Not(a), _) => nnf(a, !neg),
        (And(a, b), false) | (Or(a, b), true) => Formula::and(nnf(a, neg), nnf(b, neg)),
        (Or(a, b), false) | (And(a, b), true) => Formula::or(nnf(a, neg), nnf(b, neg)),
        (Implies(a, b), false) => Formula::or(nnf(a, true), nnf(b, false)),
        (Implies(a, b), true) => Formula::and(nnf(a, false), nnf(b, true)),
        (Next(a), _) => Formula::next(nnf(a, neg)),
        (Until(a, b), false) | (Release(a, b), true) => Formula::until(nnf(a, neg), nnf(b, neg)),
        (Release(a, b), false) | (Until(a, b), true) => Formula::release(nnf(a, neg), nnf(b, neg)),
        (Eventually(a), false) => Formula::until(True, nnf(a, false)),
        (Eventually(a), true) => Formula::release(False, nnf(a, true)),
        (Always(a), false) => Formula::release(False, nnf(a, false)),
        (Always(a), true) => Formula::until(True, nnf(a, true)),
        // a W b == b R (a | b)
        (WeakUntil(a, b), false) => {
            Formula::release(nnf(b, false), Formula::or(nnf(a, false), nnf(b, false)))
        }
        (WeakUntil(a, b), true) => {
            Formula::until(nnf(b, true), Formula::and(nnf(a, true), nnf(b, true)))
        }
    }
}
