//! Pattern instances: a scope plus a body whose parameters are
//! propositional formulas over signals and constraint atoms.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::formula::{format_decimal, Atom, Formula, Ident, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ScopeKind {
    Globally,
    Before,
    After,
    Between,
    AfterUntil,
}

impl ScopeKind {
    pub const ALL: [ScopeKind; 5] =
        [ScopeKind::Globally, ScopeKind::Before, ScopeKind::After, ScopeKind::Between, ScopeKind::AfterUntil];

    pub fn name(self) -> &'static str {
        match self {
            ScopeKind::Globally => "Globally",
            ScopeKind::Before => "Before R",
            ScopeKind::After => "After Q",
            ScopeKind::Between => "Between Q and R",
            ScopeKind::AfterUntil => "After Q until R",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            ScopeKind::Globally => "globally",
            ScopeKind::Before => "before",
            ScopeKind::After => "after",
            ScopeKind::Between => "between",
            ScopeKind::AfterUntil => "after_until",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.key() == key)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BodyKind {
    Absence,
    Universality,
    Existence,
    BoundedExistence,
    Precedence,
    Response,
    PrecedenceChain12,
    PrecedenceChain21,
    ResponseChain12,
    ResponseChain21,
    ConstrainedChain,
    Invariant,
}

impl BodyKind {
    pub const ALL: [BodyKind; 12] = [
        BodyKind::Absence,
        BodyKind::Universality,
        BodyKind::Existence,
        BodyKind::BoundedExistence,
        BodyKind::Precedence,
        BodyKind::Response,
        BodyKind::PrecedenceChain12,
        BodyKind::PrecedenceChain21,
        BodyKind::ResponseChain12,
        BodyKind::ResponseChain21,
        BodyKind::ConstrainedChain,
        BodyKind::Invariant,
    ];

    /// Placeholder letters in the order [`Body::args`] returns them.
    pub fn placeholders(self) -> &'static [char] {
        match self {
            BodyKind::Absence | BodyKind::Universality | BodyKind::Existence | BodyKind::BoundedExistence => {
                &['P']
            }
            BodyKind::Precedence | BodyKind::Response | BodyKind::Invariant => &['P', 'S'],
            BodyKind::PrecedenceChain12 | BodyKind::ResponseChain12 => &['P', 'S', 'T'],
            BodyKind::PrecedenceChain21 | BodyKind::ResponseChain21 => &['S', 'T', 'P'],
            BodyKind::ConstrainedChain => &['P', 'S', 'T', 'Z'],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BodyKind::Absence => "Absence",
            BodyKind::Universality => "Universality",
            BodyKind::Existence => "Existence",
            BodyKind::BoundedExistence => "BoundedExistence",
            BodyKind::Precedence => "Precedence",
            BodyKind::Response => "Response",
            BodyKind::PrecedenceChain12 => "PrecedenceChain12",
            BodyKind::PrecedenceChain21 => "PrecedenceChain21",
            BodyKind::ResponseChain12 => "ResponseChain12",
            BodyKind::ResponseChain21 => "ResponseChain21",
            BodyKind::ConstrainedChain => "ConstrainedChain",
            BodyKind::Invariant => "Invariant",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            BodyKind::Absence => "absence",
            BodyKind::Universality => "universality",
            BodyKind::Existence => "existence",
            BodyKind::BoundedExistence => "bounded_existence",
            BodyKind::Precedence => "precedence",
            BodyKind::Response => "response",
            BodyKind::PrecedenceChain12 => "precedence_chain12",
            BodyKind::PrecedenceChain21 => "precedence_chain21",
            BodyKind::ResponseChain12 => "response_chain12",
            BodyKind::ResponseChain21 => "response_chain21",
            BodyKind::ConstrainedChain => "constrained_chain",
            BodyKind::Invariant => "invariant",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.key() == key)
    }
}

/// Default number of occurrences for bounded existence.
pub const DEFAULT_BOUND: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scope {
    Globally,
    Before(Formula),
    After(Formula),
    Between(Formula, Formula),
    AfterUntil(Formula, Formula),
}

impl Scope {
    pub fn kind(&self) -> ScopeKind {
        match self {
            Scope::Globally => ScopeKind::Globally,
            Scope::Before(_) => ScopeKind::Before,
            Scope::After(_) => ScopeKind::After,
            Scope::Between(..) => ScopeKind::Between,
            Scope::AfterUntil(..) => ScopeKind::AfterUntil,
        }
    }

    /// `(Q, R)` delimiters, when present.
    pub fn delimiters(&self) -> (Option<&Formula>, Option<&Formula>) {
        match self {
            Scope::Globally => (None, None),
            Scope::Before(r) => (None, Some(r)),
            Scope::After(q) => (Some(q), None),
            Scope::Between(q, r) | Scope::AfterUntil(q, r) => (Some(q), Some(r)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Body {
    Absence(Formula),
    Universality(Formula),
    Existence(Formula),
    BoundedExistence(Formula, u32),
    Precedence { p: Formula, s: Formula },
    Response { p: Formula, s: Formula },
    PrecedenceChain12 { p: Formula, s: Formula, t: Formula },
    PrecedenceChain21 { s: Formula, t: Formula, p: Formula },
    ResponseChain12 { p: Formula, s: Formula, t: Formula },
    ResponseChain21 { s: Formula, t: Formula, p: Formula },
    ConstrainedChain { p: Formula, s: Formula, t: Formula, z: Formula },
    Invariant { p: Formula, s: Formula },
}

impl Body {
    pub fn kind(&self) -> BodyKind {
        match self {
            Body::Absence(_) => BodyKind::Absence,
            Body::Universality(_) => BodyKind::Universality,
            Body::Existence(_) => BodyKind::Existence,
            Body::BoundedExistence(..) => BodyKind::BoundedExistence,
            Body::Precedence { .. } => BodyKind::Precedence,
            Body::Response { .. } => BodyKind::Response,
            Body::PrecedenceChain12 { .. } => BodyKind::PrecedenceChain12,
            Body::PrecedenceChain21 { .. } => BodyKind::PrecedenceChain21,
            Body::ResponseChain12 { .. } => BodyKind::ResponseChain12,
            Body::ResponseChain21 { .. } => BodyKind::ResponseChain21,
            Body::ConstrainedChain { .. } => BodyKind::ConstrainedChain,
            Body::Invariant { .. } => BodyKind::Invariant,
        }
    }

    /// Parameters in [`BodyKind::placeholders`] order.
    pub fn args(&self) -> Vec<&Formula> {
        match self {
            Body::Absence(p) | Body::Universality(p) | Body::Existence(p) | Body::BoundedExistence(p, _) => {
                vec![p]
            }
            Body::Precedence { p, s } | Body::Response { p, s } | Body::Invariant { p, s } => vec![p, s],
            Body::PrecedenceChain12 { p, s, t } | Body::ResponseChain12 { p, s, t } => vec![p, s, t],
            Body::PrecedenceChain21 { s, t, p } | Body::ResponseChain21 { s, t, p } => vec![s, t, p],
            Body::ConstrainedChain { p, s, t, z } => vec![p, s, t, z],
        }
    }

    /// Inverse of [`Body::kind`] + [`Body::args`]. `args` must have the
    /// placeholder arity of `kind`.
    pub fn from_parts(kind: BodyKind, args: Vec<Formula>, bound: u32) -> Body {
        assert_eq!(args.len(), kind.placeholders().len(), "arity mismatch for {}", kind.name());
        let mut it = args.into_iter();
        let mut next = || it.next().expect("arity checked");
        match kind {
            BodyKind::Absence => Body::Absence(next()),
            BodyKind::Universality => Body::Universality(next()),
            BodyKind::Existence => Body::Existence(next()),
            BodyKind::BoundedExistence => Body::BoundedExistence(next(), bound),
            BodyKind::Precedence => Body::Precedence { p: next(), s: next() },
            BodyKind::Response => Body::Response { p: next(), s: next() },
            BodyKind::Invariant => Body::Invariant { p: next(), s: next() },
            BodyKind::PrecedenceChain12 => Body::PrecedenceChain12 { p: next(), s: next(), t: next() },
            BodyKind::ResponseChain12 => Body::ResponseChain12 { p: next(), s: next(), t: next() },
            BodyKind::PrecedenceChain21 => Body::PrecedenceChain21 { s: next(), t: next(), p: next() },
            BodyKind::ResponseChain21 => Body::ResponseChain21 { s: next(), t: next(), p: next() },
            BodyKind::ConstrainedChain => Body::ConstrainedChain { p: next(), s: next(), t: next(), z: next() },
        }
    }

    pub fn bound(&self) -> Option<u32> {
        match self {
            Body::BoundedExistence(_, k) => Some(*k),
            _ => None,
        }
    }
}

/// Where a requirement came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Source {
    pub text: String,
    pub line: usize,
}

/// A parsed requirement. Equality ignores `source`.
#[derive(Debug, Clone)]
pub struct Psp {
    pub scope: Scope,
    pub body: Body,
    pub source: Option<Source>,
}

impl PartialEq for Psp {
    fn eq(&self, other: &Self) -> bool {
        self.scope == other.scope && self.body == other.body
    }
}

impl Eq for Psp {}

impl Psp {
    pub fn new(scope: Scope, body: Body) -> Self {
        Psp { scope, body, source: None }
    }

    /// Every parameter formula: scope delimiters first, then body arguments.
    pub fn parameters(&self) -> Vec<&Formula> {
        let (q, r) = self.scope.delimiters();
        q.into_iter().chain(r).chain(self.body.args()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignalKind {
    Boolean,
    Numeric,
}

impl fmt::Display for SignalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignalKind::Boolean => "boolean",
            SignalKind::Numeric => "numeric",
        })
    }
}

/// An ordered set of requirements plus the kind of every signal they use.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecDocument {
    pub requirements: Vec<Psp>,
    /// Explicit `boolean ...` / `numeric ...` declarations.
    pub declared_signals: BTreeMap<Ident, SignalKind>,
    /// Declared and inferred kinds together.
    pub signals: BTreeMap<Ident, SignalKind>,
}

impl SpecDocument {
    pub fn numeric_variables(&self) -> impl Iterator<Item = &Ident> {
        self.signals.iter().filter(|(_, k)| **k == SignalKind::Numeric).map(|(n, _)| n)
    }

    pub fn boolean_signals(&self) -> impl Iterator<Item = &Ident> {
        self.signals.iter().filter(|(_, k)| **k == SignalKind::Boolean).map(|(n, _)| n)
    }

    /// Builds a document from requirements, inferring signal kinds.
    /// Returns the first conflicting identifier on a kind clash.
    pub fn from_requirements(requirements: Vec<Psp>) -> Result<Self, Ident> {
        let mut signals = BTreeMap::new();
        for psp in &requirements {
            for (name, kind) in signal_kinds(psp.parameters()) {
                if *signals.entry(name.clone()).or_insert(kind) != kind {
                    return Err(name);
                }
            }
        }
        Ok(SpecDocument { requirements, declared_signals: BTreeMap::new(), signals })
    }
}

/// Kinds of every identifier in the given formulas, in first-use order.
/// An identifier used both ways appears twice.
pub(crate) fn signal_kinds<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Vec<(Ident, SignalKind)> {
    let mut out = Vec::new();
    for f in formulas {
        f.visit(&mut |n| match n {
            Formula::Atom(Atom::Prop(p)) => out.push((p.clone(), SignalKind::Boolean)),
            Formula::Atom(Atom::Constraint(c)) => out.push((c.variable.clone(), SignalKind::Numeric)),
            _ => {}
        });
    }
    out
}

// ---------------------------------------------------------------------------
// Structured-English rendering

const EXPR_OR: u8 = 1;
const EXPR_AND: u8 = 2;
const EXPR_NOT: u8 = 3;
const EXPR_ATOM: u8 = 4;

/// Recognizes the desugared shapes of `<=`, `>=`, `>` and `!=`.
fn sugar(f: &Formula) -> Option<String> {
    fn constraint(f: &Formula) -> Option<(&Ident, Relation, rust_decimal::Decimal)> {
        match f {
            Formula::Atom(Atom::Constraint(c)) => Some((&c.variable, c.relation, c.threshold())),
            _ => None,
        }
    }
    fn le(f: &Formula) -> Option<(&Ident, rust_decimal::Decimal)> {
        if let Formula::Or(a, b) = f {
            if let (Some((v1, Relation::Lt, t1)), Some((v2, Relation::Eq, t2))) = (constraint(a), constraint(b)) {
                if v1 == v2 && t1 == t2 {
                    return Some((v1, t1));
                }
            }
        }
        None
    }
    if let Some((v, rel, t)) = constraint(f) {
        return Some(format!("{v} {} {}", rel.symbol(), format_decimal(t)));
    }
    if let Some((v, t)) = le(f) {
        return Some(format!("{v} <= {}", format_decimal(t)));
    }
    if let Formula::Not(inner) = f {
        if let Some((v, rel, t)) = constraint(inner) {
            let op = if rel == Relation::Lt { ">=" } else { "!=" };
            return Some(format!("{v} {op} {}", format_decimal(t)));
        }
        if let Some((v, t)) = le(inner) {
            return Some(format!("{v} > {}", format_decimal(t)));
        }
    }
    None
}

fn expr_prec(f: &Formula) -> u8 {
    if sugar(f).is_some() {
        return EXPR_ATOM;
    }
    match f {
        Formula::Or(..) => EXPR_OR,
        Formula::And(..) => EXPR_AND,
        Formula::Not(_) => EXPR_NOT,
        _ => EXPR_ATOM,
    }
}

/// Renders a propositional parameter in requirement syntax.
pub fn render_expr(f: &Formula) -> String {
    let mut out = String::new();
    write_expr(&mut out, f, 0);
    out
}

fn write_expr(out: &mut String, f: &Formula, min: u8) {
    let prec = expr_prec(f);
    let paren = prec < min;
    if paren {
        out.push('(');
    }
    if let Some(s) = sugar(f) {
        out.push_str(&s);
    } else {
        match f {
            Formula::Atom(Atom::Prop(p)) => out.push_str(p.as_str()),
            Formula::True => out.push_str("true"),
            Formula::False => out.push_str("false"),
            Formula::Not(a) => {
                out.push_str("not ");
                write_expr(out, a, EXPR_NOT);
            }
            Formula::And(a, b) => {
                write_expr(out, a, EXPR_AND + 1);
                out.push_str(" and ");
                write_expr(out, b, EXPR_AND);
            }
            Formula::Or(a, b) => {
                write_expr(out, a, EXPR_OR + 1);
                out.push_str(" or ");
                write_expr(out, b, EXPR_OR);
            }
            // parameters are propositional; anything else is shown in
            // canonical formula syntax
            other => out.push_str(&format!("[{other}]")),
        }
    }
    if paren {
        out.push(')');
    }
}

/// Like [`render_expr`], parenthesizing binary connectives. Used where the
/// following template word is `and`.
fn render_guarded(f: &Formula) -> String {
    if expr_prec(f) <= EXPR_AND {
        format!("({})", render_expr(f))
    } else {
        render_expr(f)
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Globally => write!(f, "Globally,"),
            Scope::Before(r) => write!(f, "Before {},", render_expr(r)),
            Scope::After(q) => write!(f, "After {},", render_expr(q)),
            Scope::Between(q, r) => write!(f, "Between {} and {},", render_guarded(q), render_expr(r)),
            Scope::AfterUntil(q, r) => write!(f, "After {} until {},", render_expr(q), render_expr(r)),
        }
    }
}

impl fmt::Display for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = render_expr;
        match self {
            Body::Absence(p) => write!(f, "it is never the case that {} holds", e(p)),
            Body::Universality(p) => write!(f, "it is always the case that {} holds", e(p)),
            Body::Existence(p) => write!(f, "{} eventually holds", e(p)),
            Body::BoundedExistence(p, k) => {
                write!(f, "transitions to states in which {} holds occur at most {k} times", e(p))
            }
            Body::Precedence { p, s } => {
                write!(f, "it is always the case that if {} holds, then {} previously held", e(p), e(s))
            }
            Body::Response { p, s } => {
                write!(f, "it is always the case that if {} holds, then {} eventually holds", e(p), e(s))
            }
            Body::Invariant { p, s } => {
                write!(f, "it is always the case that if {} holds, then {} holds as well", e(p), e(s))
            }
            Body::ResponseChain12 { p, s, t } => write!(
                f,
                "it is always the case that if {} holds, then {} eventually holds and is succeeded by {}",
                e(p),
                e(s),
                e(t)
            ),
            Body::ResponseChain21 { s, t, p } => write!(
                f,
                "it is always the case that if {} holds and is succeeded by {}, then {} eventually holds afterwards",
                e(s),
                e(t),
                e(p)
            ),
            Body::PrecedenceChain12 { p, s, t } => write!(
                f,
                "it is always the case that if {} holds and is succeeded by {}, then {} previously held",
                e(s),
                e(t),
                e(p)
            ),
            Body::PrecedenceChain21 { s, t, p } => write!(
                f,
                "it is always the case that if {} holds, then {} previously held and was followed by {}",
                e(p),
                e(s),
                e(t)
            ),
            Body::ConstrainedChain { p, s, t, z } => write!(
                f,
                "it is always the case that if {} holds, then {} eventually holds and is succeeded by {}, \
                 where {} does not hold in between",
                e(p),
                e(s),
                e(t),
                e(z)
            ),
        }
    }
}

/// Canonical structured-English sentence, e.g.
/// `Globally, it is always the case that theta1 < 170 holds.`
impl fmt::Display for Psp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}.", self.scope, self.body)
    }
}

/// Renders a whole document in the requirement-file format.
pub fn render_document(doc: &SpecDocument) -> String {
    let mut out = String::new();
    for kind in [SignalKind::Boolean, SignalKind::Numeric] {
        let names: Vec<&str> =
            doc.declared_signals.iter().filter(|(_, k)| **k == kind).map(|(n, _)| n.as_str()).collect();
        if !names.is_empty() {
            out.push_str(&format!("{kind} {}\n", names.join(", ")));
        }
    }
    for psp in &doc.requirements {
        out.push_str(&psp.to_string());
        out.push('\n');
    }
    out
}
