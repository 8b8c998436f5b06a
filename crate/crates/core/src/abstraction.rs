//! Lowering of constraint formulas to pure propositional LTL.
//!
//! Every numeric variable `x` compared against thresholds `t_1 < … < t_n`
//! gets region propositions `c_{x,j}` (`t_{j-1} < x < t_j`, or `x < t_1`
//! for `j = 1`) and `e_{x,j}` (`x = t_j`). No region proposition true
//! means `x > t_n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};

use crate::catalog::instantiate;
use crate::error::{ConcretizeError, EncodeError};
use crate::formula::{Atom, ConstraintAtom, Formula, Ident, Relation, RESERVED_PREFIX};
use crate::psp::SpecDocument;
use crate::trace::{LassoEvaluator, LassoTrace, State};

/// Ordered, value-deduplicated thresholds per numeric variable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ThresholdMap {
    vars: BTreeMap<Ident, Vec<Decimal>>,
}

/// Where a value lies relative to a threshold list. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Below(usize),
    At(usize),
    Above,
}

impl ThresholdMap {
    /// Adds a variable with no thresholds (its region set is empty).
    pub fn declare(&mut self, x: Ident) {
        self.vars.entry(x).or_default();
    }

    pub fn insert(&mut self, x: Ident, t: Decimal) {
        let ts = self.vars.entry(x).or_default();
        if let Err(pos) = ts.binary_search(&t) {
            ts.insert(pos, t);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn variables(&self) -> impl Iterator<Item = &Ident> {
        self.vars.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ident, &[Decimal])> {
        self.vars.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn thresholds(&self, x: &Ident) -> &[Decimal] {
        self.vars.get(x).map(Vec::as_slice).unwrap_or(&[])
    }

    /// 1-based position of `t` in `T_x`.
    pub fn index_of(&self, x: &Ident, t: Decimal) -> Option<usize> {
        self.thresholds(x).binary_search(&t).ok().map(|i| i + 1)
    }

    pub fn c(x: &Ident, j: usize) -> Ident {
        Ident::any(&format!("{RESERVED_PREFIX}c_{x}_{j}")).expect("generated identifier")
    }

    pub fn e(x: &Ident, j: usize) -> Ident {
        Ident::any(&format!("{RESERVED_PREFIX}e_{x}_{j}")).expect("generated identifier")
    }

    /// `M_x = C_x ∪ E_x`, in the order `c_1..c_n, e_1..e_n`.
    pub fn region_props(&self, x: &Ident) -> Vec<Ident> {
        let n = self.thresholds(x).len();
        (1..=n).map(|j| Self::c(x, j)).chain((1..=n).map(|j| Self::e(x, j))).collect()
    }

    /// Every generated proposition, grouped by variable.
    pub fn all_region_props(&self) -> Vec<Ident> {
        self.vars.keys().flat_map(|x| self.region_props(x)).collect()
    }

    pub fn region_of(&self, x: &Ident, value: Decimal) -> Region {
        region_of(self.thresholds(x), value)
    }

    /// The region proposition that is true for `value`, if any.
    pub fn region_prop(&self, x: &Ident, value: Decimal) -> Option<Ident> {
        match self.region_of(x, value) {
            Region::Below(j) => Some(Self::c(x, j)),
            Region::At(j) => Some(Self::e(x, j)),
            Region::Above => None,
        }
    }

    /// A representative value of each region, in ascending order.
    pub fn representatives(&self, x: &Ident) -> Vec<Decimal> {
        let ts = self.thresholds(x);
        if ts.is_empty() {
            return vec![Decimal::ZERO];
        }
        let mut out = Vec::with_capacity(2 * ts.len() + 1);
        for j in 1..=ts.len() {
            out.push(representative(ts, Region::Below(j)));
            out.push(representative(ts, Region::At(j)));
        }
        out.push(representative(ts, Region::Above));
        out
    }
}

impl fmt::Display for ThresholdMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, ts)) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let vals: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
            write!(f, "T_{x} = {{{}}}", vals.join(", "))?;
        }
        Ok(())
    }
}

pub fn region_of(ts: &[Decimal], value: Decimal) -> Region {
    match ts.binary_search(&value) {
        Ok(i) => Region::At(i + 1),
        Err(i) if i < ts.len() => Region::Below(i + 1),
        Err(_) => Region::Above,
    }
}

fn representative(ts: &[Decimal], region: Region) -> Decimal {
    match region {
        Region::At(j) => ts[j - 1],
        Region::Below(1) => ts[0] - Decimal::ONE,
        Region::Below(j) => ((ts[j - 2] + ts[j - 1]) / Decimal::TWO).normalize(),
        Region::Above => ts[ts.len() - 1] + Decimal::ONE,
    }
}

/// Pools the thresholds of every formula per variable.
pub fn collect_thresholds<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> ThresholdMap {
    let mut tm = ThresholdMap::default();
    for f in formulas {
        for c in f.constraints() {
            tm.insert(c.variable.clone(), c.threshold());
        }
    }
    tm
}

fn abstract_atom(c: &ConstraintAtom, tm: &ThresholdMap) -> Result<Formula, EncodeError> {
    let i = tm.index_of(&c.variable, c.threshold()).ok_or_else(|| EncodeError::ThresholdMissing {
        variable: c.variable.to_string(),
        threshold: c.threshold().to_string(),
    })?;
    let x = &c.variable;
    Ok(match c.relation {
        Relation::Lt => Formula::disjunction(
            (1..=i).map(|j| ThresholdMap::c(x, j)).chain((1..i).map(|j| ThresholdMap::e(x, j))).map(Formula::prop),
        ),
        Relation::Eq => Formula::prop(ThresholdMap::e(x, i)),
    })
}

fn disjuncts(f: Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::Or(a, b) => {
                out.push(*a);
                cur = *b;
            }
            other => {
                out.push(other);
                return out;
            }
        }
    }
}

/// Replaces each constraint atom by its region disjunction. A disjunction
/// whose left operand is a constraint is flattened, so `v < 5 | v = 5`
/// becomes the single chain `c_1 | c_2 | e_1 | e_2`.
pub fn abstract_formula(f: &Formula, tm: &ThresholdMap) -> Result<Formula, EncodeError> {
    use Formula::*;
    let go = |g: &Formula| abstract_formula(g, tm);
    Ok(match f {
        True => True,
        False => False,
        Atom(crate::formula::Atom::Constraint(c)) => abstract_atom(c, tm)?,
        Atom(a) => Atom(a.clone()),
        Not(a) => Formula::not(go(a)?),
        And(a, b) => Formula::and(go(a)?, go(b)?),
        Or(a, b) => {
            let (la, lb) = (go(a)?, go(b)?);
            if matches!(**a, Atom(crate::formula::Atom::Constraint(_))) {
                let mut items = disjuncts(la);
                items.push(lb);
                Formula::disjunction(items)
            } else {
                Formula::or(la, lb)
            }
        }
        Implies(a, b) => Formula::implies(go(a)?, go(b)?),
        Next(a) => Formula::next(go(a)?),
        Until(a, b) => Formula::until(go(a)?, go(b)?),
        WeakUntil(a, b) => Formula::weak_until(go(a)?, go(b)?),
        Release(a, b) => Formula::release(go(a)?, go(b)?),
        Eventually(a) => Formula::eventually(go(a)?),
        Always(a) => Formula::always(go(a)?),
    })
}

/// Unordered pairs of `M_x`, in listing order, for every variable.
pub fn mutex_pairs(tm: &ThresholdMap) -> Vec<(Ident, Ident)> {
    let mut out = Vec::new();
    for x in tm.variables() {
        let m = tm.region_props(x);
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                out.push((m[i].clone(), m[j].clone()));
            }
        }
    }
    out
}

/// `⋀_x ⋀_{a≠b ∈ M_x} G !(a & b)`; `true` when there are no thresholds.
pub fn mutex_formula(tm: &ThresholdMap) -> Formula {
    Formula::conjunction(
        mutex_pairs(tm)
            .into_iter()
            .map(|(a, b)| Formula::always(Formula::not(Formula::and(Formula::prop(a), Formula::prop(b))))),
    )
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// `φ_M ∧ φ'`
    #[default]
    Conjunction,
    /// `φ_M → φ'`
    Implication,
}

impl Mode {
    pub fn key(self) -> &'static str {
        match self {
            Mode::Conjunction => "conj",
            Mode::Implication => "implication",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedProblem {
    /// Conjunction of the instantiated requirements, constraints intact.
    pub original: Formula,
    pub phi_prime: Formula,
    pub phi_m: Formula,
    pub mode: Mode,
    pub thresholds: ThresholdMap,
    pub goal: Formula,
}

impl EncodedProblem {
    pub fn from_formula(original: Formula, mode: Mode) -> Result<Self, EncodeError> {
        Self::build(original, ThresholdMap::default(), mode)
    }

    fn build(original: Formula, mut thresholds: ThresholdMap, mode: Mode) -> Result<Self, EncodeError> {
        for (x, t) in collect_thresholds([&original]).vars {
            for v in t {
                thresholds.insert(x.clone(), v);
            }
        }
        let phi_prime = abstract_formula(&original, &thresholds)?;
        let phi_m = mutex_formula(&thresholds);
        let goal = match mode {
            Mode::Conjunction => Formula::and(phi_m.clone(), phi_prime.clone()),
            Mode::Implication => Formula::implies(phi_m.clone(), phi_prime.clone()),
        };
        Ok(EncodedProblem { original, phi_prime, phi_m, mode, thresholds, goal })
    }
}

/// Instantiates, pools thresholds and abstracts a whole document.
pub fn encode(spec: &SpecDocument, mode: Mode) -> Result<EncodedProblem, EncodeError> {
    let original = Formula::conjunction(spec.requirements.iter().map(instantiate));
    let mut tm = ThresholdMap::default();
    for x in spec.numeric_variables() {
        tm.declare(x.clone());
    }
    EncodedProblem::build(original, tm, mode)
}

/// One step of a real-valued computation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConcreteState {
    pub booleans: BTreeSet<Ident>,
    pub numerics: BTreeMap<Ident, Decimal>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteTrace {
    pub prefix: Vec<ConcreteState>,
    pub loop_: Vec<ConcreteState>,
}

impl ConcreteTrace {
    pub fn len(&self) -> usize {
        self.prefix.len() + self.loop_.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn state(&self, i: usize) -> &ConcreteState {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.loop_[i - self.prefix.len()]
        }
    }

    pub fn steps(&self) -> impl Iterator<Item = &ConcreteState> {
        self.prefix.iter().chain(&self.loop_)
    }
}

fn concretize_state(s: &State, step: usize, tm: &ThresholdMap) -> Result<ConcreteState, ConcretizeError> {
    let booleans = s.iter().filter(|p| !p.is_generated()).cloned().collect();
    let mut numerics = BTreeMap::new();
    for (x, ts) in tm.iter() {
        let mut region = None;
        for j in 1..=ts.len() {
            for (r, name) in [(Region::Below(j), ThresholdMap::c(x, j)), (Region::At(j), ThresholdMap::e(x, j))] {
                if s.contains(&name) {
                    if region.is_some() {
                        return Err(ConcretizeError::MutexViolation { step, variable: x.to_string() });
                    }
                    region = Some(r);
                }
            }
        }
        let value = if ts.is_empty() { Decimal::ZERO } else { representative(ts, region.unwrap_or(Region::Above)) };
        numerics.insert(x.clone(), value);
    }
    Ok(ConcreteState { booleans, numerics })
}

/// Maps an abstract witness to real values, one representative per region.
pub fn concretize(t: &LassoTrace, tm: &ThresholdMap) -> Result<ConcreteTrace, ConcretizeError> {
    let prefix = t.prefix.iter().enumerate().map(|(i, s)| concretize_state(s, i, tm)).collect::<Result<_, _>>()?;
    let off = t.prefix.len();
    let loop_ = t.loop_.iter().enumerate().map(|(i, s)| concretize_state(s, off + i, tm)).collect::<Result<_, _>>()?;
    Ok(ConcreteTrace { prefix, loop_ })
}

/// Evaluates a constraint formula on a real-valued lasso. Variables with
/// no recorded value read as zero.
pub fn eval_concrete(f: &Formula, t: &ConcreteTrace) -> bool {
    if t.loop_.is_empty() {
        return false;
    }
    let mut ev = LassoEvaluator::new(t.prefix.len(), t.loop_.len(), |i: usize, a: &Atom| {
        let s = t.state(i);
        match a {
            Atom::Prop(p) => s.booleans.contains(p),
            Atom::Constraint(c) => c.holds(s.numerics.get(&c.variable).copied().unwrap_or(Decimal::ZERO)),
        }
    });
    ev.eval(f)[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_spec;

    fn d(s: &str) -> Decimal {
        s.parse().unwrap()
    }
    fn v() -> Ident {
        Ident::new("v").unwrap()
    }
    fn tv() -> ThresholdMap {
        let mut tm = ThresholdMap::default();
        for t in ["8.5", "3.2", "5.0"] {
            tm.insert(v(), d(t));
        }
        tm
    }

    #[test]
    fn thresholds_sorted_and_deduplicated() {
        let mut tm = tv();
        tm.insert(v(), d("5.00"));
        assert_eq!(tm.thresholds(&v()), &[d("3.2"), d("5.0"), d("8.5")]);
        assert_eq!(tm.index_of(&v(), d("5")), Some(2));
    }

    #[test]
    fn substitution_rules() {
        let tm = tv();
        let lt5 = Formula::constraint(v(), Relation::Lt, d("5.0"));
        assert_eq!(abstract_formula(&lt5, &tm).unwrap().to_string(), "__psp_c_v_1 | __psp_c_v_2 | __psp_e_v_1");
        let eq85 = Formula::constraint(v(), Relation::Eq, d("8.5"));
        assert_eq!(abstract_formula(&eq85, &tm).unwrap().to_string(), "__psp_e_v_3");
        let lt32 = Formula::constraint(v(), Relation::Lt, d("3.2"));
        assert_eq!(abstract_formula(&lt32, &tm).unwrap().to_string(), "__psp_c_v_1");
        let missing = Formula::constraint(v(), Relation::Lt, d("4"));
        assert!(matches!(abstract_formula(&missing, &tm), Err(EncodeError::ThresholdMissing { .. })));
    }

    #[test]
    fn mutex_counts() {
        assert_eq!(mutex_formula(&ThresholdMap::default()), Formula::True);
        let mut one = ThresholdMap::default();
        one.insert(v(), d("1"));
        assert_eq!(mutex_formula(&one).to_string(), "G !(__psp_c_v_1 & __psp_e_v_1)");
        for n in 1..6usize {
            let mut tm = ThresholdMap::default();
            for k in 0..n {
                tm.insert(v(), Decimal::from(k));
            }
            assert_eq!(mutex_pairs(&tm).len(), n * (2 * n - 1));
        }
    }

    #[test]
    fn region_partition() {
        let ts = [d("3.2"), d("5.0"), d("8.5")];
        let cases = [
            ("-100", Region::Below(1)),
            ("3.19", Region::Below(1)),
            ("3.2", Region::At(1)),
            ("4", Region::Below(2)),
            ("5.00", Region::At(2)),
            ("8.49", Region::Below(3)),
            ("8.5", Region::At(3)),
            ("8.51", Region::Above),
        ];
        for (x, r) in cases {
            assert_eq!(region_of(&ts, d(x)), r, "{x}");
        }
    }

    #[test]
    fn representatives_fall_in_their_region() {
        let tm = tv();
        let reps = tm.representatives(&v());
        let shown: Vec<String> = reps.iter().map(|r| r.to_string()).collect();
        assert_eq!(shown, ["2.2", "3.2", "4.1", "5.0", "6.75", "8.5", "9.5"]);
        for j in 1..=3 {
            assert_eq!(region_of(tm.thresholds(&v()), reps[2 * j - 2]), Region::Below(j));
            assert_eq!(region_of(tm.thresholds(&v()), reps[2 * j - 1]), Region::At(j));
        }
    }

    #[test]
    fn concretize_examples() {
        let tm = tv();
        let state = |names: &[&str]| -> State { names.iter().map(|n| Ident::any(n).unwrap()).collect() };
        let t = LassoTrace::new(
            vec![state(&["__psp_e_v_2", "a"]), state(&["__psp_c_v_3"])],
            vec![state(&[])],
        )
        .unwrap();
        let c = concretize(&t, &tm).unwrap();
        let vals: Vec<String> = c.steps().map(|s| s.numerics[&v()].to_string()).collect();
        assert_eq!(vals, ["5.0", "6.75", "9.5"]);
        assert_eq!(c.prefix[0].booleans.len(), 1);

        let bad = LassoTrace::new(vec![], vec![state(&["__psp_c_v_1", "__psp_e_v_3"])]).unwrap();
        assert_eq!(
            concretize(&bad, &tm),
            Err(ConcretizeError::MutexViolation { step: 0, variable: "v".into() })
        );
    }

    #[test]
    fn worked_example_encoding() {
        let spec = parse_spec(
            "Globally, it is always the case that v <= 5.0 holds.\n\
             After a, v <= 8.5 eventually holds.\n\
             After a, it is always the case that if v >= 3.2 holds, then z eventually holds.\n",
        )
        .unwrap();
        let p = encode(&spec, Mode::Conjunction).unwrap();
        assert_eq!(p.thresholds.thresholds(&v()), &[d("3.2"), d("5.0"), d("8.5")]);
        let lines: Vec<String> = p.phi_prime.conjuncts().iter().map(|c| c.to_string()).collect();
        assert_eq!(
            lines,
            [
                "G (__psp_c_v_1 | __psp_c_v_2 | __psp_e_v_1 | __psp_e_v_2)",
                "G (a -> F (__psp_c_v_1 | __psp_c_v_2 | __psp_c_v_3 | __psp_e_v_1 | __psp_e_v_2 | __psp_e_v_3))",
                "G (a -> G (!__psp_c_v_1 -> F z))",
            ]
        );
        assert_eq!(p.phi_m.conjuncts().len(), 15);
        assert!(p.goal.is_pure_boolean());
    }

    #[test]
    fn unused_declared_variable_reads_zero() {
        let spec = parse_spec("numeric w\nGlobally, a eventually holds.\n").unwrap();
        let p = encode(&spec, Mode::Conjunction).unwrap();
        assert_eq!(p.phi_m, Formula::True);
        let t = LassoTrace::from_names(&[], &[&["a"]]);
        let c = concretize(&t, &p.thresholds).unwrap();
        assert_eq!(c.loop_[0].numerics[&Ident::new("w").unwrap()], Decimal::ZERO);
    }
}
