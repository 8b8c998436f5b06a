//! Bounded lasso search used as an independent oracle.
//!
//! For each lasso shape (prefix length, loop length) in order of total
//! length, the formula's truth value at every position is encoded directly
//! from the operator semantics (no normal form, no tableau) and handed to a
//! fresh SAT instance. A satisfying assignment is a lasso model; if no shape
//! within the bounds admits one, the answer is `NoLassoFound`, which is not a
//! proof of unsatisfiability.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rust_decimal::Decimal;

use crate::abstraction::{collect_thresholds, eval_concrete, ConcreteState, ConcreteTrace};
use crate::error::CheckError;
use crate::formula::{Atom, Formula, Ident};
use crate::trace::{eval_trace, LassoTrace, State};

use super::cdcl::{Lit, SolveResult, Solver};

/// Largest number of atoms accepted by the oracles.
pub const MAX_BRUTE_ATOMS: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub enum BruteResult<T> {
    Sat(T),
    NoLassoFound,
}

impl<T> BruteResult<T> {
    pub fn is_sat(&self) -> bool {
        matches!(self, BruteResult::Sat(_))
    }
}

/// Lasso shapes within the bounds, shortest first.
fn shapes(max_prefix: usize, max_loop: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=max_prefix + max_loop).flat_map(move |n| {
        (0..=max_prefix.min(n - 1)).filter_map(move |k| (n - k <= max_loop).then_some((k, n - k)))
    })
}

struct Bmc {
    solver: Solver,
    prefix: usize,
    len: usize,
    tru: Lit,
}

type AtomFn<'a> = dyn FnMut(&mut Solver, usize, &Atom) -> Lit + 'a;

impl Bmc {
    fn new(prefix: usize, loop_len: usize) -> Self {
        let mut solver = Solver::new();
        let t = solver.new_var();
        solver.add_clause(&[Lit::pos(t)]);
        Bmc { solver, prefix, len: prefix + loop_len, tru: Lit::pos(t) }
    }

    fn succ(&self, i: usize) -> usize {
        if i + 1 < self.len {
            i + 1
        } else {
            self.prefix
        }
    }

    /// The next `len` positions starting at `i`; every position reachable
    /// from `i` occurs among them.
    fn path(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len);
        let mut p = i;
        for _ in 0..self.len {
            out.push(p);
            p = self.succ(p);
        }
        out
    }

    fn and(&mut self, ls: &[Lit]) -> Lit {
        match ls {
            [] => self.tru,
            [l] => *l,
            _ => {
                let g = Lit::pos(self.solver.new_var());
                let mut back = vec![g];
                for &l in ls {
                    self.solver.add_clause(&[!g, l]);
                    back.push(!l);
                }
                self.solver.add_clause(&back);
                g
            }
        }
    }

    fn or(&mut self, ls: &[Lit]) -> Lit {
        let negs: Vec<Lit> = ls.iter().map(|&l| !l).collect();
        !self.and(&negs)
    }

    fn until(&mut self, a: &[Lit], b: &[Lit]) -> Vec<Lit> {
        (0..self.len)
            .map(|i| {
                let mut terms = Vec::new();
                let mut before = self.tru;
                for p in self.path(i) {
                    let t = self.and(&[before, b[p]]);
                    terms.push(t);
                    before = self.and(&[before, a[p]]);
                }
                self.or(&terms)
            })
            .collect()
    }

    fn along(&mut self, a: &[Lit], any: bool) -> Vec<Lit> {
        (0..self.len)
            .map(|i| {
                let ls: Vec<Lit> = self.path(i).into_iter().map(|p| a[p]).collect();
                if any {
                    self.or(&ls)
                } else {
                    self.and(&ls)
                }
            })
            .collect()
    }

    fn zip(&mut self, a: &[Lit], b: &[Lit], conj: bool) -> Vec<Lit> {
        (0..self.len).map(|i| if conj { self.and(&[a[i], b[i]]) } else { self.or(&[a[i], b[i]]) }).collect()
    }

    /// Truth of `f` at every position.
    fn encode(&mut self, f: &Formula, atom: &mut AtomFn<'_>) -> Vec<Lit> {
        let neg = |v: Vec<Lit>| v.into_iter().map(|l| !l).collect::<Vec<_>>();
        match f {
            Formula::True => vec![self.tru; self.len],
            Formula::False => vec![!self.tru; self.len],
            Formula::Atom(a) => (0..self.len).map(|i| atom(&mut self.solver, i, a)).collect(),
            Formula::Not(a) => neg(self.encode(a, atom)),
            Formula::And(a, b) => {
                let (a, b) = (self.encode(a, atom), self.encode(b, atom));
                self.zip(&a, &b, true)
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.encode(a, atom), self.encode(b, atom));
                self.zip(&a, &b, false)
            }
            Formula::Implies(a, b) => {
                let (a, b) = (neg(self.encode(a, atom)), self.encode(b, atom));
                self.zip(&a, &b, false)
            }
            Formula::Next(a) => {
                let a = self.encode(a, atom);
                (0..self.len).map(|i| a[self.succ(i)]).collect()
            }
            Formula::Until(a, b) => {
                let (a, b) = (self.encode(a, atom), self.encode(b, atom));
                self.until(&a, &b)
            }
            Formula::Release(a, b) => {
                let (a, b) = (neg(self.encode(a, atom)), neg(self.encode(b, atom)));
                neg(self.until(&a, &b))
            }
            Formula::WeakUntil(a, b) => {
                let (a, b) = (self.encode(a, atom), self.encode(b, atom));
                let u = self.until(&a, &b);
                let g = self.along(&a, false);
                self.zip(&u, &g, false)
            }
            Formula::Eventually(a) => {
                let a = self.encode(a, atom);
                self.along(&a, true)
            }
            Formula::Always(a) => {
                let a = self.encode(a, atom);
                self.along(&a, false)
            }
        }
    }

    fn solve(&mut self, f: &Formula, atom: &mut AtomFn<'_>) -> bool {
        let root = self.encode(f, atom)[0];
        self.solver.add_clause(&[root]);
        self.solver.solve(&[]) == SolveResult::Sat
    }

    fn fresh(&mut self, rows: usize, cols: usize) -> Vec<Vec<Lit>> {
        (0..rows).map(|_| (0..cols).map(|_| Lit::pos(self.solver.new_var())).collect()).collect()
    }
}

fn split<T>(mut steps: Vec<T>, prefix: usize) -> (Vec<T>, Vec<T>) {
    let loop_ = steps.split_off(prefix);
    (steps, loop_)
}

/// Bounded lasso search for a pure-Boolean formula.
pub fn brute_force_sat(f: &Formula, max_prefix: usize, max_loop: usize) -> Result<BruteResult<LassoTrace>, CheckError> {
    if !f.is_pure_boolean() {
        return Err(CheckError::NotPureBoolean);
    }
    let props: Vec<Ident> = f.props().into_iter().collect();
    if props.len() > MAX_BRUTE_ATOMS {
        return Err(CheckError::AlphabetTooLarge(props.len()));
    }
    for (k, l) in shapes(max_prefix, max_loop) {
        let mut bmc = Bmc::new(k, l);
        let vars = bmc.fresh(k + l, props.len());
        let mut atom = |_: &mut Solver, i: usize, a: &Atom| match a {
            Atom::Prop(p) => vars[i][props.binary_search(p).expect("collected prop")],
            Atom::Constraint(_) => unreachable!("checked pure"),
        };
        if bmc.solve(f, &mut atom) {
            let steps: Vec<State> = vars.iter().map(|row| true_props(&bmc.solver, &props, row)).collect();
            let (prefix, loop_) = split(steps, k);
            let trace = LassoTrace { prefix, loop_ };
            if !eval_trace(f, &trace).expect("pure formula") {
                return Err(CheckError::WitnessRejected);
            }
            return Ok(BruteResult::Sat(trace));
        }
    }
    Ok(BruteResult::NoLassoFound)
}

fn true_props(solver: &Solver, props: &[Ident], row: &[Lit]) -> BTreeSet<Ident> {
    props.iter().zip(row).filter(|(_, &l)| solver.lit_value(l)).map(|(p, _)| p.clone()).collect()
}

/// Bounded lasso search for a formula with constraint atoms. Each numeric
/// variable ranges over one representative per threshold region, which is
/// exhaustive for the atoms `x < t` and `x = t`.
pub fn brute_force_sat_regions(
    f: &Formula,
    max_prefix: usize,
    max_loop: usize,
) -> Result<BruteResult<ConcreteTrace>, CheckError> {
    let props: Vec<Ident> = f.props().into_iter().collect();
    let tm = collect_thresholds([f]);
    let vars: Vec<(Ident, Vec<Decimal>)> = tm.variables().map(|x| (x.clone(), tm.representatives(x))).collect();
    if props.len() + vars.len() > MAX_BRUTE_ATOMS {
        return Err(CheckError::AlphabetTooLarge(props.len() + vars.len()));
    }
    for (k, l) in shapes(max_prefix, max_loop) {
        let mut bmc = Bmc::new(k, l);
        let pv = bmc.fresh(k + l, props.len());
        // regions[x][i][r]: variable x lies in region r at position i
        let regions: Vec<Vec<Vec<Lit>>> = vars.iter().map(|(_, reps)| bmc.fresh(k + l, reps.len())).collect();
        for per_var in &regions {
            for row in per_var {
                bmc.solver.add_clause(row);
                for (a, &ra) in row.iter().enumerate() {
                    for &rb in &row[a + 1..] {
                        bmc.solver.add_clause(&[!ra, !rb]);
                    }
                }
            }
        }
        let mut cache: HashMap<(usize, Atom), Lit> = HashMap::new();
        let mut atom = |s: &mut Solver, i: usize, a: &Atom| match a {
            Atom::Prop(p) => pv[i][props.binary_search(p).expect("collected prop")],
            Atom::Constraint(c) => *cache.entry((i, a.clone())).or_insert_with(|| {
                let x = vars.iter().position(|(v, _)| *v == c.variable).expect("collected variable");
                let g = Lit::pos(s.new_var());
                let mut clause = vec![!g];
                for (r, &rep) in vars[x].1.iter().enumerate() {
                    let lit = regions[x][i][r];
                    if c.holds(rep) {
                        clause.push(lit);
                        s.add_clause(&[!lit, g]);
                    } else {
                        s.add_clause(&[!lit, !g]);
                    }
                }
                s.add_clause(&clause);
                g
            }),
        };
        if bmc.solve(f, &mut atom) {
            let steps: Vec<ConcreteState> = (0..k + l)
                .map(|i| {
                    let booleans = true_props(&bmc.solver, &props, &pv[i]);
                    let numerics: BTreeMap<Ident, Decimal> = vars
                        .iter()
                        .zip(&regions)
                        .map(|((x, reps), rs)| {
                            let r = rs[i].iter().position(|&l| bmc.solver.lit_value(l)).expect("one region");
                            (x.clone(), reps[r])
                        })
                        .collect();
                    ConcreteState { booleans, numerics }
                })
                .collect();
            let (prefix, loop_) = split(steps, k);
            let trace = ConcreteTrace { prefix, loop_ };
            if !eval_concrete(f, &trace) {
                return Err(CheckError::WitnessRejected);
            }
            return Ok(BruteResult::Sat(trace));
        }
    }
    Ok(BruteResult::NoLassoFound)
}

/// Literal enumeration of every lasso within the bounds, evaluated with
/// `eval_trace`. Exponential; meant for validating the other searches on
/// tiny alphabets.
pub fn explicit_sat(f: &Formula, max_prefix: usize, max_loop: usize) -> Result<BruteResult<LassoTrace>, CheckError> {
    if !f.is_pure_boolean() {
        return Err(CheckError::NotPureBoolean);
    }
    let props: Vec<Ident> = f.props().into_iter().collect();
    if props.len() > 3 || max_prefix + max_loop > 6 {
        return Err(CheckError::AlphabetTooLarge(props.len()));
    }
    let letters: Vec<State> = (0..1usize << props.len())
        .map(|m| props.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, p)| p.clone()).collect())
        .collect();
    for (k, l) in shapes(max_prefix, max_loop) {
        let n = k + l;
        let total = letters.len().pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let steps: Vec<State> = (0..n)
                .map(|_| {
                    let s = letters[c % letters.len()].clone();
                    c /= letters.len();
                    s
                })
                .collect();
            let (prefix, loop_) = split(steps, k);
            let trace = LassoTrace { prefix, loop_ };
            if eval_trace(f, &trace).expect("pure formula") {
                return Ok(BruteResult::Sat(trace));
            }
        }
    }
    Ok(BruteResult::NoLassoFound)
}
