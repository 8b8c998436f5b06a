//! Lasso-shaped computations and their evaluation.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::EvalError;
use crate::formula::{Atom, Formula, Ident};

/// One step of a Boolean computation: the propositions that are true.
pub type State = BTreeSet<Ident>;

/// `prefix` followed by `loop_` repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoTrace {
    pub prefix: Vec<State>,
    pub loop_: Vec<State>,
}

impl LassoTrace {
    pub fn new(prefix: Vec<State>, loop_: Vec<State>) -> Result<Self, EvalError> {
        if loop_.is_empty() {
            return Err(EvalError::EmptyLoop);
        }
        Ok(LassoTrace { prefix, loop_ })
    }

    /// Builds a trace from slices of proposition names.
    pub fn from_names(prefix: &[&[&str]], loop_: &[&[&str]]) -> Self {
        let conv = |steps: &[&[&str]]| -> Vec<State> {
            steps
                .iter()
                .map(|s| s.iter().map(|n| Ident::any(n).expect("identifier")).collect())
                .collect()
        };
        LassoTrace::new(conv(prefix), conv(loop_)).expect("non-empty loop")
    }

    pub fn len(&self) -> usize {
        self.prefix.len() + self.loop_.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn state(&self, i: usize) -> &State {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.loop_[i - self.prefix.len()]
        }
    }

    /// The same computation with one loop iteration moved into the prefix.
    pub fn unrolled(&self) -> LassoTrace {
        let mut prefix = self.prefix.clone();
        prefix.push(self.loop_[0].clone());
        let mut loop_: Vec<State> = self.loop_[1..].to_vec();
        loop_.push(self.loop_[0].clone());
        LassoTrace { prefix, loop_ }
    }
}

impl fmt::Display for LassoTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &State| {
            let names: Vec<&str> = s.iter().map(Ident::as_str).collect();
            format!("{{{}}}", names.join(","))
        };
        let pre: Vec<String> = self.prefix.iter().map(show).collect();
        let lp: Vec<String> = self.loop_.iter().map(show).collect();
        write!(f, "{} ({})^w", pre.join(" "), lp.join(" "))
    }
}

/// `π ⊨ f` for the infinite unrolling of `t`.
pub fn eval_trace(f: &Formula, t: &LassoTrace) -> Result<bool, EvalError> {
    if !f.is_pure_boolean() {
        return Err(EvalError::ConstraintAtom);
    }
    if t.loop_.is_empty() {
        return Err(EvalError::EmptyLoop);
    }
    let mut ev = LassoEvaluator::new(t.prefix.len(), t.loop_.len(), |i: usize, atom: &Atom| match atom {
        Atom::Prop(p) => t.state(i).contains(p),
        Atom::Constraint(_) => unreachable!("checked pure"),
    });
    Ok(ev.eval(f)[0])
}

/// Evaluates formulas position-wise over a lasso of fixed shape, with atoms
/// interpreted by a caller-supplied valuation.
pub struct LassoEvaluator<V> {
    prefix_len: usize,
    len: usize,
    valuation: V,
}

impl<V: FnMut(usize, &Atom) -> bool> LassoEvaluator<V> {
    pub fn new(prefix_len: usize, loop_len: usize, valuation: V) -> Self {
        assert!(loop_len > 0, "lasso loop must not be empty");
        LassoEvaluator { prefix_len, len: prefix_len + loop_len, valuation }
    }

    fn succ(&self, i: usize) -> usize {
        if i + 1 < self.len {
            i + 1
        } else {
            self.prefix_len
        }
    }

    /// Truth value of `f` at every position of the lasso.
    pub fn eval(&mut self, f: &Formula) -> Vec<bool> {
        let n = self.len;
        match f {
            Formula::True => vec![true; n],
            Formula::False => vec![false; n],
            Formula::Atom(a) => (0..n).map(|i| (self.valuation)(i, a)).collect(),
            Formula::Not(a) => self.eval(a).into_iter().map(|x| !x).collect(),
            Formula::And(a, b) => zip(self.eval(a), self.eval(b), |x, y| x && y),
            Formula::Or(a, b) => zip(self.eval(a), self.eval(b), |x, y| x || y),
            Formula::Implies(a, b) => zip(self.eval(a), self.eval(b), |x, y| !x || y),
            Formula::Next(a) => {
                let va = self.eval(a);
                (0..n).map(|i| va[self.succ(i)]).collect()
            }
            Formula::Until(a, b) => {
                let (va, vb) = (self.eval(a), self.eval(b));
                self.until(&va, &vb)
            }
            Formula::Release(a, b) => {
                let (va, vb) = (self.eval(a), self.eval(b));
                self.release(&va, &vb)
            }
            Formula::WeakUntil(a, b) => {
                let (va, vb) = (self.eval(a), self.eval(b));
                let a_or_b = zip(va, vb.clone(), |x, y| x || y);
                self.release(&vb, &a_or_b)
            }
            Formula::Eventually(a) => {
                let va = self.eval(a);
                self.until(&vec![true; n], &va)
            }
            Formula::Always(a) => {
                let va = self.eval(a);
                self.release(&vec![false; n], &va)
            }
        }
    }

    /// Least fixpoint of `u = b | (a & X u)`.
    fn until(&self, a: &[bool], b: &[bool]) -> Vec<bool> {
        let mut u = b.to_vec();
        loop {
            let mut changed = false;
            for i in (0..self.len).rev() {
                let v = b[i] || (a[i] && u[self.succ(i)]);
                if v != u[i] {
                    u[i] = v;
                    changed = true;
                }
            }
            if !changed {
                return u;
            }
        }
    }

    /// Greatest fixpoint of `r = b & (a | X r)`.
    fn release(&self, a: &[bool], b: &[bool]) -> Vec<bool> {
        let mut r = vec![true; self.len];
        loop {
            let mut changed = false;
            for i in (0..self.len).rev() {
                let v = b[i] && (a[i] || r[self.succ(i)]);
                if v != r[i] {
                    r[i] = v;
                    changed = true;
                }
            }
            if !changed {
                return r;
            }
        }
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn holds(f: &str, t: &LassoTrace) -> bool {
        eval_trace(&parse_formula(f).unwrap(), t).unwrap()
    }

    #[test]
    fn examples() {
        assert!(holds("G p", &LassoTrace::from_names(&[&["p"]], &[&["p"]])));
        assert!(holds("p U q", &LassoTrace::from_names(&[&["p"], &["p", "q"]], &[&[]])));
        assert!(!holds("F q", &LassoTrace::from_names(&[], &[&["p"]])));
    }

    #[test]
    fn loop_semantics() {
        let t = LassoTrace::from_names(&[&["p"]], &[&[], &["q"]]);
        assert!(holds("G F q", &t));
        assert!(!holds("F G q", &t));
        assert!(holds("X X q", &t));
        assert!(holds("X X X X q", &t));
        assert!(!holds("X X X q", &t));
        assert!(!holds("X X X X X q", &t));
        assert!(holds("p W false", &LassoTrace::from_names(&[], &[&["p"]])));
        assert!(!holds("p U false", &LassoTrace::from_names(&[], &[&["p"]])));
        assert!(holds("q R p", &LassoTrace::from_names(&[], &[&["p"]])));
    }

    #[test]
    fn constraint_atoms_rejected() {
        let f = parse_formula("G (v < 3)").unwrap();
        let t = LassoTrace::from_names(&[], &[&[]]);
        assert_eq!(eval_trace(&f, &t), Err(EvalError::ConstraintAtom));
    }

    #[test]
    fn unrolled_changes_nothing() {
        let t = LassoTrace::from_names(&[&["a"]], &[&["b"], &[]]);
        for f in ["G F b", "a U b", "X G !a", "F (b & X !b)", "b R a"] {
            assert_eq!(holds(f, &t), holds(f, &t.unrolled()), "{f}");
        }
    }
}
