//! Satisfiability of propositional LTL by on-the-fly tableau search.
//!
//! A tableau state is the set of formulas that must hold from the current
//! step on. Successors are found by an incremental SAT solver over a
//! one-directional expansion of the NNF DAG: `v_f` means "f is required
//! now", `x_g` means "g is required at the next step". Each model is
//! walked from the state's members to extract the obligations it actually
//! needs; supersets of an already found successor are then blocked, since
//! they are at least as hard to satisfy.
//!
//! A deferred until `a U b` is carried to the next state as its pending
//! twin, distinct from fresh requests of the same formula. A strongly
//! connected set of states is accepting iff every pending twin occurring in
//! it is absent from at least one of its states. Non-accepting components
//! are unsatisfiable, and every later successor containing one of their
//! states is pruned by a permanent clause.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::time::{Duration, Instant};

use crate::error::CheckError;
use crate::formula::{Atom, Formula, Ident};
use crate::trace::{eval_trace, LassoTrace, State};

use super::cdcl::{Lit, SolveResult, Solver, Var};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub max_states: u64,
    pub max_seconds: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_states: 1_000_000, max_seconds: 600.0 }
    }
}

impl Budget {
    pub fn new(max_states: u64, max_seconds: f64) -> Result<Self, CheckError> {
        let b = Budget { max_states, max_seconds };
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<(), CheckError> {
        if self.max_states == 0 || !(self.max_seconds > 0.0) {
            return Err(CheckError::InvalidBudget);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

impl Status {
    pub fn key(self) -> &'static str {
        match self {
            Status::Sat => "sat",
            Status::Unsat => "unsat",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CheckStats {
    /// Tableau states created.
    pub states: u64,
    pub seconds: f64,
    pub budget_exhausted: bool,
    pub sat_calls: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckVerdict {
    pub status: Status,
    pub witness: Option<LassoTrace>,
    pub stats: CheckStats,
}

type NodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(u32, bool),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Next(NodeId),
    Until(NodeId, NodeId, bool),
    Release(NodeId, NodeId),
}

#[derive(Default)]
struct Dag {
    nodes: Vec<Node>,
    index: HashMap<Node, NodeId>,
    atoms: Vec<Ident>,
    atom_index: HashMap<Ident, u32>,
}

impl Dag {
    fn mk(&mut self, n: Node) -> NodeId {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = self.nodes.len() as NodeId;
        self.nodes.push(n);
        self.index.insert(n, id);
        id
    }

    fn atom(&mut self, p: &Ident) -> u32 {
        if let Some(&a) = self.atom_index.get(p) {
            return a;
        }
        let a = self.atoms.len() as u32;
        self.atoms.push(p.clone());
        self.atom_index.insert(p.clone(), a);
        a
    }

    /// Interns an NNF formula.
    fn intern(&mut self, f: &Formula) -> NodeId {
        let t = self.mk(Node::True);
        let fl = self.mk(Node::False);
        match f {
            Formula::True => t,
            Formula::False => fl,
            Formula::Atom(Atom::Prop(p)) => {
                let a = self.atom(p);
                self.mk(Node::Lit(a, true))
            }
            Formula::Not(inner) => match &**inner {
                Formula::Atom(Atom::Prop(p)) => {
                    let a = self.atom(p);
                    self.mk(Node::Lit(a, false))
                }
                other => unreachable!("not in negation normal form: !{other}"),
            },
            Formula::And(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                match () {
                    _ if a == fl || b == fl => fl,
                    _ if a == t => b,
                    _ if b == t || a == b => a,
                    _ => self.mk(Node::And(a, b)),
                }
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                match () {
                    _ if a == t || b == t => t,
                    _ if a == fl => b,
                    _ if b == fl || a == b => a,
                    _ => self.mk(Node::Or(a, b)),
                }
            }
            Formula::Next(a) => {
                let a = self.intern(a);
                if a == t || a == fl {
                    a
                } else {
                    self.mk(Node::Next(a))
                }
            }
            Formula::Until(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                match () {
                    _ if b == t || b == fl || a == fl => b,
                    _ => self.mk(Node::Until(a, b, false)),
                }
            }
            Formula::Release(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                match () {
                    _ if b == t || b == fl || a == t => b,
                    _ => self.mk(Node::Release(a, b)),
                }
            }
            other => unreachable!("not in negation normal form: {other}"),
        }
    }

    /// Disjuncts of a nested disjunction, left to right.
    fn disjuncts(&self, n: NodeId, out: &mut Vec<NodeId>) {
        match self.nodes[n as usize] {
            Node::Or(a, b) => {
                self.disjuncts(a, out);
                self.disjuncts(b, out);
            }
            _ => out.push(n),
        }
    }
}

struct TState {
    members: Vec<NodeId>,
    act: Option<Var>,
    index: u32,
    lowlink: u32,
    on_stack: bool,
    visited: bool,
    frame: Option<usize>,
    /// Successor states in discovery order.
    succs: Vec<u32>,
}

enum Outcome {
    Sat(Vec<u32>, Vec<u32>),
    Unsat,
    Unknown,
}

struct Checker {
    dag: Dag,
    solver: Solver,
    v: Vec<Var>,
    x: Vec<Option<Var>>,
    or_lists: HashMap<NodeId, Vec<NodeId>>,
    atom_vars: Vec<Var>,
    targets: Vec<NodeId>,
    states: Vec<TState>,
    state_index: HashMap<Vec<NodeId>, u32>,
    budget: Budget,
    deadline: Instant,
    exhausted: bool,
}

/// Cycles up to this many states are tested for acceptance on discovery.
const QUICK_CYCLE_LIMIT: usize = 64;

impl Checker {
    fn new(root: &Formula, budget: Budget, start: Instant) -> (Self, NodeId) {
        let mut dag = Dag::default();
        let root = dag.intern(&root.to_nnf());
        let mut solver = Solver::new();
        let deadline = start + Duration::from_secs_f64(budget.max_seconds.min(1e9));
        solver.set_deadline(Some(deadline));

        // pending twins are created here, so the node list grows while scanning
        let mut i = 0;
        while i < dag.nodes.len() {
            if let Node::Until(a, b, false) = dag.nodes[i] {
                dag.mk(Node::Until(a, b, true));
            }
            i += 1;
        }
        let n = dag.nodes.len();
        let mut x: Vec<Option<Var>> = vec![None; n];
        let mut targets = BTreeSet::new();
        for node in &dag.nodes {
            match *node {
                Node::Next(a) => {
                    targets.insert(a);
                }
                Node::Until(_, _, true) => {}
                Node::Release(..) => {}
                _ => continue,
            }
        }
        for (id, node) in dag.nodes.iter().enumerate() {
            if matches!(node, Node::Until(_, _, true) | Node::Release(..)) {
                targets.insert(id as NodeId);
            }
        }
        for &g in &targets {
            x[g as usize] = Some(solver.new_var_with(0, false));
        }
        let atom_vars: Vec<Var> = (0..dag.atoms.len()).map(|_| solver.new_var_with(1, false)).collect();
        let v: Vec<Var> = (0..n).map(|_| solver.new_var_with(2, false)).collect();

        let mut or_lists = HashMap::new();
        for (id, node) in dag.nodes.iter().enumerate() {
            let vn = Lit::neg(v[id]);
            let vl = |k: NodeId| Lit::pos(v[k as usize]);
            let xl = |k: NodeId| Lit::pos(x[k as usize].expect("next target"));
            match *node {
                Node::True => {}
                Node::False => {
                    solver.add_clause(&[vn]);
                }
                Node::Lit(a, pos) => {
                    solver.add_clause(&[vn, Lit::new(atom_vars[a as usize], pos)]);
                }
                Node::And(a, b) => {
                    solver.add_clause(&[vn, vl(a)]);
                    solver.add_clause(&[vn, vl(b)]);
                }
                Node::Or(..) => {
                    let mut ds = Vec::new();
                    dag.disjuncts(id as NodeId, &mut ds);
                    let mut c = vec![vn];
                    c.extend(ds.iter().map(|&d| vl(d)));
                    solver.add_clause(&c);
                    or_lists.insert(id as NodeId, ds);
                }
                Node::Next(a) => {
                    solver.add_clause(&[vn, xl(a)]);
                }
                Node::Until(a, b, pending) => {
                    let twin = if pending { id as NodeId } else { dag.index[&Node::Until(a, b, true)] };
                    solver.add_clause(&[vn, vl(b), vl(a)]);
                    solver.add_clause(&[vn, vl(b), xl(twin)]);
                }
                Node::Release(a, b) => {
                    solver.add_clause(&[vn, vl(b)]);
                    solver.add_clause(&[vn, vl(a), xl(id as NodeId)]);
                }
            }
        }
        let checker = Checker {
            dag,
            solver,
            v,
            x,
            or_lists,
            atom_vars,
            targets: targets.into_iter().collect(),
            states: Vec::new(),
            state_index: HashMap::new(),
            budget,
            deadline,
            exhausted: false,
        };
        (checker, root)
    }

    fn state_id(&mut self, members: Vec<NodeId>) -> Option<u32> {
        if let Some(&id) = self.state_index.get(&members) {
            return Some(id);
        }
        if self.states.len() as u64 >= self.budget.max_states {
            self.exhausted = true;
            return None;
        }
        let id = self.states.len() as u32;
        self.state_index.insert(members.clone(), id);
        self.states.push(TState {
            members,
            act: None,
            index: 0,
            lowlink: 0,
            on_stack: false,
            visited: false,
            frame: None,
            succs: Vec::new(),
        });
        Some(id)
    }

    /// Obligations for the next step justified by the current model.
    fn walk(&self, members: &[NodeId]) -> Vec<NodeId> {
        let mut next = BTreeSet::new();
        let mut seen = vec![false; self.dag.nodes.len()];
        let mut stack: Vec<NodeId> = members.iter().rev().copied().collect();
        let m = |k: NodeId| self.solver.model_value(self.v[k as usize]);
        while let Some(n) = stack.pop() {
            if std::mem::replace(&mut seen[n as usize], true) {
                continue;
            }
            match self.dag.nodes[n as usize] {
                Node::True | Node::False | Node::Lit(..) => {}
                Node::And(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                Node::Or(..) => {
                    let d = self.or_lists[&n].iter().copied().find(|&d| m(d)).expect("satisfied disjunction");
                    stack.push(d);
                }
                Node::Next(a) => {
                    next.insert(a);
                }
                Node::Until(a, b, pending) => {
                    if m(b) {
                        stack.push(b);
                    } else {
                        stack.push(a);
                        next.insert(if pending { n } else { self.dag.index[&Node::Until(a, b, true)] });
                    }
                }
                Node::Release(a, b) => {
                    stack.push(b);
                    if m(a) {
                        stack.push(a);
                    } else {
                        next.insert(n);
                    }
                }
            }
        }
        next.into_iter().collect()
    }

    fn assume_members(&self, members: &[NodeId], out: &mut Vec<Lit>) {
        out.extend(members.iter().map(|&f| Lit::pos(self.v[f as usize])));
    }

    /// Next unexplored successor of `s`; `Ok(None)` once exhausted.
    fn next_successor(&mut self, s: u32) -> Result<Option<Vec<NodeId>>, ()> {
        let act = match self.states[s as usize].act {
            Some(a) => a,
            None => {
                let a = self.solver.new_var_with(3, false);
                self.states[s as usize].act = Some(a);
                a
            }
        };
        let mut assumptions = vec![Lit::pos(act)];
        self.assume_members(&self.states[s as usize].members, &mut assumptions);
        match self.solver.solve(&assumptions) {
            SolveResult::Sat => {
                let next = self.walk(&self.states[s as usize].members);
                let mut block = vec![Lit::neg(act)];
                block.extend(next.iter().map(|&g| Lit::neg(self.x[g as usize].expect("target"))));
                self.solver.add_clause(&block);
                Ok(Some(next))
            }
            SolveResult::Unsat => {
                self.solver.add_clause(&[Lit::neg(act)]);
                Ok(None)
            }
            SolveResult::Interrupted => Err(()),
        }
    }

    fn pending_members(&self, s: u32) -> impl Iterator<Item = NodeId> + '_ {
        self.states[s as usize]
            .members
            .iter()
            .copied()
            .filter(|&m| matches!(self.dag.nodes[m as usize], Node::Until(_, _, true)))
    }

    /// Every pending until of the set is missing from one of its states.
    fn fulfilling(&self, set: &[u32]) -> bool {
        let mut pending: BTreeSet<NodeId> = BTreeSet::new();
        for &s in set {
            pending.extend(self.pending_members(s));
        }
        pending.iter().all(|u| set.iter().any(|&s| self.states[s as usize].members.binary_search(u).is_err()))
    }

    fn out_of_time(&self) -> bool {
        Instant::now() >= self.deadline
    }

    fn kill(&mut self, s: u32) {
        let members = &self.states[s as usize].members;
        if members.iter().all(|&g| self.x[g as usize].is_some()) {
            let clause: Vec<Lit> = members.iter().map(|&g| Lit::neg(self.x[g as usize].expect("target"))).collect();
            self.solver.add_clause(&clause);
        }
    }

    /// Tarjan's algorithm with lazily generated successors. On success the
    /// result is a path from the initial state and a cycle, both as state
    /// sequences; the cycle's last state steps back to its first.
    fn search(&mut self, root: NodeId) -> Outcome {
        let Some(init) = self.state_id(vec![root]) else {
            return Outcome::Unknown;
        };
        let mut counter = 0u32;
        let mut frames: Vec<u32> = Vec::new();
        let mut tstack: Vec<u32> = Vec::new();
        let mut enter = |this: &mut Self, s: u32, frames: &mut Vec<u32>, tstack: &mut Vec<u32>| {
            let st = &mut this.states[s as usize];
            st.visited = true;
            st.index = counter;
            st.lowlink = counter;
            st.on_stack = true;
            st.frame = Some(frames.len());
            counter += 1;
            frames.push(s);
            tstack.push(s);
        };
        enter(self, init, &mut frames, &mut tstack);

        while let Some(&top) = frames.last() {
            if self.out_of_time() {
                self.exhausted = true;
                return Outcome::Unknown;
            }
            let succ = match self.next_successor(top) {
                Ok(s) => s,
                Err(()) => {
                    self.exhausted = true;
                    return Outcome::Unknown;
                }
            };
            match succ {
                Some(next) => {
                    let Some(t) = self.state_id(next) else {
                        return Outcome::Unknown;
                    };
                    self.states[top as usize].succs.push(t);
                    if self.states[t as usize].members.is_empty() {
                        return Outcome::Sat(frames.clone(), vec![t]);
                    }
                    if !self.states[t as usize].visited {
                        enter(self, t, &mut frames, &mut tstack);
                    } else if self.states[t as usize].on_stack {
                        let ti = self.states[t as usize].index;
                        let st = &mut self.states[top as usize];
                        st.lowlink = st.lowlink.min(ti);
                        if let Some(pos) = self.states[t as usize].frame {
                            if frames.len() - pos <= QUICK_CYCLE_LIMIT && self.fulfilling(&frames[pos..]) {
                                return Outcome::Sat(frames[..pos].to_vec(), frames[pos..].to_vec());
                            }
                        }
                    }
                }
                None => {
                    frames.pop();
                    let st = &mut self.states[top as usize];
                    st.frame = None;
                    let (index, low) = (st.index, st.lowlink);
                    if low == index {
                        let split = tstack.iter().rposition(|&s| s == top).expect("root on stack");
                        let scc: Vec<u32> = tstack.split_off(split);
                        let nontrivial = scc.len() > 1 || self.states[top as usize].succs.contains(&top);
                        if nontrivial && self.fulfilling(&scc) {
                            let cycle = self.cycle_through(top, &scc);
                            return Outcome::Sat(frames.clone(), cycle);
                        }
                        for &s in &scc {
                            self.states[s as usize].on_stack = false;
                            self.kill(s);
                        }
                    }
                    if let Some(&parent) = frames.last() {
                        let p = &mut self.states[parent as usize];
                        p.lowlink = p.lowlink.min(low);
                    }
                }
            }
        }
        Outcome::Unsat
    }

    /// Shortest path `from → … → to` inside `scc`, excluding `from` and
    /// including `to`; at least one step long.
    fn path_in(&self, from: u32, to: u32, scc: &[u32]) -> Vec<u32> {
        let inside: BTreeSet<u32> = scc.iter().copied().collect();
        let mut prev: HashMap<u32, u32> = HashMap::new();
        let mut queue = VecDeque::new();
        for &t in &self.states[from as usize].succs {
            if inside.contains(&t) && !prev.contains_key(&t) {
                prev.insert(t, from);
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            if s == to {
                let mut path = vec![s];
                let mut cur = s;
                while path.len() == 1 || cur != from {
                    let p = prev[&cur];
                    if p == from && path.last() == Some(&cur) {
                        break;
                    }
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return path;
            }
            for &t in &self.states[s as usize].succs {
                if inside.contains(&t) && !prev.contains_key(&t) {
                    prev.insert(t, s);
                    queue.push_back(t);
                }
            }
        }
        unreachable!("strongly connected component is connected")
    }

    /// A cycle from `root` through a state lacking each pending until.
    fn cycle_through(&self, root: u32, scc: &[u32]) -> Vec<u32> {
        let mut pending: BTreeSet<NodeId> = BTreeSet::new();
        for &s in scc {
            pending.extend(self.pending_members(s));
        }
        let mut cycle = vec![root];
        let mut cur = root;
        for u in pending {
            if cycle.iter().any(|&s| self.states[s as usize].members.binary_search(&u).is_err()) {
                continue;
            }
            let goal = *scc
                .iter()
                .find(|&&s| self.states[s as usize].members.binary_search(&u).is_err())
                .expect("fulfilling component");
            let leg = self.path_in(cur, goal, scc);
            cur = *leg.last().expect("non-empty leg");
            cycle.extend(leg);
        }
        let back = self.path_in(cur, root, scc);
        cycle.extend(&back[..back.len() - 1]);
        cycle
    }

    /// A letter taking `from` to a subset of `to`.
    fn letter(&mut self, from: u32, to: u32) -> State {
        let mut assumptions = Vec::new();
        self.assume_members(&self.states[from as usize].members, &mut assumptions);
        let keep: BTreeSet<NodeId> = self.states[to as usize].members.iter().copied().collect();
        for &g in &self.targets {
            if !keep.contains(&g) {
                assumptions.push(Lit::neg(self.x[g as usize].expect("target")));
            }
        }
        self.solver.set_deadline(None);
        let r = self.solver.solve(&assumptions);
        assert_eq!(r, SolveResult::Sat, "edge of the tableau has no letter");
        self.atom_vars
            .iter()
            .enumerate()
            .filter(|(_, &v)| self.solver.model_value(v))
            .map(|(a, _)| self.dag.atoms[a].clone())
            .collect()
    }

    fn witness(&mut self, path: &[u32], cycle: &[u32]) -> LassoTrace {
        let empty_loop = cycle.len() == 1 && self.states[cycle[0] as usize].members.is_empty();
        let mut prefix = Vec::new();
        for w in path.windows(2) {
            prefix.push(self.letter(w[0], w[1]));
        }
        if let Some(&last) = path.last() {
            prefix.push(self.letter(last, cycle[0]));
        }
        let loop_ = if empty_loop {
            vec![State::new()]
        } else {
            (0..cycle.len()).map(|i| self.letter(cycle[i], cycle[(i + 1) % cycle.len()])).collect()
        };
        LassoTrace { prefix, loop_ }
    }
}

/// Decides satisfiability of a propositional LTL formula.
pub fn check_sat(f: &Formula, budget: Budget) -> Result<CheckVerdict, CheckError> {
    if !f.is_pure_boolean() {
        return Err(CheckError::NotPureBoolean);
    }
    budget.validate()?;
    let start = Instant::now();
    let (mut checker, root) = Checker::new(f, budget, start);
    let outcome = match checker.dag.nodes[root as usize] {
        Node::True => Outcome::Sat(Vec::new(), Vec::new()),
        Node::False => Outcome::Unsat,
        _ => checker.search(root),
    };
    let (status, witness) = match outcome {
        Outcome::Sat(path, cycle) => {
            let trace = if cycle.is_empty() {
                LassoTrace { prefix: Vec::new(), loop_: vec![State::new()] }
            } else {
                checker.witness(&path, &cycle)
            };
            if !eval_trace(f, &trace).map_err(|_| CheckError::NotPureBoolean)? {
                return Err(CheckError::WitnessRejected);
            }
            (Status::Sat, Some(trace))
        }
        Outcome::Unsat => (Status::Unsat, None),
        Outcome::Unknown => (Status::Unknown, None),
    };
    let stats = CheckStats {
        states: checker.states.len() as u64,
        seconds: start.elapsed().as_secs_f64(),
        budget_exhausted: checker.exhausted,
        sat_calls: checker.solver.stats.solves,
    };
    Ok(CheckVerdict { status, witness, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn check(s: &str) -> CheckVerdict {
        check_sat(&parse_formula(s).unwrap(), Budget::default()).unwrap()
    }

    #[test]
    fn basic_verdicts() {
        assert_eq!(check("G p & F !p").status, Status::Unsat);
        assert_eq!(check("p & !p").status, Status::Unsat);
        assert_eq!(check("false").status, Status::Unsat);
        assert_eq!(check("true").status, Status::Sat);
        assert_eq!(check("F q").status, Status::Sat);
        assert_eq!(check("G F p & G F !p").status, Status::Sat);
        assert_eq!(check("F G p & G F !p").status, Status::Unsat);
        assert_eq!(check("p U q & G !q").status, Status::Unsat);
        assert_eq!(check("p W q & G !q").status, Status::Sat);
        assert_eq!(check("X X X p & G (p -> X !p) & G (!p -> X p)").status, Status::Sat);
    }

    #[test]
    fn fresh_requests_do_not_hide_fulfilment() {
        assert_eq!(check("G X F b & G (b -> X c)").status, Status::Sat);
        assert_eq!(check("G F b & G (b -> X c) & G (c -> X !b)").status, Status::Sat);
        assert_eq!(check("G (a -> X F b) & G F a & G (b -> X !a) ").status, Status::Sat);
    }

    #[test]
    fn witnesses_are_models() {
        for s in ["G F p & G F !p", "p U (q & X G !p)", "G (p -> X q) & G (q -> X p) & F p", "!p R (q | X p)"] {
            let v = check(s);
            assert_eq!(v.status, Status::Sat, "{s}");
            assert!(eval_trace(&parse_formula(s).unwrap(), v.witness.as_ref().unwrap()).unwrap());
        }
    }

    #[test]
    fn deterministic() {
        let a = check("G (a -> F b) & G (b -> X !b) & G F a");
        let b = check("G (a -> F b) & G (b -> X !b) & G F a");
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.stats.states, b.stats.states);
    }

    #[test]
    fn budget_validation_and_exhaustion() {
        let f = parse_formula("G F p").unwrap();
        assert_eq!(check_sat(&f, Budget { max_states: 0, max_seconds: 1.0 }), Err(CheckError::InvalidBudget));
        assert_eq!(check_sat(&f, Budget { max_states: 1, max_seconds: -1.0 }), Err(CheckError::InvalidBudget));
        let hard = parse_formula("G (p -> X !p) & G (!p -> X p) & F G q & G F !q").unwrap();
        let v = check_sat(&hard, Budget { max_states: 1, max_seconds: 10.0 }).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert!(v.stats.budget_exhausted);
    }

    #[test]
    fn constraint_atoms_rejected() {
        let f = parse_formula("G (v < 3)").unwrap();
        assert_eq!(check_sat(&f, Budget::default()), Err(CheckError::NotPureBoolean));
    }
}
