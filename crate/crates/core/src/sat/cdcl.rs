//! Incremental CDCL solver with assumptions.
//!
//! Two-watched-literal propagation, first-UIP learning, VSIDS ordering
//! within priority classes, Luby restarts and LBD-based clause deletion.
//! Polarity is fixed per variable so that decisions are reproducible and
//! biased towards a chosen phase.

use std::ops::Not;
use std::time::Instant;

pub type Var = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn pos(v: Var) -> Lit {
        Lit(v << 1)
    }

    pub fn neg(v: Var) -> Lit {
        Lit((v << 1) | 1)
    }

    pub fn new(v: Var, positive: bool) -> Lit {
        if positive {
            Lit::pos(v)
        } else {
            Lit::neg(v)
        }
    }

    pub fn var(self) -> Var {
        self.0 >> 1
    }

    pub fn is_pos(self) -> bool {
        self.0 & 1 == 0
    }

    fn code(self) -> usize {
        self.0 as usize
    }
}

impl Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveResult {
    Sat,
    Unsat,
    Interrupted,
}

const UNDEF: i8 = 0;
const TRUE: i8 = 1;
const FALSE: i8 = -1;
const NO_REASON: u32 = u32::MAX;

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    lbd: u32,
    activity: f64,
}

#[derive(Clone, Copy)]
struct Watch {
    clause: u32,
    blocker: Lit,
}

/// Indexed max-heap over variables keyed by `(priority class, activity)`.
#[derive(Default)]
struct VarHeap {
    heap: Vec<Var>,
    pos: Vec<Option<usize>>,
}

impl VarHeap {
    fn better(a: Var, b: Var, class: &[u8], act: &[f64]) -> bool {
        let (a, b) = (a as usize, b as usize);
        match class[a].cmp(&class[b]) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => act[a] > act[b] || (act[a] == act[b] && a < b),
        }
    }

    fn contains(&self, v: Var) -> bool {
        self.pos.get(v as usize).copied().flatten().is_some()
    }

    fn grow(&mut self, n: usize) {
        if self.pos.len() < n {
            self.pos.resize(n, None);
        }
    }

    fn insert(&mut self, v: Var, class: &[u8], act: &[f64]) {
        self.grow(v as usize + 1);
        if self.contains(v) {
            return;
        }
        self.heap.push(v);
        let i = self.heap.len() - 1;
        self.pos[v as usize] = Some(i);
        self.up(i, class, act);
    }

    fn bumped(&mut self, v: Var, class: &[u8], act: &[f64]) {
        if let Some(i) = self.pos.get(v as usize).copied().flatten() {
            self.up(i, class, act);
        }
    }

    fn pop(&mut self, class: &[u8], act: &[f64]) -> Option<Var> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("non-empty");
        self.pos[top as usize] = None;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = Some(0);
            self.down(0, class, act);
        }
        Some(top)
    }

    fn up(&mut self, mut i: usize, class: &[u8], act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let p = self.heap[parent];
            if !Self::better(v, p, class, act) {
                break;
            }
            self.heap[i] = p;
            self.pos[p as usize] = Some(i);
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = Some(i);
    }

    fn down(&mut self, mut i: usize, class: &[u8], act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && Self::better(self.heap[r], self.heap[l], class, act) { r } else { l };
            if !Self::better(self.heap[c], v, class, act) {
                break;
            }
            self.heap[i] = self.heap[c];
            self.pos[self.heap[i] as usize] = Some(i);
            i = c;
        }
        self.heap[i] = v;
        self.pos[v as usize] = Some(i);
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolverStats {
    pub solves: u64,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
}

pub struct Solver {
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watch>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    class: Vec<u8>,
    phase_pos: Vec<bool>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    seen: Vec<bool>,
    ok: bool,
    model: Vec<bool>,
    n_learnts: usize,
    max_learnts: usize,
    deadline: Option<Instant>,
    pub stats: SolverStats,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new()
    }
}

fn luby(mut i: u64) -> u64 {
    // 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) >> 1;
        seq -= 1;
        i %= size;
    }
    1 << seq
}

impl Solver {
    pub fn new() -> Self {
        Solver {
            clauses: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            class: Vec::new(),
            phase_pos: Vec::new(),
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::default(),
            seen: Vec::new(),
            ok: true,
            model: Vec::new(),
            n_learnts: 0,
            max_learnts: 4000,
            deadline: None,
            stats: SolverStats::default(),
        }
    }

    /// New variable. Lower `class` values are decided first; `positive`
    /// is the phase tried on decisions.
    pub fn new_var_with(&mut self, class: u8, positive: bool) -> Var {
        let v = self.assigns.len() as Var;
        self.assigns.push(UNDEF);
        self.level.push(0);
        self.reason.push(NO_REASON);
        self.activity.push(0.0);
        self.class.push(class);
        self.phase_pos.push(positive);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.heap.insert(v, &self.class, &self.activity);
        v
    }

    pub fn new_var(&mut self) -> Var {
        self.new_var_with(1, false)
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    pub fn set_deadline(&mut self, deadline: Option<Instant>) {
        self.deadline = deadline;
    }

    /// `false` once the clause set is unsatisfiable without assumptions.
    pub fn is_ok(&self) -> bool {
        self.ok
    }

    fn value(&self, l: Lit) -> i8 {
        let a = self.assigns[l.var() as usize];
        if l.is_pos() {
            a
        } else {
            -a
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var() as usize;
        self.assigns[v] = if l.is_pos() { TRUE } else { FALSE };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let start = self.trail_lim[lvl as usize];
        for i in (start..self.trail.len()).rev() {
            let v = self.trail[i].var();
            self.assigns[v as usize] = UNDEF;
            self.reason[v as usize] = NO_REASON;
            self.heap.insert(v, &self.class, &self.activity);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = start;
    }

    /// Adds a clause. Must be called between solves.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        self.cancel_until(0);
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        for w in c.windows(2) {
            if w[0] == !w[1] {
                return true;
            }
        }
        if c.iter().any(|&l| self.value(l) == TRUE) {
            return true;
        }
        c.retain(|&l| self.value(l) != FALSE);
        match c.len() {
            0 => {
                self.ok = false;
                false
            }
            1 => {
                self.enqueue(c[0], NO_REASON);
                if self.propagate().is_some() {
                    self.ok = false;
                }
                self.ok
            }
            _ => {
                self.attach(c, false, 0);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool, lbd: u32) -> u32 {
        let idx = self.clauses.len() as u32;
        self.watches[lits[0].code()].push(Watch { clause: idx, blocker: lits[1] });
        self.watches[lits[1].code()].push(Watch { clause: idx, blocker: lits[0] });
        self.clauses.push(Clause { lits, learnt, deleted: false, lbd, activity: 0.0 });
        if learnt {
            self.n_learnts += 1;
        }
        idx
    }

    /// Returns a conflicting clause, if any.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let ci = w.clause as usize;
                if self.clauses[ci].deleted {
                    continue;
                }
                {
                    let lits = &mut self.clauses[ci].lits;
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                }
                let first = self.clauses[ci].lits[0];
                if first != w.blocker && self.value(first) == TRUE {
                    ws[j] = Watch { clause: w.clause, blocker: first };
                    j += 1;
                    continue;
                }
                let mut moved = false;
                let len = self.clauses[ci].lits.len();
                for k in 2..len {
                    let l = self.clauses[ci].lits[k];
                    if self.value(l) != FALSE {
                        self.clauses[ci].lits.swap(1, k);
                        self.watches[l.code()].push(Watch { clause: w.clause, blocker: first });
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = Watch { clause: w.clause, blocker: first };
                j += 1;
                if self.value(first) == FALSE {
                    conflict = Some(w.clause);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, w.clause);
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: Var) {
        let a = &mut self.activity[v as usize];
        *a += self.var_inc;
        if *a > 1e100 {
            for x in self.activity.iter_mut() {
                *x *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v, &self.class, &self.activity);
    }

    fn bump_clause(&mut self, c: usize) {
        let cl = &mut self.clauses[c];
        cl.activity += self.cla_inc;
        if cl.activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt = vec![Lit(0)];
        let mut path = 0;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let dl = self.decision_level();
        loop {
            let ci = confl as usize;
            if self.clauses[ci].learnt {
                self.bump_clause(ci);
            }
            let start = usize::from(p.is_some());
            for k in start..self.clauses[ci].lits.len() {
                let q = self.clauses[ci].lits[k];
                let v = q.var() as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(q.var());
                    if self.level[v] >= dl {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var() as usize] {
                    break;
                }
            }
            let lit = self.trail[idx];
            p = Some(lit);
            self.seen[lit.var() as usize] = false;
            path -= 1;
            if path == 0 {
                learnt[0] = !lit;
                break;
            }
            confl = self.reason[lit.var() as usize];
            // reasons of implied literals always exist; the clause keeps
            // the implied literal in position 0
            debug_assert_ne!(confl, NO_REASON);
            let c = &mut self.clauses[confl as usize].lits;
            if c[0] != lit {
                let pos = c.iter().position(|&l| l == lit).expect("reason contains literal");
                c.swap(0, pos);
            }
        }

        // local minimization: drop literals implied by the rest
        let keep: Vec<bool> = learnt
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                if i == 0 {
                    return true;
                }
                let r = self.reason[l.var() as usize];
                if r == NO_REASON {
                    return true;
                }
                self.clauses[r as usize]
                    .lits
                    .iter()
                    .any(|&q| q.var() != l.var() && !self.seen[q.var() as usize] && self.level[q.var() as usize] > 0)
            })
            .collect();
        for l in &learnt[1..] {
            self.seen[l.var() as usize] = false;
        }
        let mut out: Vec<Lit> = learnt.into_iter().zip(keep).filter(|(_, k)| *k).map(|(l, _)| l).collect();

        let mut bt = 0;
        if out.len() > 1 {
            let mut max_i = 1;
            for i in 2..out.len() {
                if self.level[out[i].var() as usize] > self.level[out[max_i].var() as usize] {
                    max_i = i;
                }
            }
            out.swap(1, max_i);
            bt = self.level[out[1].var() as usize];
        }
        (out, bt)
    }

    fn lbd(&mut self, lits: &[Lit]) -> u32 {
        let mut levels: Vec<u32> = lits.iter().map(|l| self.level[l.var() as usize]).collect();
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    fn reduce_db(&mut self) {
        let mut cands: Vec<usize> = (0..self.clauses.len())
            .filter(|&i| {
                let c = &self.clauses[i];
                c.learnt && !c.deleted && c.lbd > 2
            })
            .collect();
        let locked = |s: &Self, i: usize| {
            let l0 = s.clauses[i].lits[0];
            s.value(l0) == TRUE && s.reason[l0.var() as usize] == i as u32
        };
        cands.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a], &self.clauses[b]);
            cb.lbd.cmp(&ca.lbd).then(ca.activity.partial_cmp(&cb.activity).unwrap_or(std::cmp::Ordering::Equal))
        });
        let remove = cands.len() / 2;
        for &i in cands.iter().take(remove) {
            if locked(self, i) {
                continue;
            }
            let c = &mut self.clauses[i];
            c.deleted = true;
            c.lits = Vec::new();
            self.n_learnts -= 1;
        }
        for ws in self.watches.iter_mut() {
            ws.retain(|w| !self.clauses[w.clause as usize].deleted);
        }
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.class, &self.activity) {
            if self.assigns[v as usize] == UNDEF {
                return Some(Lit::new(v, self.phase_pos[v as usize]));
            }
        }
        None
    }

    /// Solves under `assumptions`. On `Sat` the model is available through
    /// [`Solver::model_value`] until the next call.
    pub fn solve(&mut self, assumptions: &[Lit]) -> SolveResult {
        self.stats.solves += 1;
        if !self.ok {
            return SolveResult::Unsat;
        }
        self.cancel_until(0);
        let mut restart = 0u64;
        loop {
            let budget = luby(restart) * 100;
            restart += 1;
            match self.search(assumptions, budget) {
                Some(r) => {
                    self.cancel_until(0);
                    return r;
                }
                None => self.cancel_until(0),
            }
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                return SolveResult::Interrupted;
            }
        }
    }

    fn search(&mut self, assumptions: &[Lit], budget: u64) -> Option<SolveResult> {
        let mut conflicts = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                conflicts += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return Some(SolveResult::Unsat);
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let lbd = self.lbd(&learnt);
                    let first = learnt[0];
                    let ci = self.attach(learnt, true, lbd);
                    self.bump_clause(ci as usize);
                    self.enqueue(first, ci);
                }
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;
                if conflicts % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
                    return Some(SolveResult::Interrupted);
                }
                continue;
            }
            if conflicts >= budget {
                return None;
            }
            if self.n_learnts >= self.max_learnts + self.trail.len() {
                self.reduce_db();
                self.max_learnts += self.max_learnts / 10;
            }
            let mut next = None;
            while (self.decision_level() as usize) < assumptions.len() {
                let p = assumptions[self.decision_level() as usize];
                match self.value(p) {
                    TRUE => self.trail_lim.push(self.trail.len()),
                    FALSE => return Some(SolveResult::Unsat),
                    _ => {
                        next = Some(p);
                        break;
                    }
                }
            }
            let lit = match next {
                Some(l) => l,
                None => match self.pick_branch() {
                    Some(l) => l,
                    None => {
                        self.model = self.assigns.iter().map(|&a| a == TRUE).collect();
                        return Some(SolveResult::Sat);
                    }
                },
            };
            self.stats.decisions += 1;
            self.trail_lim.push(self.trail.len());
            self.enqueue(lit, NO_REASON);
        }
    }

    pub fn model_value(&self, v: Var) -> bool {
        self.model.get(v as usize).copied().unwrap_or(false)
    }

    pub fn lit_value(&self, l: Lit) -> bool {
        self.model_value(l.var()) == l.is_pos()
    }
}
