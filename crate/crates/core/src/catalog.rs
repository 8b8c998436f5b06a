//! Pattern catalog: every (body, scope) pair mapped to a temporal formula.
//!
//! Templates are canonical-syntax strings over the placeholders `p s t z`
//! (body parameters) and `q r` (scope delimiters). State-delimited scopes
//! are closed on the left and open on the right.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::formula::{Atom, Formula, Ident};
use crate::psp::{Body, BodyKind, Psp, Scope, ScopeKind, DEFAULT_BOUND};
use crate::syntax::parse_formula;

use BodyKind as B;
use ScopeKind as S;

/// The full table. Bounded existence rows are the `k = 2` instances.
pub const TEMPLATES: [(BodyKind, ScopeKind, &str); 60] = [
    (B::Absence, S::Globally, "G !p"),
    (B::Absence, S::Before, "F r -> (!p U r)"),
    (B::Absence, S::After, "G (q -> G !p)"),
    (B::Absence, S::Between, "G ((q & !r & F r) -> (!p U r))"),
    (B::Absence, S::AfterUntil, "G ((q & !r) -> (!p W r))"),
    (B::Universality, S::Globally, "G p"),
    (B::Universality, S::Before, "F r -> (p U r)"),
    (B::Universality, S::After, "G (q -> G p)"),
    (B::Universality, S::Between, "G ((q & !r & F r) -> (p U r))"),
    (B::Universality, S::AfterUntil, "G ((q & !r) -> (p W r))"),
    (B::Existence, S::Globally, "F p"),
    (B::Existence, S::Before, "!r W (p & !r)"),
    (B::Existence, S::After, "G (q -> F p)"),
    (B::Existence, S::Between, "G ((q & !r) -> (!r W (p & !r)))"),
    (B::Existence, S::AfterUntil, "G ((q & !r) -> (!r U (p & !r)))"),
    (B::BoundedExistence, S::Globally, "!p W (p W (!p W (p W G !p)))"),
    (
        B::BoundedExistence,
        S::Before,
        "F r -> ((!p & !r) U (r | ((p & !r) U (r | ((!p & !r) U (r | ((p & !r) U (r | (!p U r)))))))))",
    ),
    (B::BoundedExistence, S::After, "F q -> (!q U (q & (!p W (p W (!p W (p W G !p))))))"),
    (
        B::BoundedExistence,
        S::Between,
        "G ((q & F r) -> ((!p & !r) U (r | ((p & !r) U (r | ((!p & !r) U (r | ((p & !r) U (r | (!p U r))))))))))",
    ),
    (
        B::BoundedExistence,
        S::AfterUntil,
        "G (q -> ((!p & !r) U (r | ((p & !r) U (r | ((!p & !r) U (r | ((p & !r) U (r | (!p W r) | G p)))))))))",
    ),
    (B::Precedence, S::Globally, "!p W s"),
    (B::Precedence, S::Before, "F r -> (!p U (s | r))"),
    (B::Precedence, S::After, "G !q | F (q & (!p W s))"),
    (B::Precedence, S::Between, "G ((q & !r & F r) -> (!p U (s | r)))"),
    (B::Precedence, S::AfterUntil, "G ((q & !r) -> (!p W (s | r)))"),
    (B::Response, S::Globally, "G (p -> F s)"),
    (B::Response, S::Before, "F r -> ((p -> (!r U (s & !r))) U r)"),
    (B::Response, S::After, "G (q -> G (p -> F s))"),
    (B::Response, S::Between, "G ((q & !r & F r) -> ((p -> (!r U (s & !r))) U r))"),
    (B::Response, S::AfterUntil, "G ((q & !r) -> ((p -> (!r U (s & !r))) W r))"),
    (B::PrecedenceChain12, S::Globally, "F (s & X F t) -> (!s U p)"),
    (B::PrecedenceChain12, S::Before, "F r -> (!(s & !r & X (!r U (t & !r))) U (r | p))"),
    (B::PrecedenceChain12, S::After, "G !q | (!q U (q & (F (s & X F t) -> (!s U p))))"),
    (B::PrecedenceChain12, S::Between, "G ((q & F r) -> (!(s & !r & X (!r U (t & !r))) U (r | p)))"),
    (
        B::PrecedenceChain12,
        S::AfterUntil,
        "G (q -> ((!(s & !r & X (!r U (t & !r))) U (r | p)) | G !(s & X F t)))",
    ),
    (B::PrecedenceChain21, S::Globally, "F p -> (!p U (s & !p & X (!p U t)))"),
    (B::PrecedenceChain21, S::Before, "F r -> (!p U (r | (s & !p & X (!p U t))))"),
    (B::PrecedenceChain21, S::After, "G !q | (!q U (q & (F p -> (!p U (s & !p & X (!p U t))))))"),
    (B::PrecedenceChain21, S::Between, "G ((q & F r) -> (!p U (r | (s & !p & X (!p U t)))))"),
    (B::PrecedenceChain21, S::AfterUntil, "G (q -> ((!p U (r | (s & !p & X (!p U t)))) | G !p))"),
    (B::ResponseChain12, S::Globally, "G (p -> F (s & X F t))"),
    (B::ResponseChain12, S::Before, "F r -> ((p -> (!r U (s & !r & X (!r U t)))) U r)"),
    (B::ResponseChain12, S::After, "G (q -> G (p -> F (s & X F t)))"),
    (B::ResponseChain12, S::Between, "G ((q & F r) -> ((p -> (!r U (s & !r & X (!r U t)))) U r))"),
    (
        B::ResponseChain12,
        S::AfterUntil,
        "G (q -> ((p -> (!r U (s & !r & X (!r U t)))) U (r | G (p -> F (s & X F t)))))",
    ),
    (B::ResponseChain21, S::Globally, "G ((s & X F t) -> X F (t & F p))"),
    (B::ResponseChain21, S::Before, "F r -> (((s & X (!r U t)) -> X (!r U (t & F p))) U r)"),
    (B::ResponseChain21, S::After, "G (q -> G ((s & X F t) -> X (!t U (t & F p))))"),
    (B::ResponseChain21, S::Between, "G ((q & F r) -> (((s & X (!r U t)) -> X (!r U (t & F p))) U r))"),
    (
        B::ResponseChain21,
        S::AfterUntil,
        "G (q -> (((s & X (!r U t)) -> X (!r U (t & F p))) U (r | G ((s & X (!r U t)) -> X (!r U (t & F p))))))",
    ),
    (B::ConstrainedChain, S::Globally, "G (p -> F (s & !z & X (!z U t)))"),
    (B::ConstrainedChain, S::Before, "F r -> ((p -> (!r U (s & !r & !z & X ((!r & !z) U t)))) U r)"),
    (B::ConstrainedChain, S::After, "G (q -> G (p -> F (s & !z & X (!z U t))))"),
    (
        B::ConstrainedChain,
        S::Between,
        "G ((q & F r) -> ((p -> (!r U (s & !r & !z & X ((!r & !z) U t)))) U r))",
    ),
    (
        B::ConstrainedChain,
        S::AfterUntil,
        "G (q -> ((p -> (!r U (s & !r & !z & X ((!r & !z) U t)))) U (r | G (p -> F (s & !z & X (!z U t))))))",
    ),
    (B::Invariant, S::Globally, "G (p -> s)"),
    (B::Invariant, S::Before, "F r -> ((p -> s) U r)"),
    (B::Invariant, S::After, "G (q -> G (p -> s))"),
    (B::Invariant, S::Between, "G ((q & !r & F r) -> ((p -> s) U r))"),
    (B::Invariant, S::AfterUntil, "G ((q & !r) -> ((p -> s) W r))"),
];

fn parsed() -> &'static HashMap<(BodyKind, ScopeKind), Formula> {
    static TABLE: OnceLock<HashMap<(BodyKind, ScopeKind), Formula>> = OnceLock::new();
    TABLE.get_or_init(|| {
        TEMPLATES
            .iter()
            .map(|(b, s, t)| {
                let f = parse_formula(t).unwrap_or_else(|e| panic!("catalog template `{t}`: {e}"));
                ((*b, *s), f)
            })
            .collect()
    })
}

/// Template for `(body, scope)` over the placeholder propositions.
pub fn template(body: BodyKind, scope: ScopeKind) -> &'static Formula {
    &parsed()[&(body, scope)]
}

/// Bounded existence for an arbitrary bound, generalizing the `k = 2` rows.
pub fn bounded_existence_template(scope: ScopeKind, k: u32) -> Formula {
    let p = || Formula::var("p");
    let q = || Formula::var("q");
    let r = || Formula::var("r");
    let not = Formula::not;
    let global = || {
        let mut f = Formula::always(not(p()));
        for _ in 0..k {
            f = Formula::weak_until(not(p()), Formula::weak_until(p(), f));
        }
        f
    };
    let before = |last: Formula| {
        let mut f = last;
        for _ in 0..k {
            let inner = Formula::until(Formula::and(p(), not(r())), Formula::or(r(), f));
            f = Formula::until(Formula::and(not(p()), not(r())), Formula::or(r(), inner));
        }
        f
    };
    match scope {
        ScopeKind::Globally => global(),
        ScopeKind::Before => Formula::implies(Formula::eventually(r()), before(Formula::until(not(p()), r()))),
        ScopeKind::After => Formula::implies(
            Formula::eventually(q()),
            Formula::until(not(q()), Formula::and(q(), global())),
        ),
        ScopeKind::Between => Formula::always(Formula::implies(
            Formula::and(q(), Formula::eventually(r())),
            before(Formula::until(not(p()), r())),
        )),
        ScopeKind::AfterUntil => {
            let last = Formula::or(Formula::weak_until(not(p()), r()), Formula::always(p()));
            let mut f = last;
            for _ in 0..k {
                let inner = Formula::until(Formula::and(p(), not(r())), Formula::or(r(), f));
                f = Formula::until(Formula::and(not(p()), not(r())), Formula::or(r(), inner));
            }
            Formula::always(Formula::implies(q(), f))
        }
    }
}

fn substitute(template: &Formula, bind: &[(char, &Formula)]) -> Formula {
    template.map_atoms(&mut |a| match a {
        Atom::Prop(name) => {
            let mut chars = name.as_str().chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => bind
                    .iter()
                    .find(|(k, _)| k.to_ascii_lowercase() == c)
                    .map(|(_, f)| (*f).clone())
                    .unwrap_or_else(|| Formula::Atom(a.clone())),
                _ => Formula::Atom(a.clone()),
            }
        }
        Atom::Constraint(_) => Formula::Atom(a.clone()),
    })
}

/// The temporal formula of a pattern instance. Constraint atoms are kept.
pub fn instantiate(psp: &Psp) -> Formula {
    let kind = psp.body.kind();
    let scope = psp.scope.kind();
    let owned;
    let tpl = match psp.body.bound() {
        Some(k) if k != DEFAULT_BOUND => {
            owned = bounded_existence_template(scope, k);
            &owned
        }
        _ => template(kind, scope),
    };
    let mut bind: Vec<(char, &Formula)> = kind.placeholders().iter().copied().zip(psp.body.args()).collect();
    let (q, r) = psp.scope.delimiters();
    if let Some(q) = q {
        bind.push(('Q', q));
    }
    if let Some(r) = r {
        bind.push(('R', r));
    }
    substitute(tpl, &bind)
}

/// Placeholder-level instance for documentation and tests.
pub fn placeholder_psp(body: BodyKind, scope: ScopeKind) -> Psp {
    let v = |c: char| Formula::prop(Ident::any(&c.to_string()).expect("placeholder"));
    let args = body.placeholders().iter().map(|&c| v(c.to_ascii_lowercase())).collect();
    let scope = match scope {
        ScopeKind::Globally => Scope::Globally,
        ScopeKind::Before => Scope::Before(v('r')),
        ScopeKind::After => Scope::After(v('q')),
        ScopeKind::Between => Scope::Between(v('q'), v('r')),
        ScopeKind::AfterUntil => Scope::AfterUntil(v('q'), v('r')),
    };
    Psp::new(scope, Body::from_parts(body, args, DEFAULT_BOUND))
}

/// Text table of every mapping, one block per body.
pub fn render_catalog() -> String {
    let mut out = String::new();
    for body in BodyKind::ALL {
        out.push_str(body.name());
        out.push('\n');
        for scope in ScopeKind::ALL {
            let f = template(body, scope);
            out.push_str(&format!("  {:<16} {}\n", scope.name(), f));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{eval_trace, LassoTrace};

    #[test]
    fn table_is_total_and_parses() {
        assert_eq!(parsed().len(), 60);
        for b in BodyKind::ALL {
            for s in ScopeKind::ALL {
                let _ = template(b, s);
            }
        }
    }

    #[test]
    fn bounded_generalization_matches_table_at_two() {
        for s in ScopeKind::ALL {
            assert_eq!(&bounded_existence_template(s, 2), template(BodyKind::BoundedExistence, s), "{s:?}");
        }
    }

    #[test]
    fn substitution_keeps_structure() {
        let psp = Psp::new(
            Scope::After(Formula::var("a")),
            Body::Response { p: Formula::var("go"), s: Formula::not(Formula::var("halt")) },
        );
        assert_eq!(instantiate(&psp).to_string(), "G (a -> G (go -> F !halt))");
    }

    #[test]
    fn placeholders_do_not_capture_user_signals() {
        // a user signal literally named `q` inside a body parameter must
        // not be replaced by the scope delimiter
        let psp = Psp::new(Scope::After(Formula::var("a")), Body::Absence(Formula::var("q")));
        assert_eq!(instantiate(&psp).to_string(), "G (a -> G !q)");
    }

    fn blocks(t: &LassoTrace, p: &str) -> usize {
        let p = Ident::any(p).unwrap();
        let has = |s: &crate::trace::State| s.contains(&p);
        if t.loop_.iter().any(has) && !t.loop_.iter().all(has) {
            return usize::MAX;
        }
        let mut states: Vec<bool> = t.prefix.iter().map(has).collect();
        states.push(has(&t.loop_[0]));
        states.iter().enumerate().filter(|&(i, &v)| v && (i == 0 || !states[i - 1])).count()
    }

    #[test]
    fn bounded_existence_counts_blocks() {
        // exhaustive over lassos on one proposition with prefix, loop <= 4
        for k in 1..=3 {
            let f = bounded_existence_template(ScopeKind::Globally, k);
            for_each_lasso(&["p"], 4, 4, |t| {
                assert_eq!(eval_trace(&f, t).unwrap(), blocks(t, "p") <= k as usize, "k={k} {t}");
            });
        }
    }

    pub(crate) fn for_each_lasso(names: &[&str], max_pre: usize, max_loop: usize, mut f: impl FnMut(&LassoTrace)) {
        let ids: Vec<Ident> = names.iter().map(|n| Ident::any(n).unwrap()).collect();
        let n_states = 1usize << ids.len();
        let state = |bits: usize| ids.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, v)| v.clone()).collect();
        for pre in 0..=max_pre {
            for lp in 1..=max_loop {
                let len = pre + lp;
                let total = n_states.pow(len as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut states = Vec::with_capacity(len);
                    for _ in 0..len {
                        states.push(state(c % n_states));
                        c /= n_states;
                    }
                    let loop_ = states.split_off(pre);
                    f(&LassoTrace::new(states, loop_).unwrap());
                }
            }
        }
    }

    #[test]
    fn invariant_and_absence_oracles() {
        let inv = instantiate(&placeholder_psp(BodyKind::Invariant, ScopeKind::Globally));
        let abs = instantiate(&placeholder_psp(BodyKind::Absence, ScopeKind::Globally));
        let never = Formula::not(Formula::eventually(Formula::var("p")));
        let (pi, si) = (Ident::any("p").unwrap(), Ident::any("s").unwrap());
        for_each_lasso(&["p", "s"], 2, 2, |t| {
            let pointwise = (0..t.len()).all(|i| !t.state(i).contains(&pi) || t.state(i).contains(&si));
            assert_eq!(eval_trace(&inv, t).unwrap(), pointwise);
            assert_eq!(eval_trace(&abs, t).unwrap(), eval_trace(&never, t).unwrap());
        });
    }

    #[test]
    fn catalog_text_lists_every_row() {
        let text = render_catalog();
        assert_eq!(text.lines().count(), 12 * 6);
        assert!(text.contains("G (p -> F s)"));
    }
}
