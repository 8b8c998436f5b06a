//! Structured-English requirement parser.
//!
//! A requirement is a scope (`Globally,` / `Before R,` / `After Q,` /
//! `Between Q and R,` / `After Q until R,`) followed by a body template.
//! Template words are case-insensitive and reserved; identifiers are
//! case-sensitive. Parameters are propositional expressions built from
//! signals, constraints (`v < 5`, `v <= 5`, `v = 5`, `v != 5`, `v >= 5`,
//! `v > 5`), `not`, `and`, `or` and parentheses.
//!
//! Surface relations are desugared on the spot:
//! `v <= c` to `v < c or v = c`, `v >= c` to `not v < c`,
//! `v > c` to `not (v < c or v = c)`, `v != c` to `not v = c`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rust_decimal::Decimal;

use crate::error::{Diagnostic, DiagnosticKind, SpecError};
use crate::formula::{Formula, Ident, Relation, FORMULA_KEYWORDS, RESERVED_PREFIX};
use crate::psp::{signal_kinds, Body, BodyKind, Psp, Scope, ScopeKind, SignalKind, Source, SpecDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SurfaceRel {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl SurfaceRel {
    pub(crate) const ALL: [SurfaceRel; 6] =
        [SurfaceRel::Lt, SurfaceRel::Le, SurfaceRel::Eq, SurfaceRel::Ne, SurfaceRel::Ge, SurfaceRel::Gt];
}

#[derive(Debug, Clone, PartialEq)]
enum TokKind {
    Word(String),
    Number(Decimal),
    Rel(SurfaceRel),
    LParen,
    RParen,
    Comma,
    Period,
}

#[derive(Debug, Clone)]
struct Tok {
    kind: TokKind,
    col: usize,
}

impl Tok {
    fn word(&self) -> Option<&str> {
        match &self.kind {
            TokKind::Word(w) => Some(w),
            _ => None,
        }
    }

    fn is_word(&self, lit: &str) -> bool {
        match &self.kind {
            TokKind::Word(w) => w.eq_ignore_ascii_case(lit),
            TokKind::Comma => lit == ",",
            _ => false,
        }
    }
}

fn diag(line: usize, col: usize, kind: DiagnosticKind, message: impl Into<String>) -> Diagnostic {
    Diagnostic { line, column: col, kind, message: message.into() }
}

fn lex(text: &str, line: usize) -> Result<Vec<Tok>, Diagnostic> {
    let mut toks = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (_, c) = chars[i];
        let col = i + 1;
        let two = chars.get(i + 1).map(|&(_, c)| c);
        let mut push = |kind, len: usize, i: &mut usize| {
            toks.push(Tok { kind, col });
            *i += len;
        };
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => push(TokKind::LParen, 1, &mut i),
            ')' => push(TokKind::RParen, 1, &mut i),
            ',' => push(TokKind::Comma, 1, &mut i),
            '.' => push(TokKind::Period, 1, &mut i),
            '<' if two == Some('=') => push(TokKind::Rel(SurfaceRel::Le), 2, &mut i),
            '>' if two == Some('=') => push(TokKind::Rel(SurfaceRel::Ge), 2, &mut i),
            '!' if two == Some('=') => push(TokKind::Rel(SurfaceRel::Ne), 2, &mut i),
            '<' => push(TokKind::Rel(SurfaceRel::Lt), 1, &mut i),
            '>' => push(TokKind::Rel(SurfaceRel::Gt), 1, &mut i),
            '=' => push(TokKind::Rel(SurfaceRel::Eq), 1, &mut i),
            '≤' => push(TokKind::Rel(SurfaceRel::Le), 1, &mut i),
            '≥' => push(TokKind::Rel(SurfaceRel::Ge), 1, &mut i),
            '≠' => push(TokKind::Rel(SurfaceRel::Ne), 1, &mut i),
            '-' | '+' | '0'..='9' => {
                let start = i;
                let mut j = i + 1;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                // a fractional part needs at least one digit after the dot,
                // so a sentence-final `170.` stays a number plus a period
                if j + 1 < chars.len() && chars[j].1 == '.' && chars[j + 1].1.is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && chars[j].1.is_ascii_digit() {
                        j += 1;
                    }
                }
                let lit: String = chars[start..j].iter().map(|&(_, c)| c).collect();
                let lit = lit.strip_prefix('+').unwrap_or(&lit).to_string();
                let value: Decimal = lit
                    .parse()
                    .map_err(|_| diag(line, col, DiagnosticKind::BadToken, format!("malformed number `{lit}`")))?;
                if matches!(chars.get(j), Some((_, c)) if c.is_ascii_alphabetic() || *c == '_' || *c == 'e') {
                    return Err(diag(line, col, DiagnosticKind::BadToken, "malformed number"));
                }
                push(TokKind::Number(value), j - start, &mut i);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                    j += 1;
                }
                let w: String = chars[start..j].iter().map(|&(_, c)| c).collect();
                push(TokKind::Word(w), j - start, &mut i);
            }
            other => {
                return Err(diag(line, col, DiagnosticKind::BadToken, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(toks)
}

#[derive(Debug, Clone)]
enum El {
    Lit(String),
    Opt(String),
    Slot(char),
    Bound,
}

fn compile(template: &str) -> Vec<El> {
    template
        .split_whitespace()
        .map(|w| {
            if let Some(inner) = w.strip_prefix('{').and_then(|w| w.strip_suffix('}')) {
                if inner == "K" {
                    El::Bound
                } else {
                    El::Slot(inner.chars().next().expect("slot name"))
                }
            } else if let Some(inner) = w.strip_prefix('[').and_then(|w| w.strip_suffix(']')) {
                El::Opt(inner.to_string())
            } else {
                El::Lit(w.to_string())
            }
        })
        .collect()
}

const SCOPE_TEMPLATES: [(ScopeKind, &str); 5] = [
    (ScopeKind::Globally, "globally ,"),
    (ScopeKind::Before, "before {R} ,"),
    (ScopeKind::After, "after {Q} ,"),
    (ScopeKind::Between, "between {Q} and {R} ,"),
    (ScopeKind::AfterUntil, "after {Q} until {R} ,"),
];

const ALWAYS_IF: &str = "it is always the case that if";

fn body_templates() -> Vec<(BodyKind, String)> {
    vec![
        (BodyKind::Absence, "it is never the case that {P} [holds]".into()),
        (BodyKind::Universality, "it is always the case that {P} [holds]".into()),
        (BodyKind::Existence, "{P} eventually [holds]".into()),
        (BodyKind::BoundedExistence, "transitions to states in which {P} holds occur at most {K} times".into()),
        (BodyKind::Precedence, format!("{ALWAYS_IF} {{P}} holds , then {{S}} previously held")),
        (BodyKind::Response, format!("{ALWAYS_IF} {{P}} holds , then {{S}} eventually [holds]")),
        (BodyKind::Invariant, format!("{ALWAYS_IF} {{P}} holds , then {{S}} holds as well")),
        (BodyKind::Invariant, format!("{ALWAYS_IF} {{P}} holds , then {{S}} [holds]")),
        (
            BodyKind::ResponseChain12,
            format!("{ALWAYS_IF} {{P}} holds , then {{S}} eventually holds and is succeeded by {{T}}"),
        ),
        (
            BodyKind::ResponseChain21,
            format!("{ALWAYS_IF} {{S}} holds and is succeeded by {{T}} , then {{P}} eventually holds afterwards"),
        ),
        (
            BodyKind::PrecedenceChain12,
            format!("{ALWAYS_IF} {{S}} holds and is succeeded by {{T}} , then {{P}} previously held"),
        ),
        (
            BodyKind::PrecedenceChain21,
            format!("{ALWAYS_IF} {{P}} holds , then {{S}} previously held and was followed by {{T}}"),
        ),
        (
            BodyKind::ConstrainedChain,
            format!(
                "{ALWAYS_IF} {{P}} holds , then {{S}} eventually holds and is succeeded by {{T}} , \
                 where {{Z}} does not hold in between"
            ),
        ),
    ]
}

struct Grammar {
    scopes: Vec<(ScopeKind, Vec<El>)>,
    bodies: Vec<(BodyKind, Vec<El>)>,
    reserved: Vec<String>,
}

fn grammar() -> &'static Grammar {
    static GRAMMAR: OnceLock<Grammar> = OnceLock::new();
    GRAMMAR.get_or_init(|| {
        let scopes: Vec<_> = SCOPE_TEMPLATES.iter().map(|(k, t)| (*k, compile(t))).collect();
        let bodies: Vec<_> = body_templates().iter().map(|(k, t)| (*k, compile(t))).collect();
        let mut reserved: Vec<String> = ["and", "or", "not", "true", "false"].map(String::from).to_vec();
        for els in scopes.iter().map(|(_, e)| e).chain(bodies.iter().map(|(_, e)| e)) {
            for el in els {
                if let El::Lit(w) | El::Opt(w) = el {
                    if w != "," && !reserved.contains(w) {
                        reserved.push(w.clone());
                    }
                }
            }
        }
        reserved.sort();
        Grammar { scopes, bodies, reserved }
    })
}

/// Words that cannot be used as signal names.
pub fn reserved_words() -> &'static [String] {
    &grammar().reserved
}

fn is_reserved(word: &str) -> bool {
    let lower = word.to_ascii_lowercase();
    grammar().reserved.binary_search(&lower).is_ok()
}

// ---------------------------------------------------------------------------
// Parameter expressions

struct ExprParser<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl ExprParser<'_> {
    fn peek_word(&self, w: &str) -> bool {
        self.toks.get(self.pos).is_some_and(|t| t.is_word(w))
    }

    fn or(&mut self) -> Option<Formula> {
        let lhs = self.and()?;
        if self.peek_word("or") {
            self.pos += 1;
            return Some(Formula::or(lhs, self.or()?));
        }
        Some(lhs)
    }

    fn and(&mut self) -> Option<Formula> {
        let lhs = self.unary()?;
        if self.peek_word("and") {
            self.pos += 1;
            return Some(Formula::and(lhs, self.and()?));
        }
        Some(lhs)
    }

    fn unary(&mut self) -> Option<Formula> {
        if self.peek_word("not") {
            self.pos += 1;
            return Some(Formula::not(self.unary()?));
        }
        let tok = self.toks.get(self.pos)?;
        match &tok.kind {
            TokKind::LParen => {
                self.pos += 1;
                let f = self.or()?;
                match self.toks.get(self.pos)?.kind {
                    TokKind::RParen => {
                        self.pos += 1;
                        Some(f)
                    }
                    _ => None,
                }
            }
            TokKind::Word(w) => {
                if is_reserved(w) {
                    return None;
                }
                let id = Ident::new(w).ok()?;
                self.pos += 1;
                if let Some(Tok { kind: TokKind::Rel(rel), .. }) = self.toks.get(self.pos) {
                    let rel = *rel;
                    let Some(Tok { kind: TokKind::Number(n), .. }) = self.toks.get(self.pos + 1) else {
                        return None;
                    };
                    self.pos += 2;
                    return Some(desugar(id, rel, *n));
                }
                Some(Formula::prop(id))
            }
            _ => None,
        }
    }
}

pub(crate) fn desugar(v: Ident, rel: SurfaceRel, c: Decimal) -> Formula {
    let lt = || Formula::constraint(v.clone(), Relation::Lt, c);
    let eq = || Formula::constraint(v.clone(), Relation::Eq, c);
    match rel {
        SurfaceRel::Lt => lt(),
        SurfaceRel::Eq => eq(),
        SurfaceRel::Le => Formula::or(lt(), eq()),
        SurfaceRel::Ge => Formula::not(lt()),
        SurfaceRel::Gt => Formula::not(Formula::or(lt(), eq())),
        SurfaceRel::Ne => Formula::not(eq()),
    }
}

fn parse_expr(toks: &[Tok]) -> Option<Formula> {
    let mut p = ExprParser { toks, pos: 0 };
    let f = p.or()?;
    (p.pos == toks.len()).then_some(f)
}

// ---------------------------------------------------------------------------
// Template matching

#[derive(Default, Clone)]
struct Bindings {
    slots: Vec<(char, Formula)>,
    bound: Option<u32>,
}

impl Bindings {
    fn get(&self, c: char) -> Formula {
        self.slots.iter().find(|(k, _)| *k == c).map(|(_, f)| f.clone()).expect("slot bound")
    }
}

fn lit_matches(el: &El, tok: &Tok) -> bool {
    match el {
        El::Lit(w) | El::Opt(w) => tok.is_word(w),
        _ => false,
    }
}

/// Matches `els` against the whole of `toks[pos..]`.
fn match_els(els: &[El], toks: &[Tok], pos: usize, b: &mut Bindings) -> bool {
    let Some((first, rest)) = els.split_first() else {
        return pos == toks.len();
    };
    match first {
        El::Lit(_) => toks.get(pos).is_some_and(|t| lit_matches(first, t)) && match_els(rest, toks, pos + 1, b),
        El::Opt(_) => {
            (toks.get(pos).is_some_and(|t| lit_matches(first, t)) && match_els(rest, toks, pos + 1, b))
                || match_els(rest, toks, pos, b)
        }
        El::Bound => match toks.get(pos).map(|t| &t.kind) {
            Some(TokKind::Number(n)) if n.fract().is_zero() && *n >= Decimal::ONE => {
                let Ok(k) = u32::try_from(n.mantissa() / 10i128.pow(n.scale())) else {
                    return false;
                };
                let saved = b.bound.replace(k);
                if match_els(rest, toks, pos + 1, b) {
                    return true;
                }
                b.bound = saved;
                false
            }
            _ => false,
        },
        El::Slot(name) => {
            let rest_optional = rest.iter().all(|e| matches!(e, El::Opt(_)));
            let mut ends = Vec::new();
            let mut depth = 0i32;
            for (i, tok) in toks.iter().enumerate().skip(pos) {
                match tok.kind {
                    TokKind::LParen => depth += 1,
                    TokKind::RParen => depth -= 1,
                    _ => {}
                }
                if depth == 0 && i > pos {
                    if let Some(next) = rest.first() {
                        if lit_matches(next, tok) {
                            ends.push(i);
                        }
                    }
                }
            }
            if rest_optional {
                ends.push(toks.len());
            }
            for end in ends {
                if end <= pos {
                    continue;
                }
                if let Some(f) = parse_expr(&toks[pos..end]) {
                    b.slots.push((*name, f));
                    if match_els(rest, toks, end, b) {
                        return true;
                    }
                    b.slots.pop();
                }
            }
            false
        }
    }
}

fn build_scope(kind: ScopeKind, b: &Bindings) -> Scope {
    match kind {
        ScopeKind::Globally => Scope::Globally,
        ScopeKind::Before => Scope::Before(b.get('R')),
        ScopeKind::After => Scope::After(b.get('Q')),
        ScopeKind::Between => Scope::Between(b.get('Q'), b.get('R')),
        ScopeKind::AfterUntil => Scope::AfterUntil(b.get('Q'), b.get('R')),
    }
}

fn build_body(kind: BodyKind, b: &Bindings) -> Body {
    let args = kind.placeholders().iter().map(|&c| b.get(c)).collect();
    Body::from_parts(kind, args, b.bound.unwrap_or(crate::psp::DEFAULT_BOUND))
}

fn parse_line(text: &str, line: usize) -> Result<Psp, Diagnostic> {
    let mut toks = lex(text, line)?;
    if matches!(toks.last(), Some(Tok { kind: TokKind::Period, .. })) {
        toks.pop();
    }
    for (i, t) in toks.iter().enumerate() {
        match &t.kind {
            TokKind::Period => {
                return Err(diag(line, t.col, DiagnosticKind::BadToken, "unexpected `.`"));
            }
            TokKind::Rel(_) if !matches!(toks.get(i + 1).map(|t| &t.kind), Some(TokKind::Number(_))) => {
                return Err(diag(
                    line,
                    t.col,
                    DiagnosticKind::MalformedConstraint,
                    "constraint is missing its threshold",
                ));
            }
            TokKind::Rel(_) if !matches!(i.checked_sub(1).map(|j| &toks[j].kind), Some(TokKind::Word(_))) => {
                return Err(diag(line, t.col, DiagnosticKind::MalformedConstraint, "constraint is missing its variable"));
            }
            TokKind::Word(w) if w.starts_with(RESERVED_PREFIX) => {
                return Err(diag(
                    line,
                    t.col,
                    DiagnosticKind::BadIdentifier,
                    format!("identifier `{w}` uses the reserved prefix `{RESERVED_PREFIX}`"),
                ));
            }
            TokKind::Word(w) if FORMULA_KEYWORDS.contains(&w.as_str()) && !is_reserved(w) => {
                return Err(diag(
                    line,
                    t.col,
                    DiagnosticKind::BadIdentifier,
                    format!("`{w}` is a formula keyword and cannot name a signal"),
                ));
            }
            _ => {}
        }
    }

    let g = grammar();
    let mut scope_seen: Option<usize> = None;
    for (skind, sels) in &g.scopes {
        // locate where a well-formed scope could end, for diagnostics
        for (i, t) in toks.iter().enumerate() {
            if matches!(t.kind, TokKind::Comma) {
                let mut b = Bindings::default();
                if match_els(sels, &toks[..=i], 0, &mut b) {
                    scope_seen.get_or_insert(i + 1);
                }
            }
        }
        for (bkind, bels) in &g.bodies {
            let els: Vec<El> = sels.iter().chain(bels.iter()).cloned().collect();
            let mut b = Bindings::default();
            if match_els(&els, &toks, 0, &mut b) {
                let psp = Psp {
                    scope: build_scope(*skind, &b),
                    body: build_body(*bkind, &b),
                    source: Some(Source { text: text.trim().to_string(), line }),
                };
                check_kinds(&psp, &toks, line)?;
                return Ok(psp);
            }
        }
    }
    match scope_seen {
        Some(body_start) => {
            let col = toks.get(body_start).map(|t| t.col).unwrap_or(text.len() + 1);
            Err(diag(line, col, DiagnosticKind::UnknownBody, "unrecognized body template"))
        }
        None => {
            let col = toks.first().map(|t| t.col).unwrap_or(1);
            Err(diag(line, col, DiagnosticKind::UnknownScope, "unrecognized scope"))
        }
    }
}

fn ident_column(toks: &[Tok], name: &Ident) -> usize {
    toks.iter().find(|t| t.word() == Some(name.as_str())).map(|t| t.col).unwrap_or(1)
}

fn check_kinds(psp: &Psp, toks: &[Tok], line: usize) -> Result<(), Diagnostic> {
    let mut seen: BTreeMap<Ident, SignalKind> = BTreeMap::new();
    for (name, kind) in signal_kinds(psp.parameters()) {
        let prev = *seen.entry(name.clone()).or_insert(kind);
        if prev != kind {
            return Err(diag(
                line,
                ident_column(toks, &name),
                DiagnosticKind::MixedKind,
                format!("`{name}` is used both as a Boolean signal and as a numeric variable"),
            ));
        }
    }
    Ok(())
}

/// Parses one requirement sentence.
pub fn parse_requirement(text: &str) -> Result<Psp, Diagnostic> {
    parse_line(text, 1)
}

fn parse_declaration(text: &str, line: usize) -> Option<Result<(SignalKind, Vec<Ident>), Diagnostic>> {
    let trimmed = text.trim_start();
    let (head, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
    let kind = match head.to_ascii_lowercase().as_str() {
        "boolean" => SignalKind::Boolean,
        "numeric" => SignalKind::Numeric,
        _ => return None,
    };
    let col = text.len() - trimmed.len() + head.len() + 2;
    let mut names = Vec::new();
    for raw in rest.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        match Ident::new(raw) {
            Ok(id) if !is_reserved(raw) => names.push(id),
            _ => {
                return Some(Err(diag(
                    line,
                    col,
                    DiagnosticKind::BadDeclaration,
                    format!("invalid signal name `{raw}` in declaration"),
                )))
            }
        }
    }
    if names.is_empty() {
        return Some(Err(diag(line, col, DiagnosticKind::BadDeclaration, "declaration lists no signals")));
    }
    Some(Ok((kind, names)))
}

/// Parses a requirement file: one requirement per line, `#` starts a
/// comment, blank lines are skipped, and `boolean a, b` / `numeric v`
/// lines declare signal kinds. Every failing line is reported.
pub fn parse_spec(document: &str) -> Result<SpecDocument, SpecError> {
    let mut doc = SpecDocument::default();
    let mut diagnostics = Vec::new();
    let mut first_use: BTreeMap<Ident, (SignalKind, usize)> = BTreeMap::new();

    for (idx, raw) in document.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("");
        if text.trim().is_empty() {
            continue;
        }
        let uses: Vec<(Ident, SignalKind)> = match parse_declaration(text, line) {
            Some(Ok((kind, names))) => {
                let mut uses = Vec::new();
                for n in names {
                    doc.declared_signals.insert(n.clone(), kind);
                    uses.push((n, kind));
                }
                uses
            }
            Some(Err(d)) => {
                diagnostics.push(d);
                continue;
            }
            None => match parse_line(text, line) {
                Ok(psp) => {
                    let uses = signal_kinds(psp.parameters());
                    doc.requirements.push(psp);
                    uses
                }
                Err(d) => {
                    diagnostics.push(d);
                    continue;
                }
            },
        };
        for (name, kind) in uses {
            match first_use.get(&name) {
                Some((prev, prev_line)) if *prev != kind => {
                    let col = text.find(name.as_str()).map(|c| c + 1).unwrap_or(1);
                    diagnostics.push(diag(
                        line,
                        col,
                        DiagnosticKind::MixedKind,
                        format!("`{name}` is {kind} here but {prev} on line {prev_line}"),
                    ));
                    break;
                }
                Some(_) => {}
                None => {
                    first_use.insert(name, (kind, line));
                }
            }
        }
    }
    if !diagnostics.is_empty() {
        return Err(SpecError { diagnostics });
    }
    doc.signals = first_use.into_iter().map(|(n, (k, _))| (n, k)).collect();
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Ident {
        Ident::new(name).unwrap()
    }
    fn lt(var: &str, c: &str) -> Formula {
        Formula::constraint(v(var), Relation::Lt, c.parse().unwrap())
    }
    fn eq(var: &str, c: &str) -> Formula {
        Formula::constraint(v(var), Relation::Eq, c.parse().unwrap())
    }

    #[test]
    fn worked_example_requirements() {
        let r1 = parse_requirement("Globally, it is always the case that theta1 < 170 holds.").unwrap();
        assert_eq!(r1, Psp::new(Scope::Globally, Body::Universality(lt("theta1", "170"))));

        let r2 = parse_requirement("After a, v <= 8.5 eventually holds.").unwrap();
        assert_eq!(
            r2,
            Psp::new(Scope::After(Formula::var("a")), Body::Existence(Formula::or(lt("v", "8.5"), eq("v", "8.5"))))
        );

        let r3 = parse_requirement(
            "After a, it is always the case that if v >= 3.2 holds, then z eventually holds.",
        )
        .unwrap();
        assert_eq!(
            r3,
            Psp::new(
                Scope::After(Formula::var("a")),
                Body::Response { p: Formula::not(lt("v", "3.2")), s: Formula::var("z") }
            )
        );
    }

    #[test]
    fn unknown_scope() {
        let d = parse_requirement("Sometimes, pigs fly.").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::UnknownScope);
        assert_eq!(d.column, 1);
    }

    #[test]
    fn unknown_body() {
        let d = parse_requirement("Globally, pigs fly.").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::UnknownBody);
        assert_eq!(d.column, 11);
    }

    #[test]
    fn missing_threshold() {
        let d = parse_requirement("Globally, it is always the case that v < holds.").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::MalformedConstraint);
        assert_eq!(d.column, 40);
    }

    #[test]
    fn mixed_kind_in_one_requirement() {
        let d = parse_requirement("Globally, it is always the case that if v holds, then v < 3 holds as well.")
            .unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::MixedKind);
    }

    #[test]
    fn reserved_prefix_rejected() {
        let d = parse_requirement("Globally, __psp_c_v_1 eventually holds.").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::BadIdentifier);
    }

    #[test]
    fn surface_relations() {
        let p = |s: &str| match parse_requirement(&format!("Globally, {s} eventually holds.")).unwrap().body {
            Body::Existence(f) => f,
            other => panic!("{other:?}"),
        };
        assert_eq!(p("x <= 1"), Formula::or(lt("x", "1"), eq("x", "1")));
        assert_eq!(p("x ≤ 1"), Formula::or(lt("x", "1"), eq("x", "1")));
        assert_eq!(p("x >= 1"), Formula::not(lt("x", "1")));
        assert_eq!(p("x > 1"), Formula::not(Formula::or(lt("x", "1"), eq("x", "1"))));
        assert_eq!(p("x != -1.5"), Formula::not(eq("x", "-1.5")));
        assert_eq!(p("x = 1"), eq("x", "1"));
    }

    #[test]
    fn keywords_are_case_insensitive() {
        let a = parse_requirement("GLOBALLY, It Is Always The Case That p Holds").unwrap();
        let b = parse_requirement("Globally, it is always the case that p holds.").unwrap();
        assert_eq!(a, b);
        let c = parse_requirement("Globally, it is always the case that P holds.").unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn optional_holds_and_as_well() {
        let a = parse_requirement("Globally, it is always the case that theta1 < 170").unwrap();
        assert_eq!(a.body, Body::Universality(lt("theta1", "170")));
        let f2 = parse_requirement(
            "Globally, it is always the case that if state_init holds, then not arm_idle holds as well.",
        )
        .unwrap();
        assert_eq!(
            f2.body,
            Body::Invariant { p: Formula::var("state_init"), s: Formula::not(Formula::var("arm_idle")) }
        );
    }

    #[test]
    fn scopes() {
        let s = |t: &str| parse_requirement(&format!("{t} p eventually holds.")).unwrap().scope;
        assert_eq!(s("Before r,"), Scope::Before(Formula::var("r")));
        assert_eq!(s("After q,"), Scope::After(Formula::var("q")));
        assert_eq!(s("Between q and r,"), Scope::Between(Formula::var("q"), Formula::var("r")));
        assert_eq!(s("After q until r,"), Scope::AfterUntil(Formula::var("q"), Formula::var("r")));
        assert_eq!(
            s("Between (a and b) and c or d,"),
            Scope::Between(
                Formula::and(Formula::var("a"), Formula::var("b")),
                Formula::or(Formula::var("c"), Formula::var("d"))
            )
        );
    }

    #[test]
    fn all_bodies_round_trip() {
        let lines = [
            "Globally, it is never the case that p holds.",
            "Globally, it is always the case that p holds.",
            "Globally, p eventually holds.",
            "Globally, transitions to states in which p holds occur at most 3 times.",
            "Globally, it is always the case that if p holds, then s previously held.",
            "Globally, it is always the case that if p holds, then s eventually holds.",
            "Globally, it is always the case that if p holds, then s holds as well.",
            "Globally, it is always the case that if p holds, then s eventually holds and is succeeded by t.",
            "Globally, it is always the case that if s holds and is succeeded by t, then p eventually holds afterwards.",
            "Globally, it is always the case that if s holds and is succeeded by t, then p previously held.",
            "Globally, it is always the case that if p holds, then s previously held and was followed by t.",
            "Globally, it is always the case that if p holds, then s eventually holds and is succeeded by t, where z does not hold in between.",
        ];
        let mut kinds = Vec::new();
        for line in lines {
            let psp = parse_requirement(line).unwrap();
            assert_eq!(psp.to_string(), line);
            kinds.push(psp.body.kind());
        }
        kinds.sort();
        kinds.dedup();
        assert_eq!(kinds.len(), 12);
    }

    #[test]
    fn spec_document() {
        let doc = parse_spec(
            "# worked example\n\
             Globally, it is always the case that v <= 5.0 holds.\n\
             \n\
             After a, v <= 8.5 eventually holds.\n\
             After a, it is always the case that if v >= 3.2 holds, then z eventually holds.\n",
        )
        .unwrap();
        assert_eq!(doc.requirements.len(), 3);
        let kinds: Vec<(String, SignalKind)> =
            doc.signals.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        assert_eq!(
            kinds,
            vec![
                ("a".into(), SignalKind::Boolean),
                ("v".into(), SignalKind::Numeric),
                ("z".into(), SignalKind::Boolean)
            ]
        );
        assert_eq!(doc.requirements[1].source.as_ref().unwrap().line, 4);
    }

    #[test]
    fn empty_document() {
        assert_eq!(parse_spec("").unwrap().requirements.len(), 0);
        assert_eq!(parse_spec("# nothing\n\n").unwrap().requirements.len(), 0);
    }

    #[test]
    fn reports_every_bad_line() {
        let doc = "Globally, p eventually holds.\n\
                   Globally, q eventually holds.\n\
                   Globally, r eventually.\n\
                   Whenever, s eventually holds.\n\
                   Globally, it is never the case that t holds.\n";
        let err = parse_spec(doc).unwrap_err();
        assert_eq!(err.diagnostics.len(), 1);
        assert_eq!(err.diagnostics[0].line, 4);

        let err = parse_spec("Globally, p eventually holds.\nGlobally, p < 3 eventually holds.\nfoo\n").unwrap_err();
        let lines: Vec<usize> = err.diagnostics.iter().map(|d| d.line).collect();
        assert_eq!(lines, vec![2, 3]);
        assert_eq!(err.diagnostics[0].kind, DiagnosticKind::MixedKind);
    }

    #[test]
    fn declarations() {
        let doc = parse_spec("numeric w\nboolean a, b\nGlobally, a eventually holds.\n").unwrap();
        assert_eq!(doc.declared_signals.len(), 3);
        assert_eq!(doc.numeric_variables().count(), 1);
        let err = parse_spec("numeric a\nGlobally, a eventually holds.\n").unwrap_err();
        assert_eq!(err.diagnostics[0].kind, DiagnosticKind::MixedKind);
    }
}
