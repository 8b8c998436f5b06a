//! Curated requirement files with known verdicts.

use crate::error::FixtureError;
use crate::parser::parse_spec;
use crate::psp::SpecDocument;
use crate::sat::checker::Status;

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    pub expected: Status,
    /// The `# provenance:` header, without comment markers.
    pub provenance: String,
    pub spec: SpecDocument,
}

const FILES: [(&str, &str); 4] = [
    ("eq1-worked-example", include_str!("../../../data/fixtures/eq1-worked-example.psp")),
    ("robot-mini-base", include_str!("../../../data/fixtures/robot-mini-base.psp")),
    ("robot-mini-fault2", include_str!("../../../data/fixtures/robot-mini-fault2.psp")),
    ("robot-mini-fault6", include_str!("../../../data/fixtures/robot-mini-fault6.psp")),
];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

fn header(text: &str, key: &str) -> Option<String> {
    let mut lines = text.lines().skip_while(|l| !l.starts_with(&format!("# {key}:")));
    let first = lines.next()?.split_once(':')?.1.trim().to_string();
    let rest = lines.take_while(|l| l.starts_with("#   ")).map(|l| l[1..].trim());
    Some(std::iter::once(first.as_str()).chain(rest).collect::<Vec<_>>().join(" "))
}

pub fn load_fixture(name: &str) -> Result<Fixture, FixtureError> {
    let (name, text) = *FILES.iter().find(|(n, _)| *n == name).ok_or_else(|| FixtureError::Unknown(name.into()))?;
    let expected = match header(text, "expected").as_deref() {
        Some("sat") => Status::Sat,
        Some("unsat") => Status::Unsat,
        other => panic!("fixture {name} has a malformed expected header: {other:?}"),
    };
    let provenance = header(text, "provenance").unwrap_or_default();
    let spec = parse_spec(text).map_err(|source| FixtureError::Parse { name: name.into(), source })?;
    Ok(Fixture { name, text, expected, provenance, spec })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_load() {
        for name in fixture_names() {
            let f = load_fixture(name).unwrap();
            assert!(!f.provenance.is_empty(), "{name}");
            assert!(!f.spec.requirements.is_empty());
        }
        assert_eq!(load_fixture("robot-mini-base").unwrap().spec.requirements.len(), 8);
        assert_eq!(load_fixture("robot-mini-fault6").unwrap().expected, Status::Unsat);
        assert_eq!(load_fixture("nope"), Err(FixtureError::Unknown("nope".into())));
    }
}
