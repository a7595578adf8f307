//! Text files for census results.
//!
//! An orbit file holds one kernel orbit per line:
//!
//! ```text
//! rep=0,1,5 orbit_size=48 canon=01100...
//! ```
//!
//! `rep` lists element indices, `canon` is the hex of the canonical bytes of
//! `BCay(G, rep)`. Tables are also emitted as TSV with a header row.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::classify::Table1Row;
use super::registry::RegistryReport;
use crate::ci::SetClassifier;
use crate::error::{Error, Result};
use crate::group::ElemSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLine {
    pub rep: ElemSet,
    pub orbit_size: u64,
    pub canon: Vec<u8>,
}

fn to_hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::with_capacity(bytes.len() * 2), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn from_hex(text: &str) -> Result<Vec<u8>> {
    if !text.len().is_multiple_of(2) {
        return Err(Error::Parse("odd-length hex".into()));
    }
    (0..text.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&text[i..i + 2], 16).map_err(|_| Error::Parse(format!("bad hex `{text}`"))))
        .collect()
}

/// File name for a group and size, with characters outside `[A-Za-z0-9_]` replaced.
pub fn orbit_file_name(group: &str, size: usize) -> String {
    let safe: String = group.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    format!("{safe}-k{size}.orbits")
}

pub fn orbit_lines(cls: &SetClassifier) -> Vec<OrbitLine> {
    cls.index()
        .reps
        .iter()
        .enumerate()
        .map(|(i, r)| OrbitLine { rep: r.set, orbit_size: r.orbit_size, canon: cls.canonical_of(i).to_vec() })
        .collect()
}

pub fn format_orbit_lines(lines: &[OrbitLine]) -> String {
    let mut out = String::new();
    for l in lines {
        let rep: Vec<String> = l.rep.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "rep={} orbit_size={} canon={}", rep.join(","), l.orbit_size, to_hex(&l.canon));
    }
    out
}

pub fn parse_orbit_lines(text: &str) -> Result<Vec<OrbitLine>> {
    let mut lines = Vec::new();
    for (no, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let bad = || Error::Parse(format!("orbit file line {}: `{line}`", no + 1));
        let mut fields = line.split_whitespace();
        let mut field = |key: &str| fields.next().and_then(|f| f.strip_prefix(key)).ok_or_else(bad);
        let rep_text = field("rep=")?;
        let size_text = field("orbit_size=")?;
        let canon_text = field("canon=")?;
        let mut rep = ElemSet::default();
        for x in rep_text.split(',').filter(|x| !x.is_empty()) {
            let x: usize = x.parse().map_err(|_| bad())?;
            if x >= 64 {
                return Err(bad());
            }
            rep = rep.with(x);
        }
        lines.push(OrbitLine { rep, orbit_size: size_text.parse().map_err(|_| bad())?, canon: from_hex(canon_text)? });
    }
    Ok(lines)
}

/// Writes the orbit file of `cls` into `dir` and returns its path.
pub fn write_orbit_file(dir: &Path, cls: &SetClassifier) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(orbit_file_name(cls.group().name(), cls.size()));
    fs::write(&path, format_orbit_lines(&orbit_lines(cls)))?;
    Ok(path)
}

pub fn read_orbit_file(path: &Path) -> Result<Vec<OrbitLine>> {
    parse_orbit_lines(&fs::read_to_string(path)?)
}

fn yn(b: bool) -> &'static str {
    if b {
        "Y"
    } else {
        "N"
    }
}

pub fn table1_tsv(rows: &[Table1Row]) -> String {
    let mut out = String::from("line\torder\tgroup\texpected\tcomputed\tmatch\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.entry.line,
            r.entry.order,
            r.entry.group,
            yn(r.entry.expected_k2pci),
            yn(r.computed.result),
            yn(r.matches())
        );
    }
    out
}

pub fn registry_tsv(reports: &[RegistryReport]) -> String {
    let mut out = String::from("id\tgroup\tcheck\texpected\tobserved\tpassed\n");
    for r in reports {
        for c in &r.checks {
            let kind =
                serde_json::to_value(c.kind).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.id,
                r.group,
                kind,
                c.expected,
                c.observed,
                c.expected == c.observed
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::budget::Budgets;
    use crate::group::named_group;

    #[test]
    fn orbit_file_round_trips() {
        let g = Arc::new(named_group("D6").unwrap());
        let cls = SetClassifier::new(&g, 2, &Budgets::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = write_orbit_file(dir.path(), &cls).unwrap();
        assert!(path.ends_with("D6-k2.orbits"));
        let lines = read_orbit_file(&path).unwrap();
        assert_eq!(lines, orbit_lines(&cls));
        assert_eq!(lines.iter().map(|l| l.orbit_size).sum::<u64>(), 15);
        assert!(std::fs::read_to_string(&path).unwrap().starts_with("rep=0,1 orbit_size="));
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(parse_orbit_lines("rep=0,1 orbit_size=x canon=00").is_err());
        assert!(parse_orbit_lines("rep=0,1 canon=00").is_err());
        assert!(parse_orbit_lines("rep=0 orbit_size=1 canon=0").is_err());
        assert!(parse_orbit_lines("\n").unwrap().is_empty());
    }
}
