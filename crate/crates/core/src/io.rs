//! Plain-text formats for codes, groups, coordinate bijections and ideals.
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::galg::{IdealBasis, IdealKind};
use crate::perm::{Perm, PermGroup};

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn header_fields(line: &str) -> Result<Vec<(&str, &str)>> {
    line.split_whitespace()
        .map(|kv| kv.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got '{kv}'"))))
        .collect()
}

fn lookup<'a>(fields: &[(&str, &'a str)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::Parse(format!("header is missing '{key}='")))
}

fn parse_row(line: &str, n: usize) -> Result<Vec<u32>> {
    let row = line
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("bad field element '{}': {e}", x.trim()))))
        .collect::<Result<Vec<_>>>()?;
    if row.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: row.len() });
    }
    Ok(row)
}

fn write_rows(out: &mut String, rows: &[Vec<u32>]) {
    for r in rows {
        let cells: Vec<String> = r.iter().map(u32::to_string).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
}

/// `field=<spec> n=<n>` followed by comma-separated generator rows.
pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut lines = content_lines(text);
    let header = header_fields(lines.next().ok_or_else(|| Error::Parse("empty code file".into()))?)?;
    let field = Field::parse(lookup(&header, "field")?)?;
    let n: usize = lookup(&header, "n")?.parse().map_err(|e| Error::Parse(format!("bad length: {e}")))?;
    let rows = lines.map(|l| parse_row(l, n)).collect::<Result<Vec<_>>>()?;
    LinearCode::from_rows(field, n, rows)
}

pub fn format_code(code: &LinearCode) -> String {
    let mut out = format!("field={} n={}\n", code.field().spec(), code.len());
    write_rows(&mut out, code.rows());
    out
}

/// `degree <n>` followed by one generator per line.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| Error::Parse("empty group file".into()))?;
    let degree: usize = header
        .strip_prefix("degree")
        .ok_or_else(|| Error::Parse(format!("expected 'degree <n>', got '{header}'")))?
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad degree: {e}")))?;
    let gens = lines.map(|l| Perm::parse(l, degree)).collect::<Result<Vec<_>>>()?;
    PermGroup::closure(gens, degree)
}

pub fn format_group(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for p in g.generators() {
        writeln!(out, "{p}").unwrap();
    }
    out
}

/// A coordinate-to-element map, either the keyword `regular` or `n` 0-based
/// element indices separated by whitespace or commas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiSpec {
    Regular,
    Explicit(Vec<usize>),
}

pub fn parse_phi(text: &str) -> Result<PhiSpec> {
    let body: Vec<&str> = content_lines(text).collect();
    if body == ["regular"] {
        return Ok(PhiSpec::Regular);
    }
    let map = body
        .iter()
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().map_err(|e| Error::Parse(format!("bad element index '{x}': {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiSpec::Explicit(map))
}

pub fn format_phi(phi: &[usize]) -> String {
    let cells: Vec<String> = phi.iter().map(usize::to_string).collect();
    format!("{}\n", cells.join(" "))
}

/// An ideal file: `group=<name> field=<spec> side=<kind>` followed by rows
/// indexed by the group's element order.
#[derive(Clone, Debug)]
pub struct IdealFile {
    pub group: String,
    pub field: Arc<Field>,
    pub kind: IdealKind,
    pub rows: Vec<Vec<u32>>,
}

pub fn parse_ideal(text: &str) -> Result<IdealFile> {
    let mut lines = content_lines(text);
    let header = header_fields(lines.next().ok_or_else(|| Error::Parse("empty ideal file".into()))?)?;
    let group = lookup(&header, "group")?.to_string();
    let field = Field::parse(lookup(&header, "field")?)?;
    let kind: IdealKind = lookup(&header, "side")?.parse()?;
    let mut rows = Vec::new();
    for l in lines {
        let n = l.split(',').count();
        let r = parse_row(l, n)?;
        if let Some(first) = rows.first().map(Vec::len) {
            if first != r.len() {
                return Err(Error::LengthMismatch { expected: first, got: r.len() });
            }
        }
        rows.push(r);
    }
    Ok(IdealFile { group, field, kind, rows })
}

pub fn format_ideal(group: &str, field: &Field, ideal: &IdealBasis) -> String {
    let mut out = format!("group={group} field={} side={}\n", field.spec(), ideal.kind);
    write_rows(&mut out, ideal.rows());
    out
}
