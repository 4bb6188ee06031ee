//! Text formats for complexes and subgroups.
//!
//! A complex file starts with `m=<int>` followed by one facet per line as
//! space separated 1-based vertices. `#` starts a comment. The empty face on
//! its own is written `{}`. A subgroup file starts with `d=1` or `d=2`, may
//! give `m=<int>`, and then lists rows under `annihilator:` (d = 2) or
//! `subspace:` (d = 1).

use crate::error::{MaqError, Result};
use crate::homology::GradedAbGroup;
use crate::int::Int;
use crate::lattice::{BinarySubspace, Lattice, TorusSubgroup};
use crate::simplicial::{rp2_6, set_of, vertices_of, SimplicialComplex};
use std::fmt::Write as _;
use std::path::Path;

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(n, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((n + 1, line))
    })
}

fn header(line: usize, text: &str, key: &str) -> Result<Option<usize>> {
    let Some(rest) = text.strip_prefix(key).and_then(|r| r.trim_start().strip_prefix('=')) else {
        return Ok(None);
    };
    rest.trim()
        .parse()
        .map(Some)
        .map_err(|_| MaqError::parse(line, format!("bad value in `{text}`")))
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut lines = content_lines(text);
    let (first, head) = lines.next().ok_or_else(|| MaqError::parse(1, "missing `m=` header"))?;
    let m = header(first, head, "m")?.ok_or_else(|| MaqError::parse(first, "expected `m=<int>`"))?;
    if m > 63 {
        return Err(MaqError::parse(first, format!("m = {m} is above the supported 63")));
    }
    let mut facets = Vec::new();
    for (n, line) in lines {
        if line == "{}" {
            facets.push(0);
            continue;
        }
        let mut vs = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| MaqError::parse(n, format!("`{tok}` is not a vertex")))?;
            if v == 0 || v > m {
                return Err(MaqError::parse(n, format!("vertex {v} outside 1..={m}")));
            }
            vs.push(v);
        }
        facets.push(set_of(&vs));
    }
    SimplicialComplex::new(m, facets).map_err(|e| match e {
        MaqError::Parse { .. } => e,
        other => MaqError::parse(0, other.to_string()),
    })
}

pub fn format_complex(k: &SimplicialComplex) -> String {
    let mut out = format!("m={}\n", k.m());
    for &f in k.facets() {
        if f == 0 {
            out.push_str("{}\n");
        } else {
            let vs: Vec<String> = vertices_of(f).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", vs.join(" "));
        }
    }
    out
}

fn builtin_args(name: &str, call: &str) -> Option<Vec<usize>> {
    let inner = call.strip_prefix(name)?.trim().strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|a| a.trim().parse().ok()).collect()
}

/// Resolves `builtin:rp2_6`, `builtin:skeleton(m,k)` and
/// `builtin:boundary_simplex(m)`.
pub fn builtin_complex(name: &str) -> Result<SimplicialComplex> {
    let name = name.trim();
    let bad = || MaqError::parse(0, format!("unknown built-in `{name}`"));
    if name == "rp2_6" {
        return Ok(rp2_6());
    }
    let result = if let Some(args) = builtin_args("skeleton", name) {
        match args[..] {
            [m, k] => SimplicialComplex::skeleton(m, k),
            _ => return Err(bad()),
        }
    } else if let Some(args) = builtin_args("boundary_simplex", name) {
        match args[..] {
            [m] => SimplicialComplex::boundary_simplex(m),
            _ => return Err(bad()),
        }
    } else {
        return Err(bad());
    };
    result.map_err(|e| MaqError::parse(0, e.to_string()))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| MaqError::parse(0, format!("cannot read {}: {e}", path.display())))
}

/// Loads a complex from a file or a `builtin:` name.
pub fn load_complex(source: &str) -> Result<SimplicialComplex> {
    match source.strip_prefix("builtin:") {
        Some(name) => builtin_complex(name),
        None => parse_complex(&read(Path::new(source))?),
    }
}

/// Parses a subgroup. `m_hint` supplies the ambient rank when the file has
/// no `m=` line and no rows.
pub fn parse_subgroup(text: &str, m_hint: Option<usize>) -> Result<TorusSubgroup> {
    let mut lines = content_lines(text);
    let (first, head) = lines.next().ok_or_else(|| MaqError::parse(1, "missing `d=` header"))?;
    let d = header(first, head, "d")?.ok_or_else(|| MaqError::parse(first, "expected `d=<1|2>`"))?;
    let section = match d {
        1 => "subspace:",
        2 => "annihilator:",
        _ => return Err(MaqError::parse(first, format!("d must be 1 or 2, got {d}"))),
    };
    let mut m = None;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut in_rows = false;
    for (n, line) in lines {
        if !in_rows {
            if let Some(v) = header(n, line, "m")? {
                m = Some(v);
            } else if line == section {
                in_rows = true;
            } else {
                return Err(MaqError::parse(n, format!("expected `m=` or `{section}`, got `{line}`")));
            }
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| MaqError::parse(n, format!("`{t}` is not an integer"))))
            .collect::<Result<Vec<_>>>()?;
        let width = *m.get_or_insert(row.len());
        if row.len() != width {
            return Err(MaqError::parse(n, format!("row has {} entries, expected {width}", row.len())));
        }
        if d == 1 && row.iter().any(|&x| x != 0 && x != 1) {
            return Err(MaqError::parse(n, "subspace rows must be 0/1 vectors"));
        }
        rows.push(row);
    }
    let m = m.or(m_hint).ok_or_else(|| MaqError::parse(first, "cannot infer m from an empty subgroup file"))?;
    if let Some(h) = m_hint {
        if h != m {
            return Err(MaqError::parse(first, format!("subgroup lives in rank {m}, the complex has m = {h}")));
        }
    }
    if m > 63 {
        return Err(MaqError::parse(first, format!("m = {m} is above the supported 63")));
    }
    Ok(if d == 1 {
        let vecs = rows.iter().map(|r| r.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | (x as u64) << i));
        TorusSubgroup::from_subspace(BinarySubspace::new(m, vecs))
    } else {
        TorusSubgroup::from_annihilator(Lattice::from_i64(m, &rows))
    })
}

pub fn format_subgroup(h: &TorusSubgroup) -> String {
    let m = h.ambient();
    let mut out = format!("d={}\nm={m}\n", h.d());
    match (h.annihilator(), h.subspace()) {
        (Some(lat), _) => {
            out.push_str("annihilator:\n");
            for row in lat.basis().rows() {
                let cells: Vec<String> = row.iter().map(Int::to_string).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
        }
        (None, Some(sub)) => {
            out.push_str("subspace:\n");
            for &v in sub.basis() {
                let cells: Vec<&str> = (0..m).map(|i| if v >> i & 1 == 1 { "1" } else { "0" }).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
        }
        (None, None) => unreachable!("a subgroup is either a lattice or a subspace"),
    }
    out
}

pub fn load_subgroup(path: &str, m_hint: Option<usize>) -> Result<TorusSubgroup> {
    parse_subgroup(&read(Path::new(path))?, m_hint)
}

pub fn graded_to_json(g: &GradedAbGroup) -> serde_json::Value {
    serde_json::to_value(g).expect("graded groups always serialize")
}

pub fn graded_from_json(text: &str) -> Result<GradedAbGroup> {
    serde_json::from_str(text).map_err(|e| MaqError::parse(e.line(), e.to_string()))
}
