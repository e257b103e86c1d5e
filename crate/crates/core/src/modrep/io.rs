//! The `.mod` text format: a header `dim d field 2^e gens m degree n`, the
//! group in `.grp` format, then `m` matrices as hex blocks.

use std::fmt::Write as _;
use std::path::Path;

use super::GModule;
use crate::error::{Error, Result};
use crate::gf::{Field, FqMatrix};
use crate::permgroup::io::{parse_generators, write_generators};
use crate::permgroup::PermGroup;

pub fn format_mod(m: &GModule) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "dim {} field 2^{} gens {} degree {}",
        m.dim(),
        m.field().e(),
        m.generator_images().len(),
        m.group().degree()
    );
    write_generators(&mut out, m.group().degree(), m.group().generators());
    for a in m.generator_images() {
        out.push_str(&a.to_hex_block());
    }
    out
}

pub fn write_mod(m: &GModule, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_mod(m))?;
    Ok(())
}

pub fn read_mod(path: impl AsRef<Path>) -> Result<GModule> {
    parse_mod(&std::fs::read_to_string(path)?)
}

fn header_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_mod(text: &str) -> Result<GModule> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (n0, header) = lines.next().ok_or_else(|| header_error(1, "empty module file"))?;
    let w: Vec<&str> = header.split_whitespace().collect();
    let bad = || header_error(n0 + 1, format!("expected `dim d field 2^e gens m degree n`, found `{header}`"));
    if w.len() != 8 || w[0] != "dim" || w[2] != "field" || w[4] != "gens" || w[6] != "degree" {
        return Err(bad());
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let dim = num(w[1])?;
    let e = w[3].strip_prefix("2^").ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?;
    let count = num(w[5])?;
    let degree = num(w[7])?;
    let (deg, gens) = parse_generators(&mut lines, Some(count))?;
    if deg != degree {
        return Err(header_error(n0 + 1, format!("header degree {degree} but group degree {deg}")));
    }
    let group = PermGroup::new(degree, gens)?;
    let field = Field::gf2(e)?;
    let mats = (0..count)
        .map(|_| FqMatrix::parse_hex_rows(&field, &mut lines, dim, dim))
        .collect::<Result<Vec<_>>>()?;
    if let Some((n, _)) = lines.next() {
        return Err(header_error(n + 1, "trailing content after matrices"));
    }
    GModule::new(&group, &field, mats)
}
