//! The `.grp` text format: `degree n`, then one generator per line as `n`
//! space-separated 1-based images.

use std::fmt::Write as _;
use std::path::Path;

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

pub fn format_grp(group: &PermGroup) -> String {
    let mut out = String::new();
    write_generators(&mut out, group.degree(), group.generators());
    out
}

pub(crate) fn write_generators(out: &mut String, degree: usize, gens: &[Permutation]) {
    let _ = writeln!(out, "degree {degree}");
    for g in gens {
        let line: Vec<String> = g.images().iter().map(|x| (x + 1).to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
}

pub fn write_grp(group: &PermGroup, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_grp(group))?;
    Ok(())
}

pub fn parse_grp(text: &str) -> Result<PermGroup> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (degree, gens) = parse_generators(&mut lines, None)?;
    if let Some((n, _)) = lines.next() {
        return Err(Error::Parse {
            line: n + 1,
            msg: "trailing content after generators".into(),
        });
    }
    PermGroup::new(degree, gens)
}

pub fn read_grp(path: impl AsRef<Path>) -> Result<PermGroup> {
    parse_grp(&std::fs::read_to_string(path)?)
}

/// Reads a `degree n` line and then `count` generator lines (all remaining
/// lines when `count` is `None`).
pub(crate) fn parse_generators<'a, I>(lines: &mut I, count: Option<usize>) -> Result<(usize, Vec<Permutation>)>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (n0, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `degree n` header".into(),
    })?;
    let mut words = header.split_whitespace();
    let degree = match (words.next(), words.next(), words.next()) {
        (Some("degree"), Some(n), None) => n.parse::<usize>().map_err(|e| Error::Parse {
            line: n0 + 1,
            msg: e.to_string(),
        })?,
        _ => {
            return Err(Error::Parse {
                line: n0 + 1,
                msg: format!("expected `degree n`, found `{header}`"),
            })
        }
    };
    let mut gens = Vec::new();
    loop {
        if count == Some(gens.len()) {
            break;
        }
        let Some((n, line)) = lines.next() else {
            if let Some(c) = count {
                return Err(Error::Parse {
                    line: n0 + 1,
                    msg: format!("expected {c} generators, found {}", gens.len()),
                });
            }
            break;
        };
        let images: Vec<u32> = line
            .split_whitespace()
            .map(|t| match t.parse::<u32>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::Parse {
                    line: n + 1,
                    msg: format!("bad point `{t}`"),
                }),
            })
            .collect::<Result<_>>()?;
        if images.len() != degree {
            return Err(Error::Parse {
                line: n + 1,
                msg: format!("expected {degree} images, found {}", images.len()),
            });
        }
        let perm = Permutation::from_images(images).map_err(|_| Error::Parse {
            line: n + 1,
            msg: "not a bijection".into(),
        })?;
        gens.push(perm);
    }
    Ok((degree, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_stable() {
        let a = Permutation::from_cycles_1based(4, &[&[1, 2, 3, 4]]).unwrap();
        let b = Permutation::from_cycles_1based(4, &[&[1, 3]]).unwrap();
        let g = PermGroup::new(4, vec![a, b]).unwrap();
        let text = format_grp(&g);
        assert_eq!(text, "degree 4\n2 3 4 1\n3 2 1 4\n");
        let back = parse_grp(&text).unwrap();
        assert_eq!(format_grp(&back), text);
        assert_eq!(back.order_u64(), 8);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(matches!(
            parse_grp("degree 3\n1 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_grp("degree 3\n1 2\n").is_err());
        assert!(parse_grp("deg 3\n").is_err());
        assert!(parse_grp("degree 3\n0 1 2\n").is_err());
    }

    #[test]
    fn header_only_is_trivial_group() {
        let g = parse_grp("degree 5\n").unwrap();
        assert_eq!(g.order_u64(), 1);
    }
}
