//! Text format for groups: a `degree n` line, then one generator per line in
//! disjoint-cycle notation. Blank lines and lines starting with `#` are skipped.

use super::{FiniteGroup, Permutation};
use crate::error::{Error, Result};
use std::path::Path;

/// Degree and generators parsed from group-file text.
pub fn parse_group_text(text: &str, file: &str) -> Result<(usize, Vec<Permutation>)> {
    let parse_err = |line: usize, message: String| Error::Parse {
        file: file.to_string(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty group file".into()))?;
    let degree: usize = first
        .strip_prefix("degree")
        .map(str::trim)
        .and_then(|d| d.parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| parse_err(first_no, format!("expected `degree n`, found {first:?}")))?;
    let mut generators = Vec::new();
    for (no, line) in lines {
        let perm = Permutation::parse_cycles(line, degree).map_err(|e| parse_err(no, e.to_string()))?;
        generators.push(perm);
    }
    if generators.is_empty() {
        return Err(parse_err(first_no, "no generators given".into()));
    }
    Ok((degree, generators))
}

pub fn read_group_file(path: &Path) -> Result<(usize, Vec<Permutation>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_group_text(&text, &path.display().to_string())
}

/// Serializes generators in the group-file format.
pub fn format_group_text(degree: usize, generators: &[Permutation]) -> String {
    let mut out = format!("degree {degree}\n");
    for g in generators {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

pub fn load_group(path: &Path, budget: usize) -> Result<FiniteGroup> {
    let (degree, gens) = read_group_file(path)?;
    FiniteGroup::with_budget(degree, gens, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_small_file() {
        let (n, gens) = parse_group_text("degree 3\n(0 1 2)\n\n# transposition\n(0 1)\n", "s3.txt").unwrap();
        assert_eq!(n, 3);
        assert_eq!(gens.len(), 2);
        assert_eq!(format_group_text(n, &gens), "degree 3\n(0 1 2)\n(0 1)\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_group_text("degree 3\n(0 1 2)\n(0 3)\n", "bad.txt").unwrap_err();
        match err {
            Error::Parse { file, line, .. } => {
                assert_eq!(file, "bad.txt");
                assert_eq!(line, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_group_text("deg 3\n(0 1)\n", "x").is_err());
        assert!(parse_group_text("degree 3\n(0 1 1)\n", "x").is_err());
        assert!(parse_group_text("", "x").is_err());
        assert!(parse_group_text("degree 4\n", "x").is_err());
    }
}
