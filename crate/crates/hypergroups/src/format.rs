//! Plain-text serialization of groups, hypergroups, and twist tables.
//!
//! Group files: a header `group <n>` followed by `n` rows of `n` indices;
//! the identity must be element 0, and the writer relabels to guarantee it.
//! Hypergroup files: a header `hypergroup |H|=<h> |M|=<m>`, the `H` table,
//! then the four structural tables `phi (m x h)`, `psi (m x h)`,
//! `xi (m x m)`, `lam (m x m)`, row-major, space-separated.

use thiserror::Error;

use crate::group::{relabel_identity_to_zero, FiniteGroup, GroupError};
use crate::hypergroup::{HgError, Hypergroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("ParseError: line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hg(#[from] HgError),
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, col, msg: msg.into() }
}

/// Non-empty lines with their original 1-based numbers.
struct Lines<'a> {
    rest: std::iter::Enumerate<std::str::Lines<'a>>,
    consumed: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { rest: text.lines().enumerate(), consumed: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.rest.by_ref() {
            self.consumed = i + 1;
            if !line.trim().is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        self.next()
            .ok_or_else(|| parse_err(self.consumed + 1, 1, format!("expected {what}, found end of input")))
    }
}

fn parse_row(line_no: usize, line: &str, expected: usize) -> Result<Vec<usize>, FormatError> {
    let mut row = Vec::with_capacity(expected);
    for (col, tok) in line.split_whitespace().enumerate() {
        let v: usize = tok
            .parse()
            .map_err(|_| parse_err(line_no, col + 1, format!("`{tok}` is not an index")))?;
        row.push(v);
    }
    if row.len() != expected {
        return Err(parse_err(
            line_no,
            row.len().min(expected) + 1,
            format!("expected {expected} entries, found {}", row.len()),
        ));
    }
    Ok(row)
}

fn parse_rows(
    lines: &mut Lines<'_>,
    count: usize,
    width: usize,
    what: &str,
) -> Result<Vec<Vec<usize>>, FormatError> {
    (0..count)
        .map(|_| {
            let (no, line) = lines.expect(what)?;
            parse_row(no, line, width)
        })
        .collect()
}

pub fn write_group(g: &FiniteGroup) -> String {
    let g = relabel_identity_to_zero(g);
    let mut out = format!("group {}\n", g.order());
    for row in g.rows() {
        let words: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_group(text: &str) -> Result<FiniteGroup, FormatError> {
    let mut lines = Lines::new(text);
    let (no, header) = lines.expect("a `group <n>` header")?;
    let mut words = header.split_whitespace();
    if words.next() != Some("group") {
        return Err(parse_err(no, 1, "expected the keyword `group`"));
    }
    let n: usize = words
        .next()
        .ok_or_else(|| parse_err(no, 2, "missing group order"))?
        .parse()
        .map_err(|_| parse_err(no, 2, "group order is not a number"))?;
    if words.next().is_some() {
        return Err(parse_err(no, 3, "trailing tokens after the header"));
    }
    let rows = parse_rows(&mut lines, n, n, "a table row")?;
    let g = FiniteGroup::from_table(&rows)?;
    if g.identity() != 0 {
        return Err(parse_err(no, 1, "the identity must be element 0 in group files"));
    }
    Ok(g)
}

pub fn write_hypergroup(x: &Hypergroup) -> String {
    let h = x.group();
    let (ho, m) = (h.order(), x.basic_len());
    let mut out = format!("hypergroup |H|={ho} |M|={m}\n");
    let mut push_table = |tab: &[usize], width: usize| {
        for row in tab.chunks(width) {
            let words: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
    };
    push_table(h.flat_table(), ho);
    push_table(x.phi_table(), ho);
    push_table(x.psi_table(), ho);
    push_table(x.xi_table(), m);
    push_table(x.lam_table(), m);
    out
}

pub fn parse_hypergroup(text: &str) -> Result<Hypergroup, FormatError> {
    let mut lines = Lines::new(text);
    let (no, header) = lines.expect("a `hypergroup |H|=<h> |M|=<m>` header")?;
    let mut words = header.split_whitespace();
    if words.next() != Some("hypergroup") {
        return Err(parse_err(no, 1, "expected the keyword `hypergroup`"));
    }
    let mut dims = [0usize; 2];
    for (k, prefix) in ["|H|=", "|M|="].iter().enumerate() {
        let tok = words
            .next()
            .ok_or_else(|| parse_err(no, k + 2, format!("missing {prefix}<n>")))?;
        let val = tok
            .strip_prefix(prefix)
            .ok_or_else(|| parse_err(no, k + 2, format!("expected {prefix}<n>, found `{tok}`")))?;
        dims[k] = val
            .parse()
            .map_err(|_| parse_err(no, k + 2, format!("`{val}` is not a number")))?;
    }
    if words.next().is_some() {
        return Err(parse_err(no, 4, "trailing tokens after the header"));
    }
    let (ho, m) = (dims[0], dims[1]);
    let h_rows = parse_rows(&mut lines, ho, ho, "an H table row")?;
    let h = FiniteGroup::from_table(&h_rows)?;
    let flatten = |rows: Vec<Vec<usize>>| rows.into_iter().flatten().collect::<Vec<usize>>();
    let phi = flatten(parse_rows(&mut lines, m, ho, "a phi row")?);
    let psi = flatten(parse_rows(&mut lines, m, ho, "a psi row")?);
    let xi = flatten(parse_rows(&mut lines, m, m, "a xi row")?);
    let lam = flatten(parse_rows(&mut lines, m, m, "a lam row")?);
    Ok(Hypergroup::new(h, m, phi, psi, xi, lam)?)
}

/// Twist file: one automorphism of `H` (a permutation line of `|H|`
/// indices) per element of `Q`.
pub fn parse_psi_rows(
    text: &str,
    q_order: usize,
    h_order: usize,
) -> Result<Vec<Vec<usize>>, FormatError> {
    let mut lines = Lines::new(text);
    parse_rows(&mut lines, q_order, h_order, "an automorphism row")
}

pub fn write_psi_rows(rows: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for row in rows {
        let words: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}
