//! Text formats for polynomials, matrix factorizations, Gram matrices and
//! integer matrices.
//!
//! Every format ignores blank lines and `#` comments.
//!
//! `.poly`: an optional `vars: <n>` header followed by the polynomial, which
//! may span several lines. Without the header the variable count is one more
//! than the largest index that appears.
//!
//! `.mf`:
//!
//! ```text
//! vars: 2
//! potential: x0^3 + x1^3
//! k: 0 1
//! l: -1 -1
//! alpha:
//! x0 ; -x1^2
//! x1 ; x0^2
//! beta:
//! x0^2 ; x1^2
//! -x1 ; x0
//! ```
//!
//! `alpha` is `rank L × rank K`, `beta` is `rank K × rank L`, one row per
//! line with entries separated by `;`.
//!
//! `.gram` and isometry files: whitespace-separated integer rows.

use std::fmt::Write as _;

use jacfact_core::lattice::IntMatrix;
use jacfact_core::mf::{MatrixFactorization, PolyMatrix, TwistSequence};
use jacfact_core::poly::parse;
use jacfact_core::{Field, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn header<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let (k, v) = line.split_once(':')?;
    (k.trim().eq_ignore_ascii_case(key)).then(|| v.trim())
}

fn parse_count(line: usize, v: &str) -> Result<usize, FormatError> {
    v.parse().map_err(|_| err(line, format!("expected a variable count, got `{v}`")))
}

/// Largest `x<k>` index in `text`, plus one.
fn inferred_vars(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = text[start..j].parse::<usize>() {
                best = best.max(k + 1);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

pub fn parse_poly_file<F: Field>(text: &str, field: F) -> Result<Polynomial<F>, FormatError> {
    let mut vars = None;
    let mut body = String::new();
    let mut first = 0;
    for (n, line) in content_lines(text) {
        if let Some(v) = header(line, "vars") {
            vars = Some(parse_count(n, v)?);
            continue;
        }
        if first == 0 {
            first = n;
        }
        body.push_str(line);
        body.push(' ');
    }
    if body.trim().is_empty() {
        return Err(err(1, "no polynomial found"));
    }
    let vars = vars.unwrap_or_else(|| inferred_vars(&body).max(1));
    parse(&body, vars, field).map_err(|e| err(first, e.to_string()))
}

pub fn render_poly_file<F: Field>(p: &Polynomial<F>) -> String {
    format!("vars: {}\n{}\n", p.num_vars(), p.render())
}

fn parse_twists(line: usize, v: &str) -> Result<TwistSequence, FormatError> {
    v.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| err(line, format!("bad twist `{t}`"))))
        .collect::<Result<Vec<_>, _>>()
        .map(TwistSequence)
}

fn parse_matrix<F: Field>(
    rows: &[(usize, &str)],
    vars: usize,
    field: F,
) -> Result<Vec<Vec<Polynomial<F>>>, FormatError> {
    rows.iter()
        .map(|(n, line)| {
            line.split(';')
                .map(|cell| parse(cell.trim(), vars, field).map_err(|e| err(*n, e.to_string())))
                .collect()
        })
        .collect()
}

pub fn parse_mf_file<F: Field>(text: &str, field: F) -> Result<MatrixFactorization<F>, FormatError> {
    #[derive(PartialEq)]
    enum Block {
        Header,
        Alpha,
        Beta,
    }
    let mut vars = None;
    let mut potential = None;
    let (mut k, mut l) = (None, None);
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let mut block = Block::Header;
    for (n, line) in content_lines(text) {
        if header(line, "alpha").is_some_and(str::is_empty) {
            block = Block::Alpha;
            continue;
        }
        if header(line, "beta").is_some_and(str::is_empty) {
            block = Block::Beta;
            continue;
        }
        match block {
            Block::Alpha => alpha.push((n, line)),
            Block::Beta => beta.push((n, line)),
            Block::Header => {
                if let Some(v) = header(line, "vars") {
                    vars = Some(parse_count(n, v)?);
                } else if let Some(v) = header(line, "potential") {
                    potential = Some((n, v));
                } else if let Some(v) = header(line, "k") {
                    k = Some(parse_twists(n, v)?);
                } else if let Some(v) = header(line, "l") {
                    l = Some(parse_twists(n, v)?);
                } else {
                    return Err(err(n, format!("unexpected line `{line}`")));
                }
            }
        }
    }
    let (pn, ptext) = potential.ok_or_else(|| err(1, "missing `potential:`"))?;
    let vars = vars.unwrap_or_else(|| inferred_vars(text).max(1));
    let f = parse(ptext, vars, field).map_err(|e| err(pn, e.to_string()))?;
    let k = k.ok_or_else(|| err(1, "missing `k:` twists"))?;
    let l = l.ok_or_else(|| err(1, "missing `l:` twists"))?;
    let shape = |rows: &[(usize, &str)], name: &str, r: usize, c: usize| -> Result<(), FormatError> {
        let line = rows.first().map_or(1, |x| x.0);
        let cols_ok = rows.iter().all(|(_, s)| s.split(';').count() == c);
        if rows.len() != r || !cols_ok {
            return Err(err(line, format!("{name} must be {r}x{c}")));
        }
        Ok(())
    };
    shape(&alpha, "alpha", l.rank(), k.rank())?;
    shape(&beta, "beta", k.rank(), l.rank())?;
    let a = PolyMatrix::from_rows(field, vars, parse_matrix(&alpha, vars, field)?)
        .ok_or_else(|| err(1, "alpha is malformed"))?;
    let b = PolyMatrix::from_rows(field, vars, parse_matrix(&beta, vars, field)?)
        .ok_or_else(|| err(1, "beta is malformed"))?;
    MatrixFactorization::new(f, k, l, a, b).map_err(|e| err(pn, e.to_string()))
}

fn render_twists(t: &TwistSequence) -> String {
    t.0.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn render_matrix<F: Field>(out: &mut String, m: &PolyMatrix<F>) {
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).render()).collect();
        let _ = writeln!(out, "{}", row.join(" ; "));
    }
}

/// Canonical `.mf` text; [`parse_mf_file`] reads it back unchanged.
pub fn render_mf_file<F: Field>(p: &MatrixFactorization<F>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vars: {}", p.num_vars());
    let _ = writeln!(out, "potential: {}", p.potential().render());
    let _ = writeln!(out, "k: {}", render_twists(p.twists_k()));
    let _ = writeln!(out, "l: {}", render_twists(p.twists_l()));
    out.push_str("alpha:\n");
    render_matrix(&mut out, p.alpha());
    out.push_str("beta:\n");
    render_matrix(&mut out, p.beta());
    out
}

/// Whitespace-separated integer rows; all rows must have equal length.
pub fn parse_int_rows(text: &str) -> Result<Vec<Vec<i64>>, FormatError> {
    let mut rows = Vec::new();
    for (n, line) in content_lines(text) {
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| err(n, format!("bad integer `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(err(n, format!("row has {} entries, expected {first}", row.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(err(1, "empty matrix"));
    }
    Ok(rows)
}

pub fn render_int_matrix(m: &IntMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use jacfact_core::mf::{koszul_mf, variable_decomposition};
    use jacfact_core::Rationals;

    #[test]
    fn poly_header_and_inference() {
        let p = parse_poly_file("# cubic\nvars: 3\nx0^3 +\n x1^3\n", Rationals).unwrap();
        assert_eq!(p.num_vars(), 3);
        assert_eq!(p.num_terms(), 2);
        let q = parse_poly_file("x0^2 + x4^2", Rationals).unwrap();
        assert_eq!(q.num_vars(), 5);
        assert!(parse_poly_file("# nothing\n", Rationals).is_err());
        let e = parse_poly_file("vars: 2\n\nx0 + x5", Rationals).unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn mf_round_trip() {
        let f = parse("x0^3 + x1^3 + x2^3", 3, Rationals).unwrap();
        let p = koszul_mf(&f, &variable_decomposition(&f)).unwrap();
        let text = render_mf_file(&p);
        let back = parse_mf_file(&text, Rationals).unwrap();
        assert_eq!(back, p);
        assert_eq!(render_mf_file(&back), text);
    }

    #[test]
    fn mf_shape_errors() {
        let text = "potential: x0^2\nk: 0\nl: -1\nalpha:\nx0 ; x0\nbeta:\nx0\n";
        assert!(parse_mf_file(text, Rationals).unwrap_err().message.contains("alpha"));
        assert!(parse_mf_file("k: 0\n", Rationals).is_err());
    }

    #[test]
    fn int_rows() {
        assert_eq!(parse_int_rows("2 -1\n-1 2 # A2\n").unwrap(), vec![vec![2, -1], vec![-1, 2]]);
        assert!(parse_int_rows("1 2\n3\n").is_err());
        assert!(parse_int_rows("1 z\n").is_err());
    }
}
