//! Readers for matrices (Matrix Market, CSV), point sets (CSV, JSON), real samples and
//! polynomial coefficient lists. Errors carry `path:line:column`.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::complex_stats::ComplexSample;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::poly_span::MonicPoly;
use crate::real_bounds::RealSample;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    MatrixMarket,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointFormat {
    Csv,
    Json,
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Whitespace- or comma-separated tokens of a line with their 1-based columns.
fn tokens(line: &str, sep: fn(char) -> bool) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if sep(ch) {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (s + 1, t)).collect()
}

fn csv_fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in line.char_indices() {
        if ch == ',' {
            out.push((start, &line[start..i]));
            start = i + 1;
        }
    }
    out.push((start, &line[start..]));
    out.into_iter()
        .map(|(s, f)| {
            let lead = f.len() - f.trim_start().len();
            (s + lead + 1, f.trim())
        })
        .collect()
}

fn number(path: &str, line: usize, col: usize, tok: &str) -> Result<f64> {
    let x: f64 = tok
        .parse()
        .map_err(|_| Error::parse(path, line, col, format!("not a number: {tok:?}")))?;
    if !x.is_finite() {
        return Err(Error::parse(path, line, col, format!("non-finite value {tok:?}")));
    }
    Ok(x)
}

fn index(path: &str, line: usize, col: usize, tok: &str, n: usize) -> Result<usize> {
    let i: usize = tok
        .parse()
        .map_err(|_| Error::parse(path, line, col, format!("not an index: {tok:?}")))?;
    if i == 0 || i > n {
        return Err(Error::parse(path, line, col, format!("index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

pub fn matrix_format_for(path: &Path, text: &str) -> MatrixFormat {
    let mtx = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("mtx"));
    if mtx || text.trim_start().starts_with("%%MatrixMarket") {
        MatrixFormat::MatrixMarket
    } else {
        MatrixFormat::Csv
    }
}

pub fn parse_matrix(path: &Path, format: Option<MatrixFormat>) -> Result<DenseMatrix> {
    let text = read_text(path)?;
    let format = format.unwrap_or_else(|| matrix_format_for(path, &text));
    parse_matrix_str(&text, &path.display().to_string(), format)
}

pub fn parse_matrix_str(text: &str, path: &str, format: MatrixFormat) -> Result<DenseMatrix> {
    match format {
        MatrixFormat::MatrixMarket => parse_matrix_market(text, path),
        MatrixFormat::Csv => parse_matrix_csv(text, path),
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Layout {
    Coordinate,
    Array,
}

fn parse_matrix_market(text: &str, path: &str) -> Result<DenseMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(path, 1, 1, "empty file"))?;
    let h = tokens(header, char::is_whitespace);
    let word = |k: usize| h.get(k).map(|(_, t)| t.to_ascii_lowercase());
    if word(0).as_deref() != Some("%%matrixmarket") || word(1).as_deref() != Some("matrix") {
        return Err(Error::parse(path, hl, 1, "expected header '%%MatrixMarket matrix ...'"));
    }
    let col_of = |k: usize| h.get(k).map_or(header.len() + 1, |(c, _)| *c);
    let layout = match word(2).as_deref() {
        Some("coordinate") => Layout::Coordinate,
        Some("array") => Layout::Array,
        other => return Err(Error::parse(path, hl, col_of(2), format!("unsupported layout {other:?}"))),
    };
    match word(3).as_deref() {
        Some("real") | Some("integer") => {}
        other => return Err(Error::parse(path, hl, col_of(3), format!("unsupported field {other:?}"))),
    }
    let symmetric = match word(4).as_deref() {
        Some("general") => false,
        Some("symmetric") => true,
        other => return Err(Error::parse(path, hl, col_of(4), format!("unsupported symmetry {other:?}"))),
    };
    if h.len() > 5 {
        return Err(Error::parse(path, hl, col_of(5), "trailing tokens in header"));
    }

    let mut body = lines.filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('%'));
    let (sl, size) = body.next().ok_or_else(|| Error::parse(path, hl + 1, 1, "missing size line"))?;
    let st = tokens(size, char::is_whitespace);
    let want = if layout == Layout::Coordinate { 3 } else { 2 };
    if st.len() != want {
        return Err(Error::parse(path, sl, 1, format!("size line needs {want} integers")));
    }
    let dims: Vec<usize> = st
        .iter()
        .map(|&(c, t)| t.parse().map_err(|_| Error::parse(path, sl, c, format!("not an integer: {t:?}"))))
        .collect::<Result<_>>()?;
    let (rows, cols) = (dims[0], dims[1]);
    if rows != cols {
        return Err(Error::parse(path, sl, st[1].0, format!("non-square: {rows} x {cols}")));
    }
    let n = rows;
    if n == 0 {
        return Err(Error::parse(path, sl, 1, "dimension must be at least 1"));
    }
    let mut data = vec![0.0; n * n];

    match layout {
        Layout::Coordinate => {
            let nnz = dims[2];
            let mut seen = 0;
            for (ln, line) in body {
                let t = tokens(line, char::is_whitespace);
                if t.len() != 3 {
                    return Err(Error::parse(path, ln, 1, "coordinate entry needs 'row col value'"));
                }
                if seen == nnz {
                    return Err(Error::parse(path, ln, 1, format!("more than {nnz} entries")));
                }
                let i = index(path, ln, t[0].0, t[0].1, n)?;
                let j = index(path, ln, t[1].0, t[1].1, n)?;
                let x = number(path, ln, t[2].0, t[2].1)?;
                if symmetric && i < j {
                    return Err(Error::parse(path, ln, t[0].0, "symmetric storage lists the lower triangle only"));
                }
                data[i * n + j] = x;
                if symmetric {
                    data[j * n + i] = x;
                }
                seen += 1;
            }
            if seen != nnz {
                return Err(Error::parse(path, sl, 1, format!("expected {nnz} entries, found {seen}")));
            }
        }
        Layout::Array => {
            // Column-major; symmetric storage holds the lower triangle column by column.
            let slots: Vec<(usize, usize)> = if symmetric {
                (0..n).flat_map(|j| (j..n).map(move |i| (i, j))).collect()
            } else {
                (0..n).flat_map(|j| (0..n).map(move |i| (i, j))).collect()
            };
            let mut k = 0;
            let mut last = sl;
            for (ln, line) in body {
                last = ln;
                for (c, tok) in tokens(line, char::is_whitespace) {
                    let Some(&(i, j)) = slots.get(k) else {
                        return Err(Error::parse(path, ln, c, format!("more than {} values", slots.len())));
                    };
                    let x = number(path, ln, c, tok)?;
                    data[i * n + j] = x;
                    if symmetric {
                        data[j * n + i] = x;
                    }
                    k += 1;
                }
            }
            if k != slots.len() {
                return Err(Error::parse(path, last, 1, format!("expected {} values, found {k}", slots.len())));
            }
        }
    }
    DenseMatrix::new(n, data)
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn parse_matrix_csv(text: &str, path: &str) -> Result<DenseMatrix> {
    let mut rows = Vec::new();
    let mut first_line = 1;
    for (ln, line) in data_lines(text) {
        if rows.is_empty() {
            first_line = ln;
        }
        let row = csv_fields(line)
            .into_iter()
            .map(|(c, t)| number(path, ln, c, t))
            .collect::<Result<Vec<f64>>>()?;
        if let Some(prev) = rows.first().map(Vec::len) {
            if row.len() != prev {
                return Err(Error::parse(path, ln, 1, format!("row has {} columns, expected {prev}", row.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(path, 1, 1, "no data rows"));
    }
    let (r, c) = (rows.len(), rows[0].len());
    if r != c {
        return Err(Error::parse(path, first_line, 1, format!("non-square: {r} rows x {c} columns")));
    }
    DenseMatrix::from_rows(&rows)
}

/// Matrix Market array text; parsing it back yields the same matrix bit for bit.
pub fn write_matrix_market_array(m: &DenseMatrix) -> String {
    let n = m.dim();
    let mut out = format!("%%MatrixMarket matrix array real general\n{n} {n}\n");
    for j in 0..n {
        for i in 0..n {
            let _ = writeln!(out, "{:e}", m.get(i, j));
        }
    }
    out
}

#[derive(Deserialize)]
struct JsonPoint {
    re: f64,
    im: f64,
}

pub fn point_format_for(path: &Path, text: &str) -> PointFormat {
    let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if json || text.trim_start().starts_with('[') {
        PointFormat::Json
    } else {
        PointFormat::Csv
    }
}

pub fn parse_points(path: &Path, format: Option<PointFormat>) -> Result<ComplexSample> {
    let text = read_text(path)?;
    let format = format.unwrap_or_else(|| point_format_for(path, &text));
    parse_points_str(&text, &path.display().to_string(), format)
}

pub fn parse_points_str(text: &str, path: &str, format: PointFormat) -> Result<ComplexSample> {
    let points = match format {
        PointFormat::Json => {
            let raw: Vec<JsonPoint> = serde_json::from_str(text)
                .map_err(|e| Error::parse(path, e.line(), e.column(), e.to_string()))?;
            for (k, p) in raw.iter().enumerate() {
                if !p.re.is_finite() || !p.im.is_finite() {
                    return Err(Error::NonFinite(k));
                }
            }
            raw.into_iter().map(|p| Complex64::new(p.re, p.im)).collect::<Vec<_>>()
        }
        PointFormat::Csv => {
            let mut pts = Vec::new();
            for (ln, line) in data_lines(text) {
                let f = csv_fields(line);
                if f.len() != 2 {
                    let col = f.get(2).map_or(line.len() + 1, |(c, _)| *c);
                    return Err(Error::parse(path, ln, col, format!("expected 2 columns (re, im), got {}", f.len())));
                }
                pts.push(Complex64::new(number(path, ln, f[0].0, f[0].1)?, number(path, ln, f[1].0, f[1].1)?));
            }
            pts
        }
    };
    if points.is_empty() {
        return Err(Error::parse(path, 1, 1, "no points"));
    }
    ComplexSample::new(points)
}

/// Real values separated by commas and/or newlines.
pub fn parse_sample_str(text: &str, path: &str) -> Result<RealSample> {
    let mut values = Vec::new();
    for (ln, line) in data_lines(text) {
        for (c, t) in csv_fields(line) {
            if t.is_empty() {
                continue;
            }
            values.push(number(path, ln, c, t)?);
        }
    }
    if values.is_empty() {
        return Err(Error::parse(path, 1, 1, "no values"));
    }
    RealSample::new(values)
}

pub fn parse_sample(path: &Path) -> Result<RealSample> {
    parse_sample_str(&read_text(path)?, &path.display().to_string())
}

/// Coefficients `1, a1, ..., an`, highest degree first, on one line.
pub fn parse_poly_str(text: &str, path: &str) -> Result<MonicPoly> {
    let mut lines = data_lines(text);
    let (ln, line) = lines.next().ok_or_else(|| Error::parse(path, 1, 1, "no coefficients"))?;
    if let Some((extra, _)) = lines.next() {
        return Err(Error::parse(path, extra, 1, "coefficients must be on a single line"));
    }
    let fields = csv_fields(line);
    let coeffs = fields
        .iter()
        .map(|&(c, t)| number(path, ln, c, t))
        .collect::<Result<Vec<f64>>>()?;
    if coeffs[0] != 1.0 {
        return Err(Error::parse(path, ln, fields[0].0, format!("leading coefficient must be 1, got {}", fields[0].1)));
    }
    if coeffs.len() < 3 {
        return Err(Error::parse(path, ln, 1, "degree must be at least 2"));
    }
    MonicPoly::from_full(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE3_CSV: &str = "# 4x4\n1,2,9,4\n2,10,0,4\n9,0,5,2\n4,4,2,6\n";

    fn line_col(e: &Error) -> (usize, usize) {
        match e {
            Error::Parse { line, column, .. } => (*line, *column),
            other => panic!("not a parse error: {other}"),
        }
    }

    #[test]
    fn csv_matrix() {
        let m = parse_matrix_str(EXAMPLE3_CSV, "a.csv", MatrixFormat::Csv).unwrap();
        assert_eq!((0..4).map(|i| m.get(i, i)).sum::<f64>(), 22.0);
        let e = parse_matrix_str("1,2,3,4\n5,6,7,8\n9,10,11,12\n", "b.csv", MatrixFormat::Csv).unwrap_err();
        assert!(e.to_string().contains("non-square"), "{e}");
        let e = parse_matrix_str("1,2\n3,x\n", "c.csv", MatrixFormat::Csv).unwrap_err();
        assert_eq!(line_col(&e), (2, 3));
        assert!(e.to_string().starts_with("c.csv:2:3:"));
    }

    #[test]
    fn matrix_market_array_identity() {
        let text = "%%MatrixMarket matrix array real general\n% comment\n3 3\n1\n0\n0\n0\n1\n0\n0\n0\n1\n";
        assert_eq!(parse_matrix_str(text, "i.mtx", MatrixFormat::MatrixMarket).unwrap(), DenseMatrix::identity(3));
    }

    #[test]
    fn matrix_market_array_is_column_major() {
        let text = "%%MatrixMarket matrix array real general\n2 2\n1 3\n2 4\n";
        let m = parse_matrix_str(text, "m.mtx", MatrixFormat::MatrixMarket).unwrap();
        assert_eq!(m, DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap());
    }

    #[test]
    fn matrix_market_symmetric_forms() {
        let coo = "%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n1 1 2\n3 1 -1\n2 2 5\n";
        let m = parse_matrix_str(coo, "s.mtx", MatrixFormat::MatrixMarket).unwrap();
        assert_eq!(m.get(0, 2), -1.0);
        assert_eq!(m.get(2, 0), -1.0);
        assert_eq!(m.get(1, 1), 5.0);
        assert_eq!(m.get(2, 2), 0.0);

        let arr = "%%MatrixMarket matrix array integer symmetric\n2 2\n1\n7\n3\n";
        let m = parse_matrix_str(arr, "s.mtx", MatrixFormat::MatrixMarket).unwrap();
        assert_eq!(m, DenseMatrix::from_rows(&[vec![1.0, 7.0], vec![7.0, 3.0]]).unwrap());
    }

    #[test]
    fn matrix_market_errors() {
        let mm = |t: &str| parse_matrix_str(t, "e.mtx", MatrixFormat::MatrixMarket).unwrap_err();
        assert_eq!(line_col(&mm("%%MatrixMarket matrix array complex general\n1 1\n1\n")), (1, 29));
        assert_eq!(line_col(&mm("%%NotMarket\n")), (1, 1));
        assert!(mm("%%MatrixMarket matrix array real general\n2 3\n").to_string().contains("non-square"));
        assert_eq!(line_col(&mm("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n")), (3, 1));
        assert_eq!(line_col(&mm("%%MatrixMarket matrix array real general\n1 1\n  abc\n")), (3, 3));
        assert!(mm("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n").to_string().contains("expected 4"));
    }

    #[test]
    fn matrix_market_round_trip_is_exact() {
        let m = DenseMatrix::from_rows(&[vec![0.1, 1.0 / 3.0], vec![-2e-300, 6.02214076e23]]).unwrap();
        let back = parse_matrix_str(&write_matrix_market_array(&m), "r.mtx", MatrixFormat::MatrixMarket).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn points() {
        let csv = "-0.5,0.8660254037844386\n0,0\n0.5,0.8660254037844386\n";
        let s = parse_points_str(csv, "p.csv", PointFormat::Csv).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.points()[0], Complex64::new(-0.5, 0.8660254037844386));

        let s = parse_points_str(r#"[{"re":0,"im":0}]"#, "p.json", PointFormat::Json).unwrap();
        assert_eq!(s.points(), &[Complex64::new(0.0, 0.0)]);

        let e = parse_points_str("0,0\nnan,1\n", "p.csv", PointFormat::Csv).unwrap_err();
        assert_eq!(line_col(&e), (2, 1));
        let e = parse_points_str("0,0\n1\n", "p.csv", PointFormat::Csv).unwrap_err();
        assert!(e.to_string().contains("expected 2 columns"));
        assert!(parse_points_str("", "p.csv", PointFormat::Csv).is_err());
    }

    #[test]
    fn samples_and_polynomials() {
        let s = parse_sample_str("# x\n1, 2\n3\n", "x.csv").unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 3.0]);
        let p = parse_poly_str("1,-3,0,0", "arg").unwrap();
        assert_eq!(p.coefficients(), &[-3.0, 0.0, 0.0]);
        let e = parse_poly_str("2,-3,0", "arg").unwrap_err();
        assert!(e.to_string().contains("leading coefficient"));
        assert!(parse_poly_str("1,2", "arg").is_err());
        assert_eq!(line_col(&parse_poly_str("1, -3, q", "arg").unwrap_err()), (1, 8));
    }
}
