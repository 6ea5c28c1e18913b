//! Parsing of command-line values: polynomial lists, points and matrix specs.

use jetdiff_core::{
    dn_matrix, jac_m, parse_poly, Error as CoreError, FieldElement, FieldSpec, PolyMatrix, Point, Polynomial,
};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Largest `i` among the variables `x<i>` / `x<i>_<j>` mentioned in the
/// sources, or 1 when none appears.
pub fn infer_nvars<'a, I: IntoIterator<Item = &'a str>>(sources: I) -> u32 {
    let mut best = 1u32;
    for src in sources {
        let b = src.as_bytes();
        let mut i = 0;
        while i < b.len() {
            if b[i] == b'x' {
                let start = i + 1;
                let mut j = start;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                if let Ok(v) = src[start..j].parse::<u32>() {
                    best = best.max(v);
                }
                i = j.max(i + 1);
            } else {
                i += 1;
            }
        }
    }
    best
}

/// Splits a comma-separated list of polynomials.
pub fn split_polys(src: &str) -> Vec<&str> {
    src.split(',').map(str::trim).collect()
}

pub fn parse_polys(src: &str, s: Option<u32>, field: FieldSpec) -> Result<Vec<Polynomial>, CliError> {
    let parts = split_polys(src);
    let s = s.unwrap_or_else(|| infer_nvars(parts.iter().copied()));
    Ok(parts.iter().map(|p| parse_poly(p, s, field)).collect::<Result<_, _>>()?)
}

pub fn parse_one_poly(src: &str, s: Option<u32>, field: FieldSpec) -> Result<Polynomial, CliError> {
    let s = s.unwrap_or_else(|| infer_nvars([src]));
    Ok(parse_poly(src, s, field)?)
}

/// Parses `a` or `a/b` into the field.
pub fn parse_scalar(src: &str, field: FieldSpec, flag: &str) -> Result<FieldElement, CliError> {
    let bad = || CliError::Usage(format!("invalid value {src:?} for {flag}: expected an integer or a fraction a/b"));
    let src = src.trim();
    let (num, den) = match src.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (src, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    Ok(field.from_fraction(&num, &den).map_err(CoreError::from)?)
}

pub fn parse_csv(src: &str, field: FieldSpec, flag: &str) -> Result<Vec<FieldElement>, CliError> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    src.split(',').map(|v| parse_scalar(v, field, flag)).collect()
}

/// A point given by flat coordinates in canonical order (order-major,
/// base-minor).
pub fn parse_point(src: &str, s: u32, field: FieldSpec, flag: &str) -> Result<Point, CliError> {
    Ok(Point::from_flat(field, s, &parse_csv(src, field, flag)?)?)
}

/// Serialized form of a polynomial matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &PolyMatrix) -> Self {
        let entries = (0..m.rows()).map(|r| m.row(r).iter().map(|e| e.to_string()).collect()).collect();
        MatrixJson { rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn to_matrix(&self, s: Option<u32>, field: FieldSpec) -> Result<PolyMatrix, CliError> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(CoreError::DimensionMismatch(format!(
                "entries do not form a {}x{} matrix",
                self.rows, self.cols
            ))
            .into());
        }
        let flat: Vec<&str> = self.entries.iter().flatten().map(String::as_str).collect();
        let s = s.unwrap_or_else(|| infer_nvars(flat.iter().copied()));
        let polys = flat.iter().map(|e| parse_poly(e, s, field)).collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix::from_entries(self.rows, self.cols, polys, field)?)
    }
}

/// Resolves a matrix spec: inline JSON `{rows, cols, entries}`, or one of
/// the builders `jacm:<m>:<polys>` and `dnl:<n>:<m>:<polys>`.
pub fn parse_matrix_spec(spec: &str, s: Option<u32>, field: FieldSpec) -> Result<PolyMatrix, CliError> {
    let spec = spec.trim();
    let usage = |why: &str| CliError::Usage(format!("invalid value for --matrix: {why}"));
    let number = |v: &str, what: &str| v.trim().parse::<u32>().map_err(|_| usage(&format!("{what} must be a non-negative integer")));
    if spec.starts_with('{') {
        let m: MatrixJson = serde_json::from_str(spec).map_err(|e| usage(&e.to_string()))?;
        return m.to_matrix(s, field);
    }
    match spec.split_once(':') {
        Some(("jacm", rest)) => {
            let (m, polys) = rest.split_once(':').ok_or_else(|| usage("expected jacm:<m>:<polys>"))?;
            let fs = parse_polys(polys, s, field)?;
            Ok(jac_m(&fs, number(m, "m")?)?)
        }
        Some(("dnl", rest)) => {
            let mut it = rest.splitn(3, ':');
            let (Some(n), Some(m), Some(polys)) = (it.next(), it.next(), it.next()) else {
                return Err(usage("expected dnl:<n>:<m>:<polys>"));
            };
            let fs = parse_polys(polys, s, field)?;
            Ok(dn_matrix(&jac_m(&fs, number(m, "m")?)?, number(n, "n")?)?)
        }
        _ => Err(usage("expected inline JSON, jacm:<m>:<polys> or dnl:<n>:<m>:<polys>")),
    }
}
