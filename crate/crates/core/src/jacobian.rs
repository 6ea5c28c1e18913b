//! The classical Jacobian and the higher-order Jacobian `Jac_m`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{binomial, FieldError, FieldSpec};
use crate::poly::{JetVariable, MultiIndex, Polynomial};

/// A dense row-major matrix of polynomials. Equality ignores `provenance`.
#[derive(Debug, Clone)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    spec: FieldSpec,
    nvars: u32,
    entries: Vec<Polynomial>,
    /// Free-text description of how the matrix was built.
    pub provenance: String,
}

impl PartialEq for PolyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.spec == other.spec && self.entries == other.entries
    }
}

impl Eq for PolyMatrix {}

impl PolyMatrix {
    pub fn zeros(spec: FieldSpec, nvars: u32, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            spec,
            nvars,
            entries: alloc::vec![Polynomial::zero(spec, nvars); rows * cols],
            provenance: String::new(),
        }
    }

    /// Builds a matrix from row-major entries sharing one field.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Polynomial>, spec: FieldSpec) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.spec() != spec) {
            return Err(FieldError::MixedFields(spec, bad.spec()).into());
        }
        let nvars = entries.iter().map(Polynomial::nvars).max().unwrap_or(0);
        Ok(PolyMatrix { rows, cols, spec, nvars, entries, provenance: String::new() })
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = p.into();
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Polynomial) {
        assert_eq!(v.spec(), self.spec, "entry from a different field");
        self.nvars = self.nvars.max(v.nvars());
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = PolyMatrix::zeros(self.spec, self.nvars, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t.provenance = self.provenance.clone();
        t
    }

    /// Every jet variable occurring in some entry.
    pub fn variables(&self) -> Vec<JetVariable> {
        let mut vs: Vec<JetVariable> = self.entries.iter().flat_map(Polynomial::variables).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Highest jet order among the entries.
    pub fn max_order(&self) -> u32 {
        self.entries.iter().filter_map(Polynomial::max_order).max().unwrap_or(0)
    }
}

/// One row per line: `[3*x1^2, -2*x2, 3*x1, 0, -1]`.
impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            f.write_str("[")?;
            for (c, e) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Shared field and ambient dimension of an equation list.
pub(crate) fn common_ring(fs: &[Polynomial]) -> Result<(FieldSpec, u32)> {
    let first = fs.first().ok_or(Error::EmptyInput)?;
    let spec = first.spec();
    for f in fs {
        if f.spec() != spec {
            return Err(FieldError::MixedFields(spec, f.spec()).into());
        }
        if !f.is_base() {
            return Err(Error::NotBasePolynomial(alloc::format!("{f}")));
        }
    }
    let s = fs.iter().map(Polynomial::nvars).max().unwrap_or(0);
    Ok((spec, s))
}

/// The `r × s` matrix `(∂f_l/∂x_i)`.
pub fn jac(fs: &[Polynomial]) -> Result<PolyMatrix> {
    let (spec, s) = common_ring(fs)?;
    let mut out = PolyMatrix::zeros(spec, s, fs.len(), s as usize);
    for (l, f) in fs.iter().enumerate() {
        for i in 0..s {
            out.set(l, i as usize, f.partial(JetVariable::base(i + 1)).with_nvars(s));
        }
    }
    Ok(out.with_provenance("Jac(f)"))
}

/// Row indices `Λ⁰ = {β : |β| ≤ m−1}` and column indices
/// `Λ = {α : 1 ≤ |α| ≤ m}` of `Jac_m`.
///
/// Both lists are sorted by `|·|` ascending, then lexicographically
/// descending with `x_1` heaviest: for `s = 2`, `m = 2` the columns are
/// `(1,0), (0,1), (2,0), (1,1), (0,2)`. Other references may order the
/// multi-indices differently; every block convention downstream follows
/// this one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFamilies {
    pub s: usize,
    pub m: u32,
    pub lambda0: Vec<MultiIndex>,
    pub lambda: Vec<MultiIndex>,
}

impl IndexFamilies {
    /// `M = |Λ⁰|`
    pub fn row_count(&self) -> usize {
        self.lambda0.len()
    }

    /// `N = |Λ|`
    pub fn col_count(&self) -> usize {
        self.lambda.len()
    }
}

/// `(M, N) = (C(m+s−1, s), C(m+s, s) − 1)` from the closed formulas.
pub fn jacobian_sizes(s: usize, m: u32) -> (usize, usize) {
    let (s64, m64) = (s as u64, m as u64);
    let big_m = binomial(m64 + s64 - 1, s64).to_usize().expect("size fits");
    let big_n = binomial(m64 + s64, s64).to_usize().expect("size fits") - 1;
    (big_m, big_n)
}

/// Multi-indices of norm exactly `d`, lexicographically descending.
fn indices_of_norm(s: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, d, &mut alloc::vec![0; s], &mut out);
    out
}

pub fn index_families(s: usize, m: u32) -> Result<IndexFamilies> {
    if s == 0 || m == 0 {
        return Err(Error::InvalidArgument(alloc::format!("index families need s >= 1 and m >= 1, got s={s}, m={m}")));
    }
    let lambda0 = (0..m).flat_map(|d| indices_of_norm(s, d)).collect();
    let lambda = (1..=m).flat_map(|d| indices_of_norm(s, d)).collect();
    Ok(IndexFamilies { s, m, lambda0, lambda })
}

/// The `(rM × N)` higher-order Jacobian: block `l` has entry
/// `∂^{(α−β)} f_l` (divided power) at `(β, α)`, zero unless `β ≤ α`.
///
/// Entries are left as polynomials, not reduced modulo the equations.
pub fn jac_m(fs: &[Polynomial], m: u32) -> Result<PolyMatrix> {
    let (spec, s) = common_ring(fs)?;
    let fam = index_families(s as usize, m)?;
    let (rows_per, cols) = (fam.row_count(), fam.col_count());
    let mut out = PolyMatrix::zeros(spec, s, fs.len() * rows_per, cols);
    for (l, f) in fs.iter().enumerate() {
        for (bi, beta) in fam.lambda0.iter().enumerate() {
            for (ai, alpha) in fam.lambda.iter().enumerate() {
                if let Some(delta) = alpha.checked_sub(beta) {
                    out.set(l * rows_per + bi, ai, f.divided_partial(&delta).with_nvars(s));
                }
            }
        }
    }
    Ok(out.with_provenance(alloc::format!("Jac_{m}(f)")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn p(src: &str, s: u32) -> Polynomial {
        parse_poly(src, s, Q).unwrap()
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn matrix(rows: &[&[&str]], s: u32, spec: FieldSpec) -> PolyMatrix {
        let entries = rows.iter().flat_map(|r| r.iter().map(|e| parse_poly(e, s, spec).unwrap())).collect();
        PolyMatrix::from_entries(rows.len(), rows[0].len(), entries, spec).unwrap()
    }

    #[test]
    fn classical_jacobian() {
        let j = jac(&[p("x1^3 - x2^2", 2)]).unwrap();
        assert_eq!(j.row(0), &[p("3*x1^2", 2), p("-2*x2", 2)]);
        let id = jac(&[p("x1", 2), p("x2", 2)]).unwrap();
        assert_eq!(id, matrix(&[&["1", "0"], &["0", "1"]], 2, Q));
        let z = jac(&[p("3", 2)]).unwrap();
        assert!(z.entries().iter().all(Polynomial::is_zero));
        assert_eq!(jac(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn families_for_two_variables() {
        let fam = index_families(2, 2).unwrap();
        assert_eq!(fam.lambda0, [mi(&[0, 0]), mi(&[1, 0]), mi(&[0, 1])]);
        assert_eq!(fam.lambda, [mi(&[1, 0]), mi(&[0, 1]), mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 2])]);
        assert_eq!((fam.row_count(), fam.col_count()), (3, 5));
        let one = index_families(1, 2).unwrap();
        assert_eq!((one.row_count(), one.col_count()), (2, 2));
        assert!(index_families(2, 0).is_err());
    }

    #[test]
    fn cusp_order_two() {
        let f = "x1^3 - x2^2";
        let expect = matrix(
            &[
                &["3*x1^2", "-2*x2", "3*x1", "0", "-1"],
                &[f, "0", "3*x1^2", "-2*x2", "0"],
                &["0", f, "0", "3*x1^2", "-2*x2"],
            ],
            2,
            Q,
        );
        assert_eq!(jac_m(&[p(f, 2)], 2).unwrap(), expect);
    }

    #[test]
    fn cusp_order_two_in_characteristic_two() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f = parse_poly("x1^3 - x2^2", 2, f2).unwrap();
        let direct = jac_m(&[f], 2).unwrap();
        let reduced = jac_m(&[p("x1^3 - x2^2", 2)], 2).unwrap();
        let mapped: Vec<_> = reduced
            .entries()
            .iter()
            .map(|e| e.map_coefficients(f2, |c| f2.from_bigint(c.as_rational().unwrap().numer())))
            .collect();
        assert_eq!(direct, PolyMatrix::from_entries(3, 5, mapped, f2).unwrap());
        assert!(direct.get(0, 1).is_zero());
        assert_eq!(direct.get(0, 4), &Polynomial::constant(f2.one(), 2));
    }

    #[test]
    fn order_one_is_the_jacobian() {
        let fs = [p("x1^2*x2 - x3", 3), p("x1 + x2*x3^2", 3)];
        assert_eq!(jac_m(&fs, 1).unwrap().entries(), jac(&fs).unwrap().entries());
    }

    #[test]
    fn display_rows() {
        let j = jac_m(&[p("x1^3 - x2^2", 2)], 2).unwrap();
        let text = alloc::format!("{j}");
        assert_eq!(text.lines().next().unwrap(), "[3*x1^2, -2*x2, 3*x1, 0, -1]");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn dimensions_and_order_one_embedding(
            s in 1u32..4,
            m in 1u32..4,
            r in 1usize..3,
            seed in proptest::collection::vec(crate::poly::tests::arb_poly(3, 4, Q), 2),
        ) {
            let fs: Vec<Polynomial> = seed[..r].iter().map(|f| {
                // drop variables beyond s
                Polynomial::from_terms(Q, s, f.terms()
                    .filter(|(mono, _)| mono.factors().iter().all(|(v, _)| v.base <= s))
                    .map(|(a, b)| (a.clone(), b.clone())))
            }).collect();
            let jm = jac_m(&fs, m).unwrap();
            let (big_m, big_n) = jacobian_sizes(s as usize, m);
            prop_assert_eq!((jm.rows(), jm.cols()), (r * big_m, big_n));
            let j = jac(&fs).unwrap();
            let fam = index_families(s as usize, m).unwrap();
            for l in 0..r {
                for i in 0..s as usize {
                    let col = fam.lambda.iter().position(|a| *a == MultiIndex::unit(s as usize, i)).unwrap();
                    prop_assert_eq!(jm.get(l * big_m, col), j.get(l, i));
                }
            }
        }

        #[test]
        fn entries_are_scaled_iterated_partials(f in crate::poly::tests::arb_poly(2, 5, Q), m in 1u32..4) {
            let jm = jac_m(core::slice::from_ref(&f), m).unwrap();
            let fam = index_families(2, m).unwrap();
            for (bi, beta) in fam.lambda0.iter().enumerate() {
                for (ai, alpha) in fam.lambda.iter().enumerate() {
                    let expect = match alpha.checked_sub(beta) {
                        None => Polynomial::zero(Q, 2),
                        Some(d) => {
                            let mut g = f.clone();
                            let mut fact = 1i64;
                            for (i, &k) in d.0.iter().enumerate() {
                                for t in 1..=k {
                                    g = g.partial(JetVariable::base(i as u32 + 1));
                                    fact *= t as i64;
                                }
                            }
                            g.scale(&Q.one().checked_div(&Q.from_i64(fact)).unwrap())
                        }
                    };
                    prop_assert_eq!(jm.get(bi, ai), &expect);
                }
            }
        }
    }
}
