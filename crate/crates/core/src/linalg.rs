//! Exact linear algebra: evaluation of polynomial matrices, rank, minors,
//! and randomized generic rank.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{binomial, FieldElement, FieldError, FieldSpec};
use crate::jacobian::PolyMatrix;
use crate::poly::{JetVariable, Point, Polynomial};

/// Default cap on the number of minors [`minors`] will generate.
pub const DEFAULT_MINOR_CAP: u128 = 100_000;

/// Random rational coordinates are drawn from `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 1000;

/// Polynomial determinants below this size use cofactor expansion.
const COFACTOR_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    spec: FieldSpec,
    entries: Vec<FieldElement>,
}

impl ScalarMatrix {
    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        ScalarMatrix { rows, cols, spec, entries: alloc::vec![spec.zero(); rows * cols] }
    }

    pub fn identity(spec: FieldSpec, k: usize) -> Self {
        let mut m = ScalarMatrix::zeros(spec, k, k);
        for i in 0..k {
            m.set(i, i, spec.one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<FieldElement>, spec: FieldSpec) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.spec() != spec) {
            return Err(FieldError::MixedFields(spec, bad.spec()).into());
        }
        Ok(ScalarMatrix { rows, cols, spec, entries })
    }

    pub fn from_i64(spec: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| spec.from_i64(v))).collect();
        ScalarMatrix { rows: rows.len(), cols, spec, entries }
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

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = ScalarMatrix::zeros(self.spec, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone())).collect();
        ScalarMatrix { rows: rows.len(), cols: cols.len(), spec: self.spec, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Entrywise evaluation at `p`.
pub fn eval_matrix(m: &PolyMatrix, p: &Point) -> Result<ScalarMatrix> {
    let entries = m.entries().iter().map(|e| e.evaluate(p)).collect::<Result<Vec<_>>>()?;
    ScalarMatrix::from_entries(m.rows(), m.cols(), entries, m.spec())
}

/// Rank together with a nonsingular `rank × rank` submatrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

/// Exact rank. Over ℚ rows are scaled to integers and reduced by
/// fraction-free (Bareiss) elimination; over GF(p) by ordinary elimination.
pub fn rank(m: &ScalarMatrix) -> usize {
    rank_profile(m).rank
}

pub fn rank_profile(m: &ScalarMatrix) -> RankProfile {
    match m.spec {
        FieldSpec::Rationals => bareiss_profile(integer_rows(m)),
        FieldSpec::PrimeField(p) => modular_profile(m, p),
    }
}

fn integer_rows(m: &ScalarMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|r| {
            let row: Vec<_> = (0..m.cols).map(|c| m.get(r, c).as_rational().expect("rational entry")).collect();
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

fn bareiss_profile(mut a: Vec<Vec<BigInt>>) -> RankProfile {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut order: Vec<usize> = (0..rows).collect();
    let mut pivot_cols = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        order.swap(r, pr);
        for i in r + 1..rows {
            for j in c + 1..cols {
                // exact: every intermediate entry is a minor of the input
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    let mut pivot_rows: Vec<usize> = order[..r].to_vec();
    pivot_rows.sort_unstable();
    RankProfile { rank: r, pivot_rows, pivot_cols }
}

fn modular_profile(m: &ScalarMatrix, p: u64) -> RankProfile {
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| m.get(r, c).as_residue().expect("residue entry")).collect())
        .collect();
    let mut order: Vec<usize> = (0..m.rows).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        order.swap(r, pr);
        let inv = m.spec.from_i64(a[r][c] as i64).inv().expect("nonzero pivot").as_residue().expect("residue");
        for i in r + 1..m.rows {
            let factor = a[i][c] * inv % p;
            if factor == 0 {
                continue;
            }
            for j in c..m.cols {
                a[i][j] = (a[i][j] + p - factor * a[r][j] % p) % p;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut pivot_rows: Vec<usize> = order[..r].to_vec();
    pivot_rows.sort_unstable();
    RankProfile { rank: r, pivot_rows, pivot_cols }
}

/// Determinant of a square scalar matrix by Gaussian elimination.
pub fn determinant(m: &ScalarMatrix) -> Result<FieldElement> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(alloc::format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = m.spec.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return Ok(m.spec.zero());
        };
        if pr != c {
            for j in 0..n {
                let tmp = a.get(c, j).clone();
                a.set(c, j, a.get(pr, j).clone());
                a.set(pr, j, tmp);
            }
            det = -det;
        }
        let pivot = a.get(c, c).clone();
        det = &det * &pivot;
        let inv = pivot.inv()?;
        for i in c + 1..n {
            let factor = a.get(i, c) * &inv;
            if factor.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a.get(i, j) - &(&factor * a.get(c, j));
                a.set(i, j, v);
            }
        }
    }
    Ok(det)
}

/// Determinant of the square submatrix of `m` on `rows × cols`.
///
/// Small sizes use cofactor expansion; larger ones a Laplace expansion
/// memoized over column subsets, which also avoids polynomial division.
pub fn poly_determinant(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    assert_eq!(rows.len(), cols.len(), "square selection required");
    if rows.len() < COFACTOR_LIMIT {
        cofactor_det(m, rows, cols)
    } else {
        subset_det(m, rows, cols)
    }
}

fn cofactor_det(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    if rows.is_empty() {
        return Polynomial::constant(m.spec().one(), m.nvars());
    }
    let mut acc = Polynomial::zero(m.spec(), m.nvars());
    let mut rest: Vec<usize> = Vec::with_capacity(cols.len());
    for (idx, &c) in cols.iter().enumerate() {
        let entry = m.get(rows[0], c);
        if entry.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(cols.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, &v)| v));
        let term = entry * &cofactor_det(m, &rows[1..], &rest);
        acc = if idx % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn subset_det(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    let k = rows.len();
    assert!(k < usize::BITS as usize, "determinant too large");
    let full = (1usize << k) - 1;
    // table[S] = determinant of the last |S| selected rows on columns S
    let mut table: Vec<Option<Polynomial>> = alloc::vec![None; full + 1];
    table[0] = Some(Polynomial::constant(m.spec().one(), m.nvars()));
    let mut masks: Vec<usize> = (1..=full).collect();
    masks.sort_by_key(|s| s.count_ones());
    for s in masks {
        let row = rows[k - s.count_ones() as usize];
        let mut acc = Polynomial::zero(m.spec(), m.nvars());
        let mut before = 0;
        for (bit, &c) in cols.iter().enumerate() {
            if s & (1 << bit) == 0 {
                continue;
            }
            let entry = m.get(row, c);
            if !entry.is_zero() {
                let sub = table[s & !(1 << bit)].as_ref().expect("smaller subsets done");
                if !sub.is_zero() {
                    let term = entry * sub;
                    acc = if before % 2 == 0 { &acc + &term } else { &acc - &term };
                }
            }
            before += 1;
        }
        table[s] = Some(acc);
    }
    table[full].take().expect("full set computed")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Polynomial,
}

/// All `k × k` minors; their values generate the ideal of `k`-minors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSet {
    pub k: usize,
    pub minors: Vec<Minor>,
}

impl MinorSet {
    pub fn all_zero(&self) -> bool {
        self.minors.iter().all(|m| m.value.is_zero())
    }
}

/// Number of `k × k` minors of a `rows × cols` matrix.
pub fn minor_count(rows: usize, cols: usize, k: usize) -> u128 {
    let c = binomial(rows as u64, k as u64) * binomial(cols as u64, k as u64);
    num_traits::ToPrimitive::to_u128(&c).unwrap_or(u128::MAX)
}

pub fn minors(m: &PolyMatrix, k: usize) -> Result<MinorSet> {
    minors_with_cap(m, k, DEFAULT_MINOR_CAP)
}

pub fn minors_with_cap(m: &PolyMatrix, k: usize, cap: u128) -> Result<MinorSet> {
    let max = m.rows().min(m.cols());
    if k > max {
        return Err(Error::InvalidMinorSize { k, max });
    }
    let count = minor_count(m.rows(), m.cols(), k);
    if count > cap {
        return Err(Error::TooManyMinors { count, cap });
    }
    let row_sets = combinations(m.rows(), k);
    let col_sets = combinations(m.cols(), k);
    let mut out = Vec::with_capacity(count as usize);
    for rows in &row_sets {
        for cols in &col_sets {
            out.push(Minor { rows: rows.clone(), cols: cols.clone(), value: poly_determinant(m, rows, cols) });
        }
    }
    Ok(MinorSet { k, minors: out })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Outcome of [`generic_rank`]. The rank is the maximum over random
/// evaluations: a lower bound on the generic rank that is exact with high
/// probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericRank {
    pub rank: usize,
    pub trials: usize,
    pub seed: u64,
    pub per_trial: Vec<usize>,
}

impl GenericRank {
    pub const QUALIFIER: &'static str = "probabilistic";
}

/// Independent generator for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A uniformly random element: integers in `[-bound, bound]` over ℚ, any
/// residue over GF(p).
pub fn random_element<R: Rng>(spec: FieldSpec, rng: &mut R, bound: i64) -> FieldElement {
    match spec {
        FieldSpec::Rationals => spec.from_i64(rng.gen_range(-bound..=bound)),
        FieldSpec::PrimeField(p) => spec.from_i64(rng.gen_range(0..p) as i64),
    }
}

/// Random point assigning every variable in `vars`.
pub fn random_point<R: Rng>(spec: FieldSpec, vars: &[JetVariable], rng: &mut R) -> Point {
    let mut p = Point::new(spec);
    for &v in vars {
        p.set(v, random_element(spec, rng, SAMPLE_BOUND));
    }
    p
}

pub fn generic_rank(m: &PolyMatrix, trials: usize, seed: u64) -> Result<GenericRank> {
    if trials == 0 {
        return Err(Error::InvalidArgument("generic rank needs at least one trial".into()));
    }
    let vars = m.variables();
    let per_trial = (0..trials)
        .map(|t| {
            let p = random_point(m.spec(), &vars, &mut trial_rng(seed, t as u64));
            eval_matrix(m, &p).map(|s| rank(&s))
        })
        .collect::<Result<Vec<_>>>()?;
    let rank = per_trial.iter().copied().max().unwrap_or(0);
    Ok(GenericRank { rank, trials, seed, per_trial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian::jac_m;
    use crate::jetmatrix::dn_matrix;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn cusp_jac2() -> PolyMatrix {
        jac_m(&[parse_poly("x1^3 - x2^2", 2, Q).unwrap()], 2).unwrap()
    }

    fn point(vals: &[i64]) -> Point {
        let v: Vec<_> = vals.iter().map(|&x| Q.from_i64(x)).collect();
        Point::from_flat(Q, 2, &v).unwrap()
    }

    /// Row reduction with plain field arithmetic, kept apart from the
    /// fraction-free path.
    fn naive_rank(m: &ScalarMatrix) -> usize {
        let mut rows: Vec<Vec<FieldElement>> =
            (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).clone()).collect()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(rank, p);
            let inv = rows[rank][c].inv().unwrap();
            for i in 0..rows.len() {
                if i != rank && !rows[i][c].is_zero() {
                    let f = &rows[i][c] * &inv;
                    for j in 0..m.cols() {
                        rows[i][j] = &rows[i][j] - &(&f * &rows[rank][j]);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn cusp_evaluations() {
        let at0 = eval_matrix(&cusp_jac2(), &point(&[0, 0])).unwrap();
        assert_eq!(at0, ScalarMatrix::from_i64(Q, &[&[0, 0, 0, 0, -1], &[0, 0, 0, 0, 0], &[0, 0, 0, 0, 0]]));
        assert_eq!(rank(&at0), 1);
        let at1 = eval_matrix(&cusp_jac2(), &point(&[1, 1])).unwrap();
        assert_eq!(at1, ScalarMatrix::from_i64(Q, &[&[3, -2, 3, 0, -1], &[0, 0, 3, -2, 0], &[0, 0, 0, 3, -2]]));
        assert_eq!(rank(&at1), 3);
        let z = PolyMatrix::zeros(Q, 2, 2, 3);
        assert!(eval_matrix(&z, &point(&[4, 5])).unwrap().is_zero());
    }

    #[test]
    fn identity_and_zero_ranks() {
        for k in 0..6 {
            assert_eq!(rank(&ScalarMatrix::identity(Q, k)), k);
            assert_eq!(rank(&ScalarMatrix::identity(FieldSpec::PrimeField(3), k)), k);
        }
        assert_eq!(rank(&ScalarMatrix::zeros(Q, 3, 4)), 0);
    }

    #[test]
    fn rational_entries() {
        let half = Q.from_fraction(&1.into(), &2.into()).unwrap();
        let m = ScalarMatrix::from_entries(2, 2, alloc::vec![half.clone(), Q.one(), Q.one(), Q.from_i64(2)], Q).unwrap();
        assert_eq!(rank(&m), 1);
        assert!(determinant(&m).unwrap().is_zero());
    }

    #[test]
    fn minors_examples() {
        let m = PolyMatrix::from_entries(
            2,
            2,
            ["x1", "x2", "x3", "x4"].iter().map(|e| parse_poly(e, 4, Q).unwrap()).collect(),
            Q,
        )
        .unwrap();
        let ms = minors(&m, 2).unwrap();
        assert_eq!(ms.minors.len(), 1);
        assert_eq!(ms.minors[0].value, parse_poly("x1*x4 - x2*x3", 4, Q).unwrap());

        let ms = minors(&cusp_jac2(), 3).unwrap();
        assert_eq!(ms.minors.len(), 10);
        assert!(!ms.all_zero());
        for mi in &ms.minors {
            assert!(mi.value.evaluate(&point(&[0, 0])).unwrap().is_zero());
        }
        assert!(matches!(minors_with_cap(&cusp_jac2(), 2, 5), Err(Error::TooManyMinors { count: 30, cap: 5 })));
        assert!(matches!(minors(&cusp_jac2(), 4), Err(Error::InvalidMinorSize { .. })));
    }

    #[test]
    fn generic_ranks() {
        assert_eq!(generic_rank(&cusp_jac2(), 3, 0).unwrap().rank, 3);
        assert_eq!(generic_rank(&PolyMatrix::zeros(Q, 2, 3, 3), 3, 0).unwrap().rank, 0);
        let d1 = dn_matrix(&cusp_jac2(), 1).unwrap();
        assert_eq!(generic_rank(&d1, 3, 7).unwrap().rank, 6);
        assert_eq!(generic_rank(&d1, 4, 11).unwrap(), generic_rank(&d1, 4, 11).unwrap());
        assert!(generic_rank(&d1, 0, 0).is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]);
        assert_eq!(combinations(3, 0), [Vec::<usize>::new()]);
        assert_eq!(combinations(10, 6).len(), 210);
    }

    fn arb_int_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
        })
    }

    fn to_matrix(spec: FieldSpec, rows: &[Vec<i64>]) -> ScalarMatrix {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        ScalarMatrix::from_i64(spec, &refs)
    }

    fn arb_poly_matrix() -> impl Strategy<Value = PolyMatrix> {
        (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(crate::poly::tests::arb_poly(2, 2, Q), r * c)
                .prop_map(move |es| PolyMatrix::from_entries(r, c, es, Q).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_matches_naive_and_transpose(rows in arb_int_matrix(6), ch in prop::sample::select(alloc::vec![0u64, 2, 5])) {
            let spec = if ch == 0 { Q } else { FieldSpec::prime(ch).unwrap() };
            let m = to_matrix(spec, &rows);
            let r = rank(&m);
            prop_assert_eq!(r, naive_rank(&m));
            prop_assert_eq!(r, rank(&m.transpose()));
            let mut rev = rows.clone();
            rev.reverse();
            prop_assert_eq!(r, rank(&to_matrix(spec, &rev)));
            let prof = rank_profile(&m);
            if r > 0 {
                prop_assert!(!determinant(&m.submatrix(&prof.pivot_rows, &prof.pivot_cols)).unwrap().is_zero());
            }
        }

        #[test]
        fn rank_agrees_mod_good_primes(rows in arb_int_matrix(5)) {
            let q_rank = rank(&to_matrix(Q, &rows));
            // a prime larger than any Hadamard bound for these entries divides no nonzero minor
            prop_assert_eq!(q_rank, rank(&to_matrix(FieldSpec::prime(1_000_003).unwrap(), &rows)));
        }

        #[test]
        fn rank_at_least_k_iff_some_minor_nonzero(m in arb_poly_matrix(), x in -3i64..4, y in -3i64..4) {
            let p = point(&[x, y]);
            let r = rank(&eval_matrix(&m, &p).unwrap());
            for k in 1..=m.rows().min(m.cols()) {
                let ms = minors(&m, k).unwrap();
                let some_nonzero = ms.minors.iter().any(|mi| !mi.value.evaluate(&p).unwrap().is_zero());
                prop_assert_eq!(r >= k, some_nonzero);
                let g = generic_rank(&m, 4, 1).unwrap().rank;
                if ms.all_zero() {
                    prop_assert!(g < k);
                }
            }
        }

        #[test]
        fn determinant_routes_agree(entries in proptest::collection::vec(crate::poly::tests::arb_poly(2, 1, Q), 36)) {
            let m = PolyMatrix::from_entries(6, 6, entries, Q).unwrap();
            let idx: Vec<usize> = (0..6).collect();
            prop_assert_eq!(subset_det(&m, &idx, &idx), cofactor_det(&m, &idx, &idx));
            let small: Vec<usize> = (1..5).collect();
            prop_assert_eq!(subset_det(&m, &small, &idx[..4]), cofactor_det(&m, &small, &idx[..4]));
        }
    }
}
