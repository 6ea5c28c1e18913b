//! Jet schemes of hypersurfaces `X = V(f)` and rank tests on them.
//!
//! `J_n(X)` is cut out by `f, d_1(f), …, d_n(f)` in the `s(n+1)` jet
//! coordinates. A point `p` of `J_n(X)` is non-singular exactly when
//! `D_n(Jac_m(f))` evaluated at `p` has rank `(n+1)M`; this holds provided
//! `X` and `J_n(X)` are irreducible, which callers assert rather than this
//! module deciding it.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::hasse::hs_components;
use crate::jacobian::{index_families, jac_m, jacobian_sizes, PolyMatrix};
use crate::jetmatrix::{dn_matrix, jet_jacobian};
use crate::linalg::{determinant, eval_matrix, random_element, rank, rank_profile, trial_rng};
use crate::poly::{JetVariable, Point, Polynomial};

/// Hypothesis restated in rank reports.
pub const IRREDUCIBILITY_ASSUMPTION: &str = "X = V(f) and J_n(X) are irreducible (user assertion, not checked)";

/// Hypotheses of the singularity certificate, recorded as assumptions.
pub const CERTIFICATE_ASSUMPTIONS: [&str; 3] = [
    "X = V(f) is irreducible (user assertion, not checked)",
    "J_n(X) is irreducible (user assertion, not checked)",
    "J_n(X) is normal (user assertion, not checked)",
];

pub const VERDICT_NOT_ISOMORPHISM: &str = "blowup not an isomorphism (under stated assumptions)";
pub const VERDICT_INCONCLUSIVE: &str = "inconclusive";

/// Random coordinates used while searching for points on `V(f)` over ℚ.
const BASE_SAMPLE_BOUND: i64 = 6;
/// Prime fields up to this size are searched exhaustively for roots.
const EXHAUSTIVE_ROOT_LIMIT: u64 = 1 << 16;
/// Divisor enumeration is skipped for integers beyond this size.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;
/// Base-point attempts per requested smooth jet.
pub const ATTEMPTS_PER_SAMPLE: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetSchemeDesc {
    pub f: Polynomial,
    pub s: u32,
    pub n: u32,
    /// `[d_0(f), …, d_n(f)]`
    pub equations: Vec<Polynomial>,
}

impl JetSchemeDesc {
    /// `(s−1)(n+1)`, the dimension of `J_n(X)` when it is irreducible.
    pub fn expected_dimension(&self) -> u32 {
        (self.s - 1) * (self.n + 1)
    }

    fn require_full_point(&self, p: &Point) -> Result<()> {
        p.to_flat(self.s, self.n).map(|_| ())
    }
}

pub fn jet_equations(f: &Polynomial, n: u32) -> Result<JetSchemeDesc> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let hs = hs_components(f, n)?;
    Ok(JetSchemeDesc { f: f.clone(), s: f.nvars(), n, equations: hs.components })
}

pub fn on_jet_scheme(desc: &JetSchemeDesc, p: &Point) -> Result<bool> {
    desc.require_full_point(p)?;
    for e in &desc.equations {
        if !e.evaluate(p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_on_scheme(desc: &JetSchemeDesc, p: &Point) -> Result<()> {
    if on_jet_scheme(desc, p)? {
        Ok(())
    } else {
        Err(Error::PointNotOnScheme(alloc::format!("some d_k(f) is nonzero at the given point of J_{}(X)", desc.n)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalRankReport {
    pub rank: usize,
    /// `n + 1`
    pub expected: usize,
    pub full: bool,
}

/// Rank of `Jac(f, d_1(f), …, d_n(f))` at `p`, compared with `n + 1`.
pub fn classical_rank_test(desc: &JetSchemeDesc, p: &Point) -> Result<ClassicalRankReport> {
    require_on_scheme(desc, p)?;
    let jj = jet_jacobian(core::slice::from_ref(&desc.f), desc.n)?;
    let r = rank(&eval_matrix(&jj, p)?);
    let expected = desc.n as usize + 1;
    Ok(ClassicalRankReport { rank: r, expected, full: r == expected })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherRankReport {
    pub rank: usize,
    /// `(n+1)M`
    pub bound: usize,
    pub full: bool,
    pub n: u32,
    pub m: u32,
    pub assumption: &'static str,
}

/// Rank of `D_n(Jac_m(f))` at `p`, compared with `(n+1)M`.
pub fn higher_rank_test(desc: &JetSchemeDesc, p: &Point, m: u32) -> Result<HigherRankReport> {
    require_on_scheme(desc, p)?;
    let mat = dn_matrix(&jac_m(core::slice::from_ref(&desc.f), m)?, desc.n)?;
    let r = rank(&eval_matrix(&mat, p)?);
    let bound = mat.rows();
    Ok(HigherRankReport { rank: r, bound, full: r == bound, n: desc.n, m, assumption: IRREDUCIBILITY_ASSUMPTION })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleLabel {
    /// `Ω¹`
    Omega1,
    /// `Ω^{(m)}`
    OmegaM,
    /// `Ω¹ ⊗ B_n`
    Omega1TensorBn,
    /// `Ω^{(m)} ⊗ B_n`
    OmegaMTensorBn,
}

impl ModuleLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModuleLabel::Omega1 => "Omega1",
            ModuleLabel::OmegaM => "OmegaM",
            ModuleLabel::Omega1TensorBn => "Omega1_tensor_Bn",
            ModuleLabel::OmegaMTensorBn => "OmegaM_tensor_Bn",
        }
    }
}

/// A module presented as the cokernel of `matrixᵗ`: `gens` generators
/// (columns) and `rels` relations (rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub matrix: PolyMatrix,
    pub gens: usize,
    pub rels: usize,
    pub module_label: ModuleLabel,
    pub f: Polynomial,
    pub n: u32,
    pub m: u32,
}

impl Presentation {
    /// `(M, N)` for the base ring of `f`.
    pub fn sizes(&self) -> (usize, usize) {
        jacobian_sizes(self.f.nvars() as usize, self.m)
    }

    /// `(n+1)(N − M)`, the rank of the module at the generic point of
    /// `J_n(X)`.
    pub fn expected_cokernel_rank(&self) -> usize {
        let (big_m, big_n) = self.sizes();
        (self.n as usize + 1) * (big_n - big_m)
    }
}

/// Presentation of `Ω^{(m)} ⊗ B_n` through `D_n(Jac_m(f))`; for `n = 0`
/// this is the presentation of `Ω^{(m)}` by `Jac_m(f)`.
pub fn presentation_of(f: &Polynomial, n: u32, m: u32) -> Result<Presentation> {
    let matrix = dn_matrix(&jac_m(core::slice::from_ref(f), m)?, n)?;
    let module_label = match (n, m) {
        (0, 1) => ModuleLabel::Omega1,
        (0, _) => ModuleLabel::OmegaM,
        (_, 1) => ModuleLabel::Omega1TensorBn,
        _ => ModuleLabel::OmegaMTensorBn,
    };
    let name = match n {
        0 => alloc::format!("Omega^({m}) presented by Jac_{m}(f)^t"),
        _ => alloc::format!("Omega^({m}) (x) B_{n} presented by D_{n}(Jac_{m}(f))^t"),
    };
    Ok(Presentation {
        name,
        gens: matrix.cols(),
        rels: matrix.rows(),
        matrix,
        module_label,
        f: f.clone(),
        n,
        m,
    })
}

/// Dense coefficients of a univariate polynomial, lowest degree first.
fn univariate_restriction(f: &Polynomial, free: u32, values: &[FieldElement]) -> Vec<FieldElement> {
    let spec = f.spec();
    let mut coeffs: Vec<FieldElement> = Vec::new();
    for (mono, c) in f.terms() {
        let mut t = c.clone();
        let mut deg = 0usize;
        for &(v, e) in mono.factors() {
            if v.base == free {
                deg = e as usize;
            } else {
                t = &t * &values[v.base as usize - 1].pow(e as u64);
            }
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, spec.zero());
        }
        coeffs[deg] = &coeffs[deg] + &t;
    }
    while coeffs.last().is_some_and(FieldElement::is_zero) {
        coeffs.pop();
    }
    coeffs
}

fn horner(coeffs: &[FieldElement], x: &FieldElement) -> FieldElement {
    coeffs.iter().rev().fold(x.spec().zero(), |acc, c| &(&acc * x) + c)
}

fn positive_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Roots in the ground field of a univariate polynomial given by dense
/// coefficients. Over ℚ by the rational root theorem; over GF(p) by
/// exhaustive search for small `p`. May miss roots when coefficients are
/// too large to factor or `p` is large.
fn field_roots(spec: FieldSpec, coeffs: &[FieldElement]) -> Vec<FieldElement> {
    let Some(low) = coeffs.iter().position(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(spec.zero());
    }
    let trimmed = &coeffs[low..];
    if trimmed.len() < 2 {
        return roots;
    }
    match spec {
        FieldSpec::PrimeField(p) => {
            if p <= EXHAUSTIVE_ROOT_LIMIT {
                for v in 1..p {
                    let x = spec.from_i64(v as i64);
                    if horner(trimmed, &x).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
        FieldSpec::Rationals => {
            let lcm = trimmed
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.as_rational().expect("rational").denom()));
            let ints: Vec<BigInt> = trimmed
                .iter()
                .map(|c| {
                    let r = c.as_rational().expect("rational");
                    r.numer() * (&lcm / r.denom())
                })
                .collect();
            let (a0, ad) = (ints[0].abs(), ints[ints.len() - 1].abs());
            let (Some(a0), Some(ad)) = (a0.to_u64(), ad.to_u64()) else {
                return roots;
            };
            if a0 > DIVISOR_LIMIT || ad > DIVISOR_LIMIT {
                return roots;
            }
            let (nums, dens) = (positive_divisors(a0), positive_divisors(ad));
            let mut cands: Vec<FieldElement> = Vec::new();
            for &pn in &nums {
                for &qd in &dens {
                    if pn.gcd(&qd) != 1 {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let x = spec
                            .from_fraction(&BigInt::from(sign * pn as i64), &BigInt::from(qd))
                            .expect("nonzero denominator");
                        if !cands.contains(&x) && horner(trimmed, &x).is_zero() {
                            cands.push(x);
                        }
                    }
                }
            }
            roots.extend(cands);
        }
    }
    roots
}

/// First base variable whose partial derivative is nonzero at `q`.
fn pivot_variable(f: &Polynomial, q: &Point) -> Result<Option<(u32, FieldElement)>> {
    for i in 1..=f.nvars() {
        let d = f.partial(JetVariable::base(i)).evaluate(q)?;
        if !d.is_zero() {
            return Ok(Some((i, d)));
        }
    }
    Ok(None)
}

/// Fills jet orders beyond those fully given in `prefix` so that the result
/// lies on `J_n(V(f))`.
///
/// `d_k(f) = Σ_i ∂_i f · x_i^{(k)} + (terms of order < k)`, so with the
/// pivot `∂_i f(q) ≠ 0` each order is solved linearly for `x_i^{(k)}`.
/// Unspecified non-pivot coordinates are set by `fill`.
fn extend_with<F>(f: &Polynomial, prefix: &Point, n: u32, mut fill: F) -> Result<Point>
where
    F: FnMut(JetVariable) -> FieldElement,
{
    let spec = f.spec();
    let s = f.nvars();
    let base: Vec<FieldElement> = prefix.to_flat(s, 0)?;
    let q = Point::from_flat(spec, s, &base)?;
    if !f.evaluate(&q)?.is_zero() {
        return Err(Error::PointNotOnScheme(String::from("the base point is not on V(f)")));
    }
    let (pivot, slope) = pivot_variable(f, &q)?.ok_or(Error::PointNotOnScheme(String::from(
        "the base point is singular, so jets over it cannot be solved order by order",
    )))?;
    let hs = hs_components(f, n)?;
    let mut p = prefix.clone();
    for k in 1..=n {
        if (1..=s).all(|i| p.get(JetVariable::new(i, k)).is_some()) {
            continue;
        }
        for i in 1..=s {
            let v = JetVariable::new(i, k);
            if i != pivot && p.get(v).is_none() {
                p.set(v, fill(v));
            }
        }
        let pv = JetVariable::new(pivot, k);
        p.set(pv, spec.zero());
        let rest = hs.components[k as usize].evaluate(&p)?;
        p.set(pv, -(rest.checked_div(&slope)?));
    }
    Ok(p)
}

/// Extends a jet prefix over a smooth point of `V(f)` to a point of
/// `J_n(V(f))`, setting missing non-pivot coordinates to zero.
pub fn extend_jet(f: &Polynomial, prefix: &Point, n: u32) -> Result<Point> {
    let spec = f.spec();
    extend_with(f, prefix, n, |_| spec.zero())
}

/// Searches `V(f)` for a smooth point by fixing all but one coordinate at
/// random and solving for the last one.
pub fn sample_smooth_base<R: Rng>(f: &Polynomial, rng: &mut R, attempts: usize) -> Result<Vec<FieldElement>> {
    let spec = f.spec();
    let s = f.nvars();
    for _ in 0..attempts {
        let free = rng.gen_range(1..=s);
        let mut values: Vec<FieldElement> = (0..s).map(|_| random_element(spec, rng, BASE_SAMPLE_BOUND)).collect();
        let coeffs = univariate_restriction(f, free, &values);
        let roots = if coeffs.is_empty() {
            // the whole line lies on V(f)
            alloc::vec![random_element(spec, rng, BASE_SAMPLE_BOUND)]
        } else {
            field_roots(spec, &coeffs)
        };
        if roots.is_empty() {
            continue;
        }
        values[free as usize - 1] = roots[rng.gen_range(0..roots.len())].clone();
        let q = Point::from_flat(spec, s, &values)?;
        debug_assert!(f.evaluate(&q)?.is_zero());
        if pivot_variable(f, &q)?.is_some() {
            return Ok(values);
        }
    }
    Err(Error::NoSmoothPointFound { attempts })
}

/// A random point of `J_n(V(f))` lying over a random smooth point of `V(f)`.
pub fn sample_smooth_jet<R: Rng>(f: &Polynomial, n: u32, rng: &mut R, attempts: usize) -> Result<Point> {
    let base = sample_smooth_base(f, rng, attempts)?;
    let prefix = Point::from_flat(f.spec(), f.nvars(), &base)?;
    let spec = f.spec();
    extend_with(f, &prefix, n, |_| random_element(spec, rng, crate::linalg::SAMPLE_BOUND))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelSample {
    /// Flat coordinates of the sampled jet.
    pub point: Vec<FieldElement>,
    pub rank: usize,
    pub cokernel_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelReport {
    pub samples: Vec<CokernelSample>,
    /// `(n+1)(N − M)`
    pub expected: usize,
    /// Maximum rank over the samples.
    pub generic_rank: usize,
    /// `gens − generic_rank`
    pub cokernel_rank: usize,
    /// True when every sample has cokernel rank `expected`.
    pub all_match: bool,
    pub seed: u64,
}

/// Cokernel rank of the presentation matrix at random jets over smooth
/// points of `V(f)`. Sample `t` uses its own stream derived from `seed`.
pub fn generic_cokernel_rank(pres: &Presentation, trials: usize, seed: u64) -> Result<CokernelReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("generic cokernel rank needs at least one trial".into()));
    }
    let s = pres.f.nvars();
    let expected = pres.expected_cokernel_rank();
    let mut samples = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let p = sample_smooth_jet(&pres.f, pres.n, &mut rng, ATTEMPTS_PER_SAMPLE)?;
        let r = rank(&eval_matrix(&pres.matrix, &p)?);
        samples.push(CokernelSample { point: p.to_flat(s, pres.n)?, rank: r, cokernel_rank: pres.gens - r });
    }
    let generic_rank = samples.iter().map(|x| x.rank).max().unwrap_or(0);
    let all_match = samples.iter().all(|x| x.cokernel_rank == expected);
    Ok(CokernelReport { samples, expected, generic_rank, cokernel_rank: pres.gens - generic_rank, all_match, seed })
}

/// Free ranks of `Ω^{(m)}` of the jet ring versus `Ω^{(m)} ⊗ B_n` for the
/// affine line `A = 𝕂[x]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankComparison {
    pub n: u32,
    pub m: u32,
    /// Rank of `Ω^{(m)}_{A_n}`, `A_n = 𝕂[x^{(0)}, …, x^{(n)}]`.
    pub jet_ring_rank: usize,
    /// Rank of `Ω^{(m)}_A ⊗ B_n`.
    pub tensor_rank: usize,
}

impl RankComparison {
    /// Free modules of different ranks are not isomorphic.
    pub fn isomorphic(&self) -> bool {
        self.jet_ring_rank == self.tensor_rank
    }

    pub fn verdict(&self) -> &'static str {
        if self.isomorphic() {
            "ranks agree"
        } else {
            "not isomorphic"
        }
    }
}

/// For a polynomial ring in `v` variables `Ω^{(m)}` is free on `Λ`, so its
/// rank is `|Λ| = C(m+v, v) − 1`. The jet ring of `𝕂[x]` is a polynomial
/// ring in `n+1` variables, and `Ω^{(m)}_A ⊗ B_n` is free on `(n+1)|Λ|`
/// generators for `v = 1` (no relations).
pub fn rank_comparison(n: u32, m: u32) -> Result<RankComparison> {
    let jet_ring_rank = index_families(n as usize + 1, m)?.col_count();
    let tensor_rank = (n as usize + 1) * index_families(1, m)?.col_count();
    Ok(RankComparison { n, m, jet_ring_rank, tensor_rank })
}

/// The instance `A = 𝕂[x]`, `n = 1`, `m = 2`.
pub fn rank_counterexample_check() -> RankComparison {
    rank_comparison(1, 2).expect("fixed valid instance")
}

/// A nonzero maximal minor of the evaluated presentation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub point: Vec<FieldElement>,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: FieldElement,
}

/// Evidence that the blowup of `J_n(X)` along `Ω^{(m)} ⊗ B_n` is not an
/// isomorphism: a rank drop of `D_n(Jac_m(f))` at the zero jet over a
/// singular point, and full rank at generic smooth jets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NobileCertificate {
    pub n: u32,
    pub m: u32,
    pub base: Vec<FieldElement>,
    pub zero_jet: Vec<FieldElement>,
    /// The zero jet over the base lies on `J_n(X)`.
    pub membership: bool,
    pub zero_jet_rank: usize,
    /// `(n+1)M`
    pub bound: usize,
    /// Every `(n+1)M`-minor vanishes at the zero jet.
    pub rank_deficient: bool,
    pub cokernel: CokernelReport,
    /// Cokernel rank at every sampled smooth jet equals `(n+1)(N−M)`.
    pub cokernel_match: bool,
    /// A minor of size `(n+1)M` that is nonzero at a sampled smooth jet;
    /// with `rank_deficient` this is the jump of the minors ideal.
    pub witness: Option<MinorWitness>,
    pub assumptions: Vec<&'static str>,
    pub verdict: &'static str,
}

pub fn nobile_certificate(
    f: &Polynomial,
    n: u32,
    m: u32,
    singular_base: &[FieldElement],
    trials: usize,
    seed: u64,
) -> Result<NobileCertificate> {
    let spec = f.spec();
    let s = f.nvars();
    if singular_base.len() != s as usize {
        return Err(Error::DimensionMismatch(alloc::format!(
            "base point has {} coordinates, expected {s}",
            singular_base.len()
        )));
    }
    let q = Point::from_flat(spec, s, singular_base)?;
    if !f.evaluate(&q)?.is_zero() {
        return Err(Error::PointNotOnScheme(String::from("the base point is not on V(f)")));
    }
    if let Some((var, _)) = pivot_variable(f, &q)? {
        return Err(Error::NotSingularBase { var });
    }
    let desc = jet_equations(f, n)?;
    let zero = Point::zero_jet(singular_base, spec, n)?;
    let membership = on_jet_scheme(&desc, &zero)?;
    let pres = presentation_of(f, n, m)?;
    let zero_jet_rank = rank(&eval_matrix(&pres.matrix, &zero)?);
    let bound = pres.rels;
    let cokernel = generic_cokernel_rank(&pres, trials, seed)?;
    let witness = cokernel.samples.iter().find(|x| x.rank == bound).map(|x| {
        let p = Point::from_flat(spec, s, &x.point).expect("sampled point");
        let at = eval_matrix(&pres.matrix, &p).expect("sampled point covers the matrix");
        let prof = rank_profile(&at);
        let value = determinant(&at.submatrix(&prof.pivot_rows, &prof.pivot_cols)).expect("square");
        MinorWitness { point: x.point.clone(), rows: prof.pivot_rows, cols: prof.pivot_cols, value }
    });
    let rank_deficient = zero_jet_rank < bound;
    let cokernel_match = cokernel.all_match;
    let verdict = if membership && rank_deficient && cokernel_match && witness.is_some() {
        VERDICT_NOT_ISOMORPHISM
    } else {
        VERDICT_INCONCLUSIVE
    };
    Ok(NobileCertificate {
        n,
        m,
        base: singular_base.to_vec(),
        zero_jet: zero.to_flat(s, n)?,
        membership,
        zero_jet_rank,
        bound,
        rank_deficient,
        cokernel,
        cokernel_match,
        witness,
        assumptions: CERTIFICATE_ASSUMPTIONS.to_vec(),
        verdict,
    })
}

/// A point from flat integer coordinates in canonical order.
pub fn flat_point(spec: FieldSpec, s: u32, values: &[i64]) -> Result<Point> {
    let v: Vec<FieldElement> = values.iter().map(|&x| spec.from_i64(x)).collect();
    Point::from_flat(spec, s, &v)
}
