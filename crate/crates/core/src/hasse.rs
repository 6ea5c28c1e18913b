//! Components `d_0(f), …, d_n(f)` of the universal Hasse–Schmidt derivation
//! on a polynomial ring.
//!
//! `d_k(f)` is the coefficient of `t^k` in
//! `f(Σ_j x_1^{(j)} t^j, …, Σ_j x_s^{(j)} t^j) mod t^{n+1}`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{JetVariable, Monomial, Polynomial};

/// The list `[d_0(f), …, d_n(f)]` for a base polynomial `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HsExpansion {
    pub f: Polynomial,
    pub n: u32,
    pub components: Vec<Polynomial>,
}

impl HsExpansion {
    pub fn component(&self, k: u32) -> &Polynomial {
        &self.components[k as usize]
    }
}

fn require_base(f: &Polynomial) -> Result<()> {
    if f.is_base() {
        Ok(())
    } else {
        Err(Error::NotBasePolynomial(alloc::format!("{f}")))
    }
}

/// Power series in `t` truncated after `t^n`, stored densely.
#[derive(Debug, Clone)]
struct Series(Vec<Polynomial>);

impl Series {
    fn one(f: &Polynomial, n: u32) -> Self {
        let mut c = alloc::vec![Polynomial::zero(f.spec(), f.nvars()); n as usize + 1];
        c[0] = Polynomial::constant(f.spec().one(), f.nvars());
        Series(c)
    }

    /// `Σ_j x_i^{(j)} t^j`
    fn universal_arc(base: u32, f: &Polynomial, n: u32) -> Self {
        Series((0..=n).map(|j| Polynomial::var(JetVariable::new(base, j), f.spec(), f.nvars())).collect())
    }

    fn mul(&self, other: &Series) -> Series {
        let n = self.0.len() - 1;
        let zero = Polynomial::zero(self.0[0].spec(), self.0[0].nvars());
        let mut out = alloc::vec![zero; n + 1];
        for (a, pa) in self.0.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, pb) in other.0[..=n - a].iter().enumerate() {
                if !pb.is_zero() {
                    out[a + b] = &out[a + b] + &(pa * pb);
                }
            }
        }
        Series(out)
    }
}

/// Hasse–Schmidt components by truncated series substitution.
pub fn hs_components(f: &Polynomial, n: u32) -> Result<HsExpansion> {
    require_base(f)?;
    let s = f.nvars();
    // powers[i][e] = (Σ_j x_{i+1}^{(j)} t^j)^e mod t^{n+1}
    let mut powers: Vec<Vec<Series>> = (1..=s).map(|_| alloc::vec![Series::one(f, n)]).collect();
    let mut acc = Series(alloc::vec![Polynomial::zero(f.spec(), s); n as usize + 1]);
    for (m, coeff) in f.terms() {
        let mut term = Series::one(f, n);
        for &(v, e) in m.factors() {
            let cache = &mut powers[v.base as usize - 1];
            while cache.len() <= e as usize {
                let next = cache.last().expect("nonempty").mul(&Series::universal_arc(v.base, f, n));
                cache.push(next);
            }
            term = term.mul(&cache[e as usize]);
        }
        for (slot, t) in acc.0.iter_mut().zip(term.0) {
            *slot = &*slot + &t.scale(coeff);
        }
    }
    Ok(HsExpansion { f: f.clone(), n, components: acc.0 })
}

/// Hasse–Schmidt components by the axioms alone: `d_k(x_i) = x_i^{(k)}`,
/// additivity, and `d_k(uv) = Σ_{j+l=k} d_j(u) d_l(v)`.
///
/// Independent of [`hs_components`]; used to cross-check it.
pub fn hs_components_leibniz(f: &Polynomial, n: u32) -> Result<HsExpansion> {
    require_base(f)?;
    let zero = Polynomial::zero(f.spec(), f.nvars());
    let mut components = alloc::vec![zero; n as usize + 1];
    for (m, coeff) in f.terms() {
        let dm = leibniz_monomial(m, f, n);
        for (slot, t) in components.iter_mut().zip(dm) {
            *slot = &*slot + &t.scale(coeff);
        }
    }
    Ok(HsExpansion { f: f.clone(), n, components })
}

fn leibniz_monomial(m: &Monomial, f: &Polynomial, n: u32) -> Vec<Polynomial> {
    let (spec, s) = (f.spec(), f.nvars());
    let Some(&(v, e)) = m.factors().first() else {
        // d_0(1) = 1, d_k(1) = 0
        return (0..=n)
            .map(|k| if k == 0 { Polynomial::constant(spec.one(), s) } else { Polynomial::zero(spec, s) })
            .collect();
    };
    let rest = Monomial::from_pairs(
        m.factors()[1..].iter().copied().chain(core::iter::once((v, e - 1))),
    );
    let d_rest = leibniz_monomial(&rest, f, n);
    (0..=n)
        .map(|k| {
            (0..=k).fold(Polynomial::zero(spec, s), |acc, j| {
                let dx = Polynomial::var(JetVariable::new(v.base, j), spec, s);
                &acc + &(&dx * &d_rest[(k - j) as usize])
            })
        })
        .collect()
}

/// Partial derivative of a jet polynomial in a jet variable.
pub fn jet_partial(g: &Polynomial, v: JetVariable) -> Polynomial {
    g.partial(v)
}

/// First failing triple `(i, j, k)` of the commutation identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommutationFailure {
    pub base: u32,
    pub j: u32,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationReport {
    pub passed: bool,
    /// Number of `(i, j, k)` triples compared.
    pub checked: usize,
    pub counterexample: Option<CommutationFailure>,
}

/// Checks `∂d_k(f)/∂x_i^{(j)} = d_{k−j}(∂f/∂x_i)` for all `0 ≤ j ≤ k ≤ n`
/// and all `i`.
pub fn check_commutation(f: &Polynomial, n: u32) -> Result<CommutationReport> {
    let hs = hs_components(f, n)?;
    let mut checked = 0;
    for i in 1..=f.nvars() {
        let df = hs_components(&f.partial(JetVariable::base(i)), n)?;
        for k in 0..=n {
            for j in 0..=k {
                checked += 1;
                let lhs = jet_partial(hs.component(k), JetVariable::new(i, j));
                if &lhs != df.component(k - j) {
                    return Ok(CommutationReport {
                        passed: false,
                        checked,
                        counterexample: Some(CommutationFailure { base: i, j, k }),
                    });
                }
            }
        }
    }
    Ok(CommutationReport { passed: true, checked, counterexample: None })
}
