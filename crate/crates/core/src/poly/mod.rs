//! Sparse multivariate polynomials in jet variables `x_i^{(j)}`.
//!
//! A base variable `x_i` is the jet variable of order zero, so polynomials
//! over the base ring and over the jet ring share one representation.

mod parse;

pub use parse::parse_poly;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{binomial_in_field, FieldElement, FieldSpec};

/// The symbol `x_base^{(order)}`. Base indices start at 1.
///
/// Variables are ordered by `(order, base)`, which yields the coordinate
/// layout `x_1, …, x_s, x_1^{(1)}, …, x_s^{(1)}, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JetVariable {
    pub base: u32,
    pub order: u32,
}

impl JetVariable {
    pub const fn new(base: u32, order: u32) -> Self {
        JetVariable { base, order }
    }

    /// The base variable `x_i = x_i^{(0)}`.
    pub const fn base(base: u32) -> Self {
        JetVariable { base, order: 0 }
    }

    /// Position in the flat coordinate tuple for `s` base variables.
    pub fn flat_index(&self, s: u32) -> usize {
        (self.order * s + self.base - 1) as usize
    }

    pub fn from_flat_index(idx: usize, s: u32) -> Self {
        let idx = idx as u32;
        JetVariable::new(idx % s + 1, idx / s)
    }
}

impl Ord for JetVariable {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.order, self.base).cmp(&(other.order, other.base))
    }
}

impl PartialOrd for JetVariable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for JetVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            write!(f, "x{}", self.base)
        } else {
            write!(f, "x{}_{}", self.base, self.order)
        }
    }
}

/// A dense exponent vector over the base variables `x_1, …, x_s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(s: usize) -> Self {
        MultiIndex(alloc::vec![0; s])
    }

    pub fn unit(s: usize, i: usize) -> Self {
        let mut e = alloc::vec![0; s];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|α|`
    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self − other`, or `None` when some component would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if !other.le(self) {
            return None;
        }
        Some(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// A monomial as a sparse list of `(variable, exponent)` pairs, sorted by
/// variable with strictly positive exponents.
///
/// Ordered graded-lexicographically over the canonical variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(JetVariable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: JetVariable, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(alloc::vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables multiply.
    pub fn from_pairs<I: IntoIterator<Item = (JetVariable, u32)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            let slot = map.entry(v).or_insert(0u32);
            *slot = slot.checked_add(e).expect("exponent overflow");
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: JetVariable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(JetVariable, u32)] {
        &self.0
    }

    pub fn max_order(&self) -> Option<u32> {
        self.0.iter().map(|(v, _)| v.order).max()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1.checked_add(b.1).expect("exponent overflow")));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Removes `e` copies of `v`; `None` if the exponent is too small.
    fn reduce(&self, v: JetVariable, e: u32) -> Option<Self> {
        if e == 0 {
            return Some(self.clone());
        }
        let idx = self.0.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let have = self.0[idx].1;
        if have < e {
            return None;
        }
        let mut out = self.0.clone();
        if have == e {
            out.remove(idx);
        } else {
            out[idx].1 = have - e;
        }
        Some(Monomial(out))
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    // the side holding the earlier variable has the larger exponent there
                    match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Equal => i += 1,
                            o => return o,
                        },
                    }
                }
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// An assignment of field values to jet variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    spec: FieldSpec,
    coords: BTreeMap<JetVariable, FieldElement>,
}

impl Point {
    pub fn new(spec: FieldSpec) -> Self {
        Point { spec, coords: BTreeMap::new() }
    }

    /// Reads a flat coordinate tuple in canonical order
    /// `(x_1, …, x_s, x_1^{(1)}, …, x_s^{(1)}, …)`.
    pub fn from_flat(spec: FieldSpec, s: u32, values: &[FieldElement]) -> Result<Self> {
        if s == 0 || !values.len().is_multiple_of(s as usize) {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{} coordinates is not a multiple of s = {s}",
                values.len()
            )));
        }
        let mut p = Point::new(spec);
        for (i, v) in values.iter().enumerate() {
            if v.spec() != spec {
                return Err(crate::field::FieldError::MixedFields(spec, v.spec()).into());
            }
            p.coords.insert(JetVariable::from_flat_index(i, s), v.clone());
        }
        Ok(p)
    }

    /// The jet over `base` whose coordinates of positive order vanish.
    pub fn zero_jet(base: &[FieldElement], spec: FieldSpec, n: u32) -> Result<Self> {
        let s = base.len() as u32;
        let mut flat = base.to_vec();
        flat.resize(base.len() * (n as usize + 1), spec.zero());
        Point::from_flat(spec, s, &flat)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn get(&self, v: JetVariable) -> Option<&FieldElement> {
        self.coords.get(&v)
    }

    pub fn set(&mut self, v: JetVariable, value: FieldElement) {
        assert_eq!(value.spec(), self.spec, "coordinate from a different field");
        self.coords.insert(v, value);
    }

    pub fn coords(&self) -> impl Iterator<Item = (&JetVariable, &FieldElement)> {
        self.coords.iter()
    }

    /// Coordinates in canonical order for `s` base variables up to order `n`.
    pub fn to_flat(&self, s: u32, n: u32) -> Result<Vec<FieldElement>> {
        (0..(s * (n + 1)) as usize)
            .map(|i| {
                let v = JetVariable::from_flat_index(i, s);
                self.get(v).cloned().ok_or(Error::MissingCoordinate(v))
            })
            .collect()
    }
}

/// A polynomial over a [`FieldSpec`] in the jet variables of `s` base
/// variables. Only nonzero coefficients are stored.
#[derive(Debug, Clone)]
pub struct Polynomial {
    spec: FieldSpec,
    nvars: u32,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(spec: FieldSpec, nvars: u32) -> Self {
        Polynomial { spec, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement, nvars: u32) -> Self {
        let mut p = Polynomial::zero(c.spec(), nvars);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: JetVariable, spec: FieldSpec, nvars: u32) -> Self {
        Polynomial::monomial(Monomial::var(v, 1), spec.one(), nvars)
    }

    pub fn monomial(m: Monomial, c: FieldElement, nvars: u32) -> Self {
        let mut p = Polynomial::zero(c.spec(), nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(spec: FieldSpec, nvars: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Polynomial::zero(spec, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// Number of base variables `s` of the ambient ring.
    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    pub fn with_nvars(mut self, nvars: u32) -> Self {
        self.nvars = self.nvars.max(nvars);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coefficient(&Monomial::one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Highest jet order present; `None` for constants.
    pub fn max_order(&self) -> Option<u32> {
        self.terms.keys().filter_map(Monomial::max_order).max()
    }

    /// True when only order-zero variables occur.
    pub fn is_base(&self) -> bool {
        self.max_order().unwrap_or(0) == 0
    }

    pub fn variables(&self) -> Vec<JetVariable> {
        let mut vs: Vec<JetVariable> =
            self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        assert_eq!(c.spec(), self.spec, "coefficient from a different field");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(crate::field::FieldError::MixedFields(self.spec, other.spec).into());
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut out = self.clone().with_nvars(other.nvars);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut out = Polynomial::zero(self.spec, self.nvars.max(other.nvars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Polynomial::zero(self.spec, self.nvars);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::constant(self.spec.one(), self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to any jet variable.
    pub fn partial(&self, v: JetVariable) -> Self {
        let mut out = Polynomial::zero(self.spec, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let reduced = m.reduce(v, 1).expect("exponent checked");
            out.add_term(reduced, c * &self.spec.from_i64(e as i64));
        }
        out
    }

    /// Divided-power (Hasse) derivative in the base variables: sends
    /// `x^γ` to `∏ C(γ_i, δ_i) · x^{γ−δ}`, and to zero when some `γ_i < δ_i`.
    ///
    /// Coefficients are integer binomials reduced into the field, so this is
    /// well defined in every characteristic.
    pub fn divided_partial(&self, delta: &MultiIndex) -> Self {
        let mut out = Polynomial::zero(self.spec, self.nvars);
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = m.clone();
            for (i, &d) in delta.0.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let v = JetVariable::base(i as u32 + 1);
                let g = m.exponent(v);
                if g < d {
                    continue 'terms;
                }
                coeff = &coeff * &binomial_in_field(g as u64, d as u64, self.spec);
                mono = mono.reduce(v, d).expect("exponent checked");
            }
            out.add_term(mono, coeff);
        }
        out
    }

    /// Exact value at `p`.
    pub fn evaluate(&self, p: &Point) -> Result<FieldElement> {
        if p.spec() != self.spec {
            return Err(crate::field::FieldError::MixedFields(self.spec, p.spec()).into());
        }
        let mut acc = self.spec.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = p.get(v).ok_or(Error::MissingCoordinate(v))?;
                t = &t * &x.pow(e as u64);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i ↦ values[i-1]` for base variables only and leaves
    /// everything else untouched.
    pub fn substitute_base(&self, values: &BTreeMap<JetVariable, Polynomial>) -> Self {
        let mut out = Polynomial::zero(self.spec, self.nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone(), self.nvars);
            for &(v, e) in &m.0 {
                let factor = match values.get(&v) {
                    Some(q) => q.pow(e),
                    None => Polynomial::monomial(Monomial::var(v, e), self.spec.one(), self.nvars),
                };
                t = &t * &factor;
            }
            out = &out + &t;
        }
        out
    }

    /// Maps every coefficient into another field through `f`.
    pub fn map_coefficients<F>(&self, spec: FieldSpec, f: F) -> Self
    where
        F: Fn(&FieldElement) -> FieldElement,
    {
        Polynomial::from_terms(spec, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    match op {
        PolyOp::Add => f.checked_add(g),
        PolyOp::Sub => f.checked_sub(g),
        PolyOp::Mul => f.checked_mul(g),
    }
}

macro_rules! forward_poly_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_poly_op!(Add, add, checked_add);
forward_poly_op!(Sub, sub, checked_sub);
forward_poly_op!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            spec: self.spec,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Canonical form: terms in descending graded-lex order, e.g.
/// `x1^3 - 3/2*x1*x2_1 + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn p(src: &str, s: u32) -> Polynomial {
        parse_poly(src, s, Q).unwrap()
    }

    fn pt(vals: &[i64]) -> Point {
        let v: Vec<_> = vals.iter().map(|&x| Q.from_i64(x)).collect();
        Point::from_flat(Q, 2, &v).unwrap()
    }

    #[test]
    fn variable_order_is_order_major() {
        let mut vs = alloc::vec![
            JetVariable::new(2, 1),
            JetVariable::new(1, 1),
            JetVariable::new(2, 0),
            JetVariable::new(1, 0)
        ];
        vs.sort();
        assert_eq!(
            vs,
            alloc::vec![
                JetVariable::new(1, 0),
                JetVariable::new(2, 0),
                JetVariable::new(1, 1),
                JetVariable::new(2, 1)
            ]
        );
        assert_eq!(JetVariable::new(2, 1).flat_index(2), 3);
        assert_eq!(JetVariable::from_flat_index(3, 2), JetVariable::new(2, 1));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x1 + 1", 1) * &p("x1 - 1", 1), p("x1^2 - 1", 1));
        let f = p("x1^3 - x2^2", 2);
        assert_eq!(&f + &Polynomial::zero(Q, 2), f);
        let f2 = FieldSpec::prime(2).unwrap();
        let sum = parse_poly("x1 + x2", 2, f2).unwrap();
        assert_eq!(sum.pow(2), parse_poly("x1^2 + x2^2", 2, f2).unwrap());
        assert!(matches!(
            poly_arith(&sum, &f, PolyOp::Add),
            Err(Error::Field(crate::field::FieldError::MixedFields(..)))
        ));
    }

    #[test]
    fn partials_of_the_cusp() {
        let f = p("x1^3 - x2^2", 2);
        assert_eq!(f.partial(JetVariable::base(1)), p("3*x1^2", 2));
        assert_eq!(f.partial(JetVariable::base(2)), p("-2*x2", 2));
        assert!(p("7", 2).partial(JetVariable::base(1)).is_zero());
    }

    #[test]
    fn divided_partials() {
        let f = p("x1^3 - x2^2", 2);
        assert_eq!(f.divided_partial(&MultiIndex(alloc::vec![2, 0])), p("3*x1", 2));
        assert_eq!(f.divided_partial(&MultiIndex(alloc::vec![0, 2])), p("-1", 2));
        let f2 = FieldSpec::prime(2).unwrap();
        let x4 = parse_poly("x1^4", 1, f2).unwrap();
        assert!(x4.divided_partial(&MultiIndex(alloc::vec![2])).is_zero());
        let x4q = p("x1^4", 1);
        assert_eq!(x4q.divided_partial(&MultiIndex(alloc::vec![2])), p("6*x1^2", 1));
    }

    #[test]
    fn evaluation() {
        let f = p("x1^3 - x2^2", 2);
        assert!(f.evaluate(&pt(&[1, 1])).unwrap().is_zero());
        assert_eq!(f.evaluate(&pt(&[2, 3])).unwrap(), Q.from_i64(8 - 9));
        let g = p("5 + x1*x2 - x2", 2);
        assert_eq!(g.evaluate(&pt(&[0, 0])).unwrap(), g.constant_term());
        let missing = p("x1_1", 1).evaluate(&pt(&[0, 0]));
        assert_eq!(missing, Err(Error::MissingCoordinate(JetVariable::new(1, 1))));
    }

    #[test]
    fn printing_is_graded_lex_descending() {
        assert_eq!(p("x1^3 - x2^2", 2).to_string(), "x1^3 - x2^2");
        assert_eq!(p("x1_1^2 + 2*x1*x1_2", 1).to_string(), "2*x1*x1_2 + x1_1^2");
        assert_eq!(p("1 - 1/2*x2 + x1", 2).to_string(), "x1 - 1/2*x2 + 1");
        assert_eq!(Polynomial::zero(Q, 1).to_string(), "0");
        assert_eq!(p("-x1", 1).to_string(), "-x1");
    }

    pub(crate) fn arb_poly(s: u32, max_deg: u32, spec: FieldSpec) -> impl Strategy<Value = Polynomial> {
        let term = (proptest::collection::vec(0..=max_deg, s as usize), -9i64..10);
        proptest::collection::vec(term, 0..6).prop_map(move |ts| {
            Polynomial::from_terms(
                spec,
                s,
                ts.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_deg).map(|(e, c)| {
                    let m = Monomial::from_pairs(
                        e.iter().enumerate().map(|(i, &k)| (JetVariable::base(i as u32 + 1), k)),
                    );
                    (m, spec.from_i64(c))
                }),
            )
        })
    }

    fn iterated_partial(f: &Polynomial, delta: &MultiIndex) -> Polynomial {
        let mut g = f.clone();
        for (i, &d) in delta.0.iter().enumerate() {
            for _ in 0..d {
                g = g.partial(JetVariable::base(i as u32 + 1));
            }
        }
        g
    }

    proptest! {
        #[test]
        fn leibniz_rule(f in arb_poly(3, 4, Q), g in arb_poly(3, 4, Q), i in 1u32..4) {
            let v = JetVariable::base(i);
            prop_assert_eq!((&f * &g).partial(v), &(&f * &g.partial(v)) + &(&g * &f.partial(v)));
        }

        #[test]
        fn divided_partial_times_factorial_is_iterated_partial(
            f in arb_poly(3, 5, Q),
            d in proptest::collection::vec(0u32..3, 3),
        ) {
            let delta = MultiIndex(d);
            prop_assume!(delta.norm() <= 4);
            let fact: i64 = delta.0.iter().map(|&k| (1..=k as i64).product::<i64>()).product();
            prop_assert_eq!(f.divided_partial(&delta).scale(&Q.from_i64(fact)), iterated_partial(&f, &delta));
        }

        #[test]
        fn divided_power_composition(
            e in proptest::collection::vec(0u32..7, 2),
            d1 in proptest::collection::vec(0u32..3, 2),
            d2 in proptest::collection::vec(0u32..3, 2),
            ch in prop::sample::select(alloc::vec![0u64, 2, 3, 5]),
        ) {
            let spec = if ch == 0 { Q } else { FieldSpec::prime(ch).unwrap() };
            let m = Monomial::from_pairs(e.iter().enumerate().map(|(i, &k)| (JetVariable::base(i as u32 + 1), k)));
            let f = Polynomial::monomial(m, spec.one(), 2);
            let (a, b) = (MultiIndex(d1), MultiIndex(d2));
            let lhs = f.divided_partial(&b).divided_partial(&a);
            let c: FieldElement = a.0.iter().zip(&b.0)
                .map(|(&x, &y)| binomial_in_field((x + y) as u64, x as u64, spec))
                .fold(spec.one(), |acc, v| &acc * &v);
            prop_assert_eq!(lhs, f.divided_partial(&a.add(&b)).scale(&c));
        }

        #[test]
        fn evaluation_is_multiplicative(f in arb_poly(2, 4, Q), g in arb_poly(2, 4, Q), x in -5i64..5, y in -5i64..5) {
            let point = pt(&[x, y]);
            prop_assert_eq!(
                (&f * &g).evaluate(&point).unwrap(),
                &f.evaluate(&point).unwrap() * &g.evaluate(&point).unwrap()
            );
        }

        #[test]
        fn print_parse_round_trip(f in arb_poly(3, 4, Q), ch in prop::sample::select(alloc::vec![0u64, 7])) {
            let spec = if ch == 0 { Q } else { FieldSpec::prime(ch).unwrap() };
            let f = f.map_coefficients(spec, |c| {
                let r = c.as_rational().unwrap();
                spec.from_fraction(r.numer(), r.denom()).unwrap()
            });
            let again = parse_poly(&f.to_string(), 3, spec).unwrap();
            prop_assert_eq!(again, f);
        }
    }
}
