//! Exact coefficient fields: the rationals and prime fields GF(p).

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest supported prime modulus. Residue products must fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("MixedFields: cannot combine elements of {0} and {1}")]
    MixedFields(FieldSpec, FieldSpec),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("NotPrime: {0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("BadFieldString: expected \"Q\" or \"Fp:<prime>\", got {0:?}")]
    BadFieldString(String),
}

/// The coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    /// GF(p); the modulus is checked to be prime when built through
    /// [`FieldSpec::prime`].
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// Parses `"Q"` or `"Fp:<p>"`.
    pub fn parse(s: &str) -> Result<Self, FieldError> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let bad = || FieldError::BadFieldString(s.to_string());
        let digits = t.strip_prefix("Fp:").ok_or_else(bad)?;
        let p: u64 = digits.trim().parse().map_err(|_| bad())?;
        FieldSpec::prime(p)
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        match *self {
            FieldSpec::Rationals => FieldElement::rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => FieldElement::residue(v.rem_euclid(p as i64) as u64, p),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match *self {
            FieldSpec::Rationals => FieldElement::rational(BigRational::from_integer(v.clone())),
            FieldSpec::PrimeField(p) => FieldElement::residue(reduce_bigint(v, p), p),
        }
    }

    /// Maps `num/den` into the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement, FieldError> {
        match *self {
            FieldSpec::Rationals => {
                if den.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(FieldElement::rational(BigRational::new(num.clone(), den.clone())))
            }
            FieldSpec::PrimeField(_) => self.from_bigint(num).checked_div(&self.from_bigint(den)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Deterministic trial division; moduli are bounded by [`MAX_PRIME`].
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// An exact field element in canonical form: a reduced fraction with
/// positive denominator, or a residue in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Repr);

impl FieldElement {
    fn rational(r: BigRational) -> Self {
        // BigRational keeps itself reduced with a positive denominator.
        FieldElement(Repr::Rational(r))
    }

    fn residue(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        FieldElement(Repr::Residue { value, modulus })
    }

    pub fn spec(&self) -> FieldSpec {
        match self.0 {
            Repr::Rational(_) => FieldSpec::Rationals,
            Repr::Residue { modulus, .. } => FieldSpec::PrimeField(modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    /// The rational value, if this is an element of ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Residue { .. } => None,
        }
    }

    /// The canonical residue, if this is an element of GF(p).
    pub fn as_residue(&self) -> Option<u64> {
        match self.0 {
            Repr::Residue { value, .. } => Some(value),
            Repr::Rational(_) => None,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_negative(),
            Repr::Residue { .. } => false,
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.spec() == other.spec() {
            Ok(())
        } else {
            Err(FieldError::MixedFields(self.spec(), other.spec()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Self::rational(a + b),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                Self::residue((a + b) % modulus, *modulus)
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Self::rational(a * b),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                Self::residue(a * b % modulus, *modulus)
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(r) => Self::rational(r.recip()),
            Repr::Residue { value, modulus } => Self::residue(pow_mod(*value, modulus - 2, *modulus), *modulus),
        })
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Rational(r) => Self::rational(-r),
            Repr::Residue { value, modulus } => Self::residue((modulus - value) % modulus, *modulus),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator forms panic on mixed fields; callers that cannot rule this out
// use the `checked_*` methods.
macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// `C(n, k)` over the integers; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Integer binomial reduced into the field. Divided-power coefficients go
/// through here so that no factorial is ever inverted in characteristic p.
pub fn binomial_in_field(n: u64, k: u64, spec: FieldSpec) -> FieldElement {
    spec.from_bigint(&BigInt::from(binomial(n, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> FieldElement {
        FieldSpec::Rationals.from_fraction(&BigInt::from(n), &BigInt::from(d)).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(field_arith(&q(1, 2), &q(1, 3), ArithOp::Add).unwrap(), q(5, 6));
    }

    #[test]
    fn prime_field_product() {
        let f5 = FieldSpec::prime(5).unwrap();
        let r = field_arith(&f5.from_i64(2), &f5.from_i64(3), ArithOp::Mul).unwrap();
        assert_eq!(r, f5.from_i64(1));
    }

    #[test]
    fn mixed_and_zero_division() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            field_arith(&q(1, 2), &f5.one(), ArithOp::Add),
            Err(FieldError::MixedFields(..))
        ));
        assert_eq!(field_arith(&q(1, 2), &q(0, 1), ArithOp::Div), Err(FieldError::DivisionByZero));
        assert_eq!(f5.from_i64(10).inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(q(2, -4), q(-1, 2));
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.from_i64(-1).as_residue(), Some(6));
        assert_eq!(f7.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap(), f7.from_i64(4));
    }

    #[test]
    fn field_strings() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("Fp:7").unwrap(), FieldSpec::PrimeField(7));
        assert_eq!(FieldSpec::parse("Fp:8"), Err(FieldError::NotPrime(8)));
        assert!(matches!(FieldSpec::parse("R"), Err(FieldError::BadFieldString(_))));
        assert_eq!(FieldSpec::PrimeField(7).to_string(), "Fp:7");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_in_field(3, 2, FieldSpec::Rationals), q(3, 1));
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(binomial_in_field(2, 2, f2), f2.one());
        // 4!/(2!2!) = 24/4 = 6, even
        let fact = |n: u64| (1..=n).product::<u64>();
        assert_eq!(fact(4) / (fact(2) * fact(2)), 6);
        assert!(binomial_in_field(4, 2, f2).is_zero());
        assert!(binomial_in_field(2, 3, FieldSpec::Rationals).is_zero());
    }

    #[test]
    fn pascal_rule_over_integers() {
        for n in 1..30u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    fn specs() -> Vec<FieldSpec> {
        alloc::vec![FieldSpec::Rationals, FieldSpec::PrimeField(2), FieldSpec::PrimeField(5), FieldSpec::PrimeField(65521)]
    }

    fn element(spec: FieldSpec, n: i64, d: i64) -> FieldElement {
        let d = if d == 0 { 1 } else { d };
        match spec.from_fraction(&BigInt::from(n), &BigInt::from(d)) {
            Ok(v) => v,
            Err(_) => spec.from_i64(n),
        }
    }

    proptest! {
        #[test]
        fn field_axioms(si in 0usize..4, a in (-50i64..50, -9i64..9), b in (-50i64..50, -9i64..9), c in (-50i64..50, -9i64..9)) {
            let spec = specs()[si];
            let (a, b, c) = (element(spec, a.0, a.1), element(spec, b.0, b.1), element(spec, c.0, c.1));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &spec.zero(), a.clone());
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
