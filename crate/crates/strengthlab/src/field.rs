//! Exact arithmetic over prime fields F_p (odd p) and the rationals.
//!
//! Elements are self-contained values: a prime-field element carries its
//! modulus, a rational is an arbitrary-precision reduced fraction. Mixing
//! elements of different fields is a `FieldMismatch` error on the checked
//! API and a panic on the operator shorthand.
//!
//! Characteristic 2 is rejected outright: the quadratic-form machinery in
//! the strength module divides by 2.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: F_p with p an odd prime, or Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    /// F_p for an odd prime p. Characteristic 2 and composite moduli are rejected.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if p == 2 {
            return Err(Error::Char2Unsupported);
        }
        if p < 3 || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn rationals() -> FieldSpec {
        FieldSpec::Rationals
    }

    /// 0 for Q, p for F_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.integer(0)
    }

    pub fn one(&self) -> FieldElement {
        self.integer(1)
    }

    /// The image of an integer in this field.
    pub fn integer(&self, k: i64) -> FieldElement {
        match self {
            FieldSpec::Prime(p) => FieldElement::Prime {
                value: (k as i128).rem_euclid(*p as i128) as u64,
                modulus: *p,
            },
            FieldSpec::Rationals => {
                FieldElement::Rational(BigRational::from_integer(BigInt::from(k)))
            }
        }
    }

    pub fn from_u64(&self, k: u64) -> FieldElement {
        match self {
            FieldSpec::Prime(p) => FieldElement::Prime {
                value: k % *p,
                modulus: *p,
            },
            FieldSpec::Rationals => {
                FieldElement::Rational(BigRational::from_integer(BigInt::from(k)))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F {p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

/// An exact scalar: a normalized residue in [0, p) or a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Prime { value: u64, modulus: u64 },
    Rational(BigRational),
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
            FieldElement::Rational(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Prime { value, .. } => *value == 0,
            FieldElement::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Prime { value, .. } => *value == 1,
            FieldElement::Rational(r) => r.is_one(),
        }
    }

    fn check_same_field(&self, other: &FieldElement) -> Result<()> {
        if self.spec() != other.spec() {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.spec(),
                other.spec()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (
                FieldElement::Prime { value: a, modulus },
                FieldElement::Prime { value: b, .. },
            ) => FieldElement::Prime {
                value: addmod(*a, *b, *modulus),
                modulus: *modulus,
            },
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a + b)
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked_add(&other.negated())
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        Ok(match (self, other) {
            (
                FieldElement::Prime { value: a, modulus },
                FieldElement::Prime { value: b, .. },
            ) => FieldElement::Prime {
                value: mulmod(*a, *b, *modulus),
                modulus: *modulus,
            },
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a * b)
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn negated(&self) -> FieldElement {
        match self {
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            FieldElement::Rational(r) => FieldElement::Rational(-r),
        }
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: invmod(*value, *modulus),
                modulus: *modulus,
            },
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
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

    /// Euler-criterion square test over F_p: a^((p-1)/2) = 1.
    ///
    /// Errors on zero input and over Q (square-class tests over Q are out of
    /// scope; use `exact_sqrt` for plain perfect-square checks).
    pub fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput("is_square requires a nonzero element".into()));
        }
        match self {
            FieldElement::Prime { value, modulus } => {
                Ok(powmod(*value, (*modulus - 1) / 2, *modulus) == 1)
            }
            FieldElement::Rational(_) => Err(Error::UnsupportedField(
                "square-class test over Q is not implemented".into(),
            )),
        }
    }

    /// An exact square root if one exists: Tonelli-Shanks over F_p, integer
    /// square roots of numerator and denominator over Q.
    pub fn exact_sqrt(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.spec().zero());
        }
        match self {
            FieldElement::Prime { value, modulus } => {
                tonelli_shanks(*value, *modulus).map(|r| FieldElement::Prime {
                    value: r,
                    modulus: *modulus,
                })
            }
            FieldElement::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let num = perfect_sqrt(r.numer())?;
                let den = perfect_sqrt(r.denom())?;
                Some(FieldElement::Rational(BigRational::new(num, den)))
            }
        }
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

field_binop!(Add, add, checked_add);
field_binop!(Sub, sub, checked_sub);
field_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.negated()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.negated()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    // Extended Euclid over signed 128-bit integers.
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of non-unit");
    t0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin, valid for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Square root mod an odd prime, or None for a non-residue.
fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(a, (p + 1) / 4, p));
    }
    // Write p - 1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // Smallest non-residue as the auxiliary generator.
    let z = (2..p).find(|&z| powmod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{next_below, seeded_rng};

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn field_spec_validation() {
        assert!(matches!(FieldSpec::prime(2), Err(Error::Char2Unsupported)));
        assert!(matches!(FieldSpec::prime(9), Err(Error::NotPrime(9))));
        assert!(matches!(FieldSpec::prime(1), Err(Error::NotPrime(1))));
        assert!(FieldSpec::prime(3).is_ok());
        assert!(FieldSpec::prime(1_000_003).is_ok());
    }

    #[test]
    fn basic_arithmetic_examples() {
        // 3 * 4 = 2 in F_5
        let f5 = fp(5);
        assert_eq!(f5.integer(3) * f5.integer(4), f5.integer(2));
        // 1/2 + 1/3 = 5/6 in Q
        let q = FieldSpec::rationals();
        let half = q.integer(1).checked_div(&q.integer(2)).unwrap();
        let third = q.integer(1).checked_div(&q.integer(3)).unwrap();
        let five_sixths = q.integer(5).checked_div(&q.integer(6)).unwrap();
        assert_eq!(half + third, five_sixths);
        // 3 / 5 = 2 in F_7, because 2 * 5 = 10 = 3 mod 7
        let f7 = fp(7);
        let d = f7.integer(3).checked_div(&f7.integer(5)).unwrap();
        assert_eq!(&d * &f7.integer(5), f7.integer(3));
        assert_eq!(d, f7.integer(2));
    }

    #[test]
    fn division_errors() {
        let f5 = fp(5);
        assert_eq!(
            f5.integer(3).checked_div(&f5.zero()),
            Err(Error::DivisionByZero)
        );
        let q = FieldSpec::rationals();
        assert!(matches!(
            f5.integer(1).checked_add(&q.integer(1)),
            Err(Error::FieldMismatch(_))
        ));
    }

    // Independent oracle: squares by exhaustive enumeration of b^2.
    fn squares_by_enumeration(p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = (1..p).map(|b| mulmod(b, b, p)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    #[test]
    fn euler_criterion_matches_enumeration() {
        for p in [3u64, 5, 7, 11, 13] {
            let spec = fp(p);
            let squares = squares_by_enumeration(p);
            for a in 1..p {
                let expected = squares.binary_search(&a).is_ok();
                assert_eq!(
                    spec.from_u64(a).is_square().unwrap(),
                    expected,
                    "a={a} mod {p}"
                );
            }
        }
        // Spot checks pinned from the enumeration: F_3 squares {1}, F_7 squares {1,2,4}.
        assert!(fp(5).integer(4).is_square().unwrap());
        assert!(!fp(3).integer(2).is_square().unwrap());
        assert!(!fp(7).integer(3).is_square().unwrap());
    }

    #[test]
    fn is_square_error_paths() {
        assert!(matches!(
            fp(5).zero().is_square(),
            Err(Error::ZeroInput(_))
        ));
        assert!(matches!(
            FieldSpec::rationals().integer(4).is_square(),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn square_classes_form_a_group() {
        // is_square(a*b) = is_square(a) XNOR is_square(b)
        for p in [3u64, 5, 7, 13, 101] {
            let spec = fp(p);
            let mut rng = seeded_rng(11, p);
            for _ in 0..200 {
                let a = spec.from_u64(1 + next_below(&mut rng, p - 1));
                let b = spec.from_u64(1 + next_below(&mut rng, p - 1));
                let lhs = (&a * &b).is_square().unwrap();
                let rhs = a.is_square().unwrap() == b.is_square().unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn exact_sqrt_roundtrip() {
        for p in [3u64, 5, 7, 13, 97, 1009] {
            let spec = fp(p);
            for a in 1..p.min(200) {
                let x = spec.from_u64(a);
                match x.exact_sqrt() {
                    Some(r) => assert_eq!(&r * &r, x),
                    None => assert!(!x.is_square().unwrap()),
                }
            }
        }
        let q = FieldSpec::rationals();
        let nine_fourths = q.integer(9).checked_div(&q.integer(4)).unwrap();
        let r = nine_fourths.exact_sqrt().unwrap();
        assert_eq!(&r * &r, nine_fourths);
        assert_eq!(q.integer(2).exact_sqrt(), None);
        assert_eq!(q.integer(-4).exact_sqrt(), None);
    }

    #[test]
    fn field_axioms_random_triples() {
        let specs = [fp(3), fp(5), fp(97), FieldSpec::rationals()];
        for (si, spec) in specs.iter().enumerate() {
            let mut rng = seeded_rng(23, si as u64);
            let draw = |rng: &mut rand_chacha::ChaCha8Rng| match spec {
                FieldSpec::Prime(p) => spec.from_u64(next_below(rng, *p)),
                FieldSpec::Rationals => {
                    let num = next_below(rng, 41) as i64 - 20;
                    let den = 1 + next_below(rng, 9) as i64;
                    spec.integer(num).checked_div(&spec.integer(den)).unwrap()
                }
            };
            for _ in 0..1000 {
                let a = draw(&mut rng);
                let b = draw(&mut rng);
                let c = draw(&mut rng);
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a + &b, &b + &a);
                assert_eq!(&a * &b, &b * &a);
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert!((&a + &a.negated()).is_zero());
                if !a.is_zero() {
                    assert!((&a * &a.inverse().unwrap()).is_one());
                }
            }
        }
    }
}
