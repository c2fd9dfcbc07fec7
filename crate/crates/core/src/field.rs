//! Exact scalars over the rationals and prime fields.
//!
//! A [`FieldSpec`] names the field; a [`Scalar`] carries its value together
//! with enough information to know which field it belongs to. Rationals are
//! arbitrary precision and always kept in lowest terms, prime-field elements
//! are canonical residues in `[0, p)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

const MAX_MODULUS: u64 = 1 << 31;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// The prime field `F_p`; rejects composites and moduli outside `[2, 2^31)`.
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&p) {
            return Err(Error::InvalidField(format!("modulus {p} out of range")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => u64::from(*p),
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(i64::from(p)) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                Scalar::Modular {
                    value: r.to_u32().expect("residue fits in u32"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` reduced into this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::Prime(_) => self.from_bigint(num).checked_div(&self.from_bigint(den)),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        self.from_ratio(q.numer(), q.denom())
    }

    /// Parses `"a"` or `"a/b"` with an optional leading `-`. Prime-field
    /// values are reduced to their canonical residue.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::ScalarParse(text.to_string());
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n, d),
            None => (t, "1"),
        };
        if num.is_empty() || den.is_empty() || den.starts_with('-') || den.starts_with('+') {
            return Err(bad());
        }
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        self.from_ratio(&num, &den)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(2) => write!(f, "F2"),
            FieldSpec::Prime(3) => write!(f, "F3"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `F2`, `F3`, `Fp:<p>`, and the shorthand `F<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// An element of a [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic; both operands must share a field.
pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    a.check_same_field(b)?;
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

pub fn characteristic(spec: FieldSpec) -> u64 {
    spec.characteristic()
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn check_same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{} vs {}", self.field(), other.field())))
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_pow(u64::from(*value), u64::from(*modulus) - 2, u64::from(*modulus))
                    as u32,
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        arith(self, other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        arith(self, other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        arith(self, other, ArithOp::Mul)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Rationals by value, residues by representative; rationals sort before
/// residues. Used only for canonical orderings, never for field semantics.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (
                Scalar::Modular { value: a, modulus: p },
                Scalar::Modular { value: b, modulus: q },
            ) => (p, a).cmp(&(q, b)),
            (Scalar::Rational(_), Scalar::Modular { .. }) => Ordering::Less,
            (Scalar::Modular { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// The operator impls panic on a field mismatch: matrices and tensors carry a
// single FieldSpec, so mixing can only come from a caller bug. Use `arith`
// for checked arithmetic on untrusted operands.
fn binop(a: &Scalar, b: &Scalar, op: ArithOp) -> Scalar {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => unreachable!(),
        }),
        (
            Scalar::Modular { value: x, modulus: p },
            Scalar::Modular { value: y, modulus: q },
        ) if p == q => {
            let (x, y, m) = (u64::from(*x), u64::from(*y), u64::from(*p));
            let v = match op {
                ArithOp::Add => (x + y) % m,
                ArithOp::Sub => (x + m - y) % m,
                ArithOp::Mul => x * y % m,
                ArithOp::Div => unreachable!(),
            };
            Scalar::Modular {
                value: v as u32,
                modulus: *p,
            }
        }
        _ => panic!("scalar field mismatch: {} vs {}", a.field(), b.field()),
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                binop(self, rhs, $op)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                binop(&self, &rhs, $op)
            }
        }
    };
}

impl_binop!(Add, add, ArithOp::Add);
impl_binop!(Sub, sub, ArithOp::Sub);
impl_binop!(Mul, mul, ArithOp::Mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        FieldSpec::Rationals.parse_scalar(s).unwrap()
    }

    #[test]
    fn small_identities() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(arith(&f2.one(), &f2.one(), ArithOp::Add).unwrap().is_zero());
        assert_eq!(arith(&q("1/2"), &q("1/3"), ArithOp::Add).unwrap(), q("5/6"));
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(
            arith(&f5.one(), &f5.from_i64(2), ArithOp::Div).unwrap(),
            f5.from_i64(3)
        );
    }

    #[test]
    fn errors() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(
            arith(&f5.one(), &f5.zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        assert!(matches!(
            arith(&f5.one(), &q("1"), ArithOp::Add),
            Err(Error::FieldMismatch(_))
        ));
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(1 << 31).is_err());
        assert!(FieldSpec::Rationals.parse_scalar("1/0").is_err());
        assert!(FieldSpec::Rationals.parse_scalar("x").is_err());
        assert!(FieldSpec::Rationals.parse_scalar("1/-2").is_err());
    }

    #[test]
    fn characteristic_values() {
        assert_eq!(characteristic(FieldSpec::Rationals), 0);
        assert_eq!(characteristic(FieldSpec::prime(2).unwrap()), 2);
        assert_eq!(characteristic(FieldSpec::prime(7).unwrap()), 7);
    }

    #[test]
    fn field_text() {
        for text in ["Q", "F2", "F3", "Fp:5", "Fp:2147483647"] {
            let spec: FieldSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert_eq!("F7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!("Fp:9".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(q("2/4").to_string(), "1/2");
        assert_eq!(q("-6/3").to_string(), "-2");
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.parse_scalar("-1").unwrap().to_string(), "6");
        assert_eq!(f7.parse_scalar("1/2").unwrap(), f7.from_i64(4));
        assert_eq!(f7.parse_scalar("15").unwrap().to_string(), "1");
    }

    fn fields() -> Vec<FieldSpec> {
        vec![
            FieldSpec::Rationals,
            FieldSpec::Prime(2),
            FieldSpec::Prime(3),
            FieldSpec::Prime(5),
            FieldSpec::Prime(7),
        ]
    }

    fn scalar(spec: FieldSpec, n: i64, d: i64) -> Scalar {
        spec.from_ratio(&BigInt::from(n), &BigInt::from(d))
            .unwrap_or_else(|_| spec.from_i64(n))
    }

    proptest! {
        #[test]
        fn field_axioms(fi in 0usize..5, a in -20i64..20, b in -20i64..20, c in -20i64..20,
                        da in 1i64..9, db in 1i64..9, dc in 1i64..9) {
            let spec = fields()[fi];
            let (a, b, c) = (scalar(spec, a, da), scalar(spec, b, db), scalar(spec, c, dc));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn text_round_trip(fi in 0usize..5, n in -1000i64..1000, d in 1i64..50) {
            let spec = fields()[fi];
            let x = scalar(spec, n, d);
            prop_assert_eq!(spec.parse_scalar(&x.to_string()).unwrap(), x);
        }
    }
}
