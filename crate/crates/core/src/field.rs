//! Exact scalars: arbitrary-precision rationals and prime-field residues.
//!
//! [`Rational`] keeps an `i64` numerator/denominator pair while the value fits
//! and promotes to [`BigInt`] parts only on overflow, so the common case of
//! small integer matrices never allocates. The representation is canonical
//! (reduced, positive denominator, small whenever possible), which makes the
//! derived `Eq`/`Hash` structural.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: i64, den: i64 },
    Big { num: BigInt, den: BigInt },
}

impl Rational {
    pub const ZERO: Rational = Rational(Repr::Small { num: 0, den: 1 });
    pub const ONE: Rational = Rational(Repr::Small { num: 1, den: 1 });

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small { num: n, den: 1 })
    }

    /// `num / den`, or `None` when `den == 0`.
    pub fn new(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(Self::from_i128(num as i128, den as i128))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalize_big(num, den))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == i128::MIN || den == i128::MIN {
            return Self::normalize_big(BigInt::from(num), BigInt::from(den));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big {
                num: BigInt::from(n),
                den: BigInt::from(d),
            }),
        }
    }

    fn normalize_big(num: BigInt, den: BigInt) -> Self {
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / &g, den / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        match (n.to_i64(), d.to_i64()) {
            (Some(num), Some(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big { num: n, den: d }),
        }
    }

    fn big_parts(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small { num, den } => (BigInt::from(*num), BigInt::from(*den)),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn numerator(&self) -> BigInt {
        self.big_parts().0
    }

    pub fn denominator(&self) -> BigInt {
        self.big_parts().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big { den, .. } => den.is_one(),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Repr::Big { num, den } => Self::normalize_big(den.clone(), num.clone()),
        })
    }

    /// Residue modulo `p`, or `None` if the denominator vanishes mod `p`.
    pub fn reduce_mod(&self, p: u32) -> Option<u32> {
        let (num, den) = self.big_parts();
        let pb = BigInt::from(p);
        let n = num.mod_floor(&pb).to_u32().unwrap_or(0);
        let d = den.mod_floor(&pb).to_u32().unwrap_or(0);
        if d == 0 {
            return None;
        }
        Some(mul_mod(n, pow_mod(d, p - 2, p), p))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let Some(n) = (a * d).checked_add(c * b) {
                return Rational::from_i128(n, b * d);
            }
        }
        let ((a, b), (c, d)) = (self.big_parts(), rhs.big_parts());
        Rational::normalize_big(a * &d + c * &b, b * d)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let Some(n) = (a * d).checked_sub(c * b) {
                return Rational::from_i128(n, b * d);
            }
        }
        let ((a, b), (c, d)) = (self.big_parts(), rhs.big_parts());
        Rational::normalize_big(a * &d - c * &b, b * d)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0) {
            return Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        let ((a, b), (c, d)) = (self.big_parts(), rhs.big_parts());
        Rational::normalize_big(a * c, b * d)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Rational(Repr::Small { num: n, den: *den }),
                None => Rational::normalize_big(-BigInt::from(*num), BigInt::from(*den)),
            },
            Repr::Big { num, den } => Rational::normalize_big(-num.clone(), den.clone()),
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0) {
            return (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128));
        }
        let ((a, b), (c, d)) = (self.big_parts(), other.big_parts());
        (a * d).cmp(&(c * b))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big { num, den } if den.is_one() => write!(f, "{num}"),
            Repr::Big { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn pow_mod(mut base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum FieldKind {
    Rational,
    Prime(u32),
}

/// The coefficient field of a computation: ℚ or 𝔽_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field(FieldKind);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u32),
    Parse { input: String, reason: &'static str },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not a prime below 2^31"),
            FieldError::Parse { input, reason } => write!(f, "cannot parse {input:?}: {reason}"),
        }
    }
}

impl Field {
    pub const RATIONAL: Field = Field(FieldKind::Rational);

    pub fn prime(p: u32) -> Result<Field, FieldError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field(FieldKind::Prime(p)))
    }

    /// `Some(p)` for 𝔽_p, `None` for ℚ.
    pub fn modulus(self) -> Option<u32> {
        match self.0 {
            FieldKind::Rational => None,
            FieldKind::Prime(p) => Some(p),
        }
    }

    pub fn is_rational(self) -> bool {
        self.0 == FieldKind::Rational
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self.0 {
            FieldKind::Rational => Scalar::Rational(Rational::from_integer(n)),
            FieldKind::Prime(p) => Scalar::Modular(ModP {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            }),
        }
    }

    /// Embeds a rational; fails for 𝔽_p when the denominator is divisible by p.
    pub fn from_rational(self, q: &Rational) -> Option<Scalar> {
        match self.0 {
            FieldKind::Rational => Some(Scalar::Rational(q.clone())),
            FieldKind::Prime(p) => q.reduce_mod(p).map(|value| Scalar::Modular(ModP { value, modulus: p })),
        }
    }

    /// Parses `"-3/2"`, `"7"`, or (for 𝔽_p) `"k mod p"`.
    pub fn parse(self, input: &str) -> Result<Scalar, FieldError> {
        let err = |reason| FieldError::Parse {
            input: input.to_string(),
            reason,
        };
        let text = input.trim();
        if let Some((value, modulus)) = text.split_once(" mod ") {
            let p: u32 = modulus.trim().parse().map_err(|_| err("bad modulus"))?;
            if self.modulus() != Some(p) {
                return Err(err("modulus does not match the job field"));
            }
            let q = parse_rational(value.trim()).ok_or_else(|| err("bad residue"))?;
            return self.from_rational(&q).ok_or_else(|| err("denominator vanishes mod p"));
        }
        let q = parse_rational(text).ok_or_else(|| err("expected an integer or p/q"))?;
        self.from_rational(&q).ok_or_else(|| err("denominator vanishes mod p"))
    }
}

fn parse_rational(text: &str) -> Option<Rational> {
    let parse_int = |s: &str| {
        let s = s.trim();
        let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        BigInt::parse_bytes(s.trim_start_matches('+').as_bytes(), 10)
    };
    match text.split_once('/') {
        Some((n, d)) => Rational::from_big(parse_int(n)?, parse_int(d)?),
        None => Rational::from_big(parse_int(text)?, BigInt::one()),
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FieldKind::Rational => f.write_str("Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A residue class in 𝔽_p, stored in canonical form `0 <= value < modulus`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModP {
    value: u32,
    modulus: u32,
}

impl ModP {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }
}

/// An element of ℚ or of some 𝔽_p.
///
/// Mixing fields in one arithmetic operation is a programming error and panics;
/// [`crate::Matrix`] guarantees it never happens for matrix entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Modular(ModP),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::RATIONAL,
            Scalar::Modular(m) => Field(FieldKind::Prime(m.modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular(m) => m.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular(m) => m.value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => q.recip().map(Scalar::Rational),
            Scalar::Modular(m) if m.value == 0 => None,
            Scalar::Modular(m) => Some(Scalar::Modular(ModP {
                value: pow_mod(m.value, m.modulus - 2, m.modulus),
                modulus: m.modulus,
            })),
        }
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow(&self, exp: i32) -> Option<Scalar> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = self.field().one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => fmt::Display::fmt(q, f),
            Scalar::Modular(m) => write!(f, "{} mod {}", m.value, m.modulus),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[track_caller]
fn same_modulus(a: ModP, b: ModP) -> u32 {
    assert_eq!(a.modulus, b.modulus, "scalar field mismatch");
    a.modulus
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular(a), Scalar::Modular(b)) => {
                let p = same_modulus(*a, *b);
                Scalar::Modular(ModP {
                    value: ((a.value as u64 + b.value as u64) % p as u64) as u32,
                    modulus: p,
                })
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular(a), Scalar::Modular(b)) => {
                let p = same_modulus(*a, *b);
                Scalar::Modular(ModP {
                    value: ((a.value as u64 + p as u64 - b.value as u64) % p as u64) as u32,
                    modulus: p,
                })
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular(a), Scalar::Modular(b)) => {
                let p = same_modulus(*a, *b);
                Scalar::Modular(ModP {
                    value: mul_mod(a.value, b.value, p),
                    modulus: p,
                })
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular(m) => Scalar::Modular(ModP {
                value: (m.modulus - m.value) % m.modulus,
                modulus: m.modulus,
            }),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $method:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $tr::$method(&self, &rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $tr::$method(&self, rhs)
            }
        }
    )*
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

forward_owned!(Rational, Add::add, Sub::sub, Mul::mul);
forward_owned!(Scalar, Add::add, Sub::sub, Mul::mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn rationals_are_reduced() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert_eq!(q(0, -5), Rational::ZERO);
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert_eq!(q(6, 3).to_string(), "2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_integer(i64::MAX);
        let sum = &big + &big;
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = &sum - &big;
        assert_eq!(back, big);
        let prod = &(&big * &big) * &q(1, i64::MAX);
        assert_eq!(prod, big);
        assert_eq!(-Rational::from_integer(i64::MIN), &Rational::from_integer(i64::MAX) + &Rational::ONE);
    }

    #[test]
    fn modular_arithmetic_is_canonical() {
        let f5 = Field::prime(5).unwrap();
        let a = f5.from_i64(-1);
        assert_eq!(a.to_string(), "4 mod 5");
        assert_eq!(&a * &a, f5.one());
        assert_eq!(a.inverse().unwrap(), a);
        assert_eq!(f5.from_i64(3).inverse().unwrap(), f5.from_i64(2));
        assert!(f5.zero().inverse().is_none());
    }

    #[test]
    fn parsing() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(Field::RATIONAL.parse("-3/2").unwrap().to_string(), "-3/2");
        assert_eq!(f7.parse("1/2").unwrap(), f7.from_i64(4));
        assert_eq!(f7.parse("3 mod 7").unwrap(), f7.from_i64(3));
        assert!(f7.parse("3 mod 5").is_err());
        assert!(f7.parse("1/7").is_err());
        assert!(Field::RATIONAL.parse("1.5").is_err());
        assert!(Field::RATIONAL.parse("1/0").is_err());
        assert!(Field::prime(4).is_err());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let two = Field::RATIONAL.from_i64(2);
        assert_eq!(two.pow(-1).unwrap().to_string(), "1/2");
        assert_eq!(two.pow(3).unwrap().to_string(), "8");
        assert!(Field::RATIONAL.zero().pow(-1).is_none());
    }
}
