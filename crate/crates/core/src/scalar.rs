//! Coefficient fields.
//!
//! All algebra in this crate is generic over [`Field`]. The production scalar
//! is [`Rat`], an exact rational that keeps small values in machine words and
//! spills to `malachite` rationals on overflow. `num_rational::BigRational`
//! also implements [`Field`] and serves as an independent reference scalar in
//! tests.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Gcd, Lcm, Reciprocal, Sign as _};
use malachite_base::num::logic::traits::SignificantBits;
use malachite_nz::integer::Integer as QInt;
use malachite_nz::natural::Natural;
use malachite_q::Rational;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A field of characteristic zero with exact arithmetic.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_ratio(r: &BigRational) -> Self;

    fn to_ratio(&self) -> BigRational;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    /// `self -= a * b`, the inner step of every reduction loop.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = a.mul_ref(b);
        let cur = std::mem::replace(self, Self::zero());
        *self = cur - prod;
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(&self.to_ratio())
    }

    /// Whether Gröbner computations should keep vectors integral and
    /// primitive instead of monic.
    const FRACTION_FREE: bool = false;

    /// Scalar bringing a nonzero vector with leading entry `lead` and
    /// remaining entries `rest` to canonical scale: monic by default, and
    /// primitive with positive leading entry when fraction-free.
    fn normalizer<'a>(lead: &'a Self, rest: impl IntoIterator<Item = &'a Self>) -> Self {
        let _ = rest;
        lead.inv()
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_ratio(&self) -> BigRational {
        self.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
}

/// Exact rational number.
///
/// Canonical form: `gcd(|num|, den) = 1`, `den >= 1`, zero is `0/1`. Values
/// whose numerator and denominator both fit in `i64` are always stored in the
/// small representation, so structural equality is value equality.
#[derive(Clone)]
pub struct Rat(Repr);

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(Box<Rational>),
}

fn natural_to_biguint(n: &Natural) -> BigUint {
    let bytes: Vec<u8> = n.to_limbs_asc().iter().flat_map(|l| l.to_le_bytes()).collect();
    BigUint::from_bytes_le(&bytes)
}

fn bigint_to_qint(n: &BigInt) -> QInt {
    n.to_string().parse().expect("decimal integer")
}

/// `n` as an `i64` other than `i64::MIN`, if it fits.
fn small_natural(n: &Natural) -> Option<i64> {
    if n.significant_bits() < 64 {
        u64::try_from(n).ok().map(|v| v as i64)
    } else {
        None
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat::from_i128(num as i128, den as i128)
    }

    pub fn integer(n: i64) -> Rat {
        Rat(Repr::Small(n, 1))
    }

    fn from_i128(num: i128, den: i128) -> Rat {
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        if num == 0 {
            return Rat(Repr::Small(0, 1));
        }
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        if g != 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(Box::new(Rational::from_integers(QInt::from(num), QInt::from(den))))),
        }
    }

    fn from_q(r: Rational) -> Rat {
        if let (Some(n), Some(d)) = (small_natural(r.numerator_ref()), small_natural(r.denominator_ref())) {
            let n = if r.sign() == Ordering::Less { -n } else { n };
            return Rat(Repr::Small(n, d));
        }
        Rat(Repr::Big(Box::new(r)))
    }

    fn from_big(r: &BigRational) -> Rat {
        Rat::from_q(Rational::from_integers(bigint_to_qint(r.numer()), bigint_to_qint(r.denom())))
    }

    fn q(&self) -> std::borrow::Cow<'_, Rational> {
        match &self.0 {
            Repr::Small(n, d) => std::borrow::Cow::Owned(Rational::from_integers(QInt::from(*n), QInt::from(*d))),
            Repr::Big(b) => std::borrow::Cow::Borrowed(b),
        }
    }

    fn big(&self) -> BigRational {
        BigRational::new_raw(self.numer(), self.denom())
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => {
                let sign = if b.sign() == Ordering::Less { Sign::Minus } else { Sign::Plus };
                BigInt::from_biguint(sign, natural_to_biguint(b.numerator_ref()))
            }
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => BigInt::from(natural_to_biguint(b.denominator_ref())),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => *b.denominator_ref() == 1u32,
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => b.sign() as i32,
        }
    }

    pub fn abs(&self) -> Rat {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn add_impl(&self, other: &Rat) -> Rat {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    if s != i64::MIN {
                        return Rat(Repr::Small(s, 1));
                    }
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Rat::from_i128(a + c, b);
            }
            return Rat::from_i128(a * d + c * b, b * d);
        }
        Rat::from_q(&*self.q() + &*other.q())
    }

    fn mul_impl(&self, other: &Rat) -> Rat {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    if p != i64::MIN {
                        return Rat(Repr::Small(p, 1));
                    }
                }
            }
            if *a == 0 || *c == 0 {
                return Rat::zero();
            }
            let g1 = gcd_u64(a.unsigned_abs(), *d as u64) as i64;
            let g2 = gcd_u64(c.unsigned_abs(), *b as u64) as i64;
            let (a, d) = (a / g1, d / g1);
            let (c, b) = (c / g2, b / g2);
            let num = a as i128 * c as i128;
            let den = b as i128 * d as i128;
            if let (Ok(n), Ok(dd)) = (i64::try_from(num), i64::try_from(den)) {
                if n != i64::MIN {
                    return Rat(Repr::Small(n, dd));
                }
            }
            return Rat(Repr::Big(Box::new(Rational::from_integers(QInt::from(num), QInt::from(den)))));
        }
        if self.is_zero() || other.is_zero() {
            return Rat::zero();
        }
        Rat::from_q(&*self.q() * &*other.q())
    }

    fn neg_impl(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => Rat(Repr::Small(-n, *d)),
            Repr::Big(b) => Rat::from_q(-&**b),
        }
    }

    fn inv_impl(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "inverse of zero");
                if *n < 0 {
                    Rat(Repr::Small(-d, -n))
                } else {
                    Rat(Repr::Small(*d, *n))
                }
            }
            Repr::Big(b) => Rat::from_q((&**b).reciprocal()),
        }
    }
}

impl Zero for Rat {
    fn zero() -> Rat {
        Rat(Repr::Small(0, 1))
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rat {
    fn one() -> Rat {
        Rat(Repr::Small(1, 1))
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl std::hash::Hash for Rat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.q().cmp(&other.q()),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$imp(&rhs)
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                self.$imp(rhs)
            }
        }
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                self.$imp(rhs)
            }
        }
    };
}

impl Rat {
    fn sub_impl(&self, other: &Rat) -> Rat {
        self.add_impl(&other.neg_impl())
    }

    fn div_impl(&self, other: &Rat) -> Rat {
        self.mul_impl(&other.inv_impl())
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = self.add_impl(rhs);
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = self.sub_impl(rhs);
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = self.mul_impl(rhs);
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        self.neg_impl()
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        self.neg_impl()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::integer(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        Rat::from_q(Rational::from(bigint_to_qint(&n)))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let s = s.trim();
        let err = || ParseRatError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rat::from_big(&BigRational::new(n, d)))
    }
}

impl Field for Rat {
    fn inv(&self) -> Rat {
        self.inv_impl()
    }

    fn from_bigint(n: &BigInt) -> Rat {
        Rat::from(n.clone())
    }

    fn from_ratio(r: &BigRational) -> Rat {
        Rat::from_big(r)
    }

    fn to_ratio(&self) -> BigRational {
        self.big()
    }

    fn from_i64(n: i64) -> Rat {
        if n == i64::MIN {
            Rat::from(BigInt::from(n))
        } else {
            Rat::integer(n)
        }
    }

    fn mul_ref(&self, other: &Rat) -> Rat {
        self.mul_impl(other)
    }

    fn add_ref(&self, other: &Rat) -> Rat {
        self.add_impl(other)
    }

    fn sub_mul_assign(&mut self, a: &Rat, b: &Rat) {
        let p = a.mul_impl(b);
        *self = self.sub_impl(&p);
    }

    fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    const FRACTION_FREE: bool = true;

    fn normalizer<'a>(lead: &'a Rat, rest: impl IntoIterator<Item = &'a Rat>) -> Rat {
        // gcd of numerators and lcm of denominators, in machine words while
        // they fit
        let (mut g, mut l) = (0u64, 1u64);
        let mut big: Option<(Natural, Natural)> = None;
        for v in std::iter::once(lead).chain(rest) {
            match (&v.0, big.as_mut()) {
                (Repr::Small(n, d), None) => {
                    g = gcd_u64(g, n.unsigned_abs());
                    let d = *d as u64;
                    match (l / gcd_u64(l, d)).checked_mul(d) {
                        Some(m) => l = m,
                        None => big = Some((Natural::from(g), Natural::from(l / gcd_u64(l, d)) * Natural::from(d))),
                    }
                }
                (_, Some((bg, bl))) => {
                    let q = v.q();
                    *bg = (&*bg).gcd(q.numerator_ref());
                    *bl = (&*bl).lcm(q.denominator_ref());
                }
                (Repr::Big(b), None) => {
                    let bg = Natural::from(g).gcd(b.numerator_ref());
                    let bl = Natural::from(l).lcm(b.denominator_ref());
                    big = Some((bg, bl));
                }
            }
        }
        let r = match big {
            None => Rat::from_i128(l as i128, g as i128),
            Some((bg, bl)) => Rat::from_q(Rational::from_naturals(bl, bg)),
        };
        if lead.signum() < 0 {
            -r
        } else {
            r
        }
    }
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a, F: Field>(values: impl IntoIterator<Item = &'a F>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.to_ratio().denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Rat::new(2, -4), Rat::new(-1, 2));
        assert_eq!(Rat::new(0, -7), Rat::zero());
        assert_eq!(Rat::new(6, 3).to_string(), "2");
        assert_eq!("-3/9".parse::<Rat>().unwrap(), Rat::new(-1, 3));
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Rat::integer(i64::MAX);
        let b = &a * &a;
        assert_eq!(b.to_ratio(), big(i64::MAX, 1) * big(i64::MAX, 1));
        let c = &b / &a;
        assert_eq!(c, a);
        assert!(matches!(c.0, Repr::Small(..)));
        let m = Rat::from_i64(i64::MIN);
        assert_eq!((-m.clone()).to_ratio(), -big(i64::MIN, 1));
        assert_eq!(&m - &m, Rat::zero());
    }

    #[test]
    fn normalizer_makes_primitive() {
        let vals = [Rat::new(2, 3), Rat::new(4, 9), Rat::integer(-6)];
        let c = Rat::normalizer(&vals[0], &vals[1..]);
        assert_eq!(c, Rat::new(9, 2));
        let neg = [Rat::new(-2, 3), Rat::new(4, 9)];
        assert_eq!(Rat::normalizer(&neg[0], &neg[1..]), Rat::new(-9, 2));
        let huge = Rat::integer(i64::MAX) * Rat::integer(6);
        let vals = [huge, Rat::new(3, 7), Rat::integer(12)];
        let c = Rat::normalizer(&vals[0], &vals[1..]);
        let scaled: Vec<Rat> = vals.iter().map(|v| v * &c).collect();
        assert!(scaled.iter().all(Rat::is_integer));
        let g = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(&v.numer()));
        assert_eq!(g, BigInt::one());
        assert_eq!(BigRational::normalizer(&big(3, 1), [&big(5, 1)]), big(1, 3));
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX) {
            let x = Rat::new(a, b);
            let y = Rat::new(c, d);
            let (bx, by) = (big(a, b), big(c, d));
            prop_assert_eq!((&x + &y).to_ratio(), &bx + &by);
            prop_assert_eq!((&x - &y).to_ratio(), &bx - &by);
            prop_assert_eq!((&x * &y).to_ratio(), &bx * &by);
            if c != 0 {
                prop_assert_eq!((&x / &y).to_ratio(), &bx / &by);
            }
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            let round: Rat = x.to_string().parse().unwrap();
            prop_assert_eq!(round, x);
        }
    }
}
