//! Exact scalar fields: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::linalg::{ElimRing, FieldElim};

/// A field element usable as a coefficient.
///
/// Elimination is delegated to `Elim`, which for the rationals is an
/// integer ring (fraction-free elimination) and for prime fields is the
/// field itself.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Elim: ElimRing;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// `(numerator, denominator)` with a positive denominator; prime-field
    /// elements use their least nonnegative residue over 1.
    fn to_fraction(&self) -> (BigInt, BigInt);
    /// Parses `a` or `a/b`.
    fn parse(text: &str) -> Option<Self>;
    fn field_name() -> String;

    /// Scales a batch of scalars into the elimination ring by a common factor.
    fn to_elim(row: &[Self]) -> Vec<Self::Elim>;
    /// Converts a batch of eliminated values `v` back, interpreting each as `v`.
    fn from_elim(v: &Self::Elim) -> Self;
    /// `a / b` for elimination values, used when kernel vectors are rescaled.
    fn elim_ratio(a: &Self::Elim, b: &Self::Elim) -> Self {
        Self::from_elim(a) * Self::from_elim(b).inv().expect("nonzero denominator")
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Arbitrary-precision rational, always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if One::is_one(self.0.denom()) {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl FromStr for Rational {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        <Rational as Scalar>::parse(s).ok_or(())
    }
}

impl Scalar for Rational {
    type Elim = BigInt;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
    fn to_fraction(&self) -> (BigInt, BigInt) {
        (self.0.numer().clone(), self.0.denom().clone())
    }
    fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim().parse::<BigInt>().ok()?, b.trim().parse::<BigInt>().ok()?),
            None => (text.parse::<BigInt>().ok()?, BigInt::one()),
        };
        (!Zero::is_zero(&den)).then(|| Rational(BigRational::new(num, den)))
    }
    fn field_name() -> String {
        "Q".to_string()
    }

    fn to_elim(row: &[Self]) -> Vec<BigInt> {
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.0.denom()));
        row.iter().map(|x| x.0.numer() * (&lcm / x.0.denom())).collect()
    }
    fn from_elim(v: &BigInt) -> Self {
        Rational(BigRational::from_integer(v.clone()))
    }
    fn elim_ratio(a: &BigInt, b: &BigInt) -> Self {
        Rational(BigRational::new(a.clone(), b.clone()))
    }
}

/// Residue modulo the prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const PRIME_CHECK: () = assert!(is_prime(P), "modulus must be prime");

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::PRIME_CHECK;
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

const fn is_prime(p: u32) -> bool {
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

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Scalar for Fp<P> {
    type Elim = FieldElim<Fp<P>>;

    fn zero() -> Self {
        Fp::new(0)
    }
    fn one() -> Self {
        Fp::new(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2).
        let mut base = *self;
        let mut e = P - 2;
        let mut acc = Fp::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        Some(acc)
    }
    fn to_fraction(&self) -> (BigInt, BigInt) {
        (BigInt::from(self.0), BigInt::one())
    }
    fn parse(text: &str) -> Option<Self> {
        let r = Rational::parse(text)?;
        let p = BigInt::from(P);
        let num = r.numer().mod_floor(&p).to_i64()?;
        let den = Fp::<P>::new(r.denom().mod_floor(&p).to_i64()?);
        Some(Fp::new(num) * den.inv()?)
    }
    fn field_name() -> String {
        format!("F{P}")
    }

    fn to_elim(row: &[Self]) -> Vec<FieldElim<Self>> {
        row.iter().map(|&x| FieldElim(x)).collect()
    }
    fn from_elim(v: &FieldElim<Self>) -> Self {
        v.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field_axioms<S: Scalar>(a: S, b: S, c: S) {
        assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        assert_eq!(a.clone() + S::zero(), a.clone());
        assert_eq!(a.clone() * S::one(), a.clone());
        assert!((a.clone() - a.clone()).is_zero());
        assert!((a.clone() + (-a.clone())).is_zero());
        match a.inv() {
            Some(ai) => assert_eq!(a * ai, S::one()),
            None => assert!(a.is_zero()),
        }
    }

    proptest! {
        #[test]
        fn rational_axioms(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20, e in -9i64..9) {
            field_axioms(Rational::new(a, b), Rational::new(c, d), Rational::from_i64(e));
        }

        #[test]
        fn prime_field_axioms(a in any::<i32>(), b in any::<i32>(), c in any::<i32>()) {
            let (a, b, c) = (a as i64, b as i64, c as i64);
            field_axioms(Fp::<2>::new(a), Fp::<2>::new(b), Fp::<2>::new(c));
            field_axioms(Fp::<3>::new(a), Fp::<3>::new(b), Fp::<3>::new(c));
            field_axioms(Fp::<101>::new(a), Fp::<101>::new(b), Fp::<101>::new(c));
        }
    }

    #[test]
    fn rationals_are_reduced_and_parse() {
        let r = Rational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.to_fraction(), (BigInt::from(-3), BigInt::from(2)));
        assert_eq!(Rational::parse(" 10/4 ").unwrap(), Rational::new(5, 2));
        assert_eq!(Rational::parse("-7").unwrap(), Rational::from_i64(-7));
        assert!(Rational::parse("1/0").is_none());
        assert_eq!(Fp::<101>::parse("1/2").unwrap() * Fp::<101>::new(2), Fp::<101>::one());
        assert_eq!(Fp::<3>::new(-1).value(), 2);
    }

    #[test]
    fn fraction_free_scaling() {
        let row = [Rational::new(1, 2), Rational::new(-2, 3), Rational::zero()];
        assert_eq!(Rational::to_elim(&row), vec![BigInt::from(3), BigInt::from(-4), BigInt::from(0)]);
    }
}
