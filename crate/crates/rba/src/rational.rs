//! Exact rational scalars: the coefficient field for everything in this crate.
//!
//! Values are kept inline as reduced `i64/i64` pairs and promoted to
//! arbitrary precision on overflow, then demoted back when they fit, so the
//! representation is canonical and equality is structural. The identities we
//! verify produce denominators like `i1*(i1+i2)*...*(i1+...+ik)`, so
//! arbitrary precision is not optional; the inline fast path only matters
//! because polynomial supports reach millions of terms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Rational {
    /// Reduced, denominator positive.
    Small(i64, i64),
    /// Does not fit the inline form.
    Big(Box<BigRational>),
}

fn gcd_i64(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn small(mut n: i64, mut d: i64) -> Rational {
    debug_assert!(d != 0);
    if d < 0 {
        n = -n;
        d = -d;
    }
    if n == 0 {
        return Rational::Small(0, 1);
    }
    let g = gcd_i64(n, d);
    Rational::Small(n / g, d / g)
}

fn demote(b: BigRational) -> Rational {
    if let (Some(n), Some(d)) = (b.numer().to_i64(), b.denom().to_i64()) {
        Rational::Small(n, d)
    } else {
        Rational::Big(Box::new(b))
    }
}

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Rational {
        assert!(!denom.is_zero(), "zero denominator");
        demote(BigRational::new(numer, denom))
    }

    pub fn from_integer(n: BigInt) -> Rational {
        demote(BigRational::from_integer(n))
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn recip(&self) -> Rational {
        match self {
            Rational::Small(n, d) => {
                assert!(*n != 0, "reciprocal of zero");
                small(*d, *n)
            }
            Rational::Big(b) => demote(b.recip()),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::Small(n, 1)
}

pub fn ratio(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    small(p, q)
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse()
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        // canonical representation: equal values share the variant
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(a), Rational::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, rhs) {
            // a/b + c/d with the usual cross-gcd reduction
            let g = gcd_i64(*b, *d);
            let bg = b / g;
            let dg = d / g;
            if let (Some(l), Some(r)) = (a.checked_mul(dg), c.checked_mul(bg)) {
                if let (Some(n), Some(den)) = (l.checked_add(r), bg.checked_mul(*d)) {
                    return small(n, den);
                }
            }
        }
        demote(self.to_big() + rhs.to_big())
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, rhs) {
            let g = gcd_i64(*b, *d);
            let bg = b / g;
            let dg = d / g;
            if let (Some(l), Some(r)) = (a.checked_mul(dg), c.checked_mul(bg)) {
                if let (Some(n), Some(den)) = (l.checked_sub(r), bg.checked_mul(*d)) {
                    return small(n, den);
                }
            }
        }
        demote(self.to_big() - rhs.to_big())
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, rhs) {
            let g1 = gcd_i64(*a, *d);
            let g2 = gcd_i64(*c, *b);
            if let (Some(n), Some(den)) =
                ((a / g1).checked_mul(c / g2), (b / g2).checked_mul(d / g1))
            {
                return Rational::Small(if den < 0 { -n } else { n }, den.abs());
            }
        }
        demote(self.to_big() * rhs.to_big())
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self * &rhs.recip()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => {
                if let Some(neg) = n.checked_neg() {
                    Rational::Small(neg, *d)
                } else {
                    demote(-self.to_big())
                }
            }
            Rational::Big(b) => demote(-(**b).clone()),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = &*self + &rhs;
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<Rational> for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self = &*self - &rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<Rational> for Rational {
    fn mul_assign(&mut self, rhs: Rational) {
        *self = &*self * &rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::Small(1, 1)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::Small(0, 1)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        rat(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty rational".into());
        }
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n: BigInt = numer
            .parse()
            .map_err(|e| format!("invalid rational '{s}': {e}"))?;
        let d: BigInt = match denom {
            Some(d) => d
                .parse()
                .map_err(|e| format!("invalid rational '{s}': {e}"))?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(format!("invalid rational '{s}': zero denominator"));
        }
        Ok(Rational::new(n, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(parse_rational("2/-4").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), rat(1));
        assert_eq!(factorial(5), rat(120));
    }

    #[test]
    fn arithmetic_matches_bigint_reference() {
        let cases = [(1i64, 2i64), (-3, 4), (7, 1), (0, 1), (-5, 3), (11, 6)];
        for &(a, b) in &cases {
            for &(c, d) in &cases {
                let x = ratio(a, b);
                let y = ratio(c, d);
                let bx = BigRational::new(BigInt::from(a), BigInt::from(b));
                let by = BigRational::new(BigInt::from(c), BigInt::from(d));
                assert_eq!((&x + &y).to_big(), &bx + &by);
                assert_eq!((&x - &y).to_big(), &bx - &by);
                assert_eq!((&x * &y).to_big(), &bx * &by);
                assert_eq!(x.cmp(&y), bx.cmp(&by));
            }
        }
    }

    #[test]
    fn overflow_promotes_and_stays_exact() {
        let big = rat(i64::MAX / 2);
        let sum = (&big + &big) + &rat(1);
        let back = &sum - &big;
        assert_eq!(&back - &big, rat(1));
        // products overflowing i64
        let p = &big * &big;
        assert_eq!(&p / &big, big);
        assert!(matches!(p, Rational::Big(_)));
        // demotion keeps equality structural
        let demoted = &p - &(&big * &big);
        assert_eq!(demoted, rat(0));
    }

    #[test]
    fn display_and_sign() {
        assert_eq!(ratio(-6, 4).to_string(), "-3/2");
        assert_eq!(rat(7).to_string(), "7");
        assert!(ratio(-1, 2).is_negative());
        assert_eq!(ratio(1, 2).recip(), rat(2));
        assert_eq!(ratio(3, 2).abs(), ratio(3, 2));
        assert_eq!(ratio(-3, 2).abs(), ratio(3, 2));
    }
}
