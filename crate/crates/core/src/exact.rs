//! Exact arithmetic: big rationals and quadratic radicals.
//!
//! Walk sums on a graph with integer degrees are rational, and the
//! symmetrized couplings between two vertices `u`, `v` are rational
//! multiples of `√(d_u d_v)`. [`RadicalScalar`] carries such values in
//! the canonical form `coeff · √radicand` with a square-free radicand,
//! which keeps equality decidable — the whole point of doing this layer
//! exactly instead of in floating point.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Rational = BigRational;

/// `n = s² · r` with `r` square-free; returns `(s, r)`. Requires `n ≥ 1`.
pub fn square_free_decompose(n: &BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero(), "square-free decomposition needs n >= 1");
    let mut n = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        let mut exp = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            exp += 1;
        }
        if exp > 0 {
            square *= p.pow(exp / 2);
            if exp % 2 == 1 {
                free *= &p;
            }
        }
        p += BigUint::one();
    }
    // whatever is left is prime
    if n > BigUint::one() {
        free *= &n;
    }
    (square, free)
}

/// Exact integer square root test.
pub fn perfect_square_root(n: &BigUint) -> Option<BigUint> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let num = perfect_square_root(q.numer().magnitude())?;
    let den = perfect_square_root(q.denom().magnitude())?;
    Some(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// True iff, in lowest terms, the numerator is odd and the denominator even.
pub fn odd_over_even(q: &Rational) -> bool {
    q.numer().magnitude().is_odd() && q.denom().magnitude().is_even()
}

/// A value of the form `coeff · √radicand`, kept canonical: the radicand is
/// a square-free positive integer, and equals 1 exactly when the value is
/// rational (in particular for zero).
#[derive(Clone, PartialEq, Eq)]
pub struct RadicalScalar {
    coeff: Rational,
    radicand: BigUint,
}

impl RadicalScalar {
    /// Builds `coeff · √radicand`, pulling square factors out of the radicand.
    pub fn new(coeff: Rational, radicand: BigUint) -> Self {
        assert!(!radicand.is_zero(), "radicand must be a positive integer");
        if coeff.is_zero() {
            return Self {
                coeff,
                radicand: BigUint::one(),
            };
        }
        let (square, free) = square_free_decompose(&radicand);
        Self {
            coeff: coeff * Rational::from_integer(BigInt::from(square)),
            radicand: free,
        }
    }

    pub fn zero() -> Self {
        Self {
            coeff: Rational::zero(),
            radicand: BigUint::one(),
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self {
            coeff: q,
            radicand: BigUint::one(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `√(p/q)` for a positive rational, as `(√(p·q))/q` in canonical form.
    pub fn sqrt_of_rational(q: &Rational) -> Self {
        assert!(q.is_positive(), "square root of a nonpositive rational");
        let num = q.numer().magnitude().clone();
        let den = q.denom().magnitude().clone();
        let inner = &num * &den;
        Self::new(
            Rational::new(BigInt::one(), BigInt::from(den)),
            inner,
        )
    }

    /// `1/√m` for a positive integer `m`.
    pub fn inv_sqrt(m: &BigUint) -> Self {
        assert!(!m.is_zero());
        Self::new(Rational::new(BigInt::one(), BigInt::from(m.clone())), m.clone())
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.coeff)
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    /// Addition is closed only for matching radicands (or zero operands).
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        (self.radicand == other.radicand).then(|| Self {
            coeff: &self.coeff + &other.coeff,
            radicand: self.radicand.clone(),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(&self.coeff * &other.coeff, &self.radicand * &other.radicand)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            coeff: &self.coeff * q,
            radicand: self.radicand.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeff: -self.coeff.clone(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            coeff: self.coeff.abs(),
            radicand: self.radicand.clone(),
        }
    }

    /// `(q√r)² = q²·r`, always rational.
    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * Rational::from_integer(BigInt::from(self.radicand.clone()))
    }

    /// Multiplicative inverse; `1/(q√r) = (1/(q·r))·√r`.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        let r = Rational::from_integer(BigInt::from(self.radicand.clone()));
        Self {
            coeff: (&self.coeff * r).recip(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        let r = self.radicand.to_f64().unwrap_or(f64::NAN);
        c * r.sqrt()
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else if self.coeff == -Rational::one() {
            write!(f, "-sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

impl fmt::Debug for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalScalar({self})")
    }
}

impl serde::Serialize for RadicalScalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Convenience: rational `p/q` from machine integers.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_free_decomposition() {
        let cases: [(u64, u64, u64); 6] =
            [(1, 1, 1), (2, 1, 2), (4, 2, 1), (8, 2, 2), (72, 6, 2), (36, 6, 1)];
        for (n, s, r) in cases {
            let (square, free) = square_free_decompose(&BigUint::from(n));
            assert_eq!((square, free), (BigUint::from(s), BigUint::from(r)), "n = {n}");
        }
    }

    #[test]
    fn radical_normalization() {
        // √8 = 2√2
        let v = RadicalScalar::new(Rational::one(), BigUint::from(8u32));
        assert_eq!(v.coeff(), &ratio(2, 1));
        assert_eq!(v.radicand(), &BigUint::from(2u32));
        // √9 = 3 is rational
        let w = RadicalScalar::new(Rational::one(), BigUint::from(9u32));
        assert!(w.is_rational());
        assert_eq!(w.as_rational(), Some(&ratio(3, 1)));
    }

    #[test]
    fn radical_arithmetic() {
        let a = RadicalScalar::new(ratio(1, 2), BigUint::from(2u32));
        let b = RadicalScalar::new(ratio(1, 3), BigUint::from(2u32));
        let sum = a.checked_add(&b).unwrap();
        assert_eq!(sum.coeff(), &ratio(5, 6));
        // (1/2·√2)·(1/3·√2) = 1/3
        let prod = a.mul(&b);
        assert_eq!(prod.as_rational(), Some(&ratio(1, 3)));
        // mismatched radicands do not add
        let c = RadicalScalar::new(Rational::one(), BigUint::from(3u32));
        assert!(a.checked_add(&c).is_none());
        // zero adds to anything
        assert_eq!(RadicalScalar::zero().checked_add(&a), Some(a.clone()));
        // reciprocal round-trip
        assert_eq!(a.mul(&a.recip()).as_rational(), Some(&Rational::one()));
    }

    #[test]
    fn sqrt_of_rational_form() {
        // √(1/2) = (1/2)√2
        let v = RadicalScalar::sqrt_of_rational(&ratio(1, 2));
        assert_eq!(v.coeff(), &ratio(1, 2));
        assert_eq!(v.radicand(), &BigUint::from(2u32));
        assert_eq!(v.square(), ratio(1, 2));
        // √(9/4) = 3/2 exactly
        let w = RadicalScalar::sqrt_of_rational(&ratio(9, 4));
        assert_eq!(w.as_rational(), Some(&ratio(3, 2)));
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&ratio(33, 1)), None);
        assert_eq!(rational_sqrt(&ratio(1, 4)), Some(ratio(1, 2)));
        assert_eq!(rational_sqrt(&ratio(-1, 1)), None);
    }

    #[test]
    fn odd_over_even_parity() {
        assert!(odd_over_even(&ratio(1, 2)));
        assert!(!odd_over_even(&ratio(1, 1)));
        assert!(odd_over_even(&ratio(3, 4)));
        assert!(!odd_over_even(&ratio(2, 3)));
        assert!(odd_over_even(&ratio(-1, 2)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(RadicalScalar::from_rational(ratio(3, 4)).to_string(), "3/4");
        assert_eq!(
            RadicalScalar::new(ratio(-1, 2), BigUint::from(3u32)).to_string(),
            "-1/2*sqrt(3)"
        );
        assert_eq!(RadicalScalar::inv_sqrt(&BigUint::from(2u32)).to_string(), "1/2*sqrt(2)");
    }
}
