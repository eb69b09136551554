//! Exact coefficient arithmetic: arbitrary-precision rationals, Laurent
//! rational functions in the deformation parameter, multivariate fraction
//! fields over them, and quadratic ring extensions.

pub mod laurent;
pub mod multi;
pub mod parse;
pub mod quad;

pub use laurent::{LaurentPoly, QRat};
pub use multi::{MFrac, MPoly, Var};
pub use quad::QuadExt;

pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational; reduced, positive denominator.
pub type Rat = num_rational::BigRational;

/// Commutative ring with decidable zero test.
///
/// Values are immutable; every operation returns a fresh value.
pub trait Ring: Clone + PartialEq + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// True when `to_string` renders something safe to splice into a printed
    /// product without parentheses (a single term, at most a leading minus).
    fn is_product_atom(&self) -> bool {
        false
    }

    fn pow_u(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_int(n: i64) -> Self {
        Rat::from_integer(Int::from(n))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_product_atom(&self) -> bool {
        true
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Rational from an integer pair, `d != 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}
