//! Quadratic ring extension R[sigma]/(sigma^2 - m).
//!
//! Square roots are never floated: elements are pairs a + b*sigma reduced
//! under sigma^2 -> m. Constants built through the `Ring` interface carry no
//! modulus; the modulus unifies on the first mixed operation.

use std::fmt;

use super::{Field, Ring};

#[derive(Clone, Debug)]
pub struct QuadExt<R: Ring> {
    a: R,
    b: R,
    /// None for pure constants (b = 0) created without a modulus in scope.
    m: Option<R>,
}

impl<R: Ring> QuadExt<R> {
    pub fn new(a: R, b: R, m: R) -> Self {
        QuadExt { a, b, m: Some(m) }
    }

    pub fn scalar(a: R) -> Self {
        QuadExt { a, b: R::zero(), m: None }
    }

    /// sigma itself, with sigma^2 = m.
    pub fn root(m: R) -> Self {
        QuadExt { a: R::zero(), b: R::one(), m: Some(m) }
    }

    pub fn re(&self) -> &R {
        &self.a
    }

    pub fn rad(&self) -> &R {
        &self.b
    }

    pub fn modulus(&self) -> Option<&R> {
        self.m.as_ref()
    }

    fn unified(&self, rhs: &Self) -> Option<R> {
        match (&self.m, &rhs.m) {
            (Some(a), Some(b)) => {
                debug_assert!(a == b, "mixing quadratic extensions with different moduli");
                Some(a.clone())
            }
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        }
    }

    /// Conjugation sigma -> -sigma (a ring automorphism).
    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: self.b.neg(), m: self.m.clone() }
    }

    /// Multiplicative norm a^2 - b^2 m.
    pub fn norm(&self) -> R {
        match &self.m {
            Some(m) => self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(m)),
            None => self.a.mul(&self.a),
        }
    }
}

impl<R: Ring> PartialEq for QuadExt<R> {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl<R: Ring> fmt::Display for QuadExt<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*sigma", self.b)
        } else {
            write!(f, "({})+({})*sigma", self.a, self.b)
        }
    }
}

impl<R: Ring> Ring for QuadExt<R> {
    fn zero() -> Self {
        Self::scalar(R::zero())
    }
    fn one() -> Self {
        Self::scalar(R::one())
    }
    fn from_int(n: i64) -> Self {
        Self::scalar(R::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        QuadExt { a: self.a.add(&rhs.a), b: self.b.add(&rhs.b), m: self.unified(rhs) }
    }
    fn sub(&self, rhs: &Self) -> Self {
        QuadExt { a: self.a.sub(&rhs.a), b: self.b.sub(&rhs.b), m: self.unified(rhs) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let m = self.unified(rhs);
        let cross = self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a));
        let mut re = self.a.mul(&rhs.a);
        if let Some(m) = &m {
            re = re.add(&self.b.mul(&rhs.b).mul(m));
        } else {
            debug_assert!(self.b.is_zero() || rhs.b.is_zero());
        }
        QuadExt { a: re, b: cross, m }
    }
    fn neg(&self) -> Self {
        QuadExt { a: self.a.neg(), b: self.b.neg(), m: self.m.clone() }
    }
}

impl<R: Field> Field for QuadExt<R> {
    fn inv(&self) -> Option<Self> {
        // (a + b sigma)^-1 = (a - b sigma)/(a^2 - b^2 m)
        let n = self.norm().inv()?;
        let c = self.conj();
        Some(QuadExt { a: c.a.mul(&n), b: c.b.mul(&n), m: self.m.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, QRat, Rat};
    use proptest::prelude::*;

    #[test]
    fn root_squares_to_modulus() {
        let s = QuadExt::root(rat(5, 9));
        assert_eq!(s.mul(&s), QuadExt::scalar(rat(5, 9)));
    }

    #[test]
    fn inverse() {
        let x = QuadExt::new(rat(2, 1), rat(3, 1), rat(2, 1)); // 2 + 3*sqrt(2)
        let i = x.inv().unwrap();
        assert!(x.mul(&i).is_one());
    }

    #[test]
    fn quadratic_extension_over_qrat() {
        // sigma^2 = 1 - 4 d^2 with d = 1/(1+[2])
        let d = QRat::one().add(&QRat::q_number(2)).inv().unwrap();
        let m = QRat::one().sub(&QRat::from_int(4).mul(&d).mul(&d));
        let s = QuadExt::root(m.clone());
        assert_eq!(s.mul(&s), QuadExt::scalar(m));
    }

    fn arb_elem() -> impl Strategy<Value = QuadExt<Rat>> {
        (-5i64..=5, -5i64..=5)
            .prop_map(|(a, b)| QuadExt::new(rat(a, 1), rat(b, 1), rat(7, 1)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn conjugation_is_ring_automorphism(x in arb_elem(), y in arb_elem()) {
            prop_assert_eq!(x.add(&y).conj(), x.conj().add(&y.conj()));
            prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
        }

        #[test]
        fn norm_is_multiplicative(x in arb_elem(), y in arb_elem()) {
            prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        }
    }
}
