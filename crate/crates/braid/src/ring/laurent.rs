//! Laurent polynomials and reduced rational functions in the deformation
//! parameter.
//!
//! Exponents are stored in half-integer steps: the internal unit is q^(1/2),
//! so `q` itself sits at exponent 2. Orthogonal groups of odd rank need the
//! half powers; for everything else only even exponents ever appear and the
//! printed form stays in plain powers of `q`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

use super::{Field, Int, Rat, Ring};
use crate::error::{Error, Result};

/// Dense Laurent polynomial over the rationals.
///
/// `coeffs[k]` multiplies the half-power `shift + k`; first and last
/// coefficients are nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    shift: i64,
    coeffs: Vec<Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { shift: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { shift: 0, coeffs: vec![c] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rat::from_integer(Int::from(n)))
    }

    /// Monomial `q^(k/2)` (exponent in half-units).
    pub fn half_pow(k: i64) -> Self {
        LaurentPoly { shift: k, coeffs: vec![Rat::one()] }
    }

    /// Monomial `q^n`.
    pub fn q_pow(n: i64) -> Self {
        Self::half_pow(2 * n)
    }

    /// Build from (half-exponent, coefficient) pairs; repeated exponents add.
    pub fn from_terms(terms: &[(i64, Rat)]) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&LaurentPoly { shift: *e, coeffs: vec![c.clone()] });
        }
        acc
    }

    /// The q-number [x] = (q^x - q^-x)/(q - q^-1), an exact Laurent polynomial.
    pub fn q_number(x: i64) -> Self {
        match x.cmp(&0) {
            Ordering::Equal => Self::zero(),
            Ordering::Less => Self::q_number(-x).neg(),
            Ordering::Greater => {
                // q^(x-1) + q^(x-3) + ... + q^(1-x)
                let terms: Vec<(i64, Rat)> =
                    (0..x).map(|j| (2 * (x - 1 - 2 * j), Rat::one())).collect();
                Self::from_terms(&terms)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest half-exponent (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.shift
    }

    /// Highest half-exponent (0 for the zero polynomial).
    pub fn high(&self) -> i64 {
        if self.coeffs.is_empty() {
            0
        } else {
            self.shift + self.coeffs.len() as i64 - 1
        }
    }

    fn trim(mut shift: i64, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            shift += lead_zeros as i64;
        }
        if coeffs.is_empty() {
            shift = 0;
        }
        LaurentPoly { shift, coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let shift = self.shift.min(rhs.shift);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![Rat::zero(); (high - shift + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.shift - shift) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.shift - shift) as usize + k] += c;
        }
        Self::trim(shift, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { shift: self.shift, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::trim(self.shift + rhs.shift, coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { shift: self.shift, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { shift: self.shift + k, coeffs: self.coeffs.clone() }
    }

    /// Evaluate at a nonzero rational value of q^(1/2).
    pub fn eval(&self, s0: &Rat) -> Result<Rat> {
        if s0.is_zero() {
            return Err(Error::Pole("q^(1/2) = 0".into()));
        }
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s0 + c;
        }
        let e = self.shift;
        let p = if e >= 0 {
            num_traits::pow::pow(s0.clone(), e as usize)
        } else {
            num_traits::pow::pow(s0.recip(), (-e) as usize)
        };
        Ok(acc * p)
    }

    /// Evaluate in an arbitrary field through the image of q^(1/2).
    pub fn eval_in<F: Field>(&self, s_img: &F) -> Result<F> {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(s_img).add(&rat_in(c));
        }
        if self.shift >= 0 {
            Ok(acc.mul(&s_img.pow_u(self.shift as u32)))
        } else {
            let inv = s_img
                .inv()
                .ok_or_else(|| Error::Pole("q^(1/2) image is not invertible".into()))?;
            Ok(acc.mul(&inv.pow_u((-self.shift) as u32)))
        }
    }

    /// Coefficients of the ordinary part, lowest first.
    fn ordinary(&self) -> &[Rat] {
        &self.coeffs
    }
}

/// Constant of a field from a rational.
pub fn rat_in<F: Field>(c: &Rat) -> F {
    let n = int_in::<F>(c.numer());
    let d = int_in::<F>(c.denom());
    n.mul(&d.inv().expect("nonzero denominator"))
}

fn int_in<F: Field>(n: &Int) -> F {
    // Fits in i64 for every coefficient produced here; fall back to digit
    // assembly for larger values.
    if let Some(v) = to_i64(n) {
        F::from_int(v)
    } else {
        let digits = n.abs().to_string();
        let mut acc = F::zero();
        let ten = F::from_int(10);
        for ch in digits.chars() {
            acc = acc.mul(&ten).add(&F::from_int(ch.to_digit(10).unwrap() as i64));
        }
        if n.is_negative() {
            acc.neg()
        } else {
            acc
        }
    }
}

fn to_i64(n: &Int) -> Option<i64> {
    let s = n.to_string();
    s.parse::<i64>().ok()
}

// --- polynomial gcd over the integers (primitive remainder sequence) ---

fn int_is_zero(n: &Int) -> bool {
    n.sign() == num_bigint::Sign::NoSign
}

fn int_content(v: &[Int]) -> Int {
    let mut g = Int::from(0);
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn trim_int(mut v: Vec<Int>) -> Vec<Int> {
    while v.last().is_some_and(|c| int_is_zero(c)) {
        v.pop();
    }
    v
}

/// Clear denominators and divide out content; positive leading coefficient.
fn to_int_primitive(coeffs: &[Rat]) -> Vec<Int> {
    if coeffs.is_empty() {
        return Vec::new();
    }
    let mut lcm = Int::from(1);
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let mut v: Vec<Int> =
        coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let content = int_content(&v);
    if !int_is_zero(&content) {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    if v.last().is_some_and(Signed::is_negative) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Pseudo-remainder of `a` by `b` (nonempty), both lowest-first.
fn pseudo_rem(a: &[Int], b: &[Int]) -> Vec<Int> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<Int> = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lead = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for j in 0..=db {
            let t = &lead * &b[j];
            r[dr - db + j] = &r[dr - db + j] - t;
        }
        r = trim_int(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn primitive(mut v: Vec<Int>) -> Vec<Int> {
    v = trim_int(v);
    if v.is_empty() {
        return v;
    }
    let content = int_content(&v);
    for c in v.iter_mut() {
        *c = &*c / &content;
    }
    if v.last().is_some_and(Signed::is_negative) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Primitive gcd of two rational coefficient vectors (ordinary parts).
fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Int> {
    let mut x = to_int_primitive(a);
    let mut y = to_int_primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive(pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

/// Exact division of rational coefficient vectors; panics on nonzero remainder.
fn poly_div_exact(a: &[Rat], b: &[Int]) -> Vec<Rat> {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let lb = Rat::from_integer(b[db].clone());
    let mut r: Vec<Rat> = a.to_vec();
    let mut q = vec![Rat::zero(); a.len().saturating_sub(db)];
    while r.iter().any(|c| !c.is_zero()) {
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
        let dr = r.len() - 1;
        assert!(dr >= db, "inexact polynomial division");
        let f = r[dr].clone() / &lb;
        q[dr - db] = f.clone();
        for j in 0..=db {
            let t = &f * Rat::from_integer(b[j].clone());
            r[dr - db + j] = &r[dr - db + j] - t;
        }
    }
    q
}

/// Reduced rational function of q (Laurent numerator over an ordinary
/// denominator with nonzero constant term, integer-primitive, positive
/// leading coefficient).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QRat {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QRat {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let total_shift = num.low() - den.low();
        let mut a: Vec<Rat> = num.ordinary().to_vec();
        let mut b: Vec<Rat> = den.ordinary().to_vec();

        let g = poly_gcd(&a, &b);
        if g.len() > 1 {
            a = poly_div_exact(&a, &g);
            b = poly_div_exact(&b, &g);
        }
        // Rescale so the denominator is integer-primitive with positive lead.
        let bi = to_int_primitive(&b);
        let lead_ratio = &b[b.len() - 1] / Rat::from_integer(bi[bi.len() - 1].clone());
        let a: Vec<Rat> = a.iter().map(|c| c / &lead_ratio).collect();
        let b: Vec<Rat> = bi.into_iter().map(Rat::from_integer).collect();
        QRat {
            num: LaurentPoly::trim(total_shift, a),
            den: LaurentPoly::trim(0, b),
        }
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        QRat { num, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        QRat { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        QRat { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(n))
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(n))
    }

    /// `q^(k/2)`.
    pub fn half_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::half_pow(k))
    }

    /// The q-number [x].
    pub fn q_number(x: i64) -> Self {
        Self::from_poly(LaurentPoly::q_number(x))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        QRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRat { num: self.num.mul(&rhs.num), den: LaurentPoly::one() };
        }
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e >= 0 {
            Ring::pow_u(self, e as u32)
        } else {
            self.inv().expect("inverse of zero").pow_u((-e) as u32)
        }
    }

    /// Evaluate at a rational value of q^(1/2).
    pub fn eval(&self, s0: &Rat) -> Result<Rat> {
        let d = self.den.eval(s0)?;
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator {} at q^(1/2) = {}", self.den, s0)));
        }
        Ok(self.num.eval(s0)? / d)
    }

    /// Evaluate in an arbitrary field through the image of q^(1/2).
    pub fn eval_in<F: Field>(&self, s_img: &F) -> Result<F> {
        let d = self.den.eval_in(s_img)?;
        let di = d
            .inv()
            .ok_or_else(|| Error::Pole(format!("denominator {} vanishes", self.den)))?;
        Ok(self.num.eval_in(s_img)?.mul(&di))
    }

    /// Exact value at q = 1.
    pub fn at_q_one(&self) -> Result<Rat> {
        self.eval(&Rat::one())
    }

    /// True when the value is a single Laurent term (monomial, denominator 1).
    pub fn is_monomial(&self) -> bool {
        self.den.is_one() && self.num.coeffs.len() == 1
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.mul(&QRat::from_int(k))
    }
}

impl Ring for QRat {
    fn zero() -> Self {
        QRat::zero()
    }
    fn one() -> Self {
        QRat::one()
    }
    fn from_int(n: i64) -> Self {
        QRat::from_int(n)
    }
    fn is_zero(&self) -> bool {
        QRat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        QRat::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        QRat::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        QRat::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        QRat::neg(self)
    }
    fn is_one(&self) -> bool {
        QRat::is_one(self)
    }
    fn is_product_atom(&self) -> bool {
        self.is_monomial()
    }
}

impl Field for QRat {
    fn inv(&self) -> Option<Self> {
        QRat::inv(self)
    }
}

// --- printing -------------------------------------------------------------

fn fmt_power(e: i64) -> String {
    debug_assert!(e != 0);
    if e % 2 == 0 {
        let n = e / 2;
        if n == 1 {
            "q".into()
        } else {
            format!("q^{}", n)
        }
    } else {
        format!("q^({}/2)", e)
    }
}

fn fmt_term(c: &Rat, e: i64, first: bool) -> String {
    let mut s = String::new();
    let neg = c.is_negative();
    let abs = if neg { -c } else { c.clone() };
    if neg {
        s.push('-');
    } else if !first {
        s.push('+');
    }
    if e == 0 {
        s.push_str(&abs.to_string());
    } else if abs.is_one() {
        s.push_str(&fmt_power(e));
    } else {
        s.push_str(&abs.to_string());
        s.push('*');
        s.push_str(&fmt_power(e));
    }
    s
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.push_str(&fmt_term(c, self.shift + k as i64, first));
            first = false;
        }
        write!(f, "{}", out)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use proptest::prelude::*;

    fn q() -> QRat {
        QRat::q_pow(1)
    }

    #[test]
    fn q_number_small_values() {
        // [1] = 1, [0] = 0 are forced; [2] expands to q + q^-1 by hand.
        assert!(LaurentPoly::q_number(1).is_one());
        assert!(LaurentPoly::q_number(0).is_zero());
        let two = QRat::q_number(2);
        let expect = q().add(&QRat::q_pow(-1));
        assert_eq!(two, expect);
        assert_eq!(QRat::q_number(-3), QRat::q_number(3).neg());
    }

    #[test]
    fn q_number_matches_defining_ratio() {
        for x in -6i64..=6 {
            let lhs = QRat::q_number(x);
            let num = QRat::q_pow(x).sub(&QRat::q_pow(-x));
            let den = QRat::q_pow(1).sub(&QRat::q_pow(-1));
            assert_eq!(lhs, num.div(&den).unwrap(), "[{}]", x);
        }
    }

    #[test]
    fn reduction_to_canonical_form() {
        // (q^2 - 1)/(q - 1) = q + 1
        let num = LaurentPoly::q_pow(2).sub(&LaurentPoly::one());
        let den = LaurentPoly::q_pow(1).sub(&LaurentPoly::one());
        let v = QRat::new(num, den);
        assert_eq!(v, QRat::q_pow(1).add(&QRat::one()));
        // shifts move to the numerator: 1/q^2 stays reduced
        let w = QRat::new(LaurentPoly::one(), LaurentPoly::q_pow(2));
        assert_eq!(w, QRat::q_pow(-2));
        assert!(w.denominator().is_one());
    }

    #[test]
    fn canonical_idempotent() {
        let a = QRat::new(
            LaurentPoly::from_terms(&[(2, rat(2, 3)), (-4, rat(-1, 1))]),
            LaurentPoly::from_terms(&[(0, rat(6, 1)), (2, rat(3, 1))]),
        );
        let b = QRat::new(a.num.clone(), a.den.clone());
        assert_eq!(a, b);
    }

    #[test]
    fn display_grammar() {
        let e = QRat::new(
            LaurentPoly::q_pow(2).sub(&LaurentPoly::one()),
            LaurentPoly::q_pow(2).add(&LaurentPoly::one()),
        );
        assert_eq!(e.to_string(), "(-1+q^2)/(1+q^2)");
        assert_eq!(QRat::half_pow(1).to_string(), "q^(1/2)");
        assert_eq!(QRat::half_pow(-3).to_string(), "q^(-3/2)");
        assert_eq!(QRat::q_pow(-2).to_string(), "q^-2");
        assert_eq!(QRat::from_rat(rat(-3, 2)).to_string(), "-3/2");
    }

    #[test]
    fn eval_at_point() {
        // [2] at q = 4 (s = 2) is 4 + 1/4
        let v = QRat::q_number(2);
        assert_eq!(v.eval(&rat(2, 1)).unwrap(), rat(17, 4));
        assert_eq!(v.at_q_one().unwrap(), rat(2, 1));
    }

    fn arb_qrat() -> impl Strategy<Value = QRat> {
        // Laurent-rational elements of degree <= 6 with small coefficients.
        let term = (-6i64..=6, -4i64..=4).prop_map(|(e, c)| (e, rat(c, 1)));
        let poly = proptest::collection::vec(term, 1..5)
            .prop_map(|ts| LaurentPoly::from_terms(&ts));
        (poly.clone(), poly).prop_filter_map("nonzero denominator", |(n, d)| {
            if d.is_zero() {
                None
            } else {
                Some(QRat::new(n, d))
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_qrat(), b in arb_qrat(), c in arb_qrat()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn eval_is_homomorphism(a in arb_qrat(), b in arb_qrat()) {
            let s0 = rat(3, 2);
            let ok = |x: &QRat| x.eval(&s0).is_ok();
            if ok(&a) && ok(&b) {
                let ea = a.eval(&s0).unwrap();
                let eb = b.eval(&s0).unwrap();
                prop_assert_eq!(a.add(&b).eval(&s0).unwrap(), &ea + &eb);
                prop_assert_eq!(a.mul(&b).eval(&s0).unwrap(), &ea * &eb);
            }
        }
    }
}
