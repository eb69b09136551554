//! Multivariate polynomials and fraction fields in the spectral variables.
//!
//! The deformation parameter q is not a variable here: it lives inside the
//! coefficient ring (usually [`QRat`](super::QRat)), which keeps univariate
//! reduction available while the spectral variables stay gcd-free. Fraction
//! equality is decided by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;

use super::{Field, Ring};

/// Spectral variables, in declared print order.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    V,
    W,
    Vp,
    Wp,
    Vpp,
    Wpp,
    Mu,
    P,
    K,
    T,
}

pub const NVARS: usize = 12;

pub const ALL_VARS: [Var; NVARS] = [
    Var::X,
    Var::Y,
    Var::V,
    Var::W,
    Var::Vp,
    Var::Wp,
    Var::Vpp,
    Var::Wpp,
    Var::Mu,
    Var::P,
    Var::K,
    Var::T,
];

impl Var {
    pub fn index(self) -> usize {
        ALL_VARS.iter().position(|v| *v == self).unwrap()
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::V => "v",
            Var::W => "w",
            Var::Vp => "v'",
            Var::Wp => "w'",
            Var::Vpp => "v''",
            Var::Wpp => "w''",
            Var::Mu => "mu",
            Var::P => "p",
            Var::K => "K",
            Var::T => "t",
        }
    }
}

type Exp = [u16; NVARS];

const ZERO_EXP: Exp = [0; NVARS];

/// Sparse multivariate polynomial over a coefficient ring.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<R: Ring> {
    terms: BTreeMap<Exp, R>,
}

impl<R: Ring> MPoly<R> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ZERO_EXP, c);
        }
        MPoly { terms }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn var(v: Var) -> Self {
        let mut e = ZERO_EXP;
        e[v.index()] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, R::one());
        MPoly { terms }
    }

    pub fn monomial(c: R, vars: &[(Var, u16)]) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut e = ZERO_EXP;
        for (v, k) in vars {
            e[v.index()] += k;
        }
        let mut terms = BTreeMap::new();
        terms.insert(e, c);
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&ZERO_EXP))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &R)> {
        self.terms.iter()
    }

    /// Leading coefficient in term order (lowest exponent tuple first).
    pub fn lead_coeff(&self) -> Option<&R> {
        self.terms.values().next()
    }

    pub fn constant_part(&self) -> R {
        self.terms.get(&ZERO_EXP).cloned().unwrap_or_else(R::zero)
    }

    fn insert_add(&mut self, e: Exp, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(prev) => {
                let sum = prev.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *prev = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (k, x) in e.iter_mut().zip(eb.iter()) {
                    *k += x;
                }
                out.insert_add(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.insert_add(*e, a.mul(c));
        }
        out
    }

    pub fn degree(&self, v: Var) -> u16 {
        let i = v.index();
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<Var> {
        ALL_VARS.iter().copied().filter(|v| self.degree(*v) > 0).collect()
    }

    /// Substitute `val` for `v` (ring value), leaving other variables intact.
    pub fn eval_var(&self, v: Var, val: &R) -> Self {
        let i = v.index();
        let mut powers: Vec<R> = vec![R::one()];
        let dmax = self.degree(v);
        for _ in 0..dmax {
            powers.push(powers.last().unwrap().mul(val));
        }
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = e2[i];
            e2[i] = 0;
            out.insert_add(e2, c.mul(&powers[k as usize]));
        }
        out
    }

    /// Substitute a monomial in other variables for `v`
    /// (e.g. x -> x*y for multiplicative arguments).
    pub fn subst_monomial(&self, v: Var, target: &[(Var, u16)]) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = e2[i];
            e2[i] = 0;
            for (tv, tk) in target {
                e2[tv.index()] += k * tk;
            }
            out.insert_add(e2, c.clone());
        }
        out
    }

    /// Rename a variable (target must not occur).
    pub fn rename(&self, from: Var, to: Var) -> Self {
        debug_assert_eq!(self.degree(to), 0);
        self.subst_monomial(from, &[(to, 1)])
    }

    /// Substitute a fraction for `v` by Horner's rule; returns (num, den_pow)
    /// as the cleared pair `self(v -> n/d) * d^deg`.
    pub fn subst_frac_cleared(&self, v: Var, n: &Self, d: &Self) -> (Self, u16) {
        let deg = self.degree(v);
        if deg == 0 {
            return (self.clone(), 0);
        }
        // Collect coefficients of v^k and assemble sum c_k n^k d^(deg-k).
        let i = v.index();
        let mut by_pow: Vec<Self> = vec![Self::zero(); deg as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = e2[i];
            e2[i] = 0;
            by_pow[k as usize].insert_add(e2, c.clone());
        }
        let mut npow = Self::one();
        let mut parts: Vec<Self> = Vec::with_capacity(deg as usize + 1);
        for c in by_pow.iter() {
            parts.push(c.mul(&npow));
            npow = npow.mul(n);
        }
        let mut dpow = Self::one();
        let mut acc = Self::zero();
        for part in parts.into_iter().rev() {
            acc = acc.add(&part.mul(&dpow));
            dpow = dpow.mul(d);
        }
        (acc, deg)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MPoly<S> {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            out.insert_add(*e, f(c));
        }
        out
    }
}

impl<R: Ring> fmt::Display for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let has_vars = e.iter().any(|k| *k > 0);
            let (sign, coeff) = if c.is_product_atom() {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) => ('-', rest.to_string()),
                    None => ('+', s),
                }
            } else {
                ('+', format!("({})", c))
            };
            if first {
                if sign == '-' {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", sign)?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if coeff != "1" || !has_vars {
                factors.push(coeff);
            }
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                let name = ALL_VARS[i].name();
                if *k == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{}^{}", name, k));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<R: Ring> Ring for MPoly<R> {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn from_int(n: i64) -> Self {
        MPoly::constant(R::from_int(n))
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        MPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
}

/// Fraction of multivariate polynomials; equality by cross-multiplication.
///
/// Light normalization only: the denominator's leading coefficient is made 1
/// and common monomial factors are cancelled. No multivariate gcd.
#[derive(Clone, Debug)]
pub struct MFrac<R: Field> {
    num: MPoly<R>,
    den: MPoly<R>,
}

impl<R: Field> MFrac<R> {
    pub fn new(num: MPoly<R>, den: MPoly<R>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        // Cancel a common monomial factor.
        let mut min_e = [u16::MAX; NVARS];
        for (e, _) in num.terms().chain(den.terms()) {
            for (m, k) in min_e.iter_mut().zip(e.iter()) {
                *m = (*m).min(*k);
            }
        }
        let strip = |p: &MPoly<R>| -> MPoly<R> {
            let mut out = MPoly::zero();
            for (e, c) in p.terms() {
                let mut e2 = *e;
                for (x, m) in e2.iter_mut().zip(min_e.iter()) {
                    *x -= m;
                }
                out.insert_add(e2, c.clone());
            }
            out
        };
        let (num, den) = if min_e.iter().any(|m| *m > 0) {
            (strip(&num), strip(&den))
        } else {
            (num, den)
        };
        // Scale so the denominator's first term has coefficient one.
        let lead = den.lead_coeff().unwrap().clone();
        if lead.is_one() {
            MFrac { num, den }
        } else {
            let li = lead.inv().expect("nonzero leading coefficient");
            MFrac { num: num.scale(&li), den: den.scale(&li) }
        }
    }

    pub fn from_poly(p: MPoly<R>) -> Self {
        MFrac { num: p, den: MPoly::one() }
    }

    pub fn constant(c: R) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn zero() -> Self {
        MFrac { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        MFrac { num: MPoly::one(), den: MPoly::one() }
    }

    pub fn num(&self) -> &MPoly<R> {
        &self.num
    }

    pub fn den(&self) -> &MPoly<R> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
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
        MFrac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
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

    /// Substitute a fraction for a variable.
    pub fn subst(&self, v: Var, val: &Self) -> Self {
        let (n, dn) = self.num.subst_frac_cleared(v, &val.num, &val.den);
        let (d, dd) = self.den.subst_frac_cleared(v, &val.num, &val.den);
        // Equalize the cleared powers of val.den.
        let (mut n, mut d) = (n, d);
        if dn < dd {
            for _ in dn..dd {
                n = n.mul(&val.den);
            }
        } else {
            for _ in dd..dn {
                d = d.mul(&val.den);
            }
        }
        Self::new(n, d)
    }

    /// Substitute a ring value for a variable.
    pub fn eval_var(&self, v: Var, val: &R) -> Self {
        Self::new(self.num.eval_var(v, val), self.den.eval_var(v, val))
    }

    /// Collapse to a coefficient once no variables remain.
    pub fn to_coeff(&self) -> Option<R> {
        if self.num.is_constant() && self.den.is_constant() {
            let d = self.den.constant_part();
            Some(self.num.constant_part().mul(&d.inv()?))
        } else {
            None
        }
    }
}

impl<R: Field> PartialEq for MFrac<R> {
    fn eq(&self, other: &Self) -> bool {
        // a/b = c/d iff ad = cb; avoids any multivariate gcd.
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl<R: Field> fmt::Display for MFrac<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<R: Field> Ring for MFrac<R> {
    fn zero() -> Self {
        MFrac::zero()
    }
    fn one() -> Self {
        MFrac::one()
    }
    fn from_int(n: i64) -> Self {
        MFrac::constant(R::from_int(n))
    }
    fn is_zero(&self) -> bool {
        MFrac::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        MFrac::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MFrac::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MFrac::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        MFrac::neg(self)
    }
}

impl<R: Field> Field for MFrac<R> {
    fn inv(&self) -> Option<Self> {
        MFrac::inv(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QRat;

    type F = MFrac<QRat>;
    type P = MPoly<QRat>;

    #[test]
    fn cross_multiplication_equality() {
        // (x^2 - 1)/(x - 1) == x + 1 without any gcd
        let x = P::var(Var::X);
        let num = x.mul(&x).sub(&P::one());
        let den = x.sub(&P::one());
        let a = F::new(num, den);
        let b = F::from_poly(x.add(&P::one()));
        assert_eq!(a, b);
        assert!(!a.sub(&b).num().is_zero() || a == b);
    }

    #[test]
    fn substitution() {
        // v -> x/y in v^2 + v
        let v = F::var(Var::V);
        let expr = v.mul(&v).add(&v);
        let val = F::new(P::var(Var::X), P::var(Var::Y));
        let got = expr.subst(Var::V, &val);
        let x = F::var(Var::X);
        let y = F::var(Var::Y);
        let want = x.mul(&x).div(&y.mul(&y)).unwrap().add(&x.div(&y).unwrap());
        assert_eq!(got, want);
    }

    #[test]
    fn monomial_substitution() {
        let p = P::var(Var::X).mul(&P::var(Var::X)); // x^2
        let q = p.subst_monomial(Var::X, &[(Var::X, 1), (Var::Y, 1)]);
        assert_eq!(q, P::monomial(QRat::one(), &[(Var::X, 2), (Var::Y, 2)]));
    }

    #[test]
    fn display_terms() {
        let p = P::var(Var::V)
            .scale(&QRat::q_pow(-1).neg())
            .add(&P::monomial(QRat::one(), &[(Var::W, 2)]));
        assert_eq!(p.to_string(), "w^2-q^-1*v");
    }
}
