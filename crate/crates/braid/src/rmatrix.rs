//! Braid matrices and spectral projectors for the vector representations of
//! the q-deformed general linear, orthogonal and symplectic groups.
//!
//! The canonical normalization keeps the top-left entry of the braid matrix
//! equal to one; the conventional matrix is q times that. The orthogonal and
//! symplectic matrices are the standard presentation; their correctness is
//! not assumed but gated by the verification suite (braid equation,
//! characteristic equation, trace formulas, entrywise rank-one projector,
//! triple-product identities).

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Leg, SparseMat};
use crate::ring::{Field, QRat, Ring};

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Family {
    Gl,
    So,
    Sp,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::Gl),
            "so" => Ok(Family::So),
            "sp" => Ok(Family::Sp),
            _ => Err(Error::InvalidSpec(format!("unknown family {:?}", s))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Gl => write!(f, "gl"),
            Family::So => write!(f, "so"),
            Family::Sp => write!(f, "sp"),
        }
    }
}

/// Family tag plus rank of the vector representation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_q({})", self.family, self.n)
    }
}

impl GroupSpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        match family {
            Family::Gl if n >= 2 => Ok(()),
            Family::So if n >= 3 => Ok(()),
            Family::Sp if n >= 2 && n % 2 == 0 => Ok(()),
            _ => Err(Error::InvalidSpec(format!(
                "{}_q({}) is not supported (gl: N >= 2, so: N >= 3, sp: even N >= 2)",
                family, n
            ))),
        }?;
        Ok(GroupSpec { family, n })
    }

    pub fn gl(n: usize) -> Self {
        Self::new(Family::Gl, n).unwrap()
    }

    pub fn so(n: usize) -> Self {
        Self::new(Family::So, n).unwrap()
    }

    pub fn sp(n: usize) -> Self {
        Self::new(Family::Sp, n).unwrap()
    }

    /// Sign epsilon: +1 orthogonal, -1 symplectic.
    pub fn epsilon(&self) -> i64 {
        match self.family {
            Family::So => 1,
            Family::Sp => -1,
            Family::Gl => panic!("epsilon undefined for the linear family"),
        }
    }

    pub fn is_gl(&self) -> bool {
        self.family == Family::Gl
    }

    /// Doubled rho-tuple (entries are 2*rho_i so the half-odd-integer
    /// orthogonal weights stay integral; 1-based index).
    pub fn rho2(&self) -> Vec<i64> {
        let half = (self.n / 2) as i64;
        let first_half: Vec<i64> = match (self.family, self.n % 2) {
            (Family::Gl, _) => panic!("rho undefined for the linear family"),
            // (n - 1/2, ..., 3/2, 1/2 | 0 | mirrored)
            (Family::So, 1) => (1..=half).map(|i| 2 * (half - i) + 1).collect(),
            // (n-1, ..., 1, 0 | mirrored with a doubled zero)
            (Family::So, _) => (1..=half).map(|i| 2 * (half - i)).collect(),
            // (n, ..., 2, 1 | -1, -2, ..., -n)
            (Family::Sp, _) => (1..=half).map(|i| 2 * (half - i + 1)).collect(),
        };
        let mut rho: Vec<i64> = first_half.clone();
        if self.n % 2 == 1 {
            rho.push(0);
        }
        rho.extend(first_half.iter().rev().map(|r| -r));
        rho
    }

    /// Sign epsilon_i (1-based index).
    pub fn sign_of(&self, i: usize) -> i64 {
        match self.family {
            Family::Sp => {
                if i <= self.n / 2 {
                    1
                } else {
                    -1
                }
            }
            _ => 1,
        }
    }

    /// Conjugate index i' = N + 1 - i (1-based).
    pub fn iprime(&self, i: usize) -> usize {
        self.n + 1 - i
    }

    /// Braid values (v0, w0) of the spectral variables for the braid matrix
    /// (`upper = true`) or its inverse (`upper = false`).
    pub fn braid_values(&self, upper: bool) -> (QRat, Option<QRat>) {
        let sgn = if upper { -1 } else { 1 };
        let v = QRat::one().add(&QRat::q_pow(2 * sgn)).neg();
        let w = if self.is_gl() {
            None
        } else {
            let eps = self.epsilon();
            let m = self.n as i64 + 1 - eps;
            Some(
                QRat::one()
                    .sub(&QRat::q_pow(sgn * m).scale_int(eps))
                    .neg(),
            )
        };
        (v, w)
    }

    /// Eigenvalues of the braid matrix in the canonical normalization:
    /// 1 on the symmetric part, -q^-2 on the antisymmetric part, and
    /// eps q^-(N+1-eps) on the rank-one part.
    pub fn eigenvalues(&self) -> Vec<QRat> {
        let mut ev = vec![QRat::one(), QRat::q_pow(-2).neg()];
        if !self.is_gl() {
            let eps = self.epsilon();
            let m = self.n as i64 + 1 - eps;
            ev.push(QRat::q_pow(-m).scale_int(eps));
        }
        ev
    }

    /// Expected projector traces (plus, minus, zero).
    pub fn expected_traces(&self) -> (i64, i64, Option<i64>) {
        let n = self.n as i64;
        match self.family {
            Family::Gl => (n * (n + 1) / 2, n * (n - 1) / 2, None),
            _ => {
                let eps = self.epsilon();
                (
                    n * (n + 1) / 2 - (eps + 1) / 2,
                    n * (n - 1) / 2 + (eps - 1) / 2,
                    Some(1),
                )
            }
        }
    }
}

/// Spectral parameters c, d, k and the braid-value ratios f_plus, f_minus.
#[derive(Clone, Debug)]
pub struct CdkParams {
    pub c: QRat,
    pub d: QRat,
    pub k: QRat,
    pub f_plus: QRat,
    pub f_minus: QRat,
}

/// Parameters of the trilinear reduction for the orthogonal and symplectic
/// families; cross-checked against their braid-ratio forms.
pub fn cdk_params(spec: &GroupSpec) -> Result<CdkParams> {
    if spec.is_gl() {
        return Err(Error::Unsupported(
            "the c, d, k parameters are defined for the orthogonal and symplectic families"
                .into(),
        ));
    }
    let eps = spec.epsilon();
    let n = spec.n as i64;
    let two = QRat::q_number(2);
    let qmqi = QRat::q_pow(1).sub(&QRat::q_pow(-1));
    let one_plus = QRat::one().add(&QRat::q_number(n - eps).scale_int(eps));
    let c = QRat::q_number(n - eps + 1)
        .scale_int(eps)
        .div(&two.mul(&one_plus))
        .expect("nonzero denominator");
    let d = one_plus.inv().expect("nonzero");
    // Exponents (N+1-eps)/2 and (N-1-eps)/2 live at half-integer powers.
    let k_num = QRat::half_pow(n + 1 - eps).sub(&QRat::half_pow(-(n + 1 - eps)).scale_int(eps));
    let k_den = QRat::half_pow(n - 1 - eps).add(&QRat::half_pow(-(n - 1 - eps)).scale_int(eps));
    let k = qmqi.mul(&k_num).div(&k_den).expect("nonzero denominator");

    let f = |sgn: i64| -> QRat {
        QRat::q_pow(sgn)
            .mul(&two.inv().unwrap())
            .mul(&QRat::one().sub(&QRat::q_pow(-sgn * (n + 1 - eps)).scale_int(eps)))
    };
    let f_plus = f(1);
    let f_minus = f(-1);

    // Braid-ratio forms of the same parameters.
    let fdiff = f_plus.sub(&f_minus);
    let c_alt = QRat::q_pow(-1)
        .mul(&f_plus)
        .sub(&QRat::q_pow(1).mul(&f_minus))
        .div(&two.mul(&fdiff))
        .unwrap();
    let d_alt = qmqi.div(&two.mul(&fdiff)).unwrap();
    let k_alt = two.mul(&two).mul(&d).mul(&f_plus).mul(&f_minus).neg();
    for (name, a, b) in [("c", &c, &c_alt), ("d", &d, &d_alt), ("k", &k, &k_alt)] {
        if a != b {
            return Err(Error::CheckFailed(format!(
                "parameter {} disagrees with its braid-ratio form: {} vs {}",
                name, a, b
            )));
        }
    }
    Ok(CdkParams { c, d, k, f_plus, f_minus })
}

fn flat(n: usize, i: usize, k: usize) -> usize {
    // 1-based tensor pair (i, k) to 0-based flat index
    n * (i - 1) + (k - 1)
}

/// Braid matrix in the canonical normalization (top-left entry one).
pub fn build_rhat(spec: &GroupSpec) -> SparseMat<QRat> {
    let n = spec.n;
    let dim = n * n;
    let mut m = SparseMat::new(dim, dim);
    let one = QRat::one();
    let qi = QRat::q_pow(-1);
    let qi2 = QRat::q_pow(-2);
    let hecke = one.sub(&qi2); // 1 - q^-2

    if spec.is_gl() {
        for i in 1..=n {
            m.set(flat(n, i, i), flat(n, i, i), one.clone());
        }
        for i in 1..=n {
            for j in 1..=n {
                if i < j {
                    m.add_to(flat(n, i, j), flat(n, i, j), &hecke);
                }
                if i != j {
                    m.add_to(flat(n, j, i), flat(n, i, j), &qi);
                }
            }
        }
        return m;
    }

    let rho2 = spec.rho2();
    let ip = |i: usize| spec.iprime(i);
    for i in 1..=n {
        if ip(i) != i {
            m.add_to(flat(n, i, i), flat(n, i, i), &one);
        } else {
            m.add_to(flat(n, i, i), flat(n, i, i), &qi);
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i != j && j != ip(i) {
                m.add_to(flat(n, j, i), flat(n, i, j), &qi);
            }
            if i < j {
                m.add_to(flat(n, i, j), flat(n, i, j), &hecke);
            }
            if i > j {
                let e = rho2[i - 1] - rho2[j - 1];
                let sgn = spec.sign_of(i) * spec.sign_of(j);
                let coeff = hecke.mul(&QRat::half_pow(e)).scale_int(sgn).neg();
                m.add_to(flat(n, ip(i), i), flat(n, j, ip(j)), &coeff);
            }
        }
        if ip(i) != i {
            m.add_to(flat(n, i, ip(i)), flat(n, ip(i), i), &qi2);
        }
    }
    m
}

/// Conventional normalization: q times the canonical braid matrix.
pub fn build_rhat_conventional(spec: &GroupSpec) -> SparseMat<QRat> {
    build_rhat(spec).scale(&QRat::q_pow(1))
}

/// Lagrange projector onto the eigenvalue `which` of a matrix with simple
/// spectrum `eigenvalues`.
pub fn lagrange_projector(
    m: &SparseMat<QRat>,
    eigenvalues: &[QRat],
    which: usize,
) -> SparseMat<QRat> {
    let n = m.nrows();
    let mut p = SparseMat::identity(n);
    for (j, kj) in eigenvalues.iter().enumerate() {
        if j == which {
            continue;
        }
        let denom = eigenvalues[which].sub(kj).inv().expect("distinct eigenvalues");
        let factor = m.sub(&SparseMat::identity(n).scale(kj)).scale(&denom);
        p = p.matmul(&factor);
    }
    p
}

/// The orthogonal spectral projectors of the braid matrix.
#[derive(Clone, Debug)]
pub struct ProjectorSet {
    pub p_plus: SparseMat<QRat>,
    pub p_minus: SparseMat<QRat>,
    pub p_zero: Option<SparseMat<QRat>>,
}

pub fn build_projectors(spec: &GroupSpec) -> ProjectorSet {
    let rhat = build_rhat(spec);
    let ev = spec.eigenvalues();
    let p_plus = lagrange_projector(&rhat, &ev, 0);
    let p_minus = lagrange_projector(&rhat, &ev, 1);
    let p_zero = if spec.is_gl() {
        None
    } else {
        Some(lagrange_projector(&rhat, &ev, 2))
    };
    ProjectorSet { p_plus, p_minus, p_zero }
}

/// Rank-one projector assembled directly from matrix units,
/// (1 + eps [N - eps])^-1 sum q^(rho_i - rho_j) eps_i eps_j E_{i',j} (x) E_{i,j'}.
pub fn build_p0_direct(spec: &GroupSpec) -> Result<SparseMat<QRat>> {
    if spec.is_gl() {
        return Err(Error::Unsupported(
            "the rank-one projector exists for the orthogonal and symplectic families".into(),
        ));
    }
    let n = spec.n;
    let eps = spec.epsilon();
    let rho2 = spec.rho2();
    let norm = QRat::one()
        .add(&QRat::q_number(n as i64 - eps).mul(&QRat::from_int(eps)))
        .inv()
        .expect("nonzero normalization");
    let mut m = SparseMat::new(n * n, n * n);
    for i in 1..=n {
        for j in 1..=n {
            let e = rho2[i - 1] - rho2[j - 1];
            let sgn = if spec.family == Family::Sp {
                spec.sign_of(i) * spec.sign_of(j)
            } else {
                1
            };
            let coeff = norm.mul(&QRat::half_pow(e)).mul(&QRat::from_int(sgn));
            // E_{i',j} (x) E_{i,j'}
            m.add_to(
                flat(n, spec.iprime(i), i),
                flat(n, j, spec.iprime(j)),
                &coeff,
            );
        }
    }
    Ok(m)
}

/// Cached braid data for one group: the braid matrix, its inverse, and the
/// spectral projectors, all in the canonical normalization.
#[derive(Clone, Debug)]
pub struct RMatrices {
    pub spec: GroupSpec,
    pub rhat: SparseMat<QRat>,
    pub rhat_inv: SparseMat<QRat>,
    pub projectors: ProjectorSet,
}

impl RMatrices {
    pub fn build(spec: &GroupSpec) -> Self {
        let rhat = build_rhat(spec);
        let projectors = build_projectors(spec);
        // R^-1 = I - (1 + q^2) P_minus - (1 - eps q^(N+1-eps)) P_zero
        let (vi, wi) = spec.braid_values(false);
        let dim = spec.n * spec.n;
        let mut rhat_inv = SparseMat::identity(dim).add(&projectors.p_minus.scale(&vi));
        if let (Some(w), Some(p0)) = (&wi, &projectors.p_zero) {
            rhat_inv = rhat_inv.add(&p0.scale(w));
        }
        RMatrices { spec: *spec, rhat, rhat_inv, projectors }
    }

    /// Generalized braid matrix I + v P_minus (+ w P_zero) over any ring,
    /// through an embedding of the q-coefficients.
    pub fn generalized<R: Ring>(
        &self,
        v: &R,
        w: &R,
        embed: &dyn Fn(&QRat) -> R,
    ) -> SparseMat<R> {
        let dim = self.spec.n * self.spec.n;
        let mut m = SparseMat::identity(dim);
        m = m.add(&self.projectors.p_minus.map(embed).scale(v));
        if let Some(p0) = &self.projectors.p_zero {
            m = m.add(&p0.map(embed).scale(w));
        }
        m
    }

    /// Inverse of the generalized braid matrix,
    /// I - v (1+v)^-1 P_minus - w (1+w)^-1 P_zero.
    pub fn generalized_inv<R: Field>(
        &self,
        v: &R,
        w: &R,
        embed: &dyn Fn(&QRat) -> R,
    ) -> Result<SparseMat<R>> {
        let cm = R::one()
            .add(v)
            .inv()
            .ok_or_else(|| Error::Singular("1 + v".into()))?
            .mul(v)
            .neg();
        let dim = self.spec.n * self.spec.n;
        let mut m = SparseMat::identity(dim).add(&self.projectors.p_minus.map(embed).scale(&cm));
        if let Some(p0) = &self.projectors.p_zero {
            let cz = R::one()
                .add(w)
                .inv()
                .ok_or_else(|| Error::Singular("1 + w".into()))?
                .mul(w)
                .neg();
            m = m.add(&p0.map(embed).scale(&cz));
        }
        Ok(m)
    }

    /// The braid matrix rebuilt from its spectral data at the braid values.
    pub fn reassembled(&self) -> SparseMat<QRat> {
        let (v0, w0) = self.spec.braid_values(true);
        self.generalized(&v0, &w0.unwrap_or_else(QRat::zero), &|c| c.clone())
    }
}

/// R12 R23 R12 - R23 R12 R23 on the triple tensor space.
pub fn braid_residual<R: Ring>(rhat: &SparseMat<R>, n: usize) -> Result<SparseMat<R>> {
    let a = rhat.lift(Leg::Left, n)?;
    let b = rhat.lift(Leg::Right, n)?;
    Ok(a.matmul(&b).matmul(&a).sub(&b.matmul(&a).matmul(&b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_tuples() {
        assert_eq!(GroupSpec::so(3).rho2(), vec![1, 0, -1]);
        assert_eq!(GroupSpec::so(4).rho2(), vec![2, 0, 0, -2]);
        assert_eq!(GroupSpec::so(5).rho2(), vec![3, 1, 0, -1, -3]);
        assert_eq!(GroupSpec::so(6).rho2(), vec![4, 2, 0, 0, -2, -4]);
        assert_eq!(GroupSpec::sp(2).rho2(), vec![2, -2]);
        assert_eq!(GroupSpec::sp(4).rho2(), vec![4, 2, -2, -4]);
        assert_eq!(GroupSpec::sp(6).rho2(), vec![6, 4, 2, -2, -4, -6]);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(GroupSpec::new(Family::Gl, 0).is_err());
        assert!(GroupSpec::new(Family::Gl, 1).is_err());
        assert!(GroupSpec::new(Family::Sp, 3).is_err());
        assert!(GroupSpec::new(Family::So, 2).is_err());
    }

    #[test]
    fn gl2_middle_block() {
        // Substituting K = p q^-1, p = q^-1 into the two-parameter braid
        // matrix gives the middle block [[1-q^-2, q^-1], [q^-1, 0]].
        let r = build_rhat(&GroupSpec::gl(2));
        let want_11 = QRat::one().sub(&QRat::q_pow(-2));
        assert_eq!(r.get(0, 0), Some(&QRat::one()));
        assert_eq!(r.get(1, 1), Some(&want_11));
        assert_eq!(r.get(1, 2), Some(&QRat::q_pow(-1)));
        assert_eq!(r.get(2, 1), Some(&QRat::q_pow(-1)));
        assert_eq!(r.get(2, 2), None);
        assert_eq!(r.get(3, 3), Some(&QRat::one()));
    }

    #[test]
    fn braid_values_match_inverse() {
        for spec in [GroupSpec::gl(3), GroupSpec::so(3), GroupSpec::sp(4)] {
            let rm = RMatrices::build(&spec);
            let dim = spec.n * spec.n;
            assert_eq!(
                rm.rhat.matmul(&rm.rhat_inv),
                SparseMat::identity(dim),
                "{} inverse",
                spec
            );
            assert_eq!(rm.reassembled(), rm.rhat, "{} spectral reassembly", spec);
        }
    }

    #[test]
    fn top_left_entry_is_one() {
        for spec in [GroupSpec::gl(2), GroupSpec::so(3), GroupSpec::so(4), GroupSpec::sp(2)] {
            let r = build_rhat(&spec);
            assert!(r.get(0, 0).unwrap().is_one(), "{}", spec);
        }
    }
}
