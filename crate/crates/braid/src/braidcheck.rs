//! The modified-braid-equation machinery: tensor-space constructs, reduction
//! of trilinear products, coefficient formulas, and residual verification.
//!
//! Symbolic spectral variables live in polynomial matrices over the
//! q-coefficient field; every residual is cleared to polynomial form before
//! comparison, so zero tests are exact.

use crate::error::{Error, Result};
use crate::linalg::{Leg, SparseMat};
use crate::report::{check, check_eq, check_zero, CheckRecord, Mode};
use crate::ring::{MFrac, MPoly, QRat, Rat, Ring, Var};
use crate::rmatrix::{cdk_params, CdkParams, GroupSpec, RMatrices};

type P2 = MPoly<QRat>;
type F2 = MFrac<QRat>;

fn embed(c: &QRat) -> P2 {
    P2::constant(c.clone())
}

/// Lifted projector constructs on the triple tensor space.
pub struct Constructs {
    pub n: usize,
    pub x1: SparseMat<QRat>,
    pub x2: SparseMat<QRat>,
    pub y1: Option<SparseMat<QRat>>,
    pub y2: Option<SparseMat<QRat>>,
}

pub fn constructs(rm: &RMatrices) -> Constructs {
    let n = rm.spec.n;
    let x1 = rm.projectors.p_minus.lift(Leg::Left, n).unwrap();
    let x2 = rm.projectors.p_minus.lift(Leg::Right, n).unwrap();
    let (y1, y2) = match &rm.projectors.p_zero {
        Some(p0) => (
            Some(p0.lift(Leg::Left, n).unwrap()),
            Some(p0.lift(Leg::Right, n).unwrap()),
        ),
        None => (None, None),
    };
    Constructs { n, x1, x2, y1, y2 }
}

/// Verify the reduction of all trilinear products to the linear and bilinear
/// constructs, together with the constraint relations they rest on.
pub fn reduce_trilinears(rm: &RMatrices) -> Result<Vec<CheckRecord>> {
    let spec = rm.spec;
    let cs = constructs(rm);
    let mut out = Vec::new();
    let two_inv_sq = QRat::q_number(2).pow(-2);

    if spec.is_gl() {
        let (x1, x2) = (&cs.x1, &cs.x2);
        let s1 = x1.sub(x2);
        let t1 = x1.matmul(x2).matmul(x1).sub(&x2.matmul(x1).matmul(x2));
        out.push(check_eq(
            "reduction.t1",
            "X1 X2 X1 - X2 X1 X2 equals [2]^-2 (X1 - X2)",
            Mode::Symbolic,
            &t1,
            &s1.scale(&two_inv_sq),
        ));
        return Ok(out);
    }

    let p = cdk_params(&spec)?;
    let (x1, x2) = (&cs.x1, &cs.x2);
    let y1 = cs.y1.as_ref().unwrap();
    let y2 = cs.y2.as_ref().unwrap();
    let s1 = x1.sub(x2);
    let s2 = y1.sub(y2);
    let j1 = x1.matmul(y2).sub(&y1.matmul(x2));
    let j2 = y2.matmul(x1).sub(&x2.matmul(y1));
    let one_minus_c = QRat::one().sub(&p.c);

    let tri = |a: &SparseMat<QRat>, b: &SparseMat<QRat>, c: &SparseMat<QRat>| a.matmul(b).matmul(c);
    let pairs: Vec<(&str, SparseMat<QRat>, SparseMat<QRat>)> = vec![
        (
            "reduction.k1",
            tri(x1, x2, y1).sub(&tri(y2, x1, x2)),
            j2.add(&s2.scale(&one_minus_c)).scale(&p.c).neg(),
        ),
        (
            "reduction.k2",
            tri(x1, y2, x1).sub(&tri(x2, y1, x2)),
            j1.add(&j2).add(&s2.scale(&one_minus_c)).scale(&one_minus_c),
        ),
        (
            "reduction.k3",
            tri(y1, x2, x1).sub(&tri(x2, x1, y2)),
            j1.add(&s2.scale(&one_minus_c)).scale(&p.c).neg(),
        ),
        (
            "reduction.l1",
            tri(y1, y2, x1).sub(&tri(x2, y1, y2)),
            j1.add(&s2.scale(&one_minus_c)).scale(&p.d).neg(),
        ),
        (
            "reduction.l2",
            tri(y1, x2, y1).sub(&tri(y2, x1, y2)),
            s2.scale(&one_minus_c.mul(&QRat::one().sub(&p.d))),
        ),
        (
            "reduction.l3",
            tri(x1, y2, y1).sub(&tri(y2, y1, x2)),
            j2.add(&s2.scale(&one_minus_c)).scale(&p.d).neg(),
        ),
        (
            "reduction.t1",
            tri(x1, x2, x1).sub(&tri(x2, x1, x2)),
            s1.add(&j1.add(&j2).add(&s2.scale(&one_minus_c)).scale(&p.k))
                .scale(&two_inv_sq),
        ),
        (
            "reduction.t2",
            tri(y1, y2, y1).sub(&tri(y2, y1, y2)),
            s2.scale(&p.d.mul(&p.d)),
        ),
    ];
    for (id, lhs, rhs) in pairs {
        out.push(check_eq(
            id,
            "trilinear product reduces to linear/bilinear constructs",
            Mode::Symbolic,
            &lhs,
            &rhs,
        ));
    }

    // Y_i Y_j Y_i and Y_i X_j Y_i collapse onto Y_i.
    let dsq = p.d.mul(&p.d);
    let yxy_coeff = yxy_coefficient(&spec);
    for (id, lhs, rhs) in [
        ("appendix.yyy_121", tri(y1, y2, y1), y1.scale(&dsq)),
        ("appendix.yyy_212", tri(y2, y1, y2), y2.scale(&dsq)),
        ("appendix.yxy_121", tri(y1, x2, y1), y1.scale(&yxy_coeff)),
        ("appendix.yxy_212", tri(y2, x1, y2), y2.scale(&yxy_coeff)),
    ] {
        out.push(check_eq(
            id,
            "triple sandwich collapses onto the rank-one construct",
            Mode::Symbolic,
            &lhs,
            &rhs,
        ));
    }

    // Constraint relations: bilinears of the braid matrix intertwine the
    // lifted projectors, and expand in the X/Y basis.
    for (tag, upper) in [("plus", true), ("minus", false)] {
        let r = if upper { &rm.rhat } else { &rm.rhat_inv };
        let r12 = r.lift(Leg::Left, spec.n)?;
        let r23 = r.lift(Leg::Right, spec.n)?;
        let a = r23.matmul(&r12);
        let b = r12.matmul(&r23);
        out.push(check_eq(
            &format!("constraint.x_a_{}", tag),
            "X1 A = A X2",
            Mode::Symbolic,
            &x1.matmul(&a),
            &a.matmul(x2),
        ));
        out.push(check_eq(
            &format!("constraint.y_a_{}", tag),
            "Y1 A = A Y2",
            Mode::Symbolic,
            &y1.matmul(&a),
            &a.matmul(y2),
        ));
        out.push(check_eq(
            &format!("constraint.b_x_{}", tag),
            "B X1 = X2 B",
            Mode::Symbolic,
            &b.matmul(x1),
            &x2.matmul(&b),
        ));
        out.push(check_eq(
            &format!("constraint.b_y_{}", tag),
            "B Y1 = Y2 B",
            Mode::Symbolic,
            &b.matmul(y1),
            &y2.matmul(&b),
        ));

        // Expansion of A and B in products of the lifted projectors.
        let (alpha, beta) = {
            let (v, w) = spec.braid_values(upper);
            (v.neg(), w.unwrap().neg())
        };
        let dim = x1.nrows();
        let expand = |xa: &SparseMat<QRat>,
                      xb: &SparseMat<QRat>,
                      ya: &SparseMat<QRat>,
                      yb: &SparseMat<QRat>| {
            SparseMat::identity(dim)
                .sub(&x1.add(x2).scale(&alpha))
                .sub(&y1.add(y2).scale(&beta))
                .add(&xa.matmul(xb).scale(&alpha.mul(&alpha)))
                .add(&xa.matmul(yb).add(&ya.matmul(xb)).scale(&alpha.mul(&beta)))
                .add(&ya.matmul(yb).scale(&beta.mul(&beta)))
        };
        out.push(check_eq(
            &format!("constraint.a_expansion_{}", tag),
            "A = R23 R12 expands in lifted projector products",
            Mode::Symbolic,
            &a,
            &expand(x2, x1, y2, y1),
        ));
        out.push(check_eq(
            &format!("constraint.b_expansion_{}", tag),
            "B = R12 R23 expands in lifted projector products",
            Mode::Symbolic,
            &b,
            &expand(x1, x2, y1, y2),
        ));
    }
    Ok(out)
}

fn yxy_coefficient(spec: &GroupSpec) -> QRat {
    let eps = spec.epsilon();
    let n = spec.n as i64;
    let two = QRat::q_number(2);
    let one_plus = QRat::one().add(&QRat::q_number(n - eps).scale_int(eps));
    QRat::q_number(n - eps)
        .scale_int(eps)
        .mul(&two.add(&QRat::q_number(n - 1 - eps).scale_int(eps)))
        .div(&two.mul(&one_plus).mul(&one_plus))
        .unwrap()
}

/// Triple-product identities of the rank-one projector with itself, the
/// braid matrices and the antisymmetrizer.
pub fn appendix_a(rm: &RMatrices) -> Result<Vec<CheckRecord>> {
    let spec = rm.spec;
    if spec.is_gl() {
        return Err(Error::Unsupported(
            "rank-one projector identities need the orthogonal or symplectic family".into(),
        ));
    }
    let eps = spec.epsilon();
    let n = spec.n;
    let p = cdk_params(&spec)?;
    let p0_12 = rm.projectors.p_zero.as_ref().unwrap().lift(Leg::Left, n)?;
    let p0_23 = rm.projectors.p_zero.as_ref().unwrap().lift(Leg::Right, n)?;
    let pm_12 = rm.projectors.p_minus.lift(Leg::Left, n)?;
    let pm_23 = rm.projectors.p_minus.lift(Leg::Right, n)?;
    let dsq = p.d.mul(&p.d);
    let mut out = Vec::new();
    out.push(check_eq(
        "appendix.p0_triple_121",
        "P0_12 P0_23 P0_12 = (1 + eps [N-eps])^-2 P0_12",
        Mode::Symbolic,
        &p0_12.matmul(&p0_23).matmul(&p0_12),
        &p0_12.scale(&dsq),
    ));
    out.push(check_eq(
        "appendix.p0_triple_212",
        "P0_23 P0_12 P0_23 = (1 + eps [N-eps])^-2 P0_23",
        Mode::Symbolic,
        &p0_23.matmul(&p0_12).matmul(&p0_23),
        &p0_23.scale(&dsq),
    ));
    for (tag, r, sgn) in [("plus", &rm.rhat, 1i64), ("minus", &rm.rhat_inv, -1i64)] {
        let coeff = QRat::half_pow(2 * sgn * (n as i64 - 1 - eps))
            .scale_int(eps)
            .mul(&p.d);
        let r23 = r.lift(Leg::Right, n)?;
        let r12 = r.lift(Leg::Left, n)?;
        out.push(check_eq(
            &format!("appendix.p0_rhat_{}_121", tag),
            "P0_12 R23 P0_12 = eps q^(+-(N-1-eps)) (1 + eps [N-eps])^-1 P0_12",
            Mode::Symbolic,
            &p0_12.matmul(&r23).matmul(&p0_12),
            &p0_12.scale(&coeff),
        ));
        out.push(check_eq(
            &format!("appendix.p0_rhat_{}_212", tag),
            "P0_23 R12 P0_23 = eps q^(+-(N-1-eps)) (1 + eps [N-eps])^-1 P0_23",
            Mode::Symbolic,
            &p0_23.matmul(&r12).matmul(&p0_23),
            &p0_23.scale(&coeff),
        ));
    }
    let pm_coeff = yxy_coefficient(&spec);
    out.push(check_eq(
        "appendix.p0_pminus_121",
        "P0_12 Pminus_23 P0_12 collapses onto P0_12",
        Mode::Symbolic,
        &p0_12.matmul(&pm_23).matmul(&p0_12),
        &p0_12.scale(&pm_coeff),
    ));
    out.push(check_eq(
        "appendix.p0_pminus_212",
        "P0_23 Pminus_12 P0_23 collapses onto P0_23",
        Mode::Symbolic,
        &p0_23.matmul(&pm_12).matmul(&p0_23),
        &p0_23.scale(&pm_coeff),
    ));
    Ok(out)
}

/// Coefficients of the modified braid equation.
#[derive(Clone, Debug)]
pub enum MbeCoefficients {
    Gl {
        c: F2,
    },
    SoSp {
        a1: F2,
        a2: F2,
        b: F2,
        c1: F2,
        c2: F2,
        c3: F2,
    },
}

impl MbeCoefficients {
    /// Specialize the spectral variables.
    pub fn eval(&self, v: &QRat, w: &QRat) -> Vec<(String, QRat)> {
        let at = |f: &F2| {
            f.eval_var(Var::V, v)
                .eval_var(Var::W, w)
                .to_coeff()
                .expect("coefficient evaluation")
        };
        match self {
            MbeCoefficients::Gl { c } => vec![("c".into(), at(c))],
            MbeCoefficients::SoSp { a1, a2, b, c1, c2, c3 } => vec![
                ("a1".into(), at(a1)),
                ("a2".into(), at(a2)),
                ("b".into(), at(b)),
                ("c1".into(), at(c1)),
                ("c2".into(), at(c2)),
                ("c3".into(), at(c3)),
            ],
        }
    }
}

fn vw() -> (P2, P2) {
    (P2::var(Var::V), P2::var(Var::W))
}

/// Polynomial parts (a1, a2, b) of the right-hand side.
fn mbe_polys(p: &CdkParams) -> (P2, P2, P2) {
    let (v, w) = vw();
    let one = P2::one();
    let two = QRat::q_number(2);
    let two_inv_sq = two.pow(-2);
    let cmc = QRat::one().sub(&p.c);
    // a1 = [2]^-2 v (v + [2] q)(v + [2] q^-1)
    let a1 = v
        .scale(&two_inv_sq)
        .mul(&v.add(&P2::constant(two.mul(&QRat::q_pow(1)))))
        .mul(&v.add(&P2::constant(two.mul(&QRat::q_pow(-1)))));
    // a2 = w(1+w) + d^2 w^3 + (1-c)([2]^-2 k v^3 + (1-3c) v^2 w + (1-3d) v w^2)
    let a2 = w
        .mul(&one.add(&w))
        .add(&w.mul(&w).mul(&w).scale(&p.d.mul(&p.d)))
        .add(
            &v.mul(&v)
                .mul(&v)
                .scale(&two_inv_sq.mul(&p.k))
                .add(&v.mul(&v).mul(&w).scale(&QRat::one().sub(&p.c.scale_int(3))))
                .add(&v.mul(&w).mul(&w).scale(&QRat::one().sub(&p.d.scale_int(3))))
                .scale(&cmc),
        );
    // b = -d v (w - f+ v)(w - f- v)
    let b = v
        .scale(&p.d)
        .neg()
        .mul(&w.sub(&v.scale(&p.f_plus)))
        .mul(&w.sub(&v.scale(&p.f_minus)));
    (a1, a2, b)
}

/// Symbolic coefficients of the modified braid equation for a family.
pub fn mbe_coefficients(spec: &GroupSpec) -> Result<MbeCoefficients> {
    let (v, w) = vw();
    if spec.is_gl() {
        // c = 1 + v + [2]^-2 v^2
        let c = P2::one()
            .add(&v)
            .add(&v.mul(&v).scale(&QRat::q_number(2).pow(-2)));
        return Ok(MbeCoefficients::Gl { c: F2::from_poly(c) });
    }
    let p = cdk_params(spec)?;
    let (a1, a2, b) = mbe_polys(&p);
    let one = P2::one();
    let opv = one.add(&v);
    let opw = one.add(&w);
    let denom = v.mul(&w).mul(&v.sub(&w));
    let c1_num = opv
        .mul(&w)
        .mul(&a1)
        .sub(&opw.mul(&v).mul(&a2))
        .add(&opv.mul(&opw).mul(&b).scale(&QRat::from_int(2)));
    let c2_num = opv
        .mul(&opw)
        .mul(&w.mul(&a1).sub(&v.mul(&a2)).sub(&b.scale(&QRat::from_int(2))));
    let c3_num = opv.mul(&opw).mul(&b).neg();
    Ok(MbeCoefficients::SoSp {
        a1: F2::from_poly(a1),
        a2: F2::from_poly(a2),
        b: F2::from_poly(b),
        c1: F2::new(c1_num, denom.clone()),
        c2: F2::new(c2_num, denom.clone()),
        c3: F2::new(c3_num, denom),
    })
}

fn lifted_pair(m: &SparseMat<P2>, n: usize) -> (SparseMat<P2>, SparseMat<P2>) {
    (m.lift(Leg::Left, n).unwrap(), m.lift(Leg::Right, n).unwrap())
}

/// Fully symbolic residual check of the modified braid equation.
pub fn mbe_symbolic(rm: &RMatrices) -> Result<Vec<CheckRecord>> {
    let spec = rm.spec;
    let n = spec.n;
    let (v, w) = vw();
    let mut out = Vec::new();

    if spec.is_gl() {
        let gen = rm.generalized(&v, &P2::zero(), &|c| embed(c));
        let (r12, r23) = lifted_pair(&gen, n);
        let lhs = r12
            .matmul(&r23)
            .matmul(&r12)
            .sub(&r23.matmul(&r12).matmul(&r23));
        let MbeCoefficients::Gl { c } = mbe_coefficients(&spec)? else {
            unreachable!()
        };
        let rhs = r12.sub(&r23).scale(c.num());
        out.push(check_eq(
            "mbe.residual",
            "R12 R23 R12 - R23 R12 R23 = c (R12 - R23) for symbolic v",
            Mode::Symbolic,
            &lhs,
            &rhs,
        ));
        out.extend(mbe_value_checks(rm)?);
        return Ok(out);
    }

    let p = cdk_params(&spec)?;
    let one = P2::one();
    let opv = one.add(&v);
    let opw = one.add(&w);
    let clear = v.mul(&w).mul(&v.sub(&w)).mul(&opv).mul(&opw);

    let gen = rm.generalized(&v, &w, &|c| embed(c));
    let (r12, r23) = lifted_pair(&gen, n);
    // (1+v)(1+w) R^-1 cleared to polynomial form
    let dim2 = n * n;
    let inv_num = SparseMat::identity(dim2)
        .scale(&opv.mul(&opw))
        .sub(&rm.projectors.p_minus.map(|c| embed(c)).scale(&v.mul(&opw)))
        .sub(
            &rm.projectors
                .p_zero
                .as_ref()
                .unwrap()
                .map(|c| embed(c))
                .scale(&w.mul(&opv)),
        );
    let (i12, i23) = lifted_pair(&inv_num, n);

    let (a1, a2, b) = mbe_polys(&p);
    let c1p = opv
        .mul(&w)
        .mul(&a1)
        .sub(&opw.mul(&v).mul(&a2))
        .add(&opv.mul(&opw).mul(&b).scale(&QRat::from_int(2)));
    let c2p = opv
        .mul(&opw)
        .mul(&w.mul(&a1).sub(&v.mul(&a2)).sub(&b.scale(&QRat::from_int(2))));
    let c3p = opv.mul(&opw).mul(&b).neg();

    let lhs = r12
        .matmul(&r23)
        .matmul(&r12)
        .sub(&r23.matmul(&r12).matmul(&r23))
        .scale(&clear);
    let rhs = r12
        .sub(&r23)
        .scale(&opv.mul(&opw).mul(&c1p))
        .add(&i12.sub(&i23).scale(&c2p))
        .add(&r12.matmul(&i23).sub(&r23.matmul(&i12)).scale(&c3p))
        .sub(&i12.matmul(&r23).sub(&i23.matmul(&r12)).scale(&c3p));
    out.push(check_eq(
        "mbe.residual",
        "modified braid equation holds for symbolic (v, w), cleared to polynomial form",
        Mode::Symbolic,
        &lhs,
        &rhs,
    ));
    out.extend(mbe_value_checks(rm)?);
    Ok(out)
}

/// Scalar coefficient properties: vanishing at braid values, the two-term
/// reduction at w = f(+-) v, and the absence of a w = 0 solution.
pub fn mbe_value_checks(rm: &RMatrices) -> Result<Vec<CheckRecord>> {
    let spec = rm.spec;
    let coeffs = mbe_coefficients(&spec)?;
    let mut out = Vec::new();
    match &coeffs {
        MbeCoefficients::Gl { .. } => {
            for (tag, upper) in [("plus", true), ("minus", false)] {
                let (v0, _) = spec.braid_values(upper);
                let vals = coeffs.eval(&v0, &QRat::zero());
                out.push(check(
                    &format!("mbe.braid_value_{}", tag),
                    "c vanishes at the braid value",
                    Mode::Symbolic,
                    vals.iter().all(|(_, c)| c.is_zero()),
                    Some(format!("c = {}", vals[0].1)),
                ));
            }
        }
        MbeCoefficients::SoSp { b, c3, .. } => {
            for (tag, upper) in [("plus", true), ("minus", false)] {
                let (v0, w0) = spec.braid_values(upper);
                let vals = coeffs.eval(&v0, &w0.unwrap());
                let all_zero = vals
                    .iter()
                    .filter(|(n, _)| n.starts_with(|c| c == 'a' || c == 'b' || c == 'c'))
                    .all(|(_, c)| c.is_zero());
                out.push(check(
                    &format!("mbe.braid_value_{}", tag),
                    "a1, a2, b and c1, c2, c3 vanish at the braid values",
                    Mode::Symbolic,
                    all_zero,
                    Some(
                        vals.iter()
                            .map(|(n, c)| format!("{} = {}", n, c))
                            .collect::<Vec<_>>()
                            .join("; "),
                    ),
                ));
            }
            // c3 vanishes identically on the lines w = f(+-) v.
            let p = cdk_params(&spec)?;
            for (tag, f) in [("plus", &p.f_plus), ("minus", &p.f_minus)] {
                let c3_line = c3
                    .clone()
                    .subst(Var::W, &F2::from_poly(P2::var(Var::V).scale(f)));
                out.push(check(
                    &format!("mbe.c3_on_line_{}", tag),
                    "c3 vanishes identically at w = f v",
                    Mode::Symbolic,
                    c3_line.is_zero(),
                    Some(format!("c3 = {}", c3_line)),
                ));
            }
            // No w = 0 solution: b cannot vanish identically in v there.
            let b_at_w0 = b.eval_var(Var::W, &QRat::zero());
            out.push(check(
                "mbe.no_w0_solution",
                "b does not vanish identically at w = 0, nonzero v",
                Mode::Symbolic,
                !b_at_w0.is_zero(),
                None,
            ));
        }
    }
    Ok(out)
}

/// Degree bounds of the cleared residual in (v, w), from the actual scalar
/// polynomials plus one per matrix factor.
fn mbe_degree_bounds(p: &CdkParams) -> (u32, u32) {
    let (v, w) = vw();
    let one = P2::one();
    let opv = one.add(&v);
    let opw = one.add(&w);
    let clear = v.mul(&w).mul(&v.sub(&w)).mul(&opv).mul(&opw);
    let (a1, a2, b) = mbe_polys(p);
    let c1p = opv
        .mul(&w)
        .mul(&a1)
        .sub(&opw.mul(&v).mul(&a2))
        .add(&opv.mul(&opw).mul(&b).scale(&QRat::from_int(2)));
    let c2p = opv
        .mul(&opw)
        .mul(&w.mul(&a1).sub(&v.mul(&a2)).sub(&b.scale(&QRat::from_int(2))));
    let c3p = opv.mul(&opw).mul(&b);
    let d = |q: &P2, var: Var, extra: u32| q.degree(var) as u32 + extra;
    let bound = |var: Var| {
        (d(&clear, var, 3))
            .max(d(&c1p.mul(&opv).mul(&opw), var, 1))
            .max(d(&c2p, var, 1))
            .max(d(&c3p, var, 2))
    };
    (bound(Var::V), bound(Var::W))
}

/// Interpolation-sound sampled residual check for the larger ranks.
pub fn mbe_sampled(rm: &RMatrices) -> Result<Vec<CheckRecord>> {
    let spec = rm.spec;
    if spec.is_gl() {
        // The linear family stays cheap symbolically at every supported rank.
        return mbe_symbolic(rm);
    }
    let p = cdk_params(&spec)?;
    let coeffs = mbe_coefficients(&spec)?;
    let (bv, bw) = mbe_degree_bounds(&p);
    let n = spec.n;
    let mut bad: Option<String> = None;
    let mut points = 0usize;
    'outer: for i in 0..=bv {
        // v integer, w half-integer keeps every clearing factor nonzero
        let v0 = QRat::from_int(i as i64 + 2);
        for j in 0..=bw {
            let w0 = QRat::from_rat(Rat::new((2 * j as i64 + 3).into(), 2.into()));
            points += 1;
            let vals = coeffs.eval(&v0, &w0);
            let get = |name: &str| {
                vals.iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, c)| c.clone())
                    .unwrap()
            };
            let r = rm.generalized(&v0, &w0, &|c| c.clone());
            let ri = rm.generalized_inv(&v0, &w0, &|c| c.clone())?;
            let (r12, r23) = (r.lift(Leg::Left, n)?, r.lift(Leg::Right, n)?);
            let (i12, i23) = (ri.lift(Leg::Left, n)?, ri.lift(Leg::Right, n)?);
            let lhs = r12
                .matmul(&r23)
                .matmul(&r12)
                .sub(&r23.matmul(&r12).matmul(&r23));
            let rhs = r12
                .sub(&r23)
                .scale(&get("c1"))
                .add(&i12.sub(&i23).scale(&get("c2")))
                .add(&r12.matmul(&i23).sub(&r23.matmul(&i12)).scale(&get("c3")))
                .sub(&i12.matmul(&r23).sub(&i23.matmul(&r12)).scale(&get("c3")));
            let res = lhs.sub(&rhs);
            if !res.is_zero() {
                bad = Some(format!(
                    "at v = {}, w = {}: {}",
                    v0,
                    w0,
                    res.witness().unwrap()
                ));
                break 'outer;
            }
        }
    }
    let mode = Mode::Sampled {
        bounds: vec![("v".into(), bv), ("w".into(), bw)],
        points,
    };
    let mut out = vec![check(
        "mbe.residual",
        "modified braid equation on a grid exceeding the degree bounds",
        mode,
        bad.is_none(),
        bad,
    )];
    out.extend(mbe_value_checks(rm)?);
    Ok(out)
}

/// Residual and coefficients at specific spectral values.
pub fn mbe_residual_at(rm: &RMatrices, v: &QRat, w: &QRat) -> Result<(SparseMat<QRat>, Vec<(String, QRat)>)> {
    let spec = rm.spec;
    let n = spec.n;
    let coeffs = mbe_coefficients(&spec)?;
    let vals = coeffs.eval(v, w);
    let r = rm.generalized(v, w, &|c| c.clone());
    let (r12, r23) = (r.lift(Leg::Left, n)?, r.lift(Leg::Right, n)?);
    let lhs = r12
        .matmul(&r23)
        .matmul(&r12)
        .sub(&r23.matmul(&r12).matmul(&r23));
    let rhs = match &coeffs {
        MbeCoefficients::Gl { .. } => r12.sub(&r23).scale(&vals[0].1),
        MbeCoefficients::SoSp { .. } => {
            for (factor, val) in [("v", v), ("w", w)] {
                if val.add(&QRat::one()).is_zero() {
                    return Err(Error::Singular(format!("1 + {}", factor)));
                }
                if val.is_zero() {
                    return Err(Error::Singular(factor.to_string()));
                }
            }
            if v == w {
                return Err(Error::Singular("v - w".into()));
            }
            let ri = rm.generalized_inv(v, w, &|c| c.clone())?;
            let (i12, i23) = (ri.lift(Leg::Left, n)?, ri.lift(Leg::Right, n)?);
            let get = |name: &str| {
                vals.iter()
                    .find(|(nm, _)| nm == name)
                    .map(|(_, c)| c.clone())
                    .unwrap()
            };
            r12.sub(&r23)
                .scale(&get("c1"))
                .add(&i12.sub(&i23).scale(&get("c2")))
                .add(&r12.matmul(&i23).sub(&r23.matmul(&i12)).scale(&get("c3")))
                .sub(&i12.matmul(&r23).sub(&i23.matmul(&r12)).scale(&get("c3")))
        }
    };
    Ok((lhs.sub(&rhs), vals))
}

/// Symbolic three-point expansion in the lifted projector constructs.
pub fn general_triple_symbolic(rm: &RMatrices) -> Result<Vec<CheckRecord>> {
    let spec = rm.spec;
    let n = spec.n;
    let cs = constructs(rm);
    let vars = |v: Var| P2::var(v);
    let (v, w) = (vars(Var::V), vars(Var::W));
    let (vp, wp) = (vars(Var::Vp), vars(Var::Wp));
    let (vpp, wpp) = (vars(Var::Vpp), vars(Var::Wpp));

    let gen = |vv: &P2, ww: &P2| rm.generalized(vv, ww, &|c| embed(c));
    let r_a = gen(&v, &w);
    let r_b = gen(&vp, &wp);
    let r_c = gen(&vpp, &wpp);
    let lhs = r_a
        .lift(Leg::Left, n)?
        .matmul(&r_b.lift(Leg::Right, n)?)
        .matmul(&r_c.lift(Leg::Left, n)?)
        .sub(
            &r_c.lift(Leg::Right, n)?
                .matmul(&r_b.lift(Leg::Left, n)?)
                .matmul(&r_a.lift(Leg::Right, n)?),
        );

    let x1 = cs.x1.map(|c| embed(c));
    let x2 = cs.x2.map(|c| embed(c));
    let s1 = x1.sub(&x2);
    let t1 = x1.matmul(&x2).matmul(&x1).sub(&x2.matmul(&x1).matmul(&x2));
    let c_s1 = v.add(&vpp).add(&v.mul(&vpp)).sub(&vp);
    let c_t1 = v.mul(&vp).mul(&vpp);

    let rhs = if spec.is_gl() {
        s1.scale(&c_s1).add(&t1.scale(&c_t1))
    } else {
        let y1 = cs.y1.as_ref().unwrap().map(|c| embed(c));
        let y2 = cs.y2.as_ref().unwrap().map(|c| embed(c));
        let s2 = y1.sub(&y2);
        let j1 = x1.matmul(&y2).sub(&y1.matmul(&x2));
        let j2 = y2.matmul(&x1).sub(&x2.matmul(&y1));
        let tri = |a: &SparseMat<P2>, b: &SparseMat<P2>, c: &SparseMat<P2>| {
            a.matmul(b).matmul(c)
        };
        let k1 = tri(&x1, &x2, &y1).sub(&tri(&y2, &x1, &x2));
        let k2 = tri(&x1, &y2, &x1).sub(&tri(&x2, &y1, &x2));
        let k3 = tri(&y1, &x2, &x1).sub(&tri(&x2, &x1, &y2));
        let l1 = tri(&y1, &y2, &x1).sub(&tri(&x2, &y1, &y2));
        let l2 = tri(&y1, &x2, &y1).sub(&tri(&y2, &x1, &y2));
        let l3 = tri(&x1, &y2, &y1).sub(&tri(&y2, &y1, &x2));
        let t2 = tri(&y1, &y2, &y1).sub(&tri(&y2, &y1, &y2));
        s1.scale(&c_s1)
            .add(&s2.scale(&w.add(&wpp).add(&w.mul(&wpp)).sub(&wp)))
            .add(&j1.scale(&v.mul(&wp).sub(&vp.mul(&w))))
            .add(&j2.scale(&wp.mul(&vpp).sub(&wpp.mul(&vp))))
            .add(&k1.scale(&v.mul(&vp).mul(&wpp)))
            .add(&k2.scale(&v.mul(&wp).mul(&vpp)))
            .add(&k3.scale(&w.mul(&vp).mul(&vpp)))
            .add(&l1.scale(&w.mul(&wp).mul(&vpp)))
            .add(&l2.scale(&w.mul(&vp).mul(&wpp)))
            .add(&l3.scale(&v.mul(&wp).mul(&wpp)))
            .add(&t1.scale(&c_t1))
            .add(&t2.scale(&w.mul(&wp).mul(&wpp)))
    };
    Ok(vec![check_eq(
        "triple.expansion",
        "three-point product expands exactly in the lifted projector constructs",
        Mode::Symbolic,
        &lhs,
        &rhs,
    )])
}

/// Evaluate the three-point expansion at fixed rational spectral points and
/// compare against the direct matrix product.
pub fn general_triple_points(rm: &RMatrices) -> Result<Vec<CheckRecord>> {
    let spec = rm.spec;
    let n = spec.n;
    let cs = constructs(rm);
    let tuples: [[(i64, i64); 6]; 2] = [
        [(2, 1), (3, 2), (3, 1), (5, 2), (5, 1), (7, 2)],
        [(1, 2), (4, 1), (2, 3), (5, 1), (3, 4), (7, 1)],
    ];
    let mut out = Vec::new();
    for (k, t) in tuples.iter().enumerate() {
        let q = |i: usize| QRat::from_rat(Rat::new(t[i].0.into(), t[i].1.into()));
        let (v, w, vp, wp, vpp, wpp) = (q(0), q(1), q(2), q(3), q(4), q(5));
        let gen = |vv: &QRat, ww: &QRat| rm.generalized(vv, ww, &|c| c.clone());
        let lhs = gen(&v, &w)
            .lift(Leg::Left, n)?
            .matmul(&gen(&vp, &wp).lift(Leg::Right, n)?)
            .matmul(&gen(&vpp, &wpp).lift(Leg::Left, n)?)
            .sub(
                &gen(&vpp, &wpp)
                    .lift(Leg::Right, n)?
                    .matmul(&gen(&vp, &wp).lift(Leg::Left, n)?)
                    .matmul(&gen(&v, &w).lift(Leg::Right, n)?),
            );
        let (x1, x2) = (&cs.x1, &cs.x2);
        let s1 = x1.sub(x2);
        let t1 = x1.matmul(x2).matmul(x1).sub(&x2.matmul(x1).matmul(x2));
        let c_s1 = v.add(&vpp).add(&v.mul(&vpp)).sub(&vp);
        let c_t1 = v.mul(&vp).mul(&vpp);
        let rhs = if spec.is_gl() {
            s1.scale(&c_s1).add(&t1.scale(&c_t1))
        } else {
            let y1 = cs.y1.as_ref().unwrap();
            let y2 = cs.y2.as_ref().unwrap();
            let s2 = y1.sub(y2);
            let j1 = x1.matmul(y2).sub(&y1.matmul(x2));
            let j2 = y2.matmul(x1).sub(&x2.matmul(y1));
            let tri =
                |a: &SparseMat<QRat>, b: &SparseMat<QRat>, c: &SparseMat<QRat>| a.matmul(b).matmul(c);
            s1.scale(&c_s1)
                .add(&s2.scale(&w.add(&wpp).add(&w.mul(&wpp)).sub(&wp)))
                .add(&j1.scale(&v.mul(&wp).sub(&vp.mul(&w))))
                .add(&j2.scale(&wp.mul(&vpp).sub(&wpp.mul(&vp))))
                .add(&tri(x1, x2, y1).sub(&tri(y2, x1, x2)).scale(&v.mul(&vp).mul(&wpp)))
                .add(&tri(x1, y2, x1).sub(&tri(x2, y1, x2)).scale(&v.mul(&wp).mul(&vpp)))
                .add(&tri(y1, x2, x1).sub(&tri(x2, x1, y2)).scale(&w.mul(&vp).mul(&vpp)))
                .add(&tri(y1, y2, x1).sub(&tri(x2, y1, y2)).scale(&w.mul(&wp).mul(&vpp)))
                .add(&tri(y1, x2, y1).sub(&tri(y2, x1, y2)).scale(&w.mul(&vp).mul(&wpp)))
                .add(&tri(x1, y2, y1).sub(&tri(y2, y1, x2)).scale(&v.mul(&wp).mul(&wpp)))
                .add(&t1.scale(&c_t1))
                .add(
                    &y1.matmul(y2)
                        .matmul(y1)
                        .sub(&y2.matmul(y1).matmul(y2))
                        .scale(&w.mul(&wp).mul(&wpp)),
                )
        };
        out.push(check_eq(
            &format!("triple.point_{}", k),
            "three-point expansion agrees with the direct product at rational points",
            Mode::Symbolic,
            &lhs,
            &rhs,
        ));
    }
    Ok(out)
}

/// Braid-equation checks for the two exotic 4x4 matrices.
pub fn exotic_checks() -> Vec<CheckRecord> {
    let mut out = Vec::new();
    // First exotic matrix, over the rationals.
    let mut s03: SparseMat<Rat> = SparseMat::new(4, 4);
    for (i, j, v) in [
        (0, 0, 1),
        (0, 3, 1),
        (1, 1, 1),
        (1, 2, -1),
        (2, 1, 1),
        (2, 2, 1),
        (3, 0, -1),
        (3, 3, 1),
    ] {
        s03.set(i, j, Rat::from_int(v));
    }
    let res = crate::rmatrix::braid_residual(&s03, 2).unwrap();
    out.push(check_zero(
        "exotic.s03_braid",
        "first exotic 4x4 matrix satisfies the braid equation",
        Mode::Symbolic,
        &res,
    ));
    // Its square doubles a rotation-like matrix.
    let sq = s03.matmul(&s03);
    let mut want: SparseMat<Rat> = SparseMat::new(4, 4);
    for (i, j, v) in [(0, 3, 2), (1, 2, -2), (2, 1, 2), (3, 0, -2)] {
        want.set(i, j, Rat::from_int(v));
    }
    out.push(check_eq(
        "exotic.s03_square",
        "square of the first exotic matrix is twice a rotation-like matrix",
        Mode::Symbolic,
        &sq,
        &want,
    ));
    // Second exotic matrix, over the q-coefficients.
    let mut s14: SparseMat<QRat> = SparseMat::new(4, 4);
    s14.set(0, 3, QRat::q_pow(1));
    s14.set(3, 0, QRat::q_pow(1));
    s14.set(1, 1, QRat::one());
    s14.set(2, 2, QRat::one());
    let res = crate::rmatrix::braid_residual(&s14, 2).unwrap();
    out.push(check_zero(
        "exotic.s14_braid",
        "second exotic 4x4 matrix satisfies the braid equation for symbolic q",
        Mode::Symbolic,
        &res,
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_reduction() {
        let rm = RMatrices::build(&GroupSpec::gl(2));
        let checks = reduce_trilinears(&rm).unwrap();
        assert!(checks.iter().all(CheckRecord::passed));
    }

    #[test]
    fn so3_reduction_and_t2() {
        let rm = RMatrices::build(&GroupSpec::so(3));
        let checks = reduce_trilinears(&rm).unwrap();
        for c in &checks {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
        // d = (1 + [2])^-1 for the smallest orthogonal case
        let p = cdk_params(&GroupSpec::so(3)).unwrap();
        assert_eq!(p.d, QRat::one().add(&QRat::q_number(2)).inv().unwrap());
        assert_eq!(p.c, QRat::one().sub(&QRat::q_number(2).inv().unwrap()));
        let expect_k = QRat::one()
            .add(&QRat::q_number(2))
            .mul(&QRat::from_int(2).sub(&QRat::q_number(2)))
            .neg();
        assert_eq!(p.k, expect_k);
    }

    #[test]
    fn sp4_reduction() {
        let rm = RMatrices::build(&GroupSpec::sp(4));
        let checks = reduce_trilinears(&rm).unwrap();
        for c in &checks {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
    }

    #[test]
    fn gl_mbe_symbolic_coefficient() {
        let spec = GroupSpec::gl(2);
        let rm = RMatrices::build(&spec);
        let checks = mbe_symbolic(&rm).unwrap();
        for c in &checks {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
        let MbeCoefficients::Gl { c } = mbe_coefficients(&spec).unwrap() else {
            unreachable!()
        };
        let expect = F2::one()
            .add(&F2::var(Var::V))
            .add(&F2::var(Var::V).mul(&F2::var(Var::V)).mul(&F2::constant(QRat::q_number(2).pow(-2))));
        assert_eq!(c, expect);
    }

    #[test]
    fn so3_mbe_symbolic() {
        let rm = RMatrices::build(&GroupSpec::so(3));
        let checks = mbe_symbolic(&rm).unwrap();
        for c in &checks {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
    }

    #[test]
    fn so3_triple_expansion() {
        let rm = RMatrices::build(&GroupSpec::so(3));
        for c in general_triple_symbolic(&rm).unwrap() {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
        for c in general_triple_points(&rm).unwrap() {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
    }

    #[test]
    fn gl_triple_symbolic() {
        let rm = RMatrices::build(&GroupSpec::gl(2));
        for c in general_triple_symbolic(&rm).unwrap() {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
    }

    #[test]
    fn appendix_a_so3() {
        let rm = RMatrices::build(&GroupSpec::so(3));
        for c in appendix_a(&rm).unwrap() {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
    }

    #[test]
    fn exotic_matrices() {
        for c in exotic_checks() {
            assert!(c.passed(), "{}: {:?}", c.id, c.witness);
        }
    }

    #[test]
    fn mbe_rejects_singular_values() {
        let rm = RMatrices::build(&GroupSpec::so(3));
        let minus_one = QRat::from_int(-1);
        let two = QRat::from_int(2);
        assert!(matches!(
            mbe_residual_at(&rm, &minus_one, &two),
            Err(Error::Singular(_))
        ));
        assert!(matches!(
            mbe_residual_at(&rm, &two, &two),
            Err(Error::Singular(_))
        ));
    }
}
