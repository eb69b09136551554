use braid::rmatrix::*;

#[test]
fn gate_braid_and_p0() {
    for spec in [GroupSpec::gl(2), GroupSpec::gl(3), GroupSpec::so(3), GroupSpec::so(4),
                 GroupSpec::so(5), GroupSpec::sp(2), GroupSpec::sp(4)] {
        let r = build_rhat(&spec);
        let res = braid_residual(&r, spec.n).unwrap();
        assert!(res.is_zero(), "{} braid residual: {:?}", spec, res.witness());
        if !spec.is_gl() {
            let ps = build_projectors(&spec);
            let p0d = build_p0_direct(&spec).unwrap();
            assert_eq!(ps.p_zero.as_ref().unwrap(), &p0d, "{} p0 two routes", spec);
            // orthogonality & completeness
            let dim = spec.n * spec.n;
            let sum = ps.p_plus.add(&ps.p_minus).add(&p0d);
            assert_eq!(sum, braid::linalg::SparseMat::identity(dim), "{} completeness", spec);
            assert_eq!(ps.p_minus.matmul(&p0d).nnz(), 0, "{} orth", spec);
            // traces
            let (tp, tm, tz) = spec.expected_traces();
            assert_eq!(ps.p_plus.trace(), braid::ring::QRat::from_int(tp), "{} tr+", spec);
            assert_eq!(ps.p_minus.trace(), braid::ring::QRat::from_int(tm), "{} tr-", spec);
            assert_eq!(p0d.trace(), braid::ring::QRat::from_int(tz.unwrap()), "{} tr0", spec);
        }
    }
    println!("gate ok");
}
