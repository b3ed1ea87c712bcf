mod common;

use common::*;
use mahler_core::duality::SchlesingerMultiplier;
use mahler_core::fuchsian::{
    compatibility_residual, constant_charpoly, deformation_matrix, inv_diff, lower_part, poly_from_roots,
    schlesinger_transform, ExponentData, FuchsianSystem, Point, ZMatrix, ZTerm,
};
use mahler_core::rational::int;
use mahler_core::{Error, ExactMatrix, JetCtx, LocalFraction, ParamJet, Poly, Rational, Ring};
use rand_chacha::ChaCha8Rng;

type Lf = LocalFraction;

fn lf(ctx: &JetCtx, r: Rational) -> Lf {
    Lf::lift(ctx, &r)
}

fn rand_mat(g: &mut ChaCha8Rng, ctx: &JetCtx, l: usize) -> ExactMatrix<Lf> {
    let rows = (0..l).map(|_| (0..l).map(|_| lf(ctx, rand_rat(g))).collect()).collect();
    ExactMatrix::from_rows(ctx, rows).unwrap()
}

/// A jet-valued matrix with linear x-dependence.
fn rand_jet_mat(g: &mut ChaCha8Rng, ctx: &JetCtx, l: usize) -> ExactMatrix<Lf> {
    let mut rows = Vec::new();
    for _ in 0..l {
        let mut row = Vec::new();
        for _ in 0..l {
            let j = ParamJet::constant(ctx, rand_rat(g)).plus(&ParamJet::var(ctx, 0).scale(&rand_rat(g)));
            row.push(Lf::from_jet(j));
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(ctx, rows).unwrap()
}

fn rand_system(g: &mut ChaCha8Rng, ctx: &JetCtx, l: usize) -> FuchsianSystem {
    let res = (0..ctx.nvars + 2).map(|_| rand_jet_mat(g, ctx, l)).collect();
    FuchsianSystem::new(ctx, res, None).unwrap()
}

#[test]
fn point_differences() {
    let ctx = JetCtx::new(2, 6);
    let pts = [Point::One, Point::Var(0), Point::Var(1), Point::Zero];
    for a in pts {
        for b in pts {
            if a == b {
                assert!(inv_diff(&ctx, a, b).is_err());
                continue;
            }
            let d = a.value(&ctx).minus(&b.value(&ctx));
            assert_eq!(inv_diff(&ctx, a, b).unwrap().times(&d), Lf::one_in(&ctx));
        }
    }
}

#[test]
fn zmatrix_product_matches_pointwise() {
    let mut g = rng(3);
    let ctx = JetCtx::new(1, 6);
    for _ in 0..4 {
        let a = ZMatrix::simple_poles(&ctx, [(Point::One, rand_mat(&mut g, &ctx, 2)), (Point::Var(0), rand_jet_mat(&mut g, &ctx, 2)), (Point::Zero, rand_mat(&mut g, &ctx, 2))]);
        let rows = (0..2)
            .map(|_| (0..2).map(|_| Poly::new(&ctx, vec![lf(&ctx, rand_rat(&mut g)), lf(&ctx, rand_rat(&mut g)), lf(&ctx, int(-2))])).collect())
            .collect();
        let pm: ExactMatrix<Poly<Lf>> = ExactMatrix::from_rows(&ctx, rows).unwrap();
        let p = ZMatrix::from_poly_matrix(&pm);
        let b = a.add(&p).d_dz().add(&a);
        let prod = a.mul(&b).unwrap().add(&b.mul(&p).unwrap());
        for z in [int(2), int(3), r(-1, 2)] {
            let zv = lf(&ctx, z);
            let lhs = prod.eval(&zv).unwrap();
            let rhs = a.eval(&zv).unwrap().mul(&b.eval(&zv).unwrap()).unwrap().add(&b.eval(&zv).unwrap().mul(&p.eval(&zv).unwrap()).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn d_du_matches_chain_rule() {
    // d/du of 1/(z − u) is 1/(z − u)^2; coefficient x becomes −x²·1
    let ctx = JetCtx::new(1, 6);
    let x = Lf::from_jet(ParamJet::var(&ctx, 0));
    let m = ExactMatrix::from_fn(&ctx, 2, 2, |i, j| if i == j { x.clone() } else { Lf::zero_in(&ctx) });
    let z = ZMatrix::simple_poles(&ctx, [(Point::Var(0), m.clone())]);
    let d = z.d_du(0);
    assert_eq!(d.pole_coeff(Point::Var(0), 2), m);
    assert_eq!(d.pole_coeff(Point::Var(0), 1), m.map(&ctx, |e| e.times(&x).negated()));
}

#[test]
fn identity_transform_is_identity() {
    let mut g = rng(8);
    let ctx = JetCtx::new(1, 5);
    let sys = rand_system(&mut g, &ctx, 3);
    let out = schlesinger_transform(&sys, &SchlesingerMultiplier::identity(&ctx, 3)).unwrap();
    assert_eq!(out.residues(), sys.residues());
}

#[test]
fn constant_gauge_keeps_traces() {
    let mut g = rng(9);
    let ctx = JetCtx::new(1, 5);
    let sys = rand_system(&mut g, &ctx, 2);
    let c = |v: i64| Poly::constant(lf(&ctx, int(v)));
    let r = ExactMatrix::from_rows(&ctx, vec![vec![c(1), c(2)], vec![c(0), c(1)]]).unwrap();
    let rinv = ExactMatrix::from_rows(&ctx, vec![vec![c(1), c(-2)], vec![c(0), c(1)]]).unwrap();
    let mult = SchlesingerMultiplier { n: 0, r, rinv };
    let out = schlesinger_transform(&sys, &mult).unwrap();
    for i in 0..sys.residues().len() {
        assert_eq!(out.residue(i).trace(), sys.residue(i).trace());
    }
}

#[test]
fn unrelated_polynomial_multiplier_is_rejected() {
    let mut g = rng(10);
    let ctx = JetCtx::new(1, 5);
    let sys = rand_system(&mut g, &ctx, 2);
    let p = |c: &[i64]| Poly::new(&ctx, c.iter().map(|&v| lf(&ctx, int(v))).collect());
    // det = 1, inverse polynomial, but not adapted to the system at ∞
    let r = ExactMatrix::from_rows(&ctx, vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[]), p(&[1])]]).unwrap();
    let rinv = ExactMatrix::from_rows(&ctx, vec![vec![p(&[1]), p(&[0, -1])], vec![p(&[]), p(&[1])]]).unwrap();
    let mult = SchlesingerMultiplier { n: 1, r, rinv };
    assert!(matches!(schlesinger_transform(&sys, &mult), Err(Error::InvariantViolation(_))));
}

#[test]
fn deformation_matrix_shape() {
    let mut g = rng(12);
    let ctx = JetCtx::new(2, 5);
    let sys = rand_system(&mut g, &ctx, 3);
    for i in 1..=2 {
        let b = deformation_matrix(&sys, i).unwrap();
        assert_eq!(b.pole_coeff(Point::Var(i - 1), 1), sys.residue(i).negated());
        assert!(b.poly_coeff(0).is_lower_triangular());
        let x = Lf::from_jet(ParamJet::var(&ctx, i - 1));
        assert_eq!(b.poly_coeff(0), lower_part(&sys.residue(i)).scale_by(&x).negated());
    }
    assert!(deformation_matrix(&sys, 0).is_err());
    assert!(deformation_matrix(&sys, 3).is_err());
}

#[test]
fn random_system_is_not_isomonodromic() {
    let mut g = rng(13);
    let ctx = JetCtx::new(1, 5);
    let sys = rand_system(&mut g, &ctx, 2);
    let rep = compatibility_residual(&sys, 1).unwrap();
    assert!(!rep.vanishes);
    // double poles always cancel
    assert!(rep.residual.pieces().iter().all(|(t, _)| matches!(t, ZTerm::Pole(_, 1) | ZTerm::Power(_))));
}

#[test]
fn exponent_data_checks() {
    let e = vec![r(1, 4), r(1, 4)];
    assert!(matches!(ExponentData::new(e.clone(), vec![r(1, 3), r(1, 5)], vec![r(1, 3), r(1, 7)], 0), Err(Error::Parameter(_))));
    assert!(matches!(ExponentData::new(vec![r(1, 3), r(1, 4)], vec![r(1, 3), r(1, 5)], vec![r(1, 3), r(1, 5)], 0), Err(Error::Parameter(_))));
    let ex = ExponentData::new(e.clone(), vec![r(1, 3), r(1, 5)], vec![r(1, 3), r(1, 5)], 0).unwrap();
    ex.check_nonresonant().unwrap();
    let sh = ex.shifted(2);
    assert_eq!(sh.kappa, vec![r(7, 3), r(-9, 5)]);
    assert_eq!(sh.n, 2);
    let res = ExponentData::new(vec![r(-1, 4), r(3, 4)], vec![r(1, 3), r(1, 5)], vec![r(1, 3), r(1, 5)], 0).unwrap();
    assert!(res.check_nonresonant().is_err());
    let th = ExponentData::new(e, vec![int(2), int(0)], vec![int(2), int(0)], 0).unwrap();
    assert!(th.check_nonresonant().is_err());
}

#[test]
fn riemann_scheme_and_charpoly() {
    // L = 2, N = 0: A_0 = b c with c_0 = 1, A_1 = diag(e) + upper
    let ctx = JetCtx::new(0, 0);
    let e = vec![r(1, 5), r(3, 10)];
    let theta = r(2, 7);
    let (b0, c1) = (r(-1, 3), r(-2, 3));
    let b1 = (-theta.clone() - &b0) / &c1;
    assert_eq!(&b0 + &b1 * &c1, -theta.clone());
    let a0 = ExactMatrix::from_rows(&ctx, vec![vec![lf(&ctx, b0.clone()), lf(&ctx, &b0 * &c1)], vec![lf(&ctx, b1.clone()), lf(&ctx, &b1 * &c1)]]).unwrap();
    let w01 = -(&b0 * &c1);
    let a1 = ExactMatrix::from_rows(&ctx, vec![vec![lf(&ctx, e[0].clone()), lf(&ctx, w01)], vec![Lf::zero_in(&ctx), lf(&ctx, e[1].clone())]]).unwrap();
    let kappa = vec![-b0.clone(), -(&b1 * &c1)];
    let ex = ExponentData::new(e, kappa, vec![theta], 0).unwrap();
    let sys = FuchsianSystem::new(&ctx, vec![a0, a1], Some(ex.clone())).unwrap();
    assert!(sys.gauge_holds());
    sys.check_riemann_scheme().unwrap();
    assert_eq!(constant_charpoly(&sys.infinity_residue()).unwrap(), poly_from_roots(&ex.at_infinity()));
    assert_eq!(constant_charpoly(&sys.residue(0)).unwrap(), poly_from_roots(&ex.at_point(0)));
}
