mod common;

use common::*;
use mahler_core::duality::{build_multiplier, build_r, degree_bounds_hold, exponent_shift_check, product_matrix, verify_duality};
use mahler_core::rational::int;
use mahler_core::toeplitz::{block_toeplitz_delta, shorthand_delta, MomentTable};
use mahler_core::type1::*;
use mahler_core::type2::*;
use mahler_core::{Error, ExactMatrix, Poly, Rational, Ring};

fn worked_example() -> TypeIProblem<Rational> {
    let k = 8;
    TypeIProblem::new(vec![series(&[int(1)], k), geometric(k)], 1).unwrap()
}

#[test]
fn type_one_worked_rows() {
    let p = worked_example();
    let r0 = solve_type_i(&p, 0).unwrap();
    assert_eq!(r0.q_tilde, vec![poly(&[0, 1]), poly(&[0, -1])]);
    assert_eq!(*r0.remainder.coeff(1), int(0));
    for k in 2..=8 {
        assert_eq!(*r0.remainder.coeff(k), int(-1));
    }
    let r1 = solve_type_i(&p, 1).unwrap();
    assert_eq!(r1.q_tilde, vec![poly(&[1]), poly(&[-1, 1])]);
    assert!(r1.remainder.is_big_o(9));
}

#[test]
fn type_one_determinantal_forms_on_worked_example() {
    let p = worked_example();
    for i in 0..2 {
        let row = solve_type_i(&p, i).unwrap();
        for j in 0..2 {
            assert_eq!(det_rep_q(&p, i, j).unwrap(), row.q[j]);
        }
    }
    assert_eq!(remainder_leading(&p, 0).unwrap(), int(-1));
    assert_eq!(remainder_leading(&p, 1).unwrap(), int(0));
    assert_eq!(remainder_leading_delta(&p).unwrap(), int(-1));
    assert_eq!(diag_constant_term(&p, 1).unwrap(), int(-1));
    assert_eq!(diag_constant_term_delta(&p, 1).unwrap(), int(-1));
}

#[test]
fn type_two_worked_columns() {
    let p = worked_example();
    let c0 = solve_type_ii(&p, 0).unwrap();
    assert_eq!(c0.p_tilde, vec![poly(&[-1, 1]), poly(&[-1])]);
    let c1 = solve_type_ii(&p, 1).unwrap();
    assert_eq!(c1.p_tilde, vec![poly(&[0, 1]), poly(&[0, 1])]);
    assert_eq!(det_rep_p0(&p, 0).unwrap(), poly(&[-1, 1]));
    assert_eq!(det_rep_p0(&p, 1).unwrap(), poly(&[1]));
}

#[test]
fn duality_worked_example() {
    let p = worked_example();
    let q = solve_type_i_all(&p).unwrap();
    let s = solve_type_ii_all(&p).unwrap();
    let d = verify_duality(&q, &s).unwrap();
    assert_eq!(d, ExactMatrix::identity(&(), 2));
    assert!(degree_bounds_hold(&product_matrix(&q, &s).unwrap(), 1));
    let m = build_multiplier(&q, &s).unwrap();
    let expect_r = ExactMatrix::from_rows(&(), vec![vec![poly(&[1]), poly(&[-1])], vec![poly(&[0, 1]), poly(&[1, -1])]]).unwrap();
    assert_eq!(m.r, expect_r);
    let expect_rinv = ExactMatrix::from_rows(&(), vec![vec![poly(&[1, -1]), poly(&[1])], vec![poly(&[0, -1]), poly(&[1])]]).unwrap();
    assert_eq!(m.rinv, expect_rinv);
    assert_eq!(m.r.det().unwrap(), Poly::one_in(&()));
    assert_eq!(m.r.adjugate().unwrap(), m.rinv);
    let rep = exponent_shift_check(&m, p.f()).unwrap();
    assert!(rep.contact && rep.shape);
    assert_eq!(build_r(&q).unwrap(), m.r);
}

#[test]
fn random_instances_agree_across_paths() {
    let mut g = rng(7);
    for (l, n) in [(3, 2), (3, 1), (2, 2), (4, 1)] {
        let k = n * l + n + 2;
        let p = TypeIProblem::new(rand_f(&mut g, l, k, true), n).unwrap();
        let q = solve_type_i_all(&p).unwrap();
        let s = solve_type_ii_all(&p).unwrap();
        assert_eq!(verify_duality(&q, &s).unwrap(), ExactMatrix::identity(&(), l));
        for i in 0..l {
            assert_eq!(q.rows[i].q[i].degree(), Some(n));
            for j in 0..l {
                assert_eq!(det_rep_q(&p, i, j).unwrap(), q.rows[i].q[j]);
            }
            assert_eq!(remainder_leading(&p, i).unwrap(), q.rows[i].remainder.coeff(n * l).clone());
            assert_eq!(nq(&p, i).unwrap(), nq_delta(&p, i).unwrap());
            if i > 0 {
                assert_eq!(diag_constant_term(&p, i).unwrap(), diag_constant_term_delta(&p, i).unwrap());
                assert_eq!(diag_constant_term(&p, i).unwrap(), q.rows[i].q[i].coeff(0));
            }
        }
        assert_eq!(remainder_leading_delta(&p).unwrap(), remainder_leading(&p, 0).unwrap());
        assert_eq!(q.rows[0].q[0].coeff(0), int(0));
        for j in 0..l {
            assert_eq!(s.cols[j].p[j].degree(), Some(n * (l - 1)));
            assert!(s.cols[j].p[j].is_monic());
            assert_eq!(det_rep_p0(&p, j).unwrap(), s.cols[j].p[0]);
            assert_eq!(np_bordered(&p, j).unwrap(), np_delta(&p, j).unwrap());
            for i in j..l {
                if j == 0 {
                    break;
                }
                assert_eq!(s.cols[j].p[i].coeff(0), int(0));
            }
        }
        let m = build_multiplier(&q, &s).unwrap();
        assert_eq!(m.r.adjugate().unwrap(), m.rinv);
        exponent_shift_check(&m, p.f()).unwrap();
    }
}

#[test]
fn shorthand_delta_matches_general_block_form() {
    let mut g = rng(11);
    for (l, n) in [(2, 1), (3, 1), (3, 2), (4, 1)] {
        let f = rand_f(&mut g, l, 3 * n * l, true);
        let t = MomentTable::from_series(&f).unwrap();
        let mut nv = vec![n; l];
        nv[0] = 0;
        for k in 1..=l {
            assert_eq!(shorthand_delta(&t, n, k).unwrap(), block_toeplitz_delta(&t, k, &nv).unwrap());
        }
    }
}

#[test]
fn rank_deficiency_is_non_generic() {
    let k = 8;
    let p = TypeIProblem::new(vec![series(&[int(1)], k), series(&[int(1)], k)], 1).unwrap();
    assert!(matches!(solve_type_i_all(&p), Err(Error::NonGeneric(_))));
}

#[test]
fn short_series_is_a_usage_error() {
    let p = TypeIProblem::new(vec![series(&[int(1)], 2), geometric(2)], 1);
    assert!(matches!(p, Err(Error::Usage(_))));
    let z = TypeIProblem::new(vec![series(&[int(0), int(1)], 8), geometric(8)], 1);
    assert!(matches!(z, Err(Error::Singular(_))));
}
