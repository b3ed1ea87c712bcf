mod common;

use common::*;
use rand::Rng;
use mahler_core::fuchsian::{compatibility_residual, constant_charpoly, poly_from_roots};
use mahler_core::hypergeo::*;
use mahler_core::rational::{int, pochhammer};
use mahler_core::{Error, JetCtx, LocalFraction, ParamJet, Rational, Ring};

type Lf = LocalFraction;

const M: u32 = 6;

fn params(l: usize, n: usize, order: u32) -> HGParams {
    let alpha = [r(1, 3), r(2, 7), r(3, 8)][..l - 1].to_vec();
    let gamma = [r(5, 4), r(9, 5), r(7, 3)][..l - 1].to_vec();
    let beta = [r(3, 11), r(2, 13)][..n].to_vec();
    HGParams::new(alpha, beta, gamma, order).unwrap()
}

fn coeff(j: &ParamJet, e: &[u32]) -> Rational {
    j.coeff(e)
}

#[test]
fn pochhammer_basics() {
    assert_eq!(pochhammer(&r(1, 2), 0), int(1));
    assert_eq!(pochhammer(&r(1, 2), 3), r(15, 8));
    assert_eq!(pochhammer(&int(-2), 3), int(0));
}

#[test]
fn series_coefficients() {
    let ctx = JetCtx::new(1, 3);
    let (a, b, g) = ([r(1, 3)], [r(3, 11)], [r(5, 4)]);
    let f = f_ln_series(&ctx, &a, &b, &g).unwrap();
    assert_eq!(coeff(&f, &[0]), int(1));
    assert_eq!(coeff(&f, &[1]), r(1, 3) * r(3, 11) / r(5, 4));
    // second coefficient of 2F1
    let c2 = r(1, 3) * r(4, 3) * r(3, 11) * r(14, 11) / (r(5, 4) * r(9, 4) * int(2));
    assert_eq!(coeff(&f, &[2]), c2);

    let ctx2 = JetCtx::new(2, 3);
    let f12 = f_ln_series(&ctx2, &a, &[r(3, 11), r(2, 13)], &g).unwrap();
    let f21 = f_ln_series(&ctx2, &a, &[r(2, 13), r(3, 11)], &g).unwrap();
    for e in [[1u32, 0], [2, 1], [0, 3]] {
        assert_eq!(coeff(&f12, &e), coeff(&f21, &[e[1], e[0]]));
    }
}

#[test]
fn contiguity_relations() {
    for l in [2, 3] {
        for n in [1, 2] {
            let m = Moments::new(&params(l, n, M), 7).unwrap();
            for j in 0..6 {
                assert!(contiguity_sum_holds(&m, j).unwrap(), "sum L={l} N={n} j={j}");
                for i in 0..n {
                    for k in 0..l {
                        assert!(contiguity_shift_holds(&m, i, k, j).unwrap(), "shift L={l} N={n} i={i} k={k} j={j}");
                    }
                }
            }
        }
    }
}

#[test]
fn delta_trivial_cases() {
    let p = params(2, 1, 3);
    let m = Moments::new(&p, 4).unwrap();
    let ctx = p.jet_ctx();
    assert_eq!(m.delta(0, &[0, 0], None).unwrap(), ParamJet::one_in(&ctx));
    // a single 1×1 block is the leading moment of the second sequence
    assert_eq!(m.delta(0, &[0, 1], None).unwrap(), m.get(1, 0).unwrap());
    assert!(m.delta(0, &[0, 5], None).is_err());
}

#[test]
fn hypergeometric_solution_is_hamiltonian() {
    for l in [2, 3] {
        let sol = hgsol_build(&params(l, 1, M)).unwrap();
        assert_eq!(sol.provenance, Provenance::Hypergeometric);
        assert!(sol.q.iter().flatten().all(|q| q.vanishes()));
        let rep = hamilton_residual(&sol).unwrap();
        assert!(rep.zero_to(M - 1), "L={l}: order {} vanishes {}", rep.checked_order, rep.vanishes);
    }
}

#[test]
fn hypergeometric_solution_two_variables() {
    let sol = hgsol_build(&params(2, 2, 4)).unwrap();
    let rep = hamilton_residual(&sol).unwrap();
    assert!(rep.zero_to(3), "order {} vanishes {}", rep.checked_order, rep.vanishes);
}

#[test]
fn transformed_solution_is_hamiltonian() {
    for l in [2, 3] {
        let sol = hgi_build(&params(l, 1, M), 1).unwrap();
        let rep = hamilton_residual(&sol).unwrap();
        assert!(rep.zero_to(M - 1), "L={l}: order {} vanishes {}", rep.checked_order, rep.vanishes);
    }
}

#[test]
fn perturbed_solution_fails() {
    let p = params(2, 1, M);
    let mut sol = hgi_build(&p, 1).unwrap();
    let ctx = sol.p[0][0].ctx();
    sol.p[0][0] = sol.p[0][0].plus(&Lf::from_jet(ParamJet::var(&ctx, 0)));
    let rep = hamilton_residual(&sol).unwrap();
    assert!(!rep.vanishes);
}

#[test]
fn qp_expressions_agree() {
    for (l, n) in [(2, 1), (3, 1), (2, 2)] {
        let (h, a) = qp_forms(&params(l, 1, M), n).unwrap();
        assert_eq!(h, a, "L={l} n={n}");
    }
}

#[test]
fn c_hat_matches_matrix_path() {
    for l in [2, 3] {
        let p = params(l, 1, M);
        let dp = DeltaPath::new(&p, 1).unwrap();
        let mp = matrix_path(&p, 1).unwrap();
        let (_, c0) = rank_one_factors(&mp.transformed, 0).unwrap();
        let (_, c1) = rank_one_factors(&mp.transformed, 1).unwrap();
        for k in 1..l {
            assert_eq!(c0[k], Lf::from_jet(dp.c_hat_zero(k - 1).unwrap()), "L={l} c^(0)_{k}");
            assert_eq!(c1[k], Lf::from_jet(dp.c_hat(0, k - 1).unwrap()), "L={l} c^(1)_{k}");
        }
        let from_matrix = canonical_from_system(&mp.transformed, M, Provenance::MatrixPath { n: 1 }).unwrap();
        let from_delta = hgi_build(&p, 1).unwrap();
        assert_eq!(from_matrix.q, from_delta.q);
        assert_eq!(from_matrix.p, from_delta.p);
    }
}

#[test]
fn diagonal_difference() {
    for l in [2, 3] {
        let p = params(l, 1, M);
        let dp = DeltaPath::new(&p, 1).unwrap();
        let mp = matrix_path(&p, 1).unwrap();
        let want = dp.dhat_diagonal(0).unwrap();
        let (a, ahat) = (mp.original.residue(1), mp.transformed.residue(1));
        for k in 0..l {
            let got = ahat.get(k, k).minus(a.get(k, k));
            assert_eq!(got, Lf::from_jet(want[k].clone()), "L={l} k={k}");
        }
    }
}

#[test]
fn exponent_shift_at_infinity() {
    for l in [2, 3] {
        let p = params(l, 1, 3);
        let mp = matrix_path(&p, 1).unwrap();
        let ex = p.exponent_data(0).unwrap();
        let before = constant_charpoly(&mp.original.infinity_residue()).unwrap();
        assert_eq!(before, poly_from_roots(&ex.at_infinity()));
        let after = constant_charpoly(&mp.transformed.infinity_residue()).unwrap();
        assert_eq!(after, poly_from_roots(&ex.shifted(1).at_infinity()), "L={l}");
        assert_ne!(before, after);
    }
}

#[test]
fn exponent_data_shift_is_consistent() {
    let p = params(3, 2, 2);
    for n in 0..3 {
        assert_eq!(p.exponent_data(0).unwrap().shifted(n), p.exponent_data(n).unwrap());
        let (back, nn) = HGParams::from_exponents(&p.exponent_data(n).unwrap(), 2).unwrap();
        assert_eq!((back, nn), (p.clone(), n));
    }
}

#[test]
fn schlesinger_compatibility_on_specialization() {
    let p = params(2, 1, M);
    let sys = hgsol_system(&p).unwrap();
    let rep = compatibility_residual(&sys, 1).unwrap();
    assert!(rep.vanishes && rep.checked_order >= M - 1, "order {}", rep.checked_order);
}

#[test]
fn hamiltonian_structure() {
    let p = params(2, 1, 4);
    let ex = p.exponent_data(0).unwrap();
    let h = hamiltonian(&ex, &p.jet_ctx(), 1).unwrap();
    assert_eq!(h.degree(), Some(5));
    assert!(hamiltonian(&ex, &p.jet_ctx(), 2).is_err());
}

#[test]
fn vandermonde_small_cases() {
    let mu = DiscreteMeasure::new(vec![(r(1, 2), r(3, 1)), (r(-2, 1), r(1, 5))]);
    let nu = DiscreteMeasure::new(vec![(r(1, 3), r(2, 1)), (r(4, 1), r(-1, 2))]);
    let ms = [mu.clone(), nu.clone()];
    let rep = vandermonde_oracle(&ms, 0, &[0, 0]).unwrap();
    assert!(rep.equal && rep.determinant == int(1));
    let rep = vandermonde_oracle(&ms, 0, &[0, 1]).unwrap();
    assert!(rep.equal);
    assert_eq!(rep.determinant, nu.moment(0));
    let single = DiscreteMeasure::new(vec![(r(1, 2), r(1, 1))]);
    let err = vandermonde_oracle(&[mu, single], 1, &[1, 2]).unwrap_err();
    assert!(matches!(err, Error::DegenerateMeasure(_)));
}

#[test]
fn vandermonde_random() {
    let mut g = rng(11);
    for _ in 0..12 {
        let l = 2 + g.gen_range(0..2usize);
        let mut n: Vec<usize> = (0..l).map(|_| g.gen_range(0..3usize)).collect();
        while n.iter().sum::<usize>() > 5 {
            let idx = n.iter().position(|&x| x > 0).unwrap();
            n[idx] -= 1;
        }
        let ms: Vec<DiscreteMeasure> = (0..l)
            .map(|_| DiscreteMeasure::new((0..3).map(|t| (int(t) + rand_rat(&mut g) * r(1, 100), rand_nonzero(&mut g))).collect()))
            .collect();
        let k = g.gen_range(0..=l);
        let rep = vandermonde_oracle(&ms, k, &n).unwrap();
        assert!(rep.equal, "L={l} k={k} n={n:?}");
    }
    let ms: Vec<DiscreteMeasure> = (0..3)
        .map(|a| DiscreteMeasure::new((0..4).map(|t| (int(t + 5 * a), rand_nonzero(&mut g))).collect()))
        .collect();
    assert!(vandermonde_oracle(&ms, 2, &[1, 2, 1]).unwrap().equal);
}
