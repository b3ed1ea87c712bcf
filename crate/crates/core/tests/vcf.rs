mod common;

use common::*;
use mahler_core::rational::int;
use mahler_core::vcf::{convergent, expand, inverse_step, phis, reciprocal_iota, schlesinger_equivalence, vcf_step, VcfState};
use mahler_core::{Error, ExactMatrix, Poly, Rational, TruncatedSeries};

fn worked() -> Vec<TruncatedSeries<Rational>> {
    vec![series(&[int(1)], 8), geometric(8)]
}

#[test]
fn iota_definition_and_cycle() {
    let mut g = rng(11);
    let a = rand_f(&mut g, 2, 6, false);
    let out = reciprocal_iota(&a).unwrap();
    let inv = a[0].reciprocal().unwrap();
    assert_eq!(out[0], a[1].mul(&inv).unwrap());
    assert_eq!(out[1], inv);

    let ones = vec![series(&[int(1)], 5), series(&[int(1)], 5)];
    assert_eq!(reciprocal_iota(&ones).unwrap(), ones);

    for l in 2..=4 {
        for _ in 0..5 {
            let phi = rand_f(&mut g, l - 1, 6, false);
            let mut v = phi.clone();
            for _ in 0..l {
                v = reciprocal_iota(&v).unwrap();
            }
            assert_eq!(v, phi);
        }
    }
    let zero = vec![series(&[int(0), int(1)], 3)];
    assert!(matches!(reciprocal_iota(&zero), Err(Error::Singular(_))));
}

#[test]
fn worked_step() {
    let s = VcfState::new(worked()).unwrap();
    let (t, next) = vcf_step(&s).unwrap();
    assert_eq!(t.w_times, ExactMatrix::from_rows(&(), vec![vec![poly(&[]), poly(&[0, 1])], vec![poly(&[1]), poly(&[-1])]]).unwrap());
    assert_eq!(next.f[0], geometric(7));
    assert_eq!(next.f[1], geometric(7).negated());
    assert!(t.det_is_canonical().unwrap());
}

#[test]
fn worked_convergents() {
    let f = worked();
    let c1 = convergent(&f, 1).unwrap();
    assert_eq!(c1.numerators, vec![c1.denominator.clone()]);
    let c2 = convergent(&f, 2).unwrap();
    // 1/(1−w) up to a common scalar
    let lead = c2.numerators[0].coeff(0);
    assert_eq!(c2.numerators[0], poly(&[1]).scale_by(&lead));
    assert_eq!(c2.denominator, poly(&[1, -1]).scale_by(&lead));
    assert_eq!(c2.contact_order(&phis(&f).unwrap()).unwrap(), 9);
}

#[test]
fn worked_equivalence() {
    let rep = schlesinger_equivalence(&worked()).unwrap();
    assert!(rep.shape_ok && rep.matches_type_one);
    assert_eq!(rep.product, ExactMatrix::from_rows(&(), vec![vec![poly(&[0, 1]), poly(&[0, -1])], vec![poly(&[1]), poly(&[-1, 1])]]).unwrap());
}

#[test]
fn breakdown_reports_index() {
    let f = vec![series(&[int(1)], 4), series(&[int(0), int(1)], 4)];
    assert_eq!(VcfState::new(f).unwrap_err(), Error::Breakdown { step: 0, index: 1 });
    // f = (1, 1 + w²): f[1] = (1 + w², −w), second entry vanishes at 0
    let f = vec![series(&[int(1)], 4), series(&[int(1), int(0), int(1)], 4)];
    let s = VcfState::new(f).unwrap();
    assert_eq!(vcf_step(&s).unwrap_err(), Error::Breakdown { step: 1, index: 1 });
}

#[test]
fn random_steps() {
    let mut g = rng(5);
    let mut done = 0;
    while done < 20 {
        let l = 2 + done % 2;
        let f = rand_f(&mut g, l, 12, false);
        let Ok((steps, states)) = expand(f.clone(), 6) else { continue };
        for (t, s) in steps.iter().zip(&states) {
            assert!(t.det_is_canonical().unwrap());
            // T^{-1} T = I, with w·T stored
            let prod = inverse_step(&s.a).mul(&t.w_times).unwrap();
            let w = Poly::monomial(int(1), 1);
            assert_eq!(prod, ExactMatrix::<Poly<Rational>>::identity(&(), l).map(&(), |e: &Poly<Rational>| e.mul(&w)));
        }
        let phi = phis(&f).unwrap();
        for k in 0..=6 {
            let c = convergent(&f, k).unwrap();
            assert!(c.contact_order(&phi).unwrap() >= k);
        }
        schlesinger_equivalence(&f).unwrap();
        done += 1;
    }
}
