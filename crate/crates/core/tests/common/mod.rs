#![allow(dead_code)]

use mahler_core::rational::{frac, int};
use mahler_core::{Poly, Rational, TruncatedSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(n: i64, d: i64) -> Rational {
    frac(n, d)
}

pub fn rand_rat(g: &mut ChaCha8Rng) -> Rational {
    frac(g.gen_range(-9..=9), g.gen_range(1..=5))
}

pub fn rand_nonzero(g: &mut ChaCha8Rng) -> Rational {
    loop {
        let v = rand_rat(g);
        if v != int(0) {
            return v;
        }
    }
}

pub fn series(c: &[Rational], order: usize) -> TruncatedSeries<Rational> {
    TruncatedSeries::from_slice('w', &(), c, order)
}

pub fn rand_series(g: &mut ChaCha8Rng, order: usize) -> TruncatedSeries<Rational> {
    let c: Vec<Rational> = (0..=order).map(|_| rand_rat(g)).collect();
    series(&c, order)
}

/// Random vector with f_0 = 1 and nonzero constant terms elsewhere.
pub fn rand_f(g: &mut ChaCha8Rng, l: usize, order: usize, f0_one: bool) -> Vec<TruncatedSeries<Rational>> {
    (0..l)
        .map(|i| {
            if i == 0 && f0_one {
                series(&[int(1)], order)
            } else {
                let mut c: Vec<Rational> = (0..=order).map(|_| rand_rat(g)).collect();
                c[0] = rand_nonzero(g);
                series(&c, order)
            }
        })
        .collect()
}

pub fn geometric(order: usize) -> TruncatedSeries<Rational> {
    series(&vec![int(1); order + 1], order)
}

pub fn poly(c: &[i64]) -> Poly<Rational> {
    Poly::new(&(), c.iter().map(|&v| int(v)).collect())
}
