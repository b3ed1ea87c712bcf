use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{bail, Result};
use crate::rational::{factorial, Rational};
use crate::toeplitz::{block_toeplitz_delta, MomentTable};

/// Finitely supported measure Σ ω δ_s.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure {
    pub points: Vec<(Rational, Rational)>,
}

impl DiscreteMeasure {
    pub fn new(points: Vec<(Rational, Rational)>) -> Self {
        DiscreteMeasure { points }
    }

    /// h_j = Σ ω s^j.
    pub fn moment(&self, j: usize) -> Rational {
        self.points.iter().map(|(s, w)| w * num_traits::pow(s.clone(), j)).sum()
    }

    fn distinct_support(&self) -> usize {
        let mut s: Vec<&Rational> = self.points.iter().filter(|(_, w)| !w.is_zero()).map(|(s, _)| s).collect();
        s.sort();
        s.dedup();
        s.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    /// Δ^(k)(n) from the moments.
    pub determinant: Rational,
    /// The symmetrized Vandermonde sum.
    pub symmetrized: Rational,
    pub equal: bool,
}

/// Δ^(k)(n) against Π 1/n_a! Σ (Π_{a<k} s) · V_full · Π_a V_a · Π ω.
pub fn vandermonde_oracle(measures: &[DiscreteMeasure], k: usize, n: &[usize]) -> Result<OracleReport> {
    let l = measures.len();
    if l < 2 || n.len() != l || k > l {
        bail!(Usage, "need L >= 2 measures, an n-vector of length L and k <= L");
    }
    for (a, (m, &na)) in measures.iter().zip(n).enumerate() {
        if m.distinct_support() < na {
            bail!(DegenerateMeasure, "measure {a} has fewer than {na} support points");
        }
    }
    let total: usize = n.iter().sum();
    let depth = total + n.iter().max().copied().unwrap_or(0) + 1;
    let seqs = measures.iter().map(|m| (0..depth).map(|j| m.moment(j)).collect()).collect();
    let table = MomentTable::new(&(), seqs)?;
    let determinant = block_toeplitz_delta(&table, k, n)?;

    let slots: Vec<usize> = n.iter().enumerate().flat_map(|(a, &na)| core::iter::repeat_n(a, na)).collect();
    let mut choice = alloc::vec![0usize; slots.len()];
    let mut sum = Rational::zero();
    loop {
        let s: Vec<&(Rational, Rational)> = slots.iter().zip(&choice).map(|(&a, &c)| &measures[a].points[c]).collect();
        let mut t = Rational::one();
        for (idx, &a) in slots.iter().enumerate() {
            t *= &s[idx].1;
            if a < k {
                t *= &s[idx].0;
            }
        }
        // slots are listed in the order (a, b), so idx > jdx means (a,b) > (c,d)
        for idx in 0..slots.len() {
            for jdx in 0..idx {
                t *= &s[idx].0 - &s[jdx].0;
                if slots[idx] == slots[jdx] {
                    t *= &s[jdx].0 - &s[idx].0;
                }
            }
        }
        sum += t;
        let mut pos = 0;
        loop {
            if pos == slots.len() {
                let mut norm = Rational::one();
                for &na in n {
                    norm *= factorial(na);
                }
                let symmetrized = sum / norm;
                let equal = symmetrized == determinant;
                return Ok(OracleReport { determinant, symmetrized, equal });
            }
            choice[pos] += 1;
            if choice[pos] < measures[slots[pos]].points.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
