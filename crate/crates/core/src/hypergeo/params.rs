use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{bail, Result};
use crate::fuchsian::ExponentData;
use crate::jet::JetCtx;
use crate::rational::{frac, int, is_nonpositive_integer, Rational};

/// Parameters (α, β, γ) of F_{L,N} and the jet order of the x-expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct HGParams {
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub gamma: Vec<Rational>,
    pub order: u32,
}

impl HGParams {
    pub fn new(alpha: Vec<Rational>, beta: Vec<Rational>, gamma: Vec<Rational>, order: u32) -> Result<Self> {
        if alpha.is_empty() || alpha.len() != gamma.len() {
            bail!(Usage, "alpha and gamma need the same length L - 1 >= 1");
        }
        if beta.is_empty() {
            bail!(Usage, "need at least one beta (N >= 1)");
        }
        for (l, g) in gamma.iter().enumerate() {
            if is_nonpositive_integer(g) {
                bail!(Parameter, "gamma_{} = {g} is a nonpositive integer", l + 1);
            }
        }
        for (l, a) in alpha.iter().enumerate() {
            if a.is_zero() || (&gamma[l] - a).is_zero() {
                bail!(Parameter, "alpha_{} and gamma_{0} - alpha_{0} must be nonzero", l + 1);
            }
        }
        Ok(HGParams { alpha, beta, gamma, order })
    }

    /// Parameters realizing the given exponents; n = (κ_0 − Σθ_i)/(L−1).
    pub fn from_exponents(ex: &ExponentData, order: u32) -> Result<(Self, usize)> {
        let l = ex.l();
        let theta_sum: Rational = ex.theta[1..].iter().sum();
        let n = (&ex.kappa[0] - theta_sum) / int(l as i64 - 1);
        if !n.is_integer() || n < int(0) {
            bail!(Usage, "kappa_0 - sum theta_i = {} is not a nonnegative multiple of L - 1", &n * int(l as i64 - 1));
        }
        let nn = n.to_integer();
        let alpha: Vec<Rational> = (1..l).map(|k| &ex.e[k] - &ex.e[0]).collect();
        let beta = ex.theta[1..].iter().map(|t| -t.clone()).collect();
        let gamma = (1..l).map(|k| &alpha[k - 1] - &ex.kappa[k] - &n).collect();
        let p = HGParams::new(alpha, beta, gamma, order)?;
        let usize_n = usize::try_from(nn).map_err(|_| crate::Error::Usage("shift too large".into()))?;
        Ok((p, usize_n))
    }

    pub fn l(&self) -> usize {
        self.alpha.len() + 1
    }

    pub fn n_vars(&self) -> usize {
        self.beta.len()
    }

    pub fn jet_ctx(&self) -> JetCtx {
        JetCtx::new(self.n_vars(), self.order)
    }

    pub fn with_order(&self, order: u32) -> Self {
        HGParams { order, ..self.clone() }
    }

    /// (e, κ, θ) after the shift by n: θ_i = −β_i, e_k − e_0 = α_k,
    /// Σe = (L−1)/2, κ_k = α_k − γ_k − n and κ_0 = Σθ_i + n(L−1).
    pub fn exponent_data(&self, n: usize) -> Result<ExponentData> {
        let l = self.l() as i64;
        let n = n as i64;
        let theta_tail: Vec<Rational> = self.beta.iter().map(|b| -b.clone()).collect();
        let alpha_sum: Rational = self.alpha.iter().sum();
        let e0 = (frac(l - 1, 2) - alpha_sum) / int(l);
        let mut e = alloc::vec![e0.clone()];
        e.extend(self.alpha.iter().map(|a| &e0 + a));
        let tail_sum: Rational = theta_tail.iter().sum();
        let mut kappa = alloc::vec![&tail_sum + int(n * (l - 1))];
        kappa.extend(self.alpha.iter().zip(&self.gamma).map(|(a, g)| a - g - int(n)));
        // θ_0 from the Fuchs relation
        let kappa_sum: Rational = kappa.iter().sum();
        let mut theta = alloc::vec![kappa_sum - tail_sum];
        theta.extend(theta_tail);
        ExponentData::new(e, kappa, theta, n)
    }
}
