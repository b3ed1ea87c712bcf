//! Fuchsian systems with poles at 1, 1/x_1, …, 1/x_N, 0 and ∞, their
//! Schlesinger transforms and the isomonodromy residual.
//!
//! Coefficients live in [`LocalFraction`]; z-dependence is kept as partial
//! fractions over the finite poles plus a polynomial part.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::duality::SchlesingerMultiplier;
use crate::error::{bail, Result};
use crate::jet::{JetCtx, ParamJet};
use crate::local::{Factor, LocalFraction};
use crate::matrix::ExactMatrix;
use crate::poly::Poly;
use crate::rational::{frac, int, Rational};
use crate::ring::Ring;

type Lf = LocalFraction;
type Mat = ExactMatrix<Lf>;

/// Finite singular point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    /// u_0 = 1.
    One,
    /// u_i = 1/x_i, holding the jet variable index i − 1.
    Var(usize),
    /// u_{N+1} = 0.
    Zero,
}

impl Point {
    pub fn value(&self, ctx: &JetCtx) -> Lf {
        match *self {
            Point::One => Lf::one_in(ctx),
            Point::Var(v) => Lf::inv_var(ctx, v),
            Point::Zero => Lf::zero_in(ctx),
        }
    }
}

/// 1/(a − b) for distinct points.
pub fn inv_diff(ctx: &JetCtx, a: Point, b: Point) -> Result<Lf> {
    let x = |v| ParamJet::var(ctx, v);
    let one = ParamJet::one_in(ctx);
    Ok(match (a, b) {
        (Point::One, Point::Zero) => Lf::one_in(ctx),
        (Point::Zero, Point::One) => Lf::one_in(ctx).negated(),
        (Point::Zero, Point::Var(v)) => Lf::from_jet(x(v).negated()),
        (Point::Var(v), Point::Zero) => Lf::from_jet(x(v)),
        // 1 − 1/x = (x − 1)/x
        (Point::One, Point::Var(v)) => Lf::new(x(v), [(Factor::Unit(x(v).minus(&one)), 1)])?,
        (Point::Var(v), Point::One) => Lf::new(x(v).negated(), [(Factor::Unit(x(v).minus(&one)), 1)])?,
        // 1/x_a − 1/x_b = (x_b − x_a)/(x_a x_b)
        (Point::Var(p), Point::Var(q)) if p != q => Lf::new(x(p).mul(&x(q)), [(Factor::Diff(q, p), 1)])?,
        _ => bail!(Usage, "inv_diff needs two distinct points"),
    })
}

fn binom(m: usize, r: usize) -> Rational {
    let mut c = int(1);
    for t in 0..r {
        c *= frac((m - t) as i64, (t + 1) as i64);
    }
    c
}

/// Term of a partial-fraction expansion in z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Term {
    Pole(Point, u32),
    Pow(usize),
}

/// 1/((z−a)^p (z−b)^q) in partial fractions.
fn two_poles(ctx: &JetCtx, a: Point, p: u32, b: Point, q: u32, c: &Lf) -> Vec<(Term, Lf)> {
    if q == 0 {
        return alloc::vec![(Term::Pole(a, p), Lf::one_in(ctx))];
    }
    if p == 0 {
        return alloc::vec![(Term::Pole(b, q), Lf::one_in(ctx))];
    }
    let mut out: Vec<(Term, Lf)> = two_poles(ctx, a, p, b, q - 1, c).into_iter().map(|(t, v)| (t, v.times(c))).collect();
    out.extend(two_poles(ctx, a, p - 1, b, q, c).into_iter().map(|(t, v)| (t, v.times(c).negated())));
    out
}

/// z^m/(z−a)^k in partial fractions.
fn pole_times_pow(ctx: &JetCtx, a: Point, k: u32, m: usize) -> Vec<(Term, Lf)> {
    let av = a.value(ctx);
    let mut out = Vec::new();
    for r in 0..=m {
        let c = av.pow(m - r).scale(&binom(m, r));
        if (r as u32) < k {
            out.push((Term::Pole(a, k - r as u32), c));
        } else {
            let s = r - k as usize;
            for t in 0..=s {
                let d = av.negated().pow(s - t).scale(&binom(s, t));
                out.push((Term::Pow(t), c.times(&d)));
            }
        }
    }
    out
}

/// L×L matrix function of z: Σ M_{p,k}/(z−u_p)^k + Σ P_m z^m.
#[derive(Clone, Debug)]
pub struct ZMatrix {
    l: usize,
    ctx: JetCtx,
    terms: BTreeMap<Term, Mat>,
}

impl ZMatrix {
    pub fn zero(ctx: &JetCtx, l: usize) -> Self {
        ZMatrix { l, ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn simple_poles(ctx: &JetCtx, poles: impl IntoIterator<Item = (Point, Mat)>) -> Self {
        let mut z = ZMatrix::zero(ctx, 0);
        for (p, m) in poles {
            z.l = m.rows();
            z.accumulate(Term::Pole(p, 1), m);
        }
        z
    }

    pub fn from_poly_matrix(m: &ExactMatrix<Poly<Lf>>) -> Self {
        let ctx = m.ctx().clone();
        let deg = m.entries().iter().filter_map(|p| p.degree()).max();
        let mut z = ZMatrix::zero(&ctx, m.rows());
        if let Some(d) = deg {
            for k in 0..=d {
                z.accumulate(Term::Pow(k), m.map(&ctx, |p| p.coeff(k)));
            }
        }
        z
    }

    fn accumulate(&mut self, t: Term, m: Mat) {
        match self.terms.get_mut(&t) {
            Some(old) => *old = old.add(&m).expect("same shape"),
            None => {
                self.terms.insert(t, m);
            }
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Coefficient of 1/(z−u_p)^k.
    pub fn pole_coeff(&self, p: Point, k: u32) -> Mat {
        self.get(Term::Pole(p, k))
    }

    /// Coefficient of z^m.
    pub fn poly_coeff(&self, m: usize) -> Mat {
        self.get(Term::Pow(m))
    }

    fn get(&self, t: Term) -> Mat {
        self.terms.get(&t).cloned().unwrap_or_else(|| Mat::zeros(&self.ctx, self.l, self.l))
    }

    /// Nonzero pieces, labelled for reporting.
    pub fn pieces(&self) -> Vec<(ZTerm, Mat)> {
        self.terms
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(t, m)| {
                let label = match *t {
                    Term::Pole(p, k) => ZTerm::Pole(p, k),
                    Term::Pow(m) => ZTerm::Power(m),
                };
                (label, m.clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|m| m.is_zero())
    }

    /// No polynomial part and no poles of order above one.
    pub fn is_simple_fuchsian(&self) -> bool {
        self.terms.iter().all(|(t, m)| matches!(t, Term::Pole(_, 1)) || m.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.l = r.l.max(o.l);
        for (t, m) in &o.terms {
            r.accumulate(*t, m.clone());
        }
        r
    }

    pub fn negated(&self) -> Self {
        ZMatrix { l: self.l, ctx: self.ctx.clone(), terms: self.terms.iter().map(|(t, m)| (*t, m.negated())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.negated())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut r = ZMatrix::zero(&self.ctx, self.l.max(o.l));
        for (ta, ma) in &self.terms {
            for (tb, mb) in &o.terms {
                let prod = ma.mul(mb)?;
                for (t, c) in self.term_product(*ta, *tb)? {
                    r.accumulate(t, prod.scale_by(&c));
                }
            }
        }
        Ok(r)
    }

    fn term_product(&self, a: Term, b: Term) -> Result<Vec<(Term, Lf)>> {
        let ctx = &self.ctx;
        Ok(match (a, b) {
            (Term::Pow(m), Term::Pow(k)) => alloc::vec![(Term::Pow(m + k), Lf::one_in(ctx))],
            (Term::Pole(p, k), Term::Pow(m)) | (Term::Pow(m), Term::Pole(p, k)) => pole_times_pow(ctx, p, k, m),
            (Term::Pole(p, k), Term::Pole(q, j)) if p == q => alloc::vec![(Term::Pole(p, k + j), Lf::one_in(ctx))],
            (Term::Pole(p, k), Term::Pole(q, j)) => two_poles(ctx, p, k, q, j, &inv_diff(ctx, p, q)?),
        })
    }

    pub fn commutator(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(o)?.sub(&o.mul(self)?))
    }

    pub fn d_dz(&self) -> Self {
        let mut r = ZMatrix::zero(&self.ctx, self.l);
        for (t, m) in &self.terms {
            match *t {
                Term::Pole(p, k) => r.accumulate(Term::Pole(p, k + 1), m.scale_by(&Lf::lift(&self.ctx, &int(-(k as i64))))),
                Term::Pow(0) => {}
                Term::Pow(k) => r.accumulate(Term::Pow(k - 1), m.scale_by(&Lf::lift(&self.ctx, &int(k as i64)))),
            }
        }
        r
    }

    /// ∂/∂u_i with u_i = 1/x_i, i.e. −x_i² ∂/∂x_i on coefficients plus
    /// the motion of the pole u_i.
    pub fn d_du(&self, v: usize) -> Self {
        let mut r = ZMatrix::zero(&self.ctx, self.l);
        for (t, m) in &self.terms {
            r.accumulate(*t, m.map(&self.ctx, |e| d_du_scalar(e, v)));
            if let Term::Pole(Point::Var(w), k) = *t {
                if w == v {
                    r.accumulate(Term::Pole(Point::Var(w), k + 1), m.scale_by(&Lf::lift(&self.ctx, &int(k as i64))));
                }
            }
        }
        r
    }

    pub fn ctx(&self) -> &JetCtx {
        &self.ctx
    }

    /// Value at a point z away from the poles.
    pub fn eval(&self, z: &Lf) -> Result<Mat> {
        let mut out = Mat::zeros(&self.ctx, self.l, self.l);
        for (t, m) in &self.terms {
            let c = match *t {
                Term::Pow(k) => z.pow(k),
                Term::Pole(p, k) => match z.minus(&p.value(&self.ctx)).inverse() {
                    Some(v) => v.pow(k as usize),
                    None => bail!(Singular, "z - u is not invertible"),
                },
            };
            out = out.add(&m.scale_by(&c))?;
        }
        Ok(out)
    }
}

/// Public label of a [`ZMatrix`] piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZTerm {
    Pole(Point, u32),
    Power(usize),
}

/// −x² ∂/∂x applied to a coefficient.
pub fn d_du_scalar(e: &Lf, v: usize) -> Lf {
    let ctx = e.ctx();
    let x = Lf::from_jet(ParamJet::var(&ctx, v));
    e.partial(v).times(&x).times(&x).negated()
}

/// Constant parameters (e, κ, θ) and the shift already applied at ∞.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentData {
    pub e: Vec<Rational>,
    pub kappa: Vec<Rational>,
    pub theta: Vec<Rational>,
    pub n: i64,
}

impl ExponentData {
    /// Checks Σκ = Σθ and Σe = (L−1)/2.
    pub fn new(e: Vec<Rational>, kappa: Vec<Rational>, theta: Vec<Rational>, n: i64) -> Result<Self> {
        if e.len() != kappa.len() || e.len() < 2 || theta.is_empty() {
            bail!(Usage, "exponent vectors have inconsistent lengths");
        }
        let sk: Rational = kappa.iter().sum();
        let st: Rational = theta.iter().sum();
        if sk != st {
            bail!(Parameter, "Fuchs relation fails: sum kappa = {sk}, sum theta = {st}");
        }
        let se: Rational = e.iter().sum();
        let want = frac(e.len() as i64 - 1, 2);
        if se != want {
            bail!(Parameter, "sum of exponents at 0 is {se}, expected {want}");
        }
        Ok(ExponentData { e, kappa, theta, n })
    }

    pub fn l(&self) -> usize {
        self.e.len()
    }

    /// Exponents at ∞, κ_j − e_j.
    pub fn at_infinity(&self) -> Vec<Rational> {
        self.kappa.iter().zip(&self.e).map(|(k, e)| k - e).collect()
    }

    /// Exponents at u_i for i ≤ N: (−θ_i, 0, …, 0).
    pub fn at_point(&self, i: usize) -> Vec<Rational> {
        let mut v = alloc::vec![Rational::zero(); self.l()];
        v[0] = -self.theta[i].clone();
        v
    }

    /// Refuses nonzero integer differences among exponents at any point.
    pub fn check_nonresonant(&self) -> Result<()> {
        let mut sets: Vec<(&str, Vec<Rational>)> = alloc::vec![("0", self.e.clone()), ("infinity", self.at_infinity())];
        for i in 0..self.theta.len() {
            sets.push(("u_i", self.at_point(i)));
        }
        for (name, s) in sets {
            for a in 0..s.len() {
                for b in a + 1..s.len() {
                    let d = &s[a] - &s[b];
                    if d.is_integer() && !d.is_zero() {
                        bail!(Parameter, "exponents at {name} differ by the integer {d}");
                    }
                }
            }
        }
        Ok(())
    }

    /// Exponents after the shift (n(L−1), −n, …, −n) at ∞.
    pub fn shifted(&self, n: usize) -> Self {
        let n = n as i64;
        let l = self.l() as i64;
        let mut kappa = self.kappa.clone();
        kappa[0] += int(n * (l - 1));
        for k in kappa.iter_mut().skip(1) {
            *k -= int(n);
        }
        ExponentData { e: self.e.clone(), kappa, theta: self.theta.clone(), n: self.n + n }
    }
}

/// dY/dz = Σ_{i=0}^{N+1} A_i/(z − u_i) Y.
#[derive(Clone, Debug)]
pub struct FuchsianSystem {
    ctx: JetCtx,
    residues: Vec<Mat>,
    pub exponents: Option<ExponentData>,
}

impl FuchsianSystem {
    /// `residues` holds A_0, …, A_{N+1}; the jet context has N variables.
    pub fn new(ctx: &JetCtx, residues: Vec<Mat>, exponents: Option<ExponentData>) -> Result<Self> {
        if residues.len() < 2 || residues.len() != ctx.nvars + 2 {
            bail!(Usage, "need N + 2 residue matrices for N = {}", ctx.nvars);
        }
        let l = residues[0].rows();
        if l < 2 || residues.iter().any(|m| m.rows() != l || m.cols() != l) {
            bail!(Usage, "residue matrices must be square of a common size at least 2");
        }
        if let Some(ex) = &exponents {
            if ex.l() != l || ex.theta.len() != ctx.nvars + 1 {
                bail!(Usage, "exponent data does not match L = {l}, N = {}", ctx.nvars);
            }
            ex.check_nonresonant()?;
        }
        Ok(FuchsianSystem { ctx: ctx.clone(), residues, exponents })
    }

    pub fn l(&self) -> usize {
        self.residues[0].rows()
    }

    pub fn n_points(&self) -> usize {
        self.ctx.nvars
    }

    pub fn jet_ctx(&self) -> &JetCtx {
        &self.ctx
    }

    pub fn point(&self, i: usize) -> Point {
        match i {
            0 => Point::One,
            i if i <= self.n_points() => Point::Var(i - 1),
            _ => Point::Zero,
        }
    }

    /// A_i for 0 ≤ i ≤ N+1, and A_{N+2} = −Σ A_i.
    pub fn residue(&self, i: usize) -> Mat {
        if i < self.residues.len() {
            return self.residues[i].clone();
        }
        self.infinity_residue()
    }

    pub fn residues(&self) -> &[Mat] {
        &self.residues
    }

    pub fn infinity_residue(&self) -> Mat {
        let mut s = Mat::zeros(&self.ctx, self.l(), self.l());
        for m in &self.residues {
            s = s.add(m).expect("same shape");
        }
        s.negated()
    }

    /// A_{N+1} upper and A_{N+2} lower triangular.
    pub fn gauge_holds(&self) -> bool {
        self.residues.last().expect("nonempty").is_upper_triangular() && self.infinity_residue().is_lower_triangular()
    }

    /// tr A_i = −θ_i, diag A_{N+1} = e, diag A_{N+2} = κ − e.
    pub fn check_riemann_scheme(&self) -> Result<()> {
        let Some(ex) = &self.exponents else {
            bail!(Usage, "no exponent data attached");
        };
        let lift = |r: &Rational| Lf::lift(&self.ctx, r);
        for i in 0..=self.n_points() {
            if self.residues[i].trace() != lift(&-ex.theta[i].clone()) {
                bail!(InvariantViolation, "trace of A_{i} is not -theta_{i}");
            }
        }
        let zero = self.residues.last().expect("nonempty").diagonal();
        let inf = self.infinity_residue().diagonal();
        for (k, (a, b)) in zero.iter().zip(&inf).enumerate() {
            if *a != lift(&ex.e[k]) {
                bail!(InvariantViolation, "diagonal entry {k} of A_(N+1) is not e_{k}");
            }
            if *b != lift(&ex.at_infinity()[k]) {
                bail!(InvariantViolation, "diagonal entry {k} of A_(N+2) is not kappa_{k} - e_{k}");
            }
        }
        Ok(())
    }

    /// A(z) as partial fractions.
    pub fn coefficient(&self) -> ZMatrix {
        ZMatrix::simple_poles(&self.ctx, self.residues.iter().enumerate().map(|(i, m)| (self.point(i), m.clone())))
    }
}

/// Â_i = R(u_i) A_i R^{-1}(u_i), certified against RAR^{-1} + R′R^{-1}.
pub fn schlesinger_transform(sys: &FuchsianSystem, mult: &SchlesingerMultiplier<Lf>) -> Result<FuchsianSystem> {
    let ctx = sys.jet_ctx().clone();
    if mult.l() != sys.l() {
        bail!(Usage, "multiplier size {} does not match L = {}", mult.l(), sys.l());
    }
    let eval = |m: &ExactMatrix<Poly<Lf>>, z: &Lf| m.map(&ctx, |p| p.eval(z));
    let mut hats = Vec::with_capacity(sys.residues.len());
    for (i, a) in sys.residues.iter().enumerate() {
        let u = sys.point(i).value(&ctx);
        hats.push(eval(&mult.r, &u).mul(a)?.mul(&eval(&mult.rinv, &u))?);
    }
    let r = ZMatrix::from_poly_matrix(&mult.r);
    let rinv = ZMatrix::from_poly_matrix(&mult.rinv);
    let rprime = ZMatrix::from_poly_matrix(&mult.r.map(&ctx, |p| p.derivative()));
    let full = r.mul(&sys.coefficient())?.mul(&rinv)?.add(&rprime.mul(&rinv)?);
    if !full.is_simple_fuchsian() {
        bail!(InvariantViolation, "transformed coefficient has an apparent singularity or a polynomial part");
    }
    for (i, h) in hats.iter().enumerate() {
        if full.pole_coeff(sys.point(i), 1) != *h {
            bail!(InvariantViolation, "{}", format!("residue {i} of RAR^-1 + R'R^-1 differs from R(u_i) A_i R^-1(u_i)"));
        }
    }
    let exponents = sys.exponents.as_ref().map(|e| e.shifted(mult.n));
    Ok(FuchsianSystem { ctx, residues: hats, exponents })
}

/// (A)_LT including the diagonal.
pub fn lower_part(a: &Mat) -> Mat {
    let ctx = a.ctx().clone();
    ExactMatrix::from_fn(&ctx, a.rows(), a.cols(), |r, c| if c <= r { a.get(r, c).clone() } else { Lf::zero_in(&ctx) })
}

/// B_i = A_i/(u_i − z) − (A_i)_LT/u_i for 1 ≤ i ≤ N.
pub fn deformation_matrix(sys: &FuchsianSystem, i: usize) -> Result<ZMatrix> {
    if i == 0 || i > sys.n_points() {
        bail!(Usage, "deformation index {i} outside 1..={}", sys.n_points());
    }
    let ctx = sys.jet_ctx();
    let a = &sys.residues[i];
    let x = Lf::from_jet(ParamJet::var(ctx, i - 1));
    let mut b = ZMatrix::simple_poles(ctx, [(sys.point(i), a.negated())]);
    b.accumulate(Term::Pow(0), lower_part(a).scale_by(&x).negated());
    Ok(b)
}

/// ∂A/∂u_i − ∂B_i/∂z + [A, B_i] with all pieces and the certified order.
#[derive(Clone, Debug)]
pub struct CompatibilityReport {
    pub residual: ZMatrix,
    pub vanishes: bool,
    /// Lowest jet order to which a vanishing coefficient is known.
    pub checked_order: u32,
}

pub fn compatibility_residual(sys: &FuchsianSystem, i: usize) -> Result<CompatibilityReport> {
    compatibility_with(sys, i, &deformation_matrix(sys, i)?)
}

/// Same residual for a caller-supplied B.
pub fn compatibility_with(sys: &FuchsianSystem, i: usize, b: &ZMatrix) -> Result<CompatibilityReport> {
    if i == 0 || i > sys.n_points() {
        bail!(Usage, "deformation index {i} outside 1..={}", sys.n_points());
    }
    let a = sys.coefficient();
    let residual = a.d_du(i - 1).sub(&b.d_dz()).add(&a.commutator(b)?);
    let vanishes = residual.is_zero();
    let checked_order = residual
        .terms
        .values()
        .flat_map(|m| m.entries().iter().map(|e| e.numerator().order()))
        .min()
        .unwrap_or(sys.ctx.order);
    Ok(CompatibilityReport { residual, vanishes, checked_order })
}

/// Constant terms of a jet-valued matrix, if every entry is a jet.
pub fn constant_part(m: &Mat) -> Option<ExactMatrix<Rational>> {
    let mut rows = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for c in 0..m.cols() {
            row.push(m.get(r, c).reduce().to_jet()?.constant_term());
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(&(), rows).ok()
}

/// Characteristic polynomial of the x = 0 value of a residue.
pub fn constant_charpoly(m: &Mat) -> Result<Poly<Rational>> {
    match constant_part(m) {
        Some(c) => c.charpoly(),
        None => bail!(Usage, "residue is not regular at x = 0"),
    }
}

/// Monic polynomial with the given roots.
pub fn poly_from_roots(roots: &[Rational]) -> Poly<Rational> {
    let mut p = Poly::constant(Rational::one());
    for r in roots {
        p = p.mul(&Poly::new(&(), alloc::vec![-r.clone(), Rational::one()]));
    }
    p
}
