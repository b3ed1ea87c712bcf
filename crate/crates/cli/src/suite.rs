//! The eleven acceptance checks, each over seeded random instances.

use mahler_core::duality::{build_r, build_rinv, product_matrix};
use mahler_core::fuchsian::{compatibility_residual, constant_charpoly, poly_from_roots};
use mahler_core::hypergeo::{
    canonical_from_system, contiguity_shift_holds, contiguity_sum_holds, hamilton_residual, hgi_build, hgsol_build,
    hgsol_system, matrix_path, qp_forms, rank_one_factors, vandermonde_oracle, DeltaPath, DiscreteMeasure, HGParams,
    Moments, Provenance,
};
use mahler_core::rational::{frac, int};
use mahler_core::type1::*;
use mahler_core::type2::*;
use mahler_core::vcf::{convergent, expand, phis, reciprocal_iota, schlesinger_equivalence};
use mahler_core::{Error, ExactMatrix, LocalFraction, Poly, Rational, Result, Ring, TruncatedSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TITLES: [&str; 11] = [
    "Mahler duality: Q~ P~ = w^(nL) I",
    "det R = 1 and R Rinv = I",
    "degree facts and Q_0^(0)(0) = 0",
    "determinantal representations vs nullspace",
    "vector continued fraction",
    "contiguity relations",
    "Vandermonde oracle",
    "Hamilton residuals, hypergeometric solution",
    "block-Toeplitz solution after one shift",
    "Schlesinger compatibility",
    "exponent shift at infinity",
];

/// Jet order used by the hypergeometric checks.
pub const JET_ORDER: u32 = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!("{} [{}] {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.title, self.detail)
    }
}

fn rng_for(seed: u64, id: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn rand_rat(g: &mut ChaCha8Rng) -> Rational {
    frac(g.gen_range(-9..=9), g.gen_range(1..=5))
}

fn rand_nonzero(g: &mut ChaCha8Rng) -> Rational {
    loop {
        let v = rand_rat(g);
        if v != int(0) {
            return v;
        }
    }
}

/// f_0 = 1 (or a random unit series) and random rational series, known to w^order.
pub fn random_series(g: &mut ChaCha8Rng, l: usize, order: usize, f0_one: bool) -> Vec<TruncatedSeries<Rational>> {
    (0..l)
        .map(|i| {
            let mut c: Vec<Rational> = (0..=order).map(|_| rand_rat(g)).collect();
            if i == 0 && f0_one {
                c = vec![int(1)];
            } else {
                c[0] = rand_nonzero(g);
            }
            TruncatedSeries::from_slice('w', &(), &c, order)
        })
        .collect()
}

fn is_genericity(e: &Error) -> bool {
    matches!(e, Error::NonGeneric(_) | Error::Singular(_) | Error::Breakdown { .. } | Error::Parameter(_))
}

/// Draw instances until `count` of them are generic, giving up after 4·count draws.
fn draw<T>(count: usize, mut make: impl FnMut(usize) -> Result<T>) -> Result<(Vec<T>, usize)> {
    let mut out = Vec::new();
    let mut skipped = 0;
    while out.len() < count {
        if skipped > 4 * count {
            return Err(Error::NonGeneric(format!("only {} of {count} random instances were generic", out.len())));
        }
        match make(out.len()) {
            Ok(t) => out.push(t),
            Err(e) if is_genericity(&e) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((out, skipped))
}

pub struct DualityInstance {
    pub problem: TypeIProblem<Rational>,
    pub q: TypeISolution<Rational>,
    pub p: TypeIISolution<Rational>,
}

/// 50 instances cycling through (L, n) ∈ {2,3,4}×{1,2,3}.
pub fn duality_instances(seed: u64) -> Result<(Vec<DualityInstance>, usize)> {
    let mut g = rng_for(seed, 1);
    draw(50, |idx| {
        let (l, n) = (2 + idx % 3, 1 + (idx / 3) % 3);
        let problem = TypeIProblem::new(random_series(&mut g, l, n * l + n, true), n)?;
        let q = solve_type_i_all(&problem)?;
        let p = solve_type_ii_all(&problem)?;
        Ok(DualityInstance { problem, q, p })
    })
}

fn count_ok(total: usize, bad: &[String], what: &str) -> (bool, String) {
    if bad.is_empty() {
        (true, format!("{total}/{total} {what}"))
    } else {
        (false, format!("{}/{total} {what}; first failure: {}", total - bad.len(), bad[0]))
    }
}

fn crit_duality(inst: &[DualityInstance]) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for (idx, d) in inst.iter().enumerate() {
        let (l, n) = (d.problem.l(), d.problem.n());
        let m = product_matrix(&d.q, &d.p)?;
        let want = ExactMatrix::from_fn(&(), l, l, |i, j| {
            if i == j {
                Poly::monomial(int(1), n * l)
            } else {
                Poly::zero(&())
            }
        });
        if m != want {
            bad.push(format!("instance {idx} (L={l}, n={n})"));
        }
    }
    Ok(count_ok(inst.len(), &bad, "instances"))
}

fn crit_multiplier(inst: &[DualityInstance]) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for (idx, d) in inst.iter().enumerate() {
        let r = build_r(&d.q)?;
        let rinv = build_rinv(&d.p)?;
        let id = ExactMatrix::<Poly<Rational>>::identity(&(), d.problem.l());
        if r.det()? != Poly::one_in(&()) || r.mul(&rinv)? != id {
            bad.push(format!("instance {idx}"));
        }
    }
    Ok(count_ok(inst.len(), &bad, "instances"))
}

fn crit_degrees(inst: &[DualityInstance]) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for (idx, d) in inst.iter().enumerate() {
        let (l, n) = (d.problem.l(), d.problem.n());
        let ok = (0..l).all(|i| d.q.rows[i].q[i].degree() == Some(n))
            && (0..l).all(|j| d.p.cols[j].p[j].degree() == Some(n * (l - 1)))
            && d.q.rows[0].q[0].coeff(0) == int(0);
        if !ok {
            bad.push(format!("instance {idx} (L={l}, n={n})"));
        }
    }
    Ok(count_ok(inst.len(), &bad, "instances"))
}

fn detrep_agrees(p: &TypeIProblem<Rational>) -> Result<bool> {
    let q = solve_type_i_all(p)?;
    let s = solve_type_ii_all(p)?;
    let (l, n) = (p.l(), p.n());
    let mut ok = remainder_leading_delta(p)? == remainder_leading(p, 0)?;
    for i in 0..l {
        for j in 0..l {
            ok &= det_rep_q(p, i, j)? == q.rows[i].q[j];
        }
        ok &= remainder_leading(p, i)? == *q.rows[i].remainder.coeff(n * l);
        ok &= nq(p, i)? == nq_delta(p, i)?;
        if i > 0 {
            let c = diag_constant_term(p, i)?;
            ok &= c == diag_constant_term_delta(p, i)? && c == q.rows[i].q[i].coeff(0);
        }
    }
    for j in 0..l {
        ok &= det_rep_p0(p, j)? == s.cols[j].p[0];
        ok &= np_bordered(p, j)? == np_delta(p, j)?;
    }
    Ok(ok)
}

fn crit_detrep(seed: u64) -> Result<(bool, String)> {
    let mut g = rng_for(seed, 4);
    let (inst, _) = draw(25, |idx| {
        let (l, n) = (2 + idx % 2, 1 + (idx / 2) % 2);
        let p = TypeIProblem::new(random_series(&mut g, l, n * l + n + 1, true), n)?;
        solve_type_i_all(&p)?;
        solve_type_ii_all(&p)?;
        Ok(p)
    })?;
    let mut bad = Vec::new();
    for (idx, p) in inst.iter().enumerate() {
        if !detrep_agrees(p)? {
            bad.push(format!("instance {idx} (L={}, n={})", p.l(), p.n()));
        }
    }
    Ok(count_ok(inst.len(), &bad, "instances"))
}

fn vcf_instance(f: &[TruncatedSeries<Rational>]) -> Result<bool> {
    let l = f.len();
    let phi = phis(f)?;
    let mut v = phi.clone();
    for _ in 0..l {
        v = reciprocal_iota(&v)?;
    }
    let mut ok = v == phi;
    let (steps, _) = expand(f.to_vec(), 6)?;
    for t in &steps {
        ok &= t.det_is_canonical()?;
    }
    for k in 0..=6 {
        ok &= convergent(f, k)?.contact_order(&phi)? >= k;
    }
    let eq = schlesinger_equivalence(f)?;
    Ok(ok && eq.shape_ok && eq.matches_type_one)
}

fn crit_vcf(seed: u64) -> Result<(bool, String)> {
    let mut g = rng_for(seed, 5);
    let (inst, skipped) = draw(20, |idx| {
        let f = random_series(&mut g, 2 + idx % 2, 12, false);
        // admissibility of the first steps is a genericity condition
        expand(f.clone(), 6)?;
        schlesinger_equivalence(&f)?;
        Ok(f)
    })?;
    let mut bad = Vec::new();
    for (idx, f) in inst.iter().enumerate() {
        if !vcf_instance(f)? {
            bad.push(format!("instance {idx} (L={})", f.len()));
        }
    }
    let (ok, msg) = count_ok(inst.len(), &bad, "instances");
    Ok((ok, format!("{msg} ({skipped} non-admissible draws skipped)")))
}

/// Noninteger rational in (−3, 3) with denominator 2..=13.
fn rand_param(g: &mut ChaCha8Rng) -> Rational {
    loop {
        let d = g.gen_range(2..=13);
        let v = frac(g.gen_range(-3 * d..=3 * d), d);
        if !v.is_integer() {
            return v;
        }
    }
}

/// Random parameters whose exponents are nonresonant.
pub fn random_params(g: &mut ChaCha8Rng, l: usize, nv: usize, order: u32) -> Result<HGParams> {
    for _ in 0..50 {
        let alpha = (1..l).map(|_| rand_param(g)).collect();
        let beta = (0..nv).map(|_| rand_param(g)).collect();
        let gamma = (1..l).map(|_| rand_param(g)).collect();
        let Ok(p) = HGParams::new(alpha, beta, gamma, order) else { continue };
        let ok = (0..3).all(|n| p.exponent_data(n).and_then(|ex| ex.check_nonresonant()).is_ok());
        if ok {
            return Ok(p);
        }
    }
    Err(Error::NonGeneric("no nonresonant parameters found".into()))
}

fn crit_contiguity(seed: u64) -> Result<(bool, String)> {
    let mut g = rng_for(seed, 6);
    let mut bad = Vec::new();
    let mut checks = 0;
    for l in [2, 3] {
        for nv in [1, 2] {
            let p = random_params(&mut g, l, nv, JET_ORDER)?;
            let m = Moments::new(&p, 7)?;
            for j in 0..6 {
                checks += 1;
                if !contiguity_sum_holds(&m, j)? {
                    bad.push(format!("sum relation L={l} N={nv} j={j}"));
                }
                for i in 0..nv {
                    for k in 0..l {
                        checks += 1;
                        if !contiguity_shift_holds(&m, i, k, j)? {
                            bad.push(format!("shift relation L={l} N={nv} i={} k={k} j={j}", i + 1));
                        }
                    }
                }
            }
        }
    }
    Ok(count_ok(checks, &bad, "identities"))
}

fn distinct_points(g: &mut ChaCha8Rng, count: usize) -> Vec<Rational> {
    let mut pts: Vec<Rational> = Vec::new();
    while pts.len() < count {
        let s = rand_rat(g);
        if !pts.contains(&s) {
            pts.push(s);
        }
    }
    pts
}

fn crit_oracle(seed: u64) -> Result<(bool, String)> {
    let mut g = rng_for(seed, 7);
    let mut bad = Vec::new();
    for idx in 0..20 {
        let l = 2 + idx % 2;
        let mut n: Vec<usize> = (0..l).map(|_| g.gen_range(0..=3)).collect();
        while n.iter().sum::<usize>() > 5 {
            let a = g.gen_range(0..l);
            n[a] = n[a].saturating_sub(1);
        }
        let k = g.gen_range(0..=l);
        let ms: Vec<DiscreteMeasure> = n
            .iter()
            .map(|&na| {
                let size = na.max(1) + g.gen_range(0..=2);
                let pts = distinct_points(&mut g, size);
                DiscreteMeasure::new(pts.into_iter().map(|s| (s, rand_nonzero(&mut g))).collect())
            })
            .collect();
        let rep = vandermonde_oracle(&ms, k, &n)?;
        if !rep.equal {
            bad.push(format!("instance {idx} (k={k}, n={n:?})"));
        }
    }
    Ok(count_ok(20, &bad, "instances"))
}

fn crit_hgsol(seed: u64) -> Result<(bool, String)> {
    let mut g = rng_for(seed, 8);
    let mut parts = Vec::new();
    let mut ok = true;
    for l in [2, 3] {
        let p = random_params(&mut g, l, 1, JET_ORDER)?;
        let rep = hamilton_residual(&hgsol_build(&p)?)?;
        let good = rep.zero_to(JET_ORDER - 1);
        ok &= good;
        parts.push(format!("(L,N)=({l},1) zero through order {}: {good}", rep.checked_order));
    }
    Ok((ok, parts.join("; ")))
}

fn c_hat_matches(p: &HGParams, n: usize) -> Result<bool> {
    let dp = DeltaPath::new(p, n)?;
    let mp = matrix_path(p, n)?;
    let (_, c0) = rank_one_factors(&mp.transformed, 0)?;
    let mut ok = true;
    for k in 1..p.l() {
        ok &= c0[k] == LocalFraction::from_jet(dp.c_hat_zero(k - 1)?);
    }
    for i in 0..p.n_vars() {
        let (_, ci) = rank_one_factors(&mp.transformed, i + 1)?;
        for k in 1..p.l() {
            ok &= ci[k] == LocalFraction::from_jet(dp.c_hat(i, k - 1)?);
        }
    }
    let from_matrix = canonical_from_system(&mp.transformed, p.order, Provenance::MatrixPath { n })?;
    let from_delta = hgi_build(p, n)?;
    Ok(ok && from_matrix.q == from_delta.q && from_matrix.p == from_delta.p)
}

fn crit_hgi(seed: u64) -> Result<(bool, String)> {
    let mut g = rng_for(seed, 9);
    let mut parts = Vec::new();
    let mut ok = true;
    for l in [2, 3] {
        let p = random_params(&mut g, l, 1, JET_ORDER)?;
        let (h, a) = qp_forms(&p, 1)?;
        let forms = h == a;
        let rep = hamilton_residual(&hgi_build(&p, 1)?)?;
        let ham = rep.zero_to(JET_ORDER - 1);
        let chat = c_hat_matches(&p, 1)?;
        ok &= forms && ham && chat;
        parts.push(format!("(L,N,n)=({l},1,1) qp forms {forms}, residuals {ham}, c-hat {chat}"));
    }
    Ok((ok, parts.join("; ")))
}

fn crit_compat(seed: u64) -> Result<(bool, String)> {
    let mut g = rng_for(seed, 10);
    let p = random_params(&mut g, 2, 1, JET_ORDER)?;
    let rep = compatibility_residual(&hgsol_system(&p)?, 1)?;
    let ok = rep.vanishes && rep.checked_order >= JET_ORDER - 1;
    Ok((ok, format!("(L,N)=(2,1) residual zero through order {}: {ok}", rep.checked_order)))
}

fn crit_shift(seed: u64) -> Result<(bool, String)> {
    let mut g = rng_for(seed, 11);
    let mut parts = Vec::new();
    let mut ok = true;
    for l in [2, 3] {
        let p = random_params(&mut g, l, 1, JET_ORDER)?;
        let mp = matrix_path(&p, 1)?;
        let ex = p.exponent_data(0)?;
        let before = constant_charpoly(&mp.original.infinity_residue())? == poly_from_roots(&ex.at_infinity());
        let after = constant_charpoly(&mp.transformed.infinity_residue())? == poly_from_roots(&ex.shifted(1).at_infinity());
        ok &= before && after;
        parts.push(format!("(L,n)=({l},1) before {before}, after {after}"));
    }
    Ok((ok, parts.join("; ")))
}

fn finish(id: usize, r: Result<(bool, String)>) -> Outcome {
    let (passed, detail) = match r {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome { id, title: TITLES[id - 1], passed, detail }
}

/// Run one criterion (1..=11).
pub fn run_one(id: usize, seed: u64) -> Outcome {
    match id {
        1..=3 => {
            let inst = duality_instances(seed);
            let r = inst.and_then(|(i, _)| match id {
                1 => crit_duality(&i),
                2 => crit_multiplier(&i),
                _ => crit_degrees(&i),
            });
            finish(id, r)
        }
        4 => finish(id, crit_detrep(seed)),
        5 => finish(id, crit_vcf(seed)),
        6 => finish(id, crit_contiguity(seed)),
        7 => finish(id, crit_oracle(seed)),
        8 => finish(id, crit_hgsol(seed)),
        9 => finish(id, crit_hgi(seed)),
        10 => finish(id, crit_compat(seed)),
        11 => finish(id, crit_shift(seed)),
        _ => finish(1, Err(Error::Usage(format!("no criterion {id}")))),
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    let mut out = Vec::new();
    match duality_instances(seed) {
        Ok((inst, _)) => {
            out.push(finish(1, crit_duality(&inst)));
            out.push(finish(2, crit_multiplier(&inst)));
            out.push(finish(3, crit_degrees(&inst)));
        }
        Err(e) => {
            for id in 1..=3 {
                out.push(finish(id, Err(e.clone())));
            }
        }
    }
    for id in 4..=11 {
        out.push(run_one(id, seed));
    }
    out
}
