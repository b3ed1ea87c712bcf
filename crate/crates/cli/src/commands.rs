use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mahler_core::duality::{build_multiplier, degree_bounds_hold, product_matrix, verify_duality};
use mahler_core::fuchsian::{constant_charpoly, constant_part};
use mahler_core::hypergeo::{hamilton_residual, hgi_build, hgsol_build, matrix_path, vandermonde_oracle, HGParams};
use mahler_core::rational::{frac, int};
use mahler_core::type1::{solve_type_i, solve_type_i_all, TypeIProblem};
use mahler_core::type2::{solve_type_ii, solve_type_ii_all};
use mahler_core::vcf::{convergent, expand, phis, schlesinger_equivalence};
use mahler_core::{Error, Rational, Result, TruncatedSeries};
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::codec::{self, object};
use crate::suite;

#[derive(Parser, Debug)]
#[command(name = "mahler", version, about = "Exact Hermite-Pade approximants, Schlesinger transformations and hypergeometric solutions")]
pub struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SeriesArgs {
    /// JSON file {"n": n, "f": [["1"], ["1", "1/2", ...], ...]}.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Number of series when no input is given.
    #[arg(long = "L", default_value_t = 2)]
    pub l: usize,
    #[arg(long)]
    pub n: Option<usize>,
    /// Series order K; defaults to nL + n, or to the input length.
    #[arg(long)]
    pub order: Option<usize>,
    /// Random series instead of the default family.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Type-I (Hermite-Pade) rows.
    Type1 {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        row: Option<usize>,
    },
    /// Type-II (simultaneous Pade) columns.
    Type2 {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        col: Option<usize>,
    },
    /// Duality product, R and its inverse.
    Duality {
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Vector continued-fraction expansion.
    Vcf {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value_t = 4)]
        steps: usize,
    },
    /// Fuchsian systems.
    Fuchs {
        #[command(subcommand)]
        command: FuchsCommand,
    },
    /// Hypergeometric solutions of the Hamiltonian system.
    Hln {
        #[command(subcommand)]
        command: HlnCommand,
    },
    /// Run every acceptance check.
    VerifyAll {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum FuchsCommand {
    /// Apply the Schlesinger transformation to the hypergeometric system.
    Transform {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long = "jet-order", default_value_t = 3)]
        jet_order: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum HlnCommand {
    /// Canonical variables and their Hamilton residuals.
    Solve {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long = "jet-order", default_value_t = 4)]
        jet_order: u32,
        /// Expected L, checked against the parameters.
        #[arg(long = "L")]
        l: Option<usize>,
        /// Expected N, checked against the parameters.
        #[arg(long = "N")]
        nv: Option<usize>,
    },
    /// Block-Toeplitz determinant against the symmetrized Vandermonde sum.
    Oracle {
        #[arg(long)]
        measures: PathBuf,
        #[arg(long)]
        k: usize,
        /// Comma separated, e.g. 1,2,1.
        #[arg(long, value_delimiter = ',')]
        nvec: Vec<usize>,
    },
}

/// Exit status and JSON result of one invocation.
pub struct Response {
    pub code: i32,
    pub body: Value,
    /// Lines for stderr.
    pub notes: Vec<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Usage(_) => 2,
        Error::NonGeneric(_) | Error::Singular(_) | Error::Parameter(_) | Error::Breakdown { .. } | Error::DegenerateMeasure(_) => 3,
        Error::InvariantViolation(_) => 4,
    }
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    codec::parse_document(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// f_0 = 1, f_k = Σ_j w^j/(j+1)^{k−1}; L = 2 gives (1, 1/(1−w)).
pub fn default_family(l: usize, order: usize) -> Vec<TruncatedSeries<Rational>> {
    (0..l)
        .map(|k| {
            if k == 0 {
                TruncatedSeries::from_slice('w', &(), &[int(1)], order)
            } else {
                let c: Vec<Rational> = (0..=order).map(|j| frac(1, (j as i64 + 1).pow(k as u32 - 1))).collect();
                TruncatedSeries::from_slice('w', &(), &c, order)
            }
        })
        .collect()
}

pub fn load_problem(a: &SeriesArgs) -> Result<TypeIProblem<Rational>> {
    let (f, n) = match &a.input {
        Some(path) => {
            let v = read_json(path)?;
            let (f, n_in) = codec::problem_from(&v, a.order)?;
            let n = a.n.or(n_in).ok_or_else(|| Error::Usage("n is neither given nor in the input".into()))?;
            (f, n)
        }
        None => {
            if a.l < 2 {
                return Err(Error::Usage("need L >= 2".into()));
            }
            let n = a.n.unwrap_or(1);
            let order = a.order.unwrap_or(n * a.l + n);
            let f = match a.seed {
                Some(s) => suite::random_series(&mut ChaCha8Rng::seed_from_u64(s), a.l, order, true),
                None => default_family(a.l, order),
            };
            (f, n)
        }
    };
    TypeIProblem::new(f, n)
}

fn problem_fields(p: &TypeIProblem<Rational>) -> Vec<(&'static str, Value)> {
    vec![
        ("L", json!(p.l())),
        ("n", json!(p.n())),
        ("order", json!(p.f()[0].order())),
        ("f", Value::Array(p.f().iter().map(codec::series).collect())),
    ]
}

fn polys(ps: &[mahler_core::Poly<Rational>]) -> Value {
    Value::Array(ps.iter().map(codec::poly).collect())
}

fn type1(a: &SeriesArgs, row: Option<usize>) -> Result<Value> {
    let p = load_problem(a)?;
    let rows = match row {
        Some(i) if i >= p.l() => return Err(Error::Usage(format!("row {i} outside 0..{}", p.l()))),
        Some(i) => vec![solve_type_i(&p, i)?],
        None => solve_type_i_all(&p)?.rows,
    };
    let rows = rows
        .iter()
        .map(|r| json!({"i": r.i, "q": polys(&r.q), "q_tilde": polys(&r.q_tilde), "remainder": codec::series(&r.remainder)}))
        .collect();
    let mut f = problem_fields(&p);
    f.push(("rows", Value::Array(rows)));
    Ok(object(f))
}

fn type2(a: &SeriesArgs, col: Option<usize>) -> Result<Value> {
    let p = load_problem(a)?;
    let cols = match col {
        Some(j) if j >= p.l() => return Err(Error::Usage(format!("column {j} outside 0..{}", p.l()))),
        Some(j) => vec![solve_type_ii(&p, j)?],
        None => solve_type_ii_all(&p)?.cols,
    };
    let cols = cols.iter().map(|c| json!({"j": c.j, "p": polys(&c.p), "p_tilde": polys(&c.p_tilde)})).collect();
    let mut f = problem_fields(&p);
    f.push(("cols", Value::Array(cols)));
    Ok(object(f))
}

fn duality(a: &SeriesArgs) -> Result<Value> {
    let p = load_problem(a)?;
    let q = solve_type_i_all(&p)?;
    let s = solve_type_ii_all(&p)?;
    let d = verify_duality(&q, &s)?;
    let bounds = degree_bounds_hold(&product_matrix(&q, &s)?, p.n());
    let m = build_multiplier(&q, &s)?;
    let mut f = problem_fields(&p);
    f.extend([
        ("D", codec::rat_matrix(&d)),
        ("detR", codec::poly(&m.r.det()?)),
        ("degree_bounds", json!(bounds)),
        ("R", codec::poly_matrix(&m.r)),
        ("Rinv", codec::poly_matrix(&m.rinv)),
    ]);
    Ok(object(f))
}

fn vcf(a: &SeriesArgs, steps: usize) -> Result<Value> {
    let mut a = a.clone();
    if a.input.is_none() && a.order.is_none() {
        a.order = Some(2 * steps.max(a.l) + 2);
    }
    let p = load_problem(&a)?;
    let f = p.f();
    let (ts, states) = expand(f.to_vec(), steps)?;
    let phi = phis(f)?;
    let mut step_out = Vec::new();
    for (t, s) in ts.iter().zip(&states) {
        step_out.push(json!({
            "k": s.step,
            "a": codec::rats(&s.a),
            "w_times_T": codec::poly_matrix(&t.w_times),
            "det_canonical": t.det_is_canonical()?,
        }));
    }
    let mut conv = Vec::new();
    for k in 0..=steps {
        let c = convergent(f, k)?;
        conv.push(json!({
            "k": k,
            "numerators": polys(&c.numerators),
            "denominator": codec::poly(&c.denominator),
            "contact_order": c.contact_order(&phi)?,
        }));
    }
    let mut out = problem_fields(&p);
    out.push(("steps", Value::Array(step_out)));
    out.push(("convergents", Value::Array(conv)));
    if steps >= f.len() {
        let eq = schlesinger_equivalence(f)?;
        out.push((
            "equivalence",
            json!({"product": codec::poly_matrix(&eq.product), "shape_ok": eq.shape_ok, "matches_type_one": eq.matches_type_one}),
        ));
    }
    Ok(object(out))
}

fn load_params(path: &PathBuf, order: u32) -> Result<HGParams> {
    if order < 2 {
        return Err(Error::Usage("jet order M must be at least 2".into()));
    }
    let v = read_json(path)?;
    codec::params_from(v.get("params").unwrap_or(&v), order)
}

fn charpoly_at_infinity(sys: &mahler_core::fuchsian::FuchsianSystem) -> Result<Value> {
    Ok(codec::poly(&constant_charpoly(&sys.infinity_residue())?))
}

fn fuchs_transform(path: &PathBuf, n: usize, m: u32) -> Result<Value> {
    let p = load_params(path, m)?;
    let mp = matrix_path(&p, n)?;
    let constant = |sys: &mahler_core::fuchsian::FuchsianSystem| -> Value {
        Value::Array(
            sys.residues()
                .iter()
                .map(|a| constant_part(a).map_or(Value::Null, |c| codec::rat_matrix(&c)))
                .collect(),
        )
    };
    let residues: Vec<Value> = mp.transformed.residues().iter().map(|a| codec::local_grid(&a.to_rows())).collect();
    Ok(object(vec![
        ("params", codec::params(&p)),
        ("n", json!(n)),
        ("jet_order", json!(m)),
        ("exponents_before", codec::exponents(&p.exponent_data(0)?)),
        ("exponents_after", codec::exponents(&p.exponent_data(n)?)),
        ("charpoly_infinity_before", charpoly_at_infinity(&mp.original)?),
        ("charpoly_infinity_after", charpoly_at_infinity(&mp.transformed)?),
        ("residues_at_x0_before", constant(&mp.original)),
        ("residues_at_x0_after", constant(&mp.transformed)),
        ("residues_after", Value::Array(residues)),
    ]))
}

fn hln_solve(path: &PathBuf, n: usize, m: u32, l: Option<usize>, nv: Option<usize>) -> Result<(bool, Value)> {
    let p = load_params(path, m)?;
    if l.is_some_and(|l| l != p.l()) || nv.is_some_and(|nv| nv != p.n_vars()) {
        return Err(Error::Usage(format!("parameters describe L = {}, N = {}", p.l(), p.n_vars())));
    }
    let sol = if n == 0 { hgsol_build(&p)? } else { hgi_build(&p, n)? };
    let rep = hamilton_residual(&sol)?;
    let zero = rep.zero_to(m - 1);
    let checked = rep.checked_order.min(m - 1);
    Ok((
        zero,
        object(vec![
            ("L", json!(p.l())),
            ("N", json!(p.n_vars())),
            ("n", json!(n)),
            ("jet_order", json!(m)),
            ("params", codec::params(&p)),
            ("exponents", codec::exponents(&sol.exponents)),
            ("q", codec::local_grid(&sol.q)),
            ("p", codec::local_grid(&sol.p)),
            ("residual_max_order_checked", json!(checked)),
            ("residuals_zero", json!(zero)),
        ]),
    ))
}

fn hln_oracle(path: &PathBuf, k: usize, nvec: &[usize]) -> Result<(bool, Value)> {
    let v = read_json(path)?;
    let ms = codec::measures_from(v.get("measures").unwrap_or(&v))?;
    let rep = vandermonde_oracle(&ms, k, nvec)?;
    Ok((
        rep.equal,
        object(vec![
            ("k", json!(k)),
            ("nvec", json!(nvec)),
            ("measures", codec::measures(&ms)),
            ("determinant", codec::rat(&rep.determinant)),
            ("symmetrized", codec::rat(&rep.symmetrized)),
            ("equal", json!(rep.equal)),
        ]),
    ))
}

fn ok(body: Value) -> Response {
    Response { code: 0, body, notes: Vec::new() }
}

fn verdict(good: bool, body: Value, what: &str) -> Response {
    let notes = if good { Vec::new() } else { vec![format!("{what} failed")] };
    Response { code: if good { 0 } else { 4 }, body, notes }
}

fn attempt(cmd: &Command) -> Result<Response> {
    Ok(match cmd {
        Command::Type1 { series, row } => ok(type1(series, *row)?),
        Command::Type2 { series, col } => ok(type2(series, *col)?),
        Command::Duality { series } => ok(duality(series)?),
        Command::Vcf { series, steps } => ok(vcf(series, *steps)?),
        Command::Fuchs { command: FuchsCommand::Transform { params, n, jet_order } } => ok(fuchs_transform(params, *n, *jet_order)?),
        Command::Hln { command: HlnCommand::Solve { params, n, jet_order, l, nv } } => {
            let (good, body) = hln_solve(params, *n, *jet_order, *l, *nv)?;
            verdict(good, body, "Hamilton residual check")
        }
        Command::Hln { command: HlnCommand::Oracle { measures, k, nvec } } => {
            let (good, body) = hln_oracle(measures, *k, nvec)?;
            verdict(good, body, "Vandermonde comparison")
        }
        Command::VerifyAll { seed } => {
            let outcomes = suite::run_all(*seed);
            let all = outcomes.iter().all(|o| o.passed);
            let list = outcomes
                .iter()
                .map(|o| json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail}))
                .collect();
            let notes = outcomes.iter().map(|o| o.line()).collect();
            Response {
                code: if all { 0 } else { 4 },
                body: object(vec![("seed", json!(seed)), ("criteria", Value::Array(list)), ("all_passed", json!(all))]),
                notes,
            }
        }
    })
}

/// Dispatch a parsed command line; errors become a JSON body and an exit code.
pub fn run(cli: &Cli) -> Response {
    match attempt(&cli.command) {
        Ok(r) => r,
        Err(e) => Response {
            code: exit_code(&e),
            body: json!({"error": e.to_string()}),
            notes: vec![format!("error: {e}")],
        },
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
