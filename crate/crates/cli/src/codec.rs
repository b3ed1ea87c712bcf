//! JSON encoding. Rationals travel as strings.

use mahler_core::fuchsian::ExponentData;
use mahler_core::hypergeo::{DiscreteMeasure, HGParams};
use mahler_core::local::{Factor, Pole};
use mahler_core::{parse_rational, Error, ExactMatrix, JetCtx, LocalFraction, ParamJet, Poly, Rational, Result, TruncatedSeries};
use serde_json::{json, Map, Value};

pub fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parse a JSON document, reporting line and column on failure.
pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(format!("line {} column {}: {e}", e.line(), e.column())))
}

pub fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rat_from(v: &Value, at: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| parse_err(format!("{at}: {e}"))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(parse_err(format!("{at}: expected a rational string"))),
    }
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{at}: expected an array")))
}

pub fn field<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("{at}: missing field {key:?}")))
}

pub fn rats(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

pub fn rats_from(v: &Value, at: &str) -> Result<Vec<Rational>> {
    array(v, at)?.iter().enumerate().map(|(i, x)| rat_from(x, &format!("{at}[{i}]"))).collect()
}

fn usize_from(v: &Value, at: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(format!("{at}: expected a nonnegative integer")))
}

pub fn poly(p: &Poly<Rational>) -> Value {
    rats(p.coeffs())
}

pub fn poly_from(v: &Value, at: &str) -> Result<Poly<Rational>> {
    Ok(Poly::new(&(), rats_from(v, at)?))
}

pub fn poly_matrix(m: &ExactMatrix<Poly<Rational>>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(poly).collect())).collect())
}

pub fn poly_matrix_from(v: &Value, at: &str) -> Result<ExactMatrix<Poly<Rational>>> {
    let rows = array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, r)| array(r, at)?.iter().enumerate().map(|(j, e)| poly_from(e, &format!("{at}[{i}][{j}]"))).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    ExactMatrix::from_rows(&(), rows)
}

pub fn rat_matrix(m: &ExactMatrix<Rational>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| rats(r)).collect())
}

pub fn rat_matrix_from(v: &Value, at: &str) -> Result<ExactMatrix<Rational>> {
    let rows = array(v, at)?.iter().map(|r| rats_from(r, at)).collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(&(), rows)
}

/// A series is its coefficient list, known through w^{len−1}.
pub fn series(s: &TruncatedSeries<Rational>) -> Value {
    rats(s.coeffs())
}

/// Coefficient list, optionally padded with zeros up to `order`.
pub fn series_from(v: &Value, order: Option<usize>, at: &str) -> Result<TruncatedSeries<Rational>> {
    let c = rats_from(v, at)?;
    if c.is_empty() {
        return Err(parse_err(format!("{at}: empty coefficient list")));
    }
    let order = order.unwrap_or(c.len() - 1);
    if c.len() > order + 1 {
        return Err(parse_err(format!("{at}: {} coefficients exceed order {order}", c.len())));
    }
    Ok(TruncatedSeries::from_slice('w', &(), &c, order))
}

/// `{"n": n, "f": [[...], ...]}`; `order` overrides the length of the lists.
pub fn problem_from(v: &Value, order: Option<usize>) -> Result<(Vec<TruncatedSeries<Rational>>, Option<usize>)> {
    let f = array(field(v, "f", "input")?, "f")?;
    let order = match order {
        Some(k) => Some(k),
        None => f.iter().map(|s| s.as_array().map_or(0, |a| a.len().saturating_sub(1))).max(),
    };
    let series = f.iter().enumerate().map(|(i, s)| series_from(s, order, &format!("f[{i}]"))).collect::<Result<Vec<_>>>()?;
    let n = match v.get("n") {
        Some(x) => Some(usize_from(x, "n")?),
        None => None,
    };
    Ok((series, n))
}

pub fn jet(j: &ParamJet) -> Value {
    let terms: Vec<Value> = j.terms().map(|(e, c)| json!({"exp": e, "c": rat(c)})).collect();
    json!({"nvars": j.nvars(), "order": j.order(), "terms": terms})
}

pub fn jet_from(v: &Value, at: &str) -> Result<ParamJet> {
    let nvars = usize_from(field(v, "nvars", at)?, at)?;
    let order = usize_from(field(v, "order", at)?, at)? as u32;
    let ctx = JetCtx::new(nvars, order);
    let mut terms = Vec::new();
    for t in array(field(v, "terms", at)?, at)? {
        let e: Vec<u32> = array(field(t, "exp", at)?, at)?
            .iter()
            .map(|x| usize_from(x, at).map(|d| d as u32))
            .collect::<Result<_>>()?;
        if e.len() != nvars {
            return Err(parse_err(format!("{at}: exponent of length {} for {nvars} variables", e.len())));
        }
        terms.push((e, rat_from(field(t, "c", at)?, at)?));
    }
    Ok(ParamJet::from_terms(&ctx, terms))
}

/// Denominator factors are written "x1" or "x1-x2", 1-based.
pub fn local(f: &LocalFraction) -> Value {
    let den: Vec<Value> = f
        .denominator()
        .map(|(p, m)| {
            let name = match p {
                Pole::Var(i) => format!("x{}", i + 1),
                Pole::Diff(a, b) => format!("x{}-x{}", a + 1, b + 1),
            };
            json!({"factor": name, "pow": m})
        })
        .collect();
    json!({"num": jet(f.numerator()), "den": den})
}

fn var_index(s: &str, at: &str) -> Result<usize> {
    s.strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&i| i >= 1)
        .map(|i| i - 1)
        .ok_or_else(|| parse_err(format!("{at}: bad factor {s:?}")))
}

pub fn local_from(v: &Value, at: &str) -> Result<LocalFraction> {
    let num = jet_from(field(v, "num", at)?, at)?;
    let mut factors = Vec::new();
    for d in array(field(v, "den", at)?, at)? {
        let name = field(d, "factor", at)?.as_str().ok_or_else(|| parse_err(format!("{at}: factor must be a string")))?;
        let pow = usize_from(field(d, "pow", at)?, at)? as u32;
        let f = match name.split_once('-') {
            Some((a, b)) => Factor::Diff(var_index(a, at)?, var_index(b, at)?),
            None => Factor::Var(var_index(name, at)?),
        };
        factors.push((f, pow));
    }
    LocalFraction::new(num, factors)
}

pub fn local_grid(g: &[Vec<LocalFraction>]) -> Value {
    Value::Array(g.iter().map(|r| Value::Array(r.iter().map(local).collect())).collect())
}

pub fn local_grid_from(v: &Value, at: &str) -> Result<Vec<Vec<LocalFraction>>> {
    array(v, at)?.iter().map(|r| array(r, at)?.iter().map(|e| local_from(e, at)).collect()).collect()
}

pub fn jet_grid(g: &[Vec<ParamJet>]) -> Value {
    Value::Array(g.iter().map(|r| Value::Array(r.iter().map(jet).collect())).collect())
}

/// `{"alpha": [...], "beta": [...], "gamma": [...]}`.
pub fn params_from(v: &Value, order: u32) -> Result<HGParams> {
    let a = rats_from(field(v, "alpha", "params")?, "alpha")?;
    let b = rats_from(field(v, "beta", "params")?, "beta")?;
    let g = rats_from(field(v, "gamma", "params")?, "gamma")?;
    HGParams::new(a, b, g, order)
}

pub fn params(p: &HGParams) -> Value {
    json!({"alpha": rats(&p.alpha), "beta": rats(&p.beta), "gamma": rats(&p.gamma)})
}

pub fn exponents(ex: &ExponentData) -> Value {
    json!({"e": rats(&ex.e), "kappa": rats(&ex.kappa), "theta": rats(&ex.theta), "n": ex.n})
}

pub fn exponents_from(v: &Value) -> Result<ExponentData> {
    let n = field(v, "n", "exponents")?.as_i64().ok_or_else(|| parse_err("exponents.n: expected an integer"))?;
    ExponentData::new(
        rats_from(field(v, "e", "exponents")?, "e")?,
        rats_from(field(v, "kappa", "exponents")?, "kappa")?,
        rats_from(field(v, "theta", "exponents")?, "theta")?,
        n,
    )
}

/// `[[["s", "weight"], ...], ...]`, one list of points per measure.
pub fn measures_from(v: &Value) -> Result<Vec<DiscreteMeasure>> {
    array(v, "measures")?
        .iter()
        .enumerate()
        .map(|(a, m)| {
            let at = format!("measures[{a}]");
            let pts = array(m, &at)?
                .iter()
                .map(|p| {
                    let pair = array(p, &at)?;
                    if pair.len() != 2 {
                        return Err(parse_err(format!("{at}: points are [s, weight] pairs")));
                    }
                    Ok((rat_from(&pair[0], &at)?, rat_from(&pair[1], &at)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(DiscreteMeasure::new(pts))
        })
        .collect()
}

pub fn measures(ms: &[DiscreteMeasure]) -> Value {
    Value::Array(
        ms.iter()
            .map(|m| Value::Array(m.points.iter().map(|(s, w)| Value::Array(vec![rat(s), rat(w)])).collect()))
            .collect(),
    )
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
