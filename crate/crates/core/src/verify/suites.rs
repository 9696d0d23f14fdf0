use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use super::points::{ball_point, kernel_point, series_point};
use super::{Case, CasePoint, Mode, VerifyConfig};
use crate::clifford::{Multivector, Paravector, TextCoeff};
use crate::coeffring::{rational_to_f64, Jet, JetScalar, Rational, Ring};
use crate::coeffs::{admissible_points, gamma_m, half_dim, sigma_nm, AppendixIdentity};
use crate::diffop::{lift_constant, oracle_apply, DiffOperator};
use crate::error::{Error, Result};
use crate::kernels::{
    cauchy_jets, cauchy_left, cauchy_right, cauchy_series_partials, d_beta_delta_m,
    dbar_beta_delta_m, fueter_sce, harmonic, laplacian_power, lemma_sides, polyanalytic,
    CatalogEntry, Form, LemmaCase, LemmaOp, Side,
};
use crate::parallel::{par_map, Execution};
use crate::quadrature::{
    cauchy_reconstruct, convergence_table, decays_geometrically, fueter_sce_integral,
    slice_independence, ContourSpec, ConvergenceRow, Integral, SliceFunction,
};

/// Coefficient rings the suites run over.
trait Scalar: JetScalar + TextCoeff {}
impl<R: JetScalar + TextCoeff> Scalar for R {}

/// Highest partial sum checked by the series suite.
pub const SERIES_TERMS: u32 = 60;
/// Relative slack on the series tail bound, which is itself computed in `f64`.
const SERIES_BOUND_SLACK: f64 = 1e-12;
/// Tolerance for Fueter–Sce integrals (their integrand is larger than the
/// Cauchy one).
pub const FUETER_SCE_TOL: f64 = 1e-8;
pub const QUADRATURE_NODES: usize = 256;
pub const QUADRATURE_RADIUS: f64 = 2.0;
pub const CONVERGENCE_NODES: [usize; 6] = [8, 16, 32, 64, 128, 256];
const CONVERGENCE_FLOOR: f64 = 1e-13;
const CONVERGENCE_RATIO: f64 = 0.25;

/// Result of one comparison before it becomes a [`Case`].
struct Check {
    label: String,
    params: Vec<(&'static str, Value)>,
    residual: Option<f64>,
    pass: bool,
    detail: Option<String>,
    secs: f64,
}

impl Check {
    fn from_result(
        label: String,
        params: Vec<(&'static str, Value)>,
        r: Result<(f64, bool)>,
        secs: f64,
    ) -> Self {
        let (residual, pass, detail) = match r {
            Ok((res, pass)) => (Some(res), pass, None),
            Err(e) => (None, false, Some(e.to_string())),
        };
        Check {
            label,
            params,
            residual,
            pass,
            detail,
            secs,
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_secs_f64())
}

/// Exact rings must agree exactly; floats within `tol` relative to
/// `max(1, |expected|)`.
fn compare<R: Ring>(
    got: &Multivector<R>,
    expected: &Multivector<R>,
    tol: f64,
) -> Result<(f64, bool)> {
    let d = got.try_sub(expected)?;
    if R::EXACT {
        Ok((d.norm(), d.is_zero()))
    } else {
        let r = d.norm() / expected.norm().max(1.0);
        Ok((r, r <= tol))
    }
}

fn lift_point<R: Ring>(p: &Paravector<Rational>) -> Paravector<R> {
    p.map(R::from_rational)
}

fn to_case(
    n: Option<usize>,
    trial: Option<usize>,
    mode: Mode,
    point: Option<CasePoint>,
    c: Check,
) -> Case {
    let mut key = String::new();
    if let Some(n) = n {
        key.push_str(&format!("n={n}/"));
    }
    key.push_str(&c.label);
    if let Some(t) = trial {
        key.push_str(&format!("/trial={t:03}"));
    }
    let mut params: std::collections::BTreeMap<String, Value> = c
        .params
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    if let Some(n) = n {
        params.insert("n".into(), json!(n));
    }
    if let Some(t) = trial {
        params.insert("trial".into(), json!(t));
    }
    params.insert("mode".into(), json!(mode.to_string()));
    Case {
        key,
        params,
        point,
        residual: c.residual,
        pass: c.pass,
        expected_match: None,
        detail: c.detail,
        wall_time: c.secs,
    }
}

/// Runs `per_point` for every `(n, trial)` pair at a seeded kernel point,
/// in exact or float arithmetic as configured.
fn point_suite<FQ, FF>(config: &VerifyConfig, exact: FQ, float: FF) -> Result<Vec<Case>>
where
    FQ: Fn(usize, &Paravector<Rational>, &Paravector<Rational>) -> Vec<Check> + Sync + Send,
    FF: Fn(usize, &Paravector<f64>, &Paravector<f64>) -> Vec<Check> + Sync + Send,
{
    let tasks: Vec<(usize, usize)> = config
        .n
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let out = par_map(&tasks, config.execution(), |&(n, t)| {
        let (s, x) = kernel_point(config.seed, n, t);
        let mode = config.mode_for(n);
        let checks = match mode {
            Mode::Exact => exact(n, &s, &x),
            Mode::Float => float(n, &lift_point(&s), &lift_point(&x)),
        };
        let point = match mode {
            Mode::Exact => CasePoint::new(&s, &x),
            Mode::Float => CasePoint::new::<f64>(&lift_point(&s), &lift_point(&x)),
        };
        checks
            .into_iter()
            .map(|c| to_case(Some(n), Some(t), mode, Some(point.clone()), c))
            .collect::<Vec<_>>()
    });
    Ok(out.into_iter().flatten().collect())
}

fn theorem_pairs(h: u64, m: Option<u64>, beta: Option<u64>) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for mm in 0..h {
        for b in 1..=h - mm {
            if m.is_none_or(|v| v == mm) && beta.is_none_or(|v| v == b) {
                out.push((mm, b));
            }
        }
    }
    out
}

fn theorem_at<R: Scalar>(
    n: usize,
    conj: bool,
    pairs: &[(u64, u64)],
    s: &Paravector<R>,
    x: &Paravector<R>,
    tol: f64,
) -> Vec<Check> {
    let h = half_dim(n).expect("validated");
    let order = pairs
        .iter()
        .map(|&(m, b)| (b + 2 * m) as usize)
        .max()
        .unwrap_or(0);
    // one jet evaluation serves every (m, β) at this point
    let (jets, jet_secs) = timed(|| cauchy_jets::<R>(Side::Left, s, x, order));
    let share = jet_secs / pairs.len().max(1) as f64;
    let base = if conj {
        DiffOperator::dirac_conj(n)
    } else {
        DiffOperator::dirac(n)
    };
    let mut out = Vec::new();
    for &(m, beta) in pairs {
        let params = vec![("m", json!(m)), ("beta", json!(beta))];
        let (r, secs) = timed(|| {
            let jets = jets.as_ref().map_err(Clone::clone)?;
            let op = DiffOperator::power_compose(&base, beta as u32, m as u32);
            let oracle = op.apply_to_jets(jets)?;
            let expr = if conj {
                dbar_beta_delta_m(n, m, beta)?
            } else {
                d_beta_delta_m(n, m, beta)?
            };
            compare(&expr.eval(s, x)?, &oracle, tol)
        });
        out.push(Check::from_result(
            format!("m={m}/beta={beta}"),
            params.clone(),
            r,
            secs + share,
        ));
        if conj && beta == h - m {
            let (r, secs) = timed(|| {
                let closed = dbar_beta_delta_m(n, m, beta)?.eval(s, x)?;
                let reduced = polyanalytic(n, m)?.eval(s, x)?;
                compare(&closed, &reduced, tol)
            });
            let mut params = params;
            params.push(("check", json!("boundary-polyanalytic")));
            out.push(Check::from_result(
                format!("m={m}/beta={beta}/boundary"),
                params,
                r,
                secs,
            ));
        }
    }
    out
}

pub(super) fn theorem(config: &VerifyConfig, conj: bool) -> Result<Vec<Case>> {
    let mut any = false;
    for &n in &config.n {
        any |= !theorem_pairs(half_dim(n)?, config.m, config.beta).is_empty();
    }
    if !any {
        return Err(Error::InvalidParams(
            "no admissible (m, beta) with m + beta <= h_n for the requested dimensions".into(),
        ));
    }
    let tol = config.tol;
    let pairs = |n: usize| theorem_pairs(half_dim(n).expect("validated"), config.m, config.beta);
    point_suite(
        config,
        |n, s, x| theorem_at(n, conj, &pairs(n), s, x, tol),
        |n, s, x| theorem_at(n, conj, &pairs(n), s, x, tol),
    )
}

fn lemma_cases(m: Option<u64>) -> Vec<LemmaCase> {
    let mut out = Vec::new();
    for op in [LemmaOp::Dirac, LemmaOp::DiracConj] {
        for formula in 1..=4u8 {
            for mm in 1..=4u32 {
                if m.is_some_and(|v| v != mm as u64) {
                    continue;
                }
                let ks = if LemmaCase::uses_k(formula) {
                    0..=3
                } else {
                    0..=0
                };
                for k in ks {
                    out.push(LemmaCase::new(op, formula, mm, k).expect("valid lemma case"));
                }
            }
        }
    }
    out
}

fn lemmas_at<R: Scalar>(
    cases: &[LemmaCase],
    s: &Paravector<R>,
    x: &Paravector<R>,
    tol: f64,
) -> Vec<Check> {
    cases
        .iter()
        .map(|case| {
            let (r, secs) = timed(|| {
                let (lhs, rhs) = lemma_sides(case, s, x)?;
                compare(&rhs, &lhs, tol)
            });
            let params = vec![
                ("op", json!(case.op.label())),
                ("formula", json!(case.formula)),
                ("m", json!(case.m)),
                ("k", json!(case.k)),
            ];
            Check::from_result(case.key(), params, r, secs)
        })
        .collect()
}

pub(super) fn lemmas(config: &VerifyConfig) -> Result<Vec<Case>> {
    let cases = lemma_cases(config.m);
    if cases.is_empty() {
        return Err(Error::InvalidParams(
            "lemma exponent must be in 1..=4".into(),
        ));
    }
    let tol = config.tol;
    point_suite(
        config,
        |_, s, x| lemmas_at(&cases, s, x, tol),
        |_, s, x| lemmas_at(&cases, s, x, tol),
    )
}

fn forms_at<R: Scalar>(s: &Paravector<R>, x: &Paravector<R>, tol: f64) -> Vec<Check> {
    [Side::Left, Side::Right]
        .into_iter()
        .map(|side| {
            let (r, secs) = timed(|| {
                let (one, two) = match side {
                    Side::Left => (cauchy_left(s, x, Form::I)?, cauchy_left(s, x, Form::II)?),
                    Side::Right => (cauchy_right(s, x, Form::I)?, cauchy_right(s, x, Form::II)?),
                };
                compare(&one, &two, tol)
            });
            let name = match side {
                Side::Left => "left",
                Side::Right => "right",
            };
            Check::from_result(
                format!("forms/{name}"),
                vec![("side", json!(name))],
                r,
                secs,
            )
        })
        .collect()
}

pub(super) fn forms(config: &VerifyConfig) -> Result<Vec<Case>> {
    let tol = config.tol;
    point_suite(
        config,
        |_, s, x| forms_at(s, x, tol),
        |_, s, x| forms_at(s, x, tol),
    )
}

fn special_at<R: Scalar>(
    n: usize,
    m_filter: Option<u64>,
    s: &Paravector<R>,
    x: &Paravector<R>,
    tol: f64,
) -> Vec<Check> {
    let h = half_dim(n).expect("validated");
    let keep = |m: u64| m_filter.is_none_or(|v| v == m);
    let mut out = Vec::new();

    // harmonic kernel of exponent m + 1 is the β = 1 theorem kernel
    for m in (0..h).filter(|&m| keep(m)) {
        let (r, secs) = timed(|| {
            let a = harmonic(n, m + 1)?.eval(s, x)?;
            let b = d_beta_delta_m(n, m, 1)?.eval(s, x)?;
            compare(&a, &b, tol)
        });
        out.push(Check::from_result(
            format!("harmonic-vs-theorem-d/m={m}"),
            vec![("m", json!(m))],
            r,
            secs,
        ));
    }

    let (jets, jet_secs) = timed(|| cauchy_jets::<R>(Side::Left, s, x, 2 * h as usize));
    let lap_ms: Vec<u64> = (1..=h).filter(|&m| keep(m)).collect();
    let poly_ls: Vec<u64> = (0..h).filter(|&l| keep(l)).collect();
    let share = jet_secs / (lap_ms.len() + poly_ls.len() + 1) as f64;
    let apply =
        |op: DiffOperator, expr: Result<crate::kernels::KernelExpr>| -> Result<(f64, bool)> {
            let jets = jets.as_ref().map_err(Clone::clone)?;
            let oracle = op.apply_to_jets(jets)?;
            compare(&expr?.eval(s, x)?, &oracle, tol)
        };
    for &m in &lap_ms {
        let (r, secs) = timed(|| {
            apply(
                DiffOperator::laplacian(n).pow(m as u32),
                laplacian_power(n, m),
            )
        });
        out.push(Check::from_result(
            format!("laplacian-power/m={m}"),
            vec![("m", json!(m))],
            r,
            secs + share,
        ));
    }
    for &l in &poly_ls {
        let op =
            DiffOperator::power_compose(&DiffOperator::dirac_conj(n), (h - l) as u32, l as u32);
        let (r, secs) = timed(|| apply(op, polyanalytic(n, l)));
        out.push(Check::from_result(
            format!("polyanalytic/l={l}"),
            vec![("l", json!(l))],
            r,
            secs + share,
        ));
    }
    let (r, secs) = timed(|| {
        apply(
            DiffOperator::laplacian(n).pow(h as u32),
            fueter_sce(n, false),
        )
    });
    out.push(Check::from_result(
        "fueter-sce".into(),
        vec![],
        r,
        secs + share,
    ));
    let (r, secs) = timed(|| {
        let a = fueter_sce(n, false)?.eval(s, x)?;
        let b = laplacian_power(n, h)?.eval(s, x)?;
        compare(&a, &b, tol)
    });
    out.push(Check::from_result(
        "fueter-sce-vs-laplacian-power".into(),
        vec![],
        r,
        secs,
    ));
    out.extend(forms_at(s, x, tol));
    out
}

pub(super) fn special_cases(config: &VerifyConfig) -> Result<Vec<Case>> {
    let tol = config.tol;
    let m = config.m;
    let mut cases = point_suite(
        config,
        |n, s, x| special_at(n, m, s, x, tol),
        |n, s, x| special_at(n, m, s, x, tol),
    )?;
    // σ_{n,m+1} = -2(h_n - m) γ_m
    for &n in &config.n {
        let h = half_dim(n)?;
        for mm in (0..h).filter(|&v| m.is_none_or(|f| f == v)) {
            let (r, secs) = timed(|| -> Result<(f64, bool)> {
                let lhs = sigma_nm(h, mm + 1)?;
                let rhs = BigInt::from(-2 * (h as i64 - mm as i64)) * gamma_m(h, mm)?;
                let d = (lhs - rhs).abs();
                Ok((d.to_f64().unwrap_or(f64::INFINITY), d == BigInt::from(0)))
            });
            let c = Check::from_result(
                format!("sigma-gamma/m={mm}"),
                vec![("m", json!(mm))],
                r,
                secs,
            );
            cases.push(to_case(Some(n), None, Mode::Exact, None, c));
        }
    }
    Ok(cases)
}

fn monogenic_at<R: Scalar>(n: usize, s: &Paravector<R>, x: &Paravector<R>, tol: f64) -> Vec<Check> {
    let (r, secs) = timed(|| -> Result<(f64, bool)> {
        let kernel = fueter_sce(n, false)?;
        let sj = lift_constant(s);
        let v = oracle_apply(&DiffOperator::dirac(n), |xj| kernel.eval(&sj, xj), x)?;
        compare(&v, &Multivector::zero(n), tol)
    });
    vec![Check::from_result(
        "dirac-fueter-sce".into(),
        vec![],
        r,
        secs,
    )]
}

pub(super) fn monogenic(config: &VerifyConfig) -> Result<Vec<Case>> {
    let tol = config.tol;
    point_suite(
        config,
        |n, s, x| monogenic_at(n, s, x, tol),
        |n, s, x| monogenic_at(n, s, x, tol),
    )
}

fn polyharmonic_at<R: Scalar>(
    n: usize,
    m_filter: Option<u64>,
    s: &Paravector<R>,
    x: &Paravector<R>,
    tol: f64,
) -> Vec<Check> {
    let h = half_dim(n).expect("validated");
    (1..=h)
        .filter(|&m| m_filter.is_none_or(|v| v == m))
        .map(|m| {
            let power = h - m + 1;
            let (r, secs) = timed(|| -> Result<(f64, bool)> {
                let kernel = harmonic(n, m)?;
                let sj = lift_constant(s);
                let op = DiffOperator::laplacian(n).pow(power as u32);
                let v = oracle_apply(&op, |xj| kernel.eval(&sj, xj), x)?;
                compare(&v, &Multivector::zero(n), tol)
            });
            Check::from_result(
                format!("m={m}"),
                vec![("m", json!(m)), ("laplacian_power", json!(power))],
                r,
                secs,
            )
        })
        .collect()
}

pub(super) fn polyharmonic(config: &VerifyConfig) -> Result<Vec<Case>> {
    let tol = config.tol;
    let m = config.m;
    point_suite(
        config,
        |n, s, x| polyharmonic_at(n, m, s, x, tol),
        |n, s, x| polyharmonic_at(n, m, s, x, tol),
    )
}

pub(super) fn appendix(config: &VerifyConfig) -> Result<Vec<Case>> {
    let ids: Vec<AppendixIdentity> = AppendixIdentity::ALL.to_vec();
    let hn_max = config.hn_max;
    let out = par_map(&ids, config.execution(), |&id| {
        admissible_points(id, hn_max)
            .into_iter()
            .map(|p| {
                let (r, secs) = timed(|| -> Result<(f64, bool)> {
                    let (lhs, rhs) = id.sides(p)?;
                    let d = (&lhs - &rhs).abs();
                    Ok((d.to_f64().unwrap_or(f64::INFINITY), lhs == rhs))
                });
                let label = format!(
                    "{}/hn={:02}/m={:02}/k={:02}/j={:02}",
                    id.label(),
                    p.hn,
                    p.m,
                    p.k,
                    p.j
                );
                let params = vec![
                    ("identity", json!(id.label())),
                    ("hn", json!(p.hn)),
                    ("m", json!(p.m)),
                    ("k", json!(p.k)),
                    ("j", json!(p.j)),
                ];
                to_case(
                    None,
                    None,
                    Mode::Exact,
                    None,
                    Check::from_result(label, params, r, secs),
                )
            })
            .collect::<Vec<_>>()
    });
    Ok(out.into_iter().flatten().collect())
}

/// Partial sums are computed exactly at dyadic points, so the observed
/// error is exact; only the bound is a float.
pub(super) fn series(config: &VerifyConfig) -> Result<Vec<Case>> {
    let tasks: Vec<(usize, usize)> = config
        .n
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let out = par_map(&tasks, config.execution(), |&(n, t)| {
        let (s, x) = series_point(config.seed, n, t);
        let point = CasePoint::new(&s, &x);
        let start = Instant::now();
        let computed = cauchy_series_partials(&s, &x, SERIES_TERMS)
            .and_then(|p| Ok((p, cauchy_left(&s, &x, Form::II)?)));
        let share = start.elapsed().as_secs_f64() / (SERIES_TERMS + 1) as f64;
        let s_norm = rational_to_f64(&s.norm_sq()).sqrt();
        let rho = (rational_to_f64(&x.norm_sq()) / rational_to_f64(&s.norm_sq())).sqrt();
        (0..=SERIES_TERMS)
            .map(|k| {
                let bound = rho.powi(k as i32 + 1) / ((1.0 - rho) * s_norm);
                let (r, secs) = timed(|| -> Result<(f64, bool)> {
                    let (partials, exact) = computed.as_ref().map_err(Clone::clone)?;
                    let err = partials[k as usize].try_sub(exact)?.norm();
                    Ok((err, err <= bound * (1.0 + SERIES_BOUND_SLACK)))
                });
                let params = vec![
                    ("N", json!(k)),
                    ("bound", json!(bound)),
                    ("ratio", json!(rho)),
                ];
                let c = Check::from_result(format!("N={k:02}"), params, r, secs + share);
                to_case(Some(n), Some(t), Mode::Exact, Some(point.clone()), c)
            })
            .collect::<Vec<_>>()
    });
    Ok(out.into_iter().flatten().collect())
}

/// Printed, derived and oracle values of one entry at one point.
fn catalog_at<R: Scalar>(
    entry: &CatalogEntry,
    s: &Paravector<R>,
    x: &Paravector<R>,
    tol: f64,
) -> Result<((f64, bool), (f64, bool))> {
    let op = entry.operator.build(entry.n);
    let jets = cauchy_jets::<R>(Side::Left, s, x, op.order())?;
    let oracle = op.apply_to_jets(&jets)?;
    let printed = compare(&entry.printed.eval(s, x)?, &oracle, tol)?;
    let derived = compare(&entry.derived.eval(s, x)?, &oracle, tol)?;
    Ok((printed, derived))
}

pub(super) fn catalog(config: &VerifyConfig) -> Result<Vec<Case>> {
    let entries: Vec<CatalogEntry> = crate::kernels::catalog()
        .into_iter()
        .filter(|e| config.n.contains(&e.n))
        .collect();
    if entries.is_empty() {
        return Err(Error::InvalidParams(
            "catalog entries exist only for n = 3 and n = 5".into(),
        ));
    }
    let tol = config.tol;
    let out = par_map(&entries, config.execution(), |entry| {
        let mode = config.mode_for(entry.n);
        let start = Instant::now();
        let mut printed_max: f64 = 0.0;
        let mut derived_max: f64 = 0.0;
        let mut printed_all = true;
        let mut derived_all = true;
        let mut error = None;
        for t in 0..config.trials {
            let (s, x) = kernel_point(config.seed, entry.n, t);
            let r = match mode {
                Mode::Exact => catalog_at(entry, &s, &x, tol),
                Mode::Float => catalog_at::<f64>(entry, &lift_point(&s), &lift_point(&x), tol),
            };
            match r {
                Ok(((pr, pp), (dr, dp))) => {
                    printed_max = printed_max.max(pr);
                    derived_max = derived_max.max(dr);
                    printed_all &= pp;
                    derived_all &= dp;
                }
                Err(e) => {
                    error = Some(e.to_string());
                    break;
                }
            }
        }
        let (residual, pass, detail) = match error {
            Some(e) => (None, false, Some(e)),
            None if entry.expected_match => (
                Some(printed_max),
                printed_all,
                Some(format!("printed: {}", entry.printed_text)),
            ),
            None => (
                Some(derived_max),
                derived_all && !printed_all,
                Some(format!(
                    "printed: {} (residual {printed_max:e}); oracle-confirmed: {}",
                    entry.printed_text, entry.derived
                )),
            ),
        };
        let mut params = std::collections::BTreeMap::new();
        params.insert("n".to_string(), json!(entry.n));
        params.insert("operator".to_string(), json!(entry.operator.label()));
        params.insert("points".to_string(), json!(config.trials));
        params.insert("mode".to_string(), json!(mode.to_string()));
        Case {
            key: entry.id.to_string(),
            params,
            point: None,
            residual,
            pass,
            expected_match: Some(entry.expected_match),
            detail,
            wall_time: start.elapsed().as_secs_f64(),
        }
    });
    Ok(out)
}

/// Unit vector in a direction other than `e1`, to test slice independence.
fn second_axis(n: usize) -> Vec<f64> {
    let mut axis = vec![0.0; n];
    if n >= 3 {
        axis[1] = 0.6;
        axis[2] = 0.8;
    } else {
        axis[n - 1] = 1.0;
    }
    axis
}

fn quadrature_point(n: usize, x: &Paravector<f64>, tol: f64) -> Result<Vec<Check>> {
    let seq = Execution::Sequential;
    let contour = ContourSpec::in_generator_slice(n, 1, 0.0, QUADRATURE_RADIUS, QUADRATURE_NODES)?;
    let mut out = Vec::new();
    for k in 0..=8usize {
        let f = SliceFunction::power(k);
        let (r, secs) = timed(|| -> Result<(f64, bool)> {
            let v = cauchy_reconstruct(&f, x, &contour, seq)?;
            let err = v.try_sub(&f.eval(x)?)?.norm();
            Ok((err, err <= tol))
        });
        out.push(Check::from_result(
            format!("reconstruct/k={k}"),
            vec![("k", json!(k))],
            r,
            secs,
        ));
    }
    if n == 3 {
        let (r, secs) = timed(|| -> Result<(f64, bool)> {
            let v = fueter_sce_integral(&SliceFunction::power(2), x, &contour, seq)?;
            let err = v.try_sub(&Multivector::scalar(n, -4.0))?.norm();
            Ok((err, err <= FUETER_SCE_TOL))
        });
        out.push(Check::from_result(
            "fueter-sce-square".into(),
            vec![],
            r,
            secs,
        ));
    }
    let h = half_dim(n)? as u32;
    let lap = DiffOperator::laplacian(n).pow(h);
    for k in 0..=5usize {
        let f = SliceFunction::power(k);
        let (r, secs) = timed(|| -> Result<(f64, bool)> {
            let v = fueter_sce_integral(&f, x, &contour, seq)?;
            let w = oracle_apply(&lap, |y: &Paravector<Jet<f64>>| f.eval(y), x)?;
            compare(&v, &w, FUETER_SCE_TOL)
        });
        out.push(Check::from_result(
            format!("fueter-sce-oracle/k={k}"),
            vec![("k", json!(k))],
            r,
            secs,
        ));
    }
    let (r, secs) = timed(|| -> Result<(f64, bool)> {
        let other = ContourSpec::new(second_axis(n), 0.0, QUADRATURE_RADIUS, QUADRATURE_NODES)?;
        let d = slice_independence(&SliceFunction::power(4), x, &contour, &other, seq)?;
        Ok((d, d <= tol))
    });
    out.push(Check::from_result(
        "slice-independence".into(),
        vec![("k", json!(4))],
        r,
        secs,
    ));
    Ok(out)
}

pub(super) fn quadrature(config: &VerifyConfig) -> Result<(Vec<Case>, Vec<ConvergenceRow>)> {
    let tasks: Vec<(usize, usize)> = config
        .n
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let tol = config.tol;
    let out = par_map(&tasks, config.execution(), |&(n, t)| -> Result<Vec<Case>> {
        let x = ball_point(config.seed, n, t);
        let point = CasePoint::x_only(&x);
        Ok(quadrature_point(n, &x, tol)?
            .into_iter()
            .map(|c| to_case(Some(n), Some(t), Mode::Float, Some(point.clone()), c))
            .collect())
    });
    let mut cases: Vec<Case> = Vec::new();
    for r in out {
        cases.extend(r?);
    }

    // convergence at the first dimension and first point
    let n = *config
        .n
        .first()
        .ok_or_else(|| Error::InvalidParams("no dimensions configured".into()))?;
    let x = ball_point(config.seed, n, 0);
    let f = SliceFunction::power(8);
    let contour =
        ContourSpec::in_generator_slice(n, 1, 0.0, QUADRATURE_RADIUS, CONVERGENCE_NODES[0])?;
    let (rows, secs) = timed(|| {
        convergence_table(
            Integral::Cauchy,
            &f,
            &x,
            &contour,
            &f.eval(&x)?,
            &CONVERGENCE_NODES,
            config.execution(),
        )
    });
    let rows = rows?;
    let point = CasePoint::x_only(&x);
    for (i, row) in rows.iter().enumerate() {
        let ok =
            i == 0 || decays_geometrically(&rows[i - 1..=i], CONVERGENCE_FLOOR, CONVERGENCE_RATIO);
        let c = Check {
            label: format!("convergence/N={:04}", row.nodes),
            params: vec![
                ("N", json!(row.nodes)),
                ("k", json!(8)),
                ("ratio", json!(row.ratio)),
            ],
            residual: Some(row.abs_error),
            pass: ok,
            detail: None,
            secs: secs / rows.len() as f64,
        };
        cases.push(to_case(Some(n), None, Mode::Float, Some(point.clone()), c));
    }
    Ok((cases, rows))
}
