//! Contour integrals over circles in a complex slice `ℂ_I`: the slice
//! Cauchy formula and the integral form of the Fueter–Sce map. Everything
//! here runs in `f64`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::clifford::{Multivector, Paravector};
use crate::coeffring::{rational_from_f64, Rational, Ring};
use crate::error::{Error, Result};
use crate::kernels::{cauchy_left, fueter_sce_kernel, Form, Side};
use crate::parallel::{pairwise_sum, par_map, Execution};

/// A slice function, either as the pair `(α, β)` of polynomials in `(u, v)`
/// or as `Σ_k x^k a_k` with paravector coefficients.
///
/// `alpha[i][j]` is the coefficient of `u^i v^j`.
#[derive(Clone, Debug, PartialEq)]
pub enum SliceFunction {
    Tables {
        alpha: Vec<Vec<f64>>,
        beta: Vec<Vec<f64>>,
    },
    Polynomial {
        coeffs: Vec<Paravector<f64>>,
    },
}

fn table_entries(t: &[Vec<f64>]) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
    t.iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &c)| (i, j, c)))
}

fn table_get(t: &[Vec<f64>], i: usize, j: usize) -> f64 {
    t.get(i).and_then(|row| row.get(j)).copied().unwrap_or(0.0)
}

fn lift<R: Ring>(v: f64) -> Result<R> {
    rational_from_f64(v)
        .map(|q: Rational| R::from_rational(&q))
        .ok_or_else(|| Error::InvalidParams(format!("non-finite coefficient {v}")))
}

/// Builds `f(x) = α(x₀, |x̲|) + (x̲/|x̲|) β(x₀, |x̲|)` from the two tables.
pub fn slice_extend(alpha: Vec<Vec<f64>>, beta: Vec<Vec<f64>>) -> Result<SliceFunction> {
    for (i, j, c) in table_entries(&alpha) {
        if c != 0.0 && j % 2 == 1 {
            return Err(Error::InvalidParams(format!(
                "even-odd condition: alpha has odd power v^{j} (u^{i})"
            )));
        }
        if !c.is_finite() {
            return Err(Error::InvalidParams("non-finite coefficient".into()));
        }
    }
    for (i, j, c) in table_entries(&beta) {
        if c != 0.0 && j % 2 == 0 {
            return Err(Error::InvalidParams(format!(
                "even-odd condition: beta has even power v^{j} (u^{i})"
            )));
        }
        if !c.is_finite() {
            return Err(Error::InvalidParams("non-finite coefficient".into()));
        }
    }
    Ok(SliceFunction::Tables { alpha, beta })
}

impl SliceFunction {
    /// `x^k` in table form, from the binomial expansion of `(u + iv)^k`.
    pub fn power(k: usize) -> Self {
        let mut alpha = vec![vec![0.0; k + 1]; k + 1];
        let mut beta = vec![vec![0.0; k + 1]; k + 1];
        let mut binom = 1.0;
        for j in 0..=k {
            let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if j % 2 == 0 {
                alpha[k - j][j] = sign * binom;
            } else {
                beta[k - j][j] = sign * binom;
            }
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
        SliceFunction::Tables { alpha, beta }
    }

    /// `Σ_k x^k a_k`.
    pub fn polynomial(coeffs: Vec<Paravector<f64>>) -> Result<Self> {
        if let Some(first) = coeffs.first() {
            if coeffs.iter().any(|c| c.dim() != first.dim()) {
                return Err(Error::InvalidParams("coefficient dimensions differ".into()));
            }
        }
        Ok(SliceFunction::Polynomial { coeffs })
    }

    /// Checks `∂_u α = ∂_v β` and `∂_v α = -∂_u β` coefficientwise.
    pub fn satisfies_cauchy_riemann(&self, tol: f64) -> bool {
        let (alpha, beta) = match self {
            SliceFunction::Tables { alpha, beta } => (alpha, beta),
            SliceFunction::Polynomial { .. } => return true,
        };
        let deg = |t: &[Vec<f64>]| (t.len(), t.iter().map(|r| r.len()).max().unwrap_or(0));
        let (ai, aj) = deg(alpha);
        let (bi, bj) = deg(beta);
        let (di, dj) = (ai.max(bi) + 1, aj.max(bj) + 1);
        for i in 0..di {
            for j in 0..dj {
                let du_a = (i + 1) as f64 * table_get(alpha, i + 1, j);
                let dv_b = (j + 1) as f64 * table_get(beta, i, j + 1);
                let dv_a = (j + 1) as f64 * table_get(alpha, i, j + 1);
                let du_b = (i + 1) as f64 * table_get(beta, i + 1, j);
                if (du_a - dv_b).abs() > tol || (dv_a + du_b).abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Evaluates over any coefficient ring. The tables are rewritten as
    /// `α̃(x₀, |x̲|²) + x̲ β̃(x₀, |x̲|²)`, so no square root is needed and
    /// `x̲ = 0` gives `α(x₀, 0)`.
    pub fn eval<R: Ring>(&self, x: &Paravector<R>) -> Result<Multivector<R>> {
        let n = x.dim();
        match self {
            SliceFunction::Tables { alpha, beta } => {
                let x0 = x.re();
                let vsq = x.vector_norm_sq();
                let mut a = R::zero();
                let mut b = R::zero();
                for (table, acc, shift) in [(alpha, &mut a, 0usize), (beta, &mut b, 1)] {
                    for (i, j, c) in table_entries(table) {
                        if c == 0.0 {
                            continue;
                        }
                        let mut term = lift::<R>(c)?;
                        for _ in 0..i {
                            term = term.mul(x0);
                        }
                        for _ in 0..(j - shift) / 2 {
                            term = term.mul(&vsq);
                        }
                        acc.add_assign(&term);
                    }
                }
                let out = Paravector::new(a, x.vector().iter().map(|v| v.mul(&b)).collect());
                Ok(out.to_multivector())
            }
            SliceFunction::Polynomial { coeffs } => {
                let mut acc = Multivector::zero(n);
                let mut xk = Multivector::one(n);
                let xm = x.to_multivector();
                for (k, a) in coeffs.iter().enumerate() {
                    if a.dim() != n {
                        return Err(Error::DimensionMismatch {
                            left: a.dim(),
                            right: n,
                        });
                    }
                    if k > 0 {
                        xk = xk.geometric_product(&xm)?;
                    }
                    let ak = Paravector::from_components(
                        a.components()
                            .into_iter()
                            .map(lift::<R>)
                            .collect::<Result<_>>()?,
                    )?;
                    acc = acc.try_add(&xk.geometric_product(&ak.to_multivector())?)?;
                }
                Ok(acc)
            }
        }
    }
}

/// A circle `center + radius·e^{Iθ}` in the slice `ℂ_I`, sampled at `nodes`
/// equispaced angles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub axis: Vec<f64>,
    pub center: f64,
    pub radius: f64,
    pub nodes: usize,
}

const UNIT_TOL: f64 = 1e-12;

impl ContourSpec {
    pub fn new(axis: Vec<f64>, center: f64, radius: f64, nodes: usize) -> Result<Self> {
        let spec = ContourSpec {
            axis,
            center,
            radius,
            nodes,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Circle in the slice through `e_i` (1-based).
    pub fn in_generator_slice(
        n: usize,
        i: usize,
        center: f64,
        radius: f64,
        nodes: usize,
    ) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidParams(format!(
                "generator e{i} out of range for n = {n}"
            )));
        }
        let mut axis = vec![0.0; n];
        axis[i - 1] = 1.0;
        Self::new(axis, center, radius, nodes)
    }

    pub fn validate(&self) -> Result<()> {
        if self.axis.is_empty() {
            return Err(Error::InvalidParams("contour axis is empty".into()));
        }
        let norm_sq: f64 = self.axis.iter().map(|v| v * v).sum();
        if (norm_sq - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidParams(format!(
                "contour axis is not a unit vector (|I|² = {norm_sq})"
            )));
        }
        if !(self.radius > 0.0 && self.radius.is_finite() && self.center.is_finite()) {
            return Err(Error::InvalidParams(
                "contour radius must be positive".into(),
            ));
        }
        if self.nodes < 4 || !self.nodes.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "contour nodes must be even and at least 4, got {}",
                self.nodes
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.axis.len()
    }

    pub fn with_nodes(&self, nodes: usize) -> Result<Self> {
        Self::new(self.axis.clone(), self.center, self.radius, nodes)
    }

    /// Rejects points outside or on the boundary of the ball the contour
    /// bounds in every slice.
    pub fn check_interior(&self, x: &Paravector<f64>) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: x.dim(),
            });
        }
        let d = ((x.re() - self.center).powi(2) + x.vector_norm_sq()).sqrt();
        let slack = UNIT_TOL * self.radius.max(1.0);
        if (d - self.radius).abs() <= slack {
            return Err(Error::OutsideDomain("x lies on the contour".into()));
        }
        if d > self.radius {
            return Err(Error::OutsideDomain("x lies outside the contour".into()));
        }
        Ok(())
    }
}

/// One quadrature node `s_j` and its weight `ds_I = (-I)(ds/dθ)(2π/N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourNode {
    pub s: Paravector<f64>,
    pub weight: Paravector<f64>,
}

pub fn contour_nodes(contour: &ContourSpec) -> Result<Vec<ContourNode>> {
    contour.validate()?;
    let n = contour.nodes;
    let step = 2.0 * PI / n as f64;
    Ok((0..n)
        .map(|j| {
            let theta = step * j as f64;
            let (sin, cos) = theta.sin_cos();
            let (re, im) = (contour.radius * cos, contour.radius * sin);
            let s = Paravector::new(
                contour.center + re,
                contour.axis.iter().map(|a| a * im).collect(),
            );
            // (-I)·I(s - c) = s - c
            let weight = Paravector::new(
                re * step,
                contour.axis.iter().map(|a| a * im * step).collect(),
            );
            ContourNode { s, weight }
        })
        .collect())
}

/// Which kernel is integrated against `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Integral {
    /// `S_L^{-1}`; reproduces `f(x)`.
    Cauchy,
    /// `F_L^n`; gives `Δ^{h_n} f(x)`.
    FueterSce,
}

/// `(1/2π) Σ_j K(s_j, x) ds_I f(s_j)` summed pairwise in node order.
pub fn contour_integral(
    kind: Integral,
    f: &SliceFunction,
    x: &Paravector<f64>,
    contour: &ContourSpec,
    exec: Execution,
) -> Result<Multivector<f64>> {
    contour.check_interior(x)?;
    let nodes = contour_nodes(contour)?;
    let n = x.dim();
    let terms = par_map(&nodes, exec, |node| -> Result<Multivector<f64>> {
        let k = match kind {
            Integral::Cauchy => cauchy_left(&node.s, x, Form::II)?,
            Integral::FueterSce => fueter_sce_kernel(&node.s, x, Side::Left)?,
        };
        let fs = f.eval(&node.s)?;
        k.geometric_product(&node.weight.to_multivector())?
            .geometric_product(&fs)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let sum = pairwise_sum(&terms, &Multivector::zero(n), &|a: &Multivector<f64>, b| {
        a.try_add(b).expect("same dimension")
    });
    Ok(sum.scale(&(1.0 / (2.0 * PI))))
}

/// Slice Cauchy formula: approximates `f(x)`.
pub fn cauchy_reconstruct(
    f: &SliceFunction,
    x: &Paravector<f64>,
    contour: &ContourSpec,
    exec: Execution,
) -> Result<Multivector<f64>> {
    contour_integral(Integral::Cauchy, f, x, contour, exec)
}

/// Integral Fueter–Sce map: approximates `Δ^{h_n} f(x)`.
pub fn fueter_sce_integral(
    f: &SliceFunction,
    x: &Paravector<f64>,
    contour: &ContourSpec,
    exec: Execution,
) -> Result<Multivector<f64>> {
    contour_integral(Integral::FueterSce, f, x, contour, exec)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub nodes: usize,
    pub abs_error: f64,
    /// `abs_error(N) / abs_error(previous N)`
    pub ratio: Option<f64>,
}

/// Errors against `exact` for each node count.
pub fn convergence_table(
    kind: Integral,
    f: &SliceFunction,
    x: &Paravector<f64>,
    contour: &ContourSpec,
    exact: &Multivector<f64>,
    node_counts: &[usize],
    exec: Execution,
) -> Result<Vec<ConvergenceRow>> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(node_counts.len());
    for &nodes in node_counts {
        let c = contour.with_nodes(nodes)?;
        let approx = contour_integral(kind, f, x, &c, exec)?;
        let abs_error = approx.try_sub(exact)?.norm();
        let ratio = rows.last().map(|prev| {
            if prev.abs_error == 0.0 {
                if abs_error == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                abs_error / prev.abs_error
            }
        });
        rows.push(ConvergenceRow {
            nodes,
            abs_error,
            ratio,
        });
    }
    Ok(rows)
}

/// True when every step that starts above `floor` either lands at or below
/// `floor` or shrinks the error by at least `max_ratio`.
pub fn decays_geometrically(rows: &[ConvergenceRow], floor: f64, max_ratio: f64) -> bool {
    rows.windows(2).all(|w| {
        w[0].abs_error <= floor
            || w[1].abs_error <= floor
            || w[1].abs_error <= max_ratio * w[0].abs_error
    })
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("N,abs_error,ratio\n");
    for r in rows {
        let ratio = r.ratio.map(|v| format!("{v:e}")).unwrap_or_default();
        out.push_str(&format!("{},{:e},{}\n", r.nodes, r.abs_error, ratio));
    }
    out
}

/// Norm of the difference between Cauchy reconstructions in two slices.
pub fn slice_independence(
    f: &SliceFunction,
    x: &Paravector<f64>,
    a: &ContourSpec,
    b: &ContourSpec,
    exec: Execution,
) -> Result<f64> {
    let va = cauchy_reconstruct(f, x, a, exec)?;
    let vb = cauchy_reconstruct(f, x, b, exec)?;
    Ok(va.try_sub(&vb)?.norm())
}
