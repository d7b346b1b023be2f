//! Determinant bounds for n-tuples of complex numbers under
//! `<x, y> = sum_k x_k conj(y_k)`: an arbitrary unit `e`, the best standard
//! basis vector, and the uniform vector `e_k = 1/sqrt(n)` (mean form).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{self, Mode};
use crate::linalg::{CVector, CompensatedSum, Tolerance};
use crate::refinements::{check_p, det2_bound, detp_bound, MetricParams};
use crate::report::BoundReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    GeneralE,
    BasisMax,
    UniformE,
}

/// Which determinant is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// p-th power form with first column `(|x|, |y|)`.
    PForm,
    /// Square form with first column `(|<x,e>|, |<y,e>|)`.
    Quadratic,
    /// `p = 2` specialization of the basis-vector p-form.
    P2Simple,
}

impl std::str::FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "p" | "p_form" | "pform" => Ok(Order::PForm),
            "quadratic" | "quad" => Ok(Order::Quadratic),
            "p2" | "p2_simple" => Ok(Order::P2Simple),
            _ => Err(Error::param(format!(
                "unknown order '{s}' (p|quadratic|p2-simple)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NTupleReport {
    pub base: BoundReport,
    /// 1-based maximizing index; only for [`Family::BasisMax`].
    pub argmax_m: Option<usize>,
    pub family: Family,
}

fn pair(x: &[Complex64], y: &[Complex64]) -> Result<(CVector, CVector)> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok((CVector::new(x.to_vec())?, CVector::new(y.to_vec())?))
}

fn label(family: Family, order: Order) -> &'static str {
    match (family, order) {
        (Family::GeneralE, Order::PForm) => "ntuple_general_p",
        (Family::GeneralE, _) => "ntuple_general_quadratic",
        (Family::BasisMax, Order::PForm) => "ntuple_basis_max_p",
        (Family::BasisMax, Order::Quadratic) => "ntuple_basis_max_quadratic",
        (Family::BasisMax, Order::P2Simple) => "ntuple_basis_max_p2",
        (Family::UniformE, Order::PForm) => "ntuple_mean_p",
        (Family::UniformE, _) => "ntuple_mean_quadratic",
    }
}

/// `|x|^p |y|^p - |<x,y>|^p`
fn lhs_p(x: &CVector, y: &CVector, p: f64) -> f64 {
    kernel::abs_pow(x.norm() * y.norm(), p)
        * kernel::one_minus_cos_pow(kernel::sin2(x, y, Mode::Modulus), p)
}

/// `(a^p - b^p)^(1/p)` given `a^2` and `a^2 - b^2`, for `0 <= b <= a`.
fn p_column(a2: f64, deficit: f64, p: f64) -> f64 {
    if a2 <= 0.0 {
        return 0.0;
    }
    a2.sqrt() * kernel::root(kernel::one_minus_cos_pow(deficit / a2, p), p)
}

/// Bound for an arbitrary unit `e` (`sum |e_k|^2 = 1`).
pub fn general_e_bound(
    x: &[Complex64],
    y: &[Complex64],
    e: &[Complex64],
    p: f64,
    order: Order,
    tol: &Tolerance,
) -> Result<NTupleReport> {
    let (xv, yv) = pair(x, y)?;
    let ev = CVector::new(e.to_vec())?;
    xv.check_dim(&ev)?;
    let mut base = match order {
        Order::PForm => detp_bound(&xv, &yv, &ev, MetricParams::new(p, Mode::Modulus)?, tol)?,
        Order::Quadratic => det2_bound(&xv, &yv, &ev, Mode::Modulus, tol)?,
        Order::P2Simple => {
            return Err(Error::param(
                "p2-simple applies to the basis-vector family only",
            ))
        }
    };
    base.label = label(Family::GeneralE, order).into();
    Ok(NTupleReport {
        base,
        argmax_m: None,
        family: Family::GeneralE,
    })
}

/// `sum_{k != m} |x_k|^2` for every `m`, from compensated prefix and suffix sums.
fn tails(x: &CVector) -> Vec<f64> {
    let sq: Vec<f64> = x.iter().map(|z| z.norm_sqr()).collect();
    let n = sq.len();
    let mut prefix = vec![CompensatedSum::new(); n + 1];
    for k in 0..n {
        prefix[k + 1] = prefix[k];
        prefix[k + 1].add(sq[k]);
    }
    let mut suffix = vec![CompensatedSum::new(); n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1];
        suffix[k].add(sq[k]);
    }
    (0..n)
        .map(|m| prefix[m].value() + suffix[m + 1].value())
        .collect()
}

/// Maximum of the determinant bound over the standard basis vectors
/// `e = delta_m`. Ties resolve to the smallest `m`.
pub fn basis_max_bound(
    x: &[Complex64],
    y: &[Complex64],
    p: f64,
    order: Order,
    tol: &Tolerance,
) -> Result<NTupleReport> {
    let (xv, yv) = pair(x, y)?;
    let p = match order {
        Order::PForm => {
            check_p(p)?;
            p
        }
        Order::Quadratic | Order::P2Simple => 2.0,
    };
    let (nx2, ny2) = (xv.norm_sqr(), yv.norm_sqr());
    let (nx, ny) = (nx2.sqrt(), ny2.sqrt());
    let lhs = match order {
        Order::PForm => lhs_p(&xv, &yv, p),
        _ => kernel::schwarz_deficit(&xv, &yv, Mode::Modulus),
    };
    let (tx, ty) = (tails(&xv), tails(&yv));

    let mut best = f64::NEG_INFINITY;
    let mut argmax = 0;
    for m in 0..xv.dim() {
        let det = match order {
            Order::PForm => nx * p_column(ny2, ty[m], p) - ny * p_column(nx2, tx[m], p),
            Order::Quadratic => xv[m].norm() * ty[m].sqrt() - yv[m].norm() * tx[m].sqrt(),
            Order::P2Simple => nx * ty[m].sqrt() - ny * tx[m].sqrt(),
        };
        let value = kernel::abs_pow(det, p);
        if value > best {
            best = value;
            argmax = m;
        }
    }
    Ok(NTupleReport {
        base: BoundReport::new(label(Family::BasisMax, order), lhs, best, tol),
        argmax_m: Some(argmax + 1),
        family: Family::BasisMax,
    })
}

/// Sample statistics of a tuple: `(|mean|, mean of |x_k|^2, centered second moment)`.
fn moments(x: &CVector) -> (f64, f64, f64) {
    let n = x.dim() as f64;
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for z in x.iter() {
        re.add(z.re);
        im.add(z.im);
    }
    let mean = Complex64::new(re.value() / n, im.value() / n);
    let second = x.norm_sqr() / n;
    let centered = x
        .iter()
        .map(|z| (z - mean).norm_sqr())
        .collect::<CompensatedSum>()
        .value()
        / n;
    (mean.norm(), second, centered.max(0.0))
}

/// Bound for the uniform vector `e_k = 1/sqrt(n)`, written through means
/// and centered second moments. The quadratic order on real data is
/// Walker's inequality.
pub fn mean_bound(
    x: &[Complex64],
    y: &[Complex64],
    p: f64,
    order: Order,
    tol: &Tolerance,
) -> Result<NTupleReport> {
    let (xv, yv) = pair(x, y)?;
    let n = xv.dim() as f64;
    let (mx, sx, cx) = moments(&xv);
    let (my, sy, cy) = moments(&yv);
    let (lhs, rhs) = match order {
        Order::Quadratic => {
            let det = mx * cy.sqrt() - my * cx.sqrt();
            (
                kernel::schwarz_deficit(&xv, &yv, Mode::Modulus),
                kernel::abs_pow(n * det, 2.0),
            )
        }
        Order::PForm => {
            check_p(p)?;
            let det = sx.sqrt() * p_column(sy, cy, p) - sy.sqrt() * p_column(sx, cx, p);
            (lhs_p(&xv, &yv, p), kernel::abs_pow(n * det, p))
        }
        Order::P2Simple => {
            return Err(Error::param(
                "p2-simple applies to the basis-vector family only",
            ))
        }
    };
    Ok(NTupleReport {
        base: BoundReport::new(label(Family::UniformE, order), lhs, rhs, tol),
        argmax_m: None,
        family: Family::UniformE,
    })
}
