//! Refinements of the Schwarz inequality as [`BoundReport`]s.
//!
//! The determinant bounds compare `|x|^p |y|^p - u^p` against the p-th power
//! of
//!
//! ```text
//! det [ |x|   (|x|^p - s^p)^(1/p) ]
//!     [ |y|   (|y|^p - t^p)^(1/p) ]
//! ```
//!
//! with `s = |<x,e>|`, `t = |<y,e>|`, `u = |<x,y>|` (or the moduli of the
//! real parts). The power is taken of `|det|`: the bound comes from
//! `|d(x,e) - d(y,e)| <= d(x,y)` for the p-metric `d`, which only controls
//! the absolute difference, and a signed determinant has no real p-th power
//! for fractional `p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{self, Mode};
use crate::linalg::{inner_unchecked, CVector, Tolerance};

pub use crate::report::BoundReport;

/// Exponent and overlap selector for the p-determinant bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricParams {
    pub p: f64,
    pub mode: Mode,
}

impl MetricParams {
    pub fn new(p: f64, mode: Mode) -> Result<Self> {
        check_p(p)?;
        Ok(MetricParams { p, mode })
    }
}

impl Default for MetricParams {
    fn default() -> Self {
        MetricParams {
            p: 2.0,
            mode: Mode::Modulus,
        }
    }
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if !(p.is_finite() && p >= 2.0) {
        return Err(Error::param(format!(
            "exponent p = {p} must be a finite real >= 2"
        )));
    }
    Ok(())
}

pub(crate) fn check_nonzero(x: &CVector, what: &'static str) -> Result<()> {
    if x.is_zero() {
        return Err(Error::ZeroVector { what });
    }
    Ok(())
}

/// Checks `| |e| - 1 | <= tol` and returns `|e|`. Callers divide by it, so
/// `e` acts as the exact unit vector `e / |e|`.
pub(crate) fn unit_norm(e: &CVector, tol: &Tolerance) -> Result<f64> {
    let n = e.norm();
    if !tol.close(n, 1.0) {
        return Err(Error::NotUnit { what: "e", norm: n });
    }
    Ok(n)
}

/// Plain Schwarz: `|x| |y| >= |<x, y>|`.
pub fn schwarz_bound(x: &CVector, y: &CVector, tol: &Tolerance) -> Result<BoundReport> {
    let ip = x.inner(y)?;
    Ok(BoundReport::new(
        "schwarz",
        x.norm() * y.norm(),
        ip.norm(),
        tol,
    ))
}

/// `(|x|^2|z|^2 - |<x,z>|^2)(|y|^2|z|^2 - |<y,z>|^2) >= | <x,y>|z|^2 - <x,z><z,y> |^2`
pub fn quad_refinement(
    x: &CVector,
    y: &CVector,
    z: &CVector,
    tol: &Tolerance,
) -> Result<BoundReport> {
    x.check_dim(y)?;
    x.check_dim(z)?;
    // Binet-Cauchy: <x,y>|z|^2 - <x,z><z,y> = sum_{j<k} A_jk conj(B_jk) with
    // A = x ^ z and B = y ^ z, and |x|^2|z|^2 - |<x,z>|^2 = |A|^2.
    let a = kernel::wedge(x, z);
    let b = kernel::wedge(y, z);
    let (lhs, rhs) = if a.is_empty() {
        (0.0, 0.0)
    } else {
        let a = CVector::from_vec_unchecked(a);
        let b = CVector::from_vec_unchecked(b);
        (
            a.norm_sqr() * b.norm_sqr(),
            inner_unchecked(a.entries(), b.entries()).norm_sqr(),
        )
    };
    Ok(BoundReport::new("quad", lhs, rhs, tol))
}

/// `a >= b >= c` with `a = |x||y|`,
/// `b = |<x,y> - <x,e><e,y>| + |<x,e><e,y>|`, `c = |<x,y>|`.
#[derive(Debug, Clone, PartialEq)]
pub struct RsChain {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `a >= b`
    pub upper: BoundReport,
    /// `b >= c`
    pub lower: BoundReport,
}

pub fn rs_chain(x: &CVector, y: &CVector, e: &CVector, tol: &Tolerance) -> Result<RsChain> {
    x.check_dim(y)?;
    x.check_dim(e)?;
    let ne2 = unit_norm(e, tol)?.powi(2);
    let xe = inner_unchecked(x.entries(), e.entries());
    let ey = inner_unchecked(e.entries(), y.entries());
    // <x,y> - <x,e><e,y> through the minors against e
    let a_w = kernel::wedge(x, e);
    let b_w = kernel::wedge(y, e);
    let residual_overlap = if a_w.is_empty() {
        0.0
    } else {
        inner_unchecked(&a_w, &b_w).norm() / ne2
    };
    let a = x.norm() * y.norm();
    let b = residual_overlap + (xe * ey).norm() / ne2;
    let c = inner_unchecked(x.entries(), y.entries()).norm();
    Ok(RsChain {
        a,
        b,
        c,
        upper: BoundReport::new("rs_upper", a, b, tol),
        lower: BoundReport::new("rs_lower", b, c, tol),
    })
}

/// p-determinant bound for `p >= 2`, in either overlap mode.
pub fn detp_bound(
    x: &CVector,
    y: &CVector,
    e: &CVector,
    params: MetricParams,
    tol: &Tolerance,
) -> Result<BoundReport> {
    x.check_dim(y)?;
    x.check_dim(e)?;
    check_p(params.p)?;
    check_nonzero(x, "x")?;
    check_nonzero(y, "y")?;
    unit_norm(e, tol)?;
    let (p, mode) = (params.p, params.mode);

    let (nx, ny) = (x.norm(), y.norm());
    let lhs = kernel::abs_pow(nx * ny, p) * kernel::one_minus_cos_pow(kernel::sin2(x, y, mode), p);
    // (|x|^p - s^p)^(1/p) = |x| (1 - cos^p)^(1/p)
    let col_x = nx * kernel::root(kernel::one_minus_cos_pow(kernel::sin2(x, e, mode), p), p);
    let col_y = ny * kernel::root(kernel::one_minus_cos_pow(kernel::sin2(y, e, mode), p), p);
    let det = nx * col_y - ny * col_x;
    let label = match mode {
        Mode::Modulus => "detp_modulus",
        Mode::RealPart => "detp_real",
    };
    Ok(BoundReport::new(label, lhs, kernel::abs_pow(det, p), tol))
}

/// Second-order determinant bound with the overlaps `s`, `t` in the first
/// column.
///
/// Degenerate inputs behave as follows: when `<x,e>` (or `<y,e>`) vanishes the
/// bound is Bessel's inequality for the family `{e, x/|x|}` and the label
/// carries a `_bessel` suffix; when `x` (or `y`) is a multiple of `e` it
/// holds with equality.
pub fn det2_bound(
    x: &CVector,
    y: &CVector,
    e: &CVector,
    mode: Mode,
    tol: &Tolerance,
) -> Result<BoundReport> {
    x.check_dim(y)?;
    x.check_dim(e)?;
    let ne = unit_norm(e, tol)?;
    let s = mode.overlap(inner_unchecked(x.entries(), e.entries())) / ne;
    let t = mode.overlap(inner_unchecked(y.entries(), e.entries())) / ne;
    // (|x|^2 - s^2)^(1/2) is the length of x's component off the line of e.
    let col_x = kernel::schwarz_deficit(x, e, mode).sqrt() / ne;
    let col_y = kernel::schwarz_deficit(y, e, mode).sqrt() / ne;
    let det = s * col_y - t * col_x;
    let lhs = kernel::schwarz_deficit(x, y, mode);

    let bessel = s <= tol.slack(0.0, x.norm()) || t <= tol.slack(0.0, y.norm());
    let label = match (mode, bessel) {
        (Mode::Modulus, false) => "det2_modulus",
        (Mode::Modulus, true) => "det2_modulus_bessel",
        (Mode::RealPart, false) => "det2_real",
        (Mode::RealPart, true) => "det2_real_bessel",
    };
    Ok(BoundReport::new(label, lhs, det * det, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn v(re: &[f64]) -> CVector {
        CVector::from_real(re).unwrap()
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn schwarz_parallel_is_equality() {
        let y = CVector::from_pairs(&[(0.3, -1.0), (2.0, 0.7), (-1.1, 0.2)]).unwrap();
        let x = y.scale(Complex64::new(-1.7, 0.4));
        let r = schwarz_bound(&x, &y, &tol()).unwrap();
        assert!(r.equality, "{r}");
        let r = schwarz_bound(&v(&[1.0, 0.0]), &v(&[0.0, 1.0]), &tol()).unwrap();
        assert!(r.satisfied && !r.equality);
        assert_eq!(r.rhs, 0.0);
    }

    #[test]
    fn quad_examples() {
        let x = CVector::from_pairs(&[(1.0, 2.0), (0.5, -1.0)]).unwrap();
        let y = CVector::from_pairs(&[(0.0, 1.0), (-3.0, 0.25)]).unwrap();
        let r = quad_refinement(&x, &y, &x, &tol()).unwrap();
        assert!(r.equality && r.lhs.abs() < 1e-12 && r.rhs.abs() < 1e-12);

        let r = quad_refinement(
            &v(&[1., 0., 0.]),
            &v(&[0., 1., 0.]),
            &v(&[0., 0., 1.]),
            &tol(),
        )
        .unwrap();
        assert_eq!((r.lhs, r.rhs), (1.0, 0.0));

        let r = quad_refinement(&v(&[1., 0.]), &v(&[0., 1.]), &v(&[H, H]), &tol()).unwrap();
        assert!((r.lhs - 0.25).abs() < 1e-15 && (r.rhs - 0.25).abs() < 1e-15);
        assert!(r.equality);
    }

    #[test]
    fn quad_zero_z_and_dims() {
        let r = quad_refinement(&v(&[1., 2.]), &v(&[3., 4.]), &v(&[0., 0.]), &tol()).unwrap();
        assert!(r.equality);
        assert!(quad_refinement(&v(&[1.]), &v(&[3., 4.]), &v(&[0., 0.]), &tol()).is_err());
    }

    #[test]
    fn rs_examples() {
        let e = v(&[1.0, 0.0]);
        let r = rs_chain(&e, &e, &e, &tol()).unwrap();
        assert_eq!((r.a, r.b, r.c), (1.0, 1.0, 1.0));
        assert!(r.upper.equality && r.lower.equality);

        let r = rs_chain(&v(&[1., 0.]), &v(&[0., 1.]), &v(&[1., 0.]), &tol()).unwrap();
        assert_eq!((r.a, r.b, r.c), (1.0, 0.0, 0.0));

        let r = rs_chain(&v(&[1., 0.]), &v(&[H, H]), &v(&[0., 1.]), &tol()).unwrap();
        assert!((r.a - 1.0).abs() < 1e-15);
        assert!((r.b - H).abs() < 1e-15 && (r.c - H).abs() < 1e-15);
        assert!(r.upper.satisfied && r.lower.equality);
    }

    #[test]
    fn rs_rejects_non_unit_e() {
        assert!(matches!(
            rs_chain(&v(&[1., 0.]), &v(&[0., 1.]), &v(&[2., 0.]), &tol()),
            Err(Error::NotUnit { .. })
        ));
        assert!(matches!(
            rs_chain(&v(&[1., 0.]), &v(&[0., 1.]), &v(&[1.]), &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn detp_examples() {
        let e = v(&[1., 0.]);
        for p in [2.0, 3.0, 7.5] {
            let r = detp_bound(
                &e,
                &e,
                &e,
                MetricParams::new(p, Mode::Modulus).unwrap(),
                &tol(),
            )
            .unwrap();
            assert!(r.equality && r.lhs == 0.0 && r.rhs == 0.0);
        }

        let r = detp_bound(
            &v(&[1., 0.]),
            &v(&[0., 1.]),
            &e,
            MetricParams::default(),
            &tol(),
        )
        .unwrap();
        assert_eq!((r.lhs, r.rhs), (1.0, 1.0));
        assert!(r.equality);

        // scalar oracle: s = 0, t = u = 2^-1/2, p = 3
        let lhs = 1.0 - 2f64.powf(-1.5);
        let det = lhs.powf(1.0 / 3.0) - 1.0;
        let r = detp_bound(
            &v(&[1., 0.]),
            &v(&[H, H]),
            &v(&[0., 1.]),
            MetricParams::new(3.0, Mode::Modulus).unwrap(),
            &tol(),
        )
        .unwrap();
        assert!((r.lhs - lhs).abs() < 1e-14, "{}", r.lhs);
        assert!((r.lhs - 0.646_446_609_406_726_3).abs() < 1e-14);
        assert!((r.rhs - det.abs().powi(3)).abs() < 1e-15);
        // 0.00246 when det is rounded to -0.1350 first
        assert!((r.rhs - 0.00248).abs() < 1e-5);
        assert!(r.satisfied && !r.equality);
    }

    #[test]
    fn detp_errors() {
        let e = v(&[1., 0.]);
        let z = v(&[0., 0.]);
        assert!(matches!(
            detp_bound(&z, &e, &e, MetricParams::default(), &tol()),
            Err(Error::ZeroVector { what: "x" })
        ));
        assert!(matches!(
            detp_bound(&e, &z, &e, MetricParams::default(), &tol()),
            Err(Error::ZeroVector { what: "y" })
        ));
        assert!(MetricParams::new(1.5, Mode::Modulus).is_err());
        let bad = MetricParams {
            p: 1.0,
            mode: Mode::Modulus,
        };
        assert!(matches!(
            detp_bound(&e, &e, &e, bad, &tol()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            detp_bound(&e, &e, &v(&[0.5, 0.]), MetricParams::default(), &tol()),
            Err(Error::NotUnit { .. })
        ));
    }

    #[test]
    fn det2_examples() {
        let e = CVector::from_pairs(&[(0.6, 0.0), (0.0, 0.8)]).unwrap();
        let x = e.scale(Complex64::new(0.0, 2.0));
        let y = CVector::from_pairs(&[(1.0, -0.5), (0.3, 2.0)]).unwrap();
        for mode in [Mode::Modulus, Mode::RealPart] {
            let r = det2_bound(&x, &y, &e, mode, &tol()).unwrap();
            if mode == Mode::Modulus {
                assert!(r.equality, "{r}");
            } else {
                assert!(r.satisfied, "{r}");
            }
        }

        let r = det2_bound(
            &v(&[1., 0.]),
            &v(&[0., 1.]),
            &v(&[H, H]),
            Mode::Modulus,
            &tol(),
        )
        .unwrap();
        assert!(r.rhs.abs() < 1e-30 && r.lhs == 1.0 && r.satisfied);

        let r = det2_bound(
            &v(&[1., 0.]),
            &v(&[0., 1.]),
            &v(&[1., 0.]),
            Mode::Modulus,
            &tol(),
        )
        .unwrap();
        assert_eq!((r.lhs, r.rhs), (1.0, 1.0));
        assert!(r.equality);
        assert_eq!(r.label, "det2_modulus_bessel");
    }

    #[test]
    fn det2_bessel_branch() {
        // x orthogonal to e: the bound is |<y,e>|^2 |x|^2 + |<x,y>|^2 <= |x|^2 |y|^2
        let e = v(&[1., 0., 0.]);
        let x = CVector::from_pairs(&[(0.0, 0.0), (1.0, 1.0), (0.0, -2.0)]).unwrap();
        let y = CVector::from_pairs(&[(2.0, 0.5), (-1.0, 0.0), (0.5, 0.5)]).unwrap();
        let r = det2_bound(&x, &y, &e, Mode::Modulus, &tol()).unwrap();
        assert_eq!(r.label, "det2_modulus_bessel");
        let t2 = y.inner(&e).unwrap().norm_sqr();
        assert!((r.rhs - t2 * x.norm_sqr()).abs() < 1e-12);
        assert!(r.satisfied);
    }
}
