//! Projective distances `d_p`, `delta_p`, the angles Psi and Phi, and the
//! triangle-type inequalities between them.
//!
//! `d_p(x, y) = (1 - |<x,y>|^p / (|x|^p |y|^p))^(1/p)` is a metric on complex
//! projective space for every `p >= 2`; `delta_p` uses `|Re <x,y>|`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{self, Mode};
use crate::linalg::{inner_unchecked, CVector, Tolerance};
use crate::refinements::{check_nonzero, check_p};
use crate::report::BoundReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleKind {
    /// `cos Psi = |<x,y>| / (|x||y|)`, in `[0, pi/2]`.
    Psi,
    /// `cos Phi = Re <x,y> / (|x||y|)`, in `[0, pi]`.
    Phi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleValue {
    pub radians: f64,
    pub kind: AngleKind,
}

/// Triangle-type inequalities through an intermediate vector `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleKind {
    /// `Psi_xy <= Psi_xz + Psi_zy`
    LinPsi,
    /// `Phi_xy <= Phi_xz + Phi_zy`
    Krein,
    /// `sin Psi_xy <= sin Psi_xz + sin Psi_zy`
    WzSinPsi,
    /// `sin Phi_xy <= sin Phi_xz + sin Phi_zy`, with `sin Phi` taken from `|Re <x,y>|`
    SinPhi,
    /// `d_p(x,y) <= d_p(x,z) + d_p(z,y)`
    Dp,
    /// `delta_p(x,y) <= delta_p(x,z) + delta_p(z,y)`
    DeltaP,
    /// `cos Psi_xy >= cos Psi_xz cos Psi_zy - sin Psi_xz sin Psi_zy`
    CosLower,
}

impl TriangleKind {
    pub const ALL: [TriangleKind; 7] = [
        TriangleKind::LinPsi,
        TriangleKind::Krein,
        TriangleKind::WzSinPsi,
        TriangleKind::SinPhi,
        TriangleKind::Dp,
        TriangleKind::DeltaP,
        TriangleKind::CosLower,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TriangleKind::LinPsi => "lin_psi",
            TriangleKind::Krein => "krein",
            TriangleKind::WzSinPsi => "wz_sin_psi",
            TriangleKind::SinPhi => "sin_phi",
            TriangleKind::Dp => "dp",
            TriangleKind::DeltaP => "deltap",
            TriangleKind::CosLower => "cos_lower",
        }
    }

    pub fn uses_p(self) -> bool {
        matches!(self, TriangleKind::Dp | TriangleKind::DeltaP)
    }

    fn label(self) -> &'static str {
        match self {
            TriangleKind::LinPsi => "triangle_lin_psi",
            TriangleKind::Krein => "triangle_krein",
            TriangleKind::WzSinPsi => "triangle_wz_sin_psi",
            TriangleKind::SinPhi => "triangle_sin_phi",
            TriangleKind::Dp => "triangle_dp",
            TriangleKind::DeltaP => "triangle_deltap",
            TriangleKind::CosLower => "cos_lower",
        }
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TriangleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        TriangleKind::ALL
            .into_iter()
            .find(|k| k.as_str() == norm)
            .ok_or_else(|| Error::param(format!("unknown triangle kind '{s}'")))
    }
}

fn projective_distance(x: &CVector, y: &CVector, p: f64, mode: Mode) -> Result<f64> {
    x.check_dim(y)?;
    check_p(p)?;
    check_nonzero(x, "x")?;
    check_nonzero(y, "y")?;
    Ok(dist_unchecked(x, y, p, mode))
}

#[inline]
pub(crate) fn dist_unchecked(x: &CVector, y: &CVector, p: f64, mode: Mode) -> f64 {
    kernel::root(kernel::one_minus_cos_pow(kernel::sin2(x, y, mode), p), p)
}

pub fn d_p(x: &CVector, y: &CVector, p: f64) -> Result<f64> {
    projective_distance(x, y, p, Mode::Modulus)
}

pub fn delta_p(x: &CVector, y: &CVector, p: f64) -> Result<f64> {
    projective_distance(x, y, p, Mode::RealPart)
}

/// `(cos, sin)` of the angle, cosine signed for `Phi`.
fn cos_sin(x: &CVector, y: &CVector, kind: AngleKind, tol: &Tolerance) -> Result<(f64, f64)> {
    let denom = x.norm() * y.norm();
    let ip = inner_unchecked(x.entries(), y.entries());
    let (cos, mode) = match kind {
        AngleKind::Psi => (ip.norm() / denom, Mode::Modulus),
        AngleKind::Phi => (ip.re / denom, Mode::RealPart),
    };
    if cos.abs() > 1.0 + tol.slack(cos, 1.0) {
        return Err(Error::Consistency(format!("cosine {cos} outside [-1, 1]")));
    }
    let sin = kernel::sin2(x, y, mode).sqrt();
    Ok((cos.clamp(-1.0, 1.0), sin))
}

/// Psi or Phi between nonzero `x` and `y`.
///
/// Computed as `atan2(sin, cos)` with the sine taken from the exact minor
/// expansion, which agrees with `arccos(cos)` but keeps full accuracy for
/// nearly parallel vectors, where `arccos` loses half the digits.
pub fn angle(x: &CVector, y: &CVector, kind: AngleKind) -> Result<AngleValue> {
    x.check_dim(y)?;
    check_nonzero(x, "x")?;
    check_nonzero(y, "y")?;
    Ok(AngleValue {
        radians: angle_unchecked(x, y, kind, &Tolerance::default())?,
        kind,
    })
}

fn angle_unchecked(x: &CVector, y: &CVector, kind: AngleKind, tol: &Tolerance) -> Result<f64> {
    let (c, s) = cos_sin(x, y, kind, tol)?;
    Ok(s.atan2(c))
}

/// Evaluates one triangle-type inequality on `(x, y, z)`.
///
/// For every kind except [`TriangleKind::CosLower`] the report has
/// `lhs` = the two-leg sum through `z` and `rhs` = the direct term.
pub fn triangle_check(
    kind: TriangleKind,
    x: &CVector,
    y: &CVector,
    z: &CVector,
    p: f64,
    tol: &Tolerance,
) -> Result<BoundReport> {
    x.check_dim(y)?;
    x.check_dim(z)?;
    check_nonzero(x, "x")?;
    check_nonzero(y, "y")?;
    check_nonzero(z, "z")?;
    if kind.uses_p() {
        check_p(p)?;
    }

    let three = |f: &dyn Fn(&CVector, &CVector) -> Result<f64>| -> Result<(f64, f64)> {
        let direct = f(x, y)?;
        let legs = f(x, z)? + f(z, y)?;
        Ok((legs, direct))
    };
    let (lhs, rhs) = match kind {
        TriangleKind::LinPsi => three(&|a, b| angle_unchecked(a, b, AngleKind::Psi, tol))?,
        TriangleKind::Krein => three(&|a, b| angle_unchecked(a, b, AngleKind::Phi, tol))?,
        TriangleKind::WzSinPsi => three(&|a, b| Ok(kernel::sin2(a, b, Mode::Modulus).sqrt()))?,
        TriangleKind::SinPhi => three(&|a, b| Ok(kernel::sin2(a, b, Mode::RealPart).sqrt()))?,
        TriangleKind::Dp => three(&|a, b| Ok(dist_unchecked(a, b, p, Mode::Modulus)))?,
        TriangleKind::DeltaP => three(&|a, b| Ok(dist_unchecked(a, b, p, Mode::RealPart)))?,
        TriangleKind::CosLower => {
            let (c_xy, _) = cos_sin(x, y, AngleKind::Psi, tol)?;
            let (c_xz, s_xz) = cos_sin(x, z, AngleKind::Psi, tol)?;
            let (c_zy, s_zy) = cos_sin(z, y, AngleKind::Psi, tol)?;
            (c_xy, c_xz * c_zy - s_xz * s_zy)
        }
    };
    Ok(BoundReport::new(kind.label(), lhs, rhs, tol))
}
