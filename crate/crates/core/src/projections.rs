//! Orthogonal projections given by finite orthonormal families, and the
//! projection refinement of the Schwarz inequality.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{self, Mode};
use crate::linalg::{inner_unchecked, CVector, CompensatedSum, Tolerance};
use crate::report::BoundReport;

/// Absolute Gram-matrix slack accepted when validating a family.
pub const ORTHONORMAL_TOL: f64 = 1e-8;

/// `P = sum_j u_j <., u_j>` for an orthonormal family `u_1..u_k`.
///
/// The empty family is the zero projection and accepts vectors of any
/// dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    basis: Vec<CVector>,
}

impl Projector {
    pub fn zero() -> Self {
        Projector { basis: Vec::new() }
    }

    /// Validates orthonormality of `family` and wraps it.
    pub fn new(family: Vec<CVector>) -> Result<Self> {
        if let Some(first) = family.first() {
            for u in &family[1..] {
                first.check_dim(u)?;
            }
        }
        for i in 0..family.len() {
            for j in i..family.len() {
                let g = inner_unchecked(family[i].entries(), family[j].entries());
                let target = if i == j { 1.0 } else { 0.0 };
                if (g - Complex64::new(target, 0.0)).norm() > ORTHONORMAL_TOL {
                    return Err(Error::NotOrthonormal {
                        i,
                        j,
                        value: format!("{g}"),
                        limit: ORTHONORMAL_TOL,
                    });
                }
            }
        }
        Ok(Projector { basis: family })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `None` for the zero projection.
    pub fn dim(&self) -> Option<usize> {
        self.basis.first().map(CVector::dim)
    }

    pub fn basis(&self) -> &[CVector] {
        &self.basis
    }

    fn check(&self, x: &CVector) -> Result<()> {
        match self.dim() {
            Some(d) if d != x.dim() => Err(Error::DimensionMismatch {
                left: d,
                right: x.dim(),
            }),
            _ => Ok(()),
        }
    }

    /// Coordinates `<x, u_j>`.
    fn coefficients(&self, x: &CVector) -> Vec<Complex64> {
        self.basis
            .iter()
            .map(|u| inner_unchecked(x.entries(), u.entries()))
            .collect()
    }

    pub fn apply(&self, x: &CVector) -> Result<CVector> {
        self.check(x)?;
        let mut out = vec![Complex64::new(0.0, 0.0); x.dim()];
        for (c, u) in self.coefficients(x).into_iter().zip(&self.basis) {
            for (o, v) in out.iter_mut().zip(u.iter()) {
                *o += c * v;
            }
        }
        Ok(CVector::from_vec_unchecked(out))
    }

    /// `<Px, x> = sum_j |<x, u_j>|^2`, nonnegative by construction.
    pub fn quadratic_form(&self, x: &CVector) -> Result<f64> {
        self.check(x)?;
        Ok(self
            .coefficients(x)
            .iter()
            .map(|c| c.norm_sqr())
            .collect::<CompensatedSum>()
            .value())
    }
}

pub fn make_projector(family: Vec<CVector>) -> Result<Projector> {
    Projector::new(family)
}

pub fn apply(p: &Projector, x: &CVector) -> Result<CVector> {
    p.apply(x)
}

/// The two reports produced by [`projection_bound`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionReports {
    /// `|x||y| >= <Px,x>^1/2 <Py,y>^1/2 + |<x,y> - <Px,y>|`
    pub refinement: BoundReport,
    /// `|x||y| - |<x,y>| >= <Px,x>^1/2 <Py,y>^1/2 - |<Px,y>|`
    pub chain: BoundReport,
}

impl ProjectionReports {
    /// The right side of the chain against zero.
    pub fn chain_floor(&self, tol: &Tolerance) -> BoundReport {
        BoundReport::new("projection_chain_floor", self.chain.rhs, 0.0, tol)
    }
}

pub fn projection_bound(
    p: &Projector,
    x: &CVector,
    y: &CVector,
    tol: &Tolerance,
) -> Result<ProjectionReports> {
    x.check_dim(y)?;
    p.check(x)?;

    let a = CVector::from_vec_unchecked(if p.rank() == 0 {
        vec![Complex64::new(0.0, 0.0)]
    } else {
        p.coefficients(x)
    });
    let b = CVector::from_vec_unchecked(if p.rank() == 0 {
        vec![Complex64::new(0.0, 0.0)]
    } else {
        p.coefficients(y)
    });
    let pxx = a.norm_sqr();
    let pyy = b.norm_sqr();
    let root_pp = pxx.max(0.0).sqrt() * pyy.max(0.0).sqrt();

    // <x,y> - <Px,y> = <(I - P)x, y>
    let px = p.apply(x)?;
    let comp = x.sub(&px)?;
    let off = inner_unchecked(comp.entries(), y.entries()).norm();

    let nxy = x.norm() * y.norm();
    let refinement = BoundReport::new("projection", nxy, root_pp + off, tol);

    // <Px, y> = <a, b> in coefficient space, so the right side is the
    // Schwarz gap of the coefficient vectors.
    let chain = BoundReport::new(
        "projection_chain",
        kernel::schwarz_gap(x, y, Mode::Modulus),
        kernel::schwarz_gap(&a, &b, Mode::Modulus),
        tol,
    );
    Ok(ProjectionReports { refinement, chain })
}
