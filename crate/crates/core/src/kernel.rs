//! Scalar building blocks shared by the bound and metric modules.
//!
//! Quantities of the form `|x|^2 |y|^2 - |<x,y>|^2` and `1 - cos^p` are
//! computed from exact 2x2 minors rather than by subtraction, so they keep
//! full relative accuracy when the vectors are nearly parallel.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{inner_unchecked, CVector, CompensatedSum};

/// Which scalar measures the overlap of two vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `|<x, y>|`
    Modulus,
    /// `|Re <x, y>|`, the real inner product on the underlying real space.
    RealPart,
}

impl Mode {
    #[inline]
    pub fn overlap(self, z: Complex64) -> f64 {
        match self {
            Mode::Modulus => z.norm(),
            Mode::RealPart => z.re.abs(),
        }
    }

    /// Coefficient of the orthogonal projection onto a line, given `<y, x> / |x|^2`.
    #[inline]
    fn coefficient(self, z: Complex64) -> Complex64 {
        match self {
            Mode::Modulus => z,
            Mode::RealPart => Complex64::new(z.re, 0.0),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Modulus => "modulus",
            Mode::RealPart => "real",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "modulus" | "MODULUS" => Ok(Mode::Modulus),
            "real" | "real_part" | "REAL_PART" => Ok(Mode::RealPart),
            other => Err(format!("unknown mode '{other}' (expected modulus|real)")),
        }
    }
}

/// Above this dimension the O(n^2) minor expansion gives way to a residual
/// computed in working precision.
pub const LAGRANGE_MAX_DIM: usize = 128;

/// Unevaluated sum `hi + lo` (double-double).
#[derive(Debug, Clone, Copy, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd {
        hi: p,
        lo: a.mul_add(b, -p),
    }
}

impl Dd {
    #[inline]
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + (self.lo + o.lo);
        let hi = s + e;
        Dd {
            hi,
            lo: e - (hi - s),
        }
    }

    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// `a * b` as a pair of double-double components.
#[inline]
fn cmul_dd(a: Complex64, b: Complex64) -> (Dd, Dd) {
    let re = two_prod(a.re, b.re).add(two_prod(a.im, b.im).neg());
    let im = two_prod(a.re, b.im).add(two_prod(a.im, b.re));
    (re, im)
}

/// `a * d - b * c`, exactly zero whenever the two products coincide.
#[inline]
pub(crate) fn cminor(a: Complex64, d: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    let (pr, pi) = cmul_dd(a, d);
    let (qr, qi) = cmul_dd(b, c);
    Complex64::new(pr.add(qr.neg()).value(), pi.add(qi.neg()).value())
}

#[inline]
fn rminor(a: f64, d: f64, b: f64, c: f64) -> f64 {
    two_prod(a, d).add(two_prod(b, c).neg()).value()
}

/// Pairwise minors `x_j y_k - x_k y_j`, `j < k`.
pub(crate) fn wedge(x: &CVector, y: &CVector) -> Vec<Complex64> {
    let (xs, ys) = (x.entries(), y.entries());
    let n = xs.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 0..n {
        for k in j + 1..n {
            out.push(cminor(xs[j], ys[k], xs[k], ys[j]));
        }
    }
    out
}

/// `|x|^2 |y|^2 - overlap(<x, y>)^2`, always `>= 0`.
///
/// Up to [`LAGRANGE_MAX_DIM`] this is the Lagrange identity
/// `sum_{j<k} |x_j y_k - x_k y_j|^2` (over the 2n real coordinates in
/// `RealPart` mode) with error-free minors: exactly zero for exactly
/// parallel inputs, full relative accuracy for nearly parallel ones.
pub(crate) fn schwarz_deficit(x: &CVector, y: &CVector, mode: Mode) -> f64 {
    if x.dim() > LAGRANGE_MAX_DIM {
        return residual_deficit(x, y, mode);
    }
    let mut acc = CompensatedSum::new();
    match mode {
        Mode::Modulus => {
            for m in wedge(x, y) {
                acc.add(m.norm_sqr());
            }
        }
        Mode::RealPart => {
            let u: Vec<f64> = x.iter().flat_map(|z| [z.re, z.im]).collect();
            let v: Vec<f64> = y.iter().flat_map(|z| [z.re, z.im]).collect();
            for j in 0..u.len() {
                for k in j + 1..u.len() {
                    let m = rminor(u[j], v[k], u[k], v[j]);
                    acc.add(m * m);
                }
            }
        }
    }
    acc.value().max(0.0)
}

/// Residual form of the deficit used for large dimensions.
fn residual_deficit(x: &CVector, y: &CVector, mode: Mode) -> f64 {
    let (base, other) = if x.norm_sqr() >= y.norm_sqr() {
        (x, y)
    } else {
        (y, x)
    };
    let nb2 = base.norm_sqr();
    if nb2 == 0.0 {
        return 0.0;
    }
    let c = mode.coefficient(inner_unchecked(other.entries(), base.entries()) / nb2);
    let mut acc = CompensatedSum::new();
    for (a, b) in other.iter().zip(base.iter()) {
        acc.add((a - c * b).norm_sqr());
    }
    nb2 * acc.value()
}

/// `sin^2` of the angle between `x` and `y` in `[0, 1]`; zero if either is zero.
pub(crate) fn sin2(x: &CVector, y: &CVector, mode: Mode) -> f64 {
    let denom = x.norm_sqr() * y.norm_sqr();
    if denom == 0.0 {
        return 0.0;
    }
    (schwarz_deficit(x, y, mode) / denom).clamp(0.0, 1.0)
}

/// `|x| |y| - overlap(<x, y>)`, computed as `deficit / (|x| |y| + overlap)`.
pub(crate) fn schwarz_gap(x: &CVector, y: &CVector, mode: Mode) -> f64 {
    let prod = x.norm() * y.norm();
    if prod == 0.0 {
        return 0.0;
    }
    let ov = mode
        .overlap(inner_unchecked(x.entries(), y.entries()))
        .min(prod);
    schwarz_deficit(x, y, mode) / (prod + ov)
}

/// `1 - (1 - sin2)^(p/2)`, i.e. `1 - cos^p`, without cancellation.
#[inline]
pub(crate) fn one_minus_cos_pow(sin2: f64, p: f64) -> f64 {
    let s = sin2.clamp(0.0, 1.0);
    if p == 2.0 {
        return s;
    }
    (-(0.5 * p * (-s).ln_1p()).exp_m1()).clamp(0.0, 1.0)
}

/// `v^(1/p)` for `v >= 0`; negative rounding noise is clamped to zero.
#[inline]
pub(crate) fn root(v: f64, p: f64) -> f64 {
    let v = v.max(0.0);
    if p == 2.0 {
        v.sqrt()
    } else {
        v.powf(1.0 / p)
    }
}

/// `|v|^p`.
#[inline]
pub(crate) fn abs_pow(v: f64, p: f64) -> f64 {
    let a = v.abs();
    if p == 2.0 {
        a * a
    } else {
        a.powf(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_minus_cos_pow_matches_direct_formula() {
        for &s in &[0.0, 1e-3, 0.25, 0.5, 0.9, 1.0] {
            for &p in &[2.0, 2.5, 3.0, 10.0] {
                let direct = 1.0 - (1.0_f64 - s).powf(p / 2.0);
                assert!(
                    (one_minus_cos_pow(s, p) - direct).abs() < 1e-14,
                    "s={s} p={p}"
                );
            }
        }
        // small angle: 1 - (1 - s)^(p/2) ~ (p/2) s
        let v = one_minus_cos_pow(1e-20, 10.0);
        assert!((v / 5e-20 - 1.0).abs() < 1e-12);
    }

    fn cv(pairs: &[(f64, f64)]) -> CVector {
        CVector::from_pairs(pairs).unwrap()
    }

    #[test]
    fn deficit_matches_definition() {
        let x = cv(&[(1.0, 0.5), (-2.0, 0.25), (0.5, 3.0)]);
        let y = cv(&[(0.3, -1.0), (2.0, 2.0), (-0.5, 0.0)]);
        for mode in [Mode::Modulus, Mode::RealPart] {
            let direct = x.norm_sqr() * y.norm_sqr() - mode.overlap(x.inner(&y).unwrap()).powi(2);
            let d = schwarz_deficit(&x, &y, mode);
            assert!(
                (d - direct).abs() < 1e-12 * direct,
                "{mode:?}: {d} vs {direct}"
            );
            assert!((d - residual_deficit(&x, &y, mode)).abs() < 1e-12 * direct);
        }
    }

    #[test]
    fn deficit_exact_zero_for_parallel_inputs() {
        let x = cv(&[(0.1, 0.7), (-2.3, 0.25), (1.0 / 3.0, 3.0)]);
        assert_eq!(schwarz_deficit(&x, &x, Mode::Modulus), 0.0);
        assert_eq!(schwarz_deficit(&x, &x, Mode::RealPart), 0.0);
        assert_eq!(schwarz_deficit(&x, &x.scale_real(0.25), Mode::Modulus), 0.0);
        // every pair in C^1 is parallel
        let a = cv(&[(0.3, -1.7)]);
        let b = cv(&[(-2.9, 0.11)]);
        assert_eq!(sin2(&a, &b, Mode::Modulus), 0.0);
        assert!(sin2(&a, &b, Mode::RealPart) > 0.0);
    }

    #[test]
    fn sin2_near_parallel_keeps_relative_accuracy() {
        let x = cv(&[(1.0, 0.5), (-2.0, 0.25), (0.5, 3.0)]);
        // y = x + eps * e3, exactly representable
        let eps = 2f64.powi(-34);
        let mut ys = x.entries().to_vec();
        ys[2].re += eps;
        let y = CVector::new(ys).unwrap();
        // exact: |x|^2 eps^2 - |x_3|^2 eps^2 ... via the minors of (x, eps e3)
        let e3 = cv(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let expect = schwarz_deficit(&x, &e3, Mode::Modulus) * eps * eps;
        let got = schwarz_deficit(&x, &y, Mode::Modulus);
        assert!((got / expect - 1.0).abs() < 1e-14, "{got} vs {expect}");
    }

    #[test]
    fn real_mode_sees_phase() {
        let x = CVector::from_pairs(&[(1.0, 0.0)]).unwrap();
        let y = CVector::from_pairs(&[(0.0, 1.0)]).unwrap();
        assert_eq!(sin2(&x, &y, Mode::Modulus), 0.0);
        assert_eq!(sin2(&x, &y, Mode::RealPart), 1.0);
    }
}
