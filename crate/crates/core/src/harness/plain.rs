//! Second evaluator used to confirm reported violations.
//!
//! Written from the textbook formulas with plain loops and direct
//! subtraction; it shares no numerical code with the library paths.

use num_complex::Complex64;

use super::{Check, TrialInputs};

type V = [Complex64];

fn ip(x: &V, y: &V) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for k in 0..x.len() {
        s += x[k] * y[k].conj();
    }
    s
}

fn nrm(x: &V) -> f64 {
    ip(x, x).re.sqrt()
}

fn ov(z: Complex64, real: bool) -> f64 {
    if real {
        z.re.abs()
    } else {
        z.norm()
    }
}

fn pos_root(v: f64, q: f64) -> f64 {
    v.max(0.0).powf(q)
}

fn cos_psi(a: &V, b: &V) -> f64 {
    (ip(a, b).norm() / (nrm(a) * nrm(b))).min(1.0)
}

fn cos_phi(a: &V, b: &V) -> f64 {
    (ip(a, b).re / (nrm(a) * nrm(b))).clamp(-1.0, 1.0)
}

fn dist(a: &V, b: &V, p: f64, real: bool) -> f64 {
    let c = if real {
        cos_phi(a, b).abs()
    } else {
        cos_psi(a, b)
    };
    pos_root(1.0 - c.powf(p), 1.0 / p)
}

/// `(lhs, rhs)` of the p-determinant bound with overlaps against unit `e`.
fn detp(x: &V, y: &V, e: &V, p: f64, real: bool) -> (f64, f64) {
    let (nx, ny) = (nrm(x), nrm(y));
    let s = ov(ip(x, e), real);
    let t = ov(ip(y, e), real);
    let u = ov(ip(x, y), real);
    let lhs = (nx * ny).powf(p) - u.powf(p);
    let det = nx * pos_root(ny.powf(p) - t.powf(p), 1.0 / p)
        - ny * pos_root(nx.powf(p) - s.powf(p), 1.0 / p);
    (lhs, det.abs().powf(p))
}

fn det2(x: &V, y: &V, e: &V, real: bool) -> (f64, f64) {
    let (nx, ny) = (nrm(x), nrm(y));
    let s = ov(ip(x, e), real);
    let t = ov(ip(y, e), real);
    let u = ov(ip(x, y), real);
    let det = s * pos_root(ny * ny - t * t, 0.5) - t * pos_root(nx * nx - s * s, 0.5);
    (nx * nx * ny * ny - u * u, det * det)
}

fn delta(n: usize, m: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[m] = Complex64::new(1.0, 0.0);
    v
}

fn mean_and_second(x: &V) -> (f64, f64) {
    let n = x.len() as f64;
    let mut s = Complex64::new(0.0, 0.0);
    let mut q = 0.0;
    for z in x {
        s += z;
        q += z.norm_sqr();
    }
    ((s / n).norm(), q / n)
}

/// Both sides of `check` recomputed from scratch.
pub(crate) fn evaluate(check: Check, p: f64, t: &TrialInputs) -> (f64, f64) {
    let (x, y, z, e) = (t.x.entries(), t.y.entries(), t.z.entries(), t.e.entries());
    let n = x.len();
    let coeffs = |v: &V| -> Vec<Complex64> {
        t.projector
            .basis()
            .iter()
            .map(|u| ip(v, u.entries()))
            .collect()
    };
    match check {
        Check::Schwarz => (nrm(x) * nrm(y), ip(x, y).norm()),
        Check::Projection | Check::ProjectionChain | Check::ProjectionChainFloor => {
            let (a, b) = (coeffs(x), coeffs(y));
            let pxx: f64 = a.iter().map(|c| c.norm_sqr()).sum();
            let pyy: f64 = b.iter().map(|c| c.norm_sqr()).sum();
            let mut px = vec![Complex64::new(0.0, 0.0); n];
            for (c, u) in a.iter().zip(t.projector.basis()) {
                for k in 0..n {
                    px[k] += c * u[k];
                }
            }
            let pxy = ip(&px, y);
            let chain_rhs = pxx.sqrt() * pyy.sqrt() - pxy.norm();
            match check {
                Check::Projection => (
                    nrm(x) * nrm(y),
                    pxx.sqrt() * pyy.sqrt() + (ip(x, y) - pxy).norm(),
                ),
                Check::ProjectionChain => (nrm(x) * nrm(y) - ip(x, y).norm(), chain_rhs),
                _ => (chain_rhs, 0.0),
            }
        }
        Check::Quad => {
            let nz2 = ip(z, z).re;
            let l1 = ip(x, x).re * nz2 - ip(x, z).norm_sqr();
            let l2 = ip(y, y).re * nz2 - ip(y, z).norm_sqr();
            let r = ip(x, y) * nz2 - ip(x, z) * ip(z, y);
            (l1 * l2, r.norm_sqr())
        }
        Check::RsUpper | Check::RsLower => {
            let xe_ey = ip(x, e) * ip(e, y);
            let b = (ip(x, y) - xe_ey).norm() + xe_ey.norm();
            if check == Check::RsUpper {
                (nrm(x) * nrm(y), b)
            } else {
                (b, ip(x, y).norm())
            }
        }
        Check::TriangleLinPsi => legs(x, y, z, |a, b| cos_psi(a, b).acos()),
        Check::TriangleKrein => legs(x, y, z, |a, b| cos_phi(a, b).acos()),
        Check::TriangleWzSinPsi => legs(x, y, z, |a, b| pos_root(1.0 - cos_psi(a, b).powi(2), 0.5)),
        Check::TriangleSinPhi => legs(x, y, z, |a, b| pos_root(1.0 - cos_phi(a, b).powi(2), 0.5)),
        Check::TriangleDp => legs(x, y, z, |a, b| dist(a, b, p, false)),
        Check::TriangleDeltaP => legs(x, y, z, |a, b| dist(a, b, p, true)),
        Check::CosLower => (
            cos_psi(x, y),
            (cos_psi(x, z).acos() + cos_psi(z, y).acos()).cos(),
        ),
        Check::DetpModulus | Check::NtupleGeneralP => detp(x, y, e, p, false),
        Check::DetpReal => detp(x, y, e, p, true),
        Check::Det2Modulus | Check::NtupleGeneralQuadratic => det2(x, y, e, false),
        Check::Det2Real => det2(x, y, e, true),
        Check::NtupleBasisMaxP | Check::NtupleBasisMaxQuadratic | Check::NtupleBasisMaxP2 => {
            let mut lhs = 0.0;
            let mut best = f64::NEG_INFINITY;
            for m in 0..n {
                let d = delta(n, m);
                let (l, r) = match check {
                    Check::NtupleBasisMaxP => detp(x, y, &d, p, false),
                    Check::NtupleBasisMaxQuadratic => det2(x, y, &d, false),
                    _ => detp(x, y, &d, 2.0, false),
                };
                lhs = l;
                best = best.max(r);
            }
            (lhs, best)
        }
        Check::NtupleMeanP | Check::NtupleMeanQuadratic => {
            let nf = n as f64;
            let (mx, sx) = mean_and_second(x);
            let (my, sy) = mean_and_second(y);
            if check == Check::NtupleMeanQuadratic {
                let det = mx * pos_root(sy - my * my, 0.5) - my * pos_root(sx - mx * mx, 0.5);
                let lhs = ip(x, x).re * ip(y, y).re - ip(x, y).norm_sqr();
                (lhs, nf * nf * det * det)
            } else {
                let q = 1.0 / p;
                let det = sx.sqrt() * pos_root(sy.powf(p / 2.0) - my.powf(p), q)
                    - sy.sqrt() * pos_root(sx.powf(p / 2.0) - mx.powf(p), q);
                let lhs = (nrm(x) * nrm(y)).powf(p) - ip(x, y).norm().powf(p);
                (lhs, (nf * det).abs().powf(p))
            }
        }
    }
}

fn legs(x: &V, y: &V, z: &V, f: impl Fn(&V, &V) -> f64) -> (f64, f64) {
    (f(x, z) + f(z, y), f(x, y))
}
