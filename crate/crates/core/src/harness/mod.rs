//! Seeded randomized verification of every inequality in the crate.
//!
//! Trial `t` of dimension `d` draws its inputs from a stream seeded with
//! [`mix`]`(seed, d, t)`, so serial and parallel runs see the same data and
//! merge to the same report.

mod gen;
mod plain;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use gen::{
    gen_vector, mix, splitmix64, Field, Injection, VectorStream, DEGENERATE_RATE, NEAR_PARALLEL_EPS,
};

use crate::error::{Error, Result};
use crate::kernel::Mode;
use crate::linalg::{CVector, Tolerance};
use crate::metrics::{triangle_check, TriangleKind};
use crate::ntuple::{basis_max_bound, general_e_bound, mean_bound, Order};
use crate::numfmt;
use crate::projections::{projection_bound, Projector};
use crate::refinements::{
    det2_bound, detp_bound, quad_refinement, rs_chain, schwarz_bound, MetricParams,
};
use crate::report::BoundReport;

/// Environment variable capping worker threads; `0` or unset means automatic.
pub const THREADS_ENV: &str = "SCHWARZKIT_THREADS";

/// Inequality families tracked by the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Schwarz,
    Projection,
    ProjectionChain,
    ProjectionChainFloor,
    Quad,
    RsUpper,
    RsLower,
    TriangleLinPsi,
    TriangleKrein,
    TriangleWzSinPsi,
    TriangleSinPhi,
    TriangleDp,
    TriangleDeltaP,
    CosLower,
    DetpModulus,
    DetpReal,
    Det2Modulus,
    Det2Real,
    NtupleGeneralP,
    NtupleGeneralQuadratic,
    NtupleBasisMaxP,
    NtupleBasisMaxQuadratic,
    NtupleBasisMaxP2,
    NtupleMeanP,
    NtupleMeanQuadratic,
}

impl Check {
    pub const ALL: [Check; 25] = [
        Check::Schwarz,
        Check::Projection,
        Check::ProjectionChain,
        Check::ProjectionChainFloor,
        Check::Quad,
        Check::RsUpper,
        Check::RsLower,
        Check::TriangleLinPsi,
        Check::TriangleKrein,
        Check::TriangleWzSinPsi,
        Check::TriangleSinPhi,
        Check::TriangleDp,
        Check::TriangleDeltaP,
        Check::CosLower,
        Check::DetpModulus,
        Check::DetpReal,
        Check::Det2Modulus,
        Check::Det2Real,
        Check::NtupleGeneralP,
        Check::NtupleGeneralQuadratic,
        Check::NtupleBasisMaxP,
        Check::NtupleBasisMaxQuadratic,
        Check::NtupleBasisMaxP2,
        Check::NtupleMeanP,
        Check::NtupleMeanQuadratic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Schwarz => "schwarz",
            Check::Projection => "projection",
            Check::ProjectionChain => "projection_chain",
            Check::ProjectionChainFloor => "projection_chain_floor",
            Check::Quad => "quad",
            Check::RsUpper => "rs_upper",
            Check::RsLower => "rs_lower",
            Check::TriangleLinPsi => "triangle_lin_psi",
            Check::TriangleKrein => "triangle_krein",
            Check::TriangleWzSinPsi => "triangle_wz_sin_psi",
            Check::TriangleSinPhi => "triangle_sin_phi",
            Check::TriangleDp => "triangle_dp",
            Check::TriangleDeltaP => "triangle_deltap",
            Check::CosLower => "cos_lower",
            Check::DetpModulus => "detp_modulus",
            Check::DetpReal => "detp_real",
            Check::Det2Modulus => "det2_modulus",
            Check::Det2Real => "det2_real",
            Check::NtupleGeneralP => "ntuple_general_p",
            Check::NtupleGeneralQuadratic => "ntuple_general_quadratic",
            Check::NtupleBasisMaxP => "ntuple_basis_max_p",
            Check::NtupleBasisMaxQuadratic => "ntuple_basis_max_quadratic",
            Check::NtupleBasisMaxP2 => "ntuple_basis_max_p2",
            Check::NtupleMeanP => "ntuple_mean_p",
            Check::NtupleMeanQuadratic => "ntuple_mean_quadratic",
        }
    }

    /// Whether the family is evaluated once per configured `p`.
    pub fn uses_p(self) -> bool {
        matches!(
            self,
            Check::TriangleDp
                | Check::TriangleDeltaP
                | Check::DetpModulus
                | Check::DetpReal
                | Check::NtupleGeneralP
                | Check::NtupleBasisMaxP
                | Check::NtupleMeanP
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub dims: Vec<usize>,
    pub trials_per_dim: usize,
    pub seed: u64,
    #[serde(serialize_with = "numfmt::vec_f64_17")]
    pub p_values: Vec<f64>,
    pub scalar_field: Field,
    pub tol: Tolerance,
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::param("dims must be nonempty"));
        }
        if self.dims.contains(&0) {
            return Err(Error::param("every dimension must be at least 1"));
        }
        if self.trials_per_dim == 0 {
            return Err(Error::param("trials_per_dim must be at least 1"));
        }
        if self.p_values.is_empty() {
            return Err(Error::param("p_values must be nonempty"));
        }
        if let Some(p) = self
            .p_values
            .iter()
            .find(|p| !(p.is_finite() && **p >= 2.0))
        {
            return Err(Error::param(format!("p = {p} must be >= 2")));
        }
        self.tol.validate()
    }
}

/// Inputs of one trial. `e` has unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialInputs {
    pub x: CVector,
    pub y: CVector,
    pub z: CVector,
    pub e: CVector,
    pub projector: Projector,
    /// Some input came from the degenerate branch.
    pub degenerate: bool,
}

/// Regenerates the inputs of trial `trial` under dimension `dim`.
pub fn draw_trial(seed: u64, field: Field, dim: usize, trial: usize) -> TrialInputs {
    let mut s = VectorStream::for_trial(seed, dim, trial, field);
    let (x, ix) = s.next_vector(dim);
    let (y, iy) = s.next_vector(dim);
    let (z, iz) = s.next_vector(dim);
    let (e, ie) = s.next_vector(dim);
    let e = e.normalize().expect("draws are nonzero");
    let projector = s.projector(dim);
    let degenerate = [ix, iy, iz, ie].iter().any(|&i| i != Injection::None);
    TrialInputs {
        x,
        y,
        z,
        e,
        projector,
        degenerate,
    }
}

/// Position of an evaluation in the suite, used for deterministic tie-breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    dim_idx: usize,
    trial: usize,
    p_idx: usize,
}

#[derive(Debug, Clone, Copy)]
struct Hit {
    value: f64,
    key: Key,
}

/// Keeps the smaller value (`lower`) or the larger one; ties go to the smaller key.
fn better(cur: Option<Hit>, new: Hit, lower: bool) -> Option<Hit> {
    match cur {
        None => Some(new),
        Some(c) => {
            let ord = if lower {
                new.value.total_cmp(&c.value)
            } else {
                c.value.total_cmp(&new.value)
            };
            match ord.then(new.key.cmp(&c.key)) {
                std::cmp::Ordering::Less => Some(new),
                _ => Some(c),
            }
        }
    }
}

fn earliest<T: Clone>(a: Option<(Key, T)>, b: Option<(Key, T)>) -> Option<(Key, T)> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
        (a, b) => a.or(b),
    }
}

#[derive(Debug, Clone, Default)]
struct Stats {
    evaluations: u64,
    violations: u64,
    disagreements: u64,
    errors: u64,
    equality_hits: u64,
    degenerate: u64,
    worst: Option<Hit>,
    tightest: Option<Hit>,
    first_violation: Option<(Key, ())>,
    first_error: Option<(Key, String)>,
}

impl Stats {
    fn merge(mut self, o: Stats) -> Stats {
        self.evaluations += o.evaluations;
        self.violations += o.violations;
        self.disagreements += o.disagreements;
        self.errors += o.errors;
        self.equality_hits += o.equality_hits;
        self.degenerate += o.degenerate;
        if let Some(h) = o.worst {
            self.worst = better(self.worst, h, true);
        }
        if let Some(h) = o.tightest {
            self.tightest = better(self.tightest, h, false);
        }
        self.first_violation = earliest(self.first_violation, o.first_violation);
        self.first_error = earliest(self.first_error, o.first_error);
        self
    }
}

#[derive(Debug, Clone)]
struct Acc(Vec<Stats>);

impl Acc {
    fn new() -> Self {
        Acc(vec![Stats::default(); Check::ALL.len()])
    }

    fn merge(mut self, o: Acc) -> Acc {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a = std::mem::take(a).merge(b);
        }
        self
    }
}

struct TrialCtx<'a> {
    config: &'a TrialConfig,
    inputs: &'a TrialInputs,
    dim_idx: usize,
    trial: usize,
}

impl TrialCtx<'_> {
    fn record(&self, acc: &mut Acc, check: Check, p_idx: usize, result: Result<BoundReport>) {
        let tol = &self.config.tol;
        let st = &mut acc.0[check as usize];
        let key = Key {
            dim_idx: self.dim_idx,
            trial: self.trial,
            p_idx,
        };
        st.evaluations += 1;
        if self.inputs.degenerate {
            st.degenerate += 1;
        }
        let r = match result {
            Ok(r) => r,
            Err(e) => {
                st.errors += 1;
                st.first_error = earliest(st.first_error.take(), Some((key, e.to_string())));
                return;
            }
        };
        if r.equality {
            st.equality_hits += 1;
        }
        st.worst = better(
            st.worst,
            Hit {
                value: gap_in_slacks(&r, tol),
                key,
            },
            true,
        );
        // rhs/lhs is only meaningful where the relative tolerance governs
        if r.lhs >= tol.abs_eps / tol.rel_eps {
            if let Some(t) = r.tightness() {
                st.tightest = better(st.tightest, Hit { value: t, key }, false);
            }
        }
        if !r.satisfied {
            let p = self.config.p_values[p_idx];
            let (lhs, rhs) = plain::evaluate(check, p, self.inputs);
            let confirmed = !BoundReport::new("plain", lhs, rhs, tol).satisfied;
            if confirmed {
                st.violations += 1;
                st.first_violation = earliest(st.first_violation.take(), Some((key, ())));
            } else {
                st.disagreements += 1;
            }
        }
    }
}

/// `gap / slack`; below `-1` is a violation.
fn gap_in_slacks(r: &BoundReport, tol: &Tolerance) -> f64 {
    let slack = tol.slack(r.lhs, r.rhs);
    if slack > 0.0 {
        r.gap / slack
    } else if r.gap == 0.0 {
        0.0
    } else {
        r.gap.signum() * f64::INFINITY
    }
}

fn run_trial(config: &TrialConfig, dim_idx: usize, trial: usize, acc: &mut Acc) {
    let dim = config.dims[dim_idx];
    let inputs = draw_trial(config.seed, config.scalar_field, dim, trial);
    let ctx = TrialCtx {
        config,
        inputs: &inputs,
        dim_idx,
        trial,
    };
    let tol = &config.tol;
    let TrialInputs {
        x,
        y,
        z,
        e,
        projector,
        ..
    } = &inputs;
    let (xs, ys, es) = (x.entries(), y.entries(), e.entries());

    ctx.record(acc, Check::Schwarz, 0, schwarz_bound(x, y, tol));
    match projection_bound(projector, x, y, tol) {
        Ok(r) => {
            let floor = r.chain_floor(tol);
            ctx.record(acc, Check::Projection, 0, Ok(r.refinement));
            ctx.record(acc, Check::ProjectionChain, 0, Ok(r.chain));
            ctx.record(acc, Check::ProjectionChainFloor, 0, Ok(floor));
        }
        Err(err) => {
            for c in [
                Check::Projection,
                Check::ProjectionChain,
                Check::ProjectionChainFloor,
            ] {
                ctx.record(acc, c, 0, Err(err.clone()));
            }
        }
    }
    ctx.record(acc, Check::Quad, 0, quad_refinement(x, y, z, tol));
    match rs_chain(x, y, e, tol) {
        Ok(r) => {
            ctx.record(acc, Check::RsUpper, 0, Ok(r.upper));
            ctx.record(acc, Check::RsLower, 0, Ok(r.lower));
        }
        Err(err) => {
            ctx.record(acc, Check::RsUpper, 0, Err(err.clone()));
            ctx.record(acc, Check::RsLower, 0, Err(err));
        }
    }
    for (check, kind) in [
        (Check::TriangleLinPsi, TriangleKind::LinPsi),
        (Check::TriangleKrein, TriangleKind::Krein),
        (Check::TriangleWzSinPsi, TriangleKind::WzSinPsi),
        (Check::TriangleSinPhi, TriangleKind::SinPhi),
        (Check::CosLower, TriangleKind::CosLower),
    ] {
        ctx.record(acc, check, 0, triangle_check(kind, x, y, z, 2.0, tol));
    }
    ctx.record(
        acc,
        Check::Det2Modulus,
        0,
        det2_bound(x, y, e, Mode::Modulus, tol),
    );
    ctx.record(
        acc,
        Check::Det2Real,
        0,
        det2_bound(x, y, e, Mode::RealPart, tol),
    );
    ctx.record(
        acc,
        Check::NtupleGeneralQuadratic,
        0,
        general_e_bound(xs, ys, es, 2.0, Order::Quadratic, tol).map(|r| r.base),
    );
    ctx.record(
        acc,
        Check::NtupleBasisMaxQuadratic,
        0,
        basis_max_bound(xs, ys, 2.0, Order::Quadratic, tol).map(|r| r.base),
    );
    ctx.record(
        acc,
        Check::NtupleBasisMaxP2,
        0,
        basis_max_bound(xs, ys, 2.0, Order::P2Simple, tol).map(|r| r.base),
    );
    ctx.record(
        acc,
        Check::NtupleMeanQuadratic,
        0,
        mean_bound(xs, ys, 2.0, Order::Quadratic, tol).map(|r| r.base),
    );

    for (pi, &p) in config.p_values.iter().enumerate() {
        ctx.record(
            acc,
            Check::TriangleDp,
            pi,
            triangle_check(TriangleKind::Dp, x, y, z, p, tol),
        );
        ctx.record(
            acc,
            Check::TriangleDeltaP,
            pi,
            triangle_check(TriangleKind::DeltaP, x, y, z, p, tol),
        );
        for (check, mode) in [
            (Check::DetpModulus, Mode::Modulus),
            (Check::DetpReal, Mode::RealPart),
        ] {
            let r = MetricParams::new(p, mode).and_then(|mp| detp_bound(x, y, e, mp, tol));
            ctx.record(acc, check, pi, r);
        }
        ctx.record(
            acc,
            Check::NtupleGeneralP,
            pi,
            general_e_bound(xs, ys, es, p, Order::PForm, tol).map(|r| r.base),
        );
        ctx.record(
            acc,
            Check::NtupleBasisMaxP,
            pi,
            basis_max_bound(xs, ys, p, Order::PForm, tol).map(|r| r.base),
        );
        ctx.record(
            acc,
            Check::NtupleMeanP,
            pi,
            mean_bound(xs, ys, p, Order::PForm, tol).map(|r| r.base),
        );
    }
}

/// Serialized inputs of one evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub dim: usize,
    pub trial: usize,
    #[serde(serialize_with = "numfmt::opt_f64_17")]
    pub p: Option<f64>,
    #[serde(serialize_with = "numfmt::opt_f64_17")]
    pub value: Option<f64>,
    pub x: CVector,
    pub y: CVector,
    pub z: CVector,
    pub e: CVector,
    pub projector: Vec<CVector>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub family: &'static str,
    /// Evaluations, pooled over dimensions and `p`.
    pub trials: u64,
    /// Violations confirmed by the independent evaluator.
    pub violations: u64,
    /// Violations reported by the library but not confirmed.
    pub disagreements: u64,
    /// Inputs rejected through a documented error path.
    pub errors: u64,
    pub equality_hits: u64,
    /// Evaluations on inputs from the degenerate branch.
    pub degenerate_trials: u64,
    /// Smallest gap measured in units of the tolerance slack
    /// `abs_eps + rel_eps * max(|lhs|, |rhs|)`; below `-1` means violated.
    #[serde(serialize_with = "numfmt::opt_f64_17")]
    pub worst_gap: Option<f64>,
    /// Largest `rhs / lhs` over evaluations with `lhs >= abs_eps / rel_eps`.
    #[serde(serialize_with = "numfmt::opt_f64_17")]
    pub max_tightness: Option<f64>,
    pub worst_witness: Option<Witness>,
    pub tightness_witness: Option<Witness>,
    pub violation_witness: Option<Witness>,
    pub first_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: TrialConfig,
    pub total_trials: u64,
    pub confirmed_violations: u64,
    pub disagreements: u64,
    pub errors: u64,
    pub families: Vec<FamilyReport>,
    #[serde(serialize_with = "numfmt::f64_17")]
    pub elapsed: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.confirmed_violations == 0
    }

    pub fn family(&self, name: &str) -> Option<&FamilyReport> {
        self.families.iter().find(|f| f.family == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with `elapsed` zeroed, for run-to-run comparison.
    pub fn canonical_json(&self) -> String {
        SuiteReport {
            elapsed: 0.0,
            ..self.clone()
        }
        .to_json()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

/// Worker cap from `SCHWARZKIT_THREADS`; `None` means rayon's default.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

pub fn run_suite(config: &TrialConfig) -> Result<SuiteReport> {
    run_suite_with(config, Execution::Parallel)
}

pub fn run_suite_with(config: &TrialConfig, exec: Execution) -> Result<SuiteReport> {
    config.validate()?;
    let start = Instant::now();
    let trials = config.trials_per_dim;
    let jobs = config.dims.len() * trials;
    let body = |acc: &mut Acc, j: usize| run_trial(config, j / trials, j % trials, acc);
    let acc = match exec {
        Execution::Serial => {
            let mut acc = Acc::new();
            for j in 0..jobs {
                body(&mut acc, j);
            }
            acc
        }
        Execution::Parallel => {
            let work = || {
                (0..jobs)
                    .into_par_iter()
                    .fold(Acc::new, |mut acc, j| {
                        body(&mut acc, j);
                        acc
                    })
                    .reduce(Acc::new, Acc::merge)
            };
            match thread_cap() {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::param(format!("thread pool: {e}")))?
                    .install(work),
                None => work(),
            }
        }
    };
    Ok(finish(config, acc, start.elapsed().as_secs_f64()))
}

fn witness(config: &TrialConfig, check: Check, key: Key, value: Option<f64>) -> Witness {
    let dim = config.dims[key.dim_idx];
    let t = draw_trial(config.seed, config.scalar_field, dim, key.trial);
    Witness {
        dim,
        trial: key.trial,
        p: check.uses_p().then(|| config.p_values[key.p_idx]),
        value,
        x: t.x,
        y: t.y,
        z: t.z,
        e: t.e,
        projector: t.projector.basis().to_vec(),
    }
}

fn finish(config: &TrialConfig, acc: Acc, elapsed: f64) -> SuiteReport {
    let families: Vec<FamilyReport> = Check::ALL
        .iter()
        .zip(acc.0)
        .map(|(&check, st)| FamilyReport {
            family: check.as_str(),
            trials: st.evaluations,
            violations: st.violations,
            disagreements: st.disagreements,
            errors: st.errors,
            equality_hits: st.equality_hits,
            degenerate_trials: st.degenerate,
            worst_gap: st.worst.map(|h| h.value),
            max_tightness: st.tightest.map(|h| h.value),
            worst_witness: st
                .worst
                .map(|h| witness(config, check, h.key, Some(h.value))),
            tightness_witness: st
                .tightest
                .map(|h| witness(config, check, h.key, Some(h.value))),
            violation_witness: st
                .first_violation
                .map(|(k, ())| witness(config, check, k, None)),
            first_error: st.first_error.map(|(_, m)| m),
        })
        .collect();
    SuiteReport {
        config: config.clone(),
        total_trials: (config.dims.len() * config.trials_per_dim) as u64,
        confirmed_violations: families.iter().map(|f| f.violations).sum(),
        disagreements: families.iter().map(|f| f.disagreements).sum(),
        errors: families.iter().map(|f| f.errors).sum(),
        families,
        elapsed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(dims: Vec<usize>, trials: usize, seed: u64) -> TrialConfig {
        TrialConfig {
            dims,
            trials_per_dim: trials,
            seed,
            p_values: vec![2.0, 3.0, 10.0],
            scalar_field: Field::Complex,
            tol: Tolerance::default(),
        }
    }

    #[test]
    fn config_validation() {
        assert!(config(vec![2], 0, 1).validate().is_err());
        assert!(config(vec![], 1, 1).validate().is_err());
        assert!(config(vec![0], 1, 1).validate().is_err());
        let mut c = config(vec![2], 1, 1);
        c.p_values = vec![1.5];
        assert!(c.validate().is_err());
        assert!(run_suite(&config(vec![2], 0, 1)).is_err());
    }

    #[test]
    fn dimension_one_is_clean() {
        let r = run_suite(&config(vec![1], 100, 7)).unwrap();
        assert!(r.passed());
        assert_eq!(r.disagreements, 0);
        for f in &r.families {
            assert_eq!(f.trials % 100, 0, "{}", f.family);
            assert!(f.trials > 0);
        }
    }

    #[test]
    fn serial_equals_parallel() {
        let c = config(vec![1, 2, 5], 300, 11);
        let a = run_suite_with(&c, Execution::Serial).unwrap();
        let b = run_suite_with(&c, Execution::Parallel).unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json());
        assert!(a.passed());
    }

    #[test]
    fn every_family_is_evaluated() {
        let r = run_suite(&config(vec![3], 200, 3)).unwrap();
        assert_eq!(r.families.len(), Check::ALL.len());
        for f in &r.families {
            let per = if Check::ALL
                .iter()
                .find(|c| c.as_str() == f.family)
                .unwrap()
                .uses_p()
            {
                3
            } else {
                1
            };
            assert_eq!(f.trials, 200 * per, "{}", f.family);
            assert!(f.worst_witness.is_some());
        }
    }
}
