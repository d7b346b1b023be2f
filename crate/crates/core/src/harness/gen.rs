//! Seeded input generation with injected degenerate cases.

use num_complex::Complex64;
use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::linalg::{inner_unchecked, CVector};
use crate::projections::Projector;

/// Probability that a draw is replaced by a degenerate variant.
pub const DEGENERATE_RATE: f64 = 0.1;
/// Relative size of the near-parallel perturbation.
pub const NEAR_PARALLEL_EPS: f64 = 1e-10;
/// Draws remembered for scaled copies and perturbations.
const HISTORY: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Real,
    Complex,
}

impl std::str::FromStr for Field {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "real" => Ok(Field::Real),
            "complex" => Ok(Field::Complex),
            _ => Err(crate::Error::param(format!(
                "unknown field '{s}' (real|complex)"
            ))),
        }
    }
}

/// How a draw was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Injection {
    None,
    ScaledCopy,
    Basis,
    NearParallel,
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sub-seed of trial `trial` under dimension `dim`.
pub fn mix(seed: u64, dim: usize, trial: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ dim as u64) ^ trial as u64)
}

/// Random stream that remembers its recent draws so later draws can copy them.
pub struct VectorStream {
    rng: ChaCha8Rng,
    field: Field,
    history: VecDeque<CVector>,
}

impl VectorStream {
    pub fn new(seed: u64, field: Field) -> Self {
        VectorStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
            field,
            history: VecDeque::new(),
        }
    }

    pub fn for_trial(seed: u64, dim: usize, trial: usize, field: Field) -> Self {
        Self::new(mix(seed, dim, trial), field)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn scalar(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = match self.field {
            Field::Real => 0.0,
            Field::Complex => self.rng.sample(StandardNormal),
        };
        Complex64::new(re, im)
    }

    /// I.i.d. standard normal components, no injection.
    pub fn gaussian(&mut self, dim: usize) -> CVector {
        loop {
            let v = CVector::from_vec_unchecked((0..dim).map(|_| self.scalar()).collect());
            if !v.is_zero() {
                return v;
            }
        }
    }

    fn previous(&mut self, dim: usize) -> Option<CVector> {
        let same: Vec<usize> = (0..self.history.len())
            .filter(|&i| self.history[i].dim() == dim)
            .collect();
        if same.is_empty() {
            return None;
        }
        let pick = same[self.rng.random_range(0..same.len())];
        Some(self.history[pick].clone())
    }

    /// One draw, possibly replaced by a degenerate variant.
    pub fn next_vector(&mut self, dim: usize) -> (CVector, Injection) {
        let fresh = self.gaussian(dim);
        let (v, how) = if self.rng.random_bool(DEGENERATE_RATE) {
            match self.rng.random_range(0..3u8) {
                0 => match self.previous(dim) {
                    Some(base) => {
                        let mut lambda = self.scalar();
                        if lambda.norm() < 1e-3 {
                            lambda = Complex64::new(1.0, 0.0);
                        }
                        (base.scale(lambda), Injection::ScaledCopy)
                    }
                    None => (self.basis(dim), Injection::Basis),
                },
                1 => (self.basis(dim), Injection::Basis),
                _ => {
                    let base = self.previous(dim).unwrap_or(fresh);
                    let g = self.gaussian(dim);
                    let step = NEAR_PARALLEL_EPS * base.norm() / g.norm();
                    let v = base
                        .sub_scaled(Complex64::new(-step, 0.0), &g)
                        .expect("same dimension");
                    (v, Injection::NearParallel)
                }
            }
        } else {
            (fresh, Injection::None)
        };
        if self.history.len() == HISTORY {
            self.history.pop_front();
        }
        self.history.push_back(v.clone());
        (v, how)
    }

    fn basis(&mut self, dim: usize) -> CVector {
        let k = self.rng.random_range(0..dim);
        CVector::basis(dim, k).expect("index in range")
    }

    /// Orthonormal family of random rank `0..=dim` by twice-iterated
    /// Gram-Schmidt on Gaussian draws.
    pub fn projector(&mut self, dim: usize) -> Projector {
        let rank = self.rng.random_range(0..=dim);
        let mut family: Vec<CVector> = Vec::with_capacity(rank);
        while family.len() < rank {
            let mut v = self.gaussian(dim).into_entries();
            for _ in 0..2 {
                for u in &family {
                    let c = inner_unchecked(&v, u.entries());
                    for (a, b) in v.iter_mut().zip(u.iter()) {
                        *a -= c * b;
                    }
                }
            }
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-6 {
                continue;
            }
            family.push(CVector::from_vec_unchecked(
                v.into_iter().map(|z| z / n).collect(),
            ));
        }
        Projector::new(family).expect("Gram-Schmidt output is orthonormal")
    }
}

/// One draw from `stream`.
pub fn gen_vector(dim: usize, stream: &mut VectorStream) -> CVector {
    stream.next_vector(dim).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_field_has_zero_imaginary_parts() {
        let mut s = VectorStream::new(1, Field::Real);
        for _ in 0..500 {
            assert!(gen_vector(5, &mut s).is_real());
        }
        assert!(s.projector(4).basis().iter().all(CVector::is_real));
    }

    #[test]
    fn deterministic() {
        let mut a = VectorStream::for_trial(42, 3, 17, Field::Complex);
        let mut b = VectorStream::for_trial(42, 3, 17, Field::Complex);
        for _ in 0..50 {
            assert_eq!(gen_vector(3, &mut a), gen_vector(3, &mut b));
        }
        assert_ne!(mix(42, 3, 17), mix(42, 3, 18));
        assert_ne!(mix(42, 3, 17), mix(42, 4, 17));
    }

    #[test]
    fn injection_rate_and_variants() {
        let mut s = VectorStream::new(5, Field::Complex);
        let mut counts = [0usize; 4];
        let n = 20000;
        for _ in 0..n {
            let (_, how) = s.next_vector(4);
            counts[how as usize] += 1;
        }
        let injected = n - counts[0];
        assert!((1500..2500).contains(&injected), "{counts:?}");
        assert!(counts[1..].iter().all(|&c| c > 400), "{counts:?}");
    }

    #[test]
    fn projector_is_valid_for_every_dim() {
        let mut s = VectorStream::new(9, Field::Complex);
        for dim in 1..=8 {
            for _ in 0..20 {
                let p = s.projector(dim);
                assert!(p.rank() <= dim);
            }
        }
    }
}
