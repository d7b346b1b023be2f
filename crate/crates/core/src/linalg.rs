//! Finite-dimensional complex vectors with the standard inner product
//! `<x, y> = sum_k x_k * conj(y_k)`.
//!
//! Every other module works on [`CVector`]. Entries are validated once, at
//! construction, so downstream code never sees NaN or infinities.

use std::fmt;
use std::ops::Index;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numfmt;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.carry += (self.sum - t) + value;
        } else {
            self.carry += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Slack used by every bound comparison: `abs_eps + rel_eps * max(|a|, |b|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    #[serde(serialize_with = "numfmt::f64_17")]
    pub rel_eps: f64,
    #[serde(serialize_with = "numfmt::f64_17")]
    pub abs_eps: f64,
}

impl Tolerance {
    pub const DEFAULT_REL: f64 = 1e-9;
    pub const DEFAULT_ABS: f64 = 1e-12;
    /// Upper limit accepted for either epsilon.
    pub const MAX_EPS: f64 = 1e-3;

    pub fn new(rel_eps: f64, abs_eps: f64) -> Result<Self> {
        let tol = Tolerance { rel_eps, abs_eps };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("rel_eps", self.rel_eps), ("abs_eps", self.abs_eps)] {
            if !(0.0..=Self::MAX_EPS).contains(&v) {
                return Err(Error::param(format!(
                    "{name} = {v} outside [0, {}]",
                    Self::MAX_EPS
                )));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn slack(&self, a: f64, b: f64) -> f64 {
        self.abs_eps + self.rel_eps * a.abs().max(b.abs())
    }

    /// `|a - b| <= slack(a, b)`.
    #[inline]
    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.slack(a, b)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel_eps: Self::DEFAULT_REL,
            abs_eps: Self::DEFAULT_ABS,
        }
    }
}

/// A vector in C^n, n >= 1, with finite entries.
#[derive(Clone, PartialEq)]
pub struct CVector {
    entries: Vec<Complex64>,
}

impl CVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(index) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(CVector { entries })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Builds from `(re, im)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(re, im)| Complex64::new(re, im))
                .collect(),
        )
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// The standard basis vector with a one at 0-based position `index`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::param(format!(
                "basis index {index} out of range for dim {dim}"
            )));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[index] = Complex64::new(1.0, 0.0);
        Self::new(v)
    }

    /// Internal constructor for results of arithmetic on validated vectors.
    pub(crate) fn from_vec_unchecked(entries: Vec<Complex64>) -> Self {
        debug_assert!(!entries.is_empty());
        CVector { entries }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.entries.iter()
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn check_dim(&self, other: &CVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    /// `<self, other>`, linear in `self`, conjugate-linear in `other`.
    pub fn inner(&self, other: &CVector) -> Result<Complex64> {
        self.check_dim(other)?;
        Ok(inner_unchecked(&self.entries, &other.entries))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&self) -> Result<CVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector { what: "vector" });
        }
        Ok(self.scale_real(1.0 / n))
    }

    pub fn scale(&self, factor: Complex64) -> CVector {
        CVector::from_vec_unchecked(self.entries.iter().map(|z| z * factor).collect())
    }

    pub fn scale_real(&self, factor: f64) -> CVector {
        CVector::from_vec_unchecked(self.entries.iter().map(|z| z * factor).collect())
    }

    /// `self - factor * other`.
    pub fn sub_scaled(&self, factor: Complex64, other: &CVector) -> Result<CVector> {
        self.check_dim(other)?;
        Ok(CVector::from_vec_unchecked(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - factor * b)
                .collect(),
        ))
    }

    pub fn add(&self, other: &CVector) -> Result<CVector> {
        self.check_dim(other)?;
        Ok(CVector::from_vec_unchecked(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &CVector) -> Result<CVector> {
        self.sub_scaled(Complex64::new(1.0, 0.0), other)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CVector) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

pub(crate) fn inner_unchecked(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (a, b) in x.iter().zip(y) {
        // a * conj(b)
        re.add(a.re * b.re + a.im * b.im);
        im.add(a.im * b.re - a.re * b.im);
    }
    Complex64::new(re.value(), im.value())
}

/// `<x, y>`; see [`CVector::inner`].
pub fn inner(x: &CVector, y: &CVector) -> Result<Complex64> {
    x.inner(y)
}

pub fn norm(x: &CVector) -> f64 {
    x.norm()
}

pub fn normalize(x: &CVector) -> Result<CVector> {
    x.normalize()
}

impl Index<usize> for CVector {
    type Output = Complex64;

    fn index(&self, index: usize) -> &Complex64 {
        &self.entries[index]
    }
}

impl fmt::Debug for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

impl fmt::Display for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, z) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let sign = if z.im.is_sign_negative() { '-' } else { '+' };
            write!(
                f,
                "{}{}{}i",
                numfmt::sig17(z.re),
                sign,
                numfmt::sig17(z.im.abs())
            )?;
        }
        write!(f, ")")
    }
}

/// Serialized as `[[re, im], ...]` with 17 significant digits.
impl Serialize for CVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.dim()))?;
        for z in &self.entries {
            seq.serialize_element(&[numfmt::Json17(z.re), numfmt::Json17(z.im)])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(deserializer)?;
        CVector::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
            .map_err(serde::de::Error::custom)
    }
}
