//! Sampled real paths, partition sequences, and the value trait the counters are generic over.

use crate::error::{Error, Result};
use serde::Serialize;
use std::ops::Sub;

/// Values the jump and oscillation algorithms can run on, exactly or in floating point.
pub trait PathValue: Copy + PartialOrd + Sub<Output = Self> {
    fn zero() -> Self;
    fn to_f64(self) -> f64;

    fn abs_diff(self, other: Self) -> Self {
        if self >= other {
            self - other
        } else {
            other - self
        }
    }
}

impl PathValue for f64 {
    fn zero() -> Self {
        0.0
    }

    fn to_f64(self) -> f64 {
        self
    }
}

impl PathValue for i64 {
    fn zero() -> Self {
        0
    }

    fn to_f64(self) -> f64 {
        self as f64
    }
}

/// A finite sampled function `t ↦ a_t` with strictly increasing times.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealPath {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl RealPath {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPath);
        }
        if times.len() != values.len() {
            return Err(Error::LengthMismatch { expected: times.len(), found: values.len() });
        }
        if let Some(i) = times.iter().position(|t| !t.is_finite()) {
            return Err(Error::NonIncreasingTimes(i));
        }
        if let Some(i) = times.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NonIncreasingTimes(i + 1));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(crate::error::invalid("values", "values must be finite"));
        }
        Ok(Self { times, values })
    }

    /// Samples at times `0, 1, …, n−1`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let times = (0..values.len()).map(|t| t as f64).collect();
        Self::new(times, values)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn position_of(&self, time: f64) -> Option<usize> {
        self.times
            .binary_search_by(|t| t.total_cmp(&time))
            .ok()
    }

    /// The sub-path on the given sample positions.
    pub fn restrict(&self, positions: &[usize]) -> Result<Self> {
        let mut times = Vec::with_capacity(positions.len());
        let mut values = Vec::with_capacity(positions.len());
        for &p in positions {
            if p >= self.len() {
                return Err(Error::TooLarge { size: p, limit: self.len() });
            }
            times.push(self.times[p]);
            values.push(self.values[p]);
        }
        Self::new(times, values)
    }
}

/// A strictly increasing sequence of times `I_0 < I_1 < …` cutting time into blocks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexSequence {
    entries: Vec<f64>,
}

impl IndexSequence {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(crate::error::invalid("index sequence", "needs at least one entry"));
        }
        if entries.iter().any(|e| !e.is_finite()) || entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NonIncreasingIndex);
        }
        Ok(Self { entries })
    }

    pub fn from_positions(path: &RealPath, positions: &[usize]) -> Result<Self> {
        let times = positions
            .iter()
            .map(|&p| path.times().get(p).copied().ok_or(Error::TooLarge { size: p, limit: path.len() }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(times)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of finite blocks `J`.
    pub fn blocks(&self) -> usize {
        self.entries.len() - 1
    }

    /// Sample positions of the entries in `path`.
    pub fn positions(&self, path: &RealPath) -> Result<Vec<usize>> {
        self.entries
            .iter()
            .map(|&e| path.position_of(e).ok_or(Error::NotInDomain(e)))
            .collect()
    }
}
