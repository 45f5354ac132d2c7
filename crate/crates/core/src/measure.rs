//! Finite weighted measure spaces and the strong and weak Lebesgue norms on them.

use crate::error::{check_exponent, invalid, Error, Result};
use serde::Serialize;

/// Atoms `0..len` with strictly positive finite weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteWeightedSpace {
    weights: Vec<f64>,
}

impl FiniteWeightedSpace {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(invalid("weights", format!("weight {w} is not positive and finite")));
        }
        Ok(Self { weights })
    }

    pub fn uniform(len: usize, weight: f64) -> Result<Self> {
        Self::new(vec![weight; len])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, atom: usize) -> f64 {
        self.weights[atom]
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// A real function on the atoms of a space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomFunction {
    values: Vec<f64>,
}

impl AtomFunction {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
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

    fn check(&self, space: &FiniteWeightedSpace) -> Result<()> {
        if self.values.len() != space.len() {
            return Err(Error::LengthMismatch { expected: space.len(), found: self.values.len() });
        }
        Ok(())
    }
}

impl From<Vec<f64>> for AtomFunction {
    fn from(values: Vec<f64>) -> Self {
        Self::new(values)
    }
}

/// `(Σ |g|^p μ)^{1/p}`, or `max |g|` when `p` is infinite.
pub fn lp_norm(g: &AtomFunction, space: &FiniteWeightedSpace, p: f64) -> Result<f64> {
    check_exponent(p, 1.0)?;
    g.check(space)?;
    Ok(lp_norm_raw(&g.values, &space.weights, p))
}

pub(crate) fn lp_norm_raw(values: &[f64], weights: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return values.iter().fold(0.0, |m, v| m.max(v.abs()));
    }
    let sum: f64 = values
        .iter()
        .zip(weights)
        .map(|(v, w)| v.abs().powf(p) * w)
        .sum();
    sum.powf(1.0 / p)
}

/// `sup_λ λ μ(|g| > λ)^{1/p}`, attained as `λ` increases to one of the values of `|g|`.
pub fn weak_lp_norm(g: &AtomFunction, space: &FiniteWeightedSpace, p: f64) -> Result<f64> {
    check_exponent(p, 1.0)?;
    g.check(space)?;
    Ok(weak_lp_norm_raw(&g.values, &space.weights, p))
}

pub(crate) fn weak_lp_norm_raw(values: &[f64], weights: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return lp_norm_raw(values, weights, p);
    }
    let mut pairs: Vec<(f64, f64)> = values.iter().map(|v| v.abs()).zip(weights.iter().copied()).collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut mass = 0.0;
    let mut best = 0.0f64;
    for (v, w) in pairs {
        mass += w;
        best = best.max(v * mass.powf(1.0 / p));
    }
    best
}
