//! Monomial exponent sets, the canonical polynomial image, and lifting polynomial mappings.

use crate::error::{invalid, Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Magnitude bound for canonical coordinates.
pub const COORD_LIMIT: i128 = 1 << 62;

/// A finite set `Γ` of non-zero multi-indices in `ℕ^k`, kept sorted by degree then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalExponentSet {
    dim: usize,
    exponents: Vec<Vec<u32>>,
}

impl CanonicalExponentSet {
    pub fn new(dim: usize, mut exponents: Vec<Vec<u32>>) -> Result<Self> {
        if dim == 0 || exponents.is_empty() {
            return Err(invalid("gamma", "needs a positive dimension and at least one exponent"));
        }
        if exponents.iter().any(|g| g.len() != dim) {
            return Err(invalid("gamma", "exponent length differs from the dimension"));
        }
        if exponents.iter().any(|g| g.iter().all(|&e| e == 0)) {
            return Err(invalid("gamma", "the zero multi-index is excluded"));
        }
        exponents.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        exponents.dedup();
        Ok(Self { dim, exponents })
    }

    /// One-dimensional `Γ = {e_1, e_2, …}` from plain powers.
    pub fn powers(powers: &[u32]) -> Result<Self> {
        Self::new(1, powers.iter().map(|&p| vec![p]).collect())
    }

    /// Every non-zero multi-index of degree at most `d`.
    pub fn full(dim: usize, d: u32) -> Result<Self> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; dim];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == cur.len() {
                if cur.iter().any(|&e| e > 0) {
                    out.push(cur.clone());
                }
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, d, &mut cur, &mut out);
        Self::new(dim, out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `|γ|` for each exponent, in order.
    pub fn degrees(&self) -> Vec<u32> {
        self.exponents.iter().map(|g| degree(g)).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees().into_iter().max().unwrap_or(0)
    }
}

pub fn degree(g: &[u32]) -> u32 {
    g.iter().sum()
}

fn monomial(m: &[i64], g: &[u32]) -> Option<i128> {
    let mut acc: i128 = 1;
    for (&x, &e) in m.iter().zip(g) {
        for _ in 0..e {
            acc = acc.checked_mul(x as i128)?;
            if acc.abs() > COORD_LIMIT {
                return None;
            }
        }
    }
    Some(acc)
}

/// `(m)^Γ = (m^γ : γ ∈ Γ)`.
pub fn canonical_image(m: &[i64], gamma: &CanonicalExponentSet) -> Result<Vec<i64>> {
    if m.len() != gamma.dim {
        return Err(Error::LengthMismatch { expected: gamma.dim, found: m.len() });
    }
    gamma
        .exponents
        .iter()
        .map(|g| monomial(m, g).map(|v| v as i64).ok_or(Error::Overflow("evaluating a monomial")))
        .collect()
}

/// `P = (P_1, …, P_d)` with integer coefficients and no constant terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolynomialMapping {
    dim: usize,
    components: Vec<BTreeMap<Vec<u32>, i64>>,
}

impl PolynomialMapping {
    pub fn new(dim: usize, components: Vec<BTreeMap<Vec<u32>, i64>>) -> Result<Self> {
        if dim == 0 || components.is_empty() {
            return Err(invalid("P", "needs a positive dimension and at least one component"));
        }
        for comp in &components {
            for g in comp.keys() {
                if g.len() != dim {
                    return Err(invalid("P", "monomial length differs from the dimension"));
                }
                if g.iter().all(|&e| e == 0) {
                    return Err(invalid("P", "components must vanish at the origin"));
                }
            }
        }
        Ok(Self { dim, components })
    }

    /// One-variable components given as `(power, coefficient)` lists.
    pub fn univariate(components: &[&[(u32, i64)]]) -> Result<Self> {
        Self::new(
            1,
            components
                .iter()
                .map(|c| c.iter().map(|&(p, a)| (vec![p], a)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .flat_map(|c| c.iter().filter(|(_, a)| **a != 0).map(|(g, _)| degree(g)))
            .max()
            .unwrap_or(1)
            .max(1)
    }

    /// `P(m)` by direct evaluation.
    pub fn eval(&self, m: &[i64]) -> Result<Vec<i128>> {
        self.components
            .iter()
            .map(|comp| {
                comp.iter().try_fold(0i128, |acc, (g, &a)| {
                    let v = monomial(m, g).ok_or(Error::Overflow("evaluating P"))?;
                    acc.checked_add(v.checked_mul(a as i128).ok_or(Error::Overflow("evaluating P"))?)
                        .ok_or(Error::Overflow("evaluating P"))
                })
            })
            .collect()
    }
}

/// `Γ` covering every monomial of `P` and the matrix `A` with `P(m) = A (m)^Γ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lift {
    pub gamma: CanonicalExponentSet,
    /// `d × |Γ|` coefficients `a_{j,γ}`.
    pub coefficients: Vec<Vec<i64>>,
}

impl Lift {
    /// `A (m)^Γ` through the canonical image.
    pub fn apply(&self, image: &[i64]) -> Result<Vec<i128>> {
        self.coefficients
            .iter()
            .map(|row| {
                row.iter().zip(image).try_fold(0i128, |acc, (&a, &y)| {
                    acc.checked_add((a as i128).checked_mul(y as i128).ok_or(Error::Overflow("applying the lift"))?)
                        .ok_or(Error::Overflow("applying the lift"))
                })
            })
            .collect()
    }
}

/// `Γ = {γ : 1 ≤ |γ| ≤ deg P}` with the coefficient table of `P` over it.
pub fn lift_polynomial(poly: &PolynomialMapping) -> Result<Lift> {
    let gamma = CanonicalExponentSet::full(poly.dim, poly.degree())?;
    let coefficients = poly
        .components
        .iter()
        .map(|comp| gamma.exponents.iter().map(|g| comp.get(g).copied().unwrap_or(0)).collect())
        .collect();
    Ok(Lift { gamma, coefficients })
}
