//! The clutching idempotent of a unitary over the suspension.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use super::path::{Domain, PathElement, PathMonomial};
use super::{is_scalar, JoinError};
use crate::corep::MatrixCorep;
use crate::hopfalg::{HopfAlgebra, HopfElement, TensorElement};

/// Square matrix of one-leg paths on `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentPath {
    alg: HopfAlgebra,
    entries: Vec<Vec<PathElement>>,
}

impl IdempotentPath {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &PathElement {
        &self.entries[i][j]
    }

    pub fn square(&self) -> Result<IdempotentPath, JoinError> {
        self.matmul(self)
    }

    pub fn matmul(&self, o: &IdempotentPath) -> Result<IdempotentPath, JoinError> {
        let n = self.size();
        let mut entries = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut acc = PathElement::zero(&self.alg, 1, Domain::Full);
                for k in 0..n {
                    acc = acc.checked_add(&self.entries[i][k].mul(&o.entries[k][j])?)?;
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(IdempotentPath { alg: self.alg.clone(), entries })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> IdempotentPath {
        let n = self.size();
        let entries = (0..n).map(|i| (0..n).map(|j| self.entries[j][i].star()).collect()).collect();
        IdempotentPath { alg: self.alg.clone(), entries }
    }

    pub fn is_idempotent(&self) -> Result<bool, JoinError> {
        Ok(self.square()? == *self)
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint() == *self
    }

    /// Pointwise value at `t₀`.
    pub fn at(&self, t0: &BigRational) -> Result<Vec<Vec<TensorElement>>, JoinError> {
        self.entries.iter().map(|r| r.iter().map(|p| p.evaluate(t0)).collect()).collect()
    }

    /// `p(0)` and `p(1)` have scalar entries.
    pub fn has_scalar_endpoints(&self) -> Result<bool, JoinError> {
        for t in [BigRational::zero(), BigRational::one()] {
            if !self.at(&t)?.iter().flatten().all(is_scalar) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.entries.iter().map(|r| Value::Array(r.iter().map(PathElement::to_json).collect())).collect())
    }
}

/// `p = [[c²·1, cs·a], [cs·a*, s²·1]]` with `c = cos(πt/2)`, `s = sin(πt/2)`
/// as formal coordinates. `a` must be unitary.
pub fn milnor_idempotent(a: &MatrixCorep) -> Result<IdempotentPath, JoinError> {
    let adj = a.adjoint();
    if !a.matmul(&adj)?.is_identity() || !adj.matmul(a)?.is_identity() {
        return Err(JoinError::NonUnitary);
    }
    let alg = a.algebra().clone();
    let n = a.dim();
    let cc = PathMonomial { t: 0, c: 0, s: 0 };
    let cs = PathMonomial { t: 0, c: 1, s: 1 };
    let ss = PathMonomial { t: 0, c: 0, s: 2 };
    let path = |m: PathMonomial, h: &HopfElement| PathElement::hopf(Domain::Full, m, h);
    let one = alg.one();
    let mut entries = vec![vec![PathElement::zero(&alg, 1, Domain::Full); 2 * n]; 2 * n];
    for i in 0..n {
        // c² = 1 − s²
        entries[i][i] = path(cc, &one).checked_sub(&path(ss, &one))?;
        entries[n + i][n + i] = path(ss, &one);
        for j in 0..n {
            entries[i][n + j] = path(cs, a.entry(i, j));
            entries[n + i][j] = path(cs, adj.entry(i, j));
        }
    }
    Ok(IdempotentPath { alg, entries })
}
