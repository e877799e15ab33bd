//! Matrix corepresentations, the fundamental corepresentation of quantum
//! SU(2), and the clutching isomorphism of free modules `H ⊗ V`.
//!
//! A comodule `V` is always given in a basis `e_1 … e_n` through its matrix:
//! `ϱ(e_i) = Σ_j u_ij ⊗ e_j`. Elements of `H ⊗ V` are vectors `[x_1 … x_n]`
//! standing for `Σ_i x_i ⊗ e_i`.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::hopfalg::{HopfAlgebra, HopfElement, HopfError, TensorElement, ALPHA, ALPHA_STAR, BETA, BETA_STAR};
use crate::scalar::ScalarQ;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorepError {
    #[error("matrix must be square and non-empty, got {rows} rows")]
    NotSquare { rows: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("corepresentation invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

/// Square matrix over a Hopf algebra, candidate for a corepresentation.
/// The axioms are checked by [`verify_corep`], not at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixCorep {
    alg: HopfAlgebra,
    entries: Vec<Vec<HopfElement>>,
}

impl MatrixCorep {
    pub fn new(entries: Vec<Vec<HopfElement>>) -> Result<Self, CorepError> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(CorepError::NotSquare { rows: n });
        }
        let alg = entries[0][0].algebra().clone();
        for x in entries.iter().flatten() {
            if x.algebra() != &alg {
                return Err(HopfError::AlgebraMismatch {
                    left: alg.id().to_string(),
                    right: x.algebra().id().to_string(),
                }
                .into());
            }
        }
        Ok(MatrixCorep { alg, entries })
    }

    pub fn identity(alg: &HopfAlgebra, n: usize) -> Self {
        let entries = (0..n).map(|i| (0..n).map(|j| if i == j { alg.one() } else { alg.zero() }).collect()).collect();
        MatrixCorep { alg: alg.clone(), entries }
    }

    pub fn algebra(&self) -> &HopfAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &HopfElement {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<HopfElement>] {
        &self.entries
    }

    /// `(u*)_ij = (u_ji)*`
    pub fn adjoint(&self) -> MatrixCorep {
        let n = self.dim();
        let entries = (0..n).map(|i| (0..n).map(|j| self.entries[j][i].star()).collect()).collect();
        MatrixCorep { alg: self.alg.clone(), entries }
    }

    pub fn map(&self, f: impl Fn(&HopfElement) -> HopfElement) -> MatrixCorep {
        let entries = self.entries.iter().map(|r| r.iter().map(&f).collect()).collect();
        MatrixCorep { alg: self.alg.clone(), entries }
    }

    pub fn matmul(&self, other: &MatrixCorep) -> Result<MatrixCorep, CorepError> {
        let n = self.dim();
        if other.dim() != n {
            return Err(CorepError::DimensionMismatch { expected: n, found: other.dim() });
        }
        let mut entries = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut acc = self.alg.zero();
                for k in 0..n {
                    acc = acc.checked_add(&self.entries[i][k].mul(&other.entries[k][j])?)?;
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(MatrixCorep { alg: self.alg.clone(), entries })
    }

    pub fn is_identity(&self) -> bool {
        *self == MatrixCorep::identity(&self.alg, self.dim())
    }

    /// `{"dim": n, "entries": [[element, …], …]}`
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim(),
            "entries": self
                .entries
                .iter()
                .map(|r| r.iter().map(HopfElement::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(alg: &HopfAlgebra, v: &Value) -> Result<Self, CorepError> {
        let bad = || CorepError::Hopf(HopfError::Parse("malformed matrix".into()));
        let rows = v.get("entries").and_then(Value::as_array).ok_or_else(bad)?;
        let entries = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|x| alg.element_from_json(x).map_err(CorepError::from))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = MatrixCorep::new(entries)?;
        if v.get("dim").and_then(Value::as_u64) != Some(m.dim() as u64) {
            return Err(bad());
        }
        Ok(m)
    }
}

impl Serialize for MatrixCorep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// `U = [[a, −q b*], [b, a*]]`, checked against every corepresentation axiom.
pub fn fundamental_u(alg: &HopfAlgebra) -> Result<MatrixCorep, CorepError> {
    let p = alg.presentation();
    let names = ["a", "a*", "b", "b*"];
    let matches = [ALPHA, ALPHA_STAR, BETA, BETA_STAR].iter().zip(names).all(|(&g, n)| p.generator_index(n) == Some(g));
    if !matches || !p.id().starts_with("SUq2") {
        return Err(CorepError::Invariant(format!("`{}` is not quantum SU(2)", p.id())));
    }
    let g = |x| alg.generator(x);
    let u = MatrixCorep::new(vec![vec![g(ALPHA), g(BETA_STAR).scale(&-ScalarQ::q())], vec![g(BETA), g(ALPHA_STAR)]])?;
    let report = verify_corep(&u)?;
    if let Some(c) = report.checks.iter().find(|c| !c.passed) {
        return Err(CorepError::Invariant(format!("{} fails for U", c.name)));
    }
    Ok(u)
}

/// Outcome of one axiom family, with the first failing entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub entry: (usize, usize),
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorepReport {
    pub dim: usize,
    pub checks: Vec<AxiomCheck>,
}

impl CorepReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn first_failure<F>(name: &str, n: usize, mut f: F) -> Result<AxiomCheck, CorepError>
where
    F: FnMut(usize, usize) -> Result<Option<(Value, Value)>, CorepError>,
{
    for i in 0..n {
        for j in 0..n {
            if let Some((lhs, rhs)) = f(i, j)? {
                return Ok(AxiomCheck {
                    name: name.into(),
                    passed: false,
                    counterexample: Some(Counterexample { entry: (i, j), lhs, rhs }),
                });
            }
        }
    }
    Ok(AxiomCheck { name: name.into(), passed: true, counterexample: None })
}

/// Checks `Δ(u_ij) = Σ_k u_ik ⊗ u_kj`, `ε(u_ij) = δ_ij`, unitarity
/// `u u* = u* u = 1` and `S(u_ij) = (u_ji)*`.
pub fn verify_corep(u: &MatrixCorep) -> Result<CorepReport, CorepError> {
    let n = u.dim();
    let alg = u.algebra();
    let mut checks = Vec::new();
    checks.push(first_failure("comultiplication", n, |i, j| {
        let lhs = u.entries[i][j].coproduct();
        let mut rhs = alg.tensor_zero(2);
        for k in 0..n {
            rhs = rhs.checked_add(&TensorElement::pure(&[&u.entries[i][k], &u.entries[k][j]])?)?;
        }
        Ok((lhs != rhs).then(|| (lhs.to_json(), rhs.to_json())))
    })?);
    checks.push(first_failure("counit", n, |i, j| {
        let lhs = u.entries[i][j].counit();
        let rhs = if i == j { ScalarQ::one() } else { ScalarQ::zero() };
        Ok((lhs != rhs).then(|| (json!(lhs.to_string()), json!(rhs.to_string()))))
    })?);
    let adj = u.adjoint();
    for (name, prod) in [("unitarity u u*", u.matmul(&adj)?), ("unitarity u* u", adj.matmul(u)?)] {
        checks.push(first_failure(name, n, |i, j| {
            let lhs = &prod.entries[i][j];
            let rhs = if i == j { alg.one() } else { alg.zero() };
            Ok((*lhs != rhs).then(|| (lhs.to_json(), rhs.to_json())))
        })?);
    }
    checks.push(first_failure("antipode", n, |i, j| {
        let lhs = u.entries[i][j].antipode();
        let rhs = u.entries[j][i].star();
        Ok((lhs != rhs).then(|| (lhs.to_json(), rhs.to_json())))
    })?);
    Ok(CorepReport { dim: n, checks })
}

/// A finite-dimensional left comodule `ϱ: V → H ⊗ V` given by its matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComoduleVector {
    corep: MatrixCorep,
}

impl ComoduleVector {
    /// Requires the corepresentation and counit axioms.
    pub fn new(corep: MatrixCorep) -> Result<Self, CorepError> {
        let r = verify_corep(&corep)?;
        for name in ["comultiplication", "counit"] {
            if !r.check(name).is_some_and(|c| c.passed) {
                return Err(CorepError::Invariant(format!("{name} axiom fails")));
            }
        }
        Ok(ComoduleVector { corep })
    }

    /// `ϱ(e_i) = 1 ⊗ e_i`
    pub fn trivial(alg: &HopfAlgebra, n: usize) -> Self {
        ComoduleVector { corep: MatrixCorep::identity(alg, n) }
    }

    pub fn corep(&self) -> &MatrixCorep {
        &self.corep
    }

    pub fn dim(&self) -> usize {
        self.corep.dim()
    }

    pub fn algebra(&self) -> &HopfAlgebra {
        self.corep.algebra()
    }

    /// `(id ⊗ ϱ)(Σ_i x_i ⊗ e_i)`: component `j` is `Σ_i x_i ⊗ u_ij`.
    pub fn coact_tensor(&self, x: &[TensorElement]) -> Result<Vec<TensorElement>, CorepError> {
        self.check_len(x.len())?;
        let n = self.dim();
        let legs = x.first().map(|t| t.legs() + 1).unwrap_or(1);
        let mut out = vec![self.algebra().tensor_zero(legs); n];
        for (i, xi) in x.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.checked_add(&xi.append_leg(&self.corep.entries[i][j])?)?;
            }
        }
        Ok(out)
    }

    fn check_len(&self, found: usize) -> Result<(), CorepError> {
        if found != self.dim() {
            return Err(CorepError::DimensionMismatch { expected: self.dim(), found });
        }
        Ok(())
    }
}

/// A left `H`-linear map of `H ⊗ V` given by a matrix `T` acting on the
/// right: `h ⊗ e_i ↦ Σ_j h·T_ij ⊗ e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct HModuleMap {
    matrix: MatrixCorep,
}

impl HModuleMap {
    pub fn new(matrix: MatrixCorep) -> Self {
        HModuleMap { matrix }
    }

    pub fn matrix(&self) -> &MatrixCorep {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn apply(&self, x: &[HopfElement]) -> Result<Vec<HopfElement>, CorepError> {
        let n = self.dim();
        if x.len() != n {
            return Err(CorepError::DimensionMismatch { expected: n, found: x.len() });
        }
        let alg = self.matrix.algebra();
        let mut out = vec![alg.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.checked_add(&xi.mul(&self.matrix.entries[i][j])?)?;
            }
        }
        Ok(out)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &HModuleMap) -> Result<HModuleMap, CorepError> {
        Ok(HModuleMap { matrix: self.matrix.matmul(&next.matrix)? })
    }
}

/// `χ = (m ⊗ id)∘(id ⊗ (S ⊗ id)∘ϱ)`, i.e. `T_ij = S(u_ij)`.
pub fn clutching_map(v: &ComoduleVector) -> HModuleMap {
    HModuleMap::new(v.corep.map(HopfElement::antipode))
}

/// `(m ⊗ id)∘(id ⊗ ϱ)`, i.e. `T_ij = u_ij`; the inverse of the clutching map.
pub fn clutching_inverse(v: &ComoduleVector) -> HModuleMap {
    HModuleMap::new(v.corep.clone())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InverseReport {
    pub samples: usize,
    /// `Σ_k S(u_ik) u_kj = ε(u_ij)` and `Σ_k u_ik S(u_kj) = ε(u_ij)`.
    pub matrix_identity: bool,
    pub failures: Vec<Value>,
}

impl InverseReport {
    pub fn passed(&self) -> bool {
        self.matrix_identity && self.failures.is_empty()
    }
}

/// Applies the clutching map and its inverse in both orders to every sample
/// vector of `H ⊗ V` and compares with the input.
pub fn clutching_inverse_check(v: &ComoduleVector, samples: &[Vec<HopfElement>]) -> Result<InverseReport, CorepError> {
    let chi = clutching_map(v);
    let inv = clutching_inverse(v);
    let matrix_identity = chi.then(&inv)?.matrix.is_identity() && inv.then(&chi)?.matrix.is_identity();
    let mut failures = Vec::new();
    for x in samples {
        let there_back = inv.apply(&chi.apply(x)?)?;
        let back_there = chi.apply(&inv.apply(x)?)?;
        if there_back != *x || back_there != *x {
            failures.push(json!({
                "input": x.iter().map(HopfElement::to_json).collect::<Vec<_>>(),
                "chi_inverse_chi": there_back.iter().map(HopfElement::to_json).collect::<Vec<_>>(),
                "chi_chi_inverse": back_there.iter().map(HopfElement::to_json).collect::<Vec<_>>(),
            }));
        }
    }
    Ok(InverseReport { samples: samples.len(), matrix_identity, failures })
}

/// Membership of `x = Σ_i x_i ⊗ e_i ∈ P ⊗ V` in the cotensor product
/// `P □ V`, i.e. `(δ ⊗ id)(x) = (id ⊗ ϱ)(x)`, where `δ` is the coaction
/// `id ⊗ Δ` on the last leg of `P`.
pub fn cotensor_membership(x: &[TensorElement], v: &ComoduleVector) -> Result<bool, CorepError> {
    cotensor_membership_with(x, v, |t| Ok(t.apply_coproduct(t.legs() - 1)?))
}

/// As [`cotensor_membership`] with an explicit coaction on `P`.
pub fn cotensor_membership_with<F>(x: &[TensorElement], v: &ComoduleVector, coact: F) -> Result<bool, CorepError>
where
    F: Fn(&TensorElement) -> Result<TensorElement, CorepError>,
{
    let rhs = v.coact_tensor(x)?;
    for (xi, r) in x.iter().zip(&rhs) {
        if coact(xi)? != *r {
            return Ok(false);
        }
    }
    Ok(true)
}
