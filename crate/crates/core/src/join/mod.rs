//! Cones, suspensions and the equivariant join `H *_δ H` at the level of
//! polynomial paths, the pullback presentation of its Peter–Weyl algebra,
//! the clutching gluing of free cone modules, the idempotent built from a
//! unitary, and freeness of coactions.

mod clutch;
mod coaction;
mod idempotent;
mod path;

pub use clutch::{random_x_pair, verify_x_equivalence, GluingReport, LambdaMaps, MilnorModuleElement};
pub use coaction::{
    coact, coact_first_leg, ellwood_freeness_check, in_coaction_image, rank, Coaction, FreenessReport, RegularCoaction,
    TrivialCoaction,
};
pub use idempotent::{milnor_idempotent, IdempotentPath};
pub use path::{half, Domain, PathElement, PathMonomial};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::corep::CorepError;
use crate::hopfalg::{HopfAlgebra, HopfElement, HopfError, TensorElement};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JoinError {
    #[error("boundary condition violated at t = {endpoint}: {reason}")]
    Boundary { endpoint: String, reason: String },
    #[error("paths on {left:?} and {right:?} cannot be combined")]
    DomainMismatch { left: Domain, right: Domain },
    #[error("t = {t} lies outside {domain:?}")]
    OutsideDomain { t: String, domain: Domain },
    #[error("monomial {monomial} has no rational value at t = {t}")]
    NotEvaluable { t: String, monomial: String },
    #[error("matrix is not unitary")]
    NonUnitary,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Corep(#[from] CorepError),
}

fn boundary(endpoint: &str, reason: impl Into<String>) -> JoinError {
    JoinError::Boundary { endpoint: endpoint.into(), reason: reason.into() }
}

/// True iff every term has the unit on every leg, i.e. `x ∈ ℂ·1`.
pub fn is_scalar(x: &TensorElement) -> bool {
    x.terms().keys().all(|k| k.iter().all(Vec::is_empty))
}

/// Which cone of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConeSide {
    /// Functions on `[0, ½]` scalar at `0`.
    Left,
    /// Functions on `[½, 1]` scalar at `1`.
    Right,
}

impl ConeSide {
    pub fn domain(self) -> Domain {
        match self {
            ConeSide::Left => Domain::Left,
            ConeSide::Right => Domain::Right,
        }
    }

    fn apex(self) -> BigRational {
        match self {
            ConeSide::Left => BigRational::zero(),
            ConeSide::Right => BigRational::one(),
        }
    }
}

/// Validates a one-leg path as an element of the given cone. The path is
/// re-tagged with the cone's interval.
pub fn make_cone_element(path: &PathElement, side: ConeSide) -> Result<PathElement, JoinError> {
    if path.legs() != 1 {
        return Err(JoinError::Invalid("cone elements have one leg".into()));
    }
    let p = path.with_domain(side.domain());
    let apex = side.apex();
    if !is_scalar(&p.evaluate(&apex)?) {
        return Err(boundary(&apex.to_string(), "value is not a scalar"));
    }
    Ok(p)
}

/// Validates an element of the unreduced suspension: scalar at both ends.
pub fn make_suspension_element(path: &PathElement) -> Result<PathElement, JoinError> {
    if path.legs() != 1 {
        return Err(JoinError::Invalid("suspension elements have one leg".into()));
    }
    let p = path.with_domain(Domain::Full);
    for t in [BigRational::zero(), BigRational::one()] {
        if !is_scalar(&p.evaluate(&t)?) {
            return Err(boundary(&t.to_string(), "value is not a scalar"));
        }
    }
    Ok(p)
}

/// Validates a two-leg path on `[0, 1]` as an element of `A *_δ H`:
/// `f(0) ∈ ℂ ⊗ H` and `f(1) ∈ δ(A)`.
pub fn make_join_element(path: &PathElement, d: &dyn Coaction) -> Result<PathElement, JoinError> {
    if path.legs() != 2 {
        return Err(JoinError::Invalid("join elements have two legs".into()));
    }
    let p = path.with_domain(Domain::Full);
    check_join_boundary(&p, d)?;
    Ok(p)
}

fn check_join_boundary(p: &PathElement, d: &dyn Coaction) -> Result<(), JoinError> {
    let f0 = p.evaluate(&BigRational::zero())?;
    if !f0.is_scalar_on_leg(0) {
        return Err(boundary("0", "first leg is not a scalar"));
    }
    let f1 = p.evaluate(&BigRational::one())?;
    if !in_coaction_image(d, &f1)? {
        return Err(boundary("1", "value is not in the image of the coaction"));
    }
    Ok(())
}

/// `δ_Δ = id ⊗ Δ` applied to every coefficient of a join element. The
/// result is re-validated: scalar first leg at `0`, and `δ(A) ⊗ H` at `1`.
pub fn coact_delta_delta(f: &PathElement, d: &dyn Coaction) -> Result<PathElement, JoinError> {
    check_join_boundary(f, d)?;
    let out = f.map_coefficients(|x| Ok(x.apply_coproduct(x.legs() - 1)?))?;
    if !out.evaluate(&BigRational::zero())?.is_scalar_on_leg(0) {
        return Err(boundary("0", "coaction broke the scalar first leg"));
    }
    if !in_coaction_image(d, &out.evaluate(&BigRational::one())?)? {
        return Err(boundary("1", "coaction left δ(A) ⊗ H"));
    }
    Ok(out)
}

/// The three pieces `𝒫₁`, `𝒫₂`, `𝒫₁₂` whose pullback is the Peter–Weyl
/// algebra of `H *_Δ H`:
/// `𝒫₁` = two-leg paths on `[0, ½]` with `f(0) ∈ ℂ ⊗ H`,
/// `𝒫₂` = two-leg paths on `[½, 1]` with `f(1) ∈ Δ(H)`,
/// `𝒫₁₂ = H ⊗ H`, both maps being evaluation at `½`.
#[derive(Clone, Debug)]
pub struct PullbackModel {
    h: HopfAlgebra,
    delta: RegularCoaction,
}

/// A pair `(p₁, p₂)` agreeing at `½`.
#[derive(Clone, Debug, PartialEq)]
pub struct PullbackElement {
    pub p1: PathElement,
    pub p2: PathElement,
}

pub fn build_pullback_p(h: &HopfAlgebra) -> PullbackModel {
    PullbackModel { h: h.clone(), delta: RegularCoaction::new(h) }
}

impl PullbackModel {
    pub fn algebra(&self) -> &HopfAlgebra {
        &self.h
    }

    pub fn p1(&self, f: &PathElement) -> Result<PathElement, JoinError> {
        if f.legs() != 2 {
            return Err(JoinError::Invalid("𝒫₁ elements have two legs".into()));
        }
        let f = f.with_domain(Domain::Left);
        if !f.evaluate(&BigRational::zero())?.is_scalar_on_leg(0) {
            return Err(boundary("0", "first leg is not a scalar"));
        }
        Ok(f)
    }

    pub fn p2(&self, f: &PathElement) -> Result<PathElement, JoinError> {
        if f.legs() != 2 {
            return Err(JoinError::Invalid("𝒫₂ elements have two legs".into()));
        }
        let f = f.with_domain(Domain::Right);
        if !in_coaction_image(&self.delta, &f.evaluate(&BigRational::one())?)? {
            return Err(boundary("1", "value is not in Δ(H)"));
        }
        Ok(f)
    }

    pub fn pi1(&self, f: &PathElement) -> Result<TensorElement, JoinError> {
        f.evaluate(&half())
    }

    pub fn pi2(&self, f: &PathElement) -> Result<TensorElement, JoinError> {
        f.evaluate(&half())
    }

    /// Validates both components and the matching condition at `½`.
    pub fn element(&self, p1: &PathElement, p2: &PathElement) -> Result<PullbackElement, JoinError> {
        let p1 = self.p1(p1)?;
        let p2 = self.p2(p2)?;
        if self.pi1(&p1)? != self.pi2(&p2)? {
            return Err(boundary("1/2", "components disagree"));
        }
        Ok(PullbackElement { p1, p2 })
    }

    /// Componentwise product; the matching condition is preserved because
    /// both evaluations are algebra maps.
    pub fn mul(&self, x: &PullbackElement, y: &PullbackElement) -> Result<PullbackElement, JoinError> {
        self.element(&x.p1.mul(&y.p1)?, &x.p2.mul(&y.p2)?)
    }

    /// `id ⊗ Δ` on the last leg.
    pub fn coact(&self, f: &PathElement) -> Result<PathElement, JoinError> {
        f.map_coefficients(|x| Ok(x.apply_coproduct(x.legs() - 1)?))
    }

    /// `(id ⊗ Δ)(f) = f ⊗ 1`
    pub fn is_coinvariant(&self, f: &PathElement) -> Result<bool, JoinError> {
        Ok(self.coact(f)? == f.append_leg(&self.h.one())?)
    }
}

/// `(a ▷ f)(t) = a₍₁₎ f(t) S(a₍₂₎)` on a one-leg path.
pub fn adjoint_action(a: &HopfElement, f: &PathElement) -> Result<PathElement, JoinError> {
    if f.legs() != 1 {
        return Err(JoinError::Invalid("adjoint action needs a one-leg path".into()));
    }
    let alg = a.algebra();
    let pieces: Vec<(HopfElement, HopfElement)> = a
        .coproduct()
        .terms()
        .iter()
        .map(|(k, c)| (alg.word_element(&k[0]).scale(c), alg.word_element(&k[1]).antipode()))
        .collect();
    f.map_coefficients(|x| {
        let x = x.clone().into_element()?;
        let mut acc = alg.zero();
        for (l, sr) in &pieces {
            acc = acc.checked_add(&l.mul(&x)?.mul(sr)?)?;
        }
        Ok(TensorElement::from_element(&acc))
    })
}

#[cfg(test)]
mod tests;
