//! Gluing the free cone modules `C₁H ⊗ V` and `C₂H ⊗ V` along the
//! clutching map, and its comparison with the cotensor pieces of the join.
//!
//! Vectors in `Cᵢ H ⊗ V` are slices `[c¹ … cⁿ]` of one-leg paths standing
//! for `Σ_k cᵏ ⊗ e_k`.

use rand::Rng;
use serde::Serialize;
use serde_json::Value;

use super::path::{half, Domain, PathElement};
use super::{make_cone_element, ConeSide, JoinError};
use crate::corep::{clutching_map, ComoduleVector, HModuleMap};
use crate::hopfalg::{HopfElement, TensorElement};
use crate::scalar::ScalarQ;

/// `jᵢ`, `Jᵢ` and `Λᵢ` for a fixed comodule.
pub struct LambdaMaps<'a> {
    v: &'a ComoduleVector,
}

impl<'a> LambdaMaps<'a> {
    pub fn new(v: &'a ComoduleVector) -> Self {
        LambdaMaps { v }
    }

    /// `j₁(h) = 1 ⊗ h`, constant on `[0, ½]`.
    pub fn j1(&self, h: &HopfElement) -> Result<PathElement, JoinError> {
        let x = TensorElement::pure(&[&h.algebra().one(), h])?;
        Ok(PathElement::constant(Domain::Left, x))
    }

    /// `j₂(h) = h₍₁₎ ⊗ h₍₂₎`, constant on `[½, 1]`.
    pub fn j2(&self, h: &HopfElement) -> PathElement {
        PathElement::constant(Domain::Right, h.coproduct())
    }

    /// `Jᵢ(c ⊗ h) = c · jᵢ(h)`
    pub fn big_j(&self, side: ConeSide, c: &PathElement, h: &HopfElement) -> Result<PathElement, JoinError> {
        let j = match side {
            ConeSide::Left => self.j1(h)?,
            ConeSide::Right => self.j2(h),
        };
        c.with_domain(side.domain()).append_leg(&h.algebra().one())?.mul(&j)
    }

    /// `Λᵢ = (Jᵢ ⊗ id)∘(id ⊗ ϱ)`; component `j` of the result is
    /// `Σ_k Jᵢ(cᵏ ⊗ u_kj)`.
    pub fn lambda(&self, side: ConeSide, b: &[PathElement]) -> Result<Vec<PathElement>, JoinError> {
        let n = self.v.dim();
        check_len(n, b.len())?;
        let u = self.v.corep();
        let mut out = vec![PathElement::zero(self.v.algebra(), 2, side.domain()); n];
        for (k, ck) in b.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.checked_add(&self.big_j(side, ck, u.entry(k, j))?)?;
            }
        }
        Ok(out)
    }
}

fn check_len(expected: usize, found: usize) -> Result<(), JoinError> {
    if expected != found {
        return Err(crate::corep::CorepError::DimensionMismatch { expected, found }.into());
    }
    Ok(())
}

fn eval_half(b: &[PathElement]) -> Result<Vec<TensorElement>, JoinError> {
    b.iter().map(|p| p.evaluate(&half())).collect()
}

fn eval_half_hopf(b: &[PathElement]) -> Result<Vec<HopfElement>, JoinError> {
    b.iter().map(|p| Ok(p.evaluate(&half())?.into_element()?)).collect()
}

fn validate_cone_vector(b: &[PathElement], side: ConeSide) -> Result<Vec<PathElement>, JoinError> {
    b.iter().map(|p| make_cone_element(p, side)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GluingReport {
    /// `χ((ev_½ ⊗ id) b₁) = (ev_½ ⊗ id) b₂`
    pub chi_form: bool,
    /// `(ev_½ ⊗ id) Λ₁(b₁) = (ev_½ ⊗ id) Λ₂(b₂)` in `H ⊗ H ⊗ V`
    pub lambda_form: bool,
}

impl GluingReport {
    pub fn equivalent(&self) -> bool {
        self.chi_form == self.lambda_form
    }
}

/// Evaluates both gluing conditions exactly for `b₁ ∈ C₁H ⊗ V`,
/// `b₂ ∈ C₂H ⊗ V`.
pub fn verify_x_equivalence(
    v: &ComoduleVector,
    b1: &[PathElement],
    b2: &[PathElement],
) -> Result<GluingReport, JoinError> {
    let b1 = validate_cone_vector(b1, ConeSide::Left)?;
    let b2 = validate_cone_vector(b2, ConeSide::Right)?;
    let chi = clutching_map(v);
    let chi_form = chi.apply(&eval_half_hopf(&b1)?)? == eval_half_hopf(&b2)?;
    let maps = LambdaMaps::new(v);
    let l1 = eval_half(&maps.lambda(ConeSide::Left, &b1)?)?;
    let l2 = eval_half(&maps.lambda(ConeSide::Right, &b2)?)?;
    Ok(GluingReport { chi_form, lambda_form: l1 == l2 })
}

/// A random pair of cone vectors. When `glued`, `b₂(½)` is forced to be
/// `χ(b₁(½))`; otherwise one component of `b₂(½)` is perturbed.
pub fn random_x_pair<R: Rng>(
    v: &ComoduleVector,
    rng: &mut R,
    degree: usize,
    glued: bool,
) -> Result<(Vec<PathElement>, Vec<PathElement>), JoinError> {
    let alg = v.algebra();
    let n = v.dim();
    let w: Vec<HopfElement> = (0..n).map(|_| alg.random_element(rng, degree, 2)).collect();
    let mut y = clutching_map(v).apply(&w)?;
    if !glued {
        let k = rng.gen_range(0..n);
        let mut bump = alg.random_element(rng, degree, 2);
        if bump.is_zero() {
            bump = alg.one();
        }
        y[k] = y[k].checked_add(&bump)?;
    }
    let b1 = w.iter().map(|wk| cone_through(ConeSide::Left, wk, rng)).collect::<Result<Vec<_>, _>>()?;
    let b2 = y.iter().map(|yk| cone_through(ConeSide::Right, yk, rng)).collect::<Result<Vec<_>, _>>()?;
    Ok((b1, b2))
}

/// A cone element with value `x` at `½`: `λ + (x − λ)·τ + τ(1 − τ)·z`,
/// where `τ = 2t` on the left cone and `τ = 2 − 2t` on the right one.
fn cone_through<R: Rng>(side: ConeSide, x: &HopfElement, rng: &mut R) -> Result<PathElement, JoinError> {
    let alg = x.algebra();
    let lambda = alg.scalar(ScalarQ::from_int(rng.gen_range(-3..=3)));
    let z = alg.random_element(rng, 2, 1);
    let q = |k: i64| ScalarQ::from_int(k);
    // τ and τ(1 − τ) as polynomials in t
    let (tau, bump): (Vec<ScalarQ>, Vec<ScalarQ>) = match side {
        ConeSide::Left => (vec![q(0), q(2)], vec![q(0), q(2), q(-4)]),
        ConeSide::Right => (vec![q(2), q(-2)], vec![q(-2), q(6), q(-4)]),
    };
    let diff = x.checked_sub(&lambda)?;
    let p = PathElement::from_t_polys(side.domain(), &[(&[q(1)], &lambda), (&tau, &diff), (&bump, &z)])?;
    make_cone_element(&p, side)
}

/// An element of the glued module `M(C₁H ⊗ V, C₂H ⊗ V, χ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MilnorModuleElement {
    pub f1: Vec<PathElement>,
    pub f2: Vec<PathElement>,
}

impl MilnorModuleElement {
    /// Validates both cone vectors and `χ(f₁(½)) = f₂(½)`.
    pub fn new(v: &ComoduleVector, f1: &[PathElement], f2: &[PathElement]) -> Result<Self, JoinError> {
        check_len(v.dim(), f1.len())?;
        check_len(v.dim(), f2.len())?;
        let f1 = validate_cone_vector(f1, ConeSide::Left)?;
        let f2 = validate_cone_vector(f2, ConeSide::Right)?;
        let chi: HModuleMap = clutching_map(v);
        if chi.apply(&eval_half_hopf(&f1)?)? != eval_half_hopf(&f2)? {
            return Err(JoinError::Boundary {
                endpoint: "1/2".into(),
                reason: "halves are not glued by the clutching map".into(),
            });
        }
        Ok(MilnorModuleElement { f1, f2 })
    }

    /// Left multiplication by a suspension element `σ`; the result is
    /// re-validated.
    pub fn act(&self, v: &ComoduleVector, sigma: &PathElement) -> Result<Self, JoinError> {
        let s1 = sigma.with_domain(Domain::Left);
        let s2 = sigma.with_domain(Domain::Right);
        let f1 = self.f1.iter().map(|f| s1.mul(f)).collect::<Result<Vec<_>, _>>()?;
        let f2 = self.f2.iter().map(|f| s2.mul(f)).collect::<Result<Vec<_>, _>>()?;
        MilnorModuleElement::new(v, &f1, &f2)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "f1": self.f1.iter().map(PathElement::to_json).collect::<Vec<_>>(),
            "f2": self.f2.iter().map(PathElement::to_json).collect::<Vec<_>>(),
        })
    }
}
