//! Polynomial paths `[a, b] → H^{⊗legs}` in `t` and formal trigonometric
//! coordinates `c`, `s` with `c² + s² = 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::JoinError;
use crate::hopfalg::{HopfAlgebra, HopfElement, TensorElement};
use crate::scalar::{Poly, ScalarQ};

/// `t^t c^c s^s` with `c ∈ {0, 1}`: `c²` is always rewritten to `1 − s²`,
/// so these monomials are a basis and equality is syntactic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PathMonomial {
    pub t: u32,
    pub c: u8,
    pub s: u32,
}

impl PathMonomial {
    pub const ONE: PathMonomial = PathMonomial { t: 0, c: 0, s: 0 };
    pub const T: PathMonomial = PathMonomial { t: 1, c: 0, s: 0 };
    pub const C: PathMonomial = PathMonomial { t: 0, c: 1, s: 0 };
    pub const S: PathMonomial = PathMonomial { t: 0, c: 0, s: 1 };

    pub fn is_trig_free(&self) -> bool {
        self.c == 0 && self.s == 0
    }

    /// Product as a signed sum of reduced monomials.
    fn mul(self, o: PathMonomial) -> Vec<(PathMonomial, i64)> {
        let t = self.t + o.t;
        let s = self.s + o.s;
        match self.c + o.c {
            2 => vec![(PathMonomial { t, c: 0, s }, 1), (PathMonomial { t, c: 0, s: s + 2 }, -1)],
            c => vec![(PathMonomial { t, c, s }, 1)],
        }
    }
}

impl fmt::Display for PathMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("t", self.t), ("c", self.c as u32), ("s", self.s)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Interval a path lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Domain {
    /// `[0, ½]`
    Left,
    /// `[½, 1]`
    Right,
    /// `[0, 1]`
    Full,
}

impl Domain {
    pub fn contains(&self, t: &BigRational) -> bool {
        let half = BigRational::new(1.into(), 2.into());
        let (lo, hi) = match self {
            Domain::Left => (BigRational::zero(), half),
            Domain::Right => (half, BigRational::one()),
            Domain::Full => (BigRational::zero(), BigRational::one()),
        };
        lo <= *t && *t <= hi
    }
}

/// Polynomial path with tensor coefficients; zero coefficients are not
/// stored.
#[derive(Clone, PartialEq)]
pub struct PathElement {
    alg: HopfAlgebra,
    legs: usize,
    domain: Domain,
    terms: BTreeMap<PathMonomial, TensorElement>,
}

pub fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

impl PathElement {
    pub fn zero(alg: &HopfAlgebra, legs: usize, domain: Domain) -> Self {
        PathElement { alg: alg.clone(), legs, domain, terms: BTreeMap::new() }
    }

    /// `m · x`
    pub fn monomial(domain: Domain, m: PathMonomial, x: TensorElement) -> Self {
        let mut p = PathElement::zero(x.algebra(), x.legs(), domain);
        if !x.is_zero() {
            p.terms.insert(m, x);
        }
        p
    }

    pub fn constant(domain: Domain, x: TensorElement) -> Self {
        PathElement::monomial(domain, PathMonomial::ONE, x)
    }

    /// One-leg path `m · h`.
    pub fn hopf(domain: Domain, m: PathMonomial, h: &HopfElement) -> Self {
        PathElement::monomial(domain, m, TensorElement::from_element(h))
    }

    /// `Σ_i p_i(t) · h_i` for scalar polynomials `p_i` in `t`, given by their
    /// rational coefficients in increasing degree.
    pub fn from_t_polys(domain: Domain, parts: &[(&[ScalarQ], &HopfElement)]) -> Result<Self, JoinError> {
        let alg =
            parts.first().map(|(_, h)| h.algebra().clone()).ok_or_else(|| JoinError::Invalid("empty path".into()))?;
        let mut out = PathElement::zero(&alg, 1, domain);
        for (coeffs, h) in parts {
            for (i, c) in coeffs.iter().enumerate() {
                let m = PathMonomial { t: i as u32, c: 0, s: 0 };
                let term = PathElement::hopf(domain, m, &h.scale(c));
                out = out.checked_add(&term)?;
            }
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &HopfAlgebra {
        &self.alg
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn terms(&self) -> &BTreeMap<PathMonomial, TensorElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_trig_free(&self) -> bool {
        self.terms.keys().all(PathMonomial::is_trig_free)
    }

    /// The same polynomial regarded on another interval.
    pub fn with_domain(&self, domain: Domain) -> Self {
        PathElement { domain, ..self.clone() }
    }

    fn check_compatible(&self, o: &PathElement) -> Result<(), JoinError> {
        if self.domain != o.domain {
            return Err(JoinError::DomainMismatch { left: self.domain, right: o.domain });
        }
        if self.legs != o.legs {
            return Err(JoinError::Hopf(crate::hopfalg::HopfError::LegMismatch { expected: self.legs, found: o.legs }));
        }
        Ok(())
    }

    fn insert(&mut self, m: PathMonomial, x: TensorElement) -> Result<(), JoinError> {
        let sum = match self.terms.remove(&m) {
            Some(prev) => prev.checked_add(&x)?,
            None => x,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &PathElement) -> Result<PathElement, JoinError> {
        self.check_compatible(o)?;
        let mut out = self.clone();
        for (m, x) in &o.terms {
            out.insert(*m, x.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &PathElement) -> Result<PathElement, JoinError> {
        self.checked_add(&o.scale(&ScalarQ::from_int(-1)))
    }

    pub fn scale(&self, s: &ScalarQ) -> PathElement {
        self.map_coefficients(|x| Ok(x.scale(s))).expect("scaling cannot fail")
    }

    /// Pointwise product, legwise on coefficients.
    pub fn mul(&self, o: &PathElement) -> Result<PathElement, JoinError> {
        self.check_compatible(o)?;
        let mut out = PathElement::zero(&self.alg, self.legs, self.domain);
        for (m1, x1) in &self.terms {
            for (m2, x2) in &o.terms {
                let prod = x1.mul(x2)?;
                for (m, sign) in m1.mul(*m2) {
                    out.insert(m, prod.scale(&ScalarQ::from_int(sign)))?;
                }
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a scalar polynomial path (one with
    /// coefficients in `ℂ·1`), given as monomial → rational coefficient.
    pub fn mul_scalar_path(&self, p: &[(PathMonomial, ScalarQ)]) -> Result<PathElement, JoinError> {
        let unit = TensorElement::unit(self.alg.clone(), self.legs);
        let mut sp = PathElement::zero(&self.alg, self.legs, self.domain);
        for (m, c) in p {
            sp.insert(*m, unit.scale(c))?;
        }
        sp.mul(self)
    }

    /// Applies `f` to every coefficient; `f` must be linear.
    pub fn map_coefficients<F>(&self, f: F) -> Result<PathElement, JoinError>
    where
        F: Fn(&TensorElement) -> Result<TensorElement, JoinError>,
    {
        let mut out: Option<PathElement> = None;
        for (m, x) in &self.terms {
            let y = f(x)?;
            let acc = out.get_or_insert_with(|| PathElement::zero(&self.alg, y.legs(), self.domain));
            if acc.legs != y.legs() {
                return Err(JoinError::Invalid("coefficient map changed leg count".into()));
            }
            acc.insert(*m, y)?;
        }
        Ok(out.unwrap_or_else(|| {
            // leg count of the image of zero is unknown; probe with the unit
            let legs = f(&TensorElement::unit(self.alg.clone(), self.legs)).map(|y| y.legs()).unwrap_or(self.legs);
            PathElement::zero(&self.alg, legs, self.domain)
        }))
    }

    /// Pointwise `*` on every leg; t, c, s are real.
    pub fn star(&self) -> PathElement {
        self.map_coefficients(|x| Ok(x.star())).expect("star cannot fail")
    }

    /// `p ⊗ h` on every coefficient.
    pub fn append_leg(&self, h: &HopfElement) -> Result<PathElement, JoinError> {
        self.map_coefficients(|x| Ok(x.append_leg(h)?))
    }

    /// Exact evaluation at a rational `t₀` in the domain. Paths with
    /// trigonometric coordinates are evaluable at `0`, `1`, and at `½` when
    /// every monomial has even total degree in `c, s` (value `2^{-d/2}`).
    pub fn evaluate(&self, t0: &BigRational) -> Result<TensorElement, JoinError> {
        if !self.domain.contains(t0) {
            return Err(JoinError::OutsideDomain { t: t0.to_string(), domain: self.domain });
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        let mut out = TensorElement::zero(self.alg.clone(), self.legs);
        for (m, x) in &self.terms {
            let tv = pow(t0, m.t);
            let trig = if m.is_trig_free() {
                one.clone()
            } else if *t0 == zero {
                if m.s > 0 {
                    zero.clone()
                } else {
                    one.clone()
                }
            } else if *t0 == one {
                if m.c > 0 {
                    zero.clone()
                } else {
                    one.clone()
                }
            } else if *t0 == half() && (m.c as u32 + m.s).is_multiple_of(2) {
                pow(&half(), (m.c as u32 + m.s) / 2)
            } else {
                return Err(JoinError::NotEvaluable { t: t0.to_string(), monomial: m.to_string() });
            };
            let v = tv * trig;
            if !v.is_zero() {
                out = out.checked_add(&x.scale(&rational_scalar(&v)))?;
            }
        }
        Ok(out)
    }

    /// Substitutes arbitrary rational values for `t`, `c`, `s`; meaningful
    /// when `c₀² + s₀² = 1`.
    pub fn evaluate_formal(
        &self,
        t0: &BigRational,
        c0: &BigRational,
        s0: &BigRational,
    ) -> Result<TensorElement, JoinError> {
        if c0 * c0 + s0 * s0 != BigRational::one() {
            return Err(JoinError::Invalid("(c, s) must lie on the unit circle".into()));
        }
        let mut out = TensorElement::zero(self.alg.clone(), self.legs);
        for (m, x) in &self.terms {
            let v = pow(t0, m.t) * pow(c0, m.c as u32) * pow(s0, m.s);
            out = out.checked_add(&x.scale(&rational_scalar(&v)))?;
        }
        Ok(out)
    }

    /// Restriction to one leg when `legs == 1`, as `HopfElement` coefficients.
    pub fn hopf_terms(&self) -> Result<BTreeMap<PathMonomial, HopfElement>, JoinError> {
        self.terms.iter().map(|(m, x)| Ok((*m, x.clone().into_element()?))).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (k, x) in &self.terms {
            m.insert(k.to_string(), x.to_json());
        }
        serde_json::json!({
            "domain": self.domain,
            "legs": self.legs,
            "terms": m,
        })
    }
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

pub(crate) fn rational_scalar(r: &BigRational) -> ScalarQ {
    let num = Poly::constant(r.numer().clone());
    let den = Poly::constant(r.denom().clone());
    ScalarQ::new(num, den).expect("nonzero denominator")
}

impl fmt::Display for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, x)| format!("{m}·[{x}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}] {}", self.domain, self.legs, self)
    }
}
