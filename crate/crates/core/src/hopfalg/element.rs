use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use super::algebra::HopfAlgebra;
use super::presentation::{accumulate, Combination, Word};
use super::HopfError;
use crate::scalar::{ScalarError, ScalarQ};

/// A finite linear combination of normal-form monomials.
///
/// Zero coefficients are never stored and every key is a normal word, so
/// equality is syntactic.
#[derive(Clone)]
pub struct HopfElement {
    alg: HopfAlgebra,
    terms: Combination,
}

impl PartialEq for HopfElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.terms == other.terms
    }
}

impl Eq for HopfElement {}

impl HopfElement {
    pub(crate) fn from_normal(alg: HopfAlgebra, mut terms: Combination) -> Self {
        terms.retain(|_, c| !c.is_zero());
        HopfElement { alg, terms }
    }

    pub fn algebra(&self) -> &HopfAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> &Combination {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` iff the element is `c·1`.
    pub fn scalar_value(&self) -> Option<ScalarQ> {
        match self.terms.len() {
            0 => Some(ScalarQ::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Largest word length among the terms.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &HopfElement) -> Result<HopfElement, HopfError> {
        self.alg.check_same(&other.alg)?;
        let mut t = self.terms.clone();
        for (w, c) in &other.terms {
            accumulate(&mut t, w.clone(), c.clone());
        }
        Ok(HopfElement { alg: self.alg.clone(), terms: t })
    }

    pub fn checked_sub(&self, other: &HopfElement) -> Result<HopfElement, HopfError> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, s: &ScalarQ) -> HopfElement {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect();
        HopfElement::from_normal(self.alg.clone(), terms)
    }

    /// Product in normal form.
    pub fn mul(&self, other: &HopfElement) -> Result<HopfElement, HopfError> {
        self.alg.check_same(&other.alg)?;
        let terms = self.alg.mul_combinations(&self.terms, &other.terms);
        Ok(HopfElement { alg: self.alg.clone(), terms })
    }

    /// Involutive anti-homomorphism; coefficients are fixed because q is real.
    pub fn star(&self) -> HopfElement {
        let mut out = Combination::new();
        for (w, c) in &self.terms {
            for (nw, nc) in self.alg.star_word(w) {
                accumulate(&mut out, nw, &nc * c);
            }
        }
        HopfElement { alg: self.alg.clone(), terms: out }
    }

    pub fn antipode(&self) -> HopfElement {
        let mut out = Combination::new();
        for (w, c) in &self.terms {
            for (nw, nc) in self.alg.antipode_word(w) {
                accumulate(&mut out, nw, &nc * c);
            }
        }
        HopfElement { alg: self.alg.clone(), terms: out }
    }

    pub fn counit(&self) -> ScalarQ {
        self.terms.iter().fold(ScalarQ::zero(), |acc, (w, c)| &acc + &(c * &self.alg.counit_word(w)))
    }

    pub fn coproduct(&self) -> TensorElement {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            for (l, r, d) in self.alg.coproduct_word(w).iter() {
                accumulate(&mut out, vec![l.clone(), r.clone()], c * d);
            }
        }
        TensorElement { alg: self.alg.clone(), legs: 2, terms: out }
    }

    /// `x·y − y·x`
    pub fn commutator(&self, other: &HopfElement) -> Result<HopfElement, HopfError> {
        self.mul(other)?.checked_sub(&other.mul(self)?)
    }

    /// Coefficients evaluated at a rational value of q.
    pub fn specialize(&self, q0: &BigRational) -> Result<BTreeMap<Word, BigRational>, ScalarError> {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let v = c.evaluate(q0)?;
            if v != BigRational::from_integer(0.into()) {
                out.insert(w.clone(), v);
            }
        }
        Ok(out)
    }

    /// `{"algebra": id, "terms": {word: "num/den"}}`
    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.alg.id(),
            "terms": terms_json(&self.alg, &self.terms),
        })
    }
}

fn terms_json(alg: &HopfAlgebra, terms: &Combination) -> Value {
    let pres = alg.presentation();
    let mut m = Map::new();
    for (w, c) in terms {
        m.insert(pres.render_word(w), Value::String(c.to_string()));
    }
    Value::Object(m)
}

impl HopfAlgebra {
    /// Inverse of [`HopfElement::to_json`]; words are re-normalized.
    pub fn element_from_json(&self, v: &Value) -> Result<HopfElement, HopfError> {
        let bad = |m: &str| HopfError::Parse(m.to_string());
        let alg_id = v.get("algebra").and_then(Value::as_str).ok_or_else(|| bad("missing `algebra`"))?;
        if alg_id != self.id() {
            return Err(HopfError::AlgebraMismatch { left: self.id().to_string(), right: alg_id.to_string() });
        }
        let terms = v.get("terms").and_then(Value::as_object).ok_or_else(|| bad("missing `terms`"))?;
        let mut parsed = Vec::new();
        for (w, c) in terms {
            let word = self.presentation().parse_word(w)?;
            let coeff: ScalarQ = c.as_str().ok_or_else(|| bad("coefficient must be a string"))?.parse()?;
            parsed.push((word, coeff));
        }
        Ok(self.element(parsed))
    }
}

impl serde::Serialize for HopfElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn fmt_terms<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (String, &'a ScalarQ)>) -> fmt::Result {
    let mut any = false;
    for (w, c) in terms {
        if any {
            write!(f, " + ")?;
        }
        any = true;
        if c.is_one() {
            write!(f, "{w}")?;
        } else if c.denominator().is_one() {
            write!(f, "({}) {w}", c.numerator())?;
        } else {
            write!(f, "({c}) {w}")?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pres = self.alg.presentation();
        fmt_terms(f, self.terms.iter().map(|(w, c)| (pres.render_word(w), c)))
    }
}

impl fmt::Debug for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.alg.id(), self)
    }
}

/// Panics if the algebras differ; see [`HopfElement::checked_add`].
impl Add for &HopfElement {
    type Output = HopfElement;
    fn add(self, rhs: &HopfElement) -> HopfElement {
        self.checked_add(rhs).expect("adding elements of different algebras")
    }
}

/// Panics if the algebras differ; see [`HopfElement::checked_sub`].
impl Sub for &HopfElement {
    type Output = HopfElement;
    fn sub(self, rhs: &HopfElement) -> HopfElement {
        self.checked_sub(rhs).expect("subtracting elements of different algebras")
    }
}

impl Neg for &HopfElement {
    type Output = HopfElement;
    fn neg(self) -> HopfElement {
        self.scale(&ScalarQ::from_int(-1))
    }
}

/// Element of an algebraic tensor power H^{⊗legs}, expanded in the basis of
/// normal-form monomials on each leg.
#[derive(Clone)]
pub struct TensorElement {
    alg: HopfAlgebra,
    legs: usize,
    terms: BTreeMap<Vec<Word>, ScalarQ>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.legs == other.legs && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl TensorElement {
    pub fn zero(alg: HopfAlgebra, legs: usize) -> Self {
        TensorElement { alg, legs, terms: BTreeMap::new() }
    }

    /// Builds from basis coefficients; every word must already be normal.
    pub(crate) fn from_terms(alg: HopfAlgebra, legs: usize, mut terms: BTreeMap<Vec<Word>, ScalarQ>) -> Self {
        terms.retain(|k, c| !c.is_zero() && k.len() == legs);
        TensorElement { alg, legs, terms }
    }

    /// `1 ⊗ … ⊗ 1`
    pub fn unit(alg: HopfAlgebra, legs: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![Vec::new(); legs], ScalarQ::one());
        TensorElement { alg, legs, terms }
    }

    /// `x₁ ⊗ x₂ ⊗ …`
    pub fn pure(factors: &[&HopfElement]) -> Result<Self, HopfError> {
        let first = factors.first().ok_or(HopfError::LegMismatch { expected: 1, found: 0 })?;
        let alg = first.alg.clone();
        let mut terms: BTreeMap<Vec<Word>, ScalarQ> = BTreeMap::new();
        terms.insert(Vec::new(), ScalarQ::one());
        for x in factors {
            alg.check_same(&x.alg)?;
            let mut next = BTreeMap::new();
            for (key, c) in &terms {
                for (w, d) in &x.terms {
                    let mut k = key.clone();
                    k.push(w.clone());
                    accumulate(&mut next, k, c * d);
                }
            }
            terms = next;
        }
        Ok(TensorElement { alg, legs: factors.len(), terms })
    }

    /// A one-leg tensor is the element itself.
    pub fn from_element(x: &HopfElement) -> Self {
        let terms = x.terms.iter().map(|(w, c)| (vec![w.clone()], c.clone())).collect();
        TensorElement { alg: x.alg.clone(), legs: 1, terms }
    }

    pub fn into_element(self) -> Result<HopfElement, HopfError> {
        if self.legs != 1 {
            return Err(HopfError::LegMismatch { expected: 1, found: self.legs });
        }
        let terms = self.terms.into_iter().map(|(mut k, c)| (k.pop().unwrap(), c)).collect();
        Ok(HopfElement { alg: self.alg, terms })
    }

    pub fn algebra(&self) -> &HopfAlgebra {
        &self.alg
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, ScalarQ> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &TensorElement) -> Result<(), HopfError> {
        self.alg.check_same(&other.alg)?;
        if self.legs != other.legs {
            return Err(HopfError::LegMismatch { expected: self.legs, found: other.legs });
        }
        Ok(())
    }

    fn check_leg(&self, leg: usize) -> Result<(), HopfError> {
        if leg >= self.legs {
            return Err(HopfError::LegMismatch { expected: leg + 1, found: self.legs });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TensorElement) -> Result<TensorElement, HopfError> {
        self.check_compatible(other)?;
        let mut t = self.terms.clone();
        for (k, c) in &other.terms {
            accumulate(&mut t, k.clone(), c.clone());
        }
        Ok(TensorElement { alg: self.alg.clone(), legs: self.legs, terms: t })
    }

    pub fn checked_sub(&self, other: &TensorElement) -> Result<TensorElement, HopfError> {
        self.checked_add(&other.scale(&ScalarQ::from_int(-1)))
    }

    pub fn scale(&self, s: &ScalarQ) -> TensorElement {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            accumulate(&mut terms, k.clone(), c * s);
        }
        TensorElement { alg: self.alg.clone(), legs: self.legs, terms }
    }

    /// Legwise product `(a⊗b)(c⊗d) = ac⊗bd`.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement, HopfError> {
        self.check_compatible(other)?;
        let mut out = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut partial: Vec<(Vec<Word>, ScalarQ)> = vec![(Vec::new(), c1 * c2)];
                for (a, b) in k1.iter().zip(k2) {
                    let prod = self.alg.mul_words(a, b);
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (key, c) in &partial {
                        for (w, d) in prod.iter() {
                            let mut nk = key.clone();
                            nk.push(w.clone());
                            next.push((nk, c * d));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    accumulate(&mut out, k, c);
                }
            }
        }
        Ok(TensorElement { alg: self.alg.clone(), legs: self.legs, terms: out })
    }

    /// Multiplies leg `leg` by `h` from the left.
    pub fn left_mul_leg(&self, leg: usize, h: &HopfElement) -> Result<TensorElement, HopfError> {
        self.check_leg(leg)?;
        self.alg.check_same(&h.alg)?;
        self.map_leg(leg, |w| self.alg.mul_combinations(&h.terms, &single(w)))
    }

    /// Multiplies leg `leg` by `h` from the right.
    pub fn right_mul_leg(&self, leg: usize, h: &HopfElement) -> Result<TensorElement, HopfError> {
        self.check_leg(leg)?;
        self.alg.check_same(&h.alg)?;
        self.map_leg(leg, |w| self.alg.mul_combinations(&single(w), &h.terms))
    }

    fn map_leg<F>(&self, leg: usize, f: F) -> Result<TensorElement, HopfError>
    where
        F: Fn(&Word) -> Combination,
    {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            for (w, d) in f(&k[leg]) {
                let mut nk = k.clone();
                nk[leg] = w;
                accumulate(&mut out, nk, c * &d);
            }
        }
        Ok(TensorElement { alg: self.alg.clone(), legs: self.legs, terms: out })
    }

    /// Applies Δ to leg `leg`, producing `legs + 1` legs.
    pub fn apply_coproduct(&self, leg: usize) -> Result<TensorElement, HopfError> {
        self.check_leg(leg)?;
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            for (l, r, d) in self.alg.coproduct_word(&k[leg]).iter() {
                let mut nk = Vec::with_capacity(self.legs + 1);
                nk.extend_from_slice(&k[..leg]);
                nk.push(l.clone());
                nk.push(r.clone());
                nk.extend_from_slice(&k[leg + 1..]);
                accumulate(&mut out, nk, c * d);
            }
        }
        Ok(TensorElement { alg: self.alg.clone(), legs: self.legs + 1, terms: out })
    }

    /// Applies ε to leg `leg`, producing `legs − 1` legs.
    pub fn apply_counit(&self, leg: usize) -> Result<TensorElement, HopfError> {
        self.check_leg(leg)?;
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let e = self.alg.counit_word(&k[leg]);
            let mut nk = k.clone();
            nk.remove(leg);
            accumulate(&mut out, nk, c * &e);
        }
        Ok(TensorElement { alg: self.alg.clone(), legs: self.legs - 1, terms: out })
    }

    pub fn apply_antipode(&self, leg: usize) -> Result<TensorElement, HopfError> {
        self.check_leg(leg)?;
        self.map_leg(leg, |w| self.alg.antipode_word(w))
    }

    /// `*` on every leg.
    pub fn star(&self) -> TensorElement {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut partial: Vec<(Vec<Word>, ScalarQ)> = vec![(Vec::new(), c.clone())];
            for w in k {
                let img = self.alg.star_word(w);
                let mut next = Vec::new();
                for (key, pc) in &partial {
                    for (nw, d) in &img {
                        let mut nk = key.clone();
                        nk.push(nw.clone());
                        next.push((nk, pc * d));
                    }
                }
                partial = next;
            }
            for (nk, nc) in partial {
                accumulate(&mut out, nk, nc);
            }
        }
        TensorElement { alg: self.alg.clone(), legs: self.legs, terms: out }
    }

    /// Multiplies legs `leg` and `leg + 1` together.
    pub fn multiply_legs(&self, leg: usize) -> Result<TensorElement, HopfError> {
        self.check_leg(leg + 1)?;
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            for (w, d) in self.alg.mul_words(&k[leg], &k[leg + 1]).iter() {
                let mut nk = k.clone();
                nk.remove(leg + 1);
                nk[leg] = w.clone();
                accumulate(&mut out, nk, c * d);
            }
        }
        Ok(TensorElement { alg: self.alg.clone(), legs: self.legs - 1, terms: out })
    }

    /// `x ⊗ h`
    pub fn append_leg(&self, h: &HopfElement) -> Result<TensorElement, HopfError> {
        self.alg.check_same(&h.alg)?;
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            for (w, d) in &h.terms {
                let mut nk = k.clone();
                nk.push(w.clone());
                accumulate(&mut out, nk, c * d);
            }
        }
        Ok(TensorElement { alg: self.alg.clone(), legs: self.legs + 1, terms: out })
    }

    /// True iff every term carries the empty word on `leg`, i.e. the
    /// element lies in `… ⊗ ℂ ⊗ …` at that position.
    pub fn is_scalar_on_leg(&self, leg: usize) -> bool {
        leg < self.legs && self.terms.keys().all(|k| k[leg].is_empty())
    }

    pub fn to_json(&self) -> Value {
        let pres = self.alg.presentation();
        let mut m = Map::new();
        for (k, c) in &self.terms {
            let key = k.iter().map(|w| pres.render_word(w)).collect::<Vec<_>>().join(" ⊗ ");
            m.insert(key, Value::String(c.to_string()));
        }
        json!({ "algebra": self.alg.id(), "legs": self.legs, "terms": Value::Object(m) })
    }
}

fn single(w: &Word) -> Combination {
    let mut c = Combination::new();
    c.insert(w.clone(), ScalarQ::one());
    c
}

impl serde::Serialize for TensorElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pres = self.alg.presentation();
        fmt_terms(
            f,
            self.terms.iter().map(|(k, c)| {
                let w = k.iter().map(|w| pres.render_word(w)).collect::<Vec<_>>().join(" ⊗ ");
                (w, c)
            }),
        )
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}^⊗{}] {}", self.alg.id(), self.legs, self)
    }
}
