//! Right coactions `δ: A → A ⊗ H` and the Ellwood freeness check.

use std::collections::BTreeMap;

use serde::Serialize;

use super::JoinError;
use crate::hopfalg::{HopfAlgebra, HopfElement, TensorElement, Word};
use crate::scalar::ScalarQ;

/// A coaction of `target` on `source`, given on normal words of `source`
/// as a sum of `(A-word, H-word, coefficient)`.
pub trait Coaction: Send + Sync {
    fn name(&self) -> String;
    fn source(&self) -> &HopfAlgebra;
    fn target(&self) -> &HopfAlgebra;
    fn coact_word(&self, w: &Word) -> Vec<(Word, Word, ScalarQ)>;
}

/// `Δ` as a coaction of `H` on itself.
#[derive(Clone, Debug)]
pub struct RegularCoaction {
    h: HopfAlgebra,
}

impl RegularCoaction {
    pub fn new(h: &HopfAlgebra) -> Self {
        RegularCoaction { h: h.clone() }
    }
}

impl Coaction for RegularCoaction {
    fn name(&self) -> String {
        format!("Δ on {}", self.h.id())
    }
    fn source(&self) -> &HopfAlgebra {
        &self.h
    }
    fn target(&self) -> &HopfAlgebra {
        &self.h
    }
    fn coact_word(&self, w: &Word) -> Vec<(Word, Word, ScalarQ)> {
        self.h.coproduct_word(w).to_vec()
    }
}

/// `δ(a) = a ⊗ 1`
#[derive(Clone, Debug)]
pub struct TrivialCoaction {
    a: HopfAlgebra,
    h: HopfAlgebra,
}

impl TrivialCoaction {
    pub fn new(a: &HopfAlgebra, h: &HopfAlgebra) -> Self {
        TrivialCoaction { a: a.clone(), h: h.clone() }
    }
}

impl Coaction for TrivialCoaction {
    fn name(&self) -> String {
        format!("trivial {} on {}", self.h.id(), self.a.id())
    }
    fn source(&self) -> &HopfAlgebra {
        &self.a
    }
    fn target(&self) -> &HopfAlgebra {
        &self.h
    }
    fn coact_word(&self, w: &Word) -> Vec<(Word, Word, ScalarQ)> {
        vec![(w.clone(), Vec::new(), ScalarQ::one())]
    }
}

fn require_self_coaction(d: &dyn Coaction) -> Result<(), JoinError> {
    if d.source() != d.target() {
        return Err(JoinError::Invalid(format!("{} needs A = H to be written as a tensor over one algebra", d.name())));
    }
    Ok(())
}

/// `δ(x)` as a two-leg tensor; requires `A = H`.
pub fn coact(d: &dyn Coaction, x: &HopfElement) -> Result<TensorElement, JoinError> {
    require_self_coaction(d)?;
    let mut terms = BTreeMap::new();
    for (w, c) in x.terms() {
        for (a, h, k) in d.coact_word(w) {
            add(&mut terms, vec![a, h], c * &k);
        }
    }
    Ok(TensorElement::from_terms(d.source().clone(), 2, terms))
}

/// `(δ ⊗ id ⊗ …)` applied to the first leg; requires `A = H`.
pub fn coact_first_leg(d: &dyn Coaction, x: &TensorElement) -> Result<TensorElement, JoinError> {
    require_self_coaction(d)?;
    let mut terms = BTreeMap::new();
    for (k, c) in x.terms() {
        for (a, h, e) in d.coact_word(&k[0]) {
            let mut nk = Vec::with_capacity(k.len() + 1);
            nk.push(a);
            nk.push(h);
            nk.extend_from_slice(&k[1..]);
            add(&mut terms, nk, c * &e);
        }
    }
    Ok(TensorElement::from_terms(d.source().clone(), x.legs() + 1, terms))
}

/// Membership of `y ∈ A ⊗ H ⊗ …` in `δ(A) ⊗ H ⊗ …`, decided through the
/// left inverse `id ⊗ ε` of `δ`.
pub fn in_coaction_image(d: &dyn Coaction, y: &TensorElement) -> Result<bool, JoinError> {
    if y.legs() < 2 {
        return Ok(false);
    }
    let candidate = y.apply_counit(1)?;
    Ok(coact_first_leg(d, &candidate)? == *y)
}

fn add(t: &mut BTreeMap<Vec<Word>, ScalarQ>, k: Vec<Word>, c: ScalarQ) {
    let e = t.entry(k).or_insert_with(ScalarQ::zero);
    *e = &*e + &c;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub coaction: String,
    pub dim_a: usize,
    pub dim_h: usize,
    pub span_dim: usize,
    pub free: bool,
}

/// Dimension of `span{(x ⊗ 1) δ(y)}` over basis pairs, compared with
/// `dim A · dim H`. Both algebras must be finite-dimensional.
pub fn ellwood_freeness_check(d: &dyn Coaction) -> Result<FreenessReport, JoinError> {
    let a = d.source();
    let h = d.target();
    let basis = |alg: &HopfAlgebra| {
        alg.finite_basis(64).ok_or_else(|| JoinError::Invalid(format!("{} is not finite-dimensional", alg.id())))
    };
    let a_basis = basis(a)?;
    let h_basis = basis(h)?;
    let a_pos: BTreeMap<&Word, usize> = a_basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let h_pos: BTreeMap<&Word, usize> = h_basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let width = a_basis.len() * h_basis.len();
    let mut rows = Vec::new();
    for y in &a_basis {
        let dy = d.coact_word(y);
        for x in &a_basis {
            let mut row = vec![ScalarQ::zero(); width];
            for (aw, hw, c) in &dy {
                for (pw, pc) in a.mul_words(x, aw).iter() {
                    let col = a_pos[pw] * h_basis.len() + h_pos[hw];
                    row[col] = &row[col] + &(c * pc);
                }
            }
            rows.push(row);
        }
    }
    let span_dim = rank(rows);
    Ok(FreenessReport {
        coaction: d.name(),
        dim_a: a_basis.len(),
        dim_h: h_basis.len(),
        span_dim,
        free: span_dim == width,
    })
}

/// Rank over ℚ(q) by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<ScalarQ>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        let pivot: Vec<ScalarQ> = rows[r].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[col].clone();
            if f.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = &*x - &(&f * p);
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}
