//! Function algebras C(G) of finite groups on the delta basis.
//!
//! `δ_e` is eliminated by `δ_e → 1 − Σ_{g≠e} δ_g`, so the normal basis is
//! `{1} ∪ {δ_g : g ≠ e}`.

use super::algebra::HopfAlgebra;
use super::presentation::{Gen, Generator, HopfPresentation, Rule};
use super::HopfError;
use crate::group::FiniteGroup;
use crate::scalar::ScalarQ;

pub fn delta_name(g: usize) -> String {
    format!("d{g}")
}

pub fn finite_group_presentation(group: &FiniteGroup) -> Result<HopfPresentation, HopfError> {
    let n = group.order();
    if n > Gen::MAX as usize {
        return Err(HopfError::InvalidPresentation(format!("group of order {n} is too large")));
    }
    let e = group.identity();
    let generators =
        (0..n).map(|g| Generator { name: delta_name(g), star: g as Gen, weight: if g == e { 2 } else { 1 } }).collect();
    let mut rules = Vec::new();
    rules.push(Rule {
        lhs: vec![e as Gen],
        rhs: std::iter::once((vec![], ScalarQ::one()))
            .chain(group.elements().filter(|&g| g != e).map(|g| (vec![g as Gen], ScalarQ::from_int(-1))))
            .collect(),
    });
    for g in group.elements().filter(|&g| g != e) {
        for h in group.elements().filter(|&h| h != e) {
            let rhs = if g == h { vec![(vec![g as Gen], ScalarQ::one())] } else { vec![] };
            rules.push(Rule { lhs: vec![g as Gen, h as Gen], rhs });
        }
    }
    let coproduct = group
        .elements()
        .map(|g| {
            group
                .elements()
                .map(|h| {
                    let k = group.mul(group.inv(h), g);
                    (vec![h as Gen], vec![k as Gen], ScalarQ::one())
                })
                .collect()
        })
        .collect();
    let counit = group.elements().map(|g| if g == e { ScalarQ::one() } else { ScalarQ::zero() }).collect();
    let antipode = group.elements().map(|g| vec![(vec![group.inv(g) as Gen], ScalarQ::one())]).collect();
    HopfPresentation::new(format!("C({})", group.name()), generators, rules, coproduct, counit, antipode)
}

/// C(G) as a Hopf algebra.
pub fn finite_group_algebra(group: &FiniteGroup) -> Result<HopfAlgebra, HopfError> {
    HopfAlgebra::new(finite_group_presentation(group)?)
}
