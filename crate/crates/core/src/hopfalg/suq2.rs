//! The coordinate algebra of quantum SU(2).
//!
//! Generators `a`, `a*`, `b`, `b*` with `U = [[a, -q b*], [b, a*]]` unitary.
//! Normal words are `a^i b^j b*^k` and `a*^i b^j b*^k`.

use std::sync::OnceLock;

use super::algebra::HopfAlgebra;
use super::presentation::{Gen, Generator, HopfPresentation, Rule, Word};
use crate::scalar::ScalarQ;

pub const ALPHA: Gen = 0;
pub const ALPHA_STAR: Gen = 1;
pub const BETA: Gen = 2;
pub const BETA_STAR: Gen = 3;

fn q(k: i32) -> ScalarQ {
    ScalarQ::q_pow(k)
}

fn neg_q(k: i32) -> ScalarQ {
    -ScalarQ::q_pow(k)
}

fn rule(lhs: &[Gen], rhs: Vec<(Word, ScalarQ)>) -> Rule {
    Rule { lhs: lhs.to_vec(), rhs }
}

fn standard_rules() -> Vec<Rule> {
    use self::{ALPHA as A, ALPHA_STAR as AS, BETA as B, BETA_STAR as BS};
    vec![
        rule(&[B, A], vec![(vec![A, B], q(-1))]),
        rule(&[BS, A], vec![(vec![A, BS], q(-1))]),
        rule(&[B, AS], vec![(vec![AS, B], q(1))]),
        rule(&[BS, AS], vec![(vec![AS, BS], q(1))]),
        rule(&[BS, B], vec![(vec![B, BS], ScalarQ::one())]),
        rule(&[AS, A], vec![(vec![], ScalarQ::one()), (vec![B, BS], ScalarQ::from_int(-1))]),
        rule(&[A, AS], vec![(vec![], ScalarQ::one()), (vec![B, BS], neg_q(2))]),
    ]
}

/// The presentation with its rewriting rules, Δ, ε and S on generators.
pub fn su_q2_presentation() -> HopfPresentation {
    build(standard_rules())
}

fn build(rules: Vec<Rule>) -> HopfPresentation {
    use self::{ALPHA as A, ALPHA_STAR as AS, BETA as B, BETA_STAR as BS};
    let one = ScalarQ::one;
    let generators = vec![
        Generator { name: "a".into(), star: AS, weight: 2 },
        Generator { name: "a*".into(), star: A, weight: 2 },
        Generator { name: "b".into(), star: BS, weight: 1 },
        Generator { name: "b*".into(), star: B, weight: 1 },
    ];
    let coproduct = vec![
        vec![(vec![A], vec![A], one()), (vec![BS], vec![B], neg_q(1))],
        vec![(vec![AS], vec![AS], one()), (vec![B], vec![BS], neg_q(1))],
        vec![(vec![B], vec![A], one()), (vec![AS], vec![B], one())],
        vec![(vec![BS], vec![AS], one()), (vec![A], vec![BS], one())],
    ];
    let counit = vec![one(), one(), ScalarQ::zero(), ScalarQ::zero()];
    let antipode =
        vec![vec![(vec![AS], one())], vec![(vec![A], one())], vec![(vec![B], neg_q(1))], vec![(vec![BS], neg_q(-1))]];
    HopfPresentation::new("SUq2", generators, rules, coproduct, counit, antipode)
        .expect("quantum SU(2) presentation is well formed")
}

/// The same presentation with `b a → q a b` in place of `b a → q⁻¹ a b`.
/// Still terminating, but no longer confluent; used as a negative control.
pub fn corrupted_su_q2_presentation() -> HopfPresentation {
    let mut rules = standard_rules();
    rules[0].rhs = vec![(vec![ALPHA, BETA], q(1))];
    let mut p = build(rules);
    p.id = "SUq2-corrupted".into();
    p
}

/// Shared handle to the quantum SU(2) algebra. All calls return the same
/// handle, so product memo tables are reused across the process.
pub fn su_q2() -> HopfAlgebra {
    static ALG: OnceLock<HopfAlgebra> = OnceLock::new();
    ALG.get_or_init(|| HopfAlgebra::new(su_q2_presentation()).expect("rules are oriented")).clone()
}
