//! Randomized checks of the Hopf *-algebra identities, with the first
//! counterexample of each kind kept in serialized form.

use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{HopfAlgebra, HopfElement, HopfError, TensorElement};

pub const AXIOMS: [&str; 10] = [
    "coassociativity",
    "counit",
    "coproduct multiplicative",
    "counit multiplicative",
    "antipode",
    "star compatibility",
    "(S *)^2 = id",
    "involution",
    "star anti-multiplicative",
    "antipode anti-multiplicative",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomTally {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// Inputs of the first failing sample.
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomSuiteReport {
    pub algebra: String,
    pub samples: usize,
    pub degree: usize,
    pub seed: u64,
    pub axioms: Vec<AxiomTally>,
}

impl AxiomSuiteReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.failed == 0)
    }
}

fn m_s_id(d: &TensorElement, leg: usize) -> Result<HopfElement, HopfError> {
    d.apply_antipode(leg)?.multiply_legs(0)?.into_element()
}

/// Outcome of every identity on one pair `(x, y)`.
fn check_pair(h: &HopfAlgebra, x: &HopfElement, y: &HopfElement) -> Result<[bool; 10], HopfError> {
    let d = x.coproduct();
    let xy = x.mul(y)?;
    let eps = h.scalar(x.counit());
    Ok([
        d.apply_coproduct(0)? == d.apply_coproduct(1)?,
        d.apply_counit(0)?.into_element()? == *x && d.apply_counit(1)?.into_element()? == *x,
        xy.coproduct() == d.mul(&y.coproduct())?,
        xy.counit() == &x.counit() * &y.counit(),
        m_s_id(&d, 0)? == eps && m_s_id(&d, 1)? == eps,
        x.star().coproduct() == d.star(),
        x.star().antipode().star().antipode() == *x,
        x.star().star() == *x,
        xy.star() == y.star().mul(&x.star())?,
        xy.antipode() == y.antipode().mul(&x.antipode())?,
    ])
}

/// Checks all identities in [`AXIOMS`] on `samples` random pairs of
/// elements of degree at most `degree`.
pub fn hopf_axiom_suite(
    h: &HopfAlgebra,
    samples: usize,
    degree: usize,
    seed: u64,
) -> Result<AxiomSuiteReport, HopfError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(HopfElement, HopfElement)> =
        (0..samples).map(|_| (h.random_element(&mut rng, degree, 2), h.random_element(&mut rng, degree, 2))).collect();
    let outcomes: Vec<[bool; 10]> = pairs.par_iter().map(|(x, y)| check_pair(h, x, y)).collect::<Result<_, _>>()?;
    let axioms = AXIOMS
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let failed: Vec<usize> = (0..samples).filter(|&s| !outcomes[s][i]).collect();
            AxiomTally {
                name: name.to_string(),
                passed: samples - failed.len(),
                failed: failed.len(),
                counterexample: failed.first().map(|&s| json!({"x": pairs[s].0.to_json(), "y": pairs[s].1.to_json()})),
            }
        })
        .collect();
    Ok(AxiomSuiteReport { algebra: h.id().to_string(), samples, degree, seed, axioms })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalLimitReport {
    pub samples: usize,
    pub seed: u64,
    pub vanishing: usize,
    pub counterexample: Option<Value>,
}

impl ClassicalLimitReport {
    pub fn passed(&self) -> bool {
        self.vanishing == self.samples
    }
}

/// Commutators of random monomial pairs, specialized at `q = 1`.
pub fn classical_limit_check(
    h: &HopfAlgebra,
    samples: usize,
    degree: usize,
    seed: u64,
) -> Result<ClassicalLimitReport, HopfError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = BigRational::one();
    let mut vanishing = 0;
    let mut counterexample = None;
    for _ in 0..samples {
        let x = h.random_monomial(&mut rng, degree);
        let y = h.random_monomial(&mut rng, degree);
        let c = x.commutator(&y)?;
        if c.specialize(&one)?.is_empty() {
            vanishing += 1;
        } else if counterexample.is_none() {
            counterexample = Some(json!({"x": x.to_json(), "y": y.to_json(), "commutator": c.to_json()}));
        }
    }
    Ok(ClassicalLimitReport { samples, seed, vanishing, counterexample })
}
