use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::seq::SliceRandom;
use rand::Rng;

use super::element::{HopfElement, TensorElement};
use super::presentation::{accumulate, Combination, Gen, HopfPresentation, Strategy, Word, DEFAULT_STEP_LIMIT};
use super::HopfError;
use crate::scalar::ScalarQ;

type Terms = Arc<[(Word, ScalarQ)]>;
type TensorTerms = Arc<[(Word, Word, ScalarQ)]>;

/// Shared handle to a validated presentation.
///
/// Cloning is cheap. Normal forms of products are memoized per algebra; the
/// memo tables are invisible to callers.
#[derive(Clone)]
pub struct HopfAlgebra {
    inner: Arc<Inner>,
}

struct Inner {
    pres: HopfPresentation,
    append_cache: RwLock<HashMap<(Word, Gen), Terms>>,
    product_cache: RwLock<HashMap<(Word, Word), Terms>>,
    coproduct_cache: RwLock<HashMap<Word, TensorTerms>>,
}

impl fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfAlgebra({})", self.id())
    }
}

impl PartialEq for HopfAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.id() == other.id()
    }
}

impl Eq for HopfAlgebra {}

fn cached<K, V, F>(cache: &RwLock<HashMap<K, V>>, key: &K, compute: F) -> V
where
    K: std::hash::Hash + Eq + Clone,
    V: Clone,
    F: FnOnce() -> V,
{
    if let Some(v) = cache.read().expect("cache poisoned").get(key) {
        return v.clone();
    }
    let v = compute();
    cache.write().expect("cache poisoned").entry(key.clone()).or_insert(v).clone()
}

impl HopfAlgebra {
    /// Wraps a presentation after checking that every rule decreases the
    /// termination order.
    pub fn new(pres: HopfPresentation) -> Result<Self, HopfError> {
        let bad = pres.misoriented_rules();
        if !bad.is_empty() {
            return Err(HopfError::InvalidPresentation(format!(
                "{}: rules {bad:?} do not decrease the word order",
                pres.id()
            )));
        }
        Ok(HopfAlgebra {
            inner: Arc::new(Inner {
                pres,
                append_cache: RwLock::default(),
                product_cache: RwLock::default(),
                coproduct_cache: RwLock::default(),
            }),
        })
    }

    pub fn id(&self) -> &str {
        self.inner.pres.id()
    }

    pub fn presentation(&self) -> &HopfPresentation {
        &self.inner.pres
    }

    pub(crate) fn check_same(&self, other: &HopfAlgebra) -> Result<(), HopfError> {
        if self == other {
            Ok(())
        } else {
            Err(HopfError::AlgebraMismatch { left: self.id().to_string(), right: other.id().to_string() })
        }
    }

    pub fn zero(&self) -> HopfElement {
        HopfElement::from_normal(self.clone(), Combination::new())
    }

    pub fn one(&self) -> HopfElement {
        self.scalar(ScalarQ::one())
    }

    pub fn scalar(&self, s: ScalarQ) -> HopfElement {
        let mut t = Combination::new();
        accumulate(&mut t, Vec::new(), s);
        HopfElement::from_normal(self.clone(), t)
    }

    /// The generator with the given name, in normal form.
    pub fn gen(&self, name: &str) -> Result<HopfElement, HopfError> {
        let g =
            self.presentation().generator_index(name).ok_or_else(|| HopfError::UnknownGenerator(name.to_string()))?;
        Ok(self.generator(g))
    }

    pub fn generator(&self, g: Gen) -> HopfElement {
        self.word_element(&[g])
    }

    /// Parses a space-separated word of generator names and normalizes it.
    pub fn word(&self, s: &str) -> Result<HopfElement, HopfError> {
        let w = self.presentation().parse_word(s)?;
        Ok(self.word_element(&w))
    }

    /// Normal form of an arbitrary word.
    pub fn word_element(&self, w: &[Gen]) -> HopfElement {
        HopfElement::from_normal(self.clone(), self.normalize_word(w))
    }

    /// Normal form of an arbitrary linear combination of words.
    pub fn element(&self, terms: impl IntoIterator<Item = (Word, ScalarQ)>) -> HopfElement {
        let mut out = Combination::new();
        for (w, c) in terms {
            for (nw, nc) in self.normalize_word(&w) {
                accumulate(&mut out, nw, &nc * &c);
            }
        }
        HopfElement::from_normal(self.clone(), out)
    }

    pub(crate) fn normalize_word(&self, w: &[Gen]) -> Combination {
        let mut state = Combination::new();
        state.insert(Vec::new(), ScalarQ::one());
        for &g in w {
            state = self.append_all(&state, g);
        }
        state
    }

    fn append_all(&self, state: &Combination, g: Gen) -> Combination {
        let mut out = Combination::new();
        for (w, c) in state {
            for (nw, nc) in self.append(w, g).iter() {
                accumulate(&mut out, nw.clone(), c * nc);
            }
        }
        out
    }

    /// Normal form of `w·g` for a normal word `w`.
    fn append(&self, w: &Word, g: Gen) -> Terms {
        cached(&self.inner.append_cache, &(w.clone(), g), || {
            let mut word = w.clone();
            word.push(g);
            let mut c = Combination::new();
            c.insert(word, ScalarQ::one());
            // rightmost rewriting only touches the seam; the strategy is
            // irrelevant for the result once confluence holds
            let mut rng = rand::rngs::mock::StepRng::new(0, 1);
            self.presentation()
                .reduce_with(c, Strategy::Rightmost, &mut rng, DEFAULT_STEP_LIMIT)
                .expect("validated presentation terminates")
                .into_iter()
                .collect()
        })
    }

    /// Normal form of the product of two normal words.
    pub(crate) fn mul_words(&self, a: &Word, b: &Word) -> Terms {
        if b.is_empty() {
            return Arc::from(vec![(a.clone(), ScalarQ::one())]);
        }
        if a.is_empty() {
            return Arc::from(vec![(b.clone(), ScalarQ::one())]);
        }
        cached(&self.inner.product_cache, &(a.clone(), b.clone()), || {
            let mut state = Combination::new();
            state.insert(a.clone(), ScalarQ::one());
            for &g in b {
                state = self.append_all(&state, g);
            }
            state.into_iter().collect()
        })
    }

    pub(crate) fn mul_combinations(&self, x: &Combination, y: &Combination) -> Combination {
        let mut out = Combination::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let cab = ca * cb;
                for (w, c) in self.mul_words(a, b).iter() {
                    accumulate(&mut out, w.clone(), &cab * c);
                }
            }
        }
        out
    }

    /// Δ of a normal word, as a sum of normal tensor pairs.
    pub(crate) fn coproduct_word(&self, w: &Word) -> TensorTerms {
        cached(&self.inner.coproduct_cache, w, || {
            let pres = self.presentation();
            let mut state: BTreeMap<(Word, Word), ScalarQ> = BTreeMap::new();
            state.insert((Vec::new(), Vec::new()), ScalarQ::one());
            for &g in w {
                let mut next: BTreeMap<(Word, Word), ScalarQ> = BTreeMap::new();
                for ((l, r), c) in &state {
                    for (x, y, d) in &pres.coproduct[g as usize] {
                        let cd = c * d;
                        let left = self.mul_combinations(&single(l), &self.normalize_word(x));
                        let right = self.mul_combinations(&single(r), &self.normalize_word(y));
                        for (lw, lc) in &left {
                            let cl = &cd * lc;
                            for (rw, rc) in &right {
                                accumulate(&mut next, (lw.clone(), rw.clone()), &cl * rc);
                            }
                        }
                    }
                }
                state = next;
            }
            state.into_iter().map(|((l, r), c)| (l, r, c)).collect()
        })
    }

    pub(crate) fn counit_word(&self, w: &[Gen]) -> ScalarQ {
        let eps = &self.presentation().counit;
        w.iter().fold(ScalarQ::one(), |acc, &g| &acc * &eps[g as usize])
    }

    /// S(g₁…gₙ) = S(gₙ)…S(g₁)
    pub(crate) fn antipode_word(&self, w: &[Gen]) -> Combination {
        let pres = self.presentation();
        let mut state = single(&Vec::new());
        for &g in w.iter().rev() {
            let mut img = Combination::new();
            for (x, c) in &pres.antipode[g as usize] {
                for (nw, nc) in self.normalize_word(x) {
                    accumulate(&mut img, nw, &nc * c);
                }
            }
            state = self.mul_combinations(&state, &img);
        }
        state
    }

    /// (g₁…gₙ)* = gₙ*…g₁*; the deformation parameter is real.
    pub(crate) fn star_word(&self, w: &[Gen]) -> Combination {
        let gens = &self.presentation().generators;
        let starred: Word = w.iter().rev().map(|&g| gens[g as usize].star).collect();
        self.normalize_word(&starred)
    }

    /// Normal-form basis when the algebra is finite-dimensional, found by
    /// extending normal words one generator at a time. `None` if normal
    /// words of length `max_len` still exist.
    pub fn finite_basis(&self, max_len: usize) -> Option<Vec<Word>> {
        let pres = self.presentation();
        let ngen = pres.generators.len() as Gen;
        let mut basis = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..=max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..ngen {
                    let mut nw = w.clone();
                    nw.push(g);
                    if pres.is_normal(&nw) {
                        next.push(nw);
                    }
                }
            }
            if next.is_empty() {
                return Some(basis);
            }
            basis.extend(next.iter().cloned());
            layer = next;
        }
        None
    }

    /// A normal monomial drawn by normalizing a random word of length at
    /// most `max_degree` and keeping one of its terms.
    pub fn random_monomial<R: Rng>(&self, rng: &mut R, max_degree: usize) -> HopfElement {
        let ngen = self.presentation().generators.len() as Gen;
        loop {
            let len = rng.gen_range(0..=max_degree);
            let w: Word = (0..len).map(|_| rng.gen_range(0..ngen)).collect();
            let nf = self.normalize_word(&w);
            let words: Vec<&Word> = nf.keys().collect();
            if let Some(&pick) = words.choose(rng) {
                return self.word_element(pick);
            }
        }
    }

    /// Random element of degree ≤ `max_degree` with up to `max_terms`
    /// monomials and small coefficients in ℤ[q, q⁻¹].
    pub fn random_element<R: Rng>(&self, rng: &mut R, max_degree: usize, max_terms: usize) -> HopfElement {
        let nterms = rng.gen_range(1..=max_terms.max(1));
        let mut out = Combination::new();
        for _ in 0..nterms {
            let m = self.random_monomial(rng, max_degree);
            let c = random_coefficient(rng);
            for (w, mc) in m.terms() {
                accumulate(&mut out, w.clone(), mc * &c);
            }
        }
        HopfElement::from_normal(self.clone(), out)
    }

    pub fn tensor_zero(&self, legs: usize) -> TensorElement {
        TensorElement::zero(self.clone(), legs)
    }
}

pub(crate) fn random_coefficient<R: Rng>(rng: &mut R) -> ScalarQ {
    let a = rng.gen_range(-3i64..=3);
    let a = if a == 0 { 1 } else { a };
    match rng.gen_range(0..4) {
        0 => ScalarQ::from_int(a),
        1 => &ScalarQ::from_int(a) * &ScalarQ::q_pow(rng.gen_range(-2..=2)),
        2 => &ScalarQ::from_int(a) + &ScalarQ::q_pow(rng.gen_range(1..=2)),
        _ => ScalarQ::from_ratio(a, 2),
    }
}

fn single(w: &Word) -> Combination {
    let mut c = Combination::new();
    c.insert(w.clone(), ScalarQ::one());
    c
}
