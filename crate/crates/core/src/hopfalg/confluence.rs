//! Empirical and critical-pair confluence checking of a rewriting system.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::presentation::{accumulate, Combination, HopfPresentation, Strategy, Word, DEFAULT_STEP_LIMIT};
use super::HopfError;
use crate::scalar::ScalarQ;

/// One word whose reduction routes disagree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Divergence {
    pub word: String,
    /// Where the word came from: `critical pair (i, j)` or `random`.
    pub origin: String,
    /// Route name and rendered result, or the error it raised.
    pub routes: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfluenceReport {
    pub presentation: String,
    pub trials: usize,
    pub max_len: usize,
    pub seed: u64,
    pub critical_pairs: usize,
    /// Reduction routes compared on every random word.
    pub strategies: Vec<String>,
    pub divergences: Vec<Divergence>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.divergences.is_empty()
    }
}

const ROUTES: [&str; 4] = ["leftmost", "rightmost", "random", "split"];

/// Reduces critical-pair words and `trials` random words of length
/// `1..=max_len` along several routes (leftmost, rightmost and random redex
/// choice, and normalizing a random split `u·v` as `nf(nf(u)·nf(v))`) and
/// records every disagreement.
pub fn normal_form_confluence_check(
    pres: &HopfPresentation,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> Result<ConfluenceReport, HopfError> {
    if trials == 0 || max_len == 0 {
        return Err(HopfError::InvalidPresentation("confluence check needs trials ≥ 1 and max_len ≥ 1".into()));
    }
    let mut divergences = Vec::new();
    let pairs = critical_pairs(pres);
    for (word, pos_a, rule_a, pos_b, rule_b) in &pairs {
        let one = ScalarQ::one();
        let mut routes = Vec::new();
        for (pos, rule) in [(*pos_a, *rule_a), (*pos_b, *rule_b)] {
            let start: Combination = {
                let mut c = Combination::new();
                for (w, k) in pres.rewrite_at(word, pos, rule, &one) {
                    accumulate(&mut c, w, k);
                }
                c
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let res = pres.reduce_with(start, Strategy::Leftmost, &mut rng, DEFAULT_STEP_LIMIT);
            routes.push((format!("rule {rule} at {pos}"), res));
        }
        if routes[0].1 != routes[1].1 {
            divergences.push(Divergence {
                word: pres.render_word(word),
                origin: format!("critical pair ({rule_a}, {rule_b})"),
                routes: routes.into_iter().map(|(n, r)| (n, render_result(pres, &r))).collect(),
            });
        }
    }

    let ngen = pres.generators().len();
    let random: Vec<Divergence> = (0..trials)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let len = rng.gen_range(1..=max_len);
            let word: Word = (0..len).map(|_| rng.gen_range(0..ngen) as u8).collect();
            let results = reduce_all_routes(pres, &word, &mut rng);
            let agree = results.windows(2).all(|w| w[0] == w[1]) && results[0].is_ok();
            (!agree).then(|| Divergence {
                word: pres.render_word(&word),
                origin: "random".into(),
                routes: ROUTES.iter().zip(&results).map(|(n, r)| (n.to_string(), render_result(pres, r))).collect(),
            })
        })
        .collect();
    divergences.extend(random);

    Ok(ConfluenceReport {
        presentation: pres.id().to_string(),
        trials,
        max_len,
        seed,
        critical_pairs: pairs.len(),
        strategies: ROUTES.iter().map(|r| r.to_string()).collect(),
        divergences,
    })
}

fn reduce_all_routes<R: Rng>(pres: &HopfPresentation, word: &Word, rng: &mut R) -> Vec<Result<Combination, HopfError>> {
    let mut out = Vec::with_capacity(ROUTES.len());
    out.push(pres.reduce_word(word, Strategy::Leftmost, rng));
    out.push(pres.reduce_word(word, Strategy::Rightmost, rng));
    out.push(pres.reduce_word(word, Strategy::Random, rng));
    let cut = rng.gen_range(0..=word.len());
    out.push(split_route(pres, &word[..cut], &word[cut..], rng));
    out
}

fn split_route<R: Rng>(pres: &HopfPresentation, u: &[u8], v: &[u8], rng: &mut R) -> Result<Combination, HopfError> {
    let nu = pres.reduce_word(u, Strategy::Random, rng)?;
    let nv = pres.reduce_word(v, Strategy::Random, rng)?;
    let mut joined = Combination::new();
    for (a, ca) in &nu {
        for (b, cb) in &nv {
            let mut w = a.clone();
            w.extend_from_slice(b);
            accumulate(&mut joined, w, ca * cb);
        }
    }
    pres.reduce_with(joined, Strategy::Random, rng, DEFAULT_STEP_LIMIT)
}

/// Words on which two rules both apply: overlaps `xyz` with `xy`, `yz`
/// left-hand sides, and inclusions of one left-hand side in another.
/// Each entry is `(word, pos₁, rule₁, pos₂, rule₂)`.
fn critical_pairs(pres: &HopfPresentation) -> Vec<(Word, usize, usize, usize, usize)> {
    let rules = pres.rules();
    let mut out = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        for (j, rj) in rules.iter().enumerate() {
            let (a, b) = (&ri.lhs, &rj.lhs);
            for k in 1..a.len().min(b.len()) {
                if a[a.len() - k..] == b[..k] {
                    let mut w = a.clone();
                    w.extend_from_slice(&b[k..]);
                    out.push((w, 0, i, a.len() - k, j));
                }
            }
            if i != j && b.len() <= a.len() {
                for p in 0..=a.len() - b.len() {
                    if a[p..p + b.len()] == b[..] {
                        out.push((a.clone(), 0, i, p, j));
                    }
                }
            }
        }
    }
    out
}

fn render_result(pres: &HopfPresentation, r: &Result<Combination, HopfError>) -> String {
    match r {
        Err(e) => format!("error: {e}"),
        Ok(c) if c.is_empty() => "0".into(),
        Ok(c) => c.iter().map(|(w, k)| format!("({k}) {}", pres.render_word(w))).collect::<Vec<_>>().join(" + "),
    }
}
