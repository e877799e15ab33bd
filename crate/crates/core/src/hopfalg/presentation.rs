//! Presented Hopf *-algebras: generators, rewriting rules, and structure maps
//! on generators.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use super::HopfError;
use crate::scalar::ScalarQ;

pub type Gen = u8;
pub type Word = Vec<Gen>;

/// A linear combination of words, keyed by word.
pub type Combination = BTreeMap<Word, ScalarQ>;

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    /// Index of `g*`.
    pub star: Gen,
    /// Weight used by the termination order.
    pub weight: u32,
}

/// `lhs → Σ coeff · word`
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Vec<(Word, ScalarQ)>,
}

/// Which redex a reduction step rewrites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Uniformly random redex, driven by the caller's RNG.
    Random,
}

/// Default budget of single rewrite steps before reporting nontermination.
pub const DEFAULT_STEP_LIMIT: usize = 200_000;

/// Generators with their star pairing, a rewriting system onto a normal-form
/// basis, and the values of Δ, ε, S on generators.
#[derive(Clone, Debug)]
pub struct HopfPresentation {
    pub(crate) id: String,
    pub(crate) generators: Vec<Generator>,
    pub(crate) rules: Vec<Rule>,
    pub(crate) coproduct: Vec<Vec<(Word, Word, ScalarQ)>>,
    pub(crate) counit: Vec<ScalarQ>,
    pub(crate) antipode: Vec<Vec<(Word, ScalarQ)>>,
    rule_index: HashMap<Word, usize>,
    lhs_lengths: Vec<usize>,
}

impl HopfPresentation {
    pub fn new(
        id: impl Into<String>,
        generators: Vec<Generator>,
        rules: Vec<Rule>,
        coproduct: Vec<Vec<(Word, Word, ScalarQ)>>,
        counit: Vec<ScalarQ>,
        antipode: Vec<Vec<(Word, ScalarQ)>>,
    ) -> Result<Self, HopfError> {
        let n = generators.len();
        let id = id.into();
        let invalid = |m: String| HopfError::InvalidPresentation(format!("{id}: {m}"));
        if n == 0 || n > Gen::MAX as usize {
            return Err(invalid(format!("{n} generators")));
        }
        if coproduct.len() != n || counit.len() != n || antipode.len() != n {
            return Err(invalid("structure maps must be given on every generator".into()));
        }
        let in_range = |w: &Word| w.iter().all(|&g| (g as usize) < n);
        for (i, g) in generators.iter().enumerate() {
            if g.star as usize >= n || generators[g.star as usize].star as usize != i {
                return Err(invalid(format!("star is not an involution at `{}`", g.name)));
            }
        }
        let mut rule_index = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() || !in_range(&r.lhs) || !r.rhs.iter().all(|(w, _)| in_range(w)) {
                return Err(invalid(format!("rule {i} mentions unknown generators")));
            }
            if rule_index.insert(r.lhs.clone(), i).is_some() {
                return Err(invalid(format!("duplicate left-hand side in rule {i}")));
            }
        }
        let words_ok = coproduct.iter().flatten().all(|(a, b, _)| in_range(a) && in_range(b))
            && antipode.iter().flatten().all(|(w, _)| in_range(w));
        if !words_ok {
            return Err(invalid("structure maps mention unknown generators".into()));
        }
        let mut lhs_lengths: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        lhs_lengths.sort_unstable();
        lhs_lengths.dedup();
        Ok(HopfPresentation { id, generators, rules, coproduct, counit, antipode, rule_index, lhs_lengths })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Copy of this presentation with the rule set replaced.
    pub fn with_rules(&self, rules: Vec<Rule>) -> Result<Self, HopfError> {
        HopfPresentation::new(
            self.id.clone(),
            self.generators.clone(),
            rules,
            self.coproduct.clone(),
            self.counit.clone(),
            self.antipode.clone(),
        )
    }

    pub fn generator_index(&self, name: &str) -> Option<Gen> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as Gen)
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, HopfError> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Vec::new());
        }
        s.split_whitespace()
            .map(|tok| self.generator_index(tok).ok_or_else(|| HopfError::UnknownGenerator(tok.to_string())))
            .collect()
    }

    pub fn render_word(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|&g| self.generators[g as usize].name.as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Weighted-degree then lexicographic order; rules must decrease it.
    pub fn word_order(&self, a: &[Gen], b: &[Gen]) -> Ordering {
        let weight = |w: &[Gen]| -> u64 { w.iter().map(|&g| self.generators[g as usize].weight as u64).sum() };
        weight(a).cmp(&weight(b)).then_with(|| a.cmp(b))
    }

    /// Rules whose right-hand side is not strictly below the left-hand side.
    pub fn misoriented_rules(&self) -> Vec<usize> {
        self.rules
            .iter()
            .enumerate()
            .filter(|(_, r)| r.rhs.iter().any(|(w, _)| self.word_order(w, &r.lhs) != Ordering::Less))
            .map(|(i, _)| i)
            .collect()
    }

    /// All redexes `(position, rule)` in `w`.
    pub fn redexes(&self, w: &[Gen]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            for &len in &self.lhs_lengths {
                if pos + len > w.len() {
                    break;
                }
                if let Some(&r) = self.rule_index.get(&w[pos..pos + len]) {
                    out.push((pos, r));
                }
            }
        }
        out
    }

    pub fn is_normal(&self, w: &[Gen]) -> bool {
        self.first_redex(w, true).is_none()
    }

    fn first_redex(&self, w: &[Gen], from_left: bool) -> Option<(usize, usize)> {
        let scan = |pos: usize| {
            self.lhs_lengths.iter().find_map(|&len| {
                (pos + len <= w.len()).then(|| self.rule_index.get(&w[pos..pos + len]).map(|&r| (pos, r))).flatten()
            })
        };
        if from_left {
            (0..w.len()).find_map(scan)
        } else {
            (0..w.len()).rev().find_map(scan)
        }
    }

    fn pick_redex<R: Rng>(&self, w: &[Gen], strategy: Strategy, rng: &mut R) -> Option<(usize, usize)> {
        match strategy {
            Strategy::Leftmost => self.first_redex(w, true),
            Strategy::Rightmost => self.first_redex(w, false),
            Strategy::Random => {
                let all = self.redexes(w);
                if all.is_empty() {
                    None
                } else {
                    Some(all[rng.gen_range(0..all.len())])
                }
            }
        }
    }

    /// Applies `rule` at `pos`, producing the rewritten combination scaled by
    /// `coeff`.
    pub fn rewrite_at(&self, w: &[Gen], pos: usize, rule: usize, coeff: &ScalarQ) -> Vec<(Word, ScalarQ)> {
        let r = &self.rules[rule];
        let (prefix, rest) = w.split_at(pos);
        let suffix = &rest[r.lhs.len()..];
        r.rhs
            .iter()
            .map(|(rw, c)| {
                let mut nw = Vec::with_capacity(prefix.len() + rw.len() + suffix.len());
                nw.extend_from_slice(prefix);
                nw.extend_from_slice(rw);
                nw.extend_from_slice(suffix);
                (nw, coeff * c)
            })
            .collect()
    }

    /// Rewrites a linear combination to normal form, one redex at a time.
    pub fn reduce_with<R: Rng>(
        &self,
        input: Combination,
        strategy: Strategy,
        rng: &mut R,
        step_limit: usize,
    ) -> Result<Combination, HopfError> {
        let mut pending = input;
        let mut done = Combination::new();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.pick_redex(&w, strategy, rng) {
                None => accumulate(&mut done, w, c),
                Some((pos, rule)) => {
                    steps += 1;
                    if steps > step_limit {
                        return Err(HopfError::NonTerminating { steps });
                    }
                    for (nw, nc) in self.rewrite_at(&w, pos, rule, &c) {
                        accumulate(&mut pending, nw, nc);
                    }
                }
            }
        }
        Ok(done)
    }

    /// Normal form of a single word.
    pub fn reduce_word<R: Rng>(&self, w: &[Gen], strategy: Strategy, rng: &mut R) -> Result<Combination, HopfError> {
        let mut c = Combination::new();
        c.insert(w.to_vec(), ScalarQ::one());
        self.reduce_with(c, strategy, rng, DEFAULT_STEP_LIMIT)
    }
}

/// Adds `c · w` into `target`, dropping cancelled terms.
pub(crate) fn accumulate<K: Ord>(target: &mut BTreeMap<K, ScalarQ>, w: K, c: ScalarQ) {
    if c.is_zero() {
        return;
    }
    match target.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}
