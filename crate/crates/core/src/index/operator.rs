//! Truncations of the weighted-shift representation of quantum SU(2) on
//! `ℓ²(ℕ) ⊗ ℓ²(ℤ)`:
//! `π(a) e_{n,k} = √(1 − q^{2n}) e_{n−1,k}`, `π(b) e_{n,k} = qⁿ e_{n,k+1}`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::real::Real;
use super::IndexError;
use crate::corep::MatrixCorep;
use crate::hopfalg::{Gen, HopfElement, ALPHA, ALPHA_STAR, BETA, BETA_STAR};

/// Basis vector `e_{n,k} ⊗ ε_comp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisState {
    pub n: u32,
    pub k: i64,
    pub comp: usize,
}

/// Spectral projection on the torus index `k` defining the compression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TorusHalf {
    /// `k < 0`
    Negative,
    /// `k ≥ 0`
    NonNegative,
}

impl TorusHalf {
    pub fn contains(self, k: i64) -> bool {
        match self {
            TorusHalf::Negative => k < 0,
            TorusHalf::NonNegative => k >= 0,
        }
    }
}

/// Sparse square truncation. Columns whose image leaves the box, and rows
/// reached from outside it, are flagged inexact; everything else agrees with
/// the untruncated operator.
#[derive(Clone, Debug)]
pub struct TruncatedOperator<R: Real = f64> {
    pub q0: BigRational,
    pub n_max: u32,
    pub k_max: i64,
    pub components: usize,
    pub half: Option<TorusHalf>,
    states: Vec<BasisState>,
    position: BTreeMap<BasisState, usize>,
    columns: Vec<Vec<(usize, R)>>,
    exact_cols: Vec<bool>,
    exact_rows: Vec<bool>,
}

/// Words of one matrix entry with their coefficients at `q0`.
type EntryTerms<R> = Vec<(Vec<Gen>, R)>;

/// Exact rational data of the weights, shared by all backends.
struct Weights<R: Real> {
    /// `√(1 − q^{2n})`
    alpha: Vec<R>,
    /// `qⁿ`
    beta: Vec<R>,
}

impl<R: Real> Weights<R> {
    fn new(q0: &BigRational, n_top: u32, ctx: R::Ctx) -> Self {
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        let mut qn = BigRational::one();
        for _ in 0..=n_top + 1 {
            beta.push(R::from_rational(&qn, ctx));
            alpha.push(R::from_rational(&(BigRational::one() - &qn * &qn), ctx).sqrt());
            qn = &qn * q0;
        }
        Weights { alpha, beta }
    }

    /// `π(g)(n, k)`, or `None` when it vanishes.
    fn apply(&self, g: Gen, n: u32, k: i64) -> Option<(u32, i64, R)> {
        let n_us = n as usize;
        match g {
            ALPHA if n == 0 => None,
            ALPHA => Some((n - 1, k, self.alpha[n_us].clone())),
            ALPHA_STAR => Some((n + 1, k, self.alpha[n_us + 1].clone())),
            BETA => Some((n, k + 1, self.beta[n_us].clone())),
            BETA_STAR => Some((n, k - 1, self.beta[n_us].clone())),
            _ => unreachable!("quantum SU(2) has four generators"),
        }
    }

    /// `π(g₁ … g_m) e_{n,k}`, applying `g_m` first.
    fn apply_word(&self, w: &[Gen], n: u32, k: i64, ctx: R::Ctx) -> Option<(u32, i64, R)> {
        let mut acc = (n, k, R::one(ctx));
        for &g in w.iter().rev() {
            let (n2, k2, wt) = self.apply(g, acc.0, acc.1)?;
            acc = (n2, k2, acc.2.mul(&wt));
        }
        Some(acc)
    }
}

fn check_params(q0: &BigRational, n: u32, k: i64) -> Result<(), IndexError> {
    if *q0 <= BigRational::zero() || *q0 >= BigRational::one() {
        return Err(IndexError::QOutOfRange(q0.to_string()));
    }
    if n < 2 || k < 2 {
        return Err(IndexError::TooSmall { n, k });
    }
    Ok(())
}

fn check_algebra(x: &HopfElement) -> Result<(), IndexError> {
    let p = x.algebra().presentation();
    let ok = p.id().starts_with("SUq2")
        && [(ALPHA, "a"), (ALPHA_STAR, "a*"), (BETA, "b"), (BETA_STAR, "b*")]
            .iter()
            .all(|&(g, name)| p.generator_index(name) == Some(g));
    if ok {
        Ok(())
    } else {
        Err(IndexError::WrongAlgebra(p.id().to_string()))
    }
}

impl<R: Real> TruncatedOperator<R> {
    /// Operator `(π(m_ij))` on `(span{e_{n,k}})^{⊕d}`, compressed to a torus
    /// half when `half` is given.
    pub fn build(
        matrix: &[Vec<HopfElement>],
        q0: &BigRational,
        n_max: u32,
        k_max: i64,
        half: Option<TorusHalf>,
        ctx: R::Ctx,
    ) -> Result<Self, IndexError> {
        check_params(q0, n_max, k_max)?;
        let d = matrix.len();
        if d == 0 || matrix.iter().any(|r| r.len() != d) {
            return Err(IndexError::Invalid("operator matrix must be square".into()));
        }
        let mut terms: Vec<Vec<EntryTerms<R>>> = Vec::with_capacity(d);
        let mut margin = 0usize;
        for row in matrix {
            let mut r = Vec::with_capacity(d);
            for x in row {
                check_algebra(x)?;
                margin = margin.max(x.degree());
                let mut t = Vec::new();
                for (w, c) in x.terms() {
                    let v = c.evaluate(q0).map_err(|e| IndexError::Invalid(e.to_string()))?;
                    t.push((w.clone(), R::from_rational(&v, ctx)));
                }
                r.push(t);
            }
            terms.push(r);
        }
        let margin = margin as u32;
        let weights = Weights::<R>::new(q0, n_max + 2 * margin + 1, ctx);

        let in_k_range = |k: i64| k.abs() <= k_max && half.is_none_or(|h| h.contains(k));
        let mut states = Vec::new();
        for n in 0..=n_max {
            for k in -k_max..=k_max {
                if in_k_range(k) {
                    for comp in 0..d {
                        states.push(BasisState { n, k, comp });
                    }
                }
            }
        }
        let position: BTreeMap<BasisState, usize> = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();

        // Images of one basis vector: kept inside the box, dropped by the
        // projection, or lost to the truncation.
        let image = |n: u32, k: i64, comp: usize| {
            let mut inside: BTreeMap<BasisState, R> = BTreeMap::new();
            let mut lost = false;
            for (i, row) in terms.iter().enumerate() {
                for (w, c) in &row[comp] {
                    let Some((n2, k2, wt)) = weights.apply_word(w, n, k, ctx) else {
                        continue;
                    };
                    if half.is_some_and(|h| !h.contains(k2)) {
                        continue;
                    }
                    if n2 > n_max || k2.abs() > k_max {
                        lost = true;
                        continue;
                    }
                    let s = BasisState { n: n2, k: k2, comp: i };
                    let v = c.mul(&wt);
                    let e = inside.entry(s).or_insert_with(|| R::zero(ctx));
                    *e = e.add(&v);
                }
            }
            (inside, lost)
        };

        let mut columns = Vec::with_capacity(states.len());
        let mut exact_cols = Vec::with_capacity(states.len());
        for s in &states {
            let (inside, lost) = image(s.n, s.k, s.comp);
            exact_cols.push(!lost);
            columns.push(inside.into_iter().filter(|(_, v)| !v.is_zero()).map(|(t, v)| (position[&t], v)).collect());
        }

        let mut exact_rows = vec![true; states.len()];
        let m = margin as i64;
        for n in 0..=n_max + margin {
            for k in -k_max - m..=k_max + m {
                let outside = n > n_max || k.abs() > k_max;
                if !outside || half.is_some_and(|h| !h.contains(k)) {
                    continue;
                }
                for comp in 0..d {
                    for (t, v) in image(n, k, comp).0 {
                        if !v.is_zero() {
                            exact_rows[position[&t]] = false;
                        }
                    }
                }
            }
        }

        Ok(TruncatedOperator {
            q0: q0.clone(),
            n_max,
            k_max,
            components: d,
            half,
            states,
            position,
            columns,
            exact_cols,
            exact_rows,
        })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn index_of(&self, s: &BasisState) -> Option<usize> {
        self.position.get(s).copied()
    }

    /// Nonzero entries `(row, value)` of column `j`.
    pub fn column(&self, j: usize) -> &[(usize, R)] {
        &self.columns[j]
    }

    pub fn exact_cols(&self) -> &[bool] {
        &self.exact_cols
    }

    pub fn exact_rows(&self) -> &[bool] {
        &self.exact_rows
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut m = vec![vec![0.0; n]; n];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m[*i][j] = v.to_f64();
            }
        }
        m
    }

    /// `self · x` for a sparse vector.
    pub fn apply_sparse(&self, x: &BTreeMap<usize, R>) -> BTreeMap<usize, R> {
        let mut out: BTreeMap<usize, R> = BTreeMap::new();
        for (j, xj) in x {
            for (i, v) in &self.columns[*j] {
                let p = v.mul(xj);
                match out.get_mut(i) {
                    Some(e) => *e = e.add(&p),
                    None => {
                        out.insert(*i, p);
                    }
                }
            }
        }
        out
    }
}

/// `π(x)` truncated to `n ≤ N`, `|k| ≤ K`.
pub fn represent(x: &HopfElement, q0: &BigRational, n: u32, k: i64) -> Result<TruncatedOperator<f64>, IndexError> {
    TruncatedOperator::build(&[vec![x.clone()]], q0, n, k, None, ())
}

/// `(P ⊗ id) π(u) (P ⊗ id)` on the range of `P ⊗ id`, where `P` projects
/// onto the torus half `half`.
pub fn fredholm_compression<R: Real>(
    u: &MatrixCorep,
    q0: &BigRational,
    n: u32,
    k: i64,
    half: TorusHalf,
    ctx: R::Ctx,
) -> Result<TruncatedOperator<R>, IndexError> {
    TruncatedOperator::build(u.entries(), q0, n, k, Some(half), ctx)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub relation: String,
    /// Largest `‖r e‖` over interior basis vectors.
    pub max: f64,
}

/// Residuals of the defining relations, and of unitarity of `U`, computed
/// from products of the truncated generator operators on interior basis
/// vectors `1 ≤ n ≤ N − 1`, `|k| ≤ K − 1`.
pub fn relation_residuals(
    alg: &crate::hopfalg::HopfAlgebra,
    q0: &BigRational,
    n: u32,
    k: i64,
) -> Result<Vec<Residual>, IndexError> {
    let ops: Vec<TruncatedOperator<f64>> = [ALPHA, ALPHA_STAR, BETA, BETA_STAR]
        .iter()
        .map(|&g| represent(&alg.generator(g), q0, n, k))
        .collect::<Result<_, _>>()?;
    let q = q0.to_f64_lossy();
    let (a, a_s, b, b_s) = (0, 1, 2, 3);
    // Σ coeff · op_i op_j, with `None` standing for the identity
    type Rel = (&'static str, Vec<(f64, Option<(usize, usize)>)>);
    let relations: Vec<Rel> = vec![
        ("a b - q b a", vec![(1.0, Some((a, b))), (-q, Some((b, a)))]),
        ("a b* - q b* a", vec![(1.0, Some((a, b_s))), (-q, Some((b_s, a)))]),
        ("b b* - b* b", vec![(1.0, Some((b, b_s))), (-1.0, Some((b_s, b)))]),
        ("a* a + b* b - 1", vec![(1.0, Some((a_s, a))), (1.0, Some((b_s, b))), (-1.0, None)]),
        ("a a* + q^2 b b* - 1", vec![(1.0, Some((a, a_s))), (q * q, Some((b, b_s))), (-1.0, None)]),
    ];
    let base = &ops[0];
    let interior: Vec<usize> = base
        .states()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.n >= 1 && s.n < n && s.k.abs() < k)
        .map(|(i, _)| i)
        .collect();
    let residual = |terms: &[(f64, Option<(usize, usize)>)]| {
        let mut worst: f64 = 0.0;
        for &j in &interior {
            let e: BTreeMap<usize, f64> = [(j, 1.0)].into();
            let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
            for (c, pair) in terms {
                let v = match pair {
                    None => e.clone(),
                    Some((l, r)) => ops[*l].apply_sparse(&ops[*r].apply_sparse(&e)),
                };
                for (i, x) in v {
                    *acc.entry(i).or_insert(0.0) += c * x;
                }
            }
            worst = worst.max(acc.values().map(|x| x * x).sum::<f64>().sqrt());
        }
        worst
    };
    let mut out: Vec<Residual> =
        relations.iter().map(|(name, terms)| Residual { relation: name.to_string(), max: residual(terms) }).collect();

    // U U* − 1 and U* U − 1, with U = [[a, −q b*], [b, a*]] and π(x*) = π(x)ᵀ
    let u = [[(a, 1.0), (b_s, -q)], [(b, 1.0), (a_s, 1.0)]];
    let star = |g: usize| [a_s, a, b_s, b][g];
    let mut uu = 0f64;
    let mut u_u = 0f64;
    for i in 0..2 {
        for j in 0..2 {
            // (U U*)_ij = Σ_l U_il (U_jl)*,  (U* U)_ij = Σ_l (U_li)* U_lj
            let mut t1 = Vec::new();
            let mut t2 = Vec::new();
            #[allow(clippy::needless_range_loop)]
            for l in 0..2 {
                let (g1, c1) = u[i][l];
                let (g2, c2) = u[j][l];
                t1.push((c1 * c2, Some((g1, star(g2)))));
                let (h1, d1) = u[l][i];
                let (h2, d2) = u[l][j];
                t2.push((d1 * d2, Some((star(h1), h2))));
            }
            if i == j {
                t1.push((-1.0, None));
                t2.push((-1.0, None));
            }
            uu = uu.max(residual(&t1));
            u_u = u_u.max(residual(&t2));
        }
    }
    out.push(Residual { relation: "U U* - 1".into(), max: uu });
    out.push(Residual { relation: "U* U - 1".into(), max: u_u });
    Ok(out)
}

trait LossyF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl LossyF64 for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        <f64 as Real>::from_rational(self, ())
    }
}
