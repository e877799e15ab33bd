//! Numerical Fredholm index of compressed unitaries in the weighted-shift
//! representation, certified by a singular-value gap.
//!
//! Convention: the compression uses the projection onto torus modes `k < 0`
//! (see [`TorusHalf::Negative`]). Under it `index(U*) = −1` and
//! `index(U) = +1`; the complementary half flips both signs.

mod operator;
mod real;
mod svd;

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use operator::{
    fredholm_compression, relation_residuals, represent, BasisState, Residual, TorusHalf, TruncatedOperator,
};
pub use real::{Fixed, Precision, Real};
pub use svd::singular_values;

use crate::corep::MatrixCorep;
use crate::hopfalg::HopfError;

/// Minimum accepted ratio between the smallest retained and the largest
/// discarded singular value.
pub const GAP_RATIO: f64 = 1e3;
/// Below this ratio a higher precision is not attempted.
pub const FALLBACK_RATIO: f64 = 1e2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IndexError {
    #[error("q0 = {0} is outside (0, 1)")]
    QOutOfRange(String),
    #[error("truncation N = {n}, K = {k} is too small (need N, K >= 2)")]
    TooSmall { n: u32, k: i64 },
    #[error("threshold must be positive, got {0}")]
    BadThreshold(f64),
    #[error("ill-separated spectrum: gap ratio {ratio:.3e} < {required:.0e}; increase N and K")]
    IllSeparated { ratio: f64, required: f64 },
    #[error("index unstable across sizes: {0:?}")]
    Unstable(Vec<(u32, i64)>),
    #[error("bad sweep sizes: {0}")]
    BadSizes(String),
    #[error("operator entries must lie in quantum SU(2), got {0}")]
    WrongAlgebra(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexResult {
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
    pub index: i64,
    /// `smallest_retained / largest_discarded`; `None` when the discarded
    /// values are exact zeros (or there are none).
    pub gap_ratio: Option<f64>,
    pub smallest_retained: Option<f64>,
    pub largest_discarded: Option<f64>,
    pub n: u32,
    pub k: i64,
    pub q0: String,
    pub threshold: f64,
    pub precision: String,
    pub half: Option<TorusHalf>,
}

impl IndexResult {
    pub fn certified(&self) -> bool {
        self.gap_ratio.is_none_or(|r| r >= GAP_RATIO)
    }

    fn gap_for_json(&self) -> serde_json::Value {
        match self.gap_ratio {
            Some(r) => serde_json::json!(r),
            None => serde_json::json!("inf"),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("plain data");
        v["gap_ratio"] = self.gap_for_json();
        v
    }
}

/// Singular values of a block, split at the threshold.
#[derive(Default)]
struct Spectrum {
    nullity: usize,
    min_retained: Option<f64>,
    max_discarded: Option<f64>,
    /// A discarded value that is not an exact zero.
    inexact_discard: bool,
}

impl Spectrum {
    fn merge(mut self, o: Spectrum) -> Spectrum {
        self.nullity += o.nullity;
        self.min_retained = min_opt(self.min_retained, o.min_retained);
        self.max_discarded = max_opt(self.max_discarded, o.max_discarded);
        self.inexact_discard |= o.inexact_discard;
        self
    }
}

fn min_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn max_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Nullity of a block given as columns over `rows` rows.
fn block_spectrum<R: Real>(cols: Vec<Vec<R>>, rows: usize, threshold: f64, ctx: R::Ctx) -> Spectrum {
    let ncols = cols.len();
    if ncols == 0 {
        return Spectrum::default();
    }
    let sv = singular_values(cols, ctx);
    // columns beyond the row count are forced kernel directions
    let mut s = Spectrum { nullity: ncols.saturating_sub(rows), ..Spectrum::default() };
    if s.nullity > 0 {
        s.max_discarded = Some(0.0);
    }
    for v in sv.iter().take(rows.min(ncols)) {
        let x = v.to_f64();
        if x <= threshold {
            s.nullity += 1;
            s.max_discarded = max_opt(s.max_discarded, Some(x));
            s.inexact_discard |= !v.is_zero();
        } else {
            s.min_retained = min_opt(s.min_retained, Some(x));
        }
    }
    s
}

/// Connected components of the bipartite graph column → nonzero rows.
fn blocks<R: Real>(t: &TruncatedOperator<R>) -> Vec<Vec<usize>> {
    let n = t.dim();
    let mut uf = UnionFind::<usize>::new(n);
    for j in 0..n {
        for (i, _) in t.column(j) {
            uf.union(*i, j);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Kernel and cokernel spectra of the exactly known part of `t`.
fn spectra<R: Real>(t: &TruncatedOperator<R>, threshold: f64, ctx: R::Ctx) -> (Spectrum, Spectrum) {
    let blocks = blocks(t);
    let results: Vec<(Spectrum, Spectrum)> = blocks
        .par_iter()
        .map(|block| {
            let local: BTreeMap<usize, usize> = block.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            let m = block.len();
            let dense_col = |j: usize| {
                let mut c = vec![R::zero(ctx); m];
                for (i, v) in t.column(j) {
                    c[local[i]] = v.clone();
                }
                c
            };
            // kernel: exact columns, all rows of the block
            let ker_cols: Vec<Vec<R>> = block.iter().filter(|&&j| t.exact_cols()[j]).map(|&j| dense_col(j)).collect();
            let ker = block_spectrum(ker_cols, m, threshold, ctx);
            // cokernel: rows of the transpose restricted to exact rows
            let exact_rows: Vec<usize> = block.iter().copied().filter(|&i| t.exact_rows()[i]).collect();
            let mut coker_cols: Vec<Vec<R>> = vec![vec![R::zero(ctx); m]; exact_rows.len()];
            let row_pos: BTreeMap<usize, usize> = exact_rows.iter().enumerate().map(|(p, &i)| (i, p)).collect();
            for &j in block {
                for (i, v) in t.column(j) {
                    if let Some(&p) = row_pos.get(i) {
                        coker_cols[p][local[&j]] = v.clone();
                    }
                }
            }
            let coker = block_spectrum(coker_cols, m, threshold, ctx);
            (ker, coker)
        })
        .collect();
    results.into_iter().fold((Spectrum::default(), Spectrum::default()), |(a, b), (k, c)| (a.merge(k), b.merge(c)))
}

fn index_with<R: Real>(t: &TruncatedOperator<R>, threshold: f64, precision: Precision, ctx: R::Ctx) -> IndexResult {
    let (ker, coker) = spectra(t, threshold, ctx);
    let (kernel_dim, cokernel_dim) = (ker.nullity, coker.nullity);
    let both = ker.merge(coker);
    let gap_ratio = match (both.min_retained, both.max_discarded) {
        (Some(r), Some(d)) if both.inexact_discard && d > 0.0 => Some(r / d),
        _ => None,
    };
    IndexResult {
        kernel_dim,
        cokernel_dim,
        index: kernel_dim as i64 - cokernel_dim as i64,
        gap_ratio,
        smallest_retained: both.min_retained,
        largest_discarded: both.max_discarded,
        n: t.n_max,
        k: t.k_max,
        q0: t.q0.to_string(),
        threshold,
        precision: precision.to_string(),
        half: t.half,
    }
}

/// Index of a truncated operator with its gap certificate. Fails when the
/// gap ratio is below [`GAP_RATIO`].
pub fn numerical_index<R: Real>(
    t: &TruncatedOperator<R>,
    threshold: f64,
    ctx: R::Ctx,
) -> Result<IndexResult, IndexError>
where
    R::Ctx: PrecisionOf,
{
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(IndexError::BadThreshold(threshold));
    }
    let r = index_with(t, threshold, ctx.precision(), ctx);
    match r.gap_ratio {
        Some(ratio) if ratio < GAP_RATIO => Err(IndexError::IllSeparated { ratio, required: GAP_RATIO }),
        _ => Ok(r),
    }
}

/// Names the precision a scalar context corresponds to.
pub trait PrecisionOf {
    fn precision(self) -> Precision;
}

impl PrecisionOf for () {
    fn precision(self) -> Precision {
        Precision::F64
    }
}

impl PrecisionOf for u32 {
    fn precision(self) -> Precision {
        Precision::Fixed(self)
    }
}

/// Compress `u` at `(q0, N = n, K = k)` and compute its index at the
/// requested precision. A double-precision run whose gap ratio lands in
/// `[10², 10³)` is repeated with [`Precision::FALLBACK`].
pub fn certified_index(
    u: &MatrixCorep,
    q0: &BigRational,
    n: u32,
    k: i64,
    half: TorusHalf,
    threshold: f64,
    precision: Precision,
) -> Result<IndexResult, IndexError> {
    let run = |p: Precision| match p {
        Precision::F64 => numerical_index(&fredholm_compression::<f64>(u, q0, n, k, half, ())?, threshold, ()),
        Precision::Fixed(bits) => {
            numerical_index(&fredholm_compression::<Fixed>(u, q0, n, k, half, bits)?, threshold, bits)
        }
    };
    match run(precision) {
        Err(IndexError::IllSeparated { ratio, .. }) if precision == Precision::F64 && ratio >= FALLBACK_RATIO => {
            run(Precision::FALLBACK)
        }
        r => r,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub q0: String,
    pub threshold: f64,
    pub results: Vec<IndexResult>,
    pub index: i64,
}

impl SweepReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "q0": self.q0,
            "threshold": self.threshold,
            "index": self.index,
            "results": self.results.iter().map(IndexResult::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Certified index at `N = K = s` for each size `s`; sizes must be
/// nondecreasing with at least three entries, and the index must agree.
pub fn convergence_sweep(
    u: &MatrixCorep,
    q0: &BigRational,
    sizes: &[u32],
    half: TorusHalf,
    threshold: f64,
    precision: Precision,
) -> Result<SweepReport, IndexError> {
    if sizes.len() < 3 {
        return Err(IndexError::BadSizes(format!("need at least 3 sizes, got {}", sizes.len())));
    }
    if sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(IndexError::BadSizes("sizes must be nondecreasing".into()));
    }
    let results: Vec<IndexResult> = sizes
        .par_iter()
        .map(|&s| certified_index(u, q0, s, s as i64, half, threshold, precision))
        .collect::<Result<_, _>>()?;
    let index = results[0].index;
    if results.iter().any(|r| r.index != index) {
        return Err(IndexError::Unstable(results.iter().map(|r| (r.n, r.index)).collect()));
    }
    Ok(SweepReport { q0: q0.to_string(), threshold, results, index })
}

/// Parses `q0` given as a decimal (`0.5`, `5e-1`) or a fraction (`1/2`).
pub fn parse_rational(s: &str) -> Result<BigRational, IndexError> {
    let bad = || IndexError::Invalid(format!("cannot parse {s:?} as a rational number"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
        let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(p) => (&s[..p], s[p + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = BigInt::from_str(&format!("{int}{frac}0")).map_err(|_| bad())? / 10;
    let scale = exp - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut v = BigRational::from_integer(digits);
    let p = num_traits::pow(ten, scale.unsigned_abs() as usize);
    v = if scale >= 0 { v * p } else { v / p };
    if neg {
        v = -v;
    }
    Ok(v)
}
