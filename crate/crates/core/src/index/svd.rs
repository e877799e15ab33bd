//! One-sided Jacobi singular values.

use super::real::Real;

/// Singular values of the `m × n` matrix with the given columns, one per
/// column (so `n − rank` of them vanish), in decreasing order.
pub fn singular_values<R: Real>(mut cols: Vec<Vec<R>>, ctx: R::Ctx) -> Vec<R> {
    let n = cols.len();
    let eps = R::epsilon(ctx);
    let dot = |a: &[R], b: &[R]| a.iter().zip(b).fold(R::zero(ctx), |acc, (x, y)| acc.add(&x.mul(y)));
    let one = R::one(ctx);
    let two = one.add(&one);
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma.is_zero() || gamma.abs() <= eps.mul(&alpha.mul(&beta).sqrt()) {
                    continue;
                }
                rotated = true;
                let zeta = beta.sub(&alpha).div(&two.mul(&gamma));
                let root = one.add(&zeta.mul(&zeta)).sqrt();
                let t = if zeta >= R::zero(ctx) { one.div(&zeta.add(&root)) } else { one.div(&zeta.sub(&root)) };
                let c = one.div(&one.add(&t.mul(&t)).sqrt());
                let s = c.mul(&t);
                let (left, right) = cols.split_at_mut(q);
                for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let nx = c.mul(x).sub(&s.mul(y));
                    let ny = s.mul(x).add(&c.mul(y));
                    *x = nx;
                    *y = ny;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<R> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::real::Fixed;
    use nalgebra::DMatrix;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn cols_of(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
        m.column_iter().map(|c| c.iter().copied().collect()).collect()
    }

    #[test]
    fn rotation_has_unit_singular_values() {
        let (c, s) = (0.6, 0.8);
        let sv = singular_values(vec![vec![c, s], vec![-s, c]], ());
        assert!(sv.iter().all(|x| (x - 1.0).abs() < 1e-14));
    }

    #[test]
    fn wide_matrix_has_zero_values() {
        let sv = singular_values(vec![vec![1.0], vec![2.0], vec![3.0]], ());
        assert!((sv[0] - 14f64.sqrt()).abs() < 1e-12);
        assert!(sv[1].abs() < 1e-12 && sv[2].abs() < 1e-12);
    }

    #[test]
    fn fixed_point_matches_f64() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let entries = [[r(1, 2), r(1, 3)], [r(-2, 5), r(7, 4)]];
        let cols_fx: Vec<Vec<Fixed>> =
            (0..2).map(|j| (0..2).map(|i| Fixed::from_rational(&entries[i][j], 200)).collect()).collect();
        let cols_f: Vec<Vec<f64>> = cols_fx.iter().map(|c| c.iter().map(Real::to_f64).collect()).collect();
        let a = singular_values(cols_fx, 200);
        let b = singular_values(cols_f, ());
        for (x, y) in a.iter().zip(&b) {
            assert!((x.to_f64() - y).abs() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn agrees_with_nalgebra(rows in 1usize..6, ncols in 1usize..6, seed in proptest::collection::vec(-10.0f64..10.0, 36)) {
            let m = DMatrix::from_fn(rows, ncols, |i, j| seed[i * 6 + j]);
            let ours = singular_values(cols_of(&m), ());
            let mut theirs: Vec<f64> = m.singular_values().iter().copied().collect();
            theirs.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (i, x) in ours.iter().enumerate() {
                let y = theirs.get(i).copied().unwrap_or(0.0);
                prop_assert!((x - y).abs() < 1e-9 * (1.0 + y), "{ours:?} vs {theirs:?}");
            }
        }
    }
}
