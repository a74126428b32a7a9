//! Exact determinants, minors, adjugates and characteristic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IMatrix;
use crate::error::{Error, Result};

/// Up to this size the determinant is a cofactor expansion.
const COFACTOR_DET_MAX: usize = 4;
/// Up to this size the adjugate is assembled from cofactors.
const COFACTOR_ADJ_MAX: usize = 8;

/// Exact determinant of a square matrix.
pub fn det(m: &IMatrix) -> Result<BigInt> {
    let n = m.require_square("det")?;
    Ok(if n <= COFACTOR_DET_MAX {
        cofactor_det(m)
    } else {
        bareiss_det(m.clone())
    })
}

fn cofactor_det(m: &IMatrix) -> BigInt {
    match m.rows() {
        0 => BigInt::one(),
        1 => m[(0, 0)].clone(),
        2 => &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)],
        n => {
            let mut acc = BigInt::zero();
            for j in 0..n {
                if m[(0, j)].is_zero() {
                    continue;
                }
                let term = &m[(0, j)] * cofactor_det(&m.without(0, j));
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Fraction-free (Bareiss) elimination. Every intermediate is a minor of
/// the input, so each division is exact.
fn bareiss_det(mut a: IMatrix) -> BigInt {
    let n = a.rows();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            let lead = a[(i, k)].clone();
            for j in k + 1..n {
                let v = (&pivot * &a[(i, j)] - &lead * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = pivot;
    }
    let d = a[(n - 1, n - 1)].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Determinant of the submatrix on `rows` x `cols`.
pub fn minor(m: &IMatrix, rows: &[usize], cols: &[usize]) -> Result<BigInt> {
    if rows.len() != cols.len() {
        return Err(Error::Dimension(format!(
            "minor needs |S| = |T|, got {} and {}",
            rows.len(),
            cols.len()
        )));
    }
    det(&m.select(rows, cols)?)
}

/// Minor obtained by deleting row `i` and column `j`.
pub fn first_minor(m: &IMatrix, i: usize, j: usize) -> Result<BigInt> {
    det(&m.without(i, j))
}

/// Transpose of the cofactor matrix: `m * adjugate(m) == det(m) * I`.
pub fn adjugate(m: &IMatrix) -> Result<IMatrix> {
    let n = m.require_square("adjugate")?;
    if n == 0 {
        return Ok(IMatrix::identity(0));
    }
    if n == 1 {
        return Ok(IMatrix::identity(1));
    }
    if n > COFACTOR_ADJ_MAX {
        if let Some(adj) = gauss_jordan_adjugate(m) {
            return Ok(adj);
        }
    }
    Ok(cofactor_adjugate(m))
}

fn cofactor_adjugate(m: &IMatrix) -> IMatrix {
    let n = m.rows();
    let mut adj = IMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let c = det(&m.without(i, j)).expect("square");
            adj[(j, i)] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

/// Fraction-free Gauss-Jordan on `[m | I]`. On success the left block is
/// `d * I` with `d = ±det(m)` and the right block `R` satisfies
/// `m * R = d * I`. Returns `None` for singular input.
fn gauss_jordan_adjugate(m: &IMatrix) -> Option<IMatrix> {
    let n = m.rows();
    let w = 2 * n;
    let mut a = IMatrix::zeros(n, w);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = m[(i, j)].clone();
        }
        a[(i, n + i)] = BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut swaps = false;
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let i = (k + 1..n).find(|&i| !a[(i, k)].is_zero())?;
            a.swap_rows(i, k);
            swaps = !swaps;
        }
        let pivot = a[(k, k)].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let lead = a[(i, k)].clone();
            for j in 0..w {
                if j == k {
                    continue;
                }
                let v = (&pivot * &a[(i, j)] - &lead * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = pivot;
    }
    // Left block is now diag(d); d equals det of the row-permuted matrix.
    let d = a[(n - 1, n - 1)].clone();
    let det_m = if swaps { -d.clone() } else { d.clone() };
    let mut adj = IMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            // Right block R has m R = d I while adj(m) = det(m) m^{-1}.
            let r = &a[(i, n + j)];
            adj[(i, j)] = if det_m == d { r.clone() } else { -r };
        }
    }
    Some(adj)
}

/// Characteristic polynomial `det(X I - m)`, coefficients from the constant
/// term upwards (monic, length `n + 1`). Faddeev-LeVerrier with exact
/// division checks.
pub fn charpoly(m: &IMatrix) -> Result<Vec<BigInt>> {
    let n = m.require_square("charpoly")?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(A M_k) / k
        let mut next = m.mul(&mk)?;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let am = m.mul(&next)?;
        let trace: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Internal("inexact Faddeev-LeVerrier division".into()));
        }
        coeffs[n - k] = -q;
        mk = next;
    }
    Ok(coeffs)
}

/// Determinant modulo a prime `p < 2^63` by Gaussian elimination.
pub fn det_mod(entries: &mut [u64], n: usize, p: u64) -> u64 {
    use crate::arith::{mul_mod, pow_mod};
    debug_assert_eq!(entries.len(), n * n);
    let mut acc = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| entries[i * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in 0..n {
                entries.swap(piv * n + j, k * n + j);
            }
            acc = (p - acc) % p;
        }
        let pivot = entries[k * n + k];
        acc = mul_mod(acc, pivot, p);
        let inv = pow_mod(pivot, p - 2, p);
        for i in k + 1..n {
            let f = mul_mod(entries[i * n + k], inv, p);
            if f == 0 {
                continue;
            }
            for j in k..n {
                let sub = mul_mod(f, entries[k * n + j], p);
                entries[i * n + j] = (entries[i * n + j] + p - sub) % p;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[Vec<i64>]) -> IMatrix {
        IMatrix::from_rows(rows).unwrap()
    }

    fn random(rng: &mut ChaCha8Rng, r: usize, c: usize) -> IMatrix {
        let data = (0..r * c).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect();
        IMatrix::new(r, c, data).unwrap()
    }

    /// Leibniz formula: independent of both elimination and cofactors.
    fn leibniz(a: &IMatrix) -> BigInt {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = vec![];
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = a.rows();
        perms(n)
            .into_iter()
            .map(|p| {
                let inv = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let prod: BigInt = (0..n).map(|i| a[(i, p[i])].clone()).product();
                if inv % 2 == 0 {
                    prod
                } else {
                    -prod
                }
            })
            .sum()
    }

    #[test]
    fn small_values() {
        assert_eq!(det(&IMatrix::identity(3)).unwrap(), BigInt::one());
        assert_eq!(det(&m(&[vec![1, 2], vec![3, 4]])).unwrap(), BigInt::from(-2));
        assert!(det(&m(&[vec![1, 2, 3]])).is_err());
    }

    #[test]
    fn bareiss_matches_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=7 {
            for _ in 0..6 {
                let a = random(&mut rng, n, n);
                assert_eq!(bareiss_det(a.clone()), leibniz(&a), "n = {n}");
                assert_eq!(det(&a).unwrap(), leibniz(&a));
            }
        }
        // zero leading pivots force a row swap
        let a = m(&[
            vec![0, 0, 1, 2, 3],
            vec![0, 1, 0, 4, 1],
            vec![1, 0, 0, 0, 2],
            vec![2, 2, 2, 0, 0],
            vec![1, 3, 0, 0, 1],
        ]);
        assert_eq!(bareiss_det(a.clone()), leibniz(&a));
    }

    #[test]
    fn adjugate_identity_and_defining_relation() {
        assert_eq!(adjugate(&IMatrix::identity(4)).unwrap(), IMatrix::identity(4));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random(&mut rng, 4, 4);
        let d = det(&a).unwrap();
        let prod = a.mul(&adjugate(&a).unwrap()).unwrap();
        assert_eq!(prod, IMatrix::identity(4).scale(&d));
    }

    #[test]
    fn gauss_jordan_agrees_with_cofactors() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 2..=9 {
            let mut a = random(&mut rng, n, n);
            if n % 3 == 0 {
                // force a pivot swap
                a[(0, 0)] = BigInt::zero();
            }
            if let Some(adj) = gauss_jordan_adjugate(&a) {
                assert_eq!(adj, cofactor_adjugate(&a), "n = {n}");
            }
        }
        let singular = m(&[vec![1, 2], vec![2, 4]]);
        assert!(gauss_jordan_adjugate(&singular).is_none());
        assert_eq!(
            adjugate(&singular).unwrap(),
            m(&[vec![4, -2], vec![-2, 1]])
        );
    }

    #[test]
    fn large_adjugate_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = random(&mut rng, 10, 10);
        let d = det(&a).unwrap();
        let adj = adjugate(&a).unwrap();
        assert_eq!(a.mul(&adj).unwrap(), IMatrix::identity(10).scale(&d));
        assert_eq!(adj.mul(&a).unwrap(), IMatrix::identity(10).scale(&d));
    }

    #[test]
    fn minors() {
        let a = m(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(minor(&a, &[0, 1, 2], &[0, 1, 2]).unwrap(), det(&a).unwrap());
        assert_eq!(minor(&a, &[0, 2], &[1, 2]).unwrap(), BigInt::from(2 * 10 - 3 * 8));
        assert!(minor(&a, &[0], &[0, 1]).is_err());
        assert_eq!(minor(&IMatrix::identity(4), &[0, 1], &[0, 1]).unwrap(), BigInt::one());
    }

    #[test]
    fn charpoly_matches_det_of_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random(&mut rng, 5, 5);
        let cp = charpoly(&a).unwrap();
        for x in -3i64..=3 {
            let shifted = IMatrix::identity(5).scale(&BigInt::from(x)).sub(&a).unwrap();
            let value: BigInt = cp
                .iter()
                .rev()
                .fold(BigInt::zero(), |acc, c| acc * x + c);
            assert_eq!(value, det(&shifted).unwrap());
        }
    }

    #[test]
    fn modular_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = (1u64 << 61) - 1;
        for n in 1..7 {
            let a = random(&mut rng, n, n);
            let mut e: Vec<u64> = a
                .entries()
                .iter()
                .map(|v| crate::arith::residue(v, p))
                .collect();
            let d = det(&a).unwrap();
            assert_eq!(det_mod(&mut e, n, p), crate::arith::residue(&d, p));
        }
    }
}
