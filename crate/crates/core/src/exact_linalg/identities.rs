//! Determinant identities, each evaluated so that both sides can be compared.
//!
//! Index sets are 0-based throughout.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::det::{adjugate, det, first_minor, minor};
use super::IMatrix;
use crate::error::{Error, Result};

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn inversions(seq: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                count += 1;
            }
        }
    }
    count
}

/// Generalized Laplace expansion along an ordered partition of the rows.
///
/// Sums `sign * prod_i minor(S_i, T_i)` over every ordered partition
/// `T_1..T_r` of the columns with `|T_i| = |S_i|`. Blocks may be listed in
/// any internal order; each is sorted before use.
pub fn laplace_det(m: &IMatrix, partition: &[Vec<usize>]) -> Result<BigInt> {
    let n = m.require_square("laplace_det")?;
    let mut blocks: Vec<Vec<usize>> = partition.to_vec();
    let mut seen = vec![false; n];
    for block in &mut blocks {
        block.sort_unstable();
        for &i in block.iter() {
            if i >= n || seen[i] {
                return Err(Error::Argument(format!(
                    "row partition is not a partition of 0..{n}"
                )));
            }
            seen[i] = true;
        }
    }
    if seen.iter().any(|s| !s) || blocks.iter().any(|b| b.is_empty()) {
        return Err(Error::Argument(format!(
            "row partition is not a partition of 0..{n}"
        )));
    }
    let row_order: Vec<usize> = blocks.iter().flatten().copied().collect();
    let row_sign = inversions(&row_order) % 2;

    let mut total = BigInt::zero();
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
    expand(m, &blocks, &mut vec![false; n], &mut chosen, row_sign, &mut total)?;
    Ok(total)
}

fn expand(
    m: &IMatrix,
    blocks: &[Vec<usize>],
    used: &mut Vec<bool>,
    chosen: &mut Vec<Vec<usize>>,
    row_sign: usize,
    total: &mut BigInt,
) -> Result<()> {
    let depth = chosen.len();
    if depth == blocks.len() {
        let col_order: Vec<usize> = chosen.iter().flatten().copied().collect();
        let mut term = BigInt::one();
        for (s, t) in blocks.iter().zip(chosen.iter()) {
            term *= minor(m, s, t)?;
            if term.is_zero() {
                return Ok(());
            }
        }
        if (row_sign + inversions(&col_order)) % 2 == 0 {
            *total += term;
        } else {
            *total -= term;
        }
        return Ok(());
    }
    let free: Vec<usize> = (0..used.len()).filter(|&j| !used[j]).collect();
    for pick in combinations(free.len(), blocks[depth].len()) {
        let cols: Vec<usize> = pick.iter().map(|&i| free[i]).collect();
        for &c in &cols {
            used[c] = true;
        }
        chosen.push(cols);
        expand(m, blocks, used, chosen, row_sign, total)?;
        let cols = chosen.pop().expect("pushed above");
        for c in cols {
            used[c] = false;
        }
    }
    Ok(())
}

/// `sum_{|S| = m} det A[:, S] * det B[S, :]` for `A` m x n and `B` n x m.
pub fn cauchy_binet(a: &IMatrix, b: &IMatrix) -> Result<BigInt> {
    let (m, n) = (a.rows(), a.cols());
    if b.rows() != n || b.cols() != m {
        return Err(Error::Dimension(format!(
            "cauchy_binet needs A m x n and B n x m, got {}x{} and {}x{}",
            m,
            n,
            b.rows(),
            b.cols()
        )));
    }
    if m > n {
        return Err(Error::Dimension(format!("cauchy_binet needs m <= n, got m = {m}, n = {n}")));
    }
    let all: Vec<usize> = (0..m).collect();
    let mut total = BigInt::zero();
    for s in combinations(n, m) {
        let left = minor(a, &all, &s)?;
        if left.is_zero() {
            continue;
        }
        total += left * minor(b, &s, &all)?;
    }
    Ok(total)
}

/// Both sides of the deleted-block identity for square `P` with `Q = adj P`:
/// `(P without its first column) * (Q without its first row)` and
/// `det(P) I - p_1 q^1`.
pub fn deleted_block_sides(p: &IMatrix) -> Result<(IMatrix, IMatrix)> {
    let n = p.require_square("deleted_block_product")?;
    if n == 0 {
        return Err(Error::Dimension("deleted_block_product needs n >= 1".into()));
    }
    let q = adjugate(p)?;
    let rest: Vec<usize> = (1..n).collect();
    let all: Vec<usize> = (0..n).collect();
    let lhs = p.select(&all, &rest)?.mul(&q.select(&rest, &all)?)?;
    let d = det(p)?;
    let mut rhs = IMatrix::identity(n).scale(&d);
    for i in 0..n {
        for j in 0..n {
            rhs[(i, j)] -= &p[(i, 0)] * &q[(0, j)];
        }
    }
    Ok((lhs, rhs))
}

/// The deleted-block product, checked against its closed form.
pub fn deleted_block_product(p: &IMatrix) -> Result<IMatrix> {
    let (lhs, rhs) = deleted_block_sides(p)?;
    if lhs != rhs {
        return Err(Error::Internal("deleted-block identity violated".into()));
    }
    Ok(lhs)
}

/// The `(n-1) x n` matrix with `-a_n` on the diagonal and `a_1..a_{n-1}` in
/// the last column.
pub fn row_op_matrix(a: &[BigInt]) -> Result<IMatrix> {
    let n = a.len();
    if n < 2 {
        return Err(Error::Dimension("row_op_minor_identity needs n >= 2".into()));
    }
    let last = &a[n - 1];
    let mut m = IMatrix::zeros(n - 1, n);
    for i in 0..n - 1 {
        m[(i, i)] = -last;
        m[(i, n - 1)] += &a[i];
    }
    Ok(m)
}

/// Returns `(det(A B), a_n^{n-2} det[a | B])` where `A` is
/// [`row_op_matrix`]`(a)` and `B` is n x (n-1).
pub fn row_op_minor_identity(a: &[BigInt], b: &IMatrix) -> Result<(BigInt, BigInt)> {
    let n = a.len();
    let am = row_op_matrix(a)?;
    if b.rows() != n || b.cols() != n - 1 {
        return Err(Error::Dimension(format!(
            "row_op_minor_identity needs B {}x{}, got {}x{}",
            n,
            n - 1,
            b.rows(),
            b.cols()
        )));
    }
    let lhs = det(&am.mul(b)?)?;
    let mut c = IMatrix::zeros(n, n);
    for i in 0..n {
        c[(i, 0)] = a[i].clone();
        for j in 0..n - 1 {
            c[(i, j + 1)] = b[(i, j)].clone();
        }
    }
    let rhs = num_traits::pow(a[n - 1].clone(), n - 2) * det(&c)?;
    Ok((lhs, rhs))
}

/// Signed maximal minors of an n x (n-1) matrix, so that
/// `wedge(omega) . v == det[omega | v]`.
pub fn wedge(omega: &IMatrix) -> Result<Vec<BigInt>> {
    let n = omega.rows();
    if n < 2 || omega.cols() != n - 1 {
        return Err(Error::Dimension(format!(
            "wedge needs an n x (n-1) matrix with n >= 2, got {}x{}",
            n,
            omega.cols()
        )));
    }
    let cols: Vec<usize> = (0..n - 1).collect();
    (0..n)
        .map(|i| {
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let v = minor(omega, &rows, &cols)?;
            Ok(if (n - 1 - i) % 2 == 0 { v } else { -v })
        })
        .collect()
}

fn complement_pair(idx: &[usize], n: usize, what: &str) -> Result<Vec<usize>> {
    let mut seen = vec![false; n];
    for &i in idx {
        if i >= n || seen[i] {
            return Err(Error::Argument(format!("{what} must be distinct indices below {n}")));
        }
        seen[i] = true;
    }
    Ok((0..n).filter(|&i| !seen[i]).collect())
}

/// Returns `(det [A_{i_a j_b}], det(A)^{n-3} * det A[K, L])` where
/// `A_{ij}` is the unsigned first minor deleting row `i` and column `j`,
/// and `K`, `L` are the two rows and columns missing from `rows`, `cols`.
pub fn compound_identity(a: &IMatrix, rows: &[usize], cols: &[usize]) -> Result<(BigInt, BigInt)> {
    let n = a.require_square("compound_identity")?;
    if n < 3 {
        return Err(Error::Argument("compound_identity needs n >= 3".into()));
    }
    if rows.len() != n - 2 || cols.len() != n - 2 {
        return Err(Error::Argument(format!(
            "compound_identity needs {} rows and {} columns, got {} and {}",
            n - 2,
            n - 2,
            rows.len(),
            cols.len()
        )));
    }
    let k = complement_pair(rows, n, "rows")?;
    let l = complement_pair(cols, n, "cols")?;
    let mut rows = rows.to_vec();
    let mut cols = cols.to_vec();
    rows.sort_unstable();
    cols.sort_unstable();

    let mut compound = IMatrix::zeros(n - 2, n - 2);
    for (x, &i) in rows.iter().enumerate() {
        for (y, &j) in cols.iter().enumerate() {
            compound[(x, y)] = first_minor(a, i, j)?;
        }
    }
    let lhs = det(&compound)?;
    let rhs = num_traits::pow(det(a)?, n - 3) * minor(a, &k, &l)?;
    Ok((lhs, rhs))
}

/// Krylov-style matrix `[v, M v, ..., M^{count-1} v]`.
fn krylov(m: &IMatrix, v: &[BigInt], count: usize) -> Result<IMatrix> {
    let mut columns = Vec::with_capacity(count);
    let mut cur = v.to_vec();
    for _ in 0..count {
        let next = m.mul_vec(&cur)?;
        columns.push(std::mem::replace(&mut cur, next));
    }
    IMatrix::from_columns(&columns)
}

/// Returns the two bordered determinants of the conjugation-minor identity
/// for `A` and a conjugator `P` with `det P = 1`. They satisfy `lhs == -rhs`.
///
/// `lhs = det [[0, u], [p, A]]` with `p` the first column of `P` and
/// `u = wedge[p, Ap, ..., A^{n-2} p]`. With `P^{-1} A P = [[*, *], [q, B]]`,
/// `rhs = det [[0, w], [q, B]]` with `w = wedge[q, Bq, ..., B^{n-3} q]`.
pub fn conjugation_minor_identity(a: &IMatrix, p: &IMatrix) -> Result<(BigInt, BigInt)> {
    let n = a.require_square("conjugation_minor_identity")?;
    if n < 3 {
        return Err(Error::Argument("conjugation_minor_identity needs n >= 3".into()));
    }
    if p.rows() != n || p.cols() != n {
        return Err(Error::Dimension("A and P must have equal size".into()));
    }
    if !det(p)?.is_one() {
        return Err(Error::Precondition("conjugation_minor_identity needs det P = 1".into()));
    }
    let pcol = p.column(0);
    let u = wedge(&krylov(a, &pcol, n - 1)?)?;
    let lhs = det(&a.bordered(&BigInt::zero(), &u, &pcol)?)?;

    let conj = adjugate(p)?.mul(a)?.mul(p)?;
    let rest: Vec<usize> = (1..n).collect();
    let q: Vec<BigInt> = rest.iter().map(|&i| conj[(i, 0)].clone()).collect();
    let b = conj.select(&rest, &rest)?;
    let w = wedge(&krylov(&b, &q, n - 2)?)?;
    let rhs = det(&b.bordered(&BigInt::zero(), &w, &q)?)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn mat(n: usize, c: usize, v: Vec<i64>) -> IMatrix {
        IMatrix::new(n, c, big(&v)).unwrap()
    }

    fn square(n: usize) -> impl Strategy<Value = IMatrix> {
        prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| mat(n, n, v))
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn laplace_rejects_bad_partitions() {
        let a = IMatrix::identity(3);
        assert!(laplace_det(&a, &[vec![0, 1]]).is_err());
        assert!(laplace_det(&a, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(laplace_det(&a, &[vec![0, 1, 2], vec![]]).is_err());
        assert_eq!(laplace_det(&a, &[vec![2, 0, 1]]).unwrap(), BigInt::one());
    }

    #[test]
    fn cauchy_binet_selection() {
        let a = mat(2, 3, vec![1, 0, 0, 0, 1, 0]);
        assert_eq!(cauchy_binet(&a, &a.transpose()).unwrap(), BigInt::one());
        assert!(cauchy_binet(&a.transpose(), &a).is_err());
    }

    #[test]
    fn deleted_block_of_identity() {
        let got = deleted_block_product(&IMatrix::identity(4)).unwrap();
        let mut want = IMatrix::identity(4);
        want[(0, 0)] = BigInt::zero();
        assert_eq!(got, want);
    }

    #[test]
    fn row_op_degenerate_cases() {
        let b = mat(3, 2, vec![1, 2, -3, 4, 5, -1]);
        let (l, r) = row_op_minor_identity(&big(&[0, 0, 1]), &b).unwrap();
        let c = mat(3, 3, vec![0, 1, 2, 0, -3, 4, 1, 5, -1]);
        assert_eq!(l, det(&c).unwrap());
        assert_eq!(r, l);
        let (l, r) = row_op_minor_identity(&big(&[2, 3, 0]), &b).unwrap();
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn wedge_small_cases() {
        let omega = mat(4, 3, vec![1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(wedge(&omega).unwrap(), big(&[0, 0, 0, 1]));
        assert_eq!(wedge(&mat(2, 1, vec![7, 3])).unwrap(), big(&[-3, 7]));
        assert!(wedge(&mat(3, 3, vec![0; 9])).is_err());
    }

    #[test]
    fn compound_cases() {
        assert_eq!(
            compound_identity(&IMatrix::identity(5), &[0, 1, 2], &[0, 1, 2]).unwrap(),
            (BigInt::one(), BigInt::one())
        );
        let a = mat(3, 3, vec![2, -1, 4, 0, 3, 5, 1, 1, -2]);
        let (l, r) = compound_identity(&a, &[1], &[2]).unwrap();
        assert_eq!(l, first_minor(&a, 1, 2).unwrap());
        assert_eq!(l, r);
        assert!(compound_identity(&a, &[1, 2], &[0]).is_err());
        assert!(compound_identity(&a, &[3], &[0]).is_err());
    }

    #[test]
    fn conjugation_minor_trivial_and_rejects_det_minus_one() {
        let a = mat(3, 3, vec![1, 2, 0, -1, 3, 4, 2, 2, -5]);
        let (l, r) = conjugation_minor_identity(&a, &IMatrix::identity(3)).unwrap();
        assert_eq!(l, -r);
        let mut flip = IMatrix::identity(3);
        flip[(0, 0)] = BigInt::from(-1);
        assert!(matches!(
            conjugation_minor_identity(&a, &flip),
            Err(Error::Precondition(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn laplace_equals_det(a in square(5), cut in 1usize..4) {
            let top: Vec<usize> = (0..cut).collect();
            let bottom: Vec<usize> = (cut..5).collect();
            prop_assert_eq!(laplace_det(&a, &[top, bottom]).unwrap(), det(&a).unwrap());
        }

        #[test]
        fn cauchy_binet_equals_det_of_product(
            av in prop::collection::vec(-5i64..=5, 8),
            bv in prop::collection::vec(-5i64..=5, 8),
        ) {
            let a = mat(2, 4, av);
            let b = mat(4, 2, bv);
            prop_assert_eq!(cauchy_binet(&a, &b).unwrap(), det(&a.mul(&b).unwrap()).unwrap());
        }

        #[test]
        fn wedge_contracts_to_bordered_det(
            ov in prop::collection::vec(-5i64..=5, 12),
            vv in prop::collection::vec(-5i64..=5, 4),
        ) {
            let omega = mat(4, 3, ov);
            let v = big(&vv);
            let w = wedge(&omega).unwrap();
            let dot: BigInt = w.iter().zip(&v).map(|(x, y)| x * y).sum();
            prop_assert_eq!(dot, det(&omega.append_column(&v).unwrap()).unwrap());
        }

        #[test]
        fn det_is_multiplicative(a in square(4), b in square(4)) {
            prop_assert_eq!(
                det(&a.mul(&b).unwrap()).unwrap(),
                det(&a).unwrap() * det(&b).unwrap()
            );
        }

        #[test]
        fn adjugate_is_two_sided(a in square(5)) {
            let d = det(&a).unwrap();
            let adj = adjugate(&a).unwrap();
            let scaled = IMatrix::identity(5).scale(&d);
            prop_assert_eq!(a.mul(&adj).unwrap(), scaled.clone());
            prop_assert_eq!(adj.mul(&a).unwrap(), scaled);
        }
    }
}
