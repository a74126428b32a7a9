use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::IMatrix;

/// The companion-shaped target: unit subdiagonal, last column all `-1`,
/// zeros elsewhere.
pub fn sigma_matrix(d: usize) -> IMatrix {
    let mut s = IMatrix::zeros(d, d);
    for i in 0..d {
        if i > 0 {
            s[(i, i - 1)] = BigInt::one();
        }
        s[(i, d - 1)] -= BigInt::one();
    }
    s
}

/// Conjugates an upper Hessenberg `gamma` with unit subdiagonal and
/// `gamma^{d+1} = I` to [`sigma_matrix`]. Returns `(P, Σ)` with
/// `P^{-1} gamma P = Σ`.
///
/// Working from the bottom row up, each elementary conjugator adds
/// multiples of column `i - 1` to the later columns so that row `i`
/// becomes `(0, .., 1, 0, .., 0, -1)`. Once rows `1..d` have that form the
/// order condition leaves only one possible first row.
pub fn conjugate_to_sigma(gamma: &IMatrix) -> Result<(IMatrix, IMatrix)> {
    let d = gamma.require_square("conjugate_to_sigma")?;
    if d < 2 {
        return Err(Error::Dimension(format!("conjugate_to_sigma needs size >= 2, got {d}")));
    }
    for i in 1..d {
        if !gamma[(i, i - 1)].is_one() {
            return Err(Error::Precondition(format!(
                "subdiagonal entry ({i}, {}) is {}, not 1",
                i - 1,
                gamma[(i, i - 1)]
            )));
        }
        if (0..i - 1).any(|j| !gamma[(i, j)].is_zero()) {
            return Err(Error::Precondition(format!("row {i} has entries below the subdiagonal")));
        }
    }
    if !gamma.pow(d as u32 + 1)?.is_identity() {
        return Err(Error::Precondition(format!("gamma^{} is not the identity", d + 1)));
    }

    let mut n = gamma.clone();
    let mut p = IMatrix::identity(d);
    for i in (1..d).rev() {
        let mut c: Vec<BigInt> = (i..d).map(|j| -&n[(i, j)]).collect();
        *c.last_mut().expect("i < d") -= 1;
        // N <- N P_i and P <- P P_i: col_j += c_j col_{i-1}
        for m in [&mut n, &mut p] {
            for r in 0..d {
                let base = m[(r, i - 1)].clone();
                if base.is_zero() {
                    continue;
                }
                for (off, cj) in c.iter().enumerate() {
                    m[(r, i + off)] += cj * &base;
                }
            }
        }
        // N <- P_i^{-1} N: row_{i-1} -= sum c_j row_j
        for col in 0..d {
            let mut acc = BigInt::zero();
            for (off, cj) in c.iter().enumerate() {
                acc += cj * &n[(i + off, col)];
            }
            n[(i - 1, col)] -= acc;
        }
    }
    if n != sigma_matrix(d) {
        return Err(Error::Internal(format!("sweep ended at {n:?}, not the target form")));
    }
    Ok((p, n))
}
