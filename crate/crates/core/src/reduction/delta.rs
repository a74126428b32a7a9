use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{GroupSpec, Witness};
use crate::arith::gcd_all;
use crate::error::{Error, Result};
use crate::exact_linalg::IMatrix;

/// `x_j = 1 + r + ... + r^j = (r^{j+1} - 1) / (r - 1)`.
pub fn x_j(r: &BigInt, j: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for _ in 0..=j {
        acc = acc * r + 1;
    }
    acc
}

/// The (n-1) x (n-1) exponent matrix of the monomial action:
///
/// ```text
/// [ r   0  ...  0  -x_{n-1}/m' ]
/// [ m'  0  ...  0  -x_{n-2}    ]
/// [ 0   1  ...  0  -x_{n-3}    ]
/// [           ...              ]
/// [ 0   0  ...  1  -x_1        ]
/// ```
pub fn build_delta(spec: &GroupSpec) -> Result<IMatrix> {
    let d = spec.dim();
    let r = spec.r();
    let mp = spec.mprime();
    let (top, rem) = x_j(r, d).div_rem(mp);
    if !rem.is_zero() {
        return Err(Error::Spec(format!(
            "m' = {mp} does not divide x_{d} = {}",
            x_j(r, d)
        )));
    }
    let mut delta = IMatrix::zeros(d, d);
    delta[(0, 0)] = r.clone();
    delta[(1, 0)] = mp.clone();
    delta[(0, d - 1)] = -top;
    for i in 1..d {
        if i >= 2 {
            delta[(i, i - 1)] = BigInt::one();
        }
        delta[(i, d - 1)] -= x_j(r, d - i);
    }
    Ok(delta)
}

/// `(a_1, ..., a_{n-1})` with `a_{n-1} = α_{n-2}` and
/// `a_i = r a_{i+1} + α_{i-1}` for `2 <= i <= n-2`.
pub fn derive_a_chain(witness: &Witness, spec: &GroupSpec) -> Result<Vec<BigInt>> {
    witness.validate(spec)?;
    let d = spec.dim();
    let alpha = &witness.alphas;
    let mut chain = vec![BigInt::zero(); d];
    chain[0] = witness.a1.clone();
    chain[d - 1] = alpha[d - 1].clone();
    for i in (1..d - 1).rev() {
        chain[i] = spec.r() * &chain[i + 1] + &alpha[i];
    }
    let g = gcd_all(&chain);
    if !g.is_one() {
        return Err(Error::Internal(format!("a-chain has gcd {g} for a validated witness")));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{charpoly, det};

    #[test]
    fn delta_for_smallest_case() {
        let spec = GroupSpec::new(7, 3, 2).unwrap();
        let delta = build_delta(&spec).unwrap();
        assert_eq!(delta, IMatrix::from_rows(&[vec![2, -1], vec![7, -3]]).unwrap());
        assert!(delta.pow(3).unwrap().is_identity());
    }

    #[test]
    fn delta_structure_for_larger_specs() {
        for (m, n, r) in [(25u64, 5u64, 6u64), (31, 5, 2), (29, 7, 16), (49, 7, 8), (23, 11, 2)] {
            let spec = GroupSpec::new(m, n, r).unwrap();
            let delta = build_delta(&spec).unwrap();
            assert!(delta.pow(n as u32).unwrap().is_identity(), "{spec}");
            assert_eq!(det(&delta).unwrap(), BigInt::one());
            let cp = charpoly(&delta).unwrap();
            assert!(cp.iter().all(|c| c.is_one()), "{spec}: {cp:?}");
        }
    }

    #[test]
    fn x_values() {
        let r = BigInt::from(3);
        assert_eq!(x_j(&r, 0), BigInt::one());
        assert_eq!(x_j(&r, 3), BigInt::from(40));
    }

    #[test]
    fn a_chain() {
        let spec = GroupSpec::new(7, 3, 2).unwrap();
        let chain = derive_a_chain(&Witness::from_i64s(1, &[1, 3]), &spec).unwrap();
        assert_eq!(chain, vec![BigInt::one(), BigInt::from(3)]);

        // 1 - ζ_5 at r = 6, m' = 5: 1 - 6 = -5, negate to get a1 = 1.
        let spec = GroupSpec::new(25, 5, 6).unwrap();
        let chain = derive_a_chain(&Witness::from_i64s(1, &[-1, 1, 0, 0]), &spec).unwrap();
        assert_eq!(chain, vec![BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::zero()]);
    }
}
