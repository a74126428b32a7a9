use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::delta::{build_delta, derive_a_chain};
use super::unimodular::Completion;
use super::{GroupSpec, Witness};
use crate::arith::gcd_all;
use crate::error::{Error, Result};
use crate::exact_linalg::IMatrix;

/// Every matrix produced while reducing the action matrix.
///
/// `conjugators[k]` is `P_k` and `intermediates[k]` is `B_{k+1}`, so
/// `B_1 = P_0^{-1} Δ P_0` and `B_{k+1} = P_k^{-1} B_k P_k`. The last
/// intermediate is upper Hessenberg with subdiagonal `(e_1, ..., e_{n-3}, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub delta: IMatrix,
    #[serde(with = "crate::serde_big::vec")]
    pub a_chain: Vec<BigInt>,
    pub conjugators: Vec<IMatrix>,
    pub intermediates: Vec<IMatrix>,
    #[serde(with = "crate::serde_big::vec")]
    pub pivots: Vec<BigInt>,
    #[serde(with = "crate::serde_big")]
    pub final_entry: BigInt,
}

impl ReductionTrace {
    pub fn last(&self) -> &IMatrix {
        self.intermediates.last().expect("a trace has at least B_1")
    }

    /// Bit length of the largest entry across all intermediates.
    pub fn max_bits(&self) -> u64 {
        self.intermediates.iter().map(IMatrix::max_bits).max().unwrap_or(0)
    }
}

fn pivot(b: &IMatrix, k: usize) -> Result<(BigInt, Completion, IMatrix)> {
    let d = b.require_square("reduce_step")?;
    if k == 0 || k + 2 > d {
        return Err(Error::Argument(format!("step {k} is out of range for size {d}")));
    }
    let col = k - 1;
    let sub: Vec<BigInt> = (k..d).map(|i| b[(i, col)].clone()).collect();
    let e = gcd_all(&sub);
    if e.is_zero() {
        return Err(Error::Reducible { step: k });
    }
    let v: Vec<BigInt> = sub.iter().map(|x| x / &e).collect();
    let completion = Completion::new(&v, d, k)?;
    let next = completion.conjugate(b)?;
    let cleared = next[(k, col)] == e && (k + 1..d).all(|i| next[(i, col)].is_zero());
    if !cleared {
        return Err(Error::Internal(format!("step {k} did not clear column {col}")));
    }
    Ok((e, completion, next))
}

/// One pivot step (1-based `k`): clears column `k - 1` below row `k`.
///
/// Returns the positive gcd `e` of the active subcolumn, the conjugator
/// `P = I_k ⊕ S` where `S` has first column `subcolumn / e`, and
/// `P^{-1} B P`.
pub fn reduce_step(b: &IMatrix, k: usize) -> Result<(BigInt, IMatrix, IMatrix)> {
    let (e, c, next) = pivot(b, k)?;
    Ok((e, c.to_matrix(), next))
}

/// The closing step on the two-entry subcolumn in column `d - 3`. The
/// conjugator block is `[[b', α], [b'', β]]` with `b' β - b'' α = 1`.
pub fn final_step(b: &IMatrix) -> Result<(IMatrix, IMatrix)> {
    let d = b.require_square("final_step")?;
    if d < 4 {
        return Err(Error::Argument(format!("final_step needs size >= 4, got {d}")));
    }
    let (_, c, next) = pivot(b, d - 2)?;
    Ok((c.to_matrix(), next))
}

/// Runs the full reduction for a validated witness.
pub fn run_reduction(spec: &GroupSpec, witness: &Witness) -> Result<ReductionTrace> {
    let delta = build_delta(spec)?;
    let a_chain = derive_a_chain(witness, spec)?;
    let d = spec.dim();

    let p0 = Completion::new(&a_chain, d, 0)?;
    let mut b = p0.conjugate(&delta)?;
    let mut conjugators = vec![p0.to_matrix()];
    let mut intermediates = vec![b.clone()];
    let mut pivots = Vec::new();
    for k in 1..d.saturating_sub(1) {
        let (e, c, next) = pivot(&b, k)?;
        debug_assert!(e.is_positive());
        pivots.push(e);
        conjugators.push(c.to_matrix());
        intermediates.push(next.clone());
        b = next;
    }
    let final_entry = b[(d - 1, d - 2)].clone();
    Ok(ReductionTrace { delta, a_chain, conjugators, intermediates, pivots, final_entry })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{adjugate, det};
    use num_traits::One;

    #[test]
    fn smallest_case_has_no_pivots() {
        let spec = GroupSpec::new(7, 3, 2).unwrap();
        let t = run_reduction(&spec, &Witness::from_i64s(1, &[1, 3])).unwrap();
        assert!(t.pivots.is_empty());
        assert_eq!(t.conjugators.len(), 1);
        assert_eq!(t.intermediates.len(), 1);
        assert_eq!(t.conjugators[0].column(0), t.a_chain);
        // b m' = N(1 + 3ζ_3) = 7
        assert_eq!(t.final_entry, BigInt::one());
    }

    #[test]
    fn quintic_family_case() {
        let spec = GroupSpec::new(25, 5, 6).unwrap();
        let t = run_reduction(&spec, &Witness::from_i64s(1, &[-1, 1, 0, 0])).unwrap();
        assert_eq!(t.pivots, vec![BigInt::one(), BigInt::one()]);
        assert_eq!(t.final_entry, BigInt::one());
        assert_eq!(t.conjugators.len(), 3);
        for (k, p) in t.conjugators.iter().enumerate() {
            assert_eq!(det(p).unwrap(), BigInt::one());
            let prev = if k == 0 { &t.delta } else { &t.intermediates[k - 1] };
            let conj = adjugate(p).unwrap().mul(prev).unwrap().mul(p).unwrap();
            assert_eq!(conj, t.intermediates[k]);
        }
        assert!(t.last().pow(5).unwrap().is_identity());
    }

    #[test]
    fn step_examples() {
        let b = IMatrix::from_rows(&[
            vec![1, 0, 0, 0, 0],
            vec![2, 1, 0, 0, 0],
            vec![4, 0, 1, 0, 0],
            vec![6, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 1],
        ])
        .unwrap();
        let (e, p, next) = reduce_step(&b, 1).unwrap();
        assert_eq!(e, BigInt::from(2));
        assert_eq!(p.column(1)[1..].to_vec(), [1, 2, 3, 0].map(BigInt::from).to_vec());
        assert_eq!(next.column(0)[1..].to_vec(), [2, 0, 0, 0].map(BigInt::from).to_vec());

        let mut z = b.clone();
        for i in 1..5 {
            z[(i, 0)] = BigInt::zero();
        }
        assert_eq!(reduce_step(&z, 1), Err(Error::Reducible { step: 1 }));
        assert!(reduce_step(&b, 0).is_err());
        assert!(reduce_step(&b, 4).is_err());
    }

    #[test]
    fn final_step_examples() {
        let mut b = IMatrix::identity(4);
        b[(2, 1)] = BigInt::from(3);
        b[(3, 1)] = BigInt::from(5);
        let (p, next) = final_step(&b).unwrap();
        let (bp, bpp, alpha, beta) = (&p[(2, 2)], &p[(3, 2)], &p[(2, 3)], &p[(3, 3)]);
        assert_eq!((bp.clone(), bpp.clone()), (BigInt::from(3), BigInt::from(5)));
        assert_eq!(bp * beta - bpp * alpha, BigInt::one());
        assert_eq!(next[(2, 1)], BigInt::one());
        assert!(next[(3, 1)].is_zero());

        let mut b = IMatrix::identity(4);
        b[(2, 1)] = BigInt::one();
        let (p, _) = final_step(&b).unwrap();
        assert!(p.is_identity());
        assert!(final_step(&IMatrix::identity(3)).is_err());
    }
}
