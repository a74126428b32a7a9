use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{bezout, gcd_all};
use crate::error::{Error, Result};
use crate::exact_linalg::IMatrix;

/// A 2x2 block `[[a, -t], [b, s]]` with `s a + t b = 1`, acting on
/// coordinates `at` and `at + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Block {
    at: usize,
    a: BigInt,
    b: BigInt,
    s: BigInt,
    t: BigInt,
}

/// A determinant-one matrix with prescribed first column, kept as the
/// product `E_{k-2} ... E_1 E_0` of adjacent 2x2 blocks and embedded as
/// `I_offset ⊕ P` in a `size x size` matrix.
///
/// For `v = (v_1, ..., v_k)` with `g = gcd(v_2, ..., v_k)`, the completion is
/// `diag(1, M') E` where `E = [[v_1, -t], [g, s]] ⊕ I`, `s v_1 + t g = 1`, and
/// `M'` completes `(v_2, ..., v_k) / g`. The recursion is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    size: usize,
    blocks: Vec<Block>,
}

impl Completion {
    /// Completes `v` (gcd 1) inside a `size x size` identity at `offset`.
    pub fn new(v: &[BigInt], size: usize, offset: usize) -> Result<Self> {
        let k = v.len();
        if k == 0 || offset + k > size {
            return Err(Error::Dimension(format!(
                "cannot place a column of length {k} at offset {offset} in size {size}"
            )));
        }
        let g = gcd_all(v);
        if !g.is_one() {
            return Err(Error::Precondition(format!("entries have gcd {g}, not 1")));
        }
        if k == 1 {
            if !v[0].is_one() {
                return Err(Error::Precondition(format!(
                    "no 1x1 matrix of determinant 1 has first column ({})",
                    v[0]
                )));
            }
            return Ok(Completion { size, blocks: Vec::new() });
        }
        let mut blocks = Vec::with_capacity(k - 1);
        let mut cur = v.to_vec();
        for j in 0..k - 1 {
            let head = cur[0].clone();
            let tail = &cur[1..];
            let g = if tail.len() == 1 { tail[0].clone() } else { gcd_all(tail) };
            let (s, t) = if g.is_zero() {
                // head = ±1 and the rest of the column vanishes.
                (head.clone(), BigInt::zero())
            } else {
                bezout(&head, &g).ok_or_else(|| {
                    Error::Internal(format!("({head}, {g}) not coprime during completion"))
                })?
            };
            blocks.push(Block { at: offset + j, a: head, b: g.clone(), s, t });
            cur = if g.is_zero() {
                let mut e = vec![BigInt::zero(); tail.len()];
                e[0] = BigInt::one();
                e
            } else {
                tail.iter().map(|x| x / &g).collect()
            };
        }
        debug_assert!(cur.len() == 1 && cur[0].is_one());
        Ok(Completion { size, blocks })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Dense form of the embedded matrix.
    pub fn to_matrix(&self) -> IMatrix {
        let mut m = IMatrix::identity(self.size);
        for blk in &self.blocks {
            // rows (i, i+1) <- E * rows
            let i = blk.at;
            for c in 0..self.size {
                let (x, y) = (m[(i, c)].clone(), m[(i + 1, c)].clone());
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                m[(i, c)] = &blk.a * &x - &blk.t * &y;
                m[(i + 1, c)] = &blk.b * &x + &blk.s * &y;
            }
        }
        m
    }

    /// `P^{-1} B P`, using each block's adjugate as its inverse.
    pub fn conjugate(&self, b: &IMatrix) -> Result<IMatrix> {
        if b.rows() != self.size || b.cols() != self.size {
            return Err(Error::Dimension(format!(
                "conjugator of size {} applied to a {}x{} matrix",
                self.size,
                b.rows(),
                b.cols()
            )));
        }
        let n = self.size;
        let mut m = b.clone();
        for blk in self.blocks.iter().rev() {
            let i = blk.at;
            // columns (i, i+1) <- cols * E
            for r in 0..n {
                let (x, y) = (m[(r, i)].clone(), m[(r, i + 1)].clone());
                m[(r, i)] = &blk.a * &x + &blk.b * &y;
                m[(r, i + 1)] = &blk.s * &y - &blk.t * &x;
            }
            // rows (i, i+1) <- E^{-1} rows, E^{-1} = [[s, t], [-b, a]]
            for c in 0..n {
                let (x, y) = (m[(i, c)].clone(), m[(i + 1, c)].clone());
                m[(i, c)] = &blk.s * &x + &blk.t * &y;
                m[(i + 1, c)] = &blk.a * &y - &blk.b * &x;
            }
        }
        Ok(m)
    }
}

/// A `k x k` integer matrix of determinant 1 whose first column is `v`.
pub fn sl_with_first_column(v: &[BigInt]) -> Result<IMatrix> {
    Ok(Completion::new(v, v.len(), 0)?.to_matrix())
}
