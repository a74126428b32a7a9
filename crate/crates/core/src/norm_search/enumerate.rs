//! Ordered enumeration of coefficient boxes and a cheap modular norm filter.

use std::ops::ControlFlow;

use crate::arith::{is_prime, mul_mod, pow_mod};

/// Visits every vector of length `len` with exactly `support` nonzero
/// entries, all in `[-height, height]` and at least one of absolute value
/// `height`, in lexicographic order.
pub(crate) fn for_each_in_layer(
    len: usize,
    support: usize,
    height: i64,
    visit: &mut dyn FnMut(&[i64]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut cur = vec![0i64; len];
    walk(&mut cur, 0, support, height, false, visit)
}

fn walk(
    cur: &mut Vec<i64>,
    pos: usize,
    left: usize,
    height: i64,
    hit_top: bool,
    visit: &mut dyn FnMut(&[i64]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if pos == cur.len() {
        return if left == 0 && hit_top { visit(cur) } else { ControlFlow::Continue(()) };
    }
    let room = cur.len() - pos;
    if left > room || (left == 0 && !hit_top) {
        return ControlFlow::Continue(());
    }
    for v in -height..=height {
        if v == 0 {
            if left == room {
                continue;
            }
            cur[pos] = 0;
            walk(cur, pos + 1, left, height, hit_top, visit)?;
        } else {
            if left == 0 {
                continue;
            }
            cur[pos] = v;
            walk(cur, pos + 1, left - 1, height, hit_top || v.abs() == height, visit)?;
        }
    }
    cur[pos] = 0;
    ControlFlow::Continue(())
}

/// Number of vectors in a layer, saturating.
pub(crate) fn layer_size(len: usize, support: usize, height: u64) -> u128 {
    let choose = |n: u64, k: u64| -> u128 {
        let mut c = 1u128;
        for i in 0..k {
            c = c.saturating_mul((n - i) as u128) / (i + 1) as u128;
        }
        c
    };
    let values = (2 * height) as u128;
    let lower = (2 * (height - 1)) as u128;
    let s = support as u32;
    choose(len as u64, support as u64)
        .saturating_mul(values.saturating_pow(s).saturating_sub(lower.saturating_pow(s)))
}

/// Norm modulo a prime `ell ≡ 1 (mod q)`. There `Φ_q` splits into linear
/// factors, so `N(x) ≡ prod_{i=1}^{q-1} x(ω^i)` for a primitive `q`-th root
/// `ω`, which costs `O(q * support)` per element.
pub(crate) struct ModNorm {
    q: usize,
    ell: u64,
    /// `powers[(i - 1) * (q - 1) + j] = ω^{i j}`.
    powers: Vec<u64>,
}

impl ModNorm {
    pub(crate) fn new(q: u64) -> Self {
        let limit = u32::MAX as u64;
        let mut ell = (limit - 1) / q * q + 1;
        while !is_prime(ell) {
            ell -= q;
        }
        let cofactor = (ell - 1) / q;
        let omega = (2u64..)
            .map(|g| pow_mod(g, cofactor, ell))
            .find(|&w| w != 1)
            .expect("a non-residue exists");
        let d = q as usize - 1;
        let mut powers = Vec::with_capacity(d * d);
        for i in 1..q {
            let wi = pow_mod(omega, i, ell);
            let mut acc = 1u64;
            for _ in 0..d {
                powers.push(acc);
                acc = mul_mod(acc, wi, ell);
            }
        }
        ModNorm { q: q as usize, ell, powers }
    }

    pub(crate) fn modulus(&self) -> u64 {
        self.ell
    }

    pub(crate) fn norm(&self, coeffs: &[i64]) -> u64 {
        let d = self.q - 1;
        let ell = self.ell as i128;
        let support: Vec<(usize, u64)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(j, &c)| (j, (c as i128).rem_euclid(ell) as u64))
            .collect();
        let mut acc = 1u64;
        for i in 0..d {
            let row = &self.powers[i * d..(i + 1) * d];
            let mut v = 0u64;
            for &(j, c) in &support {
                // both factors are below 2^32, so the product fits
                v = (v + c * row[j]) % self.ell;
            }
            if v == 0 {
                return 0;
            }
            acc = mul_mod(acc, v, self.ell);
        }
        acc
    }
}
