//! Inputs shared by the benchmark groups.

use noether_core::fuzz::{random_matrix, trial_rng};
use noether_core::norm_search::{find_r, find_twist, witness_from_element};
use noether_core::{CycInt, GroupSpec, IMatrix, Witness};

/// A dense matrix with entries in `[-5, 5]`, fixed by `seed`.
pub fn square(n: usize, seed: u64) -> IMatrix {
    random_matrix(&mut trial_rng(seed, 0), n, n)
}

/// Spec and witness for a published triple, twisted so the witness
/// vanishes at `r`.
pub fn published_case(q: u64, p: u64, x: &str) -> (GroupSpec, Witness, CycInt) {
    let x = CycInt::parse(x, q).expect("element parses");
    let r = find_r(p, q).expect("q divides p - 1");
    let k = find_twist(&x, r, p).expect("twist exists");
    let rk = noether_core::arith::pow_mod(r, k, p);
    let spec = GroupSpec::new(p, q, rk).expect("valid spec");
    let (w, _) = witness_from_element(&spec, &x).expect("witness").expect("witness");
    (spec, w, x)
}
