//! Norm-equation search and witness assembly.

mod enumerate;
mod examples;

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, is_odd_prime, is_prime, pow_mod, residue};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::reduction::{GroupSpec, Witness};
use enumerate::{for_each_in_layer, layer_size, ModNorm};

pub use examples::{reproduce_examples, run_example, ExampleReport, PUBLISHED_TRIPLES};

/// Candidates are filtered in chunks of this size; chunk boundaries do not
/// affect the result.
const CHUNK: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Coefficients range over `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: u32,
    /// Enumeration stops after this many candidates.
    pub max_candidates: u64,
    /// Keep one representative per orbit under `ζ`-shifts and conjugation.
    pub dedupe: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { coeff_bound: 2, max_candidates: 1_000_000, dedupe: false }
    }
}

/// A published example once its order-`q` residue and twist are known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRecord {
    pub q: u64,
    pub p: u64,
    pub x: CycInt,
    /// Smallest residue of multiplicative order `q` modulo `p`.
    pub r: u64,
    /// Smallest `k` with `x(r^k) ≡ 0 (mod p)`.
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub solutions: Vec<CycInt>,
    /// Candidates enumerated, including those pruned by content.
    pub examined: u64,
    /// True when the whole box was enumerated within the budget.
    pub complete: bool,
    pub config: SearchConfig,
}

/// Enumerates `[-B, B]^{q-1}` by support size, then largest absolute
/// coefficient, then lexicographically, and returns every element of norm
/// `target` in that order.
pub fn search_norm(q: u64, target: &BigInt, cfg: &SearchConfig) -> Result<SearchOutcome> {
    search_until(q, target, cfg, &mut |_| Ok(false))
}

/// [`search_norm`], stopping right after the first solution for which
/// `stop` returns true. That solution is the last one returned.
fn search_until(
    q: u64,
    target: &BigInt,
    cfg: &SearchConfig,
    stop: &mut dyn FnMut(&CycInt) -> Result<bool>,
) -> Result<SearchOutcome> {
    if !is_odd_prime(q) {
        return Err(Error::Argument(format!("conductor {q} is not an odd prime")));
    }
    if target.is_zero() {
        return Err(Error::Argument("norm target must be nonzero".into()));
    }
    if cfg.coeff_bound == 0 {
        return Err(Error::Argument("coefficient bound must be at least 1".into()));
    }
    let d = q as usize - 1;
    let filter = ModNorm::new(q);
    let want = residue(target, filter.modulus());
    let prime_target = target.to_u64().is_some_and(is_prime);

    let mut solutions = Vec::new();
    let mut seen = HashSet::new();
    let mut examined = 0u64;
    let mut chunk: Vec<Vec<i64>> = Vec::with_capacity(CHUNK);

    // Returns true once `stop` accepts a solution.
    let mut flush = |chunk: &mut Vec<Vec<i64>>, solutions: &mut Vec<CycInt>| -> Result<bool> {
        let hits: Vec<bool> = chunk.par_iter().map(|c| filter.norm(c) == want).collect();
        for (c, hit) in chunk.drain(..).zip(hits) {
            if !hit {
                continue;
            }
            let x = CycInt::from_i64s(q, &c)?;
            if x.norm() != *target {
                continue;
            }
            if cfg.dedupe && !seen.insert(orbit_key(&x)?) {
                continue;
            }
            let done = stop(&x)?;
            solutions.push(x);
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    };

    let mut budget_hit = false;
    let mut stopped = false;
    'layers: for support in 1..=d {
        for height in 1..=cfg.coeff_bound as i64 {
            let mut err = None;
            let flow = for_each_in_layer(d, support, height, &mut |c| {
                if examined == cfg.max_candidates {
                    budget_hit = true;
                    return ControlFlow::Break(());
                }
                examined += 1;
                if prime_target && gcd_small(c) > 1 {
                    return ControlFlow::Continue(());
                }
                chunk.push(c.to_vec());
                if chunk.len() == CHUNK {
                    match flush(&mut chunk, &mut solutions) {
                        Ok(false) => {}
                        Ok(true) => {
                            stopped = true;
                            return ControlFlow::Break(());
                        }
                        Err(e) => {
                            err = Some(e);
                            return ControlFlow::Break(());
                        }
                    }
                }
                ControlFlow::Continue(())
            });
            if let Some(e) = err {
                return Err(e);
            }
            if flow.is_break() {
                break 'layers;
            }
        }
    }
    if !stopped {
        stopped = flush(&mut chunk, &mut solutions)?;
    }
    // an early stop leaves the rest of the box unvisited
    let complete = !budget_hit && !stopped;
    Ok(SearchOutcome { solutions, examined, complete, config: *cfg })
}

fn gcd_small(c: &[i64]) -> i64 {
    c.iter().fold(0i64, |g, &v| g.gcd(&v))
}

/// Smallest coefficient vector in the orbit of `x` under `ζ^j`-shifts and
/// the Galois action.
fn orbit_key(x: &CycInt) -> Result<Vec<BigInt>> {
    let q = x.conductor();
    let mut best: Option<Vec<BigInt>> = None;
    for k in 1..q as i64 {
        let y = x.conjugate(k)?;
        for j in 0..q {
            let c = y.shift(j).into_coeffs();
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
    }
    Ok(best.expect("q >= 3"))
}

/// All elements of norm `target` found within the configured box.
pub fn solve_norm_equation(q: u64, target: &BigInt, cfg: &SearchConfig) -> Result<Vec<CycInt>> {
    Ok(search_norm(q, target, cfg)?.solutions)
}

/// Smallest `r >= 2` of multiplicative order exactly `q` modulo `p`.
pub fn find_r(p: u64, q: u64) -> Result<u64> {
    if !is_odd_prime(q) {
        return Err(Error::Argument(format!("{q} is not an odd prime")));
    }
    if !is_prime(p) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    if (p - 1) % q != 0 {
        return Err(Error::Argument(format!(
            "{q} does not divide {p} - 1, so no nonabelian C_{p} ⋊ C_{q} exists"
        )));
    }
    Ok((2..p).find(|&r| pow_mod(r, q, p) == 1).expect("the unit group is cyclic"))
}

/// Smallest `k` in `[1, q-1]` with `x(r^k) ≡ 0 (mod p)`.
pub fn find_twist(x: &CycInt, r: u64, p: u64) -> Result<u64> {
    let q = x.conductor();
    let norm = x.norm();
    if norm != BigInt::from(p) {
        return Err(Error::Argument(format!("N({x}) = {norm}, not {p}")));
    }
    if pow_mod(r, q, p) != 1 || r % p == 1 {
        return Err(Error::Argument(format!("{r} does not have order {q} modulo {p}")));
    }
    let pb = BigInt::from(p);
    (1..q)
        .find(|&k| x.eval_unchecked(&BigInt::from(pow_mod(r, k, p)), &pb).is_zero())
        .ok_or_else(|| {
            Error::Internal(format!("no twist of {x} vanishes modulo {p} at powers of {r}"))
        })
}

/// Turns `x` into a witness for `spec` if some conjugate of `x` (or its
/// negative) is divisible by `m'` at `r`. Returns the witness and twist.
pub fn witness_from_element(spec: &GroupSpec, x: &CycInt) -> Result<Option<(Witness, u64)>> {
    if x.conductor() != spec.n() {
        return Err(Error::Argument(format!(
            "element lives in Z[ζ_{}] but n = {}",
            x.conductor(),
            spec.n()
        )));
    }
    for k in 1..spec.n() {
        let y = x.conjugate(k as i64)?;
        let value = y.eval(spec.r());
        let (a1, rem) = value.div_rem(spec.mprime());
        if !rem.is_zero() || a1.is_zero() {
            continue;
        }
        let (a1, alphas) = if a1.is_negative() {
            (-a1, y.neg().into_coeffs())
        } else {
            (a1, y.into_coeffs())
        };
        if !gcd_all(std::iter::once(&a1).chain(&alphas)).is_one() {
            continue;
        }
        let w = Witness::new(a1, alphas);
        w.validate(spec)?;
        return Ok(Some((w, k)));
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessSearch {
    Found { witness: Witness, element: CycInt, twist: u64, examined: u64 },
    Inconclusive { examined: u64, complete: bool, config: SearchConfig },
}

/// Searches for an element of norm `m'` in `Z[ζ_n]` and converts the first
/// usable one into a witness.
pub fn find_witness(spec: &GroupSpec, cfg: &SearchConfig) -> Result<WitnessSearch> {
    let mut found = None;
    let outcome = search_until(spec.n(), spec.mprime(), cfg, &mut |x| {
        found = witness_from_element(spec, x)?;
        Ok(found.is_some())
    })?;
    if let (Some((witness, twist)), Some(x)) = (found, outcome.solutions.last()) {
        return Ok(WitnessSearch::Found { witness, element: x.clone(), twist, examined: outcome.examined });
    }
    Ok(WitnessSearch::Inconclusive {
        examined: outcome.examined,
        complete: outcome.complete,
        config: *cfg,
    })
}

/// Spec `(α q^k, q, α q^{k-1} + 1)` with `m' = q`, and the witness carried
/// by `ζ - 1`, whose value at `r` is `α q^{k-1} = a_1 q`.
pub fn family_cor43(q: u64, alpha: u64, k: u32) -> Result<(GroupSpec, Witness)> {
    if !is_odd_prime(q) {
        return Err(Error::Argument(format!("{q} is not an odd prime")));
    }
    if alpha == 0 || alpha % q == 0 {
        return Err(Error::Argument(format!("alpha = {alpha} must be positive and prime to {q}")));
    }
    if k < 2 {
        return Err(Error::Argument(format!("k = {k} must be at least 2")));
    }
    let qb = BigInt::from(q);
    let m = BigInt::from(alpha) * num_traits::pow(qb.clone(), k as usize);
    let r = BigInt::from(alpha) * num_traits::pow(qb.clone(), k as usize - 1) + 1;
    let spec = GroupSpec::new(m, q, r)?;
    if *spec.mprime() != qb {
        return Err(Error::Internal(format!("family spec {spec} has m' = {}", spec.mprime())));
    }
    let x = CycInt::one_minus_zeta(q)?.neg();
    let witness = Witness::from_element(&x, &spec)?;
    Ok((spec, witness))
}

/// Number of candidates in the full box, saturating.
pub fn box_size(q: u64, bound: u32) -> u128 {
    let d = q as usize - 1;
    (1..=d)
        .flat_map(|s| (1..=bound as u64).map(move |h| layer_size(d, s, h)))
        .fold(0u128, u128::saturating_add)
}
