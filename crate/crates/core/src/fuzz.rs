//! Randomized checks of the determinant identities.
//!
//! Every trial draws from its own ChaCha stream (`seed`, stream = trial
//! index), so a report depends only on the seed and the trial count, not on
//! how trials are spread over threads.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    cauchy_binet, compound_identity, conjugation_minor_identity, deleted_block_sides, det,
    laplace_det, row_op_minor_identity, wedge, IMatrix,
};

pub const DEFAULT_SEED: u64 = 0x006e_6f65_7468_6572;
pub const ENTRY_RANGE: RangeInclusive<i64> = -5..=5;
pub const MAX_ROW_OPS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Laplace,
    CauchyBinet,
    DeletedBlock,
    RowOpMinor,
    Compound,
    ConjugationMinor,
    WedgeContract,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::Laplace,
        Identity::CauchyBinet,
        Identity::DeletedBlock,
        Identity::RowOpMinor,
        Identity::Compound,
        Identity::ConjugationMinor,
        Identity::WedgeContract,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Laplace => "laplace",
            Identity::CauchyBinet => "cauchy-binet",
            Identity::DeletedBlock => "deleted-block",
            Identity::RowOpMinor => "row-op-minor",
            Identity::Compound => "compound",
            Identity::ConjugationMinor => "conjugation-minor",
            Identity::WedgeContract => "wedge-contract",
        }
    }

    /// Smallest matrix size the identity is stated for.
    pub fn min_dim(self) -> usize {
        match self {
            Identity::Compound | Identity::ConjugationMinor => 3,
            Identity::RowOpMinor | Identity::WedgeContract => 2,
            _ => 1,
        }
    }

    pub fn default_dims(self) -> RangeInclusive<usize> {
        match self {
            Identity::Laplace | Identity::Compound => 3..=6,
            Identity::ConjugationMinor => 3..=5,
            Identity::WedgeContract => 2..=6,
            _ => 2..=5,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL.into_iter().find(|i| i.name() == s).ok_or_else(|| {
            let names: Vec<_> = Identity::ALL.iter().map(|i| i.name()).collect();
            Error::Argument(format!("unknown identity {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: u64,
    pub inputs: Vec<IMatrix>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub identity: Identity,
    pub seed: u64,
    pub dims: (usize, usize),
    pub trials: u64,
    pub passed: u64,
    pub failures: Vec<Counterexample>,
}

impl FuzzReport {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

/// Runs `trials` independent checks of `identity` on sizes drawn from
/// `dims`.
pub fn run_fuzz(identity: Identity, trials: u64, seed: u64, dims: RangeInclusive<usize>) -> Result<FuzzReport> {
    if dims.is_empty() || *dims.start() < identity.min_dim() {
        return Err(Error::Argument(format!(
            "{identity} needs sizes of at least {}, got {}..{}",
            identity.min_dim(),
            dims.start(),
            dims.end()
        )));
    }
    let outcomes: Vec<Option<Counterexample>> = (0..trials)
        .into_par_iter()
        .map(|t| trial(identity, seed, t, dims.clone()))
        .collect::<Result<_>>()?;
    let failures: Vec<Counterexample> = outcomes.into_iter().flatten().collect();
    Ok(FuzzReport {
        identity,
        seed,
        dims: (*dims.start(), *dims.end()),
        trials,
        passed: trials - failures.len() as u64,
        failures,
    })
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> IMatrix {
    let data = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(ENTRY_RANGE))).collect();
    IMatrix::new(rows, cols, data).expect("sized")
}

pub fn random_vector(rng: &mut impl Rng, len: usize) -> Vec<BigInt> {
    (0..len).map(|_| BigInt::from(rng.gen_range(ENTRY_RANGE))).collect()
}

/// Product of at most [`MAX_ROW_OPS`] operations `row_i += c row_j`.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> IMatrix {
    let mut m = IMatrix::identity(n);
    if n < 2 {
        return m;
    }
    let ops = rng.gen_range(0..=MAX_ROW_OPS);
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        for col in 0..n {
            let add = &c * &m[(j, col)];
            m[(i, col)] += add;
        }
    }
    m
}

fn check(trial: u64, inputs: Vec<IMatrix>, lhs: BigInt, rhs: BigInt) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample { trial, inputs, lhs: lhs.to_string(), rhs: rhs.to_string() })
}

fn trial(identity: Identity, seed: u64, t: u64, dims: RangeInclusive<usize>) -> Result<Option<Counterexample>> {
    let mut rng = trial_rng(seed, t);
    let n = rng.gen_range(dims);
    Ok(match identity {
        Identity::Laplace => {
            let m = random_matrix(&mut rng, n, n);
            let mut rows: Vec<usize> = (0..n).collect();
            rows.shuffle(&mut rng);
            let blocks = rng.gen_range(1..=n.min(3));
            let mut cuts: Vec<usize> = (1..n).collect();
            cuts.shuffle(&mut rng);
            let mut cuts: Vec<usize> = cuts.into_iter().take(blocks - 1).collect();
            cuts.sort_unstable();
            let mut partition = Vec::new();
            let mut start = 0;
            for c in cuts.into_iter().chain(std::iter::once(n)) {
                partition.push(rows[start..c].to_vec());
                start = c;
            }
            check(t, vec![m.clone()], laplace_det(&m, &partition)?, det(&m)?)
        }
        Identity::CauchyBinet => {
            let rows = rng.gen_range(1..=n);
            let a = random_matrix(&mut rng, rows, n);
            let b = random_matrix(&mut rng, n, rows);
            let direct = det(&a.mul(&b)?)?;
            check(t, vec![a.clone(), b.clone()], cauchy_binet(&a, &b)?, direct)
        }
        Identity::DeletedBlock => {
            let p = match rng.gen_range(0..3) {
                0 => random_matrix(&mut rng, n, n),
                1 => random_unimodular(&mut rng, n),
                _ => {
                    // last row repeats a combination of earlier rows
                    let mut p = random_matrix(&mut rng, n, n);
                    for col in 0..n {
                        let v = if n > 1 { p[(0, col)].clone() } else { BigInt::from(0) };
                        p[(n - 1, col)] = v;
                    }
                    p
                }
            };
            let (lhs, rhs) = deleted_block_sides(&p)?;
            (lhs != rhs).then(|| Counterexample {
                trial: t,
                inputs: vec![p],
                lhs: format!("{lhs:?}"),
                rhs: format!("{rhs:?}"),
            })
        }
        Identity::RowOpMinor => {
            let a = random_vector(&mut rng, n);
            let b = random_matrix(&mut rng, n, n - 1);
            let (lhs, rhs) = row_op_minor_identity(&a, &b)?;
            check(t, vec![IMatrix::column_vector(&a), b], lhs, rhs)
        }
        Identity::Compound => {
            let a = random_matrix(&mut rng, n, n);
            let mut rows: Vec<usize> = (0..n).collect();
            let mut cols: Vec<usize> = (0..n).collect();
            rows.shuffle(&mut rng);
            cols.shuffle(&mut rng);
            let (lhs, rhs) = compound_identity(&a, &rows[..n - 2], &cols[..n - 2])?;
            check(t, vec![a], lhs, rhs)
        }
        Identity::ConjugationMinor => {
            let a = random_matrix(&mut rng, n, n);
            let p = random_unimodular(&mut rng, n);
            let (lhs, rhs) = conjugation_minor_identity(&a, &p)?;
            check(t, vec![a, p], lhs, -rhs)
        }
        Identity::WedgeContract => {
            let omega = random_matrix(&mut rng, n, n - 1);
            let v = random_vector(&mut rng, n);
            let w = wedge(&omega)?;
            let dot: BigInt = w.iter().zip(&v).map(|(x, y)| x * y).sum();
            let direct = det(&omega.append_column(&v)?)?;
            check(t, vec![omega, IMatrix::column_vector(&v)], dot, direct)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!("jacobi".parse::<Identity>().is_err());
    }

    #[test]
    fn every_identity_passes_a_short_run() {
        for id in Identity::ALL {
            let rep = run_fuzz(id, 25, 3, id.default_dims()).unwrap();
            assert!(rep.ok(), "{id}: {:?}", rep.failures.first());
        }
    }

    #[test]
    fn reports_are_deterministic_and_thread_independent() {
        let a = run_fuzz(Identity::Compound, 30, 7, 3..=5).unwrap();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_fuzz(Identity::Compound, 30, 7, 3..=5).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn unimodular_generator_has_det_one() {
        let mut rng = trial_rng(1, 0);
        for n in 1..6 {
            assert_eq!(det(&random_unimodular(&mut rng, n)).unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn bad_dims_are_rejected() {
        assert!(run_fuzz(Identity::Compound, 1, 0, 2..=4).is_err());
        let empty = run_fuzz(Identity::Laplace, 0, 0, 3..=4).unwrap();
        assert!(empty.ok());
    }
}
