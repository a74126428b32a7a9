use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::delta::{build_delta, derive_a_chain};
use super::sigma::conjugate_to_sigma;
use super::trace::ReductionTrace;
use super::{GroupSpec, Witness};
use crate::error::{Error, Result};
use crate::exact_linalg::{det, IMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// All pivots and the final entry are 1.
    Rational,
    /// The entry formula holds but some pivot or the final entry exceeds 1.
    FormulaHoldsButNotUnit,
    /// The trace does not have the structure of a reduction run.
    Invalid,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Rational => "Rational",
            Verdict::FormulaHoldsButNotUnit => "FormulaHoldsButNotUnit",
            Verdict::Invalid => "Invalid",
        })
    }
}

/// `P^{-1} B P = Σ` for the final intermediate `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaForm {
    pub conjugator: IMatrix,
    pub sigma: IMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub spec: GroupSpec,
    pub witness: Witness,
    pub trace: ReductionTrace,
    /// Norm of the witness element.
    #[serde(with = "crate::serde_big")]
    pub norm: BigInt,
    /// `b m' prod e_i^{n-1-i}`, which must equal `norm`.
    #[serde(with = "crate::serde_big")]
    pub formula_value: BigInt,
    pub verdict: Verdict,
    /// Structural problems found; empty unless the verdict is `Invalid`.
    pub issues: Vec<String>,
    pub sigma: Option<SigmaForm>,
}

impl Certificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Re-derives the certificate from its spec, witness and trace and
    /// checks that every recorded conclusion matches.
    pub fn recheck(&self) -> Result<Verdict> {
        let fresh = certify(&self.trace, &self.witness, &self.spec)?;
        if fresh != *self {
            return Err(Error::Internal("recorded certificate differs from a fresh check".into()));
        }
        Ok(fresh.verdict)
    }
}

/// `prod_{i=1}^{n-3} e_i^{n-1-i}` for pivots `e_1..e_{n-3}`.
pub(crate) fn pivot_weight(pivots: &[BigInt]) -> BigInt {
    let len = pivots.len();
    pivots
        .iter()
        .enumerate()
        .map(|(idx, e)| num_traits::pow(e.clone(), len + 1 - idx))
        .product()
}

fn structural_issues(trace: &ReductionTrace, witness: &Witness, spec: &GroupSpec) -> Result<Vec<String>> {
    let d = spec.dim();
    let mut issues = Vec::new();
    if trace.delta != build_delta(spec)? {
        issues.push("recorded action matrix differs from the one built from (m, n, r)".to_string());
    }
    if trace.a_chain != derive_a_chain(witness, spec)? {
        issues.push("recorded a-chain differs from the witness".to_string());
    }
    let steps = d - 1;
    if trace.conjugators.len() != steps
        || trace.intermediates.len() != steps
        || trace.pivots.len() != steps - 1
    {
        issues.push(format!(
            "expected {steps} conjugators, {steps} intermediates and {} pivots",
            steps - 1
        ));
        return Ok(issues);
    }
    let shape_ok = |m: &IMatrix| m.rows() == d && m.cols() == d;
    if !trace.conjugators.iter().chain(&trace.intermediates).all(shape_ok) {
        issues.push(format!("all matrices must be {d}x{d}"));
        return Ok(issues);
    }
    if trace.conjugators[0].column(0) != trace.a_chain {
        issues.push("P_0 does not have the a-chain as first column".to_string());
    }
    for (k, p) in trace.conjugators.iter().enumerate() {
        // P_k = I_k ⊕ S
        let framed = (0..d).all(|i| {
            (0..d).all(|j| {
                if i < k || j < k {
                    p[(i, j)] == if i == j { BigInt::one() } else { BigInt::zero() }
                } else {
                    true
                }
            })
        });
        if !framed {
            issues.push(format!("P_{k} is not of the form I_{k} ⊕ S"));
            continue;
        }
        let tail: Vec<usize> = (k..d).collect();
        if !det(&p.select(&tail, &tail)?)?.is_one() {
            issues.push(format!("det P_{k} is not 1"));
        }
        let prev = if k == 0 { &trace.delta } else { &trace.intermediates[k - 1] };
        if p.mul(&trace.intermediates[k])? != prev.mul(p)? {
            issues.push(format!("B_{} is not P_{k}^-1 B_{k} P_{k}", k + 1));
        }
        if k > 0 {
            let e = &trace.pivots[k - 1];
            let b = &trace.intermediates[k];
            if !e.is_positive() {
                issues.push(format!("pivot e_{k} = {e} is not positive"));
            }
            if b[(k, k - 1)] != *e || (k + 1..d).any(|i| !b[(i, k - 1)].is_zero()) {
                issues.push(format!("column {} of B_{} is not (.., e_{k}, 0, ..)", k - 1, k + 1));
            }
        }
    }
    let last = trace.intermediates.last().expect("len checked");
    if last[(d - 1, d - 2)] != trace.final_entry {
        issues.push("final entry is not the last subdiagonal entry".to_string());
    }
    for j in 0..d {
        if (j + 2..d).any(|i| !last[(i, j)].is_zero()) {
            issues.push(format!("final matrix has nonzero entries below the subdiagonal in column {j}"));
        }
    }
    Ok(issues)
}

/// Checks a trace against its spec and witness and evaluates the entry
/// formula `b m' prod e_i^{n-1-i} = N(x)`.
///
/// A failed formula on a structurally sound trace is an internal error: the
/// identity holds for every genuine reduction.
pub fn certify(trace: &ReductionTrace, witness: &Witness, spec: &GroupSpec) -> Result<Certificate> {
    witness.validate(spec)?;
    let norm = witness.element(spec.n())?.norm();
    let issues = structural_issues(trace, witness, spec)?;
    let formula_value = &trace.final_entry * spec.mprime() * pivot_weight(&trace.pivots);

    let verdict = if !issues.is_empty() {
        Verdict::Invalid
    } else if formula_value != norm {
        return Err(Error::Internal(format!(
            "entry formula gives {formula_value} but the norm is {norm}"
        )));
    } else if trace.final_entry.is_one() && trace.pivots.iter().all(One::is_one) {
        Verdict::Rational
    } else {
        Verdict::FormulaHoldsButNotUnit
    };

    let sigma = if verdict == Verdict::Rational {
        let (conjugator, sigma) = conjugate_to_sigma(trace.last())?;
        Some(SigmaForm { conjugator, sigma })
    } else {
        None
    };
    Ok(Certificate {
        spec: spec.clone(),
        witness: witness.clone(),
        trace: trace.clone(),
        norm,
        formula_value,
        verdict,
        issues,
        sigma,
    })
}
