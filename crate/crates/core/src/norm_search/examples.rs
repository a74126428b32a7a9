//! The published `(q, p, x)` triples and the pipeline that certifies them.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{find_r, find_twist, witness_from_element, TripleRecord};
use crate::arith::pow_mod;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::reduction::{certify, run_reduction, sigma_matrix, GroupSpec, Verdict};

/// `(q, p, x)` exactly as published, including the sixth entry, whose
/// element has norm 5801 rather than 18097.
pub const PUBLISHED_TRIPLES: [(u64, u64, &str); 24] = [
    (29, 5801, "1 + z + z^4"),
    (29, 4931, "1 - z^2 + z^5"),
    (29, 7193, "1 + z^2 + z^5"),
    (29, 9803, "-1 + z + z^4"),
    (29, 12413, "-1 + z^2 + z^5"),
    (29, 18097, "1 + z + z^4"),
    (29, 18503, "1 - z + z^5"),
    (29, 21577, "1 + z^2 + z^3"),
    (31, 5953, "-1 - z + z^3"),
    (31, 6263, "1 - z + z^3"),
    (31, 11657, "1 + z + z^4"),
    (31, 16741, "-1 - z + z^4"),
    (31, 20089, "-1 + z + z^6"),
    (37, 32783, "1 - z + z^3"),
    (37, 68821, "-1 + z^2 + z^5"),
    (37, 108929, "1 + z^2 + z^5"),
    (37, 132313, "-1 + z + z^4"),
    (37, 172717, "-1 - z + z^4"),
    (37, 262553, "1 - z^3 + z^4"),
    (41, 101107, "-1 - z + z^3"),
    (41, 337759, "1 + z + z^4"),
    (41, 340793, "-1 + z^2 + z^5"),
    (41, 348911, "1 - z^2 + z^5"),
    (41, 432059, "1 + z^2 + z^5"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub q: u64,
    pub p: u64,
    pub x: CycInt,
    #[serde(with = "crate::serde_big")]
    pub norm: BigInt,
    pub record: Option<TripleRecord>,
    pub verdict: Option<Verdict>,
    /// Subdiagonal of the final matrix, `(e_1, ..., e_{q-3}, b)`, all 1 on
    /// success.
    #[serde(with = "crate::serde_big::vec")]
    pub subdiagonal: Vec<BigInt>,
    /// The final matrix was carried to the target companion form and that
    /// form has order `q`.
    pub sigma_checked: bool,
    /// Largest entry seen during the reduction, in bits.
    pub max_bits: u64,
    pub failure: Option<String>,
}

impl ExampleReport {
    pub fn is_rational(&self) -> bool {
        self.verdict == Some(Verdict::Rational) && self.sigma_checked && self.failure.is_none()
    }

    /// Short status for tables: the verdict, or the failure class.
    pub fn status(&self) -> String {
        match (&self.verdict, &self.failure) {
            (_, Some(_)) if self.norm != BigInt::from(self.p) => "NormMismatch".into(),
            (_, Some(_)) => "Error".into(),
            (Some(v), None) => v.to_string(),
            (None, None) => "Error".into(),
        }
    }
}

/// Runs norm check, residue search, twist, reduction and certification for
/// one triple. Failures are recorded in the report rather than returned.
pub fn run_example(q: u64, p: u64, x: &CycInt) -> ExampleReport {
    let mut report = ExampleReport {
        q,
        p,
        x: x.clone(),
        norm: x.norm(),
        record: None,
        verdict: None,
        subdiagonal: Vec::new(),
        sigma_checked: false,
        max_bits: 0,
        failure: None,
    };
    if let Err(e) = pipeline(&mut report) {
        report.failure = Some(e.to_string());
    }
    report
}

fn pipeline(report: &mut ExampleReport) -> Result<()> {
    let (q, p) = (report.q, report.p);
    if report.x.conductor() != q {
        return Err(Error::Argument(format!("element is not in Z[ζ_{q}]")));
    }
    if report.norm != BigInt::from(p) {
        return Err(Error::Precondition(format!("N({}) = {}, not {p}", report.x, report.norm)));
    }
    let r = find_r(p, q)?;
    let k = find_twist(&report.x, r, p)?;
    report.record = Some(TripleRecord { q, p, x: report.x.clone(), r, k });

    let spec = GroupSpec::new(p, q, pow_mod(r, k, p))?;
    let (witness, _) = witness_from_element(&spec, &report.x)?.ok_or_else(|| {
        Error::Internal(format!("twisted element gives no witness for {spec}"))
    })?;
    let trace = run_reduction(&spec, &witness)?;
    report.max_bits = trace.max_bits();
    let last = trace.last();
    let d = spec.dim();
    report.subdiagonal = (1..d).map(|i| last[(i, i - 1)].clone()).collect();
    let cert = certify(&trace, &witness, &spec)?;
    report.verdict = Some(cert.verdict);
    if let Some(form) = &cert.sigma {
        report.sigma_checked =
            form.sigma == sigma_matrix(d) && form.sigma.pow(q as u32)?.is_identity();
    }
    Ok(())
}

/// Runs every published triple matching `filter` (all when `None`), in
/// parallel, returning reports in publication order.
pub fn reproduce_examples(filter: Option<u64>) -> Vec<ExampleReport> {
    PUBLISHED_TRIPLES
        .par_iter()
        .filter(|(q, _, _)| filter.is_none_or(|f| f == *q))
        .map(|&(q, p, text)| {
            let x = CycInt::parse(text, q).expect("published elements parse");
            run_example(q, p, &x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    #[test]
    fn table_is_well_formed() {
        for (q, p, text) in PUBLISHED_TRIPLES {
            assert!(is_prime(p) && (p - 1) % q == 0, "({q}, {p})");
            let x = CycInt::parse(text, q).unwrap();
            assert_eq!(x.support(), 3);
        }
    }

    #[test]
    fn first_triple_certifies() {
        let x = CycInt::parse("1 + z + z^4", 29).unwrap();
        let rep = run_example(29, 5801, &x);
        assert!(rep.is_rational(), "{rep:?}");
        assert_eq!(rep.status(), "Rational");
        assert!(rep.subdiagonal.iter().all(|e| e == &BigInt::from(1)));
    }

    #[test]
    fn norm_mismatch_is_reported() {
        let x = CycInt::parse("1 + z + z^4", 29).unwrap();
        let rep = run_example(29, 18097, &x);
        assert!(!rep.is_rational());
        assert_eq!(rep.norm, BigInt::from(5801));
        assert_eq!(rep.status(), "NormMismatch");
        assert!(rep.record.is_none());
    }
}
