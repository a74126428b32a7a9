//! Group data, witnesses and the unimodular reduction of the action matrix.

mod certificate;
mod delta;
mod sigma;
mod trace;
mod unimodular;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, is_odd_prime};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};

pub use certificate::{certify, Certificate, SigmaForm, Verdict};
pub use delta::{build_delta, derive_a_chain, x_j};
pub use sigma::{conjugate_to_sigma, sigma_matrix};
pub use trace::{final_step, reduce_step, run_reduction, ReductionTrace};
pub use unimodular::{sl_with_first_column, Completion};

/// `C_m ⋊_r C_n`: `n` an odd prime, `r^n ≡ 1` and `r ≢ 1 (mod m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct GroupSpec {
    m: BigInt,
    n: u64,
    r: BigInt,
    mprime: BigInt,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    #[serde(with = "crate::serde_big")]
    m: BigInt,
    n: u64,
    #[serde(with = "crate::serde_big")]
    r: BigInt,
    #[serde(with = "crate::serde_big")]
    mprime: BigInt,
}

impl From<GroupSpec> for SpecRepr {
    fn from(s: GroupSpec) -> Self {
        SpecRepr { m: s.m, n: s.n, r: s.r, mprime: s.mprime }
    }
}

impl TryFrom<SpecRepr> for GroupSpec {
    type Error = Error;

    fn try_from(s: SpecRepr) -> Result<Self> {
        let spec = GroupSpec::new(s.m, s.n, s.r)?;
        if spec.mprime != s.mprime {
            return Err(Error::Spec(format!(
                "recorded m' = {} but m / gcd(m, r - 1) = {}",
                s.mprime, spec.mprime
            )));
        }
        Ok(spec)
    }
}

impl GroupSpec {
    pub fn new(m: impl Into<BigInt>, n: u64, r: impl Into<BigInt>) -> Result<Self> {
        let (m, r) = (m.into(), r.into());
        if !is_odd_prime(n) {
            return Err(Error::Spec(format!("n = {n} is not an odd prime")));
        }
        if m < BigInt::from(3) {
            return Err(Error::Spec(format!("m = {m} leaves no room for a nontrivial r")));
        }
        if r < BigInt::from(2) || r >= m {
            return Err(Error::Spec(format!("r = {r} is outside [2, m - 1]")));
        }
        if !r.modpow(&BigInt::from(n), &m).is_one() {
            return Err(Error::Spec(format!("{r}^{n} is not 1 modulo {m}")));
        }
        let mprime = &m / m.gcd(&(&r - 1));
        Ok(GroupSpec { m, n, r, mprime })
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// `m / gcd(m, r - 1)`.
    pub fn mprime(&self) -> &BigInt {
        &self.mprime
    }

    /// Size of the action matrix.
    pub fn dim(&self) -> usize {
        self.n as usize - 1
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C_{} ⋊_{} C_{}", self.m, self.r, self.n)
    }
}

/// Integers `(a_1; α_0, ..., α_{n-2})` with `a_1 m' = sum α_i r^i` and
/// `gcd(a_1, α_0, ..., α_{n-2}) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "crate::serde_big")]
    pub a1: BigInt,
    #[serde(with = "crate::serde_big::vec")]
    pub alphas: Vec<BigInt>,
}

impl Witness {
    pub fn new(a1: impl Into<BigInt>, alphas: Vec<BigInt>) -> Self {
        Witness { a1: a1.into(), alphas }
    }

    pub fn from_i64s(a1: i64, alphas: &[i64]) -> Self {
        Witness::new(a1, alphas.iter().map(|&a| BigInt::from(a)).collect())
    }

    /// Builds the witness carried by `x`, solving for `a_1`. Fails unless
    /// `m'` divides `x(r)` with a positive quotient and the gcd condition
    /// holds.
    pub fn from_element(x: &CycInt, spec: &GroupSpec) -> Result<Self> {
        let (a1, rem) = x.eval(spec.r()).div_rem(spec.mprime());
        if !rem.is_zero() {
            return Err(Error::Witness(format!("m' = {} does not divide {x} at r = {}", spec.mprime, spec.r)));
        }
        let w = Witness { a1, alphas: x.coeffs().to_vec() };
        w.validate(spec)?;
        Ok(w)
    }

    /// The element `α_0 + α_1 ζ + ... + α_{n-2} ζ^{n-2}`.
    pub fn element(&self, n: u64) -> Result<CycInt> {
        CycInt::new(n, self.alphas.clone())
    }

    pub fn validate(&self, spec: &GroupSpec) -> Result<()> {
        if self.alphas.len() != spec.dim() {
            return Err(Error::Witness(format!(
                "expected {} coefficients for n = {}, got {}",
                spec.dim(),
                spec.n,
                self.alphas.len()
            )));
        }
        if !self.a1.is_positive() {
            return Err(Error::Witness(format!("a1 = {} must be positive", self.a1)));
        }
        let value = self.alphas.iter().rev().fold(BigInt::zero(), |acc, a| acc * &spec.r + a);
        if &self.a1 * &spec.mprime != value {
            return Err(Error::Witness(format!(
                "a1 * m' = {} but sum α_i r^i = {value}",
                &self.a1 * &spec.mprime
            )));
        }
        let g = gcd_all(std::iter::once(&self.a1).chain(&self.alphas));
        if !g.is_one() {
            return Err(Error::Witness(format!("gcd(a1, α) = {g}, not 1")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        let s = GroupSpec::new(7, 3, 2).unwrap();
        assert_eq!(s.mprime(), &BigInt::from(7));
        assert!(GroupSpec::new(7, 3, 3).is_err());
        assert!(GroupSpec::new(7, 4, 2).is_err());
        assert!(GroupSpec::new(7, 3, 1).is_err());
        assert!(GroupSpec::new(7, 3, 9).is_err());
        let s = GroupSpec::new(25, 5, 6).unwrap();
        assert_eq!(s.mprime(), &BigInt::from(5));
        // r - 1 shares a factor with m
        let s = GroupSpec::new(18, 3, 7).unwrap();
        assert_eq!(s.mprime(), &BigInt::from(3));
    }

    #[test]
    fn spec_serde_checks_mprime() {
        let s = GroupSpec::new(25, 5, 6).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"m":"25","n":5,"r":"6","mprime":"5"}"#);
        assert_eq!(serde_json::from_str::<GroupSpec>(&text).unwrap(), s);
        let forged = text.replace(r#""mprime":"5""#, r#""mprime":"25""#);
        assert!(serde_json::from_str::<GroupSpec>(&forged).is_err());
    }

    #[test]
    fn witness_validation() {
        let s = GroupSpec::new(7, 3, 2).unwrap();
        Witness::from_i64s(1, &[1, 3]).validate(&s).unwrap();
        assert!(Witness::from_i64s(1, &[1, 2]).validate(&s).is_err());
        assert!(Witness::from_i64s(1, &[1, 3, 0]).validate(&s).is_err());
        assert!(Witness::from_i64s(-1, &[-1, -3]).validate(&s).is_err());
        // 2*7 = 14 = 2*(1 + 2*3) but the gcd is 2
        assert!(Witness::from_i64s(2, &[2, 6]).validate(&s).is_err());
        let x = CycInt::from_i64s(3, &[1, 3]).unwrap();
        assert_eq!(Witness::from_element(&x, &s).unwrap(), Witness::from_i64s(1, &[1, 3]));
        assert!(Witness::from_element(&x.neg(), &s).is_err());
    }
}
