//! Arithmetic in `Z[ζ_n]` for an odd prime `n`.
//!
//! Elements are stored on the basis `1, ζ, ..., ζ^{n-2}`; the relation
//! `ζ^{n-1} = -(1 + ζ + ... + ζ^{n-2})` keeps the representation canonical.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, is_odd_prime};
use crate::error::{Error, Result};
use crate::exact_linalg::{det, IMatrix};

/// A cyclotomic integer `α_0 + α_1 ζ + ... + α_{n-2} ζ^{n-2}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CycRepr", into = "CycRepr")]
pub struct CycInt {
    n: u64,
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    n: u64,
    coeffs: Vec<String>,
}

impl From<CycInt> for CycRepr {
    fn from(x: CycInt) -> Self {
        CycRepr { n: x.n, coeffs: x.coeffs.iter().map(|c| c.to_string()).collect() }
    }
}

impl TryFrom<CycRepr> for CycInt {
    type Error = Error;

    fn try_from(r: CycRepr) -> Result<Self> {
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        CycInt::new(r.n, coeffs)
    }
}

fn check_conductor(n: u64) -> Result<()> {
    if !is_odd_prime(n) {
        return Err(Error::Argument(format!("conductor {n} is not an odd prime")));
    }
    if n > u32::MAX as u64 {
        return Err(Error::Argument(format!("conductor {n} is too large")));
    }
    Ok(())
}

/// Canonical element equal to `sum raw[i] ζ^i`; `raw` may have any length.
pub fn reduce_poly(raw: &[BigInt], n: u64) -> Result<CycInt> {
    check_conductor(n)?;
    let len = n as usize;
    let mut folded = vec![BigInt::zero(); len];
    for (i, c) in raw.iter().enumerate() {
        folded[i % len] += c;
    }
    let top = folded.pop().expect("n >= 3");
    if !top.is_zero() {
        for c in &mut folded {
            *c -= &top;
        }
    }
    Ok(CycInt { n, coeffs: folded })
}

impl CycInt {
    /// Builds an element from exactly `n - 1` coefficients.
    pub fn new(n: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        check_conductor(n)?;
        if coeffs.len() as u64 != n - 1 {
            return Err(Error::Argument(format!(
                "an element of Z[ζ_{n}] needs {} coefficients, got {}",
                n - 1,
                coeffs.len()
            )));
        }
        Ok(CycInt { n, coeffs })
    }

    pub fn from_i64s(n: u64, coeffs: &[i64]) -> Result<Self> {
        Self::new(n, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(n: u64) -> Result<Self> {
        Self::from_int(n, BigInt::zero())
    }

    pub fn one(n: u64) -> Result<Self> {
        Self::from_int(n, BigInt::one())
    }

    pub fn from_int(n: u64, c: BigInt) -> Result<Self> {
        check_conductor(n)?;
        let mut coeffs = vec![BigInt::zero(); n as usize - 1];
        coeffs[0] = c;
        Ok(CycInt { n, coeffs })
    }

    /// `ζ^e` for any exponent.
    pub fn zeta_pow(n: u64, e: u64) -> Result<Self> {
        check_conductor(n)?;
        let mut raw = vec![BigInt::zero(); n as usize];
        raw[(e % n) as usize] = BigInt::one();
        reduce_poly(&raw, n)
    }

    /// `1 - ζ`.
    pub fn one_minus_zeta(n: u64) -> Result<Self> {
        let mut x = Self::one(n)?;
        x.coeffs[1] = BigInt::from(-1);
        Ok(x)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when every coefficient except the constant term vanishes.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Number of nonzero coefficients.
    pub fn support(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn same_ring(&self, other: &CycInt) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Argument(format!(
                "elements of Z[ζ_{}] and Z[ζ_{}] cannot be combined",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { n: self.n, coeffs })
    }

    pub fn neg(&self) -> CycInt {
        CycInt { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> CycInt {
        CycInt { n: self.n, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Ring product.
    pub fn mul(&self, other: &CycInt) -> Result<CycInt> {
        self.same_ring(other)?;
        let d = self.coeffs.len();
        let mut raw = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        reduce_poly(&raw, self.n)
    }

    /// Image under the automorphism `ζ -> ζ^k`; `k` must be prime to `n`.
    pub fn conjugate(&self, k: i64) -> Result<CycInt> {
        let n = self.n as i64;
        let k = k.rem_euclid(n);
        if k == 0 {
            return Err(Error::Argument(format!("twist {k} is not prime to {n}")));
        }
        self.permute_exponents(|i| (i * k as u64) % self.n)
    }

    /// Product with `ζ^j`.
    pub fn shift(&self, j: u64) -> CycInt {
        self.permute_exponents(|i| (i + j) % self.n).expect("same conductor")
    }

    fn permute_exponents(&self, f: impl Fn(u64) -> u64) -> Result<CycInt> {
        let mut raw = vec![BigInt::zero(); self.n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[f(i as u64) as usize] += c;
        }
        reduce_poly(&raw, self.n)
    }

    /// Matrix of multiplication by `self` on the basis `1, ζ, ..., ζ^{n-2}`:
    /// entry `(i, j)` is `α_{(i-j) mod n} - α_{(n-1-j) mod n}` with
    /// `α_{n-1} = 0`.
    pub fn norm_matrix(&self) -> IMatrix {
        let n = self.n as usize;
        let d = n - 1;
        let alpha = |t: usize| -> BigInt {
            if t == d {
                BigInt::zero()
            } else {
                self.coeffs[t].clone()
            }
        };
        let mut m = IMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = alpha((i + n - j) % n) - alpha((n - 1 + n - j) % n);
            }
        }
        m
    }

    /// Field norm down to `Q`, as the determinant of [`Self::norm_matrix`].
    pub fn norm(&self) -> BigInt {
        det(&self.norm_matrix()).expect("norm matrix is square")
    }

    /// Norm as the product of all conjugates. Independent of the matrix
    /// layout; used to cross-check [`Self::norm`].
    pub fn norm_by_conjugates(&self) -> Result<BigInt> {
        let mut acc = Self::one(self.n)?;
        for k in 1..self.n as i64 {
            acc = acc.mul(&self.conjugate(k)?)?;
        }
        if !acc.is_rational() {
            return Err(Error::Internal(format!("product of conjugates of {self} is not rational")));
        }
        Ok(acc.coeffs[0].clone())
    }

    /// Value of the map `ζ -> r` into `Z/p`. The map is a ring homomorphism
    /// exactly when `Φ_n(r) ≡ 0 (mod p)`; anything else is rejected.
    pub fn eval_mod(&self, r: &BigInt, p: &BigInt) -> Result<BigInt> {
        if *p <= BigInt::one() {
            return Err(Error::Argument(format!("modulus {p} must exceed 1")));
        }
        let r = r.mod_floor(p);
        let mut phi = BigInt::zero();
        let mut pow = BigInt::one();
        for _ in 0..self.n {
            phi += &pow;
            pow = (pow * &r) % p;
        }
        if !phi.mod_floor(p).is_zero() {
            return Err(Error::Precondition(format!(
                "ζ -> {r} is not well defined modulo {p} for conductor {}",
                self.n
            )));
        }
        Ok(self.eval_unchecked(&r, p))
    }

    /// `sum α_i r^i mod p` without checking that the map is well defined.
    pub fn eval_unchecked(&self, r: &BigInt, p: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * r + c).mod_floor(p);
        }
        acc
    }

    /// Exact integer value `sum α_i r^i`.
    pub fn eval(&self, r: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * r + c)
    }

    /// Nonnegative gcd of the coefficients; zero only for the zero element.
    pub fn content(&self) -> BigInt {
        gcd_all(&self.coeffs)
    }

    /// Parses `a0 + a1*z + a2*z^2 + ...`. Terms may repeat, come in any
    /// order and use exponents past `n - 2`; the result is reduced.
    pub fn parse(text: &str, n: u64) -> Result<CycInt> {
        check_conductor(n)?;
        let ops = ['+', '-', '*', '^'];
        let words: Vec<&str> = text.split_whitespace().collect();
        for pair in words.windows(2) {
            let joined = !pair[0].ends_with(ops) && !pair[1].starts_with(ops);
            if joined {
                return Err(Error::Parse(format!("missing operator between {:?} and {:?}", pair[0], pair[1])));
            }
        }
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut raw: Vec<BigInt> = vec![BigInt::zero(); n as usize];
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(Error::Parse(format!("expected '+' or '-' at offset {pos} in {text:?}")));
            }
            let end = s[pos..].find(['+', '-']).map_or(s.len(), |i| pos + i);
            let term = &s[pos..end];
            let (coef, exp) = parse_term(term).ok_or_else(|| {
                Error::Parse(format!("cannot read term {term:?} in {text:?}"))
            })?;
            raw[(exp % n) as usize] += sign * coef;
            pos = end;
        }
        reduce_poly(&raw, n)
    }
}

fn parse_term(term: &str) -> Option<(BigInt, u64)> {
    if term.is_empty() {
        return None;
    }
    let Some(zpos) = term.find('z') else {
        return Some((term.parse().ok()?, 0));
    };
    let coef = match term[..zpos].strip_suffix('*') {
        Some(c) => c.parse().ok()?,
        None if zpos == 0 => BigInt::one(),
        None => term[..zpos].parse().ok()?,
    };
    let rest = &term[zpos + 1..];
    let exp = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')?.parse().ok()?
    };
    Some((coef, exp))
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => f.write_str("z")?,
                (_, false) => write!(f, "{mag}*z")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[{}]({})", self.n, self)
    }
}

/// Parses `"<n>:<expr>"`, the form used where the conductor travels with the
/// element.
impl FromStr for CycInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, expr) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected '<n>:<expr>', got {s:?}")))?;
        let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad conductor in {s:?}")))?;
        CycInt::parse(expr, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn x(n: u64, v: &[i64]) -> CycInt {
        CycInt::from_i64s(n, v).unwrap()
    }

    /// Schoolbook product followed by long division by Φ_n, written
    /// independently of `reduce_poly`.
    fn oracle_mul(n: u64, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut prod = vec![0i64; a.len() + b.len() - 1];
        for (i, p) in a.iter().enumerate() {
            for (j, q) in b.iter().enumerate() {
                prod[i + j] += p * q;
            }
        }
        // Φ_n is monic of degree n-1 with all coefficients 1.
        let deg = n as usize - 1;
        for top in (deg..prod.len()).rev() {
            let c = prod[top];
            if c != 0 {
                for k in 0..=deg {
                    prod[top - deg + k] -= c;
                }
            }
        }
        prod.truncate(deg);
        prod
    }

    #[test]
    fn reduction_rules() {
        let mut raw = vec![BigInt::zero(); 5];
        raw[4] = BigInt::one();
        assert_eq!(reduce_poly(&raw, 5).unwrap(), x(5, &[-1, -1, -1, -1]));
        assert_eq!(reduce_poly(&big(&[3, 1]), 5).unwrap(), x(5, &[3, 1, 0, 0]));
        let mut zn = vec![BigInt::zero(); 6];
        zn[5] = BigInt::one();
        assert_eq!(reduce_poly(&zn, 5).unwrap(), x(5, &[1, 0, 0, 0]));
        assert!(reduce_poly(&raw, 9).is_err());
        assert!(reduce_poly(&raw, 2).is_err());
    }

    #[test]
    fn small_products() {
        let v = x(7, &[2, -1, 0, 3, 0, 1]);
        assert_eq!(v.mul(&CycInt::one(7).unwrap()).unwrap(), v);
        let a = CycInt::one_minus_zeta(3).unwrap();
        let b = a.conjugate(2).unwrap();
        assert_eq!(a.mul(&b).unwrap(), x(3, &[3, 0]));
        assert!(a.mul(&v).is_err());
    }

    #[test]
    fn conjugation() {
        let v = x(7, &[2, -1, 0, 3, 0, 1]);
        assert_eq!(v.conjugate(1).unwrap(), v);
        assert_eq!(v.conjugate(8).unwrap(), v);
        let z = x(5, &[0, 1, 0, 0]);
        assert_eq!(z.conjugate(4).unwrap(), x(5, &[-1, -1, -1, -1]));
        assert!(z.conjugate(5).is_err());
        assert!(z.conjugate(0).is_err());
    }

    #[test]
    fn norm_matrix_layout_for_five() {
        // α = (a0, a1, a2, a3) = (2, 3, 5, 7), laid out as displayed.
        let (a0, a1, a2, a3) = (2i64, 3, 5, 7);
        let want = IMatrix::from_rows(&[
            vec![a0, -a3, a3 - a2, a2 - a1],
            vec![a1, a0 - a3, -a2, a3 - a1],
            vec![a2, a1 - a3, a0 - a2, -a1],
            vec![a3, a2 - a3, a1 - a2, a0 - a1],
        ])
        .unwrap();
        assert_eq!(x(5, &[a0, a1, a2, a3]).norm_matrix(), want);
    }

    #[test]
    fn known_norms() {
        assert_eq!(CycInt::one(11).unwrap().norm(), BigInt::one());
        for q in [3u64, 5, 7, 11, 13, 29] {
            assert_eq!(CycInt::one_minus_zeta(q).unwrap().norm(), BigInt::from(q));
        }
        let v = CycInt::parse("1 + z + z^4", 29).unwrap();
        assert_eq!(v.norm(), BigInt::from(5801));
        assert_eq!(v.norm_by_conjugates().unwrap(), BigInt::from(5801));
        // a^2 - ab + b^2 at (1, 3)
        assert_eq!(x(3, &[1, 3]).norm(), BigInt::from(7));
    }

    #[test]
    fn content_cases() {
        assert!(CycInt::zero(5).unwrap().content().is_zero());
        assert_eq!(x(5, &[2, 2, 0, 0]).content(), BigInt::from(2));
        assert_eq!(x(5, &[-4, 6, 0, 0]).content(), BigInt::from(2));
    }

    #[test]
    fn evaluation() {
        let p = BigInt::from(31);
        let r = BigInt::from(2);
        assert_eq!(CycInt::one(5).unwrap().eval_mod(&r, &p).unwrap(), BigInt::one());
        // 1 + ζ + ζ^2 + ζ^3 = -ζ^4 maps to -r^4
        let s = x(5, &[1, 1, 1, 1]);
        assert_eq!(s.eval_mod(&r, &p).unwrap(), BigInt::from(-16).mod_floor(&p));
        assert!(s.eval_mod(&BigInt::from(3), &p).is_err());
        assert!(s.eval_mod(&BigInt::one(), &p).is_err());
        assert!(s.eval_mod(&r, &BigInt::one()).is_err());
    }

    #[test]
    fn text_format() {
        let v = CycInt::parse("1 + z + z^4", 29).unwrap();
        assert_eq!(v.to_string(), "1 + z + z^4");
        let w = CycInt::parse("-1 - z + z^3", 31).unwrap();
        assert_eq!(w.to_string(), "-1 - z + z^3");
        assert_eq!(CycInt::parse("3*z^2 - 2z + 4", 7).unwrap().to_string(), "4 - 2*z + 3*z^2");
        assert_eq!(CycInt::parse("z^4", 5).unwrap(), x(5, &[-1, -1, -1, -1]));
        assert_eq!(CycInt::parse("z^5 + z - z", 5).unwrap(), CycInt::one(5).unwrap());
        assert_eq!(CycInt::zero(5).unwrap().to_string(), "0");
        assert_eq!(CycInt::parse("-z", 5).unwrap().to_string(), "-z");
        for bad in ["", "1 +", "1 ++ z", "z^", "2**z", "y", "1 2"] {
            assert!(CycInt::parse(bad, 5).is_err(), "{bad:?}");
        }
        assert_eq!("29:1 + z + z^4".parse::<CycInt>().unwrap(), v);
    }

    #[test]
    fn serde_round_trip() {
        let v = x(7, &[2, -1, 0, 3, 0, 1]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"n":7,"coeffs":["2","-1","0","3","0","1"]}"#);
        assert_eq!(serde_json::from_str::<CycInt>(&s).unwrap(), v);
        assert!(serde_json::from_str::<CycInt>(r#"{"n":7,"coeffs":["1"]}"#).is_err());
    }

    fn element() -> impl Strategy<Value = (u64, Vec<i64>, Vec<i64>)> {
        prop::sample::select(vec![3u64, 5, 7, 11, 13]).prop_flat_map(|n| {
            let d = n as usize - 1;
            (
                Just(n),
                prop::collection::vec(-3i64..=3, d),
                prop::collection::vec(-3i64..=3, d),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_matches_oracle((n, a, b) in element()) {
            let got = x(n, &a).mul(&x(n, &b)).unwrap();
            prop_assert_eq!(got.coeffs().to_vec(), big(&oracle_mul(n, &a, &b)));
        }

        #[test]
        fn norm_paths_agree_and_multiply((n, a, b) in element()) {
            let (u, v) = (x(n, &a), x(n, &b));
            prop_assert_eq!(u.norm(), u.norm_by_conjugates().unwrap());
            prop_assert_eq!(u.mul(&v).unwrap().norm(), u.norm() * v.norm());
        }

        #[test]
        fn content_power_divides_norm((n, a, _b) in element()) {
            let u = x(n, &a);
            prop_assume!(!u.is_zero());
            let c = u.content();
            prop_assert!((u.norm() % num_traits::pow(c, n as usize - 1)).is_zero());
        }

        #[test]
        fn evaluation_is_multiplicative((n, a, b) in element()) {
            // r of multiplicative order n modulo p
            let (r, p) = match n {
                3 => (2i64, 7i64),
                5 => (2, 31),
                7 => (16, 29),
                11 => (2, 23),
                _ => (16, 53),
            };
            let (r, p) = (BigInt::from(r), BigInt::from(p));
            let (u, v) = (x(n, &a), x(n, &b));
            let lhs = u.mul(&v).unwrap().eval_mod(&r, &p).unwrap();
            let rhs = (u.eval_mod(&r, &p).unwrap() * v.eval_mod(&r, &p).unwrap()).mod_floor(&p);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_round_trip((n, a, _b) in element()) {
            let u = x(n, &a);
            prop_assert_eq!(CycInt::parse(&u.to_string(), n).unwrap(), u);
        }
    }
}
