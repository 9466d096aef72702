//! Integer Laurent polynomials in one variable `q`, cyclotomic polynomials, and
//! greedy cyclotomic factorization.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// An element of `Z[q, q^-1]`.
///
/// Stored as `coeffs[i]` = coefficient of `q^(low + i)`. The first and last
/// coefficients are nonzero unless the polynomial is zero, in which case
/// `coeffs` is empty and `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(0, vec![BigInt::from(c)])
    }

    /// `c * q^exp`.
    pub fn monomial(c: i64, exp: i64) -> Self {
        Self::new(exp, vec![BigInt::from(c)])
    }

    /// Builds `sum_i coeffs[i] q^(low+i)` and normalizes.
    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds from sparse `(exponent, coefficient)` terms; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        let Some((&lo, _)) = map.iter().next() else {
            return Self::zero();
        };
        let hi = *map.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        Self::new(lo, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with nonzero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i64 {
        self.low
    }

    /// Highest exponent with nonzero coefficient (0 for the zero polynomial).
    pub fn high_exp(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.low + self.coeffs.len() as i64 - 1
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> BigInt {
        let i = e - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Substitutes `q -> q^k` for `k >= 0`; `k = 0` evaluates at `q = 1`.
    pub fn substitute_power(&self, k: u32) -> Self {
        if k == 0 {
            let s: BigInt = self.coeffs.iter().sum();
            return Self::new(0, vec![s]);
        }
        Self::from_terms(self.terms().map(|(e, c)| (e * k as i64, c.clone())))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Content: gcd of the coefficients, signed like the leading coefficient.
    pub fn content(&self) -> BigInt {
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.leading_coeff().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Exact division by `d`; returns `None` when `d` does not divide `self`
    /// in `Z[q, q^-1]`. The divisor must have a unit leading coefficient.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let lead = d.leading_coeff();
        assert!(lead.abs().is_one(), "divisor must have unit leading coefficient");
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Work with honest polynomials: strip the monomial parts.
        let dn = d.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dn {
            return None;
        }
        let qlen = rem.len() - dn + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dn - 1] * &lead; // lead is +-1 so c/lead == c*lead
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.low - d.low, quot))
    }

    /// Exact value at a nonzero rational point.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        if q0.is_zero() {
            return Err(Error::OutOfRange("Laurent polynomial evaluated at q = 0".into()));
        }
        // Horner on the polynomial part, then multiply by q0^low.
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + BigRational::from_integer(c.clone());
        }
        Ok(acc * pow_rational(q0, self.low))
    }

    /// Exact value at an integer `q0 != 0`, as a rational.
    pub fn eval_int(&self, q0: i64) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(BigInt::from(q0)))
    }

    /// Sparse JSON form `{"terms": [[exp, coeff], ...]}`. Coefficients outside
    /// the `i64` range are written as decimal strings.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| match i64::try_from(c) {
                Ok(v) => json!([e, v]),
                Err(_) => json!([e, c.to_string()]),
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("expected {\"terms\": [...]}".into()))?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse(format!("bad term {t}")))?;
            let e = pair[0].as_i64().ok_or_else(|| Error::Parse(format!("bad exponent {}", pair[0])))?;
            let c = match &pair[1] {
                Value::Number(n) => {
                    n.as_i64().map(BigInt::from).ok_or_else(|| Error::Parse(format!("bad coefficient {n}")))?
                }
                Value::String(s) => s.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))?,
                other => return Err(Error::Parse(format!("bad coefficient {other}"))),
            };
            out.push((e, c));
        }
        Ok(Self::from_terms(out))
    }
}

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().max(rhs.high_exp());
        let coeffs = (low..=high).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        LaurentPoly::new(low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.low + rhs.low, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The cyclotomic polynomial `Phi_n(q)`, obtained by exact division of
/// `q^n - 1` by `Phi_d(q)` for every proper divisor `d` of `n`.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic_poly(n: u64) -> LaurentPoly {
    assert!(n >= 1, "cyclotomic_poly: n must be positive");
    let divs = divisors(n);
    let mut known: Vec<(u64, LaurentPoly)> = Vec::with_capacity(divs.len());
    for &d in &divs {
        let mut p = LaurentPoly::from_terms([(d as i64, BigInt::one()), (0, -BigInt::one())]);
        for (e, phi_e) in &known {
            if d % e == 0 {
                p = p.div_exact(phi_e).expect("Phi_e divides q^d - 1");
            }
        }
        known.push((d, p));
    }
    known.pop().unwrap().1
}

/// `Phi_n(q^k)`; for `k = 0` this is the integer `Phi_n(1)`.
pub fn cyclotomic_at_power(n: u64, k: u32) -> LaurentPoly {
    cyclotomic_poly(n).substitute_power(k)
}

/// `c * q^a * prod Phi_d(q)^m * remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloFactorization {
    pub constant: BigInt,
    pub monomial_exp: i64,
    /// `(d, multiplicity)` in ascending `d`.
    pub factors: Vec<(u64, u32)>,
    pub remainder: LaurentPoly,
}

impl CycloFactorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> LaurentPoly {
        let mut p = LaurentPoly::monomial(1, self.monomial_exp).scale(&self.constant);
        for &(d, m) in &self.factors {
            let phi = cyclotomic_poly(d);
            for _ in 0..m {
                p = &p * &phi;
            }
        }
        &p * &self.remainder
    }

    pub fn is_complete(&self) -> bool {
        self.remainder.is_one()
    }

    pub fn multiplicity(&self, d: u64) -> u32 {
        self.factors.iter().find(|(e, _)| *e == d).map_or(0, |(_, m)| *m)
    }

    /// Compact product form without the unit monomial, e.g. `3Phi_6(q)` or
    /// `Phi_3(q)Phi_6(q)^2`.
    pub fn compact(&self) -> String {
        let mut s = String::new();
        if !self.constant.is_one() || self.factors.is_empty() {
            s.push_str(&self.constant.to_string());
        }
        if self.monomial_exp != 0 {
            s.push_str(&format!("q^{}", self.monomial_exp));
        }
        for &(d, m) in &self.factors {
            s.push_str(&format!("Phi_{d}(q)"));
            if m > 1 {
                s.push_str(&format!("^{m}"));
            }
        }
        if !self.remainder.is_one() {
            s.push_str(&format!("({})", self.remainder));
        }
        s
    }
}

impl fmt::Display for CycloFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * q^{}", self.constant, self.monomial_exp)?;
        for &(d, m) in &self.factors {
            write!(f, " * Phi_{d}(q)^{m}")?;
        }
        if !self.remainder.is_one() {
            write!(f, " * ({})", self.remainder)?;
        }
        Ok(())
    }
}

/// Greedy factorization by trial division with `Phi_1, ..., Phi_max_d`.
///
/// The unit `c * q^a` is extracted first (content and lowest exponent); each
/// `Phi_d` is then divided out as often as it goes. Whatever is left is the
/// remainder, which is not certified irreducible.
pub fn cyclo_factor(p: &LaurentPoly, max_d: u64) -> Result<CycloFactorization> {
    if p.is_zero() {
        return Err(Error::OutOfRange("cannot factor the zero polynomial".into()));
    }
    let constant = p.content();
    let monomial_exp = p.low_exp();
    let mut rest = LaurentPoly::new(0, p.coeffs().iter().map(|c| c / &constant).collect());
    let mut factors = Vec::new();
    for d in 1..=max_d {
        if rest.high_exp() == 0 {
            break;
        }
        let phi = cyclotomic_poly(d);
        if phi.high_exp() > rest.high_exp() {
            continue;
        }
        let mut mult = 0;
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((d, mult));
        }
    }
    Ok(CycloFactorization { constant, monomial_exp, factors, remainder: rest })
}
