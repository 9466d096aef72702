//! Exact elements of cyclotomic fields `Q(zeta_n)`.
//!
//! An element is stored on the power basis `1, z, ..., z^(phi(n)-1)` of
//! `Q[z]/(Phi_n)` as an integer numerator vector over one positive common
//! denominator. Arithmetic between different conductors lifts both operands to
//! the least common multiple.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::{cyclotomic_poly, euler_phi};
use super::linalg::solve_rational;

/// The field `Q(zeta_n)` with its reduction polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    conductor: u32,
    /// `Phi_n` ascending, monic, length `phi(n) + 1`.
    phi: Vec<i64>,
}

impl CyclotomicField {
    pub fn new(conductor: u32) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        let p = cyclotomic_poly(conductor as u64);
        let phi = p.coeffs().iter().map(|c| c.to_i64().expect("cyclotomic coefficients fit in i64")).collect();
        Arc::new(CyclotomicField { conductor, phi })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `phi(n)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Reduces an integer polynomial in `z` modulo `Phi_n` in place and
    /// truncates it to `phi(n)` coefficients.
    fn reduce(&self, a: &mut Vec<BigInt>) {
        let d = self.degree();
        for i in (d..a.len()).rev() {
            if a[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut a[i]);
            for (j, &pj) in self.phi[..d].iter().enumerate() {
                if pj != 0 {
                    a[i - d + j] -= &c * pj;
                }
            }
        }
        a.resize(d, BigInt::zero());
    }
}

/// An exact element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

thread_local! {
    static RATIONALS: Arc<CyclotomicField> = CyclotomicField::new(1);
}

fn rational_field() -> Arc<CyclotomicField> {
    RATIONALS.with(Arc::clone)
}

impl CyclotomicNumber {
    fn from_parts(field: Arc<CyclotomicField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CyclotomicNumber { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    /// The rational integer `n`, at conductor 1.
    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        CyclotomicNumber { field: rational_field(), num: vec![n], den: BigInt::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(rational_field(), vec![r.numer().clone()], r.denom().clone())
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `zeta_n^k` in the given field.
    pub fn root_of_unity(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let n = field.conductor as i64;
        let e = k.rem_euclid(n) as usize;
        let mut num = vec![BigInt::zero(); e.max(field.degree()) + 1];
        num[e] = BigInt::one();
        field.reduce(&mut num);
        CyclotomicNumber { field: field.clone(), num, den: BigInt::one() }
    }

    /// Builds `sum_k counts[k] zeta_n^k` in the given field, `counts.len() == n`.
    pub fn from_root_counts(field: &Arc<CyclotomicField>, counts: &[i64]) -> Self {
        let mut num: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        num.resize(num.len().max(field.degree()), BigInt::zero());
        field.reduce(&mut num);
        CyclotomicNumber { field: field.clone(), num, den: BigInt::one() }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// Coefficients on the power basis, as rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// True when the value lies in `Q` (for conductor 2 the basis is `{1}` as well).
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Integer value, if this is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Re-expresses the element in `Q(zeta_m)` for a multiple `m` of the conductor.
    pub fn lift_to(&self, target: &Arc<CyclotomicField>) -> Self {
        let n = self.field.conductor;
        let m = target.conductor;
        assert!(m % n == 0, "cannot lift conductor {n} to {m}");
        if m == n {
            return self.clone();
        }
        if self.is_rational() {
            let mut num = vec![BigInt::zero(); target.degree()];
            num[0] = self.num[0].clone();
            return CyclotomicNumber { field: target.clone(), num, den: self.den.clone() };
        }
        let step = (m / n) as usize;
        let mut num = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (j, c) in self.num.iter().enumerate() {
            num[j * step] = c.clone();
        }
        num.resize(num.len().max(target.degree()), BigInt::zero());
        target.reduce(&mut num);
        CyclotomicNumber { field: target.clone(), num, den: self.den.clone() }
    }

    /// Brings two operands to a common field.
    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let (n, m) = (a.field.conductor, b.field.conductor);
        if n == m {
            return (a.clone(), b.clone());
        }
        if m % n == 0 || a.is_rational() && m > n {
            let f = b.field.clone();
            return (a.lift_or_embed(&f), b.clone());
        }
        if n % m == 0 || b.is_rational() {
            let f = a.field.clone();
            return (a.clone(), b.lift_or_embed(&f));
        }
        let f = CyclotomicField::new(n.lcm(&m));
        (a.lift_to(&f), b.lift_to(&f))
    }

    fn lift_or_embed(&self, target: &Arc<CyclotomicField>) -> Self {
        if self.is_rational() {
            let mut num = vec![BigInt::zero(); target.degree()];
            num[0] = self.num[0].clone();
            CyclotomicNumber { field: target.clone(), num, den: self.den.clone() }
        } else {
            self.lift_to(target)
        }
    }

    /// Applies the Galois automorphism `zeta -> zeta^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.field.conductor as i64;
        if self.is_rational() {
            return self.clone();
        }
        let mut num = vec![BigInt::zero(); (n as usize).max(self.field.degree())];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let e = (j as i64 * k).rem_euclid(n) as usize;
                num[e] += c;
            }
        }
        self.field.reduce(&mut num);
        CyclotomicNumber { field: self.field.clone(), num, den: self.den.clone() }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            let r = BigRational::new(self.den.clone(), self.num[0].clone());
            return Some(Self::from_rational(&r).lift_or_embed(&self.field));
        }
        // Solve (multiplication-by-self) x = 1 over Q.
        let d = self.field.degree();
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(d);
        for j in 0..d {
            let basis = Self::root_of_unity(&self.field, j as i64);
            cols.push((self * &basis).coeffs());
        }
        let matrix: Vec<Vec<BigRational>> = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
        let mut rhs = vec![BigRational::zero(); d];
        rhs[0] = BigRational::one();
        let x = solve_rational(&matrix, &rhs)?;
        let den = x.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = x.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        Some(Self::from_parts(self.field.clone(), num, den))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Self::from_parts(self.field.clone(), self.num.iter().map(|c| c * k).collect(), self.den.clone())
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero(), "division by zero");
        Self::from_parts(self.field.clone(), self.num.clone(), &self.den * k)
    }

    /// Total order on coefficient vectors at the common conductor
    /// (lexicographic from the constant term). Used for deterministic sorting.
    pub fn cmp_coeffs(&self, other: &Self) -> Ordering {
        let (a, b) = Self::common(self, other);
        for (x, y) in a.num.iter().zip(&b.num) {
            let o = (x * &b.den).cmp(&(y * &a.den));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }

    /// Formats as a polynomial in `z_n`, e.g. `-z_3 - 1` or `1/2`.
    pub fn to_poly_string(&self) -> String {
        if self.is_rational() {
            return fmt_rational(&self.num[0], &self.den);
        }
        let n = self.field.conductor;
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (j, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = fmt_rational(&c.abs(), &self.den);
            let body = match j {
                0 => mag,
                _ => {
                    let z = if j == 1 { format!("z_{n}") } else { format!("z_{n}^{j}") };
                    if mag == "1" {
                        z
                    } else {
                        format!("{mag}*{z}")
                    }
                }
            };
            parts.push((neg, body));
        }
        let mut s = String::new();
        for (i, (neg, body)) in parts.into_iter().enumerate() {
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

fn fmt_rational(n: &BigInt, d: &BigInt) -> String {
    let r = BigRational::new(n.clone(), d.clone());
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.field.conductor == other.field.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly_string())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly_string())
    }
}

impl From<i64> for CyclotomicNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::common(self, rhs);
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return CyclotomicNumber::from_parts(a.field, num, a.den);
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        CyclotomicNumber::from_parts(a.field, num, &a.den * &b.den)
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.is_rational() || rhs.is_rational() {
            let (a, b) = CyclotomicNumber::common(self, rhs);
            let (s, v) = if a.is_rational() { (&a, &b) } else { (&b, &a) };
            let k = &s.num[0];
            let num = v.num.iter().map(|c| c * k).collect();
            return CyclotomicNumber::from_parts(v.field.clone(), num, &a.den * &b.den);
        }
        let (a, b) = CyclotomicNumber::common(self, rhs);
        let d = a.field.degree();
        let mut out = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        a.field.reduce(&mut out);
        CyclotomicNumber::from_parts(a.field.clone(), out, &a.den * &b.den)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for CyclotomicNumber {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

/// `phi(n)` as usize; convenience for callers sizing buffers.
pub fn field_degree(n: u32) -> usize {
    euler_phi(n as u64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(&CyclotomicField::new(n), k)
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&z(3, 0) + &z(3, 1)) + &z(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn conductor_mixing() {
        // zeta_4 = i, zeta_3; i^2 = -1 regardless of which field it is computed in
        let i = z(4, 1);
        let w = z(3, 1);
        let prod = &(&i * &w) * &(&i * &w.conj());
        assert_eq!(prod, CyclotomicNumber::from_int(-1));
        assert_eq!(z(12, 3), i);
        assert_eq!(z(12, 4), w);
    }

    #[test]
    fn inverse_and_conj() {
        let x = &z(5, 1) + &CyclotomicNumber::from_int(2);
        let xi = x.inv().unwrap();
        assert!((&x * &xi).is_one());
        assert_eq!(x.conj().conj(), x);
        assert!(CyclotomicNumber::zero().inv().is_none());
    }

    #[test]
    fn formatting() {
        let x = &z(3, 1) - &CyclotomicNumber::from_int(1);
        assert_eq!(x.to_poly_string(), "z_3 - 1");
        // z_3^2 reduces to -z_3 - 1
        assert_eq!(z(3, 2).to_poly_string(), "-z_3 - 1");
        let half = CyclotomicNumber::from_rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(half.to_string(), "1/2");
    }

    #[test]
    fn rational_detection() {
        // zeta_5 + zeta_5^-1 is irrational; zeta_8 + zeta_8^7 = sqrt 2 likewise
        assert!(!(&z(5, 1) + &z(5, 4)).is_rational());
        assert_eq!(&z(6, 1) + &z(6, 5), CyclotomicNumber::one());
    }
}
