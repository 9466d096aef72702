//! Schur elements of the rank-one and G2 Hecke algebras with the parameters
//! that occur for cuspidal pairs, the G2 comparison table and its certificates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::{cyclo_factor, cyclotomic_at_power, zsigmondy, CycloFactorization, LaurentPoly};
use crate::error::{Error, Result};

/// The values of `k` in the G2 parameters `(q, q^{2k-1})`.
pub const G2_KS: [u32; 3] = [1, 2, 5];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeckeType {
    A1,
    G2,
}

impl fmt::Display for HeckeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeckeType::A1 => "A1",
            HeckeType::G2 => "G2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurElement {
    pub label: String,
    pub hecke_type: HeckeType,
    pub k: u32,
    pub b: Option<u32>,
    pub value: LaurentPoly,
}

impl SchurElement {
    pub fn eval(&self, q0: i64) -> Result<BigRational> {
        self.value.eval_int(q0)
    }

    pub fn factor(&self) -> Result<CycloFactorization> {
        cyclo_factor(&self.value, 64)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "type": self.hecke_type.to_string(),
            "k": self.k,
            "b": self.b,
            "value": self.value.to_json(),
            "factored": self.factor().map(|f| f.compact()).unwrap_or_default(),
        })
    }
}

/// `(c_1, c_eps) = (Phi_2(q^k), q^-k Phi_2(q^k))`.
pub fn schur_a1(k: u32) -> Result<(SchurElement, SchurElement)> {
    if k == 0 {
        return Err(Error::OutOfRange("schur_a1 needs k >= 1".into()));
    }
    let phi = cyclotomic_at_power(2, k);
    let mk = |label: &str, value| SchurElement { label: label.into(), hecke_type: HeckeType::A1, k, b: None, value };
    Ok((mk("1", phi.clone()), mk("eps", phi.shift(-(k as i64)))))
}

fn check_k(k: u32) -> Result<()> {
    if G2_KS.contains(&k) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("k must be one of 1, 2, 5, got {k}")))
    }
}

/// `c_{phi_{2,b}} = 2 q^{-2k+1} Phi_3(q^{k+b-2}) Phi_6(q^{k-b+1})`.
pub fn schur_g2(k: u32, b: u32) -> Result<SchurElement> {
    check_k(k)?;
    if !(1..=2).contains(&b) {
        return Err(Error::OutOfRange(format!("b must be 1 or 2, got {b}")));
    }
    let prod = g2_product(k + b - 2, k + 1 - b);
    let value = prod.scale(&BigInt::from(2)).shift(1 - 2 * k as i64);
    Ok(SchurElement { label: format!("phi_{{2,{b}}}"), hecke_type: HeckeType::G2, k, b: Some(b), value })
}

/// `Phi_3(q^a) Phi_6(q^c)`.
fn g2_product(a: u32, c: u32) -> LaurentPoly {
    &cyclotomic_at_power(3, a) * &cyclotomic_at_power(6, c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One row of the G2 table: `Phi_3(q^{k-1}) Phi_6(q^k)` against
/// `Phi_3(q^k) Phi_6(q^{k-1})`.
#[derive(Debug, Clone)]
pub struct G2Row {
    pub k: u32,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub lhs_factored: CycloFactorization,
    pub rhs_factored: CycloFactorization,
    /// Largest cyclotomic index present on one side only, and that side.
    pub zsigmondy_index: u64,
    pub index_side: Side,
    /// Values at `q = 2`.
    pub at_two: (BigInt, BigInt),
}

pub fn g2_row(k: u32) -> Result<G2Row> {
    check_k(k)?;
    let lhs = g2_product(k - 1, k);
    let rhs = g2_product(k, k - 1);
    let lhs_factored = cyclo_factor(&lhs, 64)?;
    let rhs_factored = cyclo_factor(&rhs, 64)?;
    if !lhs_factored.is_complete() || !rhs_factored.is_complete() {
        return Err(Error::Invariant(format!("row k={k} does not factor into cyclotomics")));
    }
    let only = |a: &CycloFactorization, b: &CycloFactorization| {
        a.factors.iter().map(|&(d, _)| d).filter(|&d| b.multiplicity(d) == 0).max()
    };
    let (zsigmondy_index, index_side) = match (only(&lhs_factored, &rhs_factored), only(&rhs_factored, &lhs_factored)) {
        (Some(a), Some(b)) if b > a => (b, Side::Right),
        (Some(a), _) => (a, Side::Left),
        (None, Some(b)) => (b, Side::Right),
        (None, None) => return Err(Error::Invariant(format!("row k={k} has identical factor sets"))),
    };
    let int = |p: &LaurentPoly| -> Result<BigInt> { Ok(p.eval_int(2)?.to_integer()) };
    let at_two = (int(&lhs)?, int(&rhs)?);
    Ok(G2Row { k, lhs, rhs, lhs_factored, rhs_factored, zsigmondy_index, index_side, at_two })
}

pub fn g2_table() -> Result<Vec<G2Row>> {
    G2_KS.iter().map(|&k| g2_row(k)).collect()
}

/// The table as tab-separated text with a header line.
pub fn g2_table_text(rows: &[G2Row]) -> String {
    let mut out = String::from("k\tPhi_3(q^(k-1))Phi_6(q^k)\tPhi_3(q^k)Phi_6(q^(k-1))\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\n", r.k, r.lhs_factored.compact(), r.rhs_factored.compact()));
    }
    out
}

pub fn g2_table_json(rows: &[G2Row]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "k": r.k,
                    "lhs": r.lhs_factored.compact(),
                    "rhs": r.rhs_factored.compact(),
                    "zsigmondy_index": r.zsigmondy_index,
                    "index_side": match r.index_side { Side::Left => "lhs", Side::Right => "rhs" },
                    "at_q2": [r.at_two.0.to_string(), r.at_two.1.to_string()],
                })
            })
            .collect(),
    )
}

/// Why the two sides of a row differ at a given `q0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The values differ; used at `q0 = 2`.
    Evaluation { lhs: BigInt, rhs: BigInt },
    /// A primitive prime divisor of `q0^n - 1` divides exactly one side.
    Zsigmondy { n: u64, prime: u128, divides_lhs: bool, divides_rhs: bool },
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        match self {
            Certificate::Evaluation { lhs, rhs } => lhs != rhs,
            Certificate::Zsigmondy { divides_lhs, divides_rhs, .. } => divides_lhs != divides_rhs,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Evaluation { lhs, rhs } => write!(f, "{lhs} != {rhs}"),
            Certificate::Zsigmondy { n, prime, divides_lhs, divides_rhs } => {
                let side = match (divides_lhs, divides_rhs) {
                    (true, false) => "lhs only",
                    (false, true) => "rhs only",
                    (true, true) => "both",
                    (false, false) => "neither",
                };
                write!(f, "p={prime} primitive for n={n} divides {side}")
            }
        }
    }
}

pub fn g2_certificate(row: &G2Row, q0: u64) -> Result<Certificate> {
    if q0 < 2 {
        return Err(Error::OutOfRange(format!("q0 must be at least 2, got {q0}")));
    }
    let lhs = row.lhs.eval_int(q0 as i64)?.to_integer();
    let rhs = row.rhs.eval_int(q0 as i64)?.to_integer();
    match zsigmondy(q0, row.zsigmondy_index)? {
        Some(prime) if q0 >= 3 => {
            let p = BigInt::from(prime);
            Ok(Certificate::Zsigmondy {
                n: row.zsigmondy_index,
                prime,
                divides_lhs: lhs.is_multiple_of(&p),
                divides_rhs: rhs.is_multiple_of(&p),
            })
        }
        _ => Ok(Certificate::Evaluation { lhs, rhs }),
    }
}

/// `c_big(q0) / c_small(q0)`.
pub fn schur_ratio(big: &SchurElement, small: &SchurElement, q0: i64) -> Result<BigRational> {
    let den = small.eval(q0)?;
    if den.is_zero() {
        return Err(Error::OutOfRange(format!("{} vanishes at q = {q0}", small.label)));
    }
    Ok(big.eval(q0)? / den)
}

/// `dim(pi) / c_phi(q0)`.
pub fn degree_from_schur(dim_pi: &BigInt, c: &SchurElement, q0: i64) -> Result<BigRational> {
    let v = c.eval(q0)?;
    if v.is_zero() {
        return Err(Error::OutOfRange(format!("{} vanishes at q = {q0}", c.label)));
    }
    Ok(BigRational::from_integer(dim_pi.clone()) / v)
}

/// The constant `C` in `deg = C phi(1) / c_phi(q0)`, read off as
/// `dim(pi) / sum_phi phi(1) / c_phi(q0)`.
pub fn empirical_constant(dim_pi: &BigInt, parts: &[(i64, &SchurElement)], q0: i64) -> Result<BigRational> {
    let mut s = BigRational::zero();
    for (d, c) in parts {
        let v = c.eval(q0)?;
        if v.is_zero() {
            return Err(Error::OutOfRange(format!("{} vanishes at q = {q0}", c.label)));
        }
        s += BigRational::from_integer(BigInt::from(*d)) / v;
    }
    if s.is_zero() {
        return Err(Error::OutOfRange("empty degree sum".into()));
    }
    Ok(BigRational::from_integer(dim_pi.clone()) / s)
}

/// Ratio `c_1 / c_eps = q^k`, as a Laurent polynomial.
pub fn a1_ratio_poly(k: u32) -> Result<LaurentPoly> {
    let (c1, ce) = schur_a1(k)?;
    c1.value.div_exact(&ce.value).ok_or_else(|| Error::Invariant("c_eps does not divide c_1".into()))
}

/// True when every value is positive for `q0 >= 2` up to `max_q`.
pub fn positive_on(c: &SchurElement, max_q: i64) -> Result<bool> {
    for q0 in 2..=max_q {
        if c.eval(q0)? <= BigRational::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl G2Row {
    /// Whether `c_{phi_{2,1}} != c_{phi_{2,2}}` at `q0`, with the prefactor.
    pub fn schur_values_differ(&self, q0: i64) -> Result<bool> {
        Ok(schur_g2(self.k, 1)?.eval(q0)? != schur_g2(self.k, 2)?.eval(q0)?)
    }
}
