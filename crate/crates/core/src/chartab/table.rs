//! Complete character tables.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::arith::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::perm::GroupRef;

use super::classfn::{ClassFunction, Kind};
use super::dixon::dixon_rows;

#[derive(Debug, Clone)]
pub struct CharTable {
    group: GroupRef,
    field: Arc<CyclotomicField>,
    rows: Vec<ClassFunction>,
}

/// Row order: ascending degree, then value tuples compared entry by entry with
/// larger coefficient vectors first. The trivial character is always row 0.
fn row_order(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> Ordering {
    a[0].cmp_coeffs(&b[0]).then_with(|| {
        for (x, y) in a.iter().zip(b).skip(1) {
            let o = y.cmp_coeffs(x);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

impl CharTable {
    /// Computes the table by the Burnside-Dixon method.
    pub fn compute(group: &GroupRef) -> Result<Self> {
        let (field, mut rows) = dixon_rows(group)?;
        rows.sort_by(|a, b| row_order(a, b));
        let rows =
            rows.into_iter().map(|v| ClassFunction::new(group.clone(), v, Kind::Irreducible)).collect::<Result<_>>()?;
        Ok(CharTable { group: group.clone(), field, rows })
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> Result<&ClassFunction> {
        self.rows
            .get(i)
            .ok_or_else(|| Error::OutOfRange(format!("character index {i} (table has {} rows)", self.rows.len())))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.degree_int().expect("integer degree")).collect()
    }

    /// Multiplicities `<f, chi_i>` of every irreducible.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<CyclotomicNumber>> {
        self.rows.iter().map(|chi| f.inner_product(chi)).collect()
    }

    /// Multiplicities, required to be rational integers.
    pub fn decompose_int(&self, f: &ClassFunction) -> Result<Vec<i64>> {
        self.rows.iter().map(|chi| f.inner_int(chi)).collect()
    }

    /// Index of the row equal to `f`, if `f` is irreducible.
    pub fn index_of(&self, f: &ClassFunction) -> Option<usize> {
        let f = f.transport(&self.group).ok()?;
        self.rows.iter().position(|r| r.values() == f.values())
    }

    /// Indices of the linear characters.
    pub fn linear(&self) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| self.rows[i].degree().is_one()).collect()
    }

    /// Checks both orthogonality relations and the degree-square sum.
    pub fn verify(&self) -> Result<()> {
        let r = self.rows.len();
        let cls = self.group.classes()?;
        if r != cls.len() {
            return Err(Error::Invariant(format!("{r} characters for {} classes", cls.len())));
        }
        for i in 0..r {
            for j in i..r {
                let ip = self.rows[i].inner_product(&self.rows[j])?;
                let want = CyclotomicNumber::from_int(i64::from(i == j));
                if ip != want {
                    return Err(Error::Invariant(format!("<chi_{i}, chi_{j}> = {ip}")));
                }
            }
        }
        for a in 0..r {
            for b in a..r {
                let s: CyclotomicNumber = self.rows.iter().map(|chi| chi.value(a) * &chi.value(b).conj()).sum();
                let want = if a == b {
                    CyclotomicNumber::from_bigint((self.group.order() / cls.sizes[a] as u128).into())
                } else {
                    CyclotomicNumber::zero()
                };
                if s != want {
                    return Err(Error::Invariant(format!("column orthogonality fails at classes {a}, {b}")));
                }
            }
        }
        let sq: i128 = self.degrees().iter().map(|&d| (d * d) as i128).sum();
        if sq as u128 != self.group.order() {
            return Err(Error::Invariant(format!("sum of squared degrees {sq} != |G|")));
        }
        Ok(())
    }

    /// `(order,size)` labels of the classes.
    pub fn class_labels(&self) -> Result<Vec<String>> {
        let cls = self.group.classes()?;
        Ok(cls.orders.iter().zip(&cls.sizes).map(|(o, s)| format!("({o},{s})")).collect())
    }

    /// Tab-separated table with `#` header lines; values as polynomials in `z_n`.
    pub fn to_tsv(&self) -> Result<String> {
        let mut out = String::new();
        let _ =
            writeln!(out, "# order={} classes={} conductor={}", self.group.order(), self.rows.len(), self.conductor());
        let _ = writeln!(out, "#\t{}", self.class_labels()?.join("\t"));
        for (i, row) in self.rows.iter().enumerate() {
            let vals: Vec<String> = row.values().iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "X.{}\t{}", i + 1, vals.join("\t"));
        }
        Ok(out)
    }
}
