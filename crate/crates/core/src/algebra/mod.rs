//! Finite-dimensional algebras by structure constants: twisted and skew group
//! algebras, central idempotents and corners.

mod corner;

pub use corner::{
    corner, corner_census, disconnected_corner_check, eta_corner, named_abelian, named_skew, Corner, CornerCensus,
    DisconnectedCornerCheck, IsomorphismReport,
};

use num_bigint::BigInt;

use crate::arith::linalg::nullspace;
use crate::arith::CyclotomicNumber;
use crate::chartab::CharTable;
use crate::error::{Error, Result};
use crate::par;
use crate::perm::{GroupRef, Perm, SemidirectGroup};

/// Coordinates in the basis of an algebra.
pub type Element = Vec<CyclotomicNumber>;

/// Above this dimension associativity is checked on a fixed subset of triples.
const FULL_CHECK_DIM: usize = 64;

#[derive(Debug, Clone)]
pub struct SCAlgebra {
    labels: Vec<String>,
    /// `b_i b_j = sum_k c_ijk b_k`, stored sparsely.
    products: Vec<Vec<Vec<(usize, CyclotomicNumber)>>>,
    unit: Element,
}

impl SCAlgebra {
    /// Checks the unit axioms and associativity.
    pub fn new(labels: Vec<String>, products: Vec<Vec<Vec<(usize, CyclotomicNumber)>>>, unit: Element) -> Result<Self> {
        let n = labels.len();
        if products.len() != n || products.iter().any(|r| r.len() != n) || unit.len() != n {
            return Err(Error::Validation("structure constants do not match the dimension".into()));
        }
        if products.iter().flatten().flatten().any(|&(k, _)| k >= n) {
            return Err(Error::Validation("structure constant index out of range".into()));
        }
        let a = SCAlgebra { labels, products, unit };
        for i in 0..n {
            let b = a.basis(i);
            if a.mul(&a.unit, &b) != b || a.mul(&b, &a.unit) != b {
                return Err(Error::Validation(format!("unit axiom fails at {}", a.labels[i])));
            }
        }
        let idx: Vec<usize> = if n <= FULL_CHECK_DIM {
            (0..n).collect()
        } else {
            (0..FULL_CHECK_DIM).map(|t| t * n / FULL_CHECK_DIM).collect()
        };
        let m = idx.len();
        let ok = par::all_range(m * m, |ij| {
            let (bi, bj) = (a.basis(idx[ij / m]), a.basis(idx[ij % m]));
            let bij = a.mul(&bi, &bj);
            idx.iter().all(|&k| {
                let bk = a.basis(k);
                a.mul(&bij, &bk) == a.mul(&bi, &a.mul(&bj, &bk))
            })
        });
        if !ok {
            return Err(Error::Validation("structure constants are not associative".into()));
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn zero(&self) -> Element {
        vec![CyclotomicNumber::zero(); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut v = self.zero();
        v[i] = CyclotomicNumber::one();
        v
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &[(usize, CyclotomicNumber)] {
        &self.products[i][j]
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in &self.products[i][j] {
                    out[*k] += &(&c * s);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn scale(&self, c: &CyclotomicNumber, x: &Element) -> Element {
        x.iter().map(|a| c * a).collect()
    }

    pub fn is_idempotent(&self, e: &Element) -> bool {
        &self.mul(e, e) == e
    }

    /// A basis of the center.
    #[allow(clippy::needless_range_loop)]
    pub fn center(&self) -> Vec<Element> {
        let n = self.dim();
        // z b_i - b_i z = 0, one row per (i, output coordinate)
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            let mut block = vec![vec![CyclotomicNumber::zero(); n]; n];
            for j in 0..n {
                for (k, c) in &self.products[j][i] {
                    block[*k][j] += c;
                }
                for (k, c) in &self.products[i][j] {
                    block[*k][j] = &block[*k][j] - c;
                }
            }
            rows.extend(block);
        }
        nullspace(&rows, n)
    }
}

/// A normalized 2-cocycle on a finite group with root-of-unity values,
/// indexed by element indices.
#[derive(Debug, Clone)]
pub struct Cocycle2 {
    group: GroupRef,
    values: Vec<Vec<CyclotomicNumber>>,
}

impl Cocycle2 {
    pub fn new(group: GroupRef, values: Vec<Vec<CyclotomicNumber>>) -> Result<Self> {
        let els = group.elements()?;
        let n = els.len();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("cocycle table has the wrong size".into()));
        }
        let id = group.index_of(&group.identity())?;
        if (0..n).any(|x| !values[id][x].is_one() || !values[x][id].is_one()) {
            return Err(Error::Validation("cocycle is not normalized".into()));
        }
        for row in &values {
            for v in row {
                let m = 2 * v.conductor().max(1);
                if v.pow(m).is_one() {
                    continue;
                }
                return Err(Error::Validation(format!("cocycle value {v} is not a root of unity")));
            }
        }
        let prod: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| group.mul_index(a, b)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let ok = par::all_range(n * n, |ab| {
            let (a, b) = (ab / n, ab % n);
            (0..n).all(|c| &values[a][b] * &values[prod[a][b]][c] == &values[b][c] * &values[a][prod[b][c]])
        });
        if !ok {
            return Err(Error::Validation("cocycle identity fails".into()));
        }
        Ok(Cocycle2 { group, values })
    }

    pub fn trivial(group: GroupRef) -> Result<Self> {
        let n = group.elements()?.len();
        Self::new(group, vec![vec![CyclotomicNumber::one(); n]; n])
    }

    pub fn from_fn<F: Fn(&Perm, &Perm) -> CyclotomicNumber>(group: GroupRef, f: F) -> Result<Self> {
        let els = group.elements()?;
        let values = els.iter().map(|a| els.iter().map(|b| f(a, b)).collect()).collect();
        Self::new(group, values)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn value(&self, a: usize, b: usize) -> &CyclotomicNumber {
        &self.values[a][b]
    }
}

fn label(p: &Perm) -> String {
    format!("[{p}]")
}

/// `C_alpha[Omega]`: basis `[w]`, `[w][v] = alpha(w, v)[wv]`.
pub fn twisted_group_algebra(alpha: &Cocycle2) -> Result<SCAlgebra> {
    let g = alpha.group();
    let els = g.elements()?;
    let n = els.len();
    let products = (0..n)
        .map(|a| (0..n).map(|b| Ok(vec![(g.mul_index(a, b)?, alpha.value(a, b).clone())])).collect())
        .collect::<Result<_>>()?;
    let mut unit = vec![CyclotomicNumber::zero(); n];
    unit[g.index_of(&g.identity())?] = CyclotomicNumber::one();
    SCAlgebra::new(els.iter().map(label).collect(), products, unit)
}

/// `C[Omega] ⋊ W` with `[w][x] = [w.x][w]`; basis `[x][w]` at index
/// `x |W| + w` in element order.
#[derive(Debug)]
pub struct SkewGroupAlgebra {
    pub algebra: SCAlgebra,
    pub data: SemidirectGroup,
}

impl SkewGroupAlgebra {
    /// `action[j]` gives the images of the generators of `Omega` under the
    /// `j`-th generator of `W`.
    pub fn new(omega: GroupRef, weyl: GroupRef, action: Vec<Vec<Perm>>) -> Result<Self> {
        if !omega.is_abelian() {
            return Err(Error::Validation("the coefficient group must be abelian".into()));
        }
        let data = SemidirectGroup::new(omega.clone(), weyl.clone(), action)?;
        let oe = omega.elements()?;
        let we = weyl.elements()?;
        let (no, nw) = (oe.len(), we.len());
        let n = no * nw;
        let mut products = vec![vec![Vec::new(); n]; n];
        for x in 0..no {
            for w in 0..nw {
                for y in 0..no {
                    let wy = omega.index_of(&data.act(&we[w], &oe[y])?)?;
                    let xwy = omega.mul_index(x, wy)?;
                    for v in 0..nw {
                        let wv = weyl.mul_index(w, v)?;
                        products[x * nw + w][y * nw + v] = vec![(xwy * nw + wv, CyclotomicNumber::one())];
                    }
                }
            }
        }
        let labels = oe.iter().flat_map(|x| we.iter().map(move |w| format!("[{x}][{w}]"))).collect();
        let mut unit = vec![CyclotomicNumber::zero(); n];
        unit[omega.index_of(&omega.identity())? * nw + weyl.index_of(&weyl.identity())?] = CyclotomicNumber::one();
        let algebra = SCAlgebra::new(labels, products, unit)?;
        Ok(SkewGroupAlgebra { algebra, data })
    }

    pub fn omega(&self) -> &GroupRef {
        self.data.normal()
    }

    pub fn weyl(&self) -> &GroupRef {
        self.data.acting()
    }

    /// `sum_x c_x [x][1]`.
    pub fn from_omega(&self, coeffs: &[CyclotomicNumber]) -> Result<Element> {
        let nw = self.weyl().order() as usize;
        let one = self.weyl().index_of(&self.weyl().identity())?;
        let mut v = self.algebra.zero();
        for (x, c) in coeffs.iter().enumerate() {
            v[x * nw + one] = c.clone();
        }
        Ok(v)
    }

    /// `[1][w]`.
    pub fn weyl_element(&self, w: &Perm) -> Result<Element> {
        let nw = self.weyl().order() as usize;
        let id = self.omega().index_of(&self.omega().identity())?;
        Ok(self.algebra.basis(id * nw + self.weyl().index_of(w)?))
    }
}

/// `e_eta = |Omega|^-1 sum_x eta(x)^-1 [x]` for every `eta` in `Irr(Omega)`,
/// as coordinates over the elements of `Omega`.
pub fn central_idempotents_abelian(omega: &GroupRef) -> Result<(CharTable, Vec<Vec<CyclotomicNumber>>)> {
    if !omega.is_abelian() {
        return Err(Error::Validation("the group must be abelian".into()));
    }
    let table = CharTable::compute(omega)?;
    let els = omega.elements()?;
    let n = BigInt::from(els.len());
    let idems = table
        .rows()
        .iter()
        .map(|eta| els.iter().map(|x| Ok(eta.at(x)?.conj().div_int(&n))).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok((table, idems))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;
    use std::sync::Arc;

    fn cyc(deg: usize, gens: &[&str]) -> GroupRef {
        Arc::new(PermGroup::from_cycles(deg, gens).unwrap())
    }

    #[test]
    fn group_algebra_of_c2() {
        let c2 = cyc(2, &["(1 2)"]);
        let a = twisted_group_algebra(&Cocycle2::trivial(c2).unwrap()).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.center().len(), 2);
    }

    #[test]
    fn bad_cocycle_is_rejected() {
        let c2 = cyc(2, &["(1 2)"]);
        let minus = |a: &Perm, b: &Perm| {
            if !a.is_identity() && !b.is_identity() {
                CyclotomicNumber::from_int(2)
            } else {
                CyclotomicNumber::one()
            }
        };
        assert!(Cocycle2::from_fn(c2, minus).is_err());
    }

    #[test]
    fn unit_axiom_is_checked() {
        let one = CyclotomicNumber::one;
        // C[x]/(x^2 - x - 1), then with the unit axiom broken
        let products =
            vec![vec![vec![(0, one())], vec![(1, one())]], vec![vec![(1, one())], vec![(0, one()), (1, one())]]];
        let labels = || vec!["a".to_string(), "b".to_string()];
        let unit = vec![one(), CyclotomicNumber::zero()];
        assert!(SCAlgebra::new(labels(), products.clone(), unit.clone()).is_ok());
        let mut bad = products;
        bad[0][1] = vec![(0, one())];
        assert!(SCAlgebra::new(labels(), bad, unit).is_err());
    }
}
