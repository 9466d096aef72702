//! Corners `eAe`, the `T_w -> e_eta[w]` comparison and the dimension census
//! over all characters of `Omega`.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{central_idempotents_abelian, Element, SCAlgebra, SkewGroupAlgebra};
use crate::arith::linalg::{rank, rref};
use crate::arith::CyclotomicNumber;
use crate::chartab::{CharTable, ClassFunction, Kind};
use crate::clifford::CliffordPair;
use crate::error::{Error, Result};
use crate::hc::{relative_weyl_in, BNDatum};
use crate::perm::{coset_quotient, GroupRef, Perm, PermGroup};

/// `eAe` with a row-reduced basis expressed in the coordinates of `A`.
#[derive(Debug, Clone)]
pub struct Corner {
    pub algebra: SCAlgebra,
    pub basis: Vec<Element>,
    pivots: Vec<usize>,
}

impl Corner {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` in the corner basis, or `None` if `x` is outside.
    pub fn coordinates(&self, x: &Element) -> Option<Vec<CyclotomicNumber>> {
        let c: Vec<CyclotomicNumber> = self.pivots.iter().map(|&p| x[p].clone()).collect();
        let mut back = vec![CyclotomicNumber::zero(); x.len()];
        for (ci, b) in c.iter().zip(&self.basis) {
            for (k, bk) in b.iter().enumerate() {
                if !bk.is_zero() {
                    back[k] += &(ci * bk);
                }
            }
        }
        (&back == x).then_some(c)
    }
}

#[allow(clippy::needless_range_loop)]
pub fn corner(a: &SCAlgebra, e: &Element) -> Result<Corner> {
    if e.len() != a.dim() {
        return Err(Error::Validation("idempotent has the wrong length".into()));
    }
    if !a.is_idempotent(e) {
        return Err(Error::Validation("element is not idempotent".into()));
    }
    let mut rows: Vec<Element> = (0..a.dim()).map(|i| a.mul(&a.mul(e, &a.basis(i)), e)).collect();
    let pivots = rref(&mut rows);
    rows.truncate(pivots.len());
    let mut c = Corner { algebra: a.clone(), basis: rows, pivots };
    let n = c.dim();
    let mut products = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = a.mul(&c.basis[i], &c.basis[j]);
            let coords = c
                .coordinates(&p)
                .ok_or_else(|| Error::Invariant("corner is not closed under multiplication".into()))?;
            products[i][j] = coords.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        }
    }
    let unit = c.coordinates(e).ok_or_else(|| Error::Invariant("idempotent is not in its own corner".into()))?;
    let labels = c.pivots.iter().map(|&p| format!("e{}e", a.labels()[p])).collect();
    c.algebra = SCAlgebra::new(labels, products, unit)?;
    Ok(c)
}

/// Comparison of `C[Stab_W(eta)]` with the corner at `e_eta`.
#[derive(Debug, Clone)]
pub struct IsomorphismReport {
    /// 1-based index into `Irr(Omega)`.
    pub eta: usize,
    pub stabilizer: Vec<Perm>,
    pub corner_dim: usize,
    /// Every `e_eta[w]` lies in the corner.
    pub in_corner: bool,
    pub independent: bool,
    pub spans: bool,
    /// `e_eta[w] e_eta[w'] = e_eta[ww']` for all pairs.
    pub group_law: bool,
    /// Products are scalar multiples of `e_eta[ww']` with some scalar not 1.
    pub multiplier: bool,
}

impl IsomorphismReport {
    pub fn holds(&self) -> bool {
        self.in_corner && self.independent && self.spans && self.group_law
    }

    pub fn to_json(&self) -> Value {
        json!({
            "eta": self.eta,
            "stabilizer": self.stabilizer.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "stabilizer_order": self.stabilizer.len(),
            "corner_dim": self.corner_dim,
            "in_corner": self.in_corner,
            "independent": self.independent,
            "spans": self.spans,
            "group_law": self.group_law,
            "multiplier": self.multiplier,
            "isomorphism": self.holds(),
        })
    }
}

/// `Irr(Omega)` with the `W`-action on it: `perm[w][i]` is the index of `w.eta_i`,
/// `(w.eta)(x) = eta(w^-1.x)`.
fn dual_action(s: &SkewGroupAlgebra, table: &CharTable) -> Result<Vec<Vec<usize>>> {
    let omega = s.omega();
    let cls = omega.classes()?;
    s.weyl()
        .elements()?
        .iter()
        .map(|w| {
            let winv = w.inverse();
            table
                .rows()
                .iter()
                .map(|eta| {
                    let values = (0..cls.len())
                        .map(|k| Ok(eta.at(&s.data.act(&winv, omega.class_rep(k)?)?)?.clone()))
                        .collect::<Result<_>>()?;
                    let moved = ClassFunction::new(omega.clone(), values, Kind::Character)?;
                    table.index_of(&moved).ok_or_else(|| Error::Invariant("W does not permute Irr(Omega)".into()))
                })
                .collect()
        })
        .collect()
}

/// Per-character corners of a skew group algebra and the dimension totals.
#[derive(Debug, Clone)]
pub struct CornerCensus {
    pub reports: Vec<IsomorphismReport>,
    pub dims: Vec<usize>,
    pub sum: usize,
    pub algebra_dim: usize,
    /// `|Omega||W|`.
    pub omega_weyl: u128,
    pub orbits: usize,
    /// `|W|` times the number of `W`-orbits on `Irr(Omega)`.
    pub weyl_orbits: u128,
}

impl CornerCensus {
    pub fn dims_match_stabilizers(&self) -> bool {
        self.reports.iter().all(|r| r.corner_dim == r.stabilizer.len())
    }

    pub fn isomorphisms_hold(&self) -> bool {
        self.reports.iter().all(IsomorphismReport::holds)
    }

    pub fn sum_is_omega_weyl(&self) -> bool {
        self.sum as u128 == self.omega_weyl
    }

    pub fn to_json(&self) -> Value {
        json!({
            "corners": self.reports.iter().map(IsomorphismReport::to_json).collect::<Vec<_>>(),
            "sum_of_corner_dims": self.sum,
            "algebra_dim": self.algebra_dim,
            "omega_times_weyl": self.omega_weyl.to_string(),
            "orbits_on_irr_omega": self.orbits,
            "weyl_times_orbits": self.weyl_orbits.to_string(),
        })
    }
}

fn report_for(s: &SkewGroupAlgebra, eta: usize, e: &Element, stab: Vec<Perm>, c: &Corner) -> Result<IsomorphismReport> {
    let a = &s.algebra;
    let image = |w: &Perm| -> Result<Element> { Ok(a.mul(e, &s.weyl_element(w)?)) };
    let images: Vec<Element> = stab.iter().map(image).collect::<Result<_>>()?;
    let in_corner = images.iter().all(|x| c.coordinates(x).is_some());
    let r = rank(&images);
    let mut group_law = true;
    let mut scalar = true;
    let mut multiplier = false;
    for (w, x) in stab.iter().zip(&images) {
        for (v, y) in stab.iter().zip(&images) {
            let prod = a.mul(x, y);
            let target = image(&(w * v))?;
            if prod == target {
                continue;
            }
            group_law = false;
            // prod = lambda * target for a single scalar lambda?
            let Some(k) = target.iter().position(|t| !t.is_zero()) else {
                scalar = false;
                continue;
            };
            let lambda = &prod[k] * &target[k].inv().expect("nonzero");
            if a.scale(&lambda, &target) == prod {
                multiplier = true;
            } else {
                scalar = false;
            }
        }
    }
    Ok(IsomorphismReport {
        eta: eta + 1,
        corner_dim: c.dim(),
        in_corner,
        independent: r == stab.len(),
        spans: in_corner && r == c.dim(),
        group_law,
        multiplier: multiplier && scalar,
        stabilizer: stab,
    })
}

/// The corner at `e_eta` (0-based `eta`) together with its isomorphism report.
pub fn eta_corner(s: &SkewGroupAlgebra, eta: usize) -> Result<(Corner, IsomorphismReport)> {
    let (table, idems) = central_idempotents_abelian(s.omega())?;
    if eta >= idems.len() {
        return Err(Error::OutOfRange(format!("character index {} of {}", eta + 1, idems.len())));
    }
    let act = dual_action(s, &table)?;
    let weyl = s.weyl().elements()?;
    let stab: Vec<Perm> = weyl.iter().zip(&act).filter(|(_, p)| p[eta] == eta).map(|(w, _)| w.clone()).collect();
    let e = s.from_omega(&idems[eta])?;
    let c = corner(&s.algebra, &e)?;
    let rep = report_for(s, eta, &e, stab, &c)?;
    Ok((c, rep))
}

pub fn corner_census(s: &SkewGroupAlgebra) -> Result<CornerCensus> {
    let (table, _) = central_idempotents_abelian(s.omega())?;
    let act = dual_action(s, &table)?;
    let mut seen = vec![false; table.len()];
    let mut orbits = 0;
    for i in 0..table.len() {
        if !seen[i] {
            orbits += 1;
            for p in &act {
                seen[p[i]] = true;
            }
        }
    }
    let reports: Vec<IsomorphismReport> =
        (0..table.len()).map(|eta| Ok(eta_corner(s, eta)?.1)).collect::<Result<_>>()?;
    let dims: Vec<usize> = reports.iter().map(|r| r.corner_dim).collect();
    let nw = s.weyl().order();
    Ok(CornerCensus {
        sum: dims.iter().sum(),
        dims,
        reports,
        algebra_dim: s.algebra.dim(),
        omega_weyl: s.omega().order() * nw,
        orbits,
        weyl_orbits: nw * orbits as u128,
    })
}

/// `C1`, `Cn` (n ≤ 12) and `CmxCn` as permutation groups on disjoint blocks.
pub fn named_abelian(name: &str) -> Result<GroupRef> {
    let cyclic_order = |s: &str| -> Result<usize> {
        s.strip_prefix('C')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|n| (1..=12).contains(n))
            .ok_or_else(|| Error::Parse(format!("unknown abelian group {name:?}; use Cn or CmxCn with n <= 12")))
    };
    let orders: Vec<usize> = name.split('x').map(cyclic_order).collect::<Result<_>>()?;
    let deg = orders.iter().sum::<usize>().max(1);
    let mut gens = Vec::new();
    let mut start = 0;
    for &n in &orders {
        if n > 1 {
            let mut images: Vec<u32> = (0..deg as u32).collect();
            for k in 0..n {
                images[start + k] = (start + (k + 1) % n) as u32;
            }
            gens.push(Perm::from_images(images)?);
        }
        start += n;
    }
    Ok(Arc::new(PermGroup::new(deg, gens)?))
}

/// The skew group algebra for a named `Omega`, `W` in `{C1, C2}` and an
/// action in `{trivial, invert, swap}`.
pub fn named_skew(omega: &str, weyl: &str, action: &str) -> Result<SkewGroupAlgebra> {
    let o = named_abelian(omega)?;
    let og = o.generators().to_vec();
    let (w, action) = match weyl {
        "C1" => {
            if action != "trivial" {
                return Err(Error::Validation(format!("W = C1 admits only the trivial action, not {action:?}")));
            }
            (Arc::new(PermGroup::trivial(1)), Vec::new())
        }
        "C2" => {
            let images = match action {
                "trivial" => og.clone(),
                "invert" => og.iter().map(Perm::inverse).collect(),
                "swap" if og.len() == 2 => vec![og[1].clone(), og[0].clone()],
                "swap" => return Err(Error::Validation("swap needs exactly two cyclic factors".into())),
                other => return Err(Error::Parse(format!("unknown action {other:?}; use trivial, invert or swap"))),
            };
            (Arc::new(PermGroup::from_cycles(2, &["(1 2)"])?), vec![images])
        }
        other => return Err(Error::Parse(format!("unknown W {other:?}; use C1 or C2"))),
    };
    SkewGroupAlgebra::new(o, w, action)
}

/// `dim End_G(R(Ind_{L°}^L theta°))` against `|Omega_theta°| |W_theta°|` and
/// the dimension of the skew group algebra built from the two groups.
#[derive(Debug, Clone)]
pub struct DisconnectedCornerCheck {
    pub record: String,
    /// 0-based index into `Irr(L°)`.
    pub theta: usize,
    pub end_dim: i64,
    pub omega_order: u128,
    pub weyl_order: u128,
    pub algebra_dim: usize,
}

impl DisconnectedCornerCheck {
    pub fn holds(&self) -> bool {
        let prod = self.omega_order * self.weyl_order;
        self.end_dim as u128 == prod && self.algebra_dim as u128 == prod
    }
}

fn lift(m: &GroupRef, q: &crate::perm::Quotient, target: &Perm) -> Result<Perm> {
    m.elements()?
        .iter()
        .find(|x| q.projection.image(x).map(|y| &y == target).unwrap_or(false))
        .cloned()
        .ok_or_else(|| Error::Invariant("quotient element has no preimage".into()))
}

pub fn disconnected_corner_check(datum: &BNDatum, record: &str, theta: usize) -> Result<DisconnectedCornerCheck> {
    let g0 = datum
        .identity_component
        .clone()
        .ok_or_else(|| Error::Hypothesis("the datum has no identity component".into()))?;
    let rec = datum.record(record)?;
    let rec0 = rec.connected_part(&g0)?;
    let (l, l0) = (rec.l.clone(), rec0.l.clone());
    let pair = CliffordPair::new(l.clone(), l0.clone())?;
    let theta0 = pair.table_n.row(theta)?.clone();
    let m = rec.induce(&datum.group, &theta0.induce(&l)?)?;
    let end_dim = m.inner_int(&m)?;

    let (_, inertia) = pair.orbit_and_inertia(theta)?;
    let inertia: GroupRef = Arc::new(inertia);
    let q_omega = coset_quotient(&inertia, &l0)?;

    let conn = datum.connected_datum()?;
    let (stab, _, _) = relative_weyl_in(&conn.group, &l0, conn.bn_n.as_deref(), &theta0)?;
    let q_weyl = coset_quotient(&stab, &l0)?;

    // W acts on Omega by conjugation x y x^-1 through lifts
    let omega_lifts: Vec<Perm> =
        q_omega.group.generators().iter().map(|y| lift(&inertia, &q_omega, y)).collect::<Result<_>>()?;
    let mut action = Vec::new();
    for wbar in q_weyl.group.generators() {
        let x = lift(&stab, &q_weyl, wbar)?;
        let images = omega_lifts
            .iter()
            .map(|y| {
                let c = &(&x * y) * &x.inverse();
                if !inertia.contains(&c) {
                    return Err(Error::Hypothesis("relative Weyl group does not normalize the inertia group".into()));
                }
                q_omega.projection.image(&c)
            })
            .collect::<Result<_>>()?;
        action.push(images);
    }
    let s = SkewGroupAlgebra::new(q_omega.group.clone(), q_weyl.group.clone(), action)?;
    Ok(DisconnectedCornerCheck {
        record: record.to_string(),
        theta,
        end_dim,
        omega_order: q_omega.group.order(),
        weyl_order: q_weyl.group.order(),
        algebra_dim: s.algebra.dim(),
    })
}
