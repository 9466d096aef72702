//! Harish-Chandra induction and restriction for user-supplied parabolic data:
//! cuspidality, the series partition, relative Weyl groups, q-parameters and
//! restriction to an identity component.

mod datum;

pub use datum::{BNDatum, BNSpec, Parabolic, ParabolicSpec};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::chartab::{CharTable, ClassFunction, Kind};
use crate::error::{Error, Result};
use crate::par;
use crate::perm::{GroupRef, Perm, PermGroup};

/// `tau` on `l` moved to `l' = g^-1 l g`: `(g.tau)(x) = tau(g x g^-1)`.
pub fn transport_by(tau: &ClassFunction, g: &Perm, target: &GroupRef) -> Result<ClassFunction> {
    let gi = g.inverse();
    let cls = target.classes()?;
    let values =
        (0..cls.len()).map(|k| Ok(tau.at(&target.class_rep(k)?.conjugate_by(&gi))?.clone())).collect::<Result<_>>()?;
    ClassFunction::new(target.clone(), values, tau.kind())
}

/// `W_tau` inside `N_G(L)` (or `(N_G(L) ∩ N) L` when a BN-pair `N` is given):
/// the preimage of the stabilizer, and `|W_tau|`.
pub fn relative_weyl_in(
    g: &PermGroup,
    l: &GroupRef,
    bn_n: Option<&PermGroup>,
    tau: &ClassFunction,
) -> Result<(GroupRef, u128, u128)> {
    let nl = g.normalizer(l)?;
    let ambient = match bn_n {
        Some(n) => {
            let mut gens = nl.generate_from_elements(|x| n.contains(x))?;
            gens.extend(l.generators().iter().cloned());
            nl.subgroup(gens)?
        }
        None => nl,
    };
    let stab_gens =
        ambient.generate_from_elements(|x| tau.conjugate(x).map(|c| c.values() == tau.values()).unwrap_or(false))?;
    let stab = ambient.subgroup(stab_gens)?;
    let w = ambient.order() / l.order();
    let wt = stab.order() / l.order();
    Ok((stab.into_ref(), wt, w))
}

#[derive(Debug, Clone)]
pub struct RelativeWeyl {
    /// Preimage of `W_tau` in the normalizer.
    pub stabilizer: GroupRef,
    pub order: u128,
    /// Order of the full relative Weyl group `W` of `L`.
    pub weyl_order: u128,
    /// `<R(tau), R(tau)>`.
    pub end_dim: i64,
}

impl RelativeWeyl {
    /// A mismatch hints at a nontrivial cocycle or a convention problem in
    /// the supplied data; it is reported, not raised.
    pub fn warning(&self) -> bool {
        self.order != self.end_dim as u128
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QParameter {
    Value(BigRational),
    Undefined,
}

impl std::fmt::Display for QParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QParameter::Value(v) => write!(f, "{v}"),
            QParameter::Undefined => write!(f, "undefined"),
        }
    }
}

/// Ratio of the larger to the smaller degree when `r` has two distinct
/// constituents of multiplicity one, 1 when irreducible, else undefined.
pub fn q_parameter(r: &ClassFunction, table: &CharTable) -> Result<QParameter> {
    let mults = match table.decompose_int(r) {
        Ok(m) => m,
        Err(Error::Invariant(_)) => return Ok(QParameter::Undefined),
        Err(e) => return Err(e),
    };
    if mults.iter().any(|&m| !(0..=1).contains(&m)) {
        return Ok(QParameter::Undefined);
    }
    let degs: Vec<i64> = mults.iter().zip(table.degrees()).filter(|(&m, _)| m == 1).map(|(_, d)| d).collect();
    Ok(match degs[..] {
        [_] => QParameter::Value(BigRational::from_integer(1.into())),
        [a, b] => QParameter::Value(BigRational::new(BigInt::from(a.max(b)), BigInt::from(a.min(b)))),
        _ => QParameter::Undefined,
    })
}

/// One Harish-Chandra series.
#[derive(Debug, Clone)]
pub struct Series {
    /// The representative cuspidal pair: record index and `Irr(L)` index.
    pub record: usize,
    pub tau: usize,
    /// All cuspidal pairs among the records that are `G`-conjugate to it.
    pub pairs: Vec<(usize, usize)>,
    /// `(chi, multiplicity in R(tau))`.
    pub constituents: Vec<(usize, i64)>,
    pub weyl: RelativeWeyl,
}

#[derive(Debug, Clone)]
pub struct HcSeriesMap {
    pub series: Vec<Series>,
    /// Series index for each irreducible of `G`.
    pub assignment: Vec<usize>,
}

/// A datum with the character tables of `G` and of every Levi.
#[derive(Debug, Clone)]
pub struct HcContext {
    pub datum: BNDatum,
    pub table: CharTable,
    pub levi_tables: Vec<CharTable>,
}

impl HcContext {
    pub fn new(datum: BNDatum) -> Result<Self> {
        let table = CharTable::compute(&datum.group)?;
        let levi_tables = datum.records.iter().map(|r| CharTable::compute(&r.l)).collect::<Result<_>>()?;
        Ok(HcContext { datum, table, levi_tables })
    }

    pub fn group(&self) -> &GroupRef {
        &self.datum.group
    }

    pub fn hc_induce(&self, record: &str, tau: &ClassFunction) -> Result<ClassFunction> {
        self.datum.record(record)?.induce(&self.datum.group, tau)
    }

    pub fn hc_restrict(&self, record: &str, rho: &ClassFunction) -> Result<ClassFunction> {
        self.datum.record(record)?.restrict(rho)
    }

    /// `*R_L(rho) = 0` for every proper record.
    pub fn is_cuspidal(&self, rho: &ClassFunction) -> Result<bool> {
        for r in self.datum.records.iter().filter(|r| r.is_proper()) {
            if !r.restrict(rho)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Cuspidal irreducibles of each Levi, tested against the records whose
    /// Levi lies properly inside it.
    pub fn cuspidal_pairs(&self) -> Result<Vec<(usize, usize)>> {
        let recs = &self.datum.records;
        let mut out = Vec::new();
        for (i, r) in recs.iter().enumerate() {
            let subs: Vec<Parabolic> = recs
                .iter()
                .filter(|s| s.l.order() < r.l.order() && s.l.is_subgroup_of(&r.l))
                .map(|s| s.within(&r.l))
                .collect::<Result<_>>()?;
            for (t, tau) in self.levi_tables[i].rows().iter().enumerate() {
                let mut cusp = true;
                for s in &subs {
                    if !s.restrict(tau)?.is_zero() {
                        cusp = false;
                        break;
                    }
                }
                if cusp {
                    out.push((i, t));
                }
            }
        }
        Ok(out)
    }

    /// Indices `(r', t')` of the conjugates `g.(r, t)` over all `g` in `G`.
    fn conjugate_pairs(&self, r: usize, t: usize) -> Result<Vec<(usize, usize)>> {
        let recs = &self.datum.records;
        let tau = self.levi_tables[r].row(t)?;
        let mut out = Vec::new();
        for g in self.datum.group.elements()? {
            let lg = recs[r].l.conjugate(g)?;
            for (s, rec) in recs.iter().enumerate() {
                if rec.l.order() != lg.order() || !lg.is_subgroup_of(&rec.l) {
                    continue;
                }
                let moved = transport_by(tau, g, &rec.l)?;
                let k = self.levi_tables[s]
                    .index_of(&moved)
                    .ok_or_else(|| Error::Invariant("conjugate of an irreducible is not in the table".into()))?;
                if !out.contains(&(s, k)) {
                    out.push((s, k));
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn relative_weyl(&self, record: &str, tau: &ClassFunction) -> Result<RelativeWeyl> {
        let rec = self.datum.record(record)?;
        let (stabilizer, order, weyl_order) =
            relative_weyl_in(&self.datum.group, &rec.l, self.datum.bn_n.as_deref(), tau)?;
        let r = rec.induce(&self.datum.group, tau)?;
        let end_dim = r.inner_int(&r)?;
        Ok(RelativeWeyl { stabilizer, order, weyl_order, end_dim })
    }

    /// Partitions `Irr(G)` into Harish-Chandra series.
    pub fn partition(&self) -> Result<HcSeriesMap> {
        let pairs = self.cuspidal_pairs()?;
        let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
        for &(r, t) in &pairs {
            if classes.iter().any(|c| c.contains(&(r, t))) {
                continue;
            }
            let conj = self.conjugate_pairs(r, t)?;
            classes.push(conj.into_iter().filter(|p| pairs.contains(p)).collect());
        }
        let built = par::map_slice(&classes, |cls| -> Result<(ClassFunction, Series)> {
            let (r, t) = cls[0];
            let rec = &self.datum.records[r];
            let tau = self.levi_tables[r].row(t)?;
            let rg = rec.induce(&self.datum.group, tau)?;
            let mults = self.table.decompose_int(&rg)?;
            let constituents = mults.iter().enumerate().filter(|(_, &m)| m != 0).map(|(i, &m)| (i, m)).collect();
            let weyl = self.relative_weyl(&rec.name, tau)?;
            Ok((rg, Series { record: r, tau: t, pairs: cls.clone(), constituents, weyl }))
        });
        let (chars, series): (Vec<ClassFunction>, Vec<Series>) =
            built.into_iter().collect::<Result<Vec<_>>>()?.into_iter().unzip();
        let n = chars.len();
        let overlaps = par::map_range(n * n, |ij| {
            let (i, j) = (ij / n, ij % n);
            if i < j {
                chars[i].inner_int(&chars[j]).map(|v| v != 0)
            } else {
                Ok(false)
            }
        });
        for (ij, o) in overlaps.into_iter().enumerate() {
            if o? {
                return Err(Error::Invariant(format!("series {} and {} are not disjoint", ij / n, ij % n)));
            }
        }
        let mut assignment = vec![usize::MAX; self.table.len()];
        for (s, ser) in series.iter().enumerate() {
            for &(chi, _) in &ser.constituents {
                if assignment[chi] != usize::MAX {
                    return Err(Error::Invariant(format!("irreducible {chi} lies in two series")));
                }
                assignment[chi] = s;
            }
        }
        if let Some(chi) = assignment.iter().position(|&a| a == usize::MAX) {
            return Err(Error::Invariant(format!("irreducible {chi} lies in no series; the records miss a Levi")));
        }
        Ok(HcSeriesMap { series, assignment })
    }

    pub fn series_json(&self, map: &HcSeriesMap) -> Value {
        let recs = &self.datum.records;
        let degrees = self.table.degrees();
        json!({
            "group": self.datum.name,
            "series": map.series.iter().map(|s| json!({
                "record": recs[s.record].name,
                "tau": s.tau,
                "tau_degree": self.levi_tables[s.record].degrees()[s.tau],
                "conjugate_pairs": s.pairs.iter().map(|&(r, t)| json!([recs[r].name, t])).collect::<Vec<_>>(),
                "constituents": s.constituents.iter().map(|&(c, m)| json!({"chi": c, "degree": degrees[c], "multiplicity": m})).collect::<Vec<_>>(),
                "weyl_order": s.weyl.order.to_string(),
                "end_dim": s.weyl.end_dim,
                "cocycle_warning": s.weyl.warning(),
            })).collect::<Vec<_>>(),
            "assignment": map.assignment,
        })
    }

    /// Checks `Res_{G°} R_{L⊂P}(phi) = sum_a a.(R_{L°⊂P°}(Res_{L°} phi))` over
    /// `a` in `G/(L G°)`, the adjoint identity for every irreducible of `G`,
    /// and that each `R_{L°⊂P°}(tau°)` for a constituent `tau°` of
    /// `Res_{L°} phi` sits inside the left side.
    pub fn disconnected_restriction_check(&self, record: &str, phi: &ClassFunction) -> Result<RestrictionCheck> {
        let g = &self.datum.group;
        let g0 = self
            .datum
            .identity_component
            .clone()
            .ok_or_else(|| Error::Hypothesis("the datum has no identity component".into()))?;
        let rec = self.datum.record(record)?;
        let rec0 = rec.connected_part(&g0)?;
        let lhs = rec.induce(g, phi)?.restrict(&g0)?;
        let mut gens: Vec<Perm> = rec.l.generators().to_vec();
        gens.extend(g0.generators().iter().cloned());
        let lg0 = g.subgroup(gens)?;
        let (_, cosets) = g.right_cosets(&lg0)?;
        let phi0 = phi.restrict(&rec0.l)?;
        let inner = rec0.induce(&g0, &phi0)?;
        let mut rhs = ClassFunction::zero(g0.clone())?;
        for c in &cosets {
            let a = g.element(c[0])?;
            rhs = rhs.add(&inner.conjugate(&a.inverse())?)?;
        }
        let restriction_holds = lhs.values() == rhs.values();

        let table0 = CharTable::compute(&g0)?;
        let mut adjoint_holds = true;
        for rho in self.table.rows() {
            let a = rec.restrict(rho)?.restrict(&rec0.l)?;
            let b = rec0.restrict(&rho.restrict(&g0)?)?;
            adjoint_holds &= a.values() == b.values();
        }

        let mut summand_holds = true;
        if phi.kind() != Kind::Virtual {
            let tl0 = CharTable::compute(&rec0.l)?;
            for (k, m) in tl0.decompose_int(&phi0)?.into_iter().enumerate() {
                if m > 0 {
                    let part = rec0.induce(&g0, tl0.row(k)?)?;
                    let diff = table0.decompose_int(&lhs.sub(&part)?)?;
                    summand_holds &= diff.iter().all(|&d| d >= 0);
                }
            }
        }
        Ok(RestrictionCheck { terms: cosets.len(), lhs, rhs, restriction_holds, adjoint_holds, summand_holds })
    }
}

#[derive(Debug, Clone)]
pub struct RestrictionCheck {
    /// `|G/(L G°)|`.
    pub terms: usize,
    pub lhs: ClassFunction,
    pub rhs: ClassFunction,
    pub restriction_holds: bool,
    pub adjoint_holds: bool,
    pub summand_holds: bool,
}

impl RestrictionCheck {
    pub fn holds(&self) -> bool {
        self.restriction_holds && self.adjoint_holds && self.summand_holds
    }
}
