//! Parabolic records `P = L ⋉ U` and their JSON form.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::CyclotomicNumber;
use crate::chartab::{ClassFunction, Kind};
use crate::error::{Error, Result};
use crate::perm::{parse_perms, GroupRef, GroupSpec, Limits, Perm, PermGroup};

fn intersect(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let gens = a.generate_from_elements(|x| b.contains(x))?;
    a.subgroup(gens)
}

/// A parabolic subgroup with a Levi decomposition inside an ambient group.
#[derive(Debug, Clone)]
pub struct Parabolic {
    pub name: String,
    pub p: GroupRef,
    pub l: GroupRef,
    pub u: GroupRef,
    ambient_order: u128,
}

impl Parabolic {
    /// Checks `L, U ≤ P ≤ G`, `U ◁ P`, `L ∩ U = 1` and `|P| = |L||U|`.
    pub fn new(name: &str, ambient: &PermGroup, p: GroupRef, l: GroupRef, u: GroupRef) -> Result<Self> {
        let bad = |what: &str| Err(Error::Validation(format!("record {name}: {what}")));
        if !p.is_subgroup_of(ambient) {
            return bad("P is not a subgroup of G");
        }
        if !l.is_subgroup_of(&p) || !u.is_subgroup_of(&p) {
            return bad("L and U must lie in P");
        }
        if !u.is_normal_in(&p) {
            return bad("U is not normal in P");
        }
        if l.order() * u.order() != p.order() {
            return bad("|P| != |L||U|");
        }
        if l.elements()?.iter().any(|x| !x.is_identity() && u.contains(x)) {
            return bad("L and U intersect nontrivially");
        }
        Ok(Parabolic { name: name.to_string(), p, l, u, ambient_order: ambient.order() })
    }

    /// False for the improper record `P = G`.
    pub fn is_proper(&self) -> bool {
        self.p.order() < self.ambient_order
    }

    /// The `l` in `L` with `x in lU`.
    pub fn levi_part(&self, x: &Perm) -> Result<Perm> {
        self.l
            .elements()?
            .iter()
            .find(|l| self.u.contains(&(&l.inverse() * x)))
            .cloned()
            .ok_or_else(|| Error::Validation(format!("{x} is not in P")))
    }

    /// Inflation along `P -> P/U = L`.
    pub fn inflate(&self, tau: &ClassFunction) -> Result<ClassFunction> {
        if !tau.group().same_group(&self.l) {
            return Err(Error::GroupMismatch(format!("class function is not on the Levi of {}", self.name)));
        }
        let cls = self.p.classes()?;
        let values = (0..cls.len())
            .map(|k| Ok(tau.at(&self.levi_part(self.p.class_rep(k)?)?)?.clone()))
            .collect::<Result<_>>()?;
        ClassFunction::new(self.p.clone(), values, tau.kind())
    }

    /// `R_{L⊂P}(tau) = Ind_P^G Inf tau`.
    pub fn induce(&self, g: &GroupRef, tau: &ClassFunction) -> Result<ClassFunction> {
        let r = self.inflate(tau)?.induce(g)?;
        Ok(if tau.kind() == Kind::Virtual { r } else { r.with_kind(Kind::Character) })
    }

    /// `*R_{L⊂P}(rho)(l) = |U|^-1 sum_u rho(lu)`.
    pub fn restrict(&self, rho: &ClassFunction) -> Result<ClassFunction> {
        if !self.p.is_subgroup_of(rho.group()) {
            return Err(Error::GroupMismatch(format!("P of {} is not in the class function's group", self.name)));
        }
        let us = self.u.elements()?;
        let cls = self.l.classes()?;
        let inv = BigRational::new(BigInt::from(1), BigInt::from(self.u.order()));
        let values = (0..cls.len())
            .map(|k| {
                let l = self.l.class_rep(k)?;
                let mut acc = CyclotomicNumber::zero();
                for u in us {
                    acc += rho.at(&(l * u))?;
                }
                Ok(&acc * &CyclotomicNumber::from_rational(&inv))
            })
            .collect::<Result<_>>()?;
        let kind = if rho.kind() == Kind::Virtual { Kind::Virtual } else { Kind::Character };
        ClassFunction::new(self.l.clone(), values, kind)
    }

    /// The record `(P ∩ M, L, U ∩ M)` inside a group `M ⊇ L`.
    pub fn within(&self, m: &GroupRef) -> Result<Parabolic> {
        if !self.l.is_subgroup_of(m) {
            return Err(Error::Validation(format!("Levi of {} is not inside the given group", self.name)));
        }
        let p = Arc::new(intersect(&self.p, m)?);
        let u = Arc::new(intersect(&self.u, m)?);
        Parabolic::new(&self.name, m, p, self.l.clone(), u)
    }

    /// `(P ∩ G°, L ∩ G°, U)`; needs `U ⊆ G°`.
    pub fn connected_part(&self, g0: &GroupRef) -> Result<Parabolic> {
        if !self.u.is_subgroup_of(g0) {
            return Err(Error::Hypothesis(format!("U of {} is not contained in G°", self.name)));
        }
        let p = Arc::new(intersect(&self.p, g0)?);
        let l = Arc::new(intersect(&self.l, g0)?);
        Parabolic::new(&self.name, g0, p, l, self.u.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParabolicSpec {
    pub name: String,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    #[serde(rename = "L")]
    pub l: Vec<String>,
    #[serde(rename = "U")]
    pub u: Vec<String>,
}

/// `{"group": ..., "N": [...], "identity_component": [...], "parabolics": [...]}`;
/// `N` and `identity_component` are optional.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BNSpec {
    pub group: GroupSpec,
    #[serde(rename = "N", default)]
    pub n: Option<Vec<String>>,
    #[serde(default)]
    pub identity_component: Option<Vec<String>>,
    pub parabolics: Vec<ParabolicSpec>,
}

/// A group with parabolic records; the improper record `G` is always present.
#[derive(Debug, Clone)]
pub struct BNDatum {
    pub name: String,
    pub group: GroupRef,
    /// The `N` of a BN-pair, used for relative Weyl groups.
    pub bn_n: Option<GroupRef>,
    pub identity_component: Option<GroupRef>,
    pub records: Vec<Parabolic>,
}

impl BNDatum {
    pub fn new(
        name: &str,
        group: GroupRef,
        bn_n: Option<GroupRef>,
        identity_component: Option<GroupRef>,
        mut records: Vec<Parabolic>,
    ) -> Result<Self> {
        if let Some(n) = &bn_n {
            if !n.is_subgroup_of(&group) {
                return Err(Error::Validation("N is not a subgroup of G".into()));
            }
        }
        if let Some(g0) = &identity_component {
            if !g0.is_normal_in(&group) {
                return Err(Error::Validation("identity component is not normal in G".into()));
            }
        }
        for (i, r) in records.iter().enumerate() {
            if records[..i].iter().any(|s| s.name == r.name) {
                return Err(Error::Validation(format!("duplicate record name {}", r.name)));
            }
        }
        if records.iter().all(|r| r.is_proper()) {
            let triv = Arc::new(PermGroup::trivial(group.degree()));
            if records.iter().any(|r| r.name == "G") {
                return Err(Error::Validation("record name G is reserved for the improper parabolic".into()));
            }
            records.push(Parabolic::new("G", &group, group.clone(), group.clone(), triv)?);
        }
        Ok(BNDatum { name: name.to_string(), group, bn_n, identity_component, records })
    }

    pub fn from_spec(spec: &BNSpec, limits: Limits) -> Result<Self> {
        let group = Arc::new(spec.group.build(limits)?);
        let deg = spec.group.degree;
        let sub = |gens: &[String]| -> Result<GroupRef> { Ok(Arc::new(group.subgroup(parse_perms(gens, deg)?)?)) };
        let bn_n = spec.n.as_deref().map(sub).transpose()?;
        let g0 = spec.identity_component.as_deref().map(sub).transpose()?;
        let records = spec
            .parabolics
            .iter()
            .map(|r| Parabolic::new(&r.name, &group, sub(&r.p)?, sub(&r.l)?, sub(&r.u)?))
            .collect::<Result<_>>()?;
        let name = spec.group.name.clone().unwrap_or_default();
        Self::new(&name, group, bn_n, g0, records)
    }

    pub fn from_json(text: &str, limits: Limits) -> Result<Self> {
        let spec: BNSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec, limits)
    }

    pub fn record(&self, name: &str) -> Result<&Parabolic> {
        self.records
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::NotFound(format!("no parabolic record {name:?}")))
    }

    pub fn record_index(&self, name: &str) -> Result<usize> {
        self.records
            .iter()
            .position(|r| r.name == name)
            .ok_or_else(|| Error::NotFound(format!("no parabolic record {name:?}")))
    }

    /// The datum on `G°`: records `(P ∩ G°, L ∩ G°, U)` with duplicates
    /// dropped, and `N ∩ G°`.
    pub fn connected_datum(&self) -> Result<BNDatum> {
        let g0 = self
            .identity_component
            .clone()
            .ok_or_else(|| Error::Hypothesis("the datum has no identity component".into()))?;
        let mut records: Vec<Parabolic> = Vec::new();
        for r in &self.records {
            let c = r.connected_part(&g0)?;
            if !records.iter().any(|s| s.p.same_group(&c.p) && s.l.same_group(&c.l)) {
                records.push(c);
            }
        }
        let bn_n = match &self.bn_n {
            Some(n) => Some(Arc::new(intersect(n, &g0)?)),
            None => None,
        };
        BNDatum::new(&format!("{}°", self.name), g0, bn_n, None, records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn records_and_improper() {
        let d = BNDatum::from_json(corpus::text("gl3_2_bn").unwrap(), Limits::default()).unwrap();
        let names: Vec<&str> = d.records.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["B", "P21", "P12", "G"]);
        assert_eq!(d.record("B").unwrap().p.order(), 8);
        assert_eq!(d.record("P21").unwrap().l.order(), 6);
        assert!(!d.record("G").unwrap().is_proper());
        assert!(matches!(d.record("Q"), Err(Error::NotFound(_))));
    }

    #[test]
    fn bad_decomposition_is_rejected() {
        let g = Arc::new(PermGroup::from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap());
        let c3 = Arc::new(g.subgroup_from_cycles(&["(1 2 3)"]).unwrap());
        let c2 = Arc::new(g.subgroup_from_cycles(&["(1 2)"]).unwrap());
        // U = C2 is not normal in S3
        assert!(Parabolic::new("X", &g, g.clone(), c3.clone(), c2.clone()).is_err());
        assert!(Parabolic::new("Y", &g, g.clone(), c2, c3).is_ok());
    }

    #[test]
    fn connected_datum_merges_records() {
        let d = BNDatum::from_json(corpus::text("gl2_3_disconnected").unwrap(), Limits::default()).unwrap();
        let c = d.connected_datum().unwrap();
        assert_eq!(c.group.order(), 24);
        assert_eq!(c.records.len(), 2);
        assert_eq!(c.records[0].l.order(), 2);
        assert_eq!(c.bn_n.as_ref().unwrap().order(), 4);
    }
}
