//! JSON input for groups and semidirect products.
//!
//! Groups are `{"degree": n, "generators": ["(1 2 3)(4 5)", ...]}` with an
//! optional `"name"` and optional named `"subgroups"` given by generator lists.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::element::Perm;
use super::group::{GroupRef, Limits, PermGroup};
use super::semidirect::SemidirectGroup;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default)]
    pub subgroups: BTreeMap<String, Vec<String>>,
}

impl GroupSpec {
    pub fn build(&self, limits: Limits) -> Result<PermGroup> {
        let gens = parse_perms(&self.generators, self.degree)?;
        PermGroup::with_limits(self.degree, gens, limits)
    }
}

pub fn parse_perms(cycles: &[String], degree: usize) -> Result<Vec<Perm>> {
    cycles.iter().map(|s| Perm::parse(s, degree)).collect()
}

/// A group together with its named subgroups.
#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub name: String,
    pub group: GroupRef,
    pub subgroups: BTreeMap<String, Vec<Perm>>,
}

impl NamedGroup {
    pub fn from_spec(spec: &GroupSpec, limits: Limits) -> Result<Self> {
        let group = Arc::new(spec.build(limits)?);
        let mut subgroups = BTreeMap::new();
        for (name, gens) in &spec.subgroups {
            let gens = parse_perms(gens, spec.degree)?;
            if let Some(g) = gens.iter().find(|g| !group.contains(g)) {
                return Err(Error::Validation(format!("subgroup {name}: {g} is not in the group")));
            }
            subgroups.insert(name.clone(), gens);
        }
        Ok(NamedGroup { name: spec.name.clone().unwrap_or_default(), group, subgroups })
    }

    pub fn from_json(text: &str, limits: Limits) -> Result<Self> {
        let spec: GroupSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec, limits)
    }

    pub fn load(path: &Path, limits: Limits) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?, limits)
    }

    /// A named subgroup, or one given inline as `;`-separated cycle strings.
    pub fn subgroup(&self, key: &str) -> Result<PermGroup> {
        if let Some(gens) = self.subgroups.get(key) {
            return self.group.subgroup(gens.clone());
        }
        if key.trim_start().starts_with('(') {
            let gens = key.split(';').map(|s| Perm::parse(s, self.group.degree())).collect::<Result<Vec<_>>>()?;
            return self.group.subgroup(gens);
        }
        Err(Error::NotFound(format!(
            "no subgroup named {key:?} (known: {})",
            self.subgroups.keys().cloned().collect::<Vec<_>>().join(", ")
        )))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemidirectSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub normal: GroupSpec,
    pub acting: GroupSpec,
    pub action: Vec<Vec<String>>,
}

impl SemidirectSpec {
    pub fn build(&self, limits: Limits) -> Result<SemidirectGroup> {
        let normal = Arc::new(self.normal.build(limits)?);
        let acting = Arc::new(self.acting.build(limits)?);
        let action = self.action.iter().map(|imgs| parse_perms(imgs, self.normal.degree)).collect::<Result<_>>()?;
        SemidirectGroup::new(normal, acting, action)
    }

    pub fn from_json(text: &str, limits: Limits) -> Result<SemidirectGroup> {
        let spec: SemidirectSpec = serde_json::from_str(text)?;
        spec.build(limits)
    }
}
