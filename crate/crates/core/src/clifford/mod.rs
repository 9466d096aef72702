//! Clifford theory for a normal subgroup: orbits and inertia groups, labels,
//! extendability, Gallagher correspondence, the regular-sum identity, gluing
//! of extensions and the tensor-induced character of a wreath product.

use std::collections::VecDeque;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::arith::CyclotomicNumber;
use crate::chartab::{CharTable, ClassFunction, Kind};
use crate::error::{Error, Result};
use crate::perm::{coset_quotient, GroupRef, Perm, PermGroup, Quotient, Wreath};

/// Everything Clifford theory says about `theta` in `Irr(N)` for `N ◁ M`.
#[derive(Debug, Clone)]
pub struct CliffordReport {
    pub theta: usize,
    /// `M`-conjugates of `theta`, as indices into `Irr(N)`, ascending.
    pub orbit: Vec<usize>,
    pub inertia: GroupRef,
    /// `Omega_theta = I/N`.
    pub omega: Quotient,
    pub omega_abelian: bool,
    /// `Irr(M | theta)` as indices into `Irr(M)`, ascending.
    pub above: Vec<usize>,
    /// `<Res_N chi, theta>` for each entry of `above`.
    pub label_dims: Vec<i64>,
    pub extendable: bool,
    /// Indices into `Irr(I)` of the characters restricting to `theta`.
    pub extensions: Vec<usize>,
    /// The designated extension: the first extension in table order. This is a
    /// deterministic choice, not a normalized one.
    pub designated: Option<usize>,
    /// Pairs `(eta, chi)`: `Ind_I^M(designated ⊗ Inf eta) = chi`, for `eta` in
    /// `Irr(Omega)`; present when extendable with `Omega` abelian.
    pub gallagher: Option<Vec<(usize, usize)>>,
    pub gallagher_bijective: Option<bool>,
}

impl CliffordReport {
    pub fn omega_order(&self) -> u128 {
        self.omega.group.order()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theta": self.theta,
            "orbit": self.orbit,
            "inertia_order": self.inertia.order().to_string(),
            "omega_order": self.omega_order().to_string(),
            "omega_abelian": self.omega_abelian,
            "above": self.above,
            "label_dims": self.label_dims,
            "extendable": self.extendable,
            "extensions": self.extensions,
            "designated_extension": self.designated,
            "gallagher": self.gallagher.as_ref().map(|g| g.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>()),
            "gallagher_bijective": self.gallagher_bijective,
        })
    }
}

/// Precomputed tables for a pair `N ◁ M`.
#[derive(Debug, Clone)]
pub struct CliffordPair {
    pub m: GroupRef,
    pub n: GroupRef,
    pub table_m: CharTable,
    pub table_n: CharTable,
}

impl CliffordPair {
    pub fn new(m: GroupRef, n: GroupRef) -> Result<Self> {
        if !n.is_subgroup_of(&m) {
            return Err(Error::Validation("N is not a subgroup of M".into()));
        }
        if !n.is_normal_in(&m) {
            return Err(Error::Validation("N is not normal in M".into()));
        }
        let table_m = CharTable::compute(&m)?;
        let table_n = CharTable::compute(&n)?;
        Ok(CliffordPair { m, n, table_m, table_n })
    }

    fn theta(&self, i: usize) -> Result<&ClassFunction> {
        self.table_n.row(i)
    }

    /// Index of `theta^x`, `theta^x(n) = theta(x n x^-1)`.
    pub fn conjugate_index(&self, theta: usize, x: &Perm) -> Result<usize> {
        let c = self.theta(theta)?.conjugate(x)?;
        self.table_n
            .index_of(&c)
            .ok_or_else(|| Error::Invariant("conjugate of an irreducible is not in the table".into()))
    }

    /// Orbit of `theta` with transversal elements, and the inertia group.
    pub fn orbit_and_inertia(&self, theta: usize) -> Result<(Vec<(usize, Perm)>, PermGroup)> {
        self.theta(theta)?;
        let mut orbit: Vec<(usize, Perm)> = vec![(theta, self.m.identity())];
        let mut pos = vec![usize::MAX; self.table_n.len()];
        pos[theta] = 0;
        let mut stab: Vec<Perm> = self.n.generators().to_vec();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (t, u) = orbit[i].clone();
            for s in self.m.generators() {
                let j = self.conjugate_index(t, s)?;
                let us = &u * s;
                if pos[j] == usize::MAX {
                    pos[j] = orbit.len();
                    orbit.push((j, us));
                    queue.push_back(pos[j]);
                } else {
                    let schreier = &us * &orbit[pos[j]].1.inverse();
                    if !schreier.is_identity() && !stab.contains(&schreier) {
                        stab.push(schreier);
                    }
                }
            }
        }
        let inertia = self.m.subgroup(stab)?;
        if orbit.len() as u128 * inertia.order() != self.m.order() {
            return Err(Error::Invariant("orbit-stabilizer count fails".into()));
        }
        Ok((orbit, inertia))
    }

    /// `<Res_N chi, theta>` for every `chi` in `Irr(M)`.
    pub fn multiplicities(&self, theta: usize) -> Result<Vec<i64>> {
        let th = self.theta(theta)?;
        self.table_m.rows().iter().map(|chi| chi.restrict(&self.n)?.inner_int(th)).collect()
    }

    pub fn decomposition(&self, theta: usize) -> Result<CliffordReport> {
        let (orbit, inertia) = self.orbit_and_inertia(theta)?;
        let inertia: GroupRef = Arc::new(inertia);
        let mut orbit_idx: Vec<usize> = orbit.iter().map(|(i, _)| *i).collect();
        orbit_idx.sort_unstable();
        let omega = coset_quotient(&inertia, &self.n)?;
        let omega_abelian = omega.group.is_abelian();
        let mults = self.multiplicities(theta)?;
        let above: Vec<usize> = (0..mults.len()).filter(|&i| mults[i] != 0).collect();
        let label_dims: Vec<i64> = above.iter().map(|&i| mults[i]).collect();

        let th = self.theta(theta)?;
        let table_i = CharTable::compute(&inertia)?;
        let extensions: Vec<usize> = (0..table_i.len())
            .filter(|&k| {
                let chi = &table_i.rows()[k];
                chi.degree() == th.degree() && chi.restrict(&self.n).map(|r| r.values() == th.values()).unwrap_or(false)
            })
            .collect();
        let extendable = !extensions.is_empty();
        let designated = extensions.first().copied();

        let (gallagher, gallagher_bijective) = match designated {
            Some(d) if omega_abelian => {
                let ext = &table_i.rows()[d];
                let table_o = CharTable::compute(&omega.group)?;
                let mut map = Vec::with_capacity(table_o.len());
                for (e, eta) in table_o.rows().iter().enumerate() {
                    let twisted = ext.tensor(&eta.inflate(&omega.projection)?)?;
                    let ind = twisted.induce(&self.m)?;
                    let chi = self
                        .table_m
                        .index_of(&ind)
                        .ok_or_else(|| Error::Invariant(format!("Gallagher image of eta_{e} is not irreducible")))?;
                    map.push((e, chi));
                }
                let mut image: Vec<usize> = map.iter().map(|&(_, c)| c).collect();
                image.sort_unstable();
                image.dedup();
                let bijective = image.len() == map.len() && image == above;
                (Some(map), Some(bijective))
            }
            _ => (None, None),
        };

        Ok(CliffordReport {
            theta,
            orbit: orbit_idx,
            inertia,
            omega,
            omega_abelian,
            above,
            label_dims,
            extendable,
            extensions,
            designated,
            gallagher,
            gallagher_bijective,
        })
    }

    /// `sum_chi <Res chi, theta> chi` over `Irr(M | theta)`.
    fn weighted_sum(&self, theta: usize) -> Result<ClassFunction> {
        let mults = self.multiplicities(theta)?;
        let mut acc = ClassFunction::zero(self.m.clone())?;
        for (chi, &e) in self.table_m.rows().iter().zip(&mults) {
            if e != 0 {
                acc = acc.add(&chi.scale(e))?;
            }
        }
        Ok(acc.with_kind(Kind::Character))
    }

    /// Checks `sum_E dim(E) chi_{theta,E} = Ind_N^M theta`, and that the sum is
    /// the same for every `M`-conjugate of `theta`.
    pub fn regular_sum_check(&self, theta: usize) -> Result<RegularSum> {
        let sum = self.weighted_sum(theta)?;
        let induced = self.theta(theta)?.induce(&self.m)?;
        if sum != induced {
            return Err(Error::Invariant("regular sum differs from the induced character".into()));
        }
        let (orbit, _) = self.orbit_and_inertia(theta)?;
        for (t, _) in &orbit {
            if self.weighted_sum(*t)? != sum {
                return Err(Error::Invariant(format!(
                    "regular sum changes under conjugation (theta_{theta} vs theta_{t})"
                )));
            }
        }
        let mults = self.multiplicities(theta)?;
        let terms = (0..mults.len()).filter(|&i| mults[i] != 0).map(|i| (i, mults[i])).collect();
        Ok(RegularSum { character: sum, terms, conjugates_checked: orbit.len() })
    }
}

#[derive(Debug, Clone)]
pub struct RegularSum {
    /// The common value `Ind_N^M theta`.
    pub character: ClassFunction,
    /// `(chi, dim E)` terms of the sum.
    pub terms: Vec<(usize, i64)>,
    pub conjugates_checked: usize,
}

/// Inputs for gluing extensions across `Omega = Gamma x Phi`.
pub struct GluingInput<'a> {
    pub i: &'a GroupRef,
    pub n: &'a GroupRef,
    pub theta: &'a ClassFunction,
    /// `I_Gamma` with `I_Gamma / N = Gamma` cyclic, and `u_Gamma` on it.
    pub i_gamma: &'a GroupRef,
    pub u_gamma: &'a ClassFunction,
    /// `I_Phi` with `I_Phi / N = Phi` cyclic, and `u_Phi` on it.
    pub i_phi: &'a GroupRef,
    pub u_phi: &'a ClassFunction,
}

fn is_cyclic_quotient(big: &GroupRef, n: &PermGroup) -> Result<bool> {
    let q = coset_quotient(big, n)?;
    Ok(q.group.exponent()? as u128 == q.group.order())
}

/// The unique irreducible of `I` restricting to `u_Gamma` on `I_Gamma` and to
/// `u_Phi` on `I_Phi`, found by scanning `Irr(I)`.
pub fn extension_gluing(input: &GluingInput<'_>) -> Result<usize> {
    let GluingInput { i, n, theta, i_gamma, u_gamma, i_phi, u_phi } = *input;
    let hyp = |m: &str| Err(Error::Hypothesis(m.to_string()));
    if !n.is_normal_in(i) {
        return hyp("N is not normal in I");
    }
    for (name, sub) in [("I_Gamma", i_gamma), ("I_Phi", i_phi)] {
        if !n.is_subgroup_of(sub) || !sub.is_subgroup_of(i) {
            return hyp(&format!("{name} does not lie between N and I"));
        }
        if !sub.is_normal_in(i) {
            return hyp(&format!("{name} is not normal in I"));
        }
        if !is_cyclic_quotient(sub, n)? {
            return hyp(&format!("{name}/N is not cyclic"));
        }
    }
    let gens: Vec<Perm> = i_gamma.generators().iter().chain(i_phi.generators()).cloned().collect();
    let inter = i_gamma.generate_from_elements(|x| i_phi.contains(x))?;
    let inter = i_gamma.subgroup(inter)?;
    if inter.order() != n.order() || i.subgroup(gens)?.order() != i.order() {
        return hyp("I/N is not the direct product of I_Gamma/N and I_Phi/N");
    }
    if !i.generators().iter().all(|x| theta.conjugate(x).map(|c| c == *theta).unwrap_or(false)) {
        return hyp("theta is not I-invariant");
    }
    if u_gamma.restrict(n)? != *theta {
        return hyp("u_Gamma does not extend theta");
    }
    if u_phi.restrict(n)? != *theta {
        return hyp("u_Phi does not extend theta");
    }
    if !i_phi.generators().iter().all(|x| u_gamma.conjugate(x).map(|c| c == *u_gamma).unwrap_or(false)) {
        return hyp("u_Gamma is not Phi-invariant");
    }
    let table = CharTable::compute(i)?;
    let hits: Vec<usize> = (0..table.len())
        .filter(|&k| {
            let chi = &table.rows()[k];
            chi.restrict(i_gamma).map(|r| r == *u_gamma).unwrap_or(false)
                && chi.restrict(i_phi).map(|r| r == *u_phi).unwrap_or(false)
        })
        .collect();
    match hits.as_slice() {
        [k] => Ok(*k),
        [] => hyp("no irreducible of I restricts to both u_Gamma and u_Phi"),
        _ => Err(Error::Invariant(format!("{} common extensions; expected one", hits.len()))),
    }
}

/// The character of `K ≀ S_m` on `V^{⊗m}` extending `theta^{⊠m}`: at
/// `((k_1..k_m), sigma)` the product over cycles `i_1 -> i_2 -> ... -> i_l` of
/// `sigma` of `theta(k_{i_1} * k_{i_2} * ... * k_{i_l})`, in the left-to-right
/// product (the composite acting first by `k_{i_1}`).
pub fn wreath_extension(theta: &ClassFunction, m: usize) -> Result<(Wreath, ClassFunction)> {
    let w = Wreath::symmetric(theta.group().clone(), m)?;
    let cls = w.group.classes()?;
    let values =
        (0..cls.len()).map(|c| wreath_value(&w, theta, w.group.class_rep(c)?, 0)).collect::<Result<Vec<_>>>()?;
    let chi = ClassFunction::new(w.group.clone(), values, Kind::Character)?;
    Ok((w, chi))
}

/// Value at one element, starting each cycle `rotate` steps after its least
/// point. The result does not depend on `rotate`.
pub fn wreath_value(w: &Wreath, theta: &ClassFunction, g: &Perm, rotate: usize) -> Result<CyclotomicNumber> {
    let e = w.decompose(g);
    let m = w.blocks;
    let mut seen = vec![false; m];
    let mut acc = CyclotomicNumber::one();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut i = e.top.apply(start);
        while i != start {
            seen[i] = true;
            cycle.push(i);
            i = e.top.apply(i);
        }
        let shift = rotate % cycle.len();
        cycle.rotate_left(shift);
        let mut prod = Perm::identity(w.base_factor.degree());
        for &i in &cycle {
            prod = &prod * &e.base[i];
        }
        acc = &acc * theta.at(&prod)?;
    }
    Ok(acc)
}

/// `theta^{⊠m}` on the base group of `w`.
pub fn outer_tensor_power(w: &Wreath, theta: &ClassFunction) -> Result<ClassFunction> {
    let base = Arc::new(w.base_group()?);
    let cls = base.classes()?;
    let values = (0..cls.len())
        .map(|c| {
            let e = w.decompose(base.class_rep(c)?);
            e.base.iter().try_fold(CyclotomicNumber::one(), |acc, k| Ok(&acc * theta.at(k)?))
        })
        .collect::<Result<Vec<_>>>()?;
    ClassFunction::new(base, values, Kind::Character)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_over_c3() {
        let s3 = Arc::new(PermGroup::from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap());
        let c3 = Arc::new(s3.subgroup_from_cycles(&["(1 2 3)"]).unwrap());
        let pair = CliffordPair::new(s3, c3).unwrap();
        let r = pair.decomposition(1).unwrap();
        assert_eq!(r.orbit.len(), 2);
        assert_eq!(r.inertia.order(), 3);
        assert_eq!(r.omega_order(), 1);
        assert_eq!(r.label_dims, vec![1]);
        assert_eq!(pair.table_m.rows()[r.above[0]].degree_int(), Some(2));
        let rs = pair.regular_sum_check(1).unwrap();
        assert_eq!(rs.terms.len(), 1);
    }
}
