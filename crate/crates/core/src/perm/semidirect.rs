//! Semidirect products `G° ⋊ A` by pair arithmetic, with a faithful
//! permutation model on `|G°| + |A|` points.

use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

use super::element::Perm;
use super::group::{GroupRef, PermGroup};
use super::hom::GroupHom;

/// Bound on `|G°|` for the regular-action model.
pub const REALIZATION_BOUND: u128 = 10_000;

#[derive(Debug)]
pub struct SemidirectGroup {
    normal: GroupRef,
    acting: GroupRef,
    /// For every element of `A` (by index), `alpha_a` as a permutation of the
    /// element indices of `G°`.
    autos: Vec<Vec<usize>>,
    realization: OnceLock<GroupRef>,
}

impl SemidirectGroup {
    /// `action[j]` lists the images of the generators of `G°` under the `j`-th
    /// generator of `A`. Each must give an automorphism and `a -> alpha_a` must
    /// be a homomorphism with `alpha_{ab} = alpha_a ∘ alpha_b`.
    pub fn new(normal: GroupRef, acting: GroupRef, action: Vec<Vec<Perm>>) -> Result<Self> {
        if normal.order() > REALIZATION_BOUND {
            return Err(Error::Capacity(format!(
                "normal part of order {} exceeds the bound {REALIZATION_BOUND}",
                normal.order()
            )));
        }
        if action.len() != acting.generators().len() {
            return Err(Error::Validation(format!(
                "{} action entries for {} acting generators",
                action.len(),
                acting.generators().len()
            )));
        }
        let n = normal.elements()?.len();
        let mut gen_autos = Vec::with_capacity(action.len());
        for (j, imgs) in action.into_iter().enumerate() {
            let hom = GroupHom::new(normal.clone(), normal.clone(), imgs)
                .map_err(|e| Error::Validation(format!("action of acting generator {}: {e}", j + 1)))?;
            if !hom.is_injective()? {
                return Err(Error::Validation(format!("action of acting generator {} is not bijective", j + 1)));
            }
            gen_autos.push((0..n).map(|i| hom.image_index(i)).collect::<Vec<usize>>());
        }
        let m = acting.elements()?.len();
        let id = acting.index_of(&acting.identity())?;
        let mut autos: Vec<Option<Vec<usize>>> = vec![None; m];
        autos[id] = Some((0..n).collect());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for (t, at) in acting.generators().iter().zip(&gen_autos) {
                let y = acting.index_of(&(acting.element(x)? * t))?;
                let ax = autos[x].as_ref().unwrap();
                let composed: Vec<usize> = at.iter().map(|&i| ax[i]).collect();
                match &autos[y] {
                    None => {
                        autos[y] = Some(composed);
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != composed => {
                        return Err(Error::Validation("the action is not a homomorphism into Aut(G°)".into()))
                    }
                    Some(_) => {}
                }
            }
        }
        let autos = autos.into_iter().map(|a| a.expect("BFS reaches every element")).collect();
        Ok(SemidirectGroup { normal, acting, autos, realization: OnceLock::new() })
    }

    pub fn normal(&self) -> &GroupRef {
        &self.normal
    }

    pub fn acting(&self) -> &GroupRef {
        &self.acting
    }

    pub fn order(&self) -> u128 {
        self.normal.order() * self.acting.order()
    }

    /// `alpha_a(g)`.
    pub fn act(&self, a: &Perm, g: &Perm) -> Result<Perm> {
        let ai = self.acting.index_of(a)?;
        let gi = self.normal.index_of(g)?;
        Ok(self.normal.element(self.autos[ai][gi])?.clone())
    }

    /// `(g1, a1)(g2, a2) = (g1 · alpha_{a1}(g2), a1 a2)`.
    pub fn mul_pairs(&self, x: &(Perm, Perm), y: &(Perm, Perm)) -> Result<(Perm, Perm)> {
        Ok((&x.0 * &self.act(&x.1, &y.0)?, &x.1 * &y.1))
    }

    pub fn degree(&self) -> usize {
        (self.normal.order() + self.acting.order()) as usize
    }

    /// The permutation of `(g, a)`: the inverse of the affine map
    /// `x -> g alpha_a(x)` on `G°` and `b -> a b` on `A`. Inverting turns this
    /// left action into a homomorphism for left-to-right products.
    pub fn embed(&self, g: &Perm, a: &Perm) -> Result<Perm> {
        let n = self.normal.order() as usize;
        let gi = self.normal.index_of(g)?;
        let ai = self.acting.index_of(a)?;
        let mut imgs = Vec::with_capacity(self.degree());
        for x in 0..n {
            imgs.push(self.normal.mul_index(gi, self.autos[ai][x])? as u32);
        }
        for b in 0..self.acting.order() as usize {
            imgs.push((n + self.acting.mul_index(ai, b)?) as u32);
        }
        Ok(Perm::from_images(imgs)?.inverse())
    }

    /// The faithful permutation model, generated by `(s, 1)` and `(1, t)`.
    pub fn realize(&self) -> Result<GroupRef> {
        if let Some(g) = self.realization.get() {
            return Ok(g.clone());
        }
        let id_n = self.normal.identity();
        let id_a = self.acting.identity();
        let mut gens = Vec::new();
        for s in self.normal.generators() {
            gens.push(self.embed(s, &id_a)?);
        }
        for t in self.acting.generators() {
            gens.push(self.embed(&id_n, t)?);
        }
        let g = Arc::new(PermGroup::with_limits(self.degree(), gens, self.normal.limits())?);
        Ok(self.realization.get_or_init(|| g).clone())
    }

    /// `G°` inside the model.
    pub fn normal_subgroup(&self) -> Result<PermGroup> {
        let id_a = self.acting.identity();
        let gens = self.normal.generators().iter().map(|s| self.embed(s, &id_a)).collect::<Result<_>>()?;
        self.realize()?.subgroup(gens)
    }

    /// The projection of the model onto `A`.
    pub fn projection(&self) -> Result<GroupHom> {
        let g = self.realize()?;
        let mut imgs = vec![self.acting.identity(); self.normal.generators().len()];
        imgs.extend(self.acting.generators().iter().cloned());
        GroupHom::new(g, self.acting.clone(), imgs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(degree: usize, gens: &[&str]) -> GroupRef {
        Arc::new(PermGroup::from_cycles(degree, gens).unwrap())
    }

    #[test]
    fn c3_by_inversion_is_s3() {
        let c3 = g(3, &["(1 2 3)"]);
        let c2 = g(2, &["(1 2)"]);
        let sd = SemidirectGroup::new(c3, c2, vec![vec![Perm::parse("(1 3 2)", 3).unwrap()]]).unwrap();
        let m = sd.realize().unwrap();
        assert_eq!(m.order(), 6);
        assert!(!m.is_abelian());
        assert_eq!(m.classes().unwrap().sizes, vec![1, 3, 2]);
        // embedding respects pair multiplication
        let x = (Perm::parse("(1 2 3)", 3).unwrap(), Perm::parse("(1 2)", 2).unwrap());
        let y = (Perm::parse("(1 3 2)", 3).unwrap(), Perm::parse("(1 2)", 2).unwrap());
        let xy = sd.mul_pairs(&x, &y).unwrap();
        assert_eq!(sd.embed(&xy.0, &xy.1).unwrap(), &sd.embed(&x.0, &x.1).unwrap() * &sd.embed(&y.0, &y.1).unwrap());
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let c3 = g(3, &["(1 2 3)"]);
        let triv = g(1, &[]);
        let sd = SemidirectGroup::new(c3.clone(), triv, vec![]).unwrap();
        let m = sd.realize().unwrap();
        assert_eq!(m.order(), 3);
        assert_eq!(m.classes().unwrap().sizes, c3.classes().unwrap().sizes);
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let c3 = g(3, &["(1 2 3)"]);
        let c2 = g(2, &["(1 2)"]);
        let bad = SemidirectGroup::new(c3.clone(), c2.clone(), vec![vec![Perm::identity(3)]]);
        assert!(matches!(bad, Err(Error::Validation(_))));
        // order-3 automorphism cannot come from C2
        let c7 = g(7, &["(1 2 3 4 5 6 7)"]);
        let sq = Perm::parse("(1 3 5 7 2 4 6)", 7).unwrap();
        assert!(SemidirectGroup::new(c7, c2, vec![vec![sq]]).is_err());
    }
}
