//! Homomorphisms between permutation groups and coset quotients.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::element::Perm;
use super::group::{GroupRef, PermGroup};

/// A verified homomorphism, stored as the image index of every source element.
#[derive(Debug, Clone)]
pub struct GroupHom {
    source: GroupRef,
    target: GroupRef,
    gen_images: Vec<Perm>,
    images: Vec<usize>,
}

impl GroupHom {
    /// Defines the map on generators and checks it extends to a homomorphism by
    /// walking the Cayley graph: every edge `x -> x*s` must satisfy
    /// `f(x*s) = f(x)*f(s)`.
    pub fn new(source: GroupRef, target: GroupRef, gen_images: Vec<Perm>) -> Result<Self> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::Validation(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                source.generators().len()
            )));
        }
        let img_idx: Vec<usize> = gen_images
            .iter()
            .map(|g| {
                target
                    .element_index(g)?
                    .ok_or_else(|| Error::Validation(format!("image {g} is not in the target group")))
            })
            .collect::<Result<_>>()?;
        let n = source.elements()?.len();
        let id = source.index_of(&source.identity())?;
        let tid = target.index_of(&target.identity())?;
        let mut images = vec![usize::MAX; n];
        images[id] = tid;
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for (s, &ts) in source.generators().iter().zip(&img_idx) {
                let y = source.index_of(&(source.element(x)? * s))?;
                let fy = target.mul_index(images[x], ts)?;
                if images[y] == usize::MAX {
                    images[y] = fy;
                    queue.push_back(y);
                } else if images[y] != fy {
                    return Err(Error::Validation(format!(
                        "generator images do not define a homomorphism (conflict at {})",
                        source.element(y)?
                    )));
                }
            }
        }
        Ok(GroupHom { source, target, gen_images, images })
    }

    pub fn source(&self) -> &GroupRef {
        &self.source
    }

    pub fn target(&self) -> &GroupRef {
        &self.target
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.gen_images
    }

    /// Image of the source element with the given index, as a target index.
    pub fn image_index(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn image(&self, g: &Perm) -> Result<Perm> {
        let i = self.source.index_of(g)?;
        Ok(self.target.element(self.images[i])?.clone())
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order() as usize];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> Result<bool> {
        let tid = self.target.index_of(&self.target.identity())?;
        Ok(self.images.iter().filter(|&&i| i == tid).count() == 1)
    }

    pub fn kernel(&self) -> Result<PermGroup> {
        let tid = self.target.index_of(&self.target.identity())?;
        let src = &self.source;
        let gens = src.generate_from_elements(|x| {
            src.element_index(x).ok().flatten().map(|i| self.images[i] == tid).unwrap_or(false)
        })?;
        src.subgroup(gens)
    }

    /// For each source class, the target class of its image.
    pub fn class_map(&self) -> Result<Vec<usize>> {
        let cls = self.source.classes()?;
        let tcls = self.target.classes()?;
        Ok(cls.reps.iter().map(|&r| tcls.class_of[self.images[r]]).collect())
    }
}

/// The quotient `M/N` realized as `M` acting on the right cosets of `N`,
/// together with the projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: GroupRef,
    pub projection: GroupHom,
    /// Coset label of every element of `M`.
    pub coset_of: Vec<usize>,
}

pub fn coset_quotient(m: &GroupRef, n: &PermGroup) -> Result<Quotient> {
    if !n.is_subgroup_of(m) {
        return Err(Error::Validation("N is not a subgroup of M".into()));
    }
    if !n.is_normal_in(m) {
        return Err(Error::Validation("N is not normal in M".into()));
    }
    let (coset_of, cosets) = m.right_cosets(n)?;
    let k = cosets.len();
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let act = |g: &Perm| -> Result<Perm> {
        let imgs = reps
            .iter()
            .map(|&r| Ok(coset_of[m.index_of(&(m.element(r)? * g))?] as u32))
            .collect::<Result<Vec<u32>>>()?;
        Perm::from_images(imgs)
    };
    let gen_images: Vec<Perm> = m.generators().iter().map(act).collect::<Result<_>>()?;
    let q = Arc::new(PermGroup::with_limits(k, gen_images.clone(), m.limits())?);
    let projection = GroupHom::new(m.clone(), q.clone(), gen_images)?;
    Ok(Quotient { group: q, projection, coset_of })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(degree: usize, gens: &[&str]) -> GroupRef {
        Arc::new(PermGroup::from_cycles(degree, gens).unwrap())
    }

    #[test]
    fn quotients() {
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        let a3 = s3.subgroup_from_cycles(&["(1 2 3)"]).unwrap();
        let q = coset_quotient(&s3, &a3).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(q.projection.is_surjective());
        assert_eq!(q.projection.kernel().unwrap().order(), 3);

        let d8 = g(4, &["(1 2 3 4)", "(1 3)"]);
        let z = d8.subgroup_from_cycles(&["(1 3)(2 4)"]).unwrap();
        let q = coset_quotient(&d8, &z).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.is_abelian());
        assert_eq!(q.group.exponent().unwrap(), 2);

        let c2 = s3.subgroup_from_cycles(&["(1 2)"]).unwrap();
        assert!(matches!(coset_quotient(&s3, &c2), Err(Error::Validation(_))));
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let c4 = g(4, &["(1 2 3 4)"]);
        let c2 = g(2, &["(1 2)"]);
        let ok = GroupHom::new(c4.clone(), c2.clone(), vec![Perm::parse("(1 2)", 2).unwrap()]);
        assert!(ok.is_ok());
        let c3 = g(3, &["(1 2 3)"]);
        let bad = GroupHom::new(c4, c3, vec![Perm::parse("(1 2 3)", 3).unwrap()]);
        assert!(bad.is_err());
    }
}
