//! Wreath products `K ≀ H` for `H ≤ S_m`, as imprimitive groups on `m` blocks.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::element::Perm;
use super::group::{GroupRef, PermGroup};

#[derive(Debug, Clone)]
pub struct Wreath {
    pub group: GroupRef,
    pub base_factor: GroupRef,
    pub top: GroupRef,
    pub blocks: usize,
}

/// An element `((k_1, ..., k_m), sigma)` acting by `(i, x) -> (sigma(i), k_i(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathElement {
    pub base: Vec<Perm>,
    pub top: Perm,
}

impl Wreath {
    /// `K ≀ S_m`.
    pub fn symmetric(k: GroupRef, m: usize) -> Result<Self> {
        let top = match m {
            0 => return Err(Error::OutOfRange("wreath product needs m >= 1".into())),
            1 => PermGroup::trivial(1),
            2 => PermGroup::from_cycles(2, &["(1 2)"])?,
            _ => {
                let cyc = format!("({})", (1..=m).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
                PermGroup::from_cycles(m, &["(1 2)", &cyc])?
            }
        };
        Self::new(k, Arc::new(top))
    }

    pub fn new(k: GroupRef, top: GroupRef) -> Result<Self> {
        let m = top.degree();
        let d = k.degree();
        let mut gens = Vec::new();
        for s in k.generators() {
            let mut base = vec![Perm::identity(d); m];
            base[0] = s.clone();
            gens.push(Self::compose(&base, &Perm::identity(m)));
        }
        for t in top.generators() {
            gens.push(Self::compose(&vec![Perm::identity(d); m], t));
        }
        let group = Arc::new(PermGroup::with_limits(m * d, gens, k.limits())?);
        Ok(Wreath { group, base_factor: k, top, blocks: m })
    }

    fn compose(base: &[Perm], sigma: &Perm) -> Perm {
        let d = base[0].degree();
        let mut imgs = vec![0u32; base.len() * d];
        for (i, k) in base.iter().enumerate() {
            let j = sigma.apply(i);
            for x in 0..d {
                imgs[i * d + x] = (j * d + k.apply(x)) as u32;
            }
        }
        Perm::from_images_unchecked(imgs)
    }

    pub fn element(&self, e: &WreathElement) -> Perm {
        Self::compose(&e.base, &e.top)
    }

    pub fn decompose(&self, g: &Perm) -> WreathElement {
        let d = self.base_factor.degree();
        let m = self.blocks;
        let mut top = Vec::with_capacity(m);
        let mut base = Vec::with_capacity(m);
        for i in 0..m {
            let j = g.apply(i * d) / d;
            top.push(j as u32);
            base.push(Perm::from_images_unchecked((0..d).map(|x| (g.apply(i * d + x) - j * d) as u32).collect()));
        }
        WreathElement { base, top: Perm::from_images_unchecked(top) }
    }

    /// The base group `K^m`.
    pub fn base_group(&self) -> Result<PermGroup> {
        let d = self.base_factor.degree();
        let m = self.blocks;
        let mut gens = Vec::new();
        for i in 0..m {
            for s in self.base_factor.generators() {
                let mut base = vec![Perm::identity(d); m];
                base[i] = s.clone();
                gens.push(Self::compose(&base, &Perm::identity(m)));
            }
        }
        self.group.subgroup(gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_round_trip() {
        let s3 = Arc::new(PermGroup::from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap());
        let w = Wreath::symmetric(s3, 2).unwrap();
        assert_eq!(w.group.order(), 72);
        assert_eq!(w.base_group().unwrap().order(), 36);
        for g in w.group.elements().unwrap().iter().take(20) {
            assert_eq!(&w.element(&w.decompose(g)), g);
        }
        let c2 = Arc::new(PermGroup::from_cycles(2, &["(1 2)"]).unwrap());
        assert_eq!(Wreath::symmetric(c2.clone(), 3).unwrap().group.order(), 48);
        assert_eq!(Wreath::symmetric(c2, 1).unwrap().group.order(), 2);
    }
}
