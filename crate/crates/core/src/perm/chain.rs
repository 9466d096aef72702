//! Deterministic Schreier-Sims: base, strong generators and transversals.

use super::element::Perm;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Perm>,
    /// Orbit points in discovery order.
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Perm::identity(degree));
        Level { base_point, gens: Vec::new(), orbit: vec![base_point], transversal }
    }

    /// Closes the orbit under the current generators.
    fn close_orbit(&mut self) {
        let mut i = 0;
        // re-scan from the start: new generators can reach new points from old ones
        while i < self.orbit.len() {
            let p = self.orbit[i];
            let u = self.transversal[p].clone().expect("orbit point has a transversal");
            for s in &self.gens {
                let q = s.apply(p);
                if self.transversal[q].is_none() {
                    self.transversal[q] = Some(&u * s);
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// A stabilizer chain for a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain { degree, levels: Vec::new() };
        for g in gens {
            if g.is_identity() {
                continue;
            }
            let (h, j) = chain.sift(g, 0);
            if !h.is_identity() {
                chain.add_strong_generator(h, 0, j);
            }
        }
        chain.complete();
        chain
    }

    /// Adds `h` (which fixes the first `from` base points) to levels `from..=to`.
    fn add_strong_generator(&mut self, h: Perm, from: usize, to: usize) {
        if to == self.levels.len() {
            let bp = h.first_moved().expect("nonidentity residue");
            self.levels.push(Level::new(bp, self.degree));
        }
        for l in from..=to {
            self.levels[l].gens.push(h.clone());
            self.levels[l].close_orbit();
        }
    }

    /// Holt's SCHREIERSIMS loop: test Schreier generators bottom-up, restarting
    /// at the drop-out level whenever a new strong generator appears.
    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let l = i as usize;
            let orbit = self.levels[l].orbit.clone();
            let gens = self.levels[l].gens.clone();
            for &p in &orbit {
                let up = self.levels[l].transversal[p].clone().unwrap();
                for s in &gens {
                    let q = s.apply(p);
                    let uq = self.levels[l].transversal[q].as_ref().unwrap();
                    let schreier = &(&up * s) * &uq.inverse();
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift(&schreier, l + 1);
                    if !h.is_identity() {
                        self.add_strong_generator(h, l + 1, j);
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` from level `from`; returns the residue and the drop-out level.
    pub fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (k, lvl) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(lvl.base_point);
            match &lvl.transversal[b] {
                Some(u) => h = &h * &u.inverse(),
                None => return (h, k),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Group order as the product of basic orbit lengths (saturating).
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Every element, as products `u_{k-1} * ... * u_0` of transversal elements.
    pub fn elements(&self) -> Vec<Perm> {
        let mut acc = vec![Perm::identity(self.degree)];
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * lvl.orbit.len());
            for g in &acc {
                for &p in &lvl.orbit {
                    next.push(g * lvl.transversal[p].as_ref().unwrap());
                }
            }
            acc = next;
        }
        acc
    }
}
