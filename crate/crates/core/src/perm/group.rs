//! Permutation groups with lazily enumerated elements and conjugacy classes.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

use super::chain::StabChain;
use super::element::Perm;

/// Enumeration bounds. Element lists and class data are only built for groups
/// within them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: u128,
    pub max_classes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: 10_000_000, max_classes: 512 }
    }
}

#[derive(Debug)]
struct Elements {
    list: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// Conjugacy classes in canonical order: by element order, then class size,
/// then the lexicographically least member.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    /// Element index of each representative (the least member).
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    pub orders: Vec<u64>,
    /// Member element indices of each class, ascending.
    pub members: Vec<Vec<usize>>,
    /// Class index of each element.
    pub class_of: Vec<usize>,
    /// Class of the inverses.
    pub inverse: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

pub type GroupRef = Arc<PermGroup>;

#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    limits: Limits,
    elements: OnceLock<Elements>,
    classes: OnceLock<ConjugacyClasses>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        Self::with_limits(degree, gens, Limits::default())
    }

    pub fn with_limits(degree: usize, gens: Vec<Perm>, limits: Limits) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Validation("degree must be positive".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::Validation(format!(
                "generator {g} has degree {} but the group has degree {degree}",
                g.degree()
            )));
        }
        let chain = StabChain::new(degree, &gens);
        Ok(PermGroup { degree, gens, chain, limits, elements: OnceLock::new(), classes: OnceLock::new() })
    }

    /// Builds a group from 1-based cycle strings.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|s| Perm::parse(s, degree)).collect::<Result<_>>()?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("degree is positive")
    }

    pub fn into_ref(self) -> GroupRef {
        Arc::new(self)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    fn check_order(&self) -> Result<()> {
        if self.order() > self.limits.max_order {
            return Err(Error::Capacity(format!(
                "group order {} exceeds the enumeration bound {}",
                self.order(),
                self.limits.max_order
            )));
        }
        Ok(())
    }

    fn elements_data(&self) -> Result<&Elements> {
        self.check_order()?;
        Ok(self.elements.get_or_init(|| {
            let mut list = self.chain.elements();
            list.sort_unstable();
            let index = list.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
            Elements { list, index }
        }))
    }

    /// All elements in lexicographic order of their image vectors.
    pub fn elements(&self) -> Result<&[Perm]> {
        Ok(&self.elements_data()?.list)
    }

    pub fn element_index(&self, g: &Perm) -> Result<Option<usize>> {
        Ok(self.elements_data()?.index.get(g).copied())
    }

    /// Index of `g`, which must be a member.
    pub fn index_of(&self, g: &Perm) -> Result<usize> {
        self.element_index(g)?.ok_or_else(|| Error::Validation(format!("{g} is not an element of the group")))
    }

    pub fn element(&self, i: usize) -> Result<&Perm> {
        Ok(&self.elements()?[i])
    }

    /// Index of the product of two elements given by index.
    pub fn mul_index(&self, a: usize, b: usize) -> Result<usize> {
        let e = self.elements_data()?;
        Ok(e.index[&(&e.list[a] * &e.list[b])])
    }

    pub fn classes(&self) -> Result<&ConjugacyClasses> {
        let el = self.elements_data()?;
        let cls = self.classes.get_or_init(|| compute_classes(&el.list, &el.index, &self.gens));
        if cls.len() > self.limits.max_classes {
            return Err(Error::Capacity(format!(
                "{} conjugacy classes exceed the bound {}",
                cls.len(),
                self.limits.max_classes
            )));
        }
        Ok(cls)
    }

    pub fn num_classes(&self) -> Result<usize> {
        Ok(self.classes()?.len())
    }

    pub fn class_of(&self, g: &Perm) -> Result<usize> {
        let i = self.index_of(g)?;
        Ok(self.classes()?.class_of[i])
    }

    pub fn class_rep(&self, k: usize) -> Result<&Perm> {
        let r = self.classes()?.reps[k];
        self.element(r)
    }

    pub fn centralizer_order(&self, k: usize) -> Result<u128> {
        Ok(self.order() / self.classes()?.sizes[k] as u128)
    }

    /// Class of `g^e` for a representative `g` of each class.
    pub fn power_map(&self, e: i64) -> Result<Vec<usize>> {
        let cls = self.classes()?;
        (0..cls.len()).map(|k| self.class_of(&self.class_rep(k)?.pow(e))).collect()
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> Result<u64> {
        Ok(self.classes()?.orders.iter().fold(1, |a, &b| num_integer::lcm(a, b)))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| self.gens[i + 1..].iter().all(|b| a * b == b * a))
    }

    /// The subgroup generated by `gens`, each of which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::Validation(format!("{g} is not in the ambient group")));
        }
        PermGroup::with_limits(self.degree, gens, self.limits)
    }

    pub fn subgroup_from_cycles(&self, gens: &[&str]) -> Result<PermGroup> {
        let gens = gens.iter().map(|s| Perm::parse(s, self.degree)).collect::<Result<_>>()?;
        self.subgroup(gens)
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.gens.iter().all(|x| g.contains(x))
    }

    /// Same degree and same set of elements.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        std::ptr::eq(self, other) || self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Whether `self` is normalized by every element of `g` (checked on generators).
    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g) && g.gens.iter().all(|x| self.gens.iter().all(|h| self.contains(&h.conjugate_by(x))))
    }

    /// Whether `x` normalizes `self`.
    pub fn normalized_by(&self, x: &Perm) -> bool {
        self.gens.iter().all(|h| self.contains(&h.conjugate_by(x)))
    }

    /// The conjugate subgroup `x^-1 self x`.
    pub fn conjugate(&self, x: &Perm) -> Result<PermGroup> {
        let gens = self.gens.iter().map(|h| h.conjugate_by(x)).collect();
        PermGroup::with_limits(self.degree, gens, self.limits)
    }

    /// `N_self(h)` by scanning the elements of `self`.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens = self.generate_from_elements(|x| h.normalized_by(x))?;
        self.subgroup(gens)
    }

    /// A generating set for the subgroup of elements satisfying `pred`
    /// (which must define a subgroup), chosen greedily in element order.
    pub fn generate_from_elements<F: Fn(&Perm) -> bool>(&self, pred: F) -> Result<Vec<Perm>> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut chain = StabChain::new(self.degree, &[]);
        for x in self.elements()? {
            if pred(x) && !chain.contains(x) {
                gens.push(x.clone());
                chain = StabChain::new(self.degree, &gens);
            }
        }
        Ok(gens)
    }

    /// Class fusion from a subgroup: for each class of `h`, the class of `self`
    /// containing it.
    pub fn fusion_from(&self, h: &PermGroup) -> Result<Vec<usize>> {
        if !h.is_subgroup_of(self) {
            return Err(Error::Validation("not a subgroup".into()));
        }
        let hc = h.classes()?;
        (0..hc.len()).map(|k| self.class_of(h.class_rep(k)?)).collect()
    }

    /// Right cosets `N x`, as a coset label for every element of `self` (labels
    /// numbered by least member) and the member lists.
    pub fn right_cosets(&self, n: &PermGroup) -> Result<(Vec<usize>, Vec<Vec<usize>>)> {
        if !n.is_subgroup_of(self) {
            return Err(Error::Validation("not a subgroup".into()));
        }
        let els = self.elements()?;
        let nels: Vec<usize> = n.elements()?.iter().map(|x| self.index_of(x)).collect::<Result<_>>()?;
        let mut label = vec![usize::MAX; els.len()];
        let mut cosets = Vec::new();
        for i in 0..els.len() {
            if label[i] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = nels.iter().map(|&m| self.mul_index(m, i)).collect::<Result<_>>()?;
            members.sort_unstable();
            for &m in &members {
                label[m] = cosets.len();
            }
            cosets.push(members);
        }
        Ok((label, cosets))
    }
}

fn compute_classes(list: &[Perm], index: &HashMap<Perm, usize>, gens: &[Perm]) -> ConjugacyClasses {
    let n = list.len();
    let mut raw_of = vec![usize::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if raw_of[start] != usize::MAX {
            continue;
        }
        let id = raw.len();
        let mut members = vec![start];
        raw_of[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for s in gens {
                let y = index[&list[x].conjugate_by(s)];
                if raw_of[y] == usize::MAX {
                    raw_of[y] = id;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        raw.push(members);
    }
    // the first member of each raw class is its least element
    let mut order: Vec<usize> = (0..raw.len()).collect();
    let key = |c: usize| (list[raw[c][0]].order(), raw[c].len(), raw[c][0]);
    order.sort_by_key(|&c| key(c));
    let mut class_of = vec![0; n];
    let mut members = Vec::with_capacity(raw.len());
    for (new, &old) in order.iter().enumerate() {
        for &x in &raw[old] {
            class_of[x] = new;
        }
        members.push(raw[old].clone());
    }
    let reps: Vec<usize> = members.iter().map(|m| m[0]).collect();
    let sizes = members.iter().map(Vec::len).collect();
    let orders = reps.iter().map(|&r| list[r].order()).collect();
    let inverse = reps.iter().map(|&r| class_of[index[&list[r].inverse()]]).collect();
    ConjugacyClasses { reps, sizes, orders, members, class_of, inverse }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_orders_and_classes() {
        let s3 = PermGroup::from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.classes().unwrap().sizes, vec![1, 3, 2]);
        let d8 = PermGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap();
        assert_eq!(d8.order(), 8);
        let s4 = PermGroup::from_cycles(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        assert_eq!(s4.num_classes().unwrap(), 5);
        assert_eq!(s4.exponent().unwrap(), 12);
    }

    #[test]
    fn capacity_is_enforced() {
        let lim = Limits { max_order: 10, max_classes: 512 };
        let s4 = PermGroup::with_limits(
            4,
            vec![Perm::parse("(1 2)", 4).unwrap(), Perm::parse("(1 2 3 4)", 4).unwrap()],
            lim,
        )
        .unwrap();
        assert!(matches!(s4.classes(), Err(Error::Capacity(_))));
        let lim = Limits { max_order: 100, max_classes: 3 };
        let s4 = PermGroup::with_limits(4, s4.generators().to_vec(), lim).unwrap();
        assert!(matches!(s4.classes(), Err(Error::Capacity(_))));
    }

    #[test]
    fn normality_and_normalizers() {
        let s4 = PermGroup::from_cycles(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        let v4 = s4.subgroup_from_cycles(&["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        assert!(v4.is_normal_in(&s4));
        let c2 = s4.subgroup_from_cycles(&["(1 2)"]).unwrap();
        assert!(!c2.is_normal_in(&s4));
        assert_eq!(s4.normalizer(&c2).unwrap().order(), 4);
        let fus = s4.fusion_from(&v4).unwrap();
        assert_eq!(fus.len(), 4);
        assert_eq!(fus[1], fus[2]);
    }
}
