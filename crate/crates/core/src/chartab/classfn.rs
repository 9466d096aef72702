//! Class functions and the standard operations on them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::arith::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::perm::{GroupHom, GroupRef, Perm, PermGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Virtual,
    Character,
    Irreducible,
}

/// Values of a class function, one per conjugacy class of `group` in its
/// canonical class order.
#[derive(Clone)]
pub struct ClassFunction {
    group: GroupRef,
    values: Vec<CyclotomicNumber>,
    kind: Kind,
}

fn same(a: &PermGroup, b: &PermGroup) -> bool {
    std::ptr::eq(a, b) || a.degree() == b.degree() && a.same_group(b)
}

impl ClassFunction {
    pub fn new(group: GroupRef, values: Vec<CyclotomicNumber>, kind: Kind) -> Result<Self> {
        let r = group.num_classes()?;
        if values.len() != r {
            return Err(Error::Validation(format!("{} values for {r} classes", values.len())));
        }
        Ok(ClassFunction { group, values, kind })
    }

    pub fn zero(group: GroupRef) -> Result<Self> {
        let r = group.num_classes()?;
        Ok(ClassFunction { group, values: vec![CyclotomicNumber::zero(); r], kind: Kind::Virtual })
    }

    pub fn trivial(group: GroupRef) -> Result<Self> {
        let r = group.num_classes()?;
        Ok(ClassFunction { group, values: vec![CyclotomicNumber::one(); r], kind: Kind::Irreducible })
    }

    /// The regular character.
    pub fn regular(group: GroupRef) -> Result<Self> {
        let mut f = Self::zero(group)?;
        f.values[0] = CyclotomicNumber::from_bigint(BigInt::from(f.group.order()));
        f.kind = Kind::Character;
        Ok(f)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CyclotomicNumber {
        &self.values[class]
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = kind;
        self
    }

    /// Value at the identity.
    pub fn degree(&self) -> &CyclotomicNumber {
        &self.values[0]
    }

    pub fn degree_int(&self) -> Option<i64> {
        self.values[0].to_i64()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CyclotomicNumber::is_zero)
    }

    /// Value at an arbitrary element.
    pub fn at(&self, g: &Perm) -> Result<&CyclotomicNumber> {
        Ok(&self.values[self.group.class_of(g)?])
    }

    fn check_same(&self, other: &ClassFunction) -> Result<()> {
        if same(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch("class functions live on different groups".into()))
        }
    }

    fn combine_kind(a: Kind, b: Kind) -> Kind {
        if a == Kind::Virtual || b == Kind::Virtual {
            Kind::Virtual
        } else {
            Kind::Character
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { group: self.group.clone(), values, kind: Self::combine_kind(self.kind, other.kind) })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(ClassFunction { group: self.group.clone(), values, kind: Kind::Virtual })
    }

    /// Pointwise product (tensor product of characters).
    pub fn tensor(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(ClassFunction { group: self.group.clone(), values, kind: Self::combine_kind(self.kind, other.kind) })
    }

    pub fn scale(&self, k: i64) -> ClassFunction {
        let c = CyclotomicNumber::from_int(k);
        let kind = match (k, self.kind) {
            (_, Kind::Virtual) => Kind::Virtual,
            (k, _) if k < 0 => Kind::Virtual,
            (1, kd) => kd,
            _ => Kind::Character,
        };
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| &c * v).collect(), kind }
    }

    pub fn scale_by(&self, c: &CyclotomicNumber) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
            kind: Kind::Virtual,
        }
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.conj()).collect(),
            kind: self.kind,
        }
    }

    /// `(1/|G|) sum_g f(g) conj(h(g))`, computed classwise.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<CyclotomicNumber> {
        self.check_same(other)?;
        let sizes = &self.group.classes()?.sizes;
        let mut acc = CyclotomicNumber::zero();
        for ((a, b), &s) in self.values.iter().zip(&other.values).zip(sizes) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc += &(&(a * &b.conj()) * &CyclotomicNumber::from_int(s as i64));
        }
        Ok(acc.div_int(&BigInt::from(self.group.order())))
    }

    pub fn norm(&self) -> Result<CyclotomicNumber> {
        self.inner_product(self)
    }

    /// Inner product that must be a rational integer.
    pub fn inner_int(&self, other: &ClassFunction) -> Result<i64> {
        let v = self.inner_product(other)?;
        v.to_i64().ok_or_else(|| Error::Invariant(format!("inner product {v} is not an integer")))
    }

    /// Restriction to a subgroup via class fusion.
    pub fn restrict(&self, h: &GroupRef) -> Result<ClassFunction> {
        let fusion = self.group.fusion_from(h)?;
        let values = fusion.iter().map(|&k| self.values[k].clone()).collect();
        let kind = if self.kind == Kind::Virtual { Kind::Virtual } else { Kind::Character };
        Ok(ClassFunction { group: h.clone(), values, kind })
    }

    /// Induction to an overgroup `g`.
    pub fn induce(&self, g: &GroupRef) -> Result<ClassFunction> {
        let h = &self.group;
        if !h.is_subgroup_of(g) {
            return Err(Error::Validation("induction target does not contain the subgroup".into()));
        }
        let fusion = g.fusion_from(h)?;
        let hsizes = &h.classes()?.sizes;
        let gsizes = &g.classes()?.sizes;
        let mut sums = vec![CyclotomicNumber::zero(); gsizes.len()];
        for (c, &k) in fusion.iter().enumerate() {
            if !self.values[c].is_zero() {
                sums[k] += &(&self.values[c] * &CyclotomicNumber::from_int(hsizes[c] as i64));
            }
        }
        let go = BigInt::from(g.order());
        let ho = BigInt::from(h.order());
        let values = sums
            .into_iter()
            .zip(gsizes)
            .map(|(s, &sz)| {
                if s.is_zero() {
                    return s;
                }
                let f = BigRational::new(go.clone(), &ho * BigInt::from(sz));
                &s * &CyclotomicNumber::from_rational(&f)
            })
            .collect();
        let kind = if self.kind == Kind::Virtual { Kind::Virtual } else { Kind::Character };
        Ok(ClassFunction { group: g.clone(), values, kind })
    }

    /// Pulls back along a homomorphism whose target is this function's group.
    pub fn inflate(&self, hom: &GroupHom) -> Result<ClassFunction> {
        if !same(hom.target(), &self.group) {
            return Err(Error::GroupMismatch("homomorphism target differs from the class function's group".into()));
        }
        let map = hom.class_map()?;
        let values = map.iter().map(|&k| self.values[k].clone()).collect();
        let kind = match self.kind {
            Kind::Virtual => Kind::Virtual,
            _ if hom.is_surjective() => self.kind,
            _ => Kind::Character,
        };
        Ok(ClassFunction { group: hom.source().clone(), values, kind })
    }

    /// The conjugate `f^x(n) = f(x n x^-1)` by an element normalizing the group.
    pub fn conjugate(&self, x: &Perm) -> Result<ClassFunction> {
        let g = &self.group;
        if !g.normalized_by(x) {
            return Err(Error::Validation(format!("{x} does not normalize the group")));
        }
        let xi = x.inverse();
        let cls = g.classes()?;
        let values = (0..cls.len())
            .map(|k| Ok(self.values[g.class_of(&g.class_rep(k)?.conjugate_by(&xi))?].clone()))
            .collect::<Result<_>>()?;
        Ok(ClassFunction { group: g.clone(), values, kind: self.kind })
    }

    /// Transport to a group with the same elements (e.g. given by other
    /// generators) by re-reading values at its class representatives.
    pub fn transport(&self, to: &GroupRef) -> Result<ClassFunction> {
        if !same(&self.group, to) {
            return Err(Error::GroupMismatch("groups have different elements".into()));
        }
        let cls = to.classes()?;
        let values = (0..cls.len()).map(|k| Ok(self.at(to.class_rep(k)?)?.clone())).collect::<Result<_>>()?;
        Ok(ClassFunction { group: to.clone(), values, kind: self.kind })
    }

    /// Same group and identical values.
    pub fn equals(&self, other: &ClassFunction) -> bool {
        same(&self.group, &other.group) && self.values == other.values
    }

    /// True if the value at the identity is a positive integer.
    pub fn has_positive_integer_degree(&self) -> bool {
        self.values[0].to_integer().is_some_and(|d| d.is_positive())
    }

    pub fn is_rational_valued(&self) -> bool {
        self.values.iter().all(|v| v.is_rational())
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.kind)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}
