use std::sync::Arc;

use finrep_core::algebra::{
    central_idempotents_abelian, corner, corner_census, disconnected_corner_check, named_abelian, named_skew,
    twisted_group_algebra, Cocycle2, SkewGroupAlgebra,
};
use finrep_core::arith::CyclotomicNumber;
use finrep_core::corpus;
use finrep_core::error::Error;
use finrep_core::hc::BNDatum;
use finrep_core::perm::{Limits, Perm, PermGroup};
use num_bigint::BigInt;
use proptest::prelude::*;

fn sign(bit: bool) -> CyclotomicNumber {
    CyclotomicNumber::from_int(if bit { -1 } else { 1 })
}

/// Exponent vector of an element of `<(1 2), (3 4)>`.
fn bits(p: &Perm) -> (bool, bool) {
    let img = p.images();
    (img[0] == 1, img[2] == 3)
}

#[test]
fn twisted_group_algebras() {
    let c2 = named_abelian("C2").unwrap();
    let a = twisted_group_algebra(&Cocycle2::trivial(c2).unwrap()).unwrap();
    assert_eq!(a.center().len(), 2);

    let v4 = Arc::new(PermGroup::from_cycles(4, &["(1 2)", "(3 4)"]).unwrap());
    let alpha = Cocycle2::from_fn(v4.clone(), |a, b| sign(bits(a).1 && bits(b).0)).unwrap();
    let tw = twisted_group_algebra(&alpha).unwrap();
    assert_eq!(tw.dim(), 4);
    // one block M_2(C): center is the scalars
    assert_eq!(tw.center().len(), 1);
    let untwisted = twisted_group_algebra(&Cocycle2::trivial(v4).unwrap()).unwrap();
    assert_eq!(untwisted.center().len(), 4);

    let c3 = named_abelian("C3").unwrap();
    let a3 = twisted_group_algebra(&Cocycle2::trivial(c3.clone()).unwrap()).unwrap();
    let (_, idems) = central_idempotents_abelian(&c3).unwrap();
    assert_eq!(idems.len(), 3);
    for e in &idems {
        assert!(a3.is_idempotent(e));
    }
}

#[test]
fn non_cocycle_is_rejected() {
    // normalized, -1 only at (x, xy); fails the identity at (x, x, y)
    let v4 = Arc::new(PermGroup::from_cycles(4, &["(1 2)", "(3 4)"]).unwrap());
    let r = Cocycle2::from_fn(v4, |a, b| sign(bits(a) == (true, false) && bits(b) == (true, true)));
    assert!(matches!(r, Err(Error::Validation(_))));
}

#[test]
fn c2_idempotents_by_hand() {
    let c2 = named_abelian("C2").unwrap();
    let (_, idems) = central_idempotents_abelian(&c2).unwrap();
    let half = CyclotomicNumber::from_int(1).div_int(&BigInt::from(2));
    let mut got: Vec<Vec<CyclotomicNumber>> = idems;
    got.sort_by(|x, y| x[1].cmp_coeffs(&y[1]));
    assert_eq!(got[0], vec![half.clone(), -&half]);
    assert_eq!(got[1], vec![half.clone(), half]);
}

#[test]
fn orthogonality_on_c6() {
    let c6 = named_abelian("C6").unwrap();
    let a = twisted_group_algebra(&Cocycle2::trivial(c6.clone()).unwrap()).unwrap();
    let (_, idems) = central_idempotents_abelian(&c6).unwrap();
    let mut total = a.zero();
    for (i, e) in idems.iter().enumerate() {
        for (j, f) in idems.iter().enumerate() {
            let p = a.mul(e, f);
            if i == j {
                assert_eq!(&p, e);
            } else {
                assert!(p.iter().all(CyclotomicNumber::is_zero));
            }
        }
        total = a.add(&total, e);
    }
    assert_eq!(&total, a.unit());
}

/// Structure constants of the skew algebra against the group algebra of the
/// permutation model of the same semidirect product.
fn matches_group_algebra(s: &SkewGroupAlgebra) {
    let model = s.data.realize().unwrap();
    let ga = twisted_group_algebra(&Cocycle2::trivial(model.clone()).unwrap()).unwrap();
    let (oe, we) = (s.omega().elements().unwrap(), s.weyl().elements().unwrap());
    let to_model: Vec<usize> = oe
        .iter()
        .flat_map(|x| we.iter().map(move |w| (x, w)))
        .map(|(x, w)| model.index_of(&s.data.embed(x, w).unwrap()).unwrap())
        .collect();
    let n = to_model.len();
    assert_eq!(n, ga.dim());
    for i in 0..n {
        for j in 0..n {
            let lhs: Vec<(usize, CyclotomicNumber)> =
                s.algebra.structure_constant(i, j).iter().map(|(k, c)| (to_model[*k], c.clone())).collect();
            assert_eq!(lhs, ga.structure_constant(to_model[i], to_model[j]));
        }
    }
}

#[test]
fn skew_group_algebras() {
    let s3 = named_skew("C3", "C2", "invert").unwrap();
    assert_eq!(s3.algebra.dim(), 6);
    matches_group_algebra(&s3);
    // C[S3]: three classes
    assert_eq!(s3.algebra.center().len(), 3);
    assert!(!s3.data.realize().unwrap().is_abelian());

    let c2 = named_skew("C2", "C1", "trivial").unwrap();
    assert_eq!(c2.algebra.dim(), 2);
    assert_eq!(c2.algebra.center().len(), 2);

    let d8 = named_skew("C2xC2", "C2", "swap").unwrap();
    assert_eq!(d8.algebra.dim(), 8);
    matches_group_algebra(&d8);
    // C[D8]: five classes
    assert_eq!(d8.algebra.center().len(), 5);
}

#[test]
fn invalid_actions_are_rejected() {
    assert!(matches!(named_skew("C3", "C2", "swap"), Err(Error::Validation(_))));
    assert!(matches!(named_skew("C3", "C1", "invert"), Err(Error::Validation(_))));
    assert!(matches!(named_skew("C3", "C2", "twist"), Err(Error::Parse(_))));
    assert!(matches!(named_skew("D8", "C2", "trivial"), Err(Error::Parse(_))));
    // C2xC4 swap is not an automorphism
    assert!(matches!(named_skew("C2xC4", "C2", "swap"), Err(Error::Validation(_))));
}

#[test]
fn corner_examples() {
    let s = named_skew("C3", "C2", "invert").unwrap();
    let census = corner_census(&s).unwrap();
    let trivial = census.reports.iter().find(|r| r.stabilizer.len() == 2).unwrap();
    assert_eq!(trivial.corner_dim, 2);
    assert!(trivial.holds());
    assert!(!trivial.multiplier);
    for r in census.reports.iter().filter(|r| r.stabilizer.len() == 1) {
        assert_eq!(r.corner_dim, 1);
        assert!(r.holds());
    }
    assert_eq!(census.dims.iter().filter(|&&d| d == 1).count(), 2);

    let whole = corner(&s.algebra, s.algebra.unit()).unwrap();
    assert_eq!(whole.dim(), 6);
    assert_eq!(whole.algebra.center().len(), 3);

    let mut not_idem = s.algebra.unit().clone();
    not_idem[0] = CyclotomicNumber::from_int(2);
    assert!(matches!(corner(&s.algebra, &not_idem), Err(Error::Validation(_))));
}

#[test]
fn corner_census_totals() {
    for (omega, action, orbits, sum) in [("C3", "invert", 2, 4), ("C2xC2", "swap", 3, 6)] {
        let s = named_skew(omega, "C2", action).unwrap();
        let c = corner_census(&s).unwrap();
        assert!(c.dims_match_stabilizers());
        assert!(c.isomorphisms_hold());
        assert_eq!(c.orbits, orbits);
        assert_eq!(c.sum, sum);
        // the per-character corners add up to |W| per orbit
        assert_eq!(c.sum as u128, c.weyl_orbits);
    }
    // with W acting trivially every character is fixed and the sum is dim A
    let c = corner_census(&named_skew("C3", "C2", "trivial").unwrap()).unwrap();
    assert!(c.sum_is_omega_weyl());
    assert_eq!(c.sum, c.algebra_dim);
}

#[test]
fn disconnected_gl2_3_end_dimension() {
    let d = BNDatum::from_json(corpus::text("gl2_3_disconnected").unwrap(), Limits::default()).unwrap();
    for theta in 0..2 {
        let c = disconnected_corner_check(&d, "B", theta).unwrap();
        assert_eq!((c.omega_order, c.weyl_order), (2, 2));
        assert_eq!(c.end_dim, 4);
        assert_eq!(c.algebra_dim, 4);
        assert!(c.holds());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cyclic_idempotents_sum_to_one(n in 1usize..=8) {
        let g = named_abelian(&format!("C{n}")).unwrap();
        let a = twisted_group_algebra(&Cocycle2::trivial(g.clone()).unwrap()).unwrap();
        let (_, idems) = central_idempotents_abelian(&g).unwrap();
        prop_assert_eq!(idems.len(), n);
        let total = idems.iter().fold(a.zero(), |t, e| a.add(&t, e));
        prop_assert_eq!(&total, a.unit());
        for e in &idems {
            prop_assert!(a.is_idempotent(e));
            prop_assert_eq!(corner(&a, e).unwrap().dim(), 1);
        }
    }

    #[test]
    fn skew_dimension_and_corner_dims(n in 2usize..=6, invert in any::<bool>()) {
        let action = if invert { "invert" } else { "trivial" };
        let s = named_skew(&format!("C{n}"), "C2", action).unwrap();
        prop_assert_eq!(s.algebra.dim(), 2 * n);
        let c = corner_census(&s).unwrap();
        prop_assert!(c.dims_match_stabilizers());
        prop_assert!(c.isomorphisms_hold());
        prop_assert_eq!(c.sum as u128, c.weyl_orbits);
    }
}
