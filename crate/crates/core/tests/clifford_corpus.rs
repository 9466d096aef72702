use std::sync::Arc;

use finrep_core::chartab::{CharTable, ClassFunction};
use finrep_core::clifford::{
    extension_gluing, outer_tensor_power, wreath_extension, wreath_value, CliffordPair, GluingInput,
};
use finrep_core::corpus;
use finrep_core::error::Error;
use finrep_core::perm::{GroupRef, PermGroup};

fn pair(group: &str, normal: &str) -> CliffordPair {
    let g = corpus::group(group).unwrap();
    let n = Arc::new(g.subgroup(normal).unwrap());
    CliffordPair::new(g.group, n).unwrap()
}

const CASES: &[(&str, &str)] =
    &[("s3", "A3"), ("a4", "V4"), ("s4", "V4"), ("d8", "Z"), ("q8", "Z"), ("s3_wr_c2", "S3xS3"), ("gl2_3", "SL2(3)")];

fn faithful_linear(p: &CliffordPair) -> usize {
    (0..p.table_n.len()).find(|&i| p.table_n.rows()[i].values().iter().skip(1).all(|v| !v.is_one())).unwrap()
}

#[test]
fn spec_decompositions() {
    let d8 = pair("d8", "Z");
    let theta = faithful_linear(&d8);
    let r = d8.decomposition(theta).unwrap();
    assert_eq!(r.inertia.order(), 8);
    assert_eq!(r.omega_order(), 4);
    assert!(r.omega_abelian);
    assert_eq!(r.omega.group.exponent().unwrap(), 2);
    assert!(!r.extendable);
    assert_eq!(r.label_dims, vec![2]);
    assert!(r.gallagher.is_none());

    let s4 = pair("s4", "V4");
    let r = s4.decomposition(1).unwrap();
    assert_eq!(r.orbit.len(), 3);
    assert_eq!(r.inertia.order(), 8);
    assert!(r.extendable);
    assert_eq!(r.extensions.len(), 2);
    assert_eq!(r.label_dims, vec![1, 1]);
    let degs: Vec<i64> = r.above.iter().map(|&i| s4.table_m.rows()[i].degree_int().unwrap()).collect();
    assert_eq!(degs, vec![3, 3]);
    assert_eq!(r.gallagher_bijective, Some(true));

    let a4 = pair("a4", "V4");
    let rs = a4.regular_sum_check(1).unwrap();
    assert_eq!(rs.character.degree_int(), Some(3));
    assert_eq!(rs.terms.len(), 1);
    assert_eq!(rs.conjugates_checked, 3);

    let d8rs = d8.regular_sum_check(theta).unwrap();
    assert_eq!(d8rs.terms.len(), 1);
    assert_eq!(d8rs.terms[0].1, 2);
}

#[test]
fn clifford_counts_on_corpus() {
    for (g, n) in CASES {
        let p = pair(g, n);
        for theta in 0..p.table_n.len() {
            let r = p.decomposition(theta).unwrap();
            // orbit-stabilizer
            assert_eq!(r.orbit.len() as u128 * r.inertia.order(), p.m.order());
            // <Ind theta, Ind theta> = |Omega_theta|
            let ind = p.table_n.rows()[theta].induce(&p.m).unwrap();
            assert_eq!(ind.inner_int(&ind).unwrap() as u128, r.omega_order(), "{g}/{n} theta {theta}");
            let sq: i64 = r.label_dims.iter().map(|d| d * d).sum();
            assert_eq!(sq as u128, r.omega_order());
            if r.extendable && r.omega_abelian {
                assert_eq!(r.above.len() as u128, r.omega_order(), "{g}/{n} theta {theta}");
                assert_eq!(r.gallagher_bijective, Some(true));
            }
            p.regular_sum_check(theta).unwrap();
        }
    }
}

#[test]
fn wreath_extensions_are_irreducible() {
    for kname in ["c2", "s3"] {
        let k: GroupRef = Arc::new(match kname {
            "c2" => PermGroup::from_cycles(2, &["(1 2)"]).unwrap(),
            _ => PermGroup::from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap(),
        });
        let tk = CharTable::compute(&k).unwrap();
        for theta in tk.rows() {
            for m in [1usize, 2, 3] {
                let (w, chi) = wreath_extension(theta, m).unwrap();
                assert!(chi.norm().unwrap().is_one(), "{kname} m={m}");
                let base = Arc::new(w.base_group().unwrap());
                assert_eq!(chi.restrict(&base).unwrap(), outer_tensor_power(&w, theta).unwrap());
                for c in 0..w.group.num_classes().unwrap() {
                    let g = w.group.class_rep(c).unwrap();
                    for rot in 1..m {
                        assert_eq!(wreath_value(&w, theta, g, rot).unwrap(), *chi.value(c));
                    }
                }
                if m == 1 {
                    assert_eq!(chi.values(), theta.transport(&w.group).unwrap().values());
                }
                if m == 2 {
                    let tw = CharTable::compute(&w.group).unwrap();
                    assert!(tw.index_of(&chi).is_some());
                }
            }
        }
    }
}

#[test]
fn wreath_sign_of_c2() {
    let c2: GroupRef = Arc::new(PermGroup::from_cycles(2, &["(1 2)"]).unwrap());
    let sign = CharTable::compute(&c2).unwrap().rows()[1].clone();
    let (w, chi) = wreath_extension(&sign, 2).unwrap();
    assert_eq!(w.group.order(), 8);
    let swap = w.element(&finrep_core::perm::WreathElement {
        base: vec![c2.identity(), c2.identity()],
        top: finrep_core::perm::Perm::parse("(1 2)", 2).unwrap(),
    });
    assert!(chi.at(&swap).unwrap().is_one());
    assert_eq!(chi.degree_int(), Some(1));
}

fn linear_with(t: &CharTable, pred: impl Fn(&ClassFunction) -> bool) -> Vec<ClassFunction> {
    t.rows().iter().filter(|r| r.degree_int() == Some(1) && pred(r)).cloned().collect()
}

#[test]
fn gluing_direct_product() {
    // N = C3 inside C3 x C2 x C2 on 7 points
    let i: GroupRef = Arc::new(PermGroup::from_cycles(7, &["(1 2 3)", "(4 5)", "(6 7)"]).unwrap());
    let n: GroupRef = Arc::new(i.subgroup_from_cycles(&["(1 2 3)"]).unwrap());
    let ig: GroupRef = Arc::new(i.subgroup_from_cycles(&["(1 2 3)", "(4 5)"]).unwrap());
    let ip: GroupRef = Arc::new(i.subgroup_from_cycles(&["(1 2 3)", "(6 7)"]).unwrap());
    let theta = CharTable::compute(&n).unwrap().rows()[1].clone();
    let extends = |r: &ClassFunction| r.restrict(&n).unwrap() == theta;
    let tg = CharTable::compute(&ig).unwrap();
    let tp = CharTable::compute(&ip).unwrap();
    let ug = linear_with(&tg, |r| {
        extends(r) && r.at(&finrep_core::perm::Perm::parse("(4 5)", 7).unwrap()).unwrap().is_one()
    });
    let up = linear_with(&tp, |r| {
        extends(r) && r.at(&finrep_core::perm::Perm::parse("(6 7)", 7).unwrap()).unwrap().is_one()
    });
    let k = extension_gluing(&GluingInput {
        i: &i,
        n: &n,
        theta: &theta,
        i_gamma: &ig,
        u_gamma: &ug[0],
        i_phi: &ip,
        u_phi: &up[0],
    })
    .unwrap();
    let ti = CharTable::compute(&i).unwrap();
    let chi = &ti.rows()[k];
    // theta ⊠ 1 ⊠ 1: trivial on both C2 factors
    assert!(chi.at(&finrep_core::perm::Perm::parse("(4 5)", 7).unwrap()).unwrap().is_one());
    assert!(chi.at(&finrep_core::perm::Perm::parse("(6 7)", 7).unwrap()).unwrap().is_one());
    assert_eq!(chi.restrict(&n).unwrap(), theta);
}

#[test]
fn gluing_fails_without_extension() {
    let d8 = corpus::group("d8").unwrap();
    let i = d8.group.clone();
    let n: GroupRef = Arc::new(d8.subgroup("Z").unwrap());
    let ig: GroupRef = Arc::new(d8.subgroup("C4").unwrap());
    let ip: GroupRef = Arc::new(i.subgroup_from_cycles(&["(1 3)", "(1 3)(2 4)"]).unwrap());
    let tn = CharTable::compute(&n).unwrap();
    let theta = tn.rows()[1].clone();
    let ug: Vec<ClassFunction> =
        CharTable::compute(&ig).unwrap().rows().iter().filter(|r| r.restrict(&n).unwrap() == theta).cloned().collect();
    let up: Vec<ClassFunction> =
        CharTable::compute(&ip).unwrap().rows().iter().filter(|r| r.restrict(&n).unwrap() == theta).cloned().collect();
    assert!(!ug.is_empty() && !up.is_empty());
    let err = extension_gluing(&GluingInput {
        i: &i,
        n: &n,
        theta: &theta,
        i_gamma: &ig,
        u_gamma: &ug[0],
        i_phi: &ip,
        u_phi: &up[0],
    })
    .unwrap_err();
    assert!(matches!(err, Error::Hypothesis(_)), "{err}");
}

#[test]
fn gluing_is_injective() {
    // C4 ⋊ (C2 x C2), one factor inverting: D8 x C2 on 6 points
    let i: GroupRef = Arc::new(PermGroup::from_cycles(6, &["(1 2 3 4)", "(2 4)", "(5 6)"]).unwrap());
    let n: GroupRef = Arc::new(i.subgroup_from_cycles(&["(1 2 3 4)"]).unwrap());
    let ig: GroupRef = Arc::new(i.subgroup_from_cycles(&["(1 2 3 4)", "(2 4)"]).unwrap());
    let ip: GroupRef = Arc::new(i.subgroup_from_cycles(&["(1 2 3 4)", "(5 6)"]).unwrap());
    let tn = CharTable::compute(&n).unwrap();
    // the order-2 character of C4 is invariant under inversion
    let theta =
        tn.rows().iter().find(|r| r.is_rational_valued() && !r.values().iter().all(|v| v.is_one())).unwrap().clone();
    let ext = |sub: &GroupRef| -> Vec<ClassFunction> {
        CharTable::compute(sub).unwrap().rows().iter().filter(|r| r.restrict(&n).unwrap() == theta).cloned().collect()
    };
    let (ugs, ups) = (ext(&ig), ext(&ip));
    assert_eq!((ugs.len(), ups.len()), (2, 2));
    let mut outs = Vec::new();
    for ug in &ugs {
        for up in &ups {
            outs.push(
                extension_gluing(&GluingInput {
                    i: &i,
                    n: &n,
                    theta: &theta,
                    i_gamma: &ig,
                    u_gamma: ug,
                    i_phi: &ip,
                    u_phi: up,
                })
                .unwrap(),
            );
        }
    }
    let mut dedup = outs.clone();
    dedup.sort_unstable();
    dedup.dedup();
    assert_eq!(dedup.len(), 4);
}
