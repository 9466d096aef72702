use std::sync::{Arc, OnceLock};

use finrep_core::chartab::{CharTable, ClassFunction};
use finrep_core::corpus;
use finrep_core::hc::{q_parameter, BNDatum, HcContext, QParameter};
use finrep_core::perm::Limits;
use proptest::prelude::*;

fn datum(name: &str) -> BNDatum {
    BNDatum::from_json(corpus::text(name).unwrap(), Limits::default()).unwrap()
}

fn ctx(name: &str) -> &'static HcContext {
    static CACHE: OnceLock<Vec<(&'static str, HcContext)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        ["gl2_3_bn", "gl2_5_bn", "gl3_2_bn", "gl2_3_disconnected"]
            .into_iter()
            .map(|n| (n, HcContext::new(datum(n)).unwrap()))
            .collect()
    });
    &all.iter().find(|(n, _)| *n == name).unwrap().1
}

fn trivial_on(c: &HcContext, record: &str) -> ClassFunction {
    ClassFunction::trivial(c.datum.record(record).unwrap().l.clone()).unwrap()
}

/// Degrees of the constituents, with multiplicity, sorted.
fn constituent_degrees(c: &HcContext, f: &ClassFunction) -> Vec<i64> {
    let degs = c.table.degrees();
    let mut out = Vec::new();
    for (i, m) in c.table.decompose_int(f).unwrap().into_iter().enumerate() {
        assert!(m >= 0);
        out.extend(std::iter::repeat(degs[i]).take(m as usize));
    }
    out.sort_unstable();
    out
}

#[test]
fn borel_induction_of_trivial() {
    let c = ctx("gl2_3_bn");
    let r = c.hc_induce("B", &trivial_on(c, "B")).unwrap();
    assert_eq!(constituent_degrees(c, &r), [1, 3]);
    let c = ctx("gl3_2_bn");
    let r = c.hc_induce("B", &trivial_on(c, "B")).unwrap();
    assert_eq!(constituent_degrees(c, &r), [1, 6, 6, 8]);
    assert_eq!(r.degree_int(), Some(21));
}

#[test]
fn restriction_examples() {
    let c = ctx("gl2_3_bn");
    let one_t = trivial_on(c, "B");
    let triv_g = ClassFunction::trivial(c.group().clone()).unwrap();
    for rec in &c.datum.records {
        let r = rec.restrict(&triv_g).unwrap();
        assert!(r.values().iter().all(|v| v.is_one()), "record {}", rec.name);
    }
    let st = c.table.rows().iter().find(|x| x.degree_int() == Some(3) && x.values().iter().all(|v| v.is_rational()));
    let st = st.unwrap();
    let res = c.hc_restrict("B", st).unwrap();
    assert_eq!(res.inner_int(&one_t).unwrap(), 1);
    let cusp: Vec<&ClassFunction> = c.table.rows().iter().filter(|x| c.is_cuspidal(x).unwrap()).collect();
    assert_eq!(cusp.len(), 3);
    for x in cusp {
        assert_eq!(x.degree_int(), Some(2));
        assert!(c.hc_restrict("B", x).unwrap().is_zero());
    }
}

#[test]
fn cuspidal_counts() {
    let c = ctx("gl3_2_bn");
    let cusp: Vec<i64> =
        c.table.rows().iter().filter(|x| c.is_cuspidal(x).unwrap()).map(|x| x.degree_int().unwrap()).collect();
    assert_eq!(cusp, [3, 3]);
    assert!(!c.is_cuspidal(c.table.row(0).unwrap()).unwrap());
    let c = ctx("gl2_5_bn");
    let n = c.table.rows().iter().filter(|x| c.is_cuspidal(x).unwrap()).count();
    assert_eq!(n, 10);
}

#[test]
fn adjointness_everywhere() {
    for name in ["gl2_3_bn", "gl3_2_bn", "gl2_3_disconnected"] {
        let c = ctx(name);
        for (i, rec) in c.datum.records.iter().enumerate() {
            for tau in c.levi_tables[i].rows() {
                let r = rec.induce(c.group(), tau).unwrap();
                for rho in c.table.rows() {
                    let lhs = r.inner_product(rho).unwrap();
                    let rhs = tau.inner_product(&rec.restrict(rho).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{name} {}", rec.name);
                }
            }
        }
    }
}

#[test]
fn transitivity_through_p21() {
    let c = ctx("gl3_2_bn");
    let b = c.datum.record("B").unwrap();
    for m in ["P21", "P12"] {
        let pm = c.datum.record(m).unwrap();
        let inner = b.within(&pm.l).unwrap();
        for tau in c.levi_tables[0].rows() {
            let two_step = pm.induce(c.group(), &inner.induce(&pm.l, tau).unwrap()).unwrap();
            let direct = b.induce(c.group(), tau).unwrap();
            assert_eq!(two_step.values(), direct.values());
        }
    }
}

fn series_shape(c: &HcContext) -> Vec<(String, Vec<i64>, u128, i64)> {
    let map = c.partition().unwrap();
    let degs = c.table.degrees();
    map.series
        .iter()
        .map(|s| {
            let mut d: Vec<i64> = s.constituents.iter().map(|&(k, _)| degs[k]).collect();
            d.sort_unstable();
            (c.datum.records[s.record].name.clone(), d, s.weyl.order, s.weyl.end_dim)
        })
        .collect()
}

#[test]
fn partition_gl3_2() {
    let shape = series_shape(ctx("gl3_2_bn"));
    let expect = [("B", vec![1, 6, 8], 6, 6), ("P21", vec![7], 1, 1), ("G", vec![3], 1, 1), ("G", vec![3], 1, 1)];
    assert_eq!(shape.len(), expect.len());
    for (got, want) in shape.iter().zip(expect) {
        assert_eq!((got.0.as_str(), got.1.clone(), got.2, got.3), want);
    }
    // the two Levis of type (2,1) and (1,2) carry one class of cuspidal pairs
    let map = ctx("gl3_2_bn").partition().unwrap();
    assert_eq!(map.series[1].pairs.len(), 2);
}

#[test]
fn partition_gl2_3_and_gl2_5() {
    let shape = series_shape(ctx("gl2_3_bn"));
    let mut sizes: Vec<usize> = shape.iter().map(|s| s.1.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [1, 1, 1, 1, 2, 2]);
    for (rec, degs, w, end) in &shape {
        assert_eq!(*w as i64, *end);
        match rec.as_str() {
            "B" if degs.len() == 2 => assert_eq!((degs.clone(), *w), (vec![1, 3], 2)),
            "B" => assert_eq!((degs.clone(), *w), (vec![4], 1)),
            _ => assert_eq!(degs, &[2]),
        }
    }
    let shape = series_shape(ctx("gl2_5_bn"));
    let principal: usize = shape.iter().filter(|s| s.0 == "B").map(|s| s.1.len()).sum();
    let cuspidal = shape.iter().filter(|s| s.0 == "G").count();
    assert_eq!((principal, cuspidal), (14, 10));
    assert_eq!(shape.iter().filter(|s| s.1 == [6]).count(), 6);
}

#[test]
fn trivial_datum_makes_every_character_cuspidal() {
    let g = corpus::group("s4").unwrap().group;
    let d = BNDatum::new("S4", g, None, None, vec![]).unwrap();
    let c = HcContext::new(d).unwrap();
    let map = c.partition().unwrap();
    assert_eq!(map.series.len(), 5);
    assert_eq!(map.assignment, [0, 1, 2, 3, 4]);
}

#[test]
fn relative_weyl_examples() {
    let c = ctx("gl2_3_bn");
    let w = c.relative_weyl("B", &trivial_on(c, "B")).unwrap();
    assert_eq!((w.order, w.end_dim, w.weyl_order), (2, 2, 2));
    assert!(!w.warning());
    let regular =
        c.levi_tables[0].rows().iter().map(|t| c.relative_weyl("B", t).unwrap()).filter(|w| w.order == 1).count();
    assert_eq!(regular, 2);
    let tau = c.levi_tables[0].rows().iter().find(|t| c.relative_weyl("B", t).unwrap().order == 1).unwrap();
    assert_eq!(constituent_degrees(c, &c.hc_induce("B", tau).unwrap()), [4]);

    let c = ctx("gl3_2_bn");
    let w = c.relative_weyl("B", &trivial_on(c, "B")).unwrap();
    assert_eq!((w.order, w.end_dim), (6, 6));
    // without the N of the BN-pair the normalizer of T = 1 is all of G
    let mut d = c.datum.clone();
    d.bn_n = None;
    let bare = HcContext::new(d).unwrap().relative_weyl("B", &trivial_on(c, "B")).unwrap();
    assert_eq!(bare.order, 168);
    assert!(bare.warning());
}

#[test]
fn q_parameters() {
    for (name, q) in [("gl2_3_bn", 3), ("gl2_5_bn", 5)] {
        let c = ctx(name);
        let r = c.hc_induce("B", &trivial_on(c, "B")).unwrap();
        assert_eq!(q_parameter(&r, &c.table).unwrap().to_string(), q.to_string());
    }
    let c = ctx("gl3_2_bn");
    let r = c.hc_induce("B", &trivial_on(c, "B")).unwrap();
    assert_eq!(q_parameter(&r, &c.table).unwrap(), QParameter::Undefined);
}

#[test]
fn disconnected_one_and_two_terms() {
    let c = ctx("gl2_3_disconnected");
    for phi in c.levi_tables[0].rows() {
        let chk = c.disconnected_restriction_check("B", phi).unwrap();
        assert_eq!(chk.terms, 1);
        assert!(chk.holds());
    }
    let b0 = c.datum.record_index("B0").unwrap();
    for phi in c.levi_tables[b0].rows() {
        let chk = c.disconnected_restriction_check("B0", phi).unwrap();
        assert_eq!(chk.terms, 2);
        assert!(chk.holds());
        assert_eq!(chk.lhs.values(), chk.rhs.values());
    }
}

#[test]
fn disconnected_degenerate_and_hypothesis() {
    let d = datum("gl2_3_bn");
    let g = d.group.clone();
    let same = BNDatum::new("GL2(3)", g.clone(), d.bn_n.clone(), Some(g), d.records.clone()).unwrap();
    let c = HcContext::new(same).unwrap();
    for phi in c.levi_tables[0].rows() {
        let chk = c.disconnected_restriction_check("B", phi).unwrap();
        assert_eq!(chk.terms, 1);
        assert!(chk.holds());
    }
    // G° = the torus of SL2 misses U
    let d = datum("gl2_3_disconnected");
    let z = Arc::new(d.group.subgroup_from_cycles(&["(1 2)(3 6)(4 8)(5 7)"]).unwrap());
    let bad = BNDatum::new("GL2(3)", d.group.clone(), None, Some(z), d.records.clone());
    if let Ok(bad) = bad {
        let c = HcContext::new(bad).unwrap();
        let phi = c.levi_tables[0].row(0).unwrap().clone();
        assert!(matches!(c.disconnected_restriction_check("B", &phi), Err(finrep_core::Error::Hypothesis(_))));
    }
    let plain = ctx("gl2_3_bn");
    let phi = plain.levi_tables[0].row(0).unwrap();
    assert!(plain.disconnected_restriction_check("B", phi).is_err());
}

#[test]
fn missing_record() {
    let c = ctx("gl2_3_bn");
    let one = trivial_on(c, "B");
    assert!(matches!(c.hc_induce("P", &one), Err(finrep_core::Error::NotFound(_))));
}

#[test]
fn partition_json_is_deterministic() {
    let c = ctx("gl3_2_bn");
    let a = c.series_json(&c.partition().unwrap()).to_string();
    let b = c.series_json(&c.partition().unwrap()).to_string();
    assert_eq!(a, b);
}

fn combo(table: &CharTable, coeffs: &[i64]) -> ClassFunction {
    let mut f = ClassFunction::zero(table.group().clone()).unwrap();
    for (row, &k) in table.rows().iter().zip(coeffs) {
        f = f.add(&row.scale(k)).unwrap();
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn adjointness_is_linear(a in prop::collection::vec(-3i64..4, 4), b in prop::collection::vec(-3i64..4, 8)) {
        let c = ctx("gl2_3_bn");
        let rec = c.datum.record("B").unwrap();
        let tau = combo(&c.levi_tables[0], &a);
        let rho = combo(&c.table, &b);
        let lhs = rec.induce(c.group(), &tau).unwrap().inner_product(&rho).unwrap();
        let rhs = tau.inner_product(&rec.restrict(&rho).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn induction_degree_is_index_times_degree(i in 0usize..4) {
        let c = ctx("gl2_3_bn");
        let rec = c.datum.record("B").unwrap();
        let tau = &c.levi_tables[0].rows()[i % c.levi_tables[0].len()];
        let r = rec.induce(c.group(), tau).unwrap();
        let index = (c.group().order() / rec.p.order()) as i64;
        prop_assert_eq!(r.degree_int(), Some(index * tau.degree_int().unwrap()));
    }
}
