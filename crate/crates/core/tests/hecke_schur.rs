use finrep_core::chartab::ClassFunction;
use finrep_core::corpus;
use finrep_core::hc::{q_parameter, BNDatum, HcContext};
use finrep_core::hecke::{
    degree_from_schur, empirical_constant, g2_certificate, g2_row, g2_table, g2_table_text, positive_on, schur_a1,
    schur_g2, schur_ratio, Certificate, Side,
};
use finrep_core::perm::Limits;
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use proptest::prelude::*;

#[test]
fn g2_table_rows() {
    let text = g2_table_text(&g2_table().unwrap());
    let expected = "k\tPhi_3(q^(k-1))Phi_6(q^k)\tPhi_3(q^k)Phi_6(q^(k-1))\n\
                    1\t3Phi_6(q)\tPhi_3(q)\n\
                    2\tPhi_3(q)Phi_12(q)\tPhi_3(q)Phi_6(q)^2\n\
                    5\tPhi_3(q)Phi_6(q)^2Phi_12(q)Phi_30(q)\tPhi_3(q)Phi_15(q)Phi_24(q)\n";
    assert_eq!(text, expected);
}

fn phi3(x: i128) -> i128 {
    x * x + x + 1
}

fn phi6(x: i128) -> i128 {
    x * x - x + 1
}

#[test]
fn rows_match_direct_evaluation() {
    for row in g2_table().unwrap() {
        let k = row.k;
        for q in -4i128..=6 {
            if q == 0 {
                continue;
            }
            let l = phi3(q.pow(k - 1)) * phi6(q.pow(k));
            let r = phi3(q.pow(k)) * phi6(q.pow(k - 1));
            assert_eq!(row.lhs.eval_int(q as i64).unwrap().to_integer(), BigInt::from(l));
            assert_eq!(row.rhs.eval_int(q as i64).unwrap().to_integer(), BigInt::from(r));
        }
        assert_eq!(row.lhs_factored.expand(), row.lhs);
        assert_eq!(row.rhs_factored.expand(), row.rhs);
    }
}

#[test]
fn zsigmondy_indices_and_q2() {
    let idx: Vec<(u64, Side)> = g2_table().unwrap().iter().map(|r| (r.zsigmondy_index, r.index_side)).collect();
    assert_eq!(idx, [(6, Side::Left), (12, Side::Left), (30, Side::Left)]);
    let row = g2_row(2).unwrap();
    assert_eq!(row.at_two, (BigInt::from(91), BigInt::from(63)));
    assert!(g2_row(3).is_err());
}

fn is_primitive(q: u64, n: u64, p: u128) -> bool {
    let p = BigInt::from(p);
    let q = BigInt::from(q);
    let unit = |m: u64| (q.modpow(&BigInt::from(m), &p) - 1u32) % &p == BigInt::zero();
    unit(n) && (1..n).all(|m| !unit(m))
}

#[test]
fn distinctness_and_certificates() {
    for row in g2_table().unwrap() {
        for q0 in [2u64, 3, 4, 5, 7, 8, 9] {
            assert!(row.schur_values_differ(q0 as i64).unwrap(), "k={} q={q0}", row.k);
            let cert = g2_certificate(&row, q0).unwrap();
            assert!(cert.is_valid(), "k={} q={q0}: {cert}", row.k);
            match cert {
                Certificate::Zsigmondy { n, prime, divides_lhs, .. } => {
                    assert!(q0 >= 3);
                    assert!(is_primitive(q0, n, prime));
                    assert!(divides_lhs);
                }
                Certificate::Evaluation { .. } => assert_eq!(q0, 2),
            }
        }
    }
}

#[test]
fn schur_polynomials_differ_and_are_positive() {
    for k in [1, 2, 5] {
        let a = schur_g2(k, 1).unwrap();
        let b = schur_g2(k, 2).unwrap();
        assert_ne!(a.value, b.value);
        assert!(positive_on(&a, 20).unwrap() && positive_on(&b, 20).unwrap());
    }
    assert_eq!(schur_g2(1, 1).unwrap().factor().unwrap().compact(), "6q^-1Phi_6(q)");
    assert_eq!(schur_g2(1, 2).unwrap().factor().unwrap().compact(), "2q^-1Phi_3(q)");
}

fn principal_series(name: &str) -> (HcContext, ClassFunction) {
    let d = BNDatum::from_json(corpus::text(name).unwrap(), Limits::default()).unwrap();
    let c = HcContext::new(d).unwrap();
    let one = ClassFunction::trivial(c.datum.record("B").unwrap().l.clone()).unwrap();
    let r = c.hc_induce("B", &one).unwrap();
    (c, r)
}

#[test]
fn a1_ratio_matches_q_parameter_and_degrees() {
    for (name, q0) in [("gl2_3_bn", 3i64), ("gl2_5_bn", 5)] {
        let (c, r) = principal_series(name);
        let (c1, ce) = schur_a1(1).unwrap();
        let ratio = schur_ratio(&c1, &ce, q0).unwrap();
        assert_eq!(ratio, BigInt::from(q0).into());
        assert_eq!(q_parameter(&r, &c.table).unwrap().to_string(), q0.to_string());
        let dim = BigInt::from(r.degree_int().unwrap());
        let mut degs: Vec<BigInt> = [&c1, &ce]
            .iter()
            .map(|s| degree_from_schur(&dim, s, q0).unwrap())
            .map(|d| {
                assert!(d.is_integer());
                d.to_integer()
            })
            .collect();
        degs.sort();
        let mut actual: Vec<BigInt> = c
            .table
            .decompose_int(&r)
            .unwrap()
            .iter()
            .zip(c.table.degrees())
            .filter(|(&m, _)| m > 0)
            .map(|(_, d)| BigInt::from(d))
            .collect();
        actual.sort();
        assert_eq!(degs, actual);
        let cst = empirical_constant(&dim, &[(1, &c1), (1, &ce)], q0).unwrap();
        assert_eq!(cst, dim.clone().into());
    }
}

proptest! {
    #[test]
    fn a1_ratio_is_q_to_the_k(k in 1u32..8, q0 in 2i64..40) {
        let (c1, ce) = schur_a1(k).unwrap();
        let r = schur_ratio(&c1, &ce, q0).unwrap();
        prop_assert_eq!(r, BigInt::from(q0).pow(k).into());
        prop_assert!(schur_ratio(&c1, &c1, q0).unwrap().is_one());
    }
}
