//! The twelve end-to-end acceptance checks over the bundled corpus, shared by
//! the `acceptance` test target and the `verify` subcommand.

use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{corner_census, named_skew};
use crate::chartab::{CharTable, ClassFunction};
use crate::clifford::{outer_tensor_power, wreath_extension, CliffordPair};
use crate::corpus;
use crate::coxeter::{CoxeterRealization, CoxeterType};
use crate::error::{Error, Result};
use crate::hc::{q_parameter, BNDatum, HcContext};
use crate::hecke::{degree_from_schur, g2_certificate, g2_table, g2_table_text, schur_a1, schur_ratio, Certificate};
use crate::perm::{GroupRef, Limits, PermGroup};

pub const CRITERIA: &[(u8, &str)] = &[
    (1, "G2 Schur table"),
    (2, "G2 Schur distinctness"),
    (3, "Clifford regular sum"),
    (4, "Clifford and Gallagher counts"),
    (5, "wreath extension"),
    (6, "HC partition"),
    (7, "relative Weyl counts"),
    (8, "q-parameter and degrees"),
    (9, "disconnected restriction"),
    (10, "corner dimensions"),
    (11, "Coxeter separation"),
    (12, "character table infrastructure"),
];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    /// `criterion N: PASS|FAIL title: detail`, without timing so that the
    /// line is reproducible.
    pub fn line(&self) -> String {
        format!("criterion {}: {} {}: {}", self.id, if self.passed { "PASS" } else { "FAIL" }, self.title, self.detail)
    }
}

type Check = Result<(bool, String)>;

pub fn run(id: u8) -> Result<Outcome> {
    let title = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::OutOfRange(format!("no acceptance criterion {id}")))?;
    let start = Instant::now();
    let res = match id {
        1 => c1_table(),
        2 => c2_distinct(),
        3 => c3_regular_sum(),
        4 => c4_counts(),
        5 => c5_wreath(),
        6 => c6_partition(),
        7 => c7_weyl(),
        8 => c8_qparam(),
        9 => c9_disconnected(),
        10 => c10_corner(),
        11 => c11_coxeter(),
        _ => c12_tables(),
    };
    let elapsed = start.elapsed();
    let (passed, detail) = match res {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Ok(Outcome { id, title, passed, detail, elapsed })
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(|(id, _)| run(*id).expect("listed criterion")).collect()
}

fn within(start: Instant, budget: Duration, ok: bool, detail: String) -> (bool, String) {
    let t = start.elapsed();
    if t > budget {
        (false, format!("{detail}; took {:.1}s, budget {:.0}s", t.as_secs_f64(), budget.as_secs_f64()))
    } else {
        (ok, detail)
    }
}

const G2_TABLE: &str = "k\tPhi_3(q^(k-1))Phi_6(q^k)\tPhi_3(q^k)Phi_6(q^(k-1))\n\
1\t3Phi_6(q)\tPhi_3(q)\n\
2\tPhi_3(q)Phi_12(q)\tPhi_3(q)Phi_6(q)^2\n\
5\tPhi_3(q)Phi_6(q)^2Phi_12(q)Phi_30(q)\tPhi_3(q)Phi_15(q)Phi_24(q)\n";

fn c1_table() -> Check {
    let start = Instant::now();
    let text = g2_table_text(&g2_table()?);
    let ok = text == G2_TABLE;
    let detail = if ok { "3 rows match".to_string() } else { format!("got {text:?}") };
    Ok(within(start, Duration::from_secs(1), ok, detail))
}

fn c2_distinct() -> Check {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut certs = 0;
    for row in g2_table()? {
        let want = match row.k {
            1 => 6,
            2 => 12,
            _ => 30,
        };
        for q0 in [2u64, 3, 4, 5, 7, 8, 9] {
            let cert = g2_certificate(&row, q0)?;
            let witness_ok = match &cert {
                Certificate::Zsigmondy { n, .. } => q0 >= 3 && *n == want,
                Certificate::Evaluation { .. } => q0 == 2,
            };
            if !row.schur_values_differ(q0 as i64)? || !cert.is_valid() || !witness_ok {
                bad.push(format!("k={} q0={q0}: {cert}", row.k));
            }
            certs += 1;
        }
    }
    let detail = if bad.is_empty() { format!("{certs} certificates") } else { bad.join("; ") };
    Ok(within(start, Duration::from_secs(1), bad.is_empty(), detail))
}

const CLIFFORD_CASES: &[(&str, &str)] =
    &[("s3", "A3"), ("a4", "V4"), ("s4", "V4"), ("d8", "Z"), ("q8", "Z"), ("s3_wr_c2", "S3xS3"), ("gl2_3", "SL2(3)")];

fn clifford_pairs() -> Result<&'static [CliffordPair]> {
    static PAIRS: OnceLock<Vec<CliffordPair>> = OnceLock::new();
    if let Some(p) = PAIRS.get() {
        return Ok(p);
    }
    let pairs = CLIFFORD_CASES
        .iter()
        .map(|(g, n)| {
            let ng = corpus::group(g)?;
            let sub = Arc::new(ng.subgroup(n)?);
            CliffordPair::new(ng.group, sub)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PAIRS.get_or_init(|| pairs))
}

fn c3_regular_sum() -> Check {
    let start = Instant::now();
    let mut thetas = 0;
    for p in clifford_pairs()? {
        for theta in 0..p.table_n.len() {
            p.regular_sum_check(theta)?;
            thetas += 1;
        }
    }
    Ok(within(start, Duration::from_secs(10), true, format!("{} pairs, {thetas} characters", CLIFFORD_CASES.len())))
}

fn c4_counts() -> Check {
    let mut bad = Vec::new();
    let mut gallagher = 0;
    for ((g, n), p) in CLIFFORD_CASES.iter().zip(clifford_pairs()?) {
        for theta in 0..p.table_n.len() {
            let r = p.decomposition(theta)?;
            let ind = p.table_n.row(theta)?.induce(&p.m)?;
            if ind.inner_int(&ind)? as u128 != r.omega_order() {
                bad.push(format!("{g}/{n} theta {}: <Ind, Ind> != |Omega|", theta + 1));
            }
            if r.extendable && r.omega_abelian {
                gallagher += 1;
                if r.above.len() as u128 != r.omega_order() || r.gallagher_bijective != Some(true) {
                    bad.push(format!("{g}/{n} theta {}: Gallagher count", theta + 1));
                }
            }
        }
    }
    let detail = if bad.is_empty() { format!("{gallagher} Gallagher cases") } else { bad.join("; ") };
    Ok((bad.is_empty(), detail))
}

fn c5_wreath() -> Check {
    let mut bad = Vec::new();
    let mut cases = 0;
    for (name, k) in
        [("C2", PermGroup::from_cycles(2, &["(1 2)"])?), ("S3", PermGroup::from_cycles(3, &["(1 2)", "(1 2 3)"])?)]
    {
        let k: GroupRef = Arc::new(k);
        let tk = CharTable::compute(&k)?;
        for (i, theta) in tk.rows().iter().enumerate() {
            for m in [2usize, 3] {
                let (w, chi) = wreath_extension(theta, m)?;
                let base: GroupRef = Arc::new(w.base_group()?);
                let irreducible = chi.norm()?.is_one();
                let restricts = chi.restrict(&base)? == outer_tensor_power(&w, theta)?;
                if !irreducible || !restricts {
                    bad.push(format!("{name} theta {} m={m}", i + 1));
                }
                cases += 1;
            }
        }
    }
    let detail = if bad.is_empty() { format!("{cases} cases") } else { bad.join("; ") };
    Ok((bad.is_empty(), detail))
}

fn contexts() -> Result<&'static [(&'static str, HcContext)]> {
    static CTX: OnceLock<Vec<(&'static str, HcContext)>> = OnceLock::new();
    if let Some(c) = CTX.get() {
        return Ok(c);
    }
    let all = ["gl2_3_bn", "gl2_5_bn", "gl3_2_bn", "gl2_3_disconnected"]
        .into_iter()
        .map(|n| Ok((n, HcContext::new(BNDatum::from_json(corpus::text(n)?, Limits::default())?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CTX.get_or_init(|| all))
}

fn context(name: &str) -> Result<&'static HcContext> {
    contexts()?.iter().find(|(n, _)| *n == name).map(|(_, c)| c).ok_or_else(|| Error::NotFound(name.to_string()))
}

/// Sorted constituent degrees of every series.
fn series_degrees(c: &HcContext) -> Result<Vec<(String, Vec<i64>)>> {
    let map = c.partition()?;
    let degs = c.table.degrees();
    Ok(map
        .series
        .iter()
        .map(|s| {
            let mut d: Vec<i64> = s.constituents.iter().map(|&(k, _)| degs[k]).collect();
            d.sort_unstable();
            (c.datum.records[s.record].name.clone(), d)
        })
        .collect())
}

fn c6_partition() -> Check {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut summary = Vec::new();
    for (name, q) in [("gl2_3_bn", 3i64), ("gl2_5_bn", 5)] {
        let c = context(name)?;
        let series = series_degrees(c)?;
        let cusp: Vec<&Vec<i64>> = series.iter().filter(|(r, _)| r == "G").map(|(_, d)| d).collect();
        let ok = cusp.len() as i64 == (q * q - q) / 2 && cusp.iter().all(|d| d[..] == [q - 1]);
        if !ok {
            bad.push(format!("{name}: cuspidal census {cusp:?}"));
        }
        summary.push(format!("{name}: {} series", series.len()));
    }
    let c = context("gl3_2_bn")?;
    let mut got: Vec<Vec<i64>> = series_degrees(c)?.into_iter().map(|(_, d)| d).collect();
    got.sort();
    let want = vec![vec![1, 6, 8], vec![3], vec![3], vec![7]];
    if got != want {
        bad.push(format!("gl3_2: series {got:?}"));
    }
    summary.push("gl3_2: {1,6,8} {7} {3} {3}".into());
    let detail = if bad.is_empty() { summary.join(", ") } else { bad.join("; ") };
    Ok(within(start, Duration::from_secs(60), bad.is_empty(), detail))
}

fn c7_weyl() -> Check {
    let mut bad = Vec::new();
    let mut got = Vec::new();
    for (name, want) in [("gl2_3_bn", 2u128), ("gl2_5_bn", 2), ("gl3_2_bn", 6)] {
        let c = context(name)?;
        let b = c.datum.record_index("B")?;
        for tau in c.levi_tables[b].rows() {
            let w = c.relative_weyl("B", tau)?;
            if w.order as i64 != w.end_dim {
                bad.push(format!("{name}: |W_tau| = {} but <R, R> = {}", w.order, w.end_dim));
            }
        }
        let triv = ClassFunction::trivial(c.datum.records[b].l.clone())?;
        let w = c.relative_weyl("B", &triv)?;
        if w.order != want || w.end_dim as u128 != want {
            bad.push(format!("{name}: tau = 1 gives {}", w.order));
        }
        got.push(format!("{name} {}", w.order));
    }
    let detail = if bad.is_empty() { format!("tau = 1: {}", got.join(", ")) } else { bad.join("; ") };
    Ok((bad.is_empty(), detail))
}

fn c8_qparam() -> Check {
    let mut bad = Vec::new();
    let (c1, ce) = schur_a1(1)?;
    for (name, q0) in [("gl2_3_bn", 3i64), ("gl2_5_bn", 5)] {
        let c = context(name)?;
        let l = c.datum.record("B")?.l.clone();
        let r = c.hc_induce("B", &ClassFunction::trivial(l)?)?;
        let q = q_parameter(&r, &c.table)?.to_string();
        let ratio = schur_ratio(&c1, &ce, q0)?;
        if q != q0.to_string() || ratio != BigRational::from_integer(BigInt::from(q0)) {
            bad.push(format!("{name}: q = {q}, Schur ratio = {ratio}"));
        }
        let dim = BigInt::from(r.degree_int().unwrap_or_default());
        let mut from_schur = [&c1, &ce].iter().map(|s| degree_from_schur(&dim, s, q0)).collect::<Result<Vec<_>>>()?;
        from_schur.sort();
        let mut actual: Vec<BigRational> = c
            .table
            .decompose_int(&r)?
            .iter()
            .zip(c.table.degrees())
            .filter(|(&m, _)| m > 0)
            .map(|(_, d)| BigRational::from_integer(BigInt::from(d)))
            .collect();
        actual.sort();
        if from_schur != actual {
            bad.push(format!("{name}: degrees {from_schur:?} vs {actual:?}"));
        }
    }
    let detail = if bad.is_empty() { "q = 3, 5; degrees {1, q}".to_string() } else { bad.join("; ") };
    Ok((bad.is_empty(), detail))
}

fn c9_disconnected() -> Check {
    let c = context("gl2_3_disconnected")?;
    let mut bad = Vec::new();
    let mut two_term = 0;
    for rec in ["B", "B0"] {
        let idx = c.datum.record_index(rec)?;
        for (i, phi) in c.levi_tables[idx].rows().iter().enumerate() {
            let chk = c.disconnected_restriction_check(rec, phi)?;
            if !chk.holds() {
                bad.push(format!("{rec} phi {}", i + 1));
            }
            if chk.terms == 2 {
                two_term += 1;
            }
        }
    }
    let ok = bad.is_empty() && two_term > 0;
    let detail = if bad.is_empty() { format!("{two_term} two-term cases") } else { bad.join("; ") };
    Ok((ok, detail))
}

fn c10_corner() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (omega, action) in [("C3", "invert"), ("C2xC2", "swap")] {
        let c = corner_census(&named_skew(omega, "C2", action)?)?;
        let dims = c.dims_match_stabilizers();
        let iso = c.isomorphisms_hold();
        let sum = c.sum_is_omega_weyl();
        ok &= dims && iso && sum;
        parts.push(format!(
            "{omega}/{action}: dims=|Stab| {dims}, group law {iso}, sum {} vs |Omega||W| {} ({}), |W| x orbits {}",
            c.sum,
            c.omega_weyl,
            if sum { "equal" } else { "differ" },
            c.weyl_orbits
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn c11_coxeter() -> Check {
    let start = Instant::now();
    let mut bad = Vec::new();
    for t in ["A2", "A3", "A4", "B2", "B3", "D4", "F4"] {
        let r = CoxeterRealization::new(t.parse::<CoxeterType>()?)?.separation_report()?;
        if !r.pairs.is_empty() {
            bad.push(format!("{t}: {} unseparated pairs", r.pairs.len()));
        }
    }
    let g2 = CoxeterRealization::new(CoxeterType::G2)?;
    let r = g2.separation_report()?;
    let ok_g2 = match &r.pairs[..] {
        [p] => {
            let mut b = [p.b_i, p.b_j];
            b.sort_unstable();
            p.degree == 2 && b == [1, 2]
        }
        _ => false,
    };
    if !ok_g2 {
        bad.push(format!("G2: {:?}", r.pairs));
    }
    let detail = if bad.is_empty() { "only G2 has a pair, b = 1, 2".to_string() } else { bad.join("; ") };
    Ok(within(start, Duration::from_secs(300), bad.is_empty(), detail))
}

fn int_rows(t: &CharTable) -> Option<Vec<Vec<i64>>> {
    let mut rows = t
        .rows()
        .iter()
        .map(|r| r.values().iter().map(|v| v.to_i64()).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    rows.sort();
    Some(rows)
}

fn c12_tables() -> Check {
    let mut bad = Vec::new();
    for name in corpus::GROUPS {
        let g = corpus::group(name)?.group;
        let t = CharTable::compute(&g)?;
        if let Err(e) = t.verify() {
            bad.push(format!("{name}: {e}"));
        }
        let sq: i64 = t.degrees().iter().map(|d| d * d).sum();
        if sq as u128 != g.order() {
            bad.push(format!("{name}: sum of squared degrees {sq} != {}", g.order()));
        }
    }
    let d8 = vec![
        vec![1, 1, 1, 1, 1],
        vec![1, 1, 1, -1, -1],
        vec![1, 1, -1, 1, -1],
        vec![1, 1, -1, -1, 1],
        vec![2, -2, 0, 0, 0],
    ];
    let known: [(&str, Vec<Vec<i64>>); 4] = [
        (
            "s4",
            vec![
                vec![1, 1, -1, 1, -1],
                vec![1, 1, 1, 1, 1],
                vec![2, 2, 0, -1, 0],
                vec![3, -1, -1, 0, 1],
                vec![3, -1, 1, 0, -1],
            ],
        ),
        (
            "s5",
            vec![
                vec![1, -1, 1, 1, -1, 1, -1],
                vec![1, 1, 1, 1, 1, 1, 1],
                vec![4, -2, 0, 1, 0, -1, 1],
                vec![4, 2, 0, 1, 0, -1, -1],
                vec![5, -1, 1, -1, 1, 0, -1],
                vec![5, 1, 1, -1, -1, 0, 1],
                vec![6, 0, -2, 0, 0, 1, 0],
            ],
        ),
        ("d8", d8.clone()),
        ("q8", d8),
    ];
    for (name, mut want) in known {
        want.sort();
        let t = CharTable::compute(&corpus::group(name)?.group)?;
        if int_rows(&t).as_ref() != Some(&want) {
            bad.push(format!("{name}: table differs from the classical one"));
        }
    }
    let detail = if bad.is_empty() { format!("{} groups", corpus::GROUPS.len()) } else { bad.join("; ") };
    Ok((bad.is_empty(), detail))
}
