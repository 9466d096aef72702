//! `finrep`: batch front end over the bundled corpus and user JSON files.
//!
//! Exit status: 0 on success, 1 when an identity that should hold fails,
//! 2 for bad input.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use finrep_core::acceptance;
use finrep_core::algebra::{corner_census, eta_corner, named_skew};
use finrep_core::chartab::{CharTable, ClassFunction};
use finrep_core::clifford::{outer_tensor_power, wreath_extension, CliffordPair};
use finrep_core::corpus;
use finrep_core::coxeter::{CoxeterRealization, CoxeterType};
use finrep_core::hc::{q_parameter, BNDatum, HcContext};
use finrep_core::hecke::{g2_table, g2_table_json, g2_table_text, schur_a1, schur_ratio};
use finrep_core::perm::{Limits, NamedGroup};
use finrep_core::{Error, Result};

#[derive(Parser)]
#[command(name = "finrep", version, about = "Exact character theory of finite groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Largest group order for which elements are enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().max_order)]
    max_order: u128,
    /// Largest number of conjugacy classes accepted.
    #[arg(long, global = true, default_value_t = Limits::default().max_classes)]
    max_classes: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Character table of a group file or bundled group.
    Table {
        #[arg(long)]
        group: String,
    },
    /// Clifford data for a normal subgroup named in the group file.
    Clifford {
        #[arg(long)]
        group: String,
        #[arg(long)]
        normal: String,
        /// 1-based index into Irr(N); all characters when absent.
        #[arg(long)]
        theta: Option<usize>,
    },
    /// Extension of theta^(x m) to K wr S_m.
    Wreath {
        #[arg(long)]
        base: String,
        #[arg(long)]
        m: usize,
        /// 1-based index into Irr(K); all characters when absent.
        #[arg(long)]
        theta: Option<usize>,
    },
    /// Harish-Chandra induction, restriction and series.
    Hc {
        #[command(subcommand)]
        op: HcOp,
    },
    /// Same-degree characters of a Weyl group not separated by b-invariants.
    CoxeterSep {
        #[arg(long = "type")]
        cartan_type: String,
    },
    /// Schur elements of small Hecke algebras.
    Schur {
        #[command(subcommand)]
        op: SchurOp,
    },
    /// Corners of C[Omega] x| W at central idempotents of C[Omega].
    Corner {
        #[arg(long)]
        omega: String,
        #[arg(long, default_value = "C2")]
        weyl: String,
        #[arg(long, default_value = "trivial")]
        action: String,
        /// 1-based index into Irr(Omega); the census over all when absent.
        #[arg(long)]
        eta: Option<usize>,
    },
    /// Run the acceptance checks over the bundled corpus.
    Verify {
        /// Run only this criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Args)]
struct HcArgs {
    /// BN datum file or bundled datum name.
    #[arg(long)]
    datum: String,
    #[arg(long)]
    record: String,
    /// 1-based character index (into Irr(L) for induce and qparam, Irr(G) for restrict).
    #[arg(long)]
    char_index: usize,
}

#[derive(Subcommand)]
enum HcOp {
    Partition {
        #[arg(long)]
        datum: String,
    },
    Induce(HcArgs),
    Restrict(HcArgs),
    Qparam(HcArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SchurType {
    A1,
}

#[derive(Subcommand)]
enum SchurOp {
    /// The three-row G2 comparison table.
    G2Table,
    /// c_1(q) / c_eps(q).
    Ratio {
        #[arg(long = "type", value_enum)]
        hecke_type: SchurType,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        q: i64,
    },
}

/// Command output and whether every checked identity held.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn render(format: Format, tsv: impl FnOnce() -> String, value: impl FnOnce() -> Value) -> String {
    match format {
        Format::Tsv => tsv(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&value()).expect("serializable")),
    }
}

/// A path if one exists, otherwise a bundled corpus entry.
fn source(arg: &str) -> Result<String> {
    let p = Path::new(arg);
    if p.exists() {
        return Ok(std::fs::read_to_string(p)?);
    }
    corpus::text(arg).map(str::to_string).map_err(|_| Error::NotFound(format!("{arg}: no such file or bundled entry")))
}

fn pick(len: usize, one_based: usize, what: &str) -> Result<usize> {
    if one_based == 0 || one_based > len {
        return Err(Error::OutOfRange(format!("{what} index {one_based} not in 1..={len}")));
    }
    Ok(one_based - 1)
}

fn selection(len: usize, arg: Option<usize>, what: &str) -> Result<Vec<usize>> {
    match arg {
        Some(i) => Ok(vec![pick(len, i, what)?]),
        None => Ok((0..len).collect()),
    }
}

fn values_json(f: &ClassFunction) -> Value {
    json!(f.values().iter().map(|v| v.to_string()).collect::<Vec<_>>())
}

fn decomposition(table: &CharTable, f: &ClassFunction) -> Result<Vec<(usize, i64)>> {
    Ok(table.decompose_int(f)?.into_iter().enumerate().filter(|&(_, m)| m != 0).collect())
}

fn labels(ixs: &[usize]) -> String {
    ixs.iter().map(|i| format!("X.{}", i + 1)).collect::<Vec<_>>().join(",")
}

fn table_cmd(g: &Global, limits: Limits, group: &str) -> Result<Output> {
    let ng = NamedGroup::from_json(&source(group)?, limits)?;
    let t = CharTable::compute(&ng.group)?;
    let tsv = t.to_tsv()?;
    let value = || {
        json!({
            "group": ng.name,
            "order": ng.group.order().to_string(),
            "conductor": t.conductor(),
            "classes": t.class_labels().unwrap_or_default(),
            "characters": t.rows().iter().enumerate().map(|(i, r)| json!({
                "label": format!("X.{}", i + 1),
                "values": values_json(r),
            })).collect::<Vec<_>>(),
        })
    };
    Ok(Output::ok(render(g.format, || tsv, value)))
}

fn clifford_cmd(g: &Global, limits: Limits, group: &str, normal: &str, theta: Option<usize>) -> Result<Output> {
    let ng = NamedGroup::from_json(&source(group)?, limits)?;
    let n = Arc::new(ng.subgroup(normal)?);
    let pair = CliffordPair::new(ng.group.clone(), n)?;
    let mut reports = Vec::new();
    for t in selection(pair.table_n.len(), theta, "theta")? {
        let r = pair.decomposition(t)?;
        let rs = pair.regular_sum_check(t)?;
        reports.push((r, rs));
    }
    let tsv = || {
        let mut out = format!("# M={} |M|={} |N|={}\n", ng.name, pair.m.order(), pair.n.order());
        out.push_str("#\ttheta\torbit\tinertia\tomega\textendable\tabove\tlabel_dims\n");
        for (r, _) in &reports {
            let dims: Vec<String> = r.label_dims.iter().map(i64::to_string).collect();
            let _ = writeln!(
                out,
                "X.{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.theta + 1,
                labels(&r.orbit),
                r.inertia.order(),
                r.omega_order(),
                r.extendable,
                labels(&r.above),
                dims.join(",")
            );
        }
        out
    };
    let value = || {
        Value::Array(
            reports
                .iter()
                .map(|(r, rs)| {
                    let mut v = r.to_json();
                    v["regular_sum_terms"] = json!(rs.terms.iter().map(|&(c, d)| json!([c, d])).collect::<Vec<_>>());
                    v
                })
                .collect(),
        )
    };
    Ok(Output::ok(render(g.format, tsv, value)))
}

fn wreath_cmd(g: &Global, limits: Limits, base: &str, m: usize, theta: Option<usize>) -> Result<Output> {
    let ng = NamedGroup::from_json(&source(base)?, limits)?;
    let t = CharTable::compute(&ng.group)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for i in selection(t.len(), theta, "theta")? {
        let th = t.row(i)?;
        let (w, chi) = wreath_extension(th, m)?;
        let base_group = Arc::new(w.base_group()?);
        let norm = chi.norm()?;
        let restricts = chi.restrict(&base_group)? == outer_tensor_power(&w, th)?;
        ok &= norm.is_one() && restricts;
        rows.push((i, w.group.order(), chi, norm, restricts));
    }
    let tsv = || {
        let mut out = format!("# K={} m={m}\n#\ttheta\torder\tdegree\tnorm\trestricts\n", ng.name);
        for (i, order, chi, norm, restricts) in &rows {
            let _ = writeln!(out, "X.{}\t{order}\t{}\t{norm}\t{restricts}", i + 1, chi.degree());
        }
        out
    };
    let value = || {
        Value::Array(
            rows.iter()
                .map(|(i, order, chi, norm, restricts)| {
                    json!({
                        "theta": format!("X.{}", i + 1),
                        "group_order": order.to_string(),
                        "degree": chi.degree().to_string(),
                        "norm": norm.to_string(),
                        "restricts_to_tensor_power": restricts,
                        "values": values_json(chi),
                    })
                })
                .collect(),
        )
    };
    Ok(Output { text: render(g.format, tsv, value), ok })
}

fn hc_context(datum: &str, limits: Limits) -> Result<HcContext> {
    HcContext::new(BNDatum::from_json(&source(datum)?, limits)?)
}

fn hc_cmd(g: &Global, limits: Limits, op: &HcOp) -> Result<Output> {
    match op {
        HcOp::Partition { datum } => {
            let c = hc_context(datum, limits)?;
            let map = c.partition()?;
            let degs = c.table.degrees();
            let tsv = || {
                let mut out = format!("# group={} series={}\n", c.datum.name, map.series.len());
                out.push_str("#\trecord\ttau\tconstituents\tdegrees\tweyl_order\tend_dim\n");
                for s in &map.series {
                    let cons: Vec<usize> = s.constituents.iter().map(|&(k, _)| k).collect();
                    let d: Vec<String> = cons.iter().map(|&k| degs[k].to_string()).collect();
                    let _ = writeln!(
                        out,
                        "series\t{}\tX.{}\t{}\t{}\t{}\t{}",
                        c.datum.records[s.record].name,
                        s.tau + 1,
                        labels(&cons),
                        d.join(","),
                        s.weyl.order,
                        s.weyl.end_dim
                    );
                }
                out
            };
            Ok(Output::ok(render(g.format, tsv, || c.series_json(&map))))
        }
        HcOp::Induce(a) | HcOp::Qparam(a) => {
            let c = hc_context(&a.datum, limits)?;
            let idx = c.datum.record_index(&a.record)?;
            let lt = &c.levi_tables[idx];
            let tau = lt.row(pick(lt.len(), a.char_index, "character")?)?;
            let r = c.hc_induce(&a.record, tau)?;
            if let HcOp::Qparam(_) = op {
                let q = q_parameter(&r, &c.table)?;
                let tsv = || format!("{q}\n");
                let value = || json!({"record": a.record, "tau": format!("X.{}", a.char_index), "q": q.to_string()});
                return Ok(Output::ok(render(g.format, tsv, value)));
            }
            Ok(Output::ok(decomposition_output(g.format, &a.record, a.char_index, &c.table, &r)?))
        }
        HcOp::Restrict(a) => {
            let c = hc_context(&a.datum, limits)?;
            let idx = c.datum.record_index(&a.record)?;
            let chi = c.table.row(pick(c.table.len(), a.char_index, "character")?)?;
            let r = c.hc_restrict(&a.record, chi)?;
            Ok(Output::ok(decomposition_output(g.format, &a.record, a.char_index, &c.levi_tables[idx], &r)?))
        }
    }
}

fn decomposition_output(
    format: Format,
    record: &str,
    index: usize,
    table: &CharTable,
    f: &ClassFunction,
) -> Result<String> {
    let parts = decomposition(table, f)?;
    let tsv = || {
        let mut out =
            format!("# record={record} input=X.{index} degree={}\n#\tconstituent\tmultiplicity\n", f.degree());
        for (k, m) in &parts {
            let _ = writeln!(out, "X.{}\t{m}", k + 1);
        }
        out
    };
    let value = || {
        json!({
            "record": record,
            "input": format!("X.{index}"),
            "degree": f.degree().to_string(),
            "values": values_json(f),
            "decomposition": parts.iter().map(|&(k, m)| json!({"chi": format!("X.{}", k + 1), "multiplicity": m})).collect::<Vec<_>>(),
        })
    };
    Ok(render(format, tsv, value))
}

fn coxeter_cmd(g: &Global, cartan_type: &str) -> Result<Output> {
    let w = CoxeterRealization::new(cartan_type.parse::<CoxeterType>()?)?;
    let r = w.separation_report()?;
    let value = || {
        json!({
            "type": r.cartan_type.to_string(),
            "order": r.order.to_string(),
            "pairs": r.pairs.iter().map(|p| json!({
                "chi": format!("X.{}", p.i + 1),
                "psi": format!("X.{}", p.j + 1),
                "degree": p.degree,
                "b_chi": p.b_i,
                "b_psi": p.b_j,
            })).collect::<Vec<_>>(),
        })
    };
    Ok(Output::ok(render(g.format, || r.to_tsv(), value)))
}

fn schur_cmd(g: &Global, op: &SchurOp) -> Result<Output> {
    match op {
        SchurOp::G2Table => {
            let rows = g2_table()?;
            Ok(Output::ok(render(g.format, || g2_table_text(&rows), || g2_table_json(&rows))))
        }
        SchurOp::Ratio { hecke_type: SchurType::A1, k, q } => {
            let (c1, ce) = schur_a1(*k)?;
            let r = schur_ratio(&c1, &ce, *q)?;
            let tsv = || format!("k\tq\tratio\n{k}\t{q}\t{r}\n");
            let value = || json!({"type": "A1", "k": k, "q": q, "c_1": c1.to_json(), "c_eps": ce.to_json(), "ratio": r.to_string()});
            Ok(Output::ok(render(g.format, tsv, value)))
        }
    }
}

fn corner_cmd(g: &Global, omega: &str, weyl: &str, action: &str, eta: Option<usize>) -> Result<Output> {
    let s = named_skew(omega, weyl, action)?;
    let head = json!({"omega": omega, "weyl": weyl, "action": action, "algebra_dim": s.algebra.dim()});
    match eta {
        Some(e) => {
            let n = s.omega().order() as usize;
            let (c, rep) = eta_corner(&s, pick(n, e, "eta")?)?;
            let basis: Vec<Value> = c
                .basis
                .iter()
                .map(|v| {
                    json!(v
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| json!([s.algebra.labels()[k], x.to_string()]))
                        .collect::<Vec<_>>())
                })
                .collect();
            let tsv = || {
                let mut out = format!("# omega={omega} weyl={weyl} action={action} eta=X.{e}\n");
                let _ = writeln!(out, "corner_dim\t{}", c.dim());
                let _ = writeln!(out, "stabilizer_order\t{}", rep.stabilizer.len());
                for (k, label) in [
                    ("in_corner", rep.in_corner),
                    ("independent", rep.independent),
                    ("spans", rep.spans),
                    ("group_law", rep.group_law),
                    ("multiplier", rep.multiplier),
                    ("isomorphism", rep.holds()),
                ] {
                    let _ = writeln!(out, "{k}\t{label}");
                }
                for (i, b) in basis.iter().enumerate() {
                    let _ = writeln!(out, "basis\t{}\t{b}", i + 1);
                }
                out
            };
            let value = || {
                let mut v = head.clone();
                v["eta"] = json!(format!("X.{e}"));
                v["corner_dim"] = json!(c.dim());
                v["basis"] = json!(basis);
                v["isomorphism_report"] = rep.to_json();
                v
            };
            Ok(Output { text: render(g.format, tsv, value), ok: rep.holds() })
        }
        None => {
            let census = corner_census(&s)?;
            let tsv = || {
                let mut out = format!(
                    "# omega={omega} weyl={weyl} action={action}\n#\teta\tstabilizer\tcorner_dim\tisomorphism\n"
                );
                for r in &census.reports {
                    let _ = writeln!(out, "X.{}\t{}\t{}\t{}", r.eta, r.stabilizer.len(), r.corner_dim, r.holds());
                }
                let _ = writeln!(out, "sum\t{}", census.sum);
                let _ = writeln!(out, "omega_times_weyl\t{}", census.omega_weyl);
                let _ = writeln!(out, "weyl_times_orbits\t{}", census.weyl_orbits);
                out
            };
            let value = || {
                let mut v = head.clone();
                v["census"] = census.to_json();
                v
            };
            let ok = census.dims_match_stabilizers() && census.isomorphisms_hold();
            Ok(Output { text: render(g.format, tsv, value), ok })
        }
    }
}

fn verify_cmd(g: &Global, criterion: Option<u8>) -> Result<Output> {
    let outcomes = match criterion {
        Some(id) => vec![acceptance::run(id)?],
        None => acceptance::run_all(),
    };
    let ok = outcomes.iter().all(|o| o.passed);
    let tsv = || {
        let mut out: String = outcomes.iter().map(|o| o.line() + "\n").collect();
        let failed = outcomes.iter().filter(|o| !o.passed).count();
        let _ = writeln!(out, "{} passed, {failed} failed", outcomes.len() - failed);
        out
    };
    let value = || {
        Value::Array(
            outcomes
                .iter()
                .map(|o| json!({"criterion": o.id, "title": o.title, "passed": o.passed, "detail": o.detail}))
                .collect(),
        )
    };
    Ok(Output { text: render(g.format, tsv, value), ok })
}

fn run(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    let limits = Limits { max_order: g.max_order, max_classes: g.max_classes };
    match &cli.command {
        Command::Table { group } => table_cmd(g, limits, group),
        Command::Clifford { group, normal, theta } => clifford_cmd(g, limits, group, normal, *theta),
        Command::Wreath { base, m, theta } => wreath_cmd(g, limits, base, *m, *theta),
        Command::Hc { op } => hc_cmd(g, limits, op),
        Command::CoxeterSep { cartan_type } => coxeter_cmd(g, cartan_type),
        Command::Schur { op } => schur_cmd(g, op),
        Command::Corner { omega, weyl, action, eta } => corner_cmd(g, omega, weyl, action, *eta),
        Command::Verify { criterion } => verify_cmd(g, *criterion),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("finrep: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
