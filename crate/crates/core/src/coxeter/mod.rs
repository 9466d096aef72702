//! Small Coxeter groups as permutation groups: standard parabolics, the
//! reflection character, b-invariants and the parabolic separation scan.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::arith::{CyclotomicField, CyclotomicNumber};
use crate::chartab::{CharTable, ClassFunction, Kind};
use crate::error::{Error, Result};
use crate::par;
use crate::perm::{GroupRef, Perm, PermGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D4,
    G2,
    F4,
    I2(usize),
}

impl CoxeterType {
    pub fn new(family: &str, rank: usize) -> Result<Self> {
        let t = match family.to_ascii_uppercase().as_str() {
            "A" if (1..=4).contains(&rank) => CoxeterType::A(rank),
            "B" | "C" if (2..=3).contains(&rank) => CoxeterType::B(rank),
            "D" if rank == 4 => CoxeterType::D4,
            "G" if rank == 2 => CoxeterType::G2,
            "F" if rank == 4 => CoxeterType::F4,
            "A" | "B" | "C" | "D" | "G" | "F" => {
                return Err(Error::OutOfRange(format!("type {family}{rank} is not supported")))
            }
            _ => return Err(Error::Parse(format!("unknown Coxeter family {family:?}"))),
        };
        Ok(t)
    }

    pub fn dihedral(m: usize) -> Result<Self> {
        if (2..=12).contains(&m) {
            Ok(CoxeterType::I2(m))
        } else {
            Err(Error::OutOfRange(format!("I2({m}) needs 2 <= m <= 12")))
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            CoxeterType::A(n) | CoxeterType::B(n) => n,
            CoxeterType::D4 | CoxeterType::F4 => 4,
            CoxeterType::G2 | CoxeterType::I2(_) => 2,
        }
    }

    /// `|W|` from the type alone.
    pub fn expected_order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match *self {
            CoxeterType::A(n) => fact(n + 1),
            CoxeterType::B(n) => fact(n) << n,
            CoxeterType::D4 => 192,
            CoxeterType::G2 => 12,
            CoxeterType::F4 => 1152,
            CoxeterType::I2(m) => 2 * m as u128,
        }
    }

    pub fn is_irreducible(&self) -> bool {
        !matches!(self, CoxeterType::I2(2))
    }

    fn simple_reflections(&self) -> Result<(usize, Vec<Perm>)> {
        let cyc = |deg: usize, s: &str| Perm::parse(s, deg);
        Ok(match *self {
            CoxeterType::A(n) => {
                let d = n + 1;
                (d, (1..=n).map(|i| cyc(d, &format!("({} {})", i, i + 1))).collect::<Result<_>>()?)
            }
            CoxeterType::B(n) => {
                // points 1..n are +e_i, n+1..2n are -e_i
                let d = 2 * n;
                let mut gens = vec![cyc(d, &format!("(1 {})", n + 1))?];
                for i in 1..n {
                    gens.push(cyc(d, &format!("({} {})({} {})", i, i + 1, n + i, n + i + 1))?);
                }
                (d, gens)
            }
            CoxeterType::D4 => {
                let gens = ["(1 6)(2 5)", "(1 2)(5 6)", "(2 3)(6 7)", "(3 4)(7 8)"];
                (8, gens.iter().map(|s| cyc(8, s)).collect::<Result<_>>()?)
            }
            CoxeterType::G2 => {
                // the long roots of G2 at angles 2j pi/6, j = 0..5
                let m = 6;
                let on_long =
                    |f: &dyn Fn(usize) -> usize| Perm::from_images((0..m).map(|j| (f(2 * j) / 2) as u32).collect());
                let s1 = on_long(&|k| (3 * m - k) % (2 * m));
                let s2 = on_long(&|k| (5 * m - 2 - k) % (2 * m));
                (m, vec![s1?, s2?])
            }
            CoxeterType::I2(m) => {
                // all 2m roots, at angles k pi/m
                let s1 = (0..2 * m).map(|k| ((3 * m - k) % (2 * m)) as u32).collect();
                let s2 = (0..2 * m).map(|k| ((5 * m - 2 - k) % (2 * m)) as u32).collect();
                (2 * m, vec![Perm::from_images(s1)?, Perm::from_images(s2)?])
            }
            CoxeterType::F4 => f4_reflections()?,
        })
    }
}

/// F4 acting on its 48 roots, scaled by 2 to be integral.
fn f4_reflections() -> Result<(usize, Vec<Perm>)> {
    let mut roots: Vec<[i64; 4]> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for (a, b) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut v = [0; 4];
                v[i] = a;
                v[j] = b;
                roots.push(v);
            }
        }
        for a in [2, -2] {
            let mut v = [0; 4];
            v[i] = a;
            roots.push(v);
        }
    }
    for mask in 0..16 {
        roots.push(std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 }));
    }
    roots.sort_unstable();
    let simple = [[0, 2, -2, 0], [0, 0, 2, -2], [0, 0, 0, 2], [1, -1, -1, -1]];
    let dot = |a: &[i64; 4], b: &[i64; 4]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let gens = simple
        .iter()
        .map(|a| {
            let imgs = roots
                .iter()
                .map(|v| {
                    let c = 2 * dot(v, a) / dot(a, a);
                    let w: [i64; 4] = std::array::from_fn(|i| v[i] - c * a[i]);
                    roots
                        .binary_search(&w)
                        .map(|p| p as u32)
                        .map_err(|_| Error::Invariant("F4 root set not closed".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            Perm::from_images(imgs)
        })
        .collect::<Result<_>>()?;
    Ok((48, gens))
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D4 => write!(f, "D4"),
            CoxeterType::G2 => write!(f, "G2"),
            CoxeterType::F4 => write!(f, "F4"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    /// `A3`, `B2`, `D4`, `G2`, `F4`, `I2(5)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(m) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m = m.parse().map_err(|_| Error::Parse(format!("bad dihedral order in {s:?}")))?;
            return CoxeterType::dihedral(m);
        }
        let (fam, rank) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let rank = rank.parse().map_err(|_| Error::Parse(format!("bad Coxeter type {s:?}")))?;
        CoxeterType::new(fam, rank)
    }
}

/// A Coxeter group with its simple reflections, parabolics and reflection
/// character.
#[derive(Debug, Clone)]
pub struct CoxeterRealization {
    pub cartan_type: CoxeterType,
    pub group: GroupRef,
    pub simple: Vec<Perm>,
    /// `m(s_i, s_j)`.
    pub coxeter_matrix: Vec<Vec<usize>>,
    /// `(J, W_J)` for every proper subset `J` of the nodes, as bitmasks.
    pub parabolics: Vec<(u32, GroupRef)>,
    pub table: CharTable,
    pub reflection: ClassFunction,
}

/// `2 cos(pi/m) = zeta_2m + zeta_2m^-1`.
fn two_cos_pi_over(m: usize) -> CyclotomicNumber {
    match m {
        2 => CyclotomicNumber::zero(),
        3 => CyclotomicNumber::one(),
        _ => {
            let f = CyclotomicField::new(2 * m as u32);
            &CyclotomicNumber::root_of_unity(&f, 1) + &CyclotomicNumber::root_of_unity(&f, -1)
        }
    }
}

type Matrix = Vec<Vec<CyclotomicNumber>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

impl CoxeterRealization {
    pub fn new(cartan_type: CoxeterType) -> Result<Self> {
        let (degree, simple) = cartan_type.simple_reflections()?;
        let group = Arc::new(PermGroup::new(degree, simple.clone())?);
        if group.order() != cartan_type.expected_order() {
            return Err(Error::Invariant(format!(
                "{cartan_type} realized with order {} instead of {}",
                group.order(),
                cartan_type.expected_order()
            )));
        }
        let r = simple.len();
        let coxeter_matrix: Vec<Vec<usize>> =
            (0..r).map(|i| (0..r).map(|j| (&simple[i] * &simple[j]).order() as usize).collect()).collect();
        let parabolics = (0..(1u32 << r) - 1)
            .map(|mask| {
                let gens = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| simple[i].clone()).collect();
                Ok((mask, Arc::new(group.subgroup(gens)?)))
            })
            .collect::<Result<_>>()?;
        let table = CharTable::compute(&group)?;
        let reflection = reflection_character(&group, &simple, &coxeter_matrix)?;
        Ok(CoxeterRealization { cartan_type, group, simple, coxeter_matrix, parabolics, table, reflection })
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// Number of reflections, i.e. positive roots.
    pub fn num_reflections(&self) -> Result<usize> {
        let cls = self.group.classes()?;
        let mut refl = vec![false; cls.len()];
        for s in &self.simple {
            refl[self.group.class_of(s)?] = true;
        }
        Ok(refl.iter().zip(&cls.sizes).filter(|(r, _)| **r).map(|(_, &s)| s).sum())
    }

    /// `Sym^k(V)` for `k = 0..=kmax` via `k h_k = sum_j psi^j h_{k-j}`.
    pub fn symmetric_powers(&self, kmax: usize) -> Result<Vec<ClassFunction>> {
        let g = &self.group;
        let r = g.num_classes()?;
        let e = g.exponent()? as i64;
        let psi: Vec<Vec<CyclotomicNumber>> = (0..=kmax)
            .map(|j| {
                let pm = g.power_map(j as i64 % e)?;
                Ok((0..r).map(|c| self.reflection.value(pm[c]).clone()).collect())
            })
            .collect::<Result<_>>()?;
        let mut h: Vec<Vec<CyclotomicNumber>> = vec![vec![CyclotomicNumber::one(); r]];
        for k in 1..=kmax {
            let hk = (0..r)
                .map(|c| {
                    let s: CyclotomicNumber = (1..=k).map(|j| &psi[j][c] * &h[k - j][c]).sum();
                    s.div_int(&(k as i64).into())
                })
                .collect();
            h.push(hk);
        }
        h.into_iter().map(|v| ClassFunction::new(g.clone(), v, Kind::Character)).collect()
    }

    /// Smallest `k` with `<Sym^k V, phi> > 0`, for each irreducible.
    pub fn b_invariants(&self) -> Result<Vec<usize>> {
        let n = self.num_reflections()?;
        let syms = self.symmetric_powers(n)?;
        let mut b = vec![usize::MAX; self.table.len()];
        for (k, h) in syms.iter().enumerate() {
            for (i, m) in self.table.decompose_int(h)?.into_iter().enumerate() {
                if m < 0 {
                    return Err(Error::Invariant(format!("Sym^{k} has a negative multiplicity")));
                }
                if m > 0 && b[i] == usize::MAX {
                    b[i] = k;
                }
            }
        }
        if b.contains(&usize::MAX) {
            return Err(Error::Invariant("an irreducible is missing from Sym^k for k <= N".into()));
        }
        Ok(b)
    }

    pub fn b_invariant(&self, phi: usize) -> Result<usize> {
        self.table.row(phi)?;
        Ok(self.b_invariants()?[phi])
    }

    /// First proper parabolic (by mask) on which `i` and `j` restrict
    /// differently, `Some(None)` for different degrees, `None` if unseparated.
    pub fn separation_witness(&self, i: usize, j: usize) -> Result<Option<Option<u32>>> {
        let (a, b) = (self.table.row(i)?, self.table.row(j)?);
        if a.degree() != b.degree() {
            return Ok(Some(None));
        }
        for (mask, wj) in &self.parabolics {
            if a.restrict(wj)?.values() != b.restrict(wj)?.values() {
                return Ok(Some(Some(*mask)));
            }
        }
        Ok(None)
    }

    /// Pairs of distinct irreducibles of equal degree with equal restrictions
    /// to every proper standard parabolic.
    pub fn separation_report(&self) -> Result<SeparationReport> {
        let n = self.table.len();
        let restr: Vec<Vec<ClassFunction>> = par::map_slice(self.table.rows(), |chi| {
            self.parabolics.iter().map(|(_, wj)| chi.restrict(wj)).collect::<Result<Vec<_>>>()
        })
        .into_iter()
        .collect::<Result<_>>()?;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let same = par::map_slice(&pairs, |&(i, j)| {
            self.table.rows()[i].degree() == self.table.rows()[j].degree()
                && restr[i].iter().zip(&restr[j]).all(|(a, b)| a.values() == b.values())
        });
        let found: Vec<(usize, usize)> = pairs.iter().zip(same).filter(|(_, s)| *s).map(|(p, _)| *p).collect();
        // every other pair must have an explicit witness
        for &(i, j) in &pairs {
            let w = self.separation_witness(i, j)?;
            if w.is_none() != found.contains(&(i, j)) {
                return Err(Error::Invariant(format!("separation of X.{} and X.{} is inconsistent", i + 1, j + 1)));
            }
        }
        let b = if found.is_empty() { vec![] } else { self.b_invariants()? };
        let degs = self.table.degrees();
        let pairs =
            found.into_iter().map(|(i, j)| UnseparatedPair { i, j, degree: degs[i], b_i: b[i], b_j: b[j] }).collect();
        Ok(SeparationReport { cartan_type: self.cartan_type, order: self.group.order(), pairs })
    }
}

/// Traces of the geometric representation `s_i(a_j) = a_j + 2cos(pi/m_ij) a_i`
/// at the class representatives.
fn reflection_character(g: &GroupRef, simple: &[Perm], m: &[Vec<usize>]) -> Result<ClassFunction> {
    let r = simple.len();
    let mats: Vec<Matrix> = (0..r)
        .map(|i| {
            let mut a: Matrix =
                (0..r).map(|x| (0..r).map(|y| CyclotomicNumber::from_int(i64::from(x == y))).collect()).collect();
            for j in 0..r {
                a[i][j] = if i == j { CyclotomicNumber::from_int(-1) } else { two_cos_pi_over(m[i][j]) };
            }
            a
        })
        .collect();
    // BFS tree of words; `x * s` applies `s` last, so its matrix is `M_s M_x`
    let els = g.elements()?;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; els.len()];
    let id = g.index_of(&g.identity())?;
    let mut seen = vec![false; els.len()];
    seen[id] = true;
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for (k, s) in simple.iter().enumerate() {
            let y = g.index_of(&(&els[x] * s))?;
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, k));
                queue.push_back(y);
            }
        }
    }
    let cls = g.classes()?;
    let values = cls
        .reps
        .iter()
        .map(|&rep| {
            let mut word = Vec::new();
            let mut x = rep;
            while let Some((p, k)) = parent[x] {
                word.push(k);
                x = p;
            }
            word.reverse();
            let mut acc: Matrix =
                (0..r).map(|x| (0..r).map(|y| CyclotomicNumber::from_int(i64::from(x == y))).collect()).collect();
            for k in word {
                acc = mat_mul(&mats[k], &acc);
            }
            (0..r).map(|i| acc[i][i].clone()).sum()
        })
        .collect();
    ClassFunction::new(g.clone(), values, Kind::Character)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnseparatedPair {
    pub i: usize,
    pub j: usize,
    pub degree: i64,
    pub b_i: usize,
    pub b_j: usize,
}

#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub cartan_type: CoxeterType,
    pub order: u128,
    pub pairs: Vec<UnseparatedPair>,
}

impl SeparationReport {
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# type={} order={} pairs={}\n", self.cartan_type, self.order, self.pairs.len());
        out.push_str("#\tchi\tpsi\tdegree\tb_chi\tb_psi\n");
        for p in &self.pairs {
            out.push_str(&format!("pair\tX.{}\tX.{}\t{}\t{}\t{}\n", p.i + 1, p.j + 1, p.degree, p.b_i, p.b_j));
        }
        out
    }
}
