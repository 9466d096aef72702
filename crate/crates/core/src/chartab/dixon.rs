//! Burnside-Dixon character tables.
//!
//! Class sums `C_j C_k = sum_l c_jkl C_l` give commuting matrices whose
//! common eigenvectors are the central characters `h_j chi(g_j) / chi(1)`. The
//! eigenvectors are found over `F_p`, `p = 1 mod exp(G)`, and each character is
//! lifted to `Q(zeta_e)` from its eigenvalue multiplicities on cyclic subgroups.

use crate::arith::linalg::modp;
use crate::arith::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::par;
use crate::perm::PermGroup;

/// Class multiplication coefficients `c[j][k][l] = #{x in C_j : x^-1 g_l in C_k}`.
pub fn class_coefficients(g: &PermGroup) -> Result<Vec<Vec<Vec<u64>>>> {
    let cls = g.classes()?;
    let els = g.elements()?;
    let r = cls.len();
    let inv: Vec<usize> = (0..els.len()).map(|i| g.index_of(&els[i].inverse())).collect::<Result<_>>()?;
    let per_l: Vec<Result<Vec<Vec<u64>>>> = par::map_range(r, |l| {
        let gl = cls.reps[l];
        let mut counts = vec![vec![0u64; r]; r];
        for x in 0..els.len() {
            let y = g.mul_index(inv[x], gl)?;
            counts[cls.class_of[x]][cls.class_of[y]] += 1;
        }
        Ok(counts)
    });
    let per_l = per_l.into_iter().collect::<Result<Vec<_>>>()?;
    let mut c = vec![vec![vec![0u64; r]; r]; r];
    for (l, counts) in per_l.into_iter().enumerate() {
        for j in 0..r {
            for k in 0..r {
                c[j][k][l] = counts[j][k];
            }
        }
    }
    Ok(c)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Smallest prime `p = 1 mod e` with `p > 2 sqrt(order)`.
pub fn dixon_prime(e: u64, order: u128) -> u64 {
    let mut p = e + 1;
    while !(is_prime(p) && (p as u128) * (p as u128) > 4 * order) {
        p += e;
    }
    p
}

/// Smallest element of multiplicative order exactly `e` in `F_p`.
fn root_of_unity(e: u64, p: u64) -> u64 {
    let primes: Vec<u64> = (2..=e).filter(|&q| e % q == 0 && is_prime(q)).collect();
    (2..p).find(|&z| modp::pow(z, e, p) == 1 && primes.iter().all(|&q| modp::pow(z, e / q, p) != 1)).unwrap_or(1)
}

/// Splits `F_p^r` into the common eigenlines of the class matrices.
fn split_eigenspaces(coef: &[Vec<Vec<u64>>], p: u64) -> Result<Vec<Vec<u64>>> {
    let r = coef.len();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
    for a in coef.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            // image of each basis vector under the class matrix
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| (0..r).map(|k| (0..r).fold(0u64, |acc, l| (acc + a[k][l] % p * b[l]) % p)).collect())
                .collect();
            let mut found = 0;
            for lambda in 0..p {
                if found == d {
                    break;
                }
                let m: Vec<Vec<u64>> = (0..r)
                    .map(|k| (0..d).map(|t| modp::sub(images[t][k], lambda * basis[t][k] % p, p)).collect())
                    .collect();
                let ns = modp::nullspace(&m, d, p);
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                let sub: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| (0..r).map(|k| (0..d).fold(0u64, |acc, t| (acc + c[t] * basis[t][k]) % p)).collect())
                    .collect();
                next.push(sub);
            }
            if found != d {
                return Err(Error::Invariant("class matrix is not diagonalizable over F_p".into()));
            }
        }
        spaces = next;
    }
    spaces
        .into_iter()
        .map(|s| {
            if s.len() != 1 {
                return Err(Error::Invariant("eigenspaces did not split into lines".into()));
            }
            let v = s.into_iter().next().unwrap();
            let inv0 = modp::inv(v[0], p);
            Ok(v.iter().map(|&x| x * inv0 % p).collect())
        })
        .collect()
}

/// Computes the irreducible characters of `g` (unsorted) as value vectors at
/// the exponent conductor.
pub fn dixon_rows(g: &PermGroup) -> Result<(std::sync::Arc<CyclotomicField>, Vec<Vec<CyclotomicNumber>>)> {
    let cls = g.classes()?;
    let r = cls.len();
    let order = g.order();
    let e = g.exponent()?;
    let p = dixon_prime(e, order);
    let z = root_of_unity(e, p);
    let coef = class_coefficients(g)?;
    let omegas = split_eigenspaces(&coef, p)?;
    let sizes: Vec<u64> = cls.sizes.iter().map(|&s| s as u64 % p).collect();
    let ord_p = (order % p as u128) as u64;
    let powers: Vec<Vec<usize>> = (0..e as i64).map(|l| g.power_map(l)).collect::<Result<_>>()?;
    let field = CyclotomicField::new(e as u32);
    let inv_e = modp::inv(e % p, p);
    let rows = par::map_slice(&omegas, |w| -> Result<Vec<CyclotomicNumber>> {
        let s = (0..r).fold(0u64, |acc, i| (acc + w[i] * w[cls.inverse[i]] % p * modp::inv(sizes[i], p)) % p);
        let d2 = ord_p * modp::inv(s, p) % p;
        let d = (1..=(p - 1) / 2)
            .find(|&d| d * d % p == d2)
            .ok_or_else(|| Error::Invariant("degree square root not found".into()))?;
        let chi: Vec<u64> = (0..r).map(|i| w[i] * d % p * modp::inv(sizes[i], p) % p).collect();
        (0..r)
            .map(|i| {
                let counts: Vec<i64> = (0..e)
                    .map(|k| {
                        let m = (0..e).fold(0u64, |acc, l| {
                            let zl = modp::pow(z, (e - (k * l) % e) % e, p);
                            (acc + chi[powers[l as usize][i]] * zl) % p
                        }) * inv_e
                            % p;
                        if m > d {
                            Err(Error::Invariant("eigenvalue multiplicity exceeds degree".into()))
                        } else {
                            Ok(m as i64)
                        }
                    })
                    .collect::<Result<_>>()?;
                Ok(CyclotomicNumber::from_root_counts(&field, &counts))
            })
            .collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok((field, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice() {
        // S3: exponent 6, 2 sqrt 6 ~ 4.9
        assert_eq!(dixon_prime(6, 6), 7);
        assert_eq!(dixon_prime(12, 1152), 73);
        assert_eq!(root_of_unity(6, 7), 3);
    }

    #[test]
    fn s3_coefficients() {
        let g = PermGroup::from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap();
        let c = class_coefficients(&g).unwrap();
        // transposition squared: 3 copies of the identity, 3 of the 3-cycles
        assert_eq!(c[1][1][0], 3);
        assert_eq!(c[1][1][2], 3);
        assert_eq!(c[2][2][2], 1);
    }
}
