//! Primitive prime divisors of `q^n - 1`.

use crate::error::{Error, Result};

use super::laurent::divisors;

const TRIAL_LIMIT: u64 = 1_000_000;

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if let Some(p) = a.checked_mul(b) {
        return p % m;
    }
    // double-and-add keeps every intermediate below 2m
    let (mut a, mut b, mut r) = (a % m, b % m, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            r = add_mod(r, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    r
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let (s, over) = a.overflowing_add(b);
    if over || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

fn pow_mod(mut a: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Miller-Rabin on the first twelve prime bases (deterministic below 3.3e24,
/// and a very strong probable-prime test beyond).
pub fn is_prime(n: u128) -> bool {
    const BASES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pollard rho with Floyd cycle detection; `n` composite.
fn pollard_rho(n: u128) -> u128 {
    let mut c = 1u128;
    loop {
        let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factors of `n` (with repetition, unsorted).
pub fn factor(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n && p <= TRIAL_LIMIT as u128 {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            out.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out
}

/// `Phi_n(q)` as an integer, or `None` on overflow.
fn cyclotomic_value(n: u64, q: u128) -> Option<u128> {
    let poly = super::laurent::cyclotomic_poly(n);
    let mut acc: i128 = 0;
    for c in poly.coeffs().iter().rev() {
        let c: i128 = c.try_into().ok()?;
        acc = acc.checked_mul(q as i128)?.checked_add(c)?;
    }
    u128::try_from(acc).ok()
}

/// The order of `q` modulo the prime `p`, assuming `p` divides `q^n - 1`.
fn order_mod(q: u128, p: u128, n: u64) -> u64 {
    divisors(n).into_iter().find(|&d| pow_mod(q, d as u128, p) == 1).unwrap_or(n)
}

/// The smallest primitive prime divisor of `q^n - 1`: a prime dividing it but
/// no `q^m - 1` with `m < n`. `None` in the exceptional cases.
pub fn zsigmondy(q: u64, n: u64) -> Result<Option<u128>> {
    if q < 2 || n < 2 {
        return Err(Error::OutOfRange(format!("zsigmondy needs q >= 2 and n >= 2, got ({q}, {n})")));
    }
    if n > 128 || (q as u128).checked_pow(n as u32).is_none() {
        return Err(Error::OutOfRange(format!("{q}^{n} exceeds 2^128")));
    }
    // every primitive prime divides Phi_n(q)
    let value = cyclotomic_value(n, q as u128).ok_or_else(|| Error::OutOfRange(format!("Phi_{n}({q}) overflows")))?;
    let mut primes = factor(value);
    primes.sort_unstable();
    primes.dedup();
    Ok(primes.into_iter().find(|&p| order_mod(q as u128, p, n) == n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(q: u64, n: u64) -> Option<u128> {
        let v = q.pow(n as u32) - 1;
        let mut ps = factor(v as u128);
        ps.sort_unstable();
        ps.dedup();
        ps.into_iter().find(|&p| (1..n).all(|m| (q.pow(m as u32) - 1) as u128 % p != 0))
    }

    #[test]
    fn spec_cases() {
        assert_eq!(zsigmondy(2, 6).unwrap(), None);
        assert_eq!(zsigmondy(2, 5).unwrap(), Some(31));
        assert_eq!(zsigmondy(3, 2).unwrap(), None);
        assert!(zsigmondy(1, 3).is_err());
        assert!(zsigmondy(2, 1).is_err());
    }

    #[test]
    fn agrees_with_brute_force() {
        for q in 2..10u64 {
            for n in 2..12u64 {
                if q.checked_pow(n as u32).is_none() {
                    continue;
                }
                assert_eq!(zsigmondy(q, n).unwrap(), brute(q, n), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn large_inputs_factor() {
        // 2^127 - 1 is prime
        assert!(is_prime((1u128 << 127) - 1));
        let p = zsigmondy(3, 30).unwrap().unwrap();
        assert_eq!(p % 30, 1);
        assert!(zsigmondy(2, 129).is_err());
        assert!(zsigmondy(3, 81).is_err());
    }
}
