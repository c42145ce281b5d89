//! Dense polynomials over the prime field GF(p), constant term first.
//!
//! Only what modulus validation needs: reduction, multiplication modulo a
//! polynomial, gcd and Rabin's irreducibility test.

pub(crate) type Poly = Vec<u32>;

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

pub(crate) fn degree(a: &Poly) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo `b` (b nonzero).
pub(crate) fn rem(a: &Poly, b: &Poly, p: u32) -> Poly {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], p) as u64;
    let mut r = a.clone();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - db;
        for (i, &c) in b.iter().enumerate().take(db + 1) {
            let sub = factor * c as u64 % p as u64;
            let cur = r[i + shift] as u64;
            r[i + shift] = ((cur + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &Poly, b: &Poly, p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Poly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul_mod(a: &Poly, b: &Poly, modulus: &Poly, p: u32) -> Poly {
    rem(&mul(a, b, p), modulus, p)
}

fn sub(a: &Poly, b: &Poly, p: u32) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn gcd(a: &Poly, b: &Poly, p: u32) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `base^(p^times)` modulo `modulus`, by repeated p-th powering.
fn frobenius_iter(base: &Poly, times: u32, modulus: &Poly, p: u32) -> Poly {
    let mut acc = base.clone();
    for _ in 0..times {
        let mut result: Poly = vec![1];
        let mut sq = acc.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &sq, modulus, p);
            }
            sq = mul_mod(&sq, &sq, modulus, p);
            e >>= 1;
        }
        acc = result;
    }
    acc
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: a monic `f` of degree m is irreducible over GF(p) iff
/// x^(p^m) = x mod f and gcd(x^(p^(m/r)) - x, f) = 1 for every prime r | m.
pub(crate) fn is_irreducible(f: &Poly, p: u32) -> bool {
    let m = match degree(f) {
        Some(d) if d >= 1 => d as u32,
        _ => return false,
    };
    if m == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let x_mod = rem(&x, f, p);
    if frobenius_iter(&x_mod, m, f, p) != x_mod {
        return false;
    }
    for r in prime_factors(m) {
        let h = frobenius_iter(&x_mod, m / r, f, p);
        let g = gcd(&sub(&h, &x_mod, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}
