//! Reducibility screening and factorization of monic integer polynomials.
//!
//! The search sieve kills most reducible candidates with the cheap screen
//! (small linear factors exactly, three fixed quadratics by a float probe
//! confirmed with exact division). Irreducibility of survivors is certified
//! fast by a Rabin test modulo a small prime wherever one applies; the
//! general fallback is Zassenhaus: factor mod p, Hensel-lift the factor tree
//! to a modulus beyond the Mignotte bound, and recombine subsets.

use super::poly::IntPoly;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Result of the cheap reducibility screen. `Passed` does not imply
/// irreducibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScreenOutcome {
    Reducible(IntPoly),
    Passed,
}

fn big_to_f64(c: BigInt) -> f64 {
    c.to_f64().unwrap_or(0.0)
}

fn float_probably_vanishes(f: &IntPoly, x: f64) -> bool {
    let mut val = 0f64;
    let mut scale = 1f64;
    for i in (0..=f.degree()).rev() {
        let c = big_to_f64(f.coeff(i));
        val = val * x + c;
        scale = scale * x.abs() + c.abs();
    }
    !val.is_finite() || val.abs() <= 1e-6 * scale.max(1.0)
}

/// Screens for the factors x, x-1, x+1, x-2, x+2 (exact evaluation) and
/// x^2-x-1, x^2+x-1, x^2-2 (float probe at a root, then exact division).
/// Only proper factors count: the polynomial itself is never reported.
pub fn easy_reducibility_screen(f: &IntPoly) -> ScreenOutcome {
    let n = f.degree();
    if n >= 2 {
        for r in [0i64, 1, -1, 2, -2] {
            if f.eval(&BigInt::from(r)).is_zero() {
                return ScreenOutcome::Reducible(IntPoly::from_i64(&[-r, 1]));
            }
        }
    }
    if n >= 3 {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let probes: [(f64, [i64; 3]); 3] = [
            (phi, [-1, -1, 1]),
            (-phi, [-1, 1, 1]),
            (2f64.sqrt(), [-2, 0, 1]),
        ];
        for (root, q) in probes {
            if float_probably_vanishes(f, root) {
                let quad = IntPoly::from_i64(&q);
                if f.try_exact_div(&quad).is_some() {
                    return ScreenOutcome::Reducible(quad);
                }
            }
        }
    }
    ScreenOutcome::Passed
}

// ---- arithmetic in F_p[x], p a small odd-or-even prime below 2^31 ----

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn fp_from_int_poly(f: &IntPoly, p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    let mut c: Vec<u64> = (0..=f.degree())
        .map(|i| f.coeff(i).mod_floor(&bp).to_u64().unwrap())
        .collect();
    fp_trim(&mut c);
    c
}

pub(crate) fn fp_deg(a: &[u64]) -> i64 {
    a.len() as i64 - 1
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn fp_inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn fp_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + y) % p;
    }
    fp_trim(&mut out);
    out
}

pub(crate) fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    fp_trim(&mut out);
    out
}

pub(crate) fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_scale(a: &[u64], k: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&x| mulmod(x, k, p)).collect();
    fp_trim(&mut out);
    out
}

/// Remainder of a by b; b nonzero.
pub(crate) fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = fp_deg(b);
    assert!(db >= 0);
    if db == 0 {
        return Vec::new();
    }
    let inv_lc = fp_inv(*b.last().unwrap(), p);
    let mut r = a.to_vec();
    while fp_deg(&r) >= db {
        let k = fp_deg(&r) as usize - db as usize;
        let c = mulmod(*r.last().unwrap(), inv_lc, p);
        for (j, &bj) in b.iter().enumerate() {
            let t = mulmod(c, bj, p);
            r[k + j] = (r[k + j] + p - t) % p;
        }
        fp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Quotient of a by b; b nonzero.
pub(crate) fn fp_div(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = fp_deg(b);
    assert!(db >= 0);
    let da = fp_deg(a);
    if da < db {
        return Vec::new();
    }
    let inv_lc = fp_inv(*b.last().unwrap(), p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; (da - db) as usize + 1];
    while fp_deg(&r) >= db {
        let k = fp_deg(&r) as usize - db as usize;
        let c = mulmod(*r.last().unwrap(), inv_lc, p);
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mulmod(c, bj, p);
            r[k + j] = (r[k + j] + p - t) % p;
        }
        fp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    fp_trim(&mut q);
    q
}

pub(crate) fn fp_monic(a: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() {
        return Vec::new();
    }
    fp_scale(a, fp_inv(*a.last().unwrap(), p), p)
}

pub(crate) fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// Bezout u*a + v*b = 1 for coprime a, b.
fn fp_bezout(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut u0, mut u1) = (vec![1u64], Vec::new());
    let (mut v0, mut v1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        // quotient of r0 by r1
        let db = fp_deg(&r1);
        let inv_lc = fp_inv(*r1.last().unwrap(), p);
        let mut q = vec![0u64; (fp_deg(&r0) - db).max(0) as usize + 1];
        let mut r = r0.clone();
        while fp_deg(&r) >= db && db >= 0 {
            let k = fp_deg(&r) as usize - db as usize;
            let c = mulmod(*r.last().unwrap(), inv_lc, p);
            q[k] = c;
            for (j, &bj) in r1.iter().enumerate() {
                let t = mulmod(c, bj, p);
                r[k + j] = (r[k + j] + p - t) % p;
            }
            fp_trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        fp_trim(&mut q);
        let u2 = fp_sub(&u0, &fp_mul(&q, &u1, p), p);
        let v2 = fp_sub(&v0, &fp_mul(&q, &v1, p), p);
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    assert_eq!(fp_deg(&r0), 0, "bezout of non-coprime polynomials");
    let inv = fp_inv(r0[0], p);
    (fp_scale(&u0, inv, p), fp_scale(&v0, inv, p))
}

/// x^e mod f by square and multiply.
fn fp_pow_x(e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = fp_rem(&[0, 1], f, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &base, p), f, p);
        }
        base = fp_rem(&fp_mul(&base, &base, p), f, p);
        e >>= 1;
    }
    acc
}

/// g(h) mod f by Horner.
fn fp_compose_mod(g: &[u64], h: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = Vec::new();
    for &c in g.iter().rev() {
        acc = fp_rem(&fp_mul(&acc, h, p), f, p);
        acc = fp_add(&acc, &[c], p);
    }
    acc
}

/// Rabin test: f (monic mod p, squarefree) irreducible over F_p iff
/// x^(p^n) = x mod f and gcd(x^(p^(n/q)) - x, f) = 1 for primes q | n.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let n = fp_deg(f);
    if n <= 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let n = n as u64;
    let frob = fp_pow_x(p, f, p); // x^p mod f
    // frobenius iterates by modular composition
    let mut iterates = vec![Vec::new(); n as usize + 1];
    iterates[1] = frob.clone();
    for k in 2..=n as usize {
        iterates[k] = fp_compose_mod(&iterates[k - 1], &frob, f, p);
    }
    let x = fp_rem(&[0, 1], f, p);
    if iterates[n as usize] != x {
        return false;
    }
    let mut m = n;
    let mut q = 2;
    let mut prime_divs = Vec::new();
    while q * q <= m {
        if m % q == 0 {
            prime_divs.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        prime_divs.push(m);
    }
    for q in prime_divs {
        let g = fp_gcd(&fp_sub(&iterates[(n / q) as usize], &x, p), f, p);
        if fp_deg(&g) != 0 {
            return false;
        }
    }
    true
}

struct XorShift64(u64);

impl XorShift64 {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Distinct-degree factorization of a monic squarefree f mod p:
/// returns (product of irreducible factors of degree d, d) pairs.
fn fp_ddf(f: &[u64], p: u64) -> Vec<(Vec<u64>, u64)> {
    let mut out = Vec::new();
    let mut rem = f.to_vec();
    let mut h = fp_rem(&[0, 1], &rem, p);
    let mut d = 0u64;
    while fp_deg(&rem) >= 1 {
        d += 1;
        if (fp_deg(&rem) as u64) < 2 * d {
            out.push((rem.clone(), fp_deg(&rem) as u64));
            break;
        }
        // h = x^(p^d) mod rem
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_rem(&fp_mul(&acc, &base, p), &rem, p);
            }
            base = fp_rem(&fp_mul(&base, &base, p), &rem, p);
            e >>= 1;
        }
        h = acc;
        let g = fp_gcd(&fp_sub(&h, &[0, 1], p), &rem, p);
        if fp_deg(&g) > 0 {
            out.push((g.clone(), d));
            // divide rem by g
            rem = fp_quot(&rem, &g, p);
            h = fp_rem(&h, &rem, p);
        }
    }
    out
}

fn fp_quot(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = fp_deg(b);
    let inv_lc = fp_inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; (fp_deg(a) - db).max(0) as usize + 1];
    let mut r = a.to_vec();
    while fp_deg(&r) >= db {
        let k = fp_deg(&r) as usize - db as usize;
        let c = mulmod(*r.last().unwrap(), inv_lc, p);
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mulmod(c, bj, p);
            r[k + j] = (r[k + j] + p - t) % p;
        }
        fp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    debug_assert!(r.is_empty(), "inexact fp quotient");
    fp_trim(&mut q);
    q
}

/// Cantor-Zassenhaus equal-degree splitting for odd p: f is a product of
/// distinct irreducibles all of degree d.
fn fp_edf(f: &[u64], d: u64, p: u64, rng: &mut XorShift64, out: &mut Vec<Vec<u64>>) {
    debug_assert!(p % 2 == 1);
    if fp_deg(f) as u64 == d {
        out.push(fp_monic(f, p));
        return;
    }
    // exponent (p^d - 1) / 2 as a bigint, walked bit by bit
    let e: BigInt = (BigInt::from(p).pow(d as u32) - 1) / 2;
    loop {
        let deg_a = (fp_deg(f) as u64).max(2);
        let mut a: Vec<u64> = (0..deg_a).map(|_| rng.next() % p).collect();
        fp_trim(&mut a);
        if fp_deg(&a) < 1 {
            continue;
        }
        let g = fp_gcd(&a, f, p);
        let g = if fp_deg(&g) > 0 && fp_deg(&g) < fp_deg(f) {
            g
        } else {
            // b = a^e mod f; gcd(b - 1, f)
            let mut acc = vec![1u64];
            let base = fp_rem(&a, f, p);
            for i in (0..e.bits()).rev() {
                acc = fp_rem(&fp_mul(&acc, &acc, p), f, p);
                if e.bit(i) {
                    acc = fp_rem(&fp_mul(&acc, &base, p), f, p);
                }
            }
            let g = fp_gcd(&fp_sub(&acc, &[1], p), f, p);
            if fp_deg(&g) <= 0 || fp_deg(&g) >= fp_deg(f) {
                continue;
            }
            g
        };
        let h = fp_quot(f, &g, p);
        fp_edf(&g, d, p, rng, out);
        fp_edf(&h, d, p, rng, out);
        return;
    }
}

/// Full factorization of monic squarefree f over F_p (p odd), monic factors.
fn fp_factor_squarefree(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let mut rng = XorShift64(0x9e3779b97f4a7c15 ^ p);
    let mut out = Vec::new();
    for (prod, d) in fp_ddf(f, p) {
        fp_edf(&prod, d, p, &mut rng, &mut out);
    }
    out.sort_by(|a, b| (a.len(), a.clone()).cmp(&(b.len(), b.clone())));
    out
}

// ---- Hensel lifting: arithmetic on Vec<BigInt> modulo m ----

fn zm_reduce(a: &mut Vec<BigInt>, m: &BigInt) {
    for c in a.iter_mut() {
        *c = c.mod_floor(m);
    }
    while a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
}

fn zm_from_fp(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_reduce(&mut out, m);
    out
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        *o = x - y;
    }
    zm_reduce(&mut out, m);
    out
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        *o = x + y;
    }
    zm_reduce(&mut out, m);
    out
}

/// Division by a monic divisor; exact in Z/m.
fn zm_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(b.last().map_or(false, |c| c.is_one()));
    let db = b.len() - 1;
    let mut r = a.to_vec();
    zm_reduce(&mut r, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().clone();
        q[k] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let t = (&c * bj).mod_floor(m);
            r[k + j] = (&r[k + j] - t).mod_floor(m);
        }
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
        if r.len() <= db {
            break;
        }
    }
    let mut q = q;
    zm_reduce(&mut q, m);
    (q, r)
}

/// Coefficient-wise exact division by the integer m (valid when a = 0 mod m).
fn zm_div_int(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    a.iter()
        .map(|c| {
            let (q, r) = c.div_rem(m);
            debug_assert!(r.is_zero());
            q
        })
        .collect()
}

/// One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m),
/// g, h monic, to the same data mod m^2.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    let mut fm = f.to_vec();
    zm_reduce(&mut fm, &m2);
    // e = (f - g h) / m, computed mod m^2 then divided exactly
    let e = zm_sub(&fm, &zm_mul(g, h, &m2), &m2);
    let ehat = {
        let mut v = zm_div_int(&e, m);
        zm_reduce(&mut v, m);
        v
    };
    // solve ghat*h + hhat*g = ehat (mod m), deg ghat < deg g
    let te = zm_mul(t, &ehat, m);
    let (_, ghat) = zm_divrem_monic(&te, g, m);
    let num = zm_sub(&ehat, &zm_mul(&ghat, h, m), m);
    let (hhat, rem) = zm_divrem_monic(&num, g, m);
    debug_assert!(rem.is_empty(), "hensel correction not divisible");
    let gstar = zm_add(g, &scale_by(&ghat, m), &m2);
    let hstar = zm_add(h, &scale_by(&hhat, m), &m2);
    // lift the bezout pair: b = (s g* + t h* - 1)/m
    let mut one = vec![BigInt::one()];
    zm_reduce(&mut one, &m2);
    let b = zm_sub(
        &zm_add(&zm_mul(s, &gstar, &m2), &zm_mul(t, &hstar, &m2), &m2),
        &one,
        &m2,
    );
    let bhat = {
        let mut v = zm_div_int(&b, m);
        zm_reduce(&mut v, m);
        v
    };
    // solve shat*g + that*h = -b (mod m), deg that < deg g
    let neg_b: Vec<BigInt> = bhat.iter().map(|c| (-c).mod_floor(m)).collect();
    let tb = zm_mul(t, &neg_b, m);
    let (_, that) = zm_divrem_monic(&tb, g, m);
    let num2 = zm_sub(&neg_b, &zm_mul(&that, h, m), m);
    let (shat, rem2) = zm_divrem_monic(&num2, g, m);
    debug_assert!(rem2.is_empty());
    let sstar = zm_add(s, &scale_by(&shat, m), &m2);
    let tstar = zm_add(t, &scale_by(&that, m), &m2);
    (gstar, hstar, sstar, tstar)
}

fn scale_by(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    a.iter().map(|c| c * m).collect()
}

/// Lifts the complete modular factorization of monic f (squarefree mod p)
/// up to a modulus >= target. Returns (factors mod M, M).
fn hensel_lift_tree(
    f: &IntPoly,
    factors: &[Vec<u64>],
    p: u64,
    target: &BigInt,
) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut modulus = BigInt::from(p);
    while &modulus < target {
        modulus = &modulus * &modulus;
    }
    let fz: Vec<BigInt> = (0..=f.degree()).map(|i| f.coeff(i)).collect();
    let mut out = Vec::with_capacity(factors.len());
    lift_node(&fz, factors, p, target, &mut out);
    (out, modulus)
}

fn lift_node(
    f: &[BigInt],
    factors: &[Vec<u64>],
    p: u64,
    target: &BigInt,
    out: &mut Vec<Vec<BigInt>>,
) {
    if factors.len() == 1 {
        out.push(f.to_vec());
        return;
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let bp = BigInt::from(p);
    let gp = left
        .iter()
        .fold(vec![1u64], |acc, fac| fp_mul(&acc, fac, p));
    let hp = right
        .iter()
        .fold(vec![1u64], |acc, fac| fp_mul(&acc, fac, p));
    let (sp, tp) = fp_bezout(&gp, &hp, p);
    let mut g = zm_from_fp(&gp);
    let mut h = zm_from_fp(&hp);
    let mut s = zm_from_fp(&sp);
    let mut t = zm_from_fp(&tp);
    let mut m = bp;
    while &m < target {
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = &m * &m;
    }
    lift_node(&g, left, p, target, out);
    lift_node(&h, right, p, target, out);
}

fn l2_norm_ceil(f: &IntPoly) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..=f.degree() {
        let c = f.coeff(i);
        s += &c * &c;
    }
    s.sqrt() + 1
}

/// Advances `combo` to the next size-k subset of {0, .., np-1}; false at end.
fn next_combination(combo: &mut [usize], np: usize) -> bool {
    let size = combo.len();
    let mut i = size;
    while i > 0 {
        i -= 1;
        if combo[i] < np - size + i {
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn symmetric_rep(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Factorization of a monic squarefree f, deg >= 1, into monic irreducibles.
fn zassenhaus_monic_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    debug_assert!(f.is_monic() && n >= 1);
    if n == 1 {
        return vec![f.clone()];
    }
    // pick an odd prime keeping f squarefree mod p
    let mut p = 0u64;
    let mut fp = Vec::new();
    for &cand in &[
        3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
    ] {
        let c = fp_from_int_poly(f, cand);
        if fp_deg(&c) != n as i64 {
            continue; // cannot happen for monic f, kept for safety
        }
        let d = fp_from_int_poly(&f.derivative(), cand);
        if fp_deg(&fp_gcd(&c, &d, cand)) == 0 {
            p = cand;
            fp = c;
            break;
        }
    }
    assert!(p != 0, "no squarefree prime among the first forty");
    let modular = fp_factor_squarefree(&fp, p);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // lift beyond twice the Mignotte bound on factor coefficients
    let target = (BigInt::one() << (n + 2)) * l2_norm_ceil(f);
    let (lifted, modulus) = hensel_lift_tree(f, &modular, p, &target);
    // subset recombination
    let mut pool: Vec<Vec<BigInt>> = lifted;
    let mut remaining = f.clone();
    let mut result = Vec::new();
    'outer: loop {
        let np = pool.len();
        if np <= 1 {
            if remaining.degree() >= 1 {
                result.push(remaining.clone());
            }
            break;
        }
        for size in 1..=np / 2 {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                let mut prod = vec![BigInt::one()];
                for &i in &combo {
                    prod = zm_mul(&prod, &pool[i], &modulus);
                }
                let cand_coeffs: Vec<BigInt> =
                    prod.iter().map(|c| symmetric_rep(c, &modulus)).collect();
                let cand = IntPoly::from_coeffs(cand_coeffs);
                if cand.is_monic() {
                    if let Some(q) = remaining.try_exact_div(&cand) {
                        result.push(cand);
                        remaining = q;
                        let mut keep = Vec::new();
                        for (i, item) in pool.into_iter().enumerate() {
                            if !combo.contains(&i) {
                                keep.push(item);
                            }
                        }
                        pool = keep;
                        continue 'outer;
                    }
                }
                if !next_combination(&mut combo, np) {
                    break;
                }
            }
        }
        // nothing recombines: the remaining polynomial is irreducible
        result.push(remaining.clone());
        break;
    }
    result.sort_by(|a, b| {
        (a.degree(), a.coeffs().to_vec()).cmp(&(b.degree(), b.coeffs().to_vec()))
    });
    result
}

/// Complete factorization of a monic polynomial into monic irreducible
/// factors with multiplicities, ascending by (degree, coefficients).
pub fn factor_over_integers(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    assert!(f.is_monic(), "factorization implemented for monic input");
    if f.degree() == 0 {
        return Vec::new();
    }
    let rad = super::sturm::squarefree_part(f);
    let irreducibles = zassenhaus_monic_squarefree(&rad);
    let mut out = Vec::with_capacity(irreducibles.len());
    let mut rem = f.clone();
    for g in irreducibles {
        let mut e = 0u32;
        while let Some(q) = rem.try_exact_div(&g) {
            rem = q;
            e += 1;
        }
        debug_assert!(e > 0);
        out.push((g, e));
    }
    debug_assert_eq!(rem.degree(), 0);
    out
}

/// True iff monic squarefree f is irreducible over the rationals. A Rabin
/// certificate modulo any of five small primes gives a fast positive answer;
/// otherwise the full factorization decides.
pub fn is_irreducible(f: &IntPoly) -> Result<bool> {
    let n = f.degree();
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let disc = super::disc::resultant(f, &f.derivative());
    if disc.is_zero() {
        return Err(Error::contract("is_irreducible requires disc(f) != 0"));
    }
    let mut tried = 0;
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29] {
        if tried == 5 {
            break;
        }
        if (&disc % p).is_zero() {
            continue;
        }
        tried += 1;
        let fp = fp_from_int_poly(f, p);
        if fp_deg(&fp) == n as i64 && fp_is_irreducible(&fp, p) {
            return Ok(true);
        }
    }
    let facs = factor_over_integers(f);
    Ok(facs.len() == 1 && facs[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn screen_finds_listed_factors() {
        // x^3 - x has the root 0
        assert_eq!(
            easy_reducibility_screen(&poly(&[0, -1, 0, 1])),
            ScreenOutcome::Reducible(poly(&[0, 1]))
        );
        // x^4 - 4x^2 + 4 = (x^2 - 2)^2
        assert_eq!(
            easy_reducibility_screen(&poly(&[4, 0, -4, 0, 1])),
            ScreenOutcome::Reducible(poly(&[-2, 0, 1]))
        );
        // x^4 - 3x^2 + 1 = (x^2-x-1)(x^2+x-1)
        assert_eq!(
            easy_reducibility_screen(&poly(&[1, 0, -3, 0, 1])),
            ScreenOutcome::Reducible(poly(&[-1, -1, 1]))
        );
        assert_eq!(easy_reducibility_screen(&poly(&[1, -3, 0, 1])), ScreenOutcome::Passed);
        // the screen must not report the polynomial itself
        assert_eq!(easy_reducibility_screen(&poly(&[-1, -1, 1])), ScreenOutcome::Passed);
    }

    #[test]
    fn rabin_certificates() {
        // x^5 - x^4 - 4x^3 + 3x^2 + 3x - 1 is irreducible mod 2
        let f = fp_from_int_poly(&poly(&[-1, 3, 3, -4, -1, 1]), 2);
        assert!(fp_is_irreducible(&f, 2));
        // x^2 - 2 mod 5: 2 is not a QR mod 5
        assert!(fp_is_irreducible(&fp_from_int_poly(&poly(&[-2, 0, 1]), 5), 5));
        // x^2 - 1 factors everywhere
        assert!(!fp_is_irreducible(&fp_from_int_poly(&poly(&[-1, 0, 1]), 7), 7));
    }

    #[test]
    fn irreducibility_decisions() {
        assert!(is_irreducible(&poly(&[-2, 0, 1])).unwrap());
        assert!(!is_irreducible(&poly(&[1, 0, -3, 0, 1])).unwrap());
        assert!(is_irreducible(&poly(&[-1, 3, 3, -4, -1, 1])).unwrap());
        assert!(is_irreducible(&poly(&[1, -3, 0, 1])).unwrap());
        // disc = 0 violates the contract
        assert!(is_irreducible(&poly(&[1, 2, 1])).is_err());
    }

    #[test]
    fn factorization_examples() {
        let f = poly(&[1, 0, -3, 0, 1]);
        let facs = factor_over_integers(&f);
        assert_eq!(
            facs,
            vec![(poly(&[-1, -1, 1]), 1), (poly(&[-1, 1, 1]), 1)]
        );
        let sq = poly(&[4, 0, -4, 0, 1]);
        assert_eq!(factor_over_integers(&sq), vec![(poly(&[-2, 0, 1]), 2)]);
        // x^6 - 1 = (x-1)(x+1)(x^2-x+1)(x^2+x+1)
        let c6 = poly(&[-1, 0, 0, 0, 0, 0, 1]);
        let facs6 = factor_over_integers(&c6);
        assert_eq!(facs6.len(), 4);
        let product = facs6
            .iter()
            .fold(IntPoly::one(), |acc, (g, e)| {
                let mut a = acc;
                for _ in 0..*e {
                    a = a.mul(g);
                }
                a
            });
        assert_eq!(product, c6);
    }

    #[test]
    fn factorization_with_many_linear_factors() {
        // (x-1)(x-2)...(x-6): stresses recombination
        let mut f = IntPoly::one();
        for r in 1..=6i64 {
            f = f.mul(&poly(&[-r, 1]));
        }
        let facs = factor_over_integers(&f);
        assert_eq!(facs.len(), 6);
        for (g, e) in &facs {
            assert_eq!(g.degree(), 1);
            assert_eq!(*e, 1);
        }
    }

    #[test]
    fn factorization_keeps_multiplicities() {
        // (x^2 - x - 1)^2 (x - 3)
        let g = poly(&[-1, -1, 1]);
        let f = g.mul(&g).mul(&poly(&[-3, 1]));
        let facs = factor_over_integers(&f);
        assert_eq!(facs, vec![(poly(&[-3, 1]), 1), (g, 2)]);
    }
}
