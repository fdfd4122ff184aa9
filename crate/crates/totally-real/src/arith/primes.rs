//! Primality, integer factorization, and the square-divisor window test.
//!
//! Discriminants of search candidates reach ~10^30, so factoring them one by
//! one with naive trial division would dominate the sieve. Small factors are
//! extracted with a remainder tree against a precomputed product of all
//! primes below the trial limit, after which the cofactor is resolved by
//! Miller-Rabin, perfect-power checks, and Brent's rho with an iteration
//! budget. A cofactor that survives everything is reported as unresolved and
//! handled conservatively by callers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

pub const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

/// Primes below `TRIAL_DIVISION_LIMIT`, sieved once per process.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for p in 2..=n {
            if !composite[p] {
                out.push(p as u32);
                let mut m = p * p;
                while m <= n {
                    composite[m] = true;
                    m += p;
                }
            }
        }
        out
    })
}

/// Binary product tree over blocks of small primes; level 0 holds per-block
/// products, higher levels pairwise products. Used for gcd-splitting.
struct ProductTree {
    blocks: Vec<(usize, usize)>,
    levels: Vec<Vec<BigInt>>,
}

const BLOCK: usize = 64;

fn product_tree() -> &'static ProductTree {
    static TREE: OnceLock<ProductTree> = OnceLock::new();
    TREE.get_or_init(|| {
        let primes = small_primes();
        let mut blocks = Vec::new();
        let mut leaf = Vec::new();
        let mut i = 0;
        while i < primes.len() {
            let j = (i + BLOCK).min(primes.len());
            blocks.push((i, j));
            let mut prod = BigInt::one();
            for &p in &primes[i..j] {
                prod *= BigInt::from(p);
            }
            leaf.push(prod);
            i = j;
        }
        let mut levels = vec![leaf];
        while levels.last().unwrap().len() > 1 {
            let prev = levels.last().unwrap();
            let mut next = Vec::with_capacity((prev.len() + 1) / 2);
            for pair in prev.chunks(2) {
                if pair.len() == 2 {
                    next.push(&pair[0] * &pair[1]);
                } else {
                    next.push(pair[0].clone());
                }
            }
            levels.push(next);
        }
        ProductTree { blocks, levels }
    })
}

/// All prime factors `p <= TRIAL_DIVISION_LIMIT` of `|d|` with multiplicity,
/// plus the remaining cofactor (coprime to every small prime).
pub fn extract_small_factors(d: &BigInt) -> (Vec<(u64, u32)>, BigInt) {
    let mut n = d.abs();
    assert!(!n.is_zero(), "factoring zero");
    let tree = product_tree();
    let primes = small_primes();
    let mut found: Vec<u32> = Vec::new();
    // descend from the root, pruning subtrees coprime to n
    let top = tree.levels.len() - 1;
    let mut stack = vec![(top, 0usize)];
    while let Some((level, idx)) = stack.pop() {
        // reduce the node product mod n before the gcd: the node can be huge
        // (the root is the product of all 78498 primes) and gcd cost scales
        // with the larger operand, while the division is one cheap pass
        let node = &tree.levels[level][idx];
        let r = node % &n;
        let g = if r.is_zero() { n.clone() } else { n.gcd(&r) };
        if g.is_one() {
            continue;
        }
        if level == 0 {
            let (lo, hi) = tree.blocks[idx];
            for &p in &primes[lo..hi] {
                if (&g % p).is_zero() {
                    found.push(p);
                }
            }
        } else {
            let child = 2 * idx;
            stack.push((level - 1, child));
            if child + 1 < tree.levels[level - 1].len() {
                stack.push((level - 1, child + 1));
            }
        }
    }
    found.sort_unstable();
    let mut factors = Vec::with_capacity(found.len());
    for p in found {
        let bp = BigInt::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = n.div_rem(&bp);
            if r.is_zero() {
                n = q;
                e += 1;
            } else {
                break;
            }
        }
        debug_assert!(e > 0);
        factors.push((p as u64, e));
    }
    (factors, n)
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for all u64 (first twelve prime bases).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_big(n: &BigInt, base: u64) -> bool {
    // true = "probably prime for this base"
    let nm1: BigInt = n - 1;
    let s = nm1.trailing_zeros().unwrap();
    let d = &nm1 >> s;
    let a = BigInt::from(base);
    if (&a % n).is_zero() {
        return true;
    }
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigInt::from(2u32), n);
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Primality test: deterministic below 3.317e24 (first 13 prime bases); for
/// larger inputs, 25 fixed bases with no known composite passing all of them.
pub fn is_prime(n: &BigInt) -> bool {
    if !n.is_positive() {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_even() {
        return false;
    }
    const SMALL: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for &p in &SMALL {
        if (n % p).is_zero() {
            return false;
        }
    }
    // 3_317_044_064_679_887_385_961_981: deterministic witness threshold
    let det_threshold: BigInt = "3317044064679887385961981".parse().unwrap();
    let bases: &[u64] = if *n < det_threshold {
        &SMALL
    } else {
        &[
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
            83, 89, 97,
        ]
    };
    bases.iter().all(|&a| miller_rabin_big(n, a))
}

/// `Some(r)` with `r*r == n` when n is a perfect square.
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

fn brent_rho_u64(n: u64, c: u64, budget: u64) -> Option<u64> {
    let step = |x: u64| (mulmod_u64(x, x, n) + c) % n;
    let mut y = 2u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    let mut r = 1u64;
    let mut iters = 0u64;
    while g == 1 && iters < budget {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            let m = 128.min(r - k);
            for _ in 0..m {
                y = step(y);
                let diff = x.abs_diff(y);
                if diff != 0 {
                    q = mulmod_u64(q, diff, n);
                }
            }
            g = gcd_u64(q, n);
            k += m;
            iters += m;
        }
        r *= 2;
    }
    if g == n {
        // a whole batch collapsed; replay it one gcd at a time
        loop {
            ys = step(ys);
            let diff = x.abs_diff(ys);
            g = gcd_u64(diff.max(1), n);
            if g > 1 {
                break;
            }
        }
    }
    (g > 1 && g < n).then_some(g)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn brent_rho_big(n: &BigInt, c: u64, budget: u64) -> Option<BigInt> {
    let cc = BigInt::from(c);
    let step = |x: &BigInt| (x * x + &cc) % n;
    let mut y = BigInt::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut r = 1u64;
    let mut iters = 0u64;
    while g.is_one() && iters < budget {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0u64;
        while k < r && g.is_one() {
            ys = y.clone();
            let m = 128.min(r - k);
            for _ in 0..m {
                y = step(&y);
                let diff = (&x - &y).abs();
                if !diff.is_zero() {
                    q = (q * diff) % n;
                }
            }
            g = q.gcd(n);
            k += m;
            iters += m;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = step(&ys);
            let diff = (&x - &ys).abs();
            if diff.is_zero() {
                return None;
            }
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (!g.is_one() && g < *n).then_some(g)
}

fn rho_split(n: &BigInt, budget: u64) -> Option<BigInt> {
    for c in [1u64, 3, 5, 7, 11] {
        let got = if let Some(v) = n.to_u64() {
            brent_rho_u64(v, c, budget).map(BigInt::from)
        } else {
            brent_rho_big(n, c, budget)
        };
        if got.is_some() {
            return got;
        }
    }
    None
}

/// Prime factorization with an explicit marker for the part that could not
/// be resolved within the rho budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// (prime, exponent), ascending primes.
    pub factors: Vec<(BigInt, u32)>,
    /// Composite cofactor with no factor below the trial limit, coprime to
    /// all listed primes, or None when fully factored.
    pub unresolved: Option<BigInt>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_none()
    }

    pub fn value(&self) -> BigInt {
        let mut v = BigInt::one();
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        if let Some(c) = &self.unresolved {
            v *= c;
        }
        v
    }

    /// Product of p^(2*floor(e/2)) over known factors: the largest square
    /// divisor built from resolved primes.
    pub fn known_square_part(&self) -> BigInt {
        let mut v = BigInt::one();
        for (p, e) in &self.factors {
            v *= p.pow(2 * (e / 2));
        }
        v
    }

    /// Product of p^(e mod 2): what remains of the known part after removing
    /// every square divisor.
    pub fn known_squarefree_kernel(&self) -> BigInt {
        let mut v = BigInt::one();
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                v *= p;
            }
        }
        v
    }

    /// All square divisors a^2 | value as their roots a, when complete.
    pub fn square_divisor_roots(&self) -> Option<Vec<BigInt>> {
        if !self.is_complete() {
            return None;
        }
        let mut roots = vec![BigInt::one()];
        for (p, e) in &self.factors {
            let half = e / 2;
            if half == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(roots.len() * (half as usize + 1));
            for r in &roots {
                let mut pw = BigInt::one();
                for _ in 0..=half {
                    next.push(r * &pw);
                    pw *= p;
                }
            }
            roots = next;
        }
        roots.sort();
        Some(roots)
    }
}

/// Factors `|n| > 0`: small primes by remainder tree, then the cofactor by
/// primality testing, perfect-power extraction, and Brent rho.
pub fn factorize(n: &BigInt, rho_budget: u64) -> Factorization {
    let (small, cof) = extract_small_factors(n);
    let mut factors: Vec<(BigInt, u32)> = small
        .into_iter()
        .map(|(p, e)| (BigInt::from(p), e))
        .collect();
    let mut unresolved = None;
    let mut pending = vec![(cof, 1u32)];
    while let Some((c, mult)) = pending.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            merge_factor(&mut factors, c, mult);
            continue;
        }
        // perfect powers: exponents up to log2(c)
        let mut split = false;
        for k in [2u32, 3, 5, 7] {
            let r = c.nth_root(k);
            if r.pow(k) == c {
                pending.push((r, mult * k));
                split = true;
                break;
            }
        }
        if split {
            continue;
        }
        if let Some(d) = rho_split(&c, rho_budget) {
            let q = &c / &d;
            pending.push((d, mult));
            pending.push((q, mult));
        } else {
            let prev = unresolved.take().unwrap_or_else(BigInt::one);
            unresolved = Some(prev * c.pow(mult));
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    // merge duplicates produced by independent splits
    let mut merged: Vec<(BigInt, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        if let Some(last) = merged.last_mut() {
            if last.0 == p {
                last.1 += e;
                continue;
            }
        }
        merged.push((p, e));
    }
    Factorization {
        factors: merged,
        unresolved,
    }
}

fn merge_factor(factors: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32) {
    for f in factors.iter_mut() {
        if f.0 == p {
            f.1 += e;
            return;
        }
    }
    factors.push((p, e));
}

/// Outcome of the square-divisor window test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareWindow {
    /// All verified a >= 1 with a^2 | d and lower < d/a^2 <= upper.
    pub admissible: Vec<BigInt>,
    /// True when an unresolved cofactor may hide further admissible a; an
    /// empty `admissible` with this flag set must not be treated as a
    /// definitive rejection.
    pub uncertain: bool,
}

fn square_times(a: &BigInt, den: &BigInt) -> BigInt {
    a * a * den
}

fn ceil_sqrt_of_ratio(num: &BigInt, den: &BigInt) -> BigInt {
    // smallest a >= 1 with a^2 * den >= num
    debug_assert!(num.is_positive() && den.is_positive());
    let mut a = (num / den).sqrt();
    while square_times(&a, den) < *num {
        a += 1;
    }
    loop {
        let prev: BigInt = &a - 1;
        if prev.is_positive() && square_times(&prev, den) >= *num {
            a = prev;
        } else {
            break;
        }
    }
    a.max(BigInt::one())
}

fn max_root_below_ratio(num: &BigInt, den: &BigInt) -> BigInt {
    // largest a with a^2 * den < num (0 when none)
    debug_assert!(num.is_positive() && den.is_positive());
    let mut a: BigInt = (num / den).sqrt() + 1;
    while !a.is_zero() && square_times(&a, den) >= *num {
        a -= 1;
    }
    loop {
        let next: BigInt = &a + 1;
        if square_times(&next, den) < *num {
            a = next;
        } else {
            break;
        }
    }
    a
}

fn quotient_in_window(d: &BigInt, a: &BigInt, lower: &BigRational, upper: &BigRational) -> bool {
    let a2 = a * a;
    let q_num = d;
    // lower < d/a^2  <=>  lower.num * a^2 < d * lower.den
    let left = lower.numer() * &a2 < q_num * lower.denom();
    // d/a^2 <= upper  <=>  d * upper.den <= upper.num * a^2
    let right = q_num * upper.denom() <= upper.numer() * &a2;
    left && right
}

const SCAN_LIMIT: i64 = 100_000;

/// All a >= 1 with a^2 | d and `lower < d/a^2 <= upper`, for d > 0.
///
/// A narrow admissible range is scanned directly (always complete); a wide
/// range falls back to factoring, which can leave an unresolved cofactor.
pub fn square_divisors_in_window(
    d: &BigInt,
    lower: &BigRational,
    upper: &BigRational,
) -> SquareWindow {
    assert!(d.is_positive(), "window test needs d > 0");
    assert!(lower >= &BigRational::zero() && upper > lower);
    let none = SquareWindow {
        admissible: Vec::new(),
        uncertain: false,
    };
    // quotient of a=1 already below the window: larger a only shrink it
    if BigRational::from_integer(d.clone()) <= *lower {
        return none;
    }
    let a_min = ceil_sqrt_of_ratio(&(d * upper.denom()), upper.numer());
    let a_max = if lower.numer().is_zero() {
        d.sqrt()
    } else {
        max_root_below_ratio(&(d * lower.denom()), lower.numer())
    };
    if a_max < a_min {
        return none;
    }
    let width = (&a_max - &a_min).to_i64();
    if let Some(w) = width {
        if w <= SCAN_LIMIT {
            let mut adm = Vec::new();
            let mut a = a_min.clone();
            while a <= a_max {
                if (d % (&a * &a)).is_zero() && quotient_in_window(d, &a, lower, upper) {
                    adm.push(a.clone());
                }
                a += 1;
            }
            return SquareWindow {
                admissible: adm,
                uncertain: false,
            };
        }
    }
    // wide range: enumerate square divisors from a partial factorization
    let (small, cof) = extract_small_factors(d);
    let mut roots = vec![BigInt::one()];
    for (p, e) in &small {
        let half = e / 2;
        if half == 0 {
            continue;
        }
        let bp = BigInt::from(*p);
        let mut next = Vec::with_capacity(roots.len() * (half as usize + 1));
        for r in &roots {
            let mut pw = BigInt::one();
            for _ in 0..=half {
                next.push(r * &pw);
                pw *= &bp;
            }
        }
        roots = next;
    }
    let mut uncertain = false;
    let mut cof_roots = vec![BigInt::one()];
    if !cof.is_one() {
        if let Some(r) = is_perfect_square(&cof) {
            // cof = r^2; its square divisors are g^2 for g | r
            if is_prime(&r) {
                cof_roots.push(r);
            } else {
                // divisors of r beyond 1 and r itself are unknown
                cof_roots.push(r);
                uncertain = true;
            }
        } else if !is_prime(&cof) {
            // a composite non-square cofactor with all factors above the
            // trial limit is squarefree iff it has at most two prime
            // factors; beyond limit^3 that is no longer guaranteed
            let limit_cubed = BigInt::from(TRIAL_DIVISION_LIMIT).pow(3);
            if cof > limit_cubed {
                uncertain = true;
            }
        }
    }
    let mut adm = Vec::new();
    for r in &roots {
        for cr in &cof_roots {
            let a = r * cr;
            if quotient_in_window(d, &a, lower, upper) {
                debug_assert!((d % (&a * &a)).is_zero());
                adm.push(a);
            }
        }
    }
    adm.sort();
    adm.dedup();
    SquareWindow {
        admissible: adm,
        uncertain,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{FromPrimitive, Pow};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_prime_extraction() {
        let d = BigInt::from(2u64).pow(5u32) * BigInt::from(9u64) * BigInt::from(1_000_003u64);
        let (f, c) = extract_small_factors(&d);
        assert_eq!(f, vec![(2, 5), (3, 2)]);
        assert_eq!(c, BigInt::from(1_000_003u64));
        let (f2, c2) = extract_small_factors(&BigInt::from(720u32));
        assert_eq!(f2, vec![(2, 4), (3, 2), (5, 1)]);
        assert!(c2.is_one());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2) && is_prime_u64(3) && is_prime_u64(97));
        assert!(!is_prime_u64(1) && !is_prime_u64(561) && !is_prime_u64(1_000_001));
        assert!(is_prime_u64(1_000_003));
        assert!(is_prime(&"1000000000000000003".parse().unwrap()));
        assert!(!is_prime(&"1000000000000000001".parse().unwrap()));
        // 26-digit prime, below the deterministic-witness threshold
        assert!(is_prime(&"10000000000000000000000013".parse().unwrap()));
        // 27-digit prime, above it (fixed 25-base path)
        assert!(is_prime(&"100000000000000000000000067".parse().unwrap()));
        // semiprime with two 14-digit factors, no small divisors
        assert!(!is_prime(&"200000000000950000000000777".parse().unwrap()));
    }

    #[test]
    fn factorization_resolves_semiprimes() {
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let f = factorize(&(&p * &q * 12), 1 << 22);
        assert!(f.is_complete());
        assert_eq!(
            f.factors,
            vec![
                (BigInt::from(2), 2),
                (BigInt::from(3), 1),
                (p.clone(), 1),
                (q.clone(), 1)
            ]
        );
        assert_eq!(f.value(), p * q * 12);
        let g = factorize(&BigInt::from(5u32).pow(6u32), 1 << 10);
        assert_eq!(g.factors, vec![(BigInt::from(5), 6)]);
        assert_eq!(g.known_square_part(), BigInt::from(5u32).pow(6u32));
        assert!(g.known_squarefree_kernel().is_one());
    }

    #[test]
    fn square_divisor_roots_enumeration() {
        let f = factorize(&(BigInt::from(2u32).pow(4u32) * BigInt::from(9) * BigInt::from(5)), 1 << 10);
        let roots = f.square_divisor_roots().unwrap();
        // squares dividing 720: 1, 4, 16, 9, 36, 144
        let expect: Vec<BigInt> = [1, 2, 3, 4, 6, 12].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(roots, expect);
    }

    #[test]
    fn window_narrow_scan() {
        // degree-2 window (B_O(2) lowered a unit in the last digit, B=30)
        let lower = rat(2222, 1000) * rat(2222, 1000);
        let upper = rat(900, 1);
        let w = square_divisors_in_window(&BigInt::from(20), &lower, &upper);
        assert_eq!(w.admissible, vec![BigInt::from(1), BigInt::from(2)]);
        assert!(!w.uncertain);
        let w2 = square_divisors_in_window(&BigInt::from(3), &lower, &upper);
        assert!(w2.admissible.is_empty() && !w2.uncertain);
        // degree-3 window with d = 81 = disc(x^3 - 3x + 1)
        let lower3 = rat(3609, 1000).pow(3);
        let upper3 = rat(25, 1).pow(3);
        let w3 = square_divisors_in_window(&BigInt::from(81), &lower3, &upper3);
        assert_eq!(w3.admissible, vec![BigInt::from(1)]);
    }

    #[test]
    fn window_wide_range_uses_factoring() {
        // d = 3^2 * 10^30: the scan range is astronomically wide, but the
        // factoring path resolves it completely
        let d = BigInt::from(9u32) * BigInt::from(10u32).pow(30u32);
        let lower = BigRational::from_u64(47).unwrap();
        let upper = BigRational::from_u64(1_000_000).unwrap();
        let w = square_divisors_in_window(&d, &lower, &upper);
        assert!(!w.uncertain);
        // need a^2 | d with d/a^2 in (47, 10^6]: d = 2^30 5^30 3^2,
        // a = 2^i 5^j 3^k: quotient 2^(30-2i) 5^(30-2j) 3^(2-2k)
        for a in &w.admissible {
            let a2 = a * a;
            assert!((&d % &a2).is_zero());
            let q = &d / &a2;
            assert!(q > BigInt::from(47) && q <= BigInt::from(1_000_000));
        }
        assert!(!w.admissible.is_empty());
    }

    #[test]
    fn window_agreement_between_paths() {
        // smooth d where both the scan and factoring paths are exercised
        for d_val in [720u64, 86400, 1048576, 3240000] {
            let d = BigInt::from(d_val);
            let lower = rat(3, 1);
            let upper = rat(d_val as i64, 4);
            let scan = square_divisors_in_window(&d, &lower, &upper);
            // factoring-path answer reconstructed from the factorization
            let f = factorize(&d, 1 << 16);
            let all = f.square_divisor_roots().unwrap();
            let manual: Vec<BigInt> = all
                .into_iter()
                .filter(|a| quotient_in_window(&d, a, &lower, &upper))
                .collect();
            assert_eq!(scan.admissible, manual, "d = {}", d_val);
        }
    }
}
