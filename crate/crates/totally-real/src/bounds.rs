//! Coefficient bounds for the depth-first search over monic integer
//! polynomials with all roots real.
//!
//! Fix a degree `n` and a root-discriminant bound `B`, and write the sought
//! polynomial as
//!
//! ```text
//! f(x) = x^n + a_(n-1) x^(n-1) + ... + a_1 x + a_0,
//! ```
//!
//! with root multiset `x_1 <= ... <= x_n` and power sums `s_m = sum x_i^m`.
//! A generator `alpha` of the field can be chosen with `t = Tr(alpha)` in
//! `[0, n/2]` and
//!
//! ```text
//! s_2 = Tr(alpha^2) <= t^2/n + gamma_(n-1) * (B^n / n)^(1/(n-1)),
//! ```
//!
//! where `gamma_k` is the Hermite constant for rank `k`; this caps the
//! second coefficient from below.  A lower bound on traces of totally
//! positive algebraic integers (`Tr(beta) > 1.7719 deg(beta)`, with five
//! explicit exceptions) caps it from above.  Both caps are computed here as
//! exact rationals except for one certified `k`-th root.
//!
//! Deeper coefficients are sliced off a search prefix `a_(n-1) .. a_(n-k)`
//! using the scaled derivatives
//!
//! ```text
//! f_i(x) = f^(n-i)(x) / (n-i)!  =  sum_j C(n-i+j, j) a_(n-i+j) x^j,
//! ```
//!
//! whose roots interlace: between consecutive roots of `f_(i+1)` lies
//! exactly one root of `f_i`.  Writing `f_(k+1) = g_(k+1) + a_(n-k-1)` and
//! letting `beta_1 < ... < beta_k` be the roots of `f_k` padded with
//! envelope endpoints `beta_0, beta_(k+1)`, the next coefficient must
//! satisfy
//!
//! ```text
//! -min { g_(k+1)(beta_i) : i /= k mod 2 }  <  a_(n-k-1)  <
//! -max { g_(k+1)(beta_i) : i == k mod 2 },
//! ```
//!
//! and the envelope endpoints come from optimizing `x_n` subject to the
//! known power sums (Lagrange multipliers force the other coordinates to
//! take at most two distinct values, so the critical equations eliminate to
//! resultants in one variable).  All root brackets are certified by exact
//! sign evaluation at dyadic points; no floating point enters any decision.

use crate::arith::dyadic::{DyInterval, Dyadic};
use crate::arith::sturm::{isolate_real_roots, refine_bracket};
use crate::arith::{
    factor_over_integers, newton_power_sums, square_divisors_in_window, subresultant_gcd, IntPoly,
    MonicIntPolynomial, SquareWindow,
};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Target width `2^-BRACKET_PREC` for ladder root brackets; at least as
/// tight as the usual 1e-4 working precision for this search.
const BRACKET_PREC: u32 = 14;

/// Dyadic precision for envelope endpoints and other derived constants.
const ENV_PREC: u32 = 48;

/// Outcome of a bound computation that can cut the current search branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate<T> {
    Pass(T),
    Prune,
}

impl<T> Gate<T> {
    pub fn is_prune(&self) -> bool {
        matches!(self, Gate::Prune)
    }
}

/// Degree-indexed constant tables used by the searches.
pub struct BoundTables;

impl BoundTables {
    /// Degrees covered by the tabulation driver.
    pub const MIN_DEGREE: usize = 2;
    pub const MAX_DEGREE: usize = 10;

    /// Unconditional lower bound on the root discriminant of a totally real
    /// field of degree `n`, as printed to three decimals.
    pub fn odlyzko(n: usize) -> BigRational {
        let thousandths: i64 = match n {
            2 => 2223,
            3 => 3610,
            4 => 5067,
            5 => 6523,
            6 => 7941,
            7 => 9301,
            8 => 10596,
            9 => 11823,
            10 => 12985,
            _ => panic!("no root-discriminant floor tabulated for degree {n}"),
        };
        BigRational::new(BigInt::from(thousandths), BigInt::from(1000))
    }

    /// The floor lowered by one unit in the last printed digit.  The printed
    /// values are rounded, so windows that must not exclude a legitimate
    /// subfield compare against this slightly smaller value instead.
    pub fn odlyzko_window(n: usize) -> BigRational {
        Self::odlyzko(n) - BigRational::new(BigInt::one(), BigInt::from(1000))
    }

    /// Root-discriminant bound used for the complete per-degree tables.
    pub fn delta_profile(n: usize) -> BigRational {
        let (num, den): (i64, i64) = match n {
            2 => (30, 1),
            3 => (25, 1),
            4 => (20, 1),
            5 => (17, 1),
            6 => (16, 1),
            7 => (31, 2),
            8 => (15, 1),
            9 => (29, 2),
            10 => (14, 1),
            _ => panic!("no table profile for degree {n}"),
        };
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Upper bound on `gamma_k^k`, the k-th power of the Hermite constant.
    /// Exact for `k <= 8`; `k = 9, 10` use the integer ceilings of
    /// `2^(72/7)` and `2^(90/7)` obtained from `gamma_k <=
    /// gamma_(k-1)^((k-1)/(k-2))` (checked: `1249^7 >= 2^72` and
    /// `7420^7 >= 2^90`).
    pub fn hermite_pow(k: usize) -> BigRational {
        let (num, den): (i64, i64) = match k {
            1 => (1, 1),
            2 => (4, 3),
            3 => (2, 1),
            4 => (4, 1),
            5 => (8, 1),
            6 => (64, 3),
            7 => (64, 1),
            8 => (256, 1),
            9 => (1249, 1),
            10 => (7420, 1),
            _ => panic!("no Hermite bound tabulated for rank {k}"),
        };
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub(crate) fn rational_pow(x: &BigRational, e: u32) -> BigRational {
    BigRational::new(x.numer().pow(e), x.denom().pow(e))
}

/// Largest multiple of `2^-prec` that is `<= q`.
pub(crate) fn rat_to_dyadic_down(q: &BigRational, prec: u32) -> Dyadic {
    let scaled = (q * BigRational::from_integer(BigInt::one() << prec as usize)).floor();
    Dyadic::new(scaled.to_integer(), -(prec as i64))
}

/// Smallest multiple of `2^-prec` that is `>= q`.
pub(crate) fn rat_to_dyadic_up(q: &BigRational, prec: u32) -> Dyadic {
    let scaled = (q * BigRational::from_integer(BigInt::one() << prec as usize)).ceil();
    Dyadic::new(scaled.to_integer(), -(prec as i64))
}

/// Dyadic-valued rational `r` with `r <= x^(1/k)`, within `2^-prec` of it.
pub(crate) fn kth_root_down(x: &BigRational, k: u32, prec: u32) -> BigRational {
    assert!(!x.is_negative() && k >= 1);
    let scale = BigInt::one() << (k as usize * prec as usize);
    let m = (x * BigRational::from_integer(scale)).floor().to_integer();
    let r = m.nth_root(k);
    BigRational::new(r, BigInt::one() << prec as usize)
}

/// Dyadic-valued rational `r` with `r >= x^(1/k)`, within `2^-prec` of it.
pub(crate) fn kth_root_up(x: &BigRational, k: u32, prec: u32) -> BigRational {
    assert!(!x.is_negative() && k >= 1);
    let scale = BigInt::one() << (k as usize * prec as usize);
    let m = (x * BigRational::from_integer(scale)).ceil().to_integer();
    let mut r = m.nth_root(k);
    if r.pow(k) < m {
        r += 1;
    }
    BigRational::new(r, BigInt::one() << prec as usize)
}

fn check_degree(n: usize) -> Result<()> {
    if !(BoundTables::MIN_DEGREE..=BoundTables::MAX_DEGREE).contains(&n) {
        return Err(Error::contract(format!(
            "degree {n} outside the supported range 2..=10"
        )));
    }
    Ok(())
}

/// Upper bound on `s_2 = Tr(alpha^2)` for a generator with trace `t` of a
/// totally real field of degree `n` and discriminant at most `B^n`:
///
/// ```text
/// s_2 <= t^2/n + gamma_(n-1) (B^n / n)^(1/(n-1)).
/// ```
///
/// The root is taken as a single certified upper `k`-th root of the exact
/// rational `gamma_(n-1)^(n-1) * B^n / n`, so the result is a rational
/// upper bound that is exact whenever the root is rational.
pub fn hunter_t2_bound(n: usize, bound: &BigRational, trace: i64) -> Result<BigRational> {
    check_degree(n)?;
    if bound <= &BigRational::zero() {
        return Err(Error::contract("root-discriminant bound must be positive"));
    }
    if trace < 0 || 2 * trace as usize > n {
        return Err(Error::contract(format!(
            "generator trace {trace} outside 0..={}",
            n / 2
        )));
    }
    let nn = BigRational::from_integer(BigInt::from(n));
    let radicand = BoundTables::hermite_pow(n - 1) * rational_pow(bound, n as u32) / &nn;
    let root = kth_root_up(&radicand, (n - 1) as u32, 2 * ENV_PREC);
    Ok(BigRational::from_integer(BigInt::from(trace * trace)) / nn + root)
}

/// Inclusive range of `a_(n-2)` compatible with `a_(n-1) = a_top` under the
/// trace normalization `0 <= -a_top <= n/2`:
///
/// ```text
/// (1/2)(1 - 1/n) a_top^2 - (1/2) gamma_(n-1) (B^n/n)^(1/(n-1))
///     <= a_(n-2) < a_top^2/2 - 0.88595 n.
/// ```
///
/// The lower cut is the second-coefficient form of the `s_2` cap; the upper
/// cut encodes the totally-positive trace bound with the exact constant
/// `17719/20000`.  Returns `None` when the range is empty.
pub fn seed_coefficient_ranges(
    n: usize,
    bound: &BigRational,
    a_top: i64,
) -> Result<Option<(BigInt, BigInt)>> {
    check_degree(n)?;
    if a_top > 0 || 2 * (-a_top) as usize > n {
        return Err(Error::contract(format!(
            "top coefficient {a_top} outside -{}..=0",
            n / 2
        )));
    }
    if bound <= &BigRational::zero() {
        return Err(Error::contract("root-discriminant bound must be positive"));
    }
    let nn = BigRational::from_integer(BigInt::from(n));
    let tsq = BigRational::from_integer(BigInt::from(a_top * a_top));
    let radicand = BoundTables::hermite_pow(n - 1) * rational_pow(bound, n as u32) / &nn;
    let root = kth_root_up(&radicand, (n - 1) as u32, 2 * ENV_PREC);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let lower = &half * (BigRational::one() - nn.recip()) * &tsq - &half * root;
    let upper = &half * &tsq
        - BigRational::new(BigInt::from(17719), BigInt::from(20000))
            * BigRational::from_integer(BigInt::from(n));
    let lo = lower.ceil().to_integer();
    let hi = upper.ceil().to_integer() - 1;
    if lo > hi {
        return Ok(None);
    }
    Ok(Some((lo, hi)))
}

/// Certified two-sided bound on every root of every monic real polynomial
/// sharing the power sums of the current prefix.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

/// A partially specified polynomial `x^n + a_(n-1) x^(n-1) + ... +
/// a_(n-k) x^(n-k) + ...` together with the certified data the search
/// maintains per node: power sums, the root envelope, and one bracket per
/// root of each scaled derivative `f_2, ..., f_k`.
#[derive(Clone, Debug)]
pub struct SearchPrefix {
    n: usize,
    bound: BigRational,
    coeffs: Vec<BigInt>,
    sums: Vec<BigInt>,
    envelope: Envelope,
    ladder: Vec<Vec<DyInterval>>,
}

impl SearchPrefix {
    /// Opens a prefix from the two seed coefficients.  Prunes when the
    /// level-2 envelope is empty or `f_2` lacks two distinct real roots.
    pub fn seed(
        n: usize,
        bound: &BigRational,
        a_top: i64,
        a_second: &BigInt,
    ) -> Result<Gate<SearchPrefix>> {
        check_degree(n)?;
        if a_top > 0 || 2 * (-a_top) as usize > n {
            return Err(Error::contract(format!(
                "top coefficient {a_top} outside -{}..=0",
                n / 2
            )));
        }
        let coeffs = vec![BigInt::from(a_top), a_second.clone()];
        let sums = prefix_power_sums(n, &coeffs, 2);
        let envelope = match lagrange_k2(n, &coeffs[0], &coeffs[1]) {
            Gate::Pass(e) => e,
            Gate::Prune => return Ok(Gate::Prune),
        };
        let f2 = divided_derivative(n, &coeffs, 2);
        let brackets = match compute_level(&f2, None, &envelope, BRACKET_PREC) {
            Gate::Pass(b) => b,
            Gate::Prune => return Ok(Gate::Prune),
        };
        Ok(Gate::Pass(SearchPrefix {
            n,
            bound: bound.clone(),
            coeffs,
            sums,
            envelope,
            ladder: vec![brackets],
        }))
    }

    /// Extends the prefix by the next coefficient `a_(n-k-1)`, recomputing
    /// the envelope (fresh at level 3, inherited above) and the next ladder
    /// level.  Prunes when `f_(k+1)` is not squarefree with `k+1` real
    /// roots inside the envelope.
    pub fn extend(&self, next: &BigInt) -> Result<Gate<SearchPrefix>> {
        let k = self.k();
        if k >= self.n {
            return Err(Error::contract("prefix already fully specified"));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.push(next.clone());
        let m = k + 1;
        let sums = prefix_power_sums(self.n, &coeffs, m);
        let envelope = if m == 3 {
            match lagrange_k3(self.n, &sums, &self.envelope) {
                Gate::Pass(e) => e,
                Gate::Prune => return Ok(Gate::Prune),
            }
        } else {
            self.envelope.clone()
        };
        let fm = divided_derivative(self.n, &coeffs, m);
        let prev = self.ladder.last().expect("ladder holds level k");
        let brackets = match compute_level(&fm, Some(prev), &envelope, BRACKET_PREC) {
            Gate::Pass(b) => b,
            Gate::Prune => return Ok(Gate::Prune),
        };
        let mut ladder = self.ladder.clone();
        ladder.push(brackets);
        Ok(Gate::Pass(SearchPrefix {
            n: self.n,
            bound: self.bound.clone(),
            coeffs,
            sums,
            envelope,
            ladder,
        }))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Number of specified coefficients `a_(n-1) .. a_(n-k)`.
    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_complete(&self) -> bool {
        self.k() == self.n
    }

    pub fn bound(&self) -> &BigRational {
        &self.bound
    }

    /// Specified coefficients, highest first: `a_(n-1), ..., a_(n-k)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Power sums `s_1 .. s_k` of any completion of this prefix.
    pub fn power_sums(&self) -> &[BigInt] {
        &self.sums
    }

    pub fn envelope(&self) -> &Envelope {
        &self.envelope
    }

    /// Certified brackets for the roots of `f_level`, `2 <= level <= k`.
    pub fn brackets(&self, level: usize) -> &[DyInterval] {
        &self.ladder[level - 2]
    }

    /// The completed polynomial once all `n` coefficients are specified.
    /// Its ladder reaches level `n`, which certifies `n` distinct real
    /// roots, so every completed prefix is squarefree and totally real.
    pub fn polynomial(&self) -> Option<MonicIntPolynomial> {
        if !self.is_complete() {
            return None;
        }
        let mut low_to_high = self.coeffs.clone();
        low_to_high.reverse();
        Some(MonicIntPolynomial::new(low_to_high))
    }

    /// True when the enumeration may restrict the next coefficient to
    /// `a_(n-k-1) >= 0`: negating all odd-indexed coefficients of a
    /// polynomial maps root lists to their negatives, so when `k+1` is odd
    /// and all earlier odd-position coefficients vanish the two sign
    /// choices give conjugate search branches.
    pub fn may_assume_nonneg_next(&self) -> bool {
        let m = self.k() + 1;
        if m % 2 == 0 {
            return false;
        }
        (0..m - 2).step_by(2).all(|j| self.coeffs[j].is_zero())
    }
}

/// Power sums `s_1 .. s_m` determined by the top `coeffs.len()` coefficients
/// of a monic degree-`n` polynomial (`s_m` only involves `a_(n-1) ..
/// a_(n-m)`, so the unspecified low coefficients are irrelevant).
fn prefix_power_sums(n: usize, coeffs: &[BigInt], m: usize) -> Vec<BigInt> {
    let mut low_to_high = vec![BigInt::zero(); n];
    for (j, c) in coeffs.iter().enumerate() {
        low_to_high[n - 1 - j] = c.clone();
    }
    newton_power_sums(&MonicIntPolynomial::new(low_to_high), m).values
}

/// The scaled derivative `f_level(x) = f^(n-level)(x) / (n-level)!` of the
/// prefix completion; only the specified coefficients enter.
fn divided_derivative(n: usize, coeffs: &[BigInt], level: usize) -> IntPoly {
    debug_assert!(level >= 1 && level <= coeffs.len());
    let mut c = vec![BigInt::zero(); level + 1];
    c[level] = binom(n, level);
    for j in 0..level {
        c[j] = binom(n - level + j, j) * &coeffs[level - j - 1];
    }
    IntPoly::from_coeffs(c)
}

/// `g_level = f_level` minus its constant term, used when that constant
/// `a_(n-level)` is the coefficient still to be chosen.
fn partial_g(n: usize, coeffs: &[BigInt], level: usize) -> IntPoly {
    debug_assert!(level >= 2 && level <= coeffs.len() + 1);
    let mut c = vec![BigInt::zero(); level + 1];
    c[level] = binom(n, level);
    for j in 1..level {
        c[j] = binom(n - level + j, j) * &coeffs[level - j - 1];
    }
    IntPoly::from_coeffs(c)
}

fn exact_sign(f: &IntPoly, x: &Dyadic) -> Ordering {
    let (p, e) = x.to_num_den_pow2();
    f.sign_at_dyadic(&p, e)
}

/// Moves `x` by shrinking dyadic steps in direction `up` until `f` is
/// nonzero there; terminates because `f` has finitely many roots.
fn nudge_off_root(f: &IntPoly, x: &Dyadic, up: bool) -> (Dyadic, Ordering) {
    let mut step = BRACKET_PREC as i64 + 2;
    loop {
        let d = Dyadic::new(BigInt::one(), -step);
        let cand = if up { x.add(&d) } else { x.sub(&d) };
        let s = exact_sign(f, &cand);
        if s != Ordering::Equal {
            return (cand, s);
        }
        step += 1;
    }
}

/// Brackets for the roots of a ladder polynomial `f` of degree `level`.
///
/// With `prev` brackets for the `level-1` interlacing roots, the midpoints
/// of `prev` plus widened envelope endpoints give `level+1` walls.  When
/// the exact signs of `f` at the walls alternate ending positive, each of
/// the `level` cells holds at least one root by the sign change and hence
/// exactly one by degree count, and no root escapes the envelope.  Any
/// failure of that pattern falls back to exact isolation over the whole
/// line, pruning when fewer than `level` roots exist or any lies certainly
/// outside the envelope.
fn compute_level(
    f: &IntPoly,
    prev: Option<&[DyInterval]>,
    env: &Envelope,
    prec: u32,
) -> Gate<Vec<DyInterval>> {
    let level = f.degree();
    if subresultant_gcd(f, &f.derivative()).degree() > 0 {
        return Gate::Prune;
    }
    if let Some(prev) = prev {
        debug_assert_eq!(prev.len() + 1, level);
        if let Some(brackets) = level_by_walls(f, prev, env, prec) {
            return Gate::Pass(brackets);
        }
    }
    // Exact fallback (and the direct path for level 2).
    let iso = isolate_real_roots(f, prec);
    if iso.len() != level {
        return Gate::Prune;
    }
    for iv in &iso {
        if iv.hi < env.lo || iv.lo > env.hi {
            return Gate::Prune;
        }
    }
    Gate::Pass(iso)
}

fn level_by_walls(
    f: &IntPoly,
    prev: &[DyInterval],
    env: &Envelope,
    prec: u32,
) -> Option<Vec<DyInterval>> {
    let level = f.degree();
    let ulp = Dyadic::new(BigInt::one(), -(prec as i64));
    let mut walls: Vec<(Dyadic, Ordering)> = Vec::with_capacity(level + 1);

    let base = env.lo.sub(&ulp);
    let s = exact_sign(f, &base);
    walls.push(if s == Ordering::Equal {
        nudge_off_root(f, &base, false)
    } else {
        (base, s)
    });
    for iv in prev {
        let base = iv.mid();
        let s = exact_sign(f, &base);
        walls.push(if s == Ordering::Equal {
            nudge_off_root(f, &base, true)
        } else {
            (base, s)
        });
    }
    let base = env.hi.add(&ulp);
    let s = exact_sign(f, &base);
    walls.push(if s == Ordering::Equal {
        nudge_off_root(f, &base, true)
    } else {
        (base, s)
    });

    // Strictly increasing walls whose signs alternate up to +1 on the right
    // certify exactly one simple root per cell.
    for i in 0..level {
        if walls[i].0 >= walls[i + 1].0 {
            return None;
        }
    }
    for (i, (_, s)) in walls.iter().enumerate() {
        let expect = if (level - i) % 2 == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        if *s != expect {
            return None;
        }
    }
    let mut out = Vec::with_capacity(level);
    for w in walls.windows(2) {
        let cell = DyInterval::new(w[0].0.clone(), w[1].0.clone());
        out.push(refine_bracket(f, &cell, prec));
    }
    Some(out)
}

/// Recomputes the certified brackets for ladder level `level` of a prefix
/// (level 2 by direct isolation, higher levels from the stored brackets one
/// level below).
pub fn interlaced_real_roots(prefix: &SearchPrefix, level: usize) -> Result<Gate<Vec<DyInterval>>> {
    if !(2..=prefix.k()).contains(&level) {
        return Err(Error::contract(format!(
            "ladder level {level} outside 2..={}",
            prefix.k()
        )));
    }
    let f = divided_derivative(prefix.n, &prefix.coeffs, level);
    let prev = if level == 2 {
        None
    } else {
        Some(prefix.brackets(level - 1))
    };
    Ok(compute_level(&f, prev, &prefix.envelope, BRACKET_PREC))
}

/// Dyadic-valued rationals bracketing `sqrt(q)` for `q >= 0`.
fn rational_sqrt_up(q: &BigRational, prec: u32) -> BigRational {
    kth_root_up(q, 2, prec)
}

/// Level-2 envelope: the extrema of a coordinate subject to `s_1, s_2`
/// occur where the other `n-1` coordinates are all equal, giving
///
/// ```text
/// beta = (-a_top -+ (n-1) sqrt(D)) / n,   D = a_top^2 - 2n/(n-1) a_second.
/// ```
fn lagrange_k2(n: usize, a_top: &BigInt, a_second: &BigInt) -> Gate<Envelope> {
    let nn = BigRational::from_integer(BigInt::from(n));
    let nm1 = BigRational::from_integer(BigInt::from(n - 1));
    let d = BigRational::from_integer(a_top * a_top)
        - BigRational::from_integer(BigInt::from(2)) * &nn / &nm1
            * BigRational::from_integer(a_second.clone());
    if d.is_negative() {
        return Gate::Prune;
    }
    let sq = rational_sqrt_up(&d, 2 * ENV_PREC);
    let center = BigRational::from_integer(-a_top);
    let lo = (&center - &nm1 * &sq) / &nn;
    let hi = (&center + &nm1 * &sq) / &nn;
    Gate::Pass(Envelope {
        lo: rat_to_dyadic_down(&lo, ENV_PREC),
        hi: rat_to_dyadic_up(&hi, ENV_PREC),
    })
}

fn poly_in_y(c: &[BigInt]) -> IntPoly {
    IntPoly::from_coeffs(c.to_vec())
}

/// Resultant with respect to `x` of two polynomials whose coefficients
/// (listed low to high in `x`) live in `Z[y]`, via a Bareiss determinant of
/// the Sylvester matrix with polynomial entries.
pub(crate) fn resultant_in_x(a: &[IntPoly], b: &[IntPoly]) -> IntPoly {
    let da = match a.iter().rposition(|c| !c.is_zero()) {
        Some(d) => d,
        None => return IntPoly::zero(),
    };
    let db = match b.iter().rposition(|c| !c.is_zero()) {
        Some(d) => d,
        None => return IntPoly::zero(),
    };
    if da == 0 {
        return poly_pow(&a[0], db as u32);
    }
    if db == 0 {
        return poly_pow(&b[0], da as u32);
    }
    let size = da + db;
    let mut m = vec![vec![IntPoly::zero(); size]; size];
    for row in 0..db {
        for (j, c) in a[..=da].iter().enumerate() {
            m[row][row + da - j] = c.clone();
        }
    }
    for row in 0..da {
        for (j, c) in b[..=db].iter().enumerate() {
            m[db + row][row + db - j] = c.clone();
        }
    }
    crate::linalg::bareiss_determinant(m)
}

fn poly_pow(p: &IntPoly, e: u32) -> IntPoly {
    let mut acc = IntPoly::one();
    for _ in 0..e {
        acc = acc.mul(p);
    }
    acc
}

/// Level-3 envelope.  At a critical point of `x_n = y` subject to
/// `s_1, s_2, s_3` the remaining coordinates take at most two values `x_1`
/// (p times) and `x_2` (q times), `p + q = n - 1`.  Writing `u = s_1 - y`,
/// `v = s_2 - y^2`, `w = s_3 - y^3` and eliminating `x_2`:
///
/// ```text
/// P2 = p(p+q) x_1^2 - 2pu x_1 + (u^2 - qv),
/// P3 = (pq^2 - p^3) x_1^3 + 3p^2 u x_1^2 - 3p u^2 x_1 + (u^3 - q^2 w),
/// ```
///
/// (the cubic term drops when `p = q`), so the critical `y` are among the
/// real roots of `Res_x(P2, P3)` over all partitions, plus the roots shared
/// by the two consistency polynomials of the all-equal configuration
/// `q = 0`.  The hull of the candidates, intersected with the level-2
/// envelope, bounds every root; no candidates means no real configuration
/// exists at all.
fn lagrange_k3(n: usize, sums: &[BigInt], env2: &Envelope) -> Gate<Envelope> {
    let (s1, s2, s3) = (&sums[0], &sums[1], &sums[2]);
    let u = poly_in_y(&[s1.clone(), BigInt::from(-1)]);
    let v = poly_in_y(&[s2.clone(), BigInt::zero(), BigInt::from(-1)]);
    let w = poly_in_y(&[s3.clone(), BigInt::zero(), BigInt::zero(), BigInt::from(-1)]);
    let mut candidates: Vec<IntPoly> = Vec::new();

    let r = n - 1;
    let mut p = r.div_ceil(2);
    while p <= r - 1 {
        let q = r - p;
        let pp = BigInt::from(p);
        let qq = BigInt::from(q);
        let u2 = u.mul(&u);
        let u3 = u2.mul(&u);
        let p2 = [
            u2.sub(&v.mul_scalar(&qq)),
            u.mul_scalar(&(BigInt::from(-2) * &pp)),
            IntPoly::constant(&pp * BigInt::from(r)),
        ];
        let lead3 = &pp * &qq * &qq - &pp * &pp * &pp;
        let p3 = [
            u3.sub(&w.mul_scalar(&(&qq * &qq))),
            u2.mul_scalar(&(BigInt::from(-3) * &pp)),
            u.mul_scalar(&(BigInt::from(3) * &pp * &pp)),
            IntPoly::constant(lead3),
        ];
        let res = resultant_in_x(&p2, &p3);
        if res.is_zero() {
            // Degenerate elimination carries no constraint; keep the
            // level-2 envelope rather than guessing.
            return Gate::Pass(env2.clone());
        }
        if res.degree() > 0 {
            candidates.push(res);
        }
        p += 1;
    }

    // All-equal configuration: x_1 repeated n-1 times.  Consistency of the
    // three power sums reduces to a common root of two univariates.
    let pp = BigInt::from(r);
    let q_poly = poly_in_y(&[
        s1 * s1 - &pp * s2,
        BigInt::from(-2) * s1,
        BigInt::one() + &pp,
    ]);
    let c_poly = poly_in_y(&[
        s1 * s1 * s1 - &pp * &pp * s3,
        BigInt::from(-3) * s1 * s1,
        BigInt::from(3) * s1,
        &pp * &pp - BigInt::one(),
    ]);
    let shared = subresultant_gcd(&q_poly, &c_poly);
    if shared.degree() > 0 {
        candidates.push(shared);
    }

    let mut lo: Option<Dyadic> = None;
    let mut hi: Option<Dyadic> = None;
    for cand in &candidates {
        for iv in isolate_real_roots(cand, ENV_PREC) {
            lo = Some(match lo {
                Some(l) => Dyadic::min(&l, &iv.lo),
                None => iv.lo.clone(),
            });
            hi = Some(match hi {
                Some(h) => Dyadic::max(&h, &iv.hi),
                None => iv.hi.clone(),
            });
        }
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) => {
            let lo = Dyadic::max(&lo, &env2.lo);
            let hi = Dyadic::min(&hi, &env2.hi);
            if lo > hi {
                Gate::Prune
            } else {
                Gate::Pass(Envelope { lo, hi })
            }
        }
        // No critical configuration exists, so no real point satisfies the
        // power-sum constraints and the branch is dead.
        _ => Gate::Prune,
    }
}

/// Envelope for ladder level `k` of a prefix: closed form at `k = 2`, the
/// resultant construction at `k = 3`, and the stored (inherited) envelope
/// above that, where fresh elimination stops paying for itself.
pub fn lagrange_extrema(prefix: &SearchPrefix, k: usize) -> Result<Gate<Envelope>> {
    if !(2..=prefix.k()).contains(&k) {
        return Err(Error::contract(format!(
            "envelope level {k} outside 2..={}",
            prefix.k()
        )));
    }
    match k {
        2 => Ok(lagrange_k2(prefix.n, &prefix.coeffs[0], &prefix.coeffs[1])),
        3 => {
            let env2 = match lagrange_k2(prefix.n, &prefix.coeffs[0], &prefix.coeffs[1]) {
                Gate::Pass(e) => e,
                Gate::Prune => return Ok(Gate::Prune),
            };
            Ok(lagrange_k3(prefix.n, &prefix.sums, &env2))
        }
        _ => Ok(Gate::Pass(prefix.envelope.clone())),
    }
}

/// Interval Horner evaluation with exact dyadic endpoints.
pub(crate) fn eval_on_interval(g: &IntPoly, iv: &DyInterval) -> DyInterval {
    let mut acc = DyInterval::from_int(0);
    for j in (0..=g.degree()).rev() {
        acc = acc.mul(iv).add(&DyInterval::from_int(g.coeff(j)));
    }
    acc
}

/// The integer range admissible for the next coefficient `a_(n-k-1)`.
///
/// Evaluates `g_(k+1)` over the level-`k` brackets `beta_1 .. beta_k` and
/// the envelope endpoints `beta_0, beta_(k+1)`; indices with `i /= k (mod
/// 2)` constrain from below, the others from above.  Interval evaluation
/// only widens the admissible range: the minimum of per-point upper bounds
/// still dominates the true minimum and symmetrically for the maximum, so
/// no admissible integer is lost.  Returns `None` when the range is empty.
pub fn next_coefficient_interval(prefix: &SearchPrefix) -> Result<Option<(BigInt, BigInt)>> {
    let k = prefix.k();
    if k >= prefix.n {
        return Err(Error::contract("prefix already fully specified"));
    }
    let g = partial_g(prefix.n, &prefix.coeffs, k + 1);
    let brackets = prefix.brackets(k);
    let mut min_of_uppers: Option<Dyadic> = None;
    let mut max_of_lowers: Option<Dyadic> = None;
    for i in 0..=(k + 1) {
        let val = if i == 0 {
            eval_on_interval(&g, &DyInterval::new(prefix.envelope.lo.clone(), prefix.envelope.lo.clone()))
        } else if i == k + 1 {
            eval_on_interval(&g, &DyInterval::new(prefix.envelope.hi.clone(), prefix.envelope.hi.clone()))
        } else {
            eval_on_interval(&g, &brackets[i - 1])
        };
        if i % 2 != k % 2 {
            min_of_uppers = Some(match min_of_uppers {
                Some(m) => Dyadic::min(&m, &val.hi),
                None => val.hi,
            });
        } else {
            max_of_lowers = Some(match max_of_lowers {
                Some(m) => Dyadic::max(&m, &val.lo),
                None => val.lo,
            });
        }
    }
    let lower = min_of_uppers.expect("parity class is never empty").neg();
    let upper = max_of_lowers.expect("parity class is never empty").neg();
    let lo = lower.floor() + 1;
    let hi = upper.ceil() - 1;
    if lo > hi {
        return Ok(None);
    }
    Ok(Some((lo, hi)))
}

/// Monic irreducible degree-`n` polynomials whose roots square to a root of
/// one of the five exceptions to the totally-positive trace bound
/// `Tr > 1.7719 deg`.  A generator escaping the seed window must have
/// `alpha^2` of degree `n` or `n/2` equal to such an exception, so its
/// minimal polynomial is a degree-`n` factor of `g(x^2)`; these are
/// enumerated here and injected into the search output unconditionally.
pub fn smyth_exceptional_candidates(n: usize) -> Vec<MonicIntPolynomial> {
    let exceptions = [
        IntPoly::from_i64(&[-1, 1]),
        IntPoly::from_i64(&[1, -3, 1]),
        IntPoly::from_i64(&[-1, 6, -5, 1]),
        IntPoly::from_i64(&[1, -7, 13, -7, 1]),
        IntPoly::from_i64(&[1, -8, 14, -7, 1]),
    ];
    let mut out: Vec<MonicIntPolynomial> = Vec::new();
    for g in &exceptions {
        let d = g.degree();
        if d != n && 2 * d != n {
            continue;
        }
        for (factor, _) in factor_over_integers(&g.compose_x_squared()) {
            if factor.degree() == n && factor.leading_coeff().is_one() {
                let monic = MonicIntPolynomial::try_from_poly(&factor)
                    .expect("monic factor converts");
                if !out.iter().any(|p| p == &monic) {
                    out.push(monic);
                }
            }
        }
    }
    out.sort_by(|a, b| a.cmp_lex_from_top(b));
    out
}

/// Square divisors `a` of `d` whose cofactor `d / a^2` stays inside the
/// per-degree discriminant window `(odlyzko_window(n)^n, B^n]`: exactly the
/// indices `a = [Z_F : Z[alpha]]` for which the field discriminant of a
/// degree-`n` field with polynomial discriminant `d` could still meet the
/// root-discriminant bound `B`.
pub fn square_divisor_window(d: &BigInt, n: usize, bound: &BigRational) -> Result<SquareWindow> {
    check_degree(n)?;
    if !d.is_positive() {
        return Err(Error::contract("polynomial discriminant must be positive"));
    }
    let lower = rational_pow(&BoundTables::odlyzko_window(n), n as u32);
    let upper = rational_pow(bound, n as u32);
    if upper <= lower {
        return Err(Error::contract(
            "discriminant window is empty below the degree floor",
        ));
    }
    Ok(square_divisors_in_window(d, &lower, &upper))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn seeded(n: usize, b: i64, a_top: i64, a_second: i64) -> SearchPrefix {
        match SearchPrefix::seed(n, &rat(b), a_top, &BigInt::from(a_second)).unwrap() {
            Gate::Pass(p) => p,
            Gate::Prune => panic!("seed pruned unexpectedly"),
        }
    }

    #[test]
    fn table_values() {
        assert_eq!(BoundTables::odlyzko(2), BigRational::new(2223.into(), 1000.into()));
        assert_eq!(BoundTables::odlyzko(10), BigRational::new(2597.into(), 200.into()));
        assert_eq!(BoundTables::odlyzko_window(3), BigRational::new(3609.into(), 1000.into()));
        assert_eq!(BoundTables::delta_profile(7), BigRational::new(31.into(), 2.into()));
        assert_eq!(BoundTables::hermite_pow(2), BigRational::new(4.into(), 3.into()));
        assert_eq!(BoundTables::hermite_pow(9), rat(1249));
        // Mordell chain bounds really do dominate 2^(72/7) and 2^(90/7).
        assert!(BigInt::from(1249).pow(7) >= BigInt::from(2).pow(72));
        assert!(BigInt::from(7420).pow(7) >= BigInt::from(2).pow(90));
    }

    #[test]
    fn hunter_bound_examples() {
        // gamma_1 = 1 makes the quadratic case exact: 0 + 30^2/2.
        assert_eq!(hunter_t2_bound(2, &rat(30), 0).unwrap(), rat(450));
        // Cubic case: 1/3 + sqrt(4/3 * 25^3 / 3) = 1/3 + 250/3, the root is
        // rationally exact but reached through the certified rounding.
        let b = hunter_t2_bound(3, &rat(25), 1).unwrap();
        let exact = BigRational::new(251.into(), 3.into());
        assert!(b >= exact);
        assert!(&b - &exact < BigRational::new(BigInt::one(), BigInt::from(1_000_000u64)));
        assert!(hunter_t2_bound(3, &rat(25), 2).is_err());
        assert!(hunter_t2_bound(11, &rat(10), 0).is_err());
    }

    #[test]
    fn seed_windows() {
        assert_eq!(
            seed_coefficient_ranges(2, &rat(30), -1).unwrap(),
            Some((BigInt::from(-224), BigInt::from(-2)))
        );
        assert_eq!(
            seed_coefficient_ranges(3, &rat(25), 0).unwrap(),
            Some((BigInt::from(-41), BigInt::from(-3)))
        );
        // x^2 - x - 1 sits outside the window (a_0 = -1 > -2): the golden
        // ratio generator violates the trace bound and is recovered through
        // the exceptional list instead.
        let (lo, hi) = seed_coefficient_ranges(2, &rat(30), -1).unwrap().unwrap();
        assert!(BigInt::from(-1) < lo || BigInt::from(-1) > hi);
        assert!(seed_coefficient_ranges(2, &rat(30), 1).is_err());
    }

    #[test]
    fn ladder_level_two() {
        // n = 3, a_2 = 0, a_1 = -3: f_2 = 3x^2 - 3 has roots -1, 1.
        let p = seeded(3, 25, 0, -3);
        let br = p.brackets(2);
        assert_eq!(br.len(), 2);
        assert!(br[0].lo.to_f64() <= -1.0 && -1.0 <= br[0].hi.to_f64());
        assert!(br[1].lo.to_f64() <= 1.0 && 1.0 <= br[1].hi.to_f64());
        // a_1 = 0 collapses f_2 = 3x^2 to a double root: prune.
        assert!(SearchPrefix::seed(3, &rat(25), 0, &BigInt::zero())
            .unwrap()
            .is_prune());
    }

    #[test]
    fn ladder_interlaces_on_extension() {
        // Complete x^3 - 3x + 1 and check level 3 brackets sit strictly
        // between consecutive level 2 roots padded by the envelope.
        let p = seeded(3, 25, 0, -3);
        let q = match p.extend(&BigInt::one()).unwrap() {
            Gate::Pass(q) => q,
            Gate::Prune => panic!("x^3 - 3x + 1 must survive"),
        };
        assert!(q.is_complete());
        let roots = [-1.8793852415718169f64, 0.3472963553338607, 1.532088886237956];
        let br = q.brackets(3);
        assert_eq!(br.len(), 3);
        for (iv, r) in br.iter().zip(roots) {
            assert!(iv.lo.to_f64() <= r && r <= iv.hi.to_f64());
            assert!(iv.width().to_f64() <= 1.0 / 16384.0 + 1e-12);
        }
        let level2 = q.brackets(2);
        assert!(br[0].hi.to_f64() < level2[0].lo.to_f64() + 1e-3);
        assert!(br[1].lo.to_f64() > level2[0].hi.to_f64() - 1e-3);
        // Recomputation through the public entry point agrees.
        match interlaced_real_roots(&q, 3).unwrap() {
            Gate::Pass(again) => assert_eq!(again.len(), 3),
            Gate::Prune => panic!("recomputation pruned"),
        }
    }

    #[test]
    fn envelope_closed_form() {
        // n = 3, prefix (0, -3): D = 9, envelope exactly [-2, 2].
        let p = seeded(3, 25, 0, -3);
        assert_eq!(p.envelope().lo, Dyadic::from_int(-2));
        assert_eq!(p.envelope().hi, Dyadic::from_int(2));
        // n = 5, prefix (1, -5): endpoints (-1 -+ 4 sqrt(13.5))/5.
        let env = match lagrange_k2(5, &BigInt::one(), &BigInt::from(-5)) {
            Gate::Pass(e) => e,
            Gate::Prune => panic!("discriminant is positive"),
        };
        let lo = env.lo.to_f64();
        let hi = env.hi.to_f64();
        assert!((-3.1394..=-3.1393).contains(&lo), "lo = {lo}");
        assert!((2.7393..=2.7394).contains(&hi), "hi = {hi}");
        // All-equal boundary: n = 8, a_7 = -4, a_6 = 7 gives D = 0 and the
        // envelope collapses to the single point 1/2.
        let env = match lagrange_k2(8, &BigInt::from(-4), &BigInt::from(7)) {
            Gate::Pass(e) => e,
            Gate::Prune => panic!("D = 0 is not negative"),
        };
        assert_eq!(env.lo, Dyadic::new(BigInt::one(), -1));
        assert_eq!(env.hi, Dyadic::new(BigInt::one(), -1));
        // Past the boundary the radicand is negative: prune.
        assert!(lagrange_k2(8, &BigInt::from(-4), &BigInt::from(8)).is_prune());
    }

    #[test]
    fn envelope_level_three_tightens() {
        // For n = 3 the three power sums determine f, so the critical set
        // is exactly the root set of x^3 - 3x + 1 and the level-3 envelope
        // collapses onto [min root, max root].
        let p = seeded(3, 25, 0, -3);
        let q = match p.extend(&BigInt::one()).unwrap() {
            Gate::Pass(q) => q,
            Gate::Prune => panic!("survives"),
        };
        let e3 = q.envelope();
        let lo = e3.lo.to_f64();
        let hi = e3.hi.to_f64();
        assert!((-1.8795..=-1.8793).contains(&lo), "lo = {lo}");
        assert!((1.5320..=1.5322).contains(&hi), "hi = {hi}");
        // Monotone under the level-2 envelope.
        assert!(e3.lo >= Dyadic::from_int(-2) && e3.hi <= Dyadic::from_int(2));
        // The public recomputation agrees with the stored envelope.
        match lagrange_extrema(&q, 3).unwrap() {
            Gate::Pass(e) => {
                assert_eq!(e.lo, e3.lo);
                assert_eq!(e.hi, e3.hi);
            }
            Gate::Prune => panic!("recomputation pruned"),
        }
    }

    #[test]
    fn next_interval_matches_hand_computation() {
        // n = 3, prefix (0, -3): g_3 = x^3 - 3x on beta = -2, -1, 1, 2
        // gives -2 < a_0 < 2.
        let p = seeded(3, 25, 0, -3);
        let (lo, hi) = next_coefficient_interval(&p).unwrap().unwrap();
        assert_eq!(lo, BigInt::from(-1));
        assert_eq!(hi, BigInt::one());
        // k + 1 = 3 is odd and a_2 = 0, so the sign-flip symmetry halves
        // the slice.
        assert!(p.may_assume_nonneg_next());
        let deeper = seeded(4, 20, -1, -3);
        assert!(!deeper.may_assume_nonneg_next());
    }

    #[test]
    fn exceptional_candidates_per_degree() {
        let quads = smyth_exceptional_candidates(2);
        assert_eq!(
            quads,
            vec![
                MonicIntPolynomial::from_i64(&[-1, -1]),
                MonicIntPolynomial::from_i64(&[-1, 1]),
            ]
        );
        let cubics = smyth_exceptional_candidates(3);
        assert_eq!(
            cubics,
            vec![
                MonicIntPolynomial::from_i64(&[1, -2, -1]),
                MonicIntPolynomial::from_i64(&[-1, -2, 1]),
            ]
        );
        let quartics = smyth_exceptional_candidates(4);
        assert_eq!(
            quartics,
            vec![
                MonicIntPolynomial::from_i64(&[1, 1, -3, -1]),
                MonicIntPolynomial::from_i64(&[1, -1, -3, 1]),
            ]
        );
        assert!(smyth_exceptional_candidates(5).is_empty());
        assert!(smyth_exceptional_candidates(6).is_empty());
        assert!(smyth_exceptional_candidates(7).is_empty());
        let octics = smyth_exceptional_candidates(8);
        assert_eq!(
            octics,
            vec![MonicIntPolynomial::from_i64(&[1, 0, -8, 0, 14, 0, -7, 0])]
        );
        assert!(smyth_exceptional_candidates(9).is_empty());
        assert!(smyth_exceptional_candidates(10).is_empty());
    }

    #[test]
    fn window_examples() {
        let w = square_divisor_window(&BigInt::from(20), 2, &rat(30)).unwrap();
        assert_eq!(w.admissible, vec![BigInt::one(), BigInt::from(2)]);
        assert!(!w.uncertain);
        let w = square_divisor_window(&BigInt::from(3), 2, &rat(30)).unwrap();
        assert!(w.admissible.is_empty() && !w.uncertain);
        let w = square_divisor_window(&BigInt::from(81), 3, &rat(25)).unwrap();
        assert_eq!(w.admissible, vec![BigInt::one()]);
        assert!(square_divisor_window(&BigInt::from(-4), 2, &rat(30)).is_err());
    }

    #[test]
    fn certified_roots_drive_a_full_quadratic_slice() {
        // Walk every quadratic with a_1 = 0 inside the B = 30 seed window
        // and confirm the prefix machinery certifies exactly the totally
        // real squarefree ones.
        let (lo, hi) = seed_coefficient_ranges(2, &rat(30), 0).unwrap().unwrap();
        assert_eq!(lo, BigInt::from(-225));
        assert_eq!(hi, BigInt::from(-2));
        let mut kept = 0usize;
        let mut a = lo.clone();
        while a <= hi {
            if let Gate::Pass(p) = SearchPrefix::seed(2, &rat(30), 0, &a).unwrap() {
                assert!(p.is_complete());
                let f = p.polynomial().unwrap();
                assert_eq!(f.coeffs()[0], a);
                kept += 1;
            }
            a += 1;
        }
        // x^2 + a_0 with a_0 in [-225, -2] is always totally real and
        // squarefree, so nothing prunes.
        assert_eq!(kept, 224);
    }
}

