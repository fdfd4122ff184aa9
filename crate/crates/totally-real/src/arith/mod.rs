//! Exact integer and polynomial arithmetic.
//!
//! Everything the search trusts for correctness lives here: monic integer
//! polynomials and their power sums, subresultant discriminants, certified
//! dyadic interval evaluation, Sturm-chain root isolation, integer
//! factorization with admissible square-divisor windows, and complete
//! factorization of univariate integer polynomials.

pub mod disc;
pub mod dyadic;
pub mod factor;
pub mod poly;
pub mod primes;
pub mod sturm;

pub use disc::{discriminant, resultant, subresultant_gcd};
pub use factor::{easy_reducibility_screen, factor_over_integers, is_irreducible, ScreenOutcome};
pub use poly::IntPoly;
pub use primes::{factorize, is_prime, square_divisors_in_window, Factorization, SquareWindow};

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A monic polynomial `x^n + a_(n-1) x^(n-1) + ... + a_0` with integer
/// coefficients, the candidate currency of the whole search.
///
/// Coefficients are stored low to high (`coeffs[j] = a_j`, `j < n`); the
/// leading 1 is implicit. The degree is fixed at construction, so unlike
/// [`IntPoly`] a `MonicIntPolynomial` can carry leading structural zeros in
/// its tail without collapsing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonicIntPolynomial {
    coeffs: Vec<BigInt>,
}

impl MonicIntPolynomial {
    /// `coeffs` are `a_0..a_(n-1)`; the leading coefficient 1 is implied.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        MonicIntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        MonicIntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Extracts a monic polynomial from a general one.
    pub fn try_from_poly(p: &IntPoly) -> Result<Self> {
        if !p.is_monic() {
            return Err(Error::contract(format!("polynomial {} is not monic", p)));
        }
        Ok(MonicIntPolynomial::new(p.coeffs()[..p.degree()].to_vec()))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_j` for `j <= n`, including the implicit leading 1.
    pub fn coeff(&self, j: usize) -> BigInt {
        match j.cmp(&self.coeffs.len()) {
            Ordering::Less => self.coeffs[j].clone(),
            Ordering::Equal => BigInt::one(),
            Ordering::Greater => BigInt::zero(),
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(BigInt::one());
        IntPoly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Trace of a root: `-a_(n-1)`.
    pub fn trace(&self) -> BigInt {
        -self.coeff(self.degree() - 1)
    }

    /// Sum of squared roots `s_2 = a_(n-1)^2 - 2 a_(n-2)`, the `T2` value of
    /// a root when the polynomial is totally real.
    pub fn root_t2(&self) -> BigInt {
        let n = self.degree();
        let a1 = self.coeff(n - 1);
        let a2 = if n >= 2 { self.coeff(n - 2) } else { BigInt::zero() };
        &a1 * &a1 - BigInt::from(2) * a2
    }

    /// The polynomial with roots negated: `(-1)^n f(-x)`.
    pub fn reflect(&self) -> Self {
        let n = self.degree();
        MonicIntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if (n - j) % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Sign normalization: the first nonzero coefficient among
    /// `a_(n-1), a_(n-3), ...` is made nonpositive by replacing the root
    /// `x` with `-x` if necessary. Involutive inputs map to a unique
    /// representative of the pair `{f(x), (-1)^n f(-x)}`.
    pub fn sign_normalize(&self) -> Self {
        let n = self.degree();
        let mut j = n as isize - 1;
        while j >= 0 {
            let c = &self.coeffs[j as usize];
            if !c.is_zero() {
                if c.is_positive() {
                    return self.reflect();
                }
                return self.clone();
            }
            j -= 2;
        }
        self.clone()
    }

    /// Lexicographic comparison of `(a_(n-1), ..., a_0)`, the tie-break
    /// order used for canonical polynomial selection.
    pub fn cmp_lex_from_top(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.degree(), other.degree());
        for j in (0..self.coeffs.len()).rev() {
            match self.coeffs[j].cmp(&other.coeffs[j]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Parses either an expression like `x^4 - x^3 - 3x^2 + x + 1` or a
    /// comma-separated ascending coefficient list `1, 1, -3, -1, 1`
    /// (constant term first, leading coefficient 1 last).
    pub fn parse(input: &str) -> Result<Self> {
        let s = input.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if s.contains('x') {
            parse_expression(s)
        } else {
            parse_coeff_list(s)
        }
    }
}

impl fmt::Display for MonicIntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

impl fmt::Debug for MonicIntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonicIntPolynomial({})", self)
    }
}

fn parse_coeff_list(s: &str) -> Result<MonicIntPolynomial> {
    let mut coeffs = Vec::new();
    for part in s.split(|c| c == ',' || c == ' ').filter(|p| !p.is_empty()) {
        let v: BigInt = part
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {:?}", part)))?;
        coeffs.push(v);
    }
    if coeffs.len() < 2 {
        return Err(Error::Parse("need at least degree 1".into()));
    }
    if !coeffs.last().unwrap().is_one() {
        return Err(Error::Parse("leading coefficient must be 1".into()));
    }
    coeffs.pop();
    Ok(MonicIntPolynomial::new(coeffs))
}

fn parse_expression(s: &str) -> Result<MonicIntPolynomial> {
    // split into signed terms like "-3x^2", "+x", "1"
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms: Vec<(BigInt, usize)> = Vec::new();
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff = if start == i {
            BigInt::one()
        } else {
            compact[start..i]
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad term in {:?}", s)))?
        };
        coeff *= sign;
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let estart = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exp = compact[estart..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {:?}", s)))?;
            }
        } else if start == i {
            return Err(Error::Parse(format!("dangling sign in {:?}", s)));
        }
        terms.push((coeff, exp));
    }
    let degree = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
    if degree == 0 {
        return Err(Error::Parse("need at least degree 1".into()));
    }
    let mut coeffs = vec![BigInt::zero(); degree + 1];
    for (c, e) in terms {
        coeffs[e] += c;
    }
    if !coeffs[degree].is_one() {
        return Err(Error::Parse("leading coefficient must be 1".into()));
    }
    coeffs.pop();
    Ok(MonicIntPolynomial::new(coeffs))
}

/// Power sums `s_1..s_k` of the roots of a monic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSums {
    pub values: Vec<BigInt>,
}

impl PowerSums {
    /// `s_j` for `1 <= j <= k`.
    pub fn s(&self, j: usize) -> &BigInt {
        &self.values[j - 1]
    }
}

/// Newton's relations for a monic `f = x^n + a_(n-1) x^(n-1) + ... + a_0`:
///
/// ```text
/// s_k + a_(n-1) s_(k-1) + ... + a_(n-k+1) s_1 + k a_(n-k) = 0   (k <= n)
/// s_k + a_(n-1) s_(k-1) + ... + a_0 s_(k-n) = 0                 (k > n)
/// ```
///
/// solved forward for `s_1..s_k`. `k` may exceed `n`; the recurrence then
/// continues with the full coefficient window, which is how trace forms of
/// orders are obtained exactly.
pub fn newton_power_sums(f: &MonicIntPolynomial, k: usize) -> PowerSums {
    let n = f.degree();
    let mut values: Vec<BigInt> = Vec::with_capacity(k);
    for m in 1..=k {
        let mut s = BigInt::zero();
        // sum over i = 1..min(m-1, n): a_(n-i) * s_(m-i)
        for i in 1..m.min(n + 1) {
            let a = &f.coeffs[n - i];
            if !a.is_zero() {
                s += a * &values[m - i - 1];
            }
        }
        if m <= n {
            s += BigInt::from(m) * &f.coeffs[n - m];
        }
        values.push(-s);
    }
    PowerSums { values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s_vec(f: &MonicIntPolynomial, k: usize) -> Vec<i64> {
        newton_power_sums(f, k)
            .values
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn power_sums_golden_ratio() {
        // x^2 - x - 1: roots phi, 1-phi; s_1 = 1, s_2 = 3
        let f = MonicIntPolynomial::from_i64(&[-1, -1]);
        assert_eq!(s_vec(&f, 2), vec![1, 3]);
    }

    #[test]
    fn power_sums_cubic() {
        // x^3 - 3x + 1: s_1 = 0, s_2 = 6, s_3 = -3
        let f = MonicIntPolynomial::from_i64(&[1, -3, 0]);
        assert_eq!(s_vec(&f, 3), vec![0, 6, -3]);
    }

    #[test]
    fn power_sums_beyond_degree() {
        // x^2 - x - 1: s_k follows the Lucas numbers 1, 3, 4, 7, 11, ...
        let f = MonicIntPolynomial::from_i64(&[-1, -1]);
        assert_eq!(s_vec(&f, 6), vec![1, 3, 4, 7, 11, 18]);
    }

    #[test]
    fn reflect_and_normalize() {
        // x^2 + x - 1 has a_1 = 1 > 0, so normalization reflects it
        let f = MonicIntPolynomial::from_i64(&[-1, 1]);
        assert_eq!(f.sign_normalize(), MonicIntPolynomial::from_i64(&[-1, -1]));
        // x^3 + x^2 - 2x - 1 reflects to x^3 - x^2 - 2x + 1
        let g = MonicIntPolynomial::from_i64(&[-1, -2, 1]);
        assert_eq!(
            g.sign_normalize(),
            MonicIntPolynomial::from_i64(&[1, -2, -1])
        );
        // already normalized inputs are fixed
        let h = MonicIntPolynomial::from_i64(&[1, -2, -1]);
        assert_eq!(h.sign_normalize(), h);
        // idempotent under double reflection
        assert_eq!(g.reflect().reflect(), g);
    }

    #[test]
    fn parse_expression_and_list() {
        let f = MonicIntPolynomial::parse("x^3 - 3x + 1").unwrap();
        assert_eq!(f, MonicIntPolynomial::from_i64(&[1, -3, 0]));
        let g = MonicIntPolynomial::parse("1, -3, 0, 1").unwrap();
        assert_eq!(f, g);
        let h = MonicIntPolynomial::parse("x^8-4x^7+14x^5-8x^4-12x^3+7x^2+2x-1").unwrap();
        assert_eq!(
            h,
            MonicIntPolynomial::from_i64(&[-1, 2, 7, -12, -8, 14, 0, -4])
        );
        assert!(MonicIntPolynomial::parse("2x^2 + 1").is_err());
        assert_eq!(f.to_string(), "x^3 - 3x + 1");
    }
}
