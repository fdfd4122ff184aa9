//! Dense integer polynomials.
//!
//! `IntPoly` is the general-purpose type used by the exact kernels
//! (subresultants, Sturm chains, factorization, resultant elimination).
//! Coefficients are arbitrary-precision integers stored low to high with no
//! trailing zeros; the zero polynomial has an empty coefficient vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = IntPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// Builds from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 alongside `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.coeffs.last(), Some(c) if c.is_one())
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Quotient and remainder of exact integer division by a monic or
    /// leading-coefficient-dividing divisor; panics if a division is inexact.
    /// Use `pseudo_rem` when the divisor's leading coefficient is arbitrary.
    pub fn div_rem_exact(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let lc = div.leading_coeff();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (q, r) = rem[k].div_rem(&lc);
            assert!(r.is_zero(), "inexact polynomial division");
            for j in 0..dd {
                let t = &q * &div.coeffs[j];
                rem[k - dd + j] -= t;
            }
            rem[k] = BigInt::zero();
            quot[k - dd] = q;
        }
        (IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem))
    }

    /// Returns `self / div` when the division is exact over Z, else `None`.
    pub fn try_exact_div(&self, div: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if div.is_zero() || self.degree() < div.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let lc = div.leading_coeff();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (q, r) = rem[k].div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for j in 0..dd {
                let t = &q * &div.coeffs[j];
                rem[k - dd + j] -= t;
            }
            rem[k] = BigInt::zero();
            quot[k - dd] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder: `lc(div)^(deg self - deg div + 1) * self mod div`,
    /// computed fraction-free. Each elimination step replaces the running
    /// remainder `R` of head degree `k` by `lc(div)*R - R_k x^(k-deg div) div`.
    pub fn pseudo_rem(&self, div: &Self) -> Self {
        assert!(!div.is_zero());
        if self.degree() < div.degree() || self.is_zero() {
            return self.clone();
        }
        let dd = div.degree();
        let lc = div.leading_coeff();
        let mut rem = self.coeffs.clone();
        for k in (dd..rem.len()).rev() {
            let head = std::mem::replace(&mut rem[k], BigInt::zero());
            for c in rem[..k].iter_mut() {
                *c *= &lc;
            }
            if !head.is_zero() {
                for j in 0..dd {
                    let t = &head * &div.coeffs[j];
                    rem[k - dd + j] -= t;
                }
            }
        }
        rem.truncate(dd);
        IntPoly::from_coeffs(rem)
    }

    /// Content: gcd of coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content, preserving the sign of the leading
    /// coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.content();
        if g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact sign of `f(p / 2^e)` for `e >= 0`, via the scaled integer value
    /// `2^(e*deg) f(p/2^e) = sum_k c_k p^k 2^(e(deg-k))`.
    pub fn sign_at_dyadic(&self, p: &BigInt, e: u32) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if self.is_zero() {
            return Ordering::Equal;
        }
        let d = self.degree();
        let mut acc = self.leading_coeff();
        for k in (0..d).rev() {
            acc *= p;
            if !self.coeffs[k].is_zero() {
                acc += &self.coeffs[k] << (e as usize * (d - k));
            }
        }
        match acc.sign() {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }

    /// Largest absolute coefficient value.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// `f(-x)`.
    pub fn reflect(&self) -> Self {
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `f(x^2)`.
    pub fn compose_x_squared(&self) -> Self {
        let mut coeffs = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                write!(f, "{}", mag)?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", k)?,
            }
        }
        Ok(())
    }
}
