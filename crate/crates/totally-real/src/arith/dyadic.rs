//! Exact dyadic numbers `m * 2^e` and outward-rounded dyadic intervals.
//!
//! Addition and multiplication of dyadics are exact, so interval arithmetic
//! built on them never silently loses containment: widening happens only at
//! explicit rounding points (`round_out`, square roots). Sign decisions made
//! through [`DyInterval::sign`] are therefore certified, which is what the
//! root ladders and envelope computations rely on for provable completeness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `mantissa * 2^exponent`, normalized so the mantissa is odd (or zero).
#[derive(Clone, PartialEq, Eq)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exponent += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exponent: 0,
        }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Dyadic::new(v.into(), 0)
    }

    /// Exact conversion; every finite f64 is dyadic.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite f64 {}", v);
        if v == 0.0 {
            return Dyadic::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        Dyadic::new(BigInt::from(sign) * BigInt::from(mant), exp)
    }

    /// Nearest-ish f64; only used for heuristics, never for decisions.
    pub fn to_f64(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        // keep the top 53 bits so the conversion cannot overflow
        let excess = (self.mantissa.bits() as i64 - 53).max(0);
        let m = (&self.mantissa >> excess as usize).to_f64().unwrap();
        let exp = (self.exponent + excess).clamp(-2000, 2000) as i32;
        m * 2f64.powi(exp)
    }

    /// Writes the value as `p / 2^k` with `k >= 0`.
    pub fn to_num_den_pow2(&self) -> (BigInt, u32) {
        if self.exponent >= 0 {
            (&self.mantissa << self.exponent as usize, 0)
        } else {
            (self.mantissa.clone(), (-self.exponent) as u32)
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            BigRational::new(
                self.mantissa.clone(),
                BigInt::one() << (-self.exponent) as usize,
            )
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn sign(&self) -> Ordering {
        match self.mantissa.sign() {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &other.mantissa << (other.exponent - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: &self.mantissa * &other.mantissa,
            exponent: self.exponent + other.exponent,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Dyadic::new(&self.mantissa * k, self.exponent)
    }

    /// `self * 2^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    pub fn floor(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << self.exponent as usize
        } else {
            self.mantissa.div_floor(&(BigInt::one() << (-self.exponent) as usize))
        }
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent >= 0
    }

    /// Largest dyadic with granularity `2^-prec` that is `<= self`.
    pub fn round_down(&self, prec: u32) -> Self {
        if self.exponent >= -(prec as i64) {
            return self.clone();
        }
        let shift = (-(prec as i64) - self.exponent) as usize;
        Dyadic::new(self.mantissa.div_floor(&(BigInt::one() << shift)), -(prec as i64))
    }

    /// Smallest dyadic with granularity `2^-prec` that is `>= self`.
    pub fn round_up(&self, prec: u32) -> Self {
        self.neg().round_down(prec).neg()
    }

    /// Certified `<= sqrt(self)` at granularity `2^-prec`; requires
    /// `self >= 0`.
    pub fn sqrt_down(&self, prec: u32) -> Self {
        assert!(self.sign() != Ordering::Less, "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // floor(sqrt(v * 4^prec)) * 2^-prec <= sqrt(v)
        let shift = 2 * prec as i64 + self.exponent;
        let scaled = if shift >= 0 {
            &self.mantissa << shift as usize
        } else {
            self.mantissa.div_floor(&(BigInt::one() << (-shift) as usize))
        };
        Dyadic::new(scaled.sqrt(), -(prec as i64))
    }

    /// Certified `>= sqrt(self)` at granularity `2^-prec`.
    pub fn sqrt_up(&self, prec: u32) -> Self {
        assert!(self.sign() != Ordering::Less, "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = 2 * prec as i64 + self.exponent;
        let scaled = if shift >= 0 {
            &self.mantissa << shift as usize
        } else {
            // ceil division keeps the bound on the correct side
            let den = BigInt::one() << (-shift) as usize;
            self.mantissa.div_ceil(&den)
        };
        let root = scaled.sqrt();
        let exact = &root * &root == scaled;
        let m = if exact { root } else { root + 1 };
        Dyadic::new(m, -(prec as i64))
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).sign()
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}", self.to_f64())
    }
}

/// Closed interval with exact dyadic endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct DyInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DyInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        DyInterval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        DyInterval {
            lo: d.clone(),
            hi: d,
        }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        DyInterval::point(Dyadic::from_int(v))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        DyInterval {
            lo: self.lo.add(&other.lo),
            hi: self.hi.add(&other.hi),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        DyInterval {
            lo: self.lo.sub(&other.hi),
            hi: self.hi.sub(&other.lo),
        }
    }

    pub fn neg(&self) -> Self {
        DyInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let c1 = self.lo.mul(&other.lo);
        let c2 = self.lo.mul(&other.hi);
        let c3 = self.hi.mul(&other.lo);
        let c4 = self.hi.mul(&other.hi);
        let lo = Dyadic::min(&Dyadic::min(&c1, &c2), &Dyadic::min(&c3, &c4));
        let hi = Dyadic::max(&Dyadic::max(&c1, &c2), &Dyadic::max(&c3, &c4));
        DyInterval { lo, hi }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        if k.is_negative() {
            DyInterval {
                lo: self.hi.mul_int(k),
                hi: self.lo.mul_int(k),
            }
        } else {
            DyInterval {
                lo: self.lo.mul_int(k),
                hi: self.hi.mul_int(k),
            }
        }
    }

    pub fn square(&self) -> Self {
        let a = self.lo.mul(&self.lo);
        let b = self.hi.mul(&self.hi);
        if self.lo.sign() != Ordering::Greater && self.hi.sign() != Ordering::Less {
            DyInterval {
                lo: Dyadic::zero(),
                hi: Dyadic::max(&a, &b),
            }
        } else {
            DyInterval {
                lo: Dyadic::min(&a, &b),
                hi: Dyadic::max(&a, &b),
            }
        }
    }

    /// Certified sign: `None` when the interval straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.sign() == Ordering::Greater {
            Some(Ordering::Greater)
        } else if self.hi.sign() == Ordering::Less {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).shift(-1)
    }

    /// Rounds endpoints outward to granularity `2^-prec`, bounding mantissa
    /// growth in long interval computations.
    pub fn round_out(&self, prec: u32) -> Self {
        DyInterval {
            lo: self.lo.round_down(prec),
            hi: self.hi.round_up(prec),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }
}

impl fmt::Debug for DyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip_exact() {
        for v in [0.0, 1.0, -1.5, 0.1, 1e-300, 123456.789] {
            let d = Dyadic::from_f64(v);
            let r = d.to_rational();
            let back = r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap();
            if v.abs() > 1e-290 {
                assert!((back - v).abs() <= v.abs() * 1e-15, "{} vs {}", back, v);
            }
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Dyadic::new(BigInt::from(3), -2); // 0.75
        let b = Dyadic::new(BigInt::from(5), -1); // 2.5
        assert_eq!(a.add(&b), Dyadic::new(BigInt::from(13), -2));
        assert_eq!(a.mul(&b), Dyadic::new(BigInt::from(15), -3));
        assert_eq!(a.sub(&b), Dyadic::new(BigInt::from(-7), -2));
        assert_eq!(a.floor(), BigInt::from(0));
        assert_eq!(a.ceil(), BigInt::from(1));
        assert_eq!(b.neg().floor(), BigInt::from(-3));
    }

    #[test]
    fn sqrt_brackets_truth() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt_down(30);
        let hi = two.sqrt_up(30);
        assert!(lo < hi);
        assert!(lo.mul(&lo) <= two);
        assert!(hi.mul(&hi) >= two);
        assert!(hi.sub(&lo).to_rational() <= BigRational::new(BigInt::from(1), BigInt::from(1 << 28)));
        // exact square stays exact
        let nine = Dyadic::from_int(9);
        assert_eq!(nine.sqrt_down(10), Dyadic::from_int(3));
        assert_eq!(nine.sqrt_up(10), Dyadic::from_int(3));
    }

    #[test]
    fn interval_sign_and_round() {
        let i = DyInterval::new(Dyadic::from_f64(0.5), Dyadic::from_f64(1.25));
        assert_eq!(i.sign(), Some(Ordering::Greater));
        let j = i.sub(&DyInterval::from_int(1));
        assert_eq!(j.sign(), None);
        let k = i.mul(&DyInterval::from_int(-2));
        assert_eq!(k.sign(), Some(Ordering::Less));
        let r = i.round_out(1);
        assert!(r.lo <= i.lo && r.hi >= i.hi);
    }
}
