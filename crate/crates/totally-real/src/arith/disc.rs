//! Resultants, discriminants and polynomial gcds over Z by the subresultant
//! polynomial remainder sequence.
//!
//! The PRS keeps intermediate coefficients small through the classical
//! `g h^delta` divisions while staying fraction-free; the resultant itself is
//! recovered from the Poisson-formula recursion
//!
//! ```text
//! Res(A, B) = (-1)^(dA dB) lc(B)^(dA - dR - (delta+1) dB) c^(dB) Res(B, R/c)
//! ```
//!
//! where `R = prem(A, B)`, `delta = dA - dB`, and `c = g h^delta` is the
//! subresultant scale divided out of `R`. The accumulated scalar is tracked
//! as an exact fraction; the final value is always integral.

use super::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `Res(a, b)`, exact with sign. Zero iff `a` and `b` share a root
/// (or one of them is zero).
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    if a.degree() == 0 {
        return pow(&a.leading_coeff(), b.degree() as u32);
    }
    if b.degree() == 0 {
        return pow(&b.leading_coeff(), a.degree() as u32);
    }

    let mut aa;
    let mut bb;
    let mut sign = false;
    if a.degree() < b.degree() {
        sign = (a.degree() * b.degree()) % 2 == 1;
        aa = b.clone();
        bb = a.clone();
    } else {
        aa = a.clone();
        bb = b.clone();
    }

    // accumulated scalar num/den, with `sign` tracked separately
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut g = BigInt::one();
    let mut h = BigInt::one();

    loop {
        let da = aa.degree();
        let db = bb.degree();
        let delta = (da - db) as u32;
        let r = aa.pseudo_rem(&bb);
        if r.is_zero() {
            // common factor of positive degree unless bb is a constant,
            // which the loop exit below already handles
            return BigInt::zero();
        }
        let scale = &g * pow(&h, delta);
        let rr = r
            .try_exact_div(&IntPoly::constant(scale.clone()))
            .expect("subresultant scale divides exactly");
        let dr = rr.degree();
        if (da * db) % 2 == 1 {
            sign = !sign;
        }
        // lc(bb)^(da - dr - (delta+1) db) * scale^db
        let lc = bb.leading_coeff();
        let e = da as i64 - dr as i64 - (delta as i64 + 1) * db as i64;
        if e >= 0 {
            num *= pow(&lc, e as u32);
        } else {
            den *= pow(&lc, (-e) as u32);
        }
        num *= pow(&scale, db as u32);

        g = bb.leading_coeff();
        h = if delta == 0 {
            h
        } else {
            let gp = pow(&g, delta);
            let hp = pow(&h, delta - 1);
            let (q, rem) = gp.div_rem(&hp);
            debug_assert!(rem.is_zero());
            q
        };
        aa = bb;
        bb = rr;
        if bb.degree() == 0 {
            let base = pow(&bb.leading_coeff(), aa.degree() as u32);
            let total = num * base;
            let (q, rem) = total.div_rem(&den);
            debug_assert!(rem.is_zero(), "resultant scalar must be integral");
            return if sign { -q } else { q };
        }
    }
}

/// Discriminant of a monic polynomial:
/// `disc(f) = (-1)^(n(n-1)/2) Res(f, f')`.
pub fn discriminant(f: &super::MonicIntPolynomial) -> BigInt {
    let p = f.as_poly();
    let n = f.degree();
    let r = resultant(&p, &p.derivative());
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Primitive gcd in Z[x] with positive leading coefficient.
pub fn subresultant_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return positive_lc(b.primitive_part());
    }
    if b.is_zero() {
        return positive_lc(a.primitive_part());
    }
    let (mut aa, mut bb) = if a.degree() >= b.degree() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    let content_gcd = a.content().gcd(&b.content());
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (aa.degree() - bb.degree()) as u32;
        let r = aa.pseudo_rem(&bb);
        if r.is_zero() {
            let prim = positive_lc(bb.primitive_part());
            return if prim.degree() == 0 {
                IntPoly::constant(content_gcd)
            } else {
                prim.mul_scalar(&content_gcd)
            };
        }
        if bb.degree() == 0 {
            return IntPoly::constant(content_gcd);
        }
        let scale = &g * pow(&h, delta);
        let rr = r
            .try_exact_div(&IntPoly::constant(scale))
            .expect("subresultant scale divides exactly");
        g = bb.leading_coeff();
        h = if delta == 0 {
            h
        } else {
            let (q, rem) = pow(&g, delta).div_rem(&pow(&h, delta - 1));
            debug_assert!(rem.is_zero());
            q
        };
        aa = bb;
        bb = rr;
    }
}

fn positive_lc(p: IntPoly) -> IntPoly {
    if p.leading_coeff().is_negative() {
        p.neg()
    } else {
        p
    }
}

fn pow(base: &BigInt, exp: u32) -> BigInt {
    base.pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::MonicIntPolynomial;

    #[test]
    fn resultant_linear() {
        // Res(x-2, x-3) = (x-3) evaluated at 2
        let a = IntPoly::from_i64(&[-2, 1]);
        let b = IntPoly::from_i64(&[-3, 1]);
        assert_eq!(resultant(&a, &b), BigInt::from(-1));
        assert_eq!(resultant(&b, &a), BigInt::from(1));
    }

    #[test]
    fn resultant_shared_root() {
        let a = IntPoly::from_i64(&[-1, 0, 1]); // (x-1)(x+1)
        let b = IntPoly::from_i64(&[-2, 1, 1]); // (x-1)(x+2)
        assert_eq!(resultant(&a, &b), BigInt::from(0));
    }

    #[test]
    fn discriminant_examples() {
        let f = MonicIntPolynomial::from_i64(&[-2, 0]); // x^2 - 2
        assert_eq!(discriminant(&f), BigInt::from(8));
        let g = MonicIntPolynomial::from_i64(&[1, -3, 0]); // x^3 - 3x + 1
        assert_eq!(discriminant(&g), BigInt::from(81));
        let h = MonicIntPolynomial::from_i64(&[1, 0]); // x^2 + 1
        assert_eq!(discriminant(&h), BigInt::from(-4));
        let q = MonicIntPolynomial::from_i64(&[-1, -1]); // x^2 - x - 1
        assert_eq!(discriminant(&q), BigInt::from(5));
    }

    #[test]
    fn gcd_examples() {
        let a = IntPoly::from_i64(&[-1, 0, 1]);
        let b = IntPoly::from_i64(&[-2, 1, 1]);
        assert_eq!(subresultant_gcd(&a, &b), IntPoly::from_i64(&[-1, 1]));
        let c = IntPoly::from_i64(&[2, 4]); // 2(2x+1)... content 2
        let d = IntPoly::from_i64(&[6]);
        assert_eq!(subresultant_gcd(&c, &d), IntPoly::from_i64(&[2]));
    }
}
