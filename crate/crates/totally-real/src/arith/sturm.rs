//! Sturm chains over Z with exact sign evaluation at dyadic points.
//!
//! The chain is built by fraction-free pseudo-remainders, correcting for the
//! sign of the implied scaling factor so every element is a positive rational
//! multiple of the classical Sturm sequence entry. Root counts in (a, b] are
//! then `V(a) - V(b)` as usual, but every sign decision is an exact integer
//! computation, so counts and isolating brackets are certified.

use super::disc::subresultant_gcd;
use super::dyadic::{DyInterval, Dyadic};
use super::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::cmp::Ordering;

/// Removes repeated factors: `f / gcd(f, f')`, primitive with positive lc.
pub fn squarefree_part(f: &IntPoly) -> IntPoly {
    if f.degree() == 0 {
        return f.clone();
    }
    let g = subresultant_gcd(f, &f.derivative());
    if g.degree() == 0 {
        return f.primitive_part();
    }
    // The gcd carries the integer content of gcd(f, f'); only its primitive
    // part divides the primitive part of f.
    f.primitive_part()
        .try_exact_div(&g.primitive_part())
        .expect("gcd(f, f') divides f")
        .primitive_part()
}

pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Chain of the squarefree part of `f`.
    pub fn new(f: &IntPoly) -> Self {
        let f0 = squarefree_part(f);
        let mut chain = Vec::new();
        if f0.degree() == 0 {
            chain.push(f0);
            return SturmChain { chain };
        }
        let f1 = f0.derivative().primitive_part();
        chain.push(f0);
        chain.push(f1);
        loop {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            if b.degree() <= 0 {
                break;
            }
            let delta = (a.degree() - b.degree()) as u32;
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // r = lc(b)^(delta+1) * (a mod b); flip so the new element is a
            // positive multiple of -(a mod b)
            let scale_negative = b.leading_coeff().is_negative() && (delta + 1) % 2 == 1;
            let next = if scale_negative { r } else { r.neg() };
            chain.push(next.primitive_part());
        }
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut count = 0;
        let mut last: Option<Ordering> = None;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if let Some(prev) = last {
                if prev != s {
                    count += 1;
                }
            }
            last = Some(s);
        }
        count
    }

    pub fn variations_at(&self, x: &Dyadic) -> usize {
        let (num, den_pow) = x.to_num_den_pow2();
        Self::variations(
            self.chain
                .iter()
                .map(|f| f.sign_at_dyadic(&num, den_pow)),
        )
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|f| {
            let s = if f.leading_coeff().is_negative() {
                Ordering::Less
            } else if f.is_zero() {
                Ordering::Equal
            } else {
                Ordering::Greater
            };
            if f.degree() % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|f| {
            if f.is_zero() {
                Ordering::Equal
            } else if f.leading_coeff().is_negative() {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }))
    }

    /// Distinct real roots of f in the half-open interval (lo, hi].
    pub fn count_roots_in(&self, lo: &Dyadic, hi: &Dyadic) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations_at(lo) - self.variations_at(hi)
    }

    pub fn count_real_roots(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

/// Number of distinct real roots of `f`.
pub fn count_real_roots(f: &IntPoly) -> usize {
    if f.degree() == 0 {
        return 0;
    }
    SturmChain::new(f).count_real_roots()
}

/// A monic integer polynomial defines a totally real field generator exactly
/// when it is squarefree with as many distinct real roots as its degree.
pub fn is_totally_real(f: &IntPoly) -> bool {
    let n = f.degree();
    if n == 0 {
        return false;
    }
    let sf = squarefree_part(f);
    sf.degree() == n && count_real_roots(&sf) == n
}

/// A power of two strictly larger than every |root| (Cauchy bound).
pub fn root_bound_pow2(f: &IntPoly) -> Dyadic {
    let lc = f.leading_coeff().abs();
    let mut max_bits = 0u64;
    for i in 0..f.degree() {
        let q: BigInt = f.coeff(i).abs() / &lc + 1;
        max_bits = max_bits.max(q.bits());
    }
    Dyadic::new(BigInt::one(), max_bits as i64 + 2)
}

fn sign_at(f: &IntPoly, x: &Dyadic) -> Ordering {
    let (num, den_pow) = x.to_num_den_pow2();
    f.sign_at_dyadic(&num, den_pow)
}

/// Picks a split point in (lo, hi) where `f` does not vanish; tries the
/// midpoint first, then points closer to `lo`. At most deg f points can fail.
fn split_point(f: &IntPoly, lo: &Dyadic, hi: &Dyadic) -> Dyadic {
    let w = hi.sub(lo);
    for j in 1..(f.degree() as i64 + 3) {
        let cand = lo.add(&w.shift(-j));
        if sign_at(f, &cand) != Ordering::Equal {
            return cand;
        }
    }
    unreachable!("more vanishing points than roots");
}

/// Disjoint closed brackets, one per distinct real root of `f`, sorted in
/// ascending order, each of width at most `2^-prec`. `f` does not vanish at
/// any bracket endpoint, so the sign of f changes across each bracket.
pub fn isolate_real_roots(f: &IntPoly, prec: u32) -> Vec<DyInterval> {
    let sf = squarefree_part(f);
    if sf.degree() == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(&sf);
    let bound = root_bound_pow2(&sf);
    let lo = bound.neg();
    let total = chain.count_roots_in(&lo, &bound);
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(lo, bound, total)];
    let width_target = Dyadic::new(BigInt::one(), -(prec as i64));
    while let Some((a, b, k)) = stack.pop() {
        if k == 0 {
            continue;
        }
        if k == 1 && b.sub(&a) <= width_target {
            out.push(DyInterval::new(a, b));
            continue;
        }
        let m = split_point(&sf, &a, &b);
        let left = chain.count_roots_in(&a, &m);
        // push right first so the stack pops in ascending order
        stack.push((m.clone(), b, k - left));
        stack.push((a, m, left));
    }
    out.sort_by(|p, q| p.lo.cmp(&q.lo));
    debug_assert_eq!(out.len(), total);
    out
}

/// Narrows a bracket known to contain exactly one simple root of `f` (with a
/// sign change across it) down to width at most `2^-prec` by sign bisection.
pub fn refine_bracket(f: &IntPoly, iv: &DyInterval, prec: u32) -> DyInterval {
    let target = Dyadic::new(BigInt::one(), -(prec as i64));
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let slo = sign_at(f, &lo);
    debug_assert!(slo != Ordering::Equal && sign_at(f, &hi) != Ordering::Equal);
    while hi.sub(&lo) > target {
        let m = split_point(f, &lo, &hi);
        if sign_at(f, &m) == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    DyInterval::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn counts_match_known_polynomials() {
        assert_eq!(count_real_roots(&poly(&[-2, 0, 1])), 2); // x^2 - 2
        assert_eq!(count_real_roots(&poly(&[1, 0, 1])), 0); // x^2 + 1
        assert_eq!(count_real_roots(&poly(&[1, -3, 0, 1])), 3); // x^3 - 3x + 1
        assert_eq!(count_real_roots(&poly(&[6, 0, -5, 0, 1])), 4); // (x^2-2)(x^2-3)
        assert_eq!(count_real_roots(&poly(&[1, 0, 0, 0, 1])), 0); // x^4 + 1
        // repeated roots count once
        assert_eq!(count_real_roots(&poly(&[1, 2, 1])), 1); // (x+1)^2
    }

    #[test]
    fn total_reality() {
        assert!(is_totally_real(&poly(&[-1, -1, 1]))); // x^2 - x - 1
        assert!(is_totally_real(&poly(&[1, -3, 0, 1])));
        assert!(!is_totally_real(&poly(&[1, -1, 0, 1]))); // x^3 - x + 1, one real root
        assert!(!is_totally_real(&poly(&[1, 2, 1]))); // not squarefree
        assert!(is_totally_real(&poly(&[1, -7, 13, -7, 1]))); // smallest quartic
    }

    #[test]
    fn interval_counts() {
        let f = poly(&[-2, 0, 1]);
        let c = SturmChain::new(&f);
        let z = Dyadic::zero();
        let two = Dyadic::from_int(2);
        assert_eq!(c.count_roots_in(&z, &two), 1);
        assert_eq!(c.count_roots_in(&two.neg(), &z), 1);
        assert_eq!(c.count_roots_in(&Dyadic::from_f64(1.5), &two), 0);
        assert_eq!(c.count_roots_in(&Dyadic::from_int(1), &Dyadic::from_f64(1.5)), 1);
    }

    #[test]
    fn isolation_brackets_roots() {
        // roots -sqrt(3), -sqrt(2), sqrt(2), sqrt(3)
        let f = poly(&[6, 0, -5, 0, 1]);
        let roots = isolate_real_roots(&f, 40);
        assert_eq!(roots.len(), 4);
        let expected = [-3f64.sqrt(), -2f64.sqrt(), 2f64.sqrt(), 3f64.sqrt()];
        for (iv, want) in roots.iter().zip(expected) {
            assert!(iv.lo.to_f64() <= want && want <= iv.hi.to_f64());
            assert!(iv.width() <= Dyadic::new(num_bigint::BigInt::from(1), -40));
            assert!(sign_at(&f, &iv.lo) != Ordering::Equal);
            assert!(sign_at(&f, &iv.hi) != Ordering::Equal);
        }
        // brackets are pairwise disjoint and ascending
        for w in roots.windows(2) {
            assert!(w[0].hi < w[1].lo);
        }
    }

    #[test]
    fn isolation_handles_exact_dyadic_roots() {
        let f = poly(&[0, -1, 0, 1]); // x(x-1)(x+1)
        let roots = isolate_real_roots(&f, 30);
        assert_eq!(roots.len(), 3);
        for (iv, want) in roots.iter().zip([-1.0, 0.0, 1.0]) {
            assert!(iv.lo.to_f64() <= want && want <= iv.hi.to_f64());
        }
    }

    #[test]
    fn refinement_narrows() {
        let f = poly(&[-2, 0, 1]);
        let coarse = isolate_real_roots(&f, 4);
        let fine = refine_bracket(&f, &coarse[1], 60);
        assert!(fine.width() <= Dyadic::new(num_bigint::BigInt::from(1), -60));
        let sq = fine.square();
        let two = DyInterval::from_int(2);
        assert!(sq.lo <= two.lo && two.hi <= sq.hi);
    }
}
