//! Exact linear algebra over Z, Q, F_p, and polynomial rings.
//!
//! Everything here is fraction-free or rational: Bareiss for determinants
//! (generic over any integral domain with exact division, so it also covers
//! Sylvester matrices with polynomial entries), Gaussian elimination over Q
//! for solving, row Hermite form for lattice sums, and kernels mod p for the
//! maximal-order enlargement steps.

use crate::arith::poly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = &a[i][l] * &b[l][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn mat_vec(a: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn transpose(a: &[Vec<BigInt>]) -> IntMatrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Minimal ring interface for the fraction-free determinant.
pub trait BareissEntry: Clone {
    fn b_zero() -> Self;
    fn b_one() -> Self;
    fn b_is_zero(&self) -> bool;
    fn b_mul(&self, o: &Self) -> Self;
    fn b_sub(&self, o: &Self) -> Self;
    /// Division known to be exact; panics otherwise.
    fn b_exact_div(&self, o: &Self) -> Self;
    fn b_neg(&self) -> Self;
}

impl BareissEntry for BigInt {
    fn b_zero() -> Self {
        BigInt::zero()
    }
    fn b_one() -> Self {
        BigInt::one()
    }
    fn b_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn b_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn b_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn b_exact_div(&self, o: &Self) -> Self {
        use num_integer::Integer;
        let (q, r) = self.div_rem(o);
        assert!(r.is_zero(), "inexact division in Bareiss");
        q
    }
    fn b_neg(&self) -> Self {
        -self
    }
}

impl BareissEntry for IntPoly {
    fn b_zero() -> Self {
        IntPoly::zero()
    }
    fn b_one() -> Self {
        IntPoly::one()
    }
    fn b_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn b_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn b_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn b_exact_div(&self, o: &Self) -> Self {
        self.try_exact_div(o).expect("inexact division in Bareiss")
    }
    fn b_neg(&self) -> Self {
        self.neg()
    }
}

/// Fraction-free determinant; consumes the matrix.
pub fn bareiss_determinant<T: BareissEntry>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::b_one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut sign_flip = false;
    let mut prev = T::b_one();
    for k in 0..n - 1 {
        if m[k][k].b_is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].b_is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return T::b_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j]
                    .b_mul(&m[k][k])
                    .b_sub(&m[i][k].b_mul(&m[k][j]));
                m[i][j] = t.b_exact_div(&prev);
            }
            m[i][k] = T::b_zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.b_neg()
    } else {
        det
    }
}

/// Solves A x = b exactly over Q; None when A is singular.
pub fn solve_exact(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = a.len();
    assert!(n > 0 && a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            row.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .chain(std::iter::once(BigRational::from_integer(rhs.clone())))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..=n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..=n {
                    let t = &factor * &m[col][j];
                    m[r][j] = &m[r][j] - t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Exact inverse over Q; None when singular.
pub fn rational_inverse(a: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .chain((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..2 * n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..2 * n {
                    let t = &factor * &m[col][j];
                    m[r][j] = &m[r][j] - t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Row Hermite normal form of the lattice spanned by `rows`: returns the
/// nonzero rows, upper triangular in the sense that pivot columns increase,
/// pivots positive, entries above each pivot reduced into [0, pivot).
pub fn hnf_rows(mut rows: Vec<Vec<BigInt>>) -> IntMatrix {
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        if pivot_row >= rows.len() {
            break;
        }
        // gcd-chain all entries of this column below pivot_row into one row
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(r),
                    Some(b) => {
                        if rows[r][col].abs() < rows[b][col].abs() {
                            Some(r)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                use num_integer::Integer;
                let q = rows[r][col].div_floor(&rows[pivot_row][col]);
                if !q.is_zero() {
                    for j in 0..ncols {
                        let t = &q * &rows[pivot_row][j];
                        rows[r][j] -= t;
                    }
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col].is_zero() {
            continue;
        }
        if rows[pivot_row][col].is_negative() {
            for j in 0..ncols {
                rows[pivot_row][j] = -rows[pivot_row][j].clone();
            }
        }
        // reduce entries above the pivot into [0, pivot)
        for r in 0..pivot_row {
            use num_integer::Integer;
            let q = rows[r][col].div_floor(&rows[pivot_row][col]);
            if !q.is_zero() {
                for j in 0..ncols {
                    let t = &q * &rows[pivot_row][j];
                    rows[r][j] -= t;
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

fn fp_mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // extended euclid; p prime, a != 0
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert!(r == 1);
    (t.rem_euclid(p as i128)) as u64
}

/// Basis of { x : M x = 0 } over F_p; x has length ncols.
pub fn fp_kernel_basis(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    if mat.is_empty() {
        return Vec::new();
    }
    let nrows = mat.len();
    let ncols = mat[0].len();
    let mut m: Vec<Vec<u64>> = mat.iter().map(|r| r.iter().map(|&c| c % p).collect()).collect();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0usize;
    for col in 0..ncols {
        let pivot = (row..nrows).find(|&r| m[r][col] != 0);
        let Some(pr) = pivot else { continue };
        m.swap(row, pr);
        let inv = fp_inv(m[row][col], p);
        for j in col..ncols {
            m[row][j] = fp_mulmod(m[row][j], inv, p);
        }
        for r in 0..nrows {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for j in col..ncols {
                    let t = fp_mulmod(f, m[row][j], p);
                    m[r][j] = (m[r][j] + p - t) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            // pivot row r: x_pc + sum_{j > pc, j free-ish} m[r][j] x_j = 0
            v[pc] = (p - m[r][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| bi(v)).collect())
            .collect()
    }

    #[test]
    fn determinant_integers() {
        assert_eq!(bareiss_determinant(mat(&[&[2]])), bi(2));
        assert_eq!(bareiss_determinant(mat(&[&[1, 2], &[3, 4]])), bi(-2));
        assert_eq!(
            bareiss_determinant(mat(&[&[3, 1, 1], &[1, 3, 2], &[1, 1, 1]])),
            bi(2)
        );
        assert_eq!(
            bareiss_determinant(mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])),
            bi(0)
        );
        // needs a row swap
        assert_eq!(bareiss_determinant(mat(&[&[0, 1], &[1, 0]])), bi(-1));
    }

    #[test]
    fn determinant_polynomials() {
        let x = IntPoly::from_i64(&[0, 1]);
        let one = IntPoly::one();
        let m = vec![
            vec![x.clone(), one.clone()],
            vec![one.clone(), x.clone()],
        ];
        assert_eq!(bareiss_determinant(m), IntPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn exact_solve() {
        let a = mat(&[&[2, 1], &[1, 3]]);
        let b = vec![bi(5), bi(10)];
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(x[0], BigRational::from_integer(bi(1)));
        assert_eq!(x[1], BigRational::from_integer(bi(3)));
        let singular = mat(&[&[1, 2], &[2, 4]]);
        assert!(solve_exact(&singular, &b).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 2]]);
        let inv = rational_inverse(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = BigRational::zero();
                for k in 0..3 {
                    s += BigRational::from_integer(a[i][k].clone()) * &inv[k][j];
                }
                let expect = if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                assert_eq!(s, expect);
            }
        }
    }

    #[test]
    fn hermite_form() {
        let h = hnf_rows(mat(&[&[4, 6], &[2, 5]]));
        // lattice of (4,6),(2,5): det 8; HNF [[2,5],[0,4]] after reduction -> [[2,1],[0,4]]
        assert_eq!(h.len(), 2);
        assert_eq!(h[0][0], bi(2));
        assert_eq!(h[1][0], bi(0));
        let det = &h[0][0] * &h[1][1];
        assert_eq!(det, bi(8));
        assert!(h[0][1] >= bi(0) && h[0][1] < h[1][1]);
        // duplicate rows collapse
        let h2 = hnf_rows(mat(&[&[1, 0], &[1, 0], &[0, 1]]));
        assert_eq!(h2, mat(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn kernel_mod_p() {
        // x + 2y + z = 0 over F_5, two rows the same
        let m = vec![vec![1u64, 2, 1], vec![1, 2, 1]];
        let basis = fp_kernel_basis(&m, 5);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let s = (v[0] + 2 * v[1] + v[2]) % 5;
            assert_eq!(s, 0);
        }
        // identity has trivial kernel
        let id = vec![vec![1u64, 0], vec![0, 1]];
        assert!(fp_kernel_basis(&id, 7).is_empty());
    }
}
