//! Exact lattice toolkit: LLL reduction, short-vector enumeration, and
//! lattice points in convex polytopes.
//!
//! Everything here runs over exact rationals. The dimensions in play are
//! tiny (at most 10), so exactness costs little and removes the precision
//! failure modes that plague floating LLL: the Lovasz condition
//!
//! ```text
//!   B*_k >= (delta - mu_{k,k-1}^2) * B*_{k-1},     delta = 99/100
//! ```
//!
//! is tested with rational arithmetic, and the unimodular transform U with
//! `reduced = U * input` is carried along exactly.
//!
//! The polytope enumerator solves: given a lattice L with basis rows b_i and
//! a bounded convex P, list P cap L. The change of variables phi mapping an
//! LLL-reduced basis to the unit vectors turns lattice points into integer
//! vectors; a rational superset polytope Q is built by rounding vertex pairs
//! outward (for each pair v, w whose connecting line lies in no proper face,
//! round coordinate i of the smaller endpoint down and of the larger one
//! up); integer points of Q are walked by recursive coordinate bounding and
//! filtered by exact membership in phi(P).

use crate::linalg;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduction parameter: strong reduction, still guaranteed to terminate.
fn lll_delta() -> BigRational {
    BigRational::new(BigInt::from(99), BigInt::from(100))
}

/// Full-rank lattice basis; vectors are the rows of a square rational
/// matrix. Positive definiteness of the Gram matrix (equivalently full rank)
/// is checked at construction.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    rows: Vec<Vec<BigRational>>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::contract("basis must be a nonempty square matrix"));
        }
        let b = LatticeBasis { rows };
        gram_schmidt(&b.gram())?;
        Ok(b)
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// Gram matrix of the rows: gram[i][j] = b_i . b_j.
    pub fn gram(&self) -> Vec<Vec<BigRational>> {
        let d = self.rows.len();
        let mut g = vec![vec![BigRational::zero(); d]; d];
        for i in 0..d {
            for j in 0..=i {
                let mut s = BigRational::zero();
                for t in 0..d {
                    s += &self.rows[i][t] * &self.rows[j][t];
                }
                g[i][j] = s.clone();
                g[j][i] = s;
            }
        }
        g
    }
}

/// Gram-Schmidt data (mu, B*) computed from a Gram matrix. Fails unless the
/// form is positive definite, which is exactly the full-rank condition.
fn gram_schmidt(g: &[Vec<BigRational>]) -> Result<(Vec<Vec<BigRational>>, Vec<BigRational>)> {
    let d = g.len();
    let mut mu = vec![vec![BigRational::zero(); d]; d];
    let mut bstar = vec![BigRational::zero(); d];
    for i in 0..d {
        for j in 0..i {
            let mut v = g[i][j].clone();
            for t in 0..j {
                v -= &mu[i][t] * &mu[j][t] * &bstar[t];
            }
            mu[i][j] = v / &bstar[j];
        }
        let mut b = g[i][i].clone();
        for t in 0..i {
            b -= &mu[i][t] * &mu[i][t] * &bstar[t];
        }
        if !b.is_positive() {
            return Err(Error::RankDeficient);
        }
        bstar[i] = b;
    }
    Ok((mu, bstar))
}

fn round_to_nearest(x: &BigRational) -> BigInt {
    x.round().to_integer()
}

/// LLL on a Gram matrix. Returns the reduced Gram matrix U G U^T together
/// with the unimodular transform U. This form is what the canonical
/// polynomial reduction needs: there the quadratic form is the trace form on
/// an order, with no coordinate realization required.
pub fn lll_reduce_gram(
    gram: &[Vec<BigRational>],
) -> Result<(Vec<Vec<BigRational>>, Vec<Vec<BigInt>>)> {
    let d = gram.len();
    if d == 0 || gram.iter().any(|r| r.len() != d) {
        return Err(Error::contract("gram must be a nonempty square matrix"));
    }
    let mut g: Vec<Vec<BigRational>> = gram.to_vec();
    let mut u = linalg::identity(d);
    // validates positive definiteness up front
    let (mut mu, mut bstar) = gram_schmidt(&g)?;
    let delta = lll_delta();

    // row operation b_k -= r * b_j on the Gram matrix and the transform
    fn row_op(g: &mut [Vec<BigRational>], u: &mut [Vec<BigInt>], k: usize, j: usize, r: &BigInt) {
        let rq = BigRational::from_integer(r.clone());
        for t in 0..g.len() {
            let delta = &rq * &g[j][t];
            g[k][t] -= delta;
        }
        for t in 0..g.len() {
            let delta = &rq * &g[t][j];
            g[t][k] -= delta;
        }
        for t in 0..u[0].len() {
            let delta = r * &u[j][t];
            u[k][t] -= delta;
        }
    }

    let mut k = 1usize;
    while k < d {
        // size-reduce row k; mu updates are the textbook ones
        for j in (0..k).rev() {
            let r = round_to_nearest(&mu[k][j]);
            if !r.is_zero() {
                row_op(&mut g, &mut u, k, j, &r);
                let rq = BigRational::from_integer(r);
                for t in 0..j {
                    let delta = &rq * &mu[j][t];
                    mu[k][t] -= delta;
                }
                mu[k][j] -= rq;
            }
        }
        let lhs = &bstar[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            g.swap(k - 1, k);
            for row in g.iter_mut() {
                row.swap(k - 1, k);
            }
            u.swap(k - 1, k);
            // recompute GS data after a swap; cheap at these dimensions
            let fresh = gram_schmidt(&g)?;
            mu = fresh.0;
            bstar = fresh.1;
            k = k.max(2) - 1;
        }
    }
    Ok((g, u))
}

/// LLL-reduces a basis; returns the reduced basis and U with
/// `reduced.rows = U * basis.rows`.
pub fn lll_reduce(basis: &LatticeBasis) -> Result<(LatticeBasis, Vec<Vec<BigInt>>)> {
    let (_, u) = lll_reduce_gram(&basis.gram())?;
    let d = basis.dimension();
    let mut rows = vec![vec![BigRational::zero(); d]; d];
    for i in 0..d {
        for t in 0..d {
            let mut s = BigRational::zero();
            for j in 0..d {
                s += BigRational::from_integer(u[i][j].clone()) * &basis.rows[j][t];
            }
            rows[i][t] = s;
        }
    }
    Ok((LatticeBasis { rows }, u))
}

/// Largest integer k with k <= c + sqrt(q), for q >= 0. Exact: starts from
/// an integer upper bound and walks down testing k - c <= sqrt(q) by
/// squaring.
fn floor_plus_sqrt(c: &BigRational, q: &BigRational) -> BigInt {
    debug_assert!(!q.is_negative());
    let qf: BigInt = q.floor().to_integer();
    let mut k: BigInt = c.floor().to_integer() + qf.sqrt() + 2;
    loop {
        let t = BigRational::from_integer(k.clone()) - c;
        if !t.is_positive() || &t * &t <= *q {
            return k;
        }
        k -= 1;
    }
}

/// Smallest integer k with k >= c - sqrt(q).
fn ceil_minus_sqrt(c: &BigRational, q: &BigRational) -> BigInt {
    -floor_plus_sqrt(&-c, q)
}

/// All nonzero integer vectors x with x^T G x <= bound, one representative
/// per pair {x, -x} (the highest-index nonzero entry is positive), sorted.
/// Fincke-Pohst: from the decomposition Q(x) = sum_i d_i (x_i + sum_{j>i}
/// r_ij x_j)^2 the range of each coordinate given the later ones is an
/// explicit interval.
pub fn enumerate_short_vectors(
    gram: &[Vec<BigRational>],
    bound: &BigRational,
) -> Result<Vec<Vec<BigInt>>> {
    let d = gram.len();
    if d == 0 || gram.iter().any(|r| r.len() != d) {
        return Err(Error::contract("gram must be a nonempty square matrix"));
    }
    if !bound.is_positive() {
        return Err(Error::contract("norm bound must be positive"));
    }
    // LDL^T: diag[i] and r[i][j] for j > i
    let mut diag = vec![BigRational::zero(); d];
    let mut r = vec![vec![BigRational::zero(); d]; d];
    for i in 0..d {
        let mut di = gram[i][i].clone();
        for t in 0..i {
            di -= &r[t][i] * &r[t][i] * &diag[t];
        }
        if !di.is_positive() {
            return Err(Error::contract("gram matrix is not positive definite"));
        }
        for j in i + 1..d {
            let mut v = gram[i][j].clone();
            for t in 0..i {
                v -= &r[t][i] * &r[t][j] * &diag[t];
            }
            r[i][j] = v / &di;
        }
        diag[i] = di;
    }

    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut x = vec![BigInt::zero(); d];
    fn descend(
        level: usize,
        budget: BigRational,
        diag: &[BigRational],
        r: &[Vec<BigRational>],
        x: &mut Vec<BigInt>,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        let i = level - 1;
        let mut center = BigRational::zero();
        for j in level..x.len() {
            center += &r[i][j] * BigRational::from_integer(x[j].clone());
        }
        let q = &budget / &diag[i];
        let lo = ceil_minus_sqrt(&-center.clone(), &q);
        let hi = floor_plus_sqrt(&-center.clone(), &q);
        let mut v = lo;
        while v <= hi {
            x[i] = v.clone();
            let off = BigRational::from_integer(v.clone()) + &center;
            let spent = &diag[i] * &off * &off;
            let rest = &budget - spent;
            if !rest.is_negative() {
                if i == 0 {
                    if x.iter().any(|c| !c.is_zero()) {
                        out.push(x.clone());
                    }
                } else {
                    descend(i, rest, diag, r, x, out);
                }
            }
            v += 1;
        }
        x[i] = BigInt::zero();
    }
    descend(d, bound.clone(), &diag, &r, &mut x, &mut out);

    // one representative per +- pair: highest-index nonzero entry positive
    let mut reps: Vec<Vec<BigInt>> = out
        .into_iter()
        .filter(|v| {
            let last = v.iter().rposition(|c| !c.is_zero()).expect("nonzero");
            v[last].is_positive()
        })
        .collect();
    reps.sort();
    reps
        .windows(2)
        .for_each(|w| debug_assert!(w[0] != w[1], "duplicate short vector"));
    Ok(reps)
}

/// Closed or open affine half-space `normal . x <= rhs` (strict when
/// `strict`), used both as polytope facet and as membership predicate.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Vec<BigRational>,
    pub rhs: BigRational,
    pub strict: bool,
}

impl Facet {
    pub fn closed(normal: Vec<BigRational>, rhs: BigRational) -> Self {
        Facet { normal, rhs, strict: false }
    }

    pub fn open(normal: Vec<BigRational>, rhs: BigRational) -> Self {
        Facet { normal, rhs, strict: true }
    }

    fn value(&self, x: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for (a, v) in self.normal.iter().zip(x) {
            s += a * v;
        }
        s
    }

    fn admits(&self, x: &[BigRational]) -> bool {
        let v = self.value(x);
        if self.strict {
            v < self.rhs
        } else {
            v <= self.rhs
        }
    }

    fn tight_at(&self, x: &[BigRational]) -> bool {
        self.value(x) == self.rhs
    }
}

/// Bounded convex region given by its vertices and an exact half-space
/// description. For parallelopipeds the opposite-vertex pairing is recorded
/// so the rounding rule can use its specialization.
#[derive(Clone, Debug)]
pub struct ConvexPolytope {
    vertices: Vec<Vec<BigRational>>,
    facets: Vec<Facet>,
    opposite_pairs: Option<Vec<(usize, usize)>>,
    dim: usize,
}

impl ConvexPolytope {
    /// Axis-aligned closed box `prod [lo_i, hi_i]`.
    pub fn from_box(lo: &[BigRational], hi: &[BigRational]) -> Result<Self> {
        let d = lo.len();
        if d == 0 || hi.len() != d {
            return Err(Error::contract("box bounds must be nonempty and match"));
        }
        if lo.iter().zip(hi).any(|(l, h)| l > h) {
            return Err(Error::contract("box has lo > hi"));
        }
        let mut vertices = Vec::with_capacity(1 << d);
        for mask in 0u32..(1 << d) {
            let corner: Vec<BigRational> = (0..d)
                .map(|i| if mask >> i & 1 == 1 { hi[i].clone() } else { lo[i].clone() })
                .collect();
            vertices.push(corner);
        }
        let full = (1u32 << d) - 1;
        let pairs = (0..(1u32 << d))
            .filter(|m| *m < (full ^ *m))
            .map(|m| (m as usize, (full ^ m) as usize))
            .collect();
        let mut facets = Vec::with_capacity(2 * d);
        for i in 0..d {
            let mut e = vec![BigRational::zero(); d];
            e[i] = BigRational::one();
            facets.push(Facet::closed(e.clone(), hi[i].clone()));
            let neg: Vec<BigRational> = e.into_iter().map(|v| -v).collect();
            facets.push(Facet::closed(neg, -lo[i].clone()));
        }
        Ok(ConvexPolytope { vertices, facets, opposite_pairs: Some(pairs), dim: d })
    }

    /// Image of the unit cube under u -> origin + u * generators (generator
    /// rows must be independent).
    pub fn parallelopiped(origin: &[BigRational], generators: &[Vec<BigRational>]) -> Result<Self> {
        let d = origin.len();
        if d == 0 || generators.len() != d || generators.iter().any(|g| g.len() != d) {
            return Err(Error::contract("generators must form a square matrix"));
        }
        let ginv = rat_inverse(generators).ok_or(Error::RankDeficient)?;
        let mut vertices = Vec::with_capacity(1 << d);
        for mask in 0u32..(1 << d) {
            let mut corner = origin.to_vec();
            for i in 0..d {
                if mask >> i & 1 == 1 {
                    for t in 0..d {
                        corner[t] += &generators[i][t];
                    }
                }
            }
            vertices.push(corner);
        }
        let full = (1u32 << d) - 1;
        let pairs = (0..(1u32 << d))
            .filter(|m| *m < (full ^ *m))
            .map(|m| (m as usize, (full ^ m) as usize))
            .collect();
        // u_i = (x - origin) . col_i(ginv); facets 0 <= u_i <= 1
        let mut facets = Vec::with_capacity(2 * d);
        for i in 0..d {
            let col: Vec<BigRational> = (0..d).map(|j| ginv[j][i].clone()).collect();
            let mut o_dot = BigRational::zero();
            for t in 0..d {
                o_dot += &origin[t] * &col[t];
            }
            facets.push(Facet::closed(col.clone(), &o_dot + BigRational::one()));
            let neg: Vec<BigRational> = col.into_iter().map(|v| -v).collect();
            facets.push(Facet::closed(neg, -o_dot));
        }
        Ok(ConvexPolytope { vertices, facets, opposite_pairs: Some(pairs), dim: d })
    }

    /// General constructor. Caller contract: `facets` is an exact half-space
    /// description of the convex hull of `vertices`, and the hull is bounded
    /// (it always is, being a hull of finitely many points).
    pub fn from_vertices_and_facets(
        vertices: Vec<Vec<BigRational>>,
        facets: Vec<Facet>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::contract("polytope needs at least one vertex"));
        }
        let d = vertices[0].len();
        if d == 0
            || vertices.iter().any(|v| v.len() != d)
            || facets.iter().any(|f| f.normal.len() != d)
        {
            return Err(Error::contract("inconsistent polytope dimensions"));
        }
        Ok(ConvexPolytope { vertices, facets, opposite_pairs: None, dim: d })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Exact membership, honoring per-facet strictness.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.facets.iter().all(|f| f.admits(x))
    }
}

/// Gauss-Jordan inverse of a square rational matrix.
fn rat_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for j in col..2 * n {
            a[col][j] = &a[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..2 * n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn rat_floor(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

fn rat_ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// Exactly the lattice points of `basis` lying in `p`, as integer
/// coordinate vectors with respect to the basis rows, sorted.
///
/// Pipeline: LLL-reduce, map to reduced coordinates, round vertex pairs
/// outward into an integral superset Q, walk the integer points of Q by
/// recursive coordinate bounding (interval arithmetic against Q's relaxed
/// facets), and keep exactly the points inside the image of `p`.
pub fn lattice_points_in_polytope(
    basis: &LatticeBasis,
    p: &ConvexPolytope,
) -> Result<Vec<Vec<BigInt>>> {
    let d = basis.dimension();
    if p.dimension() != d {
        return Err(Error::Mismatch(format!(
            "basis dimension {} vs polytope dimension {}",
            d,
            p.dimension()
        )));
    }
    let (reduced, u) = lll_reduce(basis)?;
    let binv = rat_inverse(reduced.rows()).ok_or(Error::RankDeficient)?;

    // phi-coordinates: x = y * binv (rows are basis vectors)
    let to_phi = |y: &[BigRational]| -> Vec<BigRational> {
        (0..d)
            .map(|j| {
                let mut s = BigRational::zero();
                for t in 0..d {
                    s += &y[t] * &binv[t][j];
                }
                s
            })
            .collect()
    };
    let phi_vertices: Vec<Vec<BigRational>> = p.vertices().iter().map(|v| to_phi(v)).collect();
    // facet a.y <= c becomes atil.x <= c with atil_i = (row i of reduced) . a
    let phi_facets: Vec<Facet> = p
        .facets()
        .iter()
        .map(|f| {
            let normal: Vec<BigRational> = (0..d)
                .map(|i| {
                    let mut s = BigRational::zero();
                    for t in 0..d {
                        s += &reduced.rows()[i][t] * &f.normal[t];
                    }
                    s
                })
                .collect();
            Facet { normal, rhs: f.rhs.clone(), strict: f.strict }
        })
        .collect();

    // vertex pairs whose connecting line is in no proper face
    let pairs: Vec<(usize, usize)> = match &p.opposite_pairs {
        Some(pairs) => pairs.clone(),
        None => {
            let n = p.vertices().len();
            let mut out = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let in_common_face = p
                        .facets()
                        .iter()
                        .any(|f| f.tight_at(&p.vertices()[i]) && f.tight_at(&p.vertices()[j]));
                    if !in_common_face {
                        out.push((i, j));
                    }
                }
            }
            out
        }
    };

    // rounded superset vertices
    let mut rounded: Vec<Vec<BigInt>> = Vec::new();
    let mut prune_with_facets = true;
    if pairs.is_empty() {
        // degenerate input (single vertex, or every line face-bound): fall
        // back to the floor/ceil box of all vertices with no facet pruning
        prune_with_facets = false;
        for v in &phi_vertices {
            rounded.push(v.iter().map(rat_floor).collect());
            rounded.push(v.iter().map(rat_ceil).collect());
        }
    } else {
        for &(i, j) in &pairs {
            let (v, w) = (&phi_vertices[i], &phi_vertices[j]);
            let mut rv = Vec::with_capacity(d);
            let mut rw = Vec::with_capacity(d);
            for t in 0..d {
                if v[t] <= w[t] {
                    rv.push(rat_floor(&v[t]));
                    rw.push(rat_ceil(&w[t]));
                } else {
                    rv.push(rat_ceil(&v[t]));
                    rw.push(rat_floor(&w[t]));
                }
            }
            rounded.push(rv);
            rounded.push(rw);
        }
    }

    // integer bounding box of the rounded vertices
    let mut lo = rounded[0].clone();
    let mut hi = rounded[0].clone();
    for r in &rounded[1..] {
        for t in 0..d {
            if r[t] < lo[t] {
                lo[t] = r[t].clone();
            }
            if r[t] > hi[t] {
                hi[t] = r[t].clone();
            }
        }
    }

    // Q's facets: same normals as phi(P), right-hand sides relaxed to the
    // maximum over the rounded vertices (so Q contains their hull)
    let relaxed_rhs: Vec<BigRational> = phi_facets
        .iter()
        .map(|f| {
            rounded
                .iter()
                .map(|r| {
                    let mut s = BigRational::zero();
                    for t in 0..d {
                        s += &f.normal[t] * BigRational::from_integer(r[t].clone());
                    }
                    s
                })
                .max()
                .expect("rounded vertex set is nonempty")
        })
        .collect();

    // suffix interval sums: sufmin[f][k] = sum_{j>=k} min over the box of
    // normal_j * x_j, used to bound coordinate k-1 given earlier ones
    let nf = phi_facets.len();
    let mut sufmin = vec![vec![BigRational::zero(); d + 1]; nf];
    for (fi, f) in phi_facets.iter().enumerate() {
        for k in (0..d).rev() {
            let a = &f.normal[k];
            let lo_term = a * BigRational::from_integer(lo[k].clone());
            let hi_term = a * BigRational::from_integer(hi[k].clone());
            let m = if lo_term <= hi_term { lo_term } else { hi_term };
            sufmin[fi][k] = &sufmin[fi][k + 1] + m;
        }
    }

    let mut found: Vec<Vec<BigInt>> = Vec::new();
    // depth-first over coordinates; partial[f] carries the fixed-prefix dot
    // product for facet f
    struct Walk<'a> {
        d: usize,
        lo: &'a [BigInt],
        hi: &'a [BigInt],
        facets: &'a [Facet],
        relaxed_rhs: &'a [BigRational],
        sufmin: &'a [Vec<BigRational>],
        prune: bool,
    }
    fn walk(
        w: &Walk,
        k: usize,
        x: &mut Vec<BigInt>,
        partial: &Vec<BigRational>,
        found: &mut Vec<Vec<BigInt>>,
    ) {
        if k == w.d {
            // exact membership in phi(P): the partial sums are complete
            let ok = w
                .facets
                .iter()
                .zip(partial)
                .all(|(f, v)| if f.strict { *v < f.rhs } else { *v <= f.rhs });
            if ok {
                found.push(x.clone());
            }
            return;
        }
        let mut clo = w.lo[k].clone();
        let mut chi = w.hi[k].clone();
        if w.prune {
            for (fi, f) in w.facets.iter().enumerate() {
                let a = &f.normal[k];
                if a.is_zero() {
                    continue;
                }
                let avail = &w.relaxed_rhs[fi] - &partial[fi] - &w.sufmin[fi][k + 1];
                let ratio = &avail / a;
                if a.is_positive() {
                    let b = rat_floor(&ratio);
                    if b < chi {
                        chi = b;
                    }
                } else {
                    let b = rat_ceil(&ratio);
                    if b > clo {
                        clo = b;
                    }
                }
            }
        }
        let mut v = clo;
        while v <= chi {
            x[k] = v.clone();
            let vq = BigRational::from_integer(v.clone());
            let next: Vec<BigRational> = w
                .facets
                .iter()
                .zip(partial)
                .map(|(f, pv)| pv + &f.normal[k] * &vq)
                .collect();
            walk(w, k + 1, x, &next, found);
            v += 1;
        }
    }
    let ctx = Walk {
        d,
        lo: &lo,
        hi: &hi,
        facets: &phi_facets,
        relaxed_rhs: &relaxed_rhs,
        sufmin: &sufmin,
        prune: prune_with_facets,
    };
    let mut x = vec![BigInt::zero(); d];
    let zero_partial = vec![BigRational::zero(); nf];
    walk(&ctx, 0, &mut x, &zero_partial, &mut found);

    // map phi-coordinates back to coordinates in the input basis: y = x *
    // reduced = (x * U) * input
    let mut out: Vec<Vec<BigInt>> = found
        .into_iter()
        .map(|x| {
            (0..d)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for t in 0..d {
                        s += &x[t] * &u[t][j];
                    }
                    s
                })
                .collect()
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::bareiss_determinant;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rati(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn norm2(v: &[BigRational]) -> BigRational {
        v.iter().map(|c| c * c).sum()
    }

    #[test]
    fn lll_identity_is_fixed() {
        let b = LatticeBasis::from_integer_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let (r, u) = lll_reduce(&b).unwrap();
        assert_eq!(r.rows(), b.rows());
        assert_eq!(u, linalg::identity(2));
    }

    #[test]
    fn lll_finds_unit_basis() {
        let b = LatticeBasis::from_integer_rows(&[vec![1, 0], vec![4, 1]]).unwrap();
        let (r, u) = lll_reduce(&b).unwrap();
        assert_eq!(norm2(&r.rows()[0]), rati(1));
        assert_eq!(norm2(&r.rows()[1]), rati(1));
        let udet = bareiss_determinant(u.clone());
        assert!(udet == BigInt::from(1) || udet == BigInt::from(-1));
        // reduced = U * input, checked entrywise
        for i in 0..2 {
            for t in 0..2 {
                let mut s = BigRational::zero();
                for j in 0..2 {
                    s += BigRational::from_integer(u[i][j].clone()) * &b.rows()[j][t];
                }
                assert_eq!(s, r.rows()[i][t]);
            }
        }
    }

    #[test]
    fn lll_first_vector_near_shortest() {
        let rows = vec![
            vec![9, 2, 7, 1, 4],
            vec![3, 8, 1, 6, 2],
            vec![5, 5, 9, 3, 7],
            vec![2, 1, 4, 8, 6],
            vec![7, 3, 2, 5, 9],
        ];
        let b = LatticeBasis::from_integer_rows(&rows).unwrap();
        let (r, _) = lll_reduce(&b).unwrap();
        let n1 = norm2(&r.rows()[0]);
        // exhaustive shortest vector via sphere enumeration at radius n1
        let shortest = enumerate_short_vectors(&b.gram(), &n1)
            .unwrap()
            .into_iter()
            .map(|x| {
                let y: Vec<BigRational> = (0..5)
                    .map(|t| {
                        let mut s = BigRational::zero();
                        for j in 0..5 {
                            s += BigRational::from_integer(x[j].clone()) * &b.rows()[j][t];
                        }
                        s
                    })
                    .collect();
                norm2(&y)
            })
            .min()
            .expect("b1 itself is in range");
        // squared form of |b1| <= 2^{(d-1)/2} lambda_1
        assert!(n1 <= rati(16) * shortest);
    }

    #[test]
    fn rank_deficient_rejected() {
        assert!(matches!(
            LatticeBasis::from_integer_rows(&[vec![1, 2], vec![2, 4]]),
            Err(Error::RankDeficient)
        ));
    }

    #[test]
    fn short_vectors_in_plane() {
        let gram = vec![vec![rati(1), rati(0)], vec![rati(0), rati(1)]];
        let got = enumerate_short_vectors(&gram, &rat(9, 4)).unwrap();
        let want: Vec<Vec<BigInt>> = [[-1i64, 1], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|v| v.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        assert_eq!(got, want);

        let gram = vec![vec![rati(1), rati(0)], vec![rati(0), rati(3)]];
        let got = enumerate_short_vectors(&gram, &rati(1)).unwrap();
        assert_eq!(got, vec![vec![BigInt::from(1), BigInt::from(0)]]);
    }

    #[test]
    fn short_vectors_match_cube_scan() {
        // fixed asymmetric positive definite form
        let gram = vec![
            vec![rati(4), rati(1), rati(1)],
            vec![rati(1), rati(3), rati(0)],
            vec![rati(1), rati(0), rati(5)],
        ];
        let c = rati(12);
        let got = enumerate_short_vectors(&gram, &c).unwrap();
        let mut want = Vec::new();
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                for e in -4i64..=4 {
                    if (a, b, e) == (0, 0, 0) {
                        continue;
                    }
                    let q = 4 * a * a + 3 * b * b + 5 * e * e + 2 * a * b + 2 * a * e;
                    let v = [a, b, e];
                    let last = v.iter().rposition(|&t| t != 0).unwrap();
                    if q <= 12 && v[last] > 0 {
                        want.push(v.iter().map(|&t| BigInt::from(t)).collect::<Vec<_>>());
                    }
                }
            }
        }
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn non_positive_definite_rejected() {
        let gram = vec![vec![rati(1), rati(2)], vec![rati(2), rati(1)]];
        assert!(enumerate_short_vectors(&gram, &rati(1)).is_err());
    }

    #[test]
    fn box_on_integer_lattice() {
        let b = LatticeBasis::from_integer_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let p = ConvexPolytope::from_box(&[rat(1, 5), rat(-2, 5)], &[rat(9, 5), rat(9, 10)]).unwrap();
        let pts = lattice_points_in_polytope(&b, &p).unwrap();
        assert_eq!(pts, vec![vec![BigInt::from(1), BigInt::from(0)]]);
    }

    #[test]
    fn skew_basis_matches_brute_force() {
        let b = LatticeBasis::from_integer_rows(&[vec![1, 0], vec![4, 1]]).unwrap();
        // square of side 3 centered at the origin
        let p = ConvexPolytope::from_box(&[rat(-3, 2), rat(-3, 2)], &[rat(3, 2), rat(3, 2)]).unwrap();
        let got = lattice_points_in_polytope(&b, &p).unwrap();
        let mut want = Vec::new();
        for c1 in -20i64..=20 {
            for c2 in -20i64..=20 {
                let y = (c1 + 4 * c2, c2);
                if 2 * y.0.abs() <= 3 && 2 * y.1.abs() <= 3 {
                    want.push(vec![BigInt::from(c1), BigInt::from(c2)]);
                }
            }
        }
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn rounding_artifacts_filtered() {
        let b = LatticeBasis::from_integer_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let p = ConvexPolytope::from_box(&[rat(2, 5), rat(2, 5)], &[rat(3, 5), rat(3, 5)]).unwrap();
        assert_eq!(lattice_points_in_polytope(&b, &p).unwrap(), Vec::<Vec<BigInt>>::new());
    }

    #[test]
    fn parallelopipeds_match_brute_force() {
        // deterministic batch of skew parallelopipeds in dimensions 2 and 3
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed % 7) as i64 - 3
        };
        for d in [2usize, 3] {
            for _case in 0..12 {
                let origin: Vec<BigRational> = (0..d).map(|_| rat(next(), 2)).collect();
                let mut gens: Vec<Vec<BigRational>> = Vec::new();
                for i in 0..d {
                    let mut g: Vec<BigRational> = (0..d).map(|_| rat(next(), 1)).collect();
                    // force independence: dominate the diagonal
                    g[i] += rati(5);
                    gens.push(g);
                }
                let p = ConvexPolytope::parallelopiped(&origin, &gens).unwrap();
                let rows: Vec<Vec<i64>> = match d {
                    2 => vec![vec![1, 0], vec![0, 1]],
                    _ => vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
                };
                let b = LatticeBasis::from_integer_rows(&rows).unwrap();
                let got = lattice_points_in_polytope(&b, &p).unwrap();
                // brute force over a generous integer cube
                let mut want = Vec::new();
                let range = -15i64..=15;
                let mut scan = vec![0i64; d];
                fn rec(
                    k: usize,
                    d: usize,
                    range: &std::ops::RangeInclusive<i64>,
                    scan: &mut Vec<i64>,
                    p: &ConvexPolytope,
                    want: &mut Vec<Vec<BigInt>>,
                ) {
                    if k == d {
                        let pt: Vec<BigRational> =
                            scan.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
                        if p.contains(&pt) {
                            want.push(scan.iter().map(|&v| BigInt::from(v)).collect());
                        }
                        return;
                    }
                    for v in range.clone() {
                        scan[k] = v;
                        rec(k + 1, d, range, scan, p, want);
                    }
                }
                rec(0, d, &range, &mut scan, &p, &mut want);
                want.sort();
                assert_eq!(got, want, "dim {d} case {_case}");
            }
        }
    }

    #[test]
    fn rounded_superset_contains_true_points() {
        // soundness of the rounding rule: brute-force points of P always
        // appear in the enumerator's output (which filters a superset)
        let b = LatticeBasis::from_integer_rows(&[vec![2, 1], vec![1, 3]]).unwrap();
        let p = ConvexPolytope::from_box(&[rat(-9, 2), rat(-9, 2)], &[rat(9, 2), rat(9, 2)]).unwrap();
        let got = lattice_points_in_polytope(&b, &p).unwrap();
        let mut want = Vec::new();
        for c1 in -12i64..=12 {
            for c2 in -12i64..=12 {
                let y = (2 * c1 + c2, c1 + 3 * c2);
                if 2 * y.0.abs() <= 9 && 2 * y.1.abs() <= 9 {
                    want.push(vec![BigInt::from(c1), BigInt::from(c2)]);
                }
            }
        }
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn strict_facets_exclude_boundary() {
        let b = LatticeBasis::from_integer_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        // triangle x >= 0 (strict), y >= 0 (strict), x + y <= 2
        let verts = vec![
            vec![rati(0), rati(0)],
            vec![rati(2), rati(0)],
            vec![rati(0), rati(2)],
        ];
        let facets = vec![
            Facet::open(vec![rati(-1), rati(0)], rati(0)),
            Facet::open(vec![rati(0), rati(-1)], rati(0)),
            Facet::closed(vec![rati(1), rati(1)], rati(2)),
        ];
        let p = ConvexPolytope::from_vertices_and_facets(verts, facets).unwrap();
        let got = lattice_points_in_polytope(&b, &p).unwrap();
        assert_eq!(got, vec![vec![BigInt::from(1), BigInt::from(1)]]);
    }
}
