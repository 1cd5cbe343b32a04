//! Exact Pfaffians of skew-symmetric matrices.
//!
//! Three evaluation strategies are provided:
//!
//! * [`pf_combinatorial`] — first-row expansion over perfect pairings.
//!   Exponential, capped at dimension 12, works over any polynomial entries.
//!   This is the reference implementation the others are tested against.
//! * [`pf_elimination`] — skew-symmetric Gaussian elimination over the
//!   rationals, `O(n^3)`.
//! * [`pf_univariate`] — evaluation/interpolation for matrices whose entries
//!   are univariate polynomials.  Sample values are computed by a
//!   fraction-free integer elimination whose exact divisibility follows from
//!   the Pfaffian form of Sylvester's identity.
//!
//! Row/column index pairs are swapped together everywhere, which flips the
//! sign of the Pfaffian once per swap.

use crate::error::{Error, Result};
use crate::poly::{PolyRing, SparsePoly};
use crate::scalar::Rational;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use std::sync::Arc;

/// Maximum dimension accepted by the combinatorial expansion.
pub const MAX_COMBINATORIAL_DIM: usize = 12;

// ---------------------------------------------------------------------------
// matrix types
// ---------------------------------------------------------------------------

/// A skew-symmetric matrix with [`SparsePoly`] entries.
#[derive(Debug, Clone)]
pub struct SkewPolyMatrix {
    n: usize,
    ring: Arc<PolyRing>,
    rows: Vec<Vec<SparsePoly>>,
}

impl SkewPolyMatrix {
    pub fn zeros(n: usize, ring: &Arc<PolyRing>) -> Self {
        SkewPolyMatrix {
            n,
            ring: ring.clone(),
            rows: vec![vec![SparsePoly::zero(ring); n]; n],
        }
    }

    /// Build from a function on the strict upper triangle.
    pub fn from_upper<F: FnMut(usize, usize) -> SparsePoly>(
        n: usize,
        ring: &Arc<PolyRing>,
        mut f: F,
    ) -> Self {
        let mut m = SkewPolyMatrix::zeros(n, ring);
        for i in 0..n {
            for j in i + 1..n {
                let p = f(i, j);
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Set entry `(i, j)` and its mirror `(j, i) = -entry`.
    pub fn set(&mut self, i: usize, j: usize, p: SparsePoly) {
        assert!(i != j || p.is_zero(), "diagonal of a skew matrix is zero");
        if i == j {
            return;
        }
        self.rows[j][i] = p.neg();
        self.rows[i][j] = p;
    }

    pub fn get(&self, i: usize, j: usize) -> &SparsePoly {
        &self.rows[i][j]
    }

    /// Evaluate every entry at a point of the (univariate) entry ring.
    pub fn eval_univariate(&self, t: &Rational) -> Result<SkewRationalMatrix> {
        let mut out = SkewRationalMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let v = self.rows[i][j].eval_univariate(t)?;
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// Largest entry degree in half units (0 for an all-zero matrix).
    pub fn max_entry_degree_half(&self) -> i32 {
        let mut d = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if let Some(k) = self.rows[i][j].univariate_degree_half() {
                    d = d.max(k);
                }
            }
        }
        d
    }
}

/// A skew-symmetric matrix with rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewRationalMatrix {
    n: usize,
    rows: Vec<Vec<Rational>>,
}

impl SkewRationalMatrix {
    pub fn zeros(n: usize) -> Self {
        SkewRationalMatrix {
            n,
            rows: vec![vec![Rational::zero(); n]; n],
        }
    }

    /// Build from explicit rows; the matrix must already be skew-symmetric.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row {i} has length {} in a {n}x{n} matrix",
                    r.len()
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if rows[i][j] != -rows[j][i].clone() {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not skew-symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(SkewRationalMatrix { n, rows })
    }

    pub fn from_upper<F: FnMut(usize, usize) -> Rational>(n: usize, mut f: F) -> Self {
        let mut m = SkewRationalMatrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i != j || v.is_zero(), "diagonal of a skew matrix is zero");
        if i == j {
            return;
        }
        self.rows[j][i] = -v.clone();
        self.rows[i][j] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    /// Submatrix with the listed (0-based, distinct) indices removed.
    pub fn remove_indices(&self, removed: &[usize]) -> Result<SkewRationalMatrix> {
        let mut seen = vec![false; self.n];
        for &r in removed {
            if r >= self.n {
                return Err(Error::IndexOutOfRange(r, self.n));
            }
            if seen[r] {
                return Err(Error::InvalidInput(format!("index {r} listed twice")));
            }
            seen[r] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&i| !seen[i]).collect();
        Ok(self.restrict_to(&keep))
    }

    /// Submatrix keeping exactly the listed indices, in the given order.
    pub fn restrict_to(&self, keep: &[usize]) -> SkewRationalMatrix {
        let m = keep.len();
        let mut out = SkewRationalMatrix::zeros(m);
        for a in 0..m {
            for b in a + 1..m {
                out.set(a, b, self.rows[keep[a]][keep[b]].clone());
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// combinatorial expansion
// ---------------------------------------------------------------------------

/// Pfaffian by first-row expansion over all perfect pairings.
///
/// The dimension must be even (or zero: `pf` of the empty matrix is 1) and at
/// most [`MAX_COMBINATORIAL_DIM`].
pub fn pf_combinatorial(m: &SkewPolyMatrix) -> Result<SparsePoly> {
    let n = m.n();
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    if n > MAX_COMBINATORIAL_DIM {
        return Err(Error::TooLarge(format!(
            "dimension {n} exceeds combinatorial cap {MAX_COMBINATORIAL_DIM}"
        )));
    }
    let active: Vec<usize> = (0..n).collect();
    Ok(pf_expand(m, &active))
}

fn pf_expand(m: &SkewPolyMatrix, active: &[usize]) -> SparsePoly {
    if active.is_empty() {
        return SparsePoly::one(m.ring());
    }
    let i0 = active[0];
    let mut acc = SparsePoly::zero(m.ring());
    for (pos, &j) in active.iter().enumerate().skip(1) {
        let entry = m.get(i0, j);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&v| v != i0 && v != j)
            .collect();
        let sub = pf_expand(m, &rest);
        let term = entry.mul(&sub);
        // sign (-1)^(pos-1) for pairing the first index with the pos-th.
        if pos % 2 == 1 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// rational elimination
// ---------------------------------------------------------------------------

/// Pfaffian by skew-symmetric Gaussian elimination over the rationals.
pub fn pf_elimination(m: &SkewRationalMatrix) -> Result<Rational> {
    let n = m.n();
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut a = m.rows.clone();
    let mut sign = Rational::one();
    let mut prod = Rational::one();
    let mut k = 0;
    while k < n {
        // Find a nonzero pivot in row k to the right of k.
        if a[k][k + 1].is_zero() {
            match (k + 2..n).find(|&j| !a[k][j].is_zero()) {
                None => return Ok(Rational::zero()),
                Some(j) => {
                    swap_pair(&mut a, k + 1, j);
                    sign = -sign;
                }
            }
        }
        let p = a[k][k + 1].clone();
        for i in k + 2..n {
            for j in i + 1..n {
                let delta = (&a[k][i] * &a[k + 1][j] - &a[k][j] * &a[k + 1][i]) / &p;
                let v = &a[i][j] - delta;
                a[j][i] = -v.clone();
                a[i][j] = v;
            }
        }
        prod *= p;
        k += 2;
    }
    Ok(sign * prod)
}

fn swap_pair<T: Clone>(a: &mut [Vec<T>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

// ---------------------------------------------------------------------------
// fraction-free integer elimination
// ---------------------------------------------------------------------------

/// Pfaffian of an integer skew matrix by fraction-free elimination.
///
/// The working entries at step `k` are Pfaffians of principal submatrices on
/// `{0..k+1, i, j}`; the Pfaffian Plücker relation
/// `pf(K) pf(K+ijkl) = pf(K+ij) pf(K+kl) - pf(K+ik) pf(K+jl) + pf(K+il) pf(K+jk)`
/// makes every division exact.  Divisibility is asserted, so a logic error
/// fails loudly instead of returning a wrong value.
fn pf_bigint(mut a: Vec<Vec<BigInt>>) -> Result<BigInt> {
    let n = a.len();
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    let mut k = 0;
    loop {
        if a[k][k + 1].is_zero() {
            match (k + 2..n).find(|&j| !a[k][j].is_zero()) {
                None => return Ok(BigInt::zero()),
                Some(j) => {
                    swap_pair(&mut a, k + 1, j);
                    sign = -sign;
                }
            }
        }
        let q = a[k][k + 1].clone();
        if k + 2 >= n {
            return Ok(if sign < 0 { -q } else { q });
        }
        for i in k + 2..n {
            for j in i + 1..n {
                let num = &q * &a[i][j] - &a[k][i] * &a[k + 1][j] + &a[k][j] * &a[k + 1][i];
                let (quot, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free pfaffian division not exact");
                if !rem.is_zero() {
                    return Err(Error::BadPolynomial(
                        "internal: inexact division in integer pfaffian".into(),
                    ));
                }
                a[j][i] = -quot.clone();
                a[i][j] = quot;
            }
        }
        prev = q;
        k += 2;
    }
}

/// Exact Pfaffian of a rational skew matrix via symmetric denominator
/// clearing and integer fraction-free elimination.
///
/// Multiplying row and column `i` by `d_i` scales the Pfaffian by `prod d_i`.
pub fn pf_exact(m: &SkewRationalMatrix) -> Result<Rational> {
    let n = m.n();
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = vec![BigInt::one(); n];
    for i in 0..n {
        let mut l = BigInt::one();
        for j in 0..n {
            l = l.lcm(m.rows[i][j].denom());
        }
        scale[i] = l;
    }
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = &m.rows[i][j] * Rational::from_integer(&scale[i] * &scale[j]);
                    debug_assert!(v.denom().is_one());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    let pf_scaled = pf_bigint(a)?;
    let mut denom = BigInt::one();
    for s in &scale {
        denom *= s;
    }
    Ok(Rational::new(pf_scaled, denom))
}

// ---------------------------------------------------------------------------
// univariate matrices: evaluation + interpolation
// ---------------------------------------------------------------------------

/// Pfaffian of a matrix of univariate polynomials, by evaluation at rational
/// nodes and exact interpolation.
///
/// `degree_bound_half` optionally caps the degree of the result (half units);
/// the structural bound `n/2 * max entry degree` is used otherwise.  When
/// every entry has even exponents the result is even as well and only
/// non-negative nodes are sampled, halving the work.
pub fn pf_univariate(
    m: &SkewPolyMatrix,
    degree_bound_half: Option<i32>,
) -> Result<SparsePoly> {
    let n = m.n();
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    let ring = m.ring().clone();
    if ring.num_vars() != 1 {
        return Err(Error::BadPolynomial(
            "pf_univariate needs a univariate entry ring".into(),
        ));
    }
    if n == 0 {
        return Ok(SparsePoly::one(&ring));
    }
    let structural = (n as i32 / 2) * m.max_entry_degree_half();
    let bound_half = degree_bound_half.map_or(structural, |b| b.min(structural));

    // Entries with only even powers of the variable (exponent 0, 1, 2, ...
    // with only even ones present => half units divisible by 4) give an even
    // Pfaffian, which we interpolate in the squared variable.
    let mut even_powered = true;
    'outer: for i in 0..n {
        for j in i + 1..n {
            for (e, _) in m.get(i, j).terms() {
                if e[0] % 4 != 0 {
                    even_powered = false;
                    break 'outer;
                }
            }
        }
    }

    if even_powered {
        // interpolate P with pf(z) = P(z^2)
        let deg_x = (bound_half / 4) as usize; // x-degree bound
        let sq_ring = PolyRing::univariate("pf_sq_tmp");
        let mut samples = Vec::with_capacity(deg_x + 1);
        for t in 0..=deg_x as i64 {
            let z = Rational::from_integer(t.into());
            let val = pf_exact(&m.eval_univariate(&z)?)?;
            samples.push((Rational::from_integer((t * t).into()), val));
        }
        let p = SparsePoly::interpolate(&sq_ring, &samples)?;
        // exponent k of the squared variable = exponent 2k of the original
        p.double_variable(&ring)
    } else {
        let deg = (bound_half / 2) as usize; // integer degree bound
        let mut nodes = Vec::with_capacity(deg + 1);
        let mut t = 0i64;
        while nodes.len() < deg + 1 {
            nodes.push(t);
            if t > 0 {
                nodes.push(-t);
            }
            t += 1;
        }
        nodes.truncate(deg + 1);
        let mut samples = Vec::with_capacity(nodes.len());
        for t in nodes {
            let z = Rational::from_integer(t.into());
            let val = pf_exact(&m.eval_univariate(&z)?)?;
            samples.push((z, val));
        }
        SparsePoly::interpolate(&ring, &samples)
    }
}

// ---------------------------------------------------------------------------
// sub-Pfaffians, inverse, and the expansion identity
// ---------------------------------------------------------------------------

/// Pfaffian of the matrix with the listed (0-based) rows and columns removed.
/// The removed subset must leave an even dimension.
pub fn sub_pfaffian(m: &SkewRationalMatrix, removed: &[usize]) -> Result<Rational> {
    let sub = m.remove_indices(removed)?;
    if sub.n() % 2 != 0 {
        return Err(Error::OddSubsetSize(removed.len()));
    }
    pf_exact(&sub)
}

/// Exact inverse of a skew-symmetric rational matrix by Gauss-Jordan
/// elimination.
pub fn skew_inverse(m: &SkewRationalMatrix) -> Result<SkewRationalMatrix> {
    let n = m.n();
    let mut a = m.rows.clone();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero());
        let pivot_row = match pivot_row {
            Some(r) => r,
            None => return Err(Error::SingularMatrix),
        };
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let av = &a[col][j] * &f;
                    a[r][j] -= av;
                    let iv = &inv[col][j] * &f;
                    inv[r][j] -= iv;
                }
            }
        }
    }
    // The inverse of a nonsingular skew-symmetric matrix is skew-symmetric.
    SkewRationalMatrix::from_rows(inv)
}

/// Verify the monomer-weight expansion of the augmented Pfaffian:
/// `pf(a - (-1)^{i+j} l_i l_j) = sum over even subsets I of pf(a minus I) *
/// prod_{i in I} l_i`.
///
/// Returns `Ok(true)` when both sides agree.  Dimension is capped because the
/// right-hand side sums over all even subsets.
pub fn verify_monomer_expansion(a: &SkewRationalMatrix, ell: &[Rational]) -> Result<bool> {
    let n = a.n();
    if ell.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} weights for a {n}x{n} matrix",
            ell.len()
        )));
    }
    if n > 16 {
        return Err(Error::TooLarge(format!(
            "identity verification sums over 2^{n} subsets"
        )));
    }
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    let augmented = SkewRationalMatrix::from_upper(n, |i, j| {
        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
        let shift = &ell[i] * &ell[j] * Rational::from_integer(sign.into());
        a.get(i, j).clone() - shift
    });
    let lhs = pf_exact(&augmented)?;
    let mut rhs = Rational::zero();
    for mask in 0..(1u32 << n) {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let removed: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let mut weight = Rational::one();
        for &i in &removed {
            weight *= &ell[i];
        }
        if weight.is_zero() {
            continue;
        }
        rhs += sub_pfaffian(a, &removed)? * weight;
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn const_matrix(rows: &[&[i64]]) -> SkewRationalMatrix {
        let n = rows.len();
        SkewRationalMatrix::from_upper(n, |i, j| rat_i(rows[i][j]))
    }

    fn poly_const(m: &SkewRationalMatrix) -> SkewPolyMatrix {
        let ring = PolyRing::univariate("t");
        SkewPolyMatrix::from_upper(m.n(), &ring, |i, j| {
            SparsePoly::constant(&ring, m.get(i, j).clone())
        })
    }

    #[test]
    fn pf_of_empty_and_2x2() {
        let empty = SkewRationalMatrix::zeros(0);
        assert_eq!(pf_elimination(&empty).unwrap(), rat_i(1));
        assert_eq!(pf_exact(&empty).unwrap(), rat_i(1));
        let m = const_matrix(&[&[0, 5], &[-5, 0]]);
        assert_eq!(pf_elimination(&m).unwrap(), rat_i(5));
        assert_eq!(pf_exact(&m).unwrap(), rat_i(5));
    }

    #[test]
    fn pf_4x4_closed_form() {
        // pf = a01 a23 - a02 a13 + a03 a12 = 1*6 - 2*5 + 3*4 = 8
        let m = const_matrix(&[&[0, 1, 2, 3], &[0, 0, 4, 5], &[0, 0, 0, 6], &[0; 4]]);
        assert_eq!(pf_elimination(&m).unwrap(), rat_i(8));
        assert_eq!(pf_exact(&m).unwrap(), rat_i(8));
        let pm = poly_const(&m);
        let p = pf_combinatorial(&pm).unwrap();
        assert_eq!(p.coefficient(&[0]), rat_i(8));
    }

    #[test]
    fn odd_dimension_rejected() {
        let m = SkewRationalMatrix::zeros(3);
        assert!(matches!(pf_elimination(&m), Err(Error::OddDimension(3))));
        assert!(matches!(pf_exact(&m), Err(Error::OddDimension(3))));
    }

    fn random_skew(rng: &mut ChaCha8Rng, n: usize, denom: i64) -> SkewRationalMatrix {
        SkewRationalMatrix::from_upper(n, |_, _| {
            rat(rng.gen_range(-9..=9), denom)
        })
    }

    #[test]
    fn elimination_agrees_with_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2usize, 4, 6, 8, 10] {
            for denom in [1i64, 3] {
                let m = random_skew(&mut rng, n, denom);
                let via_elim = pf_elimination(&m).unwrap();
                let via_int = pf_exact(&m).unwrap();
                let via_comb = pf_combinatorial(&poly_const(&m)).unwrap().coefficient(&[0]);
                assert_eq!(via_elim, via_comb, "n={n} denom={denom}");
                assert_eq!(via_int, via_comb, "n={n} denom={denom}");
            }
        }
    }

    #[test]
    fn pf_squared_is_determinant() {
        // quick determinant by LU over rationals
        fn det(m: &SkewRationalMatrix) -> Rational {
            let n = m.n();
            let mut a: Vec<Vec<Rational>> =
                (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
            let mut d = Rational::one();
            for c in 0..n {
                let p = match (c..n).find(|&r| !a[r][c].is_zero()) {
                    None => return Rational::zero(),
                    Some(p) => p,
                };
                if p != c {
                    a.swap(p, c);
                    d = -d;
                }
                let pv = a[c][c].clone();
                d *= &pv;
                for r in c + 1..n {
                    let f = &a[r][c] / &pv;
                    for j in c..n {
                        let v = &a[c][j] * &f;
                        a[r][j] -= v;
                    }
                }
            }
            d
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2usize, 4, 6, 8] {
            let m = random_skew(&mut rng, n, 2);
            let pf = pf_exact(&m).unwrap();
            assert_eq!(&pf * &pf, det(&m), "pf^2 = det at n={n}");
        }
    }

    #[test]
    fn zero_pivot_paths() {
        // matrix with a01 = 0 forcing a swap, and a singular one
        let m = const_matrix(&[&[0, 0, 2, 3], &[0, 0, 4, 5], &[0, 0, 0, 6], &[0; 4]]);
        let via_comb = pf_combinatorial(&poly_const(&m)).unwrap().coefficient(&[0]);
        assert_eq!(pf_elimination(&m).unwrap(), via_comb);
        assert_eq!(pf_exact(&m).unwrap(), via_comb);
        let singular = const_matrix(&[&[0, 0, 0, 0], &[0, 0, 4, 5], &[0, 0, 0, 6], &[0; 4]]);
        assert_eq!(pf_exact(&singular).unwrap(), rat_i(0));
    }

    #[test]
    fn univariate_interpolation_matches_expansion() {
        // entries linear and quadratic in z, odd and even powers
        let ring = PolyRing::univariate("z");
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [4usize, 6, 8] {
            let m = SkewPolyMatrix::from_upper(n, &ring, |_, _| {
                let c0 = rat_i(rng.gen_range(-3..=3));
                let c1 = rat_i(rng.gen_range(-2..=2));
                let c2 = rat_i(rng.gen_range(-2..=2));
                SparsePoly::constant(&ring, c0)
                    .add(&SparsePoly::monomial(&ring, 0, 2, c1))
                    .add(&SparsePoly::monomial(&ring, 0, 4, c2))
            });
            let direct = pf_combinatorial(&m).unwrap();
            let interp = pf_univariate(&m, None).unwrap();
            assert_eq!(direct, interp, "n={n}");
        }
    }

    #[test]
    fn univariate_even_fast_path() {
        let ring = PolyRing::univariate("z");
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in [4usize, 6, 10] {
            // only exponents 0 and 2: even-powered fast path
            let m = SkewPolyMatrix::from_upper(n, &ring, |_, _| {
                let c0 = rat_i(rng.gen_range(-3..=3));
                let c2 = rat_i(rng.gen_range(-2..=2));
                SparsePoly::constant(&ring, c0).add(&SparsePoly::monomial(&ring, 0, 4, c2))
            });
            let direct = pf_combinatorial(&m).unwrap();
            let interp = pf_univariate(&m, None).unwrap();
            assert_eq!(direct, interp, "n={n}");
        }
    }

    #[test]
    fn sub_pfaffian_and_parity_errors() {
        let m = const_matrix(&[&[0, 1, 2, 3], &[0, 0, 4, 5], &[0, 0, 0, 6], &[0; 4]]);
        // removing {0,1} leaves rows 2,3: pf = a23 = 6
        assert_eq!(sub_pfaffian(&m, &[0, 1]).unwrap(), rat_i(6));
        assert_eq!(sub_pfaffian(&m, &[]).unwrap(), rat_i(8));
        assert_eq!(sub_pfaffian(&m, &[0, 1, 2, 3]).unwrap(), rat_i(1));
        assert!(matches!(
            sub_pfaffian(&m, &[0]),
            Err(Error::OddSubsetSize(1))
        ));
        assert!(matches!(
            sub_pfaffian(&m, &[9, 1]),
            Err(Error::IndexOutOfRange(9, 4))
        ));
    }

    #[test]
    fn inverse_round_trip_and_minor_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for n in [2usize, 4, 6] {
            let m = loop {
                let cand = random_skew(&mut rng, n, 1);
                if !pf_exact(&cand).unwrap().is_zero() {
                    break cand;
                }
            };
            let inv = skew_inverse(&m).unwrap();
            // check M * inv = I
            for i in 0..n {
                for j in 0..n {
                    let mut s = Rational::zero();
                    for k in 0..n {
                        s += m.get(i, k) * inv.get(k, j);
                    }
                    let expect = if i == j { rat_i(1) } else { rat_i(0) };
                    assert_eq!(s, expect, "({i},{j})");
                }
            }
            // minor identity: pf(M minus s) / pf(M) equals pf(inv restricted
            // to s) up to the sign (-1)^{sum of 1-based indices in s}.  For
            // index sets in leading position {1..2k} that sign reduces to
            // (-1)^{|s|/2}.
            let pf_m = pf_exact(&m).unwrap();
            for mask in 0..(1u32 << n) {
                if mask.count_ones() % 2 != 0 || mask.count_ones() == 0 {
                    continue;
                }
                let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let lhs = sub_pfaffian(&m, &s).unwrap() / &pf_m;
                let index_sum: usize = s.iter().map(|i| i + 1).sum();
                let sign = if index_sum % 2 == 0 { rat_i(1) } else { rat_i(-1) };
                let rhs = sign * pf_exact(&inv.restrict_to(&s)).unwrap();
                assert_eq!(lhs, rhs, "n={n} s={s:?}");
            }
        }
    }

    #[test]
    fn singular_inverse_rejected() {
        let m = SkewRationalMatrix::zeros(4);
        assert!(matches!(skew_inverse(&m), Err(Error::SingularMatrix)));
    }

    #[test]
    fn expansion_identity_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for n in [2usize, 4, 6] {
            for _ in 0..3 {
                let a = random_skew(&mut rng, n, 2);
                let ell: Vec<Rational> =
                    (0..n).map(|_| rat(rng.gen_range(0..=4), 2)).collect();
                assert!(verify_monomer_expansion(&a, &ell).unwrap());
            }
        }
    }
}
