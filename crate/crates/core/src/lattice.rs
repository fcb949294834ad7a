//! Exact integer linear algebra: Hermite and Smith normal forms with
//! transformation matrices, lattice membership, and quotient invariants.
//!
//! Matrices are stored sparsely (row-major, no zero entries); reductions run
//! on a dense working copy, which is well within budget for the relation
//! matrices produced here. All arithmetic is arbitrary precision.
//!
//! Every `snf` call re-verifies `U*A*V == D`, the divisibility chain, and
//! unimodularity of the transforms before returning.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    /// Sorted by column, no zeros stored.
    data: Vec<Vec<(usize, BigInt)>>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{})", self.rows, self.cols)
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, BigInt::one())]).collect();
        IntMatrix { rows: n, cols: n, data }
    }

    pub fn from_dense(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let data = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_sparse_rows(rows: usize, cols: usize, entries: Vec<Vec<(usize, BigInt)>>) -> Self {
        assert_eq!(entries.len(), rows);
        let mut data = entries;
        for row in &mut data {
            row.retain(|(_, x)| !x.is_zero());
            row.sort_by_key(|&(j, _)| j);
            for &(j, _) in row.iter() {
                assert!(j < cols, "column index out of range");
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.data[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map(|k| self.data[i][k].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                out[i][*j] = x.clone();
            }
        }
        out
    }

    pub fn row_dense(&self, i: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.cols];
        for (j, x) in &self.data[i] {
            out[*j] = x.clone();
        }
        out
    }

    /// Dense row vector times this matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            for (j, x) in row {
                out[*j] += &v[i] * x;
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = vec![vec![BigInt::zero(); other.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (k, x) in row {
                for (j, y) in &other.data[*k] {
                    out[i][*j] += x * y;
                }
            }
        }
        let data = out
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }
}

/// Result of a Smith normal form computation: `u * a * v = d`.
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal, d1 | d2 | ... | dk, all positive.
    pub invariants: Vec<BigInt>,
}

struct Dense {
    rows: usize,
    cols: usize,
    w: Vec<Vec<BigInt>>,
}

impl Dense {
    fn of(a: &IntMatrix) -> Self {
        Dense {
            rows: a.rows(),
            cols: a.cols(),
            w: a.to_dense(),
        }
    }
    fn ident(n: usize) -> Self {
        let mut w = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in w.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        Dense { rows: n, cols: n, w }
    }
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.w.swap(a, b);
    }
    fn negate_row(&mut self, a: usize) {
        for x in &mut self.w[a] {
            *x = -std::mem::take(x);
        }
    }
    /// row a -= q * row b
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.w[b][j] * q;
            self.w[a][j] -= s;
        }
    }
    fn row_add(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            let s = self.w[b][j].clone();
            self.w[a][j] += s;
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.w {
            row.swap(a, b);
        }
    }
    /// col a -= q * col b
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in &mut self.w {
            let s = &row[b] * q;
            row[a] -= s;
        }
    }
    fn to_matrix(&self) -> IntMatrix {
        let data = self
            .w
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
    fn row_nnz(&self, i: usize, from: usize) -> usize {
        self.w[i][from..].iter().filter(|x| !x.is_zero()).count()
    }
    fn col_nnz(&self, j: usize, from: usize) -> usize {
        (from..self.rows).filter(|&i| !self.w[i][j].is_zero()).count()
    }
}

/// Division rounded to the nearest integer; keeps remainders at most half
/// the divisor, which tames coefficient growth in the reductions.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if r.magnitude() * 2u32 > b.magnitude().clone() {
        if (a.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Row-style Hermite normal form: `u * a = h` with `u` unimodular, `h` in
/// upper echelon shape, positive pivots, entries above each pivot reduced.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut w = Dense::of(a);
    let mut u = Dense::ident(a.rows());
    let mut sign = 1i64;
    let mut r = 0usize;
    for j in 0..w.cols {
        if r == w.rows {
            break;
        }
        // gcd out the column below r
        loop {
            let mut best: Option<usize> = None;
            for i in r..w.rows {
                if !w.w[i][j].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if w.w[i][j].magnitude() < w.w[b][j].magnitude() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(p) = best else { break };
            if p != r {
                w.swap_rows(p, r);
                u.swap_rows(p, r);
                sign = -sign;
            }
            let mut clean = true;
            for i in r + 1..w.rows {
                if !w.w[i][j].is_zero() {
                    let q = rounded_div(&w.w[i][j], &w.w[r][j]);
                    w.row_sub(i, r, &q);
                    u.row_sub(i, r, &q);
                    if !w.w[i][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if w.w[r][j].is_zero() {
            continue;
        }
        if w.w[r][j].is_negative() {
            w.negate_row(r);
            u.negate_row(r);
            sign = -sign;
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..r {
            let q = w.w[i][j].div_floor(&w.w[r][j]);
            w.row_sub(i, r, &q);
            u.row_sub(i, r, &q);
        }
        r += 1;
    }
    let h = w.to_matrix();
    let um = u.to_matrix();
    assert_unimodular(&um, sign);
    debug_assert_eq!(um.mul(a), h, "U*A = H");
    (h, um)
}

/// Smith normal form with verified transforms. Pivot choice: least absolute
/// nonzero entry, ties broken by least fill-in.
pub fn snf(a: &IntMatrix) -> SmithForm {
    let mut w = Dense::of(a);
    let mut u = Dense::ident(a.rows());
    let mut v = Dense::ident(a.cols());
    let mut usign = 1i64;
    let mut vsign = 1i64;
    let n = w.rows.min(w.cols);
    let mut t = 0usize;
    while t < n {
        // pivot search
        let mut best: Option<(usize, usize)> = None;
        for i in t..w.rows {
            for j in t..w.cols {
                if w.w[i][j].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some((i, j)),
                    Some((bi, bj)) => {
                        let cand = w.w[i][j].magnitude();
                        let cur = w.w[bi][bj].magnitude();
                        if cand < cur
                            || (cand == cur
                                && w.row_nnz(i, t) + w.col_nnz(j, t)
                                    < w.row_nnz(bi, t) + w.col_nnz(bj, t))
                        {
                            Some((i, j))
                        } else {
                            Some((bi, bj))
                        }
                    }
                };
            }
        }
        let Some((pi, pj)) = best else { break };
        if pi != t {
            w.swap_rows(pi, t);
            u.swap_rows(pi, t);
            usign = -usign;
        }
        if pj != t {
            w.swap_cols(pj, t);
            v.swap_cols(pj, t);
            vsign = -vsign;
        }
        'reduce: loop {
            // clear the pivot column
            loop {
                let mut min_i = t;
                for i in t..w.rows {
                    if !w.w[i][t].is_zero()
                        && (w.w[min_i][t].is_zero()
                            || w.w[i][t].magnitude() < w.w[min_i][t].magnitude())
                    {
                        min_i = i;
                    }
                }
                if min_i != t {
                    w.swap_rows(min_i, t);
                    u.swap_rows(min_i, t);
                    usign = -usign;
                }
                let mut dirty = false;
                for i in t + 1..w.rows {
                    if !w.w[i][t].is_zero() {
                        let q = rounded_div(&w.w[i][t], &w.w[t][t]);
                        w.row_sub(i, t, &q);
                        u.row_sub(i, t, &q);
                        if !w.w[i][t].is_zero() {
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    break;
                }
            }
            // clear the pivot row
            loop {
                let mut min_j = t;
                for j in t..w.cols {
                    if !w.w[t][j].is_zero()
                        && (w.w[t][min_j].is_zero()
                            || w.w[t][j].magnitude() < w.w[t][min_j].magnitude())
                    {
                        min_j = j;
                    }
                }
                if min_j != t {
                    w.swap_cols(min_j, t);
                    v.swap_cols(min_j, t);
                    vsign = -vsign;
                }
                let mut dirty = false;
                for j in t + 1..w.cols {
                    if !w.w[t][j].is_zero() {
                        let q = rounded_div(&w.w[t][j], &w.w[t][t]);
                        w.col_sub(j, t, &q);
                        v.col_sub(j, t, &q);
                        if !w.w[t][j].is_zero() {
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    break;
                }
            }
            // clearing the row may have dirtied the column
            if (t + 1..w.rows).any(|i| !w.w[i][t].is_zero()) {
                continue 'reduce;
            }
            // divisibility: the pivot must divide everything below-right
            for i in t + 1..w.rows {
                for j in t + 1..w.cols {
                    if !(&w.w[i][j] % &w.w[t][t]).is_zero() {
                        w.row_add(t, i);
                        u.row_add(t, i);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if w.w[t][t].is_negative() {
            w.negate_row(t);
            u.negate_row(t);
            usign = -usign;
        }
        t += 1;
    }
    let d = w.to_matrix();
    let um = u.to_matrix();
    let vm = v.to_matrix();
    let mut invariants = Vec::new();
    for i in 0..n {
        let x = d.get(i, i);
        if x.is_zero() {
            break;
        }
        invariants.push(x);
    }
    // invariants: U*A*V = D, divisibility chain, unimodular transforms
    assert_eq!(um.mul(a).mul(&vm), d, "U*A*V = D");
    for k in 1..invariants.len() {
        assert!(
            (&invariants[k] % &invariants[k - 1]).is_zero(),
            "divisibility chain d{} | d{}",
            k,
            k + 1
        );
    }
    assert_unimodular(&um, usign);
    assert_unimodular(&vm, vsign);
    SmithForm {
        d,
        u: um,
        v: vm,
        invariants,
    }
}

/// Asserts |det| = 1. Exact fraction-free determinant up to 64x64; larger
/// matrices are checked against the elementary-operation sign through
/// determinants modulo four fixed primes.
fn assert_unimodular(m: &IntMatrix, expected_sign: i64) {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n <= 64 {
        let det = bareiss_det(&m.to_dense());
        assert!(
            det == BigInt::from(expected_sign),
            "transform determinant is {} (expected {})",
            det,
            expected_sign
        );
    } else {
        for &p in &[1_000_000_007i64, 998_244_353, 2_147_483_647, 1_000_000_033] {
            let dm = det_mod(m, p);
            let want = (BigInt::from(expected_sign) % p + p) % p;
            assert!(
                BigInt::from(dm) == want,
                "transform determinant mod {} is {} (expected {})",
                p,
                dm,
                want
            );
        }
    }
}

/// Bareiss fraction-free determinant.
fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if sign < 0 {
        -a[n - 1][n - 1].clone()
    } else {
        a[n - 1][n - 1].clone()
    }
}

fn det_mod(m: &IntMatrix, p: i64) -> i64 {
    let n = m.rows();
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for (j, x) in m.row(i) {
            let r = x % BigInt::from(p);
            let mut v = i64::try_from(r).unwrap();
            if v < 0 {
                v += p;
            }
            a[i][*j] = v;
        }
    }
    let mut det = 1i128;
    let pp = p as i128;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        det = det * a[k][k] as i128 % pp;
        let inv = mod_inv(a[k][k] as i128, pp);
        for i in k + 1..n {
            if a[i][k] == 0 {
                continue;
            }
            let f = a[i][k] as i128 * inv % pp;
            for j in k..n {
                let sub = f * a[k][j] as i128 % pp;
                let mut x = a[i][j] as i128 - sub;
                if x < 0 {
                    x += pp;
                }
                a[i][j] = x as i64;
            }
        }
    }
    let mut d = det % pp;
    if d < 0 {
        d += pp;
    }
    d as i64
}

fn mod_inv(a: i128, p: i128) -> i128 {
    // p prime
    let mut result = 1i128;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// The abelian group `Z^gens / rowspace(relations)` with exact membership.
pub struct QuotientStructure {
    num_generators: usize,
    relations: IntMatrix,
    hnf: IntMatrix,
    hnf_u: IntMatrix,
    smith: SmithForm,
    pub free_rank: usize,
    /// Invariant factors > 1.
    pub torsion: Vec<BigInt>,
}

impl QuotientStructure {
    pub fn new(num_generators: usize, relations: &IntMatrix) -> Result<Self> {
        if relations.cols() != num_generators {
            return Err(Error::Dimension(format!(
                "relations have {} columns for {} generators",
                relations.cols(),
                num_generators
            )));
        }
        let (h, u) = hnf(relations);
        // The invariant factors depend only on the row lattice, so the Smith
        // reduction runs on the Hermite basis: far fewer rows, same result.
        let compact_rows: Vec<Vec<(usize, BigInt)>> = (0..h.rows())
            .filter(|&i| !h.row(i).is_empty())
            .map(|i| h.row(i).to_vec())
            .collect();
        let compact = IntMatrix::from_sparse_rows(compact_rows.len(), num_generators, compact_rows);
        let smith = snf(&compact);
        let rank = smith.invariants.len();
        let torsion: Vec<BigInt> = smith
            .invariants
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        Ok(QuotientStructure {
            num_generators,
            relations: relations.clone(),
            hnf: h,
            hnf_u: u,
            smith,
            free_rank: num_generators - rank,
            torsion,
        })
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn hnf_basis(&self) -> &IntMatrix {
        &self.hnf
    }

    pub fn smith(&self) -> &SmithForm {
        &self.smith
    }

    fn pivots(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.hnf.rows() {
            if let Some((j, _)) = self.hnf.row(i).first() {
                out.push((i, *j));
            }
        }
        out
    }

    /// Is `v` in the row lattice of the relations?
    pub fn membership(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.reduce_with_coeffs(v)?.0.iter().all(|x| x.is_zero()))
    }

    /// Canonical coset representative: entries over pivot columns reduced
    /// into `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.num_generators {
            return Err(Error::Dimension("vector length".into()));
        }
        let mut w = v.to_vec();
        for (i, j) in self.pivots() {
            let pivot = self.hnf.get(i, j);
            let q = w[j].div_floor(&pivot);
            if !q.is_zero() {
                for (c, x) in self.hnf.row(i) {
                    w[*c] -= &q * x;
                }
            }
        }
        Ok(w)
    }

    fn reduce_with_coeffs(&self, v: &[BigInt]) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
        if v.len() != self.num_generators {
            return Err(Error::Dimension("vector length".into()));
        }
        let mut w = v.to_vec();
        let mut coeffs = vec![BigInt::zero(); self.hnf.rows()];
        for (i, j) in self.pivots() {
            let pivot = self.hnf.get(i, j);
            let (q, r) = w[j].div_rem(&pivot);
            if !r.is_zero() {
                continue; // cannot clear this coordinate; v is not a member
            }
            if !q.is_zero() {
                for (c, x) in self.hnf.row(i) {
                    w[*c] -= &q * x;
                }
            }
            coeffs[i] = q;
        }
        Ok((w, coeffs))
    }

    /// If `v` lies in the lattice, coefficients over the *original* relation
    /// rows witnessing it: `sum coeffs[i] * relations[i] == v`.
    pub fn member_certificate(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let (rest, hcoeffs) = self.reduce_with_coeffs(v)?;
        if !rest.iter().all(|x| x.is_zero()) {
            return Ok(None);
        }
        // v = hcoeffs * H = hcoeffs * U * A
        let coeffs = self.hnf_u.vec_mul(&hcoeffs);
        Ok(Some(coeffs))
    }

    /// If `v` is *not* in the lattice, a separating functional: a column
    /// vector `c` and modulus `m` with `row * c ≡ 0 (mod m)` for every
    /// relation row but `v * c ≠ 0 (mod m)`. Modulus 0 means equality in Z.
    pub fn separating_certificate(&self, v: &[BigInt]) -> Result<Option<(Vec<BigInt>, BigInt)>> {
        if v.len() != self.num_generators {
            return Err(Error::Dimension("vector length".into()));
        }
        let w = self.smith.v.vec_mul_left(v);
        let rank = self.smith.invariants.len();
        for (j, wj) in w.iter().enumerate() {
            let modulus = if j < rank {
                self.smith.invariants[j].clone()
            } else {
                BigInt::zero()
            };
            let bad = if modulus.is_zero() {
                !wj.is_zero()
            } else {
                !(wj % &modulus).is_zero()
            };
            if bad {
                let col: Vec<BigInt> = (0..self.smith.v.rows())
                    .map(|i| self.smith.v.get(i, j))
                    .collect();
                return Ok(Some((col, modulus)));
            }
        }
        Ok(None)
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// "Z^r (+) Z/d1 (+) ..." display of the quotient group.
    pub fn structure_string(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" (+) ")
        }
    }
}

impl IntMatrix {
    /// `v * self` for a row vector `v` (alias of `vec_mul`, reads better at
    /// call sites using column data).
    pub fn vec_mul_left(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.vec_mul(v)
    }
}

/// Convenience: `Z^gens / rows`.
pub fn quotient_structure(num_generators: usize, relations: &IntMatrix) -> Result<QuotientStructure> {
    QuotientStructure::new(num_generators, relations)
}
