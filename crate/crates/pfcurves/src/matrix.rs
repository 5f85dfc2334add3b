//! Dense exact matrices over the rationals, with rank, kernel and
//! determinant by exact Gaussian elimination, and Pfaffians of
//! skew-symmetric matrices.
//!
//! Everything here is the oracle layer: the geometry modules reduce their
//! claims to rank/kernel/Pfaffian computations checked against these
//! routines.

use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Row-major dense matrix over the rationals.
///
/// Serializes to a JSON array of rows, each entry in the `"p/q"` string
/// format of [`Rat`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl MatQ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatQ { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatQ::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != c {
                return Err(Error::LengthMismatch { expected: c, got: row.len() });
            }
        }
        Ok(MatQ { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from integer literals, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        MatQ::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect(),
        )
        .expect("ragged integer literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatQ {
        let mut t = MatQ::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &MatQ) -> Result<MatQ> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = MatQ::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == -&self[(j, i)])
            })
    }

    /// Reduced row echelon form, returning the pivot columns.
    fn rref(&self) -> (MatQ, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..a.cols {
            if pr >= a.rows {
                break;
            }
            let Some(piv) = (pr..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(piv, pr);
            let inv = a[(pr, col)].recip();
            for j in col..a.cols {
                let v = &a[(pr, j)] * &inv;
                a[(pr, j)] = v;
            }
            for r in 0..a.rows {
                if r == pr || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in col..a.cols {
                    let v = &a[(r, j)] - &(&f * &a[(pr, j)]);
                    a[(r, j)] = v;
                }
            }
            pivots.push(col);
            pr += 1;
        }
        (a, pivots)
    }

    /// Rank over the rationals.
    ///
    /// Rows are cleared of denominators and reduced by fraction-free
    /// (Bareiss) elimination over the integers, which keeps intermediate
    /// entries at minor size without per-operation gcds.
    pub fn rank(&self) -> usize {
        use num::bigint::BigInt;
        use num::{Integer, One, Zero};

        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut lcm = BigInt::one();
                for e in row {
                    lcm = lcm.lcm(e.denom());
                }
                row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect()
            })
            .collect();

        let mut prev = BigInt::one();
        let mut pr = 0;
        for col in 0..self.cols {
            if pr >= self.rows {
                break;
            }
            let Some(piv) = (pr..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(piv, pr);
            for r in pr + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &a[pr][col] * &a[r][c] - &a[r][col] * &a[pr][c];
                    a[r][c] = num / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[pr][col].clone();
            pr += 1;
        }
        pr
    }

    /// Basis of the right kernel: every returned `v` satisfies `M v = 0`
    /// exactly, and the basis has `cols - rank` elements.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[fc] = Rat::one();
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(pr, fc)];
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant by exact Gaussian elimination with row swaps.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch { expected: self.rows, got: self.cols });
        }
        let mut a = self.clone();
        let n = a.rows;
        let mut det = Rat::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(Rat::zero());
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = -det;
            }
            det = det * &a[(col, col)];
            let inv = a[(col, col)].recip();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] * &inv;
                for j in col..n {
                    let v = &a[(r, j)] - &(&f * &a[(col, j)]);
                    a[(r, j)] = v;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for MatQ {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatQ {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for MatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Serialize for MatQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatQ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rat>>::deserialize(deserializer)?;
        MatQ::from_rows(rows).map_err(de::Error::custom)
    }
}

/// Skew-symmetric matrix over the rationals; construction checks the
/// skew-symmetry invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SkewMatQ {
    mat: MatQ,
}

impl SkewMatQ {
    pub fn new(mat: MatQ) -> Result<Self> {
        if !mat.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        Ok(SkewMatQ { mat })
    }

    /// Skew matrix from its strictly-upper-triangular entries, listed
    /// row by row: `(a01, a02, ..., a0m, a12, ...)`.
    pub fn from_upper(size: usize, upper: &[Rat]) -> Result<Self> {
        let expected = size * size.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::LengthMismatch { expected, got: upper.len() });
        }
        let mut mat = MatQ::zero(size, size);
        let mut k = 0;
        for i in 0..size {
            for j in i + 1..size {
                mat[(i, j)] = upper[k].clone();
                mat[(j, i)] = -&upper[k];
                k += 1;
            }
        }
        Ok(SkewMatQ { mat })
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &MatQ {
        &self.mat
    }

    /// The Pfaffian, by expansion along the first remaining row.
    ///
    /// Zero for odd size, 1 for the empty matrix. Satisfies
    /// `pf(A)^2 = det(A)` and `pf(B A B^t) = det(B) pf(A)`.
    pub fn pfaffian(&self) -> Rat {
        let idx: Vec<usize> = (0..self.size()).collect();
        pf_on_indices(&self.mat, &idx)
    }

    /// Pfaffian of the submatrix with the listed rows *and* columns
    /// removed. Removing everything leaves the empty matrix, whose
    /// Pfaffian is 1.
    pub fn pfaffian_minor(&self, removed: &[usize]) -> Result<Rat> {
        let n = self.size();
        for &r in removed {
            if r >= n {
                return Err(Error::IndexOutOfRange { index: r, size: n });
            }
        }
        let idx: Vec<usize> = (0..n).filter(|i| !removed.contains(i)).collect();
        Ok(pf_on_indices(&self.mat, &idx))
    }

    /// The Pfaffian as the signed sum over all perfect pairings.
    ///
    /// (2k-1)!! terms, so only sensible at desk scale; kept as an
    /// independent cross-check of the expansion above.
    pub fn pfaffian_by_pairings(&self) -> Rat {
        let m = self.size();
        if m % 2 == 1 {
            return Rat::zero();
        }
        let mut total = Rat::zero();
        for pairing in perfect_pairings(m) {
            let mut term = pairing_sign(&pairing);
            for &(i, j) in &pairing {
                term = term * &self.mat[(i, j)];
            }
            total += term;
        }
        total
    }
}

fn pf_on_indices(m: &MatQ, idx: &[usize]) -> Rat {
    if idx.is_empty() {
        return Rat::one();
    }
    if idx.len() % 2 == 1 {
        return Rat::zero();
    }
    if idx.len() == 2 {
        return m[(idx[0], idx[1])].clone();
    }
    let i0 = idx[0];
    let mut acc = Rat::zero();
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let a = &m[(i0, j)];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> =
            idx.iter().copied().filter(|&k| k != i0 && k != j).collect();
        let term = a * &pf_on_indices(m, &rest);
        if pos % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// All perfect pairings of `{0, ..., m-1}` as sorted pair lists, each pair
/// `(i, j)` with `i < j` and pairs ordered by first element.
pub fn perfect_pairings(m: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let remaining: Vec<usize> = (0..m).collect();
    fn rec(remaining: &[usize], current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if remaining.is_empty() {
            out.push(current.clone());
            return;
        }
        let i = remaining[0];
        for pos in 1..remaining.len() {
            let j = remaining[pos];
            let rest: Vec<usize> =
                remaining[1..].iter().copied().filter(|&k| k != j).collect();
            current.push((i, j));
            rec(&rest, current, out);
            current.pop();
        }
    }
    if m % 2 == 0 {
        rec(&remaining, &mut current, &mut out);
    }
    out
}

/// Sign of the permutation `(i1 j1 i2 j2 ...)` underlying a pairing.
pub fn pairing_sign(pairing: &[(usize, usize)]) -> Rat {
    let flat: Vec<usize> = pairing.iter().flat_map(|&(i, j)| [i, j]).collect();
    let mut inversions = 0usize;
    for a in 0..flat.len() {
        for b in a + 1..flat.len() {
            if flat[a] > flat[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        Rat::one()
    } else {
        Rat::from_int(-1)
    }
}
