use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, BigInt)>;

/// Integer matrix with arbitrary-precision entries.
///
/// Storage is row-sparse; semantics are those of a dense `rows × cols`
/// matrix. The sparse form is canonical (sorted, no zeros), so structural
/// equality is matrix equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, BigInt::one())]).collect();
        IntMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Diagonal `rows × cols` matrix with the given leading diagonal.
    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        assert!(diag.len() <= rows.min(cols));
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            if !d.is_zero() {
                m.data[i].push((i, d.clone()));
            }
        }
        m
    }

    /// Build from dense rows of machine integers. `cols` is needed for the
    /// degenerate case of zero rows.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged row");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(j, v)| (j, BigInt::from(*v)))
                    .collect()
            })
            .collect();
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<BigInt>]) -> Self {
        assert_eq!(dense.len(), rows);
        let data = dense
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged row");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        IntMatrix { rows, cols, data }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut per_row: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); rows];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i},{j}) outside {rows}x{cols}");
            per_row[i].push((j, v));
        }
        let data = per_row.into_iter().map(normalize_row).collect();
        IntMatrix { rows, cols, data }
    }

    /// Build from sparse columns (sorted, zero-free).
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                data[*i].push((j, v.clone()));
            }
        }
        IntMatrix {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols, "({i},{j}) out of bounds");
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn column(&self, j: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                r.binary_search_by_key(&j, |(c, _)| *c)
                    .ok()
                    .map(|k| (i, r[k].1.clone()))
            })
            .collect()
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        if s.is_zero() {
            return IntMatrix::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * s)).collect())
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|r| r.iter().map(|(j, v)| v * &x[*j]).sum())
            .collect()
    }

    /// Apply to a sparse vector.
    pub fn mul_sparse(&self, x: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = BigInt::zero();
            let (mut p, mut q) = (0, 0);
            while p < row.len() && q < x.len() {
                match row[p].0.cmp(&x[q].0) {
                    std::cmp::Ordering::Less => p += 1,
                    std::cmp::Ordering::Greater => q += 1,
                    std::cmp::Ordering::Equal => {
                        acc += &row[p].1 * &x[q].1;
                        p += 1;
                        q += 1;
                    }
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        out
    }

    /// Kronecker product with row-major tensor basis: entry
    /// `(i1*r2 + i2, j1*c2 + j2) = a[i1][j1] * b[i2][j2]`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let (r2, c2) = other.shape();
        let mut data: Vec<SparseVec> = Vec::with_capacity(self.rows * r2);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, va) in ra {
                    for (jb, vb) in rb {
                        row.push((ja * c2 + jb, va * vb));
                    }
                }
                data.push(row);
            }
        }
        IntMatrix {
            rows: self.rows * r2,
            cols: self.cols * c2,
            data,
        }
    }

    pub fn hstack(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for (i, r) in b.data.iter().enumerate() {
                data[i].extend(r.iter().map(|(j, v)| (j + offset, v.clone())));
            }
            offset += b.cols;
        }
        IntMatrix {
            rows,
            cols: offset,
            data,
        }
    }

    pub fn vstack(blocks: &[&IntMatrix]) -> IntMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        IntMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows);
        let mut offset = 0;
        for b in blocks {
            for r in &b.data {
                data.push(r.iter().map(|(j, v)| (j + offset, v.clone())).collect());
            }
            offset += b.cols;
        }
        IntMatrix { rows, cols, data }
    }

    /// Keep the listed columns, in the listed order.
    pub fn select_columns(&self, keep: &[usize]) -> IntMatrix {
        let mut new_index = vec![usize::MAX; self.cols];
        for (k, &j) in keep.iter().enumerate() {
            new_index[j] = k;
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut row: SparseVec = r
                    .iter()
                    .filter(|(j, _)| new_index[*j] != usize::MAX)
                    .map(|(j, v)| (new_index[*j], v.clone()))
                    .collect();
                row.sort_by_key(|(j, _)| *j);
                row
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: keep.len(),
            data,
        }
    }

    pub fn select_rows(&self, keep: &[usize]) -> IntMatrix {
        let data = keep.iter().map(|&i| self.data[i].clone()).collect();
        IntMatrix {
            rows: keep.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reorder basis on both sides: `out[p_row[i]][p_col[j]] = self[i][j]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> IntMatrix {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        IntMatrix::from_triplets(
            self.rows,
            self.cols,
            self.triplets()
                .map(|(i, j, v)| (row_perm[i], col_perm[j], v.clone())),
        )
    }

    /// Largest absolute value of an entry.
    pub fn max_abs(&self) -> BigInt {
        self.triplets()
            .map(|(_, _, v)| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    fn combine(&self, other: &IntMatrix, negate_other: bool) -> IntMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| merge_rows(a, b, negate_other))
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Determinant by fraction-free elimination (Bareiss). Square only.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = t / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

fn normalize_row(mut row: Vec<(usize, BigInt)>) -> SparseVec {
    row.sort_by_key(|(j, _)| *j);
    let mut out: SparseVec = Vec::with_capacity(row.len());
    for (j, v) in row {
        match out.last_mut() {
            Some((lj, lv)) if *lj == j => *lv += v,
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

fn merge_rows(a: &[(usize, BigInt)], b: &[(usize, BigInt)], negate_b: bool) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut p, mut q) = (0, 0);
    while p < a.len() || q < b.len() {
        let take_a = q >= b.len() || (p < a.len() && a[p].0 < b[q].0);
        let take_b = p >= a.len() || (q < b.len() && b[q].0 < a[p].0);
        if take_a {
            out.push(a[p].clone());
            p += 1;
        } else if take_b {
            let v = if negate_b { -&b[q].1 } else { b[q].1.clone() };
            out.push((b[q].0, v));
            q += 1;
        } else {
            let v = if negate_b {
                &a[p].1 - &b[q].1
            } else {
                &a[p].1 + &b[q].1
            };
            if !v.is_zero() {
                out.push((a[p].0, v));
            }
            p += 1;
            q += 1;
        }
    }
    out
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); rhs.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; rhs.cols];
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    if !mark[*j] {
                        mark[*j] = true;
                        touched.push(*j);
                    }
                    acc[*j] += a * b;
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                mark[j] = false;
                let v = std::mem::take(&mut acc[j]);
                if !v.is_zero() {
                    out.push((j, v));
                }
            }
            touched.clear();
            data.push(out);
        }
        IntMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }
}

impl<'a> Add<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.combine(rhs, true)
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        if self.rows * self.cols <= 144 {
            write!(f, " {self}")?;
        } else {
            write!(f, " ({} nonzeros)", self.nnz())?;
        }
        Ok(())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.to_dense().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows, rows[0].len())
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[vec![1, 2], vec![0, -1], vec![3, 0]]);
        let b = m(&[vec![2, 0, 1], vec![1, 1, 0]]);
        let ab = &a * &b;
        assert_eq!(ab, m(&[vec![4, 2, 1], vec![-1, -1, 0], vec![6, 0, 3]]));
        assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn cancellation_leaves_no_stored_zeros() {
        let a = m(&[vec![1, -1]]);
        let b = m(&[vec![1], vec![1]]);
        let ab = &a * &b;
        assert!(ab.is_zero());
        assert_eq!(ab, IntMatrix::zeros(1, 1));
        let d = &a - &a;
        assert_eq!(d.nnz(), 0);
    }

    #[test]
    fn kron_is_row_major() {
        let a = m(&[vec![1, 2]]);
        let b = m(&[vec![0, 1], vec![1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k, m(&[vec![0, 1, 0, 2], vec![1, 0, 2, 0]]));
    }

    #[test]
    fn determinant_small() {
        let a = m(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(a.determinant(), BigInt::from(18));
        assert_eq!(IntMatrix::identity(4).determinant(), BigInt::one());
        let s = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(s.determinant(), BigInt::from(-1));
    }

    #[test]
    fn stacking() {
        let a = IntMatrix::identity(2);
        let z = IntMatrix::zeros(2, 1);
        let h = IntMatrix::hstack(&[&a, &z]);
        assert_eq!(h.shape(), (2, 3));
        let v = IntMatrix::vstack(&[&a, &a]);
        assert_eq!(v.shape(), (4, 2));
        assert_eq!(v.get(3, 1), BigInt::one());
        let d = IntMatrix::block_diag(&[&a, &IntMatrix::identity(1)]);
        assert!(d.is_identity());
    }
}
