use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::int_matrix::IntMatrix;
use super::scalar::{axpy, convert_rows, with_fallback, Row, Scalar};

/// A Smith decomposition `U·A·V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// The nonzero diagonal entries `d_1 | d_2 | …`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .take_while(|v| !v.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Dense elimination with smallest-nonzero pivoting; suitable for the
/// moderate sizes where transforms are needed (kernels, lattice solves).
/// For invariant factors alone use [`invariant_factors`], which is sparse.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let mut w = DenseSmith::new(a.to_dense(), a.rows(), a.cols(), true);
    w.run();
    let (rows, cols) = a.shape();
    Snf {
        u: IntMatrix::from_dense(rows, rows, &w.u.expect("tracked")),
        d: IntMatrix::from_dense(rows, cols, &w.a),
        v: IntMatrix::from_dense(cols, cols, &w.v.expect("tracked")),
    }
}

/// Nonzero invariant factors of `a`, in divisibility order.
///
/// Unit pivots are eliminated sparsely first (Markowitz-style choice of the
/// cheapest ±1 entry); whatever remains is reduced densely.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    if a.is_zero() {
        return Vec::new();
    }
    let rows: Vec<Vec<(usize, BigInt)>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    let (units, rest) = with_fallback(
        || unit_elimination::<i64>(convert_rows(&rows)?, a.cols()),
        || unit_elimination::<BigInt>(convert_rows(&rows)?, a.cols()),
    );
    let mut out = vec![BigInt::from(1); units];
    if !rest.is_empty() {
        let cols: BTreeSet<usize> = rest.iter().flat_map(|r| r.iter().map(|(j, _)| *j)).collect();
        let index: std::collections::HashMap<usize, usize> =
            cols.iter().enumerate().map(|(k, j)| (*j, k)).collect();
        let mut dense = vec![vec![BigInt::zero(); cols.len()]; rest.len()];
        for (i, r) in rest.iter().enumerate() {
            for (j, v) in r {
                dense[i][index[j]] = v.clone();
            }
        }
        let (nr, nc) = (rest.len(), cols.len());
        let mut w = DenseSmith::new(dense, nr, nc, false);
        w.run();
        out.extend(
            (0..nr.min(nc))
                .map(|i| w.a[i][i].clone())
                .take_while(|v| !v.is_zero()),
        );
    }
    out
}

/// Eliminate ±1 pivots sparsely. Returns the number of unit pivots and the
/// remaining nonzero rows (as BigInt).
fn unit_elimination<T: Scalar>(
    mut rows: Vec<Row<T>>,
    ncols: usize,
) -> Option<(usize, Vec<Vec<(usize, BigInt)>>)> {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_rows[*j].insert(i);
        }
    }
    let mut active: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut units = 0;
    loop {
        // Cheapest unit pivot by Markowitz cost.
        let mut best: Option<(usize, usize, usize)> = None;
        'scan: for (i, r) in rows.iter().enumerate() {
            if !active[i] {
                continue;
            }
            for (j, v) in r {
                if v.is_unit() {
                    let cost = (r.len() - 1) * (col_rows[*j].len() - 1);
                    if best.map_or(true, |(c, _, _)| cost < c) {
                        best = Some((cost, i, *j));
                        if cost == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((_, p, c)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[p]);
        let pv = pivot_row
            .iter()
            .find(|(j, _)| *j == c)
            .map(|(_, v)| v.clone())
            .expect("pivot present");
        let targets: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != p).collect();
        for i in targets {
            let aic = rows[i]
                .iter()
                .find(|(j, _)| *j == c)
                .map(|(_, v)| v.clone())
                .expect("column index consistent");
            // row_i <- row_i - (a_ic * p_c) * pivot, using p_c^{-1} = p_c.
            let factor = aic.checked_mul(&pv)?;
            let one = T::from_big(&BigInt::from(1)).expect("1 fits");
            let new_row = axpy(&one, &rows[i], &factor, &pivot_row)?;
            for (j, _) in &rows[i] {
                col_rows[*j].remove(&i);
            }
            for (j, _) in &new_row {
                col_rows[*j].insert(i);
            }
            active[i] = !new_row.is_empty();
            rows[i] = new_row;
        }
        for (j, _) in &pivot_row {
            col_rows[*j].remove(&p);
        }
        active[p] = false;
        units += 1;
    }
    let rest = rows
        .into_iter()
        .zip(active)
        .filter(|(r, a)| *a && !r.is_empty())
        .map(|(r, _)| r.into_iter().map(|(j, v)| (j, v.to_big())).collect())
        .collect();
    Some((units, rest))
}

pub(crate) struct DenseSmith {
    pub a: Vec<Vec<BigInt>>,
    pub u: Option<Vec<Vec<BigInt>>>,
    pub v: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

impl DenseSmith {
    pub fn new(a: Vec<Vec<BigInt>>, rows: usize, cols: usize, track: bool) -> Self {
        let ident = |n: usize| -> Vec<Vec<BigInt>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| BigInt::from((i == j) as i64))
                        .collect()
                })
                .collect()
        };
        DenseSmith {
            a,
            u: track.then(|| ident(rows)),
            v: track.then(|| ident(cols)),
            rows,
            cols,
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            self.a.swap(i, k);
            if let Some(u) = &mut self.u {
                u.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for r in &mut self.a {
                r.swap(j, k);
            }
            if let Some(v) = &mut self.v {
                for r in v.iter_mut() {
                    r.swap(j, k);
                }
            }
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt, from: usize) {
        let (ri, rt) = two_rows(&mut self.a, i, t);
        for j in from..ri.len() {
            if !rt[j].is_zero() {
                ri[j] -= q * &rt[j];
            }
        }
        if let Some(u) = &mut self.u {
            let (ui, ut) = two_rows(u, i, t);
            for j in 0..ui.len() {
                if !ut[j].is_zero() {
                    ui[j] -= q * &ut[j];
                }
            }
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt, from: usize) {
        for r in self.a.iter_mut().skip(from) {
            if !r[t].is_zero() {
                let d = q * &r[t];
                r[j] -= d;
            }
        }
        if let Some(v) = &mut self.v {
            for r in v.iter_mut() {
                if !r[t].is_zero() {
                    let d = q * &r[t];
                    r[j] -= d;
                }
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in &mut self.a[t] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[t] {
                *x = -&*x;
            }
        }
    }

    pub fn run(&mut self) {
        let (m, n) = (self.rows, self.cols);
        for t in 0..m.min(n) {
            // Smallest nonzero entry of the trailing block.
            let mut best: Option<(BigInt, usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &self.a[i][j];
                    if !x.is_zero() {
                        let ax = x.abs();
                        if best.as_ref().map_or(true, |(b, _, _)| &ax < b) {
                            best = Some((ax, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { return };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_sub(i, t, &q, t);
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_sub(j, t, &q, t);
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // Bring the smallest remainder in row/column t to the pivot.
                    let mut best = (self.a[t][t].abs(), t, t);
                    for i in t + 1..m {
                        let x = self.a[i][t].abs();
                        if !x.is_zero() && x < best.0 {
                            best = (x, i, t);
                        }
                    }
                    for j in t + 1..n {
                        let x = self.a[t][j].abs();
                        if !x.is_zero() && x < best.0 {
                            best = (x, t, j);
                        }
                    }
                    self.swap_rows(t, best.1);
                    self.swap_cols(t, best.2);
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.a[i][j].is_zero() && !(&self.a[i][j] % &p).is_zero())
                });
                match bad {
                    Some(i) => {
                        // row_t += row_i
                        self.row_sub(t, i, &BigInt::from(-1), t);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn two_rows<T>(m: &mut [Vec<T>], i: usize, t: usize) -> (&mut Vec<T>, &Vec<T>) {
    assert_ne!(i, t);
    if i < t {
        let (lo, hi) = m.split_at_mut(t);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&mut hi[0], &lo[t])
    }
}
