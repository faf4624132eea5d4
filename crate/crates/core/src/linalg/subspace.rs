//! ℚ-subspaces of `ℚ^width` held as integer spanning rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int_matrix::{IntMatrix, SparseVec};
use super::scalar::{axpy, make_primitive};

/// Fully reduced row echelon form over ℚ, kept integral: every row is
/// primitive with a positive pivot, and each pivot column is zero in all
/// other rows. Returns the rows sorted by pivot column.
pub fn rref(vectors: Vec<SparseVec>, width: usize) -> Vec<SparseVec> {
    let mut pivots: Vec<Option<SparseVec>> = vec![None; width];
    let mut vectors = vectors;
    vectors.retain(|v| !v.is_empty());
    vectors.sort_by_key(Vec::len);
    for mut v in vectors {
        make_primitive(&mut v);
        while let Some((lead, lv)) = v.first().cloned() {
            match &pivots[lead] {
                Some(p) => {
                    v = eliminate(&v, &lv, p);
                    make_primitive(&mut v);
                }
                None => {
                    pivots[lead] = Some(v);
                    break;
                }
            }
        }
    }
    let mut rows: Vec<SparseVec> = pivots.into_iter().flatten().collect();
    // Back substitution, bottom to top.
    for k in (0..rows.len()).rev() {
        let pc = rows[k][0].0;
        for i in 0..k {
            if let Ok(pos) = rows[i].binary_search_by_key(&pc, |e| e.0) {
                let x = rows[i][pos].1.clone();
                let mut r = eliminate(&rows[i], &x, &rows[k]);
                make_primitive(&mut r);
                rows[i] = r;
            }
        }
    }
    rows
}

/// `v` with the component along `p`'s pivot removed, where `x` is the entry
/// of `v` in that column.
fn eliminate(v: &SparseVec, x: &BigInt, p: &SparseVec) -> SparseVec {
    let pv = &p[0].1;
    let g = pv.gcd(x);
    axpy(&(pv / &g), v, &(x / &g), p).expect("BigInt arithmetic is exact")
}

/// A basis of the ℚ-span of `vectors`.
pub fn span_basis(vectors: Vec<SparseVec>, width: usize) -> Vec<SparseVec> {
    rref(vectors, width)
}

/// Integer-primitive basis of the kernel of `m` over ℚ, one vector per free
/// column in increasing column order.
pub fn kernel_q(m: &IntMatrix) -> Vec<SparseVec> {
    let n = m.cols();
    let rows = rref((0..m.rows()).map(|i| m.row(i).to_vec()).collect(), n);
    let mut is_pivot = vec![false; n];
    for r in &rows {
        is_pivot[r[0].0] = true;
    }
    let mut out = Vec::new();
    for f in (0..n).filter(|&j| !is_pivot[j]) {
        // x_f = L, x_p = −L·r[f]/r[p] with L the lcm of the pivots involved.
        let involved: Vec<(usize, BigInt, BigInt)> = rows
            .iter()
            .filter_map(|r| {
                r.binary_search_by_key(&f, |e| e.0)
                    .ok()
                    .map(|pos| (r[0].0, r[0].1.clone(), r[pos].1.clone()))
            })
            .collect();
        let l = involved.iter().fold(BigInt::one(), |acc, (_, p, _)| acc.lcm(p));
        let mut v: SparseVec = involved
            .iter()
            .map(|(c, p, x)| (*c, -(x * (&l / p))))
            .collect();
        v.push((f, l));
        v.sort_by_key(|e| e.0);
        make_primitive(&mut v);
        out.push(v);
    }
    out
}

/// Coordinates of `v` against an rref basis (read at pivot positions), or
/// `None` when `v` is not in the span. Coordinates are returned scaled by a
/// common positive denominator: `(numerators, denominator)`.
pub fn coordinates(basis: &[SparseVec], v: &SparseVec) -> Option<(Vec<BigInt>, BigInt)> {
    let denom = basis.iter().fold(BigInt::one(), |acc, r| acc.lcm(&r[0].1));
    let mut coeffs = Vec::with_capacity(basis.len());
    let mut residual: SparseVec = v.iter().map(|(i, x)| (*i, x * &denom)).collect();
    for r in basis {
        let (pc, pv) = &r[0];
        let x = match residual.binary_search_by_key(pc, |e| e.0) {
            Ok(pos) => residual[pos].1.clone(),
            Err(_) => BigInt::zero(),
        };
        let c = &x / pv;
        debug_assert!((&x % pv).is_zero());
        if !c.is_zero() {
            residual = axpy(&BigInt::one(), &residual, &c, r).expect("exact");
        }
        coeffs.push(c);
    }
    residual.is_empty().then_some((coeffs, denom))
}

pub fn is_in_span(basis: &[SparseVec], v: &SparseVec) -> bool {
    coordinates(basis, v).is_some()
}
