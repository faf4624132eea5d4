use num_bigint::BigInt;

use super::int_matrix::{IntMatrix, SparseVec};
use super::scalar::{axpy, convert_rows, make_primitive, with_fallback, Row, Scalar};

/// Rank over ℚ of an integer matrix.
///
/// Fraction-free sparse row echelon form: each row is reduced by the pivot
/// rows at its leading column and kept primitive, so no rationals appear.
pub fn rank(m: &IntMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    // Eliminate along the shorter dimension.
    let rows: Vec<SparseVec> = if m.cols() <= m.rows() {
        (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
    } else {
        m.columns()
    };
    let width = m.rows().min(m.cols());
    rank_of_rows(rows, width)
}

/// Rank of a family of sparse integer vectors of length `width`.
pub fn rank_of_vectors(vectors: Vec<SparseVec>, width: usize) -> usize {
    rank_of_rows(vectors, width)
}

fn rank_of_rows(mut rows: Vec<SparseVec>, width: usize) -> usize {
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(Vec::len);
    with_fallback(
        || {
            let small = convert_rows::<i64>(&rows)?;
            echelon_rank(small, width)
        },
        || {
            let big = convert_rows::<BigInt>(&rows)?;
            echelon_rank(big, width)
        },
    )
}

fn echelon_rank<T: Scalar>(rows: Vec<Row<T>>, width: usize) -> Option<usize> {
    let mut pivots: Vec<Option<Row<T>>> = vec![None; width];
    let mut rank = 0;
    for mut v in rows {
        make_primitive(&mut v);
        while let Some((lead, lv)) = v.first().cloned() {
            match &pivots[lead] {
                Some(p) => {
                    let pv = &p[0].1;
                    let g = pv.s_gcd(&lv);
                    let a = pv.div_exact(&g);
                    let b = lv.div_exact(&g);
                    v = axpy(&a, &v, &b, p)?;
                    make_primitive(&mut v);
                }
                None => {
                    pivots[lead] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
        if rank == width {
            break;
        }
    }
    Some(rank)
}
