//! Integer scalars for the elimination kernels.
//!
//! Eliminations run first over `i64` with checked arithmetic; the first
//! overflow aborts the pass and the caller reruns it over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Magnitude bound for values admitted into the `i64` fast path. Leaves
/// headroom so that `gcd`/`abs` never touch `i64::MIN`.
const SMALL_BOUND: i64 = 1 << 62;

pub(crate) trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn s_is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn s_is_negative(&self) -> bool;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    fn checked_sub(&self, o: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    /// Nonnegative gcd.
    fn s_gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn s_is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn s_is_negative(&self) -> bool {
        *self < 0
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        i64::checked_mul(*self, *o).filter(|v| v.abs() < SMALL_BOUND)
    }
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        i64::checked_sub(*self, *o).filter(|v| v.abs() < SMALL_BOUND)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-*self)
    }
    fn s_gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i64().filter(|v| v.abs() < SMALL_BOUND)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn s_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn s_is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn s_gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) type Row<T> = Vec<(usize, T)>;

pub(crate) fn convert_rows<T: Scalar>(rows: &[Vec<(usize, BigInt)>]) -> Option<Vec<Row<T>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|(j, v)| T::from_big(v).map(|x| (*j, x)))
                .collect::<Option<Row<T>>>()
        })
        .collect()
}

/// `ca * a - cb * b` for sorted sparse rows.
pub(crate) fn axpy<T: Scalar>(ca: &T, a: &[(usize, T)], cb: &T, b: &[(usize, T)]) -> Option<Row<T>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut p, mut q) = (0, 0);
    while p < a.len() || q < b.len() {
        if q >= b.len() || (p < a.len() && a[p].0 < b[q].0) {
            out.push((a[p].0, ca.checked_mul(&a[p].1)?));
            p += 1;
        } else if p >= a.len() || b[q].0 < a[p].0 {
            out.push((b[q].0, cb.checked_mul(&b[q].1)?.checked_neg()?));
            q += 1;
        } else {
            let v = ca.checked_mul(&a[p].1)?.checked_sub(&cb.checked_mul(&b[q].1)?)?;
            if !v.s_is_zero() {
                out.push((a[p].0, v));
            }
            p += 1;
            q += 1;
        }
    }
    Some(out)
}

/// Divide a row by the gcd of its entries and make the leading entry positive.
pub(crate) fn make_primitive<T: Scalar>(row: &mut Row<T>) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.s_gcd(&first.1);
    for (_, v) in row.iter().skip(1) {
        if g.is_unit() {
            break;
        }
        g = g.s_gcd(v);
    }
    let flip = row[0].1.s_is_negative();
    if !g.is_unit() || flip {
        for (_, v) in row.iter_mut() {
            if !g.is_unit() {
                *v = v.div_exact(&g);
            }
            if flip {
                *v = v.checked_neg().expect("negation of bounded value");
            }
        }
    }
}

/// Run `f` over `i64` and fall back to `BigInt` on overflow.
pub(crate) fn with_fallback<R>(
    small: impl FnOnce() -> Option<R>,
    big: impl FnOnce() -> Option<R>,
) -> R {
    small()
        .or_else(big)
        .expect("arbitrary-precision pass cannot overflow")
}
