use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::int_matrix::IntMatrix;
use super::rank::rank;

/// Rational matrix stored as `numer / denom` with a common positive
/// denominator, reduced so that `gcd(content(numer), denom) = 1`. The
/// representation is canonical, so `==` is matrix equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    denom: BigInt,
    numer: IntMatrix,
}

impl RatMatrix {
    pub fn new(numer: IntMatrix, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        let mut m = RatMatrix { denom, numer };
        m.normalize();
        m
    }

    pub fn from_int(m: IntMatrix) -> Self {
        RatMatrix::new(m, BigInt::one())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix::from_int(IntMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix::from_int(IntMatrix::identity(n))
    }

    /// Entries given as `(row, col, value)`; duplicates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, BigRational)>,
    ) -> Self {
        let entries: Vec<_> = entries.into_iter().collect();
        let denom = entries
            .iter()
            .fold(BigInt::one(), |acc, (_, _, v)| acc.lcm(v.denom()));
        let ints = entries
            .into_iter()
            .map(|(i, j, v)| (i, j, v.numer() * (&denom / v.denom())));
        RatMatrix::new(IntMatrix::from_triplets(rows, cols, ints), denom)
    }

    fn normalize(&mut self) {
        if self.denom.is_negative() {
            self.denom = -&self.denom;
            self.numer = -&self.numer;
        }
        if self.numer.is_zero() {
            self.denom = BigInt::one();
            return;
        }
        let mut g = self.denom.clone();
        for (_, _, v) in self.numer.triplets() {
            if g.is_one() {
                break;
            }
            g = g.gcd(v);
        }
        if !g.is_one() {
            self.denom = &self.denom / &g;
            self.numer = IntMatrix::from_triplets(
                self.numer.rows(),
                self.numer.cols(),
                self.numer.triplets().map(|(i, j, v)| (i, j, v / &g)),
            );
        }
    }

    pub fn rows(&self) -> usize {
        self.numer.rows()
    }

    pub fn cols(&self) -> usize {
        self.numer.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.numer.shape()
    }

    pub fn numerator(&self) -> &IntMatrix {
        &self.numer
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.numer.get(i, j), self.denom.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.denom.is_one() && self.numer.is_identity()
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix {
            denom: self.denom.clone(),
            numer: self.numer.transpose(),
        }
    }

    pub fn rank(&self) -> usize {
        rank(&self.numer)
    }

    pub fn trace(&self) -> BigRational {
        assert!(self.numer.is_square());
        let t: BigInt = (0..self.rows()).map(|i| self.numer.get(i, i)).sum();
        BigRational::new(t, self.denom.clone())
    }

    pub fn scale(&self, s: &BigRational) -> RatMatrix {
        RatMatrix::new(self.numer.scale(s.numer()), &self.denom * s.denom())
    }

    /// `self − λ·I`.
    pub fn shift(&self, lambda: &BigRational) -> RatMatrix {
        self - &RatMatrix::identity(self.rows()).scale(lambda)
    }

    /// Apply to a rational vector.
    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols());
        (0..self.rows())
            .map(|i| {
                let s: BigRational = self
                    .numer
                    .row(i)
                    .iter()
                    .map(|(j, v)| &x[*j] * v)
                    .fold(BigRational::zero(), |a, b| a + b);
                s / &self.denom
            })
            .collect()
    }
}

impl<'a> Mul<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        RatMatrix::new(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
    }
}

impl<'a> Add<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        let l = self.denom.lcm(&rhs.denom);
        let a = self.numer.scale(&(&l / &self.denom));
        let b = rhs.numer.scale(&(&l / &rhs.denom));
        RatMatrix::new(&a + &b, l)
    }
}

impl<'a> Sub<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self + &(-rhs)
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            denom: self.denom.clone(),
            numer: -&self.numer,
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix(1/{}) {:?}", self.denom, self.numer)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normal_form_is_canonical() {
        let a = RatMatrix::new(IntMatrix::from_rows(&[vec![2, 4]], 2), BigInt::from(-6));
        let b = RatMatrix::from_triplets(1, 2, [(0, 0, q(-1, 3)), (0, 1, q(-2, 3))]);
        assert_eq!(a, b);
        assert_eq!(a.denominator(), &BigInt::from(3));
        assert_eq!(RatMatrix::new(IntMatrix::zeros(2, 2), 7.into()), RatMatrix::zeros(2, 2));
    }

    #[test]
    fn arithmetic() {
        let half = RatMatrix::identity(2).scale(&q(1, 2));
        assert_eq!(&half + &half, RatMatrix::identity(2));
        assert!((&half - &half).is_zero());
        assert_eq!((&half * &half).trace(), q(1, 2));
        let t = RatMatrix::from_int(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]], 2));
        assert!((&(&t * &t) - &RatMatrix::identity(2)).is_zero());
        assert_eq!(t.shift(&q(1, 1)).rank(), 1);
        assert_eq!(half.mul_vec(&[q(1, 1), q(3, 1)]), vec![q(1, 2), q(3, 2)]);
    }
}
