use num_rational::BigRational;

use super::rat_matrix::RatMatrix;
use crate::error::{Error, Result};

/// Lagrange projectors `P_λ = ∏_{μ≠λ} (T − μI)/(λ − μ)` of an operator
/// annihilated by `∏_λ (T − λI)`, returned in the order of `eigenvalues`.
pub fn spectral_projectors(t: &RatMatrix, eigenvalues: &[BigRational]) -> Result<Vec<RatMatrix>> {
    if !t.numerator().is_square() {
        return Err(Error::DegreeMismatch("operator must be square".into()));
    }
    for (i, a) in eigenvalues.iter().enumerate() {
        if eigenvalues[..i].contains(a) {
            return Err(Error::BadParams(format!("repeated eigenvalue {a}")));
        }
    }
    let n = t.rows();
    let shifted: Vec<RatMatrix> = eigenvalues.iter().map(|l| t.shift(l)).collect();
    let mut annihilator = RatMatrix::identity(n);
    for s in &shifted {
        annihilator = &annihilator * s;
    }
    if !annihilator.is_zero() {
        return Err(Error::NotAnnihilated);
    }
    let mut out = Vec::with_capacity(eigenvalues.len());
    for (i, lambda) in eigenvalues.iter().enumerate() {
        let mut p = RatMatrix::identity(n);
        for (j, mu) in eigenvalues.iter().enumerate() {
            if i != j {
                let factor = shifted[j].scale(&(BigRational::from_integer(1.into()) / (lambda - mu)));
                p = &p * &factor;
            }
        }
        out.push(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn diagonal_operator() {
        let t = RatMatrix::from_int(IntMatrix::from_rows(&[vec![0, 0], vec![0, 2]], 2));
        let p = spectral_projectors(&t, &[q(0), q(2)]).unwrap();
        assert_eq!(p[0], RatMatrix::from_int(IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]], 2)));
        assert_eq!(p[1], RatMatrix::from_int(IntMatrix::from_rows(&[vec![0, 0], vec![0, 1]], 2)));
    }

    #[test]
    fn zero_operator_single_eigenvalue() {
        let p = spectral_projectors(&RatMatrix::zeros(3, 3), &[q(0)]).unwrap();
        assert_eq!(p, vec![RatMatrix::identity(3)]);
    }

    #[test]
    fn id_minus_swap_on_regular_representation() {
        // Basis (id, τ); left multiplication by id − τ.
        let t = RatMatrix::from_int(IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]], 2));
        let p = spectral_projectors(&t, &[q(0), q(2)]).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let sym = RatMatrix::from_int(IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]], 2)).scale(&half);
        let alt = RatMatrix::from_int(IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]], 2)).scale(&half);
        assert_eq!(p, vec![sym, alt]);
    }

    #[test]
    fn wrong_eigenvalues_are_rejected() {
        let t = RatMatrix::identity(2);
        assert_eq!(spectral_projectors(&t, &[q(0)]), Err(Error::NotAnnihilated));
    }
}
