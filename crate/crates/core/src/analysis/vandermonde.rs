//! Generalized (confluent) Vandermonde matrices built from `n^c λ_j^n`.

use alloc::vec::Vec;

use super::{check_lambdas, AnalysisError};
use crate::exact::{factorial, Matrix, Scalar};

/// `n!! = n! (n-1)! .. 1!`, with `0!! = 1`.
pub fn superfactorial(n: u32) -> Scalar {
    (1..=n).map(|k| Scalar::from(factorial(k))).product()
}

/// Rows `n = r .. r+s-1`, columns `n^c λ_j^n` for `c < s_j`, grouped by `j`.
pub fn vandermonde_matrix(lambdas: &[Scalar], sizes: &[u32], r: u32) -> Result<Matrix, AnalysisError> {
    check_lambdas(&lambdas.iter().collect::<Vec<_>>())?;
    let cols: Vec<(usize, u32)> = sizes.iter().enumerate().flat_map(|(j, &s)| (0..s).map(move |c| (j, c))).collect();
    let n = cols.len();
    Ok(Matrix::from_fn(n, n, |row, col| {
        let x = i64::from(r) + row as i64;
        let (j, c) = cols[col];
        Scalar::int(x).pow(i64::from(c)) * lambdas[j].pow(x)
    }))
}

/// `∏_j (s_j-1)!! λ_j^{s_j(s_j+2r-1)/2} ∏_{i<j} (λ_j-λ_i)^{s_i s_j}`.
pub fn vandermonde_closed_form(lambdas: &[Scalar], sizes: &[u32], r: u32) -> Result<Scalar, AnalysisError> {
    check_lambdas(&lambdas.iter().collect::<Vec<_>>())?;
    let mut out = Scalar::ONE;
    for (j, (l, &s)) in lambdas.iter().zip(sizes).enumerate() {
        if s > 0 {
            out *= &superfactorial(s - 1);
        }
        let s = i64::from(s);
        out *= &l.pow(s * (s + 2 * i64::from(r) - 1) / 2);
        for i in 0..j {
            out *= &(l - &lambdas[i]).pow(i64::from(sizes[i]) * s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(vandermonde_matrix(&ints(&[3]), &[1], 2).unwrap(), Matrix::from_ints(&[&[9]]));
        assert_eq!(vandermonde_matrix(&ints(&[2]), &[2], 0).unwrap(), Matrix::from_ints(&[&[1, 0], &[2, 2]]));
        assert_eq!(vandermonde_matrix(&ints(&[1, 2]), &[1, 1], 1).unwrap(), Matrix::from_ints(&[&[1, 2], &[1, 4]]));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(vandermonde_closed_form(&ints(&[2]), &[2], 0).unwrap(), Scalar::int(2));
        assert_eq!(vandermonde_closed_form(&ints(&[1, 2]), &[1, 1], 0).unwrap(), Scalar::ONE);
        assert_eq!(vandermonde_closed_form(&ints(&[1, 2]), &[1, 2], 0).unwrap(), Scalar::int(2));
        assert_eq!(vandermonde_matrix(&ints(&[1, 2]), &[1, 2], 0).unwrap(), Matrix::from_ints(&[&[1, 1, 0], &[1, 2, 2], &[1, 4, 8]]));
    }

    #[test]
    fn superfactorials() {
        let got: Vec<Scalar> = (0..5).map(superfactorial).collect();
        assert_eq!(got, ints(&[1, 1, 2, 12, 288]));
    }

    #[test]
    fn rejects_bad_lambdas() {
        assert_eq!(vandermonde_matrix(&ints(&[2, 2]), &[1, 1], 0), Err(AnalysisError::RepeatedLambda(0, 1)));
        assert_eq!(vandermonde_closed_form(&ints(&[1, 0]), &[1, 1], 0), Err(AnalysisError::ZeroLambda(1)));
    }

    proptest! {
        #[test]
        fn closed_form_is_determinant(
            ls in proptest::collection::btree_set((-4i64..=4).prop_filter("nonzero", |x| *x != 0), 1..=3),
            sizes in proptest::collection::vec(1u32..=3, 3),
            r in 0u32..=2,
            imag in any::<bool>(),
        ) {
            let ls: Vec<Scalar> = ls.into_iter().map(|x| if imag { Scalar::gaussian(x, 1) } else { Scalar::int(x) }).collect();
            let sizes = &sizes[..ls.len()];
            let det = vandermonde_matrix(&ls, sizes, r).unwrap().det().unwrap();
            prop_assert_eq!(det, vandermonde_closed_form(&ls, sizes, r).unwrap());
        }
    }

    #[test]
    fn empty_sizes() {
        assert_eq!(vandermonde_closed_form(&ints(&[5]), &[0], 1).unwrap(), Scalar::ONE);
        assert_eq!(vandermonde_matrix(&ints(&[5]), &[0], 1).unwrap().rows(), 0);
    }
}
