//! Finite-difference operators in the `d_i` and local-finiteness probes.

use alloc::vec::Vec;

use super::AnalysisError;
use crate::exact::{binomial, EchelonBasis, LinComb, Scalar};
use crate::liealg::Generator;
use crate::tensor::{TensorElement, TensorModule};

/// `Σ_{i=0}^r binom(r,i) (-1)^{r-i} i^j`; zero for `j < r`, `r!` for `j = r`.
pub fn finite_difference(r: u32, j: u32) -> Scalar {
    (0..=r)
        .map(|i| {
            let sign = if (r - i).is_multiple_of(2) { Scalar::ONE } else { -Scalar::ONE };
            sign * Scalar::from(binomial(i64::from(r), i64::from(i))) * Scalar::int(i64::from(i)).pow(i64::from(j))
        })
        .sum()
}

/// `ω_{l,j}^{(r)} g = Σ_{i=0}^r binom(r,i) (-1)^{r-i} d_{l-j-i} d_{j+i} g`.
pub fn omega_operator(module: &TensorModule, l: i64, j: i64, r: u32, g: &TensorElement) -> Result<TensorElement, AnalysisError> {
    let mut out = LinComb::zero();
    for i in 0..=i64::from(r) {
        let coeff = Scalar::from(binomial(i64::from(r), i));
        let coeff = if (i64::from(r) - i) % 2 == 0 { coeff } else { -coeff };
        let inner = module.act(Generator::d(j + i), g)?;
        out.add_scaled(&module.act(Generator::d(l - j - i), &inner)?, &coeff);
    }
    Ok(out)
}

/// `(λ_1^{l-j-r} λ_2^j + (-1)^r λ_2^{l-j-r} λ_1^j)(λ_2 - λ_1)^r`, the
/// coefficient of `s_1 s_2` in `ω_{l,j}^{(r)}(1 ⊗ 1)` over the trivial module.
pub fn omega_s1s2_closed_form(l1: &Scalar, l2: &Scalar, l: i64, j: i64, r: u32) -> Scalar {
    let r = i64::from(r);
    let sign = if r % 2 == 0 { Scalar::ONE } else { -Scalar::ONE };
    (l1.pow(l - j - r) * l2.pow(j) + sign * l2.pow(l - j - r) * l1.pow(j)) * (l2 - l1).pow(r)
}

/// Ranks of `span{g, d_i g, .., d_i^n g}` for `n = 0..=depth`.
pub fn local_finiteness_probe(module: &TensorModule, g: &TensorElement, i: i64, depth: u32) -> Result<Vec<usize>, AnalysisError> {
    let mut span = EchelonBasis::new();
    let mut cur = g.clone();
    let mut ranks = Vec::with_capacity(depth as usize + 1);
    for n in 0..=depth {
        span.insert(&cur);
        ranks.push(span.dim());
        if n < depth {
            cur = module.act(Generator::d(i), &cur)?;
        }
    }
    Ok(ranks)
}
