//! The rank invariant `R_g`.

use alloc::vec::Vec;

use super::extract::{check_family, sample_count};
use super::{check_lambdas, AnalysisError};
use crate::exact::EchelonBasis;
use crate::liealg::Generator;
use crate::polymod::Family;
use crate::tensor::{TensorElement, TensorModule};

fn rank_over(module: &TensorModule, ops: &[fn(i64) -> Generator], g: &TensorElement, modes: core::ops::Range<i64>) -> Result<usize, AnalysisError> {
    let mut span = EchelonBasis::new();
    span.insert(g);
    for i in modes {
        for op in ops {
            span.insert(&module.act(op(i), g)?);
        }
    }
    Ok(span.dim())
}

/// Rank of `g` together with `h_i g` and `e_i g` (`Ω`), `f_i g` (`Δ`) or
/// both (`Θ`) over `i ∈ [I(g), I(g) + D)`. The same rank must come out of a
/// shifted and of a doubled window, otherwise the window is reported too
/// small.
pub fn r_invariant(module: &TensorModule, g: &TensorElement) -> Result<usize, AnalysisError> {
    let params = module.params();
    check_lambdas(&params.factors.iter().map(|f| &f.lambda).collect::<Vec<_>>())?;
    let ops: &[fn(i64) -> Generator] = match check_family(module)? {
        Family::Omega => &[Generator::h, Generator::e],
        Family::Delta => &[Generator::h, Generator::f],
        Family::Theta => &[Generator::h, Generator::e, Generator::f],
    };
    let start = module.annihilation_bound(g)?;
    let d = sample_count(g, params.m()) as i64;
    let base = rank_over(module, ops, g, start..start + d)?;
    for other in [start + d..start + 2 * d, start..start + 2 * d] {
        let r = rank_over(module, ops, g, other)?;
        if r != base {
            return Err(AnalysisError::NotStabilized { base, enlarged: r });
        }
    }
    Ok(base)
}
