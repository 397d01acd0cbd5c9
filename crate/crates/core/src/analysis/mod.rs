//! Executable versions of the structural arguments on `T^M`: generalized
//! Vandermonde determinants, coefficient extraction over large modes, cyclic
//! closures inside finite windows, degree reduction, the `W_l` submodules of
//! a λ-collision, the rank invariant `R_g`, `ω`-operators and local-finiteness
//! probes.

mod closure;
mod extract;
mod omega;
mod reduce;
mod rg;
mod vandermonde;
mod wl;

pub use closure::{cyclic_closure, ClosureBasis, Window};
pub use extract::{extract_coefficients, sample_start, sample_count, ExtractionResult};
pub use omega::{finite_difference, local_finiteness_probe, omega_operator, omega_s1s2_closed_form};
pub use reduce::{reduce_degree, reduce_to_degree_zero, Reduction, ReductionTrace};
pub use rg::r_invariant;
pub use vandermonde::{superfactorial, vandermonde_closed_form, vandermonde_matrix};
pub use wl::{wl_generators, wl_submodule_check, WlReport, WlWindow};

use crate::hwmod::HwError;
use crate::polymod::Family;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("lambda parameters {0} and {1} coincide")]
    RepeatedLambda(usize, usize),
    #[error("lambda parameter {0} is zero")]
    ZeroLambda(usize),
    #[error("extraction over modes {start}..{end} is inconsistent; enlarge the sample window")]
    Inconsistent { start: i64, end: i64 },
    #[error("rank did not stabilize: {base} over the base window, {enlarged} over the enlarged one")]
    NotStabilized { base: usize, enlarged: usize },
    #[error("cross-check failed for {0}")]
    CrossCheck(&'static str),
    #[error("mixed families: factor {slot} is {found}, expected {expected}")]
    MixedFamilies { slot: usize, expected: Family, found: Family },
    #[error("the element has degree zero")]
    DegreeZero,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("the element is zero")]
    ZeroElement,
    #[error(transparent)]
    Truncation(#[from] HwError),
}

pub(crate) fn check_lambdas(lambdas: &[&crate::exact::Scalar]) -> Result<(), AnalysisError> {
    for (a, l) in lambdas.iter().enumerate() {
        if l.is_zero() {
            return Err(AnalysisError::ZeroLambda(a));
        }
        if let Some(b) = lambdas[a + 1..].iter().position(|m| m == l) {
            return Err(AnalysisError::RepeatedLambda(a, a + 1 + b));
        }
    }
    Ok(())
}
