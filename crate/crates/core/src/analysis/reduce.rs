//! Degree reduction inside the submodule generated by an element.

use alloc::vec::Vec;

use super::extract::{extract_coefficients, ExtractionResult};
use super::AnalysisError;
use crate::polymod::Family;
use crate::tensor::{degree, is_degree_zero, TensorElement, TensorModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// A nonzero element of strictly smaller degree.
    Reduced(TensorElement),
    /// Every candidate vanished or kept the degree.
    NoProgress,
}

/// Candidates in the order the slot choice prescribes.
fn candidates(family: Family, m: usize, g: &TensorElement, r: &ExtractionResult) -> Vec<TensorElement> {
    let has_s = |k: usize| g.keys().any(|(e, _)| e[k] > 0);
    let has_t = |k: usize| g.keys().any(|(e, _)| e[k + m] > 0);
    if let Some(k0) = (0..m).find(|&k| has_s(k)) {
        let top = g.keys().map(|(e, _)| e[k0]).max().unwrap_or(0);
        return alloc::vec![r.a[&(top, k0)].clone()];
    }
    (0..m)
        .filter(|&j| has_t(j))
        .map(|j| match family {
            Family::Omega | Family::Delta => g - &r.c[&(0, j)],
            Family::Theta => &(&r.c[&(0, j)] + &r.c_dual[&(0, j)]) - &r.a[&(0, j)],
        })
        .collect()
}

/// One step of the degree-reduction argument: the top `s`-coefficient when
/// some `p_k > 0`, else the family-specific `t`-combination at the first
/// slot carrying a `t`-power (later slots are tried only if it stalls).
pub fn reduce_degree(module: &TensorModule, g: &TensorElement) -> Result<Reduction, AnalysisError> {
    let d = degree(g).ok_or(AnalysisError::ZeroElement)?;
    if is_degree_zero(g) {
        return Err(AnalysisError::DegreeZero);
    }
    let family = super::extract::check_family(module)?;
    let r = extract_coefficients(module, g)?;
    for c in candidates(family, module.m(), g, &r) {
        if degree(&c).is_some_and(|dc| dc < d) {
            return Ok(Reduction::Reduced(c));
        }
    }
    Ok(Reduction::NoProgress)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    /// The input followed by each reduced element.
    pub steps: Vec<TensorElement>,
    pub reached_zero_degree: bool,
}

/// Iterates [`reduce_degree`] until degree zero or no progress.
pub fn reduce_to_degree_zero(module: &TensorModule, g: &TensorElement, max_steps: usize) -> Result<ReductionTrace, AnalysisError> {
    let mut steps = alloc::vec![g.clone()];
    let mut cur = g.clone();
    if cur.is_zero() {
        return Err(AnalysisError::ZeroElement);
    }
    for _ in 0..max_steps {
        if is_degree_zero(&cur) {
            break;
        }
        match reduce_degree(module, &cur)? {
            Reduction::Reduced(next) => {
                steps.push(next.clone());
                cur = next;
            }
            Reduction::NoProgress => break,
        }
    }
    Ok(ReductionTrace { reached_zero_degree: is_degree_zero(&cur), steps })
}
