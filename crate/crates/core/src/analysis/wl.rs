//! The submodules `W_l = span{ s_1^r (s_1+s_2)^p C[t_1, t_2] : r <= l }` of a
//! two-factor tensor with coinciding `λ` and trivial highest-weight factor.

use alloc::vec::Vec;

use super::AnalysisError;
use crate::exact::{binomial, EchelonBasis, Scalar};
use crate::hwmod::PbwMonomial;
use crate::liealg::Generator;
use crate::tensor::{basis_tensor, TensorElement, TensorKey, TensorModule};

/// Degree bounds of the spanning elements and the generator modes applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WlWindow {
    /// Largest total `s`-degree `r + p`.
    pub max_s: u32,
    /// Largest exponent of each `t_k`.
    pub max_t: u32,
    pub mode_bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WlReport {
    pub l: u32,
    pub window: WlWindow,
    /// Number of (generator, spanning element) images tested.
    pub checked: usize,
    /// Images found outside `W_l`.
    pub failures: Vec<(Generator, TensorElement)>,
    /// `s_2^{l+1} ∉ W_l`.
    pub witness_outside: bool,
    /// `s_2 ∈ W_l` (true for every `l >= 1`).
    pub s2_inside: bool,
    /// `s_1^{l+1} ∈ W_{l+1} \ W_l`.
    pub strict_inclusion: bool,
}

impl WlReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.witness_outside && self.strict_inclusion
    }
}

fn mono(exps: [u32; 4]) -> TensorElement {
    basis_tensor(exps.to_vec(), PbwMonomial::vh())
}

/// `s_1^r (s_1 + s_2)^p t_1^a t_2^b`.
fn spanning_element(r: u32, p: u32, a: u32, b: u32) -> TensorElement {
    (0..=p)
        .map(|x| (([r + x, p - x, a, b].to_vec(), PbwMonomial::vh()), Scalar::from(binomial(i64::from(p), i64::from(x)))))
        .collect()
}

/// Spanning elements of `W_l` with `r + p <= max_s`, `a, b <= max_t`.
pub fn wl_generators(l: u32, max_s: u32, max_t: u32) -> Vec<TensorElement> {
    let mut out = Vec::new();
    for r in 0..=l.min(max_s) {
        for p in 0..=max_s - r {
            for a in 0..=max_t {
                for b in 0..=max_t {
                    out.push(spanning_element(r, p, a, b));
                }
            }
        }
    }
    out
}

fn span(l: u32, max_s: u32, max_t: u32) -> EchelonBasis<TensorKey> {
    let mut basis = EchelonBasis::new();
    for g in wl_generators(l, max_s, max_t) {
        basis.insert(&g);
    }
    basis
}

/// Checks that every generator with `|mode| <= mode_bound` maps each spanning
/// element of `W_l` in the window back into `W_l`, and certifies properness.
pub fn wl_submodule_check(module: &TensorModule, l: u32, window: WlWindow) -> Result<WlReport, AnalysisError> {
    let params = module.params();
    if params.m() != 2 || params.factors[0].lambda != params.factors[1].lambda {
        return Err(AnalysisError::Precondition("two factors with equal lambda"));
    }
    if !module.hw().is_trivial() {
        return Err(AnalysisError::Precondition("trivial highest-weight factor"));
    }
    // Generators raise the s-degree by at most 1 and each t-degree by at most 2.
    let s_cap = (window.max_s + 1).max(l + 2);
    let target = span(l, s_cap, window.max_t + 2);
    let mut checked = 0;
    let mut failures = Vec::new();
    for g in wl_generators(l, window.max_s, window.max_t) {
        for x in Generator::all_up_to(window.mode_bound) {
            let img = module.act(x, &g)?;
            checked += 1;
            if !target.contains(&img) {
                failures.push((x, g.clone()));
            }
        }
    }
    let s2_power = mono([0, l + 1, 0, 0]);
    let s1_power = mono([l + 1, 0, 0, 0]);
    let next = span(l + 1, s_cap, 0);
    Ok(WlReport {
        l,
        window,
        checked,
        failures,
        witness_outside: !target.contains(&s2_power),
        s2_inside: target.contains(&mono([0, 1, 0, 0])),
        strict_inclusion: next.contains(&s1_power) && !target.contains(&s1_power),
    })
}
